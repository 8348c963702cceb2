//! The ideal measurement as a unitary interaction.
//!
//! Builds `c1|s1> + c2|s2>`, couples it to a ready apparatus through the
//! controlled pointer shift, and inspects the result: a globally pure
//! entangled state whose subsystems are mixed. The local density operators
//! carry the Born weights on their diagonals and nothing else, which is why
//! a local observer sees a definite (if random) outcome rather than a
//! superposition.
//!
//! Run:
//! ```sh
//! cargo run --example premeasurement
//! ```

use entanglab::qlinalg::{density_of, partial_trace, Subsystem};
use entanglab::states::{
    entanglement_report, premeasure, reduced_states, superposition, Amplitudes,
};
use num_complex::Complex64;

fn main() {
    let cases = [
        ("balanced", Amplitudes::balanced()),
        (
            "weighted 0.36/0.64",
            Amplitudes::new(Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)).unwrap(),
        ),
        (
            "complex phases",
            Amplitudes::new(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).unwrap(),
        ),
    ];

    for (name, a) in cases {
        println!("== {name}: c1 = {:.4}, c2 = {:.4} ==", a.c1(), a.c2());

        let system = superposition(&a);
        println!("system alone        : {:?}", system.amps());

        let m = premeasure(&a);
        println!("after interaction   : {:?}", m.psi().amps());

        let global = density_of(m.psi());
        let (rho_s, rho_a) = reduced_states(&m);
        println!("global purity       : {:.15}", global.purity());
        println!(
            "local purity        : {:.15} (S), {:.15} (A)",
            rho_s.purity(),
            rho_a.purity()
        );
        println!(
            "local diagonals     : ({:.4}, {:.4})",
            rho_s.entry(0, 0).re,
            rho_s.entry(1, 1).re
        );

        let report = entanglement_report(m.psi(), m.shape()).unwrap();
        println!(
            "schmidt rank {} with entanglement entropy {:.6}\n",
            report.schmidt_rank, report.entanglement_entropy
        );

        // the direct construction agrees with the partial-trace route
        let oracle = partial_trace(&global, m.shape(), Subsystem::S).unwrap();
        let drift: f64 = rho_s
            .entries()
            .iter()
            .zip(oracle.entries())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        assert!(drift < 1e-12, "reduced state disagrees with partial trace");

        // globally pure, locally mixed (unless one branch is empty)
        assert!((global.purity() - 1.0).abs() < 1e-12);
        let expected_local = a.p1() * a.p1() + a.p2() * a.p2();
        assert!((rho_s.purity() - expected_local).abs() < 1e-12);
    }

    println!("all premeasurement checks passed");
}
