//! Convergence scan of a scaled mean-value functional.
//!
//! With the upper limit T = x tau / zeta(2 sigma), the normalized integral
//! (1/tau) int_1^T |zeta(sigma+it)|^2 dt tends to x as tau grows — the
//! constants cancel exactly in the limit. The scan evaluates an ascending
//! tau schedule, reusing prefix caches, and classifies the delta trend.
//!
//! Run with: cargo run --release --example functional_scan

use zetalab::functionals::{FunctionalKind, FunctionalSpec, Lab};

fn main() -> zetalab::Result<()> {
    let mut lab = Lab::default();
    let spec = FunctionalSpec::new(FunctionalKind::ZetaMean).with_sigma(1.5);
    let x = 2.5;
    let report = lab.convergence_scan(&spec, x, &[500.0, 1000.0, 2000.0, 4000.0], 1e-6)?;

    println!("kind ZETA_MEAN, sigma = 1.5, target x = {x}");
    println!("{:>8} {:>14} {:>12}", "tau", "value", "|delta|");
    for ((tau, value), delta) in report
        .schedule
        .iter()
        .zip(&report.values)
        .zip(&report.deltas)
    {
        println!("{:>8} {:>14.9} {:>12.3e}", tau, value, delta);
    }
    println!("verdict: {:?}", report.verdict);
    Ok(())
}
