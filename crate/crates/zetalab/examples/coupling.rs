//! The ladder coupling identity: a sigma-line mean equals a critical-line
//! integral over one reverse-ladder segment.
//!
//!   int_1^T |zeta(sigma+it)|^2 dt  ~  int_A^{phi_1^{-1}(A)} |zeta(1/2+it)|^2 dt,
//!   A = zeta(2 sigma) T / (1 - c).
//!
//! Both sides are computed independently; their ratio tends to 1.
//!
//! Run with: cargo run --release --example coupling

use zetalab::ladders::Ladder;

fn main() -> zetalab::Result<()> {
    let mut ladder = Ladder::default();
    println!(
        "{:>6} {:>7} {:>14} {:>14} {:>10}",
        "sigma", "T", "lhs", "rhs", "ratio"
    );
    for &(sigma, t) in &[(2.0, 2000.0), (2.0, 5000.0), (1.5, 3000.0)] {
        let report = ladder.coupling_check_zeta(sigma, t, 1e-6)?;
        println!(
            "{:>6} {:>7} {:>14.6} {:>14.6} {:>10.6}",
            sigma, t, report.lhs, report.rhs, report.ratio
        );
    }
    Ok(())
}
