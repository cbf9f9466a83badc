//! Finite-T mean values of |zeta(sigma + it)|^2 against zeta(2 sigma).
//!
//! The classical mean-value theorem says (1/T) int_1^T |zeta(sigma+it)|^2 dt
//! tends to zeta(2 sigma) for sigma > 1/2. This prints the finite-T means
//! over a doubling schedule so the error trend is visible, once in the
//! absolutely convergent regime (sigma = 2) and once inside the critical
//! strip (sigma = 0.75).
//!
//! Run with: cargo run --release --example zeta_mean

use zetalab::functionals::Lab;
use zetalab::zeta_kernel::zeta_2sigma;

fn main() -> zetalab::Result<()> {
    let mut lab = Lab::default();

    for &sigma in &[2.0, 0.75] {
        let target = zeta_2sigma(sigma, 1e-12)?;
        println!("sigma = {sigma}: zeta(2 sigma) = {target:.12}");
        println!("{:>8}  {:>16}  {:>12}", "T", "mean", "rel error");
        for &t in &[500.0, 1000.0, 2000.0, 4000.0] {
            let mean = lab.zeta_mean(sigma, t, 1e-6)?;
            println!(
                "{:>8}  {:>16.12}  {:>12.3e}",
                t,
                mean,
                (mean - target).abs() / target
            );
        }
        println!();
    }
    Ok(())
}
