//! Dirichlet series mean values: (1/T) int_0^T |f(sigma0+it)|^2 dt tends to
//! F(sigma0; f) = sum |a_n|^2 n^{-2 sigma0}.
//!
//! The built-in series zeta, eta, and L(chi_4) all have closed-form F
//! constants; the finite-T means approach them as T doubles.
//!
//! Run with: cargo run --release --example dirichlet_mean

use zetalab::dirichlet::DirichletSeries;

fn main() -> zetalab::Result<()> {
    let cases = [
        (DirichletSeries::zeta(), 2.0),
        (DirichletSeries::eta(), 1.5),
        (DirichletSeries::l_chi4(), 1.25),
    ];
    for (f, sigma0) in cases {
        let target = f.f_constant(sigma0, 1e-12)?;
        println!("{} at sigma0 = {sigma0}: F = {target:.12}", f.id);
        println!("{:>8} {:>16} {:>12}", "T", "mean", "rel error");
        for &t in &[250.0, 500.0, 1000.0] {
            let mean = f.mean_value_estimate(sigma0, t, 1e-4)?;
            println!(
                "{:>8} {:>16.10} {:>12.3e}",
                t,
                mean,
                (mean - target).abs() / target
            );
        }
        println!();
    }
    Ok(())
}
