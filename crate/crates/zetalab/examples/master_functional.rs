//! The master functional: all three integrand families over one reverse
//! ladder segment.
//!
//!   (1/tau) int_U^{U-hat} { 2 c-bar(l) zeta(2 sigma) |zeta(1/2+it)|^2
//!                         + (1-c) c-bar(l) |zeta(sigma+it)|^2
//!                         + (1-c) zeta(2 sigma) |S1(t)|^{2l} } dt -> x,
//!
//! with U = x tau / (2 k (1-c) c-bar(l) zeta(2 sigma)) and U-hat its k-th
//! reverse ladder iterate. The Selberg constant c-bar(l) is calibrated from
//! the S1 grid at T = 4000 first, so this takes a couple of minutes.
//!
//! Run with: cargo run --release --example master_functional

use zetalab::functionals::{FunctionalKind, FunctionalSpec, Lab};

fn main() -> zetalab::Result<()> {
    let mut lab = Lab::default();
    let spec = FunctionalSpec::new(FunctionalKind::Master)
        .with_sigma(2.0)
        .with_l(1)
        .with_k(1);

    let report = lab.eval_functional_report(&spec, 1.0, 2000.0, 1e-6)?;
    let constants = &report.constants;
    println!(
        "constants: c = {:.12}, zeta(2 sigma) = {:.12}, c-bar(1) = {:.9} (calibrated at T = {})",
        constants.c,
        constants.zeta_2sigma.unwrap(),
        constants.selberg.as_ref().unwrap().estimate,
        constants.selberg.as_ref().unwrap().t_used,
    );
    println!(
        "interval: [{:.3}, {:.3}] (one reverse ladder step)",
        report.from, report.to
    );
    for term in &report.terms {
        println!("  {:<32} {:>14.6}", term.label, term.value / report.tau);
    }
    println!("value = {:.9} (target x = {})", report.value, report.x);
    Ok(())
}
