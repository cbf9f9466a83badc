//! Selberg moments of S1(t) = (1/pi) int_0^t arg zeta(1/2 + iu) du.
//!
//! Builds the S1 grid by branch-tracked argument evaluation between
//! consecutive critical-line zeros, then prints the moment means
//! (1/T) int_0^T |S1|^{2l} dt and the implied constants c-bar(l) at two
//! heights. Takes roughly half a minute: the grid walks the argument at
//! four Gauss points per zero gap.
//!
//! Run with: cargo run --release --example selberg_moments

use zetalab::s_one::SOne;

fn main() -> zetalab::Result<()> {
    let s_one = SOne::new();

    println!("pointwise S1 samples:");
    for &t in &[50.0, 500.0, 1000.0] {
        println!("  S1({t:>6}) = {:+.9}", s_one.s1(t, 1e-6)?);
    }
    println!();

    println!("{:>3} {:>7} {:>14} {:>14}", "l", "T", "moment mean", "c-bar(l)");
    for &l in &[1u32, 2] {
        for &t in &[2000.0, 4000.0] {
            let moment = s_one.s1_moment(l, 0.0, t, 1e-6)?;
            let constant = s_one.selberg_constant(l, t, 1e-6)?;
            println!(
                "{:>3} {:>7} {:>14.9} {:>14.9}",
                l,
                t,
                moment / t,
                constant.estimate
            );
        }
    }
    Ok(())
}
