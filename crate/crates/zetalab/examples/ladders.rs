//! Reverse iterations of the Jacob's ladder.
//!
//! Y = phi_1^{-1}(T) solves int_T^Y |zeta(1/2+it)|^2 dt = (1 - c) T with
//! c Euler's constant. This walks three reverse iterates from T = 10^4,
//! prints the defining-equation residuals, and checks the asymptotic
//! partition laws: near-equal segment lengths, near-equal segment
//! integrals, and steps near the predictor (1 - c) T / ln T.
//!
//! Run with: cargo run --release --example ladders

use zetalab::ladders::Ladder;

fn main() -> zetalab::Result<()> {
    let mut ladder = Ladder::default();
    let base = 1e4;
    let seq = ladder.reverse_iterates(base, 3, 1e-6)?;

    println!("base T = {base}");
    println!(
        "{:>2} {:>16} {:>14} {:>12}",
        "r", "iterate", "segment int", "residual"
    );
    for (r, ((y, seg), res)) in seq
        .iterates
        .iter()
        .zip(&seq.segment_integrals)
        .zip(&seq.residuals)
        .enumerate()
    {
        println!("{:>2} {:>16.6} {:>14.6} {:>12.3e}", r + 1, y, seg, res);
    }

    let partition = ladder.check_partition(&seq)?;
    println!("\nequidistance ratios:     {:?}", partition.equidistance_ratios);
    println!("segment integral ratios: {:?}", partition.segment_integral_ratios);
    println!("step / predictor:        {:?}", partition.step_law_ratios);
    Ok(())
}
