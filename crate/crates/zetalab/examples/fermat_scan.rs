//! Exact arithmetic over Fermat rationals (x^n + y^n)/z^n.
//!
//! Scans the whole box 1 <= x,y,z <= 20, 3 <= n <= 7 with big-integer
//! arithmetic: no tuple has value exactly 1 (the desk-scale face of the
//! Fermat-Wiles theorem), and the minimum exact gap |value - 1| is reported
//! with its witness. Also shows the pairing that turns an admissible
//! rational into a sigma parameter.
//!
//! Run with: cargo run --release --example fermat_scan

use zetalab::fermat::{enumerate, min_gap, pair_sigma, FermatRational};

fn main() -> zetalab::Result<()> {
    let (h, n_lo, n_hi) = (20, 3, 7);
    let total = enumerate(h, n_lo, n_hi)?.count();
    let units = enumerate(h, n_lo, n_hi)?.filter(|q| q.is_unit()).count();
    println!("box: x,y,z <= {h}, n in [{n_lo}, {n_hi}] -> {total} tuples, {units} with value = 1");

    let (gap, q) = min_gap(h, n_lo, n_hi)?;
    println!(
        "min |value - 1| = {gap} at ({}, {}, {}, {}) with value {}",
        q.x,
        q.y,
        q.z,
        q.n,
        q.value()
    );

    println!("\nsigma pairing (threshold 1/2 + 0.05):");
    for q in [
        FermatRational::new(1, 1, 1, 3)?,
        FermatRational::new(3, 4, 5, 3)?,
        FermatRational::new(1, 1, 2, 3)?,
    ] {
        match pair_sigma(&q, 0.05) {
            Ok(sigma) => println!("  ({},{},{},{}) -> sigma = {sigma}", q.x, q.y, q.z, q.n),
            Err(e) => println!("  ({},{},{},{}) rejected: {e}", q.x, q.y, q.z, q.n),
        }
    }
    Ok(())
}
