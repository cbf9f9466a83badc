//! Exact arithmetic over Fermat rationals (x^n + y^n)/z^n: bounded
//! enumeration, exact values and gaps from 1, and the pairing that turns an
//! admissible rational into a sigma parameter for the zeta functionals.
//!
//! Everything observable here is exact: values are reduced big rationals,
//! the "= 1" test is an integer identity, and gaps are compared as
//! rationals.  Floating point appears only in `pair_sigma`'s return value.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Enumeration caps: height and exponent stay desk-scale.
pub const H_MAX_CAP: u64 = 10_000;
pub const N_MIN_CAP: u32 = 3;
pub const N_MAX_CAP: u32 = 64;

/// A Fermat rational (x^n + y^n)/z^n with x, y, z >= 1 and n >= 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct FermatRational {
    pub x: u64,
    pub y: u64,
    pub z: u64,
    pub n: u32,
}

impl FermatRational {
    pub fn new(x: u64, y: u64, z: u64, n: u32) -> Result<Self> {
        if x == 0 || y == 0 || z == 0 {
            return Err(Error::Domain(
                "Fermat rational components must be positive".into(),
            ));
        }
        if n < 3 {
            return Err(Error::Domain(format!(
                "Fermat rational exponent must be >= 3, got {}",
                n
            )));
        }
        Ok(FermatRational { x, y, z, n })
    }

    /// The exact reduced value (x^n + y^n)/z^n.
    pub fn value(&self) -> BigRational {
        let numer = BigUint::from(self.x).pow(self.n) + BigUint::from(self.y).pow(self.n);
        let denom = BigUint::from(self.z).pow(self.n);
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    /// Exact test of x^n + y^n = z^n (equivalently value = 1).
    pub fn is_unit(&self) -> bool {
        fn pow_checked(b: u64, n: u32) -> Option<u128> {
            let mut acc: u128 = 1;
            for _ in 0..n {
                acc = acc.checked_mul(b as u128)?;
            }
            Some(acc)
        }
        match (
            pow_checked(self.x, self.n),
            pow_checked(self.y, self.n),
            pow_checked(self.z, self.n),
        ) {
            (Some(xp), Some(yp), Some(zp)) => match xp.checked_add(yp) {
                Some(s) => s == zp,
                None => false, // sum overflowed u128, z^n did not
            },
            _ => {
                BigUint::from(self.x).pow(self.n) + BigUint::from(self.y).pow(self.n)
                    == BigUint::from(self.z).pow(self.n)
            }
        }
    }

    /// Exact |value - 1|.
    pub fn gap_from_one(&self) -> BigRational {
        (self.value() - BigRational::one()).abs()
    }

    /// Nearest-double approximation of the exact value.
    pub fn value_f64(&self) -> f64 {
        self.value().to_f64().unwrap_or(f64::INFINITY)
    }
}

fn check_box(h_max: u64, n_min: u32, n_max: u32) -> Result<()> {
    if h_max < 1 || h_max > H_MAX_CAP {
        return Err(Error::LimitExceeded(format!(
            "height bound {} outside [1, {}]",
            h_max, H_MAX_CAP
        )));
    }
    if n_min < N_MIN_CAP || n_min > n_max || n_max > N_MAX_CAP {
        return Err(Error::LimitExceeded(format!(
            "exponent range [{}, {}] outside [{}, {}]",
            n_min, n_max, N_MIN_CAP, N_MAX_CAP
        )));
    }
    Ok(())
}

/// All Fermat rationals with 1 <= x, y, z <= h_max and n in [n_min, n_max],
/// yielded in lexicographic (n, x, y, z) order.
pub fn enumerate(
    h_max: u64,
    n_min: u32,
    n_max: u32,
) -> Result<impl Iterator<Item = FermatRational>> {
    check_box(h_max, n_min, n_max)?;
    Ok((n_min..=n_max).flat_map(move |n| {
        (1..=h_max).flat_map(move |x| {
            (1..=h_max).flat_map(move |y| (1..=h_max).map(move |z| FermatRational { x, y, z, n }))
        })
    }))
}

/// The exact minimum of |value - 1| over the box, with the first witness in
/// enumeration order that attains it.
pub fn min_gap(h_max: u64, n_min: u32, n_max: u32) -> Result<(BigRational, FermatRational)> {
    let mut best: Option<(BigRational, FermatRational)> = None;
    for q in enumerate(h_max, n_min, n_max)? {
        let gap = q.gap_from_one();
        match &best {
            Some((g, _)) if *g <= gap => {}
            _ => best = Some((gap, q)),
        }
    }
    // check_box guarantees a nonempty enumeration.
    Ok(best.unwrap())
}

/// Accept a Fermat rational as a sigma parameter: returns value(q) as a
/// double provided the exact value clears 1/2 + epsilon.
pub fn pair_sigma(q: &FermatRational, epsilon: f64) -> Result<f64> {
    let threshold = BigRational::new(BigInt::from(1), BigInt::from(2))
        + BigRational::from_float(epsilon)
            .ok_or_else(|| Error::Domain(format!("epsilon {} is not finite", epsilon)))?;
    let v = q.value();
    if v < threshold {
        return Err(Error::ConstraintViolation(format!(
            "Fermat rational ({},{},{},{}) has value {} below the 1/2 + {} threshold",
            q.x, q.y, q.z, q.n, v, epsilon
        )));
    }
    Ok(v.to_f64().unwrap())
}
