//! Reverse iterations of the Jacob's ladder.
//!
//! The forward map phi_1 never appears; its inverse is defined operationally:
//! Y = phi_1^{-1}(T) is the solution of
//!
//!   integral_T^Y |zeta(1/2 + it)|^2 dt = (1 - c) T,
//!
//! the segment-integral relation with the paper's error term dropped. The
//! prefix integrals are served from a PrefixCache anchored at the lowest
//! queried base, so root-finding iterations only ever integrate small gaps.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, CacheKind, Integrand, PrefixCache, QuadOpts};
use crate::s_one::{SOne, SelbergConstant};
use crate::zeta_kernel::{zeta_2sigma, CriticalLine, SigmaLine, EULER_GAMMA};

/// The constant c of the ladder relation, interpreted as Euler's constant,
/// and its complement. Every report records both.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Constants {
    pub c: f64,
    pub one_minus_c: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants::new(EULER_GAMMA)
    }
}

impl Constants {
    pub fn new(c: f64) -> Self {
        assert!(0.0 < c && c < 1.0, "ladder constant must be in (0, 1)");
        Constants { c, one_minus_c: 1.0 - c }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LadderSequence {
    pub base_t: f64,
    /// T^1 .. T^k, strictly increasing
    pub iterates: Vec<f64>,
    /// integral of |zeta(1/2+it)|^2 over each segment [T^{r-1}, T^r]
    pub segment_integrals: Vec<f64>,
    /// relative defining-equation residuals per accepted iterate
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionReport {
    /// (T^r - T^{r-1}) / (T^{r+1} - T^r) for r = 1..k-1
    pub equidistance_ratios: Vec<f64>,
    /// consecutive segment-integral ratios
    pub segment_integral_ratios: Vec<f64>,
    /// (T^r - T^{r-1}) / ((1-c) T^r / ln T^r) for r = 1..k
    pub step_law_ratios: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CouplingReport {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    /// base point A of the right-hand segment
    pub base: f64,
}

struct JIntegrand<'a> {
    line: &'a CriticalLine,
}

impl Integrand for JIntegrand<'_> {
    fn eval(&self, t: f64) -> f64 {
        self.line.abs_sq(t)
    }
    fn panel_hint(&self, t: f64) -> f64 {
        0.5 * CriticalLine::mean_zero_gap(t)
    }
}

struct SigmaIntegrand<'a> {
    line: &'a SigmaLine,
    sigma: f64,
}

impl Integrand for SigmaIntegrand<'_> {
    fn eval(&self, t: f64) -> f64 {
        self.line.abs_sq(t)
    }
    fn panel_hint(&self, t: f64) -> f64 {
        if self.sigma >= 1.25 {
            3.0
        } else {
            CriticalLine::mean_zero_gap(t)
        }
    }
}

pub struct Ladder {
    pub constants: Constants,
    line: CriticalLine,
    /// Independent anchored prefix caches ("islands"). Ladder bases at very
    /// different heights must not bridge the whole range between them; each
    /// query is served by the nearest island, or a fresh one.
    islands: Vec<PrefixCache>,
}

impl Default for Ladder {
    fn default() -> Self {
        Self::new(Constants::default())
    }
}

/// Cumulative J value at t on one island (relative to its anchor).
fn island_prefix(
    line: &CriticalLine,
    island: &mut PrefixCache,
    t: f64,
    opts: &QuadOpts,
) -> Result<f64> {
    let j = JIntegrand { line };
    if island.checkpoints().is_empty() {
        island.seed(t, 0.0);
        return Ok(0.0);
    }
    let first = island.checkpoints()[0];
    if t < first.0 {
        let r = integrate(&j, t, first.0, opts)?;
        island.seed(t, first.1 - r.value);
        return Ok(first.1 - r.value);
    }
    Ok(island.prefix_integral(&j, t, opts)?.0)
}

impl Ladder {
    pub fn new(constants: Constants) -> Self {
        Ladder {
            constants,
            line: CriticalLine::new(),
            islands: Vec::new(),
        }
    }

    /// Install an externally built (e.g. loaded) J prefix cache as the
    /// first island. Absolute offsets are irrelevant: only differences of
    /// checkpoint values are ever used.
    pub fn with_cache(mut self, cache: PrefixCache) -> Self {
        self.islands.insert(0, cache);
        self
    }

    /// The prefix-cache islands warmed so far (for persistence; checkpoint
    /// values are anchored offsets, their differences are true integrals).
    pub fn islands(&self) -> &[PrefixCache] {
        &self.islands
    }

    /// Index of the island serving [a, b] cheapest, creating one anchored
    /// at `a` when every existing island would require a long bridge.
    fn island_for(&mut self, a: f64, b: f64) -> usize {
        let mut best: Option<(usize, f64)> = None;
        for (i, isl) in self.islands.iter().enumerate() {
            let cps = isl.checkpoints();
            if cps.is_empty() {
                continue;
            }
            let (lo, hi) = (cps[0].0, cps[cps.len() - 1].0);
            let cost = (lo - a).max(0.0) + (b - hi).max(0.0);
            if best.map_or(true, |(_, c)| cost < c) {
                best = Some((i, cost));
            }
        }
        match best {
            Some((i, cost)) if cost <= 2.0 * (b - a) + 100.0 => i,
            _ => {
                self.islands.push(PrefixCache::new(CacheKind::AbsZetaHalfSq));
                self.islands.len() - 1
            }
        }
    }

    /// integral over [a, b] of |zeta(1/2+it)|^2 via anchored prefix values.
    pub fn segment(&mut self, a: f64, b: f64, tol_abs: f64) -> Result<f64> {
        if !(a <= b) {
            return Err(Error::Domain(format!("segment: need a <= b, got [{a}, {b}]")));
        }
        let opts = QuadOpts { tol: tol_abs, ..QuadOpts::default() };
        let i = self.island_for(a, b);
        let pa = island_prefix(&self.line, &mut self.islands[i], a, &opts)?;
        let pb = island_prefix(&self.line, &mut self.islands[i], b, &opts)?;
        Ok(pb - pa)
    }

    fn reverse_step_impl(&mut self, t: f64, tol: f64, secant: bool) -> Result<(f64, f64)> {
        if t < 100.0 {
            return Err(Error::Domain(format!("reverse_step requires T >= 100, got {t}")));
        }
        let target = self.constants.one_minus_c * t;
        let gap_tol = tol * target * 1e-2;
        let h0 = target / t.ln();
        let mut lo = t + 0.5 * h0;
        let mut hi = t + 4.0 * h0;
        let mut glo = self.segment(t, lo, gap_tol)?;
        let mut ghi = self.segment(t, hi, gap_tol)?;
        let mut expansions = 0;
        while glo > target {
            hi = lo;
            ghi = glo;
            lo = t + 0.5 * (lo - t);
            glo = self.segment(t, lo, gap_tol)?;
            expansions += 1;
            if expansions > 60 {
                return Err(Error::BracketFailure { lo, hi });
            }
        }
        while ghi < target {
            lo = hi;
            glo = ghi;
            hi = t + 2.0 * (hi - t);
            ghi = self.segment(t, hi, gap_tol)?;
            expansions += 1;
            if expansions > 60 {
                return Err(Error::BracketFailure { lo, hi });
            }
        }
        // bisection phase (always), optional secant refinement inside the
        // surviving bracket
        let mut y = 0.5 * (lo + hi);
        let mut gy = self.segment(t, y, gap_tol)?;
        for _ in 0..80 {
            if (gy - target).abs() <= tol * target {
                return Ok((y, (gy - target).abs() / target));
            }
            if gy < target {
                lo = y;
                glo = gy;
            } else {
                hi = y;
                ghi = gy;
            }
            y = if secant && (ghi - glo).abs() > 0.0 {
                let cand = lo + (target - glo) * (hi - lo) / (ghi - glo);
                let margin = 0.05 * (hi - lo);
                cand.clamp(lo + margin, hi - margin)
            } else {
                0.5 * (lo + hi)
            };
            gy = self.segment(t, y, gap_tol)?;
        }
        Err(Error::AccuracyNotReached {
            target: tol * target,
            best: (gy - target).abs(),
        })
    }

    /// One reverse ladder step: the Y > T with segment integral (1-c) T.
    pub fn reverse_step(&mut self, t: f64, tol: f64) -> Result<f64> {
        Ok(self.reverse_step_impl(t, tol, true)?.0)
    }

    /// Pure-bisection variant, kept separate so the two root finders can be
    /// cross-checked.
    pub fn reverse_step_bisection(&mut self, t: f64, tol: f64) -> Result<f64> {
        Ok(self.reverse_step_impl(t, tol, false)?.0)
    }

    pub fn reverse_iterates(&mut self, t: f64, k: u32, tol: f64) -> Result<LadderSequence> {
        if k == 0 || k > 20 {
            return Err(Error::Domain(format!("reverse_iterates requires 1 <= k <= 20, got {k}")));
        }
        let mut iterates = Vec::with_capacity(k as usize);
        let mut segment_integrals = Vec::with_capacity(k as usize);
        let mut residuals = Vec::with_capacity(k as usize);
        let mut base = t;
        for _ in 0..k {
            let (y, res) = self.reverse_step_impl(base, tol, true)?;
            let gap_tol = tol * self.constants.one_minus_c * base * 1e-2;
            let seg = self.segment(base, y, gap_tol)?;
            if y <= base {
                return Err(Error::ConstraintViolation(format!(
                    "iterate ordering violated at base {base}"
                )));
            }
            iterates.push(y);
            segment_integrals.push(seg);
            residuals.push(res);
            base = y;
        }
        Ok(LadderSequence {
            base_t: t,
            iterates,
            segment_integrals,
            residuals,
        })
    }

    pub fn check_partition(&self, seq: &LadderSequence) -> Result<PartitionReport> {
        let k = seq.iterates.len();
        if k < 2 {
            return Err(Error::Domain("check_partition requires k >= 2".into()));
        }
        let mut ts = Vec::with_capacity(k + 1);
        ts.push(seq.base_t);
        ts.extend_from_slice(&seq.iterates);
        let c1 = self.constants.one_minus_c;
        let equidistance_ratios = (1..k)
            .map(|r| (ts[r] - ts[r - 1]) / (ts[r + 1] - ts[r]))
            .collect();
        let segment_integral_ratios = (0..k - 1)
            .map(|r| seq.segment_integrals[r] / seq.segment_integrals[r + 1])
            .collect();
        let step_law_ratios = (1..=k)
            .map(|r| (ts[r] - ts[r - 1]) / (c1 * ts[r] / ts[r].ln()))
            .collect();
        Ok(PartitionReport {
            equidistance_ratios,
            segment_integral_ratios,
            step_law_ratios,
        })
    }

    /// Coupling of Eq (1.13): the sigma-line mean value against one reverse
    /// step based at A = zeta(2 sigma) T / (1 - c).
    pub fn coupling_check_zeta(&mut self, sigma: f64, t: f64, tol: f64) -> Result<CouplingReport> {
        if sigma < 0.55 {
            return Err(Error::Domain(format!(
                "coupling_check_zeta requires sigma >= 0.55, got {sigma}"
            )));
        }
        if t < 500.0 {
            return Err(Error::Domain(format!("coupling_check requires T >= 500, got {t}")));
        }
        let line = SigmaLine::new(sigma);
        let ig = SigmaIntegrand { line: &line, sigma };
        let opts = QuadOpts { tol: tol * t, ..QuadOpts::default() };
        let lhs = integrate(&ig, 1.0, t, &opts)?.value;
        let base = zeta_2sigma(sigma, 1e-12)? * t / self.constants.one_minus_c;
        let y = self.reverse_step(base, tol)?;
        let rhs = self.segment(base, y, tol * t * 1e-2)?;
        Ok(CouplingReport { lhs, rhs, ratio: lhs / rhs, base })
    }

    /// Coupling of Eq (1.14): the S1 moment against one reverse step based
    /// at A = cbar(l) T / (1 - c).
    pub fn coupling_check_s1(
        &mut self,
        s_one: &SOne,
        cbar: &SelbergConstant,
        t: f64,
        tol: f64,
    ) -> Result<CouplingReport> {
        if t < 500.0 {
            return Err(Error::Domain(format!("coupling_check requires T >= 500, got {t}")));
        }
        let lhs = s_one.s1_moment(cbar.l, 0.0, t, tol)?;
        let base = cbar.estimate * t / self.constants.one_minus_c;
        let y = self.reverse_step(base, tol)?;
        let rhs = self.segment(base, y, tol * lhs.max(1.0) * 1e-2)?;
        Ok(CouplingReport { lhs, rhs, ratio: lhs / rhs, base })
    }
}
