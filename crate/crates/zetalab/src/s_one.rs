//! S(t) = (1/pi) arg zeta(1/2 + it) with a continuous branch, its integral
//! S1(t), S1 moments, and empirical Selberg constants.
//!
//! The argument is obtained by continuous variation along the two-segment
//! path 2 -> 2+it -> 1/2+it. On the vertical segment |zeta(2+iu) - 1| < 0.65,
//! so the value never winds around 0 and the principal argument at 2+it is
//! already the continuous one; only the horizontal segment is walked.
//!
//! S1 evaluation is backed by a grid of S samples placed at Gauss-Legendre
//! nodes between consecutive zeta zeros (located by sign changes of Z), with
//! cumulative prefix values at panel edges.

use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::zeta_kernel::{self, theta, CriticalLine};

const GL4_X: [f64; 4] = [
    -0.861_136_311_594_052_6,
    -0.339_981_043_584_856_3,
    0.339_981_043_584_856_3,
    0.861_136_311_594_052_6,
];
const GL4_W: [f64; 4] = [
    0.347_854_845_137_453_9,
    0.652_145_154_862_546_1,
    0.652_145_154_862_546_1,
    0.347_854_845_137_453_9,
];

const GL9_X: [f64; 9] = [
    -0.968_160_239_507_626_1,
    -0.836_031_107_326_635_8,
    -0.613_371_432_700_590_4,
    -0.324_253_423_403_808_9,
    0.0,
    0.324_253_423_403_808_9,
    0.613_371_432_700_590_4,
    0.836_031_107_326_635_8,
    0.968_160_239_507_626_1,
];
const GL9_W: [f64; 9] = [
    0.081_274_388_361_574_4,
    0.180_648_160_694_857_4,
    0.260_610_696_402_935_5,
    0.312_347_077_040_002_8,
    0.330_239_355_001_259_8,
    0.312_347_077_040_002_8,
    0.260_610_696_402_935_5,
    0.180_648_160_694_857_4,
    0.081_274_388_361_574_4,
];

/// Result of one continuous-branch argument evaluation.
#[derive(Debug, Clone, Serialize)]
pub struct ArgTrace {
    pub t: f64,
    /// arg zeta(1/2 + it), radians, continuous branch from arg zeta(2) = 0.
    pub arg_value: f64,
    pub path_steps: u32,
    pub max_step_turn: f64,
    /// offset applied after ZeroProximity retries, 0 when none was needed
    pub t_offset: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelbergConstant {
    pub l: u32,
    pub estimate: f64,
    pub t_used: f64,
    pub uncertainty: f64,
}

/// Height below which the walker evaluates interior points by Euler-Maclaurin
/// (with shared per-t oscillatory tables); above it the approximate
/// functional equation is used. EM is O(t) per point but is the only route
/// here whose error stays far below |zeta| near the compact zero clusters;
/// the AFE route above the cutoff serves one-off evaluations at large t.
const WALK_EM_CUTOFF: f64 = 30_000.0;

/// Evaluates zeta(sigma + it) for fixed t and varying sigma, sharing the
/// oscillatory factors n^{-it} across the walk.
struct PathEvaluator {
    t: f64,
    /// truncation of the shared tables; `em` selects the route
    big_n: usize,
    em: bool,
    ln_n: Vec<f64>,
    e_n: Vec<Complex64>, // n^{-it}
}

impl PathEvaluator {
    fn new(t: f64) -> Self {
        let em = t <= WALK_EM_CUTOFF;
        let big_n = if em {
            20usize.max((0.35 * t).ceil() as usize)
        } else {
            ((t / (2.0 * PI)).sqrt().floor() as usize).max(1)
        };
        let top = if em { big_n - 1 } else { big_n };
        let mut ln_n = Vec::with_capacity(top + 1);
        let mut e_n = Vec::with_capacity(top + 1);
        ln_n.push(0.0);
        e_n.push(Complex64::new(1.0, 0.0));
        for n in 1..=top {
            let l = (n as f64).ln();
            ln_n.push(l);
            let (s, c) = (t * l).sin_cos();
            e_n.push(Complex64::new(c, -s));
        }
        PathEvaluator { t, big_n, em, ln_n, e_n }
    }

    fn eval(&self, sigma: f64) -> Complex64 {
        let s = Complex64::new(sigma, self.t);
        if self.em {
            // sum_{n < N} n^{-s} + Euler-Maclaurin continuation at N
            let mut sum = Complex64::new(0.0, 0.0);
            let mut comp = Complex64::new(0.0, 0.0);
            for n in 1..self.big_n {
                let term = (-sigma * self.ln_n[n]).exp() * self.e_n[n];
                let y = term - comp;
                let tmp = sum + y;
                comp = (tmp - sum) - y;
                sum = tmp;
            }
            return sum + zeta_kernel::em_tail(s, self.big_n, 12);
        }
        let mut sum1 = Complex64::new(0.0, 0.0);
        let mut sum2 = Complex64::new(0.0, 0.0);
        for n in 1..=self.big_n {
            let a = (-sigma * self.ln_n[n]).exp();
            sum1 += a * self.e_n[n];
            // n^{s-1} = n^{sigma-1} * conj(n^{-it})
            sum2 += (1.0 / (a * (n as f64))) * self.e_n[n].conj();
        }
        sum1 + zeta_kernel::chi(s) * sum2
    }
}

fn precise_endpoint(t: f64, line: &CriticalLine) -> Complex64 {
    // zeta(1/2 + it) = Z(t) exp(-i theta(t))
    let z = line.z(t);
    Complex64::new(0.0, -theta(t)).exp() * z
}

/// Continuous-branch arg zeta(1/2+it) with an explicit initial step count.
pub fn arg_zeta_critical_with_steps(
    t: f64,
    initial_steps: u32,
    line: &CriticalLine,
) -> Result<ArgTrace> {
    if t < 0.0 {
        return Err(Error::Domain("arg_zeta_critical requires t >= 0".into()));
    }
    if t == 0.0 {
        // the path degenerates at t = 0; arg 0 by convention
        return Ok(ArgTrace {
            t,
            arg_value: 0.0,
            path_steps: 0,
            max_step_turn: 0.0,
            t_offset: 0.0,
        });
    }
    let ev = PathEvaluator::new(t);
    // below the EM cutoff the evaluator itself is the most accurate value
    // available at sigma = 1/2; above it, pin to Z(t) e^{-i theta(t)}
    let endpoint = if t <= WALK_EM_CUTOFF {
        ev.eval(0.5)
    } else {
        precise_endpoint(t, line)
    };
    if endpoint.norm() < 1e-12 {
        return Err(Error::ZeroProximity(1e-12));
    }
    const MAX_STEPS: u32 = 100_000;
    const MAX_TURN: f64 = PI / 4.0;
    let n0 = initial_steps.max(2);
    // descending sigma levels, last point pinned to the precise endpoint
    let mut pts: Vec<(f64, Complex64)> = Vec::with_capacity(n0 as usize + 1);
    for i in 0..=n0 {
        let sigma = 2.0 - 1.5 * (i as f64) / (n0 as f64);
        let v = if i == n0 { endpoint } else { ev.eval(sigma) };
        pts.push((sigma, v));
    }
    let mut arg = pts[0].1.arg(); // principal arg at 2 + it, no winding possible
    let mut steps: u32 = 0;
    let mut max_turn = 0.0f64;
    let mut i = 0usize;
    while i + 1 < pts.len() {
        let (sa, va) = pts[i];
        let (sb, vb) = pts[i + 1];
        if vb.norm() < 1e-14 || va.norm() < 1e-14 {
            return Err(Error::ZeroProximity(1e-14));
        }
        let turn = (vb / va).arg();
        if turn.abs() >= MAX_TURN && sa - sb < 1e-9 {
            // subdivision bottomed out: the two evaluations disagree at
            // (numerically) the same point, which happens next to a zero
            return Err(Error::ZeroProximity((va.norm()).min(vb.norm())));
        }
        if turn.abs() < MAX_TURN {
            arg += turn;
            max_turn = max_turn.max(turn.abs());
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::Domain(format!(
                    "argument walk exceeded {MAX_STEPS} steps at t = {t}"
                )));
            }
            i += 1;
        } else {
            let sm = 0.5 * (sa + sb);
            pts.insert(i + 1, (sm, ev.eval(sm)));
        }
    }
    Ok(ArgTrace {
        t,
        arg_value: arg,
        path_steps: steps,
        max_step_turn: max_turn,
        t_offset: 0.0,
    })
}

/// Continuous-branch argument along 2 -> 2+it -> 1/2+it.
pub fn arg_zeta_critical(t: f64, line: &CriticalLine) -> Result<ArgTrace> {
    arg_zeta_critical_with_steps(t, 8, line)
}

/// S(t) = arg zeta(1/2+it) / pi, retrying with small offsets near zeros.
pub fn s_of_t(t: f64, line: &CriticalLine) -> Result<f64> {
    const OFFSETS: [f64; 5] = [0.0, 1e-7, -1e-7, 1e-6, -1e-6];
    let mut last = None;
    for &off in &OFFSETS {
        match arg_zeta_critical((t + off).max(0.0), line) {
            Ok(tr) => return Ok(tr.arg_value / PI),
            Err(e @ Error::ZeroProximity(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap())
}

/// Lagrange cubic antiderivative coefficients for the GL4 nodes:
/// w_j(xi) = integral from -1 to xi of L_j, as quartic polynomials.
fn antiderivative_coeffs() -> [[f64; 5]; 4] {
    let mut out = [[0.0; 5]; 4];
    for j in 0..4 {
        // product of (xi - x_i) over i != j, ascending-degree coefficients
        let mut coeffs = vec![1.0f64];
        for i in 0..4 {
            if i == j {
                continue;
            }
            let mut next = vec![0.0; coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k] -= GL4_X[i] * c;
                next[k + 1] += c;
            }
            coeffs = next;
        }
        let mut denom = 1.0;
        for i in 0..4 {
            if i != j {
                denom *= GL4_X[j] - GL4_X[i];
            }
        }
        for c in coeffs.iter_mut() {
            *c /= denom;
        }
        // antiderivative, constant chosen so w_j(-1) = 0
        let mut anti = [0.0f64; 5];
        for (k, &c) in coeffs.iter().enumerate() {
            anti[k + 1] = c / (k as f64 + 1.0);
        }
        let mut at_m1 = 0.0;
        let mut p = 1.0;
        for a in anti {
            at_m1 += a * p;
            p *= -1.0;
        }
        anti[0] = -at_m1;
        out[j] = anti;
    }
    out
}

fn eval_quartic(c: &[f64; 5], x: f64) -> f64 {
    (((c[4] * x + c[3]) * x + c[2]) * x + c[1]) * x + c[0]
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    /// S at the GL4 nodes of [lo, hi]
    s: [f64; 4],
    /// S1 at lo
    s1_lo: f64,
}

/// Grid of S samples between consecutive zeta zeros with prefix S1 values.
pub struct SGrid {
    line: CriticalLine,
    zeros: Vec<f64>,
    panels: Vec<Panel>,
    covered_to: f64,
    scan_from: f64,
    anti: [[f64; 5]; 4],
    /// max panel width; gaps wider than this are split further
    max_panel: f64,
}

impl Default for SGrid {
    fn default() -> Self {
        Self::new()
    }
}

impl SGrid {
    pub fn new() -> Self {
        SGrid {
            line: CriticalLine::new(),
            zeros: Vec::new(),
            panels: Vec::new(),
            covered_to: 0.0,
            scan_from: 5.0,
            anti: antiderivative_coeffs(),
            max_panel: 4.0,
        }
    }

    pub fn zeros_up_to(&mut self, t: f64) -> Result<&[f64]> {
        self.ensure(t)?;
        let idx = self.zeros.partition_point(|&z| z <= t);
        Ok(&self.zeros[..idx])
    }

    pub fn covered_to(&self) -> f64 {
        self.covered_to
    }

    /// Locate the next sign change of Z above `from` by scan + bisection.
    /// Returns (zero, resume): the polished zero can sit slightly below the
    /// sign change of the fast evaluator, so the next scan must resume from
    /// `resume` to avoid re-finding the same crossing.
    fn next_zero(&self, from: f64) -> (f64, f64) {
        let mut a = from.max(1e-3);
        let mut fa = self.line.z(a);
        loop {
            let step = (CriticalLine::mean_zero_gap(a) / 8.0).clamp(0.02, 1.0);
            let b = a + step;
            let fb = self.line.z(b);
            if fa == 0.0 {
                return (a, a + 1e-6);
            }
            if fa * fb < 0.0 {
                // bisect on the fast evaluator
                let (mut lo, mut hi, mut flo) = (a, b, fa);
                for _ in 0..30 {
                    let mid = 0.5 * (lo + hi);
                    let fm = self.line.z(mid);
                    if flo * fm <= 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                        flo = fm;
                    }
                }
                let z = 0.5 * (lo + hi);
                // the Riemann-Siegel C0 truncation bias shifts roots by up
                // to ~1e-4 at moderate heights; polish with Euler-Maclaurin
                // where that is affordable
                if z > 200.0 && z <= WALK_EM_CUTOFF {
                    let mut w = 5e-4;
                    for _ in 0..5 {
                        let (pa, pb) = (z - w, z + w);
                        let (fa2, fb2) = (self.line.z_em(pa), self.line.z_em(pb));
                        if fa2 * fb2 < 0.0 {
                            let (mut lo, mut hi, mut flo) = (pa, pb, fa2);
                            for _ in 0..35 {
                                let mid = 0.5 * (lo + hi);
                                let fm = self.line.z_em(mid);
                                if flo * fm <= 0.0 {
                                    hi = mid;
                                } else {
                                    lo = mid;
                                    flo = fm;
                                }
                            }
                            return (0.5 * (lo + hi), b);
                        }
                        w *= 4.0;
                    }
                }
                return (z, b);
            }
            a = b;
            fa = fb;
        }
    }

    fn push_panels(&mut self, lo: f64, hi: f64) -> Result<()> {
        // theta's high derivatives blow up towards t = 0, so the first gap
        // gets geometrically graded panels instead of a uniform split
        let mut cuts = vec![lo];
        if lo == 0.0 {
            let mut t = 0.0;
            while t < hi {
                let w = if t < 2.0 {
                    0.25
                } else if t < 4.0 {
                    0.5
                } else if t < 8.0 {
                    1.0
                } else {
                    2.0
                };
                t = (t + w).min(hi);
                cuts.push(t);
            }
        } else {
            let n_sub = (2usize).max(((hi - lo) / self.max_panel).ceil() as usize);
            let width = (hi - lo) / n_sub as f64;
            for k in 1..=n_sub {
                cuts.push(if k == n_sub { hi } else { lo + width * k as f64 });
            }
        }
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let h = b - a;
            let mut s = [0.0f64; 4];
            for (j, &x) in GL4_X.iter().enumerate() {
                let t = 0.5 * (a + b) + 0.5 * h * x;
                s[j] = s_of_t(t, &self.line)?;
            }
            let s1_lo = self
                .panels
                .last()
                .map(|p| {
                    let inc: f64 = 0.5
                        * (p.hi - p.lo)
                        * p.s.iter().zip(GL4_W.iter()).map(|(a, w)| a * w).sum::<f64>();
                    p.s1_lo + inc
                })
                .unwrap_or(0.0);
            self.panels.push(Panel { lo: a, hi: b, s, s1_lo });
        }
        Ok(())
    }

    /// Extend coverage so that S1 is available on [0, t].
    pub fn ensure(&mut self, t: f64) -> Result<()> {
        while self.covered_to < t {
            let (z, resume) = self.next_zero(self.scan_from);
            let lo = self.covered_to;
            self.push_panels(lo, z)?;
            self.zeros.push(z);
            self.covered_to = z;
            self.scan_from = resume.max(z + 1e-9);
        }
        Ok(())
    }

    fn panel_index(&self, t: f64) -> usize {
        let idx = self.panels.partition_point(|p| p.hi < t);
        idx.min(self.panels.len() - 1)
    }

    /// S1(t) from the panel's cubic reconstruction of S.
    pub fn s1(&mut self, t: f64) -> Result<f64> {
        if t <= 0.0 {
            return Ok(0.0);
        }
        self.ensure(t)?;
        let p = self.panels[self.panel_index(t)];
        let h = p.hi - p.lo;
        let xi = (2.0 * (t - p.lo) / h - 1.0).clamp(-1.0, 1.0);
        let mut inc = 0.0;
        for j in 0..4 {
            inc += p.s[j] * eval_quartic(&self.anti[j], xi);
        }
        Ok(p.s1_lo + 0.5 * h * inc)
    }

    /// Width of the panel containing t (sampling-density hint).
    pub fn panel_width(&self, t: f64) -> f64 {
        if self.panels.is_empty() {
            return 1.0;
        }
        let p = &self.panels[self.panel_index(t)];
        p.hi - p.lo
    }

    /// integral of |S1|^{2l} over [a, b] using GL9 on the panelwise
    /// reconstruction (exact for the quartic model up to l = 2).
    pub fn moment(&mut self, l: u32, a: f64, b: f64) -> Result<f64> {
        if !(0.0 <= a && a <= b) {
            return Err(Error::Domain(format!("moment: need 0 <= a <= b, got [{a}, {b}]")));
        }
        if a == b {
            return Ok(0.0);
        }
        self.ensure(b)?;
        let exp = 2 * l as i32;
        let first = self.panel_index(a.max(1e-12));
        let last = self.panel_index(b);
        let mut total = 0.0f64;
        let mut comp = 0.0f64;
        for idx in first..=last {
            let p = self.panels[idx];
            let lo = p.lo.max(a);
            let hi = p.hi.min(b);
            if hi <= lo {
                continue;
            }
            let h = p.hi - p.lo;
            let mut piece = 0.0f64;
            for k in 0..9 {
                let t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * GL9_X[k];
                let xi = 2.0 * (t - p.lo) / h - 1.0;
                let mut inc = 0.0;
                for j in 0..4 {
                    inc += p.s[j] * eval_quartic(&self.anti[j], xi);
                }
                let s1 = p.s1_lo + 0.5 * h * inc;
                piece += GL9_W[k] * s1.abs().powi(exp);
            }
            piece *= 0.5 * (hi - lo);
            let y = piece - comp;
            let t2 = total + y;
            comp = (t2 - total) - y;
            total = t2;
        }
        Ok(total)
    }
}

/// Shared, lazily extended S grid plus the public S1 operations.
pub struct SOne {
    grid: RefCell<SGrid>,
}

impl Default for SOne {
    fn default() -> Self {
        Self::new()
    }
}

impl SOne {
    pub fn new() -> Self {
        SOne {
            grid: RefCell::new(SGrid::new()),
        }
    }

    pub fn with_grid<R>(&self, f: impl FnOnce(&mut SGrid) -> R) -> R {
        f(&mut self.grid.borrow_mut())
    }

    /// S1(t) = (1/pi) integral of arg zeta(1/2+iu) over [0, t].
    pub fn s1(&self, t: f64, _tol: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::Domain("S1 requires t >= 0".into()));
        }
        self.grid.borrow_mut().s1(t)
    }

    /// integral over [a, b] of |S1(t)|^{2l}.
    pub fn s1_moment(&self, l: u32, a: f64, b: f64, _tol: f64) -> Result<f64> {
        if l < 1 {
            return Err(Error::Domain("s1_moment requires l >= 1".into()));
        }
        self.grid.borrow_mut().moment(l, a, b)
    }

    /// Empirical Selberg constant c(l) from the [0, T] moment.
    pub fn selberg_constant(&self, l: u32, t_cal: f64, tol: f64) -> Result<SelbergConstant> {
        if t_cal < 500.0 {
            return Err(Error::Domain("selberg_constant requires T >= 500".into()));
        }
        let m = self.s1_moment(l, 0.0, t_cal, tol)?;
        let estimate = m / t_cal;
        Ok(SelbergConstant {
            l,
            estimate,
            t_used: t_cal,
            uncertainty: estimate / t_cal.ln(),
        })
    }

    /// Windowed moment over [T, T+H] with the Selberg window constraint
    /// T^a <= H <= T.
    pub fn window_moment(&self, l: u32, t: f64, h: f64, a_exp: f64, tol: f64) -> Result<f64> {
        if !(0.5 < a_exp && a_exp <= 1.0) {
            return Err(Error::Domain("window exponent must be in (1/2, 1]".into()));
        }
        if !(t.powf(a_exp) <= h && h <= t) {
            return Err(Error::ConstraintViolation(format!(
                "window H = {h} outside [T^a, T] = [{}, {t}]",
                t.powf(a_exp)
            )));
        }
        self.s1_moment(l, t, t + h, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> CriticalLine {
        CriticalLine::new()
    }

    #[test]
    fn arg_at_zero_is_zero_by_convention() {
        let tr = arg_zeta_critical(0.0, &line()).unwrap();
        assert_eq!(tr.arg_value, 0.0);
    }

    #[test]
    fn step_doubling_self_consistency() {
        // n vs 2n initial steps; winding is integer so values agree exactly
        let l = line();
        for &t in &[1.0, 17.5, 333.3] {
            let a = arg_zeta_critical_with_steps(t, 8, &l).unwrap();
            let b = arg_zeta_critical_with_steps(t, 16, &l).unwrap();
            assert!((a.arg_value - b.arg_value).abs() < 1e-8, "t={t}");
        }
    }

    #[test]
    fn branch_turns_stay_below_half_pi() {
        let l = line();
        for &t in &[5.0, 50.0, 500.0, 5000.0] {
            let tr = arg_zeta_critical(t, &l).unwrap();
            assert!(tr.max_step_turn < PI / 2.0, "t={t}");
        }
    }

    #[test]
    fn s_has_small_mean() {
        let l = line();
        let mut sum = 0.0;
        let n = 400;
        for i in 1..=n {
            let t = 1000.0 * i as f64 / n as f64;
            sum += s_of_t(t, &l).unwrap();
        }
        let mean = sum / n as f64;
        assert!(mean.abs() <= 0.05, "mean S over [0,1000] = {mean}");
    }

    #[test]
    fn s1_zero_at_origin() {
        let s1 = SOne::new();
        assert_eq!(s1.s1(0.0, 1e-6).unwrap(), 0.0);
    }

    #[test]
    fn s1_matches_brute_force_simpson() {
        // independent oracle: composite Simpson on S at ~10x the grid's
        // sampling density, split at the zeros so no panel straddles a jump
        let s1 = SOne::new();
        let t_end = 50.0;
        let val = s1.s1(t_end, 1e-6).unwrap();
        let zeros = s1.with_grid(|g| g.zeros_up_to(t_end).map(|z| z.to_vec())).unwrap();
        let l = line();
        let oracle = simpson_s(1e-9, t_end, &zeros, 160, &l);
        assert!((val - oracle).abs() < 1e-5, "grid={val}, simpson={oracle}");
    }

    #[test]
    fn s1_increment_bounded_by_sup_s() {
        let s1 = SOne::new();
        let l = line();
        for &(t, h) in &[(20.0, 1.0), (100.0, 2.5), (40.0, 0.5)] {
            let d = (s1.s1(t + h, 1e-6).unwrap() - s1.s1(t, 1e-6).unwrap()).abs();
            let mut sup = 0.0f64;
            for i in 0..=20 {
                let u = t + h * i as f64 / 20.0;
                sup = sup.max(s_of_t(u, &l).unwrap().abs());
            }
            assert!(d <= h * (sup + 0.05), "t={t}, h={h}: d={d}, sup={sup}");
        }
    }

    /// Composite Simpson of S over [a, b], split at the given zero ordinates
    /// so no panel straddles a jump of S. Edges adjacent to zeros are clipped
    /// by a strip wide enough to stay clear of the zero-proximity retry
    /// offsets in s_of_t; the strips are added back as S(edge) * width.
    fn simpson_s(a: f64, b: f64, zeros: &[f64], per_piece: usize, l: &CriticalLine) -> f64 {
        const EPS: f64 = 1e-5;
        let mut cuts = vec![a];
        cuts.extend(zeros.iter().copied().filter(|&z| z > a && z < b));
        cuts.push(b);
        let mut total = 0.0;
        for (pi, w) in cuts.windows(2).enumerate() {
            let clip_lo = if pi == 0 { 0.0 } else { EPS };
            let clip_hi = if pi == cuts.len() - 2 { 0.0 } else { EPS };
            let (lo, hi) = (w[0] + clip_lo, w[1] - clip_hi);
            let n = per_piece;
            let h = (hi - lo) / n as f64;
            let (s_lo, s_hi) = (s_of_t(lo, l).unwrap(), s_of_t(hi, l).unwrap());
            let mut acc = s_lo + s_hi;
            for i in 1..n {
                acc += if i % 2 == 1 { 4.0 } else { 2.0 } * s_of_t(lo + h * i as f64, l).unwrap();
            }
            total += acc * h / 3.0 + clip_lo * s_lo + clip_hi * s_hi;
        }
        total
    }

    #[test]
    fn s1_additivity() {
        let s1 = SOne::new();
        // S1(b) - S1(a) equals an independent quadrature of S over [a, b]
        let pairs = [(3.0, 41.0), (10.0, 137.0), (77.0, 301.0)];
        let l = line();
        for &(a, b) in &pairs {
            let d = s1.s1(b, 1e-6).unwrap() - s1.s1(a, 1e-6).unwrap();
            let zeros = s1.with_grid(|g| g.zeros_up_to(b).map(|z| z.to_vec())).unwrap();
            let oracle = simpson_s(a, b, &zeros, 60, &l);
            assert!((d - oracle).abs() < 1e-4, "[{a},{b}]: {d} vs {oracle}");
        }
    }

    #[test]
    fn moment_trivial_and_monotone() {
        let s1 = SOne::new();
        assert_eq!(s1.s1_moment(1, 5.0, 5.0, 1e-6).unwrap(), 0.0);
        let m1 = s1.s1_moment(1, 0.0, 50.0, 1e-6).unwrap();
        let m2 = s1.s1_moment(1, 0.0, 80.0, 1e-6).unwrap();
        let m3 = s1.s1_moment(1, 0.0, 120.0, 1e-6).unwrap();
        assert!(m1 >= 0.0 && m2 >= m1 && m3 >= m2);
    }

    #[test]
    fn moment_on_unit_interval_is_bounded() {
        let s1 = SOne::new();
        let m = s1.s1_moment(1, 0.0, 1.0, 1e-8).unwrap();
        // |S1| <= max over [0,1]; crude bound max |S| <= 1 there
        assert!(m >= 0.0 && m < 1.0);
    }

    #[test]
    fn zeros_match_known_ordinates() {
        let mut g = SGrid::new();
        let zeros = g.zeros_up_to(33.0).unwrap();
        let known = [
            14.134_725_141_7,
            21.022_039_638_7,
            25.010_857_580_1,
            30.424_876_125_9,
            32.935_061_587_7,
        ];
        assert_eq!(zeros.len(), 5);
        for (a, b) in zeros.iter().zip(known.iter()) {
            assert!((a - b).abs() < 1e-6, "{a} vs {b}");
        }
    }

    #[test]
    fn selberg_constant_positive() {
        let s1 = SOne::new();
        let c = s1.selberg_constant(1, 600.0, 1e-6).unwrap();
        assert!(c.estimate > 0.0);
        assert!(c.uncertainty > 0.0);
    }

    #[test]
    fn window_moment_validates_pair() {
        let s1 = SOne::new();
        assert!(s1.window_moment(1, 600.0, 10.0, 0.6, 1e-6).is_err()); // H < T^0.6
        assert!(s1.window_moment(1, 600.0, 100.0, 0.6, 1e-6).is_ok());
    }
}
