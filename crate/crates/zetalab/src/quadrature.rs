//! Adaptive composite Gauss-Legendre quadrature and a checkpointed
//! prefix-integral cache for incremental extension of integrals from a
//! fixed lower limit.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// 15-point Gauss-Legendre nodes on [-1, 1] (positive half; rule is symmetric).
const GL15_X: [f64; 7] = [
    0.987_992_518_020_485_4,
    0.937_273_392_400_705_9,
    0.848_206_583_410_427_2,
    0.724_417_731_360_170_1,
    0.570_972_172_608_538_8,
    0.394_151_347_077_563_4,
    0.201_194_093_997_434_5,
];
const GL15_W: [f64; 7] = [
    0.030_753_241_996_117_3,
    0.070_366_047_488_108_1,
    0.107_159_220_467_171_9,
    0.139_570_677_926_154_3,
    0.166_269_205_816_993_9,
    0.186_161_000_015_562_2,
    0.198_431_485_327_111_6,
];
const GL15_W0: f64 = 0.202_578_241_925_561_3;

/// A real-valued integrand with an optional sampling-density hint.
pub trait Integrand {
    fn eval(&self, t: f64) -> f64;
    /// Maximum initial panel width near `t`; refinement may go finer.
    fn panel_hint(&self, _t: f64) -> f64 {
        f64::INFINITY
    }
}

impl<F: Fn(f64) -> f64> Integrand for F {
    fn eval(&self, t: f64) -> f64 {
        self(t)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: f64,
    pub err_estimate: f64,
    pub evaluations: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOpts {
    pub tol: f64,
    pub max_evaluations: u64,
}

impl Default for QuadOpts {
    fn default() -> Self {
        QuadOpts {
            tol: 1e-6,
            max_evaluations: 100_000_000,
        }
    }
}

fn gl15(f: &dyn Integrand, a: f64, b: f64, evals: &mut u64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = GL15_W0 * f.eval(c);
    for i in 0..7 {
        acc += GL15_W[i] * (f.eval(c - h * GL15_X[i]) + f.eval(c + h * GL15_X[i]));
    }
    *evals += 15;
    acc * h
}

/// Adaptive composite 15-point Gauss-Legendre with a local Richardson-style
/// error estimate (whole panel vs two half panels).
pub fn integrate(f: &dyn Integrand, a: f64, b: f64, opts: &QuadOpts) -> Result<QuadratureResult> {
    if a > b {
        return Err(Error::Domain(format!("integrate: a = {a} > b = {b}")));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::Domain("integrate: tol must be positive".into()));
    }
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            err_estimate: 0.0,
            evaluations: 0,
        });
    }
    let span = b - a;
    let mut evals: u64 = 0;

    // Initial partition honoring the integrand's density hint.
    let mut seeds: Vec<(f64, f64)> = Vec::new();
    let mut lo = a;
    while lo < b {
        let hint = f.panel_hint(lo).max(1e-9);
        let hi = (lo + hint).min(b);
        seeds.push((lo, hi));
        lo = hi;
    }

    let mut value = 0.0f64;
    let mut comp = 0.0f64;
    let mut err_total = 0.0f64;
    // Depth-first refinement; fixed order keeps results deterministic.
    let mut stack: Vec<(f64, f64, u32)> = seeds.into_iter().rev().map(|(x, y)| (x, y, 0)).collect();
    while let Some((lo, hi, depth)) = stack.pop() {
        if evals > opts.max_evaluations {
            return Err(Error::BudgetExceeded(opts.max_evaluations));
        }
        let whole = gl15(f, lo, hi, &mut evals);
        let mid = 0.5 * (lo + hi);
        let left = gl15(f, lo, mid, &mut evals);
        let right = gl15(f, mid, hi, &mut evals);
        let refined = left + right;
        let err = (refined - whole).abs();
        let budget_here = opts.tol * ((hi - lo) / span);
        if err <= budget_here || depth >= 48 || hi - lo < 1e-12 * span.max(1.0) {
            let y = refined - comp;
            let t = value + y;
            comp = (t - value) - y;
            value = t;
            err_total += err;
        } else {
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }
    Ok(QuadratureResult {
        value,
        err_estimate: err_total,
        evaluations: evals,
    })
}

/// Identifies one cached prefix-integral family.
#[derive(Debug, Clone, PartialEq)]
pub enum CacheKind {
    /// integral from 1 of |zeta(sigma + it)|^2
    AbsZetaSq { sigma: f64 },
    /// integral from 0 of |zeta(1/2 + it)|^2 (the J integral)
    AbsZetaHalfSq,
    /// integral from 0 of |S1(t)|^{2l}
    S1Pow { l: u32 },
    /// integral from 0 of |f(sigma0 + it)|^2
    Dirichlet { id: String, sigma0: f64 },
}

impl CacheKind {
    /// Lower integration limit; sigma > 1/2 means start at 1, the
    /// critical-line and S1 families start at 0.
    pub fn lower_limit(&self) -> f64 {
        match self {
            CacheKind::AbsZetaSq { .. } => 1.0,
            _ => 0.0,
        }
    }

    pub fn file_name(&self) -> String {
        match self {
            CacheKind::AbsZetaSq { sigma } => format!("abs_zeta_sq_{sigma:.6}.zlpc"),
            CacheKind::AbsZetaHalfSq => "abs_zeta_half_sq.zlpc".to_string(),
            CacheKind::S1Pow { l } => format!("s1_pow_{l}.zlpc"),
            CacheKind::Dirichlet { id, sigma0 } => format!("dirichlet_{id}_{sigma0:.6}.zlpc"),
        }
    }

    pub fn label(&self) -> String {
        match self {
            CacheKind::AbsZetaSq { sigma } => format!("ABS_ZETA_SQ(sigma={sigma})"),
            CacheKind::AbsZetaHalfSq => "ABS_ZETA_HALF_SQ".to_string(),
            CacheKind::S1Pow { l } => format!("S1_POW(l={l})"),
            CacheKind::Dirichlet { id, sigma0 } => format!("DIRICHLET({id}, sigma0={sigma0})"),
        }
    }
}

pub const CACHE_FORMAT_VERSION: u32 = 1;
const CACHE_MAGIC: &[u8; 4] = b"ZLPC";

/// Cumulative checkpoints of a nonnegative prefix integral.
#[derive(Debug, Clone)]
pub struct PrefixCache {
    pub kind: CacheKind,
    pub grid_resolution: f64,
    pub version: u32,
    checkpoints: Vec<(f64, f64)>,
}

impl PrefixCache {
    pub fn new(kind: CacheKind) -> Self {
        PrefixCache {
            kind,
            grid_resolution: 0.0,
            version: CACHE_FORMAT_VERSION,
            checkpoints: Vec::new(),
        }
    }

    pub fn checkpoints(&self) -> &[(f64, f64)] {
        &self.checkpoints
    }

    /// Insert a known checkpoint. Used to anchor a cache at a segment base
    /// (value 0 at the base turns prefixes into segment integrals).
    pub fn seed(&mut self, t: f64, value: f64) {
        self.insert_checkpoint(t, value);
    }

    /// Cumulative integral from the kind's lower limit to `t_upper`, reusing
    /// the largest checkpoint at or below it and integrating only the gap.
    /// Records a new checkpoint at `t_upper`. Returns (value, new evals).
    pub fn prefix_integral(
        &mut self,
        f: &dyn Integrand,
        t_upper: f64,
        opts: &QuadOpts,
    ) -> Result<(f64, u64)> {
        let lower = self.kind.lower_limit();
        if t_upper < lower {
            return Err(Error::Domain(format!(
                "prefix_integral: T = {t_upper} below lower limit {lower}"
            )));
        }
        // exact hit: no new evaluations
        let idx = self
            .checkpoints
            .partition_point(|&(t, _)| t <= t_upper + 1e-12);
        if idx > 0 {
            let (t_prev, v_prev) = self.checkpoints[idx - 1];
            if (t_prev - t_upper).abs() <= 1e-12 {
                return Ok((v_prev, 0));
            }
            let r = integrate(f, t_prev, t_upper, opts)?;
            let value = v_prev + r.value;
            self.insert_checkpoint(t_upper, value);
            Ok((value, r.evaluations))
        } else {
            let r = integrate(f, lower, t_upper, opts)?;
            self.insert_checkpoint(t_upper, r.value);
            Ok((r.value, r.evaluations))
        }
    }

    fn insert_checkpoint(&mut self, t: f64, v: f64) {
        let idx = self.checkpoints.partition_point(|&(x, _)| x < t);
        // keep strict monotonicity in both key and value
        if idx < self.checkpoints.len() && (self.checkpoints[idx].0 - t).abs() <= 1e-12 {
            return;
        }
        self.checkpoints.insert(idx, (t, v));
    }

    pub fn validate_monotone(&self) -> Result<()> {
        for w in self.checkpoints.windows(2) {
            if !(w[1].0 > w[0].0) || w[1].1 < w[0].1 {
                return Err(Error::Domain(format!(
                    "cache {} violates monotonicity near T = {}",
                    self.kind.label(),
                    w[1].0
                )));
            }
        }
        Ok(())
    }

    pub fn path_in(&self, dir: &Path) -> PathBuf {
        dir.join(self.kind.file_name())
    }

    /// Versioned binary serialization: header then fixed-width
    /// little-endian (T, cumulative) records in ascending T.
    pub fn save(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let path = self.path_in(dir);
        let mut buf: Vec<u8> = Vec::with_capacity(64 + 16 * self.checkpoints.len());
        buf.extend_from_slice(CACHE_MAGIC);
        buf.extend_from_slice(&self.version.to_le_bytes());
        match &self.kind {
            CacheKind::AbsZetaSq { sigma } => {
                buf.push(1);
                buf.extend_from_slice(&sigma.to_le_bytes());
            }
            CacheKind::AbsZetaHalfSq => buf.push(2),
            CacheKind::S1Pow { l } => {
                buf.push(3);
                buf.extend_from_slice(&l.to_le_bytes());
            }
            CacheKind::Dirichlet { id, sigma0 } => {
                buf.push(4);
                let bytes = id.as_bytes();
                buf.extend_from_slice(&(bytes.len() as u16).to_le_bytes());
                buf.extend_from_slice(bytes);
                buf.extend_from_slice(&sigma0.to_le_bytes());
            }
        }
        buf.extend_from_slice(&self.grid_resolution.to_le_bytes());
        buf.extend_from_slice(&(self.checkpoints.len() as u64).to_le_bytes());
        for &(t, v) in &self.checkpoints {
            buf.extend_from_slice(&t.to_le_bytes());
            buf.extend_from_slice(&v.to_le_bytes());
        }
        let mut file = fs::File::create(&path)?;
        file.write_all(&buf)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<PrefixCache> {
        let mut data = Vec::new();
        fs::File::open(path)?.read_to_end(&mut data)?;
        let corrupt = |offset: u64, reason: &str| Error::CacheCorrupt {
            path: path.display().to_string(),
            offset,
            reason: reason.to_string(),
        };
        let mut pos = 0usize;
        let take = |pos: &mut usize, n: usize| -> std::result::Result<&[u8], Error> {
            if *pos + n > data.len() {
                return Err(corrupt(*pos as u64, "truncated file"));
            }
            let s = &data[*pos..*pos + n];
            *pos += n;
            Ok(s)
        };
        if take(&mut pos, 4)? != CACHE_MAGIC {
            return Err(corrupt(0, "bad magic"));
        }
        let version = u32::from_le_bytes(take(&mut pos, 4)?.try_into().unwrap());
        if version != CACHE_FORMAT_VERSION {
            return Err(Error::CacheVersionMismatch {
                found: version,
                expected: CACHE_FORMAT_VERSION,
            });
        }
        let tag = take(&mut pos, 1)?[0];
        let kind = match tag {
            1 => CacheKind::AbsZetaSq {
                sigma: f64::from_le_bytes(take(&mut pos, 8)?.try_into().unwrap()),
            },
            2 => CacheKind::AbsZetaHalfSq,
            3 => CacheKind::S1Pow {
                l: u32::from_le_bytes(take(&mut pos, 4)?.try_into().unwrap()),
            },
            4 => {
                let len = u16::from_le_bytes(take(&mut pos, 2)?.try_into().unwrap()) as usize;
                let id = String::from_utf8(take(&mut pos, len)?.to_vec())
                    .map_err(|_| corrupt(pos as u64, "invalid series id"))?;
                let sigma0 = f64::from_le_bytes(take(&mut pos, 8)?.try_into().unwrap());
                CacheKind::Dirichlet { id, sigma0 }
            }
            other => return Err(corrupt(8, &format!("unknown kind tag {other}"))),
        };
        let grid_resolution = f64::from_le_bytes(take(&mut pos, 8)?.try_into().unwrap());
        let count = u64::from_le_bytes(take(&mut pos, 8)?.try_into().unwrap()) as usize;
        let mut checkpoints = Vec::with_capacity(count);
        for i in 0..count {
            let rec_off = pos as u64;
            let t = f64::from_le_bytes(take(&mut pos, 8)?.try_into().unwrap());
            let v = f64::from_le_bytes(take(&mut pos, 8)?.try_into().unwrap());
            if let Some(&(tp, vp)) = checkpoints.last() {
                if t <= tp || v < vp {
                    return Err(corrupt(
                        rec_off,
                        &format!("record {i} breaks monotonic ordering"),
                    ));
                }
            }
            checkpoints.push((t, v));
        }
        Ok(PrefixCache {
            kind,
            grid_resolution,
            version,
            checkpoints,
        })
    }
}

/// Advisory cross-process lock on a cache directory.
pub struct CacheLock {
    path: PathBuf,
}

impl CacheLock {
    pub fn acquire(dir: &Path) -> Result<CacheLock> {
        fs::create_dir_all(dir)?;
        let path = dir.join(".zetalab.lock");
        match fs::OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(_) => Ok(CacheLock { path }),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => Err(Error::Domain(
                format!("cache directory locked by another process ({})", path.display()),
            )),
            Err(e) => Err(e.into()),
        }
    }
}

impl Drop for CacheLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}
