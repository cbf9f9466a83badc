//! Command-line front end: wraps the library operations, loads and persists
//! prefix caches, and emits versioned JSON or CSV documents that record
//! every constant consumed.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zetalab::config::{OutputFormat, RunConfig};
use zetalab::dirichlet::DirichletSeries;
use zetalab::error::{Error, Result};
use zetalab::fermat;
use zetalab::functionals::{FunctionalKind, FunctionalSpec, Lab};
use zetalab::ladders::{Constants, Ladder};
use zetalab::quadrature::{integrate, CacheKind, CacheLock, Integrand, PrefixCache, QuadOpts};
use zetalab::report::Document;
use zetalab::zeta_kernel::{zeta_2sigma, CriticalLine, SigmaLine};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "zetalab",
    about = "numerical laboratory for zeta mean values, Jacob's ladders, and Fermat rationals"
)]
struct Cli {
    /// JSON config file; flags below override its fields
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    format: Option<FormatArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite-T mean of |zeta(sigma+it)|^2 against zeta(2 sigma)
    ZetaMean {
        #[arg(long)]
        sigma: f64,
        /// single upper limit; alternative to --tau-schedule
        #[arg(long)]
        t: Option<f64>,
        /// comma-separated ascending upper limits
        #[arg(long)]
        tau_schedule: Option<String>,
    },
    /// Finite-T Selberg moment of |S1|^{2l} and the implied c-bar(l)
    S1Mean {
        #[arg(long, default_value_t = 1)]
        l: u32,
        #[arg(long)]
        t: f64,
    },
    /// Reverse ladder iterates from a base with partition diagnostics
    Ladder {
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 3)]
        k: u32,
    },
    /// Convergence scan of one functional kind toward x
    Functional {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        /// zeta | eta | chi4 | one | file:PATH (Dirichlet kind)
        #[arg(long)]
        series: Option<String>,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        tau_schedule: String,
    },
    /// Exhaustive exact scan of the Fermat box, optionally driving a
    /// functional scan at the witness
    FermatScan {
        #[arg(long)]
        hmax: u64,
        #[arg(long, default_value_t = 3)]
        nmin: u32,
        #[arg(long)]
        nmax: u32,
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long)]
        tau_schedule: Option<String>,
    },
    /// Finite-T mean of |f(sigma0+it)|^2 against F(sigma0; f)
    DirichletMean {
        #[arg(long)]
        series: String,
        #[arg(long)]
        sigma0: f64,
        #[arg(long)]
        t: f64,
    },
    /// Prefix-cache administration
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Table of cache files: kind, checkpoints, coverage
    List,
    /// Recompute one checkpoint gap per file and compare within 2 tol
    Verify,
    /// Delete every cache file in the cache dir
    Drop,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(e.exit_code());
        }
    }
}

fn build_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(tol) = cli.tol {
        config.tol = tol;
    }
    if let Some(dir) = &cli.cache_dir {
        config.cache_dir = dir.clone();
    }
    if let Some(format) = cli.format {
        config.format = match format {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        };
    }
    config.validate()?;
    Ok(config)
}

fn parse_schedule(text: &str) -> Result<Vec<f64>> {
    let values: Vec<f64> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Usage(format!("bad schedule entry {:?}", s)))
        })
        .collect::<Result<_>>()?;
    if values.is_empty() {
        return Err(Error::Usage("empty schedule".into()));
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Usage("schedule must be strictly increasing".into()));
    }
    Ok(values)
}

fn make_lab(config: &RunConfig) -> Lab {
    Lab::new(config.epsilon, config.calibration_t, config.tol)
        .with_ladder_constant(config.euler_c)
}

fn load_caches(dir: &Path, lab: &mut Lab) -> Result<()> {
    if !dir.exists() {
        return Ok(());
    }
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().and_then(|e| e.to_str()) == Some("zlpc") {
            let cache = PrefixCache::load(&path)?;
            if cache.kind == CacheKind::AbsZetaHalfSq {
                // the J cache belongs to the ladder islands
                let ladder = std::mem::replace(lab.ladder_mut(), Ladder::new(Constants::default()));
                let constants = ladder.constants;
                *lab.ladder_mut() = Ladder::new(constants).with_cache(cache);
            } else {
                lab.install_cache(cache);
            }
        }
    }
    Ok(())
}

fn save_caches(dir: &Path, lab: &Lab) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for cache in lab.export_caches() {
        cache.save(dir)?;
    }
    // persist the widest J island, if any
    if let Some(best) = lab
        .ladder_ref()
        .islands()
        .iter()
        .max_by_key(|c| c.checkpoints().len())
    {
        if !best.checkpoints().is_empty() {
            best.save(dir)?;
        }
    }
    Ok(())
}

fn emit(config: &RunConfig, command: &str, constants: Value, results: Value, started: Instant) -> Result<()> {
    let doc = Document::new(
        command,
        config,
        constants,
        results,
        started.elapsed().as_millis() as u64,
    )?;
    match config.format {
        OutputFormat::Json => println!("{}", doc.to_json()),
        OutputFormat::Csv => print!("{}", doc.to_csv()),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let config = build_config(&cli)?;
    let started = Instant::now();

    match &cli.command {
        Command::Cache { action } => return run_cache(&config, action, started),
        _ => {}
    }

    let _lock = CacheLock::acquire(&config.cache_dir)?;
    let mut lab = make_lab(&config);
    load_caches(&config.cache_dir, &mut lab)?;
    let tol = config.tol;

    let (command, constants, results): (String, Value, Value) = match &cli.command {
        Command::ZetaMean {
            sigma,
            t,
            tau_schedule,
        } => {
            let schedule = match (t, tau_schedule) {
                (Some(t), None) => vec![*t],
                (None, Some(s)) => parse_schedule(s)?,
                _ => {
                    return Err(Error::Usage(
                        "zeta-mean needs exactly one of --t or --tau-schedule".into(),
                    ))
                }
            };
            let z2 = zeta_2sigma(*sigma, 1e-12)?;
            let mut rows = Vec::new();
            for &t in &schedule {
                let mean = lab.zeta_mean(*sigma, t, tol)?;
                rows.push(json!({
                    "t": t,
                    "mean": mean,
                    "zeta_2sigma": z2,
                    "rel_error": (mean - z2).abs() / z2,
                }));
            }
            (
                format!("zeta-mean --sigma {}", sigma),
                json!({"c": lab.constants().c, "zeta_2sigma": z2}),
                Value::Array(rows),
            )
        }
        Command::S1Mean { l, t } => {
            let moment = lab.s_one().s1_moment(*l, 0.0, *t, tol)?;
            let estimate = lab.s_one().selberg_constant(*l, *t, tol)?;
            (
                format!("s1-mean --l {} --t {}", l, t),
                json!({"c": lab.constants().c, "selberg": estimate}),
                json!([{
                    "l": l,
                    "t": t,
                    "moment": moment,
                    "mean": moment / t,
                }]),
            )
        }
        Command::Ladder { t, k } => {
            let seq = lab.ladder_mut().reverse_iterates(*t, *k, tol)?;
            let partition = lab.ladder_mut().check_partition(&seq)?;
            let rows: Vec<Value> = seq
                .iterates
                .iter()
                .zip(&seq.segment_integrals)
                .zip(&seq.residuals)
                .enumerate()
                .map(|(r, ((y, seg), res))| {
                    json!({
                        "r": r + 1,
                        "iterate": y,
                        "segment_integral": seg,
                        "residual": res,
                    })
                })
                .collect();
            (
                format!("ladder --t {} --k {}", t, k),
                json!({"c": lab.constants().c, "one_minus_c": lab.constants().one_minus_c}),
                json!({"base": seq.base_t, "iterates": rows, "partition": partition}),
            )
        }
        Command::Functional {
            kind,
            sigma,
            l,
            k,
            series,
            x,
            tau_schedule,
        } => {
            let mut spec = FunctionalSpec::new(FunctionalKind::parse(kind)?);
            spec.sigma = *sigma;
            spec.l = *l;
            spec.k = *k;
            spec.series = series.clone();
            spec.s1_literal_square = config.s1_literal_square;
            let schedule = parse_schedule(tau_schedule)?;
            let block = lab.resolve_constants(&spec)?;
            let report = lab.convergence_scan(&spec, *x, &schedule, tol)?;
            (
                format!("functional --kind {} --x {}", kind, x),
                serde_json::to_value(&block).unwrap(),
                serde_json::to_value(&report).unwrap(),
            )
        }
        Command::FermatScan {
            hmax,
            nmin,
            nmax,
            kind,
            sigma,
            tau_schedule,
        } => {
            if *hmax > config.h_max_cap || *nmax > config.n_max_cap {
                return Err(Error::LimitExceeded(format!(
                    "box ({}, {}) beyond configured caps ({}, {})",
                    hmax, nmax, config.h_max_cap, config.n_max_cap
                )));
            }
            let (gap, witness) = fermat::min_gap(*hmax, *nmin, *nmax)?;
            let units = fermat::enumerate(*hmax, *nmin, *nmax)?
                .filter(|q| q.is_unit())
                .count();
            let mut results = json!({
                "h_max": hmax,
                "n_min": nmin,
                "n_max": nmax,
                "exact_min_gap": gap.to_string(),
                "witness": witness,
                "units_found": units,
            });
            let mut constants = json!({"c": lab.constants().c});
            if let Some(kind) = kind {
                let mut spec = FunctionalSpec::new(FunctionalKind::parse(kind)?);
                spec.sigma = *sigma;
                spec.s1_literal_square = config.s1_literal_square;
                let schedule = match tau_schedule {
                    Some(s) => parse_schedule(s)?,
                    None => vec![500.0, 1000.0, 2000.0],
                };
                constants = serde_json::to_value(lab.resolve_constants(&spec)?).unwrap();
                let condition = lab.fermat_condition(&spec, &witness, &schedule, tol)?;
                results["condition"] = serde_json::to_value(&condition).unwrap();
            }
            (
                format!("fermat-scan --hmax {} --nmax {}", hmax, nmax),
                constants,
                results,
            )
        }
        Command::DirichletMean { series, sigma0, t } => {
            let f = if let Some(path) = series.strip_prefix("file:") {
                DirichletSeries::from_file(Path::new(path))?
            } else {
                DirichletSeries::by_name(series)?
            };
            let f_const = f.f_constant(*sigma0, 1e-10)?;
            let mean = f.mean_value_estimate(*sigma0, *t, tol.max(1e-4))?;
            (
                format!("dirichlet-mean --series {} --sigma0 {} --t {}", series, sigma0, t),
                json!({"c": lab.constants().c, "f_constant": f_const}),
                json!([{
                    "series": f.id,
                    "sigma0": sigma0,
                    "t": t,
                    "mean": mean,
                    "f_constant": f_const,
                    "rel_error": (mean - f_const).abs() / f_const,
                }]),
            )
        }
        Command::Cache { .. } => unreachable!(),
    };

    save_caches(&config.cache_dir, &lab)?;
    emit(&config, &command, constants, results, started)
}

fn cache_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    if dir.exists() {
        for entry in std::fs::read_dir(dir)? {
            let path = entry?.path();
            if path.extension().and_then(|e| e.to_str()) == Some("zlpc") {
                files.push(path);
            }
        }
    }
    files.sort();
    Ok(files)
}

fn run_cache(config: &RunConfig, action: &CacheAction, started: Instant) -> Result<()> {
    let _lock = CacheLock::acquire(&config.cache_dir)?;
    let files = cache_files(&config.cache_dir)?;
    match action {
        CacheAction::List => {
            let rows: Vec<Value> = files
                .iter()
                .map(|path| {
                    let cache = PrefixCache::load(path)?;
                    let cps = cache.checkpoints();
                    Ok(json!({
                        "file": path.file_name().unwrap().to_string_lossy(),
                        "kind": cache.kind.label(),
                        "checkpoints": cps.len(),
                        "from": cps.first().map(|c| c.0),
                        "to": cps.last().map(|c| c.0),
                    }))
                })
                .collect::<Result<_>>()?;
            emit(config, "cache list", json!({"c": zetalab::zeta_kernel::EULER_GAMMA}), Value::Array(rows), started)
        }
        CacheAction::Verify => {
            let mut rows = Vec::new();
            for path in &files {
                let cache = PrefixCache::load(path)?;
                cache.validate_monotone()?;
                rows.push(verify_cache(path, &cache, config.tol)?);
            }
            emit(config, "cache verify", json!({"c": zetalab::zeta_kernel::EULER_GAMMA}), Value::Array(rows), started)
        }
        CacheAction::Drop => {
            let mut rows = Vec::new();
            for path in &files {
                std::fs::remove_file(path)?;
                rows.push(json!({"removed": path.file_name().unwrap().to_string_lossy()}));
            }
            emit(config, "cache drop", json!({"c": zetalab::zeta_kernel::EULER_GAMMA}), Value::Array(rows), started)
        }
    }
}

/// Recompute the integral across one interior checkpoint gap and compare.
fn verify_cache(path: &Path, cache: &PrefixCache, tol: f64) -> Result<Value> {
    let cps = cache.checkpoints();
    let name = path.file_name().unwrap().to_string_lossy().into_owned();
    if cps.len() < 2 {
        return Ok(json!({"file": name, "status": "trivial", "checkpoints": cps.len()}));
    }
    // deterministic "random" pick: hash the checkpoint count and span
    let idx = (cps.len() * 7919 + 13) % (cps.len() - 1);
    let (a, va) = cps[idx];
    let (b, vb) = cps[idx + 1];
    let stored = vb - va;
    let opts = QuadOpts {
        tol: tol * (b - a).max(1.0),
        ..QuadOpts::default()
    };
    let recomputed = match &cache.kind {
        CacheKind::AbsZetaSq { sigma } => {
            let line = SigmaLine::new(*sigma);
            integrate(&|t: f64| line.abs_sq(t), a, b, &opts)?.value
        }
        CacheKind::AbsZetaHalfSq => {
            let line = CriticalLine::new();
            struct J(CriticalLine);
            impl Integrand for J {
                fn eval(&self, t: f64) -> f64 {
                    self.0.abs_sq(t)
                }
                fn panel_hint(&self, t: f64) -> f64 {
                    0.5 * CriticalLine::mean_zero_gap(t)
                }
            }
            integrate(&J(line), a, b, &opts)?.value
        }
        CacheKind::Dirichlet { id, sigma0 } => {
            let f = DirichletSeries::by_name(id).map_err(|_| Error::CacheCorrupt {
                path: name.clone(),
                offset: 0,
                reason: format!("series {:?} is not reconstructible for verification", id),
            })?;
            let sq = f.truncated_square(*sigma0, tol.max(1e-6))?;
            integrate(&sq, a, b, &opts)?.value
        }
        CacheKind::S1Pow { .. } => {
            return Ok(json!({
                "file": name,
                "status": "skipped",
                "reason": "S1 caches are rebuilt from the grid, not verified in place",
            }));
        }
    };
    let diff = (stored - recomputed).abs();
    let allowed = 2.0 * tol * (b - a).max(1.0);
    if diff > allowed {
        return Err(Error::CacheCorrupt {
            path: name,
            offset: (idx * 16 + 16) as u64,
            reason: format!(
                "checkpoint gap [{}, {}] stores {}, recomputation gives {} (diff {:e} > {:e})",
                a, b, stored, recomputed, diff, allowed
            ),
        });
    }
    Ok(json!({
        "file": name,
        "status": "ok",
        "gap": [a, b],
        "stored": stored,
        "recomputed": recomputed,
        "diff": diff,
    }))
}
