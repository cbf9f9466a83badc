use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zeta has a pole at s = 1 (|s - 1| = {0:e})")]
    PoleAtOne(f64),
    #[error("accuracy target {target:e} not reached, best bound {best:e}")]
    AccuracyNotReached { target: f64, best: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("zeta modulus below {0:e} at the path end; retry with a small t-offset")]
    ZeroProximity(f64),
    #[error("evaluation budget of {0} integrand calls exceeded")]
    BudgetExceeded(u64),
    #[error("cache version mismatch: file has {found}, expected {expected}")]
    CacheVersionMismatch { found: u32, expected: u32 },
    #[error("cache corruption in {path} at offset {offset}: {reason}")]
    CacheCorrupt {
        path: String,
        offset: u64,
        reason: String,
    },
    #[error("root bracket [{lo}, {hi}] does not enclose the target after expansion")]
    BracketFailure { lo: f64, hi: f64 },
    #[error("tail bound model cannot certify tolerance {target:e} (best {best:e} at N = {n})")]
    TailBoundUnavailable { target: f64, best: f64, n: u64 },
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),
    #[error("required constant unavailable: {0}")]
    ConstantUnavailable(String),
    #[error("enumeration limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code per the CLI contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            Error::BudgetExceeded(_) => 4,
            Error::CacheCorrupt { .. } | Error::CacheVersionMismatch { .. } => 5,
            _ => 3,
        }
    }
}
