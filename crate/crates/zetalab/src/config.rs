//! Run configuration: tolerances, admissibility threshold, calibration
//! height, evaluation caps, cache location, and output format.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zeta_kernel::EULER_GAMMA;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub cache_dir: PathBuf,
    /// master relative tolerance for functional evaluation
    pub tol: f64,
    /// admissibility threshold: sigma >= 1/2 + epsilon below sigma = 1
    pub epsilon: f64,
    /// the ladder constant c
    pub euler_c: f64,
    /// height at which Selberg constants are calibrated
    pub calibration_t: f64,
    /// Fermat enumeration caps
    pub h_max_cap: u64,
    pub n_max_cap: u32,
    /// ladder depth cap inside functionals
    pub k_cap: u32,
    /// restore the paper's printed |S1|^2 exponent instead of |S1|^{2l}
    pub s1_literal_square: bool,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cache_dir: PathBuf::from("zetalab-cache"),
            tol: 1e-6,
            epsilon: 0.05,
            euler_c: EULER_GAMMA,
            calibration_t: 4000.0,
            h_max_cap: crate::fermat::H_MAX_CAP,
            n_max_cap: crate::fermat::N_MAX_CAP,
            k_cap: crate::functionals::K_CAP,
            s1_literal_square: false,
            format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let config: RunConfig = serde_json::from_str(&text)
            .map_err(|e| Error::Usage(format!("{}: {}", path.display(), e)))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Usage(format!("tol must be positive, got {}", self.tol)));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::Usage(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if !(0.0 < self.euler_c && self.euler_c < 1.0) {
            return Err(Error::Usage(format!(
                "the ladder constant must lie in (0, 1), got {}",
                self.euler_c
            )));
        }
        if !(self.calibration_t >= 500.0) {
            return Err(Error::Usage(format!(
                "calibration height must be >= 500, got {}",
                self.calibration_t
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn defaults_validate() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn round_trip_and_overrides() {
        let mut tmp = tempfile::NamedTempFile::new().unwrap();
        write!(tmp, "{{\"tol\": 1e-4, \"format\": \"csv\"}}").unwrap();
        tmp.flush().unwrap();
        let config = RunConfig::load(tmp.path()).unwrap();
        assert_eq!(config.tol, 1e-4);
        assert_eq!(config.format, OutputFormat::Csv);
        // untouched fields keep defaults
        assert_eq!(config.epsilon, 0.05);
    }

    #[test]
    fn bad_values_rejected() {
        let config = RunConfig {
            tol: -1.0,
            ..RunConfig::default()
        };
        assert!(config.validate().is_err());
        let config = RunConfig {
            euler_c: 1.5,
            ..RunConfig::default()
        };
        assert!(config.validate().is_err());
    }
}
