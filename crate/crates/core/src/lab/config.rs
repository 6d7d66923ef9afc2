use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::SIEVE_LIMIT_MAX;
use crate::error::{Error, Result};
use crate::quad::Sl2Matrix;

/// Default cap on composite scans; `max_limit` lifts it up to the sieve cap.
pub const COMPOSITE_LIMIT_DEFAULT_CAP: u64 = 1_000_000;
/// Default cap on prime scans.
pub const PRIME_LIMIT_DEFAULT_CAP: u64 = SIEVE_LIMIT_MAX;

/// What a scan computes orders of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    Matrix(Sl2Matrix),
    Base(i64),
}

impl Subject {
    pub fn matrix(&self) -> Option<&Sl2Matrix> {
        match self {
            Subject::Matrix(m) => Some(m),
            Subject::Base(_) => None,
        }
    }
}

/// The slowly growing `f` in the low-order test `ord_p < p / f(p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdFn {
    Log,
    LogLog,
    /// `p^alpha` with `0 < alpha <= 0.1`.
    Power(f64),
}

impl ThresholdFn {
    pub fn eval(&self, p: f64) -> f64 {
        match *self {
            ThresholdFn::Log => p.ln(),
            ThresholdFn::LogLog => p.ln().ln(),
            ThresholdFn::Power(alpha) => p.powf(alpha),
        }
    }

    /// `ord < p / f(p)`.
    pub fn is_low(&self, ord: u64, p: u64) -> bool {
        (ord as f64) < p as f64 / self.eval(p as f64)
    }
}

impl fmt::Display for ThresholdFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdFn::Log => f.write_str("log"),
            ThresholdFn::LogLog => f.write_str("loglog"),
            ThresholdFn::Power(alpha) => write!(f, "pow:{alpha}"),
        }
    }
}

impl FromStr for ThresholdFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log" => Ok(ThresholdFn::Log),
            "loglog" => Ok(ThresholdFn::LogLog),
            _ => {
                let alpha = s
                    .strip_prefix("pow:")
                    .and_then(|a| a.parse::<f64>().ok())
                    .ok_or_else(|| Error::invalid(format!("unknown threshold function {s:?}; use log, loglog or pow:ALPHA")))?;
                if !(alpha > 0.0 && alpha <= 0.1) {
                    return Err(Error::invalid(format!("pow exponent must lie in (0, 0.1], got {alpha}")));
                }
                Ok(ThresholdFn::Power(alpha))
            }
        }
    }
}

impl Serialize for ThresholdFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ThresholdFn {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Execution controls. They never change a computed value, so they are left
/// out of config comparisons and of the config echoed into reports.
#[derive(Debug, Clone, Default)]
pub struct RunControls {
    /// Worker threads; 0 means available parallelism.
    pub workers: usize,
    /// Where to persist progress after each batch of chunks.
    pub checkpoint_path: Option<PathBuf>,
    /// Wall-clock budget in seconds; exceeding it yields a partial report.
    pub time_budget_secs: Option<f64>,
}

impl RunControls {
    pub fn effective_workers(&self) -> usize {
        if self.workers > 0 {
            self.workers
        } else {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub subject: Subject,
    pub limit: u64,
    #[serde(rename = "f")]
    pub threshold: ThresholdFn,
    pub epsilon: f64,
    pub n_list: Vec<u64>,
    pub z_list: Vec<u64>,
    /// Chunk size, in integers, of the scan range.
    pub checkpoint_every: u64,
    /// Raises the default range cap (never above the sieve cap).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_limit: Option<u64>,
    #[serde(skip)]
    pub run: RunControls,
}

impl PartialEq for ExperimentConfig {
    fn eq(&self, other: &Self) -> bool {
        self.subject == other.subject
            && self.limit == other.limit
            && self.threshold == other.threshold
            && self.epsilon.to_bits() == other.epsilon.to_bits()
            && self.n_list == other.n_list
            && self.z_list == other.z_list
            && self.checkpoint_every == other.checkpoint_every
            && self.max_limit == other.max_limit
    }
}

impl ExperimentConfig {
    pub fn new(subject: Subject, limit: u64) -> Self {
        ExperimentConfig {
            subject,
            limit,
            threshold: ThresholdFn::Log,
            epsilon: 0.1,
            n_list: vec![2, 3, 4, 5],
            z_list: vec![100, 1_000, 10_000, 100_000],
            checkpoint_every: 100_000,
            max_limit: None,
            run: RunControls::default(),
        }
    }

    pub fn for_matrix(matrix: Sl2Matrix, limit: u64) -> Self {
        Self::new(Subject::Matrix(matrix), limit)
    }

    pub fn for_base(base: i64, limit: u64) -> Self {
        Self::new(Subject::Base(base), limit)
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.run.workers = workers;
        self
    }

    /// Checks every field; `default_cap` is the range cap for this kind of scan.
    pub fn validate(&self, default_cap: u64) -> Result<()> {
        if self.limit < 2 {
            return Err(Error::invalid(format!("limit must be at least 2, got {}", self.limit)));
        }
        let cap = self.max_limit.unwrap_or(default_cap).min(SIEVE_LIMIT_MAX);
        if self.limit > cap {
            return Err(Error::ResourceLimit { what: format!("scan limit {}", self.limit), limit: cap as u128 });
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::invalid(format!("epsilon must lie in (0, 1), got {}", self.epsilon)));
        }
        if let ThresholdFn::Power(alpha) = self.threshold {
            if !(alpha > 0.0 && alpha <= 0.1) {
                return Err(Error::invalid(format!("pow exponent must lie in (0, 0.1], got {alpha}")));
            }
        }
        if let Some(&n) = self.n_list.iter().find(|&&n| n < 2) {
            return Err(Error::invalid(format!("n_list entries must be at least 2, got {n}")));
        }
        if self.z_list.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::invalid("z_list must be ascending"));
        }
        if self.checkpoint_every == 0 {
            return Err(Error::invalid("checkpoint_every must be positive"));
        }
        if let Subject::Matrix(m) = &self.subject {
            m.require_hyperbolic()?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_parsing() {
        assert_eq!("log".parse::<ThresholdFn>().unwrap(), ThresholdFn::Log);
        assert_eq!("loglog".parse::<ThresholdFn>().unwrap(), ThresholdFn::LogLog);
        assert_eq!("pow:0.05".parse::<ThresholdFn>().unwrap(), ThresholdFn::Power(0.05));
        assert!("pow:0.5".parse::<ThresholdFn>().is_err());
        assert!("sqrt".parse::<ThresholdFn>().is_err());
        assert_eq!(ThresholdFn::Power(0.05).to_string(), "pow:0.05");
    }

    #[test]
    fn validation() {
        let m = Sl2Matrix::companion(3);
        assert!(ExperimentConfig::for_matrix(m, 100).validate(PRIME_LIMIT_DEFAULT_CAP).is_ok());
        assert!(ExperimentConfig::for_matrix(m, 1).validate(PRIME_LIMIT_DEFAULT_CAP).is_err());
        let big = ExperimentConfig::for_matrix(m, 2_000_000);
        assert!(matches!(big.validate(COMPOSITE_LIMIT_DEFAULT_CAP), Err(Error::ResourceLimit { .. })));
        let mut lifted = big.clone();
        lifted.max_limit = Some(5_000_000);
        assert!(lifted.validate(COMPOSITE_LIMIT_DEFAULT_CAP).is_ok());
        let mut c = ExperimentConfig::for_matrix(m, 100);
        c.epsilon = 1.0;
        assert!(c.validate(PRIME_LIMIT_DEFAULT_CAP).is_err());
        let mut c = ExperimentConfig::for_matrix(m, 100);
        c.n_list = vec![1];
        assert!(c.validate(PRIME_LIMIT_DEFAULT_CAP).is_err());
        let mut c = ExperimentConfig::for_matrix(m, 100);
        c.z_list = vec![10, 5];
        assert!(c.validate(PRIME_LIMIT_DEFAULT_CAP).is_err());
        let c = ExperimentConfig::for_matrix(Sl2Matrix::companion(1), 100);
        assert!(c.validate(PRIME_LIMIT_DEFAULT_CAP).is_err());
    }

    #[test]
    fn run_controls_do_not_affect_equality() {
        let m = Sl2Matrix::companion(3);
        let a = ExperimentConfig::for_matrix(m, 100).with_workers(1);
        let b = ExperimentConfig::for_matrix(m, 100).with_workers(8);
        assert_eq!(a, b);
        let json = serde_json::to_string(&a).unwrap();
        assert!(!json.contains("workers"));
        let back: ExperimentConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }
}
