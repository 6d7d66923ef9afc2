use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::order::{CompositeOrderRecord, PrimeOrderRecord};
use crate::serde_dec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportKind {
    PrimeScan,
    CompositeScan,
    Chebotarev,
    BadPrimes,
    LemmaSimple,
}

/// Counts over the primes in `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecadeRow {
    pub start: u64,
    pub end: u64,
    pub primes: u64,
    /// Primes with `ord < p / f(p)`.
    pub low_order: u64,
    pub bad: u64,
    pub low_fraction: f64,
    pub bad_fraction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChebotarevRow {
    pub n: u64,
    /// Unramified primes with `n | i_p`.
    pub hits: u64,
    pub unramified: u64,
    pub empirical: f64,
    pub degree_lower: u64,
    pub degree_upper: u64,
    pub predicted_low: f64,
    pub predicted_high: f64,
    pub within_interval: bool,
    pub log_disc_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompositeDecadeRow {
    pub start: u64,
    pub end: u64,
    pub count: u64,
    /// `N` with `ord_N >= N^(1 - epsilon)`.
    pub meets: u64,
    pub fraction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub median: f64,
}

/// `#{N <= x : s >= y}` next to the `x / y` scale it should stay within.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SquareTailRow {
    pub y: u64,
    pub count: u64,
    /// `count * y / x`.
    pub scaled: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositeSummary {
    pub decades: Vec<CompositeDecadeRow>,
    pub scanned: u64,
    /// `N` skipped because `gcd(b, N) > 1`.
    pub skipped: u64,
    pub meets: u64,
    pub meets_fraction: f64,
    pub lambda_ratio: Option<Distribution>,
    pub square_tail: Vec<SquareTailRow>,
    /// `N` whose bad part `N_B` exceeds 1.
    pub with_bad_part: u64,
    /// `N` with `ord_N < floor(lambda(N)/N * prod ord_p)` over unramified `p | N`.
    pub carmichael_violations: u64,
    /// The first few violating `N`, ascending.
    pub carmichael_violation_examples: Vec<u64>,
    /// `N` with `ord_N >=` the Prop-11 style lower bound.
    pub prop11_satisfied: u64,
    pub prop11_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Tables {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub decades: Vec<DecadeRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chebotarev: Vec<ChebotarevRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub composite: Option<CompositeSummary>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaRow {
    pub z: u64,
    pub beta: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct BetaSection {
    pub bad_primes: Vec<u64>,
    pub sums: Vec<BetaRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowOrderPrime {
    pub p: u64,
    pub ord: u64,
    pub divides_m: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaCensus {
    pub y: u64,
    /// `prod_{n <= y} det(A^n - I)`.
    #[serde(with = "serde_dec::bigint")]
    pub m: num_bigint::BigInt,
    pub prime_bound: u64,
    pub low_order_primes: Vec<LowOrderPrime>,
    pub divisor_check: bool,
    pub log_m_over_y2: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Records {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<PrimeOrderRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub composites: Vec<CompositeOrderRecord>,
}

/// Run metadata. The only part of a report that may differ between runs.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_secs: f64,
    pub workers: usize,
    pub resumed_from: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub kind: ReportKind,
    pub partial: bool,
    /// Largest integer whose contribution is included.
    pub completed_upto: u64,
    pub config: ExperimentConfig,
    pub tables: Tables,
    /// Torus index `i_p` to number of unramified primes with that index.
    pub histogram: BTreeMap<u64, u64>,
    pub beta: BetaSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub census: Option<LemmaCensus>,
    pub records: Records,
    pub timing: Timing,
}

impl ExperimentReport {
    pub fn empty(kind: ReportKind, config: ExperimentConfig) -> Self {
        ExperimentReport {
            kind,
            partial: false,
            completed_upto: 0,
            config,
            tables: Tables::default(),
            histogram: BTreeMap::new(),
            beta: BetaSection::default(),
            census: None,
            records: Records::default(),
            timing: Timing::default(),
        }
    }

    pub fn with_kind(mut self, kind: ReportKind) -> Self {
        self.kind = kind;
        self
    }
}
