//! Batch experiments over ranges of primes and integers.

mod census;
mod composites;
mod config;
mod driver;
mod emit;
mod primes;
mod report;

pub use census::{lemma_simple_census, lemma_simple_report, CENSUS_PRIME_BOUND, CENSUS_Y_MAX};
pub use composites::{carmichael_lower_bound, meets_threshold, scan_composites};
pub use config::{
    ExperimentConfig, RunControls, Subject, ThresholdFn, COMPOSITE_LIMIT_DEFAULT_CAP, PRIME_LIMIT_DEFAULT_CAP,
};
pub use emit::{emit_report, write_report, ReportFormat};
pub use primes::{bad_prime_beta, chebotarev_ratio, chebotarev_row, scan_prime_range, scan_primes, PrimeScanPart};
pub use report::{
    BetaRow, BetaSection, ChebotarevRow, CompositeDecadeRow, CompositeSummary, DecadeRow, Distribution,
    ExperimentReport, LemmaCensus, LowOrderPrime, Records, ReportKind, SquareTailRow, Tables, Timing,
};
