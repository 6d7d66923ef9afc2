use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, Subject, PRIME_LIMIT_DEFAULT_CAP};
use super::driver::{drive, Tally};
use super::report::{BetaRow, BetaSection, ChebotarevRow, DecadeRow, ExperimentReport, ReportKind, Timing};
use crate::arith::{sieve_primes, PrimeTable};
use crate::error::{Error, Result};
use crate::order::{IntegerOrderEngine, MatrixOrderEngine, PrimeOrderRecord};
use crate::quad::{discriminant_log_bound, field_data, kummer_degree_interval, PrimeSplitting, QuadFieldData};

/// Order records for either kind of subject.
#[derive(Debug, Clone)]
pub(crate) enum OrderSource {
    Matrix(MatrixOrderEngine),
    Base(IntegerOrderEngine),
}

impl OrderSource {
    pub(crate) fn new(subject: &Subject) -> Result<Self> {
        Ok(match subject {
            Subject::Matrix(m) => OrderSource::Matrix(MatrixOrderEngine::new(m)?),
            Subject::Base(b) => {
                if b.unsigned_abs() < 2 {
                    return Err(Error::invalid(format!("base must not be 0 or +-1, got {b}")));
                }
                OrderSource::Base(IntegerOrderEngine::new(*b))
            }
        })
    }

    /// `None` for primes dividing an integer base.
    pub(crate) fn prime_record(&self, p: u64) -> Result<Option<PrimeOrderRecord>> {
        match self {
            OrderSource::Matrix(e) => e.prime_record(p).map(Some),
            OrderSource::Base(e) => {
                if e.base() % p as i64 == 0 {
                    Ok(None)
                } else {
                    e.prime_record(p).map(Some)
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct DecadeCounts {
    primes: u64,
    low: u64,
    bad: u64,
}

/// Per-chunk aggregate of a prime scan.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub(crate) struct PrimeTally {
    pub records: Vec<PrimeOrderRecord>,
    decades: BTreeMap<u32, DecadeCounts>,
    histogram: BTreeMap<u64, u64>,
}

impl Tally for PrimeTally {
    fn merge(&mut self, later: Self) {
        self.records.extend(later.records);
        for (d, c) in later.decades {
            let e = self.decades.entry(d).or_default();
            e.primes += c.primes;
            e.low += c.low;
            e.bad += c.bad;
        }
        for (i, c) in later.histogram {
            *self.histogram.entry(i).or_default() += c;
        }
    }
}

fn decade_of(n: u64) -> u32 {
    n.ilog10()
}

fn tally_range(source: &OrderSource, config: &ExperimentConfig, table: &PrimeTable, lo: u64, hi: u64) -> Result<PrimeTally> {
    let mut tally = PrimeTally::default();
    for &p in table.range(lo, hi) {
        let Some(rec) = source.prime_record(p)? else { continue };
        let counts = tally.decades.entry(decade_of(p)).or_default();
        counts.primes += 1;
        counts.low += config.threshold.is_low(rec.ord, p) as u64;
        counts.bad += rec.is_bad as u64;
        if let Some(i) = rec.index {
            if rec.class != PrimeSplitting::Ramified {
                *tally.histogram.entry(i).or_default() += 1;
            }
        }
        tally.records.push(rec);
    }
    Ok(tally)
}

/// Scans primes in `[lo, hi]` (clamped to the configured limit) without
/// threads or checkpoints. Merging the scans of a partition of `[2, x]`
/// gives the scan of `[2, x]`.
pub fn scan_prime_range(config: &ExperimentConfig, lo: u64, hi: u64) -> Result<PrimeScanPart> {
    config.validate(PRIME_LIMIT_DEFAULT_CAP)?;
    let source = OrderSource::new(&config.subject)?;
    let hi = hi.min(config.limit);
    let table = sieve_primes(hi.max(2))?;
    Ok(PrimeScanPart { tally: tally_range(&source, config, &table, lo.max(2), hi)?, upto: hi })
}

/// Partial prime scan over a subrange.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeScanPart {
    tally: PrimeTally,
    upto: u64,
}

impl PrimeScanPart {
    /// Appends the scan of the following subrange.
    pub fn merge(mut self, later: PrimeScanPart) -> PrimeScanPart {
        self.tally.merge(later.tally);
        self.upto = self.upto.max(later.upto);
        self
    }

    pub fn into_report(self, config: &ExperimentConfig) -> Result<ExperimentReport> {
        finish(config, self.tally, self.upto, Timing::default())
    }
}

/// Collects the prime records of a scan, in ascending order of `p`.
pub(crate) fn collect_prime_tally(config: &ExperimentConfig, stage: &str) -> Result<(PrimeTally, u64, Option<String>, Option<u64>)> {
    let source = OrderSource::new(&config.subject)?;
    let table = sieve_primes(config.limit)?;
    let outcome = drive(config, stage, 2, config.limit, |lo, hi| tally_range(&source, config, &table, lo, hi))?;
    Ok((outcome.state, outcome.completed_upto, outcome.stopped, outcome.resumed_from))
}

/// Order record for every prime `p <= x`, with per-decade low-order and
/// bad-prime counts, the `i_p` histogram, bad-prime reciprocal sums and the
/// Chebotarev table. Deterministic for any worker count.
pub fn scan_primes(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate(PRIME_LIMIT_DEFAULT_CAP)?;
    let clock = Instant::now();
    let (tally, upto, stopped, resumed_from) = collect_prime_tally(config, "primes")?;
    let timing = Timing {
        elapsed_secs: clock.elapsed().as_secs_f64(),
        workers: config.run.effective_workers(),
        resumed_from,
    };
    let mut report = finish(config, tally, upto, timing)?;
    match stopped {
        None => Ok(report),
        Some(reason) => {
            report.partial = true;
            Err(Error::Partial { report: Box::new(report), reason })
        }
    }
}

fn fraction(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn finish(config: &ExperimentConfig, tally: PrimeTally, upto: u64, timing: Timing) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::empty(ReportKind::PrimeScan, config.clone());
    report.completed_upto = upto;
    report.partial = upto < config.limit;
    report.timing = timing;
    if upto >= 2 {
        // a decade starting at `upto` would hold no prime
        for j in (0..=decade_of(upto)).filter(|&j| 10u64.pow(j) < upto) {
            let c = tally.decades.get(&j).copied().unwrap_or_default();
            report.tables.decades.push(DecadeRow {
                start: 10u64.pow(j),
                end: 10u64.pow(j + 1),
                primes: c.primes,
                low_order: c.low,
                bad: c.bad,
                low_fraction: fraction(c.low, c.primes),
                bad_fraction: fraction(c.bad, c.primes),
            });
        }
    }
    let bad: Vec<u64> = tally.records.iter().filter(|r| r.is_bad).map(|r| r.p).collect();
    report.beta = BetaSection { sums: beta_sums(&bad, &config.z_list), bad_primes: bad };
    if let Subject::Matrix(m) = &config.subject {
        let fd = field_data(m)?;
        for &n in &config.n_list {
            report.tables.chebotarev.push(chebotarev_row(&tally.records, &fd, n)?);
        }
    }
    report.histogram = tally.histogram;
    report.records.primes = tally.records;
    Ok(report)
}

/// Density of unramified primes with `n | i_p` among unramified primes,
/// next to the interval `(2/upper, 2/lower)` from the degree bounds.
pub fn chebotarev_row(records: &[PrimeOrderRecord], fd: &QuadFieldData, n: u64) -> Result<ChebotarevRow> {
    let degree = kummer_degree_interval(n, fd)?;
    let (low, high) = degree.density_interval();
    let mut hits = 0u64;
    let mut unramified = 0u64;
    for r in records.iter().filter(|r| r.class != PrimeSplitting::Ramified) {
        unramified += 1;
        if r.index.is_some_and(|i| i % n == 0) {
            hits += 1;
        }
    }
    let empirical = fraction(hits, unramified);
    Ok(ChebotarevRow {
        n,
        hits,
        unramified,
        empirical,
        degree_lower: degree.lower,
        degree_upper: degree.upper,
        predicted_low: low,
        predicted_high: high,
        within_interval: low <= empirical && empirical <= high,
        log_disc_bound: discriminant_log_bound(n, fd, degree.upper)?,
    })
}

/// Empirical density of `n | i_p` and the predicted interval.
pub fn chebotarev_ratio(config: &ExperimentConfig, n: u64) -> Result<(f64, (f64, f64))> {
    let mut config = config.clone();
    config.n_list = vec![n];
    let report = scan_primes(&config)?;
    let row = report.tables.chebotarev.first().ok_or_else(|| Error::invalid("Chebotarev ratios need a matrix subject"))?;
    Ok((row.empirical, (row.predicted_low, row.predicted_high)))
}

/// `beta(z)` over bad primes `z <= p <= x` for each `z` in `z_list`.
pub fn bad_prime_beta(config: &ExperimentConfig) -> Result<Vec<(u64, f64)>> {
    let report = scan_primes(config)?;
    Ok(report.beta.sums.iter().map(|r| (r.z, r.beta)).collect())
}

/// Compensated sum of `1/p`.
pub(crate) fn reciprocal_sum<'a>(primes: impl IntoIterator<Item = &'a u64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &p in primes {
        let term = 1.0 / p as f64;
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Tail sums built from the largest `z` down, so each value is the next
/// one plus a nonnegative segment sum and the sequence never increases.
fn beta_sums(bad: &[u64], z_list: &[u64]) -> Vec<BetaRow> {
    let mut rows = vec![BetaRow { z: 0, beta: 0.0 }; z_list.len()];
    let mut running = 0.0f64;
    let mut upper = bad.len();
    for (i, &z) in z_list.iter().enumerate().rev() {
        let lower = bad.partition_point(|&p| p < z).min(upper);
        running += reciprocal_sum(&bad[lower..upper]);
        upper = lower;
        rows[i] = BetaRow { z, beta: running };
    }
    rows
}

impl BetaSection {
    /// `sum 1/p` over bad primes in `[lo, hi]`.
    pub fn reciprocal_sum_between(&self, lo: u64, hi: u64) -> f64 {
        let a = self.bad_primes.partition_point(|&p| p < lo);
        let b = self.bad_primes.partition_point(|&p| p <= hi);
        reciprocal_sum(&self.bad_primes[a..b.max(a)])
    }
}
