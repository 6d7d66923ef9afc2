use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, Subject, COMPOSITE_LIMIT_DEFAULT_CAP};
use super::driver::{drive, Tally};
use super::primes::{collect_prime_tally, OrderSource};
use super::report::{CompositeDecadeRow, CompositeSummary, Distribution, ExperimentReport, ReportKind, SquareTailRow, Timing};
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::order::{prop11_bound, CompositeOrderRecord, PrimeFactorOrder, PrimeOrderRecord};

const VIOLATION_EXAMPLES: usize = 20;
const PROP11_MIN_X: u64 = 16;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
struct CompositeTally {
    records: Vec<CompositeOrderRecord>,
    skipped: u64,
    violations: u64,
    violation_examples: Vec<u64>,
    prop11_satisfied: u64,
}

impl Tally for CompositeTally {
    fn merge(&mut self, later: Self) {
        self.records.extend(later.records);
        self.skipped += later.skipped;
        self.violations += later.violations;
        self.violation_examples.extend(later.violation_examples);
        self.violation_examples.truncate(VIOLATION_EXAMPLES);
        self.prop11_satisfied += later.prop11_satisfied;
    }
}

/// `ord_N >= N^(1 - epsilon)`.
pub fn meets_threshold(record: &CompositeOrderRecord, epsilon: f64) -> bool {
    record.ord as f64 >= (record.n as f64).powf(1.0 - epsilon)
}

/// `floor(lambda(N) * prod ord_p / N)` over the unramified `p | N`.
pub fn carmichael_lower_bound(record: &CompositeOrderRecord, parts: &[PrimeFactorOrder]) -> u128 {
    let unramified = parts.iter().filter(|f| crate::order::is_unramified(&f.record));
    let mut product = record.lambda;
    for f in unramified.clone() {
        match product.checked_mul(f.record.ord as u128) {
            Some(v) => product = v,
            None => {
                // fall back to floating point; the bound is then far above any order
                let log = (record.lambda as f64).ln() + unramified.map(|f| (f.record.ord as f64).ln()).sum::<f64>()
                    - (record.n as f64).ln();
                return log.exp().min(u128::MAX as f64) as u128;
            }
        }
    }
    product / record.n as u128
}

fn scan_range(
    source: &OrderSource,
    config: &ExperimentConfig,
    primes: &[PrimeOrderRecord],
    lo: u64,
    hi: u64,
) -> Result<CompositeTally> {
    let lookup = |p: u64| -> Result<PrimeOrderRecord> {
        primes
            .binary_search_by_key(&p, |r| r.p)
            .map(|i| primes[i])
            .map_err(|_| Error::invalid(format!("no order record for prime {p}")))
    };
    let mut tally = CompositeTally::default();
    for n in lo.max(2)..=hi {
        let (record, parts) = match source {
            OrderSource::Matrix(e) => e.composite_record(n, lookup)?,
            OrderSource::Base(e) => {
                if gcd(e.base().unsigned_abs() as u128, n as u128) != 1 {
                    tally.skipped += 1;
                    continue;
                }
                e.composite_record(n, lookup)?
            }
        };
        if record.ord < carmichael_lower_bound(&record, &parts) {
            tally.violations += 1;
            if tally.violation_examples.len() < VIOLATION_EXAMPLES {
                tally.violation_examples.push(n);
            }
        }
        if config.limit >= PROP11_MIN_X {
            let orders: BTreeMap<u64, u64> = parts.iter().map(|f| (f.p, f.record.ord)).collect();
            if record.ord as f64 >= prop11_bound(&record, &orders, config.limit)? {
                tally.prop11_satisfied += 1;
            }
        }
        tally.records.push(record);
    }
    Ok(tally)
}

/// Exact order modulo every `N` in `[2, x]`, with per-decade fractions of
/// `ord_N >= N^(1 - epsilon)`, the `lambda(N)/N` distribution, square-part
/// statistics and counts for the two per-`N` lower bounds.
pub fn scan_composites(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate(COMPOSITE_LIMIT_DEFAULT_CAP)?;
    let clock = Instant::now();
    let source = OrderSource::new(&config.subject)?;

    // prime records are cheap next to the composite pass; they are recomputed
    // on resume and kept out of the checkpoint file and the time budget
    let mut prime_config = config.clone();
    prime_config.run.checkpoint_path = None;
    prime_config.run.time_budget_secs = None;
    let (primes, _, _, _) = collect_prime_tally(&prime_config, "composite-primes")?;
    let primes = primes.records;

    let outcome = drive(config, "composites", 2, config.limit, |lo, hi| scan_range(&source, config, &primes, lo, hi))?;
    let timing = Timing {
        elapsed_secs: clock.elapsed().as_secs_f64(),
        workers: config.run.effective_workers(),
        resumed_from: outcome.resumed_from,
    };
    let mut report = finish(config, outcome.state, outcome.completed_upto, timing);
    match outcome.stopped {
        None => Ok(report),
        Some(reason) => {
            report.partial = true;
            Err(Error::Partial { report: Box::new(report), reason })
        }
    }
}

fn distribution(mut values: Vec<f64>) -> Option<Distribution> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let len = values.len();
    let median = if len % 2 == 1 { values[len / 2] } else { (values[len / 2 - 1] + values[len / 2]) / 2.0 };
    Some(Distribution {
        min: values[0],
        max: values[len - 1],
        mean: values.iter().sum::<f64>() / len as f64,
        median,
    })
}

fn finish(config: &ExperimentConfig, tally: CompositeTally, upto: u64, timing: Timing) -> ExperimentReport {
    let mut report = ExperimentReport::empty(ReportKind::CompositeScan, config.clone());
    report.completed_upto = upto;
    report.partial = upto < config.limit;
    report.timing = timing;

    let records = &tally.records;
    let mut decades = Vec::new();
    if upto >= 2 {
        for j in 0..=upto.ilog10() {
            let (start, end) = (10u64.pow(j), 10u64.pow(j + 1));
            let in_decade = records.iter().filter(|r| r.n >= start && r.n < end);
            let count = in_decade.clone().count() as u64;
            let meets = in_decade.filter(|r| meets_threshold(r, config.epsilon)).count() as u64;
            let fraction = if count == 0 { 0.0 } else { meets as f64 / count as f64 };
            decades.push(CompositeDecadeRow { start, end, count, meets, fraction });
        }
    }
    let scanned = records.len() as u64;
    let meets = records.iter().filter(|r| meets_threshold(r, config.epsilon)).count() as u64;
    let mut square_tail = Vec::new();
    let mut y = 1u64;
    while y.saturating_mul(y) <= upto.max(1) {
        let count = records.iter().filter(|r| r.s >= y).count() as u64;
        square_tail.push(SquareTailRow { y, count, scaled: count as f64 * y as f64 / upto.max(1) as f64 });
        y *= 2;
    }
    let ratio = |num: u64| if scanned == 0 { 0.0 } else { num as f64 / scanned as f64 };
    let summary = CompositeSummary {
        decades,
        scanned,
        skipped: tally.skipped,
        meets,
        meets_fraction: ratio(meets),
        lambda_ratio: distribution(records.iter().map(|r| r.lambda as f64 / r.n as f64).collect()),
        square_tail,
        with_bad_part: records.iter().filter(|r| r.n_bad > 1).count() as u64,
        carmichael_violations: tally.violations,
        carmichael_violation_examples: tally.violation_examples,
        prop11_satisfied: tally.prop11_satisfied,
        prop11_rate: if config.limit >= PROP11_MIN_X { ratio(tally.prop11_satisfied) } else { 0.0 },
    };
    report.tables.composite = Some(summary);
    report.records.composites = tally.records;
    if let Subject::Base(_) = config.subject {
        debug_assert!(report.records.composites.iter().all(|r| r.d0 == r.n_good * r.n_bad));
    }
    report
}
