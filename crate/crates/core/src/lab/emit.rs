use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use super::composites::meets_threshold;
use super::report::{ExperimentReport, ReportKind};
use crate::error::{Error, Result};
use crate::quad::PrimeSplitting;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::invalid(format!("unknown format {other:?}; expected csv or json"))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        })
    }
}

fn opt(v: Option<u64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn bit(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

fn write_csv<W: Write>(report: &ExperimentReport, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    match report.kind {
        ReportKind::PrimeScan => {
            w.write_record(["p", "class", "torus", "ord", "i_p", "is_bad"])?;
            for r in &report.records.primes {
                let ramified = r.class == PrimeSplitting::Ramified;
                let (torus, index) = if ramified { (None, None) } else { (r.torus_order, r.index) };
                w.write_record([
                    r.p.to_string(),
                    r.class.code().to_string(),
                    opt(torus),
                    r.ord.to_string(),
                    opt(index),
                    bit(r.is_bad).to_string(),
                ])?;
            }
        }
        ReportKind::CompositeScan => {
            w.write_record(["N", "ord", "lambda", "s", "N_G", "N_B", "d0", "meets_threshold"])?;
            for r in &report.records.composites {
                w.write_record([
                    r.n.to_string(),
                    r.ord.to_string(),
                    r.lambda.to_string(),
                    r.s.to_string(),
                    r.n_good.to_string(),
                    r.n_bad.to_string(),
                    r.d0.to_string(),
                    bit(meets_threshold(r, report.config.epsilon)).to_string(),
                ])?;
            }
        }
        ReportKind::Chebotarev => {
            w.write_record([
                "n",
                "hits",
                "unramified",
                "empirical",
                "predicted_low",
                "predicted_high",
                "degree_lower",
                "degree_upper",
                "within_interval",
            ])?;
            for r in &report.tables.chebotarev {
                w.write_record([
                    r.n.to_string(),
                    r.hits.to_string(),
                    r.unramified.to_string(),
                    r.empirical.to_string(),
                    r.predicted_low.to_string(),
                    r.predicted_high.to_string(),
                    r.degree_lower.to_string(),
                    r.degree_upper.to_string(),
                    bit(r.within_interval).to_string(),
                ])?;
            }
        }
        ReportKind::BadPrimes => {
            w.write_record(["z", "beta"])?;
            for r in &report.beta.sums {
                w.write_record([r.z.to_string(), r.beta.to_string()])?;
            }
        }
        ReportKind::LemmaSimple => {
            w.write_record(["p", "ord", "divides_M"])?;
            for r in report.census.iter().flat_map(|c| &c.low_order_primes) {
                w.write_record([r.p.to_string(), r.ord.to_string(), bit(r.divides_m).to_string()])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Writes `report` as CSV rows for its kind or as a JSON document.
pub fn write_report<W: Write>(report: &ExperimentReport, format: ReportFormat, mut out: W) -> std::io::Result<()> {
    match format {
        ReportFormat::Csv => write_csv(report, &mut out).map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => io,
            other => std::io::Error::other(format!("{other:?}")),
        }),
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            out.write_all(b"\n")
        }
    }
}

/// Writes `report` to `path`.
pub fn emit_report(report: &ExperimentReport, format: ReportFormat, path: &Path) -> Result<()> {
    let io = |source| Error::Io { path: path.to_path_buf(), source };
    let file = File::create(path).map_err(io)?;
    let mut out = BufWriter::new(file);
    write_report(report, format, &mut out).map_err(io)?;
    out.flush().map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::{scan_primes, ExperimentConfig};
    use crate::quad::Sl2Matrix;

    #[test]
    fn empty_report_is_header_only() {
        let config = ExperimentConfig::for_matrix(Sl2Matrix::companion(3), 10);
        let report = ExperimentReport::empty(ReportKind::PrimeScan, config);
        let mut buf = Vec::new();
        write_report(&report, ReportFormat::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "p,class,torus,ord,i_p,is_bad\n");
    }

    #[test]
    fn prime_rows() {
        let config = ExperimentConfig::for_matrix(Sl2Matrix::companion(3), 12);
        let report = scan_primes(&config).unwrap();
        let mut buf = Vec::new();
        write_report(&report, ReportFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "p,class,torus,ord,i_p,is_bad");
        assert_eq!(lines.len(), 6);
        assert!(lines.contains(&"5,R,,10,,1"));
        assert!(lines.contains(&"11,S,10,5,2,0"));
    }

    #[test]
    fn json_round_trip() {
        let config = ExperimentConfig::for_matrix(Sl2Matrix::companion(3), 200);
        let report = scan_primes(&config).unwrap();
        let mut buf = Vec::new();
        write_report(&report, ReportFormat::Json, &mut buf).unwrap();
        let back: ExperimentReport = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn io_errors_carry_the_path() {
        let config = ExperimentConfig::for_matrix(Sl2Matrix::companion(3), 10);
        let report = ExperimentReport::empty(ReportKind::PrimeScan, config);
        let path = Path::new("/nonexistent-dir/report.csv");
        let err = emit_report(&report, ReportFormat::Csv, path).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/report.csv"));
    }
}
