//! File formats: the moments CSV and the JSON schemas for tables,
//! histograms, fit reports, and verification reports.
//!
//! Rationals serialize as canonical lowest-terms "p/q" strings (plain "p"
//! when the denominator is 1) and big integers as decimal strings, so a CSV
//! written by `moments` and re-read by `fit` round-trips exactly.

use std::io::{Read, Write};

use num::rational::BigRational;
use num::{BigInt, One};
use serde_json::{json, Value};

use crate::dist::DistributionTable;
use crate::error::Error;
use crate::fit::{to_decimal_string, AsymptoticSeries};
use crate::mc::EmpiricalHistogram;
use crate::moment::{MomentTable, Rational};
use crate::verify::VerificationReport;

pub const MOMENTS_SCHEMA: &str = "altseq.moments/1";
pub const DIST_SCHEMA: &str = "altseq.dist/1";
pub const HIST_SCHEMA: &str = "altseq.hist/1";
pub const FIT_SCHEMA: &str = "altseq.fit/1";
pub const REPORT_SCHEMA: &str = "altseq.report/1";

pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let parse_int = |t: &str| -> Result<BigInt, Error> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den == BigInt::from(0) {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(parse_int(p)?, den))
        }
    }
}

/// Column names of the moments CSV for a given maximum order, after the
/// leading `schema` and `n` columns.
pub fn moments_columns(max_order: usize) -> Vec<String> {
    let mut cols = vec!["mean".to_string()];
    for r in 2..=max_order {
        cols.push(format!("m_{r}"));
    }
    let mut r = 1;
    while 2 * r <= max_order {
        cols.push(format!("alpha_{}", 2 * r));
        r += 1;
    }
    let mut r = 1;
    while 2 * r + 1 <= max_order {
        cols.push(format!("q_{}", 2 * r + 1));
        r += 1;
    }
    cols
}

pub fn write_moments_csv<W: Write>(
    out: W,
    tables: &[MomentTable],
    max_order: usize,
) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["schema".to_string(), "n".to_string()];
    header.extend(moments_columns(max_order));
    w.write_record(&header)
        .map_err(|e| Error::Parse(e.to_string()))?;
    for t in tables {
        let mut row = vec![MOMENTS_SCHEMA.to_string(), t.n().to_string()];
        row.push(format_rational(t.mean()));
        for r in 2..=max_order {
            row.push(t.central(r).map(format_rational).unwrap_or_default());
        }
        let mut r = 1;
        while 2 * r <= max_order {
            row.push(t.alpha_even(r).map(format_rational).unwrap_or_default());
            r += 1;
        }
        let mut r = 1;
        while 2 * r + 1 <= max_order {
            row.push(t.q_odd(r).map(format_rational).unwrap_or_default());
            r += 1;
        }
        w.write_record(&row).map_err(|e| Error::Parse(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// Parsed moments CSV: header names and rows of (n, cells).
pub struct MomentsCsv {
    pub columns: Vec<String>,
    pub rows: Vec<(u64, Vec<String>)>,
}

impl MomentsCsv {
    pub fn read<R: Read>(input: R) -> Result<Self, Error> {
        let mut rdr = csv::Reader::from_reader(input);
        let columns: Vec<String> = rdr
            .headers()
            .map_err(|e| Error::Parse(e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        if columns.first().map(String::as_str) != Some("schema") {
            return Err(Error::Parse("missing schema column".into()));
        }
        let n_idx = columns
            .iter()
            .position(|c| c == "n")
            .ok_or_else(|| Error::MissingColumn("n".into()))?;
        let mut rows = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
            let n: u64 = rec
                .get(n_idx)
                .ok_or_else(|| Error::Parse("short row".into()))?
                .parse()
                .map_err(|_| Error::Parse("bad n value".into()))?;
            rows.push((n, rec.iter().map(str::to_string).collect()));
        }
        Ok(MomentsCsv { columns, rows })
    }

    /// Exact rational samples of one named column, keyed by n.
    pub fn column(&self, name: &str) -> Result<Vec<(u64, Rational)>, Error> {
        let idx = self
            .columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))?;
        self.rows
            .iter()
            .filter(|(_, cells)| !cells[idx].is_empty())
            .map(|(n, cells)| Ok((*n, parse_rational(&cells[idx])?)))
            .collect()
    }
}

pub fn distribution_json(t: &DistributionTable) -> Value {
    json!({
        "schema_version": DIST_SCHEMA,
        "n": t.n(),
        "convention": t.convention().name(),
        "counts": t.counts().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

pub fn distribution_csv<W: Write>(out: W, t: &DistributionTable) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "count"])
        .map_err(|e| Error::Parse(e.to_string()))?;
    for (i, c) in t.counts().iter().enumerate() {
        w.write_record([&(i + 1).to_string(), &c.to_string()])
            .map_err(|e| Error::Parse(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

pub fn histogram_json(h: &EmpiricalHistogram) -> Value {
    json!({
        "schema_version": HIST_SCHEMA,
        "n": h.n(),
        "samples": h.samples(),
        "seed": h.seed(),
        "counts": h.counts(),
    })
}

pub fn histogram_csv<W: Write>(out: W, h: &EmpiricalHistogram) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "count"])
        .map_err(|e| Error::Parse(e.to_string()))?;
    for (i, c) in h.counts().iter().enumerate() {
        w.write_record([&(i + 1).to_string(), &c.to_string()])
            .map_err(|e| Error::Parse(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// One published-vs-fitted comparison row inside a fit report.
pub struct FitComparison {
    pub label: String,
    pub target: String,
    pub fitted: String,
    pub abs_err: f64,
    pub rel_err: f64,
}

pub fn fit_report_json(
    target: &str,
    degree: usize,
    precision_digits: usize,
    series: &AsymptoticSeries,
    comparisons: &[FitComparison],
) -> Value {
    json!({
        "schema_version": FIT_SCHEMA,
        "target": target,
        "degree": degree,
        "precision_digits": precision_digits,
        "prefactor_exponent": series.prefactor_exponent.label(),
        "coefficients": series
            .coefficients
            .iter()
            .map(|c| to_decimal_string(c, 30))
            .collect::<Vec<_>>(),
        "coefficients_exact": series
            .coefficients
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>(),
        "windows": series.windows.iter().map(|w| json!({
            "n_first": w.n_first,
            "n_last": w.n_last,
            "coefficients": w.coefficients.iter().map(|c| to_decimal_string(c, 20)).collect::<Vec<_>>(),
            "rel_delta": w.rel_delta,
        })).collect::<Vec<_>>(),
        "comparisons": comparisons.iter().map(|c| json!({
            "label": c.label,
            "target": c.target,
            "fitted": c.fitted,
            "abs_err": c.abs_err,
            "rel_err": c.rel_err,
        })).collect::<Vec<_>>(),
    })
}

pub fn report_json(report: &VerificationReport) -> Value {
    json!({
        "schema_version": REPORT_SCHEMA,
        "all_ok": report.all_ok(),
        "records": report.records.iter().map(|r| json!({
            "id": r.id,
            "description": r.description,
            "reference": r.reference,
            "expected": r.expected,
            "observed": r.observed,
            "status": r.status.label(),
            "runtime_ms": r.runtime_ms,
        })).collect::<Vec<_>>(),
    })
}
