//! JSON, CSV and text rendering. Counts are always decimal strings and
//! rationals always `p/q`; floats appear only as renderings next to them.

use std::collections::BTreeMap;
use std::io::Write;

use addbasis::{
    EstimateVariant, ExactRational, FormulaTerm, GeometryReport, IdentityReport,
};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::rows::Row;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// `p/q`, always with an explicit denominator.
pub fn rational_string(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn finite(x: Option<f64>) -> Option<f64> {
    x.filter(|v| v.is_finite())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub weights: Vec<u64>,
    pub n: u64,
    pub theta: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub nu: usize,
    pub sign: i8,
    pub s: String,
    #[serde(rename = "B")]
    pub b: String,
    pub term: String,
}

impl From<&FormulaTerm> for TermRecord {
    fn from(t: &FormulaTerm) -> Self {
        TermRecord {
            nu: t.index,
            sign: t.sign,
            s: t.s.to_string(),
            b: t.count.to_string(),
            term: t.term.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRecord {
    pub rational: String,
    pub float: Option<f64>,
    pub relative_error: Option<f64>,
    pub absolute_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneRecord {
    pub nu: usize,
    pub s: String,
    pub intercepts: Vec<String>,
    pub norm_squared: String,
    pub distance: Option<f64>,
    pub gcd: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryRecord {
    pub planes: Vec<PlaneRecord>,
    pub min_intercept: Option<String>,
    pub max_intercept: Option<String>,
    pub min_distance: Option<f64>,
}

impl From<&GeometryReport> for GeometryRecord {
    fn from(g: &GeometryReport) -> Self {
        GeometryRecord {
            planes: g
                .planes
                .iter()
                .map(|p| PlaneRecord {
                    nu: p.index,
                    s: p.s.to_string(),
                    intercepts: p.intercepts.iter().map(rational_string).collect(),
                    norm_squared: p.norm_squared.to_string(),
                    distance: finite(Some(p.distance())),
                    gcd: p.coefficient_gcd,
                })
                .collect(),
            min_intercept: g.min_intercept().map(rational_string),
            max_intercept: g.max_intercept().map(rational_string),
            min_distance: finite(g.min_distance()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub bruteforce: Option<String>,
    pub generating_series: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowRecord {
    pub instance: InstanceRecord,
    #[serde(rename = "N")]
    pub n_weights: usize,
    pub exact: String,
    pub formula: String,
    pub positive_terms: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermRecord>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub estimates: BTreeMap<String, EstimateRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimate_note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometryRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracles: Option<OracleRecord>,
}

impl RowRecord {
    pub fn new(row: &Row, variants: &[EstimateVariant]) -> Self {
        let estimates = variants
            .iter()
            .filter_map(|&v| {
                let e = row.estimate(v)?;
                Some((
                    v.name().to_string(),
                    EstimateRecord {
                        rational: rational_string(e),
                        float: finite(e.to_f64()),
                        relative_error: finite(row.relative_error(v)),
                        absolute_error: finite(row.absolute_error(v)),
                    },
                ))
            })
            .collect();
        RowRecord {
            instance: InstanceRecord {
                weights: row.instance.weights.values().to_vec(),
                n: row.instance.n,
                theta: row.instance.theta,
            },
            n_weights: row.n_weights(),
            exact: row.exact.to_string(),
            formula: row.formula.to_string(),
            positive_terms: row.positive_terms,
            terms: row.terms.as_ref().map(|t| t.iter().map(TermRecord::from).collect()),
            estimates,
            estimate_note: row.estimate_note.clone(),
            geometry: row.geometry.as_ref().map(GeometryRecord::from),
            oracles: row.oracles.as_ref().map(|o| OracleRecord {
                bruteforce: o.bruteforce.as_ref().map(ToString::to_string),
                generating_series: o.generating_series.as_ref().map(ToString::to_string),
            }),
        }
    }
}

/// Four decimals, or scientific notation outside `[1e-3, 1e6)`.
fn short(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-3..1e6).contains(&a) {
        format!("{x:.4}")
    } else {
        format!("{x:.4e}")
    }
}

fn float_cell(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn csv_header(variants: &[EstimateVariant], geometry: bool) -> String {
    let mut cols: Vec<String> = ["n", "N", "theta", "exact", "formula", "positive_terms"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for v in variants {
        cols.push(v.name().to_string());
        cols.push(format!("{}_float", v.name()));
        cols.push(format!("{}_relerr", v.name()));
    }
    if geometry {
        cols.extend(["min_intercept", "max_intercept", "min_distance"].map(String::from));
    }
    cols.join(",")
}

fn csv_row(rec: &RowRecord, variants: &[EstimateVariant], geometry: bool) -> String {
    let mut cols = vec![
        rec.instance.n.to_string(),
        rec.n_weights.to_string(),
        rec.instance.theta.to_string(),
        rec.exact.clone(),
        rec.formula.clone(),
        rec.positive_terms.to_string(),
    ];
    for v in variants {
        match rec.estimates.get(v.name()) {
            Some(e) => {
                cols.push(e.rational.clone());
                cols.push(float_cell(e.float));
                cols.push(float_cell(e.relative_error));
            }
            None => cols.extend([String::new(), String::new(), String::new()]),
        }
    }
    if geometry {
        let g = rec.geometry.as_ref();
        cols.push(g.and_then(|g| g.min_intercept.clone()).unwrap_or_default());
        cols.push(g.and_then(|g| g.max_intercept.clone()).unwrap_or_default());
        cols.push(float_cell(g.and_then(|g| g.min_distance)));
    }
    cols.join(",")
}

fn text_row(out: &mut dyn Write, rec: &RowRecord) -> std::io::Result<()> {
    write!(
        out,
        "n={} N={} theta={} exact={} formula={} positive_terms={}",
        rec.instance.n, rec.n_weights, rec.instance.theta, rec.exact, rec.formula, rec.positive_terms
    )?;
    writeln!(out)?;
    if let Some(o) = &rec.oracles {
        writeln!(
            out,
            "  oracles: bruteforce={} generating_series={}",
            o.bruteforce.as_deref().unwrap_or("skipped"),
            o.generating_series.as_deref().unwrap_or("skipped")
        )?;
    }
    if let Some(terms) = &rec.terms {
        for t in terms {
            writeln!(
                out,
                "  nu={} sign={} s={} B={} term={}",
                t.nu,
                if t.sign > 0 { '+' } else { '-' },
                t.s,
                t.b,
                t.term
            )?;
        }
    }
    for (name, e) in &rec.estimates {
        writeln!(
            out,
            "  estimate {name} = {} (~{}) relerr={}",
            e.rational,
            e.float.map_or("nan".into(), |f| f.to_string()),
            e.relative_error.map_or("undefined".into(), short)
        )?;
    }
    if let Some(note) = &rec.estimate_note {
        writeln!(out, "  note: {note}")?;
    }
    if let Some(g) = &rec.geometry {
        writeln!(
            out,
            "  geometry: min_intercept={} max_intercept={} min_distance={}",
            g.min_intercept.as_deref().unwrap_or("-"),
            g.max_intercept.as_deref().unwrap_or("-"),
            g.min_distance.map_or("-".into(), |d| d.to_string())
        )?;
    }
    Ok(())
}

pub fn write_rows(
    out: &mut dyn Write,
    records: &[RowRecord],
    format: Format,
    variants: &[EstimateVariant],
    geometry: bool,
) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, records)?;
            writeln!(out)
        }
        Format::Csv => {
            writeln!(out, "{}", csv_header(variants, geometry))?;
            for rec in records {
                writeln!(out, "{}", csv_row(rec, variants, geometry))?;
            }
            Ok(())
        }
        Format::Text => records.iter().try_for_each(|r| text_row(out, r)),
    }
}

pub fn write_single(out: &mut dyn Write, record: &RowRecord, format: Format, variants: &[EstimateVariant], geometry: bool) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, record)?;
            writeln!(out)
        }
        _ => write_rows(out, std::slice::from_ref(record), format, variants, geometry),
    }
}

/// Aggregate accuracy of one estimate variant over a set of rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantSummary {
    pub rows: usize,
    pub mean_absolute_error: Option<f64>,
    pub mean_relative_error: Option<f64>,
    /// Rows where the estimate has the same sign as the exact count (or both are zero).
    pub sign_agreements: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateSummary {
    pub variants: BTreeMap<String, VariantSummary>,
    /// Variant with the smallest mean absolute error.
    pub closest_variant: Option<String>,
    /// Parity-corrected equals paper-literal for odd N and its negation for
    /// even N, on every row.
    pub sign_relation_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub rows: Vec<RowRecord>,
    pub summary: EstimateSummary,
}

pub fn summarize(rows: &[Row], variants: &[EstimateVariant]) -> EstimateSummary {
    use num_traits::{Signed, Zero};
    let mut out = BTreeMap::new();
    for &v in variants {
        let abs: Vec<f64> = rows.iter().filter_map(|r| r.absolute_error(v)).collect();
        let rel: Vec<f64> = rows.iter().filter_map(|r| r.relative_error(v)).map(f64::abs).collect();
        let mean = |xs: &[f64]| (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64);
        let sign_agreements = rows
            .iter()
            .filter(|r| {
                r.estimate(v).is_some_and(|e| {
                    if r.exact.is_zero() {
                        e.is_zero()
                    } else {
                        e.is_positive()
                    }
                })
            })
            .count();
        out.insert(
            v.name().to_string(),
            VariantSummary {
                rows: abs.len(),
                mean_absolute_error: finite(mean(&abs)),
                mean_relative_error: finite(mean(&rel)),
                sign_agreements,
            },
        );
    }
    let closest_variant = out
        .iter()
        .filter_map(|(name, s)| s.mean_absolute_error.map(|e| (name.clone(), e)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(name, _)| name);
    let sign_relation_holds = rows.iter().all(|r| {
        match (
            r.estimate(EstimateVariant::PAPER_LITERAL),
            r.estimate(EstimateVariant::PARITY_CORRECTED),
        ) {
            (Some(lit), Some(par)) if r.n_weights() % 2 == 0 => *par == -lit.clone(),
            (Some(lit), Some(par)) => par == lit,
            _ => true,
        }
    });
    EstimateSummary {
        variants: out,
        closest_variant,
        sign_relation_holds,
    }
}

pub fn write_estimate_report(
    out: &mut dyn Write,
    report: &EstimateReport,
    format: Format,
    variants: &[EstimateVariant],
    geometry: bool,
) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)
        }
        Format::Csv => write_rows(out, &report.rows, format, variants, geometry),
        Format::Text => {
            write_rows(out, &report.rows, format, variants, geometry)?;
            writeln!(out, "summary:")?;
            for (name, s) in &report.summary.variants {
                writeln!(
                    out,
                    "  {name}: rows={} mean_abs_err={} mean_rel_err={} sign_agreements={}",
                    s.rows,
                    s.mean_absolute_error.map_or("-".into(), short),
                    s.mean_relative_error.map_or("-".into(), short),
                    s.sign_agreements
                )?;
            }
            writeln!(
                out,
                "  closest variant: {}",
                report.summary.closest_variant.as_deref().unwrap_or("none")
            )?;
            writeln!(out, "  sign relation holds: {}", report.summary.sign_relation_holds)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub t: i64,
    pub case: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

pub fn identity_records(report: &IdentityReport) -> Vec<IdentityRecord> {
    report
        .checks
        .iter()
        .map(|c| IdentityRecord {
            t: c.case.t,
            case: c.case.case_tag.to_string(),
            lhs: rational_string(&c.lhs),
            rhs: rational_string(&c.rhs),
            holds: c.holds(),
        })
        .collect()
}

pub fn write_identities(out: &mut dyn Write, records: &[IdentityRecord], format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, records)?;
            writeln!(out)
        }
        Format::Csv => {
            writeln!(out, "t,case,lhs,rhs,holds")?;
            for r in records {
                writeln!(out, "{},{},{},{},{}", r.t, r.case, r.lhs, r.rhs, r.holds)?;
            }
            Ok(())
        }
        Format::Text => {
            for r in records {
                writeln!(out, "t={} case={} lhs={} rhs={} holds={}", r.t, r.case, r.lhs, r.rhs, r.holds)?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn rationals_keep_denominator() {
        let r = ExactRational::new(BigInt::from(27), BigInt::from(2));
        assert_eq!(rational_string(&r), "27/2");
        let r = ExactRational::from_integer(BigInt::from(-3));
        assert_eq!(rational_string(&r), "-3/1");
    }

    #[test]
    fn csv_header_layout() {
        assert_eq!(csv_header(&[], false), "n,N,theta,exact,formula,positive_terms");
        assert_eq!(
            csv_header(&[EstimateVariant::PAPER_LITERAL], true),
            "n,N,theta,exact,formula,positive_terms,paper_literal,paper_literal_float,\
             paper_literal_relerr,min_intercept,max_intercept,min_distance"
        );
    }
}
