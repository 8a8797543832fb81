//! Canonical, versioned JSON file formats: series files, A-expansion files,
//! Goss-table cache files, and check reports.
//!
//! Every format is a single JSON document with a `format` version field and
//! enough field data (`q`, `modulus`) to validate that a file belongs to the
//! field it is being read into.  Writers emit compact JSON with fields in a
//! fixed order, nonzero entries only, and a trailing newline, so equal
//! values produce identical bytes; readers accept exactly version 1 and
//! re-canonicalize, making write-read-write the identity on bytes.
//!
//! Polynomials and rationals travel in the [`crate::algebra::text`] syntax
//! (`T^3+2*T`), numerator and denominator as separate strings.

use serde::{Deserialize, Serialize};

use crate::algebra::text::{modulus_string, parse_poly, poly_string, TextError};
use crate::algebra::RatK;
use crate::forms::AExpansion;
use crate::goss::{GossTable, KPoly, Lattice};
use crate::series::TruncSeries;
use crate::verify::Report;
use crate::Fq;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IoError {
    /// The document is not valid JSON of the expected shape.
    Json(String),
    /// The `format` version is not supported.
    UnsupportedFormat { found: u32 },
    /// The file's field does not match the field it is being read into.
    FieldMismatch { what: &'static str, expected: String, found: String },
    /// A polynomial or rational string failed to parse.
    Text(TextError),
    /// A denominator parsed to zero.
    ZeroDenominator { context: String },
    /// The same power or index appears twice.
    DuplicateEntry { key: String },
    /// A power exceeds the declared precision.
    PowerBeyondPrecision { power: usize, prec: usize },
    /// A coefficient power is not a decimal integer.
    BadNumber { text: String },
    /// An A-expansion index polynomial is not monic.
    NotMonicIndex { index: String },
    /// An A-expansion index exceeds the declared degree bound.
    IndexBeyondMaxDeg { index: String, max_deg: usize },
    /// A-expansions need n >= 1.
    ZeroIndexExponent,
    /// A Goss cache file violates the table invariants.
    TableShape { reason: String },
}

impl std::fmt::Display for IoError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IoError::Json(msg) => write!(f, "malformed document: {msg}"),
            IoError::UnsupportedFormat { found } => {
                write!(f, "unsupported format version {found} (expected 1)")
            }
            IoError::FieldMismatch { what, expected, found } => {
                write!(f, "{what} mismatch: file has {found}, current field has {expected}")
            }
            IoError::Text(e) => write!(f, "{e}"),
            IoError::ZeroDenominator { context } => {
                write!(f, "zero denominator in {context}")
            }
            IoError::DuplicateEntry { key } => write!(f, "duplicate entry {key}"),
            IoError::PowerBeyondPrecision { power, prec } => {
                write!(f, "power {power} exceeds the declared precision {prec}")
            }
            IoError::BadNumber { text } => write!(f, "not a decimal integer: {text}"),
            IoError::NotMonicIndex { index } => {
                write!(f, "A-expansion index {index} is not monic")
            }
            IoError::IndexBeyondMaxDeg { index, max_deg } => {
                write!(f, "A-expansion index {index} exceeds the degree bound {max_deg}")
            }
            IoError::ZeroIndexExponent => write!(f, "A-expansions need n >= 1"),
            IoError::TableShape { reason } => write!(f, "bad Goss table data: {reason}"),
        }
    }
}

impl std::error::Error for IoError {}

impl From<TextError> for IoError {
    fn from(e: TextError) -> IoError {
        IoError::Text(e)
    }
}

/// The one format version this build reads and writes.
const FORMAT: u32 = 1;

fn render_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string(value).expect("serialization of plain data cannot fail");
    out.push('\n');
    out
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
}

fn check_format(found: u32) -> Result<(), IoError> {
    if found != FORMAT {
        return Err(IoError::UnsupportedFormat { found });
    }
    Ok(())
}

fn field_modulus(fq: &Fq) -> Option<String> {
    fq.modulus_coords().map(modulus_string)
}

fn check_field(fq: &Fq, q: u64, modulus: &Option<String>) -> Result<(), IoError> {
    if q != fq.q() {
        return Err(IoError::FieldMismatch {
            what: "q",
            expected: fq.q().to_string(),
            found: q.to_string(),
        });
    }
    let expected = field_modulus(fq);
    if *modulus != expected {
        let show = |m: &Option<String>| m.clone().unwrap_or_else(|| "none".to_string());
        return Err(IoError::FieldMismatch {
            what: "modulus",
            expected: show(&expected),
            found: show(modulus),
        });
    }
    Ok(())
}

fn parse_rat_pair(fq: &Fq, num: &str, den: &str, context: &str) -> Result<RatK, IoError> {
    let n = parse_poly(fq, num)?;
    let d = parse_poly(fq, den)?;
    if d.is_zero() {
        return Err(IoError::ZeroDenominator { context: context.to_string() });
    }
    Ok(RatK::new(fq, n, d))
}

fn rat_pair(fq: &Fq, x: &RatK) -> (String, String) {
    (poly_string(fq, x.num()), poly_string(fq, x.den()))
}

#[derive(Serialize, Deserialize)]
struct SeriesWire {
    format: u32,
    q: u64,
    modulus: Option<String>,
    prec: usize,
    coeffs: Vec<(String, String, String)>,
}

/// Canonical bytes of a series file: nonzero coefficients in increasing
/// power, numerator and denominator in polynomial text.
pub fn series_to_string(fq: &Fq, s: &TruncSeries) -> String {
    let mut coeffs = Vec::new();
    for k in 0..=s.prec() {
        let c = s.coeff(k);
        if c.is_zero() {
            continue;
        }
        let (num, den) = rat_pair(fq, c);
        coeffs.push((k.to_string(), num, den));
    }
    render_json(&SeriesWire {
        format: FORMAT,
        q: fq.q(),
        modulus: field_modulus(fq),
        prec: s.prec(),
        coeffs,
    })
}

/// Parses a series file, validating the format version and the field.
pub fn series_from_str(fq: &Fq, text: &str) -> Result<TruncSeries, IoError> {
    let wire: SeriesWire = parse_json(text)?;
    check_format(wire.format)?;
    check_field(fq, wire.q, &wire.modulus)?;
    let mut out = TruncSeries::zero(wire.prec);
    for (pow, num, den) in &wire.coeffs {
        let k: usize = pow.parse().map_err(|_| IoError::BadNumber { text: pow.clone() })?;
        if k > wire.prec {
            return Err(IoError::PowerBeyondPrecision { power: k, prec: wire.prec });
        }
        if !out.coeff(k).is_zero() {
            return Err(IoError::DuplicateEntry { key: format!("t^{k}") });
        }
        let c = parse_rat_pair(fq, num, den, &format!("coefficient of t^{k}"))?;
        out.set_coeff(k, c);
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct AExpWire {
    format: u32,
    q: u64,
    modulus: Option<String>,
    n: u64,
    max_deg: usize,
    c0: (String, String),
    coeffs: Vec<(String, String, String)>,
}

/// Canonical bytes of an A-expansion file: coefficients keyed by monic
/// index polynomials in canonical order (degree first, then coefficient
/// tuples from the constant term upward).
pub fn aexp_to_string(fq: &Fq, ax: &AExpansion) -> String {
    let (c0_num, c0_den) = rat_pair(fq, ax.c0());
    let mut coeffs = Vec::new();
    for (a, c) in ax.coeffs() {
        let (num, den) = rat_pair(fq, c);
        coeffs.push((poly_string(fq, a), num, den));
    }
    render_json(&AExpWire {
        format: FORMAT,
        q: fq.q(),
        modulus: field_modulus(fq),
        n: ax.n(),
        max_deg: ax.max_deg(),
        c0: (c0_num, c0_den),
        coeffs,
    })
}

/// Parses an A-expansion file, validating version, field, monicity, and
/// the degree bound.
pub fn aexp_from_str(fq: &Fq, text: &str) -> Result<AExpansion, IoError> {
    let wire: AExpWire = parse_json(text)?;
    check_format(wire.format)?;
    check_field(fq, wire.q, &wire.modulus)?;
    if wire.n == 0 {
        return Err(IoError::ZeroIndexExponent);
    }
    let c0 = parse_rat_pair(fq, &wire.c0.0, &wire.c0.1, "c0")?;
    let mut coeffs = BTreeMap::new();
    for (index, num, den) in &wire.coeffs {
        let a = parse_poly(fq, index)?;
        if !a.is_monic() {
            return Err(IoError::NotMonicIndex { index: index.clone() });
        }
        if a.degree().unwrap_or(0) > wire.max_deg {
            return Err(IoError::IndexBeyondMaxDeg {
                index: index.clone(),
                max_deg: wire.max_deg,
            });
        }
        let c = parse_rat_pair(fq, num, den, &format!("coefficient of {index}"))?;
        if coeffs.insert(a, c).is_some() {
            return Err(IoError::DuplicateEntry { key: index.clone() });
        }
    }
    Ok(AExpansion::new(wire.n, c0, wire.max_deg, coeffs))
}

#[derive(Serialize, Deserialize)]
struct GossWire {
    format: u32,
    q: u64,
    modulus: Option<String>,
    lattice: String,
    nmax: usize,
    alphas: Vec<(String, String)>,
    polys: Vec<Vec<(String, String)>>,
}

fn lattice_string(fq: &Fq, lattice: &Lattice) -> String {
    match lattice {
        Lattice::Period => "period".to_string(),
        Lattice::Torsion(prime) => format!("torsion:{}", poly_string(fq, prime)),
    }
}

fn parse_lattice(fq: &Fq, text: &str) -> Result<Lattice, IoError> {
    if text == "period" {
        return Ok(Lattice::Period);
    }
    match text.strip_prefix("torsion:") {
        Some(rest) => Ok(Lattice::Torsion(parse_poly(fq, rest)?)),
        None => Err(IoError::TableShape { reason: format!("unknown lattice tag {text:?}") }),
    }
}

/// Canonical bytes of a Goss-table cache file: the lattice tag, the
/// exponential coefficients, and G_1..G_nmax as full ascending coefficient
/// lists (numerator, denominator).
pub fn goss_to_string(fq: &Fq, table: &GossTable) -> String {
    let alphas = table.alphas().iter().map(|a| rat_pair(fq, a)).collect();
    let polys = (1..=table.nmax())
        .map(|n| table.poly(n).coeffs().iter().map(|c| rat_pair(fq, c)).collect())
        .collect();
    render_json(&GossWire {
        format: FORMAT,
        q: fq.q(),
        modulus: field_modulus(fq),
        lattice: lattice_string(fq, table.lattice()),
        nmax: table.nmax(),
        alphas,
        polys,
    })
}

/// Parses a Goss-table cache file.  The stored alphas must agree with the
/// ones recomputed from the lattice tag, and each stored polynomial must be
/// monic of degree n and divisible by X; anything else is a shape error.
pub fn goss_from_str(fq: &Fq, text: &str) -> Result<GossTable, IoError> {
    let wire: GossWire = parse_json(text)?;
    check_format(wire.format)?;
    check_field(fq, wire.q, &wire.modulus)?;
    let lattice = parse_lattice(fq, &wire.lattice)?;
    if wire.nmax == 0 || wire.polys.len() != wire.nmax {
        return Err(IoError::TableShape {
            reason: format!("nmax {} does not match {} stored polynomials", wire.nmax, wire.polys.len()),
        });
    }
    let mut polys = vec![KPoly::zero()];
    for (i, entries) in wire.polys.iter().enumerate() {
        let n = i + 1;
        let mut coeffs = Vec::with_capacity(entries.len());
        for (num, den) in entries {
            coeffs.push(parse_rat_pair(fq, num, den, &format!("G_{n}"))?);
        }
        let p = KPoly::from_coeffs(coeffs);
        if !p.is_monic() || p.degree() != Some(n) || p.ord_x().unwrap_or(0) == 0 {
            return Err(IoError::TableShape {
                reason: format!("entry {n} is not a monic degree-{n} polynomial divisible by X"),
            });
        }
        polys.push(p);
    }
    let table = GossTable::from_parts(fq, lattice, polys);
    let stored: Result<Vec<RatK>, IoError> = wire
        .alphas
        .iter()
        .map(|(num, den)| parse_rat_pair(fq, num, den, "alpha"))
        .collect();
    if stored?.as_slice() != table.alphas() {
        return Err(IoError::TableShape {
            reason: "stored exponential coefficients disagree with the lattice".to_string(),
        });
    }
    Ok(table)
}

/// Canonical bytes of a check report.
pub fn report_to_string(report: &Report) -> String {
    render_json(report)
}

/// Parses a check report, validating the format version.
pub fn report_from_str(text: &str) -> Result<Report, IoError> {
    let report: Report = parse_json(text)?;
    check_format(report.format)?;
    Ok(report)
}
