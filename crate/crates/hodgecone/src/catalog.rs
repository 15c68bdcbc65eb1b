//! Builtin diamonds and the JSON diamond file format.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::determinantal::q_binomial;
use crate::hodge::{kunneth_product, validate_diamond, HodgeDiamond, HodgeError};
use crate::level::ExtendedLevel;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry '{0}'")]
    Unknown(String),
    #[error("invalid builder argument: {0}")]
    BadArgument(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("parse error in field '{field}': {msg}")]
    Field { field: String, msg: String },
    #[error("duality completion conflict at ({k},{p},{q}): {a} vs {b}")]
    Conflict { k: i64, p: i64, q: i64, a: u64, b: u64 },
    #[error(transparent)]
    Invalid(#[from] HodgeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub diamond: HodgeDiamond,
    pub provenance: String,
    pub rhm: bool,
    pub hrh_bound: ExtendedLevel,
}

impl CatalogEntry {
    fn builtin(name: &str, diamond: HodgeDiamond, provenance: &str) -> Self {
        CatalogEntry {
            name: name.to_string(),
            diamond,
            provenance: provenance.to_string(),
            rhm: true,
            hrh_bound: ExtendedLevel::Inf,
        }
    }
}

pub fn projective_space(n: u32) -> Result<HodgeDiamond, CatalogError> {
    if n < 1 {
        return Err(CatalogError::BadArgument("projective space needs n >= 1".into()));
    }
    Ok(HodgeDiamond::from_entries(n, (0..=n as i64).map(|p| (2 * p, p, p, 1)))?)
}

pub fn curve(genus: u32) -> HodgeDiamond {
    let g = genus as u64;
    HodgeDiamond::from_entries(1, [(0, 0, 0, 1), (1, 1, 0, g), (1, 0, 1, g), (2, 1, 1, 1)]).expect("curve")
}

pub fn quadric(n: u32) -> Result<HodgeDiamond, CatalogError> {
    if n < 1 {
        return Err(CatalogError::BadArgument("quadric needs n >= 1".into()));
    }
    let mut entries: Vec<_> = (0..=n as i64).map(|p| (2 * p, p, p, 1)).collect();
    if n.is_multiple_of(2) {
        let h = n as i64 / 2;
        entries.push((n as i64, h, h, 1));
    }
    Ok(HodgeDiamond::from_entries(n, entries)?)
}

/// Gr(k, n): h^{p,p} counts partitions of p in a k x (n-k) box.
pub fn grassmannian(k: u32, n: u32) -> Result<HodgeDiamond, CatalogError> {
    if k == 0 || k >= n {
        return Err(CatalogError::BadArgument(format!("grassmannian needs 0 < k < n, got ({k},{n})")));
    }
    let poly = q_binomial(n as i64, k as i64).expect("k < n");
    let dim = k * (n - k);
    let entries = poly.terms().map(|(e, c)| (2 * e, e, e, c as u64));
    Ok(HodgeDiamond::from_entries(dim, entries)?)
}

/// Builtin entries, in listing order.
pub fn builtin() -> Vec<CatalogEntry> {
    let p = |n| projective_space(n).expect("n >= 1");
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push(CatalogEntry::builtin(&format!("p{n}"), p(n), &format!("projective_space({n})")));
    }
    for g in 0..=3 {
        out.push(CatalogEntry::builtin(&format!("curve-g{g}"), curve(g), &format!("curve({g})")));
    }
    out.push(CatalogEntry::builtin("elliptic", curve(1), "curve(1)"));
    for n in 1..=4 {
        out.push(CatalogEntry::builtin(&format!("quadric{n}"), quadric(n).expect("n >= 1"), &format!("quadric({n})")));
    }
    out.push(CatalogEntry::builtin("p1xp1", kunneth_product(&p(1), &p(1)), "kunneth(p1, p1)"));
    out.push(CatalogEntry::builtin("p1xe", kunneth_product(&p(1), &curve(1)), "kunneth(p1, elliptic)"));
    out.push(CatalogEntry::builtin("p2xp1", kunneth_product(&p(2), &p(1)), "kunneth(p2, p1)"));
    out.push(CatalogEntry::builtin("p3xp1", kunneth_product(&p(3), &p(1)), "kunneth(p3, p1)"));
    out.push(CatalogEntry::builtin("exe", kunneth_product(&curve(1), &curve(1)), "kunneth(elliptic, elliptic)"));
    out.push(CatalogEntry::builtin("gr-2-4", grassmannian(2, 4).expect("valid"), "grassmannian(2, 4)"));
    out.push(CatalogEntry::builtin("gr-2-5", grassmannian(2, 5).expect("valid"), "grassmannian(2, 5)"));
    out
}

pub fn lookup(name: &str) -> Result<CatalogEntry, CatalogError> {
    builtin()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CatalogError::Unknown(name.to_string()))
}

#[derive(Deserialize)]
struct RawFile {
    dim: u32,
    hodge: Vec<Value>,
    #[serde(default = "default_true")]
    rhm: bool,
    #[serde(default)]
    hrh_bound: Option<Value>,
}

fn default_true() -> bool {
    true
}

fn field_err(field: impl Into<String>, msg: impl Into<String>) -> CatalogError {
    CatalogError::Field { field: field.into(), msg: msg.into() }
}

/// Parses a diamond file and completes missing dual entries; does not validate.
pub fn parse_diamond_unchecked(text: &str, name: &str) -> Result<CatalogEntry, CatalogError> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| {
        if e.is_data() {
            field_err("<root>", e.to_string())
        } else {
            CatalogError::Syntax { line: e.line(), column: e.column(), msg: e.to_string() }
        }
    })?;
    let d = raw.dim as i64;
    let mut table: BTreeMap<(i64, i64, i64), u64> = BTreeMap::new();
    for (i, row) in raw.hodge.iter().enumerate() {
        let field = format!("hodge[{i}]");
        let nums: Vec<i64> = row
            .as_array()
            .filter(|a| a.len() == 4)
            .and_then(|a| a.iter().map(|v| v.as_i64()).collect::<Option<Vec<_>>>())
            .ok_or_else(|| field_err(&field, "expected [k, p, q, dim] integers"))?;
        let (k, p, q, n) = (nums[0], nums[1], nums[2], nums[3]);
        if p + q != k {
            return Err(field_err(&field, format!("key ({p},{q}) does not have weight {k}")));
        }
        if !(0..=2 * d).contains(&k) {
            return Err(field_err(&field, format!("degree {k} outside [0, {}]", 2 * d)));
        }
        if n < 0 {
            return Err(field_err(&field, "negative dimension"));
        }
        if let Some(&old) = table.get(&(k, p, q)) {
            if old != n as u64 {
                return Err(CatalogError::Conflict { k, p, q, a: old, b: n as u64 });
            }
        }
        table.insert((k, p, q), n as u64);
    }
    let given: Vec<_> = table.iter().map(|(&k, &v)| (k, v)).collect();
    for ((k, p, q), n) in given {
        let dual = (2 * d - k, d - p, d - q);
        match table.get(&dual) {
            Some(&m) if m != n => return Err(CatalogError::Conflict { k: dual.0, p: dual.1, q: dual.2, a: m, b: n }),
            Some(_) => {}
            None => {
                table.insert(dual, n);
            }
        }
    }
    let hrh_bound = match &raw.hrh_bound {
        None if raw.rhm => ExtendedLevel::Inf,
        None => ExtendedLevel::Finite(0),
        Some(Value::String(s)) if s == "inf" => ExtendedLevel::Inf,
        Some(v) => match v.as_u64() {
            Some(k) => ExtendedLevel::Finite(k as u32),
            None => return Err(field_err("hrh_bound", "expected a nonnegative integer or \"inf\"")),
        },
    };
    if raw.rhm != (hrh_bound == ExtendedLevel::Inf) {
        return Err(field_err("hrh_bound", "must be \"inf\" exactly when rhm is true"));
    }
    let diamond = HodgeDiamond::from_entries(raw.dim, table.into_iter().map(|((k, p, q), n)| (k, p, q, n)))?;
    Ok(CatalogEntry { name: name.to_string(), diamond, provenance: "file".into(), rhm: raw.rhm, hrh_bound })
}

pub fn parse_diamond(text: &str, name: &str) -> Result<CatalogEntry, CatalogError> {
    let mut entry = parse_diamond_unchecked(text, name)?;
    entry.diamond = validate_diamond(entry.diamond)?;
    Ok(entry)
}

pub fn read_diamond_unchecked(path: &Path) -> Result<CatalogEntry, CatalogError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CatalogError::Io { path: path.display().to_string(), source })?;
    let name = path.file_stem().map_or("file".into(), |s| s.to_string_lossy().into_owned());
    parse_diamond_unchecked(&text, &name)
}

pub fn load_diamond(path: &Path) -> Result<CatalogEntry, CatalogError> {
    let mut entry = read_diamond_unchecked(path)?;
    entry.diamond = validate_diamond(entry.diamond)?;
    Ok(entry)
}

/// The file representation of an entry; dual halves are written out in full.
pub fn to_json(entry: &CatalogEntry) -> Value {
    let hodge: Vec<Value> = entry.diamond.entries().map(|(k, p, q, n)| serde_json::json!([k, p, q, n])).collect();
    serde_json::json!({
        "dim": entry.diamond.dim(),
        "hodge": hodge,
        "rhm": entry.rhm,
        "hrh_bound": entry.hrh_bound,
    })
}
