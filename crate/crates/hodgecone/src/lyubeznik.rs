//! Hodge-Lyubeznik numbers at the vertex of a cone.
//!
//! Indices follow the Hodge-module convention: lambda^{p,q}_{r,s} is the
//! dimension of Gr^F_{-p} Gr^W_{p+q} of the relevant local cohomology.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cone::{ConeError, ConeSetup};
use crate::hodge::PrimitiveDecomposition;
use crate::level::ExtendedLevel;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LyubeznikTable {
    pub n: u32,
    /// (r, s, p, q) -> lambda
    pub entries: BTreeMap<(i64, i64, i64, i64), u64>,
    /// (r, p, q) -> I-lambda
    pub intersection_entries: BTreeMap<(i64, i64, i64), u64>,
}

impl LyubeznikTable {
    pub fn lambda(&self, r: i64, s: i64, p: i64, q: i64) -> u64 {
        self.entries.get(&(r, s, p, q)).copied().unwrap_or(0)
    }

    pub fn i_lambda(&self, r: i64, p: i64, q: i64) -> u64 {
        self.intersection_entries.get(&(r, p, q)).copied().unwrap_or(0)
    }

    fn bump(&mut self, key: (i64, i64, i64, i64), v: u64) {
        if v > 0 {
            *self.entries.entry(key).or_insert(0) += v;
        }
    }

    fn bump_i(&mut self, key: (i64, i64, i64), v: u64) {
        if v > 0 {
            *self.intersection_entries.entry(key).or_insert(0) += v;
        }
    }

    /// Support, symmetry and low-r vanishing; returns the first offending key.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.n as i64;
        for (&(r, s, p, q), &v) in &self.entries {
            if s < n && (r != 0 || p + q != 1 - s) {
                return Err(format!("lambda support at ({r},{s},{p},{q})"));
            }
            if s == n && ((r <= 1 && n >= 2) || self.i_lambda(r, p, q) != v) {
                return Err(format!("lambda_(r,n) mismatch at ({r},{s},{p},{q})"));
            }
            if self.lambda(r, s, q, p) != v {
                return Err(format!("lambda symmetry at ({r},{s},{p},{q})"));
            }
        }
        for (&(r, p, q), &v) in &self.intersection_entries {
            if r < 1 || p + q != r - n {
                return Err(format!("I-lambda support at ({r},{p},{q})"));
            }
            if r >= 2 && self.lambda(r, n, p, q) != v {
                return Err(format!("lambda_(r,n) missing at ({r},{p},{q})"));
            }
            if self.i_lambda(r, q, p) != v {
                return Err(format!("I-lambda symmetry at ({r},{p},{q})"));
            }
        }
        Ok(())
    }
}

impl Serialize for LyubeznikTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let lam: Vec<[i64; 5]> =
            self.entries.iter().map(|(&(r, s, p, q), &v)| [r, s, p, q, v as i64]).collect();
        let ilam: Vec<[i64; 4]> =
            self.intersection_entries.iter().map(|(&(r, p, q), &v)| [r, p, q, v as i64]).collect();
        let mut st = s.serialize_struct("LyubeznikTable", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("lambda", &lam)?;
        st.serialize_field("intersection_lambda", &ilam)?;
        st.end()
    }
}

pub fn hodge_lyubeznik_table(prim: &PrimitiveDecomposition, setup: &ConeSetup) -> Result<LyubeznikTable, ConeError> {
    if prim.dim() != setup.d {
        return Err(ConeError::DimensionMismatch { expected: setup.d, got: prim.dim() });
    }
    let (d, delta, n) = (setup.d as i64, setup.delta as i64, setup.n as i64);
    let mut t = LyubeznikTable { n: setup.n, ..Default::default() };

    for s in 2..n {
        let j = n - s;
        if delta <= j {
            for a in 0..=delta {
                for (pp, qq, v) in prim.get(s - 1 - 2 * a).pieces() {
                    t.bump((0, s, -qq - a, -pp - a), v);
                }
            }
        } else {
            for a in 0..=j {
                for (pp, qq, v) in prim.get(d - (delta - j + 2 * a)).pieces() {
                    t.bump((0, s, j - delta - qq - a, j - delta - pp - a), v);
                }
            }
        }
    }

    for r in 1..=n {
        if r > delta {
            for a in 0..=delta {
                for (pp, qq, v) in prim.get(n - r - 2 * a).pieces() {
                    t.bump_i((r, -qq - a, -pp - a), v);
                }
            }
        } else {
            for a in 0..r {
                for (pp, qq, v) in prim.get(d - delta - 1 + r - 2 * a).pieces() {
                    t.bump_i((r, pp - d + a, qq - d + a), v);
                }
            }
        }
    }
    let copies: Vec<_> = t.intersection_entries.iter().filter(|(k, _)| k.0 >= 2).map(|(&k, &v)| (k, v)).collect();
    for ((r, p, q), v) in copies {
        t.bump((r, n, p, q), v);
    }
    Ok(t)
}

pub fn smooth_point_table(n: u32) -> LyubeznikTable {
    let mut t = LyubeznikTable { n, ..Default::default() };
    t.entries.insert((n as i64, n as i64, 0, 0), 1);
    t.intersection_entries.insert((n as i64, 0, 0), 1);
    t
}

pub fn classical_lyubeznik(table: &LyubeznikTable) -> BTreeMap<(i64, i64), u64> {
    let mut out = BTreeMap::new();
    for (&(r, s, _, _), &v) in &table.entries {
        *out.entry((r, s)).or_insert(0) += v;
    }
    out
}

/// sup{k : lambda_{r,s}^{p,q} = 0 for s < n and p >= -k}.
pub fn c_from_table(table: &LyubeznikTable) -> ExtendedLevel {
    let n = table.n as i64;
    table
        .entries
        .keys()
        .filter(|&&(_, s, _, _)| s < n)
        .map(|&(_, _, p, _)| ExtendedLevel::from_i64(-p - 1))
        .min()
        .unwrap_or(ExtendedLevel::Inf)
}

/// min(c, largest k such that lambda_{r,n} and I-lambda_r agree for p >= -k).
pub fn hrh_from_table(table: &LyubeznikTable, c: ExtendedLevel) -> ExtendedLevel {
    let n = table.n as i64;
    let mut keys: Vec<(i64, i64, i64)> = table.intersection_entries.keys().copied().collect();
    keys.extend(table.entries.keys().filter(|k| k.1 == n).map(|&(r, _, p, q)| (r, p, q)));
    let agree = keys
        .into_iter()
        .filter(|&(r, p, q)| table.lambda(r, n, p, q) != table.i_lambda(r, p, q))
        .map(|(_, p, _)| ExtendedLevel::from_i64(-p - 1))
        .min()
        .unwrap_or(ExtendedLevel::Inf);
    c.min(agree)
}
