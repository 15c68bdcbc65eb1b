//! Local cohomology with support in determinantal varieties, recorded as
//! polynomials in q over the classes [D_s] of the simple equivariant modules.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::level::ExtendedLevel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeterminantalError {
    #[error("q-binomial needs a >= b >= 0, got ({a},{b})")]
    BadBinomial { a: i64, b: i64 },
    #[error("{0}")]
    BadShape(String),
    #[error("rank parameter p={p} outside the valid range {range}")]
    BadRank { p: u32, range: String },
    #[error("non-exact polynomial division")]
    Inexact,
    #[error("negative exponent {0} survived expansion")]
    Laurent(i64),
    #[error("minimum degree {got} differs from the codimension {expected}")]
    Codim { expected: i64, got: i64 },
}

/// Integer Laurent polynomial in q; finished results have exponents >= 0.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct QPolynomial {
    coeffs: BTreeMap<i64, i64>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(e: i64, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in coeffs {
            p.add_term(e, c);
        }
        p
    }

    /// Dense coefficients starting at q^0.
    pub fn from_dense(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().enumerate().map(|(e, &c)| (e as i64, c)))
    }

    fn add_term(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_polynomial(&self) -> bool {
        self.min_degree().is_none_or(|e| e >= 0)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// q -> q^power.
    pub fn substitute(&self, power: i64) -> Self {
        Self::from_coeffs(self.terms().map(|(e, c)| (e * power, c)))
    }

    pub fn shift(&self, by: i64) -> Self {
        Self::from_coeffs(self.terms().map(|(e, c)| (e + by, c)))
    }

    /// Exact division of polynomials; errors when a remainder is left.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, DeterminantalError> {
        let (dlo, dhi) = match (divisor.min_degree(), divisor.max_degree()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(DeterminantalError::Inexact),
        };
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(top) = rem.max_degree() {
            if top - dhi < rem.min_degree().unwrap() - dlo {
                return Err(DeterminantalError::Inexact);
            }
            let c = rem.coeff(top);
            if c % lead != 0 {
                return Err(DeterminantalError::Inexact);
            }
            let t = Self::monomial(top - dhi, c / lead);
            rem = &rem + &(&t * divisor).scale(-1);
            quot = &quot + &t;
        }
        Ok(quot)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_coeffs(self.terms().map(|(e, c)| (e, c * k)))
    }

    /// Coefficients as a vector from q^0 to the top degree.
    pub fn dense(&self) -> Vec<i64> {
        match self.max_degree() {
            None => Vec::new(),
            Some(top) => (0..=top).map(|e| self.coeff(e)).collect(),
        }
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let body = match (e, a) {
                (0, _) => format!("{a}"),
                (1, 1) => "q".to_string(),
                (_, 1) => format!("q^{e}"),
                (1, _) => format!("{a}q"),
                _ => format!("{a}q^{e}"),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, " {sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in self.terms() {
            m.serialize_entry(&e.to_string(), &c)?;
        }
        m.end()
    }
}

/// Gaussian binomial via the Pascal recurrence [a,b] = [a-1,b-1] + q^b [a-1,b].
pub fn q_binomial(a: i64, b: i64) -> Result<QPolynomial, DeterminantalError> {
    if a < b || b < 0 {
        return Err(DeterminantalError::BadBinomial { a, b });
    }
    let b = b as usize;
    let mut row: Vec<QPolynomial> = vec![QPolynomial::one()];
    for i in 1..=a as usize {
        let mut next = Vec::with_capacity((i + 1).min(b + 1));
        for k in 0..=i.min(b) {
            let left = if k == 0 { QPolynomial::zero() } else { row[k - 1].clone() };
            let right = if k < row.len() && k < i { row[k].shift(k as i64) } else { QPolynomial::zero() };
            next.push(&left + &right);
        }
        row = next;
    }
    Ok(row[b].clone())
}

pub fn substitute(poly: &QPolynomial, power: i64) -> QPolynomial {
    poly.substitute(power)
}

/// Formal sum over [D_s] with q-polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GrothendieckClassPoly {
    pub terms: BTreeMap<u32, QPolynomial>,
}

impl GrothendieckClassPoly {
    fn add(&mut self, s: u32, poly: QPolynomial) {
        let slot = self.terms.entry(s).or_default();
        *slot = &*slot + &poly;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn coeff(&self, s: u32) -> QPolynomial {
        self.terms.get(&s).cloned().unwrap_or_default()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.values().filter_map(|p| p.min_degree()).min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.values().filter_map(|p| p.max_degree()).max()
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|p| p.is_polynomial() && p.terms().all(|(_, c)| c > 0))
    }
}

impl fmt::Display for GrothendieckClassPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, p)| {
                if p.terms().count() == 1 {
                    format!("[D_{s}]{p}")
                } else {
                    format!("[D_{s}]({p})")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for GrothendieckClassPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.terms.len()))?;
        for (k, p) in &self.terms {
            m.serialize_entry(&format!("D_{k}"), p)?;
        }
        m.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// m x n matrices, m >= n.
    Generic { m: u32, n: u32 },
    /// n x n skew-symmetric, n odd.
    OddSkew { n: u32 },
    /// n x n skew-symmetric, n even.
    EvenSkew { n: u32 },
    /// n x n symmetric.
    Symmetric { n: u32 },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Generic { m, n } => write!(f, "generic {m}x{n}"),
            Family::OddSkew { n } => write!(f, "odd-skew {n}x{n}"),
            Family::EvenSkew { n } => write!(f, "even-skew {n}x{n}"),
            Family::Symmetric { n } => write!(f, "symmetric {n}x{n}"),
        }
    }
}

/// Z_p: matrices of rank <= p (rank <= 2p in the skew families).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeterminantalCase {
    #[serde(flatten)]
    pub family: Family,
    pub p: u32,
}

impl DeterminantalCase {
    pub fn new(family: Family, p: u32) -> Result<Self, DeterminantalError> {
        let bound = match family {
            Family::Generic { m, n } => {
                if m < n || n == 0 {
                    return Err(DeterminantalError::BadShape(format!("generic needs m >= n >= 1, got {m}x{n}")));
                }
                n
            }
            Family::OddSkew { n } => {
                if n % 2 == 0 || n < 3 {
                    return Err(DeterminantalError::BadShape(format!("odd-skew needs odd n >= 3, got {n}")));
                }
                n / 2
            }
            Family::EvenSkew { n } => {
                if n % 2 == 1 || n < 2 {
                    return Err(DeterminantalError::BadShape(format!("even-skew needs even n >= 2, got {n}")));
                }
                n / 2
            }
            Family::Symmetric { n } => {
                if n == 0 {
                    return Err(DeterminantalError::BadShape("symmetric needs n >= 1".into()));
                }
                n
            }
        };
        if p >= bound {
            return Err(DeterminantalError::BadRank { p, range: format!("[0, {})", bound) });
        }
        Ok(DeterminantalCase { family, p })
    }

    /// Half size m for the skew families.
    fn half(&self) -> i64 {
        match self.family {
            Family::OddSkew { n } | Family::EvenSkew { n } => (n / 2) as i64,
            _ => 0,
        }
    }

    /// Standard codimension of Z_p in the space of matrices.
    pub fn expected_codim(&self) -> i64 {
        let p = self.p as i64;
        match self.family {
            Family::Generic { m, n } => (m as i64 - p) * (n as i64 - p),
            Family::OddSkew { n } | Family::EvenSkew { n } => choose2(n as i64 - 2 * p),
            Family::Symmetric { n } => choose2(n as i64 - p + 1),
        }
    }

    /// Z_p has hypersurface singularities.
    pub fn is_hypersurface(&self) -> bool {
        let p = self.p;
        match self.family {
            Family::Generic { m, n } => m == n && n == p + 1,
            Family::OddSkew { .. } => false,
            Family::EvenSkew { n } => n / 2 == p + 1,
            Family::Symmetric { n } => n == p + 1,
        }
    }

    fn check_corollary_range(&self) -> Result<(), DeterminantalError> {
        let min = if matches!(self.family, Family::Symmetric { .. }) { 2 } else { 1 };
        if self.p < min {
            return Err(DeterminantalError::BadRank { p: self.p, range: format!("p >= {min} for this invariant") });
        }
        Ok(())
    }
}

fn choose2(x: i64) -> i64 {
    x * (x - 1) / 2
}

pub fn local_cohomology_poly(case: &DeterminantalCase) -> Result<GrothendieckClassPoly, DeterminantalError> {
    let p = case.p as i64;
    let mut out = GrothendieckClassPoly::default();
    match case.family {
        Family::Generic { m, n } => {
            let (m, n) = (m as i64, n as i64);
            for s in 0..=p {
                let mono = QPolynomial::monomial((n - p).pow(2) + (n - s) * (m - n), 1);
                out.add(s as u32, &mono * &q_binomial(n - s - 1, p - s)?.substitute(2));
            }
        }
        Family::OddSkew { .. } => {
            let mh = case.half();
            for s in 0..=p {
                let e = 2 * (mh - p).pow(2) + (mh - p) + 2 * (p - s);
                out.add(s as u32, &QPolynomial::monomial(e, 1) * &q_binomial(mh - 1 - s, p - s)?.substitute(4));
            }
        }
        Family::EvenSkew { .. } => {
            let mh = case.half();
            for s in 0..=p {
                let e = 2 * (mh - p).pow(2) - (mh - p);
                out.add(s as u32, &QPolynomial::monomial(e, 1) * &q_binomial(mh - 1 - s, p - s)?.substitute(4));
            }
        }
        Family::Symmetric { n } => {
            let n = n as i64;
            for l in 0..=p / 2 {
                let e = 1 + choose2(n - p + 2 * l + 1) - choose2(2 * l + 2);
                let top = (n - p + 2 * l - 1).div_euclid(2);
                let poly = &QPolynomial::monomial(e, 1) * &q_binomial(top, l)?.substitute(-4);
                if let Some(lo) = poly.min_degree().filter(|&lo| lo < 0) {
                    return Err(DeterminantalError::Laurent(lo));
                }
                out.add((p - 2 * l) as u32, poly);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodimLcdef {
    pub codim: i64,
    pub lcdef: i64,
}

pub fn codim_and_lcdef(case: &DeterminantalCase) -> Result<CodimLcdef, DeterminantalError> {
    let h = local_cohomology_poly(case)?;
    let lo = h.min_degree().expect("nonzero class");
    let hi = h.max_degree().expect("nonzero class");
    let expected = case.expected_codim();
    if lo != expected {
        return Err(DeterminantalError::Codim { expected, got: lo });
    }
    Ok(CodimLcdef { codim: lo, lcdef: hi - lo })
}

pub fn lcdef_gen_pos(case: &DeterminantalCase) -> Result<u32, DeterminantalError> {
    case.check_corollary_range()?;
    let p = case.p as i64;
    let v = match case.family {
        Family::Generic { m, n } => m as i64 + n as i64 - 2 * p - 2,
        Family::OddSkew { .. } => 4 * (case.half() - p - 1) + 2,
        Family::EvenSkew { .. } => 4 * (case.half() - p - 1),
        Family::Symmetric { n } => 2 * (n as i64 - p - 1),
    };
    Ok(v as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NcciLocus {
    Empty,
    Stratum(u32),
}

impl fmt::Display for NcciLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NcciLocus::Empty => write!(f, "empty"),
            NcciLocus::Stratum(s) => write!(f, "Z_{s}"),
        }
    }
}

pub fn ncci_locus(case: &DeterminantalCase) -> Result<NcciLocus, DeterminantalError> {
    case.check_corollary_range()?;
    if case.is_hypersurface() {
        return Ok(NcciLocus::Empty);
    }
    let drop = if matches!(case.family, Family::Symmetric { .. }) { 2 } else { 1 };
    Ok(NcciLocus::Stratum(case.p - drop))
}

/// The possible values of c(Z_p); not pinned down beyond this set.
pub fn c_range(case: &DeterminantalCase) -> Result<Vec<ExtendedLevel>, DeterminantalError> {
    case.check_corollary_range()?;
    if case.is_hypersurface() {
        return Ok(vec![ExtendedLevel::Inf]);
    }
    Ok(match case.family {
        Family::Generic { .. } => vec![ExtendedLevel::Finite(0)],
        _ => vec![ExtendedLevel::Finite(0), ExtendedLevel::Finite(1)],
    })
}

/// Every valid case with matrix sizes up to the given bounds.
pub fn sweep_cases(max_generic: u32, max_skew: u32, max_symmetric: u32) -> Vec<DeterminantalCase> {
    let mut out = Vec::new();
    for n in 1..=max_generic {
        for m in n..=max_generic {
            for p in 0..n {
                out.push(DeterminantalCase { family: Family::Generic { m, n }, p });
            }
        }
    }
    for n in 2..=max_skew {
        let family = if n % 2 == 1 { Family::OddSkew { n } } else { Family::EvenSkew { n } };
        for p in 0..n / 2 {
            if let Ok(c) = DeterminantalCase::new(family, p) {
                out.push(c);
            }
        }
    }
    for n in 1..=max_symmetric {
        for p in 0..n {
            out.push(DeterminantalCase { family: Family::Symmetric { n }, p });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ExtendedLevel::*;

    fn case(family: Family, p: u32) -> DeterminantalCase {
        DeterminantalCase::new(family, p).unwrap()
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(q_binomial(3, 1).unwrap(), QPolynomial::from_dense(&[1, 1, 1]));
        assert_eq!(q_binomial(7, 0).unwrap(), QPolynomial::one());
        assert_eq!(q_binomial(4, 2).unwrap(), QPolynomial::from_dense(&[1, 1, 2, 1, 1]));
        assert!(q_binomial(2, 3).is_err());
        assert!(q_binomial(2, -1).is_err());
    }

    #[test]
    fn substitution_examples() {
        let p = QPolynomial::from_dense(&[1, 1]);
        assert_eq!(substitute(&p, 2), QPolynomial::from_dense(&[1, 0, 1]));
        assert_eq!(substitute(&p, -4), QPolynomial::from_coeffs([(0, 1), (-4, 1)]));
        assert!(!substitute(&p, -4).is_polynomial());
        assert_eq!(substitute(&q_binomial(3, 1).unwrap(), 2), QPolynomial::from_dense(&[1, 0, 1, 0, 1]));
    }

    #[test]
    fn exact_division() {
        // (1 - q^4)(1 - q^3) / ((1 - q^2)(1 - q)) = [4,2]
        let f = |k: i64| QPolynomial::from_coeffs([(0, 1), (k, -1)]);
        let num = &f(4) * &f(3);
        let den = &f(2) * &f(1);
        assert_eq!(num.div_exact(&den).unwrap(), q_binomial(4, 2).unwrap());
        assert!(QPolynomial::from_dense(&[1, 0, 1]).div_exact(&f(1)).is_err());
    }

    #[test]
    fn generic_examples() {
        let h = local_cohomology_poly(&case(Family::Generic { m: 2, n: 2 }, 1)).unwrap();
        assert_eq!(h.coeff(0), QPolynomial::monomial(1, 1));
        assert_eq!(h.coeff(1), QPolynomial::monomial(1, 1));

        let c = case(Family::Generic { m: 3, n: 3 }, 1);
        let h = local_cohomology_poly(&c).unwrap();
        assert_eq!(h.coeff(0), QPolynomial::from_coeffs([(4, 1), (6, 1)]));
        assert_eq!(h.coeff(1), QPolynomial::monomial(4, 1));
        assert_eq!(h.to_string(), "[D_0](q^4 + q^6) + [D_1]q^4");
        assert_eq!(codim_and_lcdef(&c).unwrap(), CodimLcdef { codim: 4, lcdef: 2 });

        for n in 1..6 {
            let c = case(Family::Generic { m: n, n }, n - 1);
            assert_eq!(codim_and_lcdef(&c).unwrap().lcdef, 0);
        }
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(lcdef_gen_pos(&case(Family::Generic { m: 4, n: 3 }, 1)).unwrap(), 3);
        assert_eq!(lcdef_gen_pos(&case(Family::OddSkew { n: 7 }, 1)).unwrap(), 6);
        assert_eq!(lcdef_gen_pos(&case(Family::Symmetric { n: 4 }, 2)).unwrap(), 2);

        assert_eq!(ncci_locus(&case(Family::Generic { m: 3, n: 3 }, 2)).unwrap(), NcciLocus::Empty);
        assert_eq!(ncci_locus(&case(Family::Generic { m: 3, n: 3 }, 1)).unwrap(), NcciLocus::Stratum(0));
        assert_eq!(ncci_locus(&case(Family::Symmetric { n: 5 }, 3)).unwrap(), NcciLocus::Stratum(1));
        assert!(ncci_locus(&case(Family::Symmetric { n: 5 }, 1)).is_err());

        assert_eq!(c_range(&case(Family::Generic { m: 3, n: 3 }, 2)).unwrap(), vec![Inf]);
        assert_eq!(c_range(&case(Family::Generic { m: 4, n: 3 }, 1)).unwrap(), vec![Finite(0)]);
        assert_eq!(c_range(&case(Family::OddSkew { n: 7 }, 2)).unwrap(), vec![Finite(0), Finite(1)]);

        let ev = case(Family::EvenSkew { n: 6 }, 2);
        assert_eq!(codim_and_lcdef(&ev).unwrap().lcdef, 0);
        assert_eq!(ncci_locus(&ev).unwrap(), NcciLocus::Empty);
    }

    #[test]
    fn symmetric_example() {
        let h = local_cohomology_poly(&case(Family::Symmetric { n: 5 }, 3)).unwrap();
        assert_eq!(h.to_string(), "[D_1]q^5 + [D_3]q^3");
    }

    #[test]
    fn shape_errors() {
        assert!(DeterminantalCase::new(Family::Generic { m: 2, n: 3 }, 0).is_err());
        assert!(DeterminantalCase::new(Family::Generic { m: 3, n: 3 }, 3).is_err());
        assert!(DeterminantalCase::new(Family::OddSkew { n: 6 }, 0).is_err());
        assert!(DeterminantalCase::new(Family::EvenSkew { n: 6 }, 3).is_err());
    }

    // Partitions in an (a-b) x b box counted by size.
    fn box_partitions(rows: usize, cols: usize) -> Vec<i64> {
        fn go(rows: usize, max_part: usize, size: usize, out: &mut Vec<i64>) {
            out[size] += 1;
            if rows == 0 {
                return;
            }
            for part in 1..=max_part {
                go(rows - 1, part, size + part, out);
            }
        }
        let mut out = vec![0; rows * cols + 1];
        go(rows, cols, 0, &mut out);
        out
    }

    #[test]
    fn binomial_against_partitions_and_division() {
        let f = |k: i64| QPolynomial::from_coeffs([(0, 1), (k, -1)]);
        for a in 0..=12i64 {
            for b in 0..=a {
                let qb = q_binomial(a, b).unwrap();
                assert_eq!(qb.dense(), box_partitions(b as usize, (a - b) as usize));
                let mut num = QPolynomial::one();
                let mut den = QPolynomial::one();
                for i in 0..b {
                    num = &num * &f(a - i);
                    den = &den * &f(i + 1);
                }
                assert_eq!(num.div_exact(&den).unwrap(), qb);
            }
        }
    }

    #[test]
    fn grid_sweep() {
        for c in sweep_cases(6, 9, 6) {
            let h = local_cohomology_poly(&c).unwrap();
            assert!(h.all_nonnegative(), "{c:?}");
            let cl = codim_and_lcdef(&c).unwrap();
            for (s, poly) in &h.terms {
                assert!(poly.eval_at_one() > 0, "{c:?} s={s}");
            }
            if c.is_hypersurface() {
                assert_eq!(cl.lcdef, 0, "{c:?}");
            }
            if let Ok(g) = lcdef_gen_pos(&c) {
                assert!(g as i64 <= cl.lcdef, "{c:?}");
                assert_eq!(ncci_locus(&c).unwrap() == NcciLocus::Empty, cl.lcdef == 0, "{c:?}");
            }
        }
    }

    // dim Z_p for each family, used to read off codim of the non-CCI stratum.
    fn stratum_dim(family: Family, p: i64) -> i64 {
        match family {
            Family::Generic { m, n } => (m as i64 + n as i64 - p) * p,
            Family::OddSkew { n } | Family::EvenSkew { n } => p * (2 * n as i64 - 2 * p - 1),
            Family::Symmetric { n } => n as i64 * p - p * (p - 1) / 2,
        }
    }

    #[test]
    fn c_range_respects_inequality() {
        for c in sweep_cases(6, 9, 6) {
            let (Ok(g), Ok(locus), Ok(range)) = (lcdef_gen_pos(&c), ncci_locus(&c), c_range(&c)) else {
                continue;
            };
            let NcciLocus::Stratum(s) = locus else { continue };
            let codim = stratum_dim(c.family, c.p as i64) - stratum_dim(c.family, s as i64);
            let top = range.iter().filter_map(|l| l.finite()).max().unwrap();
            assert_eq!(g as i64 + 2 * top as i64 + 3, codim, "{c:?}");
        }
    }
}
