//! Pure Hodge structures, Hodge diamonds and the Lefschetz package.
//!
//! Everything here is dimension bookkeeping: a structure is a sparse table of
//! Hodge numbers, never an actual vector space.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error("level {k} has key ({p},{q}) off the weight line")]
    WeightMismatch { k: i64, p: i64, q: i64 },
    #[error("degree {k} is outside [0, {top}]")]
    DegreeOutOfRange { k: i64, top: i64 },
    #[error("disconnected: h^0 must be one-dimensional at (0,0), failing at ({k},{p},{q})")]
    Disconnected { k: i64, p: i64, q: i64 },
    #[error("Hodge symmetry violation at ({k},{p},{q})")]
    Symmetry { k: i64, p: i64, q: i64 },
    #[error("Poincare duality violation at ({k},{p},{q})")]
    Duality { k: i64, p: i64, q: i64 },
    #[error("hard Lefschetz violation at ({k},{p},{q})")]
    Lefschetz { k: i64, p: i64, q: i64 },
    #[error("negative primitive dimension at ({k},{p},{q})")]
    NegativePrimitive { k: i64, p: i64, q: i64 },
}

/// Hodge numbers of a pure structure of fixed weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PureHodgeStructure {
    weight: i64,
    dims: BTreeMap<(i64, i64), u64>,
}

impl PureHodgeStructure {
    pub fn zero(weight: i64) -> Self {
        PureHodgeStructure { weight, dims: BTreeMap::new() }
    }

    pub fn from_pairs(
        weight: i64,
        pairs: impl IntoIterator<Item = ((i64, i64), u64)>,
    ) -> Result<Self, HodgeError> {
        let mut hs = Self::zero(weight);
        for ((p, q), n) in pairs {
            hs.add_piece(p, q, n)?;
        }
        Ok(hs)
    }

    /// The one-dimensional structure of type (p,p).
    pub fn tate(p: i64) -> Self {
        let mut hs = Self::zero(2 * p);
        hs.dims.insert((p, p), 1);
        hs
    }

    pub fn add_piece(&mut self, p: i64, q: i64, n: u64) -> Result<(), HodgeError> {
        if p + q != self.weight {
            return Err(HodgeError::WeightMismatch { k: self.weight, p, q });
        }
        if n > 0 {
            *self.dims.entry((p, q)).or_insert(0) += n;
        }
        Ok(())
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn dim(&self, p: i64, q: i64) -> u64 {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn pieces(&self) -> impl Iterator<Item = (i64, i64, u64)> + '_ {
        self.dims.iter().map(|(&(p, q), &n)| (p, q, n))
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.pieces().all(|(p, q, n)| self.dim(q, p) == n)
    }

    /// Largest p with a nonzero (p, w-p) piece.
    pub fn max_p(&self) -> Option<i64> {
        self.dims.keys().map(|&(p, _)| p).max()
    }

    /// Smallest p with a nonzero (p, w-p) piece.
    pub fn min_p(&self) -> Option<i64> {
        self.dims.keys().map(|&(p, _)| p).min()
    }

    /// Whether F^p vanishes, i.e. no piece (p', .) with p' >= p.
    pub fn hodge_filtration_vanishes(&self, p: i64) -> bool {
        self.max_p().is_none_or(|m| m < p)
    }

    /// M(k): (p,q) -> (p-k, q-k).
    pub fn tate_twist(&self, k: i64) -> Self {
        PureHodgeStructure {
            weight: self.weight - 2 * k,
            dims: self.dims.iter().map(|(&(p, q), &n)| ((p - k, q - k), n)).collect(),
        }
    }

    /// Dual structure, (p,q) -> (-p,-q).
    pub fn dual(&self) -> Self {
        PureHodgeStructure {
            weight: -self.weight,
            dims: self.dims.iter().map(|(&(p, q), &n)| ((-p, -q), n)).collect(),
        }
    }

    /// Direct sum with a structure of the same weight.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, HodgeError> {
        let mut out = self.clone();
        out.absorb(other)?;
        Ok(out)
    }

    pub(crate) fn absorb(&mut self, other: &Self) -> Result<(), HodgeError> {
        for (p, q, n) in other.pieces() {
            self.add_piece(p, q, n)?;
        }
        Ok(())
    }
}

impl fmt::Display for PureHodgeStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.pieces().map(|(p, q, n)| format!("({p},{q}):{n}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for PureHodgeStructure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Pieces<'a>(&'a PureHodgeStructure);
        impl Serialize for Pieces<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.dims.len()))?;
                for (p, q, n) in self.0.pieces() {
                    seq.serialize_element(&[p, q, n as i64])?;
                }
                seq.end()
            }
        }
        let mut st = s.serialize_struct("PureHodgeStructure", 3)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("dim", &self.total())?;
        st.serialize_field("types", &Pieces(self))?;
        st.end()
    }
}

/// Graded pieces Gr^W of a mixed structure, keyed by weight.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct GradedMixedHodge {
    pieces: BTreeMap<i64, PureHodgeStructure>,
}

impl GradedMixedHodge {
    pub fn single(hs: PureHodgeStructure) -> Self {
        let mut g = GradedMixedHodge::default();
        g.pieces.insert(hs.weight(), hs);
        g
    }

    pub fn insert(&mut self, hs: PureHodgeStructure) {
        match self.pieces.get_mut(&hs.weight()) {
            Some(existing) => existing.absorb(&hs).expect("same weight"),
            None => {
                self.pieces.insert(hs.weight(), hs);
            }
        }
    }

    pub fn gr(&self, w: i64) -> PureHodgeStructure {
        self.pieces.get(&w).cloned().unwrap_or_else(|| PureHodgeStructure::zero(w))
    }

    pub fn pieces(&self) -> impl Iterator<Item = &PureHodgeStructure> {
        self.pieces.values()
    }

    pub fn total(&self) -> u64 {
        self.pieces.values().map(|p| p.total()).sum()
    }
}

/// Hodge numbers of a smooth projective (or RHM) variety of dimension d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeDiamond {
    dim: u32,
    levels: Vec<PureHodgeStructure>,
}

impl HodgeDiamond {
    /// Builds a diamond from (k, p, q, h) entries without validating it.
    pub fn from_entries(
        dim: u32,
        entries: impl IntoIterator<Item = (i64, i64, i64, u64)>,
    ) -> Result<Self, HodgeError> {
        let top = 2 * dim as i64;
        let mut levels: Vec<_> = (0..=top).map(PureHodgeStructure::zero).collect();
        for (k, p, q, n) in entries {
            if !(0..=top).contains(&k) {
                return Err(HodgeError::DegreeOutOfRange { k, top });
            }
            levels[k as usize].add_piece(p, q, n)?;
        }
        Ok(HodgeDiamond { dim, levels })
    }

    /// The diamond of a point.
    pub fn point() -> Self {
        HodgeDiamond { dim: 0, levels: vec![PureHodgeStructure::tate(0)] }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn level(&self, k: i64) -> PureHodgeStructure {
        if (0..=2 * self.dim as i64).contains(&k) {
            self.levels[k as usize].clone()
        } else {
            PureHodgeStructure::zero(k)
        }
    }

    pub fn h(&self, k: i64, p: i64, q: i64) -> u64 {
        if (0..=2 * self.dim as i64).contains(&k) {
            self.levels[k as usize].dim(p, q)
        } else {
            0
        }
    }

    pub fn betti(&self, k: i64) -> u64 {
        self.level(k).total()
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, i64, i64, u64)> + '_ {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(k, hs)| hs.pieces().map(move |(p, q, n)| (k as i64, p, q, n)))
    }

    /// Checks connectedness, symmetry, duality and hard Lefschetz, in that order.
    pub fn validate(self) -> Result<Self, HodgeError> {
        validate_diamond(self)
    }
}

impl Serialize for HodgeDiamond {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("HodgeDiamond", 2)?;
        st.serialize_field("dim", &self.dim)?;
        let hodge: Vec<[i64; 4]> = self.entries().map(|(k, p, q, n)| [k, p, q, n as i64]).collect();
        st.serialize_field("hodge", &hodge)?;
        st.end()
    }
}

pub fn validate_diamond(raw: HodgeDiamond) -> Result<HodgeDiamond, HodgeError> {
    let d = raw.dim as i64;
    let h0 = &raw.levels[0];
    if h0.total() != 1 || h0.dim(0, 0) != 1 {
        let (p, q) = h0.pieces().find(|&(p, q, _)| (p, q) != (0, 0)).map_or((0, 0), |(p, q, _)| (p, q));
        return Err(HodgeError::Disconnected { k: 0, p, q });
    }
    for (k, p, q, n) in raw.entries() {
        if raw.h(k, q, p) != n {
            return Err(HodgeError::Symmetry { k, p, q });
        }
    }
    for (k, p, q, n) in raw.entries() {
        if raw.h(2 * d - k, d - p, d - q) != n {
            return Err(HodgeError::Duality { k, p, q });
        }
    }
    for (k, p, q, n) in raw.entries() {
        if k < d && n > raw.h(k + 2, p + 1, q + 1) {
            return Err(HodgeError::Lefschetz { k, p, q });
        }
    }
    Ok(raw)
}

/// Primitive Hodge numbers in degrees 0..=d.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitiveDecomposition {
    dim: u32,
    prim: Vec<PureHodgeStructure>,
}

impl PrimitiveDecomposition {
    /// Primitive data given directly, degree by degree.
    pub fn from_parts(dim: u32, prim: Vec<PureHodgeStructure>) -> Result<Self, HodgeError> {
        let top = dim as i64;
        if prim.len() != dim as usize + 1 {
            return Err(HodgeError::DegreeOutOfRange { k: prim.len() as i64 - 1, top });
        }
        for (k, hs) in prim.iter().enumerate() {
            let k = k as i64;
            if hs.weight() != k {
                return Err(HodgeError::WeightMismatch { k, p: hs.weight(), q: 0 });
            }
            if let Some((p, q, _)) = hs.pieces().find(|&(p, q, n)| hs.dim(q, p) != n) {
                return Err(HodgeError::Symmetry { k, p, q });
            }
        }
        if prim[0] != PureHodgeStructure::tate(0) {
            return Err(HodgeError::Disconnected { k: 0, p: 0, q: 0 });
        }
        Ok(PrimitiveDecomposition { dim, prim })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// H^k_prim, zero outside [0, d].
    pub fn get(&self, k: i64) -> PureHodgeStructure {
        if (0..=self.dim as i64).contains(&k) {
            self.prim[k as usize].clone()
        } else {
            PureHodgeStructure::zero(k)
        }
    }

    pub fn h(&self, k: i64, p: i64, q: i64) -> u64 {
        if (0..=self.dim as i64).contains(&k) {
            self.prim[k as usize].dim(p, q)
        } else {
            0
        }
    }

    /// h_prim^{p,q}, the degree being p+q.
    pub fn h_pq(&self, p: i64, q: i64) -> u64 {
        self.h(p + q, p, q)
    }

    /// mu^k: smallest p with a nonzero (p, k-p) primitive piece.
    pub fn mu(&self, k: i64) -> Option<i64> {
        self.get(k).min_p()
    }
}

pub fn primitive_decomposition(diamond: &HodgeDiamond) -> Result<PrimitiveDecomposition, HodgeError> {
    let d = diamond.dim as i64;
    let mut prim = Vec::with_capacity(d as usize + 1);
    for k in 0..=d {
        let mut hs = PureHodgeStructure::zero(k);
        for p in 0..=k {
            let q = k - p;
            let v = diamond.h(k, p, q) as i64 - diamond.h(k - 2, p - 1, q - 1) as i64;
            if v < 0 {
                return Err(HodgeError::NegativePrimitive { k, p, q });
            }
            hs.add_piece(p, q, v as u64)?;
        }
        prim.push(hs);
    }
    Ok(PrimitiveDecomposition { dim: diamond.dim, prim })
}

pub fn reconstruct_from_primitive(prim: &PrimitiveDecomposition) -> HodgeDiamond {
    let d = prim.dim as i64;
    let mut levels = Vec::with_capacity(2 * d as usize + 1);
    for k in 0..=2 * d {
        let j = k - d;
        let mut hs = PureHodgeStructure::zero(k);
        if j <= 0 {
            let mut a = 0;
            while k - 2 * a >= 0 {
                hs.absorb(&prim.get(k - 2 * a).tate_twist(-a)).expect("weight");
                a += 1;
            }
        } else {
            let mut a = 0;
            while d - j - 2 * a >= 0 {
                hs.absorb(&prim.get(d - j - 2 * a).tate_twist(-j - a)).expect("weight");
                a += 1;
            }
        }
        levels.push(hs);
    }
    HodgeDiamond { dim: prim.dim, levels }
}

pub fn tate_twist(hs: &PureHodgeStructure, k: i64) -> PureHodgeStructure {
    hs.tate_twist(k)
}

/// One Lefschetz string L^a P^m, sitting in degree m + 2a.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LefschetzSummand {
    pub prim_degree: i64,
    pub power: i64,
}

impl LefschetzSummand {
    pub fn degree(&self) -> i64 {
        self.prim_degree + 2 * self.power
    }
}

/// All summands L^a P^m with P^m nonzero and 0 <= a <= d - m.
pub fn lefschetz_summands(prim: &PrimitiveDecomposition) -> Vec<LefschetzSummand> {
    let d = prim.dim as i64;
    let mut out = Vec::new();
    for m in 0..=d {
        if prim.get(m).is_zero() {
            continue;
        }
        for a in 0..=d - m {
            out.push(LefschetzSummand { prim_degree: m, power: a });
        }
    }
    out
}

/// ker(L^j : H^{d+c-j} -> H^{d+c+j}), closed form.
pub fn lefschetz_power_kernel(prim: &PrimitiveDecomposition, j: u32, c: u32) -> GradedMixedHodge {
    let (d, j, c) = (prim.dim as i64, j as i64, c as i64);
    let mut hs = PureHodgeStructure::zero(d + c - j);
    if c <= j {
        for r in 0..c {
            hs.absorb(&prim.get(d + c - j - 2 * r).tate_twist(-r)).expect("weight");
        }
    } else {
        for r in 0..j {
            hs.absorb(&prim.get(d + j - c - 2 * r).tate_twist(j - c - r)).expect("weight");
        }
    }
    GradedMixedHodge::single(hs)
}

/// coker(L^j : H^{d-c-j} -> H^{d-c+j}), closed form.
pub fn lefschetz_power_cokernel(prim: &PrimitiveDecomposition, j: u32, c: u32) -> GradedMixedHodge {
    let (d, j, c) = (prim.dim as i64, j as i64, c as i64);
    let mut hs = PureHodgeStructure::zero(d - c + j);
    if c > j {
        for r in 0..j {
            hs.absorb(&prim.get(d + j - c - 2 * r).tate_twist(-r)).expect("weight");
        }
    } else {
        for r in 0..c {
            hs.absorb(&prim.get(d + c - j - 2 * r).tate_twist(c - j - r)).expect("weight");
        }
    }
    GradedMixedHodge::single(hs)
}

/// Kernel of L^j by walking the Lefschetz strings: L^a P^m dies under L^j
/// exactly when a + j > d - m.
pub fn lefschetz_kernel_bruteforce(prim: &PrimitiveDecomposition, j: u32, c: u32) -> GradedMixedHodge {
    let (d, j, c) = (prim.dim as i64, j as i64, c as i64);
    let k = d + c - j;
    let mut hs = PureHodgeStructure::zero(k);
    for s in lefschetz_summands(prim) {
        if s.degree() == k && s.power + j > d - s.prim_degree {
            hs.absorb(&prim.get(s.prim_degree).tate_twist(-s.power)).expect("weight");
        }
    }
    GradedMixedHodge::single(hs)
}

/// Cokernel of L^j by walking the strings: L^a P^m is hit iff a >= j.
pub fn lefschetz_cokernel_bruteforce(prim: &PrimitiveDecomposition, j: u32, c: u32) -> GradedMixedHodge {
    let (d, j, c) = (prim.dim as i64, j as i64, c as i64);
    let t = d - c + j;
    let mut hs = PureHodgeStructure::zero(t);
    for s in lefschetz_summands(prim) {
        if s.degree() == t && s.power < j {
            hs.absorb(&prim.get(s.prim_degree).tate_twist(-s.power)).expect("weight");
        }
    }
    GradedMixedHodge::single(hs)
}

pub fn kunneth_product(a: &HodgeDiamond, b: &HodgeDiamond) -> HodgeDiamond {
    let dim = a.dim + b.dim;
    let mut levels: Vec<_> = (0..=2 * dim as i64).map(PureHodgeStructure::zero).collect();
    for (k1, p1, q1, n1) in a.entries() {
        for (k2, p2, q2, n2) in b.entries() {
            levels[(k1 + k2) as usize].add_piece(p1 + p2, q1 + q2, n1 * n2).expect("weight");
        }
    }
    HodgeDiamond { dim, levels }
}
