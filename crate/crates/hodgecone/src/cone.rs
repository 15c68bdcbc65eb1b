//! Invariants of a variety X with one isolated singular point whose blow-up
//! has exceptional divisor Z with the Lefschetz package (e.g. the affine cone
//! over a projective Y, or the contraction of the zero section of E^vee).

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::hodge::{HodgeDiamond, PrimitiveDecomposition, PureHodgeStructure};
use crate::level::{ser_opt_inf, ExtendedLevel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("d must be at least 1")]
    ZeroDimension,
    #[error("embedding codimension must be at least 1")]
    ZeroCodim,
    #[error("bundle rank must be at least 1")]
    ZeroRank,
    #[error("hrh_base must be a nonnegative integer or inf")]
    NegativeBase,
    #[error("primitive data has dimension {got}, setup expects {expected}")]
    DimensionMismatch { expected: u32, got: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConeSetup {
    pub d: u32,
    pub delta: u32,
    pub n: u32,
    pub embed_codim: u32,
    pub hrh_base: ExtendedLevel,
}

impl ConeSetup {
    pub fn new(d: u32, delta: u32, embed_codim: u32, hrh_base: ExtendedLevel) -> Result<Self, ConeError> {
        if d == 0 {
            return Err(ConeError::ZeroDimension);
        }
        if embed_codim == 0 {
            return Err(ConeError::ZeroCodim);
        }
        if hrh_base == ExtendedLevel::Neg {
            return Err(ConeError::NegativeBase);
        }
        Ok(ConeSetup { d, delta, n: d + delta + 1, embed_codim, hrh_base })
    }

    /// Contraction of the zero section of a rank-e bundle over Y of dimension d.
    pub fn from_rank(d: u32, e: u32, embed_codim: u32) -> Result<Self, ConeError> {
        if e == 0 {
            return Err(ConeError::ZeroRank);
        }
        Self::new(d, e - 1, embed_codim, ExtendedLevel::Inf)
    }

    pub fn with_hrh_base(mut self, k: ExtendedLevel) -> Result<Self, ConeError> {
        if k == ExtendedLevel::Neg {
            return Err(ConeError::NegativeBase);
        }
        self.hrh_base = k;
        Ok(self)
    }

    pub fn rank(&self) -> u32 {
        self.delta + 1
    }

    fn check(&self, prim: &PrimitiveDecomposition) -> Result<(), ConeError> {
        if prim.dim() != self.d {
            return Err(ConeError::DimensionMismatch { expected: self.d, got: prim.dim() });
        }
        Ok(())
    }
}

/// H^{prim_degree}_prim(Z)(twist), one term of a local cohomology piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileSummand {
    pub r: u32,
    pub prim_degree: i64,
    pub twist: i64,
    pub structure: PureHodgeStructure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalCohomologyProfile {
    pub n: u32,
    pub embed_codim: u32,
    /// j -> nonzero summands of H^{q+j}_X(O), for 1 <= j <= n-2.
    pub summands: BTreeMap<u32, Vec<ProfileSummand>>,
    /// Gr^W_{n+2q+1} H^q_X(O).
    pub top_weight_h0: PureHodgeStructure,
    /// Gr^W_{n+1} H^0 D_X, i.e. the same piece before the ambient twist.
    pub top_weight_dual: PureHodgeStructure,
}

impl LocalCohomologyProfile {
    /// Whole piece at j, pure of weight n + j + 1 + 2q.
    pub fn piece(&self, j: u32) -> PureHodgeStructure {
        let w = (self.n + j + 1 + 2 * self.embed_codim) as i64;
        let mut hs = PureHodgeStructure::zero(w);
        for s in self.summands.get(&j).into_iter().flatten() {
            hs.absorb(&s.structure).expect("pure piece");
        }
        hs
    }

    pub fn is_cci(&self) -> bool {
        self.summands.is_empty()
    }
}

pub fn local_cohomology_profile(
    prim: &PrimitiveDecomposition,
    setup: &ConeSetup,
) -> Result<LocalCohomologyProfile, ConeError> {
    setup.check(prim)?;
    let (d, delta, n, q) = (setup.d as i64, setup.delta as i64, setup.n as i64, setup.embed_codim as i64);
    let mut summands = BTreeMap::new();
    for j in 1..=n - 2 {
        let terms: Vec<(i64, i64, i64)> = if delta <= j {
            (0..=delta).map(|r| (r, d - (j - delta + 2 * r), -q - j - r - 1)).collect()
        } else {
            (0..=j).map(|r| (r, d - (delta - j + 2 * r), -q - delta - r - 1)).collect()
        };
        let list: Vec<ProfileSummand> = terms
            .into_iter()
            .filter(|&(_, k, _)| !prim.get(k).is_zero())
            .map(|(r, k, t)| ProfileSummand {
                r: r as u32,
                prim_degree: k,
                twist: t,
                structure: prim.get(k).tate_twist(t),
            })
            .collect();
        if !list.is_empty() {
            summands.insert(j as u32, list);
        }
    }
    let top = prim.get(d - delta);
    Ok(LocalCohomologyProfile {
        n: setup.n,
        embed_codim: setup.embed_codim,
        summands,
        top_weight_h0: top.tate_twist(-q - delta - 1),
        top_weight_dual: top.tate_twist(-delta - 1),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lcdef {
    pub lcdef: u32,
    pub lcdef_gen_pos: u32,
    #[serde(serialize_with = "ser_opt_inf")]
    pub ncci_codim: Option<u32>,
}

pub fn lcdef_from_profile(profile: &LocalCohomologyProfile) -> Lcdef {
    let lcdef = profile.summands.keys().next_back().copied().unwrap_or(0);
    Lcdef {
        lcdef,
        // the non-CCI locus is at most the vertex
        lcdef_gen_pos: lcdef,
        ncci_codim: if lcdef > 0 { Some(profile.n) } else { None },
    }
}

/// A computed level together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: ExtendedLevel,
    /// Only a lower bound: the tests were exhausted at hrh_base.
    pub saturated: bool,
    /// Set when the answer came from the X-is-CCI shortcut.
    pub cci_override: bool,
}

impl LevelReport {
    fn exact(level: ExtendedLevel) -> Self {
        LevelReport { level, saturated: false, cci_override: false }
    }

    /// Clamp a value that is only certified up to k.
    fn capped(level: ExtendedLevel, k: ExtendedLevel) -> Self {
        match k {
            ExtendedLevel::Finite(_) if level >= k => LevelReport { level: k, saturated: true, cci_override: false },
            _ => Self::exact(level),
        }
    }

    pub fn same_value(&self, other: &Self) -> bool {
        self.level == other.level && self.saturated == other.saturated
    }
}

pub fn c_invariant_closed_form(prim: &PrimitiveDecomposition, setup: &ConeSetup) -> Result<LevelReport, ConeError> {
    let profile = local_cohomology_profile(prim, setup)?;
    if profile.is_cci() {
        return Ok(LevelReport { level: ExtendedLevel::Inf, saturated: false, cci_override: true });
    }
    let (d, delta, k) = (setup.d as i64, setup.delta, setup.hrh_base);
    let report = if delta == 0 {
        let bound = (1..d)
            .filter_map(|m| prim.get(m).max_p().map(|p| m - p - 1))
            .min();
        match bound {
            None => LevelReport::exact(ExtendedLevel::Inf),
            Some(l) => LevelReport::capped(ExtendedLevel::from_i64(l), k),
        }
    } else if delta == 1 && d == 1 {
        if prim.get(1).is_zero() {
            LevelReport::exact(ExtendedLevel::Inf)
        } else {
            LevelReport::exact(ExtendedLevel::Neg)
        }
    } else if (1..=d).all(|m| prim.get(m).hodge_filtration_vanishes(m)) {
        LevelReport::capped(ExtendedLevel::Finite(0), k)
    } else {
        LevelReport::exact(ExtendedLevel::Neg)
    };
    Ok(report)
}

/// The primitive spaces and filtration indices whose vanishing is
/// equivalent to c(X) >= l, as (V, index at l = 0).
fn vanishing_conditions(prim: &PrimitiveDecomposition, setup: &ConeSetup) -> Vec<(PureHodgeStructure, i64)> {
    let (d, delta, n) = (setup.d as i64, setup.delta as i64, setup.n as i64);
    let mut out = Vec::new();
    for j in 1..=n - 2 {
        if delta <= j {
            for r in 0..=delta {
                out.push((prim.get(d - (j - delta + 2 * r)), n - r - j - 1));
            }
        } else {
            for r in 0..=j {
                out.push((prim.get(d - (delta - j + 2 * r)), n - r - delta - 1));
            }
        }
    }
    out
}

pub fn c_invariant_vanishing_route(prim: &PrimitiveDecomposition, setup: &ConeSetup) -> Result<LevelReport, ConeError> {
    setup.check(prim)?;
    let conds: Vec<_> = vanishing_conditions(prim, setup)
        .into_iter()
        .filter(|(v, _)| !v.is_zero())
        .collect();
    if conds.is_empty() {
        return Ok(LevelReport::exact(ExtendedLevel::Inf));
    }
    let holds = |l: i64| conds.iter().all(|(v, idx)| v.hodge_filtration_vanishes(idx - l));
    if !holds(0) {
        return Ok(LevelReport::exact(ExtendedLevel::Neg));
    }
    let limit = match setup.hrh_base {
        ExtendedLevel::Finite(k) => k as i64,
        _ => 2 * setup.n as i64 + 2,
    };
    let mut l = 0;
    while l < limit && holds(l + 1) {
        l += 1;
    }
    if setup.hrh_base.finite().is_some() && l == limit {
        return Ok(LevelReport { level: setup.hrh_base, saturated: true, cci_override: false });
    }
    Ok(LevelReport::exact(ExtendedLevel::Finite(l as u32)))
}

pub fn hrh_invariant(prim: &PrimitiveDecomposition, setup: &ConeSetup, c: &LevelReport) -> Result<LevelReport, ConeError> {
    setup.check(prim)?;
    if setup.delta > 0 {
        let level = if c.level.is_nonnegative() { ExtendedLevel::Finite(0) } else { ExtendedLevel::Neg };
        return Ok(LevelReport::exact(level));
    }
    let d = setup.d as i64;
    let top = match prim.get(d).max_p() {
        None => ExtendedLevel::Inf,
        Some(p) => ExtendedLevel::from_i64(d - p - 1),
    };
    let mut out = if c.level <= top {
        LevelReport { level: c.level, saturated: c.saturated, cci_override: false }
    } else {
        LevelReport::exact(top)
    };
    if let ExtendedLevel::Finite(_) = setup.hrh_base {
        if out.level >= setup.hrh_base {
            out = LevelReport { level: setup.hrh_base, saturated: true, cci_override: false };
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum GenLevel {
    Level(i64),
    #[serde(serialize_with = "ser_zero_module")]
    ZeroModule,
}

fn ser_zero_module<S: serde::Serializer>(s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str("zero-module")
}

impl std::fmt::Display for GenLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GenLevel::Level(v) => write!(f, "{v}"),
            GenLevel::ZeroModule => write!(f, "zero-module"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenerationLevels {
    /// gl of Gr^W_{n+2q+1} H^q_X(O).
    pub top: GenLevel,
    /// gl of H^{q+j}_X(O) for 1 <= j <= n-2.
    pub by_degree: BTreeMap<u32, GenLevel>,
}

pub fn generation_levels(prim: &PrimitiveDecomposition, setup: &ConeSetup) -> Result<GenerationLevels, ConeError> {
    setup.check(prim)?;
    let (d, delta, n) = (setup.d as i64, setup.delta as i64, setup.n as i64);
    let top = match prim.mu(d - delta) {
        Some(mu) => GenLevel::Level(d - mu),
        None => GenLevel::ZeroModule,
    };
    let mut by_degree = BTreeMap::new();
    for j in 1..=n - 2 {
        let (offset, best) = if delta <= j {
            let best = (0..=delta).filter_map(|r| prim.mu(d - (j - delta + 2 * r)).map(|m| m + r)).min();
            (d - (j - delta), best)
        } else {
            let best = (0..=j).filter_map(|r| prim.mu(d - (delta - j + 2 * r)).map(|m| m + r)).min();
            (d, best)
        };
        let gl = best.map_or(GenLevel::ZeroModule, |b| GenLevel::Level(offset - b));
        by_degree.insert(j as u32, gl);
    }
    Ok(GenerationLevels { top, by_degree })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeIntersectionCohomology {
    pub n: u32,
    pub rank: u32,
    /// IH^j for 0 <= j <= 2n.
    pub ordinary: Vec<PureHodgeStructure>,
    /// IH^j_c for 0 <= j <= 2n.
    pub compact: Vec<PureHodgeStructure>,
}

impl ConeIntersectionCohomology {
    pub fn ih(&self, j: i64) -> PureHodgeStructure {
        usize::try_from(j)
            .ok()
            .and_then(|j| self.ordinary.get(j).cloned())
            .unwrap_or_else(|| PureHodgeStructure::zero(j))
    }

    pub fn ih_c(&self, j: i64) -> PureHodgeStructure {
        usize::try_from(j)
            .ok()
            .and_then(|j| self.compact.get(j).cloned())
            .unwrap_or_else(|| PureHodgeStructure::zero(j))
    }
}

/// IH of the affine cone / contraction of a rank-e bundle over Y: the
/// cokernel of L^e on H(Y) below degree dim Y + e, and zero above.
pub fn intersection_cohomology_of_cone(
    prim: &PrimitiveDecomposition,
    diamond: &HodgeDiamond,
    e: u32,
) -> Result<ConeIntersectionCohomology, ConeError> {
    if e == 0 {
        return Err(ConeError::ZeroRank);
    }
    if prim.dim() != diamond.dim() {
        return Err(ConeError::DimensionMismatch { expected: diamond.dim(), got: prim.dim() });
    }
    let (dy, e) = (diamond.dim() as i64, e as i64);
    let n = dy + e;
    let mut ordinary = Vec::new();
    for j in 0..=2 * n {
        let mut hs = PureHodgeStructure::zero(j);
        if j <= dy {
            for a in 0..e {
                hs.absorb(&prim.get(j - 2 * a).tate_twist(-a)).expect("weight");
            }
        } else if j < n {
            for b in 0..n - j {
                hs.absorb(&prim.get(2 * dy - j - 2 * b).tate_twist(dy - j - b)).expect("weight");
            }
        }
        ordinary.push(hs);
    }
    let compact = (0..=2 * n)
        .map(|j| ordinary[(2 * n - j) as usize].dual().tate_twist(-n))
        .collect();
    Ok(ConeIntersectionCohomology { n: n as u32, rank: e as u32, ordinary, compact })
}

/// A skyscraper summand H^{degree}(Z)(twist) placed in cohomological degree `shift`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skyscraper {
    pub shift: i64,
    pub degree: i64,
    pub twist: i64,
    pub structure: PureHodgeStructure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub j: i64,
    pub total: PureHodgeStructure,
    pub ih: PureHodgeStructure,
    pub correction: PureHodgeStructure,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PushforwardReport {
    pub ic: ConeIntersectionCohomology,
    pub skyscrapers: Vec<Skyscraper>,
    /// H^j(X~) = IH^j(X) + correction, checked per Hodge type.
    pub identity: Vec<IdentityCheck>,
}

impl PushforwardReport {
    pub fn identity_holds(&self) -> bool {
        self.identity.iter().all(|c| c.holds)
    }
}

pub fn pushforward_decomposition(diamond: &HodgeDiamond, setup: &ConeSetup) -> Result<PushforwardReport, ConeError> {
    if diamond.dim() != setup.d {
        return Err(ConeError::DimensionMismatch { expected: setup.d, got: diamond.dim() });
    }
    let prim = crate::hodge::primitive_decomposition(diamond).expect("validated diamond");
    let ic = intersection_cohomology_of_cone(&prim, diamond, setup.rank())?;
    let (d, delta, n) = (setup.d as i64, setup.delta as i64, setup.n as i64);
    let span = (d - delta - 1).max(0);
    let mut skyscrapers = Vec::new();
    for shift in -span..=span {
        let degree = n + shift.abs();
        let twist = if shift < 0 { -shift } else { 0 };
        skyscrapers.push(Skyscraper { shift, degree, twist, structure: diamond.level(degree).tate_twist(twist) });
    }
    let mut identity = Vec::new();
    for j in 0..=2 * n {
        let total = diamond.level(j);
        let ih = ic.ih(j);
        let correction = if j >= n { diamond.level(j) } else { diamond.level(2 * n - j).tate_twist(n - j) };
        let holds = ih.direct_sum(&correction).map(|s| s == total).unwrap_or(false);
        identity.push(IdentityCheck { j, total, ih, correction, holds });
    }
    Ok(PushforwardReport { ic, skyscrapers, identity })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Violated,
    NotApplicable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub lcdef: u32,
    pub lcdef_gen_pos: u32,
    pub c: LevelReport,
    pub hrh: LevelReport,
    #[serde(serialize_with = "ser_opt_inf")]
    pub ncci_codim: Option<u32>,
    pub inequality: Verdict,
}

pub fn cci_inequality_report(report: &InvariantReport, _setup: &ConeSetup) -> Verdict {
    let c = match report.c.level {
        ExtendedLevel::Finite(c) => c,
        _ => return Verdict::NotApplicable,
    };
    match report.ncci_codim {
        None => Verdict::NotApplicable,
        Some(codim) if report.lcdef_gen_pos + 2 * c + 3 <= codim => Verdict::Holds,
        Some(_) => Verdict::Violated,
    }
}

pub fn invariant_report(prim: &PrimitiveDecomposition, setup: &ConeSetup) -> Result<InvariantReport, ConeError> {
    let profile = local_cohomology_profile(prim, setup)?;
    let lc = lcdef_from_profile(&profile);
    let c = c_invariant_closed_form(prim, setup)?;
    let hrh = hrh_invariant(prim, setup, &c)?;
    let mut report = InvariantReport {
        lcdef: lc.lcdef,
        lcdef_gen_pos: lc.lcdef_gen_pos,
        c,
        hrh,
        ncci_codim: lc.ncci_codim,
        inequality: Verdict::NotApplicable,
    };
    report.inequality = cci_inequality_report(&report, setup);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::{kunneth_product, primitive_decomposition};
    use proptest::prelude::*;
    use ExtendedLevel::*;

    fn pn(n: u32) -> HodgeDiamond {
        HodgeDiamond::from_entries(n, (0..=n as i64).map(|p| (2 * p, p, p, 1))).unwrap()
    }

    fn curve(g: u64) -> HodgeDiamond {
        HodgeDiamond::from_entries(1, [(0, 0, 0, 1), (1, 1, 0, g), (1, 0, 1, g), (2, 1, 1, 1)]).unwrap()
    }

    fn setup(d: u32, e: u32) -> ConeSetup {
        ConeSetup::from_rank(d, e, 1).unwrap()
    }

    fn prim(x: &HodgeDiamond) -> PrimitiveDecomposition {
        primitive_decomposition(x).unwrap()
    }

    #[test]
    fn profile_examples() {
        let quad = kunneth_product(&pn(1), &pn(1));
        let prof = local_cohomology_profile(&prim(&quad), &setup(2, 1)).unwrap();
        assert!(prof.is_cci());
        assert_eq!(prof.top_weight_h0, PureHodgeStructure::tate(3));

        let e = curve(1);
        let prof = local_cohomology_profile(&prim(&e), &setup(1, 1)).unwrap();
        assert!(prof.summands.is_empty());
        assert_eq!(prof.top_weight_dual, PureHodgeStructure::from_pairs(3, [((2, 1), 1), ((1, 2), 1)]).unwrap());
        assert_eq!(prof.top_weight_h0.weight(), 5);

        let prof = local_cohomology_profile(&prim(&pn(3)), &setup(3, 2)).unwrap();
        assert_eq!(prof.summands.keys().copied().collect::<Vec<_>>(), vec![2]);
        let s = &prof.summands[&2];
        assert_eq!((s.len(), s[0].r, s[0].prim_degree), (1, 1, 0));
        assert_eq!(prof.piece(2).weight(), 5 + 2 + 1 + 2);
        assert_eq!(lcdef_from_profile(&prof), Lcdef { lcdef: 2, lcdef_gen_pos: 2, ncci_codim: Some(5) });

        let p3p1 = kunneth_product(&pn(3), &pn(1));
        let prof = local_cohomology_profile(&prim(&p3p1), &setup(4, 1)).unwrap();
        assert_eq!(prof.summands.keys().copied().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn c_examples() {
        let quad = kunneth_product(&pn(1), &pn(1));
        let cases = [
            (prim(&quad), setup(2, 1), Inf),
            (prim(&curve(1)), setup(1, 1), Inf),
            (prim(&curve(2)), setup(1, 1), Inf),
            (prim(&pn(3)), setup(3, 2), Finite(0)),
            (prim(&pn(1)), setup(1, 2), Inf),
            (prim(&curve(1)), setup(1, 2), Neg),
        ];
        for (p, s, want) in cases {
            assert_eq!(c_invariant_closed_form(&p, &s).unwrap().level, want);
            assert_eq!(c_invariant_vanishing_route(&p, &s).unwrap().level, want);
        }
    }

    #[test]
    fn c_delta_zero_positive_levels() {
        // Y = P^1 x E x E style primitive data with a (1,1)-only middle piece.
        let e = curve(1);
        let abelian = kunneth_product(&e, &e);
        let y = kunneth_product(&abelian, &pn(1));
        let p = prim(&y);
        let s = setup(3, 1);
        let closed = c_invariant_closed_form(&p, &s).unwrap();
        assert_eq!(closed, c_invariant_vanishing_route(&p, &s).unwrap());
        assert_eq!(closed.level, Neg);
    }

    #[test]
    fn saturation_agrees() {
        let quad = kunneth_product(&pn(2), &pn(2));
        let p = prim(&quad);
        for k in 0..4 {
            let s = setup(4, 1).with_hrh_base(Finite(k)).unwrap();
            let a = c_invariant_closed_form(&p, &s).unwrap();
            let b = c_invariant_vanishing_route(&p, &s).unwrap();
            assert!(a.same_value(&b), "k={k}: {a:?} vs {b:?}");
        }
        let s = setup(4, 1);
        assert_eq!(c_invariant_closed_form(&p, &s).unwrap().level, Finite(0));
        let s = setup(4, 1).with_hrh_base(Finite(0)).unwrap();
        assert!(c_invariant_closed_form(&p, &s).unwrap().saturated);
    }

    #[test]
    fn hrh_examples() {
        let quad = kunneth_product(&pn(1), &pn(1));
        let cases = [
            (prim(&quad), setup(2, 1), Finite(0)),
            (prim(&pn(1)), setup(1, 2), Finite(0)),
            (prim(&curve(1)), setup(1, 1), Neg),
            (prim(&pn(2)), setup(2, 1), Inf),
        ];
        for (p, s, want) in cases {
            let c = c_invariant_closed_form(&p, &s).unwrap();
            let h = hrh_invariant(&p, &s, &c).unwrap();
            assert_eq!(h.level, want);
            assert!(h.level <= c.level);
        }
    }

    #[test]
    fn generation_level_examples() {
        let quad = kunneth_product(&pn(1), &pn(1));
        assert_eq!(generation_levels(&prim(&quad), &setup(2, 1)).unwrap().top, GenLevel::Level(1));
        assert_eq!(generation_levels(&prim(&pn(2)), &setup(2, 1)).unwrap().top, GenLevel::ZeroModule);
        let gl = generation_levels(&prim(&pn(3)), &setup(3, 2)).unwrap();
        assert_eq!(gl.by_degree[&2], GenLevel::Level(1));
        assert_eq!(gl.by_degree[&1], GenLevel::ZeroModule);
        assert_eq!(serde_json::to_string(&gl.by_degree[&1]).unwrap(), "\"zero-module\"");
    }

    #[test]
    fn ih_examples() {
        let p2 = pn(2);
        let ih = intersection_cohomology_of_cone(&prim(&p2), &p2, 1).unwrap();
        assert_eq!(ih.ih(0), PureHodgeStructure::tate(0));
        assert!((1..=6).all(|j| ih.ih(j).is_zero()));
        assert_eq!(ih.ih_c(6), PureHodgeStructure::tate(3));

        let e = curve(1);
        let ih = intersection_cohomology_of_cone(&prim(&e), &e, 1).unwrap();
        assert_eq!(ih.ih(1).total(), 2);

        let quad = kunneth_product(&pn(1), &pn(1));
        let a = intersection_cohomology_of_cone(&prim(&quad), &quad, 1).unwrap();
        let b = intersection_cohomology_of_cone(&prim(&pn(1)), &pn(1), 2).unwrap();
        assert_eq!(a.ordinary, b.ordinary);
        assert_eq!(a.ih(2), PureHodgeStructure::tate(1));

        // dim Y < j < dim Y + e with j >= 2e: IH^4 of the rank-2 cone over P^3 vanishes.
        let ih = intersection_cohomology_of_cone(&prim(&pn(3)), &pn(3), 2).unwrap();
        assert!(ih.ih(4).is_zero());
    }

    #[test]
    fn pushforward_examples() {
        let quad = kunneth_product(&pn(1), &pn(1));
        let r = pushforward_decomposition(&quad, &setup(2, 1)).unwrap();
        assert_eq!(r.skyscrapers.len(), 3);
        assert!(r.identity_holds());

        let r = pushforward_decomposition(&pn(2), &setup(2, 1)).unwrap();
        let shifts: Vec<_> = r.skyscrapers.iter().map(|s| (s.shift, s.degree, s.structure.total())).collect();
        assert_eq!(shifts, vec![(-1, 4, 1), (0, 3, 0), (1, 4, 1)]);
        assert_eq!(r.skyscrapers[0].structure, PureHodgeStructure::tate(1));
        assert!(r.identity_holds());

        let r = pushforward_decomposition(&curve(1), &setup(1, 1)).unwrap();
        assert_eq!(r.skyscrapers.len(), 1);
        let r = pushforward_decomposition(&pn(2), &setup(2, 2)).unwrap();
        assert_eq!(r.skyscrapers.len(), 1);
        assert!(r.identity_holds());
    }

    #[test]
    fn inequality_examples() {
        let rep = invariant_report(&prim(&pn(3)), &setup(3, 2)).unwrap();
        assert_eq!(rep.inequality, Verdict::Holds);
        assert_eq!(rep.lcdef_gen_pos + 3, 5);
        let quad = kunneth_product(&pn(1), &pn(1));
        assert_eq!(invariant_report(&prim(&quad), &setup(2, 1)).unwrap().inequality, Verdict::NotApplicable);
        assert_eq!(invariant_report(&prim(&curve(1)), &setup(1, 1)).unwrap().inequality, Verdict::NotApplicable);
    }

    fn arb_prim() -> impl Strategy<Value = PrimitiveDecomposition> {
        (1u32..7).prop_flat_map(|d| {
            proptest::collection::vec(proptest::collection::vec(0u64..2, 8), d as usize).prop_map(move |raw| {
                let mut parts = vec![PureHodgeStructure::tate(0)];
                for (i, row) in raw.iter().enumerate() {
                    let k = i as i64 + 1;
                    let mut hs = PureHodgeStructure::zero(k);
                    for p in (k + 1) / 2..=k {
                        let n = row[p as usize];
                        hs.add_piece(p, k - p, n).unwrap();
                        if 2 * p != k {
                            hs.add_piece(k - p, p, n).unwrap();
                        }
                    }
                    parts.push(hs);
                }
                PrimitiveDecomposition::from_parts(d, parts).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn routes_agree_on_random_data(p in arb_prim(), delta in 0u32..4, q in 1u32..3, k in 0u32..5, inf in any::<bool>()) {
            let base = if inf { Inf } else { Finite(k) };
            let s = ConeSetup::new(p.dim(), delta, q, base).unwrap();
            let a = c_invariant_closed_form(&p, &s).unwrap();
            let b = c_invariant_vanishing_route(&p, &s).unwrap();
            prop_assert!(a.same_value(&b), "{:?} vs {:?}", a, b);
            let h = hrh_invariant(&p, &s, &a).unwrap();
            prop_assert!(h.level <= a.level);
            let rep = invariant_report(&p, &s).unwrap();
            prop_assert!(rep.lcdef + 2 <= s.n);
            prop_assert!(rep.lcdef_gen_pos <= rep.lcdef);
            prop_assert_ne!(rep.inequality, Verdict::Violated);
            let prof = local_cohomology_profile(&p, &s).unwrap();
            for j in prof.summands.keys() {
                let w = (s.n + j + 1 + 2 * q) as i64;
                prop_assert!(prof.summands[j].iter().all(|t| t.structure.weight() == w));
            }
        }

        #[test]
        fn ih_matches_total_space(p in arb_prim(), e in 1u32..4) {
            let y = crate::hodge::reconstruct_from_primitive(&p);
            let s = ConeSetup::from_rank(p.dim(), e, 1).unwrap();
            prop_assert!(pushforward_decomposition(&y, &s).unwrap().identity_holds());
        }
    }

    #[test]
    fn setup_errors() {
        assert_eq!(ConeSetup::new(0, 0, 1, Inf), Err(ConeError::ZeroDimension));
        assert_eq!(ConeSetup::new(1, 0, 0, Inf), Err(ConeError::ZeroCodim));
        assert_eq!(ConeSetup::from_rank(1, 0, 1), Err(ConeError::ZeroRank));
        assert!(local_cohomology_profile(&prim(&pn(2)), &setup(3, 1)).is_err());
    }
}
