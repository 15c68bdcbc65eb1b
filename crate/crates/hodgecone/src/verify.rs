//! Property suites run by `hodgecone verify`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{builtin, projective_space, CatalogEntry};
use crate::cone::{intersection_cohomology_of_cone, invariant_report, ConeSetup, Verdict};
use crate::determinantal::{q_binomial, sweep_cases};
use crate::hodge::{
    kunneth_product, primitive_decomposition, reconstruct_from_primitive, validate_diamond, HodgeDiamond, HodgeError,
    PrimitiveDecomposition, PureHodgeStructure,
};
use crate::lyubeznik::hodge_lyubeznik_table;
use crate::report::{build_cone_report, build_determinantal_row, lefschetz_checks};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Structural,
    Lefschetz,
    Routes,
    Presentation,
    Inequality,
    Determinantal,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Structural,
        Suite::Lefschetz,
        Suite::Routes,
        Suite::Presentation,
        Suite::Inequality,
        Suite::Determinantal,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Structural => "structural",
            Suite::Lefschetz => "lefschetz",
            Suite::Routes => "routes",
            Suite::Presentation => "presentation",
            Suite::Inequality => "inequality",
            Suite::Determinantal => "determinantal",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub checked: usize,
    pub failed: usize,
    /// First failing input, smallest inputs being tried first.
    pub counterexample: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

struct Tally {
    suite: Suite,
    checked: usize,
    failed: usize,
    first: Option<String>,
}

impl Tally {
    fn new(suite: Suite) -> Self {
        Tally { suite, checked: 0, failed: 0, first: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn done(self) -> SuiteResult {
        SuiteResult { suite: self.suite, checked: self.checked, failed: self.failed, counterexample: self.first }
    }
}

/// Random primitive data: symmetric, (0,0) in degree 0.
pub fn random_primitive(rng: &mut impl Rng, max_dim: u32) -> PrimitiveDecomposition {
    let d = rng.random_range(1..=max_dim);
    let mut parts = vec![PureHodgeStructure::tate(0)];
    for k in 1..=d as i64 {
        let mut hs = PureHodgeStructure::zero(k);
        for p in (k + 1) / 2..=k {
            let n = rng.random_range(0..3u64);
            hs.add_piece(p, k - p, n).expect("weight");
            if 2 * p != k {
                hs.add_piece(k - p, p, n).expect("weight");
            }
        }
        parts.push(hs);
    }
    PrimitiveDecomposition::from_parts(d, parts).expect("well formed")
}

/// One diamond per violation class; each must fail with that class.
pub fn injected_violations() -> Vec<(&'static str, HodgeDiamond)> {
    let mk = |d, e: &[(i64, i64, i64, u64)]| HodgeDiamond::from_entries(d, e.iter().copied()).expect("on weight line");
    vec![
        ("duality", mk(2, &[(0, 0, 0, 1), (2, 1, 1, 2)])),
        ("lefschetz", mk(2, &[(0, 0, 0, 1), (4, 2, 2, 1)])),
        ("symmetry", mk(1, &[(0, 0, 0, 1), (1, 1, 0, 1), (2, 1, 1, 1)])),
        ("connectivity", mk(1, &[(0, 0, 0, 2), (2, 1, 1, 2)])),
    ]
}

fn violation_class(e: &HodgeError) -> &'static str {
    match e {
        HodgeError::Duality { .. } => "duality",
        HodgeError::Lefschetz { .. } => "lefschetz",
        HodgeError::Symmetry { .. } => "symmetry",
        HodgeError::Disconnected { .. } => "connectivity",
        _ => "other",
    }
}

fn structural(entries: &[CatalogEntry], bad_fixtures: &[(String, HodgeError)]) -> SuiteResult {
    let mut t = Tally::new(Suite::Structural);
    for (name, err) in bad_fixtures {
        t.check(false, || format!("fixture {name}: {err}"));
    }
    for e in entries {
        let ok = validate_diamond(e.diamond.clone()).is_ok();
        t.check(ok, || format!("{}: fails validation", e.name));
        let round = primitive_decomposition(&e.diamond).map(|p| reconstruct_from_primitive(&p) == e.diamond);
        t.check(round == Ok(true), || format!("{}: primitive roundtrip", e.name));
    }
    for (class, d) in injected_violations() {
        let got = validate_diamond(d).err();
        t.check(got.as_ref().map(violation_class) == Some(class), || format!("injected {class}: got {got:?}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..200 {
        let prim = random_primitive(&mut rng, 6);
        let d = reconstruct_from_primitive(&prim);
        let back = validate_diamond(d).ok().and_then(|d| primitive_decomposition(&d).ok());
        t.check(back.as_ref() == Some(&prim), || format!("random primitive #{i}: {prim:?}"));
    }
    t.done()
}

fn lefschetz(entries: &[CatalogEntry]) -> SuiteResult {
    let mut t = Tally::new(Suite::Lefschetz);
    for e in entries {
        let prim = primitive_decomposition(&e.diamond).expect("validated");
        let d = e.diamond.dim();
        let bad = lefschetz_checks(&prim, 2 * d + 2, d + 1);
        t.checked += 2 * (2 * d as usize + 2) * (d as usize + 1);
        if !bad.is_empty() {
            t.failed += bad.len();
            t.first.get_or_insert_with(|| format!("{}: {}", e.name, bad[0].name));
        }
    }
    t.done()
}

fn sweep_setups(e: &CatalogEntry) -> Vec<ConeSetup> {
    let mut out = Vec::new();
    for delta in 0..=3 {
        for q in 1..=2 {
            out.push(ConeSetup::new(e.diamond.dim(), delta, q, e.hrh_bound).expect("d >= 1"));
        }
    }
    out
}

fn routes(entries: &[CatalogEntry]) -> SuiteResult {
    let mut t = Tally::new(Suite::Routes);
    for e in entries.iter().filter(|e| e.diamond.dim() >= 1) {
        for s in sweep_setups(e) {
            match build_cone_report(e, s) {
                Ok(r) => {
                    for c in &r.cross_checks {
                        t.check(c.agree, || {
                            format!("{} delta={} q={}: {} ({} vs {})", e.name, s.delta, s.embed_codim, c.name, c.left, c.right)
                        });
                    }
                }
                Err(err) => t.check(false, || format!("{} delta={}: {err}", e.name, s.delta)),
            }
        }
    }
    t.done()
}

fn inequality(entries: &[CatalogEntry]) -> SuiteResult {
    let mut t = Tally::new(Suite::Inequality);
    for e in entries.iter().filter(|e| e.diamond.dim() >= 1) {
        let prim = primitive_decomposition(&e.diamond).expect("validated");
        for s in sweep_setups(e) {
            let r = invariant_report(&prim, &s).expect("matching dims");
            t.check(r.inequality != Verdict::Violated, || {
                format!("{} delta={}: {} + 2*{} + 3 > {:?}", e.name, s.delta, r.lcdef_gen_pos, r.c.level, r.ncci_codim)
            });
        }
    }
    t.done()
}

/// (Y, e) against (Y x P^{e-1}, 1) for curves and surfaces.
fn presentation(entries: &[CatalogEntry]) -> SuiteResult {
    let mut t = Tally::new(Suite::Presentation);
    for y in entries.iter().filter(|e| matches!(e.diamond.dim(), 1 | 2) || e.name == "p3") {
        for e in 2..=3u32 {
            let py = primitive_decomposition(&y.diamond).expect("validated");
            let bundle = kunneth_product(&y.diamond, &projective_space(e - 1).expect("e >= 2"));
            let pb = primitive_decomposition(&bundle).expect("validated");
            let s1 = ConeSetup::from_rank(y.diamond.dim(), e, 1).expect("valid");
            let s2 = ConeSetup::from_rank(bundle.dim(), 1, 1).expect("valid");
            let (a, b) = (invariant_report(&py, &s1).expect("dims"), invariant_report(&pb, &s2).expect("dims"));
            let same = a.lcdef == b.lcdef && a.c.level == b.c.level && a.hrh.level == b.hrh.level;
            t.check(same, || format!("{} rank {e}: {a:?} vs {b:?}", y.name));
            let ia = intersection_cohomology_of_cone(&py, &y.diamond, e).expect("dims");
            let ib = intersection_cohomology_of_cone(&pb, &bundle, 1).expect("dims");
            t.check(ia.ordinary == ib.ordinary, || format!("{} rank {e}: IH differs", y.name));
            let la = hodge_lyubeznik_table(&py, &s1).expect("dims");
            let lb = hodge_lyubeznik_table(&pb, &s2).expect("dims");
            t.check(la == lb, || format!("{} rank {e}: Hodge-Lyubeznik tables differ", y.name));
        }
    }
    t.done()
}

fn unimodal(cs: &[i64]) -> bool {
    let peak = cs.iter().enumerate().max_by_key(|&(i, c)| (c, std::cmp::Reverse(i))).map_or(0, |(i, _)| i);
    cs[..=peak].windows(2).all(|w| w[0] <= w[1]) && cs[peak..].windows(2).all(|w| w[0] >= w[1])
}

fn determinantal() -> SuiteResult {
    let mut t = Tally::new(Suite::Determinantal);
    for a in 0..=12i64 {
        for b in 0..=a {
            let qb = q_binomial(a, b).expect("a >= b");
            let cs = qb.dense();
            let top = b * (a - b);
            let sym = (0..=top).all(|e| qb.coeff(e) == qb.coeff(top - e));
            t.check(sym && unimodal(&cs), || format!("q_binomial({a},{b}) = {qb}"));
            t.check(qb == q_binomial(a, a - b).expect("a >= a-b"), || format!("q_binomial({a},{b}) reflection"));
        }
    }
    for case in sweep_cases(6, 9, 6) {
        match build_determinantal_row(case) {
            Ok(row) => {
                for c in &row.cross_checks {
                    t.check(c.agree, || format!("{case:?}: {} ({} vs {})", c.name, c.left, c.right));
                }
            }
            Err(e) => t.check(false, || format!("{case:?}: {e}")),
        }
    }
    t.done()
}

/// Runs the requested suites over the builtin catalog plus extra fixtures.
/// Fixtures failing validation are reported by the structural suite.
pub fn run_suites(suites: &[Suite], fixtures: &[CatalogEntry]) -> Vec<SuiteResult> {
    let mut entries = builtin();
    let mut bad = Vec::new();
    for f in fixtures {
        match validate_diamond(f.diamond.clone()) {
            Ok(_) => entries.push(f.clone()),
            Err(e) => bad.push((f.name.clone(), e)),
        }
    }
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    if !bad.is_empty() && !suites.contains(&Suite::Structural) {
        suites.insert(0, Suite::Structural);
    }
    suites
        .into_iter()
        .map(|s| match s {
            Suite::Structural => structural(&entries, &bad),
            Suite::Lefschetz => lefschetz(&entries),
            Suite::Routes => routes(&entries),
            Suite::Presentation => presentation(&entries),
            Suite::Inequality => inequality(&entries),
            Suite::Determinantal => determinantal(),
        })
        .collect()
}
