//! Full reports with a ledger of cross-checks between independent routes.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::catalog::CatalogEntry;
use crate::cone::{
    c_invariant_vanishing_route, generation_levels, invariant_report, local_cohomology_profile,
    pushforward_decomposition, ConeError, ConeIntersectionCohomology, ConeSetup, GenerationLevels,
    InvariantReport, LevelReport, LocalCohomologyProfile, PushforwardReport, Verdict,
};
use crate::determinantal::{
    c_range, codim_and_lcdef, lcdef_gen_pos, local_cohomology_poly, ncci_locus, DeterminantalCase,
    DeterminantalError, GrothendieckClassPoly, NcciLocus,
};
use crate::hodge::{
    lefschetz_kernel_bruteforce, lefschetz_power_cokernel, lefschetz_power_kernel, lefschetz_cokernel_bruteforce,
    primitive_decomposition, HodgeDiamond, HodgeError, PrimitiveDecomposition, PureHodgeStructure,
};
use crate::level::ExtendedLevel;
use crate::lyubeznik::{c_from_table, classical_lyubeznik, hodge_lyubeznik_table, hrh_from_table, LyubeznikTable};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Hodge(#[from] HodgeError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Determinantal(#[from] DeterminantalError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub name: String,
    pub left: String,
    pub right: String,
    pub agree: bool,
}

impl CrossCheck {
    pub fn new(name: impl Into<String>, left: impl ToString, right: impl ToString, agree: bool) -> Self {
        CrossCheck { name: name.into(), left: left.to_string(), right: right.to_string(), agree }
    }

    fn eq<T: PartialEq + ToString>(name: impl Into<String>, left: T, right: T) -> Self {
        let agree = left == right;
        Self::new(name, left.to_string(), right.to_string(), agree)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConeInput {
    pub source: String,
    pub provenance: String,
    pub rank: u32,
    pub setup: ConeSetup,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConeReport {
    pub input: ConeInput,
    pub diamond: HodgeDiamond,
    pub primitive: PrimitiveDecomposition,
    pub profile: LocalCohomologyProfile,
    pub invariants: InvariantReport,
    pub generation_levels: GenerationLevels,
    pub lyubeznik: LyubeznikTable,
    /// [r, s, lambda_{r,s}]
    pub classical_lyubeznik: Vec<[i64; 3]>,
    pub intersection_cohomology: ConeIntersectionCohomology,
    pub pushforward: PushforwardReport,
    pub cross_checks: Vec<CrossCheck>,
}

impl ConeReport {
    pub fn all_agree(&self) -> bool {
        self.cross_checks.iter().all(|c| c.agree)
    }
}

/// Level from the table compared with a possibly saturated level.
fn level_check(name: &str, closed: &LevelReport, other: ExtendedLevel) -> CrossCheck {
    let agree = if closed.saturated { other >= closed.level } else { other == closed.level };
    let shown = if closed.saturated { format!(">={}", closed.level) } else { closed.level.to_string() };
    CrossCheck::new(name, shown, other, agree)
}

pub fn lefschetz_checks(prim: &PrimitiveDecomposition, j_max: u32, c_max: u32) -> Vec<CrossCheck> {
    let mut out = Vec::new();
    for j in 1..=j_max {
        for c in 1..=c_max {
            let a = lefschetz_power_kernel(prim, j, c);
            let b = lefschetz_kernel_bruteforce(prim, j, c);
            if a != b {
                out.push(CrossCheck::new(format!("ker L^{j} (c={c}): closed vs strings"), a.total(), b.total(), false));
            }
            let a = lefschetz_power_cokernel(prim, j, c);
            let b = lefschetz_cokernel_bruteforce(prim, j, c);
            if a != b {
                out.push(CrossCheck::new(format!("coker L^{j} (c={c}): closed vs strings"), a.total(), b.total(), false));
            }
        }
    }
    out
}

pub fn build_cone_report(entry: &CatalogEntry, setup: ConeSetup) -> Result<ConeReport, ReportError> {
    let diamond = entry.diamond.clone();
    if diamond.dim() != setup.d {
        return Err(ConeError::DimensionMismatch { expected: setup.d, got: diamond.dim() }.into());
    }
    let prim = primitive_decomposition(&diamond)?;
    let profile = local_cohomology_profile(&prim, &setup)?;
    let invariants = invariant_report(&prim, &setup)?;
    let gl = generation_levels(&prim, &setup)?;
    let table = hodge_lyubeznik_table(&prim, &setup)?;
    let pushforward = pushforward_decomposition(&diamond, &setup)?;
    let n = setup.n as i64;

    let mut checks = Vec::new();
    let vanishing = c_invariant_vanishing_route(&prim, &setup)?;
    let show = |l: &LevelReport| if l.saturated { format!(">={}", l.level) } else { l.level.to_string() };
    checks.push(CrossCheck::new(
        "c: closed form vs vanishing conditions",
        show(&invariants.c),
        show(&vanishing),
        invariants.c.same_value(&vanishing),
    ));
    let c_table = c_from_table(&table);
    checks.push(level_check("c: closed form vs Hodge-Lyubeznik table", &invariants.c, c_table));
    checks.push(level_check(
        "HRH: closed form vs Hodge-Lyubeznik table",
        &invariants.hrh,
        hrh_from_table(&table, c_table),
    ));
    checks.push(CrossCheck::new("HRH <= c", invariants.hrh.level, invariants.c.level, invariants.hrh.level <= invariants.c.level));
    checks.push(CrossCheck::new("lcdef <= n - 2", invariants.lcdef, n - 2, invariants.lcdef as i64 <= n - 2));
    checks.push(CrossCheck::new(
        "inequality lcdef_gen + 2c + 3 <= codim",
        invariants.inequality.to_string(),
        "not violated",
        invariants.inequality != Verdict::Violated,
    ));
    let table_ok = table.check_invariants();
    checks.push(CrossCheck::new(
        "Hodge-Lyubeznik support/symmetry",
        table_ok.clone().err().unwrap_or_else(|| "ok".into()),
        "ok",
        table_ok.is_ok(),
    ));
    let bad: Vec<i64> = pushforward.identity.iter().filter(|c| !c.holds).map(|c| c.j).collect();
    checks.push(CrossCheck::new(
        "H(total space) = IH + correction",
        if bad.is_empty() { "all degrees".to_string() } else { format!("fails at {bad:?}") },
        "all degrees",
        bad.is_empty(),
    ));
    for r in 1..=setup.n {
        let ker = lefschetz_power_kernel(&prim, r, setup.delta + 1).gr(n - r as i64);
        let shift = n - r as i64;
        let mut from_table = PureHodgeStructure::zero(n - r as i64);
        for (&(rr, p, q), &v) in &table.intersection_entries {
            if rr == r as i64 {
                from_table.add_piece(p + shift, q + shift, v).expect("weight line");
            }
        }
        checks.push(CrossCheck::eq(format!("I-lambda_{r} vs ker L^{r}"), from_table.to_string(), ker.to_string()));
    }
    let lef = lefschetz_checks(&prim, 2 * setup.d + 2, setup.d + 1);
    checks.push(CrossCheck::new(
        "Lefschetz kernels/cokernels: closed vs strings",
        if lef.is_empty() { "agree".to_string() } else { format!("{} mismatches", lef.len()) },
        "agree",
        lef.is_empty(),
    ));
    checks.extend(lef);

    let classical = classical_lyubeznik(&table).into_iter().map(|((r, s), v)| [r, s, v as i64]).collect();
    Ok(ConeReport {
        input: ConeInput {
            source: entry.name.clone(),
            provenance: entry.provenance.clone(),
            rank: setup.rank(),
            setup,
        },
        intersection_cohomology: pushforward.ic.clone(),
        diamond,
        primitive: prim,
        profile,
        invariants,
        generation_levels: gl,
        lyubeznik: table,
        classical_lyubeznik: classical,
        pushforward,
        cross_checks: checks,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DeterminantalRow {
    pub case: DeterminantalCase,
    pub local_cohomology: GrothendieckClassPoly,
    pub rendered: String,
    pub codim: i64,
    pub lcdef: i64,
    pub lcdef_gen_pos: Option<u32>,
    pub ncci_locus: Option<NcciLocus>,
    pub c_range: Option<Vec<ExtendedLevel>>,
    pub cross_checks: Vec<CrossCheck>,
}

pub fn build_determinantal_row(case: DeterminantalCase) -> Result<DeterminantalRow, ReportError> {
    let h = local_cohomology_poly(&case)?;
    let cl = codim_and_lcdef(&case)?;
    let gen = lcdef_gen_pos(&case).ok();
    let locus = ncci_locus(&case).ok();
    let range = c_range(&case).ok();
    let mut checks = vec![CrossCheck::new(
        "coefficients nonnegative",
        h.all_nonnegative(),
        true,
        h.all_nonnegative(),
    )];
    checks.push(CrossCheck::eq("min degree = codimension", cl.codim, case.expected_codim()));
    if case.is_hypersurface() {
        checks.push(CrossCheck::eq("hypersurface lcdef", cl.lcdef, 0));
    }
    if let Some(g) = gen {
        checks.push(CrossCheck::new("lcdef_gen^{>0} <= lcdef", g, cl.lcdef, g as i64 <= cl.lcdef));
    }
    if let Some(l) = locus {
        checks.push(CrossCheck::eq("nCCI empty iff lcdef = 0", l == NcciLocus::Empty, cl.lcdef == 0));
    }
    Ok(DeterminantalRow {
        case,
        rendered: h.to_string(),
        local_cohomology: h,
        codim: cl.codim,
        lcdef: cl.lcdef,
        lcdef_gen_pos: gen,
        ncci_locus: locus,
        c_range: range,
        cross_checks: checks,
    })
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|i| rows.iter().filter_map(|r| r.get(i)).map(|c| c.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(i, c)| format!("{:<w$}", c, w = widths[i])).collect();
        out.push_str("  ");
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or("-".into(), |x| x.to_string())
}

fn show_level(l: &LevelReport) -> String {
    let mut s = if l.saturated { format!(">={}", l.level) } else { l.level.to_string() };
    if l.cci_override {
        s.push_str(" (override: CCI)");
    }
    s
}

pub fn render_cone_text(r: &ConeReport) -> String {
    let s = &r.input.setup;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "cone over {} ({}): d={} delta={} n={} rank={} q={} hrh_base={}",
        r.input.source, r.input.provenance, s.d, s.delta, s.n, r.input.rank, s.embed_codim, s.hrh_base
    );
    let inv = &r.invariants;
    out.push_str("\ninvariants\n");
    out.push_str(&table(&[
        vec!["lcdef".into(), inv.lcdef.to_string()],
        vec!["lcdef_gen>0".into(), inv.lcdef_gen_pos.to_string()],
        vec!["c".into(), show_level(&inv.c)],
        vec!["HRH".into(), show_level(&inv.hrh)],
        vec!["nCCI codim".into(), inv.ncci_codim.map_or("inf".into(), |v| v.to_string())],
        vec!["inequality".into(), inv.inequality.to_string()],
    ]));

    out.push_str("\nlocal cohomology H^{q+j}_X(O)\n");
    let mut rows = vec![vec!["j".into(), "weight".into(), "Hodge types".into(), "gl".into()]];
    let w0 = r.profile.top_weight_h0.weight();
    rows.push(vec!["0 (top)".into(), w0.to_string(), r.profile.top_weight_h0.to_string(), r.generation_levels.top.to_string()]);
    for j in 1..s.n.saturating_sub(1) {
        let piece = r.profile.piece(j);
        rows.push(vec![
            j.to_string(),
            piece.weight().to_string(),
            piece.to_string(),
            r.generation_levels.by_degree.get(&j).map_or("-".into(), |g| g.to_string()),
        ]);
    }
    out.push_str(&table(&rows));

    out.push_str("\nintersection cohomology of X\n");
    let mut rows = vec![vec!["j".into(), "IH^j".into(), "IH^j_c".into()]];
    for j in 0..=2 * s.n as i64 {
        let (a, b) = (r.intersection_cohomology.ih(j), r.intersection_cohomology.ih_c(j));
        if !a.is_zero() || !b.is_zero() {
            rows.push(vec![j.to_string(), a.to_string(), b.to_string()]);
        }
    }
    out.push_str(&table(&rows));

    out.push_str("\nHodge-Lyubeznik numbers (r, s, p, q)\n");
    let mut rows = vec![vec!["r".into(), "s".into(), "p".into(), "q".into(), "value".into()]];
    for (&(a, b, p, q), v) in &r.lyubeznik.entries {
        rows.push(vec![a.to_string(), b.to_string(), p.to_string(), q.to_string(), v.to_string()]);
    }
    for (&(a, p, q), v) in &r.lyubeznik.intersection_entries {
        rows.push(vec![format!("I{a}"), "-".into(), p.to_string(), q.to_string(), v.to_string()]);
    }
    out.push_str(&table(&rows));

    out.push_str("\npushforward skyscrapers\n");
    let mut rows = vec![vec!["shift".into(), "H^k(Z)".into(), "twist".into(), "types".into()]];
    for sk in &r.pushforward.skyscrapers {
        rows.push(vec![sk.shift.to_string(), sk.degree.to_string(), sk.twist.to_string(), sk.structure.to_string()]);
    }
    out.push_str(&table(&rows));

    out.push_str("\ncross-checks\n");
    out.push_str(&render_checks(&r.cross_checks));
    out
}

pub fn render_checks(checks: &[CrossCheck]) -> String {
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| vec![if c.agree { "ok" } else { "DISAGREE" }.into(), c.name.clone(), c.left.clone(), c.right.clone()])
        .collect();
    table(&rows)
}

pub fn render_determinantal_text(rows: &[DeterminantalRow]) -> String {
    let mut t = vec![vec![
        "family".into(),
        "p".into(),
        "H_p(q)".into(),
        "codim".into(),
        "lcdef".into(),
        "lcdef_gen>0".into(),
        "nCCI".into(),
        "c".into(),
        "checks".into(),
    ]];
    for r in rows {
        let range = r.c_range.as_ref().map_or("-".into(), |v| {
            format!("{{{}}}", v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(","))
        });
        let ok = r.cross_checks.iter().all(|c| c.agree);
        t.push(vec![
            r.case.family.to_string(),
            r.case.p.to_string(),
            r.rendered.clone(),
            r.codim.to_string(),
            r.lcdef.to_string(),
            opt(&r.lcdef_gen_pos),
            opt(&r.ncci_locus),
            range,
            if ok { "ok".into() } else { "DISAGREE".into() },
        ]);
    }
    table(&t)
}
