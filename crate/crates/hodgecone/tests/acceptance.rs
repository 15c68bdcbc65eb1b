//! Acceptance criteria 1-8, one line each.

use hodgecone::catalog::{self, lookup};
use hodgecone::cone::{
    c_invariant_closed_form, c_invariant_vanishing_route, hrh_invariant, intersection_cohomology_of_cone,
    invariant_report, local_cohomology_profile, ConeSetup, Verdict,
};
use hodgecone::determinantal::{
    codim_and_lcdef, lcdef_gen_pos, local_cohomology_poly, ncci_locus, q_binomial, sweep_cases, DeterminantalCase,
    Family, NcciLocus, QPolynomial,
};
use hodgecone::hodge::{
    lefschetz_cokernel_bruteforce, lefschetz_kernel_bruteforce, lefschetz_power_cokernel, lefschetz_power_kernel,
    primitive_decomposition, reconstruct_from_primitive, validate_diamond, HodgeDiamond, HodgeError,
    PrimitiveDecomposition,
};
use hodgecone::lyubeznik::{c_from_table, hodge_lyubeznik_table, hrh_from_table, smooth_point_table, LyubeznikTable};
use hodgecone::verify::{injected_violations, random_primitive};
use hodgecone::ExtendedLevel::{self, *};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn prim(name: &str) -> PrimitiveDecomposition {
    primitive_decomposition(&lookup(name).unwrap().diamond).unwrap()
}

struct ConeFacts {
    lcdef: u32,
    c: ExtendedLevel,
    hrh: ExtendedLevel,
    ih: Vec<Vec<(i64, i64, u64)>>,
    table: LyubeznikTable,
}

fn cone_facts(name: &str, e: u32) -> ConeFacts {
    let y = lookup(name).unwrap().diamond;
    let p = primitive_decomposition(&y).unwrap();
    let setup = ConeSetup::from_rank(p.dim(), e, 1).unwrap();
    let rep = invariant_report(&p, &setup).unwrap();
    let ih = intersection_cohomology_of_cone(&p, &y, e).unwrap();
    ConeFacts {
        lcdef: rep.lcdef,
        c: rep.c.level,
        hrh: rep.hrh.level,
        ih: (0..setup.n as i64).map(|j| ih.ih(j).pieces().collect()).collect(),
        table: hodge_lyubeznik_table(&p, &setup).unwrap(),
    }
}

fn criterion_1() -> Outcome {
    let presentations = [cone_facts("p1xp1", 1), cone_facts("p1", 2)];
    for f in &presentations {
        ensure(f.lcdef == 0 && f.c == Inf && f.hrh == Finite(0), || {
            format!("lcdef={} c={} HRH={}", f.lcdef, f.c, f.hrh)
        })?;
        let want: Vec<Vec<(i64, i64, u64)>> = vec![vec![(0, 0, 1)], vec![], vec![(1, 1, 1)]];
        ensure(f.ih == want, || format!("IH below dim: {:?}", f.ih))?;
        let lam: Vec<_> = f.table.entries.iter().map(|(&k, &v)| (k, v)).collect();
        ensure(lam == vec![((3, 3, 0, 0), 1)], || format!("lambda: {lam:?}"))?;
        let il: Vec<_> = f.table.intersection_entries.iter().map(|(&k, &v)| (k, v)).collect();
        ensure(il == vec![((1, -1, -1), 1), ((3, 0, 0), 1)], || format!("I-lambda: {il:?}"))?;
    }
    let [a, b] = &presentations;
    ensure(a.ih == b.ih && a.table == b.table, || "presentations differ".into())?;
    Ok("xy-zw: both presentations give lcdef 0, c inf, HRH 0, IH and lambda tables".into())
}

const SWEEP: [&str; 14] = [
    "p1", "p2", "p3", "quadric1", "quadric2", "quadric3", "quadric4", "curve-g0", "curve-g1", "curve-g2",
    "curve-g3", "p1xp1", "p1xe", "gr-2-4",
];

fn criterion_2() -> Outcome {
    let mut n = 0;
    for name in SWEEP {
        let p = prim(name);
        for delta in 0..=2 {
            for q in 1..=2 {
                let setup = ConeSetup::new(p.dim(), delta, q, Inf).unwrap();
                let closed = c_invariant_closed_form(&p, &setup).unwrap();
                let vanishing = c_invariant_vanishing_route(&p, &setup).unwrap();
                let table = hodge_lyubeznik_table(&p, &setup).unwrap();
                let from_table = c_from_table(&table);
                let hrh = hrh_invariant(&p, &setup, &closed).unwrap();
                ensure(closed.level == vanishing.level && closed.level == from_table, || {
                    format!("{name} delta={delta} q={q}: c {} / {} / {}", closed.level, vanishing.level, from_table)
                })?;
                let hrh_t = hrh_from_table(&table, from_table);
                ensure(hrh.level == hrh_t, || format!("{name} delta={delta} q={q}: HRH {} vs {}", hrh.level, hrh_t))?;
                n += 1;
            }
        }
    }
    Ok(format!("c and HRH routes agree on {n} cases"))
}

fn criterion_3() -> Outcome {
    let mut n = 0;
    for entry in catalog::builtin() {
        let p = primitive_decomposition(&entry.diamond).unwrap();
        let d = p.dim();
        for j in 1..=2 * d + 2 {
            for c in 1..=d + 1 {
                let k = lefschetz_power_kernel(&p, j, c);
                let kb = lefschetz_kernel_bruteforce(&p, j, c);
                let ck = lefschetz_power_cokernel(&p, j, c);
                let cb = lefschetz_cokernel_bruteforce(&p, j, c);
                ensure(k == kb && ck == cb, || format!("{} j={j} c={c}", entry.name))?;
                n += 1;
            }
        }
    }
    Ok(format!("closed-form kernels and cokernels match string bookkeeping on {n} (diamond, j, c)"))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for name in SWEEP {
        let p = prim(name);
        for delta in 0..=2 {
            for q in 1..=2 {
                let setup = ConeSetup::new(p.dim(), delta, q, Inf).unwrap();
                let rep = invariant_report(&p, &setup).unwrap();
                if matches!(rep.c.level, Finite(_)) {
                    checked += 1;
                    ensure(rep.inequality != Verdict::Violated, || format!("{name} delta={delta} q={q}"))?;
                }
            }
        }
    }
    let p = prim("p3");
    let setup = ConeSetup::from_rank(3, 2, 1).unwrap();
    let rep = invariant_report(&p, &setup).unwrap();
    let c = rep.c.level.finite().ok_or("P^3 rank 2: c not finite")?;
    let lhs = rep.lcdef_gen_pos + 2 * c + 3;
    ensure(lhs == 5 && setup.n == 5 && rep.inequality == Verdict::Holds, || {
        format!("P^3 rank 2: {} + 2*{} + 3 vs n={}", rep.lcdef_gen_pos, c, setup.n)
    })?;
    Ok(format!("inequality holds on {checked} cases with finite c; P^3 rank 2 attains 2+0+3=5"))
}

fn case(f: Family, p: u32) -> DeterminantalCase {
    DeterminantalCase::new(f, p).unwrap()
}

fn criterion_5() -> Outcome {
    let g = case(Family::Generic { m: 3, n: 3 }, 1);
    let h = local_cohomology_poly(&g).unwrap();
    let d0 = QPolynomial::from_coeffs([(4, 1), (6, 1)]);
    let d1 = QPolynomial::monomial(4, 1);
    let only = h.terms.len() == 2 && h.coeff(0) == d0 && h.coeff(1) == d1;
    ensure(only, || format!("H_1(q) = {h}"))?;
    ensure(codim_and_lcdef(&g).unwrap().lcdef == 2, || "lcdef for 3x3 p=1".into())?;

    let hyper = [
        case(Family::Generic { m: 4, n: 4 }, 3),
        case(Family::Generic { m: 2, n: 2 }, 1),
        case(Family::EvenSkew { n: 6 }, 2),
        case(Family::EvenSkew { n: 8 }, 3),
        case(Family::Symmetric { n: 3 }, 2),
        case(Family::Symmetric { n: 5 }, 4),
    ];
    for c in hyper {
        let cl = codim_and_lcdef(&c).unwrap();
        ensure(cl.lcdef == 0 && ncci_locus(&c).unwrap() == NcciLocus::Empty, || format!("{c:?}: {cl:?}"))?;
    }

    let cases = sweep_cases(6, 9, 6);
    for c in &cases {
        let cl = codim_and_lcdef(c).map_err(|e| format!("{c:?}: {e}"))?;
        ensure(cl.codim == c.expected_codim(), || format!("{c:?}: codim"))?;
        if let Ok(g) = lcdef_gen_pos(c) {
            ensure(g as i64 <= cl.lcdef, || format!("{c:?}: lcdef_gen {g} > lcdef {}", cl.lcdef))?;
        }
    }
    Ok(format!("3x3 rank 1 class, hypersurface branches and {} sweep cases", cases.len()))
}

fn criterion_6() -> Outcome {
    for n in 1..=4u32 {
        let y = catalog::projective_space(n).unwrap();
        let p = primitive_decomposition(&y).unwrap();
        let setup = ConeSetup::from_rank(n, 1, 1).unwrap();
        let rep = invariant_report(&p, &setup).unwrap();
        ensure(rep.c.level == Inf && rep.hrh.level == Inf, || format!("P^{n}: c={} HRH={}", rep.c.level, rep.hrh.level))?;
        let table = hodge_lyubeznik_table(&p, &setup).unwrap();
        ensure(table == smooth_point_table(n + 1), || format!("P^{n}: table {table:?}"))?;
        let ih = intersection_cohomology_of_cone(&p, &y, 1).unwrap();
        let positive = (1..=2 * setup.n as i64).any(|j| !ih.ih(j).is_zero());
        ensure(!positive && ih.ih(0).total() == 1, || format!("P^{n}: IH^(>0) nonzero"))?;
    }
    Ok("cones over P^1..P^4: smooth-point table, c = HRH = inf, IH^(>0) = 0".into())
}

fn criterion_7() -> Outcome {
    let p = prim("elliptic");
    let setup = ConeSetup::from_rank(1, 1, 1).unwrap();
    let rep = invariant_report(&p, &setup).unwrap();
    ensure(rep.c.level == Inf && rep.hrh.level == Neg, || format!("c={} HRH={}", rep.c.level, rep.hrh.level))?;
    let top = local_cohomology_profile(&p, &setup).unwrap().top_weight_dual;
    let types: Vec<_> = top.pieces().collect();
    ensure(top.weight() == 3 && types == vec![(1, 2, 1), (2, 1, 1)], || format!("Gr^W: {top}"))?;
    Ok("elliptic cone: HRH neg, c inf, Gr^W_3 H^0 D_X = (2,1)+(1,2)".into())
}

fn criterion_8() -> Outcome {
    for (class, raw) in injected_violations() {
        let got = validate_diamond(raw);
        let ok = matches!(
            (class, &got),
            ("duality", Err(HodgeError::Duality { .. }))
                | ("lefschetz", Err(HodgeError::Lefschetz { .. }))
                | ("symmetry", Err(HodgeError::Symmetry { .. }))
                | ("connectivity", Err(HodgeError::Disconnected { .. }))
        );
        ensure(ok, || format!("{class}: got {got:?}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..200 {
        let p = random_primitive(&mut rng, 5);
        let y: HodgeDiamond = validate_diamond(reconstruct_from_primitive(&p)).map_err(|e| format!("#{i}: {e}"))?;
        ensure(primitive_decomposition(&y).unwrap() == p, || format!("roundtrip #{i}"))?;
    }
    for a in 0..=12i64 {
        for b in 0..=a {
            let g = q_binomial(a, b).unwrap().dense();
            let rev: Vec<_> = g.iter().rev().copied().collect();
            ensure(g == rev, || format!("[{a} {b}] not symmetric"))?;
            let mid = g.len() / 2;
            let unimodal = g[..=mid].windows(2).all(|w| w[0] <= w[1]) && g[mid..].windows(2).all(|w| w[0] >= w[1]);
            ensure(unimodal, || format!("[{a} {b}] not unimodal"))?;
        }
    }
    Ok("4 violation classes caught, 200 roundtrips, q-binomials a <= 12 symmetric and unimodal".into())
}

fn main() {
    let criteria: [fn() -> Outcome; 8] =
        [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8];
    let mut failed = 0;
    for (i, f) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {}: PASS - {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL - {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
