//! Acceptance criteria, one pass/fail line each. Runs without the libtest
//! harness so the lines always reach the terminal.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hcstem::classify::{audit_all, audit_type, enumerate_hc_spaces, Proposition};
use hcstem::hcstruct::{verify_cayley, Phases, Structure, VerificationReport, FLOAT_TOLERANCE};
use hcstem::linalg::rank_of;
use hcstem::pairs::{check_pair, PairSpec, Substem};
use hcstem::roots::{Family, ReductiveShape, RootSystem, SimpleType};
use hcstem::scalar::{rat_int, Rational, TowerScalar};
use hcstem::stem::{brute_force_stems, srank, Stem};
use hcstem::Algebra;

/// Wall-clock limits per criterion.
const LIMIT_STEMS: Duration = Duration::from_secs(1);
const LIMIT_UNIQUENESS: Duration = Duration::from_secs(30);
const LIMIT_AUDITS: Duration = Duration::from_secs(10);
const LIMIT_STRUCTURES: Duration = Duration::from_secs(30);

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn shape(text: &str) -> ReductiveShape {
    text.parse().expect("shape")
}

fn stem_of(text: &str) -> (RootSystem, Stem) {
    let rs = RootSystem::build(&shape(text)).expect("root system");
    let st = Stem::compute(&rs).expect("stem");
    (rs, st)
}

/// Number of positive roots of Θ and the rank of its span.
fn theta_shape(rs: &RootSystem, st: &Stem, i: usize) -> (usize, usize) {
    let vecs: Vec<Vec<Rational>> =
        st.theta(i).iter().map(|&a| rs.root(a).coords.iter().map(|&c| rat_int(c)).collect()).collect();
    (st.theta(i).len(), rank_of(&vecs, rs.rank()))
}

fn phases() -> Vec<TowerScalar> {
    vec![TowerScalar::one(), TowerScalar::i(), TowerScalar::eighth_root(1)]
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
}

fn criterion_1() -> Check {
    let start = Instant::now();
    for q in [2usize, 3] {
        let p = 2 * q + 1;
        let (rs, st) = stem_of(&format!("D{p}"));
        let ours: Vec<Vec<i64>> = st.elements().iter().map(|&g| common::d_euclidean(&rs.root(g).coords)).collect();
        let mut expected: Vec<Vec<i64>> = (1..=q).map(|k| common::e_pm(p, 2 * k - 1, 2 * k, 1)).collect();
        expected.extend((1..=q).map(|k| common::e_pm(p, 2 * k - 1, 2 * k, -1)));
        ensure(ours == expected, || format!("D{p} stem {ours:?}"))?;
    }

    let (rs, st) = stem_of("E6");
    let thetas: Vec<(usize, usize)> = (0..st.len()).map(|i| theta_shape(&rs, &st, i)).collect();
    // 𝔢₆, 𝔞₅, 𝔞₃, 𝔞₁ by (|Θ⁺|, rank)
    ensure(thetas == [(36, 6), (15, 5), (6, 3), (1, 1)], || format!("E6 Θ {thetas:?}"))?;
    let chain = (0..4).all(|i| (i + 1..4).all(|j| st.precedes_at(i, j)));
    ensure(chain, || "E6 stem is not a chain".into())?;

    for n in 1..=10usize {
        let (rs, st) = stem_of(&format!("A{n}"));
        ensure(st.len() == n.div_ceil(2), || format!("|Γ(A{n})| = {}", st.len()))?;
        for k in 1..=st.len() {
            let m = n + 2 - 2 * k;
            let got = theta_shape(&rs, &st, k - 1);
            ensure(got == (m * (m + 1) / 2, m), || format!("A{n}: Θ_γ{k} has shape {got:?}, want 𝔞{m}"))?;
        }
    }
    within(LIMIT_STEMS, start)?;
    Ok(format!("D5, D7, E6 and A1..A10 stems match ({:.2?})", start.elapsed()))
}

fn criterion_2() -> Check {
    let mut cases: Vec<(String, usize)> = Vec::new();
    for n in 2..=8 {
        cases.push((format!("B{n}"), 2 * n));
        cases.push((format!("C{n}"), 2 * n));
    }
    for (t, r) in [("D8", 8), ("E7", 7), ("E8", 8), ("F4", 4), ("G2", 2)] {
        cases.push((t.into(), 2 * r));
    }
    for q in [2, 3] {
        cases.push((format!("D{}", 2 * q + 1), 2 * (2 * q)));
    }
    cases.push(("E6".into(), 8));
    for (t, want) in &cases {
        let got = srank(&shape(t)).map_err(|e| e.to_string())?;
        ensure(got == *want, || format!("srank({t}) = {got}, want {want}"))?;
    }
    Ok(format!("{} srank values exact", cases.len()))
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let types = ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "G2"];
    for t in types {
        let (rs, st) = stem_of(t);
        ensure(rs.n_positive() <= 20, || format!("{t} has {} positive roots", rs.n_positive()))?;
        let found = brute_force_stems(&rs).ok_or_else(|| format!("{t}: no brute force"))?;
        let mut ours = st.elements().to_vec();
        ours.sort_unstable();
        ensure(found == vec![ours], || format!("{t}: brute force found {} partitions", found.len()))?;
    }
    within(LIMIT_UNIQUENESS, start)?;
    Ok(format!("{} root systems, unique partition each ({:.2?})", types.len(), start.elapsed()))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let e6 = audit_type(SimpleType::new(Family::E, 6).expect("E6")).map_err(|e| e.to_string())?;
    let def = |m: &[usize]| e6.row(m).map(|r| r.deficiency);
    ensure(def(&[]) == Some(-2), || "E6, 𝓜 = ∅".into())?;
    for k in 1..4 {
        ensure(def(&[k]) == Some(-1), || format!("E6, 𝓜 = {{γ{}}}", k + 1))?;
    }

    for q in [2usize, 3] {
        let p = 2 * q + 1;
        let d = audit_type(SimpleType::new(Family::D, p).expect("D")).map_err(|e| e.to_string())?;
        for row in &d.rows {
            let tops: Vec<usize> = row.antichain.iter().copied().filter(|&i| i < q).collect();
            let a = (row.antichain.len() - tops.len()) as i64;
            let expected = match tops.as_slice() {
                [] => a + 2 - p as i64,
                [top] => 2 + a - 2 * (*top as i64 + 1),
                _ => return Err(format!("D{p}: comparable elements in {:?}", row.antichain)),
            };
            ensure(row.deficiency == expected, || format!("D{p}, 𝓜 = {:?}", row.antichain))?;
        }
        if p == 5 {
            ensure(d.row(&[]).map(|r| r.deficiency) == Some(-3), || "D5, 𝓜 = ∅".into())?;
        }
    }

    let tables = audit_all(8).map_err(|e| e.to_string())?;
    let mut rows = 0;
    for t in &tables {
        ensure(t.holds(), || format!("{} violates its proposition", t.ty))?;
        if t.proposition == Proposition::TypeA {
            for r in &t.rows {
                let want = if r.antichain.is_empty() && t.ty.rank % 2 == 1 { -1 } else { 0 };
                ensure(r.deficiency == want, || format!("{}, 𝓜 = {:?}", t.ty, r.antichain))?;
            }
        }
        rows += t.rows.len();
    }
    within(LIMIT_AUDITS, start)?;
    Ok(format!("{} types, {rows} audit rows ({:.2?})", tables.len(), start.elapsed()))
}

const REQUIRED_STRUCTURE_CHECKS: &[&str] = &[
    "I^2 = -1",
    "J^2 = -1",
    "IJ = -JI",
    "I commutes with tau",
    "J commutes with tau",
    "I eigenspace + bracket-closed",
    "I eigenspace - bracket-closed",
    "J eigenspace + bracket-closed",
    "J eigenspace - bracket-closed",
    "I ad(X) = ad(X) I",
    "J ad(X) = ad(X) J",
    "I Nijenhuis tensor vanishes",
    "J Nijenhuis tensor vanishes",
    "a-matrix support iff alpha+beta in Gamma_p",
];

fn failures(r: &VerificationReport) -> String {
    r.failures().map(|c| format!("{} {}/{}", c.name, c.failed, c.checked)).collect::<Vec<_>>().join("; ")
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let pairs = [("A2", "none"), ("A3", "2"), ("A4", "2"), ("A2 x A2", "none"), ("c^4 x A2", "none")];
    let mut identities = 0;
    for (g, sub) in pairs {
        let sh = shape(g);
        let alg = Algebra::new(&sh).map_err(|e| e.to_string())?;
        let substem = Substem::parse(alg.stem(), sub).map_err(|e| e.to_string())?;
        for rho in phases() {
            let ph = Phases::constant(rho.clone(), alg.stem().len()).map_err(|e| e.to_string())?;
            let s = Structure::build(&alg, PairSpec::new(sh.clone(), substem.clone(), 0), ph)
                .map_err(|e| format!("{g} ⊃ {sub}: {e}"))?;
            let r = s.verify().map_err(|e| e.to_string())?;
            ensure(r.ok(), || format!("{g} ⊃ {sub}, ρ = {rho}: {}", failures(&r)))?;
            for name in REQUIRED_STRUCTURE_CHECKS {
                ensure(r.get(name).is_some(), || format!("{name} was not run"))?;
            }
            identities += r.checks.iter().map(|c| c.checked).sum::<usize>();
        }
    }
    within(LIMIT_STRUCTURES, start)?;
    Ok(format!("5 pairs × 3 phases, {identities} exact identities ({:.2?})", start.elapsed()))
}

fn criterion_6() -> Check {
    let start = Instant::now();
    let types = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2"];
    let mut identities = 0;
    for t in types {
        let alg = Algebra::new(&shape(t)).map_err(|e| e.to_string())?;
        for rho in phases() {
            let ph = Phases::constant(rho.clone(), alg.stem().len()).map_err(|e| e.to_string())?;
            let r = verify_cayley(&alg, &ph).map_err(|e| e.to_string())?;
            ensure(r.ok(), || format!("{t}, ρ = {rho}: {}", failures(&r)))?;
            identities += r.checks.iter().map(|c| c.checked).sum::<usize>();
        }
    }
    // the 𝐜(span{P_γ, E_γ}) image needs a pair; every pair of rank ≤ 4 is of type A
    for (g, sub) in [("A2", "none"), ("A3", "2"), ("A4", "none"), ("A4", "2")] {
        let sh = shape(g);
        let alg = Algebra::new(&sh).map_err(|e| e.to_string())?;
        let substem = Substem::parse(alg.stem(), sub).map_err(|e| e.to_string())?;
        for rho in phases() {
            let ph = Phases::constant(rho.clone(), alg.stem().len()).map_err(|e| e.to_string())?;
            let s =
                Structure::build(&alg, PairSpec::new(sh.clone(), substem.clone(), 0), ph).map_err(|e| e.to_string())?;
            let r = s.verify().map_err(|e| e.to_string())?;
            let c = r.get("c(span{P, E_gamma}) image").ok_or("span check missing")?;
            ensure(c.ok() && c.checked > 0, || format!("{g} ⊃ {sub}, ρ = {rho}: P-span image"))?;
            identities += c.checked;
        }
    }
    Ok(format!(
        "{} types × 3 phases, {identities} exact identities, float within {FLOAT_TOLERANCE:e} ({:.2?})",
        types.len(),
        start.elapsed()
    ))
}

fn criterion_7() -> Check {
    let spaces = enumerate_hc_spaces(32);
    let ours: BTreeSet<Vec<String>> = spaces
        .iter()
        .map(|s| {
            let mut v: Vec<String> = s.factors.iter().map(ToString::to_string).collect();
            v.sort();
            v
        })
        .collect();
    let oracle = common::oracle_spaces(32);
    ensure(ours.len() == spaces.len(), || "duplicate spaces".into())?;
    ensure(ours == oracle, || {
        format!(
            "missing {:?}, extra {:?}",
            oracle.difference(&ours).collect::<Vec<_>>(),
            ours.difference(&oracle).collect::<Vec<_>>()
        )
    })?;
    for s in &spaces {
        let (alg, spec) = s.pair_spec().map_err(|e| e.to_string())?;
        let r = check_pair(&alg, &spec).map_err(|e| e.to_string())?;
        ensure(r.verdict && r.deficiency == 0, || format!("{s}: deficiency {}", r.deficiency))?;
    }
    Ok(format!("{} HC spaces of dimension ≤ 32, all with deficiency 0", spaces.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("stem tables", criterion_1),
        ("srank identities", criterion_2),
        ("partition uniqueness", criterion_3),
        ("deficiency audits", criterion_4),
        ("structure builds", criterion_5),
        ("Cayley transforms", criterion_6),
        ("classification", criterion_7),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                all = false;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
