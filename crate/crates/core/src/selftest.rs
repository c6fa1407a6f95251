//! The invariant battery run by `hcstem selftest`.

use crate::algebra::Algebra;
use crate::chevalley::AlgebraElement;
use crate::classify::{audit_type, simple_types_up_to};
use crate::error::Result;
use crate::hcstruct::{verify_cayley, Phases, Structure, VerificationReport};
use crate::pairs::{
    cartan_dimensions, check_pair, enumerate_substems, max_o_k_dim, theta_decomposition_holds,
    wing_invariance_violations, PairSpec,
};
use crate::par;
use crate::roots::{ReductiveShape, SimpleType};
use crate::stem::{brute_force_stems, verify_stem_properties};

/// Cayley transforms are checked on types up to this rank.
const CAYLEY_MAX_RANK: usize = 4;

fn check_basis(alg: &Algebra, r: &mut VerificationReport) {
    let cb = alg.basis();
    let rs = alg.rs();
    let d = cb.dim();

    let triples: Vec<(usize, usize, usize)> =
        (0..d).flat_map(|i| (i + 1..d).flat_map(move |j| (j + 1..d).map(move |k| (i, j, k)))).collect();
    let jacobi = par::map(&triples, |&(i, j, k)| cb.jacobi_holds(i, j, k));
    r.record_all("Jacobi identity", &jacobi);

    // N_{α,β} = ±(p+1) with p the largest integer such that β − pα is a root
    let mut magnitudes = Vec::new();
    for a in 0..rs.len() {
        for b in 0..rs.len() {
            if rs.add(a, b).is_none() {
                continue;
            }
            let mut p = 0;
            let mut cur = b;
            while let Some(next) = rs.sub(cur, a) {
                cur = next;
                p += 1;
            }
            magnitudes.push(cb.n(a, b).abs() == p + 1);
        }
    }
    r.record_all("|N| = p + 1", &magnitudes);

    let basis: Vec<AlgebraElement> = (0..d).map(|k| AlgebraElement::basis(d, k)).collect();
    let taus: Vec<AlgebraElement> = basis.iter().map(|x| cb.tau(x)).collect();
    let tau = par::flat_map_range(d, |i| {
        (i + 1..d).map(|j| cb.tau(&cb.bracket(&basis[i], &basis[j])) == cb.bracket(&taus[i], &taus[j])).collect()
    });
    r.record_all("tau is an automorphism", &tau);

    let mut duality = Vec::new();
    for a in 0..rs.len() {
        for b in 0..rs.len() {
            let v = cb.form_basis(cb.root_index(a), cb.root_index(b));
            duality.push((v != 0) == (b == rs.neg(a)));
        }
    }
    r.record_all("form pairs root spaces dually", &duality);
}

fn check_pairs(alg: &Algebra, r: &mut VerificationReport) -> Result<()> {
    let stem = alg.stem();
    let shape = alg.shape().clone();
    let (mut theta, mut dims, mut wings, mut structures) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut built = 0;
    for sub in enumerate_substems(stem) {
        theta.push(theta_decomposition_holds(stem, &sub));
        wings.push(wing_invariance_violations(alg, &sub) == 0);
        for o_k in 0..=max_o_k_dim(alg, &sub) {
            let spec = PairSpec::new(shape.clone(), sub.clone(), o_k);
            dims.push(cartan_dimensions(alg, &spec)?.holds());
            if check_pair(alg, &spec)?.verdict {
                let s = Structure::build(alg, spec, Phases::trivial(stem.len()))?;
                structures.push(s.verify()?.ok());
                built += 1;
            }
        }
    }
    r.record_all("theta decomposition of substems", &theta);
    r.record_all("cartan dimension equalities", &dims);
    r.record_all("k preserves wings", &wings);
    r.record("hypercomplex structures verify", built, structures.iter().filter(|ok| !**ok).count());
    Ok(())
}

/// Every invariant for one simple type, with names prefixed by the type.
pub fn selftest_type(t: SimpleType) -> Result<VerificationReport> {
    let alg = Algebra::new(&ReductiveShape::simple(t))?;
    let mut r = VerificationReport::default();

    let stem_report = verify_stem_properties(alg.stem(), alg.rs());
    r.record("stem properties", stem_report.checked, stem_report.violations.len());
    if let Some(all) = brute_force_stems(alg.rs()) {
        let mut ours = alg.stem().elements().to_vec();
        ours.sort_unstable();
        r.record_all("stem is the unique partition", &[all == vec![ours]]);
    }
    check_basis(&alg, &mut r);
    r.record_all("audit sign claims", &[audit_type(t)?.holds()]);
    check_pairs(&alg, &mut r)?;
    if t.rank <= CAYLEY_MAX_RANK {
        r.extend(verify_cayley(&alg, &Phases::trivial(alg.stem().len()))?);
    }
    for c in &mut r.checks {
        c.name = format!("{t}: {}", c.name);
    }
    Ok(r)
}

/// The battery over every simple type of rank at most `max_rank`.
pub fn selftest(max_rank: usize) -> Result<VerificationReport> {
    let mut out = VerificationReport::default();
    for r in par::map(&simple_types_up_to(max_rank), |&t| selftest_type(t)) {
        out.extend(r?);
    }
    Ok(out)
}
