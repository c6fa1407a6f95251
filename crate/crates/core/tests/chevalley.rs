use hcstem::chevalley::{AlgebraElement, ChevalleyBasis};
use hcstem::roots::ReductiveShape;
use hcstem::scalar::TowerScalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn basis(t: &str) -> ChevalleyBasis {
    ChevalleyBasis::from_shape(&t.parse::<ReductiveShape>().unwrap()).unwrap()
}

fn triples(d: usize) -> Vec<(usize, usize, usize)> {
    (0..d).flat_map(|i| (i + 1..d).flat_map(move |j| (j + 1..d).map(move |k| (i, j, k)))).collect()
}

#[test]
fn jacobi_exhaustive_small_ranks() {
    for t in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2", "A1 x B2", "c^1 x A2"] {
        let cb = basis(t);
        assert_eq!(cb.jacobi_violations(&triples(cb.dim())), 0, "{t}");
    }
}

#[test]
fn jacobi_sampled_large_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for t in ["A5", "B5", "C6", "D6", "E6", "A7", "D7", "E7", "B8", "E8"] {
        let cb = basis(t);
        let d = cb.dim();
        let sample: Vec<(usize, usize, usize)> =
            (0..4000).map(|_| (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d))).collect();
        assert_eq!(cb.jacobi_violations(&sample), 0, "{t}");
    }
}

#[test]
fn structure_constants_have_magnitude_p_plus_one() {
    for t in ["A3", "B3", "C3", "G2", "F4", "E6"] {
        let cb = basis(t);
        let rs = cb.root_system();
        for a in 0..rs.len() {
            for b in 0..rs.len() {
                if rs.add(a, b).is_none() {
                    assert!(a == rs.neg(b) || cb.n(a, b) == 0, "{t}");
                    continue;
                }
                let p = std::iter::successors(Some(b), |&c| rs.sub(c, a)).count() as i64 - 1;
                assert_eq!(cb.n(a, b).abs(), p + 1, "{t}: N({a}, {b})");
                // antisymmetry and N_{-α,-β} = -N_{α,β}
                assert_eq!(cb.n(b, a), -cb.n(a, b));
                assert_eq!(cb.n(rs.neg(a), rs.neg(b)), -cb.n(a, b));
            }
        }
    }
}

#[test]
fn tau_is_an_involutive_automorphism() {
    for t in ["A2", "B3", "G2", "c^1 x A1"] {
        let cb = basis(t);
        let d = cb.dim();
        let e: Vec<AlgebraElement> = (0..d).map(|k| AlgebraElement::basis(d, k)).collect();
        for x in &e {
            assert_eq!(cb.tau(&cb.tau(x)), *x);
            for y in &e {
                assert_eq!(cb.tau(&cb.bracket(x, y)), cb.bracket(&cb.tau(x), &cb.tau(y)), "{t}");
            }
        }
        // conjugate-linear
        let z = e[d - 1].scale(&TowerScalar::i());
        assert_eq!(cb.tau(&z), cb.tau(&e[d - 1]).scale(&TowerScalar::i().conj()));
    }
}

#[test]
fn killing_form_is_invariant_and_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for t in ["A3", "B2", "G2", "D4"] {
        let cb = basis(t);
        let d = cb.dim();
        for i in 0..d {
            for j in 0..d {
                assert_eq!(cb.killing_trace(i, j), cb.killing_trace(j, i));
            }
        }
        for _ in 0..300 {
            let [x, y, z] = [0; 3].map(|_| AlgebraElement::basis(d, rng.gen_range(0..d)));
            let lhs = cb.invariant_form(&cb.bracket(&x, &y), &z);
            let rhs = cb.invariant_form(&x, &cb.bracket(&y, &z));
            assert_eq!(lhs, rhs, "{t}");
        }
    }
}

/// κ(H_α, H_α) = 4h^∨·(|θ|²/|α|²) with h^∨ the dual Coxeter number.
#[test]
fn killing_form_matches_dual_coxeter_numbers() {
    let dual_coxeter = [
        ("A1", 2),
        ("A4", 5),
        ("B3", 5),
        ("B4", 7),
        ("C3", 4),
        ("C4", 5),
        ("D4", 6),
        ("D5", 8),
        ("E6", 12),
        ("F4", 9),
        ("G2", 4),
    ];
    for (t, h) in dual_coxeter {
        let cb = basis(t);
        let rs = cb.root_system();
        let long = rs.positives().map(|a| rs.norm(a)).max().unwrap();
        for a in rs.positives() {
            let ha = cb.h(a);
            let want = TowerScalar::from_int(4 * h * long / rs.norm(a));
            assert_eq!(cb.invariant_form(&ha, &ha), want, "{t}: root {a}");
        }
    }
}
