use hcstem::pairs::{
    cartan_dimensions, check_pair, delta_k_rank, enumerate_antichains, enumerate_substems, max_o_k_dim,
    theta_decomposition_holds, up_closure, wing_invariance_violations, PairSpec, Substem,
};
use hcstem::roots::ReductiveShape;
use hcstem::Algebra;

const TYPES: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "B5", "B6", "C2", "C3", "C4", "C5", "C6", "D4", "D5", "D6",
    "E6", "F4", "G2", "A2 x B2", "c^2 x A3",
];

fn alg(t: &str) -> Algebra {
    Algebra::new(&t.parse::<ReductiveShape>().unwrap()).unwrap()
}

#[test]
fn substems_match_brute_force() {
    for t in TYPES {
        let a = alg(t);
        let n = a.stem().len();
        let mut brute: Vec<Substem> = (0u32..1 << n)
            .filter_map(|mask| {
                let pos: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
                Substem::new(a.stem(), &pos).ok()
            })
            .collect();
        brute.sort();
        let mut ours = enumerate_substems(a.stem());
        ours.sort();
        assert_eq!(ours, brute, "{t}");

        // up-closed sets correspond to their antichains of minimal elements
        let mut closures: Vec<Substem> =
            enumerate_antichains(a.stem()).iter().map(|m| up_closure(a.stem(), m)).collect();
        closures.sort();
        assert_eq!(closures, brute, "{t}");
    }
}

#[test]
fn dimension_equalities_and_wing_invariance_hold_on_every_substem() {
    for t in TYPES {
        let a = alg(t);
        for sub in enumerate_substems(a.stem()) {
            assert!(theta_decomposition_holds(a.stem(), &sub), "{t} {sub}");
            assert_eq!(wing_invariance_violations(&a, &sub), 0, "{t} {sub}");
            for o_k in 0..=max_o_k_dim(&a, &sub) {
                let spec = PairSpec::new(a.shape().clone(), sub.clone(), o_k);
                let e = cartan_dimensions(&a, &spec).unwrap();
                assert!(e.holds(), "{t} {sub} o_k={o_k}: {e:?}");
            }
        }
    }
}

#[test]
fn srank_of_k_is_at_most_twice_its_semisimple_rank() {
    for t in TYPES {
        let a = alg(t);
        for sub in enumerate_substems(a.stem()) {
            let spec = PairSpec::new(a.shape().clone(), sub.clone(), 0);
            let r = check_pair(&a, &spec).unwrap();
            let rank_ks = delta_k_rank(&a, &sub);
            assert!(sub.len() <= rank_ks, "{t} {sub}");
            assert!(r.srank_k <= 2 * rank_ks, "{t} {sub}");
            assert_eq!(r.dim_diff, r.dim_g as i64 - r.dim_k as i64);
        }
    }
}

#[test]
fn extra_torus_is_bounded() {
    let a = alg("c^2 x A3");
    let sub = Substem::full(a.stem());
    let max = max_o_k_dim(&a, &sub);
    assert!(check_pair(&a, &PairSpec::new(a.shape().clone(), sub.clone(), max)).is_ok());
    assert!(check_pair(&a, &PairSpec::new(a.shape().clone(), sub, max + 1)).is_err());
}
