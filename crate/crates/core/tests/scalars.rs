use hcstem::scalar::{rat, TowerScalar};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = TowerScalar> {
    prop::array::uniform4((-20i64..20, 1i64..7)).prop_map(|c| {
        TowerScalar::new(rat(c[0].0, c[0].1), rat(c[1].0, c[1].1), rat(c[2].0, c[2].1), rat(c[3].0, c[3].1))
    })
}

proptest! {
    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if let Some(inv) = a.checked_inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn conjugation_is_a_field_automorphism(a in scalar(), b in scalar()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert!((&a * &a.conj()).is_real());
    }

    #[test]
    fn text_round_trip(a in scalar()) {
        prop_assert_eq!(a.to_string().parse::<TowerScalar>().unwrap(), a);
    }

    #[test]
    fn float_image_is_a_homomorphism(a in scalar(), b in scalar()) {
        let (x, y) = a.to_f64_pair();
        let (u, v) = b.to_f64_pair();
        let (p, q) = (&a * &b).to_f64_pair();
        prop_assert!((p - (x * u - y * v)).abs() < 1e-9 * (1.0 + p.abs()));
        prop_assert!((q - (x * v + y * u)).abs() < 1e-9 * (1.0 + q.abs()));
    }
}

#[test]
fn eighth_roots() {
    let z = TowerScalar::eighth_root(1);
    assert_eq!(z.pow(2), TowerScalar::i());
    assert_eq!(z.pow(8), TowerScalar::one());
    assert!(z.is_unit_modulus());
    assert_eq!(TowerScalar::sqrt2().pow(2), TowerScalar::from_int(2));
}
