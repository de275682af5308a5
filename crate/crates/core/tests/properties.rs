use std::collections::BTreeMap;
use std::sync::LazyLock;

use proptest::prelude::*;
use thetagw_core::{
    compute_up_to, default_slab_table, mul, InvariantTable, LinForm, Rational, ThetaElement, TruncSeries, UnknownId,
};

static TABLE: LazyLock<InvariantTable> = LazyLock::new(|| compute_up_to(2, &default_slab_table()).unwrap());

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn series(bound: usize) -> impl Strategy<Value = TruncSeries<Rational>> {
    prop::collection::vec(rational(), bound + 1).prop_map(move |cs| TruncSeries::from_coeffs(cs, bound))
}

fn unknown() -> impl Strategy<Value = UnknownId> {
    (1i64..9, 1i64..9, any::<bool>()).prop_map(|(a, b, two)| {
        if two {
            UnknownId::two_point(a, b)
        } else {
            UnknownId::three_point_r0(a, b)
        }
    })
}

fn linform() -> impl Strategy<Value = LinForm> {
    (rational(), prop::collection::vec((unknown(), rational()), 0..4)).prop_map(|(c, terms)| {
        let mut f = LinForm::constant(c);
        for (id, k) in terms {
            f.add_term(id, &k);
        }
        f
    })
}

fn element(bound: usize) -> impl Strategy<Value = ThetaElement<Rational>> {
    prop::collection::vec((0u32..7, 0usize..=bound, rational()), 0..5).prop_map(move |terms| {
        let mut x = ThetaElement::zero(bound);
        for (p, k, c) in terms {
            x.add_monomial(p, k, &c);
        }
        x
    })
}

proptest! {
    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!((&a + &b) + c.clone(), &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn series_product_commutes_and_associates(
        (a, b, c) in (0usize..5).prop_flat_map(|n| (series(n), series(n), series(n)))
    ) {
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        prop_assert_eq!(
            a.try_mul(&b).unwrap().try_mul(&c).unwrap(),
            a.try_mul(&b.try_mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn linform_substitution_commutes_with_product(
        f in linform(),
        k in rational(),
        vals in prop::collection::vec(rational(), 16),
    ) {
        let g = LinForm::constant(k.clone());
        let ids: Vec<UnknownId> = f.terms().keys().copied().collect();
        let assignment: BTreeMap<_, _> = ids.iter().copied().zip(vals.iter().cloned()).collect();
        let product = f.try_mul(&g).unwrap();
        prop_assert_eq!(
            product.evaluate(&assignment).unwrap(),
            &f.evaluate(&assignment).unwrap() * &k
        );
        let product = g.try_mul(&f).unwrap();
        prop_assert_eq!(
            product.evaluate(&assignment).unwrap(),
            &k * &f.evaluate(&assignment).unwrap()
        );
    }

    #[test]
    fn normalization_is_scale_invariant(f in linform(), k in rational()) {
        prop_assume!(!k.is_zero());
        prop_assert_eq!(f.scale(&k).normalized(), f.normalized());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn theta_zero_is_identity(x in element(2)) {
        let table = &*TABLE;
        let one = ThetaElement::theta(0, 2);
        prop_assert_eq!(mul(&one, &x, table).unwrap(), x.clone());
        prop_assert_eq!(mul(&x, &one, table).unwrap(), x);
    }

    #[test]
    fn ring_is_commutative_and_associative(x in element(2), y in element(2), z in element(2)) {
        let table = &*TABLE;
        let xy = mul(&x, &y, table).unwrap();
        prop_assert_eq!(&xy, &mul(&y, &x, table).unwrap());
        prop_assert_eq!(
            mul(&xy, &z, table).unwrap(),
            mul(&x, &mul(&y, &z, table).unwrap(), table).unwrap()
        );
    }
}
