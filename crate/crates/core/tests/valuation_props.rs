mod common;

use std::cmp::Ordering;

use proptest::prelude::*;
use rand::Rng;

use common::*;
use zrkit::groups::{FilteredGroup, Preorder};
use zrkit::scalar::rat;
use zrkit::valuation::*;

fn bi_invariant(r: &mut rand_chacha::ChaCha8Rng) -> Preorder {
    if r.gen_bool(0.5) {
        matrix(r, 2, 2, true).into()
    } else {
        standard_layered(r).into()
    }
}

fn monomial(group: FilteredGroup, g: &zrkit::groups::GroupElement) -> GroupAlgebraElement {
    GroupAlgebraElement::monomial(group, g.clone(), rat(1)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn valuation_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = bi_invariant(&mut r);
        let group = p.group();
        let (a, b) = (poly(&mut r, group, 4, 3), poly(&mut r, group, 4, 3));
        let (va, vb) = (valuate(&p, &a).unwrap(), valuate(&p, &b).unwrap());
        prop_assert_eq!(valuate(&p, &a.mul(&b).unwrap()).unwrap(), value_mul(&p, &va, &vb).unwrap());
        let sum = valuate(&p, &a.add(&b).unwrap()).unwrap();
        let low = if compare_values(&p, &va, &vb).unwrap().is_le() { &va } else { &vb };
        prop_assert!(compare_values(&p, &sum, low).unwrap().is_ge());
        if compare_values(&p, &va, &vb).unwrap() != Ordering::Equal {
            prop_assert_eq!(&sum, low);
        }
    }

    #[test]
    fn leading_forms_multiply(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = bi_invariant(&mut r);
        let group = p.group();
        let (a, b) = (poly(&mut r, group, 4, 3), poly(&mut r, group, 4, 3));
        let (la, lb) = (leading_form(&p, &a).unwrap(), leading_form(&p, &b).unwrap());
        prop_assert_eq!(leading_form(&p, &a.mul(&b).unwrap()).unwrap(), la.mul(&lb).unwrap());
        // The rest of `a` sits strictly above its value.
        let rest = a.sub(&la).unwrap();
        if !rest.is_zero() {
            prop_assert_eq!(compare_values(&p, &valuate(&p, &rest).unwrap(), &valuate(&p, &a).unwrap()).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn ring_and_ideal(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = bi_invariant(&mut r);
        let group = p.group();
        let a = poly(&mut r, group, 4, 3);
        if in_max_ideal(&p, &a).unwrap() {
            prop_assert!(in_ring(&p, &a).unwrap());
        }
        let Some(t) = positive(&mut r, &p, 3) else { return Ok(()) };
        prop_assert!(in_max_ideal(&p, &monomial(group, &t)).unwrap());
        prop_assert!(!in_ring(&p, &monomial(group, &group.inv(&t).unwrap())).unwrap());
    }

    #[test]
    fn shift_lands_in_the_maximal_ideal(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = bi_invariant(&mut r);
        let group = p.group();
        let Some(h0) = positive(&mut r, &p, 3) else { return Ok(()) };
        if group.tier(&h0).unwrap() != zrkit::groups::Tier::Finite(0) {
            return Ok(());
        }
        let a = poly(&mut r, group, 4, 4);
        let (s, _) = classify_shift(&p, &h0, &a).unwrap();
        let shifted = monomial(group, &s).mul(&a).unwrap();
        prop_assert!(in_max_ideal(&p, &shifted).unwrap());

        // Terms strictly above the value of `a` do not move the shift.
        let Value::Finite(g0) = valuate(&p, &a).unwrap() else { unreachable!() };
        let mut noisy = a.clone();
        for _ in 0..10 {
            let Some(t) = positive(&mut r, &p, 3) else { continue };
            let e = group.mul(&g0, &t).unwrap();
            noisy = noisy.add(&monomial(group, &e)).unwrap();
        }
        prop_assert_eq!(valuate(&p, &noisy).unwrap(), valuate(&p, &a).unwrap());
        prop_assert_eq!(standard_shift(&p, &h0, &noisy).unwrap(), s);
    }
}
