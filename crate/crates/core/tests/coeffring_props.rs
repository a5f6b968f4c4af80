use std::collections::BTreeMap;

use ckq_core::coeffring::*;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn qi2() -> impl Strategy<Value = Qi2> {
    (small_rat(), small_rat(), small_rat(), small_rat()).prop_map(|(a, b, c, d)| Qi2::new(a, b, c, d))
}

fn rational_qi2() -> impl Strategy<Value = Qi2> {
    small_rat().prop_map(Qi2::from_rational)
}

/// Laurent polynomial in `s` with `v`-degree at most `vmax`.
fn scalar(vmax: u32) -> impl Strategy<Value = ScalarExpr> {
    prop::collection::vec((-4i32..=4, 0..=vmax, rational_qi2()), 0..4)
        .prop_map(|ts| ScalarExpr::from_terms(ts.into_iter().map(|(s, v, c)| (Mono { s, v }, c))))
}

fn dual(n: usize, vmax: u32) -> impl Strategy<Value = DualElement> {
    prop::collection::vec((0u16..(1 << n), scalar(vmax)), 0..4)
        .prop_map(move |ts| DualElement::from_terms(n, ts))
}

/// Evaluate at numeric `s`, `v`.
fn eval(x: &ScalarExpr, s: &Qi2, v: &Qi2) -> Qi2 {
    let pow = |b: &Qi2, e: i32| {
        let base = if e < 0 { b.inverse().unwrap() } else { b.clone() };
        (0..e.unsigned_abs()).fold(Qi2::one(), |acc, _| &acc * &base)
    };
    x.terms()
        .iter()
        .fold(Qi2::zero(), |acc, (m, c)| &acc + &(&(c * &pow(s, m.s)) * &pow(v, m.v as i32)))
}

/// Subset-convolution product, independent of the library's table.
fn naive_mul(a: &DualElement, b: &DualElement) -> BTreeMap<Mask, ScalarExpr> {
    let mut out: BTreeMap<Mask, ScalarExpr> = BTreeMap::new();
    for (ma, xa) in a.terms() {
        for (mb, xb) in b.terms() {
            if ma & mb != 0 {
                continue;
            }
            let e = out.entry(ma | mb).or_insert_with(ScalarExpr::zero);
            *e = &*e + &(xa * xb);
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

proptest! {
    #[test]
    fn field_axioms(a in qi2(), b in qi2(), c in qi2()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn scalar_ring_matches_evaluation(x in scalar(1), y in scalar(1), s in 1i64..5, v in -3i64..4) {
        let (s, v) = (Qi2::from_int(s), Qi2::from_int(v));
        prop_assert_eq!(eval(&(&x * &y), &s, &v), &eval(&x, &s, &v) * &eval(&y, &s, &v));
        prop_assert_eq!(eval(&(&x + &y), &s, &v), &eval(&x, &s, &v) + &eval(&y, &s, &v));
    }

    #[test]
    fn scalar_exact_division(x in scalar(1), y in scalar(0)) {
        prop_assume!(!y.is_zero());
        let p = &x * &y;
        prop_assert_eq!(p.div_exact(&y), Some(x));
    }

    #[test]
    fn dual_product_is_subset_convolution(a in dual(3, 1), b in dual(3, 1)) {
        let p = &a * &b;
        let expected = naive_mul(&a, &b);
        let got: BTreeMap<Mask, ScalarExpr> = p.terms().iter().cloned().collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn dual_ring_axioms(a in dual(3, 1), b in dual(3, 0), c in dual(3, 0)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn generators_square_to_zero(k in 1usize..=4) {
        let i = DualElement::iota(4, k).unwrap();
        prop_assert!((&i * &i).is_zero());
    }

    #[test]
    fn unit_inverse(a in dual(3, 0), c in qi2(), e in -3i32..=3) {
        prop_assume!(!c.is_zero());
        // unit part c·s^e plus a nilpotent tail
        let tail: Vec<(Mask, ScalarExpr)> = a.terms().iter().filter(|(m, _)| *m != 0).cloned().collect();
        let u = &DualElement::scalar(3, ScalarExpr::monomial(Mono { s: e, v: 0 }, c)) + &DualElement::from_terms(3, tail);
        prop_assert!(u.is_unit());
        prop_assert!((&u * &u.inverse().unwrap()).is_one());
    }

    #[test]
    fn specialization_is_a_homomorphism(a in dual(2, 0), b in dual(2, 0), bits in 0u8..4) {
        let slots = (0..2).map(|r| if bits >> r & 1 == 1 { Slot::Iota } else { Slot::One }).collect();
        let j = JSignature::new(slots).unwrap();
        let lhs = specialize_dual(&(&a * &b), &j);
        let rhs = &specialize_dual(&a, &j) * &specialize_dual(&b, &j);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(specialize_dual(&(&a + &b), &j), &specialize_dual(&a, &j) + &specialize_dual(&b, &j));
    }

    #[test]
    fn classical_limits_are_homomorphisms(a in dual(2, 1), b in dual(2, 1)) {
        let p = &a * &b;
        prop_assert_eq!(p.at_q_one(), &a.at_q_one() * &b.at_q_one());
        prop_assert_eq!(p.at_v_zero(), &a.at_v_zero() * &b.at_v_zero());
    }
}

#[test]
fn q_specializes_to_first_order() {
    let j: JSignature = "iota,iota".parse().unwrap();
    // q^3 -> 1 + 3 ι1ι2 v
    let got = specialize_q(&ScalarExpr::q_pow(3), &j);
    let expected = DualElement::from_terms(
        2,
        [(0, ScalarExpr::one()), (0b11, ScalarExpr::v().scale(&Qi2::from_int(3)))],
    );
    assert_eq!(got, expected);
    let plain: JSignature = "1,1".parse().unwrap();
    assert_eq!(specialize_q(&ScalarExpr::q_pow(3), &plain), DualElement::scalar(2, ScalarExpr::q_pow(3)));
}
