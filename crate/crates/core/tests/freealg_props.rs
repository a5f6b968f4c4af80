use ckq_core::coeffring::{DualElement, JSignature, Mono, Qi2, ScalarExpr};
use ckq_core::freealg::*;
use ckq_core::qgroup::{canonicalize, relations_for};
use proptest::prelude::*;

const N: usize = 2;

fn symbol() -> impl Strategy<Value = GenSymbol> {
    (1usize..=3, 1usize..=3, 0u16..4, 0u8..2).prop_map(|(r, c, tag, copy)| GenSymbol::t(r, c, tag).with_copy(copy))
}

fn coeff() -> impl Strategy<Value = DualElement> {
    prop::collection::vec((0u16..4, -2i32..=2, -3i64..=3), 1..3).prop_map(|ts| {
        DualElement::from_terms(
            N,
            ts.into_iter().map(|(m, s, c)| (m, ScalarExpr::monomial(Mono { s, v: 0 }, Qi2::from_int(c)))),
        )
    })
}

fn poly() -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((coeff(), prop::collection::vec(symbol(), 0..3)), 0..4).prop_map(|ts| {
        let mut p = NCPoly::zero(N);
        for (c, w) in ts {
            p.add_term(&c, Word(w).normalized());
        }
        p
    })
}

fn unit() -> impl Strategy<Value = DualElement> {
    (coeff(), 1i64..=5, -3i32..=3).prop_map(|(tail, c, e)| {
        let nil: Vec<_> = tail.terms().iter().filter(|(m, _)| *m != 0).cloned().collect();
        &DualElement::scalar(N, ScalarExpr::monomial(Mono { s: e, v: 0 }, Qi2::from_int(c)))
            + &DualElement::from_terms(N, nil)
    })
}

proptest! {
    #[test]
    fn multiplication_is_associative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn multiplication_distributes(a in poly(), b in poly(), c in poly()) {
        let mut bc = b.clone();
        bc.add_assign(&c);
        let mut rhs = a.mul(&b);
        rhs.add_assign(&a.mul(&c));
        prop_assert_eq!(a.mul(&bc), rhs);
    }

    #[test]
    fn copies_commute(a in symbol(), b in symbol()) {
        let (x, y) = (NCPoly::symbol(N, a), NCPoly::symbol(N, b));
        if a.copy != b.copy {
            prop_assert_eq!(x.mul(&y), y.mul(&x));
        }
        for (w, _) in x.mul(&y).terms() {
            prop_assert!(w.symbols().windows(2).all(|p| p[0].copy <= p[1].copy));
        }
    }

    #[test]
    fn canonical_form_ignores_units(
        rest in poly(),
        lead in unit(),
        w in prop::collection::vec(symbol(), 3),
        u in unit(),
    ) {
        // the leading word carries a coefficient with unit numeric part
        let mut p = rest;
        p.add_term(&lead, Word(w).normalized());
        let scaled = p.scale(&u);
        prop_assert_eq!(canonicalize(&scaled), canonicalize(&p));
    }

    #[test]
    fn canonical_form_is_idempotent(p in poly()) {
        if let Some(c) = canonicalize(&p) {
            prop_assert_eq!(canonicalize(&c), Some(c));
        }
    }

    #[test]
    fn relations_are_their_own_canonical_forms(idx in 0usize..66, u in unit(), bits in 0u8..4) {
        let slots: Vec<_> = (0..2).map(|r| if bits >> r & 1 == 1 { "iota" } else { "1" }).collect();
        let j: JSignature = slots.join(",").parse().unwrap();
        let (_, rel) = relations_for(&j).unwrap();
        let r = &rel.relations[idx % rel.len()].poly;
        prop_assert_eq!(canonicalize(r), Some(r.clone()));
        prop_assert_eq!(canonicalize(&r.scale(&u)), Some(r.clone()));
    }
}

#[test]
fn relations_have_certificates() {
    for j in JSignature::enumerate(3) {
        let (_, rel) = relations_for(&j).unwrap();
        let polys = rel.polys();
        for p in polys.iter().take(10) {
            let cert = membership_certificate(p, &polys, DEFAULT_STEP_CAP).unwrap();
            assert!(cert.verify(p, &polys).unwrap());
        }
    }
}

#[test]
fn certificate_rejects_wrong_target() {
    let j = JSignature::all_one(3);
    let (t, rel) = relations_for(&j).unwrap();
    let polys = rel.polys();
    let cert = membership_certificate(&polys[0], &polys, DEFAULT_STEP_CAP).unwrap();
    assert!(!cert.verify(&polys[1], &polys).unwrap());
    // a single generator is not in the ideal
    assert!(membership_certificate(&t.entry(1, 1, 0), &polys, DEFAULT_STEP_CAP).is_err());
}

#[test]
fn step_cap_is_reported() {
    let j = JSignature::all_one(3);
    let (t, rel) = relations_for(&j).unwrap();
    let rules = RuleSet::interreduced(&rel.polys());
    let p = t.entry(1, 3, 0).mul(&t.entry(1, 1, 0)).mul(&t.entry(2, 1, 0));
    assert!(matches!(reduce(&p, &rules, 0), Err(ckq_core::Error::StepCapExceeded { cap: 0 })));
}
