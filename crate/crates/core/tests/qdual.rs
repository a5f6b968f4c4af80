use ckq_core::coeffring::{DualElement, JSignature};
use ckq_core::qdual::*;
use ckq_core::qgroup::{build_t, relations_for, Verdict};

fn sig(s: &str) -> JSignature {
    s.parse().unwrap()
}

#[test]
fn unit_and_generators() {
    for j in JSignature::enumerate(3) {
        let p = DualPairing::new(&j).unwrap();
        for sign in Sign::BOTH {
            let r = p.r_sigma(sign);
            assert!(p.single(sign, &[]).is_identity());
            for (k, l) in [(1, 1), (1, 2), (2, 1), (3, 3), (1, 3)] {
                let v = p.single(sign, &[(k, l)]);
                for i in 1..=3 {
                    for jj in 1..=3 {
                        assert_eq!(v.get(i - 1, jj - 1), &r.entry(i, k, jj, l), "{j} {sign:?}");
                    }
                }
            }
        }
    }
}

/// `⟨L_{ij}, T_{ab}T_{cd}⟩ = Σ_k R_{(i,a),(k,b)} R_{(k,c),(j,d)}`, straight
/// from the tensor.
#[test]
fn degree_two_from_tensor() {
    for j in [sig("1,1"), sig("iota,1"), sig("iota,iota")] {
        let p = DualPairing::new(&j).unwrap();
        for sign in Sign::BOTH {
            let r = p.r_sigma(sign);
            for m in entry_monomials(3, 2) {
                let ((a, b), (c, d)) = (m[0], m[1]);
                let got = p.single(sign, &m);
                for i in 1..=3 {
                    for jj in 1..=3 {
                        let mut want = DualElement::zero(j.n());
                        for k in 1..=3 {
                            want = &want + &(&r.entry(i, a, k, b) * &r.entry(k, c, jj, d));
                        }
                        assert_eq!(got.get(i - 1, jj - 1), &want, "{j} {m:?} ({i},{jj})");
                    }
                }
            }
        }
    }
}

#[test]
fn left_and_right_iteration_agree_degree_two() {
    let p = DualPairing::new(&JSignature::all_one(3)).unwrap();
    let w = FunctionalWord::new(vec![LSymbol::new(Sign::Plus, 1, 2), LSymbol::new(Sign::Minus, 2, 1)]).unwrap();
    for m in entry_monomials(3, 2) {
        assert_eq!(p.pair_with(&w, &m, Iteration::Left), p.pair_with(&w, &m, Iteration::Right));
    }
}

#[test]
fn off_triangle_symbols_rejected() {
    assert!(FunctionalWord::new(vec![LSymbol::new(Sign::Plus, 2, 1)]).is_err());
    assert!(FunctionalWord::new(vec![LSymbol::new(Sign::Minus, 1, 2)]).is_err());
}

#[test]
fn triangular_tables() {
    for dim in [3, 4] {
        for j in JSignature::enumerate(dim) {
            let p = DualPairing::new(&j).unwrap();
            assert_eq!(verify_triangularity(&p, 2).verdict, Verdict::Pass, "{j}");
        }
    }
}

#[test]
fn pairing_respects_relations() {
    for j in JSignature::enumerate(3) {
        let p = DualPairing::new(&j).unwrap();
        let (_, rel) = relations_for(&j).unwrap();
        let rep = verify_well_defined(&p, &rel).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{j}: {:?}", rep.details);
    }
}

#[test]
fn commutation_and_metric_relations() {
    for j in JSignature::enumerate(3) {
        let p = DualPairing::new(&j).unwrap();
        assert_eq!(verify_ll(&p, 2).verdict, Verdict::Pass, "{j}");
        let rep = verify_l_additional(&p, 2).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{j}: {:?}", rep.details);
    }
}

/// `L C^t L = C^t` read as a plain matrix product with no transpose does
/// not hold as functionals; the transposed forms do.
#[test]
fn literal_metric_product_fails() {
    let p = DualPairing::new(&JSignature::all_one(3)).unwrap();
    assert!(!literal_metric_defects(&p, Sign::Plus, 1).is_empty());
    assert_eq!(verify_l_additional(&p, 1).unwrap().verdict, Verdict::Pass);
}

#[test]
fn hopf_maps_dual() {
    for j in [sig("1,1"), sig("iota,iota"), sig("1,iota")] {
        let p = DualPairing::new(&j).unwrap();
        let rep = verify_l_hopf(&p).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{j}: {:?}", rep.details);
    }
    let d = l_coproduct(LSymbol::new(Sign::Plus, 1, 3), 3);
    assert_eq!(d.len(), 3);
    assert!(l_counit(LSymbol::new(Sign::Minus, 2, 2), 2).is_one());
    assert!(l_counit(LSymbol::new(Sign::Plus, 1, 2), 2).is_zero());
}

#[test]
fn iteration_oracle_degree_three() {
    let p = DualPairing::new(&sig("iota,1")).unwrap();
    let rep = verify_iteration_oracle(&p, 3, 3);
    assert_eq!(rep.verdict, Verdict::Pass);
    assert_eq!(rep.checked, 8 * 729);
}

#[test]
fn formal_pattern() {
    let t = build_t(&sig("iota,iota")).unwrap();
    let pat = formal_l_pattern(&t);
    let e = pat.iter().find(|e| e.sign == Sign::Plus && e.row == 1 && e.col == 2).unwrap();
    assert_eq!(e.t_latex, "j_{1}t_{12}+j_{2}\\tilde{t}_{12}");
    assert_eq!(e.l_latex, "j_{1}^{-1}l_{12}+j_{2}^{-1}\\tilde{l}_{12}");
    assert!(e.pairing_defined);
    assert!(pat.iter().filter(|e| e.row != e.col).all(|e| e.pairing_defined));

    let plain = formal_l_pattern(&build_t(&JSignature::all_one(3)).unwrap());
    assert!(plain.iter().all(|e| !e.pairing_defined));
    let e = plain.iter().find(|e| e.sign == Sign::Minus && e.row == 3 && e.col == 1).unwrap();
    assert_eq!(e.l_latex, "l_{31}");
}
