use ckq_core::ckclassical::*;
use ckq_core::coeffring::JSignature;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn cayley_elements_are_orthogonal_and_weighted() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for dim in 2..=5 {
        for j in JSignature::enumerate(dim) {
            for _ in 0..5 {
                let a = random_cayley(&j, &mut rng).unwrap();
                assert!(is_j_orthogonal(&a.matrix), "N={dim} j={j}");
                assert!(a.has_weight_pattern(), "N={dim} j={j}");
                let b = to_symplectic(&a);
                assert!(preserves_c0(&b.matrix), "N={dim} j={j}");
            }
        }
    }
}

#[test]
fn structure_constants_close() {
    for dim in 2..=5 {
        for j in JSignature::enumerate(dim) {
            structure_constants(&j).unwrap();
        }
    }
}

#[test]
fn components_reassemble() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for j in JSignature::enumerate(4) {
        let a = random_cayley(&j, &mut rng).unwrap();
        let b = to_symplectic(&a);
        let comps = symplectic_components(&a).unwrap();
        let pattern = weight_pattern_symplectic(&j);
        for i in 0..4 {
            for k in 0..4 {
                let keys: Vec<_> = comps[i][k].keys().copied().collect();
                assert_eq!(keys, pattern[i][k]);
                let mut sum = ckq_core::coeffring::DualElement::zero(j.n());
                for (m, c) in &comps[i][k] {
                    let w = ckq_core::coeffring::DualElement::monomial(j.n(), *m, ckq_core::coeffring::ScalarExpr::one());
                    sum = &sum + &(&w * c);
                }
                assert_eq!(&sum, b.matrix.get(i, k));
            }
        }
    }
}
