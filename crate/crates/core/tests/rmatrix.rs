use ckq_core::coeffring::JSignature;
use ckq_core::rmatrix::*;

#[test]
fn identities_all_signatures() {
    for dim in 3..=5 {
        let r = frt_r(dim).unwrap();
        let c = frt_c(dim).unwrap();
        assert!(verify_ybe(&r) && verify_cubic(&r) && projector_check(&r, &c).unwrap(), "N={dim}");
        for j in JSignature::enumerate(dim) {
            let rj = contract(&r, &j).unwrap();
            let cj = contract_matrix(&c, &j);
            assert!(verify_ybe(&rj), "ybe N={dim} j={j}");
            assert!(verify_cubic(&rj), "cubic N={dim} j={j}");
            assert!(projector_check(&rj, &cj).unwrap(), "projector N={dim} j={j}");
            assert!(rj.is_lower_triangular());
            assert!(rj.matrix.nnz() <= QTensor::sparsity_bound(dim));
        }
    }
}

#[test]
fn checks_reject_perturbations() {
    use ckq_core::coeffring::{DualElement, ScalarExpr};
    use ckq_core::matrix::Matrix;
    for dim in 3..=5 {
        let r = frt_r(dim).unwrap();
        let c = frt_c(dim).unwrap();
        let n = dim - 1;
        // move weight off one diagonal entry of R
        let mut bad = r.clone();
        let x = bad.matrix.get(1, 1);
        bad.matrix.set(1, 1, &x + &DualElement::scalar(n, ScalarExpr::q_pow(1)));
        assert!(!verify_ybe(&bad) || !verify_cubic(&bad), "N={dim}");
        // swap the antidiagonal metric for the identity
        assert!(!projector_check(&r, &Matrix::identity(dim, n)).unwrap(), "N={dim}");
        // a wrong off-diagonal term in the braid relation
        let mut bad = r.clone();
        bad.matrix.set(flat(dim, 2, 1), flat(dim, 1, 2), DualElement::one(n));
        assert!(!verify_ybe(&bad), "N={dim}");
        assert!(projector_check(&r, &c).unwrap());
    }
}

#[test]
fn r_plus_minus_inverse() {
    use ckq_core::matrix::SparseMatrix;
    for dim in 3..=4 {
        let r = frt_r(dim).unwrap();
        let (plus, minus) = r_plus_minus(&r).unwrap();
        let id = SparseMatrix::identity(dim * dim, dim - 1);
        let p = flip(dim, dim - 1);
        assert_eq!(plus.matrix, p.mul(&r.matrix).mul(&p), "N={dim}");
        assert_eq!(minus.matrix.mul(&r.matrix), id, "N={dim}");
    }
}
