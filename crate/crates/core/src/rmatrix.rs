//! The orthogonal R-matrix `R_q`, the metric `C`, their contractions
//! `R_v(j)`, `C(j)`, and the identity checks tying them together.
//!
//! Tensor indices `(i, k)` (1-based) flatten to `(i-1)·N + (k-1)` (0-based).

use crate::ckclassical::conj_index;
use crate::coeffring::{Deformation, DualElement, JSignature, ScalarExpr};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, SparseMatrix};

/// Twice `ρ_i`: `N - 2i` for `i < i'`, 0 for the middle index, and
/// `-2ρ_{i'}` for `i > i'`.
pub fn rho2(dim: usize, i: usize) -> i32 {
    let ip = conj_index(dim, i);
    match i.cmp(&ip) {
        std::cmp::Ordering::Less => dim as i32 - 2 * i as i32,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => -(dim as i32 - 2 * ip as i32),
    }
}

/// Flattened 0-based index of the 1-based pair `(i, k)`.
pub fn flat(dim: usize, i: usize, k: usize) -> usize {
    (i - 1) * dim + (k - 1)
}

/// An `N² × N²` tensor over `D_{N-1}` together with the realization of `q`
/// used to build it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTensor {
    pub dim: usize,
    pub deformation: Deformation,
    pub matrix: SparseMatrix,
}

impl QTensor {
    pub fn n(&self) -> usize {
        self.dim - 1
    }

    /// Entry at `((i, k), (j, l))`, 1-based.
    pub fn entry(&self, i: usize, k: usize, j: usize, l: usize) -> DualElement {
        self.matrix.get(flat(self.dim, i, k), flat(self.dim, j, l))
    }

    fn with(&self, matrix: SparseMatrix) -> QTensor {
        QTensor { dim: self.dim, deformation: self.deformation.clone(), matrix }
    }

    /// `q^{e/2}` in this tensor's realization.
    pub fn q_half(&self, e: i32) -> DualElement {
        self.deformation.q_half_pow(self.n(), e)
    }

    pub fn at_q_one(&self) -> QTensor {
        QTensor {
            dim: self.dim,
            deformation: Deformation::Classical,
            matrix: self.matrix.map(|x| x.at_q_one()),
        }
    }

    /// Set `v = 0` in a contracted tensor.
    pub fn at_v_zero(&self) -> QTensor {
        QTensor {
            dim: self.dim,
            deformation: Deformation::Classical,
            matrix: self.matrix.map(|x| x.at_v_zero()),
        }
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.matrix.is_lower_triangular()
    }

    /// Upper bound on the number of nonzero entries of the orthogonal `R`.
    pub fn sparsity_bound(dim: usize) -> usize {
        dim * dim + 2 * dim * (dim - 1)
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 3 {
        return Err(Error::Unsupported(format!("orthogonal R-matrix needs N >= 3, got {dim}")));
    }
    if dim - 1 > crate::coeffring::MAX_GENERATORS {
        return Err(Error::Unsupported(format!("N = {dim} is too large")));
    }
    Ok(())
}

/// The standard orthogonal `R_q` with formal `q`:
/// diagonal `q` (i = j ≠ i'), `1` (i ≠ j, j ≠ i', and the middle index with
/// itself), `q⁻¹` (j = i' ≠ i), plus `λ Σ_{i>j} e_ij⊗e_ji` and
/// `-λ Σ_{i>j} q^{ρ_i - ρ_j} e_ij⊗e_{i'j'}`.
///
/// No overall scalar is applied. Rescaling `R`, or flipping the sign of `ρ`
/// together with `C`, leaves every identity checked here intact.
pub fn frt_r(dim: usize) -> Result<QTensor> {
    check_dim(dim)?;
    let n = dim - 1;
    let nn = dim * dim;
    let s = |x: ScalarExpr| DualElement::scalar(n, x);
    let mut m = SparseMatrix::zeros(nn, nn, n);
    for i in 1..=dim {
        let ip = conj_index(dim, i);
        for j in 1..=dim {
            let d = if i == j && i != ip {
                ScalarExpr::q_pow(1)
            } else if j == ip && i != ip {
                ScalarExpr::q_pow(-1)
            } else {
                ScalarExpr::one()
            };
            let r = flat(dim, i, j);
            m.add_at(r, r, &s(d));
        }
    }
    let lam = ScalarExpr::lambda();
    for i in 1..=dim {
        for j in 1..i {
            m.add_at(flat(dim, i, j), flat(dim, j, i), &s(lam.clone()));
            let (ip, jp) = (conj_index(dim, i), conj_index(dim, j));
            let w = &lam * &ScalarExpr::s_pow(rho2(dim, i) - rho2(dim, j));
            m.add_at(flat(dim, i, ip), flat(dim, j, jp), &s(-&w));
        }
    }
    Ok(QTensor { dim, deformation: Deformation::Formal, matrix: m })
}

/// The metric `C = Σ_i q^{-ρ_i} e_{i,i'}` with formal `q`. Since
/// `ρ_{i'} = -ρ_i`, it is its own inverse.
pub fn frt_c(dim: usize) -> Result<Matrix> {
    check_dim(dim)?;
    let n = dim - 1;
    let mut c = Matrix::zeros(dim, dim, n);
    for i in 1..=dim {
        let ip = conj_index(dim, i);
        c.set(i - 1, ip - 1, DualElement::scalar(n, ScalarExpr::s_pow(-rho2(dim, i))));
    }
    Ok(c)
}

/// `R_v(j) = R_q(z → Jv)`. Unchanged when every slot is 1.
pub fn contract(r: &QTensor, j: &JSignature) -> Result<QTensor> {
    if r.n() != j.n() {
        return Err(Error::Dimension(format!("N={} tensor, signature {j}", r.dim)));
    }
    let deformation = Deformation::for_signature(j);
    Ok(QTensor { dim: r.dim, matrix: r.matrix.map(|x| deformation.apply(x)), deformation })
}

/// `C(j) = C(z → Jv)`.
pub fn contract_matrix(c: &Matrix, j: &JSignature) -> Matrix {
    let d = Deformation::for_signature(j);
    c.map(|x| d.apply(x))
}

/// `R_v(j)` and `C(j)` for a signature.
pub fn r_and_c(j: &JSignature) -> Result<(QTensor, Matrix)> {
    let dim = j.dim();
    Ok((contract(&frt_r(dim)?, j)?, contract_matrix(&frt_c(dim)?, j)))
}

/// The flip `P(u ⊗ w) = w ⊗ u` on `N²`.
pub fn flip(dim: usize, n: usize) -> SparseMatrix {
    let mut p = SparseMatrix::zeros(dim * dim, dim * dim, n);
    for i in 0..dim {
        for k in 0..dim {
            p.set(i * dim + k, k * dim + i, DualElement::one(n));
        }
    }
    p
}

/// Conjugation by the flip: `(PXP)_{(ik),(jl)} = X_{(ki),(lj)}`.
pub fn flip_conjugate(x: &SparseMatrix, dim: usize) -> SparseMatrix {
    let swap = |a: usize| (a % dim) * dim + a / dim;
    x.permute(swap, swap)
}

/// Inverse of a lower-triangular matrix with unit-invertible diagonal by
/// forward substitution.
pub fn lower_triangular_inverse(l: &SparseMatrix) -> Result<SparseMatrix> {
    if l.rows() != l.cols() || !l.is_lower_triangular() {
        return Err(Error::Unsupported("forward substitution needs a lower-triangular matrix".into()));
    }
    let size = l.rows();
    let n = l.n();
    let mut diag_inv = Vec::with_capacity(size);
    for i in 0..size {
        let d = l.get(i, i);
        diag_inv.push(d.inverse().map_err(|_| Error::Singular(format!("diagonal entry {} = {d}", i + 1)))?);
    }
    // Solve X L = I row by row from the right is awkward; use L X = I
    // column by column: x_ic = (δ_ic - Σ_{k<i} L_ik x_kc) / L_ii.
    let mut inv = SparseMatrix::zeros(size, size, n);
    for c in 0..size {
        let mut col: Vec<DualElement> = vec![DualElement::zero(n); size];
        for i in c..size {
            let mut acc = if i == c { DualElement::one(n) } else { DualElement::zero(n) };
            for (k, lik) in l.row(i).range(c..i) {
                if !col[*k].is_zero() {
                    acc = &acc - &(lik * &col[*k]);
                }
            }
            col[i] = &acc * &diag_inv[i];
        }
        for (i, x) in col.into_iter().enumerate() {
            inv.set(i, c, x);
        }
    }
    Ok(inv)
}

/// `R⁺ = P R P` and `R⁻ = R⁻¹`.
pub fn r_plus_minus(r: &QTensor) -> Result<(QTensor, QTensor)> {
    let plus = r.with(flip_conjugate(&r.matrix, r.dim));
    let minus = r.with(lower_triangular_inverse(&r.matrix)?);
    if !minus.matrix.mul(&r.matrix).is_identity() || !r.matrix.mul(&minus.matrix).is_identity() {
        return Err(Error::Verification("R⁻ R ≠ I".into()));
    }
    Ok((plus, minus))
}

/// The three embeddings `R₁₂, R₁₃, R₂₃` into `(ℂᴺ)^{⊗3}`.
pub fn three_leg(r: &QTensor) -> (SparseMatrix, SparseMatrix, SparseMatrix) {
    let (dim, n) = (r.dim, r.n());
    let id = SparseMatrix::identity(dim, n);
    let r12 = r.matrix.kron(&id);
    let r23 = id.kron(&r.matrix);
    let p23 = id.kron(&flip(dim, n));
    let r13 = p23.mul(&r12).mul(&p23);
    (r12, r13, r23)
}

/// `R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂`.
pub fn verify_ybe(r: &QTensor) -> bool {
    let (r12, r13, r23) = three_leg(r);
    r12.mul(&r13).mul(&r23) == r23.mul(&r13).mul(&r12)
}

/// `(R̂ - q)(R̂ + q⁻¹)(R̂ - q^{1-N}) = 0` with `R̂ = PR`.
pub fn verify_cubic(r: &QTensor) -> bool {
    let (dim, n) = (r.dim, r.n());
    let rhat = flip(dim, n).mul(&r.matrix);
    let size = dim * dim;
    let shifted = |c: DualElement| rhat.sub(&SparseMatrix::scalar_identity(size, c));
    let f1 = shifted(r.q_half(2));
    let f2 = shifted(-r.q_half(-2));
    let f3 = shifted(r.q_half(2 - 2 * dim as i32));
    f1.mul(&f2).mul(&f3).is_zero()
}

/// `R̂ K = q^{1-N} K` for `K_{(ij),(kl)} = C_{ij} (C⁻¹)_{kl}`.
pub fn projector_check(r: &QTensor, c: &Matrix) -> Result<bool> {
    let (dim, n) = (r.dim, r.n());
    if c.rows() != dim || c.n() != n {
        return Err(Error::Dimension("metric does not match the R-matrix".into()));
    }
    let cinv = c.inverse()?;
    let size = dim * dim;
    let mut k = SparseMatrix::zeros(size, size, n);
    for (i, j, cij) in c.entries().filter(|e| !e.2.is_zero()) {
        for (a, b, dab) in cinv.entries().filter(|e| !e.2.is_zero()) {
            k.set(i * dim + j, a * dim + b, cij * dab);
        }
    }
    let rhat = flip(dim, n).mul(&r.matrix);
    Ok(rhat.mul(&k) == k.scale(&r.q_half(2 - 2 * dim as i32)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_values() {
        assert_eq!((1..=3).map(|i| rho2(3, i)).collect::<Vec<_>>(), vec![1, 0, -1]);
        assert_eq!((1..=4).map(|i| rho2(4, i)).collect::<Vec<_>>(), vec![2, 0, 0, -2]);
        assert_eq!((1..=5).map(|i| rho2(5, i)).collect::<Vec<_>>(), vec![3, 1, 0, -1, -3]);
    }

    #[test]
    fn n3_checks() {
        let r = frt_r(3).unwrap();
        assert!(r.is_lower_triangular());
        assert!(r.matrix.nnz() <= QTensor::sparsity_bound(3));
        assert!(r.at_q_one().matrix.is_identity());
        assert!(verify_ybe(&r));
        assert!(verify_cubic(&r));
        assert!(projector_check(&r, &frt_c(3).unwrap()).unwrap());
    }

    #[test]
    fn minus_for_nilpotent_deformation() {
        let j: JSignature = "iota,iota".parse().unwrap();
        let r = contract(&frt_r(3).unwrap(), &j).unwrap();
        let (_, minus) = r_plus_minus(&r).unwrap();
        let two = SparseMatrix::scalar_identity(9, DualElement::int(2, 2));
        assert_eq!(minus.matrix, two.sub(&r.matrix));
    }

    #[test]
    fn small_n_rejected() {
        assert!(matches!(frt_r(2), Err(Error::Unsupported(_))));
    }
}
