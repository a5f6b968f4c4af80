//! Classical Cayley-Klein orthogonal groups: special matrices with `J̃`
//! weights, j-orthogonality, Lie generators, Cayley sampling and the
//! change to the symplectic basis.

use std::collections::BTreeMap;

use rand::Rng;

use crate::coeffring::{rat, DualElement, JSignature, Mask, Qi2, ScalarExpr};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// `k' = N + 1 - k` (1-based).
pub fn conj_index(dim: usize, k: usize) -> usize {
    dim + 1 - k
}

/// An `N × N` matrix over `D_n` tied to a contraction signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CKMatrix {
    pub matrix: Matrix,
    pub signature: JSignature,
}

impl CKMatrix {
    pub fn new(matrix: Matrix, signature: JSignature) -> Result<Self> {
        let dim = signature.dim();
        if matrix.rows() != dim || matrix.cols() != dim || matrix.n() != signature.n() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for signature of size {dim}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(CKMatrix { matrix, signature })
    }

    pub fn dim(&self) -> usize {
        self.signature.dim()
    }

    /// Whether entry `(k, p)` is divisible by `J̃_{kp}` for every entry.
    pub fn has_weight_pattern(&self) -> bool {
        self.matrix
            .entries()
            .all(|(k, p, x)| x.divisible_by_mask(self.signature.sym_mask(k + 1, p + 1)))
    }

    pub fn mul(&self, o: &CKMatrix) -> CKMatrix {
        CKMatrix { matrix: self.matrix.mul(&o.matrix), signature: self.signature.clone() }
    }

    pub fn transpose(&self) -> CKMatrix {
        CKMatrix { matrix: self.matrix.transpose(), signature: self.signature.clone() }
    }
}

/// `(A(j))_{kp} = J̃_{kp} a_{kp}`.
pub fn make_special(a: &[Vec<DualElement>], j: &JSignature) -> Result<CKMatrix> {
    let dim = j.dim();
    if a.len() != dim || a.iter().any(|r| r.len() != dim) {
        return Err(Error::Dimension(format!("parameter array is not {dim}x{dim}")));
    }
    let m = Matrix::from_fn(dim, dim, j.n(), |k, p| &j.sym_weight(k + 1, p + 1) * &a[k][p]);
    CKMatrix::new(m, j.clone())
}

/// `A Aᵗ = Aᵗ A = I`.
pub fn is_j_orthogonal(a: &Matrix) -> bool {
    let t = a.transpose();
    a.mul(&t).is_identity() && t.mul(a).is_identity()
}

/// `X_{kp}(j) = J_{kp}(e_{kp} - e_{pk})` for `k < p` (1-based).
pub fn lie_generator(k: usize, p: usize, j: &JSignature) -> Result<CKMatrix> {
    let dim = j.dim();
    if !(1 <= k && k < p && p <= dim) {
        return Err(Error::IndexOutOfRange(format!("generator ({k},{p}) for N={dim}")));
    }
    let mut m = Matrix::zeros(dim, dim, j.n());
    let w = j.weight(k, p);
    m.set(k - 1, p - 1, w.clone());
    m.set(p - 1, k - 1, -w);
    CKMatrix::new(m, j.clone())
}

/// Index pairs `(k, p)`, `k < p`, in lexicographic order.
pub fn generator_indices(dim: usize) -> Vec<(usize, usize)> {
    (1..=dim).flat_map(|k| (k + 1..=dim).map(move |p| (k, p))).collect()
}

/// One structure constant: `[X_a, X_b] = Σ coeff · X_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstant {
    pub lhs: ((usize, usize), (usize, usize)),
    pub terms: Vec<((usize, usize), DualElement)>,
}

fn exponents(dim: usize, k: usize, p: usize) -> Vec<u32> {
    (1..dim).map(|r| u32::from(k <= r && r < p)).collect()
}

fn weight_from_exponents(j: &JSignature, e: &[u32]) -> DualElement {
    let mut out = DualElement::one(j.n());
    for (r, &k) in e.iter().enumerate() {
        for _ in 0..k {
            out = &out * &j.weight(r + 1, r + 2);
        }
    }
    out
}

/// Structure constants of the contracted algebra. The integer constants of
/// `so(N)` are multiplied by the monomial `J_a J_b / J_c`, formed on exponent
/// vectors and only then realized in `D`; each bracket is then checked
/// against the matrix commutator. Fails if any bracket does not match.
pub fn structure_constants(j: &JSignature) -> Result<Vec<StructureConstant>> {
    let dim = j.dim();
    let gens = generator_indices(dim);
    let one = JSignature::all_one(dim);
    let plain: Vec<Matrix> = gens
        .iter()
        .map(|&(k, p)| lie_generator(k, p, &one).map(|g| g.matrix))
        .collect::<Result<_>>()?;
    let contracted: Vec<Matrix> = gens
        .iter()
        .map(|&(k, p)| lie_generator(k, p, j).map(|g| g.matrix))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (ia, &a) in gens.iter().enumerate() {
        for (ib, &b) in gens.iter().enumerate().skip(ia + 1) {
            let comm0 = plain[ia].mul(&plain[ib]).sub(&plain[ib].mul(&plain[ia]));
            let mut terms = Vec::new();
            let mut sum = Matrix::zeros(dim, dim, j.n());
            for (ic, &c) in gens.iter().enumerate() {
                let s = comm0.get(c.0 - 1, c.1 - 1);
                if s.is_zero() {
                    continue;
                }
                let ea = exponents(dim, a.0, a.1);
                let eb = exponents(dim, b.0, b.1);
                let ec = exponents(dim, c.0, c.1);
                let e: Option<Vec<u32>> = (0..dim - 1)
                    .map(|r| (ea[r] + eb[r]).checked_sub(ec[r]))
                    .collect();
                let e = e.ok_or_else(|| {
                    Error::Verification(format!("bracket of {a:?} and {b:?} leaves the weight lattice"))
                })?;
                let coeff = &DualElement::constant(j.n(), s.numeric_part().as_constant().unwrap_or_else(Qi2::zero))
                    * &weight_from_exponents(j, &e);
                sum = sum.add(&contracted[ic].scale(&coeff));
                terms.push((c, coeff));
            }
            let comm = contracted[ia].mul(&contracted[ib]).sub(&contracted[ib].mul(&contracted[ia]));
            if comm != sum {
                return Err(Error::Verification(format!("bracket [X{a:?}, X{b:?}] not in the span")));
            }
            terms.retain(|(_, c)| !c.is_zero());
            out.push(StructureConstant { lhs: (a, b), terms });
        }
    }
    Ok(out)
}

/// `X + Xᵗ = 0`.
pub fn is_antisymmetric(x: &Matrix) -> bool {
    x.add(&x.transpose()).is_zero()
}

/// Cayley transform `(I + X)(I - X)⁻¹`.
pub fn cayley(x: &CKMatrix) -> Result<CKMatrix> {
    if !is_antisymmetric(&x.matrix) {
        return Err(Error::Verification("Cayley transform of a non-antisymmetric matrix".into()));
    }
    let dim = x.dim();
    let id = Matrix::identity(dim, x.matrix.n());
    let inv = id.sub(&x.matrix).inverse()?;
    CKMatrix::new(id.add(&x.matrix).mul(&inv), x.signature.clone())
}

fn random_rational<R: Rng>(rng: &mut R) -> ScalarExpr {
    let num = rng.gen_range(-4i64..=4);
    let den = rng.gen_range(1i64..=3);
    ScalarExpr::rational(rat(num, den))
}

/// A random element of `D_n` with small rational coefficients: the ∅-part
/// is always drawn, each nilpotent monomial with probability 1/4.
pub fn random_dual<R: Rng>(n: usize, rng: &mut R) -> DualElement {
    let mut terms: Vec<(Mask, ScalarExpr)> = vec![(0, random_rational(rng))];
    for m in 1..1u32 << n {
        if rng.gen_bool(0.25) {
            terms.push((m as Mask, random_rational(rng)));
        }
    }
    DualElement::from_terms(n, terms)
}

/// Random element of the Lie algebra: `Σ θ_{kp} X_{kp}(j)` with rational `θ`.
pub fn random_lie_element<R: Rng>(j: &JSignature, rng: &mut R) -> CKMatrix {
    let dim = j.dim();
    let mut x = Matrix::zeros(dim, dim, j.n());
    for (k, p) in generator_indices(dim) {
        let g = lie_generator(k, p, j).expect("generator indices are in range");
        let theta = DualElement::scalar(j.n(), random_rational(rng));
        x = x.add(&g.matrix.scale(&theta));
    }
    CKMatrix { matrix: x, signature: j.clone() }
}

/// A random j-orthogonal matrix via the Cayley transform. The ∅-part of `X`
/// is a rational antisymmetric matrix, so `I - X` is always invertible.
pub fn random_cayley<R: Rng>(j: &JSignature, rng: &mut R) -> Result<CKMatrix> {
    cayley(&random_lie_element(j, rng))
}

fn half_sqrt2() -> Qi2 {
    // 1/√2 = √2/2
    Qi2::new(rat(0, 1), rat(0, 1), rat(1, 2), rat(0, 1))
}

fn i_half_sqrt2() -> Qi2 {
    Qi2::new(rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 2))
}

/// The basis change `D` with `D C₀ Dᵗ = I`. For `k < k'`:
/// `D_{kk} = D_{kk'} = 1/√2`, `D_{k'k} = i/√2`, `D_{k'k'} = -i/√2`; the
/// middle entry for odd `N` is 1.
pub fn symplectic_d(dim: usize, n: usize) -> Matrix {
    let mut d = Matrix::zeros(dim, dim, n);
    let c = |x: Qi2| DualElement::constant(n, x);
    for k in 1..=dim {
        let kp = conj_index(dim, k);
        match k.cmp(&kp) {
            std::cmp::Ordering::Less => {
                d.set(k - 1, k - 1, c(half_sqrt2()));
                d.set(k - 1, kp - 1, c(half_sqrt2()));
                d.set(kp - 1, k - 1, c(i_half_sqrt2()));
                d.set(kp - 1, kp - 1, c(-&i_half_sqrt2()));
            }
            std::cmp::Ordering::Equal => d.set(k - 1, k - 1, DualElement::one(n)),
            std::cmp::Ordering::Greater => {}
        }
    }
    d
}

/// Closed form of `D⁻¹`.
pub fn symplectic_d_inverse(dim: usize, n: usize) -> Matrix {
    let mut d = Matrix::zeros(dim, dim, n);
    let c = |x: Qi2| DualElement::constant(n, x);
    for k in 1..=dim {
        let kp = conj_index(dim, k);
        match k.cmp(&kp) {
            std::cmp::Ordering::Less => {
                d.set(k - 1, k - 1, c(half_sqrt2()));
                d.set(k - 1, kp - 1, c(-&i_half_sqrt2()));
                d.set(kp - 1, k - 1, c(half_sqrt2()));
                d.set(kp - 1, kp - 1, c(i_half_sqrt2()));
            }
            std::cmp::Ordering::Equal => d.set(k - 1, k - 1, DualElement::one(n)),
            std::cmp::Ordering::Greater => {}
        }
    }
    d
}

/// The antidiagonal `C₀`, `(C₀)_{ik} = δ_{i,k'}`.
pub fn c0(dim: usize, n: usize) -> Matrix {
    Matrix::from_fn(dim, dim, n, |i, k| {
        if k + 1 == conj_index(dim, i + 1) {
            DualElement::one(n)
        } else {
            DualElement::zero(n)
        }
    })
}

/// `B(j) = D⁻¹ A(j) D`.
pub fn to_symplectic(a: &CKMatrix) -> CKMatrix {
    let (dim, n) = (a.dim(), a.matrix.n());
    let m = symplectic_d_inverse(dim, n).mul(&a.matrix).mul(&symplectic_d(dim, n));
    CKMatrix { matrix: m, signature: a.signature.clone() }
}

/// `B C₀ Bᵗ = Bᵗ C₀ B = C₀`.
pub fn preserves_c0(b: &Matrix) -> bool {
    let c = c0(b.rows(), b.n());
    let t = b.transpose();
    b.mul(&c).mul(&t) == c && t.mul(&c).mul(b) == c
}

/// For each entry `(i, k)` of `B(j)`, the sorted list of j-monomials (as
/// masks) whose coefficient is a nonzero linear form in generic parameters
/// `a_{rs}`.
pub fn weight_pattern_symplectic(j: &JSignature) -> Vec<Vec<Vec<Mask>>> {
    let dim = j.dim();
    let dinv = symplectic_d_inverse(dim, 0);
    let d = symplectic_d(dim, 0);
    let mut pattern = vec![vec![Vec::new(); dim]; dim];
    for (i, row) in pattern.iter_mut().enumerate() {
        for (k, cell) in row.iter_mut().enumerate() {
            // mask -> linear form over the symbols a_{rs}
            let mut forms: BTreeMap<Mask, BTreeMap<(usize, usize), DualElement>> = BTreeMap::new();
            for r in 0..dim {
                for s in 0..dim {
                    let c = dinv.get(i, r) * d.get(s, k);
                    if c.is_zero() {
                        continue;
                    }
                    let form = forms.entry(j.sym_mask(r + 1, s + 1)).or_default();
                    let e = form.entry((r, s)).or_insert_with(|| DualElement::zero(0));
                    *e = &*e + &c;
                }
            }
            *cell = forms
                .into_iter()
                .filter(|(_, f)| f.values().any(|c| !c.is_zero()))
                .map(|(m, _)| m)
                .collect();
        }
    }
    pattern
}

/// Decompose `B = D⁻¹AD` by weight: entry `(i, k)` maps each pattern mask
/// `μ` to `b^μ_{ik}` with `Σ_μ ι_μ b^μ_{ik} = B_{ik}`.
pub fn symplectic_components(a: &CKMatrix) -> Result<Vec<Vec<BTreeMap<Mask, DualElement>>>> {
    if !a.has_weight_pattern() {
        return Err(Error::Verification("matrix lacks the J̃ weight pattern".into()));
    }
    let (dim, n) = (a.dim(), a.matrix.n());
    let j = &a.signature;
    let dinv = symplectic_d_inverse(dim, n);
    let d = symplectic_d(dim, n);
    let mut out = vec![vec![BTreeMap::new(); dim]; dim];
    for (i, row) in out.iter_mut().enumerate() {
        for (k, cell) in row.iter_mut().enumerate() {
            for r in 0..dim {
                for s in 0..dim {
                    let c = dinv.get(i, r) * d.get(s, k);
                    if c.is_zero() {
                        continue;
                    }
                    let mask = j.sym_mask(r + 1, s + 1);
                    let part = &c * &a.matrix.get(r, s).strip_mask(mask);
                    let e: &mut DualElement = cell.entry(mask).or_insert_with(|| DualElement::zero(n));
                    *e = &*e + &part;
                }
            }
        }
    }
    Ok(out)
}

/// `x(j) = (x₁, J₁₂x₂, …, J₁ₙxₙ)`.
pub fn cartesian_vector(x: &[DualElement], j: &JSignature) -> Vec<DualElement> {
    x.iter().enumerate().map(|(k, c)| &j.weight(1, k + 1) * c).collect()
}

/// `xᵗ G y`.
pub fn bilinear(x: &[DualElement], g: &Matrix, y: &[DualElement]) -> DualElement {
    let mut acc = DualElement::zero(g.n());
    for (a, xa) in x.iter().enumerate() {
        for (b, yb) in y.iter().enumerate() {
            let gab = g.get(a, b);
            if !gab.is_zero() {
                acc = &acc + &(&(xa * gab) * yb);
            }
        }
    }
    acc
}

pub fn apply(m: &Matrix, x: &[DualElement]) -> Vec<DualElement> {
    (0..m.rows())
        .map(|i| {
            x.iter()
                .enumerate()
                .fold(DualElement::zero(m.n()), |acc, (k, xk)| &acc + &(m.get(i, k) * xk))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> JSignature {
        s.parse().unwrap()
    }

    #[test]
    fn special_weights() {
        let j = sig("iota,1");
        let ones = vec![vec![DualElement::one(2); 3]; 3];
        let a = make_special(&ones, &j).unwrap();
        let i1 = DualElement::iota(2, 1).unwrap();
        assert_eq!(a.matrix.get(0, 1), &i1);
        assert_eq!(a.matrix.get(2, 0), &i1);
        assert!(a.matrix.get(1, 2).is_one());
        let a = make_special(&ones, &sig("iota,iota")).unwrap();
        assert_eq!(a.matrix.get(0, 2).support_mask(), 0b11);
    }

    #[test]
    fn galilean_boost() {
        let j = sig("iota");
        let x = lie_generator(1, 2, &j).unwrap();
        let theta = DualElement::int(1, 3);
        let a = cayley(&CKMatrix { matrix: x.matrix.scale(&theta), signature: j }).unwrap();
        assert_eq!(a.matrix.get(0, 1), &DualElement::from_terms(1, [(1, ScalarExpr::int(6))]));
        assert!(is_j_orthogonal(&a.matrix));
    }

    #[test]
    fn all_ones_not_orthogonal() {
        let j = sig("1");
        let a = make_special(&vec![vec![DualElement::one(1); 2]; 2], &j).unwrap();
        assert!(!is_j_orthogonal(&a.matrix));
    }

    #[test]
    fn d_solves_metric_equation() {
        for dim in 2..=6 {
            let d = symplectic_d(dim, 0);
            assert!(d.mul(&c0(dim, 0)).mul(&d.transpose()).is_identity(), "N={dim}");
            assert!(d.mul(&symplectic_d_inverse(dim, 0)).is_identity());
        }
    }

    #[test]
    fn two_weight_pattern_entry() {
        let p = weight_pattern_symplectic(&sig("iota,iota"));
        assert_eq!(p[0][1], vec![0b01, 0b10]);
        let p = weight_pattern_symplectic(&sig("1,1"));
        assert!(p.iter().flatten().all(|c| c == &vec![0]));
    }
}
