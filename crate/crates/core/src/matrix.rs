//! Dense and sparse matrices with `DualElement` entries.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeffring::DualElement;
use crate::error::{Error, Result};

/// Dense row-major matrix over D_n.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    n: usize,
    data: Vec<DualElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, n: usize) -> Self {
        Matrix { rows, cols, n, data: vec![DualElement::zero(n); rows * cols] }
    }

    pub fn identity(size: usize, n: usize) -> Self {
        let mut m = Matrix::zeros(size, size, n);
        for i in 0..size {
            m.data[i * size + i] = DualElement::one(n);
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> DualElement>(rows: usize, cols: usize, n: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                assert_eq!(x.n(), n, "entry over the wrong D_n");
                data.push(x);
            }
        }
        Matrix { rows, cols, n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    /// Number of nilpotent generators of the entry algebra.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &DualElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: DualElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &DualElement)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, x)| (k / self.cols, k % self.cols, x))
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, self.n, |i, j| self.get(j, i).clone())
    }

    pub fn try_mul(&self, o: &Matrix) -> Result<Self> {
        if self.cols != o.rows || self.n != o.n {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, o.cols, self.n);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &Matrix) -> Self {
        self.try_mul(o).expect("matrix shape mismatch")
    }

    fn zip(&self, o: &Matrix, f: impl Fn(&DualElement, &DualElement) -> DualElement) -> Self {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, o: &Matrix) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Matrix) -> Self {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, c: &DualElement) -> Self {
        self.map(|x| x * c)
    }

    pub fn map<F: Fn(&DualElement) -> DualElement>(&self, f: F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(DualElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.entries().all(|(i, j, x)| if i == j { x.is_one() } else { x.is_zero() })
    }

    /// Gauss–Jordan inversion with unit pivots. Over the local ring D a
    /// matrix is invertible iff its ∅-part is, so failure to find a unit
    /// pivot means singular.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let size = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(size, self.n);
        for col in 0..size {
            let pivot = (col..size)
                .find(|&r| a.get(r, col).is_unit())
                .ok_or_else(|| Error::Singular(format!("no unit pivot in column {}", col + 1)))?;
            if pivot != col {
                for j in 0..size {
                    a.data.swap(pivot * size + j, col * size + j);
                    inv.data.swap(pivot * size + j, col * size + j);
                }
            }
            let p_inv = a.get(col, col).inverse()?;
            for j in 0..size {
                let (x, y) = (a.get(col, j) * &p_inv, inv.get(col, j) * &p_inv);
                a.set(col, j, x);
                inv.set(col, j, y);
            }
            for r in 0..size {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..size {
                    let x = a.get(r, j) - &(&factor * a.get(col, j));
                    let y = inv.get(r, j) - &(&factor * inv.get(col, j));
                    a.set(r, j, x);
                    inv.set(r, j, y);
                }
            }
        }
        Ok(inv)
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let mut s = SparseMatrix::zeros(self.rows, self.cols, self.n);
        for (i, j, x) in self.entries() {
            s.set(i, j, x.clone());
        }
        s
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Row-compressed sparse matrix over D_n; zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    n: usize,
    data: Vec<BTreeMap<usize, DualElement>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize, n: usize) -> Self {
        SparseMatrix { rows, cols, n, data: vec![BTreeMap::new(); rows] }
    }

    pub fn identity(size: usize, n: usize) -> Self {
        Self::scalar_identity(size, DualElement::one(n))
    }

    pub fn scalar_identity(size: usize, c: DualElement) -> Self {
        let mut m = SparseMatrix::zeros(size, size, c.n());
        if !c.is_zero() {
            for i in 0..size {
                m.data[i].insert(i, c.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> DualElement {
        self.data[i].get(&j).cloned().unwrap_or_else(|| DualElement::zero(self.n))
    }

    pub fn get_ref(&self, i: usize, j: usize) -> Option<&DualElement> {
        self.data[i].get(&j)
    }

    pub fn set(&mut self, i: usize, j: usize, x: DualElement) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        if x.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, x);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, x: &DualElement) {
        if x.is_zero() {
            return;
        }
        let new = match self.data[i].get(&j) {
            Some(y) => y + x,
            None => x.clone(),
        };
        self.set(i, j, new);
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, DualElement> {
        &self.data[i]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &DualElement)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, x)| (i, *j, x)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.nnz() == self.rows
            && self.entries().all(|(i, j, x)| i == j && x.is_one())
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.entries().all(|(i, j, _)| j <= i)
    }

    pub fn try_mul(&self, o: &SparseMatrix) -> Result<Self> {
        if self.cols != o.rows || self.n != o.n {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = SparseMatrix::zeros(self.rows, o.cols, self.n);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, DualElement> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &o.data[*k] {
                    let p = a * b;
                    if p.is_zero() {
                        continue;
                    }
                    match acc.get_mut(j) {
                        Some(x) => *x = &*x + &p,
                        None => {
                            acc.insert(*j, p);
                        }
                    }
                }
            }
            acc.retain(|_, x| !x.is_zero());
            out.data[i] = acc;
        }
        Ok(out)
    }

    pub fn mul(&self, o: &SparseMatrix) -> Self {
        self.try_mul(o).expect("matrix shape mismatch")
    }

    pub fn add(&self, o: &SparseMatrix) -> Self {
        assert!(self.rows == o.rows && self.cols == o.cols, "matrix shape mismatch");
        let mut out = self.clone();
        for (i, j, x) in o.entries() {
            out.add_at(i, j, x);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x)
    }

    pub fn sub(&self, o: &SparseMatrix) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &DualElement) -> Self {
        self.map(|x| x * c)
    }

    pub fn map<F: Fn(&DualElement) -> DualElement>(&self, f: F) -> Self {
        let mut out = SparseMatrix::zeros(self.rows, self.cols, self.n);
        for (i, j, x) in self.entries() {
            out.set(i, j, f(x));
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = SparseMatrix::zeros(self.cols, self.rows, self.n);
        for (i, j, x) in self.entries() {
            out.set(j, i, x.clone());
        }
        out
    }

    /// Reindex rows and columns: entry `(i, j)` moves to `(pr(i), pc(j))`.
    pub fn permute(&self, pr: impl Fn(usize) -> usize, pc: impl Fn(usize) -> usize) -> Self {
        let mut out = SparseMatrix::zeros(self.rows, self.cols, self.n);
        for (i, j, x) in self.entries() {
            out.set(pr(i), pc(j), x.clone());
        }
        out
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &SparseMatrix) -> Self {
        let mut out = SparseMatrix::zeros(self.rows * o.rows, self.cols * o.cols, self.n);
        for (i, j, a) in self.entries() {
            for (k, l, b) in o.entries() {
                out.set(i * o.rows + k, j * o.cols + l, a * b);
            }
        }
        out
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols, self.n);
        for (i, j, x) in self.entries() {
            m.set(i, j, x.clone());
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(k: i64) -> DualElement {
        DualElement::int(1, k)
    }

    #[test]
    fn inverse_over_dual_numbers() {
        let i1 = DualElement::iota(1, 1).unwrap();
        let m = Matrix::from_fn(2, 2, 1, |i, j| match (i, j) {
            (0, 0) => &d(1) + &i1,
            (0, 1) => d(2),
            (1, 0) => i1.clone(),
            _ => d(3),
        });
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn singular_detected() {
        let i1 = DualElement::iota(1, 1).unwrap();
        let m = Matrix::from_fn(2, 2, 1, |i, j| if i == j { i1.clone() } else { DualElement::zero(1) });
        assert!(matches!(m.inverse(), Err(Error::Singular(_))));
    }

    #[test]
    fn sparse_product_matches_dense() {
        let a = Matrix::from_fn(3, 3, 1, |i, j| d((i * 3 + j) as i64 % 4 - 1));
        let b = Matrix::from_fn(3, 3, 1, |i, j| d((i + 2 * j) as i64 % 3));
        assert_eq!(a.to_sparse().mul(&b.to_sparse()).to_dense(), a.mul(&b));
    }
}
