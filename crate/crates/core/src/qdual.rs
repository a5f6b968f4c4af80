//! The dual quantum algebra `so_v(N; j)`: functionals `L^{(±)}` defined by
//! their values `⟨L^{(±)}, T⟩ = R^{(±)}` on the generating matrix, extended
//! to monomials through the coproduct. No inverse of a nilpotent generator
//! is ever formed; the functionals exist only through their values.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use crate::coeffring::{DualElement, JSignature, Mask};
use crate::error::{Error, Result};
use crate::freealg::{GenSymbol, NCPoly, Word};
use crate::matrix::Matrix;
use crate::qgroup::{build_t, GeneratingMatrix, RelationSet, Report, Verdict, LATEX_DECORATIONS};
use crate::rmatrix::{flat, flip_conjugate, r_and_c, r_plus_minus, QTensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn symbol(&self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// `l^{(σ)}_{ij}`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LSymbol {
    pub sign: Sign,
    pub row: usize,
    pub col: usize,
}

impl LSymbol {
    pub fn new(sign: Sign, row: usize, col: usize) -> Self {
        LSymbol { sign, row, col }
    }

    /// `L⁺` is upper and `L⁻` lower triangular.
    pub fn is_triangular(&self) -> bool {
        match self.sign {
            Sign::Plus => self.row <= self.col,
            Sign::Minus => self.row >= self.col,
        }
    }
}

impl fmt::Display for LSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l{}{}{}", self.sign.symbol(), self.row, self.col)
    }
}

/// A product of `L` symbols, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctionalWord(Vec<LSymbol>);

impl FunctionalWord {
    pub fn unit() -> Self {
        FunctionalWord(Vec::new())
    }

    /// Rejects symbols outside the triangle: those functionals vanish.
    pub fn new(symbols: Vec<LSymbol>) -> Result<Self> {
        if let Some(s) = symbols.iter().find(|s| !s.is_triangular()) {
            return Err(Error::IndexOutOfRange(format!("{s} lies outside the triangle")));
        }
        Ok(FunctionalWord(symbols))
    }

    pub fn symbols(&self) -> &[LSymbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All triangular words of the given length, in lexicographic order.
    pub fn all(dim: usize, len: usize) -> Vec<FunctionalWord> {
        let letters = triangular_symbols(dim);
        let mut out = vec![FunctionalWord::unit()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    letters.iter().map(move |s| {
                        let mut v = w.0.clone();
                        v.push(*s);
                        FunctionalWord(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for FunctionalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join("*"))
    }
}

pub fn triangular_symbols(dim: usize) -> Vec<LSymbol> {
    let mut out = Vec::new();
    for sign in Sign::BOTH {
        for i in 1..=dim {
            for j in 1..=dim {
                let s = LSymbol::new(sign, i, j);
                if s.is_triangular() {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// A monomial `T_{k₁l₁} ⋯ T_{k_d l_d}` in the entries of the generating
/// matrix, 1-based.
pub type EntryMonomial = Vec<(usize, usize)>;

/// All entry monomials of the given degree, lexicographic.
pub fn entry_monomials(dim: usize, degree: usize) -> Vec<EntryMonomial> {
    let mut out: Vec<EntryMonomial> = vec![Vec::new()];
    for _ in 0..degree {
        let mut next = Vec::with_capacity(out.len() * dim * dim);
        for m in &out {
            for k in 1..=dim {
                for l in 1..=dim {
                    let mut v = m.clone();
                    v.push((k, l));
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out
}

/// `ε(T_{k₁l₁} ⋯) = Π δ_{k l}`.
pub fn entry_counit(m: &[(usize, usize)], n: usize) -> DualElement {
    if m.iter().all(|(k, l)| k == l) {
        DualElement::one(n)
    } else {
        DualElement::zero(n)
    }
}

/// Which factor of a word is split off first when a product of
/// functionals is evaluated through the coproduct.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Iteration {
    /// `⟨w' ℓ, a⟩ = ⟨w' ⊗ ℓ, Δa⟩`.
    Left,
    /// `⟨ℓ w', a⟩ = ⟨ℓ ⊗ w', Δa⟩`.
    Right,
}

/// Values of `L^{(±)}` on the generating matrix and everything derived
/// from them.
#[derive(Clone, Debug)]
pub struct DualPairing {
    pub t: GeneratingMatrix,
    pub r: QTensor,
    pub r_plus: QTensor,
    pub r_minus: QTensor,
    pub c: Matrix,
    // M_σ(T_{kl})_{ij} = R^{(σ)}_{(i,k),(j,l)}
    entry_rep: BTreeMap<(Sign, usize, usize), Matrix>,
    // the same, split into the weights of entry (k, l)
    symbol_rep: BTreeMap<(Sign, usize, usize, Mask), Matrix>,
}

impl DualPairing {
    pub fn new(j: &JSignature) -> Result<Self> {
        let t = build_t(j)?;
        let (r, c) = r_and_c(j)?;
        DualPairing::from_parts(t, r, c)
    }

    pub fn from_parts(t: GeneratingMatrix, r: QTensor, c: Matrix) -> Result<Self> {
        let (r_plus, r_minus) = r_plus_minus(&r)?;
        let dim = t.dim();
        let n = t.n();
        let mut entry_rep = BTreeMap::new();
        let mut symbol_rep = BTreeMap::new();
        for sign in Sign::BOTH {
            let rs = match sign {
                Sign::Plus => &r_plus,
                Sign::Minus => &r_minus,
            };
            for k in 1..=dim {
                for l in 1..=dim {
                    let m = Matrix::from_fn(dim, dim, n, |i, j| rs.entry(i + 1, k, j + 1, l));
                    let mut parts: BTreeMap<Mask, Matrix> =
                        t.weights(k, l).iter().map(|&mu| (mu, Matrix::zeros(dim, dim, n))).collect();
                    for (i, j, x) in m.entries() {
                        for (mu, part) in t.split_value(k, l, x)? {
                            let slot = parts.get_mut(&mu).expect("split lands on a weight");
                            slot.set(i, j, part);
                        }
                    }
                    for (mu, part) in parts {
                        symbol_rep.insert((sign, k, l, mu), part);
                    }
                    entry_rep.insert((sign, k, l), m);
                }
            }
        }
        Ok(DualPairing { t, r, r_plus, r_minus, c, entry_rep, symbol_rep })
    }

    pub fn dim(&self) -> usize {
        self.t.dim()
    }

    pub fn n(&self) -> usize {
        self.t.n()
    }

    pub fn r_sigma(&self, sign: Sign) -> &QTensor {
        match sign {
            Sign::Plus => &self.r_plus,
            Sign::Minus => &self.r_minus,
        }
    }

    /// `⟨l^{(σ)}_{ij}, T_{kl}⟩`.
    pub fn value(&self, s: LSymbol, k: usize, l: usize) -> DualElement {
        self.entry_rep[&(s.sign, k, l)].get(s.row - 1, s.col - 1).clone()
    }

    /// `⟨l^{(σ)}_{ij}, t^μ_{kl}⟩`: the `μ`-component of the entry value.
    pub fn symbol_value(&self, s: LSymbol, t: &GenSymbol) -> DualElement {
        match self.symbol_rep.get(&(s.sign, t.row(), t.col(), t.tag)) {
            Some(m) => m.get(s.row - 1, s.col - 1).clone(),
            None => DualElement::zero(self.n()),
        }
    }

    /// The matrix `(⟨l^{(σ)}_{ij}, m⟩)_{ij}` for a single functional.
    pub fn single(&self, sign: Sign, m: &[(usize, usize)]) -> Matrix {
        let mut acc = Matrix::identity(self.dim(), self.n());
        for &(k, l) in m {
            acc = acc.mul(&self.entry_rep[&(sign, k, l)]);
        }
        acc
    }

    /// Same for a word in the symbols (copy labels are ignored).
    pub fn single_symbols(&self, sign: Sign, w: &[GenSymbol]) -> Matrix {
        let dim = self.dim();
        let mut acc = Matrix::identity(dim, self.n());
        for s in w {
            match self.symbol_rep.get(&(sign, s.row(), s.col(), s.tag)) {
                Some(m) => acc = acc.mul(m),
                None => return Matrix::zeros(dim, dim, self.n()),
            }
        }
        acc
    }

    /// `⟨w, T_{k₁l₁}⋯T_{k_dl_d}⟩`, splitting the word from the right.
    pub fn pair(&self, w: &FunctionalWord, m: &[(usize, usize)]) -> DualElement {
        self.pair_with(w, m, Iteration::Right)
    }

    pub fn pair_with(&self, w: &FunctionalWord, m: &[(usize, usize)], it: Iteration) -> DualElement {
        self.pair_slice(w.symbols(), m, it)
    }

    fn pair_slice(&self, w: &[LSymbol], m: &[(usize, usize)], it: Iteration) -> DualElement {
        let n = self.n();
        match w {
            [] => return entry_counit(m, n),
            [s] => return self.single(s.sign, m).get(s.row - 1, s.col - 1).clone(),
            _ => {}
        }
        let (head, tail) = match it {
            Iteration::Right => w.split_at(1),
            Iteration::Left => w.split_at(w.len() - 1),
        };
        let dim = self.dim();
        let mut out = DualElement::zero(n);
        let mut aux = vec![1usize; m.len()];
        loop {
            let left: Vec<_> = m.iter().zip(&aux).map(|(&(k, _), &a)| (k, a)).collect();
            let a = self.pair_slice(head, &left, it);
            if !a.is_zero() {
                let right: Vec<_> = m.iter().zip(&aux).map(|(&(_, l), &a)| (a, l)).collect();
                let b = self.pair_slice(tail, &right, it);
                if !b.is_zero() {
                    out = &out + &(&a * &b);
                }
            }
            if !advance(&mut aux, dim) {
                return out;
            }
        }
    }

    /// `Π_{στ}(m)`: the `N²×N²` matrix with entry `((i,k),(j,l))` equal to
    /// `⟨l^{(σ)}_{ij} l^{(τ)}_{kl}, m⟩`.
    pub fn two_fold(&self, s1: Sign, s2: Sign, m: &[(usize, usize)]) -> Matrix {
        let dim = self.dim();
        let n = self.n();
        let mut out = Matrix::zeros(dim * dim, dim * dim, n);
        let mut aux = vec![1usize; m.len()];
        loop {
            let left: Vec<_> = m.iter().zip(&aux).map(|(&(k, _), &a)| (k, a)).collect();
            let right: Vec<_> = m.iter().zip(&aux).map(|(&(_, l), &a)| (a, l)).collect();
            let a = self.single(s1, &left);
            if !a.is_zero() {
                let b = self.single(s2, &right);
                kron_into(&mut out, &a, &b, dim);
            }
            if !advance(&mut aux, dim) {
                return out;
            }
        }
    }

    /// `⟨w, p⟩` for a polynomial in the weight-tagged symbols, `|w| ≤ 2`.
    /// Longer words go through the one-step coproduct, splitting from the
    /// right.
    pub fn pair_poly(&self, w: &FunctionalWord, p: &NCPoly) -> Result<DualElement> {
        let n = self.n();
        match w.symbols() {
            [] => Ok(self.t.counit(p)),
            [s] => {
                let mut out = DualElement::zero(n);
                for (word, c) in p.terms() {
                    let v = self.single_symbols(s.sign, word.symbols());
                    out = &out + &(c * v.get(s.row - 1, s.col - 1));
                }
                Ok(out)
            }
            [s, rest @ ..] => {
                let d = self.t.coproduct(p)?;
                let tail = FunctionalWord(rest.to_vec());
                let mut out = DualElement::zero(n);
                for (word, c) in d.terms() {
                    let (u, v) = split_copies(word);
                    let a = self.single_symbols(s.sign, &u).get(s.row - 1, s.col - 1).clone();
                    if a.is_zero() {
                        continue;
                    }
                    let b = self.pair_poly(&tail, &NCPoly::term(DualElement::one(n), Word(v)))?;
                    out = &out + &(&(c * &a) * &b);
                }
                Ok(out)
            }
        }
    }

    /// `Π_{στ}` of a symbol polynomial, through its coproduct.
    pub fn two_fold_poly(&self, s1: Sign, s2: Sign, p: &NCPoly) -> Result<Matrix> {
        let dim = self.dim();
        let mut out = Matrix::zeros(dim * dim, dim * dim, self.n());
        let d = self.t.coproduct(p)?;
        for (word, c) in d.terms() {
            let (u, v) = split_copies(word);
            let a = self.single_symbols(s1, &u).scale(c);
            if a.is_zero() {
                continue;
            }
            kron_into(&mut out, &a, &self.single_symbols(s2, &v), dim);
        }
        Ok(out)
    }

    /// Degree-`d` table of single-functional values.
    pub fn table(&self, sign: Sign, degree: usize) -> PairingTable {
        let entries = entry_monomials(self.dim(), degree)
            .into_iter()
            .map(|m| {
                let v = self.single(sign, &m);
                (m, v)
            })
            .collect();
        PairingTable { sign, degree, entries }
    }

    /// `Cᵗ` and `(Cᵗ)⁻¹`.
    pub fn ct_pair(&self) -> Result<(Matrix, Matrix)> {
        let ct = self.c.transpose();
        let inv = ct.inverse()?;
        Ok((ct, inv))
    }
}

/// Values `⟨l^{(σ)}_{ij}, m⟩` for every entry monomial `m` of one degree.
#[derive(Clone, Debug)]
pub struct PairingTable {
    pub sign: Sign,
    pub degree: usize,
    pub entries: Vec<(EntryMonomial, Matrix)>,
}

fn advance(aux: &mut [usize], dim: usize) -> bool {
    for a in aux.iter_mut().rev() {
        if *a < dim {
            *a += 1;
            return true;
        }
        *a = 1;
    }
    false
}

fn kron_into(out: &mut Matrix, a: &Matrix, b: &Matrix, dim: usize) {
    for (i, j, x) in a.entries().filter(|e| !e.2.is_zero()) {
        for (k, l, y) in b.entries().filter(|e| !e.2.is_zero()) {
            let (r, c) = (flat(dim, i + 1, k + 1), flat(dim, j + 1, l + 1));
            let v = out.get(r, c) + &(x * y);
            out.set(r, c, v);
        }
    }
}

fn split_copies(w: &Word) -> (Vec<GenSymbol>, Vec<GenSymbol>) {
    let (u, v): (Vec<GenSymbol>, Vec<GenSymbol>) = w.symbols().iter().partition(|s| s.copy == 0);
    (u, v.into_iter().map(|s| s.with_copy(0)).collect())
}

fn record(rep: &mut Report, ok: bool, what: impl FnOnce() -> String) {
    rep.record(Verdict::from_bool(ok), what);
}

fn all_monomials(dim: usize, degree: usize) -> Vec<EntryMonomial> {
    (0..=degree).flat_map(|d| entry_monomials(dim, d)).collect()
}

fn show(m: &[(usize, usize)]) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter().map(|(k, l)| format!("T{k}{l}")).collect::<Vec<_>>().join("*")
}

/// `R⁺ L^{(σ)}₁ L^{(σ)}₂ = L^{(σ)}₂ L^{(σ)}₁ R⁺` and
/// `R⁺ L⁺₁ L⁻₂ = L⁻₂ L⁺₁ R⁺`, paired against every entry monomial of
/// degree at most `degree`.
pub fn verify_ll(pairing: &DualPairing, degree: usize) -> Report {
    let dim = pairing.dim();
    let rp = &pairing.r_plus.matrix;
    let mut rep = Report::default();
    for m in all_monomials(dim, degree) {
        for (s1, s2) in [(Sign::Plus, Sign::Plus), (Sign::Minus, Sign::Minus), (Sign::Plus, Sign::Minus)] {
            let lhs = rp.mul(&pairing.two_fold(s1, s2, &m).to_sparse());
            let swapped = pairing.two_fold(s2, s1, &m).to_sparse();
            let rhs = flip_conjugate(&swapped, dim).mul(rp);
            record(&mut rep, lhs == rhs, || {
                format!("R+ L{}1 L{}2 on {}", s1.symbol(), s2.symbol(), show(&m))
            });
        }
    }
    rep
}

/// `Σ_{cd} Π(m)_{(a,b),(c,d)} M_{cd}` (`transpose = false`) or
/// `Σ_{cd} Π(m)_{(c,d),(a,b)} M_{cd}` (`transpose = true`).
fn contract_metric(pi: &Matrix, metric: &Matrix, dim: usize, a: usize, b: usize, transpose: bool) -> DualElement {
    let mut acc = DualElement::zero(pi.n());
    for (c, d, x) in metric.entries().filter(|e| !e.2.is_zero()) {
        let (c, d) = (c + 1, d + 1);
        let y = if transpose {
            pi.get(flat(dim, c, d), flat(dim, a, b))
        } else {
            pi.get(flat(dim, a, b), flat(dim, c, d))
        };
        acc = &acc + &(y * x);
    }
    acc
}

/// The metric and diagonal relations of the dual algebra:
/// `L M Lᵗ = M` and `Lᵗ M L = M` for `M = Cᵗ, (Cᵗ)⁻¹`,
/// `l⁺_{kk} l⁻_{kk} = l⁻_{kk} l⁺_{kk} = 1` and `l⁺_{11}⋯l⁺_{NN} = 1`,
/// paired against every entry monomial of degree at most `degree`.
pub fn verify_l_additional(pairing: &DualPairing, degree: usize) -> Result<Report> {
    let dim = pairing.dim();
    let n = pairing.n();
    let (ct, ct_inv) = pairing.ct_pair()?;
    let diag = FunctionalWord((1..=dim).map(|k| LSymbol::new(Sign::Plus, k, k)).collect());
    let mut rep = Report::default();
    for m in all_monomials(dim, degree) {
        let eps = entry_counit(&m, n);
        for sign in Sign::BOTH {
            let pi = pairing.two_fold(sign, sign, &m);
            for (name, metric) in [("Ct", &ct), ("Ct^-1", &ct_inv)] {
                for transpose in [false, true] {
                    let mut ok = true;
                    for a in 1..=dim {
                        for b in 1..=dim {
                            let lhs = contract_metric(&pi, metric, dim, a, b, transpose);
                            ok &= lhs == metric.get(a - 1, b - 1) * &eps;
                        }
                    }
                    record(&mut rep, ok, || {
                        let form = if transpose { "Lt M L" } else { "L M Lt" };
                        format!("{form} = M for M = {name}, L{} on {}", sign.symbol(), show(&m))
                    });
                }
            }
        }
        let pm = pairing.two_fold(Sign::Plus, Sign::Minus, &m);
        let mp = pairing.two_fold(Sign::Minus, Sign::Plus, &m);
        for k in 1..=dim {
            let at = flat(dim, k, k);
            record(&mut rep, pm.get(at, at) == &eps && mp.get(at, at) == &eps, || {
                format!("l+{k}{k} l-{k}{k} = 1 on {}", show(&m))
            });
        }
        record(&mut rep, pairing.pair(&diag, &m) == eps, || format!("l+11...l+NN = 1 on {}", show(&m)));
    }
    Ok(rep)
}

/// The metric relation in the literal form `L Cᵗ L = Cᵗ`, i.e.
/// `Σ_{cd} ⟨l_{ac} l_{db}, m⟩ Cᵗ_{cd} = Cᵗ_{ab} ε(m)`. Returns the
/// monomials of degree at most `degree` on which it fails.
pub fn literal_metric_defects(pairing: &DualPairing, sign: Sign, degree: usize) -> Vec<String> {
    let dim = pairing.dim();
    let n = pairing.n();
    let ct = pairing.c.transpose();
    let mut out = Vec::new();
    for m in all_monomials(dim, degree) {
        let eps = entry_counit(&m, n);
        let pi = pairing.two_fold(sign, sign, &m);
        let bad = (1..=dim).any(|a| {
            (1..=dim).any(|b| {
                let mut acc = DualElement::zero(n);
                for (c, d, x) in ct.entries().filter(|e| !e.2.is_zero()) {
                    // ⟨l_{ac} l_{db}⟩ sits at ((a,d),(c,b))
                    acc = &acc + &(pi.get(flat(dim, a, d + 1), flat(dim, c + 1, b)) * x);
                }
                acc != ct.get(a - 1, b - 1) * &eps
            })
        });
        if bad {
            out.push(show(&m));
        }
    }
    out
}

/// `ΔL_{ij} = Σ_k L_{ik} ⊗ L_{kj}`, keeping only triangular factors.
pub fn l_coproduct(s: LSymbol, dim: usize) -> Vec<(LSymbol, LSymbol)> {
    (1..=dim)
        .map(|k| (LSymbol::new(s.sign, s.row, k), LSymbol::new(s.sign, k, s.col)))
        .filter(|(a, b)| a.is_triangular() && b.is_triangular())
        .collect()
}

/// `ε(L_{ij}) = δ_{ij}`.
pub fn l_counit(s: LSymbol, n: usize) -> DualElement {
    if s.row == s.col {
        DualElement::one(n)
    } else {
        DualElement::zero(n)
    }
}

/// `S(L)_{ij} = Σ_{ab} Cᵗ_{ia} L_{ba} ((Cᵗ)⁻¹)_{bj}`, triangular terms only.
pub fn l_antipode(s: LSymbol, ct: &Matrix, ct_inv: &Matrix) -> Vec<(DualElement, LSymbol)> {
    let dim = ct.rows();
    let mut out = Vec::new();
    for a in 1..=dim {
        for b in 1..=dim {
            let l = LSymbol::new(s.sign, b, a);
            if !l.is_triangular() {
                continue;
            }
            let c = ct.get(s.row - 1, a - 1) * ct_inv.get(b - 1, s.col - 1);
            if !c.is_zero() {
                out.push((c, l));
            }
        }
    }
    out
}

/// Duality of the structure maps of `L` with those of the group:
/// `⟨ΔL, a⊗b⟩ = ⟨L, ab⟩` on generator pairs, `⟨L, 1⟩ = ε(L)`, and
/// `⟨S(L)_{ij}, T_{kl}⟩ = ⟨L_{ij}, S(T)_{kl}⟩` with `S(T) = C Tᵗ C⁻¹`.
pub fn verify_l_hopf(pairing: &DualPairing) -> Result<Report> {
    let dim = pairing.dim();
    let n = pairing.n();
    let (ct, ct_inv) = pairing.ct_pair()?;
    let c = &pairing.c;
    let cinv = c.inverse()?;
    let mut rep = Report::default();
    for s in triangular_symbols(dim) {
        let w = FunctionalWord(vec![s]);
        record(&mut rep, pairing.pair(&w, &[]) == l_counit(s, n), || format!("counit of {s}"));
        for m in entry_monomials(dim, 2) {
            let lhs = l_coproduct(s, dim).into_iter().fold(DualElement::zero(n), |acc, (a, b)| {
                &acc + &(&pairing.pair(&FunctionalWord(vec![a]), &m[..1]) * &pairing.pair(&FunctionalWord(vec![b]), &m[1..]))
            });
            record(&mut rep, lhs == pairing.pair(&w, &m), || format!("coproduct of {s} on {}", show(&m)));
        }
        for k in 1..=dim {
            for l in 1..=dim {
                let lhs = l_antipode(s, &ct, &ct_inv)
                    .into_iter()
                    .fold(DualElement::zero(n), |acc, (x, b)| &acc + &(&x * &pairing.value(b, k, l)));
                let mut rhs = DualElement::zero(n);
                for a in 1..=dim {
                    for b in 1..=dim {
                        let x = c.get(k - 1, a - 1) * cinv.get(b - 1, l - 1);
                        if !x.is_zero() {
                            rhs = &rhs + &(&x * &pairing.value(s, b, a));
                        }
                    }
                }
                record(&mut rep, lhs == rhs, || format!("antipode of {s} on T{k}{l}"));
            }
        }
    }
    Ok(rep)
}

/// `⟨w, r⟩ = 0` for every relation and every triangular word of length
/// at most 2.
pub fn verify_well_defined(pairing: &DualPairing, relations: &RelationSet) -> Result<Report> {
    let dim = pairing.dim();
    let mut rep = Report::default();
    for r in &relations.relations {
        let p = &r.poly;
        record(&mut rep, pairing.pair_poly(&FunctionalWord::unit(), p)?.is_zero(), || format!("<1, {}>", r.label));
        for sign in Sign::BOTH {
            let v = pairing.single_symbols_poly(sign, p);
            record(&mut rep, v.is_zero(), || format!("<L{}, {}>", sign.symbol(), r.label));
        }
        for s1 in Sign::BOTH {
            for s2 in Sign::BOTH {
                let pi = pairing.two_fold_poly(s1, s2, p)?;
                let ok = triangular_pairs(dim, s1, s2).all(|(a, b)| {
                    pi.get(flat(dim, a.row, b.row), flat(dim, a.col, b.col)).is_zero()
                });
                record(&mut rep, ok, || format!("<L{}L{}, {}>", s1.symbol(), s2.symbol(), r.label));
            }
        }
    }
    Ok(rep)
}

fn triangular_pairs(dim: usize, s1: Sign, s2: Sign) -> impl Iterator<Item = (LSymbol, LSymbol)> {
    let a: Vec<LSymbol> = triangular_symbols(dim).into_iter().filter(|s| s.sign == s1).collect();
    let b: Vec<LSymbol> = triangular_symbols(dim).into_iter().filter(|s| s.sign == s2).collect();
    a.into_iter().flat_map(move |x| b.clone().into_iter().map(move |y| (x, y)))
}

impl DualPairing {
    /// `(⟨l^{(σ)}_{ij}, p⟩)_{ij}` for a symbol polynomial.
    pub fn single_symbols_poly(&self, sign: Sign, p: &NCPoly) -> Matrix {
        let dim = self.dim();
        let mut out = Matrix::zeros(dim, dim, self.n());
        for (word, c) in p.terms() {
            out = out.add(&self.single_symbols(sign, word.symbols()).scale(c));
        }
        out
    }
}

/// `⟨L⁺_{ij}, ·⟩ = 0` for `i > j` and `⟨L⁻_{ij}, ·⟩ = 0` for `i < j`, on the
/// tables of degree at most `degree`.
pub fn verify_triangularity(pairing: &DualPairing, degree: usize) -> Report {
    let mut rep = Report::default();
    for sign in Sign::BOTH {
        for d in 0..=degree {
            let table = pairing.table(sign, d);
            let ok = table.entries.iter().all(|(_, v)| {
                v.entries().all(|(i, j, x)| x.is_zero() || LSymbol::new(sign, i + 1, j + 1).is_triangular())
            });
            record(&mut rep, ok, || format!("L{} triangular at degree {d}", sign.symbol()));
        }
    }
    rep
}

/// Sparse values of every product `l^{(σ₁)}_{i₁j₁} ⋯ l^{(σ_r)}_{i_rj_r}` on a
/// fixed monomial, keyed by `(i₁…i_r, j₁…j_r)`.
pub type FoldTable = BTreeMap<(Vec<u8>, Vec<u8>), DualElement>;

type FoldMemo = HashMap<(Vec<Sign>, EntryMonomial), Rc<FoldTable>>;

impl DualPairing {
    /// The table of all words with the given sign sequence on `m`, built
    /// through the coproduct with the chosen split.
    pub fn fold_table(&self, signs: &[Sign], m: &[(usize, usize)], it: Iteration) -> FoldTable {
        let mut memo = FoldMemo::new();
        self.fold_memo(signs, m, it, &mut memo).as_ref().clone()
    }

    fn fold_memo(&self, signs: &[Sign], m: &[(usize, usize)], it: Iteration, memo: &mut FoldMemo) -> Rc<FoldTable> {
        let key = (signs.to_vec(), m.to_vec());
        if let Some(t) = memo.get(&key) {
            return t.clone();
        }
        let mut out = FoldTable::new();
        match signs {
            [] => {
                let e = entry_counit(m, self.n());
                if !e.is_zero() {
                    out.insert((Vec::new(), Vec::new()), e);
                }
            }
            [s] => {
                for (i, j, x) in self.single(*s, m).entries() {
                    if !x.is_zero() {
                        out.insert((vec![i as u8 + 1], vec![j as u8 + 1]), x.clone());
                    }
                }
            }
            _ => {
                let (head, tail) = match it {
                    Iteration::Right => signs.split_at(1),
                    Iteration::Left => signs.split_at(signs.len() - 1),
                };
                let mut aux = vec![1usize; m.len()];
                loop {
                    let left: Vec<_> = m.iter().zip(&aux).map(|(&(k, _), &a)| (k, a)).collect();
                    let a = self.fold_memo(head, &left, it, memo);
                    if !a.is_empty() {
                        let right: Vec<_> = m.iter().zip(&aux).map(|(&(_, l), &a)| (a, l)).collect();
                        let b = self.fold_memo(tail, &right, it, memo);
                        for ((ra, ca), x) in a.iter() {
                            for ((rb, cb), y) in b.iter() {
                                let k = ([ra.as_slice(), rb].concat(), [ca.as_slice(), cb].concat());
                                let v = x * y;
                                match out.get_mut(&k) {
                                    Some(e) => *e = &*e + &v,
                                    None => {
                                        out.insert(k, v);
                                    }
                                }
                            }
                        }
                    }
                    if !advance(&mut aux, self.dim()) {
                        break;
                    }
                }
                out.retain(|_, v| !v.is_zero());
            }
        }
        let rc = Rc::new(out);
        memo.insert(key, rc.clone());
        rc
    }
}

/// Left- and right-split evaluations agree for every sign sequence of
/// length `len` on every entry monomial of degree `degree`.
pub fn verify_iteration_oracle(pairing: &DualPairing, len: usize, degree: usize) -> Report {
    let dim = pairing.dim();
    let mut rep = Report::default();
    let mut sign_seqs: Vec<Vec<Sign>> = vec![Vec::new()];
    for _ in 0..len {
        sign_seqs = sign_seqs
            .into_iter()
            .flat_map(|v| Sign::BOTH.into_iter().map(move |s| [v.clone(), vec![s]].concat()))
            .collect();
    }
    let mut left_memo = FoldMemo::new();
    let mut right_memo = FoldMemo::new();
    for signs in &sign_seqs {
        for m in entry_monomials(dim, degree) {
            let a = pairing.fold_memo(signs, &m, Iteration::Left, &mut left_memo);
            let b = pairing.fold_memo(signs, &m, Iteration::Right, &mut right_memo);
            record(&mut rep, a == b, || {
                let s: String = signs.iter().map(Sign::symbol).collect();
                format!("signs {s} on {} left vs right", show(&m))
            });
        }
    }
    rep
}

/// One entry of the formal `L^{(σ)}` pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPatternEntry {
    pub sign: Sign,
    pub row: usize,
    pub col: usize,
    pub t_latex: String,
    pub l_latex: String,
    /// Some weight of the entry contains a nilpotent generator, so the
    /// formal coefficient has no meaning and the pairing defines it.
    pub pairing_defined: bool,
}

fn j_monomial(mask: Mask, inverse: bool) -> String {
    let mut s = String::new();
    for k in 0..16 {
        if mask & (1 << k) != 0 {
            s.push_str(&format!("j_{{{}}}", k + 1));
            if inverse {
                s.push_str("^{-1}");
            }
        }
    }
    s
}

fn decorated(base: &str, deco: &str, row: usize, col: usize) -> String {
    if deco.is_empty() {
        format!("{base}_{{{row}{col}}}")
    } else {
        format!("{deco}{{{base}}}_{{{row}{col}}}")
    }
}

/// The formal weight pattern of `L^{(±)}(j)` mirroring that of `T(j)`:
/// every weight `J_μ` of a nondiagonal entry of `T` becomes `J_μ^{-1}`;
/// diagonal entries keep the weights of `T`. Documentation only.
pub fn formal_l_pattern(t: &GeneratingMatrix) -> Vec<LPatternEntry> {
    let dim = t.dim();
    let mut out = Vec::new();
    for sign in Sign::BOTH {
        for row in 1..=dim {
            for col in 1..=dim {
                if !LSymbol::new(sign, row, col).is_triangular() {
                    continue;
                }
                let weights = t.weights(row, col);
                let render = |base: &str, inverse: bool| {
                    weights
                        .iter()
                        .enumerate()
                        .map(|(d, &mu)| {
                            let deco = LATEX_DECORATIONS[d.min(LATEX_DECORATIONS.len() - 1)];
                            format!("{}{}", j_monomial(mu, inverse), decorated(base, deco, row, col))
                        })
                        .collect::<Vec<_>>()
                        .join("+")
                };
                let nilpotent = weights.iter().any(|&mu| mu != 0);
                out.push(LPatternEntry {
                    sign,
                    row,
                    col,
                    t_latex: render("t", false),
                    l_latex: render("l", row != col),
                    pairing_defined: row != col && nilpotent,
                });
            }
        }
    }
    out
}
