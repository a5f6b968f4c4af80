//! Elements of the nilpotent algebra D_n(ι): finite sums `Σ a_S ι_S` over
//! subsets `S ⊆ {1..n}`, with `ι_k² = 0` and commuting generators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Qi2;
use super::scalar::{render, ScalarExpr};
use crate::error::{Error, Result};

/// Subsets are bitmasks; bit `k-1` stands for `ι_k`.
pub type Mask = u16;

// products over at most this many generators accumulate in a flat table
const DENSE_LIMIT: u8 = 8;

pub const MAX_GENERATORS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualElement {
    n: u8,
    // sorted by mask, no zero coefficients
    terms: Vec<(Mask, ScalarExpr)>,
}

impl DualElement {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_GENERATORS, "at most {MAX_GENERATORS} nilpotent generators");
        DualElement { n: n as u8, terms: Vec::new() }
    }

    pub fn one(n: usize) -> Self {
        DualElement::scalar(n, ScalarExpr::one())
    }

    pub fn int(n: usize, k: i64) -> Self {
        DualElement::scalar(n, ScalarExpr::int(k))
    }

    pub fn constant(n: usize, c: Qi2) -> Self {
        DualElement::scalar(n, ScalarExpr::constant(c))
    }

    pub fn scalar(n: usize, x: ScalarExpr) -> Self {
        DualElement::monomial(n, 0, x)
    }

    pub fn monomial(n: usize, mask: Mask, x: ScalarExpr) -> Self {
        let mut e = DualElement::zero(n);
        assert!(
            n == MAX_GENERATORS || mask >> n == 0,
            "mask {mask:#b} outside {n} generators"
        );
        if !x.is_zero() {
            e.terms.push((mask, x));
        }
        e
    }

    /// The generator `ι_k`, `1 ≤ k ≤ n`.
    pub fn iota(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange(format!("ι_{k} with n = {n}")));
        }
        Ok(DualElement::monomial(n, 1 << (k - 1), ScalarExpr::one()))
    }

    pub fn from_terms<I: IntoIterator<Item = (Mask, ScalarExpr)>>(n: usize, it: I) -> Self {
        let mut acc: BTreeMap<Mask, ScalarExpr> = BTreeMap::new();
        for (m, x) in it {
            add_into(&mut acc, m, x);
        }
        let mut e = DualElement::zero(n);
        e.terms = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        e
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn terms(&self) -> &[(Mask, ScalarExpr)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(0, x)] if x.is_one())
    }

    /// The ∅-coefficient `a₀`.
    pub fn numeric_part(&self) -> ScalarExpr {
        match self.terms.first() {
            Some((0, x)) => x.clone(),
            _ => ScalarExpr::zero(),
        }
    }

    pub fn coefficient(&self, mask: Mask) -> ScalarExpr {
        self.terms
            .iter()
            .find(|(m, _)| *m == mask)
            .map(|(_, x)| x.clone())
            .unwrap_or_default()
    }

    /// Union of all masks in the support.
    pub fn support_mask(&self) -> Mask {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m)
    }

    fn check_n(&self, o: &DualElement) -> Result<()> {
        if self.n != o.n {
            return Err(Error::Dimension(format!(
                "D_{} element combined with D_{} element",
                self.n, o.n
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &DualElement) -> Result<Self> {
        self.check_n(o)?;
        let mut acc: BTreeMap<Mask, ScalarExpr> = self.terms.iter().cloned().collect();
        for (m, x) in &o.terms {
            add_into(&mut acc, *m, x.clone());
        }
        let mut e = DualElement::zero(self.n());
        e.terms = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        Ok(e)
    }

    pub fn try_mul(&self, o: &DualElement) -> Result<Self> {
        self.check_n(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(DualElement::zero(self.n()));
        }
        if self.is_one() {
            return Ok(o.clone());
        }
        if o.is_one() {
            return Ok(self.clone());
        }
        let mut e = DualElement::zero(self.n());
        if self.n <= DENSE_LIMIT {
            let mut acc: Vec<Option<ScalarExpr>> = vec![None; 1 << self.n];
            for (ma, xa) in &self.terms {
                for (mb, xb) in &o.terms {
                    if ma & mb != 0 {
                        continue;
                    }
                    let p = xa * xb;
                    let slot = &mut acc[(ma | mb) as usize];
                    *slot = Some(match slot.take() {
                        Some(y) => &y + &p,
                        None => p,
                    });
                }
            }
            e.terms = acc
                .into_iter()
                .enumerate()
                .filter_map(|(m, x)| x.filter(|x| !x.is_zero()).map(|x| (m as Mask, x)))
                .collect();
            return Ok(e);
        }
        let mut acc: BTreeMap<Mask, ScalarExpr> = BTreeMap::new();
        for (ma, xa) in &self.terms {
            for (mb, xb) in &o.terms {
                if ma & mb != 0 {
                    continue;
                }
                add_into(&mut acc, ma | mb, xa * xb);
            }
        }
        e.terms = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        Ok(e)
    }

    pub fn scale(&self, x: &ScalarExpr) -> Self {
        DualElement::from_terms(self.n(), self.terms.iter().map(|(m, y)| (*m, y * x)))
    }

    /// Invertible iff the ∅-part is a unit of the scalar ring.
    pub fn is_unit(&self) -> bool {
        self.numeric_part().is_unit()
    }

    /// `a⁻¹ = a₀⁻¹ Σ_k (-N a₀⁻¹)^k`, which terminates since `N^{n+1} = 0`.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = self.numeric_part();
        let inv0 = a0
            .inverse()
            .ok_or_else(|| Error::NotInvertible(format!("∅-part {a0} is not a unit")))?;
        let n = self.n();
        let inv0 = DualElement::scalar(n, inv0);
        let nil = DualElement {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| *m != 0).cloned().collect(),
        };
        let step = -&(&nil * &inv0);
        let mut sum = DualElement::one(n);
        let mut power = DualElement::one(n);
        for _ in 0..n {
            power = &power * &step;
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(&inv0 * &sum)
    }

    /// True when every subset in the support contains `mask`, i.e. the
    /// element is a multiple of `ι_mask`.
    pub fn divisible_by_mask(&self, mask: Mask) -> bool {
        self.terms.iter().all(|(m, _)| m & mask == mask)
    }

    /// `self / ι_mask`, choosing the representative with no subset meeting
    /// `mask`. Requires [`divisible_by_mask`](Self::divisible_by_mask).
    pub fn strip_mask(&self, mask: Mask) -> Self {
        debug_assert!(self.divisible_by_mask(mask));
        DualElement {
            n: self.n,
            terms: self.terms.iter().map(|(m, x)| (m & !mask, x.clone())).collect(),
        }
    }

    /// Intersection of all masks in the support (empty element: 0).
    pub fn common_mask(&self) -> Mask {
        let mut it = self.terms.iter().map(|(m, _)| *m);
        match it.next() {
            None => 0,
            Some(first) => it.fold(first, |acc, m| acc & m),
        }
    }

    /// Some `b` with `b · divisor = self`, if the divisor is a unit times a
    /// product of generators and the quotient exists; otherwise `None`.
    pub fn divide(&self, divisor: &DualElement) -> Option<Self> {
        if self.n != divisor.n || divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(DualElement::zero(self.n()));
        }
        if divisor.is_unit() {
            return Some(self * &divisor.inverse().ok()?);
        }
        let common = divisor.common_mask();
        if common != 0 {
            let unit = divisor.strip_mask(common);
            if unit.is_unit() && self.divisible_by_mask(common) {
                let q = &self.strip_mask(common) * &unit.inverse().ok()?;
                // anything meeting `common` is annihilated by ι_common
                let q = DualElement {
                    n: self.n,
                    terms: q.terms.into_iter().filter(|(m, _)| m & common == 0).collect(),
                };
                return Some(q);
            }
            return None;
        }
        // scalar divisor that is not a unit: divide coefficientwise
        if divisor.terms.len() == 1 && divisor.terms[0].0 == 0 {
            let d = &divisor.terms[0].1;
            let terms: Option<Vec<_>> = self
                .terms
                .iter()
                .map(|(m, x)| x.div_exact(d).map(|q| (*m, q)))
                .collect();
            return Some(DualElement::from_terms(self.n(), terms?));
        }
        None
    }

    pub fn map_scalars<F: Fn(&ScalarExpr) -> ScalarExpr>(&self, f: F) -> Self {
        DualElement::from_terms(self.n(), self.terms.iter().map(|(m, x)| (*m, f(x))))
    }

    /// Evaluate `q = 1` in every coefficient.
    pub fn at_q_one(&self) -> Self {
        self.map_scalars(ScalarExpr::at_q_one)
    }

    pub fn at_v_zero(&self) -> Self {
        self.map_scalars(ScalarExpr::at_v_zero)
    }

    pub fn to_latex(&self) -> String {
        render_dual(self, true)
    }
}

fn add_into(acc: &mut BTreeMap<Mask, ScalarExpr>, m: Mask, x: ScalarExpr) {
    if x.is_zero() {
        return;
    }
    match acc.get_mut(&m) {
        Some(y) => *y = &*y + &x,
        None => {
            acc.insert(m, x);
        }
    }
}

pub(crate) fn mask_indices(mask: Mask) -> Vec<usize> {
    (0..MAX_GENERATORS).filter(|k| mask >> k & 1 == 1).map(|k| k + 1).collect()
}

fn render_dual(e: &DualElement, latex: bool) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, x)) in e.terms.iter().enumerate() {
        let iotas: Vec<String> = mask_indices(*m)
            .into_iter()
            .map(|k| if latex { format!("\\iota_{{{k}}}") } else { format!("iota{k}") })
            .collect();
        let body = render(x, latex);
        let single = x.terms().len() == 1;
        let (neg, body) = match body.strip_prefix('-') {
            Some(rest) if single && !rest.starts_with('(') => (true, rest.to_string()),
            _ => (false, body),
        };
        if idx > 0 {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        let sep = if latex { " " } else { "*" };
        let term = if iotas.is_empty() {
            body
        } else if body == "1" {
            iotas.join(sep)
        } else if single {
            format!("{body}{sep}{}", iotas.join(sep))
        } else {
            format!("({body}){sep}{}", iotas.join(sep))
        };
        out.push_str(&term);
    }
    out
}

impl fmt::Display for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_dual(self, false))
    }
}

impl Add for &DualElement {
    type Output = DualElement;
    fn add(self, o: &DualElement) -> DualElement {
        self.try_add(o).expect("nilpotent generator count mismatch")
    }
}

impl Sub for &DualElement {
    type Output = DualElement;
    fn sub(self, o: &DualElement) -> DualElement {
        self.try_add(&-o).expect("nilpotent generator count mismatch")
    }
}

impl Neg for &DualElement {
    type Output = DualElement;
    fn neg(self) -> DualElement {
        DualElement {
            n: self.n,
            terms: self.terms.iter().map(|(m, x)| (*m, -x)).collect(),
        }
    }
}

impl Mul for &DualElement {
    type Output = DualElement;
    fn mul(self, o: &DualElement) -> DualElement {
        self.try_mul(o).expect("nilpotent generator count mismatch")
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { (&self).$m(&o) }
        }
    )*};
}
forward_owned!(DualElement, Add add, Sub sub, Mul mul);

impl Neg for DualElement {
    type Output = DualElement;
    fn neg(self) -> DualElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::field::rat;

    fn iota(n: usize, k: usize) -> DualElement {
        DualElement::iota(n, k).unwrap()
    }

    fn c(n: usize, k: i64) -> DualElement {
        DualElement::int(n, k)
    }

    #[test]
    fn dual_number_product() {
        // (a0 + a1 ι1)(b0 + b1 ι1) = a0 b0 + (a0 b1 + a1 b0) ι1
        let a = &c(1, 3) + &(&c(1, 5) * &iota(1, 1));
        let b = &c(1, 2) + &(&c(1, 7) * &iota(1, 1));
        let expected = &c(1, 6) + &(&c(1, 3 * 7 + 5 * 2) * &iota(1, 1));
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn general_element_of_d2_has_four_parts() {
        let a = DualElement::from_terms(
            2,
            (0..4u16).map(|m| (m, ScalarExpr::int(m as i64 + 1))),
        );
        let masks: Vec<Mask> = a.terms().iter().map(|(m, _)| *m).collect();
        assert_eq!(masks, vec![0, 0b01, 0b10, 0b11]);
        assert_eq!(a.to_string(), "1 + 2*iota1 + 3*iota2 + 4*iota1*iota2");
    }

    #[test]
    fn repeated_generator_vanishes() {
        let i12 = &iota(2, 1) * &iota(2, 2);
        assert!((&i12 * &iota(2, 1)).is_zero());
    }

    #[test]
    fn inverse_examples() {
        let a = &c(1, 1) + &iota(1, 1);
        assert_eq!(a.inverse().unwrap(), &c(1, 1) - &iota(1, 1));
        let two = c(1, 2);
        assert_eq!(two.inverse().unwrap(), DualElement::scalar(1, ScalarExpr::rational(rat(1, 2))));
        // 1 + ι1 + ι2  ->  1 - ι1 - ι2 + 2 ι1ι2, confirmed by multiplying back
        let b = &(&c(2, 1) + &iota(2, 1)) + &iota(2, 2);
        let binv = b.inverse().unwrap();
        let expected = &(&(&c(2, 1) - &iota(2, 1)) - &iota(2, 2)) + &(&c(2, 2) * &(&iota(2, 1) * &iota(2, 2)));
        assert_eq!(binv, expected);
        assert!((&b * &binv).is_one());
    }

    #[test]
    fn non_invertible() {
        assert!(matches!(iota(2, 1).inverse(), Err(Error::NotInvertible(_))));
        assert!(DualElement::zero(2).inverse().is_err());
    }

    #[test]
    fn mismatched_generators() {
        assert!(matches!(c(1, 1).try_mul(&c(2, 1)), Err(Error::Dimension(_))));
        assert!(DualElement::iota(2, 3).is_err());
    }

    #[test]
    fn division_by_nilpotent_monomial() {
        let n = 2;
        let a = &(&c(n, 3) * &iota(n, 1)) + &(&c(n, 5) * &(&iota(n, 1) * &iota(n, 2)));
        let d = &c(n, 2) * &iota(n, 1);
        let q = a.divide(&d).unwrap();
        assert_eq!(&q * &d, a);
        // ι2 does not divide ι1
        assert!(iota(n, 1).divide(&iota(n, 2)).is_none());
    }
}
