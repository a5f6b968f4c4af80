//! Contraction signatures `j = (j_1, …, j_{N-1})` with `j_r ∈ {1, ι_r}`,
//! the weights `J_{μν}`, and the deformation substitution `z = Jv`.

use std::fmt;
use std::str::FromStr;

use super::dual::{DualElement, Mask, MAX_GENERATORS};
use super::scalar::ScalarExpr;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    One,
    Iota,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JSignature {
    slots: Vec<Slot>,
}

impl JSignature {
    pub fn new(slots: Vec<Slot>) -> Result<Self> {
        if slots.len() > MAX_GENERATORS {
            return Err(Error::Unsupported(format!(
                "{} contraction slots; at most {MAX_GENERATORS}",
                slots.len()
            )));
        }
        Ok(JSignature { slots })
    }

    /// The undeformed signature `(1, …, 1)` for matrix size `dim`.
    pub fn all_one(dim: usize) -> Self {
        JSignature { slots: vec![Slot::One; dim.saturating_sub(1)] }
    }

    /// Every signature for matrix size `dim`, in binary counting order
    /// (slot 1 is the least significant).
    pub fn enumerate(dim: usize) -> Vec<JSignature> {
        let n = dim.saturating_sub(1);
        (0..1u32 << n)
            .map(|bits| JSignature {
                slots: (0..n)
                    .map(|r| if bits >> r & 1 == 1 { Slot::Iota } else { Slot::One })
                    .collect(),
            })
            .collect()
    }

    /// Number of slots, which is also the number of nilpotent generators.
    pub fn n(&self) -> usize {
        self.slots.len()
    }

    /// Matrix size `N = n + 1`.
    pub fn dim(&self) -> usize {
        self.slots.len() + 1
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn is_all_one(&self) -> bool {
        self.slots.iter().all(|s| *s == Slot::One)
    }

    /// Mask of the nilpotent slots `r` with `μ ≤ r < ν` (1-based).
    pub fn iota_mask(&self, mu: usize, nu: usize) -> Mask {
        let mut m = 0;
        for r in mu..nu {
            if self.slots[r - 1] == Slot::Iota {
                m |= 1 << (r - 1);
            }
        }
        m
    }

    /// `J_{μν} = Π_{r=μ}^{ν-1} j_r`, equal to 1 when `μ ≥ ν`.
    pub fn weight(&self, mu: usize, nu: usize) -> DualElement {
        DualElement::monomial(self.n(), self.iota_mask(mu, nu), ScalarExpr::one())
    }

    /// `J̃_{kp}`: `J_{kp}` for `k < p`, `J_{pk}` otherwise.
    pub fn sym_mask(&self, k: usize, p: usize) -> Mask {
        if k < p {
            self.iota_mask(k, p)
        } else {
            self.iota_mask(p, k)
        }
    }

    pub fn sym_weight(&self, k: usize, p: usize) -> DualElement {
        DualElement::monomial(self.n(), self.sym_mask(k, p), ScalarExpr::one())
    }

    /// Mask of `J = J_{1N}`.
    pub fn full_mask(&self) -> Mask {
        self.iota_mask(1, self.dim())
    }
}

impl fmt::Display for JSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .slots
            .iter()
            .map(|s| match s {
                Slot::One => "1",
                Slot::Iota => "iota",
            })
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for JSignature {
    type Err = Error;

    /// Parses `"1,iota,1"`; the empty string is the signature of `N = 1`.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return JSignature::new(Vec::new());
        }
        let slots = s
            .split(',')
            .map(|p| match p.trim() {
                "1" | "one" => Ok(Slot::One),
                "iota" | "ι" => Ok(Slot::Iota),
                other => Err(Error::Parse(format!("unknown signature slot `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        JSignature::new(slots)
    }
}

/// How the formal parameter `q` is realized in a computation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Deformation {
    /// `q` stays a formal Laurent variable.
    Formal,
    /// `q = 1`.
    Classical,
    /// `q = exp(Jv)` truncated by `J² = 0`.
    Contracted(JSignature),
}

impl Deformation {
    /// Formal when every slot is 1, contracted otherwise.
    pub fn for_signature(j: &JSignature) -> Self {
        if j.is_all_one() {
            Deformation::Formal
        } else {
            Deformation::Contracted(j.clone())
        }
    }

    /// The realization of `q^{e/2}` in `D_n`.
    pub fn q_half_pow(&self, n: usize, e: i32) -> DualElement {
        match self {
            Deformation::Formal => DualElement::scalar(n, ScalarExpr::s_pow(e)),
            Deformation::Classical => DualElement::one(n),
            Deformation::Contracted(j) => specialize_q(&ScalarExpr::s_pow(e), j),
        }
    }

    /// Apply the realization to an element built with formal `q`.
    pub fn apply(&self, x: &DualElement) -> DualElement {
        match self {
            Deformation::Formal => x.clone(),
            Deformation::Classical => x.at_q_one(),
            Deformation::Contracted(j) => specialize_dual(x, j),
        }
    }
}

/// `specialize_q`: replace `q^a` by `1 + a·Jv`, exact because `(Jv)² = 0`.
/// With every slot equal to 1 the expression is returned unchanged.
pub fn specialize_q(x: &ScalarExpr, j: &JSignature) -> DualElement {
    specialize_dual(&DualElement::scalar(j.n(), x.clone()), j)
}

/// [`specialize_q`] applied to every coefficient of a `D_n` element.
pub fn specialize_dual(x: &DualElement, j: &JSignature) -> DualElement {
    if j.is_all_one() {
        return x.clone();
    }
    let jm = j.full_mask();
    let mut out = Vec::with_capacity(2 * x.terms().len());
    for (m, c) in x.terms() {
        let (base, slope) = c.contraction_parts();
        out.push((*m, base));
        if m & jm == 0 {
            out.push((m | jm, slope));
        }
    }
    DualElement::from_terms(x.n(), out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> JSignature {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let j = sig("iota,1, iota");
        assert_eq!(j.slots(), &[Slot::Iota, Slot::One, Slot::Iota]);
        assert_eq!(j.to_string(), "iota,1,iota");
        assert!("1,x".parse::<JSignature>().is_err());
        // the imaginary classical value is outside the quantized domain
        assert!("1,i".parse::<JSignature>().is_err());
        assert_eq!(JSignature::enumerate(4).len(), 8);
    }

    #[test]
    fn weights() {
        let j = sig("iota,iota");
        assert_eq!(j.weight(1, 3).to_string(), "iota1*iota2");
        assert!(j.weight(3, 1).is_one());
        let one = sig("1,1");
        assert!(one.weight(1, 3).is_one());
        let sq = &j.weight(1, 2) * &j.weight(1, 2);
        assert!(sq.is_zero());
    }

    #[test]
    fn specialize_examples() {
        let j = sig("iota");
        let q2 = specialize_q(&ScalarExpr::q_pow(2), &j);
        assert_eq!(q2.to_string(), "1 + 2*v*iota1");

        let j = sig("iota,1");
        let lam = specialize_q(&ScalarExpr::lambda(), &j);
        assert_eq!(lam.to_string(), "2*v*iota1");

        let j = sig("1,1");
        let s = specialize_q(&ScalarExpr::s_pow(1), &j);
        assert_eq!(s, DualElement::scalar(2, ScalarExpr::s_pow(1)));
    }
}
