//! The scalar field ℚ(i, √2).
//!
//! An element is stored as `a + b·i + c·√2 + d·i√2` with rational parts.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Qi2 {
    re: Rational,
    im: Rational,
    re_sqrt2: Rational,
    im_sqrt2: Rational,
}

// Gaussian-rational helpers on pairs (re, im).
fn gmul(a: (&Rational, &Rational), b: (&Rational, &Rational)) -> (Rational, Rational) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

impl Qi2 {
    pub fn new(re: Rational, im: Rational, re_sqrt2: Rational, im_sqrt2: Rational) -> Self {
        Qi2 { re, im, re_sqrt2, im_sqrt2 }
    }

    pub fn zero() -> Self {
        Qi2::new(Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Qi2::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Qi2::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Qi2::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Qi2::new(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    pub fn sqrt2() -> Self {
        Qi2::new(Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }
    pub fn im(&self) -> &Rational {
        &self.im
    }
    pub fn re_sqrt2(&self) -> &Rational {
        &self.re_sqrt2
    }
    pub fn im_sqrt2(&self) -> &Rational {
        &self.im_sqrt2
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.re_sqrt2.is_zero() && self.im_sqrt2.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero() && self.re_sqrt2.is_zero() && self.im_sqrt2.is_zero()
    }

    /// `Some(r)` when the element is a plain rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.im.is_zero() && self.re_sqrt2.is_zero() && self.im_sqrt2.is_zero() {
            Some(&self.re)
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Qi2::new(&self.re * r, &self.im * r, &self.re_sqrt2 * r, &self.im_sqrt2 * r)
    }

    /// Multiplicative inverse; `None` only for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // x = p + q√2 with p, q Gaussian; x(p - q√2) = p² - 2q² =: m.
        let p = (&self.re, &self.im);
        let q = (&self.re_sqrt2, &self.im_sqrt2);
        let p2 = gmul(p, p);
        let q2 = gmul(q, q);
        let two = rat(2, 1);
        let m = (p2.0 - &two * q2.0, p2.1 - &two * q2.1);
        let norm = &m.0 * &m.0 + &m.1 * &m.1;
        let minv = (&m.0 / &norm, -(&m.1 / &norm));
        let a = gmul(p, (&minv.0, &minv.1));
        let b = gmul(q, (&minv.0, &minv.1));
        Some(Qi2::new(a.0, a.1, -b.0, -b.1))
    }
}

impl Qi2 {
    fn parts(&self) -> [&Rational; 4] {
        [&self.re, &self.im, &self.re_sqrt2, &self.im_sqrt2]
    }

    fn from_parts(p: [Rational; 4]) -> Qi2 {
        let [re, im, re_sqrt2, im_sqrt2] = p;
        Qi2 { re, im, re_sqrt2, im_sqrt2 }
    }
}

fn add_parts(a: &Qi2, b: &Qi2, negate: bool) -> Qi2 {
    let (pa, pb) = (a.parts(), b.parts());
    let parts = std::array::from_fn(|k| match (pa[k].is_zero(), pb[k].is_zero()) {
        (_, true) => pa[k].clone(),
        (true, false) if negate => -pb[k],
        (true, false) => pb[k].clone(),
        (false, false) if negate => pa[k] - pb[k],
        (false, false) => pa[k] + pb[k],
    });
    Qi2::from_parts(parts)
}

impl Add for &Qi2 {
    type Output = Qi2;
    fn add(self, o: &Qi2) -> Qi2 {
        add_parts(self, o, false)
    }
}

impl Sub for &Qi2 {
    type Output = Qi2;
    fn sub(self, o: &Qi2) -> Qi2 {
        add_parts(self, o, true)
    }
}

impl Neg for &Qi2 {
    type Output = Qi2;
    fn neg(self) -> Qi2 {
        Qi2::new(-&self.re, -&self.im, -&self.re_sqrt2, -&self.im_sqrt2)
    }
}

// Basis 1, i, √2, i√2: e_a e_b = sign · factor · e_{a^b}, with the index
// read as bits (bit 0 = i, bit 1 = √2).
const PRODUCT_SCALE: [[i64; 4]; 4] = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, 2, 2], [1, -1, 2, -2]];

impl Mul for &Qi2 {
    type Output = Qi2;
    fn mul(self, o: &Qi2) -> Qi2 {
        if let (Some(a), Some(b)) = (self.as_rational(), o.as_rational()) {
            return Qi2::from_rational(a * b);
        }
        let (pa, pb) = (self.parts(), o.parts());
        let mut out: [Rational; 4] = Default::default();
        for a in 0..4 {
            if pa[a].is_zero() {
                continue;
            }
            for b in 0..4 {
                if pb[b].is_zero() {
                    continue;
                }
                let mut p = pa[a] * pb[b];
                let f = PRODUCT_SCALE[a][b];
                if f != 1 {
                    p = p * Rational::from_integer(BigInt::from(f));
                }
                let slot = &mut out[a ^ b];
                *slot = if slot.is_zero() { p } else { &*slot + &p };
            }
        }
        Qi2::from_parts(out)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders the field element in the basis 1, i, √2, i√2. `unit` names are
/// supplied by the caller so the same routine serves text and LaTeX output.
pub(crate) fn render_qi2(x: &Qi2, units: [&str; 3], frac: fn(&Rational) -> String) -> String {
    let parts = [
        (&x.re, ""),
        (&x.im, units[0]),
        (&x.re_sqrt2, units[1]),
        (&x.im_sqrt2, units[2]),
    ];
    let nonzero: Vec<_> = parts.iter().filter(|(r, _)| !r.is_zero()).collect();
    if nonzero.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (r, unit)) in nonzero.iter().enumerate() {
        let neg = r.is_negative();
        let mag = r.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { "-" } else { "+" });
        }
        if unit.is_empty() {
            out.push_str(&frac(&mag));
        } else if mag.is_one() {
            out.push_str(unit);
        } else {
            out.push_str(&frac(&mag));
            out.push_str(if units[0] == "i" { "*" } else { "" });
            out.push_str(unit);
        }
    }
    if nonzero.len() > 1 {
        format!("({out})")
    } else {
        out
    }
}

pub(crate) fn latex_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

pub(crate) fn text_rational(r: &Rational) -> String {
    fmt_rational(r)
}

impl Qi2 {
    pub fn to_latex(&self) -> String {
        render_qi2(self, ["i", "\\sqrt{2}", "i\\sqrt{2}"], latex_rational)
    }
}

impl fmt::Display for Qi2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_qi2(self, ["i", "sqrt2", "i*sqrt2"], text_rational))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squares_to_two() {
        let r = Qi2::sqrt2();
        assert_eq!(&r * &r, Qi2::from_int(2));
        let i = Qi2::i();
        assert_eq!(&i * &i, Qi2::from_int(-1));
        let ir = &i * &r;
        assert_eq!(&ir * &ir, Qi2::from_int(-2));
    }

    #[test]
    fn inverse_roundtrip() {
        let x = Qi2::new(rat(1, 2), rat(-3, 1), rat(2, 5), rat(1, 7));
        let y = x.inverse().unwrap();
        assert!((&x * &y).is_one());
        assert!(Qi2::zero().inverse().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(Qi2::from_rational(rat(-1, 2)).to_string(), "-1/2");
        assert_eq!(Qi2::i().to_string(), "i");
        let x = &Qi2::one() + &Qi2::i();
        assert_eq!(x.to_string(), "(1+i)");
        let h = Qi2::sqrt2().scale(&rat(1, 2));
        assert_eq!(h.to_string(), "1/2*sqrt2");
    }
}
