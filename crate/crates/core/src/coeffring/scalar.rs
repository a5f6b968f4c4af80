//! Laurent polynomials in `s = q^{1/2}`, polynomial in `v`, over ℚ(i, √2).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{rat, Qi2, Rational};

/// Largest power of `v` any product may produce. Every deformation term
/// carries a nilpotent factor `Jv`, so real computations never get past 1;
/// hitting the cap means a bug upstream.
pub const V_DEGREE_CAP: u32 = 4;

/// Exponents of a monomial `s^s · v^v` (so `q^a` has `s = 2a`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub s: i32,
    pub v: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScalarExpr {
    // sorted by monomial, no zero coefficients
    terms: Vec<(Mono, Qi2)>,
}

impl ScalarExpr {
    pub fn zero() -> Self {
        ScalarExpr { terms: Vec::new() }
    }

    pub fn one() -> Self {
        ScalarExpr::constant(Qi2::one())
    }

    pub fn constant(c: Qi2) -> Self {
        ScalarExpr::monomial(Mono { s: 0, v: 0 }, c)
    }

    pub fn rational(r: Rational) -> Self {
        ScalarExpr::constant(Qi2::from_rational(r))
    }

    pub fn int(n: i64) -> Self {
        ScalarExpr::constant(Qi2::from_int(n))
    }

    pub fn monomial(m: Mono, c: Qi2) -> Self {
        if c.is_zero() {
            ScalarExpr::zero()
        } else {
            ScalarExpr { terms: vec![(m, c)] }
        }
    }

    /// `s^e`, i.e. `q^{e/2}`.
    pub fn s_pow(e: i32) -> Self {
        ScalarExpr::monomial(Mono { s: e, v: 0 }, Qi2::one())
    }

    /// `q^a` for integer `a`.
    pub fn q_pow(a: i32) -> Self {
        ScalarExpr::s_pow(2 * a)
    }

    pub fn v() -> Self {
        ScalarExpr::monomial(Mono { s: 0, v: 1 }, Qi2::one())
    }

    /// `λ = q - q^{-1}`.
    pub fn lambda() -> Self {
        &ScalarExpr::q_pow(1) - &ScalarExpr::q_pow(-1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Qi2)>>(it: I) -> Self {
        let mut acc: BTreeMap<Mono, Qi2> = BTreeMap::new();
        for (m, c) in it {
            accumulate(&mut acc, m, c);
        }
        ScalarExpr::from_map(acc)
    }

    fn from_map(acc: BTreeMap<Mono, Qi2>) -> Self {
        ScalarExpr {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Mono, Qi2)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mono { s: 0, v: 0 } && self.terms[0].1.is_one()
    }

    /// The coefficient when the expression is a constant of ℚ(i, √2).
    pub fn as_constant(&self) -> Option<Qi2> {
        match self.terms.as_slice() {
            [] => Some(Qi2::zero()),
            [(Mono { s: 0, v: 0 }, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn v_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.v).max().unwrap_or(0)
    }

    pub fn is_v_free(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.v == 0)
    }

    pub fn scale(&self, c: &Qi2) -> Self {
        if c.is_zero() {
            return ScalarExpr::zero();
        }
        ScalarExpr {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    /// Units of the ring are the nonzero monomials `c·s^e` without `v`.
    pub fn is_unit(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, _)] if m.v == 0)
    }

    pub fn inverse(&self) -> Option<Self> {
        match self.terms.as_slice() {
            [(m, c)] if m.v == 0 => Some(ScalarExpr::monomial(
                Mono { s: -m.s, v: 0 },
                c.inverse()?,
            )),
            _ => None,
        }
    }

    /// Exact quotient `self / d` when it exists in the ring and can be found
    /// by monomial division or by Laurent long division in `s` when the
    /// divisor is free of `v`.
    pub fn div_exact(&self, d: &ScalarExpr) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(ScalarExpr::zero());
        }
        if let [(dm, dc)] = d.terms.as_slice() {
            let inv = dc.inverse()?;
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if m.v < dm.v {
                    return None;
                }
                out.push((Mono { s: m.s - dm.s, v: m.v - dm.v }, c * &inv));
            }
            return Some(ScalarExpr::from_terms(out));
        }
        if !d.is_v_free() {
            return None;
        }
        // a v-free divisor acts on each power of v separately
        let mut slices: BTreeMap<u32, Vec<(Mono, Qi2)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            slices.entry(m.v).or_default().push((Mono { s: m.s, v: 0 }, c.clone()));
        }
        let mut out = Vec::new();
        for (v, terms) in slices {
            let q = laurent_div(&ScalarExpr { terms }, d)?;
            out.extend(q.terms.into_iter().map(|(m, c)| (Mono { s: m.s, v }, c)));
        }
        Some(ScalarExpr::from_terms(out))
    }

    /// Evaluate at `q = 1` (so `s = 1`); `v` is kept.
    pub fn at_q_one(&self) -> Self {
        ScalarExpr::from_terms(self.terms.iter().map(|(m, c)| (Mono { s: 0, v: m.v }, c.clone())))
    }

    /// Drop every term containing `v`.
    pub fn at_v_zero(&self) -> Self {
        ScalarExpr {
            terms: self.terms.iter().filter(|(m, _)| m.v == 0).cloned().collect(),
        }
    }

    /// Split into the value at `s = 1` and the first derivative in the
    /// exponent, `Σ c·(e/2)·v^b`; these are exactly the two pieces
    /// `s^e ↦ 1 + (e/2)·Jv` produces.
    pub(crate) fn contraction_parts(&self) -> (ScalarExpr, ScalarExpr) {
        let base = self.at_q_one();
        let slope = ScalarExpr::from_terms(self.terms.iter().map(|(m, c)| {
            (Mono { s: 0, v: m.v + 1 }, c.scale(&rat(m.s as i64, 2)))
        }));
        (base, slope)
    }

    pub fn to_latex(&self) -> String {
        render(self, true)
    }
}

fn accumulate(acc: &mut BTreeMap<Mono, Qi2>, m: Mono, c: Qi2) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&m) {
        Some(x) => *x = &*x + &c,
        None => {
            acc.insert(m, c);
        }
    }
}

fn laurent_div(num: &ScalarExpr, den: &ScalarExpr) -> Option<ScalarExpr> {
    // dense coefficient vectors, ascending powers of s
    let dense = |x: &ScalarExpr| -> (i32, Vec<Qi2>) {
        let lo = x.terms.first().map(|t| t.0.s).unwrap_or(0);
        let hi = x.terms.last().map(|t| t.0.s).unwrap_or(0);
        let mut v = vec![Qi2::zero(); (hi - lo + 1) as usize];
        for (m, c) in &x.terms {
            v[(m.s - lo) as usize] = c.clone();
        }
        (lo, v)
    };
    let (nlo, mut n) = dense(num);
    let (dlo, d) = dense(den);
    if n.len() < d.len() {
        return None;
    }
    let lead_inv = d.last()?.inverse()?;
    let qlen = n.len() - d.len() + 1;
    let mut q = vec![Qi2::zero(); qlen];
    for k in (0..qlen).rev() {
        let top = &n[k + d.len() - 1] * &lead_inv;
        if top.is_zero() {
            continue;
        }
        for (i, dc) in d.iter().enumerate() {
            n[k + i] = &n[k + i] - &(&top * dc);
        }
        q[k] = top;
    }
    if n.iter().any(|c| !c.is_zero()) {
        return None;
    }
    let shift = nlo - dlo;
    Some(ScalarExpr::from_terms(
        q.into_iter()
            .enumerate()
            .map(|(k, c)| (Mono { s: k as i32 + shift, v: 0 }, c)),
    ))
}

impl Add for &ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, o: &ScalarExpr) -> ScalarExpr {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Less => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*mb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&o.terms[j..]);
        ScalarExpr { terms: out }
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Sub for &ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, o: &ScalarExpr) -> ScalarExpr {
        self + &(-o)
    }
}

impl Mul for &ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, o: &ScalarExpr) -> ScalarExpr {
        if self.is_zero() || o.is_zero() {
            return ScalarExpr::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        if self.terms.len() == 1 && o.terms.len() == 1 {
            let ((ma, ca), (mb, cb)) = (&self.terms[0], &o.terms[0]);
            let v = ma.v + mb.v;
            assert!(v <= V_DEGREE_CAP, "internal error: v-degree {v} exceeds cap {V_DEGREE_CAP}");
            return ScalarExpr::monomial(Mono { s: ma.s + mb.s, v }, ca * cb);
        }
        let mut acc = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let v = ma.v + mb.v;
                assert!(
                    v <= V_DEGREE_CAP,
                    "internal error: v-degree {v} exceeds cap {V_DEGREE_CAP}"
                );
                accumulate(&mut acc, Mono { s: ma.s + mb.s, v }, ca * cb);
            }
        }
        ScalarExpr::from_map(acc)
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
forward_owned!(ScalarExpr, Add add, Sub sub, Mul mul);

fn render_mono(m: &Mono, latex: bool) -> String {
    let mut parts = Vec::new();
    if m.s != 0 {
        let exp = if m.s % 2 == 0 {
            (m.s / 2).to_string()
        } else if latex {
            format!("{}/2", m.s)
        } else {
            format!("({}/2)", m.s)
        };
        if exp == "1" {
            parts.push("q".to_string());
        } else if latex {
            parts.push(format!("q^{{{exp}}}"));
        } else {
            parts.push(format!("q^{exp}"));
        }
    }
    if m.v == 1 {
        parts.push("v".to_string());
    } else if m.v > 1 {
        parts.push(if latex { format!("v^{{{}}}", m.v) } else { format!("v^{}", m.v) });
    }
    parts.join(if latex { " " } else { "*" })
}

pub(crate) fn render(x: &ScalarExpr, latex: bool) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in x.terms.iter().enumerate() {
        let mono = render_mono(m, latex);
        let coeff = if latex {
            c.to_latex()
        } else {
            c.to_string()
        };
        let (neg, mag) = match coeff.strip_prefix('-') {
            Some(rest) if !rest.starts_with('(') => (true, rest.to_string()),
            _ => (false, coeff),
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let term = match (mag.as_str(), mono.is_empty()) {
            (_, true) => mag.clone(),
            ("1", false) => mono,
            (_, false) if latex => format!("{mag} {mono}"),
            (_, false) => format!("{mag}*{mono}"),
        };
        out.push_str(&term);
    }
    out
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, false))
    }
}
