//! Noncommutative polynomials over `D_n` in abstract generator symbols,
//! with tensor-copy labels, rewriting modulo relations, and explicit
//! ideal-membership certificates.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::coeffring::{DualElement, Mask, ScalarExpr};
use crate::error::{Error, Result};

pub const DEFAULT_STEP_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    T,
    LPlus,
    LMinus,
}

/// A generator: family, 1-based matrix indices, j-monomial tag and copy.
///
/// The derived order compares copy, family, row, column, then tag, which
/// is row-major on indices with tags tie-broken by bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSymbol {
    pub copy: u8,
    pub family: Family,
    pub row: u8,
    pub col: u8,
    pub tag: Mask,
}

impl GenSymbol {
    pub fn t(row: usize, col: usize, tag: Mask) -> Self {
        GenSymbol { copy: 0, family: Family::T, row: row as u8, col: col as u8, tag }
    }

    pub fn with_copy(self, copy: u8) -> Self {
        GenSymbol { copy, ..self }
    }

    pub fn row(&self) -> usize {
        self.row as usize
    }

    pub fn col(&self) -> usize {
        self.col as usize
    }

    /// Plain-text name: `t12`, `t~12` style decorations are chosen by the
    /// caller via `decoration`.
    pub fn render(&self, decoration: &str) -> String {
        let base = match self.family {
            Family::T => "t",
            Family::LPlus => "l+",
            Family::LMinus => "l-",
        };
        let copy = "'".repeat(self.copy as usize);
        format!("{base}{decoration}{}{}{copy}", self.row, self.col)
    }
}

/// A word of generators, ordered degree-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<GenSymbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[GenSymbol] {
        &self.0
    }

    /// Distinct copies commute: stable-sort symbols by copy label.
    pub fn normalized(mut self) -> Self {
        self.0.sort_by_key(|s| s.copy);
        self
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + o.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&o.0);
        Word(v).normalized()
    }

    /// Leftmost position at which `pat` occurs as a contiguous subword.
    pub fn find(&self, pat: &Word, from: usize) -> Option<usize> {
        if pat.len() > self.len() {
            return None;
        }
        (from..=self.len() - pat.len()).find(|&p| self.0[p..p + pat.len()] == pat.0[..])
    }

    pub fn slice(&self, a: usize, b: usize) -> Word {
        Word(self.0[a..b].to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.len().cmp(&o.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Noncommutative polynomial: words with `D_n` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NCPoly {
    n: usize,
    terms: BTreeMap<Word, DualElement>,
}

impl NCPoly {
    pub fn zero(n: usize) -> Self {
        NCPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        NCPoly::constant(DualElement::one(n))
    }

    pub fn constant(c: DualElement) -> Self {
        NCPoly::term(c, Word::empty())
    }

    pub fn symbol(n: usize, s: GenSymbol) -> Self {
        NCPoly::term(DualElement::one(n), Word(vec![s]))
    }

    pub fn term(c: DualElement, w: Word) -> Self {
        let mut p = NCPoly::zero(c.n());
        if !c.is_zero() {
            p.terms.insert(w.normalized(), c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Word, DualElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> DualElement {
        self.terms.get(w).cloned().unwrap_or_else(|| DualElement::zero(self.n))
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    /// Greatest word and its coefficient.
    pub fn leading(&self) -> Option<(&Word, &DualElement)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, c: &DualElement, w: Word) {
        if c.is_zero() {
            return;
        }
        let w = w.normalized();
        match self.terms.get_mut(&w) {
            Some(x) => {
                let s = &*x + c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, o: &NCPoly) {
        for (w, c) in &o.terms {
            self.add_term(c, w.clone());
        }
    }

    pub fn sub_assign(&mut self, o: &NCPoly) {
        for (w, c) in &o.terms {
            self.add_term(&-c, w.clone());
        }
    }

    pub fn scale(&self, c: &DualElement) -> NCPoly {
        let mut out = NCPoly::zero(self.n);
        for (w, x) in &self.terms {
            let y = x * c;
            if !y.is_zero() {
                out.terms.insert(w.clone(), y);
            }
        }
        out
    }

    /// `nc_mul`: concatenation, bilinear, then copy normalization.
    pub fn mul(&self, o: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero(self.n);
        for (wa, a) in &self.terms {
            for (wb, b) in &o.terms {
                out.add_term(&(a * b), wa.concat(wb));
            }
        }
        out
    }

    /// Multiply by `c·u` on the left and `v` on the right.
    pub fn sandwich(&self, c: &DualElement, u: &Word, v: &Word) -> NCPoly {
        let mut out = NCPoly::zero(self.n);
        for (w, x) in &self.terms {
            out.add_term(&(x * c), u.concat(w).concat(v));
        }
        out
    }

    pub fn map_coefficients<F: Fn(&DualElement) -> DualElement>(&self, f: F) -> NCPoly {
        let mut out = NCPoly::zero(self.n);
        for (w, x) in &self.terms {
            out.add_term(&f(x), w.clone());
        }
        out
    }

    /// Algebra map sending each symbol to a polynomial (coefficients are
    /// central). Images are cached per symbol.
    pub fn substitute<F: FnMut(&GenSymbol) -> Result<NCPoly>>(&self, mut f: F) -> Result<NCPoly> {
        let mut cache: BTreeMap<GenSymbol, NCPoly> = BTreeMap::new();
        let mut out = NCPoly::zero(self.n);
        for (w, c) in &self.terms {
            let mut acc = NCPoly::constant(c.clone());
            for s in w.symbols() {
                if !cache.contains_key(s) {
                    cache.insert(*s, f(s)?);
                }
                acc = acc.mul(&cache[s]);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        Ok(out)
    }

    /// Algebra map into the commutative ring `D_n`.
    pub fn evaluate<F: FnMut(&GenSymbol) -> DualElement>(&self, mut f: F) -> DualElement {
        let mut cache: BTreeMap<GenSymbol, DualElement> = BTreeMap::new();
        let mut out = DualElement::zero(self.n);
        for (w, c) in &self.terms {
            let mut acc = c.clone();
            for s in w.symbols() {
                let v = cache.entry(*s).or_insert_with(|| f(s));
                acc = &acc * v;
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        out
    }

    pub fn render_with<F: Fn(&GenSymbol) -> String>(&self, name: F, latex: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word: Vec<String> = w.symbols().iter().map(&name).collect();
                let coeff = if latex { c.to_latex() } else { c.to_string() };
                match (coeff.as_str(), word.is_empty()) {
                    (_, true) => coeff,
                    ("1", false) => word.join(if latex { " " } else { "*" }),
                    ("-1", false) => format!("-{}", word.join(if latex { " " } else { "*" })),
                    _ => format!("({coeff}){}{}", if latex { " " } else { "*" }, word.join(if latex { " " } else { "*" })),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(|s| s.render(if s.tag == 0 { "" } else { "~" }), false))
    }
}

/// Rank of a `D_n` basis monomial inside a fixed word: fewer generators
/// rank higher, ties broken by bitmask.
fn mask_rank(m: Mask) -> (u32, Mask) {
    (m.count_ones(), m)
}

/// A basis key `ι_mask · word`. Keys are ordered by word first; within a
/// word, smaller masks (by [`mask_rank`]) are greater. The order is
/// compatible with multiplication by words and by `ι_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Key {
    pub word: Word,
    pub mask: Mask,
}

impl Ord for Key {
    fn cmp(&self, o: &Self) -> Ordering {
        self.word.cmp(&o.word).then_with(|| mask_rank(o.mask).cmp(&mask_rank(self.mask)))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl NCPoly {
    /// Greatest key with its scalar coefficient.
    pub fn leading_key(&self) -> Option<(Key, ScalarExpr)> {
        let (w, c) = self.terms.iter().next_back()?;
        let (m, x) = c.terms().iter().min_by_key(|(m, _)| mask_rank(*m))?;
        Some((Key { word: w.clone(), mask: *m }, x.clone()))
    }

    /// Greatest key strictly below `floor`.
    fn key_below(&self, floor: &Key) -> Option<(Key, ScalarExpr)> {
        if let Some(c) = self.terms.get(&floor.word) {
            let below = c
                .terms()
                .iter()
                .filter(|(m, _)| mask_rank(*m) > mask_rank(floor.mask))
                .min_by_key(|(m, _)| mask_rank(*m));
            if let Some((m, x)) = below {
                return Some((Key { word: floor.word.clone(), mask: *m }, x.clone()));
            }
        }
        let (w, c) = self.terms.range(..floor.word.clone()).next_back()?;
        let (m, x) = c.terms().iter().min_by_key(|(m, _)| mask_rank(*m))?;
        Some((Key { word: w.clone(), mask: *m }, x.clone()))
    }
}

/// How a rule's leading key may divide a key of the polynomial being
/// reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Matching {
    /// The word occurs as a contiguous subword and the mask is a subset:
    /// reduction modulo the two-sided ideal.
    Subword,
    /// Same word and same mask: reduction modulo the scalar span.
    Linear,
}

/// An oriented rule `lead_coeff · ι_lead_mask · lead → -(rest)`, together
/// with its expression `Σ a_i r_i` in the original relations.
#[derive(Clone, Debug)]
pub struct Rule {
    pub lead: Key,
    pub lead_coeff: ScalarExpr,
    pub poly: NCPoly,
    pub origin: Vec<(usize, DualElement)>,
}

impl Rule {
    fn from_poly(poly: NCPoly, origin: Vec<(usize, DualElement)>) -> Option<Rule> {
        let (lead, lead_coeff) = poly.leading_key()?;
        Some(Rule { lead, lead_coeff, poly, origin })
    }

    /// Position and multiplier `b` such that `b · u · rule · v` has the
    /// term `x · ι_key.mask · key.word`.
    fn divides(&self, key: &Key, x: &ScalarExpr, from: usize, mode: Matching) -> Option<(usize, DualElement)> {
        if self.lead.mask & !key.mask != 0 {
            return None;
        }
        let pos = match mode {
            Matching::Linear if self.lead == *key => 0,
            Matching::Linear => return None,
            Matching::Subword if self.lead.word.is_empty() => return None,
            Matching::Subword => key.word.find(&self.lead.word, from)?,
        };
        let quot = x.div_exact(&self.lead_coeff)?;
        if &(&quot * &self.lead_coeff) != x {
            return None;
        }
        Some((pos, DualElement::monomial(self.poly.n(), key.mask & !self.lead.mask, quot)))
    }
}

fn combine_origin(
    target: &[(usize, DualElement)],
    other: &[(usize, DualElement)],
    factor: &DualElement,
) -> Vec<(usize, DualElement)> {
    let mut acc: BTreeMap<usize, DualElement> = target.iter().cloned().collect();
    for (idx, c) in other {
        let e = acc.entry(*idx).or_insert_with(|| DualElement::zero(c.n()));
        *e = &*e - &(c * factor);
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Relations oriented for rewriting.
#[derive(Clone, Debug)]
pub struct RuleSet {
    pub rules: Vec<Rule>,
    pub relation_count: usize,
}

impl RuleSet {
    /// One rule per nonzero relation, in the given order.
    pub fn new(relations: &[NCPoly]) -> Self {
        let rules = relations
            .iter()
            .enumerate()
            .filter_map(|(i, r)| Rule::from_poly(r.clone(), vec![(i, DualElement::one(r.n()))]))
            .collect();
        RuleSet { rules, relation_count: relations.len() }
    }

    /// Echelon form of the scalar span of all `ι_M · r_i`, which equals the
    /// `D_n`-span of the relations. Leading keys are pairwise distinct
    /// whenever the pivots met along the way divide one another; rules are
    /// sorted by leading key.
    pub fn interreduced(relations: &[NCPoly]) -> Self {
        let mut work = Vec::new();
        for (i, r) in relations.iter().enumerate() {
            let n = r.n();
            for m in 0..(1u32 << n) as usize {
                let c = DualElement::monomial(n, m as Mask, ScalarExpr::one());
                let p = r.scale(&c);
                if !p.is_zero() {
                    work.push((p, vec![(i, c)]));
                }
            }
        }
        RuleSet::echelon(work, relations.len())
    }

    /// Echelon form of the scalar span of the given polynomials.
    pub fn echelon(items: Vec<(NCPoly, Vec<(usize, DualElement)>)>, relation_count: usize) -> Self {
        let mut basis: BTreeMap<(Word, (u32, Mask)), Rule> = BTreeMap::new();
        let mut stuck: Vec<Rule> = Vec::new();
        let mut work: Vec<Rule> = items.into_iter().rev().filter_map(|(p, o)| Rule::from_poly(p, o)).collect();
        while let Some(mut rule) = work.pop() {
            loop {
                let slot = (rule.lead.word.clone(), mask_rank(rule.lead.mask));
                let Some(pivot) = basis.get(&slot) else {
                    basis.insert(slot, rule);
                    break;
                };
                if let Some((_, b)) = pivot.divides(&rule.lead, &rule.lead_coeff, 0, Matching::Linear) {
                    let mut poly = rule.poly.clone();
                    poly.sub_assign(&pivot.poly.scale(&b));
                    let origin = combine_origin(&rule.origin, &pivot.origin, &b);
                    match Rule::from_poly(poly, origin) {
                        Some(r) => rule = r,
                        None => break,
                    }
                } else if rule.divides(&pivot.lead, &pivot.lead_coeff, 0, Matching::Linear).is_some() {
                    let old = basis.insert(slot, rule).expect("pivot present");
                    work.push(old);
                    break;
                } else {
                    stuck.push(rule);
                    break;
                }
            }
        }
        let mut rules: Vec<Rule> = basis.into_values().collect();
        rules.extend(stuck);
        RuleSet { rules, relation_count }
    }
}

/// One rewrite: `coeff · u · rule · v` was subtracted.
#[derive(Clone, Debug)]
struct Step {
    rule: usize,
    coeff: DualElement,
    left: Word,
    right: Word,
}

fn reduce_traced(p: &NCPoly, rules: &RuleSet, mode: Matching, step_cap: usize) -> Result<(NCPoly, Vec<Step>)> {
    let mut p = p.clone();
    let mut steps = Vec::new();
    // keys at or above `floor` are known irreducible
    let mut floor: Option<Key> = None;
    loop {
        let next = match &floor {
            None => p.leading_key(),
            Some(f) => p.key_below(f),
        };
        let Some((key, x)) = next else {
            return Ok((p, steps));
        };
        let mut applied = false;
        'search: for pos in 0..key.word.len().max(1) {
            for (ri, rule) in rules.rules.iter().enumerate() {
                let Some((at, b)) = rule.divides(&key, &x, pos, mode) else { continue };
                if at != pos {
                    continue;
                }
                if steps.len() >= step_cap {
                    return Err(Error::StepCapExceeded { cap: step_cap });
                }
                let end = at + rule.lead.word.len();
                let (u, v) = (key.word.slice(0, at), key.word.slice(end, key.word.len()));
                p.sub_assign(&rule.poly.sandwich(&b, &u, &v));
                steps.push(Step { rule: ri, coeff: b, left: u, right: v });
                applied = true;
                break 'search;
            }
        }
        if !applied {
            floor = Some(key);
        }
    }
}

/// Rewrite `p` until no key is divisible by a rule's leading key. Keys
/// are scanned from the greatest downward, positions leftmost first,
/// rules in order.
pub fn reduce(p: &NCPoly, rules: &RuleSet, step_cap: usize) -> Result<NCPoly> {
    reduce_traced(p, rules, Matching::Subword, step_cap).map(|(r, _)| r)
}

/// Reduction modulo the scalar span of the rules only.
pub fn reduce_linear(p: &NCPoly, rules: &RuleSet, step_cap: usize) -> Result<NCPoly> {
    reduce_traced(p, rules, Matching::Linear, step_cap).map(|(r, _)| r)
}

/// `p = Σ coeff · left · r_index · right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub terms: Vec<CertificateTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateTerm {
    pub left: NCPoly,
    pub relation: usize,
    pub right: NCPoly,
}

impl Certificate {
    pub fn expand(&self, relations: &[NCPoly], n: usize) -> Result<NCPoly> {
        let mut out = NCPoly::zero(n);
        for t in &self.terms {
            let r = relations.get(t.relation).ok_or_else(|| {
                Error::IndexOutOfRange(format!("certificate refers to relation {}", t.relation))
            })?;
            out.add_assign(&t.left.mul(r).mul(&t.right));
        }
        Ok(out)
    }

    /// Pure expansion-and-compare.
    pub fn verify(&self, p: &NCPoly, relations: &[NCPoly]) -> Result<bool> {
        Ok(&self.expand(relations, p.n())? == p)
    }
}

/// Traced division of `p` by the interreduced relations. Succeeds when the
/// remainder is exactly zero; the certificate is checked before returning.
pub fn membership_certificate(p: &NCPoly, relations: &[NCPoly], step_cap: usize) -> Result<Certificate> {
    if p.is_zero() {
        return Ok(Certificate { terms: Vec::new() });
    }
    let rules = RuleSet::interreduced(relations);
    let (rem, steps) = reduce_traced(p, &rules, Matching::Subword, step_cap)?;
    if !rem.is_zero() {
        return Err(Error::Verification(format!("nonzero remainder {rem}")));
    }
    let n = p.n();
    let mut grouped: BTreeMap<(usize, Word, Word), DualElement> = BTreeMap::new();
    for s in steps {
        for (idx, a) in &rules.rules[s.rule].origin {
            let c = &s.coeff * a;
            let e = grouped
                .entry((*idx, s.left.clone(), s.right.clone()))
                .or_insert_with(|| DualElement::zero(n));
            *e = &*e + &c;
        }
    }
    let terms = grouped
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((relation, u, v), c)| CertificateTerm {
            left: NCPoly::term(c, u),
            relation,
            right: NCPoly::term(DualElement::one(n), v),
        })
        .collect();
    let cert = Certificate { terms };
    if !cert.verify(p, relations)? {
        return Err(Error::Verification("certificate does not re-expand to its target".into()));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(r: usize, c: usize) -> NCPoly {
        NCPoly::symbol(2, GenSymbol::t(r, c, 0))
    }

    #[test]
    fn concatenation_and_copies() {
        let p = t(1, 1).mul(&t(1, 2));
        let w = p.leading().unwrap().0;
        assert_eq!(w.symbols(), &[GenSymbol::t(1, 1, 0), GenSymbol::t(1, 2, 0)]);
        let primed = NCPoly::symbol(2, GenSymbol::t(1, 1, 0).with_copy(1));
        let w = primed.mul(&t(1, 2)).leading().unwrap().0.clone();
        assert_eq!(w.symbols()[0], GenSymbol::t(1, 2, 0));
        let i1 = DualElement::iota(2, 1).unwrap();
        assert!(t(1, 1).scale(&i1).mul(&t(1, 2).scale(&i1)).is_zero());
    }

    #[test]
    fn reduction_and_cap() {
        // t12 t11 -> t11 t12
        let mut r = t(1, 2).mul(&t(1, 1));
        r.sub_assign(&t(1, 1).mul(&t(1, 2)));
        let rules = RuleSet::new(std::slice::from_ref(&r));
        assert!(reduce(&r, &rules, 10).unwrap().is_zero());
        let p = t(1, 1).mul(&t(1, 2));
        assert_eq!(reduce(&p, &rules, 10).unwrap(), p);
        assert!(matches!(reduce(&r, &rules, 0), Err(Error::StepCapExceeded { cap: 0 })));
        let cert = membership_certificate(&r, std::slice::from_ref(&r), 10).unwrap();
        assert_eq!(cert.terms.len(), 1);
        assert!(membership_certificate(&NCPoly::zero(2), &[r], 10).unwrap().terms.is_empty());
    }
}
