//! The algebra `k[K]^! = T(u_1, …, u_m) / (u_i², u_i u_j + u_j u_i for {i,j} ∈ K)`.
//!
//! Words are taken modulo signed commutation of `K`-adjacent letters. Each
//! class has a canonical representative, its lexicographically least word,
//! computed by repeatedly pulling the smallest letter that can reach the
//! front. A class is zero when two equal letters can be made adjacent.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::CoefficientRing;
use crate::freealg::{FreePolynomial, GeneratorSymbol};
use crate::simplicial::{SimplicialComplex, VertexSet};

pub type Letter = u8;

#[derive(Debug, PartialEq, Eq)]
pub struct PcAlgebra {
    m: u32,
    /// `adjacency[v - 1]` as a bitmask over vertices.
    adjacency: Vec<u32>,
    ring: CoefficientRing,
}

impl PcAlgebra {
    pub fn new(k: &SimplicialComplex, ring: CoefficientRing) -> Result<Arc<Self>> {
        k.require_flag()?;
        let adjacency = (1..=k.m()).map(|v| k.neighbours(v).bits()).collect();
        Ok(Arc::new(PcAlgebra {
            m: k.m(),
            adjacency,
            ring,
        }))
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    #[inline]
    fn commute(&self, a: Letter, b: Letter) -> bool {
        self.adjacency[(a - 1) as usize] & (1 << (b - 1)) != 0
    }

    fn check_letters(&self, word: &[Letter]) -> Result<()> {
        match word.iter().find(|&&a| a == 0 || a as u32 > self.m) {
            Some(&a) => Err(Error::VertexOutOfRange {
                vertex: a as u32,
                max: self.m,
            }),
            None => Ok(()),
        }
    }

    /// Canonical form of a word: `Some((negative, normal_word))`, or `None`
    /// when the word is zero.
    pub fn normalize(&self, word: &[Letter]) -> Result<Option<(bool, Vec<Letter>)>> {
        self.check_letters(word)?;
        Ok(self.normalize_unchecked(word))
    }

    fn normalize_unchecked(&self, word: &[Letter]) -> Option<(bool, Vec<Letter>)> {
        let mut rest: Vec<Letter> = word.to_vec();
        let mut out = Vec::with_capacity(word.len());
        let mut parity = 0usize;
        while !rest.is_empty() {
            // letters commuting with everything scanned so far
            let mut common = u32::MAX;
            let mut best: Option<(Letter, usize)> = None;
            for (idx, &a) in rest.iter().enumerate() {
                if common & (1 << (a - 1)) != 0 && best.is_none_or(|(b, _)| a < b) {
                    best = Some((a, idx));
                }
                common &= self.adjacency[(a - 1) as usize];
                if common == 0 {
                    break;
                }
            }
            let (a, idx) = best.expect("the first letter is always available");
            parity += idx;
            rest.remove(idx);
            out.push(a);
        }
        if self.has_collapsible_pair(&out) {
            return None;
        }
        Some((parity % 2 == 1, out))
    }

    /// Two equal letters separated only by letters adjacent to them.
    fn has_collapsible_pair(&self, word: &[Letter]) -> bool {
        for (p, &a) in word.iter().enumerate() {
            for &b in &word[p + 1..] {
                if b == a {
                    return true;
                }
                if !self.commute(a, b) {
                    break;
                }
            }
        }
        false
    }

    /// Whether `word · a` is again a nonzero normal word, given that `word` is.
    pub fn extends_normal(&self, word: &[Letter], a: Letter) -> bool {
        for &b in word.iter().rev() {
            if b == a {
                return false;
            }
            if !self.commute(a, b) {
                return true;
            }
            if b > a {
                return false;
            }
        }
        true
    }

    /// Nonzero normal words of length `n`, in lexicographic order.
    pub fn basis(&self, n: usize) -> Vec<Vec<Letter>> {
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(n);
        self.collect_basis(&mut word, n, &mut out);
        out
    }

    fn collect_basis(&self, word: &mut Vec<Letter>, n: usize, out: &mut Vec<Vec<Letter>>) {
        if word.len() == n {
            out.push(word.clone());
            return;
        }
        for a in 1..=self.m as Letter {
            if self.extends_normal(word, a) {
                word.push(a);
                self.collect_basis(word, n, out);
                word.pop();
            }
        }
    }

    /// `dim k[K]^!_n` for `n = 0..=max_degree`, by enumerating normal words.
    pub fn graded_dimensions(&self, max_degree: usize) -> Vec<u64> {
        let mut dims = vec![0u64; max_degree + 1];
        dims[0] = 1;
        if max_degree == 0 || self.m == 0 {
            return dims;
        }
        let per_letter: Vec<Vec<u64>> = (1..=self.m as Letter)
            .into_par_iter()
            .map(|a| {
                let mut counts = vec![0u64; max_degree + 1];
                let mut word = vec![a];
                self.count_words(&mut word, max_degree, &mut counts);
                counts
            })
            .collect();
        for counts in per_letter {
            for (d, c) in counts.into_iter().enumerate() {
                dims[d] += c;
            }
        }
        dims
    }

    fn count_words(&self, word: &mut Vec<Letter>, max_degree: usize, counts: &mut [u64]) {
        counts[word.len()] += 1;
        if word.len() == max_degree {
            return;
        }
        for a in 1..=self.m as Letter {
            if self.extends_normal(word, a) {
                word.push(a);
                self.count_words(word, max_degree, counts);
                word.pop();
            }
        }
    }
}

/// An element of `k[K]^!`, stored as normal words with nonzero coefficients.
#[derive(Clone)]
pub struct PcElement {
    algebra: Arc<PcAlgebra>,
    terms: BTreeMap<Vec<Letter>, BigInt>,
}

impl PcElement {
    pub fn zero(algebra: &Arc<PcAlgebra>) -> Self {
        PcElement {
            algebra: Arc::clone(algebra),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(algebra: &Arc<PcAlgebra>) -> Self {
        let mut e = Self::zero(algebra);
        e.terms.insert(Vec::new(), BigInt::one());
        e
    }

    pub fn u(algebra: &Arc<PcAlgebra>, i: u32) -> Result<Self> {
        Self::from_word(algebra, &[i])
    }

    /// The class of `u_{a_1} ⋯ u_{a_k}`.
    pub fn from_word(algebra: &Arc<PcAlgebra>, word: &[u32]) -> Result<Self> {
        let letters: Vec<Letter> = word
            .iter()
            .map(|&a| {
                Letter::try_from(a).map_err(|_| Error::VertexOutOfRange {
                    vertex: a,
                    max: algebra.m,
                })
            })
            .collect::<Result<_>>()?;
        let mut e = Self::zero(algebra);
        if let Some((neg, w)) = algebra.normalize(&letters)? {
            e.add_term(w, if neg { -BigInt::one() } else { BigInt::one() });
        }
        Ok(e)
    }

    pub fn algebra(&self) -> &Arc<PcAlgebra> {
        &self.algebra
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Letter>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a normal word.
    pub fn coefficient(&self, word: &[Letter]) -> BigInt {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, word: Vec<Letter>, coeff: BigInt) {
        let ring = self.algebra.ring;
        let coeff = ring.reduce(coeff);
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(word).or_default();
        *slot = ring.reduce(&*slot + coeff);
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    fn same_algebra(&self, other: &PcElement) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &PcElement, c: &BigInt) -> Result<()> {
        self.same_algebra(other)?;
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
        Ok(())
    }

    pub fn add(&self, other: &PcElement) -> Result<PcElement> {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::one())?;
        Ok(out)
    }

    pub fn sub(&self, other: &PcElement) -> Result<PcElement> {
        let mut out = self.clone();
        out.add_scaled(other, &-BigInt::one())?;
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> PcElement {
        let mut out = Self::zero(&self.algebra);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &PcElement) -> Result<PcElement> {
        self.same_algebra(other)?;
        let mut out = Self::zero(&self.algebra);
        let mut buf = Vec::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                buf.clear();
                buf.extend_from_slice(w1);
                buf.extend_from_slice(w2);
                if let Some((neg, w)) = self.algebra.normalize_unchecked(&buf) {
                    let c = c1 * c2;
                    out.add_term(w, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Graded commutator, extended bilinearly over word lengths.
    pub fn commutator(&self, other: &PcElement) -> Result<PcElement> {
        self.same_algebra(other)?;
        let mut out = self.mul(other)?;
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut buf = w2.clone();
                buf.extend_from_slice(w1);
                if let Some((neg, w)) = self.algebra.normalize_unchecked(&buf) {
                    // subtract (-1)^{|x||y|} y x
                    let odd = (w1.len() * w2.len()) % 2 == 1;
                    let c = c1 * c2;
                    out.add_term(w, if neg ^ odd { c } else { -c });
                }
            }
        }
        Ok(out)
    }

    /// `c(I, x)` computed in `k[K]^!`.
    pub fn nested_commutator(i: VertexSet, x: &PcElement) -> Result<PcElement> {
        let mut acc = x.clone();
        for a in i.to_vec().into_iter().rev() {
            acc = PcElement::u(&x.algebra, a)?.commutator(&acc)?;
        }
        Ok(acc)
    }

    /// `c(J \ i, u_i)`.
    pub fn c_of_u(algebra: &Arc<PcAlgebra>, j: VertexSet, i: u32) -> Result<PcElement> {
        Self::nested_commutator(j.without(i), &PcElement::u(algebra, i)?)
    }

    /// `ā = (-1)^{1 + deg} a` applied word by word.
    pub fn overline(&self) -> PcElement {
        let mut out = self.clone();
        for (w, c) in out.terms.iter_mut() {
            if w.len() % 2 == 0 {
                *c = self.algebra.ring.reduce(-c.clone());
            }
        }
        out
    }
}

impl PartialEq for PcElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other).is_ok() && self.terms == other.terms
    }
}

impl Eq for PcElement {}

impl fmt::Display for PcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            match (idx, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let body = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(|a| format!("u{a}")).collect::<Vec<_>>().join("*")
            };
            let abs = c.abs();
            if abs.is_one() {
                f.write_str(&body)?;
            } else if w.is_empty() {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PcElement({self})")
    }
}

/// Image of `p` under the homomorphism sending `u_i ↦ u_i` and every other
/// symbol to `assignment(symbol)`.
pub fn evaluate<F>(algebra: &Arc<PcAlgebra>, p: &FreePolynomial, assignment: F) -> Result<PcElement>
where
    F: Fn(&GeneratorSymbol) -> Option<PcElement>,
{
    if p.ring() != algebra.ring {
        return Err(Error::RingMismatch);
    }
    let mut values = BTreeMap::new();
    for s in p.symbols() {
        let v = match s {
            GeneratorSymbol::AtomU(i) => match assignment(&s) {
                Some(v) => v,
                None => PcElement::u(algebra, i)?,
            },
            _ => assignment(&s).ok_or_else(|| Error::UnboundSymbol(s.to_string()))?,
        };
        values.insert(s, v);
    }
    // Words arrive in lexicographic order, so consecutive words share
    // prefixes; keep the running prefix products.
    let mut out = PcElement::zero(algebra);
    let mut prev: &[GeneratorSymbol] = &[];
    let mut stack = vec![PcElement::one(algebra)];
    for (word, coeff) in p.terms() {
        let common = prev.iter().zip(word).take_while(|(a, b)| a == b).count();
        stack.truncate(common + 1);
        for s in &word[common..] {
            let next = stack.last().expect("stack holds the unit").mul(&values[s])?;
            stack.push(next);
        }
        out.add_scaled(stack.last().expect("nonempty"), coeff)?;
        prev = word;
    }
    Ok(out)
}

/// [`evaluate`] with each GPTW symbol bound to its defining commutator.
pub fn evaluate_canonical(algebra: &Arc<PcAlgebra>, p: &FreePolynomial) -> Result<PcElement> {
    let mut bound = BTreeMap::new();
    for s in p.symbols() {
        if let GeneratorSymbol::Gptw { set, vertex } = s {
            bound.insert(s, PcElement::c_of_u(algebra, set, vertex)?);
        }
    }
    evaluate(algebra, p, |s| bound.get(s).cloned())
}
