//! The free graded associative algebra on generator symbols.
//!
//! Words are kept as written; two polynomials are equal iff their
//! coefficient maps agree. Signs follow the total degree: `u_i` has degree 1
//! and a GPTW symbol for `J` has degree `|J|`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::CoefficientRing;
use crate::simplicial::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GeneratorSymbol {
    /// `u_i`, degree `(-1, 2e_i)`.
    AtomU(u32),
    /// Stands for `c(J \ i, u_i)`, degree `(-|J|, 2J)`.
    Gptw { set: VertexSet, vertex: u32 },
}

impl GeneratorSymbol {
    pub fn total_degree(&self) -> usize {
        match self {
            GeneratorSymbol::AtomU(_) => 1,
            GeneratorSymbol::Gptw { set, .. } => set.len(),
        }
    }

    pub fn homological_degree(&self) -> i64 {
        -(self.total_degree() as i64)
    }

    /// Half of the internal multidegree: `e_i` for `u_i`, the indicator of `J`
    /// for a GPTW symbol.
    pub fn support(&self) -> VertexSet {
        match self {
            GeneratorSymbol::AtomU(i) => VertexSet::singleton(*i),
            GeneratorSymbol::Gptw { set, .. } => *set,
        }
    }

    /// The nested commutator this symbol denotes, `[u3,[u4,u1]]` style.
    pub fn commutator_form(&self) -> String {
        match self {
            GeneratorSymbol::AtomU(i) => format!("u{i}"),
            GeneratorSymbol::Gptw { set, vertex } => {
                let outer: Vec<u32> = set.without(*vertex).to_vec();
                let mut s = format!("u{vertex}");
                for a in outer.iter().rev() {
                    s = format!("[u{a},{s}]");
                }
                s
            }
        }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.commutator_form())
    }
}

/// Multidegree `(homological, multi)` with `multi` stored as vertex counts
/// (the actual internal degree is twice this vector).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multidegree {
    pub homological: i64,
    pub multi: BTreeMap<u32, u32>,
}

impl Multidegree {
    /// `(-|J|, 2J)`.
    pub fn of_set(j: VertexSet) -> Self {
        Multidegree {
            homological: -(j.len() as i64),
            multi: j.iter().map(|v| (v, 1)).collect(),
        }
    }
}

pub type Word = Vec<GeneratorSymbol>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreePolynomial {
    ring: CoefficientRing,
    terms: BTreeMap<Word, BigInt>,
}

impl FreePolynomial {
    pub fn zero(ring: CoefficientRing) -> Self {
        FreePolynomial {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: CoefficientRing) -> Self {
        Self::monomial(ring, Vec::new(), BigInt::one())
    }

    pub fn monomial(ring: CoefficientRing, word: Word, coeff: BigInt) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(word, coeff);
        p
    }

    pub fn symbol(ring: CoefficientRing, s: GeneratorSymbol) -> Self {
        Self::monomial(ring, vec![s], BigInt::one())
    }

    pub fn u(ring: CoefficientRing, i: u32) -> Self {
        Self::symbol(ring, GeneratorSymbol::AtomU(i))
    }

    /// The word `u_{a_1} ⋯ u_{a_k}` with coefficient 1.
    pub fn u_word(ring: CoefficientRing, letters: &[u32]) -> Self {
        let word = letters.iter().map(|&a| GeneratorSymbol::AtomU(a)).collect();
        Self::monomial(ring, word, BigInt::one())
    }

    pub fn gptw(ring: CoefficientRing, set: VertexSet, vertex: u32) -> Self {
        Self::symbol(ring, GeneratorSymbol::Gptw { set, vertex })
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Word, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &[GeneratorSymbol]) -> BigInt {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    /// Adds `coeff · word` in place.
    pub fn add_term(&mut self, word: Word, coeff: BigInt) {
        let coeff = self.ring.reduce(coeff);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self.ring.reduce(o.get() + coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c · other`; rings must agree.
    pub fn add_scaled(&mut self, other: &FreePolynomial, c: &BigInt) {
        debug_assert_eq!(self.ring, other.ring);
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn checked_add(&self, other: &FreePolynomial) -> Result<FreePolynomial> {
        self.same_ring(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::one());
        Ok(out)
    }

    pub fn checked_sub(&self, other: &FreePolynomial) -> Result<FreePolynomial> {
        self.same_ring(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-BigInt::one());
        Ok(out)
    }

    pub fn checked_mul(&self, other: &FreePolynomial) -> Result<FreePolynomial> {
        self.same_ring(other)?;
        let mut out = Self::zero(self.ring);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> FreePolynomial {
        let mut out = Self::zero(self.ring);
        out.add_scaled(self, c);
        out
    }

    fn same_ring(&self, other: &FreePolynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Total degree; the zero polynomial counts as homogeneous of degree 0.
    pub fn total_degree(&self) -> Result<usize> {
        let mut degrees = self
            .terms
            .keys()
            .map(|w| w.iter().map(GeneratorSymbol::total_degree).sum::<usize>());
        let first = degrees.next().unwrap_or(0);
        if degrees.all(|d| d == first) {
            Ok(first)
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// The common multidegree of all words, if there is one.
    pub fn multidegree(&self) -> Result<Option<Multidegree>> {
        let mut out: Option<Multidegree> = None;
        for w in self.terms.keys() {
            let mut md = Multidegree {
                homological: 0,
                multi: BTreeMap::new(),
            };
            for s in w {
                md.homological += s.homological_degree();
                for v in s.support() {
                    *md.multi.entry(v).or_default() += 1;
                }
            }
            match &out {
                None => out = Some(md),
                Some(prev) if *prev == md => {}
                Some(_) => return Err(Error::NotHomogeneous),
            }
        }
        Ok(out)
    }

    /// `ā = (-1)^{1 + deg a} a`.
    pub fn overline(&self) -> Result<FreePolynomial> {
        let d = self.total_degree()?;
        Ok(if d % 2 == 1 { self.clone() } else { -self })
    }

    /// `[x, y] = xy - (-1)^{|x||y|} yx`.
    pub fn commutator(&self, other: &FreePolynomial) -> Result<FreePolynomial> {
        let (dx, dy) = (self.total_degree()?, other.total_degree()?);
        let xy = self.checked_mul(other)?;
        let yx = other.checked_mul(self)?;
        Ok(if dx * dy % 2 == 1 { &xy + &yx } else { &xy - &yx })
    }

    /// Every symbol occurring in some word.
    pub fn symbols(&self) -> std::collections::BTreeSet<GeneratorSymbol> {
        self.terms.keys().flatten().copied().collect()
    }

    /// Coefficient of the lexicographically least word.
    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.terms.values().next()
    }
}

impl Add for &FreePolynomial {
    type Output = FreePolynomial;
    fn add(self, rhs: &FreePolynomial) -> FreePolynomial {
        self.checked_add(rhs).expect("coefficient rings differ")
    }
}

impl Sub for &FreePolynomial {
    type Output = FreePolynomial;
    fn sub(self, rhs: &FreePolynomial) -> FreePolynomial {
        self.checked_sub(rhs).expect("coefficient rings differ")
    }
}

impl Mul for &FreePolynomial {
    type Output = FreePolynomial;
    fn mul(self, rhs: &FreePolynomial) -> FreePolynomial {
        self.checked_mul(rhs).expect("coefficient rings differ")
    }
}

impl Neg for &FreePolynomial {
    type Output = FreePolynomial;
    fn neg(self) -> FreePolynomial {
        self.scale(&-BigInt::one())
    }
}

impl fmt::Display for FreePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (word, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            let body = if word.is_empty() {
                "1".to_string()
            } else {
                word.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("*")
            };
            if abs.is_one() {
                f.write_str(&body)?;
            } else if word.is_empty() {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreePolynomial[{}]({self})", self.ring)
    }
}

/// `θ(A, B) = |{(a, b) ∈ A × B : a > b}|`.
pub fn koszul_theta(a: VertexSet, b: VertexSet) -> usize {
    a.iter().map(|x| b.count_below(x)).sum()
}

/// `(-1)^k` as a `BigInt`.
pub fn sign(k: usize) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// All ordered splittings `I = A ⊔ B`, by increasing bitmask of `A`.
pub fn splittings(i: VertexSet) -> impl Iterator<Item = (VertexSet, VertexSet)> {
    i.subsets().map(move |a| (a, i.difference(a)))
}

/// `c(I, x) = [u_{i_1}, [u_{i_2}, … [u_{i_k}, x] …]]`.
pub fn nested_commutator(i: VertexSet, x: &FreePolynomial) -> Result<FreePolynomial> {
    let ring = x.ring();
    let mut acc = x.clone();
    acc.total_degree()?;
    for a in i.to_vec().into_iter().rev() {
        acc = FreePolynomial::u(ring, a).commutator(&acc)?;
    }
    Ok(acc)
}

/// `c(I, u_j)`.
pub fn c_of_u(ring: CoefficientRing, i: VertexSet, j: u32) -> FreePolynomial {
    nested_commutator(i, &FreePolynomial::u(ring, j)).expect("atoms are homogeneous")
}

/// `û_I = u_{i_1} ⋯ u_{i_k}` for `i_1 < … < i_k`.
pub fn u_hat(ring: CoefficientRing, i: VertexSet) -> FreePolynomial {
    FreePolynomial::u_word(ring, &i.to_vec())
}

/// Right side of `û_I · x = Σ_{I = A ⊔ B} (-1)^{θ(A,B) + deg(x)|B|} c(A, x) û_B`.
pub fn expand_ui_x(i: VertexSet, x: &FreePolynomial) -> Result<FreePolynomial> {
    let ring = x.ring();
    let d = x.total_degree()?;
    let mut out = FreePolynomial::zero(ring);
    for (a, b) in splittings(i) {
        let term = &nested_commutator(a, x)? * &u_hat(ring, b);
        out.add_scaled(&term, &sign(koszul_theta(a, b) + d * b.len()));
    }
    Ok(out)
}

/// Right side of the expansion of `û_I · u_j`: the sum over `I = A ⊔ B`
/// with `max(A) > j` of `(-1)^{θ(A,B)+|B|} c(A, u_j) û_B`, plus
/// `(-1)^{|I_{>j}|}` times `û_{I ⊔ j}` (or `û_{I<j} u_j² û_{I>j}` when `j ∈ I`).
pub fn expand_ui_uj(ring: CoefficientRing, i: VertexSet, j: u32) -> FreePolynomial {
    let mut out = FreePolynomial::zero(ring);
    for (a, b) in splittings(i) {
        if a.max().is_some_and(|top| top > j) {
            let term = &c_of_u(ring, a, j) * &u_hat(ring, b);
            out.add_scaled(&term, &sign(koszul_theta(a, b) + b.len()));
        }
    }
    let tail = if i.contains(j) {
        let mut letters = i.below(j).to_vec();
        letters.extend([j, j]);
        letters.extend(i.above(j));
        FreePolynomial::u_word(ring, &letters)
    } else {
        u_hat(ring, i.with(j))
    };
    out.add_scaled(&tail, &sign(i.count_above(j)));
    out
}

/// `Σ_{I = A ⊔ B} (-1)^{θ(A,B) + deg(x)|B|} [c(A, x), c(B, y)]`, which equals `c(I, [x, y])`.
pub fn expand_c_of_bracket(i: VertexSet, x: &FreePolynomial, y: &FreePolynomial) -> Result<FreePolynomial> {
    let d = x.total_degree()?;
    y.total_degree()?;
    let mut out = FreePolynomial::zero(x.ring());
    for (a, b) in splittings(i) {
        let term = nested_commutator(a, x)?.commutator(&nested_commutator(b, y)?)?;
        out.add_scaled(&term, &sign(koszul_theta(a, b) + d * b.len()));
    }
    Ok(out)
}

/// Partitions `J \ {i, j} = A ⊔ B` with `A_{>i} ≠ ∅` and `B_{>j} ≠ ∅`,
/// together with the sign `(-1)^{θ(A,B) + |B|}`.
pub fn rearrangement_partitions(j_set: VertexSet, i: u32, j: u32) -> Vec<(VertexSet, VertexSet, BigInt)> {
    let rest = j_set.without(i).without(j);
    splittings(rest)
        .filter(|(a, b)| !a.above(i).is_empty() && !b.above(j).is_empty())
        .map(|(a, b)| (a, b, sign(koszul_theta(a, b) + b.len())))
        .collect()
}

/// Right side of the identity for `c(J \ ij, [u_i, u_j])`:
/// `(-1)^{|J>j|} c(J\i, u_i) - (-1)^{|J>i|} c(J\j, u_j)
///  + Σ (-1)^{θ(A,B)+|B|} [c(A, u_i), c(B, u_j)]`.
pub fn rearrangement_identity_rhs(
    ring: CoefficientRing,
    j_set: VertexSet,
    i: u32,
    j: u32,
) -> Result<FreePolynomial> {
    if i >= j || !j_set.contains(i) || !j_set.contains(j) || j_set.above(j).is_empty() {
        return Err(Error::PreconditionViolated(format!(
            "need i < j in J and J above j nonempty (J = {j_set}, i = {i}, j = {j})"
        )));
    }
    let mut out = c_of_u(ring, j_set.without(i), i).scale(&sign(j_set.count_above(j)));
    out.add_scaled(&c_of_u(ring, j_set.without(j), j), &-sign(j_set.count_above(i)));
    for (a, b, s) in rearrangement_partitions(j_set, i, j) {
        let term = c_of_u(ring, a, i).commutator(&c_of_u(ring, b, j))?;
        out.add_scaled(&term, &s);
    }
    Ok(out)
}
