//! The complex `(Λ[m] ⊗ k⟨K⟩, d̄)` computing `Tor` over the loop homology,
//! its lift `d̂` to the free resolution, and explicit cycles in the bar
//! construction of `k[K]^!`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{homology_with_representatives, CoefficientRing, ExactMatrix, ModuleInvariants};
use crate::freealg::{koszul_theta, sign};
use crate::pcalg::{Letter, PcAlgebra, PcElement};
use crate::simplicial::{SimplicialComplex, SimplicialCycle, VertexSet};

/// `u_I ⊗ χ_α`; `alpha[v - 1]` is the exponent of vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KoszulBasisElement {
    pub exterior: VertexSet,
    pub alpha: Vec<u32>,
}

impl KoszulBasisElement {
    pub fn new(exterior: VertexSet, alpha: Vec<u32>) -> Self {
        KoszulBasisElement { exterior, alpha }
    }

    /// `u_I ⊗ χ_L` with `α` the indicator of `L`.
    pub fn from_sets(m: u32, exterior: VertexSet, l: VertexSet) -> Self {
        let alpha = (1..=m).map(|v| u32::from(l.contains(v))).collect();
        KoszulBasisElement { exterior, alpha }
    }

    pub fn support(&self) -> VertexSet {
        self.alpha
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(v, _)| v as u32 + 1)
            .collect()
    }

    /// `n = |α|`.
    pub fn bar_degree(&self) -> u32 {
        self.alpha.iter().sum()
    }

    pub fn is_valid(&self, k: &SimplicialComplex) -> bool {
        self.alpha.len() == k.m() as usize && k.is_face(self.support())
    }

    fn lowered(&self, i: u32) -> Vec<u32> {
        let mut alpha = self.alpha.clone();
        alpha[(i - 1) as usize] -= 1;
        alpha
    }
}

pub type KoszulChain = BTreeMap<KoszulBasisElement, BigInt>;

fn add_to(chain: &mut KoszulChain, e: KoszulBasisElement, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let slot = chain.entry(e.clone()).or_default();
    *slot += c;
    if slot.is_zero() {
        chain.remove(&e);
    }
}

/// `d̄(u_I ⊗ χ_α) = (-1)^{|I|} Σ_{i ∈ supp α} (u_I ∧ u_i) ⊗ χ_{α - e_i}`.
pub fn dbar(e: &KoszulBasisElement) -> KoszulChain {
    let mut out = KoszulChain::new();
    let outer = e.exterior.len();
    for i in e.support() {
        if e.exterior.contains(i) {
            continue;
        }
        let s = sign(outer + e.exterior.count_above(i));
        add_to(&mut out, KoszulBasisElement::new(e.exterior.with(i), e.lowered(i)), s);
    }
    out
}

pub fn dbar_chain(chain: &KoszulChain) -> KoszulChain {
    let mut out = KoszulChain::new();
    for (e, c) in chain {
        for (f, d) in dbar(e) {
            add_to(&mut out, f, c * d);
        }
    }
    out
}

/// One summand of `d̂(1 ⊗ u_I ⊗ χ_α)`: `coeff · prefactor ⊗ target`, where
/// the prefactor is `c(A, u_i)` or the unit when `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DhatTerm {
    pub coeff: BigInt,
    pub prefactor: Option<(VertexSet, u32)>,
    pub target: KoszulBasisElement,
}

/// Both sums of `d̂(1 ⊗ u_I ⊗ χ_α)`: the `d̄` part with unit prefactor, and
/// `Σ_i Σ_{I = A ⊔ B, max A > i} (-1)^{θ(A,B)+|A|} c(A, u_i) ⊗ u_B ⊗ χ_{α-e_i}`.
pub fn dhat(e: &KoszulBasisElement) -> Vec<DhatTerm> {
    let mut out: Vec<DhatTerm> = dbar(e)
        .into_iter()
        .map(|(target, coeff)| DhatTerm {
            coeff,
            prefactor: None,
            target,
        })
        .collect();
    for i in e.support() {
        let lowered = e.lowered(i);
        for a in e.exterior.subsets() {
            if a.max().is_none_or(|top| top <= i) {
                continue;
            }
            let b = e.exterior.difference(a);
            out.push(DhatTerm {
                coeff: sign(koszul_theta(a, b) + a.len()),
                prefactor: Some((a, i)),
                target: KoszulBasisElement::new(b, lowered.clone()),
            });
        }
    }
    out
}

/// Element of the free resolution `A ⊗ Λ[m] ⊗ k⟨K⟩` with coefficients in
/// `k[K]^!`.
pub type ResolutionChain = BTreeMap<KoszulBasisElement, PcElement>;

/// `d̂` on resolution chains, with `d̂(a·x) = (-1)^{deg a} a·d̂(x)`.
pub fn dhat_chain(algebra: &Arc<PcAlgebra>, chain: &ResolutionChain) -> Result<ResolutionChain> {
    let mut out = ResolutionChain::new();
    let mut commutators: HashMap<(VertexSet, u32), PcElement> = HashMap::new();
    for (e, a) in chain {
        // (-1)^{deg a} a = -ā
        let signed = a.overline().scale(&-BigInt::one());
        for term in dhat(e) {
            let value = match term.prefactor {
                None => signed.clone(),
                Some((set, i)) => {
                    let c = match commutators.get(&(set, i)) {
                        Some(c) => c.clone(),
                        None => {
                            let c = PcElement::nested_commutator(set, &PcElement::u(algebra, i)?)?;
                            commutators.insert((set, i), c.clone());
                            c
                        }
                    };
                    signed.mul(&c)?
                }
            };
            let slot = out
                .entry(term.target.clone())
                .or_insert_with(|| PcElement::zero(algebra));
            slot.add_scaled(&value, &term.coeff)?;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// `ε(L, J) = (-1)^{Σ_{ℓ ∈ L} |J_{<ℓ}|}`.
pub fn epsilon(l: VertexSet, j: VertexSet) -> BigInt {
    sign(l.iter().map(|x| j.count_below(x)).sum())
}

/// `g_J : [L] ↦ ε(L, J) u_{J\L} ⊗ χ_L`, applied to a chain in `K_J`.
pub fn g_map(m: u32, chain: &SimplicialCycle) -> Result<KoszulChain> {
    let j = chain.j;
    let mut out = KoszulChain::new();
    for (l, c) in &chain.terms {
        if !l.is_subset(j) {
            return Err(Error::FaceOutsideJ { face: *l, set: j });
        }
        add_to(
            &mut out,
            KoszulBasisElement::from_sets(m, j.difference(*l), *l),
            epsilon(*l, j) * c,
        );
    }
    Ok(out)
}

/// Basis of the strand of multidegree `(n, -|μ|, 2μ)`: all `u_I ⊗ χ_α` with
/// `|α| = n`, `supp α ∈ K` and `I + α = μ` as vectors.
pub fn koszul_strand(k: &SimplicialComplex, n: u32, mu: &[u32]) -> Vec<KoszulBasisElement> {
    let m = k.m() as usize;
    assert_eq!(mu.len(), m, "multidegree length");
    let mut out = Vec::new();
    let mut alpha = vec![0u32; m];
    strand_rec(k, mu, n, 0, &mut alpha, &mut out);
    out.sort();
    out
}

fn strand_rec(
    k: &SimplicialComplex,
    mu: &[u32],
    left: u32,
    pos: usize,
    alpha: &mut Vec<u32>,
    out: &mut Vec<KoszulBasisElement>,
) {
    if pos == mu.len() {
        if left != 0 {
            return;
        }
        let e = KoszulBasisElement::new(VertexSet::EMPTY, alpha.clone());
        if !k.is_face(e.support()) {
            return;
        }
        // exterior part takes what α leaves, and must be 0/1
        let mut exterior = VertexSet::EMPTY;
        for (v, (&mv, &av)) in mu.iter().zip(alpha.iter()).enumerate() {
            match mv - av {
                0 => {}
                1 => exterior = exterior.with(v as u32 + 1),
                _ => return,
            }
        }
        out.push(KoszulBasisElement::new(exterior, alpha.clone()));
        return;
    }
    for a in 0..=mu[pos].min(left) {
        alpha[pos] = a;
        strand_rec(k, mu, left - a, pos + 1, alpha, out);
    }
    alpha[pos] = 0;
}

/// Matrix of `d̄` from the `n`-strand to the `(n-1)`-strand of multidegree `μ`.
pub fn koszul_differential(k: &SimplicialComplex, n: u32, mu: &[u32]) -> ExactMatrix {
    let cols = koszul_strand(k, n, mu);
    if n == 0 {
        return ExactMatrix::zeros(0, cols.len());
    }
    let rows = koszul_strand(k, n - 1, mu);
    let mut d = ExactMatrix::zeros(rows.len(), cols.len());
    for (c, e) in cols.iter().enumerate() {
        for (f, x) in dbar(e) {
            let r = rows.binary_search(&f).expect("d̄ preserves the multidegree");
            d.set(r, c, x);
        }
    }
    d
}

/// Homology of the strand `(n, -|μ|, 2μ)` of `(Λ[m] ⊗ k⟨K⟩, d̄)`.
pub fn koszul_homology_at(k: &SimplicialComplex, n: u32, mu: &[u32], ring: CoefficientRing) -> Result<ModuleInvariants> {
    let d1 = koszul_differential(k, n, mu);
    let d2 = koszul_differential(k, n + 1, mu);
    Ok(homology_with_representatives(&d1, &d2, ring)?.without_generators())
}

/// Homology of the `(n, -|J|, 2J)` strand.
pub fn koszul_homology(k: &SimplicialComplex, j: VertexSet, n: u32, ring: CoefficientRing) -> Result<ModuleInvariants> {
    let mu: Vec<u32> = (1..=k.m()).map(|v| u32::from(j.contains(v))).collect();
    koszul_homology_at(k, n, &mu, ring)
}

/// A bar letter `c(J_t, u_{i_t})` kept symbolically as `(J_t, i_t)`.
pub type SymbolicLetter = (VertexSet, u32);

/// Linear combination of symbolic tensors `[c(J_1,u_{i_1})|…|c(J_n,u_{i_n})]`.
pub type SymbolicBarChain = BTreeMap<Vec<SymbolicLetter>, BigInt>;

fn add_symbolic(chain: &mut SymbolicBarChain, key: Vec<SymbolicLetter>, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let slot = chain.entry(key.clone()).or_default();
    *slot += c;
    if slot.is_zero() {
        chain.remove(&key);
    }
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (idx, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(idx);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Ordered splittings of `s` into `n` labelled (possibly empty) blocks.
fn labelled_partitions(s: VertexSet, n: usize) -> Vec<Vec<VertexSet>> {
    let elems = s.to_vec();
    let mut out = Vec::new();
    let total = n.pow(elems.len() as u32);
    for mut code in 0..total {
        let mut blocks = vec![VertexSet::EMPTY; n];
        for &x in &elems {
            blocks[code % n] = blocks[code % n].with(x);
            code /= n;
        }
        out.push(blocks);
    }
    out
}

/// The bar cycle `κ'` of a simplicial cycle `κ = Σ λ_I [I]` in `K_J`:
/// `Σ_I ε(I,J) λ_I Σ (-1)^{Σ_{t1<t2} θ(J_{t1},J_{t2})} [c(J_1,u_{i_1})|…|c(J_n,u_{i_n})]`
/// over orderings `(i_1, …, i_n)` of `I` and splittings
/// `J \ I = J_1 ⊔ … ⊔ J_n` with `max(J_t) > i_t`.
pub fn bar_cycle_symbolic(k: &SimplicialComplex, kappa: &SimplicialCycle, ring: CoefficientRing) -> Result<SymbolicBarChain> {
    kappa.validate(k, ring)?;
    let j = kappa.j;
    let n = kappa.face_size();
    let mut out = SymbolicBarChain::new();
    for (face, lambda) in &kappa.terms {
        let base = epsilon(*face, j) * lambda;
        let rest = j.difference(*face);
        let blocks_list = labelled_partitions(rest, n);
        for order in permutations(&face.to_vec()) {
            for blocks in &blocks_list {
                let admissible = blocks
                    .iter()
                    .zip(&order)
                    .all(|(&b, &i)| b.max().is_some_and(|top| top > i));
                if !admissible {
                    continue;
                }
                let mut theta = 0;
                for t1 in 0..n {
                    for t2 in t1 + 1..n {
                        theta += koszul_theta(blocks[t1], blocks[t2]);
                    }
                }
                let key: Vec<SymbolicLetter> = blocks.iter().copied().zip(order.iter().copied()).collect();
                add_symbolic(&mut out, key, &base * sign(theta));
            }
        }
    }
    Ok(out)
}

/// The `n = 2` formula for 1-cycles `κ = Σ λ_{ij} [ij]`:
/// `Σ (-1)^{|J<i|+|J<j|} λ_{ij} Σ_{A,B} (-1)^{θ(A,B)} [c(A,u_i)|c(B,u_j)] + (-1)^{θ(B,A)} [c(B,u_j)|c(A,u_i)]`.
pub fn bar_cycle_two(k: &SimplicialComplex, kappa: &SimplicialCycle, ring: CoefficientRing) -> Result<SymbolicBarChain> {
    kappa.validate(k, ring)?;
    if kappa.face_size() != 2 {
        return Err(Error::PreconditionViolated("expected a 1-cycle".into()));
    }
    let j = kappa.j;
    let mut out = SymbolicBarChain::new();
    for (edge, lambda) in &kappa.terms {
        let v = edge.to_vec();
        let (i, jj) = (v[0], v[1]);
        let base = sign(j.count_below(i) + j.count_below(jj)) * lambda;
        for a in j.without(i).without(jj).subsets() {
            let b = j.without(i).without(jj).difference(a);
            if a.max().is_none_or(|t| t <= i) || b.max().is_none_or(|t| t <= jj) {
                continue;
            }
            add_symbolic(&mut out, vec![(a, i), (b, jj)], &base * sign(koszul_theta(a, b)));
            add_symbolic(&mut out, vec![(b, jj), (a, i)], &base * sign(koszul_theta(b, a)));
        }
    }
    Ok(out)
}

/// Drops the tensors with a letter `c(J_t, u_{i_t})` vanishing in `k[K]^!`.
pub fn prune_vanishing(algebra: &Arc<PcAlgebra>, chain: &SymbolicBarChain) -> Result<SymbolicBarChain> {
    let mut zero: HashMap<SymbolicLetter, bool> = HashMap::new();
    let mut out = SymbolicBarChain::new();
    for (letters, c) in chain {
        let mut keep = true;
        for &(set, i) in letters {
            let z = match zero.get(&(set, i)) {
                Some(&z) => z,
                None => {
                    let z = PcElement::nested_commutator(set, &PcElement::u(algebra, i)?)?.is_zero();
                    zero.insert((set, i), z);
                    z
                }
            };
            if z {
                keep = false;
                break;
            }
        }
        if keep {
            out.insert(letters.clone(), c.clone());
        }
    }
    Ok(out)
}

/// Element of the bar construction of `k[K]^!`, expanded over tensors of
/// normal words.
#[derive(Clone, PartialEq, Eq)]
pub struct BarElement {
    algebra: Arc<PcAlgebra>,
    terms: BTreeMap<Vec<Vec<Letter>>, BigInt>,
}

impl BarElement {
    pub fn zero(algebra: &Arc<PcAlgebra>) -> Self {
        BarElement {
            algebra: Arc::clone(algebra),
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Vec<Letter>>, BigInt> {
        &self.terms
    }

    fn add_term(&mut self, key: Vec<Vec<Letter>>, c: BigInt) {
        let ring = self.algebra.ring();
        let c = ring.reduce(c);
        if c.is_zero() || key.iter().any(|w| w.is_empty()) {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_default();
        *slot = ring.reduce(&*slot + c);
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `c · [a_1 | … | a_n]`, expanded multilinearly.
    pub fn add_tensor(&mut self, letters: &[PcElement], c: &BigInt) {
        let mut partial: Vec<(Vec<Vec<Letter>>, BigInt)> = vec![(Vec::new(), c.clone())];
        for a in letters {
            let mut next = Vec::with_capacity(partial.len() * a.len());
            for (key, x) in &partial {
                for (w, y) in a.terms() {
                    let mut k = key.clone();
                    k.push(w.clone());
                    next.push((k, x * y));
                }
            }
            partial = next;
        }
        for (k, x) in partial {
            self.add_term(k, x);
        }
    }

    /// Evaluates a symbolic chain, computing each `c(J_t, u_{i_t})` in `k[K]^!`.
    pub fn from_symbolic(algebra: &Arc<PcAlgebra>, chain: &SymbolicBarChain) -> Result<Self> {
        let mut cache: HashMap<SymbolicLetter, PcElement> = HashMap::new();
        let mut out = Self::zero(algebra);
        for (letters, c) in chain {
            let mut values = Vec::with_capacity(letters.len());
            for &(set, i) in letters {
                if !cache.contains_key(&(set, i)) {
                    let v = PcElement::nested_commutator(set, &PcElement::u(algebra, i)?)?;
                    cache.insert((set, i), v);
                }
                values.push(cache[&(set, i)].clone());
            }
            out.add_tensor(&values, c);
        }
        Ok(out)
    }

    /// `d[a_1|…|a_n] = Σ_{i<n} [ā_1|…|ā_{i-1}|ā_i·a_{i+1}|a_{i+2}|…|a_n]`.
    pub fn differential(&self) -> BarElement {
        let mut out = Self::zero(&self.algebra);
        for (key, c) in &self.terms {
            let n = key.len();
            for i in 0..n.saturating_sub(1) {
                let mut product = key[i].clone();
                product.extend_from_slice(&key[i + 1]);
                let Some((neg, w)) = self
                    .algebra
                    .normalize(&product)
                    .expect("letters come from the algebra")
                else {
                    continue;
                };
                // overlines on a_1..a_i: each contributes (-1)^{1+|a_t|}
                let flips: usize = key[..=i].iter().map(|a| 1 + a.len()).sum::<usize>() + usize::from(neg);
                let mut k: Vec<Vec<Letter>> = key[..i].to_vec();
                k.push(w);
                k.extend_from_slice(&key[i + 2..]);
                out.add_term(k, sign(flips) * c);
            }
        }
        out
    }
}

impl std::fmt::Debug for BarElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BarElement({} terms)", self.terms.len())
    }
}

/// The bar cycle `κ'` as an element of the bar construction of `k[K]^!`.
pub fn bar_cycle(algebra: &Arc<PcAlgebra>, k: &SimplicialComplex, kappa: &SimplicialCycle) -> Result<BarElement> {
    let symbolic = bar_cycle_symbolic(k, kappa, algebra.ring())?;
    BarElement::from_symbolic(algebra, &symbolic)
}

/// Whether `d(κ') = 0` in the bar construction of `k[K]^!`.
pub fn verify_bar_cycle(element: &BarElement) -> bool {
    element.differential().is_zero()
}
