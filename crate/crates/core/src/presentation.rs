//! Minimal presentations of `H_*(ΩZ_K)` for flag `K`: GPTW generators,
//! the rewriting of arbitrary nested commutators into them, and one relation
//! per generator of `H_1(K_J)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use parking_lot::RwLock;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{bigint_serde, cokernel_invariants, CoefficientRing, ExactMatrix};
use crate::freealg::{koszul_theta, rearrangement_partitions, sign, FreePolynomial, GeneratorSymbol};
use crate::pcalg::{evaluate_canonical, PcAlgebra, PcElement};
use crate::simplicial::{SimplicialComplex, SimplicialCycle, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grading {
    /// One relation per generator of `H_1(K_J)`, for each `J`.
    Multi,
    /// Relations of equal degree merged to `gen(⊕_{|J|=n} H_1(K_J))`.
    Z,
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Grading::Multi => "multi",
            Grading::Z => "z",
        })
    }
}

impl FromStr for Grading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "multi" | "multigraded" => Ok(Grading::Multi),
            "z" | "zgraded" => Ok(Grading::Z),
            _ => Err(Error::InvalidComplex(format!("unknown grading {s:?}"))),
        }
    }
}

/// The generator `c(J \ i, u_i)` for `i ∈ Θ(J)`.
#[derive(Debug, Clone)]
pub struct GptwGenerator {
    pub j: VertexSet,
    pub i: u32,
    pub symbol: GeneratorSymbol,
    pub value: PcElement,
}

impl GptwGenerator {
    pub fn degree(&self) -> usize {
        self.j.len()
    }
}

/// All GPTW generators, ordered by `(|J|, J, i)`.
pub fn gptw_generators(k: &SimplicialComplex, ring: CoefficientRing) -> Result<Vec<GptwGenerator>> {
    let algebra = PcAlgebra::new(k, ring)?;
    gptw_generators_in(&algebra, k)
}

fn gptw_generators_in(algebra: &Arc<PcAlgebra>, k: &SimplicialComplex) -> Result<Vec<GptwGenerator>> {
    let mut subsets: Vec<VertexSet> = k.ground().subsets().filter(|j| j.len() >= 2).collect();
    subsets.sort();
    let per_set: Vec<Vec<GptwGenerator>> = subsets
        .par_iter()
        .map(|&j| {
            k.theta_set(j)?
                .iter()
                .map(|i| {
                    Ok(GptwGenerator {
                        j,
                        i,
                        symbol: GeneratorSymbol::Gptw { set: j, vertex: i },
                        value: PcElement::c_of_u(algebra, j, i)?,
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(per_set.into_iter().flatten().collect())
}

/// Memoized rewriting of `c(J \ i, u_i)` into GPTW symbols.
pub struct Rewriter<'a> {
    k: &'a SimplicialComplex,
    ring: CoefficientRing,
    memo: RwLock<HashMap<(VertexSet, u32), FreePolynomial>>,
}

impl<'a> Rewriter<'a> {
    pub fn new(k: &'a SimplicialComplex, ring: CoefficientRing) -> Result<Self> {
        k.require_flag()?;
        Ok(Rewriter {
            k,
            ring,
            memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.k
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    /// `ĉ(J \ i, u_i)`: a polynomial in GPTW symbols equal to `c(J \ i, u_i)`
    /// in `k[K]^!`. Needs `i ∈ J` and `|J| ≥ 2`.
    pub fn rewrite(&self, j: VertexSet, i: u32) -> Result<FreePolynomial> {
        if !j.contains(i) || !j.is_subset(self.k.ground()) || j.len() < 2 {
            return Err(Error::PreconditionViolated(format!(
                "rewriting needs i in J, J inside the ground set and |J| >= 2 (J = {j}, i = {i})"
            )));
        }
        if let Some(p) = self.memo.read().get(&(j, i)) {
            return Ok(p.clone());
        }
        let p = self.compute(j, i)?;
        self.memo.write().entry((j, i)).or_insert_with(|| p.clone());
        Ok(p)
    }

    fn compute(&self, j: VertexSet, i: u32) -> Result<FreePolynomial> {
        let top = j.max().expect("J is nonempty");
        if i == top {
            let next = j.without(i).max().expect("|J| >= 2");
            return self.rewrite(j, next);
        }
        let component = self
            .k
            .components(j)
            .into_iter()
            .find(|c| c.contains(i))
            .expect("i lies in some component");
        let target = if component.contains(top) {
            top
        } else {
            component.min().expect("components are nonempty")
        };
        let dist = self.k.distances_to(j, target);
        let rank = dist[(i - 1) as usize].expect("same component");
        match (rank, target == top) {
            (0, _) => Ok(FreePolynomial::gptw(self.ring, j, i)),
            (1, true) => Ok(FreePolynomial::zero(self.ring)),
            _ => {
                let next = self
                    .k
                    .neighbours(i)
                    .intersection(j)
                    .iter()
                    .find(|&v| dist[(v - 1) as usize] == Some(rank - 1))
                    .expect("a shortest path exists");
                self.step(j, i, next)
            }
        }
    }

    /// Solves the rearrangement identity for the edge `{i, next}` (both below
    /// `max(J)`) for `c(J \ i, u_i)`.
    fn step(&self, j: VertexSet, i: u32, next: u32) -> Result<FreePolynomial> {
        let (p, q) = if i < next { (i, next) } else { (next, i) };
        let mut brackets = FreePolynomial::zero(self.ring);
        for (a, b, s) in rearrangement_partitions(j, p, q) {
            let left = self.rewrite(a.with(p), p)?;
            let right = self.rewrite(b.with(q), q)?;
            if left.is_zero() || right.is_zero() {
                continue;
            }
            brackets.add_scaled(&left.commutator(&right)?, &s);
        }
        let other = self.rewrite(j, next)?;
        let sp = sign(j.count_above(p));
        let sq = sign(j.count_above(q));
        let mut out = other.scale(if i == p { &sp } else { &sq });
        if i == p {
            out.add_scaled(&brackets, &-BigInt::one());
            Ok(out.scale(&sq))
        } else {
            out.add_scaled(&brackets, &BigInt::one());
            Ok(out.scale(&sp))
        }
    }
}

/// `ĉ(J \ i, u_i)` with a fresh memo table.
pub fn rewrite_chat(k: &SimplicialComplex, j: VertexSet, i: u32, ring: CoefficientRing) -> Result<FreePolynomial> {
    Rewriter::new(k, ring)?.rewrite(j, i)
}

/// One summand `coeff · [ĉ(A, u_i), ĉ(B, u_j)]` of a relation.
#[derive(Debug, Clone)]
pub struct RelationTerm {
    pub edge: (u32, u32),
    pub a: VertexSet,
    pub b: VertexSet,
    pub coeff: BigInt,
    pub left: FreePolynomial,
    pub right: FreePolynomial,
    /// A factor `c(S, u_t)` with `max(S)` adjacent to `t`, which vanishes
    /// before any rewriting.
    pub trivially_zero: bool,
}

impl RelationTerm {
    pub fn is_nonzero(&self) -> bool {
        !self.left.is_zero() && !self.right.is_zero()
    }
}

/// All summands `(-1)^{|J<i|+|J<j|} λ_{ij} (-1)^{θ(A,B)+|A|} [ĉ(A,u_i), ĉ(B,u_j)]`
/// over edges `{i<j}` of `κ` and splittings `J \ ij = A ⊔ B` with
/// `max A > i`, `max B > j`, including those with a vanishing factor.
pub fn relation_terms(rw: &Rewriter<'_>, kappa: &SimplicialCycle) -> Result<Vec<RelationTerm>> {
    kappa.validate(rw.k, rw.ring)?;
    if kappa.face_size() != 2 {
        return Err(Error::PreconditionViolated("relations come from 1-cycles".into()));
    }
    let j = kappa.j;
    let mut out = Vec::new();
    for (edge, lambda) in &kappa.terms {
        let lambda = rw.ring.reduce(lambda.clone());
        if lambda.is_zero() {
            continue;
        }
        let v = edge.to_vec();
        let (i, jj) = (v[0], v[1]);
        let base = sign(j.count_below(i) + j.count_below(jj)) * &lambda;
        let rest = j.without(i).without(jj);
        for a in rest.subsets() {
            let b = rest.difference(a);
            if a.above(i).is_empty() || b.above(jj).is_empty() {
                continue;
            }
            out.push(RelationTerm {
                edge: (i, jj),
                a,
                b,
                coeff: &base * sign(koszul_theta(a, b) + a.len()),
                trivially_zero: rw.k.is_edge(i, a.max().expect("nonempty"))
                    || rw.k.is_edge(jj, b.max().expect("nonempty")),
                left: rw.rewrite(a.with(i), i)?,
                right: rw.rewrite(b.with(jj), jj)?,
            });
        }
    }
    Ok(out)
}

/// Where a relation comes from: a 1-cycle of `K_J`, the order of its class
/// in `H_1(K_J)` (`0` for free classes) and the multiple taken of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSource {
    pub j: VertexSet,
    pub cycle: SimplicialCycle,
    pub order: BigInt,
    pub multiplier: BigInt,
}

#[derive(Debug, Clone)]
pub struct Relation {
    pub degree: usize,
    pub sources: Vec<RelationSource>,
    pub poly: FreePolynomial,
    /// Commutator rendering `±[ĉ(A,u_i), ĉ(B,u_j)] ± …` of the same element.
    pub bracket_form: String,
}

impl Relation {
    pub fn j(&self) -> VertexSet {
        self.sources[0].j
    }
}

fn render_factor(p: &FreePolynomial) -> (BigInt, String) {
    if p.len() == 1 {
        let (word, c) = p.terms().iter().next().expect("one term");
        if word.len() == 1 && c.abs().is_one() {
            return (c.clone(), word[0].to_string());
        }
    }
    (BigInt::one(), format!("({p})"))
}

fn render_brackets(ring: CoefficientRing, terms: &[RelationTerm], global: &BigInt) -> String {
    let mut parts: Vec<(BigInt, String)> = Vec::new();
    for t in terms.iter().filter(|t| t.is_nonzero()) {
        let (cl, l) = render_factor(&t.left);
        let (cr, r) = render_factor(&t.right);
        let c = ring.reduce(global * &t.coeff * cl * cr);
        if !c.is_zero() {
            parts.push((c, format!("[{l},{r}]")));
        }
    }
    let mut s = String::new();
    for (idx, (c, body)) in parts.iter().enumerate() {
        let neg = c.is_negative();
        match (idx, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if !c.abs().is_one() {
            s.push_str(&format!("{}*", c.abs()));
        }
        s.push_str(body);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn relation_from_terms(ring: CoefficientRing, terms: &[RelationTerm]) -> Result<(FreePolynomial, BigInt)> {
    let mut poly = FreePolynomial::zero(ring);
    for t in terms.iter().filter(|t| t.is_nonzero()) {
        poly.add_scaled(&t.left.commutator(&t.right)?, &t.coeff);
    }
    let global = match poly.leading_coefficient() {
        Some(c) if c.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    Ok((poly.scale(&global), global))
}

/// The relation attached to a 1-cycle `κ` of `K_J`, normalized so that its
/// lexicographically first word has positive coefficient.
pub fn relation_for_cycle(rw: &Rewriter<'_>, kappa: &SimplicialCycle) -> Result<Relation> {
    let terms = relation_terms(rw, kappa)?;
    let (poly, global) = relation_from_terms(rw.ring, &terms)?;
    Ok(Relation {
        degree: kappa.j.len(),
        sources: vec![RelationSource {
            j: kappa.j,
            cycle: kappa.clone(),
            order: BigInt::zero(),
            multiplier: BigInt::one(),
        }],
        poly,
        bracket_form: render_brackets(rw.ring, &terms, &global),
    })
}

/// Expected minimal counts, read off from the homology of full subcomplexes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsCertificate {
    /// `Σ_{|J|=n} b̃_0(K_J)`.
    pub generators_by_degree: BTreeMap<usize, usize>,
    /// `gen H_1(K_J)` for each `J` with nonzero `H_1`.
    #[serde(with = "set_keyed")]
    pub relations_by_multidegree: BTreeMap<VertexSet, usize>,
    /// `gen(⊕_{|J|=n} H_1(K_J))`.
    pub relations_by_degree: BTreeMap<usize, usize>,
}

mod set_keyed {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(map: &BTreeMap<VertexSet, usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
        map.iter().collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<VertexSet, usize>, D::Error> {
        Ok(Vec::<(VertexSet, usize)>::deserialize(d)?.into_iter().collect())
    }
}

#[derive(Debug, Clone)]
pub struct Presentation {
    pub ring: CoefficientRing,
    pub grading: Grading,
    pub generators: Vec<GptwGenerator>,
    pub relations: Vec<Relation>,
    pub certificate: CountsCertificate,
}

struct H1Data {
    j: VertexSet,
    cycles: Vec<(SimplicialCycle, BigInt)>,
}

fn h1_of_full_subcomplexes(k: &SimplicialComplex, ring: CoefficientRing) -> Result<Vec<H1Data>> {
    let mut subsets: Vec<VertexSet> = k.ground().subsets().filter(|j| j.len() >= 4).collect();
    subsets.sort();
    let data: Vec<Option<H1Data>> = subsets
        .par_iter()
        .map(|&j| {
            let h = k.reduced_homology(j, ring, 2)?;
            if h.cycles.is_empty() {
                return Ok(None);
            }
            let torsion = h.invariants.torsion.len();
            let cycles = h
                .cycles
                .into_iter()
                .enumerate()
                .map(|(idx, c)| {
                    let order = if idx < torsion {
                        h.invariants.torsion[idx].clone()
                    } else {
                        BigInt::zero()
                    };
                    (c, order)
                })
                .collect();
            Ok(Some(H1Data { j, cycles }))
        })
        .collect::<Result<_>>()?;
    Ok(data.into_iter().flatten().collect())
}

fn counts_certificate(k: &SimplicialComplex, ring: CoefficientRing, h1: &[H1Data]) -> CountsCertificate {
    let mut cert = CountsCertificate::default();
    for j in k.ground().subsets() {
        let b0 = k.reduced_b0(j);
        if b0 > 0 {
            *cert.generators_by_degree.entry(j.len()).or_default() += b0;
        }
    }
    let mut orders_by_degree: BTreeMap<usize, Vec<BigInt>> = BTreeMap::new();
    for d in h1 {
        cert.relations_by_multidegree.insert(d.j, d.cycles.len());
        orders_by_degree
            .entry(d.j.len())
            .or_default()
            .extend(d.cycles.iter().map(|(_, o)| o.clone()));
    }
    for (n, orders) in orders_by_degree {
        // the block sum ⊕ Z/d_k is the cokernel of diag(d_k)
        let mut diag = ExactMatrix::zeros(orders.len(), orders.len());
        for (idx, o) in orders.iter().enumerate() {
            diag.set(idx, idx, o.clone());
        }
        cert.relations_by_degree.insert(n, cokernel_invariants(&diag, ring).gen());
    }
    cert
}

fn prime_power_parts(d: &BigInt) -> Vec<(BigInt, BigInt)> {
    // (p, p^a) for each prime power exactly dividing d
    let mut out = Vec::new();
    let mut rest = d.abs();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        if rest.is_multiple_of(&p) {
            let mut power = BigInt::one();
            while rest.is_multiple_of(&p) {
                rest /= &p;
                power *= &p;
            }
            out.push((p.clone(), power));
        }
        p += 1;
    }
    if rest > BigInt::one() {
        out.push((rest.clone(), rest));
    }
    out
}

/// Merges multigraded relations of one degree into `gen(⊕ H_1)` relations.
/// Free classes stay separate. A torsion class of order `d` is split into its
/// primary parts `(d / p^a)·r`; the `k`-th largest `p`-part of every prime is
/// summed into the `k`-th merged relation, mirroring `ℤ/2 ⊕ ℤ/3 ≅ ℤ/6`.
fn merge_degree(ring: CoefficientRing, relations: Vec<Relation>) -> Vec<Relation> {
    let (free, torsion): (Vec<Relation>, Vec<Relation>) =
        relations.into_iter().partition(|r| r.sources[0].order.is_zero());
    let mut out = free;
    let mut by_prime: BTreeMap<BigInt, Vec<(BigInt, usize)>> = BTreeMap::new();
    for (idx, r) in torsion.iter().enumerate() {
        for (p, power) in prime_power_parts(&r.sources[0].order) {
            by_prime.entry(p).or_default().push((power, idx));
        }
    }
    let bins = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut merged: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); bins];
    for parts in by_prime.values_mut() {
        parts.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        for (bin, (power, idx)) in parts.iter().enumerate() {
            let multiplier = &torsion[*idx].sources[0].order / power;
            *merged[bin].entry(*idx).or_default() += multiplier;
        }
    }
    for bin in merged {
        let mut poly = FreePolynomial::zero(ring);
        let mut sources = Vec::new();
        let mut forms = Vec::new();
        for (idx, multiplier) in bin {
            let r = &torsion[idx];
            poly.add_scaled(&r.poly, &multiplier);
            let mut s = r.sources[0].clone();
            s.multiplier = multiplier.clone();
            sources.push(s);
            forms.push(format!("{multiplier}*({})", r.bracket_form));
        }
        out.push(Relation {
            degree: sources[0].j.len(),
            sources,
            poly,
            bracket_form: forms.join(" + "),
        });
    }
    out
}

/// Presentation of `H_*(ΩZ_K; ring)` by GPTW generators and one relation per
/// generator of `H_1(K_J; ring)` (merged by degree for [`Grading::Z`]).
pub fn build_presentation(k: &SimplicialComplex, ring: CoefficientRing, grading: Grading) -> Result<Presentation> {
    let algebra = PcAlgebra::new(k, ring)?;
    let generators = gptw_generators_in(&algebra, k)?;
    let rw = Rewriter::new(k, ring)?;
    let h1 = h1_of_full_subcomplexes(k, ring)?;
    let certificate = counts_certificate(k, ring, &h1);
    let jobs: Vec<(&SimplicialCycle, &BigInt)> = h1
        .iter()
        .flat_map(|d| d.cycles.iter().map(|(c, o)| (c, o)))
        .collect();
    let multigraded: Vec<Relation> = jobs
        .par_iter()
        .map(|(cycle, order)| {
            let mut r = relation_for_cycle(&rw, cycle)?;
            r.sources[0].order = (*order).clone();
            Ok(r)
        })
        .collect::<Result<_>>()?;
    let relations = match grading {
        Grading::Multi => multigraded,
        Grading::Z => {
            let mut by_degree: BTreeMap<usize, Vec<Relation>> = BTreeMap::new();
            for r in multigraded {
                by_degree.entry(r.degree).or_default().push(r);
            }
            by_degree
                .into_values()
                .flat_map(|rs| merge_degree(ring, rs))
                .collect()
        }
    };
    Ok(Presentation {
        ring,
        grading,
        generators,
        relations,
        certificate,
    })
}

/// Whether `H_*(ΩZ_K; ring)` is free, i.e. `H_1(K_J; ring) = 0` for all `J`.
pub fn is_free_loop_algebra(k: &SimplicialComplex, ring: CoefficientRing) -> Result<bool> {
    k.require_flag()?;
    for j in k.ground().subsets().filter(|j| j.len() >= 4) {
        if !k.reduced_homology(j, ring, 2)?.invariants.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of [`verify_presentation`]; failures are listed, not raised.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub generators_checked: usize,
    pub generators_ok: usize,
    pub rewrites_checked: usize,
    pub rewrites_ok: usize,
    pub relations_checked: usize,
    pub relations_vanishing: usize,
    pub counts_ok: bool,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks generator values, every rewrite `ĉ(J \ i, u_i)`, vanishing of the
/// relations in `k[K]^!` and the minimal counts.
pub fn verify_presentation(k: &SimplicialComplex, p: &Presentation) -> Result<VerificationReport> {
    let algebra = PcAlgebra::new(k, p.ring)?;
    let mut report = VerificationReport::default();

    for g in &p.generators {
        report.generators_checked += 1;
        let direct = PcElement::c_of_u(&algebra, g.j, g.i)?;
        if direct == g.value && !direct.is_zero() {
            report.generators_ok += 1;
        } else {
            report.failures.push(format!("generator {} has the wrong value", g.symbol));
        }
    }

    let rw = Rewriter::new(k, p.ring)?;
    let pairs: Vec<(VertexSet, u32)> = k
        .ground()
        .subsets()
        .filter(|j| j.len() >= 2)
        .flat_map(|j| j.iter().map(move |i| (j, i)))
        .collect();
    let rewrite_failures: Vec<String> = pairs
        .par_iter()
        .map(|&(j, i)| -> Result<Option<String>> {
            let expr = rw.rewrite(j, i)?;
            let ok = evaluate_canonical(&algebra, &expr)? == PcElement::c_of_u(&algebra, j, i)?;
            Ok((!ok).then(|| format!("rewrite of c({}, u{i}) is wrong", j.without(i))))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    report.rewrites_checked = pairs.len();
    report.rewrites_ok = pairs.len() - rewrite_failures.len();
    report.failures.extend(rewrite_failures);

    for r in &p.relations {
        report.relations_checked += 1;
        if evaluate_canonical(&algebra, &r.poly)?.is_zero() {
            report.relations_vanishing += 1;
        } else {
            report.failures.push(format!("relation in degree {} does not vanish", r.degree));
        }
    }

    let cert = &p.certificate;
    let mut generator_counts: BTreeMap<usize, usize> = BTreeMap::new();
    for g in &p.generators {
        *generator_counts.entry(g.degree()).or_default() += 1;
    }
    let mut relation_counts: BTreeMap<usize, usize> = BTreeMap::new();
    for r in &p.relations {
        *relation_counts.entry(r.degree).or_default() += 1;
    }
    let mut counts_ok = generator_counts == cert.generators_by_degree;
    match p.grading {
        Grading::Multi => {
            let mut by_j: BTreeMap<VertexSet, usize> = BTreeMap::new();
            for r in &p.relations {
                *by_j.entry(r.j()).or_default() += 1;
            }
            counts_ok &= by_j == cert.relations_by_multidegree;
        }
        Grading::Z => counts_ok &= relation_counts == cert.relations_by_degree,
    }
    report.counts_ok = counts_ok;
    if !counts_ok {
        report.failures.push("generator or relation counts differ from the minimal counts".into());
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    #[serde(rename = "J")]
    pub j: VertexSet,
    pub i: u32,
    pub degree: usize,
    pub value_rendering: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    #[serde(with = "bigint_serde")]
    pub coeff: BigInt,
    pub word: Vec<GeneratorSymbol>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceRecord {
    #[serde(rename = "J")]
    pub j: VertexSet,
    pub cycle: String,
    #[serde(with = "bigint_serde")]
    pub multiplier: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRecord {
    #[serde(rename = "J")]
    pub j: VertexSet,
    pub cycle: String,
    pub degree: usize,
    pub bracket_form: String,
    pub terms: Vec<TermRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sources: Vec<SourceRecord>,
}

/// Serializable summary of a [`Presentation`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationRecord {
    pub ring: CoefficientRing,
    pub grading: Grading,
    pub generators: Vec<GeneratorRecord>,
    pub relations: Vec<RelationRecord>,
    pub certificate: CountsCertificate,
}

impl Presentation {
    pub fn to_record(&self) -> PresentationRecord {
        PresentationRecord {
            ring: self.ring,
            grading: self.grading,
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorRecord {
                    j: g.j,
                    i: g.i,
                    degree: g.degree(),
                    value_rendering: g.symbol.to_string(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| RelationRecord {
                    j: r.j(),
                    cycle: r.sources[0].cycle.to_string(),
                    degree: r.degree,
                    bracket_form: r.bracket_form.clone(),
                    terms: r
                        .poly
                        .terms()
                        .iter()
                        .map(|(w, c)| TermRecord {
                            coeff: c.clone(),
                            word: w.clone(),
                        })
                        .collect(),
                    sources: if r.sources.len() > 1 {
                        r.sources
                            .iter()
                            .map(|s| SourceRecord {
                                j: s.j,
                                cycle: s.cycle.to_string(),
                                multiplier: s.multiplier.clone(),
                            })
                            .collect()
                    } else {
                        Vec::new()
                    },
                })
                .collect(),
            certificate: self.certificate.clone(),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let plural = |n: usize| if n == 1 { "" } else { "s" };
        writeln!(
            f,
            "{} generator{}, {} relation{} over {} ({}-graded)",
            self.generators.len(),
            plural(self.generators.len()),
            self.relations.len(),
            plural(self.relations.len()),
            self.ring,
            self.grading
        )?;
        for g in &self.generators {
            writeln!(f, "  deg {}  J={}  i={}  {}", g.degree(), g.j, g.i, g.symbol)?;
        }
        for r in &self.relations {
            writeln!(f, "  deg {}  J={}  {} = 0", r.degree, r.j(), r.bracket_form)?;
        }
        Ok(())
    }
}

/// Total degree of the lowest relation, if any.
pub fn lowest_relation_degree(p: &Presentation) -> Option<usize> {
    p.relations.iter().map(|r| r.degree).min()
}

/// Number of GPTW generators in each degree, as a dense vector.
pub fn generator_degree_profile(p: &Presentation) -> Vec<usize> {
    let top = p.generators.iter().map(GptwGenerator::degree).max().unwrap_or(0);
    let mut out = vec![0; top + 1];
    for g in &p.generators {
        out[g.degree()] += 1;
    }
    out
}

/// Coefficient of `c` as a machine integer, for rendering.
pub fn small_coefficient(c: &BigInt) -> Option<i64> {
    c.to_i64()
}
