//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use looppres::exactlin::{cokernel_invariants, homology_with_representatives, smith_normal_form};
use looppres::freealg::{
    c_of_u, expand_c_of_bracket, expand_ui_uj, expand_ui_x, rearrangement_identity_rhs,
};
use looppres::homotopy::{
    euler_identity_check, hilbert_series, loop_poincare_series, loop_polynomial, multiplicity_report,
    product_expansion, sphere_multiplicities,
};
use looppres::pcalg::evaluate_canonical;
use looppres::presentation::{
    build_presentation, relation_for_cycle, relation_terms, verify_presentation, Rewriter,
};
use looppres::torbar::{bar_cycle, bar_cycle_symbolic, bar_cycle_two, epsilon, koszul_homology, verify_bar_cycle};
use looppres::{
    CoefficientRing, ExactMatrix, FreePolynomial, GeneratorSymbol, Grading, PcAlgebra,
    SimplicialComplex, VertexSet,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

const Z: CoefficientRing = CoefficientRing::Integers;
const PENTAGON_LIMIT: Duration = Duration::from_secs(1);
const HEXAGON_LIMIT: Duration = Duration::from_secs(5);
const RANDOM_COMPLEXES: usize = 50;
const MAX_M: u32 = 7;
const TOR_MAX_M: u32 = 6;
const IDENTITY_INSTANCES: usize = 1000;
const SNF_MATRICES: usize = 1000;
const SNF_MAX_DIM: usize = 8;
const SNF_MAX_ENTRY: i64 = 50;
const SERIES_CUTOFF: usize = 16;
const ENUMERATION_DEGREE: usize = 8;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn vs(v: &[u32]) -> VertexSet {
    VertexSet::from_vertices(v.iter().copied())
}

fn corpus() -> Vec<(String, SimplicialComplex)> {
    let mut out = named_complexes();
    for (idx, k) in random_corpus(RANDOM_COMPLEXES, MAX_M, CORPUS_SEED).into_iter().enumerate() {
        out.push((format!("random #{idx} (m = {})", k.m()), k));
    }
    out
}

fn rings() -> Vec<CoefficientRing> {
    vec![
        Z,
        CoefficientRing::Rationals,
        CoefficientRing::prime_field(2).unwrap(),
        CoefficientRing::prime_field(3).unwrap(),
    ]
}

fn gptw(j: &[u32], i: u32) -> GeneratorSymbol {
    GeneratorSymbol::Gptw { set: vs(j), vertex: i }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let k = SimplicialComplex::polygon(5);
    let p = build_presentation(&k, Z, Grading::Multi).map_err(|e| e.to_string())?;
    let rw = Rewriter::new(&k, Z).map_err(|e| e.to_string())?;
    let sub = rw.rewrite(vs(&[1, 2, 4]), 2).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    ensure(
        sub == FreePolynomial::monomial(Z, vec![gptw(&[1, 2, 4], 1)], -BigInt::one()),
        || format!("c-hat(14,u2) rewrote to {sub}"),
    )?;
    ensure(p.relations.len() == 1 && p.generators.len() == 10, || {
        format!("{} generators, {} relations", p.generators.len(), p.relations.len())
    })?;
    let br = |x, y| FreePolynomial::symbol(Z, x).commutator(&FreePolynomial::symbol(Z, y)).unwrap();
    let mut known = FreePolynomial::zero(Z);
    for (x, y, c) in [
        (gptw(&[1, 3], 1), gptw(&[2, 4, 5], 2), -1),
        (gptw(&[1, 4], 1), gptw(&[2, 3, 5], 2), 1),
        (gptw(&[2, 5], 2), gptw(&[1, 3, 4], 1), -1),
        (gptw(&[2, 4], 2), gptw(&[1, 3, 5], 3), 1),
        (gptw(&[3, 5], 3), gptw(&[1, 2, 4], 1), 1),
    ] {
        known.add_scaled(&br(x, y), &BigInt::from(c));
    }
    let r = &p.relations[0].poly;
    let sign = if r == &known {
        "+"
    } else if r == &known.scale(&-BigInt::one()) {
        "-"
    } else {
        return Err(format!("relation differs: {}", p.relations[0].bracket_form));
    };
    ensure(elapsed < PENTAGON_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("five-term relation matches with sign {sign}, {:.3} s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let k = SimplicialComplex::polygon(6);
    let rw = Rewriter::new(&k, Z).map_err(|e| e.to_string())?;
    let h = k.reduced_homology(k.ground(), Z, 2).map_err(|e| e.to_string())?;
    ensure(h.cycles.len() == 1, || "H_1 of the hexagon is not cyclic".into())?;
    let terms = relation_terms(&rw, &h.cycles[0]).map_err(|e| e.to_string())?;
    let mut groups: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for t in terms.iter().filter(|t| !t.trivially_zero) {
        *groups.entry(t.edge).or_default() += 1;
    }
    let counts: Vec<usize> = groups.values().copied().collect();
    let relation = relation_for_cycle(&rw, &h.cycles[0]).map_err(|e| e.to_string())?;
    let algebra = PcAlgebra::new(&k, Z).map_err(|e| e.to_string())?;
    let value = evaluate_canonical(&algebra, &relation.poly).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(counts == [7, 10, 4], || format!("edge groups {groups:?}"))?;
    ensure(value.is_zero(), || format!("relation evaluates to {value}"))?;
    ensure(elapsed < HEXAGON_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("21 = 7+10+4 commutators, vanishes in k[K]!, {:.3} s", elapsed.as_secs_f64()))
}

fn criterion_3() -> Outcome {
    let (mut rewrites, mut relations) = (0, 0);
    let corpus = corpus();
    for (name, k) in &corpus {
        let p = build_presentation(k, Z, Grading::Multi).map_err(|e| format!("{name}: {e}"))?;
        let report = verify_presentation(k, &p).map_err(|e| format!("{name}: {e}"))?;
        ensure(report.all_passed(), || format!("{name}: {:?}", report.failures))?;
        rewrites += report.rewrites_checked;
        relations += report.relations_checked;
    }
    Ok(format!("{} complexes, {rewrites} rewrites, {relations} relations", corpus.len()))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    let corpus: Vec<_> = corpus().into_iter().filter(|(_, k)| k.m() <= TOR_MAX_M).collect();
    for (name, k) in &corpus {
        for ring in rings() {
            for j in k.ground().subsets() {
                for n in 0..=j.len() {
                    let koszul = koszul_homology(k, j, n as u32, ring).map_err(|e| e.to_string())?;
                    let simplicial = k.reduced_homology(j, ring, n).map_err(|e| e.to_string())?.invariants;
                    ensure(koszul == simplicial, || {
                        format!("{name} over {ring}, J = {j}, n = {n}: {koszul:?} vs {simplicial:?}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} strands on {} complexes over Z, Q, F2, F3", corpus.len()))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    let corpus: Vec<_> = corpus().into_iter().filter(|(_, k)| k.m() <= TOR_MAX_M).collect();
    for (name, k) in &corpus {
        let algebra = PcAlgebra::new(k, Z).map_err(|e| e.to_string())?;
        for j in k.ground().subsets() {
            for n in 1..=3 {
                let h = k.reduced_homology(j, Z, n).map_err(|e| e.to_string())?;
                for kappa in &h.cycles {
                    let element = bar_cycle(&algebra, k, kappa).map_err(|e| e.to_string())?;
                    ensure(verify_bar_cycle(&element), || format!("{name}: bar cycle of {kappa} is not closed"))?;
                    let symbolic = bar_cycle_symbolic(k, kappa, Z).map_err(|e| e.to_string())?;
                    if n == 1 {
                        let mut oracle = BTreeMap::new();
                        for (face, lambda) in &kappa.terms {
                            let v = VertexSet::min(*face).unwrap();
                            if j.without(v).max().is_some_and(|top| top > v) {
                                oracle.insert(vec![(j.without(v), v)], epsilon(*face, j) * lambda);
                            }
                        }
                        oracle.retain(|_, c: &mut BigInt| !c.is_zero());
                        ensure(symbolic == oracle, || format!("{name}: 0-cycle {kappa} gives {symbolic:?}"))?;
                    }
                    if n == 2 {
                        let two = bar_cycle_two(k, kappa, Z).map_err(|e| e.to_string())?;
                        ensure(symbolic == two, || format!("{name}: 1-cycle formulas differ on {kappa}"))?;
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} cycles in dimensions 0..2 on {} complexes", corpus.len()))
}

/// `dim H_1(K_J; F_p)` by elimination mod `p`, written out independently.
fn betti_one_mod_p(k: &SimplicialComplex, j: VertexSet, p: i64) -> usize {
    let verts = j.to_vec();
    let edges: Vec<(u32, u32)> = k.edges().into_iter().filter(|&(a, b)| j.contains(a) && j.contains(b)).collect();
    let mut triangles = Vec::new();
    for &(a, b) in &edges {
        for &c in &verts {
            if c > b && k.is_edge(a, c) && k.is_edge(b, c) {
                triangles.push((a, b, c));
            }
        }
    }
    let rank_mod_p = |mut rows: Vec<Vec<i64>>| -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col].rem_euclid(p) != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = (1..p).find(|x| (x * rows[rank][col]).rem_euclid(p) == 1).unwrap();
            for r in 0..rows.len() {
                if r != rank {
                    let f = (rows[r][col] * inv).rem_euclid(p);
                    for c in 0..cols {
                        rows[r][c] = (rows[r][c] - f * rows[rank][c]).rem_euclid(p);
                    }
                }
            }
            rank += 1;
        }
        rank
    };
    let pos = |x: u32| verts.iter().position(|&v| v == x).unwrap();
    let epos = |a: u32, b: u32| edges.iter().position(|&e| e == (a, b)).unwrap();
    let d1: Vec<Vec<i64>> = edges
        .iter()
        .map(|&(a, b)| {
            let mut row = vec![0; verts.len()];
            row[pos(a)] = -1;
            row[pos(b)] = 1;
            row
        })
        .collect();
    let d2: Vec<Vec<i64>> = triangles
        .iter()
        .map(|&(a, b, c)| {
            let mut row = vec![0; edges.len()];
            row[epos(b, c)] = 1;
            row[epos(a, c)] = -1;
            row[epos(a, b)] = 1;
            row
        })
        .collect();
    edges.len() - rank_mod_p(d1) - rank_mod_p(d2)
}

fn criterion_6() -> Outcome {
    let corpus = corpus();
    for (name, k) in &corpus {
        let p = build_presentation(k, Z, Grading::Multi).map_err(|e| e.to_string())?;
        let mut gens_expected: BTreeMap<usize, usize> = BTreeMap::new();
        let mut rels_expected: BTreeMap<VertexSet, usize> = BTreeMap::new();
        for j in k.ground().subsets().filter(|j| !j.is_empty()) {
            let b0 = component_count(k, j) - 1;
            if b0 > 0 {
                *gens_expected.entry(j.len()).or_default() += b0;
            }
            // gen H_1(K_J; Z) is the largest mod-p Betti number; complexes this
            // small have no torsion outside p = 2, 3
            let b1 = betti_one_mod_p(k, j, 2).max(betti_one_mod_p(k, j, 3));
            if b1 > 0 {
                rels_expected.insert(j, b1);
            }
        }
        let mut gens_actual: BTreeMap<usize, usize> = BTreeMap::new();
        for g in &p.generators {
            *gens_actual.entry(g.degree()).or_default() += 1;
        }
        let mut rels_actual: BTreeMap<VertexSet, usize> = BTreeMap::new();
        for r in &p.relations {
            *rels_actual.entry(r.j()).or_default() += 1;
        }
        ensure(gens_actual == gens_expected, || format!("{name}: generators {gens_actual:?} vs {gens_expected:?}"))?;
        ensure(rels_actual == rels_expected, || format!("{name}: relations {rels_actual:?} vs {rels_expected:?}"))?;
    }
    let counts = |k: SimplicialComplex| {
        let p = build_presentation(&k, Z, Grading::Multi).unwrap();
        (p.generators.len(), p.relations.len())
    };
    let pentagon = counts(SimplicialComplex::polygon(5));
    let square = counts(SimplicialComplex::polygon(4));
    let simplex = counts(SimplicialComplex::simplex(4));
    ensure(pentagon == (10, 1), || format!("pentagon {pentagon:?}"))?;
    ensure(square == (2, 1), || format!("square {square:?}"))?;
    ensure(simplex == (0, 0), || format!("simplex {simplex:?}"))?;
    Ok(format!("{} complexes; pentagon (10, 1), square (2, 1), simplex (0, 0)", corpus.len()))
}

fn criterion_7() -> Outcome {
    let corpus = corpus();
    for (name, k) in &corpus {
        let algebra = PcAlgebra::new(k, Z).map_err(|e| e.to_string())?;
        let dims: Vec<BigInt> = algebra.graded_dimensions(ENUMERATION_DEGREE).into_iter().map(BigInt::from).collect();
        let series = hilbert_series(k, ENUMERATION_DEGREE).map_err(|e| e.to_string())?;
        ensure(dims == series, || format!("{name}: {dims:?} vs {series:?}"))?;
        // (1+t)^{-m} = Σ (-1)^n C(m+n-1, n) t^n
        let m = k.m() as u64;
        let inv: Vec<BigInt> = (0..=ENUMERATION_DEGREE as u64)
            .map(|n| {
                let c = (0..n).fold(BigInt::one(), |acc, t| acc * (m + t) / (t + 1));
                if n % 2 == 0 { c } else { -c }
            })
            .collect();
        let divided: Vec<BigInt> = (0..=ENUMERATION_DEGREE)
            .map(|n| (0..=n).map(|a| &dims[a] * &inv[n - a]).sum())
            .collect();
        let poincare = loop_poincare_series(k, ENUMERATION_DEGREE).map_err(|e| e.to_string())?;
        ensure(divided == poincare, || format!("{name}: {divided:?} vs {poincare:?}"))?;
    }
    Ok(format!("{} complexes up to degree {ENUMERATION_DEGREE}", corpus.len()))
}

/// `-Σ_J χ̃(K_J) t^{|J|}` by direct face counting.
fn euler_oracle(k: &SimplicialComplex) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); k.m() as usize + 1];
    for j in k.ground().subsets() {
        let chi: i64 = j
            .subsets()
            .filter(|s| k.is_face(*s))
            .map(|s| if s.len() % 2 == 0 { -1 } else { 1 })
            .sum();
        out[j.len()] -= chi;
    }
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn truncated_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len();
    (0..n).map(|i| (0..=i).map(|j| &a[j] * &b[i - j]).sum()).collect()
}

/// `∏ (1 - t^{n-1})^{D_n}` with each power taken by repeated squaring.
fn product_oracle(d: &BTreeMap<usize, BigInt>, n: usize) -> Vec<BigInt> {
    let one = |len: usize| -> Vec<BigInt> { (0..len).map(|i| BigInt::from(u8::from(i == 0))).collect() };
    let mut out = one(n + 1);
    for (&sphere, e) in d {
        let k = sphere - 1;
        let mut base = one(n + 1);
        if k <= n {
            base[k] = -BigInt::one();
        }
        let mut e = e.to_u64().unwrap();
        while e > 0 {
            if e & 1 == 1 {
                out = truncated_mul(&out, &base);
            }
            base = truncated_mul(&base, &base);
            e >>= 1;
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let corpus = corpus();
    for (name, k) in &corpus {
        let euler = euler_identity_check(k).map_err(|e| e.to_string())?;
        ensure(euler.equal && euler.lhs == euler_oracle(k), || format!("{name}: {euler:?}"))?;
        let p = loop_polynomial(k).map_err(|e| e.to_string())?;
        let d = sphere_multiplicities(&p, SERIES_CUTOFF).map_err(|e| format!("{name}: {e}"))?;
        ensure(d.values().all(|e| !e.is_negative()), || format!("{name}: negative D"))?;
        let mut padded: Vec<BigInt> = p.clone();
        padded.resize(SERIES_CUTOFF + 1, BigInt::zero());
        padded.truncate(SERIES_CUTOFF + 1);
        ensure(product_oracle(&d, SERIES_CUTOFF) == padded, || format!("{name}: re-expansion differs"))?;
        ensure(product_expansion(&d, SERIES_CUTOFF) == padded, || format!("{name}: product_expansion differs"))?;
    }
    let d_of = |k: SimplicialComplex| multiplicity_report(&k, SERIES_CUTOFF).unwrap().d;
    let square = d_of(SimplicialComplex::polygon(4));
    let points = d_of(SimplicialComplex::discrete(2));
    let pentagon = d_of(SimplicialComplex::polygon(5));
    let only = |d: &BTreeMap<usize, BigInt>, n: usize, v: i64| {
        d.iter().all(|(k, e)| if *k == n { *e == BigInt::from(v) } else { e.is_zero() })
    };
    ensure(only(&square, 3, 2), || format!("square D = {square:?}"))?;
    ensure(only(&points, 3, 1), || format!("two points D = {points:?}"))?;
    ensure(pentagon[&3] == BigInt::from(5) && pentagon[&4] == BigInt::from(5), || {
        format!("pentagon D = {pentagon:?}")
    })?;
    Ok(format!("{} complexes; square D3 = 2, two points D3 = 1, pentagon D3 = D4 = 5", corpus.len()))
}

fn to_mini(p: &FreePolynomial) -> Mini {
    let mut out = Mini::new();
    for (word, c) in p.terms() {
        let letters = word
            .iter()
            .map(|s| match s {
                GeneratorSymbol::AtomU(i) => *i,
                other => panic!("unexpected symbol {other}"),
            })
            .collect();
        out.insert(letters, c.to_i64().unwrap());
    }
    out
}

fn from_mini(p: &Mini) -> FreePolynomial {
    let mut out = FreePolynomial::zero(Z);
    for (w, c) in p {
        let word = w.iter().map(|&i| GeneratorSymbol::AtomU(i)).collect();
        out.add_term(word, BigInt::from(*c));
    }
    out
}

fn random_set(rng: &mut impl Rng, m: u32) -> VertexSet {
    (1..=m).filter(|_| rng.gen_bool(0.5)).collect()
}

fn criterion_9() -> Outcome {
    let mut rng = rng(CORPUS_SEED ^ 9);
    let per_kind = IDENTITY_INSTANCES / 4 + 1;
    for _ in 0..per_kind {
        let m = rng.gen_range(1..=6);
        let i = random_set(&mut rng, m);
        let deg = rng.gen_range(1..=3);
        let x = random_homogeneous(&mut rng, m, deg, 3);
        let lhs = mini_mul(&mini_word(&i.to_vec()), &x);
        let rhs = to_mini(&expand_ui_x(i, &from_mini(&x)).unwrap());
        ensure(lhs == rhs, || format!("û_I x fails for I = {i}, x = {x:?}"))?;

        let j = rng.gen_range(1..=m);
        let lhs = mini_mul(&mini_word(&i.to_vec()), &mini_letter(j));
        let rhs = to_mini(&expand_ui_uj(Z, i, j));
        ensure(lhs == rhs, || format!("û_I u_j fails for I = {i}, j = {j}"))?;

        let ydeg = rng.gen_range(1..=2);
        let y = random_homogeneous(&mut rng, m, ydeg, 2);
        let lhs = mini_nested(i, &mini_bracket(&x, &y));
        let rhs = to_mini(&expand_c_of_bracket(i, &from_mini(&x), &from_mini(&y)).unwrap());
        ensure(lhs == rhs, || format!("c(I,[x,y]) fails for I = {i}"))?;
    }
    let mut rearrangements = 0;
    while rearrangements < per_kind {
        let m = rng.gen_range(3..=6);
        let mut verts: Vec<u32> = (1..=m).collect();
        verts.shuffle(&mut rng);
        let size = rng.gen_range(3..=m as usize);
        let j_set: VertexSet = verts[..size].iter().copied().collect();
        let mut pair: Vec<u32> = j_set.to_vec().choose_multiple(&mut rng, 2).copied().collect();
        pair.sort();
        let (i, j) = (pair[0], pair[1]);
        if j_set.above(j).is_empty() {
            continue;
        }
        let rest = j_set.without(i).without(j);
        let lhs = mini_nested(rest, &mini_bracket(&mini_letter(i), &mini_letter(j)));
        let rhs = to_mini(&rearrangement_identity_rhs(Z, j_set, i, j).unwrap());
        ensure(lhs == rhs, || format!("rearrangement fails for J = {j_set}, i = {i}, j = {j}"))?;
        ensure(to_mini(&c_of_u(Z, rest, i)) == mini_nested(rest, &mini_letter(i)), || "c(I, u_i) differs".into())?;
        rearrangements += 1;
    }
    Ok(format!("{} instances across four identity families", 4 * per_kind))
}

/// Determinant by Laplace expansion, for small matrices.
fn det(rows: &[Vec<i64>]) -> i64 {
    match rows.len() {
        0 => 1,
        1 => rows[0][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = rows[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, x)| *x).collect())
                    .collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * rows[0][c] * det(&minor)
            })
            .sum(),
    }
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n)
        .flat_map(|last| {
            choose(last, k - 1).into_iter().map(move |mut c| {
                c.push(last);
                c
            })
        })
        .collect()
}

/// Invariant factors from gcds of `k × k` minors.
fn determinantal_factors(rows: &[Vec<i64>], cols: usize) -> Vec<i64> {
    let mut out = Vec::new();
    let mut prev = 1i64;
    for k in 1..=rows.len().min(cols) {
        let mut g = 0i64;
        for rs in choose(rows.len(), k) {
            for cs in choose(cols, k) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c]).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

fn random_rows(rng: &mut impl Rng, r: usize, c: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..r).map(|_| (0..c).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
}

fn check_snf(rows: &[Vec<i64>], cols: usize) -> Result<(), String> {
    let m = ExactMatrix::from_i64_rows(rows);
    let s = smith_normal_form(&m);
    let umv = s.u.mul(&m).and_then(|x| x.mul(&s.v)).map_err(|e| e.to_string())?;
    ensure(umv == s.d, || format!("UMV != D for {m:?}"))?;
    ensure(s.u.mul(&s.u_inv).unwrap() == ExactMatrix::identity(m.rows()), || "U not unimodular".into())?;
    ensure(s.v.mul(&s.v_inv).unwrap() == ExactMatrix::identity(m.cols()), || "V not unimodular".into())?;
    ensure(s.d.is_diagonal(), || "D not diagonal".into())?;
    let diag = s.d.diagonal_entries();
    let nonzero = diag.iter().take_while(|x| !x.is_zero()).count();
    ensure(diag[nonzero..].iter().all(Zero::is_zero), || "zeros not last".into())?;
    ensure(diag.iter().all(|x| !x.is_negative()), || "negative diagonal".into())?;
    for w in diag[..nonzero].windows(2) {
        ensure(w[1].is_multiple_of(&w[0]), || format!("{} does not divide {}", w[0], w[1]))?;
    }
    if rows.len().min(cols) <= 4 {
        let expected: Vec<BigInt> = determinantal_factors(rows, cols).into_iter().map(BigInt::from).collect();
        ensure(diag[..nonzero] == expected[..], || format!("factors {diag:?} vs minors {expected:?}"))?;
    }
    Ok(())
}

/// Brute force on `ℤ^n / im M` for square `M` with nonzero determinant:
/// `v ↦ adj(M) v mod |det M|` identifies the quotient with a subgroup of
/// `(ℤ/det)^n`.
fn brute_force_finite_module(rows: &[Vec<i64>]) -> (usize, usize, BTreeMap<i64, usize>) {
    let n = rows.len();
    let d = det(rows).abs();
    let adj_col = |i: usize| -> Vec<i64> {
        (0..n)
            .map(|r| {
                // adj[r][i] = (-1)^{r+i} det(M without row i, column r)
                let minor: Vec<Vec<i64>> = (0..n)
                    .filter(|&a| a != i)
                    .map(|a| (0..n).filter(|&b| b != r).map(|b| rows[a][b]).collect())
                    .collect();
                let s = if (r + i) % 2 == 0 { 1 } else { -1 };
                (s * det(&minor)).rem_euclid(d)
            })
            .collect()
    };
    let gens: Vec<Vec<i64>> = (0..n).map(adj_col).collect();
    let add = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| (x + y).rem_euclid(d)).collect() };
    let closure = |gs: &[Vec<i64>]| -> Vec<Vec<i64>> {
        let mut seen = std::collections::BTreeSet::from([vec![0; n]]);
        let mut stack = vec![vec![0; n]];
        while let Some(x) = stack.pop() {
            for g in gs {
                let y = add(&x, g);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen.into_iter().collect()
    };
    let group = closure(&gens);
    let order = group.len();
    let mut min_gens = 0;
    let generates = |k: usize| {
        choose(order, k)
            .into_iter()
            .any(|idx| closure(&idx.iter().map(|&i| group[i].clone()).collect::<Vec<_>>()).len() == order)
    };
    while !generates(min_gens) {
        min_gens += 1;
    }
    let mut torsion_counts = BTreeMap::new();
    for k in 1..=order as i64 {
        if order as i64 % k == 0 {
            let c = group.iter().filter(|g| g.iter().all(|x| (k * x) % d == 0)).count();
            torsion_counts.insert(k, c);
        }
    }
    (order, min_gens, torsion_counts)
}

fn random_unimodular(rng: &mut impl Rng, n: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..3 * n {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b {
            continue;
        }
        let f = rng.gen_range(-2..=2);
        for c in 0..n {
            u[a][c] += f * u[b][c];
        }
        if rng.gen_bool(0.3) {
            u.swap(a, b);
        }
    }
    u
}

fn criterion_10() -> Outcome {
    let mut rng = rng(CORPUS_SEED ^ 10);
    for _ in 0..SNF_MATRICES {
        let (r, c) = (rng.gen_range(1..=SNF_MAX_DIM), rng.gen_range(1..=SNF_MAX_DIM));
        let rows = random_rows(&mut rng, r, c, SNF_MAX_ENTRY);
        check_snf(&rows, c)?;
    }

    let mut brute = 0;
    while brute < 40 {
        let n = rng.gen_range(1..=3);
        let rows = random_rows(&mut rng, n, n, 6);
        let d = det(&rows).abs();
        if d == 0 || d > 48 {
            continue;
        }
        let inv = cokernel_invariants(&ExactMatrix::from_i64_rows(&rows), Z);
        let (order, min_gens, counts) = brute_force_finite_module(&rows);
        ensure(inv.rank == 0 && order as i64 == d, || format!("order {order} vs det {d}"))?;
        ensure(inv.gen() == min_gens && inv.rel() == min_gens, || {
            format!("{rows:?}: gen/rel {}/{} vs brute force {min_gens}", inv.gen(), inv.rel())
        })?;
        for (k, count) in counts {
            let predicted: i64 = inv.torsion.iter().map(|t| k.gcd(&t.to_i64().unwrap())).product();
            ensure(predicted == count as i64, || format!("{rows:?}: {k}-torsion {count} vs {predicted}"))?;
        }
        brute += 1;
    }

    // gen(coker M) = rows - min_p rank_p(M), over all primes dividing a minor.
    let primes: Vec<i64> = (2..2000).filter(|p| (2..*p).take_while(|q| q * q <= *p).all(|q| p % q != 0)).collect();
    for _ in 0..100 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let rows = random_rows(&mut rng, r, c, 6);
        let m = ExactMatrix::from_i64_rows(&rows);
        let inv = cokernel_invariants(&m, Z);
        let min_rank = primes
            .iter()
            .map(|&p| looppres::exactlin::rank(&m, CoefficientRing::PrimeField(p as u64)))
            .min()
            .unwrap();
        ensure(inv.gen() == r - min_rank, || format!("{rows:?}: gen {} vs {}", inv.gen(), r - min_rank))?;
        ensure(inv.gen() <= r && inv.rel() <= c, || format!("{rows:?}: lower bounds fail"))?;
    }

    // constructed modules U diag V have known invariants
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let mut factors: Vec<i64> = Vec::new();
        let mut acc = 1;
        for _ in 0..n {
            acc *= [1, 1, 2, 3, 0][rng.gen_range(0..5)];
            factors.push(acc);
        }
        let u = random_unimodular(&mut rng, n);
        let v = random_unimodular(&mut rng, n);
        let dm = ExactMatrix::diagonal(factors.iter().copied());
        let m = ExactMatrix::from_i64_rows(&u).mul(&dm).unwrap().mul(&ExactMatrix::from_i64_rows(&v)).unwrap();
        let inv = cokernel_invariants(&m, Z);
        let torsion: Vec<BigInt> = factors.iter().filter(|&&f| f > 1).map(|&f| BigInt::from(f)).collect();
        let rank = factors.iter().filter(|&&f| f == 0).count();
        ensure(inv.torsion == torsion && inv.rank == rank, || format!("{factors:?} gave {inv:?}"))?;
        ensure(inv.gen() <= n && inv.rel() <= n, || "lower bound fails".into())?;
    }

    // 0 → ker f → ℤ^b → ℤ^c → 0 with f the first c rows of a unimodular matrix
    for _ in 0..100 {
        let b = rng.gen_range(1..=7);
        let c = rng.gen_range(0..=b);
        let u = random_unimodular(&mut rng, b);
        let f = if c == 0 { ExactMatrix::zeros(0, b) } else { ExactMatrix::from_i64_rows(&u[..c]) };
        let image = cokernel_invariants(&f, Z);
        ensure(image.is_zero(), || "f is not surjective".into())?;
        let ker = homology_with_representatives(&f, &ExactMatrix::zeros(b, 0), Z).map_err(|e| e.to_string())?;
        ensure(ker.torsion.is_empty(), || "kernel has torsion".into())?;
        let a = ker.rank;
        let basis = ker.generators.clone().unwrap_or_default();
        let mut inclusion = ExactMatrix::zeros(b, a);
        for (col, v) in basis.iter().enumerate() {
            ensure(f.mul_vector(v).iter().all(Zero::is_zero), || "generator not in kernel".into())?;
            for (row, x) in v.iter().enumerate() {
                inclusion.set(row, col, x.clone());
            }
        }
        let quotient = cokernel_invariants(&inclusion, Z);
        ensure(quotient.torsion.is_empty() && quotient.rank == c, || format!("middle exactness fails: {quotient:?}"))?;
        ensure(b == a + c, || format!("{b} != {a} + {c}"))?;
    }
    Ok(format!(
        "{SNF_MATRICES} SNFs (dims <= {SNF_MAX_DIM}, entries <= {SNF_MAX_ENTRY}), 40 brute-forced modules, 300 constructed instances"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("pentagon golden", criterion_1),
        ("hexagon golden", criterion_2),
        ("soundness sweep", criterion_3),
        ("Tor cross-check", criterion_4),
        ("bar-cycle closedness", criterion_5),
        ("count minimality", criterion_6),
        ("Poincare/Hilbert consistency", criterion_7),
        ("Euler identity and decomposition", criterion_8),
        ("commutator identities", criterion_9),
        ("module machinery", criterion_10),
    ];
    let mut failed = 0;
    for (idx, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}; {secs:.2} s)", idx + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why}; {secs:.2} s)", idx + 1);
            }
        }
    }
    if failed == 0 {
        println!("all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failed} of 10 criteria failed");
        ExitCode::FAILURE
    }
}
