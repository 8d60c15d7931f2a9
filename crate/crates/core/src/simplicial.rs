//! Simplicial complexes on the vertex set `[m] = {1, …, m}`.
//!
//! Faces are bitmasks. The complex stores its facets, the downward closure
//! as a hash set, and the adjacency of the 1-skeleton.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::{homology_with_representatives, CoefficientRing, ExactMatrix, ModuleInvariants};

/// Largest vertex count accepted when `LOOPPRES_MAX_M` is unset.
pub const DEFAULT_MAX_M: u32 = 24;
/// Hard limit given by the bitmask width.
pub const HARD_MAX_M: u32 = 32;

/// Vertex cap, read from `LOOPPRES_MAX_M` when set.
pub fn max_vertices() -> u32 {
    std::env::var("LOOPPRES_MAX_M")
        .ok()
        .and_then(|s| s.trim().parse::<u32>().ok())
        .map_or(DEFAULT_MAX_M, |m| m.min(HARD_MAX_M))
}

/// A subset of `[m]`; vertex `v` is bit `v - 1`.
///
/// Sets are ordered by size first and bitmask second, the order in which
/// all per-subset output is reported.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `{1, …, m}`.
    pub fn full(m: u32) -> Self {
        if m >= 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << m) - 1)
        }
    }

    pub fn singleton(v: u32) -> Self {
        debug_assert!((1..=32).contains(&v));
        VertexSet(1 << (v - 1))
    }

    pub fn from_vertices<I: IntoIterator<Item = u32>>(vertices: I) -> Self {
        vertices
            .into_iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.with(v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: u32) -> bool {
        (1..=32).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub fn with(self, v: u32) -> Self {
        VertexSet(self.0 | Self::singleton(v).0)
    }

    pub fn without(self, v: u32) -> Self {
        VertexSet(self.0 & !Self::singleton(v).0)
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn max(self) -> Option<u32> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros())
    }

    /// Elements `< v`.
    pub fn below(self, v: u32) -> Self {
        VertexSet(self.0 & ((1u64 << (v.saturating_sub(1))) - 1) as u32)
    }

    /// Elements `> v`.
    pub fn above(self, v: u32) -> Self {
        if v >= 32 {
            VertexSet::EMPTY
        } else {
            VertexSet(self.0 & !((1u64 << v) - 1) as u32)
        }
    }

    /// `|{x ∈ self : x < v}|`
    pub fn count_below(self, v: u32) -> usize {
        self.below(v).len()
    }

    /// `|{x ∈ self : x > v}|`
    pub fn count_above(self, v: u32) -> usize {
        self.above(v).len()
    }

    /// Vertices in increasing order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing bitmask order (∅ first, `self` last).
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(VertexSet(cur))
        })
    }

    /// Subsets of size `k`, in increasing bitmask order.
    pub fn subsets_of_size(self, k: usize) -> impl Iterator<Item = VertexSet> {
        self.subsets().filter(move |s| s.len() == k)
    }
}

pub struct VertexIter(u32);

impl Iterator for VertexIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(v + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

impl IntoIterator for VertexSet {
    type Item = u32;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl FromIterator<u32> for VertexSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), self.0).cmp(&(other.len(), other.0))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let vs = Vec::<u32>::deserialize(d)?;
        if let Some(&bad) = vs.iter().find(|&&v| !(1..=32).contains(&v)) {
            return Err(serde::de::Error::custom(format!("vertex {bad} out of range")));
        }
        Ok(VertexSet::from_vertices(vs))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ComplexFile {
    #[serde(default)]
    m: Option<u32>,
    facets: Vec<Vec<u32>>,
}

/// A simplicial complex whose faces live in `ground ⊆ [m]`.
///
/// Every vertex of `ground` is a face. Full subcomplexes keep the labels of
/// the ambient complex and shrink `ground`.
#[derive(Clone)]
pub struct SimplicialComplex {
    m: u32,
    ground: VertexSet,
    facets: Vec<VertexSet>,
    faces: HashSet<u32>,
    /// `adjacency[v - 1]` = neighbours of `v` in the 1-skeleton.
    adjacency: Vec<VertexSet>,
    dim_plus_one: usize,
}

impl SimplicialComplex {
    /// Complex on `[m]` generated by `facets`. Vertices not covered by a
    /// facet become isolated points; redundant facets are dropped.
    pub fn new(m: u32, facets: &[Vec<u32>]) -> Result<Self> {
        let cap = max_vertices();
        if m > cap {
            return Err(Error::InvalidComplex(format!(
                "{m} vertices exceed the cap of {cap} (set LOOPPRES_MAX_M to raise it)"
            )));
        }
        let mut sets = Vec::with_capacity(facets.len());
        for facet in facets {
            for &v in facet {
                if v == 0 || v > m {
                    return Err(Error::VertexOutOfRange { vertex: v, max: m });
                }
            }
            sets.push(VertexSet::from_vertices(facet.iter().copied()));
        }
        Ok(Self::from_sets(m, VertexSet::full(m), sets))
    }

    fn from_sets(m: u32, ground: VertexSet, generators: Vec<VertexSet>) -> Self {
        let mut gens = generators;
        gens.extend(ground.iter().map(VertexSet::singleton));
        gens.sort_by(|a, b| b.cmp(a));
        gens.dedup();
        let mut facets: Vec<VertexSet> = Vec::new();
        for g in gens {
            if !facets.iter().any(|f| g.is_subset(*f)) {
                facets.push(g);
            }
        }
        facets.sort();

        let mut faces = HashSet::new();
        let mut stack: Vec<VertexSet> = facets.clone();
        while let Some(f) = stack.pop() {
            if faces.insert(f.bits()) {
                for v in f {
                    stack.push(f.without(v));
                }
            }
        }
        faces.insert(0);

        let mut adjacency = vec![VertexSet::EMPTY; m as usize];
        for &bits in &faces {
            let f = VertexSet::from_bits(bits);
            if f.len() == 2 {
                let v: Vec<u32> = f.to_vec();
                adjacency[(v[0] - 1) as usize] = adjacency[(v[0] - 1) as usize].with(v[1]);
                adjacency[(v[1] - 1) as usize] = adjacency[(v[1] - 1) as usize].with(v[0]);
            }
        }
        let dim_plus_one = facets.iter().map(|f| f.len()).max().unwrap_or(0);
        SimplicialComplex {
            m,
            ground,
            facets,
            faces,
            adjacency,
            dim_plus_one,
        }
    }

    /// Parses `{"m": int, "facets": [[int, …], …]}`; `m` defaults to the
    /// largest vertex mentioned.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ComplexFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidComplex(e.to_string()))?;
        let inferred = file.facets.iter().flatten().copied().max().unwrap_or(0);
        let m = file.m.unwrap_or(inferred);
        Self::new(m, &file.facets)
    }

    pub fn to_json(&self) -> String {
        let file = ComplexFile {
            m: Some(self.m),
            facets: self.facets.iter().map(|f| f.to_vec()).collect(),
        };
        serde_json::to_string(&file).expect("plain data")
    }

    /// The full simplex `Δ[m]` (all subsets of `[m]`).
    pub fn simplex(m: u32) -> Self {
        Self::from_sets(m, VertexSet::full(m), vec![VertexSet::full(m)])
    }

    /// `m` isolated points.
    pub fn discrete(m: u32) -> Self {
        Self::from_sets(m, VertexSet::full(m), Vec::new())
    }

    /// Boundary of the `m`-gon: edges `{i, i+1}` and `{1, m}`.
    pub fn polygon(m: u32) -> Self {
        assert!(m >= 3, "a polygon needs at least three vertices");
        let edges = (1..=m)
            .map(|i| VertexSet::from_vertices([i, i % m + 1]))
            .collect();
        Self::from_sets(m, VertexSet::full(m), edges)
    }

    /// The graph with the given edges, as a 1-dimensional complex.
    pub fn graph(m: u32, edges: &[(u32, u32)]) -> Result<Self> {
        let facets: Vec<Vec<u32>> = edges.iter().map(|&(a, b)| vec![a, b]).collect();
        Self::new(m, &facets)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Vertex set of the complex (`[m]` unless this is a full subcomplex).
    pub fn ground(&self) -> VertexSet {
        self.ground
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// `dim K + 1`, the size of the largest face.
    pub fn dimension_plus_one(&self) -> usize {
        self.dim_plus_one
    }

    pub fn is_face(&self, s: VertexSet) -> bool {
        self.faces.contains(&s.bits())
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn neighbours(&self, v: u32) -> VertexSet {
        self.adjacency[(v - 1) as usize]
    }

    pub fn is_edge(&self, a: u32, b: u32) -> bool {
        a != b && self.neighbours(a).contains(b)
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for a in self.ground {
            for b in self.neighbours(a).above(a) {
                out.push((a, b));
            }
        }
        out
    }

    /// Faces of size `k` contained in `j`, in increasing bitmask order.
    pub fn faces_of_size_in(&self, j: VertexSet, k: usize) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = if k == 0 {
            vec![VertexSet::EMPTY]
        } else if k > self.dim_plus_one {
            Vec::new()
        } else {
            self.faces
                .iter()
                .map(|&b| VertexSet::from_bits(b))
                .filter(|f| f.len() == k && f.is_subset(j))
                .collect()
        };
        out.sort_unstable_by_key(|f| f.bits());
        out
    }

    /// A minimal non-face with at least three vertices, if one exists.
    pub fn flag_witness(&self) -> Option<VertexSet> {
        for k in 2..=self.dim_plus_one {
            for f in self.faces_of_size_in(self.ground, k) {
                let common = f
                    .iter()
                    .fold(self.ground, |acc, v| acc.intersection(self.neighbours(v)));
                let top = f.max().expect("nonempty face");
                for v in common.above(top) {
                    let s = f.with(v);
                    if !self.is_face(s) && s.iter().all(|x| self.is_face(s.without(x))) {
                        return Some(s);
                    }
                }
            }
        }
        None
    }

    pub fn is_flag(&self) -> bool {
        self.flag_witness().is_none()
    }

    /// `Ok(())` for flag complexes, `NotFlag` with a witness otherwise.
    pub fn require_flag(&self) -> Result<()> {
        match self.flag_witness() {
            None => Ok(()),
            Some(witness) => Err(Error::NotFlag { witness }),
        }
    }

    /// `K_J = {I ∈ K : I ⊆ J}`, keeping the original vertex labels.
    pub fn full_subcomplex(&self, j: VertexSet) -> SimplicialComplex {
        let j = j.intersection(self.ground);
        let gens = self
            .faces
            .iter()
            .map(|&b| VertexSet::from_bits(b))
            .filter(|f| f.is_subset(j))
            .collect();
        Self::from_sets(self.m, j, gens)
    }

    /// The clique complex of the 1-skeleton; equal to `self` iff flag.
    pub fn clique_complex_of_skeleton(&self) -> SimplicialComplex {
        let mut cliques = Vec::new();
        let mut frontier: Vec<VertexSet> = self.ground.iter().map(VertexSet::singleton).collect();
        while let Some(c) = frontier.pop() {
            let common = c
                .iter()
                .fold(self.ground, |acc, v| acc.intersection(self.neighbours(v)));
            let ext = common.above(c.max().expect("nonempty"));
            if ext.is_empty() {
                cliques.push(c);
            }
            for v in ext {
                frontier.push(c.with(v));
            }
        }
        Self::from_sets(self.m, self.ground, cliques)
    }

    /// Path components of the 1-skeleton restricted to `j`, ordered by
    /// their smallest vertex.
    pub fn components(&self, j: VertexSet) -> Vec<VertexSet> {
        let mut left = j;
        let mut out = Vec::new();
        while let Some(start) = left.min() {
            let comp = self.bfs_order(j, start).into_iter().collect::<VertexSet>();
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }

    /// Breadth-first visiting order inside `j`, smallest neighbour first.
    pub fn bfs_order(&self, j: VertexSet, start: u32) -> Vec<u32> {
        let mut seen = VertexSet::singleton(start);
        let mut queue = VecDeque::from([start]);
        let mut order = Vec::new();
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in self.neighbours(v).intersection(j).difference(seen) {
                seen = seen.with(w);
                queue.push_back(w);
            }
        }
        order
    }

    /// Graph distances inside `j` from `target`; `None` for other components.
    /// Indexed by `v - 1`.
    pub fn distances_to(&self, j: VertexSet, target: u32) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.m as usize];
        dist[(target - 1) as usize] = Some(0);
        let mut queue = VecDeque::from([target]);
        while let Some(v) = queue.pop_front() {
            let d = dist[(v - 1) as usize].expect("queued vertices have a distance");
            for w in self.neighbours(v).intersection(j) {
                if dist[(w - 1) as usize].is_none() {
                    dist[(w - 1) as usize] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// `Θ(J)`: smallest vertices of the components of `K_J` not containing `max(J)`.
    pub fn theta_set(&self, j: VertexSet) -> Result<VertexSet> {
        let top = j.max().ok_or(Error::EmptySubset)?;
        Ok(self
            .components(j)
            .into_iter()
            .filter(|c| !c.contains(top))
            .map(|c| c.min().expect("components are nonempty"))
            .collect())
    }

    /// Reduced Betti number `b̃_0(K_J)`, with `b̃_0(K_∅) = 0`.
    pub fn reduced_b0(&self, j: VertexSet) -> usize {
        self.components(j).len().saturating_sub(1)
    }

    /// Matrix of `d: C_k(K_J) → C_{k-1}(K_J)` where `C_k` is spanned by faces
    /// of size `k` (so `C_0 = k·[∅]`, the augmentation). Rows and columns
    /// follow [`Self::faces_of_size_in`].
    pub fn boundary_matrix(&self, j: VertexSet, k: usize) -> ExactMatrix {
        let cols = self.faces_of_size_in(j, k);
        if k == 0 {
            return ExactMatrix::zeros(0, cols.len());
        }
        let rows = self.faces_of_size_in(j, k - 1);
        let mut d = ExactMatrix::zeros(rows.len(), cols.len());
        for (c, face) in cols.iter().enumerate() {
            for (pos, v) in face.iter().enumerate() {
                let r = rows
                    .binary_search_by_key(&face.without(v).bits(), |f| f.bits())
                    .expect("faces are closed under subsets");
                d.set(r, c, if pos % 2 == 0 { BigInt::one() } else { -BigInt::one() });
            }
        }
        d
    }

    /// `H̃_{n-1}(K_J)` with one cycle per cyclic summand (torsion first).
    ///
    /// For `n = 0` this is `H̃_{-1}`, which is the ring itself for `J = ∅`.
    pub fn reduced_homology(&self, j: VertexSet, ring: CoefficientRing, n: usize) -> Result<ReducedHomology> {
        let d1 = self.boundary_matrix(j, n);
        let d2 = self.boundary_matrix(j, n + 1);
        let inv = homology_with_representatives(&d1, &d2, ring)?;
        let faces = self.faces_of_size_in(j, n);
        let cycles = inv
            .generators
            .as_deref()
            .unwrap_or_default()
            .iter()
            .map(|v| SimplicialCycle {
                j,
                dimension: n as i32 - 1,
                terms: faces
                    .iter()
                    .zip(v)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(f, c)| (*f, c.clone()))
                    .collect(),
            })
            .collect();
        Ok(ReducedHomology {
            invariants: inv.without_generators(),
            cycles,
        })
    }

    /// f-vector `(f_{-1}, f_0, …, f_{d-1})`, h-vector and `d = dim + 1`.
    pub fn f_h_vectors(&self) -> FhVectors {
        let d = self.dim_plus_one;
        let mut f = vec![0u64; d + 1];
        for &b in &self.faces {
            f[b.count_ones() as usize] += 1;
        }
        // h(t) = Σ_i f_{i-1} t^i (1-t)^{d-i}
        let mut h = vec![BigInt::zero(); d + 1];
        for (i, &fi) in f.iter().enumerate() {
            let mut binom = BigInt::one();
            for k in 0..=d - i {
                let term = BigInt::from(fi) * &binom;
                if k % 2 == 0 {
                    h[i + k] += term;
                } else {
                    h[i + k] -= term;
                }
                binom = binom * BigInt::from(d - i - k) / BigInt::from(k + 1);
            }
        }
        FhVectors { f, h, d }
    }

    /// `χ̃(K_J)` for every `J ⊆ [m]`, indexed by the bitmask of `J`.
    pub fn reduced_euler_characteristics(&self) -> Vec<i64> {
        let size = 1usize << self.m;
        let mut chi = vec![0i64; size];
        for &b in &self.faces {
            chi[b as usize] = if b.count_ones() % 2 == 0 { -1 } else { 1 };
        }
        for bit in 0..self.m {
            let step = 1usize << bit;
            for s in 0..size {
                if s & step != 0 {
                    chi[s] += chi[s ^ step];
                }
            }
        }
        chi
    }

    /// `Σ_{J ⊆ [m]} χ̃(K_J) t^{|J|}`, coefficients by degree.
    pub fn reduced_euler_polynomial(&self) -> Vec<BigInt> {
        let mut poly = vec![BigInt::zero(); self.m as usize + 1];
        for (s, chi) in self.reduced_euler_characteristics().into_iter().enumerate() {
            if chi != 0 && VertexSet::from_bits(s as u32).is_subset(self.ground) {
                poly[(s as u32).count_ones() as usize] += chi;
            }
        }
        poly
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("m", &self.m)
            .field("ground", &self.ground)
            .field("facets", &self.facets)
            .finish()
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.ground == other.ground && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FhVectors {
    /// `f[k]` = number of faces with `k` vertices, `f[0] = 1` for `∅`.
    pub f: Vec<u64>,
    pub h: Vec<BigInt>,
    pub d: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedHomology {
    pub invariants: ModuleInvariants,
    pub cycles: Vec<SimplicialCycle>,
}

/// A chain `Σ c_I [I]` in `K_J` with all `|I| = dimension + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialCycle {
    pub j: VertexSet,
    pub dimension: i32,
    pub terms: Vec<(VertexSet, BigInt)>,
}

impl SimplicialCycle {
    pub fn new(j: VertexSet, dimension: i32, terms: Vec<(VertexSet, BigInt)>) -> Self {
        SimplicialCycle { j, dimension, terms }
    }

    /// Convenience constructor from `(vertices, coefficient)` pairs.
    pub fn from_terms(j: VertexSet, terms: &[(&[u32], i64)]) -> Self {
        let terms: Vec<(VertexSet, BigInt)> = terms
            .iter()
            .map(|(f, c)| (VertexSet::from_vertices(f.iter().copied()), BigInt::from(*c)))
            .collect();
        let dimension = terms.first().map_or(-1, |(f, _)| f.len() as i32 - 1);
        SimplicialCycle { j, dimension, terms }
    }

    /// Number of vertices per face (`n = dimension + 1`).
    pub fn face_size(&self) -> usize {
        (self.dimension + 1) as usize
    }

    /// `∂` of the chain, with the augmentation `∂[v] = [∅]`.
    pub fn boundary(&self) -> Vec<(VertexSet, BigInt)> {
        let mut acc = std::collections::BTreeMap::<VertexSet, BigInt>::new();
        for (face, c) in &self.terms {
            for (pos, v) in face.iter().enumerate() {
                let e = acc.entry(face.without(v)).or_default();
                if pos % 2 == 0 {
                    *e += c;
                } else {
                    *e -= c;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn is_cycle(&self, ring: CoefficientRing) -> bool {
        self.boundary().iter().all(|(_, c)| ring.is_zero(c))
    }

    /// Checks that every face lies in `K_J` and the chain is closed.
    pub fn validate(&self, k: &SimplicialComplex, ring: CoefficientRing) -> Result<()> {
        for (face, _) in &self.terms {
            if !face.is_subset(self.j) {
                return Err(Error::FaceOutsideJ {
                    face: *face,
                    set: self.j,
                });
            }
            if !k.is_face(*face) || face.len() != self.face_size() {
                return Err(Error::NotACycle);
            }
        }
        if self.is_cycle(ring) {
            Ok(())
        } else {
            Err(Error::NotACycle)
        }
    }
}

impl fmt::Display for SimplicialCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (face, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "[{}]", face.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(""))?;
        }
        Ok(())
    }
}
