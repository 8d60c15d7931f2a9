//! Shared corpus of flag complexes and small independent oracles.
#![allow(dead_code)]

use std::collections::BTreeMap;

use looppres::{SimplicialComplex, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5eed_1ea5;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Clique complex of a random graph on `m` vertices.
pub fn random_flag_complex(rng: &mut ChaCha8Rng, m: u32) -> SimplicialComplex {
    let p = [0.3, 0.5, 0.7][rng.gen_range(0..3)];
    let mut edges = Vec::new();
    for a in 1..=m {
        for b in a + 1..=m {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    SimplicialComplex::graph(m, &edges).unwrap().clique_complex_of_skeleton()
}

pub fn random_corpus(count: usize, max_m: u32, seed: u64) -> Vec<SimplicialComplex> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let m = rng.gen_range(2..=max_m);
            random_flag_complex(&mut rng, m)
        })
        .collect()
}

/// 1-skeleton clique complex of the 6-vertex triangulation of RP².
pub fn rp2_skeleton_clique() -> SimplicialComplex {
    let facets: Vec<Vec<u32>> = [
        [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
        [2, 3, 5], [2, 4, 5], [2, 4, 6], [3, 4, 6], [3, 5, 6],
    ]
    .iter()
    .map(|f| f.to_vec())
    .collect();
    SimplicialComplex::new(6, &facets).unwrap().clique_complex_of_skeleton()
}

pub fn named_complexes() -> Vec<(String, SimplicialComplex)> {
    let mut out = Vec::new();
    for m in 4..=8 {
        out.push((format!("{m}-gon"), SimplicialComplex::polygon(m)));
    }
    for m in [1, 3, 4] {
        out.push((format!("simplex on {m}"), SimplicialComplex::simplex(m)));
    }
    for m in [2, 3, 4] {
        out.push((format!("{m} points"), SimplicialComplex::discrete(m)));
    }
    out.push((
        "path on 5".into(),
        SimplicialComplex::graph(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap(),
    ));
    out.push((
        "star on 6".into(),
        SimplicialComplex::graph(6, &[(1, 2), (1, 3), (1, 4), (1, 5), (1, 6)]).unwrap(),
    ));
    out.push((
        "tree on 7".into(),
        SimplicialComplex::graph(7, &[(1, 4), (2, 4), (3, 4), (4, 5), (5, 6), (5, 7)]).unwrap(),
    ));
    out.push(("RP2 skeleton clique".into(), rp2_skeleton_clique()));
    out
}

/// Number of connected components of `K_J` by union-find on edges.
pub fn component_count(k: &SimplicialComplex, j: VertexSet) -> usize {
    let mut parent: Vec<u32> = (0..=k.m()).collect();
    fn find(p: &mut [u32], x: u32) -> u32 {
        let mut r = x;
        while p[r as usize] != r {
            r = p[r as usize];
        }
        p[x as usize] = r;
        r
    }
    for (a, b) in k.edges() {
        if j.contains(a) && j.contains(b) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra as usize] = rb;
        }
    }
    let mut roots: Vec<u32> = j.iter().map(|v| find(&mut parent, v)).collect();
    roots.sort();
    roots.dedup();
    roots.len()
}

/// Free associative algebra on letters `u_1, u_2, …` (all of degree one),
/// with integer coefficients.
pub type Mini = BTreeMap<Vec<u32>, i64>;

pub fn mini_clean(mut p: Mini) -> Mini {
    p.retain(|_, c| *c != 0);
    p
}

pub fn mini_letter(i: u32) -> Mini {
    Mini::from([(vec![i], 1)])
}

pub fn mini_word(w: &[u32]) -> Mini {
    Mini::from([(w.to_vec(), 1)])
}

pub fn mini_add(a: &Mini, b: &Mini, scale: i64) -> Mini {
    let mut out = a.clone();
    for (w, c) in b {
        *out.entry(w.clone()).or_default() += scale * c;
    }
    mini_clean(out)
}

pub fn mini_mul(a: &Mini, b: &Mini) -> Mini {
    let mut out = Mini::new();
    for (x, c) in a {
        for (y, d) in b {
            let mut w = x.clone();
            w.extend(y);
            *out.entry(w).or_default() += c * d;
        }
    }
    mini_clean(out)
}

/// Degree of a homogeneous element (word length).
pub fn mini_degree(a: &Mini) -> usize {
    a.keys().next().map_or(0, Vec::len)
}

/// `[a, b] = ab - (-1)^{|a||b|} ba` for homogeneous `a`, `b`.
pub fn mini_bracket(a: &Mini, b: &Mini) -> Mini {
    let s = if mini_degree(a) * mini_degree(b) % 2 == 0 { 1 } else { -1 };
    mini_add(&mini_mul(a, b), &mini_mul(b, a), -s)
}

/// `[u_{i_1}, [u_{i_2}, … [u_{i_k}, x]]]`.
pub fn mini_nested(set: VertexSet, x: &Mini) -> Mini {
    let mut acc = x.clone();
    for a in set.to_vec().into_iter().rev() {
        acc = mini_bracket(&mini_letter(a), &acc);
    }
    acc
}

pub fn random_homogeneous(rng: &mut ChaCha8Rng, m: u32, degree: usize, terms: usize) -> Mini {
    let mut out = Mini::new();
    for _ in 0..terms {
        let w: Vec<u32> = (0..degree).map(|_| rng.gen_range(1..=m)).collect();
        *out.entry(w).or_default() += rng.gen_range(-3..=3);
    }
    let out = mini_clean(out);
    if out.is_empty() {
        mini_word(&vec![1; degree])
    } else {
        out
    }
}
