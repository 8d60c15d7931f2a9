//! Series identities for flag `K` and the decomposition
//! `ΩZ_K ≃ ∏_{n≥3} (ΩS^n)^{D_n}`.
//!
//! Polynomials and truncated series are dense coefficient vectors, lowest
//! degree first.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::bigint_serde;
use crate::simplicial::SimplicialComplex;

pub const DEFAULT_CUTOFF: usize = 16;

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Product of two series, truncated after degree `n`.
pub fn series_mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(1 + t)^e`.
pub fn one_plus_t_pow(e: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for _ in 0..e {
        out = poly_mul(&out, &[BigInt::one(), BigInt::one()]);
    }
    out
}

/// `1/p` truncated after degree `n`; needs `p(0) = ±1`.
pub fn series_inverse(p: &[BigInt], n: usize) -> Result<Vec<BigInt>> {
    let c0 = p.first().cloned().unwrap_or_default();
    if !c0.abs().is_one() {
        return Err(Error::InvalidSeries(format!("constant term {c0} is not a unit")));
    }
    let mut inv = vec![BigInt::zero(); n + 1];
    inv[0] = c0.clone();
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for j in 1..=k.min(p.len().saturating_sub(1)) {
            acc += &p[j] * &inv[k - j];
        }
        inv[k] = -acc * &c0;
    }
    Ok(inv)
}

/// `h_K(-t)`.
fn h_of_minus_t(k: &SimplicialComplex) -> Vec<BigInt> {
    k.f_h_vectors()
        .h
        .into_iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 0 { c } else { -c })
        .collect()
}

/// `P(t) = (1+t)^{m-d} h_K(-t)`, the inverse of the Poincaré series of
/// `H_*(ΩZ_K)`.
pub fn loop_polynomial(k: &SimplicialComplex) -> Result<Vec<BigInt>> {
    k.require_flag()?;
    let d = k.dimension_plus_one();
    let m = k.m() as usize;
    Ok(trim(poly_mul(&one_plus_t_pow(m - d), &h_of_minus_t(k))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerIdentity {
    #[serde(with = "bigint_serde::vec")]
    pub lhs: Vec<BigInt>,
    #[serde(with = "bigint_serde::vec")]
    pub rhs: Vec<BigInt>,
    pub equal: bool,
}

/// Compares `-Σ_J χ̃(K_J) t^{|J|}` with `(1+t)^{m-d} h_K(-t)`.
pub fn euler_identity_check(k: &SimplicialComplex) -> Result<EulerIdentity> {
    let rhs = loop_polynomial(k)?;
    let lhs = trim(k.reduced_euler_polynomial().into_iter().map(|c| -c).collect());
    Ok(EulerIdentity {
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}

/// `(1 - t^k)^{-e}` truncated after degree `n`, for `e ≥ 0`.
fn geometric_power(k: usize, e: &BigInt, n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n + 1];
    let mut binom = BigInt::one();
    let mut j = 0usize;
    while j * k <= n {
        out[j * k] = binom.clone();
        // C(e+j, j+1) = C(e+j-1, j) (e+j) / (j+1)
        binom = binom * (e + BigInt::from(j)) / BigInt::from(j + 1);
        j += 1;
    }
    out
}

/// Exponents `D_n` with `P ≡ ∏_{n≥3} (1 - t^{n-1})^{D_n} mod t^{N+1}`,
/// for `3 ≤ n ≤ N + 1`.
pub fn sphere_multiplicities(p: &[BigInt], n: usize) -> Result<BTreeMap<usize, BigInt>> {
    let mut s: Vec<BigInt> = (0..=n).map(|i| p.get(i).cloned().unwrap_or_default()).collect();
    if !s[0].is_one() {
        return Err(Error::InvalidSeries(format!("constant term {} is not 1", s[0])));
    }
    if n >= 1 && !s[1].is_zero() {
        return Err(Error::InvalidSeries(format!("linear coefficient {} is not 0", s[1])));
    }
    let mut out = BTreeMap::new();
    for k in 2..=n {
        let d = -s[k].clone();
        if d.is_negative() {
            return Err(Error::NegativeMultiplicity {
                n: k + 1,
                value: d.to_string(),
            });
        }
        if !d.is_zero() {
            s = series_mul(&s, &geometric_power(k, &d, n), n);
        }
        out.insert(k + 1, d);
    }
    debug_assert!(s.iter().skip(1).all(Zero::is_zero));
    Ok(out)
}

/// `∏_n (1 - t^{n-1})^{D_n}` truncated after degree `n`.
pub fn product_expansion(d: &BTreeMap<usize, BigInt>, n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n + 1];
    out[0] = BigInt::one();
    for (&sphere, e) in d {
        let k = sphere - 1;
        if e.is_zero() || k > n {
            continue;
        }
        // (1 - t^k)^e = Σ_j (-1)^j C(e, j) t^{jk}
        let mut factor = vec![BigInt::zero(); n + 1];
        let mut binom = BigInt::one();
        let mut j = 0usize;
        while j * k <= n && !binom.is_zero() {
            factor[j * k] = if j % 2 == 0 { binom.clone() } else { -binom.clone() };
            binom = binom * (e - BigInt::from(j)) / BigInt::from(j + 1);
            j += 1;
        }
        out = series_mul(&out, &factor, n);
    }
    out
}

/// Poincaré series `1/P` of `H_*(ΩZ_K)` truncated after degree `n`.
pub fn loop_poincare_series(k: &SimplicialComplex, n: usize) -> Result<Vec<BigInt>> {
    series_inverse(&loop_polynomial(k)?, n)
}

/// Hilbert series `(1+t)^d / h_K(-t)` of `k[K]^!` truncated after degree `n`.
pub fn hilbert_series(k: &SimplicialComplex, n: usize) -> Result<Vec<BigInt>> {
    k.require_flag()?;
    let inv = series_inverse(&h_of_minus_t(k), n)?;
    Ok(series_mul(&one_plus_t_pow(k.dimension_plus_one()), &inv, n))
}

/// `rank π_N(Z_K) ⊗ ℚ` for `1 ≤ N ≤ n`, using that `π_*(S^k) ⊗ ℚ` is spanned
/// by degree `k` and, for even `k`, degree `2k - 1`.
pub fn rational_homotopy_ranks(d: &BTreeMap<usize, BigInt>, n: usize) -> BTreeMap<usize, BigInt> {
    let mut out: BTreeMap<usize, BigInt> = (1..=n).map(|big_n| (big_n, BigInt::zero())).collect();
    for (&sphere, e) in d {
        if let Some(slot) = out.get_mut(&sphere) {
            *slot += e;
        }
        if sphere % 2 == 0 {
            if let Some(slot) = out.get_mut(&(2 * sphere - 1)) {
                *slot += e;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityReport {
    #[serde(rename = "P", with = "bigint_serde::vec")]
    pub p: Vec<BigInt>,
    #[serde(rename = "D", with = "bigint_serde::map")]
    pub d: BTreeMap<usize, BigInt>,
    #[serde(with = "bigint_serde::vec")]
    pub poincare: Vec<BigInt>,
    #[serde(with = "bigint_serde::map")]
    pub rational_ranks: BTreeMap<usize, BigInt>,
}

impl MultiplicityReport {
    /// Nonzero multiplicities only.
    pub fn spheres(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.d.iter().filter(|(_, e)| !e.is_zero()).map(|(n, e)| (*n, e))
    }
}

pub fn multiplicity_report(k: &SimplicialComplex, n: usize) -> Result<MultiplicityReport> {
    let p = loop_polynomial(k)?;
    let d = sphere_multiplicities(&p, n)?;
    Ok(MultiplicityReport {
        poincare: series_inverse(&p, n)?,
        rational_ranks: rational_homotopy_ranks(&d, n),
        p,
        d,
    })
}
