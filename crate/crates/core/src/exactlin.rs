//! Exact linear algebra over `ℤ`, `ℚ` and `ℤ/p`.
//!
//! Over `ℤ` everything goes through [`smith_normal_form`]. Over a field the
//! Smith form degenerates to a rank computation, done by Gauss-Jordan
//! elimination with exact arithmetic (rationals or residues mod `p`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientRing::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientRing::PrimeField(p) => *p,
            _ => 0,
        }
    }

    /// Canonical representative of `x` in this ring (`0..p` for `ℤ/p`).
    pub fn reduce(&self, x: BigInt) -> BigInt {
        match self {
            CoefficientRing::PrimeField(p) => x.mod_floor(&BigInt::from(*p)),
            _ => x,
        }
    }

    pub fn reduce_i64(&self, x: i64) -> BigInt {
        self.reduce(BigInt::from(x))
    }

    pub fn is_zero(&self, x: &BigInt) -> bool {
        match self {
            CoefficientRing::PrimeField(p) => (x % BigInt::from(*p)).is_zero(),
            _ => x.is_zero(),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" | "z" => Ok(CoefficientRing::Integers),
            "Q" | "q" => Ok(CoefficientRing::Rationals),
            other => {
                let digits = other
                    .strip_prefix('F')
                    .or_else(|| other.strip_prefix('f'))
                    .ok_or_else(|| Error::PreconditionViolated(format!("unknown ring {other:?}")))?;
                let p: u64 = digits
                    .parse()
                    .map_err(|_| Error::PreconditionViolated(format!("unknown ring {other:?}")))?;
                CoefficientRing::prime_field(p)
            }
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense matrix with arbitrary-precision integer entries, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn diagonal<I: IntoIterator<Item = i64>>(entries: I) -> Self {
        let entries: Vec<i64> = entries.into_iter().collect();
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, BigInt::from(e));
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed to describe `r × 0` shapes.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(ExactMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let big = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(big, cols).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vector(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Diagonal entries `D[0][0], D[1][1], …` up to `min(rows, cols)`.
    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    fn reduced(&self, ring: CoefficientRing) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| ring.reduce(x.clone())).collect(),
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `U · M · V = D` with `U`, `V` unimodular; the inverses are tracked too.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: ExactMatrix,
    pub d: ExactMatrix,
    pub v: ExactMatrix,
    pub u_inv: ExactMatrix,
    pub v_inv: ExactMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | …`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d
            .diagonal_entries()
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct SmithState {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

impl SmithState {
    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        self.u.swap(i, k);
        for row in &mut self.u_inv {
            row.swap(i, k);
        }
    }

    /// row_i += q * row_k
    fn add_row(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            let src = m[k].clone();
            for (x, y) in m[i].iter_mut().zip(src) {
                *x += q * y;
            }
        }
        for row in &mut self.u_inv {
            let t = &row[i] * q;
            row[k] -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -std::mem::take(x);
        }
        for row in &mut self.u_inv {
            row[i] = -std::mem::take(&mut row[i]);
        }
    }

    fn swap_cols(&mut self, j: usize, l: usize) {
        if j == l {
            return;
        }
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(j, l);
        }
        self.v_inv.swap(j, l);
    }

    /// col_j += q * col_l
    fn add_col(&mut self, j: usize, l: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            let t = &row[l] * q;
            row[j] += t;
        }
        let src = self.v_inv[j].clone();
        for (x, y) in self.v_inv[l].iter_mut().zip(src) {
            *x -= q * y;
        }
    }
}

/// Smith normal form over `ℤ`.
///
/// Pivots are chosen as the entry of minimal absolute value in the remaining
/// block (lowest row, then lowest column on ties). The diagonal is
/// nonnegative and satisfies `d_1 | d_2 | …`; zeros come last.
pub fn smith_normal_form(m: &ExactMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut st = SmithState {
        a: m.to_rows(),
        u: identity_rows(r),
        u_inv: identity_rows(r),
        v: identity_rows(c),
        v_inv: identity_rows(c),
    };

    for t in 0..r.min(c) {
        let Some((pi, pj)) = min_abs_entry(&st.a, t, (t..r).flat_map(|i| (t..c).map(move |j| (i, j))))
        else {
            break;
        };
        st.swap_rows(t, pi);
        st.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..r {
                if !st.a[i][t].is_zero() {
                    let q = -st.a[i][t].div_floor(&st.a[t][t]);
                    st.add_row(i, t, &q);
                    clean &= st.a[i][t].is_zero();
                }
            }
            for j in t + 1..c {
                if !st.a[t][j].is_zero() {
                    let q = -st.a[t][j].div_floor(&st.a[t][t]);
                    st.add_col(j, t, &q);
                    clean &= st.a[t][j].is_zero();
                }
            }
            if !clean {
                let cross = std::iter::once((t, t))
                    .chain((t + 1..r).map(|i| (i, t)))
                    .chain((t + 1..c).map(|j| (t, j)));
                let (pi, pj) = min_abs_entry(&st.a, t, cross).expect("pivot is nonzero");
                st.swap_rows(t, pi);
                st.swap_cols(t, pj);
                continue;
            }
            let pivot = st.a[t][t].clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !st.a[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => st.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if st.a[t][t].is_negative() {
            st.negate_row(t);
        }
    }

    let to_matrix = |rows: Vec<Vec<BigInt>>, nc: usize| ExactMatrix::from_rows(rows, nc).expect("square");
    SmithForm {
        d: to_matrix(st.a, c),
        u: to_matrix(st.u, r),
        u_inv: to_matrix(st.u_inv, r),
        v: to_matrix(st.v, c),
        v_inv: to_matrix(st.v_inv, c),
    }
}

fn min_abs_entry(
    a: &[Vec<BigInt>],
    _t: usize,
    positions: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, j) in positions {
        let x = &a[i][j];
        if x.is_zero() {
            continue;
        }
        let better = match best {
            None => true,
            Some((bi, bj)) => {
                let y = &a[bi][bj];
                x.abs() < y.abs() || (x.abs() == y.abs() && (i, j) < (bi, bj))
            }
        };
        if better {
            best = Some((i, j));
        }
    }
    best
}

/// Invariants of a finitely generated module over a PID.
///
/// `torsion` holds the non-unit nonzero invariant factors `d_1 | d_2 | …`.
/// When present, `generators` lists one representative per cyclic summand:
/// first the torsion summands in the order of `torsion`, then the free ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleInvariants {
    pub rank: usize,
    #[serde(with = "bigint_serde::vec")]
    pub torsion: Vec<BigInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<BigInt>>>,
}

impl ModuleInvariants {
    pub fn free(rank: usize) -> Self {
        ModuleInvariants {
            rank,
            torsion: Vec::new(),
            generators: None,
        }
    }

    /// Minimal number of generators.
    pub fn gen(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Number of relations in a minimal presentation.
    pub fn rel(&self) -> usize {
        self.torsion.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gen() == 0
    }

    /// Same module, generator data dropped.
    pub fn without_generators(&self) -> Self {
        ModuleInvariants {
            rank: self.rank,
            torsion: self.torsion.clone(),
            generators: None,
        }
    }
}

/// `(gen, rel)` of the cokernel of `presentation_matrix` (columns are
/// relations among the row-indexed free generators).
pub fn module_gen_rel(presentation_matrix: &ExactMatrix, ring: CoefficientRing) -> (usize, usize) {
    let inv = cokernel_invariants(presentation_matrix, ring);
    (inv.gen(), inv.rel())
}

pub fn cokernel_invariants(presentation_matrix: &ExactMatrix, ring: CoefficientRing) -> ModuleInvariants {
    let rows = presentation_matrix.rows();
    match ring {
        CoefficientRing::Integers => {
            let snf = smith_normal_form(presentation_matrix);
            let factors = snf.invariant_factors();
            let torsion: Vec<BigInt> = factors.iter().filter(|d| !d.is_one()).cloned().collect();
            ModuleInvariants {
                rank: rows - factors.len(),
                torsion,
                generators: None,
            }
        }
        _ => ModuleInvariants::free(rows - rank(presentation_matrix, ring)),
    }
}

pub fn rank(m: &ExactMatrix, ring: CoefficientRing) -> usize {
    match ring {
        CoefficientRing::Integers => smith_normal_form(m).rank(),
        CoefficientRing::Rationals => RationalField.rref(&to_field_rows(&RationalField, m)).1.len(),
        CoefficientRing::PrimeField(p) => {
            let f = PrimeField(p);
            f.rref(&to_field_rows(&f, m)).1.len()
        }
    }
}

/// Homology `ker d1 / im d2` of `C' <-d1- C <-d2- C''`, with one
/// representative cycle (a vector in `C`) per cyclic summand.
pub fn homology_with_representatives(
    d1: &ExactMatrix,
    d2: &ExactMatrix,
    ring: CoefficientRing,
) -> Result<ModuleInvariants> {
    if d1.cols() != d2.rows() {
        return Err(Error::DimensionMismatch(format!(
            "d1 is {}x{}, d2 is {}x{}",
            d1.rows(),
            d1.cols(),
            d2.rows(),
            d2.cols()
        )));
    }
    if !d1.mul(d2)?.reduced(ring).is_zero() {
        return Err(Error::ChainConditionViolated);
    }
    match ring {
        CoefficientRing::Integers => Ok(integral_homology(d1, d2)),
        CoefficientRing::Rationals => Ok(field_homology(&RationalField, d1, d2)),
        CoefficientRing::PrimeField(p) => Ok(field_homology(&PrimeField(p), d1, d2)),
    }
}

fn integral_homology(d1: &ExactMatrix, d2: &ExactMatrix) -> ModuleInvariants {
    let n = d1.cols();
    let s1 = smith_normal_form(d1);
    let r1 = s1.rank();
    let k = n - r1;
    // ker d1 is spanned by the last k columns of V; coordinates of im d2 in
    // that basis are the last k rows of V^{-1} d2.
    let coords = s1.v_inv.mul(d2).expect("shapes checked");
    let mut c = ExactMatrix::zeros(k, d2.cols());
    for t in 0..k {
        for j in 0..d2.cols() {
            c.set(t, j, coords.get(r1 + t, j).clone());
        }
    }
    let s2 = smith_normal_form(&c);
    let diag = s2.d.diagonal_entries();
    let mut torsion = Vec::new();
    let mut torsion_gens = Vec::new();
    let mut free_gens = Vec::new();
    for t in 0..k {
        let factor = diag.get(t).cloned().unwrap_or_else(BigInt::zero);
        if factor.is_one() {
            continue;
        }
        // column t of Z * P^{-1}
        let mut v = vec![BigInt::zero(); n];
        for s in 0..k {
            let w = s2.u_inv.get(s, t);
            if w.is_zero() {
                continue;
            }
            for (i, vi) in v.iter_mut().enumerate() {
                let z = s1.v.get(i, r1 + s);
                if !z.is_zero() {
                    *vi += w * z;
                }
            }
        }
        if factor.is_zero() {
            free_gens.push(v);
        } else {
            torsion.push(factor);
            torsion_gens.push(v);
        }
    }
    let rank = free_gens.len();
    torsion_gens.extend(free_gens);
    ModuleInvariants {
        rank,
        torsion,
        generators: Some(torsion_gens),
    }
}

fn field_homology<F: Field>(field: &F, d1: &ExactMatrix, d2: &ExactMatrix) -> ModuleInvariants {
    let n = d1.cols();
    let (reduced, pivots) = field.rref(&to_field_rows(field, d1));
    let free_cols: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let kernel: Vec<Vec<F::E>> = free_cols
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); n];
            v[f] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(&reduced[r][f]);
            }
            v
        })
        .collect();
    // Coordinates of im d2 in the kernel basis: restriction to free columns.
    let image_rows: Vec<Vec<F::E>> = (0..d2.cols())
        .map(|j| free_cols.iter().map(|&f| field.from_int(d2.get(f, j))).collect())
        .collect();
    let (_, image_pivots) = field.rref(&image_rows);
    let generators: Vec<Vec<BigInt>> = (0..free_cols.len())
        .filter(|t| !image_pivots.contains(t))
        .map(|t| field.integral_vector(&kernel[t]))
        .collect();
    ModuleInvariants {
        rank: generators.len(),
        torsion: Vec::new(),
        generators: Some(generators),
    }
}

fn to_field_rows<F: Field>(field: &F, m: &ExactMatrix) -> Vec<Vec<F::E>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| field.from_int(x)).collect())
        .collect()
}

trait Field {
    type E: Clone;
    fn from_int(&self, x: &BigInt) -> Self::E;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    /// An integer vector spanning the same line (entries reduced for `ℤ/p`).
    fn integral_vector(&self, v: &[Self::E]) -> Vec<BigInt>;

    /// Reduced row echelon form and the pivot columns.
    fn rref(&self, rows: &[Vec<Self::E>]) -> (Vec<Vec<Self::E>>, Vec<usize>) {
        let mut a: Vec<Vec<Self::E>> = rows.to_vec();
        let ncols = a.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..ncols {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !self.is_zero(&a[i][col])) else {
                continue;
            };
            a.swap(r, p);
            let inv = self.inv(&a[r][col]);
            for x in a[r].iter_mut() {
                *x = self.mul(x, &inv);
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || self.is_zero(&row[col]) {
                    continue;
                }
                let factor = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = self.sub(x, &self.mul(&factor, y));
                }
            }
            pivots.push(col);
            r += 1;
        }
        a.truncate(r);
        (a, pivots)
    }
}

struct RationalField;

impl Field for RationalField {
    type E = BigRational;
    fn from_int(&self, x: &BigInt) -> BigRational {
        BigRational::from_integer(x.clone())
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn integral_vector(&self, v: &[BigRational]) -> Vec<BigInt> {
        let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if content.is_zero() {
            return ints;
        }
        ints.into_iter().map(|x| x / &content).collect()
    }
}

struct PrimeField(u64);

impl Field for PrimeField {
    type E = u64;
    fn from_int(&self, x: &BigInt) -> u64 {
        let r = x.mod_floor(&BigInt::from(self.0));
        u64::try_from(r).expect("residue fits")
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.0 as u128 - *b as u128) % self.0 as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a % self.0) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2)
        let p = self.0 as u128;
        let (mut base, mut exp, mut acc) = (*a as u128 % p, self.0 - 2, 1u128);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc as u64
    }
    fn integral_vector(&self, v: &[u64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }
}

/// Serde helpers writing integers as JSON numbers when they fit in `i64`
/// and as decimal strings otherwise.
pub mod bigint_serde {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Small(i64),
        Big(String),
    }

    fn to_repr(x: &BigInt) -> Repr {
        x.to_i64().map_or_else(|| Repr::Big(x.to_string()), Repr::Small)
    }

    fn from_repr<E: serde::de::Error>(r: Repr) -> Result<BigInt, E> {
        match r {
            Repr::Small(v) => Ok(BigInt::from(v)),
            Repr::Big(s) => s.parse().map_err(E::custom),
        }
    }

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        to_repr(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        from_repr(Repr::deserialize(d)?)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            xs.iter().map(to_repr).collect::<Vec<_>>().serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            Vec::<Repr>::deserialize(d)?.into_iter().map(from_repr).collect()
        }
    }

    pub mod map {
        use super::*;
        use std::collections::BTreeMap;

        pub fn serialize<S: Serializer>(xs: &BTreeMap<usize, BigInt>, s: S) -> Result<S::Ok, S::Error> {
            xs.iter()
                .map(|(k, v)| (*k, to_repr(v)))
                .collect::<BTreeMap<_, _>>()
                .serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, BigInt>, D::Error> {
            BTreeMap::<usize, Repr>::deserialize(d)?
                .into_iter()
                .map(|(k, v)| Ok((k, from_repr(v)?)))
                .collect()
        }
    }
}
