//! Dense exact linear algebra over a prime field F_p.
//!
//! Matrices are row-major grids of residues in `[0, p)`. Every routine is
//! deterministic: row reduction always picks the first nonzero entry of the
//! current column, scanning rows top to bottom, and columns are processed
//! left to right.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest modulus accepted by the engine. Products of two residues must fit
/// comfortably in a `u64` accumulator together with a long running sum.
pub const MAX_PRIME: u32 = 1 << 16;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p) || p >= MAX_PRIME {
        return Err(Error::Input(format!(
            "modulus {p} must be a prime below {MAX_PRIME}"
        )));
    }
    Ok(())
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Multiplicative inverse by Fermat. Panics on zero, which is always a logic
/// error in the callers.
pub fn inv(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "inverse of zero in F_{p}");
    pow(a, (p - 2) as u64, p)
}

/// Reduces an arbitrary integer into `[0, p)`.
pub fn reduce(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// A single element of F_p carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    value: u32,
    p: u32,
}

impl FieldScalar {
    pub fn new(value: i64, p: u32) -> Self {
        FieldScalar { value: reduce(value, p), p }
    }
    pub fn value(self) -> u32 {
        self.value
    }
    pub fn modulus(self) -> u32 {
        self.p
    }
    pub fn is_zero(self) -> bool {
        self.value == 0
    }
    pub fn inverse(self) -> Option<Self> {
        (self.value != 0).then(|| FieldScalar { value: inv(self.value, self.p), p: self.p })
    }
    pub fn pow(self, e: u64) -> Self {
        FieldScalar { value: pow(self.value, e, self.p), p: self.p }
    }
}

impl Add for FieldScalar {
    type Output = FieldScalar;
    fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        FieldScalar { value: add(self.value, o.value, self.p), p: self.p }
    }
}

impl Sub for FieldScalar {
    type Output = FieldScalar;
    fn sub(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        FieldScalar { value: sub(self.value, o.value, self.p), p: self.p }
    }
}

impl Mul for FieldScalar {
    type Output = FieldScalar;
    fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        FieldScalar { value: mul(self.value, o.value, self.p), p: self.p }
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> Self {
        FieldScalar { value: neg(self.value, self.p), p: self.p }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Dense matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`Mat::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over F_{}", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Mat {
        Mat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Mat {
        let mut m = Mat::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from rows of arbitrary integers, reducing mod p.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Mat::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::Input(format!(
                    "ragged matrix: row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = reduce(v, p);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from residues already in `[0, p)`.
    pub fn from_vec(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Mat {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        debug_assert!(data.iter().all(|&v| v < p));
        Mat { p, rows, cols, data }
    }

    pub fn from_fn(p: u32, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % p);
            }
        }
        Mat { p, rows, cols, data }
    }

    /// A matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(p: u32, rows: usize, cols: &[Vec<u32>]) -> Mat {
        let mut m = Mat::zeros(p, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &v) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = v;
            }
        }
        m
    }

    pub fn column_vector(p: u32, v: &[u32]) -> Mat {
        Mat::from_vec(p, v.len(), 1, v.to_vec())
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.p, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in add");
        let p = self.p;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| add(a, b, p)).collect();
        Mat { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sub");
        let p = self.p;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| sub(a, b, p)).collect();
        Mat { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Mat {
        let p = self.p;
        Mat { p, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| neg(a, p)).collect() }
    }

    pub fn scale(&self, c: u32) -> Mat {
        let p = self.p;
        Mat { p, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| mul(a, c, p)).collect() }
    }

    /// `self += c * o`.
    pub fn add_scaled(&mut self, o: &Mat, c: u32) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in add_scaled");
        if c == 0 {
            return;
        }
        let p = self.p;
        for (a, &b) in self.data.iter_mut().zip(&o.data) {
            *a = add(*a, mul(b, c, p), p);
        }
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "shape mismatch in mul: {}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols);
        let p = self.p as u64;
        let n = o.cols;
        let mut out = vec![0u32; self.rows * n];
        let mut acc = vec![0u64; n];
        // Number of products that can be summed before the accumulator
        // needs a reduction.
        let budget = (u64::MAX / ((p - 1) * (p - 1)).max(1)).min(1 << 20) as usize;
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut pending = 0usize;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &o.data[k * n..(k + 1) * n];
                for (s, &b) in acc.iter_mut().zip(orow) {
                    *s += a * b as u64;
                }
                pending += 1;
                if pending + 1 >= budget {
                    acc.iter_mut().for_each(|a| *a %= p);
                    pending = 0;
                }
            }
            for (j, s) in acc.iter().enumerate() {
                out[i * n + j] = (s % p) as u32;
            }
        }
        Mat { p: self.p, rows: self.rows, cols: n, data: out }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut s = 0u64;
                for (k, (&a, &b)) in row.iter().zip(v).enumerate() {
                    s += a as u64 * b as u64;
                    if k % 4096 == 4095 {
                        s %= p;
                    }
                }
                (s % p) as u32
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut r = Mat::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    pub fn trace(&self) -> u32 {
        (0..self.rows.min(self.cols)).fold(0, |s, i| add(s, self.get(i, i), self.p))
    }

    /// `[self | o]`
    pub fn hstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.rows, o.rows, "hstack row mismatch");
        Mat::from_fn(self.p, self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                o.get(i, j - self.cols)
            }
        })
    }

    /// `[self ; o]`
    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Mat { p: self.p, rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn hcat(p: u32, rows: usize, parts: &[&Mat]) -> Mat {
        parts.iter().fold(Mat::zeros(p, rows, 0), |acc, m| acc.hstack(m))
    }

    pub fn vcat(p: u32, cols: usize, parts: &[&Mat]) -> Mat {
        parts.iter().fold(Mat::zeros(p, 0, cols), |acc, m| acc.vstack(m))
    }

    pub fn block_diag(&self, o: &Mat) -> Mat {
        let mut m = Mat::zeros(self.p, self.rows + o.rows, self.cols + o.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, o);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j);
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(self.p, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.p, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.p, idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    /// Flattens row-major into a single vector.
    pub fn flatten(&self) -> Vec<u32> {
        self.data.clone()
    }

    /// Reduced row-echelon form with the deterministic pivot rule.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        let rank = pivots.len();
        Rref { reduced: m, pivots, rank }
    }

    /// Row-reduces in place, only choosing pivots among the first
    /// `pivot_cols` columns. Returns pivot columns.
    fn rref_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let p = self.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let iv = inv(self.data[r * cols + c], p);
            if iv != 1 {
                for j in c..cols {
                    self.data[r * cols + j] = mul(self.data[r * cols + j], iv, p);
                }
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            for other in before.chunks_mut(cols).chain(after.chunks_mut(cols)) {
                let f = other[c];
                if f == 0 {
                    continue;
                }
                let nf = neg(f, p);
                for j in c..cols {
                    if prow[j] != 0 {
                        other[j] = add(other[j], mul(prow[j], nf, p), p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.rref().rank
        } else {
            self.transpose().rref().rank
        }
    }

    /// Columns form a basis of the right null space.
    pub fn kernel_basis(&self) -> Mat {
        let Rref { reduced, pivots, .. } = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Mat::zeros(p, self.cols, free.len());
        for (t, &f) in free.iter().enumerate() {
            k.set(f, t, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, t, neg(reduced.get(i, f), p));
            }
        }
        k
    }

    /// One particular solution of `self · X = b`, or `None` when some column
    /// of `b` is outside the column space.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>> {
        if self.rows != b.rows {
            return Err(Error::Input(format!(
                "solve: coefficient matrix has {} rows but right-hand side has {}",
                self.rows, b.rows
            )));
        }
        let mut aug = self.hstack(b);
        let pivots = aug.rref_in_place(self.cols);
        let n = self.cols;
        // Any nonzero entry of b's block in a zero row of the coefficient
        // part makes the system inconsistent.
        for i in pivots.len()..self.rows {
            if (0..b.cols).any(|j| aug.get(i, n + j) != 0) {
                return Ok(None);
            }
        }
        let mut x = Mat::zeros(self.p, n, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, aug.get(i, n + j));
            }
        }
        Ok(Some(x))
    }

    pub fn solve_vec(&self, b: &[u32]) -> Option<Vec<u32>> {
        self.solve(&Mat::column_vector(self.p, b)).ok().flatten().map(|x| x.col(0))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&Mat::identity(self.p, n));
        let pivots = aug.rref_in_place(n);
        (pivots.len() == n).then(|| aug.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// A basis (as columns) of the column space, taken from the pivot
    /// columns of `self`.
    pub fn column_space(&self) -> Mat {
        let r = self.rref();
        self.select_cols(&r.pivots)
    }

    /// Columns of `self` extended by columns of `ambient` until the span is
    /// the span of both. Returns the indices (into `ambient`) that were added.
    pub fn extend_basis(&self, ambient: &Mat) -> Vec<usize> {
        let all = self.hstack(ambient);
        let r = all.rref();
        r.pivots.iter().filter(|&&c| c >= self.cols).map(|&c| c - self.cols).collect()
    }
}

/// Coordinates relative to a fixed basis of a subspace of F_p^n.
///
/// The basis columns must be linearly independent.
#[derive(Clone, Debug)]
pub struct Coords {
    basis: Mat,
    pivot_rows: Vec<usize>,
    inv: Mat,
}

impl Coords {
    pub fn new(basis: Mat) -> Coords {
        let k = basis.cols();
        let r = basis.transpose().rref();
        assert_eq!(r.rank, k, "Coords basis must have independent columns");
        let inv = basis.select_rows(&r.pivots).inverse().expect("pivot minor is invertible");
        Coords { basis, pivot_rows: r.pivots, inv }
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    /// Coordinates of `v`, without checking membership.
    pub fn coords_unchecked(&self, v: &[u32]) -> Vec<u32> {
        let sel: Vec<u32> = self.pivot_rows.iter().map(|&i| v[i]).collect();
        self.inv.mul_vec(&sel)
    }

    /// Coordinates of `v` if it lies in the subspace.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let c = self.coords_unchecked(v);
        (self.basis.mul_vec(&c) == v).then_some(c)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coords(v).is_some()
    }

    /// Coordinates of every column of `m`, which must lie in the subspace.
    pub fn coords_of_cols(&self, m: &Mat) -> Option<Mat> {
        let sel = m.select_rows(&self.pivot_rows);
        let c = self.inv.mul(&sel);
        (self.basis.mul(&c) == *m).then_some(c)
    }

    pub fn coords_of_cols_unchecked(&self, m: &Mat) -> Mat {
        self.inv.mul(&m.select_rows(&self.pivot_rows))
    }
}

/// Incrementally maintained echelon basis that remembers how each stored
/// vector was formed from the inputs. Used for minimal polynomials and
/// generated-span closures.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    len: usize,
    rows: Vec<(usize, Vec<u32>, Vec<u32>)>,
    inputs: usize,
}

impl Echelon {
    pub fn new(p: u32, len: usize) -> Echelon {
        Echelon { p, len, rows: Vec::new(), inputs: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce_tracking(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let p = self.p;
        let mut v = v.to_vec();
        let mut combo = vec![0u32; self.inputs + 1];
        combo[self.inputs] = 1;
        for (piv, row, rc) in &self.rows {
            let f = v[*piv];
            if f == 0 {
                continue;
            }
            let nf = neg(f, p);
            for (a, &b) in v.iter_mut().zip(row) {
                if b != 0 {
                    *a = add(*a, mul(b, nf, p), p);
                }
            }
            for (a, &b) in combo.iter_mut().zip(rc) {
                if b != 0 {
                    *a = add(*a, mul(b, nf, p), p);
                }
            }
        }
        (v, combo)
    }

    /// Reduces `v` against the stored rows; zero iff `v` is in the span.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut v = v.to_vec();
        for (piv, row, _) in &self.rows {
            let f = v[*piv];
            if f == 0 {
                continue;
            }
            let nf = neg(f, p);
            for (a, &b) in v.iter_mut().zip(row) {
                if b != 0 {
                    *a = add(*a, mul(b, nf, p), p);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Inserts `v`. Returns `Ok(())` if it was independent, otherwise
    /// `Err(c)` with coefficients `c` (over all inputs so far, including this
    /// one as the last entry, which is 1) of a vanishing combination.
    pub fn insert(&mut self, v: &[u32]) -> std::result::Result<(), Vec<u32>> {
        assert_eq!(v.len(), self.len);
        let (r, mut combo) = self.reduce_tracking(v);
        let Some(piv) = r.iter().position(|&x| x != 0) else {
            return Err(combo);
        };
        let p = self.p;
        let iv = inv(r[piv], p);
        let r: Vec<u32> = r.iter().map(|&x| mul(x, iv, p)).collect();
        combo.iter_mut().for_each(|x| *x = mul(*x, iv, p));
        // Keep stored rows reduced at the new pivot so later reductions stay
        // valid in any order.
        for (_, row, rc) in self.rows.iter_mut() {
            let f = row[piv];
            if f == 0 {
                continue;
            }
            let nf = neg(f, p);
            for (a, &b) in row.iter_mut().zip(&r) {
                *a = add(*a, mul(b, nf, p), p);
            }
            rc.resize(self.inputs + 1, 0);
            for (a, &b) in rc.iter_mut().zip(&combo) {
                *a = add(*a, mul(b, nf, p), p);
            }
        }
        self.rows.push((piv, r, combo));
        self.inputs += 1;
        for (_, _, rc) in self.rows.iter_mut() {
            rc.resize(self.inputs, 0);
        }
        Ok(())
    }

    /// Inserts `v` only if it is independent; reports whether it was.
    pub fn try_add(&mut self, v: &[u32]) -> bool {
        if self.contains(v) {
            return false;
        }
        self.insert(v).is_ok()
    }
}

/// Incrementally grown span of vectors, kept fully reduced. Cheaper than
/// [`Echelon`] when no relation tracking is needed.
#[derive(Clone, Debug)]
pub struct Span {
    p: u32,
    len: usize,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Span {
    pub fn new(p: u32, len: usize) -> Span {
        Span { p, len, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.len
    }

    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut v = v.to_vec();
        for (piv, row) in &self.rows {
            let f = v[*piv];
            if f == 0 {
                continue;
            }
            let nf = neg(f, p);
            for (a, &b) in v.iter_mut().zip(row) {
                if b != 0 {
                    *a = add(*a, mul(b, nf, p), p);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` if it is independent of the span; reports whether it was.
    pub fn try_add(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.len);
        let r = self.reduce(v);
        let Some(piv) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let p = self.p;
        let iv = inv(r[piv], p);
        let r: Vec<u32> = r.iter().map(|&x| mul(x, iv, p)).collect();
        for (_, row) in self.rows.iter_mut() {
            let f = row[piv];
            if f == 0 {
                continue;
            }
            let nf = neg(f, p);
            for (a, &b) in row.iter_mut().zip(&r) {
                if b != 0 {
                    *a = add(*a, mul(b, nf, p), p);
                }
            }
        }
        self.rows.push((piv, r));
        true
    }

    /// The stored (reduced) rows as the rows of a matrix.
    pub fn to_rows_mat(&self) -> Mat {
        let mut m = Mat::zeros(self.p, self.rows.len(), self.len);
        for (i, (_, row)) in self.rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// The stored rows as the columns of a matrix.
    pub fn to_cols_mat(&self) -> Mat {
        self.to_rows_mat().transpose()
    }
}

/// Vector helpers on `&[u32]` residues.
pub mod vec {
    use super::{add, mul, neg, sub};

    pub fn zero(n: usize) -> Vec<u32> {
        vec![0; n]
    }
    pub fn unit(n: usize, i: usize) -> Vec<u32> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }
    pub fn add_v(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| add(x, y, p)).collect()
    }
    pub fn sub_v(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| sub(x, y, p)).collect()
    }
    pub fn neg_v(a: &[u32], p: u32) -> Vec<u32> {
        a.iter().map(|&x| neg(x, p)).collect()
    }
    pub fn scale_v(a: &[u32], c: u32, p: u32) -> Vec<u32> {
        a.iter().map(|&x| mul(x, c, p)).collect()
    }
    pub fn axpy(y: &mut [u32], c: u32, x: &[u32], p: u32) {
        if c == 0 {
            return;
        }
        for (a, &b) in y.iter_mut().zip(x) {
            *a = add(*a, mul(b, c, p), p);
        }
    }
    pub fn is_zero(a: &[u32]) -> bool {
        a.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(p: u32, rows: &[&[i64]]) -> Mat {
        Mat::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn scalar_arithmetic() {
        let a = FieldScalar::new(3, 7);
        assert_eq!((a + FieldScalar::new(4, 7)).value(), 0);
        assert_eq!((a * a.inverse().unwrap()).value(), 1);
        assert_eq!(FieldScalar::new(-1, 5).value(), 4);
        assert!(FieldScalar::new(0, 5).inverse().is_none());
    }

    #[test]
    fn rref_examples() {
        let r = Mat::identity(2, 2).rref();
        assert_eq!(r.reduced, Mat::identity(2, 2));
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);

        let r = m(2, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r.reduced, m(2, &[&[1, 1], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);

        let r = Mat::zeros(2, 3, 3).rref();
        assert!(r.reduced.is_zero());
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Mat::identity(3, 2).kernel_basis().cols(), 0);
        let k = m(2, &[&[1, 1], &[1, 1]]).kernel_basis();
        assert_eq!(k, m(2, &[&[1], &[1]]));
        let k = Mat::zeros(2, 2, 2).kernel_basis();
        assert_eq!(k.cols(), 2);
        assert_eq!(k.rank(), 2);
    }

    #[test]
    fn solve_examples() {
        let b = m(5, &[&[1, 4], &[2, 3]]);
        assert_eq!(Mat::identity(5, 2).solve(&b).unwrap().unwrap(), b);
        let a = m(2, &[&[1, 1], &[1, 1]]);
        let x = a.solve(&m(2, &[&[1], &[1]])).unwrap().unwrap();
        assert_eq!(x, m(2, &[&[1], &[0]]));
        assert!(a.solve(&m(2, &[&[1], &[0]])).unwrap().is_none());
        assert!(a.solve(&m(2, &[&[1]])).is_err());
    }

    #[test]
    fn inverse_and_coords() {
        let a = m(7, &[&[2, 1], &[1, 1]]);
        let ai = a.inverse().unwrap();
        assert!(a.mul(&ai).is_identity());
        let basis = m(3, &[&[1, 0], &[1, 1], &[0, 2]]);
        let c = Coords::new(basis.clone());
        let v = basis.mul_vec(&[2, 1]);
        assert_eq!(c.coords(&v), Some(vec![2, 1]));
        assert_eq!(c.coords(&[1, 0, 0]), None);
    }

    #[test]
    fn echelon_tracks_relations() {
        let mut e = Echelon::new(3, 3);
        assert!(e.insert(&[1, 0, 1]).is_ok());
        assert!(e.insert(&[0, 1, 1]).is_ok());
        // (1,1,2) = v0 + v1, so relation v0 + v1 - v2 = 0.
        let rel = e.insert(&[1, 1, 2]).unwrap_err();
        assert_eq!(rel, vec![2, 2, 1]);
    }

    fn arb_mat() -> impl Strategy<Value = Mat> {
        (prop::sample::select(vec![2u32, 3, 5, 7]), 0usize..7, 0usize..7).prop_flat_map(|(p, r, c)| {
            prop::collection::vec(0..p, r * c).prop_map(move |d| Mat::from_vec(p, r, c, d))
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(a in arb_mat()) {
            let r = a.rref();
            prop_assert_eq!(r.reduced.rref().reduced, r.reduced.clone());
            prop_assert!(r.pivots.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(r.rank <= a.rows().min(a.cols()));
        }

        #[test]
        fn rank_nullity(a in arb_mat()) {
            let k = a.kernel_basis();
            prop_assert_eq!(a.rank() + k.cols(), a.cols());
            prop_assert!(a.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn solve_is_exact(a in arb_mat(), seed in 0u64..1000) {
            let p = a.p();
            let x0 = Mat::from_fn(p, a.cols(), 2, |i, j| ((seed as usize + 3 * i + 7 * j) % p as usize) as u32);
            let b = a.mul(&x0);
            let x = a.solve(&b).unwrap();
            prop_assert!(x.is_some());
            prop_assert_eq!(a.mul(&x.unwrap()), b);
        }

        #[test]
        fn solve_absent_iff_outside_column_space(a in arb_mat(), bits in 0u32..128) {
            let b: Vec<u32> = (0..a.rows()).map(|i| (bits >> i) & 1).collect();
            let inside = a.hstack(&Mat::column_vector(a.p(), &b)).rank() == a.rank();
            let x = a.solve(&Mat::column_vector(a.p(), &b)).unwrap();
            prop_assert_eq!(x.is_some(), inside);
        }
    }
}
