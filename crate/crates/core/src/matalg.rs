//! Subalgebras of a full matrix algebra M_n(F_p), given by a spanning set
//! of matrices that contains the identity in its span.
//!
//! Two services are provided: the Jacobson radical, computed exactly with
//! the iterated trace-form method of Cohen, Ivanyos and Wales (which is
//! valid in every characteristic), and the search for a nontrivial
//! idempotent, which is how modules and algebras are split into
//! indecomposable pieces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{internal, Result};
use crate::linalg::{Coords, Mat};
use crate::poly;

#[derive(Clone, Debug)]
pub struct MatAlgebra {
    p: u32,
    n: usize,
    basis: Vec<Mat>,
}

/// Result of an idempotent search.
#[derive(Clone, Debug)]
pub enum Splitting {
    /// The algebra is local: every element is nilpotent or invertible.
    Local,
    /// A nontrivial idempotent of the algebra.
    Idempotent(Mat),
}

impl MatAlgebra {
    /// Extracts a basis from `spanning` (all `n × n`).
    pub fn new(p: u32, n: usize, spanning: &[Mat]) -> MatAlgebra {
        let mut ech = crate::linalg::Echelon::new(p, n * n);
        let mut basis = Vec::new();
        for m in spanning {
            assert_eq!((m.rows(), m.cols()), (n, n));
            if ech.try_add(m.data()) {
                basis.push(m.clone());
            }
        }
        MatAlgebra { p, n, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    /// Basis of the Jacobson radical, as matrices.
    ///
    /// With `l = ⌊log_p n⌋`, set `I_{-1}` to the whole algebra and
    /// `I_i = {a ∈ I_{i-1} : g_i(ab) = 0 for all b}` where
    /// `g_i(z) = Tr(ẑ^{p^i}) / p^i mod p` for an integer lift `ẑ`. Each `g_i`
    /// is linear on `I_{i-1}`, and `I_l` is the radical.
    pub fn radical(&self) -> Vec<Mat> {
        let polys: Vec<poly::Poly> = self.basis.iter().map(poly::min_poly).collect();
        self.local_radical(&polys).unwrap_or_else(|| self.trace_radical())
    }

    /// The radical when the algebra is local with residue field `F_p`,
    /// found without trace forms: each basis element is `λ + ν` with `ν`
    /// nilpotent, and the span `N` of the `ν` is the radical as soon as it
    /// has codimension one and acts nilpotently on `F_p^n`. Then the
    /// algebra `N` generates is nilpotent and misses `1`, so by dimension it
    /// is `N` itself, an ideal with quotient `F_p`.
    fn local_radical(&self, polys: &[poly::Poly]) -> Option<Vec<Mat>> {
        let (p, n) = (self.p, self.n);
        let mut nil = Vec::new();
        let mut span = crate::linalg::Span::new(p, n * n);
        for (b, m) in self.basis.iter().zip(polys) {
            let lambda = (0..p).find(|&t| eval_at(m, t, p) == 0)?;
            let mut v = b.clone();
            v.add_scaled(&Mat::identity(p, n), crate::linalg::neg(lambda, p));
            if span.try_add(v.data()) {
                nil.push(v);
            }
        }
        if nil.len() + 1 != self.dim() {
            return None;
        }
        let mut layer: Vec<Vec<u32>> = Mat::identity(p, n).col_vecs();
        while !layer.is_empty() {
            let mut next = crate::linalg::Span::new(p, n);
            let mut vecs = Vec::new();
            for x in &nil {
                for v in &layer {
                    let w = x.mul_vec(v);
                    if next.try_add(&w) {
                        vecs.push(w);
                    }
                }
            }
            if vecs.len() >= layer.len() {
                return None;
            }
            layer = vecs;
        }
        Some(nil)
    }

    fn trace_radical(&self) -> Vec<Mat> {
        let p = self.p;
        let n = self.n;
        let mut levels = 0u32;
        let mut pw = p as u64;
        while pw <= n as u64 {
            levels += 1;
            pw *= p as u64;
        }
        let mut cur: Vec<Mat> = self.basis.clone();
        for i in 0..=levels {
            if cur.is_empty() {
                break;
            }
            let mut g = Mat::zeros(p, self.basis.len(), cur.len());
            for (j, x) in cur.iter().enumerate() {
                for (k, y) in self.basis.iter().enumerate() {
                    let v = if i == 0 { trace_of_product(x, y) } else { g_form(&x.mul(y), i) };
                    g.set(k, j, v);
                }
            }
            let ker = g.kernel_basis();
            cur = (0..ker.cols())
                .map(|c| {
                    let mut acc = Mat::zeros(p, n, n);
                    for (j, x) in cur.iter().enumerate() {
                        acc.add_scaled(x, ker.get(j, c));
                    }
                    acc
                })
                .collect();
        }
        cur
    }

    /// Looks for a nontrivial idempotent, certifying locality when none
    /// exists. Candidates are tried in a fixed order: basis elements, then
    /// Frobenius-fixed elements of the semisimple quotient (or of its
    /// centre), then seeded random combinations.
    pub fn split(&self, seed: u64) -> Result<Splitting> {
        let mut polys = Vec::with_capacity(self.dim());
        for b in &self.basis {
            let m = poly::min_poly(b);
            if let Some((u, v)) = poly::coprime_split(&m, self.p) {
                let e = poly::crt_idempotent(&u, &v, self.p);
                return Ok(Splitting::Idempotent(poly::eval_mat(&e, b)));
            }
            polys.push(m);
        }
        let rad = self.local_radical(&polys).unwrap_or_else(|| self.trace_radical());
        let semisimple_dim = self.dim() - rad.len();
        if semisimple_dim <= 1 {
            return Ok(Splitting::Local);
        }
        let quo = Quotient::new(self, rad);
        if quo.is_commutative() {
            let fixed = quo.frobenius_fixed(&Mat::identity(self.p, quo.comp.len()));
            if fixed.cols() <= 1 {
                return Ok(Splitting::Local);
            }
            for c in 0..fixed.cols() {
                if let Some(e) = idempotent_from(&quo.lift(&fixed.col(c))) {
                    return Ok(Splitting::Idempotent(e));
                }
            }
            return internal("commutative semisimple quotient with several factors but no splitting element");
        }
        let centre = quo.centre();
        if centre.cols() > 1 {
            let fixed = quo.frobenius_fixed(&centre);
            if fixed.cols() > 1 {
                for c in 0..fixed.cols() {
                    let z = centre.mul_vec(&fixed.col(c));
                    if let Some(e) = idempotent_from(&quo.lift(&z)) {
                        return Ok(Splitting::Idempotent(e));
                    }
                }
            }
        }
        // The quotient is a full matrix algebra of size at least two over
        // a finite field, so it is not local; random elements with split
        // minimal polynomial are plentiful.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..4000 {
            let mut x = Mat::zeros(self.p, self.n, self.n);
            for b in &self.basis {
                x.add_scaled(b, rng.gen_range(0..self.p));
            }
            if let Some(e) = idempotent_from(&x) {
                return Ok(Splitting::Idempotent(e));
            }
        }
        internal("no idempotent found in a non-local matrix algebra")
    }

    /// True iff the algebra is local.
    pub fn is_local(&self) -> Result<bool> {
        Ok(matches!(self.split(0)?, Splitting::Local))
    }
}

/// Nontrivial idempotent polynomial in `x`, if the minimal polynomial of
/// `x` has two coprime factors.
pub fn idempotent_from(x: &Mat) -> Option<Mat> {
    let p = x.p();
    let m = poly::min_poly(x);
    let (u, v) = poly::coprime_split(&m, p)?;
    let e = poly::crt_idempotent(&u, &v, p);
    Some(poly::eval_mat(&e, x))
}

fn eval_at(f: &[u32], t: u32, p: u32) -> u32 {
    f.iter().rev().fold(0, |acc, &c| crate::linalg::add(crate::linalg::mul(acc, t, p), c, p))
}

/// Tr(xy) in O(n²).
fn trace_of_product(x: &Mat, y: &Mat) -> u32 {
    let p = x.p() as u64;
    let n = x.rows();
    let mut s = 0u64;
    for a in 0..n {
        for b in 0..n {
            s += x.get(a, b) as u64 * y.get(b, a) as u64;
        }
        s %= p;
    }
    (s % p) as u32
}

/// `Tr(ẑ^{p^i}) / p^i mod p`, computed with integer arithmetic modulo
/// `p^{i+1}`.
fn g_form(z: &Mat, i: u32) -> u32 {
    let p = z.p() as u64;
    let modulus = p.pow(i + 1);
    let n = z.rows();
    let mut cur: Vec<u64> = z.data().iter().map(|&v| v as u64).collect();
    for _ in 0..i {
        // Raise to the p-th power.
        let base = cur.clone();
        for _ in 1..p {
            cur = int_mul(&cur, &base, n, modulus);
        }
    }
    let tr = (0..n).fold(0u64, |s, a| (s + cur[a * n + a]) % modulus);
    let scale = p.pow(i);
    debug_assert_eq!(tr % scale, 0, "trace form not divisible at level {i}");
    ((tr / scale) % p) as u32
}

fn int_mul(a: &[u64], b: &[u64], n: usize, modulus: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % modulus;
            }
        }
    }
    out
}

/// The semisimple quotient `E / rad E`, represented by a complement of the
/// radical inside a basis adapted as `[rad | comp]`.
struct Quotient {
    p: u32,
    n: usize,
    rad_dim: usize,
    comp: Vec<Mat>,
    coords: Coords,
}

impl Quotient {
    fn new(alg: &MatAlgebra, rad: Vec<Mat>) -> Quotient {
        let (p, n) = (alg.p, alg.n);
        let mut ech = crate::linalg::Echelon::new(p, n * n);
        for r in &rad {
            ech.insert(r.data()).expect("radical basis is independent");
        }
        let mut comp = Vec::new();
        for b in &alg.basis {
            if ech.try_add(b.data()) {
                comp.push(b.clone());
            }
        }
        let cols: Vec<Vec<u32>> = rad.iter().chain(comp.iter()).map(|m| m.flatten()).collect();
        let coords = Coords::new(Mat::from_cols(p, n * n, &cols));
        Quotient { p, n, rad_dim: rad.len(), comp, coords }
    }

    /// Coordinates of an algebra element modulo the radical.
    fn reduce(&self, x: &Mat) -> Vec<u32> {
        let c = self.coords.coords_unchecked(x.data());
        c[self.rad_dim..].to_vec()
    }

    fn lift(&self, v: &[u32]) -> Mat {
        let mut acc = Mat::zeros(self.p, self.n, self.n);
        for (c, m) in v.iter().zip(&self.comp) {
            acc.add_scaled(m, *c);
        }
        acc
    }

    fn is_commutative(&self) -> bool {
        for (i, a) in self.comp.iter().enumerate() {
            for b in &self.comp[i + 1..] {
                let c = a.mul(b).sub(&b.mul(a));
                if self.reduce(&c).iter().any(|&v| v != 0) {
                    return false;
                }
            }
        }
        true
    }

    /// Centre of the quotient, as columns in complement coordinates.
    fn centre(&self) -> Mat {
        let s = self.comp.len();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for c in &self.comp {
            // Column j: reduce(comp_j c - c comp_j).
            let cols: Vec<Vec<u32>> = self.comp.iter().map(|z| self.reduce(&z.mul(c).sub(&c.mul(z)))).collect();
            let block = Mat::from_cols(self.p, s, &cols);
            rows.extend(block.to_rows());
        }
        let m = Mat::from_vec(self.p, rows.len(), s, rows.concat());
        m.kernel_basis()
    }

    /// Fixed vectors of the Frobenius map restricted to the commutative
    /// subspace spanned by the columns of `sub` (complement coordinates).
    /// The result is expressed in coordinates relative to `sub`.
    fn frobenius_fixed(&self, sub: &Mat) -> Mat {
        let p = self.p;
        let k = sub.cols();
        let sub_coords = Coords::new(sub.clone());
        let mut f = Mat::zeros(p, k, k);
        for j in 0..k {
            let x = self.lift(&sub.col(j));
            let xp = x.pow(p as u64);
            let red = self.reduce(&xp);
            let c = sub_coords.coords_unchecked(&red);
            for (i, v) in c.into_iter().enumerate() {
                f.set(i, j, v);
            }
        }
        f.sub(&Mat::identity(p, k)).kernel_basis()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(p: u32, n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(p, n, n);
        m.set(i, j, 1);
        m
    }

    /// All elements of a small algebra, enumerated.
    fn elements(alg: &MatAlgebra) -> Vec<Mat> {
        let p = alg.p;
        let d = alg.dim();
        let total = (p as usize).pow(d as u32);
        (0..total)
            .map(|mut idx| {
                let mut acc = Mat::zeros(p, alg.n, alg.n);
                for b in &alg.basis {
                    acc.add_scaled(b, (idx % p as usize) as u32);
                    idx /= p as usize;
                }
                acc
            })
            .collect()
    }

    fn is_nilpotent(x: &Mat) -> bool {
        x.pow(x.rows() as u64).is_zero()
    }

    /// Radical by definition: x with xy nilpotent for every y.
    fn brute_radical_dim(alg: &MatAlgebra) -> usize {
        let els = elements(alg);
        let rad: Vec<&Mat> = els.iter().filter(|x| els.iter().all(|y| is_nilpotent(&x.mul(y)))).collect();
        let mut e = crate::linalg::Echelon::new(alg.p, alg.n * alg.n);
        rad.iter().filter(|m| e.try_add(m.data())).count()
    }

    fn upper_triangular(p: u32, n: usize) -> MatAlgebra {
        let mut s = Vec::new();
        for i in 0..n {
            for j in i..n {
                s.push(unit(p, n, i, j));
            }
        }
        MatAlgebra::new(p, n, &s)
    }

    #[test]
    fn radical_matches_definition() {
        // Upper triangular 2x2 and 3x3, full matrix algebra, truncated
        // polynomial rings in their regular representation.
        let mut cases = vec![upper_triangular(2, 2), upper_triangular(3, 2), upper_triangular(2, 3)];
        let full: Vec<Mat> = (0..2).flat_map(|i| (0..2).map(move |j| unit(2, 2, i, j))).collect();
        cases.push(MatAlgebra::new(2, 2, &full));
        for (p, n) in [(2u32, 3usize), (2, 4), (3, 3), (3, 2)] {
            let mut shift = Mat::zeros(p, n, n);
            for i in 0..n - 1 {
                shift.set(i + 1, i, 1);
            }
            let pows: Vec<Mat> = (0..n).map(|k| shift.pow(k as u64)).collect();
            cases.push(MatAlgebra::new(p, n, &pows));
        }
        // Diagonal algebra F_2 x F_2 x F_2 embedded in 3x3 with an extra
        // nilpotent block: span{I, E11, E12}.
        cases.push(MatAlgebra::new(2, 2, &[Mat::identity(2, 2), unit(2, 2, 0, 0), unit(2, 2, 0, 1)]));
        for alg in &cases {
            assert_eq!(alg.radical().len(), brute_radical_dim(alg), "radical mismatch for {:?}", alg.basis);
        }
    }

    #[test]
    fn local_shortcut_agrees_with_trace_forms() {
        let mut seen = 0;
        for (p, n) in [(2u32, 3usize), (2, 5), (3, 4), (5, 3)] {
            let mut shift = Mat::zeros(p, n, n);
            for i in 0..n - 1 {
                shift.set(i + 1, i, 1);
            }
            let pows: Vec<Mat> = (0..n).map(|k| shift.pow(k as u64).add(&Mat::identity(p, n).scale(k as u32 % p))).collect();
            let mut algebras = vec![MatAlgebra::new(p, n, &pows)];
            algebras.push(upper_triangular(p, n));
            algebras.push(MatAlgebra::new(p, n, &[Mat::identity(p, n)]));
            for alg in &algebras {
                let polys: Vec<_> = alg.basis.iter().map(poly::min_poly).collect();
                let slow = alg.trace_radical();
                match alg.local_radical(&polys) {
                    Some(fast) => {
                        seen += 1;
                        let mut span = crate::linalg::Span::new(p, n * n);
                        slow.iter().for_each(|m| {
                            span.try_add(m.data());
                        });
                        assert_eq!(fast.len(), slow.len());
                        assert!(fast.iter().all(|m| span.contains(m.data())));
                    }
                    None => assert_ne!(alg.dim() - slow.len(), 1, "a local algebra was missed"),
                }
            }
        }
        assert!(seen >= 8);
    }

    #[test]
    fn locality_and_splitting() {
        let p = 2;
        let full: Vec<Mat> = (0..2).flat_map(|i| (0..2).map(move |j| unit(p, 2, i, j))).collect();
        let m2 = MatAlgebra::new(p, 2, &full);
        match m2.split(0).unwrap() {
            Splitting::Idempotent(e) => {
                assert_eq!(e.mul(&e), e);
                assert!(!e.is_zero() && !e.is_identity());
            }
            Splitting::Local => panic!("M_2 is not local"),
        }
        // F_4 realised as 2x2 matrices over F_2: local (a field).
        let c = Mat::from_rows(p, &[vec![0, 1], vec![1, 1]]).unwrap();
        let f4 = MatAlgebra::new(p, 2, &[Mat::identity(p, 2), c]);
        assert!(f4.is_local().unwrap());
        // F_2[x]/(x^3) is local.
        let mut s = Mat::zeros(p, 3, 3);
        s.set(1, 0, 1);
        s.set(2, 1, 1);
        let tp = MatAlgebra::new(p, 3, &[Mat::identity(p, 3), s.clone(), s.mul(&s)]);
        assert!(tp.is_local().unwrap());
        assert!(!upper_triangular(3, 2).is_local().unwrap());
    }

    #[test]
    fn split_needs_quotient_analysis() {
        // A basis of M_2(F_3) in which no single element has a split
        // minimal polynomial: the identity and three nilpotents.
        let p = 3;
        let b = vec![
            Mat::identity(p, 2),
            unit(p, 2, 0, 1),
            unit(p, 2, 1, 0),
            Mat::from_rows(p, &[vec![1, 1], vec![-1, -1]]).unwrap(),
        ];
        assert!(b.iter().all(|x| idempotent_from(x).is_none()));
        let alg = MatAlgebra::new(p, 2, &b);
        assert_eq!(alg.dim(), 4);
        match alg.split(7).unwrap() {
            Splitting::Idempotent(e) => assert_eq!(e.mul(&e), e),
            Splitting::Local => panic!("M_2 is not local"),
        }
    }
}
