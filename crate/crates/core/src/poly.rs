//! Univariate polynomials over F_p, stored low degree first with no
//! trailing zeros. Used for minimal polynomials and for splitting them into
//! coprime factors.

use crate::linalg::{add, inv, mul, neg, sub, Echelon, Mat};

pub type Poly = Vec<u32>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn constant(c: u32) -> Poly {
    trim(vec![c])
}

pub fn padd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p)).collect())
}

pub fn psub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p)).collect())
}

pub fn pmul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = add(r[i + j], mul(x, y, p), p);
        }
    }
    trim(r)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u32], b: &[u32], p: u32) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = inv(b[db], p);
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u32; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mul(r[dr], lead_inv, p);
        q[dr - db] = c;
        let nc = neg(c, p);
        for (i, &bi) in b.iter().enumerate().take(db + 1) {
            r[dr - db + i] = add(r[dr - db + i], mul(bi, nc, p), p);
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn prem(a: &[u32], b: &[u32], p: u32) -> Poly {
    divrem(a, b, p).1
}

pub fn monic(a: &[u32], p: u32) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let c = inv(a[d], p);
            trim(a.iter().map(|&x| mul(x, c, p)).collect())
        }
    }
}

pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = prem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Returns `(g, s, t)` with `s·a + t·b = g = gcd(a, b)` and `g` monic.
pub fn ext_gcd(a: &[u32], b: &[u32], p: u32) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (constant(1), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), constant(1));
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = psub(&s0, &pmul(&q, &s1, p), p);
        let t2 = psub(&t0, &pmul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let d = degree(&r0).map(|d| r0[d]).unwrap_or(1);
    let c = inv(d, p);
    let sc = |v: &Poly| trim(v.iter().map(|&x| mul(x, c, p)).collect());
    (sc(&r0), sc(&s0), sc(&t0))
}

/// `a^e mod m`.
pub fn powmod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Poly {
    let mut base = prem(a, m, p);
    let mut r = prem(&constant(1), m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = prem(&pmul(&r, &base, p), m, p);
        }
        e >>= 1;
        if e > 0 {
            base = prem(&pmul(&base, &base, p), m, p);
        }
    }
    r
}

/// Evaluates `f` at a square matrix `x`.
pub fn eval_mat(f: &[u32], x: &Mat) -> Mat {
    let p = x.p();
    let n = x.rows();
    let mut acc = Mat::zeros(p, n, n);
    for &c in f.iter().rev() {
        acc = acc.mul(x);
        if c != 0 {
            for i in 0..n {
                let v = add(acc.get(i, i), c, p);
                acc.set(i, i, v);
            }
        }
    }
    acc
}

/// Minimal polynomial of a square matrix (monic).
pub fn min_poly(x: &Mat) -> Poly {
    let p = x.p();
    let n = x.rows();
    let mut ech = Echelon::new(p, n * n);
    let mut power = Mat::identity(p, n);
    loop {
        match ech.insert(power.data()) {
            Ok(()) => power = power.mul(x),
            Err(rel) => return trim(rel),
        }
    }
}

/// If `m` has at least two distinct monic irreducible factors, returns a
/// factorization `m = u·v` into coprime non-constant factors.
///
/// The number of distinct irreducible factors of `m` equals the dimension
/// of the Berlekamp fixed space `{v : v^p ≡ v mod m}`, also when `m` is not
/// squarefree, so a non-constant fixed `v` always separates factors via
/// `gcd(m, v − s)` for a suitable constant `s`.
pub fn coprime_split(m: &[u32], p: u32) -> Option<(Poly, Poly)> {
    let m = monic(m, p);
    let d = degree(&m)?;
    if d < 2 {
        return None;
    }
    // Column j of q holds t^{jp} mod m; the fixed space is ker(q - I).
    let xp = powmod(&[0, 1], p as u64, &m, p);
    let mut q = Mat::zeros(p, d, d);
    let mut cur = constant(1);
    for j in 0..d {
        for (i, &c) in cur.iter().enumerate() {
            q.set(i, j, c);
        }
        cur = prem(&pmul(&cur, &xp, p), &m, p);
    }
    let fixed = q.sub(&Mat::identity(p, d)).kernel_basis();
    if fixed.cols() <= 1 {
        return None;
    }
    for k in 0..fixed.cols() {
        let v = trim(fixed.col(k));
        if degree(&v).unwrap_or(0) == 0 {
            continue;
        }
        for s in 0..p {
            let g = gcd(&m, &psub(&v, &constant(s), p), p);
            let dg = degree(&g).unwrap_or(0);
            if dg > 0 && dg < d {
                let (h, r) = divrem(&m, &g, p);
                debug_assert!(r.is_empty());
                return Some((g, monic(&h, p)));
            }
        }
    }
    None
}

/// Polynomial `e` with `e ≡ 1 mod u` and `e ≡ 0 mod v` (u, v coprime),
/// reduced modulo `u·v`. Evaluated at an element whose minimal polynomial
/// is `u·v` it gives an idempotent.
pub fn crt_idempotent(u: &[u32], v: &[u32], p: u32) -> Poly {
    let (g, _s, t) = ext_gcd(u, v, p);
    debug_assert_eq!(g, constant(1));
    prem(&pmul(&t, v, p), &pmul(u, v, p), p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let p = 5;
        // (t+1)(t+2) = t^2 + 3t + 2
        let a = vec![2, 3, 1];
        let (q, r) = divrem(&a, &[1, 1], p);
        assert_eq!(q, vec![2, 1]);
        assert!(r.is_empty());
        assert_eq!(gcd(&a, &pmul(&[1, 1], &[3, 1], p), p), vec![1, 1]);
        let (g, s, t) = ext_gcd(&[1, 1], &[2, 1], p);
        assert_eq!(g, vec![1]);
        assert_eq!(padd(&pmul(&s, &[1, 1], p), &pmul(&t, &[2, 1], p), p), vec![1]);
    }

    #[test]
    fn minimal_polynomials() {
        let p = 2;
        let n = Mat::from_rows(p, &[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(min_poly(&n), vec![0, 0, 1]);
        assert_eq!(min_poly(&Mat::identity(p, 3)), vec![1, 1]);
        let d = Mat::from_rows(3, &[vec![1, 0], vec![0, 2]]).unwrap();
        let mp = min_poly(&d);
        assert!(eval_mat(&mp, &d).is_zero());
        assert_eq!(degree(&mp), Some(2));
    }

    #[test]
    fn coprime_splitting() {
        let p = 2;
        // t^2 (t+1)^2 over F_2 splits; t^3 and irreducible t^2+t+1 do not.
        let m = pmul(&pmul(&[0, 1], &[0, 1], p), &pmul(&[1, 1], &[1, 1], p), p);
        let (u, v) = coprime_split(&m, p).unwrap();
        assert_eq!(pmul(&u, &v, p), m);
        assert_eq!(gcd(&u, &v, p), vec![1]);
        assert!(coprime_split(&[0, 0, 0, 1], p).is_none());
        assert!(coprime_split(&[1, 1, 1], p).is_none());
        // (t^2+t+1)(t+1) over F_2
        let m2 = pmul(&[1, 1, 1], &[1, 1], p);
        assert!(coprime_split(&m2, p).is_some());
    }

    #[test]
    fn crt_gives_idempotent() {
        let p = 3;
        let u = vec![1, 1]; // t + 1
        let v = vec![0, 0, 1]; // t^2
        let e = crt_idempotent(&u, &v, p);
        let m = pmul(&u, &v, p);
        let e2 = prem(&pmul(&e, &e, p), &m, p);
        assert_eq!(e2, e);
        assert!(prem(&e, &v, p).is_empty());
        assert_eq!(prem(&e, &u, p), vec![1]);
    }
}
