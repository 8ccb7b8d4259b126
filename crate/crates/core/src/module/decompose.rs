//! Krull–Schmidt decomposition, endomorphism algebras and isomorphism
//! tests.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{combine, hom_basis, Module};
use crate::algebra::{Algebra, AlgebraTable};
use crate::error::{Error, Result};
use crate::linalg::{Coords, Mat};
use crate::matalg::{MatAlgebra, Splitting};

/// An indecomposable summand with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Piece {
    pub module: Module,
    /// `dim M × dim piece`
    pub incl: Mat,
    /// `dim piece × dim M`
    pub proj: Mat,
}

/// `M ≅ ⊕ pieces`, with pieces grouped into isomorphism classes.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub pieces: Vec<Piece>,
    /// For each class, the indices of its pieces; the first is the
    /// representative.
    pub classes: Vec<Vec<usize>>,
}

impl Decomposition {
    /// `(representative, multiplicity)` per isomorphism class.
    pub fn summands(&self) -> Vec<(&Module, usize)> {
        self.classes.iter().map(|c| (&self.pieces[c[0]].module, c.len())).collect()
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }
}

/// The endomorphism algebra with its basis identified with
/// `hom_basis(m, m)`.
pub fn end_algebra(m: &Module) -> Result<(Arc<Algebra>, Vec<Mat>)> {
    if m.is_zero() {
        return Err(Error::Input("the zero module has no endomorphism algebra".into()));
    }
    let p = m.p();
    let basis = hom_basis(m, m)?;
    let n = m.dim();
    let k = basis.len();
    let coords = Coords::new(super::flat_cols(&basis, n, n, p));
    let unit = coords.coords(&Mat::identity(p, n).flatten()).expect("identity is an endomorphism");
    let mul = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| coords.coords(&basis[i].mul(&basis[j]).flatten()).expect("End is closed under composition"))
                .collect()
        })
        .collect();
    let labels = (0..k).map(|i| format!("h{i}")).collect();
    let alg = Algebra::from_table(AlgebraTable { p, labels, unit, mul })?;
    Ok((alg, basis))
}

/// True iff `End(m)` is local, decided from its radical.
pub fn is_indecomposable(m: &Module) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let e = hom_basis(m, m)?;
    if e.len() == 1 {
        return Ok(true);
    }
    MatAlgebra::new(m.p(), m.dim(), &e).is_local()
}

fn split_rec(m: &Module, seed: u64, out: &mut Vec<(Module, Mat, Mat)>) -> Result<()> {
    let p = m.p();
    let n = m.dim();
    let e = hom_basis(m, m)?;
    let split = if e.len() == 1 { Splitting::Local } else { MatAlgebra::new(p, n, &e).split(seed)? };
    match split {
        Splitting::Local => {
            out.push((m.clone(), Mat::identity(p, n), Mat::identity(p, n)));
        }
        Splitting::Idempotent(eps) => {
            let u1 = eps.column_space();
            let u2 = Mat::identity(p, n).sub(&eps).column_space();
            let t = u1.hstack(&u2);
            let ti = t.inverse().ok_or_else(|| Error::Internal("idempotent images are not complementary".into()))?;
            let k = u1.cols();
            for (u, rows) in [(u1, ti.block(0, 0, k, n)), (u2, ti.block(k, 0, n - k, n))] {
                let sub = m.submodule(&u);
                let mut inner = Vec::new();
                split_rec(&sub, seed, &mut inner)?;
                for (x, incl, proj) in inner {
                    out.push((x, u.mul(&incl), proj.mul(&rows)));
                }
            }
        }
    }
    Ok(())
}

fn compute_decomposition(m: &Module, seed: u64) -> Result<Decomposition> {
    let mut raw = Vec::new();
    if !m.is_zero() {
        split_rec(m, seed, &mut raw)?;
    }
    let pieces: Vec<Piece> = raw.into_iter().map(|(module, incl, proj)| Piece { module, incl, proj }).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, pc) in pieces.iter().enumerate() {
        let mut placed = false;
        for c in classes.iter_mut() {
            if iso_indecomposable(&pieces[c[0]].module, &pc.module)? {
                c.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    Ok(Decomposition { pieces, classes })
}

/// Krull–Schmidt decomposition with split witnesses.
pub fn decompose(m: &Module) -> Result<Arc<Decomposition>> {
    if let Some(d) = m.cache.decomposition.get() {
        return Ok(d.clone());
    }
    let d = Arc::new(compute_decomposition(m, 0)?);
    let _ = m.cache.decomposition.set(d.clone());
    Ok(d)
}

/// Isomorphism of indecomposables: with `End(x)` local, `x ≅ y` iff some
/// composite `g∘f` of basis maps is invertible. Composition is bilinear and
/// the radical is a subspace, so basis pairs suffice.
pub fn iso_indecomposable(x: &Module, y: &Module) -> Result<bool> {
    if x.dim() != y.dim() || !x.same_category(y) {
        return Ok(false);
    }
    if x.dim() == 0 {
        return Ok(true);
    }
    let f = hom_basis(x, y)?;
    if f.iter().any(|h| h.is_invertible()) {
        return Ok(true);
    }
    if f.is_empty() {
        return Ok(false);
    }
    let g = hom_basis(y, x)?;
    Ok(g.iter().any(|gj| f.iter().any(|fi| gj.mul(fi).is_invertible())))
}

fn action_ranks(m: &Module) -> Vec<usize> {
    m.action().iter().map(|a| a.rank()).collect()
}

/// `m ≅ n`, via cheap invariants, a seeded search for an invertible
/// homomorphism, and finally the comparison of decompositions.
pub fn is_isomorphic(m: &Module, n: &Module) -> Result<bool> {
    m.check_same(n)?;
    if m.dim() != n.dim() {
        return Ok(false);
    }
    if m.dim() == 0 || m.action() == n.action() {
        return Ok(true);
    }
    if action_ranks(m) != action_ranks(n) {
        return Ok(false);
    }
    let h = hom_basis(m, n)?;
    if h.is_empty() {
        return Ok(false);
    }
    if h.iter().any(|x| x.is_invertible()) {
        return Ok(true);
    }
    let p = m.p();
    let d = m.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    for _ in 0..6 {
        let c: Vec<u32> = (0..h.len()).map(|_| rng.gen_range(0..p)).collect();
        if combine(&h, &c, d, d, p).is_invertible() {
            return Ok(true);
        }
    }
    let hmm = hom_basis(m, m)?.len();
    if hmm != hom_basis(n, n)?.len() || hmm != h.len() {
        return Ok(false);
    }
    let dm = decompose(m)?;
    let dn = decompose(n)?;
    if dm.len() != dn.len() {
        return Ok(false);
    }
    let mut used = vec![false; dn.pieces.len()];
    for pm in &dm.pieces {
        let mut found = false;
        for (j, pn) in dn.pieces.iter().enumerate() {
            if !used[j] && iso_indecomposable(&pm.module, &pn.module)? {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

impl Module {
    /// True iff some indecomposable summand is projective.
    pub fn has_projective_summand(&self) -> Result<bool> {
        Ok(decompose(self)?.pieces.iter().any(|pc| pc.module.is_projective()))
    }

    /// The sum of the non-projective indecomposable summands, with its
    /// split inclusion (`dim self × dim result`).
    pub fn stable_part(&self) -> Result<(Module, Mat)> {
        let d = decompose(self)?;
        let keep: Vec<&super::decompose::Piece> = d.pieces.iter().filter(|pc| !pc.module.is_projective()).collect();
        let p = self.p();
        if keep.is_empty() {
            return Ok((Module::zero(self.algebra().clone(), self.side()), Mat::zeros(p, self.dim(), 0)));
        }
        let m = Module::direct_sum(&keep.iter().map(|pc| &pc.module).collect::<Vec<_>>())?;
        let incl = keep.iter().fold(Mat::zeros(p, self.dim(), 0), |acc, pc| acc.hstack(&pc.incl));
        Ok((m, incl))
    }
}

/// Exhaustive isomorphism search for tiny modules: tries every invertible
/// matrix. Used as a reference in tests.
pub fn is_isomorphic_exhaustive(m: &Module, n: &Module) -> bool {
    if m.dim() != n.dim() {
        return false;
    }
    let p = m.p() as u64;
    let d = m.dim();
    let total = p.pow((d * d) as u32);
    (0..total).any(|mut code| {
        let t = Mat::from_fn(m.p(), d, d, |_, _| {
            let v = (code % p) as u32;
            code /= p;
            v
        });
        t.is_invertible() && super::is_homomorphism(m, n, &t)
    })
}
