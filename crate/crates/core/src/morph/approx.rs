//! `G`-covers `[f e]: A → B ⊕ P′` and `E`-envelopes `[f p]: A ⊕ P → B`.
//!
//! Block convention: a map into a sum stacks its components as rows, a
//! map out of a sum juxtaposes them as columns.

use crate::error::{Error, Result};
use crate::linalg::{Mat, Span};
use crate::matalg::MatAlgebra;
use crate::module::{dual, extend_along, factor_through, hom_basis, projective_cover, DualVariant, Module, ModuleMap, Side};

use super::{red_with_inclusion, trivial_maps, MorphMap, MorphObject, RedContext, StableVariant};

/// An approximation together with its certificate of minimality.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub object: MorphObject,
    /// `object → input` for covers, `input → object` for envelopes.
    pub map: MorphMap,
    /// Every endomorphism fixing the map is an automorphism.
    pub minimal: bool,
}

fn require_gorenstein(x: &MorphObject) -> Result<()> {
    if !x.base().is_gorenstein_local() {
        return Err(Error::Unsupported(
            "approximations by G and E need a Gorenstein local base (G(R) membership is undecided otherwise)".into(),
        ));
    }
    Ok(())
}

/// True iff the span of `mats` (closed under products with itself) is
/// nilpotent.
fn nilpotent_span(mats: &[Mat]) -> bool {
    let Some(first) = mats.first() else { return true };
    let (p, n) = (first.p(), first.rows());
    let mut cur: Vec<Mat> = mats.to_vec();
    for _ in 0..=n {
        let mut span = Span::new(p, n * n);
        let mut next = Vec::new();
        for x in &cur {
            for y in mats {
                let z = x.mul(y);
                if span.try_add(z.data()) {
                    next.push(z);
                }
            }
        }
        if next.is_empty() {
            return true;
        }
        cur = next;
    }
    false
}

/// The endomorphisms `h` with `side(h) = 0`, as a basis.
fn annihilating_endos(x: &MorphObject, kills: impl Fn(&Mat) -> Mat) -> Result<Vec<Mat>> {
    let m = x.module();
    let basis = hom_basis(m, m)?;
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let p = m.p();
    let images: Vec<Vec<u32>> = basis.iter().map(|h| kills(h).flatten()).collect();
    let rows = images[0].len();
    if rows == 0 {
        return Ok(basis);
    }
    let k = Mat::from_cols(p, rows, &images).kernel_basis();
    Ok(k.col_vecs().iter().map(|c| crate::module::combine(&basis, c, m.dim(), m.dim(), p)).collect())
}

/// `K ↪ I`, dual to the projective cover `P ↠ DK`. Over a self-injective
/// base `I` is projective as well.
pub fn injective_envelope(k: &Module) -> Result<ModuleMap> {
    let dk = dual(k, DualVariant::Field)?.with_side(Side::Right);
    let cov = projective_cover(&dk);
    let envelope = dual(&cov.source, DualVariant::Field)?.with_side(Side::Right);
    ModuleMap::new(k.with_side(Side::Right), envelope, cov.matrix.transpose())
}

/// `[f e]: A → B ⊕ P′` where `Ker f → P′` is an injective envelope and
/// `e` extends it to `A`.
pub fn g_cover(x: &MorphObject) -> Result<Approximation> {
    require_gorenstein(x)?;
    let p = x.base().p();
    let ker = x.map().kernel();
    if ker.module.is_zero() {
        return Ok(Approximation { object: x.clone(), map: MorphMap::identity(x), minimal: true });
    }
    let iota = injective_envelope(&ker.module)?;
    let envelope = iota.target.clone();
    let kappa = ModuleMap::new(ker.module.clone(), x.a().clone(), ker.inclusion.clone())?;
    let e = extend_along(&iota, &kappa)?
        .ok_or_else(|| Error::Internal("injective envelope does not extend along the kernel".into()))?;
    let target = x.b().sum(&envelope)?;
    let object = MorphObject::new(x.a(), &target, x.f().vstack(&e.matrix), x.side())?;
    let mut proj = Mat::zeros(p, x.b().dim(), target.dim());
    proj.set_block(0, 0, &Mat::identity(p, x.b().dim()));
    let map = MorphMap::new(&object, x, Mat::identity(p, x.a().dim()), proj)?;
    let mm = map.matrix();
    let minimal = nilpotent_span(&annihilating_endos(&object, |h| mm.mul(h))?);
    Ok(Approximation { object, map, minimal })
}

/// `[f p]: A ⊕ P → B` where `P → Cok f` is a projective cover and `p`
/// lifts it through `B ↠ Cok f`.
pub fn e_envelope(x: &MorphObject) -> Result<Approximation> {
    require_gorenstein(x)?;
    let p = x.base().p();
    let cok = x.map().cokernel();
    if cok.module.is_zero() {
        return Ok(Approximation { object: x.clone(), map: MorphMap::identity(x), minimal: true });
    }
    let q = ModuleMap::new(x.b().clone(), cok.module.clone(), cok.projection.clone())?;
    let pi = projective_cover(&cok.module);
    let lift = factor_through(&pi, &q)?.ok_or_else(|| Error::Internal("projective cover does not lift".into()))?;
    let source = x.a().sum(&pi.source)?;
    let object = MorphObject::new(&source, x.b(), x.f().hstack(&lift.matrix), x.side())?;
    let mut incl = Mat::zeros(p, source.dim(), x.a().dim());
    incl.set_block(0, 0, &Mat::identity(p, x.a().dim()));
    let map = MorphMap::new(x, &object, incl, Mat::identity(p, x.b().dim()))?;
    let mm = map.matrix();
    let minimal = nilpotent_span(&annihilating_endos(&object, |h| h.mul(&mm))?);
    Ok(Approximation { object, map, minimal })
}

/// The reduced `G`-cover read in the injectively stable category: the
/// `G`-cover with its injective summands in `H` deleted. Here `minimal`
/// certifies right minimality modulo injectively trivial maps: every
/// endomorphism `φ` with `θφ` injectively trivial lies in the radical of
/// the stable endomorphism ring.
pub fn stable_g_cover(x: &MorphObject) -> Result<Approximation> {
    let cov = g_cover(x)?;
    let (object, incl) = red_with_inclusion(&cov.object, RedContext::E)?;
    let theta = cov.map.matrix().mul(&incl);
    let map = MorphMap::from_matrix(&object, x, &theta);
    let m = object.module();
    let ends = hom_basis(m, m)?;
    if ends.is_empty() {
        return Ok(Approximation { object, map, minimal: true });
    }
    let p = m.p();
    let mut into_x = Span::new(p, x.dim() * m.dim());
    for t in trivial_maps(&object, x, StableVariant::Inj)? {
        into_x.try_add(t.data());
    }
    let residues: Vec<Vec<u32>> = ends.iter().map(|h| into_x.reduce(theta.mul(h).data())).collect();
    let kernel = Mat::from_cols(p, residues[0].len(), &residues).kernel_basis();
    let mut allowed = Span::new(p, m.dim() * m.dim());
    for r in MatAlgebra::new(p, m.dim(), &ends).radical() {
        allowed.try_add(r.data());
    }
    for t in trivial_maps(&object, &object, StableVariant::Inj)? {
        allowed.try_add(t.data());
    }
    let minimal = kernel
        .col_vecs()
        .iter()
        .all(|c| allowed.contains(crate::module::combine(&ends, c, m.dim(), m.dim(), p).data()));
    Ok(Approximation { object, map, minimal })
}
