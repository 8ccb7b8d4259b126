use crate::algebra::ObjSide;
use crate::error::{precondition, Result};
use crate::linalg::Mat;
use crate::module::{
    ext_dim, is_isomorphic, is_linked_module, lambda, projective_cover, syzygy, transpose, Module, Side,
};

use super::{MorphMap, MorphObject};

fn require_mono(x: &MorphObject) -> Result<()> {
    if !x.is_mono() {
        return precondition("the object must be a monomorphism");
    }
    Ok(())
}

/// `m ⊕ R^q` with `q` chosen to match `dim`, or `None` if the dimensions
/// do not allow it.
fn pad_free(m: &Module, dim: usize) -> Result<Option<Module>> {
    let r = Module::regular(m.algebra(), Side::Right);
    let n = r.dim();
    if dim < m.dim() || (dim - m.dim()) % n != 0 {
        return Ok(None);
    }
    let q = (dim - m.dim()) / n;
    let mut parts = vec![m];
    parts.extend(std::iter::repeat(&r).take(q));
    Ok(Some(Module::direct_sum(&parts)?))
}

/// `x ≅ m ⊕ (free)`, after retagging both as right modules.
fn iso_up_to_free(x: &Module, m: &Module) -> Result<bool> {
    let x = x.with_side(Side::Right);
    let m = m.with_side(Side::Right);
    match pad_free(&m, x.dim())? {
        Some(padded) => is_isomorphic(&x, &padded),
        None => Ok(false),
    }
}

/// The projective cover in the morphism category.
#[derive(Clone, Debug)]
pub struct CoverM {
    pub cover: MorphObject,
    pub map: MorphMap,
    /// The cover is `(P₀ →[1 0] P₀ ⊕ Q₀)` with `P₀ → A` and `Q₀ → Cok f`
    /// the projective covers.
    pub shape_ok: bool,
}

pub fn projective_cover_m(x: &MorphObject) -> Result<CoverM> {
    require_mono(x)?;
    let pc = projective_cover(x.module());
    let (cover, t) = MorphObject::from_module(&pc.source)?;
    let map = MorphMap::from_matrix(&cover, x, &pc.matrix.mul(&t));
    let p0 = projective_cover(x.a()).source;
    let q0 = projective_cover(&x.map().cokernel().module).source;
    let p = x.base().p();
    let expected_b = p0.sum(&q0)?;
    let mut inc = Mat::zeros(p, expected_b.dim(), p0.dim());
    inc.set_block(0, 0, &Mat::identity(p, p0.dim()));
    let expected = MorphObject::build(&p0, &expected_b, inc, ObjSide::M);
    let shape_ok = cover.is_isomorphic(&expected)?;
    Ok(CoverM { cover, map, shape_ok })
}

/// `Ω^i` in the morphism category, with its shape assertion.
#[derive(Clone, Debug)]
pub struct SyzygyM {
    pub object: MorphObject,
    /// Source `≅ Ω^i A`.
    pub source_ok: bool,
    /// Target `≅ Ω^i B ⊕ Q` with `Q` projective.
    pub target_ok: bool,
    pub mono: bool,
}

pub fn syzygy_m(x: &MorphObject, i: usize) -> Result<SyzygyM> {
    require_mono(x)?;
    let (object, _) = MorphObject::from_module(&syzygy(x.module(), i))?;
    let source_ok = is_isomorphic(object.a(), &syzygy(x.a(), i))?;
    let target_ok = iso_up_to_free(object.b(), &syzygy(x.b(), i))?;
    let mono = object.is_mono();
    Ok(SyzygyM { object, source_ok, target_ok, mono })
}

/// `Tr C → Tr B ⊕ Q`, compared against the transpose over `Λ`.
#[derive(Clone, Debug)]
pub struct Normalized {
    /// Source `≅ Tr(Cok f)`.
    pub source_ok: bool,
    /// Target `≅ Tr B ⊕ Q`.
    pub target_ok: bool,
    /// `rank Q`.
    pub q_rank: usize,
}

/// Exactness of `Tr C → Tr B ⊕ Q → Tr A → 0`.
#[derive(Clone, Debug)]
pub struct FourTerm {
    pub dims: [usize; 3],
    pub rank_first: usize,
    /// The cokernel of the first map is `≅ Tr A`.
    pub cokernel_ok: bool,
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct TransposeM {
    /// An object of the opposite category.
    pub tr: MorphObject,
    pub normalized: Normalized,
    pub four_term: FourTerm,
    /// `Ext¹(Cok f, R) = 0`.
    pub ext_vanishes: bool,
    pub tr_is_mono: bool,
}

impl TransposeM {
    /// The displayed shape, exactness, and the mono criterion all hold.
    pub fn all_ok(&self) -> bool {
        self.normalized.source_ok
            && self.normalized.target_ok
            && self.four_term.exact
            && (!self.ext_vanishes || self.tr_is_mono)
    }
}

pub fn transpose_m(x: &MorphObject) -> Result<TransposeM> {
    require_mono(x)?;
    let (tr, _) = MorphObject::from_module(&transpose(x.module()))?;
    let c = x.map().cokernel().module;
    let tr_c = transpose(&c);
    let tr_b = transpose(x.b());
    let tr_a = transpose(x.a());
    let source_ok = is_isomorphic(tr.a(), &tr_c.with_side(Side::Right))?;
    let target_ok = iso_up_to_free(tr.b(), &tr_b)?;
    let n = x.base().dim();
    let q_rank = (tr.b().dim() - tr_b.dim().min(tr.b().dim())) / n;

    let t = tr.map();
    let rank_first = t.matrix.rank();
    let cok = t.cokernel().module;
    let cokernel_ok = is_isomorphic(&cok, &tr_a.with_side(Side::Right))?;
    let dims = [tr.a().dim(), tr.b().dim(), tr_a.dim()];
    let exact = cokernel_ok && dims[1] - rank_first == dims[2];

    let r = Module::regular(x.base(), Side::Right);
    let ext_vanishes = ext_dim(&c, &r, 1)? == 0;
    let tr_is_mono = tr.is_mono();
    Ok(TransposeM {
        tr,
        normalized: Normalized { source_ok, target_ok, q_rank },
        four_term: FourTerm { dims, rank_first, cokernel_ok, exact },
        ext_vanishes,
        tr_is_mono,
    })
}

/// `λ = Ω¹ Tr` applied `power` times; odd powers land in the opposite
/// category.
pub fn lambda_m(x: &MorphObject, power: usize) -> Result<MorphObject> {
    require_mono(x)?;
    let mut m = x.module().clone();
    for _ in 0..power {
        m = lambda(&m);
    }
    Ok(MorphObject::from_module(&m)?.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkMethod {
    /// `f ≅ λ²f`
    Direct,
    /// No projective summand and `Ext¹(Tr f, Λ) = 0`.
    ExtCriterion,
    /// Both ends linked as modules.
    Component,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinkedM {
    pub direct: bool,
    pub ext_criterion: bool,
    /// `None` when an end has a projective summand, so the component
    /// criterion does not apply.
    pub component: Option<bool>,
}

impl LinkedM {
    pub fn verdict(&self, method: LinkMethod) -> Option<bool> {
        match method {
            LinkMethod::Direct => Some(self.direct),
            LinkMethod::ExtCriterion => Some(self.ext_criterion),
            LinkMethod::Component => self.component,
        }
    }

    /// All applicable methods agree.
    pub fn agree(&self) -> bool {
        self.direct == self.ext_criterion && self.component.is_none_or(|c| c == self.direct)
    }
}

pub fn linked_m(x: &MorphObject) -> Result<LinkedM> {
    require_mono(x)?;
    if !x.base().is_local() {
        return precondition("linkage is defined over a local ring");
    }
    let l = is_linked_module(x.module())?;
    let la = is_linked_module(x.a())?;
    let lb = is_linked_module(x.b())?;
    let component = (la.stable && lb.stable).then_some(la.linked && lb.linked);
    Ok(LinkedM { direct: l.lambda_square_iso, ext_criterion: l.linked, component })
}
