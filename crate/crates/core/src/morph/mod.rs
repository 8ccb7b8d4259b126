//! The morphism category: objects `f: A → B` of `R`-modules and commuting
//! squares between them.
//!
//! Every object carries its image as a right module over `Λ = T₂(R)` (or
//! over `Λ^op` for objects of the opposite category), and all homological
//! work is done on that module. An object is read back from a `Λ`-module
//! `X` as `X·e_src → X·e_tgt`, the arrow acting as the map.

mod approx;
mod homological;
#[cfg(test)]
mod tests;

use std::sync::Arc;

pub use approx::{e_envelope, g_cover, injective_envelope, stable_g_cover, Approximation};
pub use homological::{
    lambda_m, linked_m, projective_cover_m, syzygy_m, transpose_m, CoverM, FourTerm, LinkMethod, LinkedM,
    Normalized, SyzygyM, TransposeM,
};

use crate::algebra::{Algebra, ObjSide, TriInfo};
use crate::error::{precondition, Error, Result};
use crate::linalg::Mat;
use crate::module::{
    decompose, dual_map, hom_basis, is_isomorphic, iso_indecomposable, span_rank, DualVariant, Module,
    ModuleMap, Side,
};

/// An object `f: A → B` of the morphism category, or of its opposite.
#[derive(Clone, Debug)]
pub struct MorphObject {
    a: Module,
    b: Module,
    f: Mat,
    side: ObjSide,
    lambda: Module,
}

/// A commuting square `(φ_A, φ_B)` between two objects.
#[derive(Clone, Debug)]
pub struct MorphMap {
    pub source: MorphObject,
    pub target: MorphObject,
    pub a: Mat,
    pub b: Mat,
}

/// Membership of an object in the subcategories of interest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub in_s: bool,
    pub in_e: bool,
    pub in_h: bool,
    /// `None` over a non-Gorenstein base, where membership is not decided.
    pub in_g: Option<bool>,
    pub projective_in_m: bool,
    pub injective_in_h: bool,
    /// Always true: at Krull dimension zero the punctured spectrum is empty.
    pub locally_projective: bool,
}

/// Ambient category for [`red`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RedContext {
    /// Strip `(R → R)` and `(0 → R)`.
    MOrG,
    /// Strip `(R → R)` and `(R → 0)`.
    E,
}

/// Which trivial maps [`stable_hom_dim`] factors out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StableVariant {
    /// Maps factoring through projective objects.
    Proj,
    /// Maps factoring through injective objects of `H`.
    Inj,
}

fn lambda_algebra(base: &Arc<Algebra>, side: ObjSide) -> Result<Arc<Algebra>> {
    let lam = base.triangular()?;
    Ok(match side {
        ObjSide::M => lam,
        ObjSide::MOp => lam.opposite(),
    })
}

fn module_side(side: ObjSide) -> Side {
    match side {
        ObjSide::M => Side::Right,
        ObjSide::MOp => Side::Left,
    }
}

impl MorphObject {
    /// Builds the object `f: a → b`; `f` is `dim b × dim a`.
    pub fn new(a: &Module, b: &Module, f: Mat, side: ObjSide) -> Result<MorphObject> {
        let map = ModuleMap::new(a.clone(), b.clone(), f)?;
        let base = a.algebra();
        if !base.is_commutative() {
            return precondition("objects of the morphism category live over a commutative ring");
        }
        Ok(Self::build(a, b, map.matrix, side))
    }

    pub(crate) fn build(a: &Module, b: &Module, f: Mat, side: ObjSide) -> MorphObject {
        let a = a.with_side(Side::Right);
        let b = b.with_side(Side::Right);
        let lam = lambda_algebra(a.algebra(), side).expect("base ring is commutative");
        let lambda = to_module(&lam, &a, &b, &f);
        MorphObject { a, b, f, side, lambda }
    }

    pub fn from_map(f: &ModuleMap) -> Result<MorphObject> {
        MorphObject::new(&f.source, &f.target, f.matrix.clone(), ObjSide::M)
    }

    /// `0 → m`
    pub fn zero_to(m: &Module) -> MorphObject {
        let z = Module::zero(m.algebra().clone(), Side::Right);
        Self::build(&z, m, Mat::zeros(m.p(), m.dim(), 0), ObjSide::M)
    }

    /// `m → 0`
    pub fn to_zero(m: &Module) -> MorphObject {
        let z = Module::zero(m.algebra().clone(), Side::Right);
        Self::build(m, &z, Mat::zeros(m.p(), 0, m.dim()), ObjSide::M)
    }

    /// `m →id m`
    pub fn identity(m: &Module) -> MorphObject {
        Self::build(m, m, Mat::identity(m.p(), m.dim()), ObjSide::M)
    }

    pub fn zero(base: &Arc<Algebra>, side: ObjSide) -> MorphObject {
        let z = Module::zero(base.clone(), Side::Right);
        Self::build(&z, &z, Mat::zeros(base.p(), 0, 0), side)
    }

    pub fn a(&self) -> &Module {
        &self.a
    }
    pub fn b(&self) -> &Module {
        &self.b
    }
    pub fn f(&self) -> &Mat {
        &self.f
    }
    pub fn side(&self) -> ObjSide {
        self.side
    }
    pub fn base(&self) -> &Arc<Algebra> {
        self.a.algebra()
    }
    /// The module over `Λ` (or `Λ^op`) representing this object.
    pub fn module(&self) -> &Module {
        &self.lambda
    }
    pub fn dim(&self) -> usize {
        self.a.dim() + self.b.dim()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn map(&self) -> ModuleMap {
        ModuleMap::raw(self.a.clone(), self.b.clone(), self.f.clone())
    }
    pub fn is_mono(&self) -> bool {
        self.f.rank() == self.a.dim()
    }
    pub fn is_epi(&self) -> bool {
        self.f.rank() == self.b.dim()
    }

    /// Reads an object off a module over a triangular algebra. Returns the
    /// object together with the isomorphism `object.module() → x`.
    pub fn from_module(x: &Module) -> Result<(MorphObject, Mat)> {
        let alg = x.algebra().clone();
        let tri = alg.tri().ok_or_else(|| Error::Input("module is not over a triangular algebra".into()))?.clone();
        let p = alg.p();
        let base = tri.base.clone();
        if x.is_zero() {
            return Ok((MorphObject::zero(&base, tri.side), Mat::zeros(p, 0, 0)));
        }
        let ua = x.act(&tri.e_src()).column_space();
        let ub = x.act(&tri.e_tgt()).column_space();
        let t = ua.hstack(&ub);
        let y = x.conjugate(&t).map_err(|_| Error::Internal("vertex images are not complementary".into()))?;
        let (da, db) = (ua.cols(), ub.cols());
        let n = tri.n();
        let block = |l: usize, r0: usize, c0: usize, rows: usize, cols: usize| y.action()[l].block(r0, c0, rows, cols);
        let a_act: Vec<Mat> = (0..n).map(|r| block(tri.src_block * n + r, 0, 0, da, da)).collect();
        let b_act: Vec<Mat> = (0..n).map(|r| block(tri.tgt_block * n + r, da, da, db, db)).collect();
        let a = Module::new(base.clone(), Side::Right, a_act)?;
        let b = Module::new(base.clone(), Side::Right, b_act)?;
        let f = y.act(&tri.arrow()).block(da, 0, db, da);
        let obj = MorphObject::new(&a, &b, f, tri.side)?;
        debug_assert_eq!(obj.lambda.action(), y.action());
        Ok((obj, t))
    }

    /// Direct sum of objects on the same side.
    pub fn direct_sum(parts: &[&MorphObject]) -> Result<MorphObject> {
        let first = parts.first().ok_or_else(|| Error::Input("empty direct sum".into()))?;
        let a = Module::direct_sum(&parts.iter().map(|o| &o.a).collect::<Vec<_>>())?;
        let b = Module::direct_sum(&parts.iter().map(|o| &o.b).collect::<Vec<_>>())?;
        let f = parts.iter().fold(Mat::zeros(a.p(), 0, 0), |acc, o| acc.block_diag(&o.f));
        Ok(Self::build(&a, &b, f, first.side))
    }

    pub fn sum(&self, o: &MorphObject) -> Result<MorphObject> {
        MorphObject::direct_sum(&[self, o])
    }

    pub fn is_isomorphic(&self, o: &MorphObject) -> Result<bool> {
        if self.side != o.side {
            return Ok(false);
        }
        is_isomorphic(&self.lambda, &o.lambda)
    }

    /// Indecomposable summands, read back as objects.
    pub fn summands(&self) -> Result<Vec<MorphObject>> {
        let d = decompose(&self.lambda)?;
        d.pieces.iter().map(|pc| Ok(MorphObject::from_module(&pc.module)?.0)).collect()
    }

    pub fn is_indecomposable(&self) -> Result<bool> {
        crate::module::is_indecomposable(&self.lambda)
    }

    /// Projective in the ambient morphism category.
    pub fn is_projective(&self) -> bool {
        self.lambda.is_projective()
    }
}

/// The `Λ`-module of `f: a → b`: the source vertex acts on `a`, the target
/// vertex on `b`, and `x·(α r) = f(x)·r`.
fn to_module(lam: &Arc<Algebra>, a: &Module, b: &Module, f: &Mat) -> Module {
    let tri: &TriInfo = lam.tri().expect("triangular algebra");
    let p = lam.p();
    let n = tri.n();
    let (da, db) = (a.dim(), b.dim());
    let d = da + db;
    let action = (0..3 * n)
        .map(|l| {
            let (blk, r) = (l / n, l % n);
            let mut m = Mat::zeros(p, d, d);
            if blk == tri.src_block {
                m.set_block(0, 0, &a.action()[r]);
            } else if blk == tri.tgt_block {
                m.set_block(da, da, &b.action()[r]);
            } else {
                m.set_block(da, 0, &b.action()[r].mul(f));
            }
            m
        })
        .collect();
    Module::raw(lam.clone(), module_side(tri.side), action)
}

impl MorphMap {
    pub fn new(source: &MorphObject, target: &MorphObject, a: Mat, b: Mat) -> Result<MorphMap> {
        let m = MorphMap { source: source.clone(), target: target.clone(), a, b };
        if !crate::module::is_homomorphism(source.module(), target.module(), &m.matrix()) {
            return Err(Error::Input("the square does not commute".into()));
        }
        Ok(m)
    }

    pub fn identity(x: &MorphObject) -> MorphMap {
        let p = x.base().p();
        MorphMap {
            source: x.clone(),
            target: x.clone(),
            a: Mat::identity(p, x.a.dim()),
            b: Mat::identity(p, x.b.dim()),
        }
    }

    /// The block-diagonal matrix of the induced `Λ`-homomorphism.
    pub fn matrix(&self) -> Mat {
        self.a.block_diag(&self.b)
    }

    /// Splits a `Λ`-homomorphism between the modules of two objects.
    pub fn from_matrix(source: &MorphObject, target: &MorphObject, m: &Mat) -> MorphMap {
        let (sa, ta) = (source.a.dim(), target.a.dim());
        MorphMap {
            source: source.clone(),
            target: target.clone(),
            a: m.block(0, 0, ta, sa),
            b: m.block(ta, sa, target.b.dim(), source.b.dim()),
        }
    }

    pub fn compose(&self, other: &MorphMap) -> MorphMap {
        MorphMap {
            source: other.source.clone(),
            target: self.target.clone(),
            a: self.a.mul(&other.a),
            b: self.b.mul(&other.b),
        }
    }
}

/// Membership tests for an object.
pub fn classify_object(x: &MorphObject) -> Result<Classification> {
    let in_s = x.is_mono();
    let gor = x.base().is_gorenstein_local();
    let pieces = x.summands()?;
    let r = Module::regular(x.base(), Side::Right);
    let inj = [MorphObject::identity(&r), MorphObject::to_zero(&r)];
    let mut injective_in_h = gor;
    for pc in &pieces {
        let mut hit = false;
        for t in &inj {
            if iso_indecomposable(pc.module(), t.module())? {
                hit = true;
            }
        }
        injective_in_h &= hit;
    }
    Ok(Classification {
        in_s,
        in_e: x.is_epi(),
        in_h: true,
        in_g: gor.then_some(in_s),
        projective_in_m: x.is_projective(),
        injective_in_h,
        locally_projective: true,
    })
}

/// `Ker(f) ↪ A` and `B ↠ Cok(f)` as objects.
pub fn ker_cok_objects(x: &MorphObject) -> (MorphObject, MorphObject) {
    (ker_object(x), cok_object(x))
}

pub fn ker_object(x: &MorphObject) -> MorphObject {
    let k = x.map().kernel();
    MorphObject::build(&k.module, &x.a, k.inclusion, x.side)
}

pub fn cok_object(x: &MorphObject) -> MorphObject {
    let c = x.map().cokernel();
    MorphObject::build(&x.b, &c.module, c.projection, x.side)
}

/// `(A → B)′ = (B′ → A′)` on the opposite side.
pub fn dual_object(x: &MorphObject) -> Result<MorphObject> {
    if !x.base().is_gorenstein_local() {
        return precondition("the dual of objects needs a Gorenstein local base");
    }
    let d = dual_map(&x.map(), DualVariant::Algebra)?;
    Ok(MorphObject::build(&d.source, &d.target, d.matrix, x.side.flip()))
}

/// The `Λ`-modules of the trivial objects removed by [`red`] and
/// [`stable_hom_dim`].
fn trivial_objects(base: &Arc<Algebra>, which: RedContext) -> [MorphObject; 2] {
    let r = Module::regular(base, Side::Right);
    match which {
        RedContext::MOrG => [MorphObject::identity(&r), MorphObject::zero_to(&r)],
        RedContext::E => [MorphObject::identity(&r), MorphObject::to_zero(&r)],
    }
}

/// Deletes the trivial projective (or projective-injective) summands.
pub fn red(x: &MorphObject, ctx: RedContext) -> Result<MorphObject> {
    Ok(red_with_inclusion(x, ctx)?.0)
}

/// [`red`] together with the split inclusion of its module into
/// `x.module()`.
pub fn red_with_inclusion(x: &MorphObject, ctx: RedContext) -> Result<(MorphObject, Mat)> {
    let p = x.base().p();
    if x.is_zero() {
        return Ok((x.clone(), Mat::zeros(p, 0, 0)));
    }
    let trivial = trivial_objects(x.base(), ctx);
    let d = decompose(x.module())?;
    let mut keep = Vec::new();
    for pc in &d.pieces {
        let mut drop = false;
        for t in &trivial {
            if pc.module.dim() == t.module().dim() && iso_indecomposable(&pc.module, t.module())? {
                drop = true;
                break;
            }
        }
        if !drop {
            keep.push(pc);
        }
    }
    if keep.is_empty() {
        return Ok((MorphObject::zero(x.base(), x.side), Mat::zeros(p, x.dim(), 0)));
    }
    if keep.len() == d.pieces.len() {
        return Ok((x.clone(), Mat::identity(p, x.dim())));
    }
    let m = Module::direct_sum(&keep.iter().map(|pc| &pc.module).collect::<Vec<_>>())?;
    let incl = keep.iter().fold(Mat::zeros(p, x.dim(), 0), |acc, pc| acc.hstack(&pc.incl));
    let (obj, t) = MorphObject::from_module(&m)?;
    Ok((obj, incl.mul(&t)))
}

/// Maps `f → g` factoring through a trivial object of the chosen variant,
/// as a spanning list. A map factoring through a sum of copies of a test
/// object is a sum of maps factoring through one copy, so one copy of each
/// suffices.
pub fn trivial_maps(f: &MorphObject, g: &MorphObject, variant: StableVariant) -> Result<Vec<Mat>> {
    let (x, y) = (f.module(), g.module());
    let ctx = match variant {
        StableVariant::Proj => RedContext::MOrG,
        StableVariant::Inj => RedContext::E,
    };
    let mut trivial = Vec::new();
    for t in trivial_objects(f.base(), ctx) {
        let into = hom_basis(x, t.module())?;
        let out = hom_basis(t.module(), y)?;
        for u in &out {
            for v in &into {
                trivial.push(u.mul(v));
            }
        }
    }
    Ok(trivial)
}

/// `dim Hom(f, g)` modulo the [`trivial_maps`] of the chosen variant.
pub fn stable_hom_dim(f: &MorphObject, g: &MorphObject, variant: StableVariant) -> Result<usize> {
    let all = hom_basis(f.module(), g.module())?;
    if all.is_empty() {
        return Ok(0);
    }
    Ok(all.len() - span_rank(&trivial_maps(f, g, variant)?))
}

/// `τ_R` (or `τ_R⁻¹`) applied to both ends and the map of an object.
pub fn tau_r_object(x: &MorphObject, inverse: bool) -> Result<MorphObject> {
    let functor = if inverse { crate::module::Functor::TauInverse } else { crate::module::Functor::Tau };
    let t = crate::module::functorial_lift(&x.map(), functor)?;
    Ok(MorphObject::build(&t.source, &t.target, t.matrix, x.side))
}
