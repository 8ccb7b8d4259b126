//! Auslander transpose, the two duals, the translate `τ = (Tr −)′` and the
//! action of these functors on maps.

use std::sync::Arc;

use super::cover::ProjSum;
use super::{cokernel, hom_basis, lift_to_covers, syzygy_map, Module, ModuleMap};
use crate::error::{precondition, Error, Result};
use crate::linalg::{Coords, Mat};

#[derive(Debug)]
pub(super) struct TransposeData {
    module: Module,
    /// `P₁*` over the opposite algebra.
    p1d: ProjSum,
    /// Projection `P₁* → Tr M`.
    proj: Mat,
    section: Mat,
}

#[derive(Debug)]
pub(super) struct DualData {
    module: Module,
    basis: Vec<Mat>,
    coords: Option<Coords>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualVariant {
    /// `Hom_R(−, R)`
    Algebra,
    /// `Hom_k(−, k)`
    Field,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauDirection {
    Forward,
    Inverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Functor {
    Transpose,
    Tau,
    TauInverse,
    Syzygy(usize),
    Dual(DualVariant),
}

fn transpose_data(m: &Module) -> Arc<TransposeData> {
    m.cache
        .transpose
        .get_or_init(|| {
            let pres = m.presentation();
            let (p0d, p1d, dstar) = pres.p1.dual_map(&pres.p0, &pres.d);
            let dmap = ModuleMap::raw(p0d.module.clone(), p1d.module.clone(), dstar);
            let c = cokernel(&dmap);
            Arc::new(TransposeData { module: c.module, p1d, proj: c.projection, section: c.section })
        })
        .clone()
}

/// `Tr m`, a module over the opposite algebra.
pub fn transpose(m: &Module) -> Module {
    transpose_data(m).module.clone()
}

/// `Tr φ: Tr N → Tr M` for `φ: M → N`, through lifts to the minimal
/// presentations.
pub fn transpose_map(phi: &ModuleMap) -> ModuleMap {
    let (m, n) = (&phi.source, &phi.target);
    let tm = transpose_data(m);
    let tn = transpose_data(n);
    let om = syzygy_map(phi);
    let cm = m.cover();
    let cn = n.cover();
    let psi1 = lift_to_covers(&om);
    let p = m.p();
    let matrix = if tm.module.dim() == 0 || tn.module.dim() == 0 {
        Mat::zeros(p, tm.module.dim(), tn.module.dim())
    } else {
        let p1m = &cm.omega.cover().projective;
        let p1n = &cn.omega.cover().projective;
        let (_, _, psi1d) = p1m.dual_map(p1n, &psi1);
        debug_assert_eq!(psi1d.cols(), tn.p1d.dim());
        debug_assert_eq!(psi1d.rows(), tm.p1d.dim());
        tm.proj.mul(&psi1d).mul(&tn.section)
    };
    ModuleMap::raw(tn.module.clone(), tm.module.clone(), matrix)
}

fn dual_data(m: &Module) -> Result<Arc<DualData>> {
    if !m.algebra().is_commutative() {
        return precondition("the algebra dual Hom(−, R) needs a commutative ring");
    }
    if let Some(d) = m.cache.dual.get() {
        return Ok(d.clone());
    }
    let alg = m.algebra();
    let p = alg.p();
    let reg = Module::regular(alg, m.side());
    let basis = hom_basis(m, &reg)?;
    let dm = m.dim();
    let n = alg.dim();
    let (module, coords) = if basis.is_empty() {
        (Module::zero(alg.clone(), m.side().flip()), None)
    } else {
        let flat = super::flat_cols(&basis, n, dm, p);
        let coords = Coords::new(flat);
        // (ζ·b)(x) = b·ζ(x)
        let action = alg
            .left_mult()
            .iter()
            .map(|l| {
                let imgs: Vec<Vec<u32>> = basis.iter().map(|z| l.mul(z).flatten()).collect();
                coords.coords_of_cols(&Mat::from_cols(p, n * dm, &imgs)).expect("Hom(M, R) is an R-module")
            })
            .collect();
        (Module::raw(alg.clone(), m.side().flip(), action), Some(coords))
    };
    let d = Arc::new(DualData { module, basis, coords });
    let _ = m.cache.dual.set(d.clone());
    Ok(d)
}

/// `m′ = Hom_R(m, R)` or `D m = Hom_k(m, k)`, both on the other side.
pub fn dual(m: &Module, variant: DualVariant) -> Result<Module> {
    match variant {
        DualVariant::Algebra => Ok(dual_data(m)?.module.clone()),
        DualVariant::Field => {
            let op = m.algebra().opposite();
            let action = m.action().iter().map(|a| a.transpose()).collect();
            Ok(Module::raw(op, m.side().flip(), action))
        }
    }
}

/// `φ′: N′ → M′` (`ζ ↦ ζ∘φ`) or `D φ = φᵀ`.
pub fn dual_map(phi: &ModuleMap, variant: DualVariant) -> Result<ModuleMap> {
    match variant {
        DualVariant::Field => Ok(ModuleMap::raw(
            dual(&phi.target, variant)?,
            dual(&phi.source, variant)?,
            phi.matrix.transpose(),
        )),
        DualVariant::Algebra => {
            let dm = dual_data(&phi.source)?;
            let dn = dual_data(&phi.target)?;
            let p = phi.source.p();
            let matrix = match &dm.coords {
                None => Mat::zeros(p, 0, dn.basis.len()),
                Some(c) => {
                    let n = phi.source.algebra().dim();
                    let imgs: Vec<Vec<u32>> = dn.basis.iter().map(|z| z.mul(&phi.matrix).flatten()).collect();
                    if imgs.is_empty() {
                        Mat::zeros(p, dm.basis.len(), 0)
                    } else {
                        c.coords_of_cols(&Mat::from_cols(p, n * phi.source.dim(), &imgs))
                            .expect("ζ∘φ is a homomorphism into R")
                    }
                }
            };
            Ok(ModuleMap::raw(dn.module.clone(), dm.module.clone(), matrix))
        }
    }
}

fn require_gorenstein(m: &Module) -> Result<()> {
    if !m.algebra().is_gorenstein_local() {
        return Err(Error::Precondition("the translate needs a Gorenstein local ring".into()));
    }
    Ok(())
}

/// `τ m = (Tr m)′`, or `τ⁻¹ m = (τ(m′))′`.
pub fn tau_module(m: &Module, direction: TauDirection) -> Result<Module> {
    require_gorenstein(m)?;
    match direction {
        TauDirection::Forward => dual(&transpose(m), DualVariant::Algebra),
        TauDirection::Inverse => {
            let md = dual(m, DualVariant::Algebra)?;
            dual(&tau_module(&md, TauDirection::Forward)?, DualVariant::Algebra)
        }
    }
}

/// The map induced by a functor. `Tr` and the duals reverse direction.
pub fn functorial_lift(phi: &ModuleMap, functor: Functor) -> Result<ModuleMap> {
    match functor {
        Functor::Transpose => Ok(transpose_map(phi)),
        Functor::Syzygy(i) => {
            let mut cur = phi.clone();
            for _ in 0..i {
                cur = syzygy_map(&cur);
            }
            Ok(cur)
        }
        Functor::Dual(v) => dual_map(phi, v),
        Functor::Tau => {
            require_gorenstein(&phi.source)?;
            dual_map(&transpose_map(phi), DualVariant::Algebra)
        }
        Functor::TauInverse => {
            require_gorenstein(&phi.source)?;
            let d = dual_map(phi, DualVariant::Algebra)?;
            let t = functorial_lift(&d, Functor::Tau)?;
            dual_map(&t, DualVariant::Algebra)
        }
    }
}
