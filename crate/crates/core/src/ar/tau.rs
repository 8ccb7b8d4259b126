use crate::algebra::ObjSide;
use crate::error::{precondition, Error, Result};
use crate::module::{dual, syzygy, transpose, DualVariant, Module, Side, TauDirection};
use crate::morph::{
    cok_object, dual_object, e_envelope, g_cover, ker_object, red, tau_r_object, MorphObject, RedContext,
};

use super::{iso_to_any, Category};

/// An alternative expression for a translate and whether it agrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub name: String,
    pub agrees: bool,
}

#[derive(Clone, Debug)]
pub struct TauOutcome {
    pub object: MorphObject,
    pub cross_checks: Vec<CrossCheck>,
    /// The inverse translate in `G` was applied to a map whose `τ_R⁻¹`
    /// image is injective, so the kernel in the formula is degenerate.
    pub zero_kernel: bool,
}

impl TauOutcome {
    fn plain(object: MorphObject) -> TauOutcome {
        TauOutcome { object, cross_checks: Vec::new(), zero_kernel: false }
    }

    pub fn checks_agree(&self) -> bool {
        self.cross_checks.iter().all(|c| c.agrees)
    }
}

pub(crate) fn trivial(x: &MorphObject, which: [fn(&Module) -> MorphObject; 2]) -> [MorphObject; 2] {
    let r = Module::regular(x.base(), Side::Right);
    [which[0](&r), which[1](&r)]
}

const PROJ_H: [fn(&Module) -> MorphObject; 2] = [MorphObject::identity, MorphObject::zero_to];
const INJ_H: [fn(&Module) -> MorphObject; 2] = [MorphObject::identity, MorphObject::to_zero];

/// The indecomposable projectives of a category, followed by its
/// indecomposable injectives.
pub(crate) fn ends(x: &MorphObject, cat: Category) -> Result<(Vec<MorphObject>, Vec<MorphObject>)> {
    let (p, i) = match cat {
        Category::H => (PROJ_H, INJ_H),
        Category::G => (PROJ_H, PROJ_H),
        Category::E => (INJ_H, INJ_H),
        Category::R => return Err(Error::Input("the translate of an object needs category H, G or E".into())),
    };
    Ok((trivial(x, p).to_vec(), trivial(x, i).to_vec()))
}

/// `(Ω^d Tr_M f)′` with `d` the Krull dimension of the base.
fn tau_h_raw(f: &MorphObject) -> Result<MorphObject> {
    let d = f.base().krull_dim();
    let tr = syzygy(&transpose(f.module()), d);
    let (obj, _) = MorphObject::from_module(&tr)?;
    dual_object(&obj)
}

fn check(name: &str, a: &MorphObject, b: &MorphObject) -> Result<CrossCheck> {
    Ok(CrossCheck { name: name.into(), agrees: a.is_isomorphic(b)? })
}

/// The Auslander–Reiten translate of `f` in `H`, `G` or `E`.
pub fn tau_morphism(f: &MorphObject, cat: Category, direction: TauDirection) -> Result<TauOutcome> {
    if !f.base().is_gorenstein_local() {
        return Err(Error::Unsupported("translates in H, G, E need a Gorenstein local base".into()));
    }
    if f.side() != ObjSide::M {
        return Err(Error::Input("the object must be a morphism of right modules".into()));
    }
    let (proj, inj) = ends(f, cat)?;
    match cat {
        Category::G if !f.is_mono() => return precondition("the object is not in G (not a monomorphism)"),
        Category::E if !f.is_epi() => return precondition("the object is not in E (not an epimorphism)"),
        _ => {}
    }
    if !f.is_indecomposable()? {
        return precondition("the object must be indecomposable");
    }
    let inverse = direction == TauDirection::Inverse;
    if !inverse && iso_to_any(f.module(), &proj)? {
        return precondition(&format!("the object is projective in {cat}; its translate is undefined"));
    }
    if inverse && iso_to_any(f.module(), &inj)? {
        return precondition(&format!("the object is injective in {cat}; its inverse translate is undefined"));
    }
    match (cat, direction) {
        (Category::H, TauDirection::Forward) => {
            let object = tau_h_raw(f)?;
            let mut cross_checks = Vec::new();
            if f.is_mono() {
                let via_cover = cok_object(&red(&g_cover(&tau_r_object(f, false)?)?.object, RedContext::MOrG)?);
                let via_envelope = red(&e_envelope(&tau_r_object(&cok_object(f), false)?)?.object, RedContext::E)?;
                cross_checks.push(check("Cok(red(G-cov tau_R f))", &object, &via_cover)?);
                cross_checks.push(check("red(E-env tau_R Cok f)", &object, &via_envelope)?);
            }
            Ok(TauOutcome { object, cross_checks, zero_kernel: false })
        }
        (Category::H, TauDirection::Inverse) => {
            let object = dual_object(&tau_h_raw(&dual_object(f)?)?)?;
            let mut cross_checks = Vec::new();
            if f.is_epi() {
                let via_envelope = ker_object(&red(&e_envelope(&tau_r_object(f, true)?)?.object, RedContext::E)?);
                cross_checks.push(check("Ker(red(E-env tau_R^-1 g))", &object, &via_envelope)?);
            }
            Ok(TauOutcome { object, cross_checks, zero_kernel: false })
        }
        (Category::G, TauDirection::Forward) => {
            let object = red(&g_cover(&tau_r_object(&cok_object(f), false)?)?.object, RedContext::MOrG)?;
            Ok(TauOutcome::plain(object))
        }
        (Category::G, TauDirection::Inverse) => {
            let t = tau_r_object(f, true)?;
            let zero_kernel = t.is_mono();
            let object = ker_object(&red(&e_envelope(&t)?.object, RedContext::E)?);
            Ok(TauOutcome { object, cross_checks: Vec::new(), zero_kernel })
        }
        (Category::E, TauDirection::Forward) => {
            let object = cok_object(&red(&g_cover(&tau_r_object(f, false)?)?.object, RedContext::MOrG)?);
            Ok(TauOutcome::plain(object))
        }
        (Category::E, TauDirection::Inverse) => {
            let object = red(&e_envelope(&tau_r_object(&ker_object(f), true)?)?.object, RedContext::E)?;
            Ok(TauOutcome::plain(object))
        }
        (Category::R, _) => unreachable!("rejected by ends()"),
    }
}

/// `(Tr_M f)′ ≅ D Tr_Λ(f)`: the translate in `H` against the classical
/// translate of the module over `Λ`. Projective objects give zero on both
/// sides.
pub fn classical_cross_check(f: &MorphObject) -> Result<bool> {
    if !f.base().is_gorenstein_local() {
        return Err(Error::Unsupported("the comparison needs a Gorenstein local base".into()));
    }
    let tr = transpose(f.module());
    let classical = MorphObject::from_module(&dual(&tr, DualVariant::Field)?)?.0;
    let ours = tau_h_raw(f)?;
    if ours.is_zero() || classical.is_zero() {
        return Ok(ours.is_zero() && classical.is_zero());
    }
    ours.is_isomorphic(&classical)
}

/// `x` is an indecomposable projective of the category.
pub fn is_projective_in(x: &MorphObject, cat: Category) -> Result<bool> {
    iso_to_any(x.module(), &ends(x, cat)?.0)
}

/// `x` is an indecomposable injective of the category.
pub fn is_injective_in(x: &MorphObject, cat: Category) -> Result<bool> {
    iso_to_any(x.module(), &ends(x, cat)?.1)
}
