//! The four sequences in the morphism category built from an almost split
//! sequence `0 → A →f B →g C → 0` of `R`-modules, and the transport of
//! sequences between `G` and `E` by the kernel and cokernel functors.

use crate::error::{precondition, Error, Result};
use crate::linalg::{Coords, Mat};
use crate::module::{extend_along, Module, ModuleMap};
use crate::morph::{cok_object, injective_envelope, ker_object, MorphMap, MorphObject};

use super::{ARSequence, Category, Corpus, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `(A →1 A) → (A →f B) → (0 → C)`
    I,
    /// `(A →e P) → (B →[u;g] P ⊕ C) → (C →1 C)`
    II,
    /// `(A → 0) → (B →g C) → (C →1 C)`
    III,
    /// `(P → Cok e) → (P ⊕ C → Cok [u;g]) → (C → 0)`
    IV,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(Family::I),
            "ii" | "2" => Ok(Family::II),
            "iii" | "3" => Ok(Family::III),
            "iv" | "4" => Ok(Family::IV),
            _ => Err(Error::Input(format!("unknown family {s:?} (expected i, ii, iii or iv)"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::I => "i",
            Family::II => "ii",
            Family::III => "iii",
            Family::IV => "iv",
        }
    }

    /// The categories in which the sequence is almost split; the first is
    /// the default.
    pub fn categories(self) -> &'static [Category] {
        match self {
            Family::I => &[Category::G, Category::H],
            Family::II => &[Category::G],
            Family::III => &[Category::E, Category::H],
            Family::IV => &[Category::E],
        }
    }
}

fn object(t: &Term) -> Result<&MorphObject> {
    t.as_morph().ok_or_else(|| Error::Input("expected a sequence of objects".into()))
}

fn assemble(cat: Category, objs: [MorphObject; 3], incl: &MorphMap, proj: &MorphMap) -> Result<ARSequence> {
    let [l, m, r] = objs;
    ARSequence::new(cat, Term::Morph(l), Term::Morph(m), Term::Morph(r), incl.matrix(), proj.matrix())
}

/// The displayed sequence of the given family, in `cat` (or the family's
/// default category), verified against `corpus` when one is given.
pub fn explicit_family(
    seq: &ARSequence,
    which: Family,
    cat: Option<Category>,
    corpus: Option<&Corpus>,
) -> Result<ARSequence> {
    if seq.category != Category::R {
        return precondition("the input must be a sequence of R-modules");
    }
    match &seq.report {
        Some(r) if r.all_ok() => {}
        _ => return precondition("the input sequence has not been verified almost split"),
    }
    let cat = cat.unwrap_or(which.categories()[0]);
    if !which.categories().contains(&cat) {
        return precondition(format!("family {} is not a sequence in {cat}", which.name()));
    }
    let (a, b, c) = (seq.left.module(), seq.middle.module(), seq.right.module());
    let (f, g) = (&seq.incl, &seq.proj);
    let p = a.p();
    let id = |m: &Module| Mat::identity(p, m.dim());
    let zero = |rows: usize, cols: usize| Mat::zeros(p, rows, cols);

    let out = match which {
        Family::I => {
            let l = MorphObject::identity(a);
            let m = MorphObject::new(a, b, f.clone(), crate::algebra::ObjSide::M)?;
            let r = MorphObject::zero_to(c);
            let incl = MorphMap::new(&l, &m, id(a), f.clone())?;
            let proj = MorphMap::new(&m, &r, zero(0, a.dim()), g.clone())?;
            assemble(cat, [l, m, r], &incl, &proj)?
        }
        Family::II | Family::IV => {
            let two = family_two(a, b, c, f, g)?;
            if which == Family::II {
                two
            } else {
                cok_sequence(&two)?
            }
        }
        Family::III => {
            let l = MorphObject::to_zero(a);
            let m = MorphObject::new(b, c, g.clone(), crate::algebra::ObjSide::M)?;
            let r = MorphObject::identity(c);
            let incl = MorphMap::new(&l, &m, f.clone(), zero(c.dim(), 0))?;
            let proj = MorphMap::new(&m, &r, g.clone(), id(c))?;
            assemble(cat, [l, m, r], &incl, &proj)?
        }
    };
    let out = ARSequence { category: cat, ..out };
    match corpus {
        Some(k) => out.with_report(k),
        None => Ok(out),
    }
}

fn family_two(a: &Module, b: &Module, c: &Module, f: &Mat, g: &Mat) -> Result<ARSequence> {
    let p = a.p();
    let e = injective_envelope(a)?;
    let pm = e.target.clone();
    let fa = ModuleMap::new(a.clone(), b.clone(), f.clone())?;
    let u = extend_along(&e, &fa)?
        .ok_or_else(|| Error::Internal("the envelope does not extend along f".into()))?;
    let pc = pm.sum(c)?;
    let (dp, dc) = (pm.dim(), c.dim());
    let side = crate::algebra::ObjSide::M;
    let l = MorphObject::new(a, &pm, e.matrix.clone(), side)?;
    let m = MorphObject::new(b, &pc, u.matrix.vstack(g), side)?;
    let r = MorphObject::identity(c);
    let incl = MorphMap::new(&l, &m, f.clone(), Mat::identity(p, dp).vstack(&Mat::zeros(p, dc, dp)))?;
    let proj = MorphMap::new(&m, &r, g.clone(), Mat::zeros(p, dc, dp).hstack(&Mat::identity(p, dc)))?;
    assemble(Category::G, [l, m, r], &incl, &proj)
}

fn split(seq: &ARSequence) -> Result<([&MorphObject; 3], MorphMap, MorphMap)> {
    let (l, m, r) = (object(&seq.left)?, object(&seq.middle)?, object(&seq.right)?);
    Ok(([l, m, r], MorphMap::from_matrix(l, m, &seq.incl), MorphMap::from_matrix(m, r, &seq.proj)))
}

/// `(b, induced)` on `B → Cok f`.
fn cok_map(h: &MorphMap) -> Result<MorphMap> {
    let (s, t) = (&h.source, &h.target);
    let cs = s.map().cokernel();
    let ct = t.map().cokernel();
    let induced = ct.projection.mul(&h.b).mul(&cs.section);
    MorphMap::new(&cok_object(s), &cok_object(t), h.b.clone(), induced)
}

/// `(induced, a)` on `Ker f ↪ A`.
fn ker_map(h: &MorphMap) -> Result<MorphMap> {
    let (s, t) = (&h.source, &h.target);
    let ks = s.map().kernel();
    let kt = t.map().kernel();
    let p = s.base().p();
    let images = h.a.mul(&ks.inclusion);
    let induced = if kt.inclusion.cols() == 0 {
        Mat::zeros(p, 0, images.cols())
    } else {
        Coords::new(kt.inclusion.clone())
            .coords_of_cols(&images)
            .ok_or_else(|| Error::Internal("a square does not map kernels to kernels".into()))?
    };
    MorphMap::new(&ker_object(s), &ker_object(t), induced, h.a.clone())
}

/// The cokernel functor applied to a sequence in `G`, giving one in `E`.
pub fn cok_sequence(seq: &ARSequence) -> Result<ARSequence> {
    let (objs, incl, proj) = split(seq)?;
    let objs = objs.map(cok_object);
    assemble(Category::E, objs, &cok_map(&incl)?, &cok_map(&proj)?)
}

/// The kernel functor applied to a sequence in `E`, giving one in `G`.
pub fn ker_sequence(seq: &ARSequence) -> Result<ARSequence> {
    let (objs, incl, proj) = split(seq)?;
    let objs = objs.map(ker_object);
    assemble(Category::G, objs, &ker_map(&incl)?, &ker_map(&proj)?)
}
