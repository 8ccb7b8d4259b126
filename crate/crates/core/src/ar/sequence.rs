use crate::error::{internal, precondition, Error, Result};
use crate::linalg::{Mat, Span};
use crate::matalg::MatAlgebra;
use crate::module::{
    decompose, hom_basis, is_homomorphism, is_indecomposable, iso_indecomposable, syzygy_map, tau_module, Module,
    ModuleMap, TauDirection,
};
use crate::morph::MorphObject;

use super::tau::tau_morphism;
use super::{ARSequence, Category, Corpus, Report, Term};

/// A non-split extension `0 → left → middle → end → 0`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub middle: Module,
    pub incl: Mat,
    pub proj: Mat,
}

fn radical_of_end(m: &Module) -> Result<Vec<Mat>> {
    let basis = hom_basis(m, m)?;
    Ok(MatAlgebra::new(m.p(), m.dim(), &basis).radical())
}

/// The extension whose class spans a simple submodule of
/// `Ext¹(end, left) = Hom(Ω end, left) / {restrictions from P}` for both
/// endomorphism rings, realized as a pushout of `0 → Ω end → P → end → 0`.
pub fn almost_split_extension(left: &Module, end: &Module) -> Result<Extension> {
    left.check_same(end)?;
    let p = end.p();
    let cover = end.cover();
    let omega = &cover.omega;
    if omega.is_zero() {
        return precondition("the end term is projective");
    }
    let (dl, dw) = (left.dim(), omega.dim());
    let len = dl * dw;
    let zs = hom_basis(omega, left)?;

    let mut restrictions = Span::new(p, len);
    for g in hom_basis(&cover.projective.module, left)? {
        restrictions.try_add(&g.mul(&cover.kernel).flatten());
    }
    if zs.iter().all(|z| restrictions.contains(&z.flatten())) {
        return internal("Ext¹ vanishes between the end terms");
    }

    // ζ lies in the socle when ζ∘Ω(h) and g∘ζ are restrictions for every
    // radical h of End(end) and g of End(left).
    let mut twists: Vec<Box<dyn Fn(&Mat) -> Mat>> = Vec::new();
    for h in radical_of_end(end)? {
        let oh = syzygy_map(&ModuleMap::raw(end.clone(), end.clone(), h)).matrix;
        twists.push(Box::new(move |z: &Mat| z.mul(&oh)));
    }
    if !left.is_zero() {
        for g in radical_of_end(left)? {
            twists.push(Box::new(move |z: &Mat| g.mul(z)));
        }
    }
    let mut constraint: Vec<Vec<u32>> = vec![Vec::new(); zs.len()];
    for t in &twists {
        for (i, z) in zs.iter().enumerate() {
            constraint[i].extend(restrictions.reduce(&t(z).flatten()));
        }
    }
    let rows = twists.len() * len;
    let socle = if rows == 0 {
        Mat::identity(p, zs.len())
    } else {
        Mat::from_cols(p, rows, &constraint).kernel_basis()
    };
    let zeta = socle
        .col_vecs()
        .into_iter()
        .map(|c| crate::module::combine(&zs, &c, dl, dw, p))
        .find(|z| !restrictions.contains(&z.flatten()))
        .ok_or_else(|| Error::Internal("the socle of Ext¹ lies in the split classes".into()))?;

    // E = (left ⊕ P) / {(ζ w, −ι w)}
    let sum = left.sum(&cover.projective.module)?;
    let relations = zeta.vstack(&cover.kernel.neg());
    let (middle, q, s) = sum.quotient(&relations);
    let dp = cover.projective.dim();
    let incl = q.mul(&Mat::identity(p, dl).vstack(&Mat::zeros(p, dp, dl)));
    let proj = Mat::zeros(p, end.dim(), dl).hstack(&cover.pi).mul(&s);
    Ok(Extension { middle, incl, proj })
}

fn check_exact(left: &Module, middle: &Module, right: &Module, incl: &Mat, proj: &Mat) -> Result<()> {
    let fail = |what: &str| precondition(format!("the sequence is not exact: {what}"));
    if middle.dim() != left.dim() + right.dim() {
        return fail("dim middle ≠ dim left + dim right");
    }
    if (incl.rows(), incl.cols()) != (middle.dim(), left.dim()) || (proj.rows(), proj.cols()) != (right.dim(), middle.dim())
    {
        return fail("map shapes do not match the terms");
    }
    if !is_homomorphism(left, middle, incl) || !is_homomorphism(middle, right, proj) {
        return fail("a map is not a homomorphism");
    }
    if incl.rank() != left.dim() || proj.rank() != right.dim() || !proj.mul(incl).is_zero() {
        return fail("incl must be injective, proj surjective, and proj∘incl = 0");
    }
    Ok(())
}

impl ARSequence {
    /// Assembles a sequence, rejecting it unless it is short exact.
    pub fn new(category: Category, left: Term, middle: Term, right: Term, incl: Mat, proj: Mat) -> Result<ARSequence> {
        check_exact(left.module(), middle.module(), right.module(), &incl, &proj)?;
        for t in [&left, &middle, &right] {
            if !t.in_category(category) {
                return precondition(format!("a term of the sequence is not in {category}"));
            }
        }
        Ok(ARSequence { category, left, middle, right, incl, proj, report: None })
    }

    pub fn with_report(mut self, corpus: &Corpus) -> Result<ARSequence> {
        self.report = Some(verify_almost_split(&self, corpus)?);
        Ok(self)
    }
}

/// The almost split sequence ending at `end` in `cat`.
pub fn almost_split_sequence(end: &Term, cat: Category, corpus: Option<&Corpus>) -> Result<ARSequence> {
    let left = match (end, cat) {
        (Term::Module(c), Category::R) => {
            if !c.algebra().is_gorenstein_local() {
                return Err(Error::Unsupported("sequences in mod R need a Gorenstein local base".into()));
            }
            if !is_indecomposable(c)? {
                return precondition("the end term must be indecomposable");
            }
            if c.is_projective() {
                return precondition("the end term is projective");
            }
            Term::Module(tau_module(c, TauDirection::Forward)?.with_side(c.side()))
        }
        (Term::Morph(x), Category::H | Category::G | Category::E) => {
            Term::Morph(tau_morphism(x, cat, TauDirection::Forward)?.object)
        }
        _ => return Err(Error::Input(format!("category {cat} does not match the kind of end term"))),
    };
    let ext = almost_split_extension(left.module(), end.module())?;
    let (middle, incl, proj) = match end {
        Term::Module(_) => (Term::Module(ext.middle), ext.incl, ext.proj),
        Term::Morph(_) => {
            let (obj, t) = MorphObject::from_module(&ext.middle)?;
            let ti = t.inverse().ok_or_else(|| Error::Internal("reading the middle term lost rank".into()))?;
            (Term::Morph(obj), ti.mul(&ext.incl), ext.proj.mul(&t))
        }
    };
    let seq = ARSequence::new(cat, left, middle, end.clone(), incl, proj)?;
    match corpus {
        Some(c) => seq.with_report(c),
        None => Ok(seq),
    }
}

/// Index of the first target outside the span of `gens`.
fn first_outside(targets: &[Mat], gens: &[Mat], p: u32) -> Option<usize> {
    let Some(first) = targets.first() else { return None };
    let mut span = Span::new(p, first.rows() * first.cols());
    for g in gens {
        span.try_add(&g.flatten());
    }
    targets.iter().position(|t| !span.contains(&t.flatten()))
}

/// Non-splitness, locality of the ends, and right almost splitness of
/// `proj` against every indecomposable corpus summand in the category.
pub fn verify_almost_split(seq: &ARSequence, corpus: &Corpus) -> Result<Report> {
    let (left, middle, right) = (seq.left.module(), seq.middle.module(), seq.right.module());
    check_exact(left, middle, right, &seq.incl, &seq.proj)?;
    let p = right.p();
    let through = |x: &Module| -> Result<Vec<Mat>> {
        Ok(hom_basis(x, middle)?.iter().map(|g| seq.proj.mul(g)).collect())
    };

    let from_right = through(right)?;
    let non_split = first_outside(&[Mat::identity(p, right.dim())], &from_right, p).is_some();
    let left_end_local = is_indecomposable(left)?;
    let right_end_local = is_indecomposable(right)?;

    let mut witness = None;
    if right_end_local {
        if let Some(i) = first_outside(&radical_of_end(right)?, &from_right, p) {
            witness = Some(format!("radical endomorphism {i} of the end term does not factor"));
        }
    }
    let mut checked = 0;
    if witness.is_none() {
        'outer: for (idx, item) in corpus.items.iter().enumerate() {
            if !item.in_category(seq.category) || !item.module().same_category(right) {
                continue;
            }
            for piece in &decompose(item.module())?.pieces {
                let x = &piece.module;
                if right_end_local && x.dim() == right.dim() && iso_indecomposable(x, right)? {
                    continue;
                }
                checked += 1;
                let maps = hom_basis(x, right)?;
                if let Some(i) = first_outside(&maps, &through(x)?, p) {
                    witness = Some(format!(
                        "corpus item {idx}: map {i} from a summand of dimension {} does not factor",
                        x.dim()
                    ));
                    break 'outer;
                }
            }
        }
    }
    Ok(Report {
        non_split,
        left_end_local,
        right_end_local,
        right_almost_split_vs_corpus: right_end_local && witness.is_none(),
        corpus_id: corpus.id.clone(),
        checked,
        witness,
    })
}
