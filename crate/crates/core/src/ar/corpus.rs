//! Seeded, dimension-bounded corpora of modules and objects.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, ObjSide};
use crate::error::{Error, Result};
use crate::linalg::{vec as v, Mat};
use crate::module::{
    combine, decompose, dual, hom_basis, iso_indecomposable, syzygy, tau_module, transpose, DualVariant, Module,
    Side, TauDirection,
};
use crate::morph::{cok_object, MorphObject};

use super::{tau_morphism, Category, Term};

#[derive(Clone, Debug)]
pub struct CorpusOptions {
    /// Largest dimension of an `R`-module.
    pub max_dim_r: usize,
    /// Largest dimension of an object, as a `Λ`-module.
    pub max_dim_lambda: usize,
    /// Number of monomorphisms in the theorem corpus.
    pub monos: usize,
    /// Cap on the number of indecomposables kept by a closure.
    pub max_items: usize,
    pub seed: u64,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions { max_dim_r: 12, max_dim_lambda: 24, monos: 48, max_items: 60, seed: 0 }
    }
}

/// A named list of test terms.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub id: String,
    pub items: Vec<Term>,
}

impl Corpus {
    pub fn modules(&self) -> impl Iterator<Item = &Module> {
        self.items.iter().filter_map(|t| match t {
            Term::Module(m) => Some(m),
            Term::Morph(_) => None,
        })
    }

    pub fn objects(&self) -> impl Iterator<Item = &MorphObject> {
        self.items.iter().filter_map(Term::as_morph)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

fn corpus_id(kind: &str, base: &Algebra, max: usize, seed: u64) -> String {
    format!("{kind}:p={},dim={},max={max},seed={seed}", base.p(), base.dim())
}

/// Adds the indecomposable summands of `m` not yet present.
fn absorb(found: &mut Vec<Module>, m: &Module, max_dim: usize) -> Result<Vec<Module>> {
    let mut fresh = Vec::new();
    if m.is_zero() {
        return Ok(fresh);
    }
    for pc in &decompose(m)?.pieces {
        let x = pc.module.with_side(Side::Right);
        if x.dim() > max_dim {
            continue;
        }
        let mut seen = false;
        for y in found.iter() {
            if y.dim() == x.dim() && iso_indecomposable(y, &x)? {
                seen = true;
                break;
            }
        }
        if !seen {
            found.push(x.clone());
            fresh.push(x);
        }
    }
    Ok(fresh)
}

/// Indecomposable `R`-modules: the regular module, its radical layers and
/// cyclic quotients, closed under syzygy, transpose, both duals and the
/// translate, up to the dimension and count bounds.
pub fn module_corpus(base: &Arc<Algebra>, opts: &CorpusOptions) -> Result<Vec<Module>> {
    let r = Module::regular(base, Side::Right);
    let p = base.p();
    let n = base.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut seeds = vec![r.clone(), Module::top_of_regular(base, Side::Right)];
    let mut layer = r.radical_submodule();
    while layer.cols() > 0 {
        let (q, _, _) = r.quotient(&layer);
        seeds.push(q);
        seeds.push(r.submodule(&layer));
        let next = r.submodule(&layer).radical_submodule();
        layer = layer.mul(&next);
    }
    let rad = base.radical();
    for c in rad.col_vecs() {
        seeds.push(Module::regular_quotient(base, Side::Right, &[c]));
    }
    for _ in 0..3 {
        if rad.cols() == 0 {
            break;
        }
        let coeffs: Vec<u32> = (0..rad.cols()).map(|_| rng.gen_range(0..p)).collect();
        let mut x = v::zero(n);
        for (c, col) in coeffs.iter().zip(rad.col_vecs()) {
            v::axpy(&mut x, *c, &col, p);
        }
        if !v::is_zero(&x) {
            seeds.push(Module::regular_quotient(base, Side::Right, &[x]));
        }
    }

    let gor = base.is_gorenstein_local();
    let mut found = Vec::new();
    let mut queue = Vec::new();
    for s in &seeds {
        queue.extend(absorb(&mut found, s, opts.max_dim_r)?);
    }
    while let Some(m) = queue.pop() {
        if found.len() >= opts.max_items {
            break;
        }
        let mut images = vec![
            syzygy(&m, 1),
            transpose(&m).with_side(Side::Right),
            dual(&m, DualVariant::Field)?.with_side(Side::Right),
        ];
        if gor {
            images.push(dual(&m, DualVariant::Algebra)?.with_side(Side::Right));
            images.push(tau_module(&m, TauDirection::Forward)?.with_side(Side::Right));
        }
        for x in images {
            if x.dim() <= 3 * opts.max_dim_r {
                queue.extend(absorb(&mut found, &x, opts.max_dim_r)?);
            }
        }
    }
    found.truncate(opts.max_items);
    found.sort_by_key(|m| m.dim());
    Ok(found)
}

/// Maps `a → b`: the hom basis, its sum, and a few seeded combinations.
fn sample_maps(a: &Module, b: &Module, rng: &mut ChaCha8Rng) -> Result<Vec<Mat>> {
    let basis = hom_basis(a, b)?;
    let p = a.p();
    if basis.is_empty() {
        return Ok(vec![Mat::zeros(p, b.dim(), a.dim())]);
    }
    let mut out = basis.clone();
    out.push(combine(&basis, &vec![1; basis.len()], b.dim(), a.dim(), p));
    for _ in 0..3 {
        let c: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..p)).collect();
        out.push(combine(&basis, &c, b.dim(), a.dim(), p));
    }
    Ok(out)
}

fn signature(x: &MorphObject) -> (usize, usize, usize) {
    (x.a().dim(), x.b().dim(), x.f().rank())
}

fn push_new(list: &mut Vec<MorphObject>, x: MorphObject) -> Result<bool> {
    let s = signature(&x);
    for y in list.iter() {
        if signature(y) == s && y.is_isomorphic(&x)? {
            return Ok(false);
        }
    }
    list.push(x);
    Ok(true)
}

/// At least `opts.monos` pairwise non-isomorphic monomorphisms, including
/// decomposable ones, when the bounds allow.
pub fn theorem_corpus(base: &Arc<Algebra>, opts: &CorpusOptions) -> Result<Vec<MorphObject>> {
    let mods = module_corpus(base, opts)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    let mut pool: Vec<Module> = vec![Module::zero(base.clone(), Side::Right)];
    pool.extend(mods.iter().cloned());
    for (i, x) in mods.iter().enumerate() {
        for y in &mods[i..] {
            if x.dim() + y.dim() <= opts.max_dim_r {
                pool.push(x.sum(y)?);
            }
        }
    }
    pool.sort_by_key(|m| m.dim());

    let mut out = Vec::new();
    'pairs: for a in &pool {
        for b in &pool {
            if a.dim() + b.dim() > opts.max_dim_lambda || a.dim() > b.dim() {
                continue;
            }
            for f in sample_maps(a, b, &mut rng)? {
                if f.rank() == a.dim() {
                    push_new(&mut out, MorphObject::new(a, b, f, ObjSide::M)?)?;
                    if out.len() >= opts.monos {
                        break 'pairs;
                    }
                }
            }
        }
    }
    let singles = out.clone();
    'sums: for (i, x) in singles.iter().enumerate() {
        for y in &singles[i..] {
            if out.len() >= opts.monos {
                break 'sums;
            }
            if x.dim() + y.dim() <= opts.max_dim_lambda {
                push_new(&mut out, x.sum(y)?)?;
            }
        }
    }
    Ok(out)
}

fn absorb_objects(found: &mut Vec<MorphObject>, x: &MorphObject, max_dim: usize) -> Result<Vec<MorphObject>> {
    let mut fresh = Vec::new();
    if x.is_zero() {
        return Ok(fresh);
    }
    for s in x.summands()? {
        if s.dim() <= max_dim && push_new(found, s.clone())? {
            fresh.push(s);
        }
    }
    Ok(fresh)
}

/// Indecomposable objects: summands of maps between corpus modules (and
/// of their cokernels), closed under the translate in `H` and its inverse
/// over Gorenstein bases.
pub fn ar_corpus(base: &Arc<Algebra>, opts: &CorpusOptions) -> Result<super::Corpus> {
    let mods = module_corpus(base, opts)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xa4);
    let mut found = Vec::new();
    let mut queue = Vec::new();
    let cap = opts.max_dim_lambda;
    let limit = 2 * opts.max_items;
    for m in &mods {
        for x in [MorphObject::zero_to(m), MorphObject::to_zero(m), MorphObject::identity(m)] {
            queue.extend(absorb_objects(&mut found, &x, cap)?);
        }
    }
    'seed: for a in &mods {
        for b in &mods {
            if a.dim() + b.dim() > cap {
                continue;
            }
            for f in sample_maps(a, b, &mut rng)? {
                if found.len() >= limit {
                    break 'seed;
                }
                let x = MorphObject::new(a, b, f, ObjSide::M)?;
                queue.extend(absorb_objects(&mut found, &x, cap)?);
                queue.extend(absorb_objects(&mut found, &cok_object(&x), cap)?);
            }
        }
    }
    if base.is_gorenstein_local() {
        while let Some(x) = queue.pop() {
            if found.len() >= limit {
                break;
            }
            for dir in [TauDirection::Forward, TauDirection::Inverse] {
                match tau_morphism(&x, Category::H, dir) {
                    Ok(t) => queue.extend(absorb_objects(&mut found, &t.object, cap)?),
                    Err(Error::Precondition(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    found.sort_by_key(|x| x.dim());
    Ok(super::Corpus {
        id: corpus_id("objects", base, cap, opts.seed),
        items: found.into_iter().map(Term::Morph).collect(),
    })
}

/// The module corpus as a [`super::Corpus`].
pub fn module_corpus_terms(base: &Arc<Algebra>, opts: &CorpusOptions) -> Result<super::Corpus> {
    Ok(super::Corpus {
        id: corpus_id("modules", base, opts.max_dim_r, opts.seed),
        items: module_corpus(base, opts)?.into_iter().map(Term::Module).collect(),
    })
}
