//! Auslander–Reiten theory in `mod R` and in the subcategories `H`, `G`,
//! `E` of the morphism category.
//!
//! Sequences are built from a socle element of `Ext¹(C, τC)` and certified
//! against an explicit corpus by [`verify_almost_split`].

mod corpus;
mod family;
mod sequence;
mod tau;
#[cfg(test)]
mod tests;

use std::fmt;

pub use corpus::{ar_corpus, module_corpus, module_corpus_terms, theorem_corpus, Corpus, CorpusOptions};
pub use family::{cok_sequence, explicit_family, ker_sequence, Family};
pub use sequence::{almost_split_extension, almost_split_sequence, verify_almost_split, Extension};
pub use tau::{classical_cross_check, is_injective_in, is_projective_in, tau_morphism, CrossCheck, TauOutcome};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::module::{iso_indecomposable, Module};
use crate::morph::MorphObject;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Category {
    /// `mod R`
    R,
    /// All morphisms (every module is maximal Cohen–Macaulay here).
    H,
    /// Monomorphisms with Gorenstein projective source and cokernel.
    G,
    /// Epimorphisms.
    E,
}

impl Category {
    pub fn name(self) -> &'static str {
        match self {
            Category::R => "R",
            Category::H => "H",
            Category::G => "G",
            Category::E => "E",
        }
    }

    pub fn parse(s: &str) -> Result<Category> {
        match s {
            "R" | "r" => Ok(Category::R),
            "H" | "h" => Ok(Category::H),
            "G" | "g" => Ok(Category::G),
            "E" | "e" => Ok(Category::E),
            _ => Err(Error::Input(format!("unknown category {s:?} (expected R, H, G or E)"))),
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A term of a sequence: an `R`-module or an object of the morphism
/// category.
#[derive(Clone, Debug)]
pub enum Term {
    Module(Module),
    Morph(MorphObject),
}

impl Term {
    /// The underlying module (over `R` or over `Λ`).
    pub fn module(&self) -> &Module {
        match self {
            Term::Module(m) => m,
            Term::Morph(x) => x.module(),
        }
    }

    pub fn as_morph(&self) -> Option<&MorphObject> {
        match self {
            Term::Morph(x) => Some(x),
            Term::Module(_) => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.module().dim()
    }

    /// Membership in a category. `R` holds the modules, the others hold
    /// objects.
    pub fn in_category(&self, cat: Category) -> bool {
        match (self, cat) {
            (Term::Module(_), Category::R) => true,
            (Term::Morph(_), Category::H) => true,
            (Term::Morph(x), Category::G) => x.is_mono(),
            (Term::Morph(x), Category::E) => x.is_epi(),
            _ => false,
        }
    }
}

/// The verification record of a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub non_split: bool,
    pub left_end_local: bool,
    pub right_end_local: bool,
    pub right_almost_split_vs_corpus: bool,
    pub corpus_id: String,
    /// Indecomposable corpus summands tested.
    pub checked: usize,
    pub witness: Option<String>,
}

impl Report {
    pub fn all_ok(&self) -> bool {
        self.non_split && self.left_end_local && self.right_end_local && self.right_almost_split_vs_corpus
    }
}

/// `0 → left → middle → right → 0` in a category.
#[derive(Clone, Debug)]
pub struct ARSequence {
    pub category: Category,
    pub left: Term,
    pub middle: Term,
    pub right: Term,
    /// `dim middle × dim left`
    pub incl: Mat,
    /// `dim right × dim middle`
    pub proj: Mat,
    pub report: Option<Report>,
}

/// `x` is isomorphic to one of the indecomposable `objects`.
pub(crate) fn iso_to_any(x: &Module, objects: &[MorphObject]) -> Result<bool> {
    for t in objects {
        if t.module().dim() == x.dim() && iso_indecomposable(x, t.module())? {
            return Ok(true);
        }
    }
    Ok(false)
}
