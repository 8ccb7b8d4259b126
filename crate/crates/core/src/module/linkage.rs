//! Horizontal linkage of modules, `M ≅ λ²M` with `λ = Ω¹Tr`.

use super::{ext_dim, is_isomorphic, syzygy, transpose, Module};
use crate::error::{precondition, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Linkage {
    pub linked: bool,
    /// No projective direct summand.
    pub stable: bool,
    /// `Ext¹(Tr M, A) = 0` over the opposite algebra.
    pub ext_vanishes: bool,
    /// `M ≅ λ²M`, computed directly.
    pub lambda_square_iso: bool,
}

/// `λ M = Ω¹ Tr M`.
pub fn lambda(m: &Module) -> Module {
    syzygy(&transpose(m), 1)
}

/// Both criteria for linkage: the structural one (stable with
/// `Ext¹(Tr M, A) = 0`) and the defining `M ≅ λ²M`.
pub fn is_linked_module(m: &Module) -> Result<Linkage> {
    let base = match m.algebra().tri() {
        Some(t) => t.base.clone(),
        None => m.algebra().clone(),
    };
    if !base.is_local() {
        return precondition("linkage is defined over a local ring");
    }
    let stable = !m.has_projective_summand()?;
    let tr = transpose(m);
    let reg = Module::regular(tr.algebra(), tr.side());
    let ext_vanishes = ext_dim(&tr, &reg, 1)? == 0;
    let l2 = lambda(&lambda(m));
    let lambda_square_iso = l2.same_category(m) && is_isomorphic(m, &l2.with_side(m.side()))?;
    Ok(Linkage { linked: stable && ext_vanishes, stable, ext_vanishes, lambda_square_iso })
}
