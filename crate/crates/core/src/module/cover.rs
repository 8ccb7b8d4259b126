//! Projective covers, minimal presentations, syzygies and Ext.

use std::sync::Arc;

use super::{hom_basis, span_rank, Module, ModuleMap};
use crate::error::Result;
use crate::linalg::{Coords, Mat, Span};

/// A finite direct sum `⊕ e_{i_j} A` of indecomposable projectives, with
/// the summand layout kept so that maps between such sums can be read as
/// matrices of algebra elements.
#[derive(Clone, Debug)]
pub struct ProjSum {
    /// Idempotent index of each summand.
    pub idx: Vec<usize>,
    pub module: Module,
    pub offsets: Vec<usize>,
}

impl ProjSum {
    pub fn new(like: &Module, idx: Vec<usize>) -> ProjSum {
        let alg = like.algebra().clone();
        let parts: Vec<Module> = idx.iter().map(|&i| Module::projective(&alg, like.side(), i)).collect();
        let mut offsets = Vec::with_capacity(idx.len());
        let mut off = 0;
        for q in &parts {
            offsets.push(off);
            off += q.dim();
        }
        let module = if parts.is_empty() {
            Module::zero(alg, like.side())
        } else {
            Module::direct_sum(&parts.iter().collect::<Vec<_>>()).expect("summands share an algebra")
        };
        ProjSum { idx, module, offsets }
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Coordinates of the generator `e_{i_j}` of summand `j`.
    pub fn generator(&self, j: usize) -> Vec<u32> {
        let pr = &self.module.algebra().projectives()[self.idx[j]];
        let mut v = vec![0; self.dim()];
        v[self.offsets[j]..self.offsets[j] + pr.dim()].copy_from_slice(&pr.generator);
        v
    }

    /// The algebra element held in summand `j` of a vector of this module.
    pub fn component(&self, x: &[u32], j: usize) -> Vec<u32> {
        let pr = &self.module.algebra().projectives()[self.idx[j]];
        let o = self.offsets[j];
        pr.embed.mul_vec(&x[o..o + pr.dim()])
    }

    /// The vector with algebra element `a` (which must lie in `e_{i_j}A`) in
    /// summand `j` and zero elsewhere.
    pub fn place(&self, j: usize, a: &[u32]) -> Vec<u32> {
        let pr = &self.module.algebra().projectives()[self.idx[j]];
        let mut v = vec![0; self.dim()];
        let c = pr.coords.coords(a).expect("element lies in the summand");
        v[self.offsets[j]..self.offsets[j] + pr.dim()].copy_from_slice(&c);
        v
    }

    /// Entries `a_{ts} ∈ e_{k_t} A e_{i_s}` of a module map `self → target`:
    /// the image of the generator of summand `s` read in summand `t`.
    pub fn entries(&self, target: &ProjSum, map: &Mat) -> Vec<Vec<Vec<u32>>> {
        (0..target.idx.len())
            .map(|t| {
                (0..self.idx.len())
                    .map(|s| target.component(&map.mul_vec(&self.generator(s)), t))
                    .collect()
            })
            .collect()
    }

    /// The matrix of the map `self → target` sending the generator of
    /// summand `s` to `Σ_t a[t][s]` placed in summand `t`.
    pub fn map_from_entries(&self, target: &ProjSum, a: &[Vec<Vec<u32>>]) -> Mat {
        let alg = self.module.algebra();
        let p = alg.p();
        let mut m = Mat::zeros(p, target.dim(), self.dim());
        for s in 0..self.idx.len() {
            let pr = &alg.projectives()[self.idx[s]];
            for c in 0..pr.dim() {
                let x = pr.embed.col(c);
                let mut col = vec![0u32; target.dim()];
                for (t, row) in a.iter().enumerate() {
                    let y = alg.mul(&row[s], &x);
                    crate::linalg::vec::axpy(&mut col, 1, &target.place(t, &y), p);
                }
                for (r, val) in col.into_iter().enumerate() {
                    m.set(r, self.offsets[s] + c, val);
                }
            }
        }
        m
    }

    /// The same summand layout over the opposite algebra: `Hom_A(e A, A)` is
    /// the left ideal `A e`, i.e. the right ideal `e·A^op`.
    pub fn dual(&self) -> ProjSum {
        let op = self.module.algebra().opposite();
        let like = Module::zero(op, self.module.side().flip());
        ProjSum::new(&like, self.idx.clone())
    }

    /// Dual of a map `self → target` given by entries `a`: the map
    /// `target* → self*`, `(y_t) ↦ (Σ_t y_t a_{ts})_s`, written over the
    /// opposite algebra.
    pub fn dual_map(&self, target: &ProjSum, map: &Mat) -> (ProjSum, ProjSum, Mat) {
        let a = self.entries(target, map);
        let (sd, td) = (self.dual(), target.dual());
        // Over A^op the product y·a becomes a * y, so the transposed entries
        // act by the same left-multiplication rule as in `map_from_entries`.
        let at: Vec<Vec<Vec<u32>>> =
            (0..self.idx.len()).map(|s| (0..target.idx.len()).map(|t| a[t][s].clone()).collect()).collect();
        let m = td.map_from_entries(&sd, &at);
        (td, sd, m)
    }
}

/// Projective cover `π: P → M` with the data needed to present `M`.
#[derive(Debug)]
pub struct Cover {
    /// Generators of `M`: idempotent index and vector in `M·e`.
    pub gens: Vec<(usize, Vec<u32>)>,
    pub projective: ProjSum,
    /// `dim M × dim P`
    pub pi: Mat,
    /// Columns: a basis of `ker π` in the coordinates of `P`.
    pub kernel: Mat,
    pivots: Vec<usize>,
    pi_s_inv: Mat,
    /// `Ω M = ker π`.
    pub omega: Module,
}

impl Cover {
    pub fn map(&self, m: &Module) -> ModuleMap {
        ModuleMap::raw(self.projective.module.clone(), m.clone(), self.pi.clone())
    }

    pub fn omega_inclusion(&self) -> ModuleMap {
        ModuleMap::raw(self.omega.clone(), self.projective.module.clone(), self.kernel.clone())
    }

    /// A preimage under `π`.
    pub fn preimage(&self, x: &[u32]) -> Vec<u32> {
        let c = self.pi_s_inv.mul_vec(x);
        let mut out = vec![0; self.projective.dim()];
        for (k, &col) in self.pivots.iter().enumerate() {
            out[col] = c[k];
        }
        out
    }
}

impl Module {
    /// The cached projective cover.
    pub fn cover(&self) -> Arc<Cover> {
        self.cache.cover.get_or_init(|| Arc::new(compute_cover(self))).clone()
    }
}

fn compute_cover(m: &Module) -> Cover {
    let alg = m.algebra().clone();
    let p = alg.p();
    let n = m.dim();
    let mut u = Span::new(p, n);
    for c in m.radical_submodule().col_vecs() {
        u.try_add(&c);
    }
    let mut gens: Vec<(usize, Vec<u32>)> = Vec::new();
    if n > 0 {
        for i in alg.projective_reps() {
            let w = m.act(&alg.idempotents()[i]).column_space();
            for c in w.col_vecs() {
                if u.rank() == n {
                    break;
                }
                if !u.contains(&c) {
                    for a in m.action().iter() {
                        u.try_add(&a.mul_vec(&c));
                    }
                    gens.push((i, c));
                }
            }
        }
    }
    let projective = ProjSum::new(m, gens.iter().map(|g| g.0).collect());
    let mut cols: Vec<Vec<u32>> = Vec::with_capacity(projective.dim());
    for (j, (i, g)) in gens.iter().enumerate() {
        let pr = &alg.projectives()[*i];
        debug_assert_eq!(projective.offsets[j], cols.len());
        for a in pr.embed.col_vecs() {
            cols.push(m.act_vec(g, &a));
        }
    }
    let pi = Mat::from_cols(p, n, &cols);
    let kernel = if projective.dim() == 0 { Mat::zeros(p, 0, 0) } else { pi.kernel_basis() };
    let pivots = pi.rref().pivots;
    let pi_s_inv = pi.select_cols(&pivots).inverse().expect("cover is surjective");
    let omega = if kernel.cols() == 0 {
        Module::zero(alg.clone(), m.side())
    } else {
        projective.module.submodule(&kernel)
    };
    Cover { gens, projective, pi, kernel, pivots, pi_s_inv, omega }
}

/// The projective cover `P → m`.
pub fn projective_cover(m: &Module) -> ModuleMap {
    m.cover().map(m)
}

/// `Ω^i m`.
pub fn syzygy(m: &Module, i: usize) -> Module {
    let mut cur = m.clone();
    for _ in 0..i {
        cur = cur.cover().omega.clone();
    }
    cur
}

/// Minimal presentation `P₁ → P₀ → M → 0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p0: ProjSum,
    pub p1: ProjSum,
    /// `dim P₀ × dim P₁`
    pub d: Mat,
    /// `dim M × dim P₀`
    pub pi: Mat,
}

impl Module {
    pub fn presentation(&self) -> Presentation {
        let c0 = self.cover();
        let c1 = c0.omega.cover();
        Presentation {
            p0: c0.projective.clone(),
            p1: c1.projective.clone(),
            d: c0.kernel.mul(&c1.pi),
            pi: c0.pi.clone(),
        }
    }
}

/// `Hom(m, n)` from the presentation of `m`: a homomorphism is fixed by
/// the images `n_j ∈ N·e_{i_j}` of the generators, subject to the relations
/// spanning `ker π`.
pub(super) fn hom_via_presentation(m: &Module, n: &Module) -> Vec<Mat> {
    let alg = m.algebra();
    let p = alg.p();
    let cov = m.cover();
    let ps = &cov.projective;
    let dn = n.dim();
    // Unknown blocks: coordinates of n_j in a basis of N·e_{i_j}.
    let w: Vec<Mat> = ps.idx.iter().map(|&i| n.act(&alg.idempotents()[i]).column_space()).collect();
    let mut uoff = Vec::with_capacity(w.len());
    let mut nu = 0;
    for b in &w {
        uoff.push(nu);
        nu += b.cols();
    }
    if nu == 0 {
        return Vec::new();
    }
    // B_v = ρ_N(a_v)·W_j for every basis vector v = (j, a_v) of P.
    let mut bmats: Vec<(usize, Mat)> = Vec::with_capacity(ps.dim());
    for (j, &i) in ps.idx.iter().enumerate() {
        for a in alg.projectives()[i].embed.col_vecs() {
            bmats.push((j, n.act(&a).mul(&w[j])));
        }
    }
    let mut rows = Span::new(p, nu);
    for k in cov.kernel.col_vecs() {
        let mut block = Mat::zeros(p, dn, nu);
        for (v, &c) in k.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (j, b) = &bmats[v];
            for r in 0..dn {
                for s in 0..b.cols() {
                    let val = crate::linalg::add(block.get(r, uoff[*j] + s), crate::linalg::mul(c, b.get(r, s), p), p);
                    block.set(r, uoff[*j] + s, val);
                }
            }
        }
        for r in 0..dn {
            rows.try_add(block.row(r));
            if rows.rank() == nu {
                return Vec::new();
            }
        }
    }
    let constraint = rows.to_rows_mat();
    let sols = if constraint.rows() == 0 { Mat::identity(p, nu) } else { constraint.kernel_basis() };
    let dm = m.dim();
    sols.col_vecs()
        .into_iter()
        .map(|c| {
            let mut phi_s = Mat::zeros(p, dn, dm);
            for (k, &v) in cov.pivots.iter().enumerate() {
                let (j, b) = &bmats[v];
                let cj = &c[uoff[*j]..uoff[*j] + b.cols()];
                let col = b.mul_vec(cj);
                for (r, val) in col.into_iter().enumerate() {
                    phi_s.set(r, k, val);
                }
            }
            phi_s.mul(&cov.pi_s_inv)
        })
        .collect()
}

/// Lift of `φ: M → N` to `ψ: P_M → P_N` with `π_N ψ = φ π_M`.
pub fn lift_to_covers(phi: &ModuleMap) -> Mat {
    let (m, n) = (&phi.source, &phi.target);
    let alg = m.algebra();
    let p = alg.p();
    let cm = m.cover();
    let cn = n.cover();
    let pn = &cn.projective.module;
    let mut out = Mat::zeros(p, cn.projective.dim(), cm.projective.dim());
    for (j, (i, g)) in cm.gens.iter().enumerate() {
        let e = &alg.idempotents()[*i];
        let y = pn.act_vec(&cn.preimage(&phi.matrix.mul_vec(g)), e);
        let pr = &alg.projectives()[*i];
        for (t, a) in pr.embed.col_vecs().into_iter().enumerate() {
            let col = pn.act_vec(&y, &a);
            for (r, val) in col.into_iter().enumerate() {
                out.set(r, cm.projective.offsets[j] + t, val);
            }
        }
    }
    out
}

/// `Ω(φ): ΩM → ΩN`, the restriction of the lift to the kernels.
pub fn syzygy_map(phi: &ModuleMap) -> ModuleMap {
    let cm = phi.source.cover();
    let cn = phi.target.cover();
    let psi = lift_to_covers(phi);
    let p = phi.source.p();
    let matrix = if cm.kernel.cols() == 0 || cn.kernel.cols() == 0 {
        Mat::zeros(p, cn.omega.dim(), cm.omega.dim())
    } else {
        Coords::new(cn.kernel.clone())
            .coords_of_cols(&psi.mul(&cm.kernel))
            .expect("lift maps syzygy into syzygy")
    };
    ModuleMap::raw(cm.omega.clone(), cn.omega.clone(), matrix)
}

/// `dim Ext^i(m, n)` from the minimal resolution of `m`.
pub fn ext_dim(m: &Module, n: &Module, i: usize) -> Result<usize> {
    m.check_same(n)?;
    if i == 0 {
        return Ok(hom_basis(m, n)?.len());
    }
    let x = syzygy(m, i - 1);
    let cov = x.cover();
    let cocycles = hom_basis(&cov.omega, n)?;
    if cocycles.is_empty() {
        return Ok(0);
    }
    let restricted: Vec<Mat> =
        hom_basis(&cov.projective.module, n)?.iter().map(|g| g.mul(&cov.kernel)).collect();
    Ok(cocycles.len() - span_rank(&restricted))
}
