//! Finite-dimensional modules over an [`Algebra`] and the homological
//! operations on them.
//!
//! Every module is stored as a *right* module over the algebra it carries:
//! the action matrices satisfy `ρ(ab) = ρ(b)ρ(a)` and act on column
//! vectors. A left module over `A` is a right module over `A^op`; the
//! [`Side`] tag records which one the user meant, so that duals and
//! transposes can flip it.

mod cover;
mod decompose;
mod linkage;
mod transpose;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use cover::{ext_dim, lift_to_covers, projective_cover, syzygy, syzygy_map, Cover, Presentation, ProjSum};
pub use decompose::{
    decompose, end_algebra, is_indecomposable, is_isomorphic, is_isomorphic_exhaustive, iso_indecomposable, Decomposition, Piece,
};
pub use linkage::{is_linked_module, lambda, Linkage};
pub use transpose::{
    dual, dual_map, functorial_lift, tau_module, transpose, transpose_map, DualVariant, Functor, TauDirection,
};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Coords, Mat, Span};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Right => Side::Left,
            Side::Left => Side::Right,
        }
    }
    pub fn name(self) -> &'static str {
        match self {
            Side::Right => "right",
            Side::Left => "left",
        }
    }
}

#[derive(Default)]
struct Cache {
    cover: OnceLock<Arc<Cover>>,
    transpose: OnceLock<Arc<transpose::TransposeData>>,
    dual: OnceLock<Arc<transpose::DualData>>,
    decomposition: OnceLock<Arc<Decomposition>>,
}

/// A finite-dimensional module, given by one action matrix per algebra
/// basis vector.
#[derive(Clone)]
pub struct Module {
    algebra: Arc<Algebra>,
    side: Side,
    dim: usize,
    action: Arc<Vec<Mat>>,
    cache: Arc<Cache>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim {}, {} over algebra of dim {})", self.dim, self.side.name(), self.algebra.dim())
    }
}

impl Module {
    /// Builds and validates a module. `algebra` is the algebra acting on the
    /// right (for a left module this is the opposite of the base ring).
    pub fn new(algebra: Arc<Algebra>, side: Side, action: Vec<Mat>) -> Result<Module> {
        let m = Module::from_parts(algebra, side, action)?;
        m.validate()?;
        Ok(m)
    }

    fn from_parts(algebra: Arc<Algebra>, side: Side, action: Vec<Mat>) -> Result<Module> {
        if action.len() != algebra.dim() {
            return Err(Error::Input(format!(
                "module needs {} action matrices, got {}",
                algebra.dim(),
                action.len()
            )));
        }
        let dim = action.first().map_or(0, |m| m.rows());
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim || m.p() != algebra.p()) {
            return Err(Error::Input("action matrices must be square of equal size over the ring's field".into()));
        }
        Ok(Module::raw(algebra, side, action))
    }

    pub(crate) fn raw(algebra: Arc<Algebra>, side: Side, action: Vec<Mat>) -> Module {
        let dim = action.first().map_or(0, |m| m.rows());
        Module { algebra, side, dim, action: Arc::new(action), cache: Arc::default() }
    }

    pub(crate) fn raw_shared(algebra: Arc<Algebra>, side: Side, dim: usize, action: Arc<Vec<Mat>>) -> Module {
        Module { algebra, side, dim, action, cache: Arc::default() }
    }

    /// Checks the unit and structure-constant axioms for a right action.
    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let n = a.dim();
        let unit = self.act(a.unit());
        if !unit.is_identity() {
            return Err(Error::Input("the unit does not act as the identity".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.act(a.basis_product(i, j));
                let rhs = self.action[j].mul(&self.action[i]);
                if lhs != rhs {
                    return Err(Error::Input(format!(
                        "action violates the structure constants at (b{i}, b{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(algebra: Arc<Algebra>, side: Side) -> Module {
        let p = algebra.p();
        let action = vec![Mat::zeros(p, 0, 0); algebra.dim()];
        Module::raw(algebra, side, action)
    }

    /// The algebra as a right module over itself.
    pub fn regular(algebra: &Arc<Algebra>, side: Side) -> Module {
        Module::raw(algebra.clone(), side, algebra.right_mult().to_vec())
    }

    /// `A / (elems)·A`, the quotient of the regular module by the right
    /// ideal generated by `elems`.
    pub fn regular_quotient(algebra: &Arc<Algebra>, side: Side, elems: &[Vec<u32>]) -> Module {
        let reg = Module::regular(algebra, side);
        let sub = reg.generated(elems);
        reg.quotient(&sub).0
    }

    /// `A / rad A`; for a local ring this is the residue field `k`.
    pub fn top_of_regular(algebra: &Arc<Algebra>, side: Side) -> Module {
        Module::regular_quotient(algebra, side, &algebra.radical().col_vecs())
    }

    /// The indecomposable projective `e_i A`.
    pub fn projective(algebra: &Arc<Algebra>, side: Side, i: usize) -> Module {
        let pr = &algebra.projectives()[i];
        Module::raw_shared(algebra.clone(), side, pr.dim(), pr.action.clone())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }
    pub fn side(&self) -> Side {
        self.side
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn p(&self) -> u32 {
        self.algebra.p()
    }
    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }
    pub fn action(&self) -> &[Mat] {
        &self.action
    }

    /// Same data with a different side tag. Used when the base ring is
    /// commutative and the left/right distinction carries no information.
    pub fn with_side(&self, side: Side) -> Module {
        if side == self.side {
            return self.clone();
        }
        Module::raw_shared(self.algebra.clone(), side, self.dim, self.action.clone())
    }

    /// Retags as a right module when the acting algebra is commutative.
    pub fn as_right_if_commutative(&self) -> Module {
        if self.algebra.is_commutative() {
            self.with_side(Side::Right)
        } else {
            self.clone()
        }
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn act(&self, elem: &[u32]) -> Mat {
        let p = self.p();
        let mut acc = Mat::zeros(p, self.dim, self.dim);
        for (m, &c) in self.action.iter().zip(elem) {
            acc.add_scaled(m, c);
        }
        acc
    }

    /// `m · a`
    pub fn act_vec(&self, m: &[u32], elem: &[u32]) -> Vec<u32> {
        self.act(elem).mul_vec(m)
    }

    /// Same acting algebra, and same side unless the algebra is
    /// commutative (where left and right modules coincide).
    pub fn same_category(&self, o: &Module) -> bool {
        *self.algebra == *o.algebra && (self.side == o.side || self.algebra.is_commutative())
    }

    pub(crate) fn check_same(&self, o: &Module) -> Result<()> {
        if !self.same_category(o) {
            return Err(Error::Input("modules live over different algebras or sides".into()));
        }
        Ok(())
    }

    /// Direct sum with block-diagonal action.
    pub fn direct_sum(parts: &[&Module]) -> Result<Module> {
        let first = parts.first().ok_or_else(|| Error::Input("empty direct sum".into()))?;
        for m in parts {
            first.check_same(m)?;
        }
        let alg = first.algebra.clone();
        let p = alg.p();
        let action = (0..alg.dim())
            .map(|i| parts.iter().fold(Mat::zeros(p, 0, 0), |acc, m| acc.block_diag(&m.action[i])))
            .collect();
        Ok(Module::raw(alg, first.side, action))
    }

    pub fn sum(&self, o: &Module) -> Result<Module> {
        Module::direct_sum(&[self, o])
    }

    /// The module transported along the invertible matrix `t`: the new
    /// action is `t⁻¹ ρ t`, so `t` is an isomorphism from the result to
    /// `self`.
    pub fn conjugate(&self, t: &Mat) -> Result<Module> {
        let ti = t.inverse().ok_or_else(|| Error::Input("base change must be invertible".into()))?;
        let action = self.action.iter().map(|m| ti.mul(m).mul(t)).collect();
        Ok(Module::raw(self.algebra.clone(), self.side, action))
    }

    /// A seeded random base change of `self`, together with the
    /// isomorphism from the result to `self`.
    pub fn random_conjugate(&self, seed: u64) -> (Module, Mat) {
        let p = self.p();
        let n = self.dim;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let t = Mat::from_fn(p, n, n, |_, _| rng.gen_range(0..p));
            if let Ok(m) = self.conjugate(&t) {
                return (m, t);
            }
        }
    }

    /// The submodule spanned by the columns of `basis` (assumed invariant
    /// and independent).
    pub fn submodule(&self, basis: &Mat) -> Module {
        if basis.cols() == 0 {
            return Module::zero(self.algebra.clone(), self.side);
        }
        let c = Coords::new(basis.clone());
        let action = self
            .action
            .iter()
            .map(|m| c.coords_of_cols(&m.mul(basis)).expect("submodule basis must span an invariant subspace"))
            .collect();
        Module::raw(self.algebra.clone(), self.side, action)
    }

    /// Quotient by the invariant subspace spanned by the (independent)
    /// columns of `sub`. Returns the quotient, the projection and a section
    /// (a linear right inverse of the projection).
    pub fn quotient(&self, sub: &Mat) -> (Module, Mat, Mat) {
        let p = self.p();
        let n = self.dim;
        let ext = sub.extend_basis(&Mat::identity(p, n));
        let q = Mat::identity(p, n).select_cols(&ext);
        let t = sub.hstack(&q);
        let ti = t.inverse().expect("adapted basis is invertible");
        let proj = ti.block(sub.cols(), 0, q.cols(), n);
        let action = self.action.iter().map(|m| proj.mul(m).mul(&q)).collect();
        let module = if q.cols() == 0 {
            Module::zero(self.algebra.clone(), self.side)
        } else {
            Module::raw(self.algebra.clone(), self.side, action)
        };
        (module, proj, q)
    }

    /// The submodule generated by the given vectors, as a basis matrix.
    pub fn generated(&self, vectors: &[Vec<u32>]) -> Mat {
        let p = self.p();
        let mut ech = Span::new(p, self.dim);
        let mut basis: Vec<Vec<u32>> = Vec::new();
        let mut queue: Vec<Vec<u32>> = vectors.to_vec();
        while let Some(x) = queue.pop() {
            if ech.try_add(&x) {
                for m in self.action.iter() {
                    queue.push(m.mul_vec(&x));
                }
                basis.push(x);
            }
        }
        Mat::from_cols(p, self.dim, &basis)
    }

    /// `M · rad A`
    pub fn radical_submodule(&self) -> Mat {
        let p = self.p();
        let rad = self.algebra.radical();
        let mut ech = Span::new(p, self.dim);
        let mut basis = Vec::new();
        for r in rad.col_vecs() {
            let m = self.act(&r);
            for c in m.col_vecs() {
                if ech.try_add(&c) {
                    basis.push(c);
                }
            }
        }
        Mat::from_cols(p, self.dim, &basis)
    }

    /// Dimension of the top `M / M·rad`.
    pub fn top_dim(&self) -> usize {
        self.dim - self.radical_submodule().cols()
    }

    /// True iff the module is projective (its projective cover is an
    /// isomorphism).
    pub fn is_projective(&self) -> bool {
        self.cover().projective.dim() == self.dim
    }
}

/// A homomorphism of modules; `matrix` is `target.dim × source.dim`.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: Module,
    pub target: Module,
    pub matrix: Mat,
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, matrix: Mat) -> Result<ModuleMap> {
        source.check_same(&target)?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Input(format!(
                "map matrix is {}x{} but should be {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        if !is_homomorphism(&source, &target, &matrix) {
            return Err(Error::Input("matrix does not commute with the module actions".into()));
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub(crate) fn raw(source: Module, target: Module, matrix: Mat) -> ModuleMap {
        ModuleMap { source, target, matrix }
    }

    pub fn identity(m: &Module) -> ModuleMap {
        ModuleMap::raw(m.clone(), m.clone(), Mat::identity(m.p(), m.dim()))
    }

    pub fn zero(source: &Module, target: &Module) -> ModuleMap {
        ModuleMap::raw(source.clone(), target.clone(), Mat::zeros(source.p(), target.dim(), source.dim()))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap::raw(other.source.clone(), self.target.clone(), self.matrix.mul(&other.matrix))
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }

    pub fn kernel(&self) -> Kernel {
        kernel(self)
    }

    pub fn cokernel(&self) -> Cokernel {
        cokernel(self)
    }

    pub fn image(&self) -> Image {
        image(self)
    }
}

/// `X ρ_M(b) = ρ_N(b) X` for every algebra basis vector.
pub fn is_homomorphism(m: &Module, n: &Module, x: &Mat) -> bool {
    m.action.iter().zip(n.action.iter()).all(|(a, b)| x.mul(a) == b.mul(x))
}

#[derive(Clone, Debug)]
pub struct Kernel {
    pub module: Module,
    /// `source.dim × kernel.dim`
    pub inclusion: Mat,
}

#[derive(Clone, Debug)]
pub struct Cokernel {
    pub module: Module,
    /// `cokernel.dim × target.dim`
    pub projection: Mat,
    /// A linear section of the projection.
    pub section: Mat,
}

#[derive(Clone, Debug)]
pub struct Image {
    pub module: Module,
    /// `target.dim × image.dim`
    pub inclusion: Mat,
    /// `image.dim × source.dim`, the corestriction of the map.
    pub corestriction: Mat,
}

pub fn kernel(phi: &ModuleMap) -> Kernel {
    let k = phi.matrix.kernel_basis();
    Kernel { module: phi.source.submodule(&k), inclusion: k }
}

pub fn image(phi: &ModuleMap) -> Image {
    let b = phi.matrix.column_space();
    let module = phi.target.submodule(&b);
    let corestriction = if b.cols() == 0 {
        Mat::zeros(phi.source.p(), 0, phi.source.dim())
    } else {
        Coords::new(b.clone()).coords_of_cols(&phi.matrix).expect("image contains the columns")
    };
    Image { module, inclusion: b, corestriction }
}

pub fn cokernel(phi: &ModuleMap) -> Cokernel {
    let b = phi.matrix.column_space();
    let (module, projection, section) = phi.target.quotient(&b);
    Cokernel { module, projection, section }
}

/// A basis of `Hom_A(m, n)`, as matrices `n.dim × m.dim`.
pub fn hom_basis(m: &Module, n: &Module) -> Result<Vec<Mat>> {
    m.check_same(n)?;
    if m.dim == 0 || n.dim == 0 {
        return Ok(Vec::new());
    }
    Ok(cover::hom_via_presentation(m, n))
}

/// The same space computed from the commutation equations
/// `X ρ_m(g) = ρ_n(g) X` for algebra generators `g`. Quadratic in the
/// dimensions; kept as an independent reference.
pub fn hom_basis_naive(m: &Module, n: &Module) -> Result<Vec<Mat>> {
    m.check_same(n)?;
    let p = m.p();
    let (dm, dn) = (m.dim, n.dim);
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    let gens = m.algebra.generators();
    let vars = dn * dm;
    let mut eq = Mat::zeros(p, gens.len() * dn * dm, vars);
    for (gi, &g) in gens.iter().enumerate() {
        let (a, b) = (&m.action[g], &n.action[g]);
        for r in 0..dn {
            for c in 0..dm {
                let row = gi * dn * dm + r * dm + c;
                // Σ_k X[r][k] a[k][c] − Σ_k b[r][k] X[k][c]
                for k in 0..dm {
                    let val = a.get(k, c);
                    if val != 0 {
                        let col = r * dm + k;
                        let cur = eq.get(row, col);
                        eq.set(row, col, crate::linalg::add(cur, val, p));
                    }
                }
                for k in 0..dn {
                    let val = b.get(r, k);
                    if val != 0 {
                        let col = k * dm + c;
                        let cur = eq.get(row, col);
                        eq.set(row, col, crate::linalg::sub(cur, val, p));
                    }
                }
            }
        }
    }
    let ker = eq.kernel_basis();
    Ok((0..ker.cols()).map(|j| Mat::from_vec(p, dn, dm, ker.col(j))).collect())
}

/// `Hom` basis wrapped as maps.
pub fn hom_maps(m: &Module, n: &Module) -> Result<Vec<ModuleMap>> {
    Ok(hom_basis(m, n)?.into_iter().map(|x| ModuleMap::raw(m.clone(), n.clone(), x)).collect())
}

/// Linear combination of matrices.
pub fn combine(mats: &[Mat], coeffs: &[u32], rows: usize, cols: usize, p: u32) -> Mat {
    let mut acc = Mat::zeros(p, rows, cols);
    for (m, &c) in mats.iter().zip(coeffs) {
        acc.add_scaled(m, c);
    }
    acc
}

/// Rank of the span of a list of equally shaped matrices.
pub fn span_rank(mats: &[Mat]) -> usize {
    let Some(first) = mats.first() else { return 0 };
    let mut ech = Span::new(first.p(), first.rows() * first.cols());
    mats.iter().filter(|m| ech.try_add(m.data())).count()
}

/// Coefficients `c` with `Σ c_j mats[j] = target`, if any.
pub fn solve_combination(mats: &[Mat], target: &Mat) -> Option<Vec<u32>> {
    let p = target.p();
    if mats.is_empty() {
        return target.is_zero().then(Vec::new);
    }
    let a = flat_cols(mats, target.rows(), target.cols(), p);
    a.solve_vec(&target.flatten())
}

/// A homomorphism `h: X → E` with `q ∘ h = g`, for `g: X → C` and
/// `q: E → C`.
pub fn factor_through(g: &ModuleMap, q: &ModuleMap) -> Result<Option<ModuleMap>> {
    let x = &g.source;
    let e = &q.source;
    let basis = hom_basis(x, e)?;
    let images: Vec<Mat> = basis.iter().map(|h| q.matrix.mul(h)).collect();
    Ok(solve_combination(&images, &g.matrix).map(|c| {
        ModuleMap::raw(x.clone(), e.clone(), combine(&basis, &c, e.dim(), x.dim(), x.p()))
    }))
}

/// A homomorphism `e: A → I` with `e ∘ k = i`, for `k: K → A` and
/// `i: K → I`.
pub fn extend_along(i: &ModuleMap, k: &ModuleMap) -> Result<Option<ModuleMap>> {
    let a = &k.target;
    let t = &i.target;
    let basis = hom_basis(a, t)?;
    let images: Vec<Mat> = basis.iter().map(|h| h.mul(&k.matrix)).collect();
    Ok(solve_combination(&images, &i.matrix).map(|c| {
        ModuleMap::raw(a.clone(), t.clone(), combine(&basis, &c, t.dim(), a.dim(), a.p()))
    }))
}

/// Stacks flattened matrices as columns.
pub(crate) fn flat_cols(mats: &[Mat], rows: usize, cols: usize, p: u32) -> Mat {
    let vs: Vec<Vec<u32>> = mats.iter().map(|m| m.flatten()).collect();
    Mat::from_cols(p, rows * cols, &vs)
}
