//! Finite-dimensional associative unital algebras over F_p given by
//! structure constants.

use std::fmt;
use std::sync::{Arc, Mutex, Weak};

use crate::error::{precondition, Error, Result};
use crate::linalg::{self, vec as v, Coords, Echelon, Mat};
use crate::matalg::{MatAlgebra, Splitting};

/// Which side of the morphism category a triangular algebra models.
///
/// `M` is the triangular algebra itself, whose right modules are the
/// objects `A → B`. `MOp` is its opposite; a right module over it is read as
/// an object of the opposite morphism category with the roles of the two
/// vertices exchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObjSide {
    M,
    MOp,
}

impl ObjSide {
    pub fn flip(self) -> ObjSide {
        match self {
            ObjSide::M => ObjSide::MOp,
            ObjSide::MOp => ObjSide::M,
        }
    }
}

/// Extra structure carried by `T₂(R)` and its opposite.
#[derive(Clone, Debug)]
pub struct TriInfo {
    pub base: Arc<Algebra>,
    pub side: ObjSide,
    /// Block index (0 = `e₁·R`, 1 = `e₂·R`) of the idempotent whose image is
    /// the source of the arrow.
    pub src_block: usize,
    pub tgt_block: usize,
}

impl TriInfo {
    pub const ARROW_BLOCK: usize = 2;

    pub fn n(&self) -> usize {
        self.base.dim()
    }

    /// The element `e·r` of the given block.
    pub fn element(&self, block: usize, r: &[u32]) -> Vec<u32> {
        let n = self.n();
        let mut out = vec![0; 3 * n];
        out[block * n..(block + 1) * n].copy_from_slice(r);
        out
    }

    pub fn e_src(&self) -> Vec<u32> {
        self.element(self.src_block, self.base.unit())
    }

    pub fn e_tgt(&self) -> Vec<u32> {
        self.element(self.tgt_block, self.base.unit())
    }

    pub fn arrow(&self) -> Vec<u32> {
        self.element(Self::ARROW_BLOCK, self.base.unit())
    }
}

/// Raw structure constants as read from a file, before any checking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraTable {
    pub p: u32,
    pub labels: Vec<String>,
    pub unit: Vec<u32>,
    /// `mul[i][j]` is the coefficient vector of `b_i · b_j`.
    pub mul: Vec<Vec<Vec<u32>>>,
}

/// A failed axiom found by [`AlgebraTable::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomFailure {
    Associativity { i: usize, j: usize, l: usize },
    LeftUnit { i: usize },
    RightUnit { i: usize },
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomFailure::Associativity { i, j, l } => {
                write!(f, "associativity fails: (b{i} b{j}) b{l} != b{i} (b{j} b{l})")
            }
            AxiomFailure::LeftUnit { i } => write!(f, "unit fails on the left: 1 b{i} != b{i}"),
            AxiomFailure::RightUnit { i } => write!(f, "unit fails on the right: b{i} 1 != b{i}"),
        }
    }
}

impl AlgebraTable {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Checks shapes; an `Err` here is an input error, distinct from axiom
    /// failures.
    pub fn check_shape(&self) -> Result<()> {
        linalg::check_prime(self.p)?;
        let n = self.dim();
        if n == 0 {
            return Err(Error::Input("algebra must have positive dimension".into()));
        }
        if self.unit.len() != n {
            return Err(Error::Input(format!("unit has length {} but dim is {n}", self.unit.len())));
        }
        if self.mul.len() != n || self.mul.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
            return Err(Error::Input(format!("mul must be a {n}x{n} table of length-{n} vectors")));
        }
        let p = self.p;
        if self.unit.iter().chain(self.mul.iter().flatten().flatten()).any(|&x| x >= p) {
            return Err(Error::Input("structure constants must be reduced residues".into()));
        }
        Ok(())
    }

    fn product(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = self.dim();
        let p = self.p;
        let mut out = vec![0u32; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                v::axpy(&mut out, linalg::mul(x, y, p), &self.mul[i][j], p);
            }
        }
        out
    }

    /// Lists every failed axiom. Empty means the table defines an
    /// associative unital algebra.
    pub fn validate(&self) -> Result<Vec<AxiomFailure>> {
        self.check_shape()?;
        let n = self.dim();
        let mut fails = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.mul[i][j];
                for l in 0..n {
                    let left = self.product(ij, &v::unit(n, l));
                    let right = self.product(&v::unit(n, i), &self.mul[j][l]);
                    if left != right {
                        fails.push(AxiomFailure::Associativity { i, j, l });
                    }
                }
            }
        }
        for i in 0..n {
            let bi = v::unit(n, i);
            if self.product(&self.unit, &bi) != bi {
                fails.push(AxiomFailure::LeftUnit { i });
            }
            if self.product(&bi, &self.unit) != bi {
                fails.push(AxiomFailure::RightUnit { i });
            }
        }
        Ok(fails)
    }
}

/// An indecomposable projective right module `eA`, stored as a subspace of
/// `A` with its right action.
#[derive(Clone, Debug)]
pub struct Projective {
    pub idempotent: Vec<u32>,
    /// Columns: a basis of `eA` inside `A`.
    pub embed: Mat,
    pub coords: Coords,
    pub action: Arc<Vec<Mat>>,
    /// Coordinates of `e` in the basis of `eA`.
    pub generator: Vec<u32>,
}

impl Projective {
    pub fn dim(&self) -> usize {
        self.embed.cols()
    }
}

#[derive(Debug)]
struct Derived {
    commutative: bool,
    local: bool,
    gorenstein_local: bool,
    basic: bool,
    radical: Mat,
    radical_coords: Option<Coords>,
    socle: Mat,
    idempotents: Vec<Vec<u32>>,
    /// For each idempotent, the index of the first idempotent with an
    /// isomorphic projective.
    class_rep: Vec<usize>,
    left: Vec<Mat>,
    right: Vec<Mat>,
    generators: Vec<usize>,
    projectives: Vec<Projective>,
}

enum Link {
    Strong(Arc<Algebra>),
    Weak(Weak<Algebra>),
}

/// A validated, classified algebra.
pub struct Algebra {
    p: u32,
    labels: Vec<String>,
    unit: Vec<u32>,
    table: Vec<Vec<u32>>,
    tri: Option<TriInfo>,
    derived: Derived,
    op: Mutex<Option<Link>>,
    triangular: Mutex<Weak<Algebra>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("p", &self.p)
            .field("dim", &self.dim())
            .field("labels", &self.labels)
            .finish()
    }
}

impl PartialEq for Algebra {
    fn eq(&self, o: &Algebra) -> bool {
        std::ptr::eq(self, o) || (self.p == o.p && self.unit == o.unit && self.table == o.table)
    }
}

impl Eq for Algebra {}

/// Summary of [`Algebra::classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub commutative: bool,
    pub local: bool,
    pub gorenstein_local: bool,
    pub basic: bool,
    pub radical_basis: Vec<Vec<u32>>,
    pub socle_basis: Vec<Vec<u32>>,
    pub primitive_idempotents: Vec<Vec<u32>>,
}

impl Algebra {
    /// Validates and classifies a table.
    pub fn from_table(t: AlgebraTable) -> Result<Arc<Algebra>> {
        let fails = t.validate()?;
        if let Some(f) = fails.first() {
            return Err(Error::Input(format!("not an associative unital algebra ({} failures, first: {f})", fails.len())));
        }
        Self::build(t, None, None)
    }

    fn build(t: AlgebraTable, tri: Option<TriInfo>, idempotents: Option<Vec<Vec<u32>>>) -> Result<Arc<Algebra>> {
        let table: Vec<Vec<u32>> = t.mul.iter().flat_map(|r| r.iter().cloned()).collect();
        let derived = derive(&t, idempotents)?;
        Ok(Arc::new(Algebra {
            p: t.p,
            labels: t.labels,
            unit: t.unit,
            table,
            tri,
            derived,
            op: Mutex::new(None),
            triangular: Mutex::new(Weak::new()),
        }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn unit(&self) -> &[u32] {
        &self.unit
    }
    pub fn tri(&self) -> Option<&TriInfo> {
        self.tri.as_ref()
    }

    /// Coefficient vector of `b_i · b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[u32] {
        &self.table[i * self.dim() + j]
    }

    pub fn to_table(&self) -> AlgebraTable {
        let n = self.dim();
        AlgebraTable {
            p: self.p,
            labels: self.labels.clone(),
            unit: self.unit.clone(),
            mul: (0..n).map(|i| (0..n).map(|j| self.basis_product(i, j).to_vec()).collect()).collect(),
        }
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.derived.left_mul_elem(a).mul_vec(b)
    }

    pub fn is_commutative(&self) -> bool {
        self.derived.commutative
    }
    pub fn is_local(&self) -> bool {
        self.derived.local
    }
    pub fn is_gorenstein_local(&self) -> bool {
        self.derived.gorenstein_local
    }
    pub fn is_basic(&self) -> bool {
        self.derived.basic
    }

    /// Krull dimension of the base ring; always zero for finite-dimensional
    /// algebras, kept explicit so translation formulas can carry their
    /// `Ω^d` factor.
    pub fn krull_dim(&self) -> usize {
        0
    }

    /// Columns span the Jacobson radical.
    pub fn radical(&self) -> &Mat {
        &self.derived.radical
    }

    pub fn in_radical(&self, x: &[u32]) -> bool {
        match &self.derived.radical_coords {
            None => v::is_zero(x),
            Some(c) => c.contains(x),
        }
    }

    pub fn socle(&self) -> &Mat {
        &self.derived.socle
    }

    pub fn idempotents(&self) -> &[Vec<u32>] {
        &self.derived.idempotents
    }

    /// Matrix of left multiplication by `b_i`.
    pub fn left_mult(&self) -> &[Mat] {
        &self.derived.left
    }

    /// Matrix of right multiplication by `b_i`; this is the action of `b_i`
    /// on the regular right module.
    pub fn right_mult(&self) -> &[Mat] {
        &self.derived.right
    }

    /// Basis indices generating the algebra (together with the unit).
    pub fn generators(&self) -> &[usize] {
        &self.derived.generators
    }

    pub fn projectives(&self) -> &[Projective] {
        &self.derived.projectives
    }

    /// Indices of idempotents chosen as representatives of the
    /// isomorphism classes of indecomposable projectives.
    pub fn projective_reps(&self) -> Vec<usize> {
        (0..self.derived.idempotents.len()).filter(|&i| self.derived.class_rep[i] == i).collect()
    }

    pub fn classify(&self) -> Classification {
        Classification {
            commutative: self.derived.commutative,
            local: self.derived.local,
            gorenstein_local: self.derived.gorenstein_local,
            basic: self.derived.basic,
            radical_basis: self.derived.radical.col_vecs(),
            socle_basis: self.derived.socle.col_vecs(),
            primitive_idempotents: self.derived.idempotents.clone(),
        }
    }

    /// Linear combination `Σ c_i ρ_i` of matrices indexed by the basis.
    pub fn combine(&self, mats: &[Mat], c: &[u32]) -> Mat {
        let m = &mats[0];
        let mut acc = Mat::zeros(self.p, m.rows(), m.cols());
        for (x, &k) in mats.iter().zip(c) {
            acc.add_scaled(x, k);
        }
        acc
    }

    /// The opposite algebra. Commutative algebras are their own opposite.
    pub fn opposite(self: &Arc<Self>) -> Arc<Algebra> {
        if self.derived.commutative {
            return self.clone();
        }
        let mut guard = self.op.lock().expect("opposite cache poisoned");
        match &*guard {
            Some(Link::Strong(a)) => return a.clone(),
            Some(Link::Weak(w)) => {
                if let Some(a) = w.upgrade() {
                    return a;
                }
            }
            None => {}
        }
        let mut t = self.to_table();
        let n = t.dim();
        for i in 0..n {
            for j in 0..n {
                t.mul[i][j] = self.basis_product(j, i).to_vec();
            }
        }
        let tri = self.tri.as_ref().map(|ti| TriInfo {
            base: ti.base.clone(),
            side: ti.side.flip(),
            src_block: ti.tgt_block,
            tgt_block: ti.src_block,
        });
        // Primitive idempotents of A are primitive in A^op as well; reusing
        // them keeps projectives of A^op equal to the left ideals A·e.
        let op = Algebra::build(t, tri, Some(self.derived.idempotents.clone())).expect("opposite of a valid algebra is valid");
        *op.op.lock().expect("fresh mutex") = Some(Link::Weak(Arc::downgrade(self)));
        *guard = Some(Link::Strong(op.clone()));
        op
    }

    /// `Λ = T₂(R)`, the algebra whose right modules are the morphisms of
    /// `R`-modules.
    pub fn triangular(self: &Arc<Self>) -> Result<Arc<Algebra>> {
        if !self.derived.commutative {
            return precondition("triangular extension needs a commutative base");
        }
        let mut guard = self.triangular.lock().expect("triangular cache poisoned");
        if let Some(t) = guard.upgrade() {
            return Ok(t);
        }
        let n = self.dim();
        let p = self.p;
        let mut labels = Vec::with_capacity(3 * n);
        for (prefix, _) in [("e1", 0), ("e2", 1), ("a", 2)] {
            for l in &self.labels {
                labels.push(format!("{prefix}*{l}"));
            }
        }
        let zero = vec![0u32; 3 * n];
        let mut mul = vec![vec![zero.clone(); 3 * n]; 3 * n];
        let lift = |block: usize, r: &[u32]| {
            let mut out = vec![0u32; 3 * n];
            out[block * n..(block + 1) * n].copy_from_slice(r);
            out
        };
        for i in 0..n {
            for j in 0..n {
                let bij = self.basis_product(i, j);
                // e_s b · e_s c = e_s bc
                mul[i][j] = lift(0, bij);
                mul[n + i][n + j] = lift(1, bij);
                // e1 b · α c = α bc ; α b · e2 c = α bc
                mul[i][2 * n + j] = lift(2, bij);
                mul[2 * n + i][n + j] = lift(2, bij);
            }
        }
        let mut unit = lift(0, &self.unit);
        unit[n..2 * n].copy_from_slice(&self.unit);
        let t = AlgebraTable { p, labels, unit, mul };
        let tri = TriInfo { base: self.clone(), side: ObjSide::M, src_block: 0, tgt_block: 1 };
        let idem = vec![tri.element(0, &self.unit), tri.element(1, &self.unit)];
        let lam = Algebra::build(t, Some(tri), Some(idem))?;
        *guard = Arc::downgrade(&lam);
        Ok(lam)
    }
}

impl Derived {
    fn left_mul_elem(&self, a: &[u32]) -> Mat {
        let m = &self.left[0];
        let p = m.p();
        let mut acc = Mat::zeros(p, m.rows(), m.cols());
        for (x, &k) in self.left.iter().zip(a) {
            acc.add_scaled(x, k);
        }
        acc
    }
}

fn derive(t: &AlgebraTable, given_idempotents: Option<Vec<Vec<u32>>>) -> Result<Derived> {
    let n = t.dim();
    let p = t.p;
    // left[i] column j = b_i b_j ; right[i] column j = b_j b_i.
    let left: Vec<Mat> = (0..n)
        .map(|i| Mat::from_cols(p, n, &(0..n).map(|j| t.mul[i][j].clone()).collect::<Vec<_>>()))
        .collect();
    let right: Vec<Mat> = (0..n)
        .map(|i| Mat::from_cols(p, n, &(0..n).map(|j| t.mul[j][i].clone()).collect::<Vec<_>>()))
        .collect();
    let commutative = (0..n).all(|i| (0..n).all(|j| t.mul[i][j] == t.mul[j][i]));

    let ma = MatAlgebra::new(p, n, &left);
    let rad_elems: Vec<Vec<u32>> = ma.radical().iter().map(|m| m.mul_vec(&t.unit)).collect();
    let radical = Mat::from_cols(p, n, &rad_elems);
    let radical_coords = (!rad_elems.is_empty()).then(|| Coords::new(radical.clone()));

    // Right socle: x with x·r = 0 for every r in the radical.
    let socle = if rad_elems.is_empty() {
        Mat::identity(p, n)
    } else {
        let mut stacked = Mat::zeros(p, 0, n);
        for r in &rad_elems {
            let mut rm = Mat::zeros(p, n, n);
            for (k, &c) in r.iter().enumerate() {
                rm.add_scaled(&right[k], c);
            }
            stacked = stacked.vstack(&rm);
        }
        stacked.kernel_basis()
    };

    let left_elem = |a: &[u32]| {
        let mut acc = Mat::zeros(p, n, n);
        for (x, &k) in left.iter().zip(a) {
            acc.add_scaled(x, k);
        }
        acc
    };
    let prod = |a: &[u32], b: &[u32]| left_elem(a).mul_vec(b);

    let idempotents = match given_idempotents {
        Some(e) => e,
        None => primitive_idempotents(p, n, &t.unit, &left_elem)?,
    };
    debug_assert!(idempotents.iter().all(|e| prod(e, e) == *e));

    let in_rad = |x: &[u32]| match &radical_coords {
        None => v::is_zero(x),
        Some(c) => c.contains(x),
    };
    // e_i A ≅ e_j A iff some product of e_i A e_j and e_j A e_i leaves the
    // radical.
    let corner = |e: &[u32], f: &[u32]| -> Vec<Vec<u32>> {
        let mut ech = Echelon::new(p, n);
        let mut out = Vec::new();
        for i in 0..n {
            let x = prod(&prod(e, &v::unit(n, i)), f);
            if ech.try_add(&x) {
                out.push(x);
            }
        }
        out
    };
    let k = idempotents.len();
    let mut class_rep: Vec<usize> = (0..k).collect();
    for j in 0..k {
        for i in 0..j {
            if class_rep[i] != i {
                continue;
            }
            let a = corner(&idempotents[i], &idempotents[j]);
            let b = corner(&idempotents[j], &idempotents[i]);
            if a.iter().any(|x| b.iter().any(|y| !in_rad(&prod(x, y)))) {
                class_rep[j] = i;
                break;
            }
        }
    }
    let basic = (0..k).all(|i| class_rep[i] == i);
    let local = k == 1;
    let gorenstein_local = commutative && local && socle.cols() == 1;

    let generators = algebra_generators(p, n, &t.unit, &prod);

    let projectives = idempotents
        .iter()
        .map(|e| {
            let le = left_elem(e);
            let embed = le.column_space();
            let coords = Coords::new(embed.clone());
            let action: Vec<Mat> = right
                .iter()
                .map(|r| coords.coords_of_cols(&r.mul(&embed)).expect("eA is a right ideal"))
                .collect();
            let generator = coords.coords(e).expect("e lies in eA");
            Projective { idempotent: e.clone(), embed, coords, action: Arc::new(action), generator }
        })
        .collect();

    Ok(Derived {
        commutative,
        local,
        gorenstein_local,
        basic,
        radical,
        radical_coords,
        socle,
        idempotents,
        class_rep,
        left,
        right,
        generators,
        projectives,
    })
}

/// Complete set of primitive orthogonal idempotents, by repeatedly
/// splitting corner algebras `eAe` acting on `eA`.
fn primitive_idempotents(p: u32, n: usize, unit: &[u32], left_elem: &dyn Fn(&[u32]) -> Mat) -> Result<Vec<Vec<u32>>> {
    let mut stack = vec![unit.to_vec()];
    let mut out = Vec::new();
    while let Some(e) = stack.pop() {
        let le = left_elem(&e);
        let w = le.column_space();
        let wc = Coords::new(w.clone());
        let mut ech = Echelon::new(p, n);
        let mut mats = Vec::new();
        for i in 0..n {
            let x = le.mul(&left_elem(&v::unit(n, i))).mul_vec(&e);
            if ech.try_add(&x) {
                let lx = left_elem(&x);
                mats.push(wc.coords_of_cols(&lx.mul(&w)).expect("eAe preserves eA"));
            }
        }
        let corner = MatAlgebra::new(p, w.cols(), &mats);
        match corner.split(0)? {
            Splitting::Local => out.push(e),
            Splitting::Idempotent(eps) => {
                let e_coords = wc.coords(&e).expect("e lies in eA");
                let f = w.mul_vec(&eps.mul_vec(&e_coords));
                let rest = v::sub_v(&e, &f, p);
                stack.push(rest);
                stack.push(f);
            }
        }
    }
    out.reverse();
    Ok(out)
}

/// Greedy generating set: a basis element is added when it is not in the
/// subalgebra generated by the unit and the elements chosen so far.
fn algebra_generators(p: u32, n: usize, unit: &[u32], prod: &dyn Fn(&[u32], &[u32]) -> Vec<u32>) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let closure = |gens: &[usize]| {
        let mut ech = Echelon::new(p, n);
        let mut words = vec![unit.to_vec()];
        ech.try_add(unit);
        let mut i = 0;
        while i < words.len() {
            for &g in gens {
                let w = prod(&words[i], &v::unit(n, g));
                if ech.try_add(&w) {
                    words.push(w);
                }
            }
            i += 1;
        }
        ech
    };
    let mut span = closure(&gens);
    for i in 0..n {
        if span.rank() == n {
            break;
        }
        if !span.contains(&v::unit(n, i)) {
            gens.push(i);
            span = closure(&gens);
        }
    }
    gens
}

/// Concrete base rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `F_p[x]/(x^n)`
    TruncatedPoly { p: u32, n: usize },
    /// `F_p[x,y]/(x², xy, y²)`
    SquareZeroPlane { p: u32 },
    /// `F_p[x,y]/(x², y²)`
    ExteriorTwoVars { p: u32 },
}

impl Preset {
    pub fn table(&self) -> Result<AlgebraTable> {
        match *self {
            Preset::TruncatedPoly { p, n } => {
                linalg::check_prime(p)?;
                if n == 0 {
                    return Err(Error::Input("truncated_poly needs n >= 1".into()));
                }
                let labels = (0..n)
                    .map(|k| match k {
                        0 => "1".to_string(),
                        1 => "x".to_string(),
                        _ => format!("x^{k}"),
                    })
                    .collect();
                let mul = (0..n)
                    .map(|i| (0..n).map(|j| if i + j < n { v::unit(n, i + j) } else { v::zero(n) }).collect())
                    .collect();
                Ok(AlgebraTable { p, labels, unit: v::unit(n, 0), mul })
            }
            Preset::SquareZeroPlane { p } => {
                linalg::check_prime(p)?;
                let labels = vec!["1".into(), "x".into(), "y".into()];
                let mul = (0..3)
                    .map(|i| {
                        (0..3)
                            .map(|j| match (i, j) {
                                (0, j) => v::unit(3, j),
                                (i, 0) => v::unit(3, i),
                                _ => v::zero(3),
                            })
                            .collect()
                    })
                    .collect();
                Ok(AlgebraTable { p, labels, unit: v::unit(3, 0), mul })
            }
            Preset::ExteriorTwoVars { p } => {
                linalg::check_prime(p)?;
                // Basis 1, x, y, xy encoded by bitmasks 0, 1, 2, 3.
                let labels = vec!["1".into(), "x".into(), "y".into(), "xy".into()];
                let mul = (0..4usize)
                    .map(|i| (0..4usize).map(|j| if i & j == 0 { v::unit(4, i | j) } else { v::zero(4) }).collect())
                    .collect();
                Ok(AlgebraTable { p, labels, unit: v::unit(4, 0), mul })
            }
        }
    }

    pub fn build(&self) -> Result<Arc<Algebra>> {
        let t = self.table()?;
        Algebra::build(t, None, None)
    }

    /// Parses `truncated_poly,p=2,n=3` (the part after `preset:`).
    pub fn parse(s: &str) -> Result<Preset> {
        let mut parts = s.split(',');
        let kind = parts.next().unwrap_or("").trim();
        let mut p = None;
        let mut n = None;
        for kv in parts {
            let (k, val) = kv
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("bad preset parameter '{kv}'")))?;
            let val: u64 = val
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("preset parameter '{kv}' is not an integer")))?;
            match k.trim() {
                "p" => p = Some(val as u32),
                "n" => n = Some(val as usize),
                other => return Err(Error::Input(format!("unknown preset parameter '{other}'"))),
            }
        }
        let p = p.ok_or_else(|| Error::Input("preset needs p=".into()))?;
        Preset::from_parts(kind, p, n)
    }

    pub fn from_parts(kind: &str, p: u32, n: Option<usize>) -> Result<Preset> {
        match kind {
            "truncated_poly" => Ok(Preset::TruncatedPoly {
                p,
                n: n.ok_or_else(|| Error::Input("truncated_poly needs n".into()))?,
            }),
            "square_zero_plane" => Ok(Preset::SquareZeroPlane { p }),
            "exterior_two_vars" => Ok(Preset::ExteriorTwoVars { p }),
            other => Err(Error::Input(format!("unknown preset '{other}'"))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Preset::TruncatedPoly { p, n } => format!("truncated_poly,p={p},n={n}"),
            Preset::SquareZeroPlane { p } => format!("square_zero_plane,p={p}"),
            Preset::ExteriorTwoVars { p } => format!("exterior_two_vars,p={p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: u32, n: usize) -> Arc<Algebra> {
        Preset::TruncatedPoly { p, n }.build().unwrap()
    }

    /// I^k for the span of the given columns.
    fn ideal_power_is_zero(a: &Algebra, basis: &Mat, k: usize) -> bool {
        let n = a.dim();
        let mut cur: Vec<Vec<u32>> = basis.col_vecs();
        for _ in 1..k {
            let mut ech = Echelon::new(a.p(), n);
            let mut next = Vec::new();
            for x in &cur {
                for y in basis.col_vecs() {
                    let z = a.mul(x, &y);
                    if ech.try_add(&z) {
                        next.push(z);
                    }
                }
            }
            cur = next;
        }
        cur.iter().all(|x| v::is_zero(x))
    }

    #[test]
    fn validate_examples() {
        let t = Preset::TruncatedPoly { p: 2, n: 2 }.table().unwrap();
        assert!(t.validate().unwrap().is_empty());
        let mut bad = t.clone();
        bad.mul[1][0] = vec![1, 1];
        assert!(!bad.validate().unwrap().is_empty());
        let mut no_unit = t.clone();
        no_unit.unit = vec![0, 0];
        let fails = no_unit.validate().unwrap();
        assert!(fails.iter().any(|f| matches!(f, AxiomFailure::LeftUnit { .. })));
        let mut ragged = t;
        ragged.mul.pop();
        assert!(ragged.validate().is_err());
    }

    #[test]
    fn idempotent_square_is_a_split_algebra() {
        // Setting x·x = x in F_2[x]/(x²) yields F_2 × F_2: associative and
        // unital, but no longer local.
        let mut t = Preset::TruncatedPoly { p: 2, n: 2 }.table().unwrap();
        t.mul[1][1] = vec![0, 1];
        assert!(t.validate().unwrap().is_empty());
        let a = Algebra::from_table(t).unwrap();
        assert!(!a.is_local());
        assert_eq!(a.idempotents().len(), 2);
        assert_eq!(a.radical().cols(), 0);
    }

    #[test]
    fn classify_presets() {
        let r2 = r(2, 2);
        let c = r2.classify();
        assert!(c.local && c.gorenstein_local && c.commutative);
        assert_eq!(c.radical_basis, vec![vec![0, 1]]);
        assert_eq!(c.socle_basis, vec![vec![0, 1]]);

        let sq = Preset::SquareZeroPlane { p: 2 }.build().unwrap();
        assert!(sq.is_local() && !sq.is_gorenstein_local());
        assert_eq!(sq.socle().cols(), 2);

        let ext = Preset::ExteriorTwoVars { p: 3 }.build().unwrap();
        assert!(ext.is_gorenstein_local());
        assert_eq!(ext.radical().cols(), 3);
        assert!(ideal_power_is_zero(&ext, ext.radical(), 3));
        assert!(!ideal_power_is_zero(&ext, ext.radical(), 2));
    }

    #[test]
    fn triangular_extension() {
        let r2 = r(2, 2);
        let lam = r2.triangular().unwrap();
        assert_eq!(lam.dim(), 6);
        assert!(!lam.is_local() && !lam.is_commutative());
        assert_eq!(lam.idempotents().len(), 2);
        let ti = lam.tri().unwrap();
        let (e1, e2, a) = (ti.e_src(), ti.e_tgt(), ti.arrow());
        assert_eq!(lam.mul(&e1, &a), a);
        assert_eq!(lam.mul(&a, &e2), a);
        assert!(v::is_zero(&lam.mul(&a, &e1)));
        assert!(v::is_zero(&lam.mul(&e2, &a)));
        assert!(lam.to_table().validate().unwrap().is_empty());

        let f2 = r(2, 1);
        let t = f2.triangular().unwrap();
        assert_eq!(t.dim(), 3);
        assert_eq!(t.radical().cols(), 1);
        assert_eq!(r(2, 3).triangular().unwrap().dim(), 9);
        // The cache hands back the same algebra while it is alive.
        assert!(Arc::ptr_eq(&lam, &r2.triangular().unwrap()));
    }

    #[test]
    fn opposite_algebra() {
        let r2 = r(2, 2);
        assert!(Arc::ptr_eq(&r2, &r2.opposite()));
        let lam = r2.triangular().unwrap();
        let op = lam.opposite();
        let ti = op.tri().unwrap();
        let (src, tgt, a) = (ti.e_src(), ti.e_tgt(), ti.arrow());
        // In the opposite algebra e₂α = α = αe₁, written with its own
        // source/target idempotents.
        assert_eq!(op.mul(&src, &a), a);
        assert_eq!(op.mul(&a, &tgt), a);
        let opop = op.opposite();
        assert_eq!(*opop, *lam);
        assert_eq!(op.radical().cols(), lam.radical().cols());
        assert!(op.to_table().validate().unwrap().is_empty());
    }

    #[test]
    fn idempotents_of_custom_algebra() {
        // Strip the designated idempotents from T₂(F_3) and recover them
        // from scratch.
        let lam = r(3, 2).triangular().unwrap();
        let plain = Algebra::from_table(lam.to_table()).unwrap();
        let idem = plain.idempotents();
        assert_eq!(idem.len(), 2);
        let p = plain.p();
        let sum = idem.iter().fold(vec![0; plain.dim()], |s, e| v::add_v(&s, e, p));
        assert_eq!(sum, plain.unit());
        assert!(v::is_zero(&plain.mul(&idem[0], &idem[1])));
        assert!(plain.is_basic());
        for pr in plain.projectives() {
            assert_eq!(pr.dim() + 0, pr.embed.rank());
        }
    }

    #[test]
    fn matrix_algebra_is_not_basic() {
        // M_2(F_2) with basis E11, E12, E21, E22.
        let p = 2;
        let n = 4;
        let idx = |i: usize, j: usize| 2 * i + j;
        let mut mul = vec![vec![vec![0u32; n]; n]; n];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    mul[idx(i, j)][idx(j, k)] = v::unit(n, idx(i, k));
                }
            }
        }
        let t = AlgebraTable {
            p,
            labels: ["E11", "E12", "E21", "E22"].iter().map(|s| s.to_string()).collect(),
            unit: vec![1, 0, 0, 1],
            mul,
        };
        let m2 = Algebra::from_table(t).unwrap();
        assert_eq!(m2.radical().cols(), 0);
        assert_eq!(m2.idempotents().len(), 2);
        assert!(!m2.is_basic());
        assert_eq!(m2.projective_reps().len(), 1);
    }

    #[test]
    fn preset_parsing() {
        assert_eq!(Preset::parse("truncated_poly,p=2,n=3").unwrap(), Preset::TruncatedPoly { p: 2, n: 3 });
        assert_eq!(Preset::parse("square_zero_plane,p=5").unwrap(), Preset::SquareZeroPlane { p: 5 });
        assert!(Preset::parse("truncated_poly,p=4,n=2").unwrap().build().is_err());
        assert!(Preset::parse("nope,p=2").is_err());
    }
}
