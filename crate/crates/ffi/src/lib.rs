//! C interface to the homcat engine.
//!
//! Rings, modules and objects of the morphism category are opaque handles
//! created from JSON text (the same formats the command line reads) and
//! released with the matching `_free` function. Every fallible call returns
//! a [`HomcatStatus`]; on failure, [`homcat_last_error`] describes the
//! problem for the calling thread. Strings returned through `char **`
//! belong to the caller and are released with [`homcat_string_free`].
//!
//! Panics never cross the boundary: they are reported as
//! `HOMCAT_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use homcat::algebra::Algebra;
use homcat::ar::{almost_split_sequence, ar_corpus, module_corpus_terms, tau_morphism, Category, CorpusOptions, Term};
use homcat::error::Error;
use homcat::io::{to_pretty, Loader};
use homcat::module::{decompose, is_isomorphic, is_linked_module, syzygy, tau_module, transpose, Module, TauDirection};
use homcat::morph::{classify_object, e_envelope, g_cover, red, transpose_m, MorphObject, RedContext};

/// Outcome of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomcatStatus {
    Ok = 0,
    /// Malformed input: bad JSON, wrong shapes, failed axioms.
    Input = 2,
    /// The operation is not defined for this input.
    Precondition = 3,
    /// The engine does not answer this question over the given ring.
    Unsupported = 4,
    Internal = 5,
    NullArgument = 6,
    Panic = 7,
}

/// Which trivial summands `homcat_object_red` deletes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomcatRedContext {
    /// `(R → R)` and `(0 → R)`
    M = 0,
    /// `(R → R)` and `(R → 0)`
    E = 1,
}

/// Category of a translate or sequence.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomcatCategory {
    R = 0,
    H = 1,
    G = 2,
    E = 3,
}

/// A finite-dimensional algebra over a prime field.
pub struct HomcatRing {
    ring: Arc<Algebra>,
}

/// A module over a ring.
pub struct HomcatModule {
    module: Module,
}

/// A homomorphism `f: A → B`, seen as an object of the morphism category.
pub struct HomcatObject {
    object: MorphObject,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct HomcatRingInfo {
    pub dim: usize,
    pub p: u32,
    pub commutative: bool,
    pub local: bool,
    pub gorenstein_local: bool,
    pub basic: bool,
    pub radical_dim: usize,
    pub socle_dim: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct HomcatLinkage {
    pub linked: bool,
    pub stable: bool,
    pub ext_vanishes: bool,
    pub lambda_square_iso: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct HomcatObjectInfo {
    pub dim_a: usize,
    pub dim_b: usize,
    pub mono: bool,
    pub epi: bool,
    /// Meaningful only when `g_decided` is set.
    pub in_g: bool,
    pub g_decided: bool,
    pub projective: bool,
    pub injective_in_h: bool,
    pub indecomposable: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> HomcatStatus {
    match e {
        Error::Input(_) => HomcatStatus::Input,
        Error::Precondition(_) => HomcatStatus::Precondition,
        Error::Unsupported(_) => HomcatStatus::Unsupported,
        Error::Internal(_) => HomcatStatus::Internal,
    }
}

/// Runs `f`, turning errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (HomcatStatus, String)>) -> HomcatStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HomcatStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(&format!("panic: {msg}"));
            HomcatStatus::Panic
        }
    }
}

type Step<T> = Result<T, (HomcatStatus, String)>;

fn engine<T>(r: homcat::error::Result<T>) -> Step<T> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (HomcatStatus, String) {
    (HomcatStatus::NullArgument, format!("{what} is null"))
}

/// # Safety
/// `p` is null or points to a valid `T`.
unsafe fn deref<'a, T>(p: *const T, what: &str) -> Step<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

/// # Safety
/// `s` is null or a NUL-terminated string.
unsafe fn text<'a>(s: *const c_char, what: &str) -> Step<&'a str> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (HomcatStatus::Input, format!("{what} is not UTF-8")))
}

/// # Safety
/// `out` is null or writable.
unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Step<()> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior NULs removed").into_raw()
}

/// The message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn homcat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn homcat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a ring: a JSON table, `{"preset": ...}`, or the string
/// `preset:name,p=..,n=..` given without JSON quoting.
///
/// # Safety
/// `json` is a NUL-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_ring_new(json: *const c_char, out: *mut *mut HomcatRing) -> HomcatStatus {
    guard(|| {
        let t = text(json, "json")?;
        let mut loader = Loader::new();
        let ring = if t.trim_start().starts_with("preset:") {
            engine(loader.ring_arg(t.trim()))?
        } else {
            engine(loader.ring_str(t))?
        };
        put(out, boxed(HomcatRing { ring }), "out")
    })
}

/// # Safety
/// `ring` is null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn homcat_ring_free(ring: *mut HomcatRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// # Safety
/// `ring` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_ring_classify(ring: *const HomcatRing, out: *mut HomcatRingInfo) -> HomcatStatus {
    guard(|| {
        let a = &deref(ring, "ring")?.ring;
        let c = a.classify();
        let info = HomcatRingInfo {
            dim: a.dim(),
            p: a.p(),
            commutative: c.commutative,
            local: c.local,
            gorenstein_local: c.gorenstein_local,
            basic: c.basic,
            radical_dim: c.radical_basis.len(),
            socle_dim: c.socle_basis.len(),
        };
        put(out, info, "out")
    })
}

/// The triangular matrix ring `T₂(R)`.
///
/// # Safety
/// `ring` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_ring_triangular(ring: *const HomcatRing, out: *mut *mut HomcatRing) -> HomcatStatus {
    guard(|| {
        let a = &deref(ring, "ring")?.ring;
        let t = engine(a.triangular())?;
        put(out, boxed(HomcatRing { ring: t }), "out")
    })
}

/// The ring as a JSON table.
///
/// # Safety
/// `ring` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_ring_to_json(ring: *const HomcatRing, out: *mut *mut c_char) -> HomcatStatus {
    guard(|| {
        let a = &deref(ring, "ring")?.ring;
        put(out, c_string(to_pretty(&homcat::io::table_value(&a.to_table()))), "out")
    })
}

/// Parses a module file's JSON. Ring paths resolve against the working
/// directory.
///
/// # Safety
/// `json` is a NUL-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_module_new(json: *const c_char, out: *mut *mut HomcatModule) -> HomcatStatus {
    guard(|| {
        let m = engine(Loader::new().module_str(text(json, "json")?))?;
        put(out, boxed(HomcatModule { module: m }), "out")
    })
}

/// # Safety
/// `m` is null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn homcat_module_free(m: *mut HomcatModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension over the ground field, or 0 for a null handle.
///
/// # Safety
/// `m` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn homcat_module_dim(m: *const HomcatModule) -> usize {
    m.as_ref().map_or(0, |m| m.module.dim())
}

/// # Safety
/// `m` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_module_to_json(m: *const HomcatModule, out: *mut *mut c_char) -> HomcatStatus {
    guard(|| {
        let m = &deref(m, "module")?.module;
        put(out, c_string(to_pretty(&Loader::new().module_value(m, true))), "out")
    })
}

/// Number of indecomposable summands, counted with multiplicity.
///
/// # Safety
/// `m` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_module_summand_count(m: *const HomcatModule, out: *mut usize) -> HomcatStatus {
    guard(|| {
        let m = &deref(m, "module")?.module;
        put(out, engine(decompose(m))?.len(), "out")
    })
}

/// # Safety
/// `m` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_module_syzygy(m: *const HomcatModule, i: usize, out: *mut *mut HomcatModule) -> HomcatStatus {
    guard(|| {
        let m = &deref(m, "module")?.module;
        put(out, boxed(HomcatModule { module: syzygy(m, i) }), "out")
    })
}

/// The Auslander transpose, a module over the opposite ring.
///
/// # Safety
/// `m` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_module_transpose(m: *const HomcatModule, out: *mut *mut HomcatModule) -> HomcatStatus {
    guard(|| {
        let m = &deref(m, "module")?.module;
        put(out, boxed(HomcatModule { module: transpose(m) }), "out")
    })
}

/// The translate `(Tr M)′`, or its inverse.
///
/// # Safety
/// `m` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_module_tau(m: *const HomcatModule, inverse: bool, out: *mut *mut HomcatModule) -> HomcatStatus {
    guard(|| {
        let m = &deref(m, "module")?.module;
        let dir = if inverse { TauDirection::Inverse } else { TauDirection::Forward };
        let t = engine(tau_module(m, dir))?.with_side(m.side());
        put(out, boxed(HomcatModule { module: t }), "out")
    })
}

/// # Safety
/// `a` and `b` are live handles and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_module_is_isomorphic(
    a: *const HomcatModule,
    b: *const HomcatModule,
    out: *mut bool,
) -> HomcatStatus {
    guard(|| {
        let (a, b) = (&deref(a, "a")?.module, &deref(b, "b")?.module);
        let iso = a.same_category(b) && engine(is_isomorphic(a, &b.with_side(a.side())))?;
        put(out, iso, "out")
    })
}

/// # Safety
/// `m` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_module_linkage(m: *const HomcatModule, out: *mut HomcatLinkage) -> HomcatStatus {
    guard(|| {
        let l = engine(is_linked_module(&deref(m, "module")?.module))?;
        let info = HomcatLinkage {
            linked: l.linked,
            stable: l.stable,
            ext_vanishes: l.ext_vanishes,
            lambda_square_iso: l.lambda_square_iso,
        };
        put(out, info, "out")
    })
}

/// Parses an object file's JSON (`{"ring", "A", "B", "f"}`).
///
/// # Safety
/// `json` is a NUL-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_object_new(json: *const c_char, out: *mut *mut HomcatObject) -> HomcatStatus {
    guard(|| {
        let x = engine(Loader::new().morph_str(text(json, "json")?))?;
        put(out, boxed(HomcatObject { object: x }), "out")
    })
}

/// # Safety
/// `x` is null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn homcat_object_free(x: *mut HomcatObject) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// # Safety
/// `x` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_object_to_json(x: *const HomcatObject, out: *mut *mut c_char) -> HomcatStatus {
    guard(|| {
        let x = &deref(x, "object")?.object;
        put(out, c_string(to_pretty(&Loader::new().morph_value(x, true))), "out")
    })
}

/// # Safety
/// `x` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_object_classify(x: *const HomcatObject, out: *mut HomcatObjectInfo) -> HomcatStatus {
    guard(|| {
        let x = &deref(x, "object")?.object;
        let c = engine(classify_object(x))?;
        let info = HomcatObjectInfo {
            dim_a: x.a().dim(),
            dim_b: x.b().dim(),
            mono: c.in_s,
            epi: c.in_e,
            in_g: c.in_g.unwrap_or(false),
            g_decided: c.in_g.is_some(),
            projective: c.projective_in_m,
            injective_in_h: c.injective_in_h,
            indecomposable: engine(x.is_indecomposable())?,
        };
        put(out, info, "out")
    })
}

/// # Safety
/// `a` and `b` are live handles and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_object_is_isomorphic(
    a: *const HomcatObject,
    b: *const HomcatObject,
    out: *mut bool,
) -> HomcatStatus {
    guard(|| {
        let (a, b) = (&deref(a, "a")?.object, &deref(b, "b")?.object);
        put(out, engine(a.is_isomorphic(b))?, "out")
    })
}

/// The transpose of a monomorphism. `certified` receives whether the
/// normalized shape and the exactness certificate both hold.
///
/// # Safety
/// `x` is a live handle; `out` and `certified` are writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_object_transpose(
    x: *const HomcatObject,
    out: *mut *mut HomcatObject,
    certified: *mut bool,
) -> HomcatStatus {
    guard(|| {
        let t = engine(transpose_m(&deref(x, "object")?.object))?;
        put(certified, t.all_ok(), "certified")?;
        put(out, boxed(HomcatObject { object: t.tr }), "out")
    })
}

/// Deletes trivial summands.
///
/// # Safety
/// `x` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_object_red(
    x: *const HomcatObject,
    ctx: HomcatRedContext,
    out: *mut *mut HomcatObject,
) -> HomcatStatus {
    guard(|| {
        let c = match ctx {
            HomcatRedContext::M => RedContext::MOrG,
            HomcatRedContext::E => RedContext::E,
        };
        let r = engine(red(&deref(x, "object")?.object, c))?;
        put(out, boxed(HomcatObject { object: r }), "out")
    })
}

/// The minimal right approximation by monomorphisms.
///
/// # Safety
/// `x` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_object_g_cover(x: *const HomcatObject, out: *mut *mut HomcatObject) -> HomcatStatus {
    guard(|| {
        let ap = engine(g_cover(&deref(x, "object")?.object))?;
        put(out, boxed(HomcatObject { object: ap.object }), "out")
    })
}

/// The minimal left approximation by epimorphisms.
///
/// # Safety
/// `x` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_object_e_envelope(x: *const HomcatObject, out: *mut *mut HomcatObject) -> HomcatStatus {
    guard(|| {
        let ap = engine(e_envelope(&deref(x, "object")?.object))?;
        put(out, boxed(HomcatObject { object: ap.object }), "out")
    })
}

fn category(c: HomcatCategory) -> Category {
    match c {
        HomcatCategory::R => Category::R,
        HomcatCategory::H => Category::H,
        HomcatCategory::G => Category::G,
        HomcatCategory::E => Category::E,
    }
}

/// The translate of an object in `H`, `G` or `E`.
///
/// # Safety
/// `x` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_object_tau(
    x: *const HomcatObject,
    cat: HomcatCategory,
    inverse: bool,
    out: *mut *mut HomcatObject,
) -> HomcatStatus {
    guard(|| {
        let dir = if inverse { TauDirection::Inverse } else { TauDirection::Forward };
        let t = engine(tau_morphism(&deref(x, "object")?.object, category(cat), dir))?;
        put(out, boxed(HomcatObject { object: t.object }), "out")
    })
}

/// The almost split sequence in `cat` ending at a module (`cat = R`) or an
/// object, verified against a generated corpus, as sequence JSON.
/// Exactly one of `end_module` and `end_object` must be non-null.
/// `all_ok` receives the verdict of the verification.
///
/// # Safety
/// The handles are null or live; `out` and `all_ok` are writable.
#[no_mangle]
pub unsafe extern "C" fn homcat_almost_split_sequence(
    end_module: *const HomcatModule,
    end_object: *const HomcatObject,
    cat: HomcatCategory,
    seed: u64,
    out: *mut *mut c_char,
    all_ok: *mut bool,
) -> HomcatStatus {
    guard(|| {
        let end = match (end_module.as_ref(), end_object.as_ref()) {
            (Some(m), None) => Term::Module(m.module.clone()),
            (None, Some(x)) => Term::Morph(x.object.clone()),
            _ => return Err((HomcatStatus::Input, "give exactly one end term".into())),
        };
        let base = homcat::io::base_ring(&end);
        let opts = CorpusOptions { seed, ..CorpusOptions::default() };
        let corpus = engine(match end {
            Term::Module(_) => module_corpus_terms(&base, &opts),
            Term::Morph(_) => ar_corpus(&base, &opts),
        })?;
        let seq = engine(almost_split_sequence(&end, category(cat), Some(&corpus)))?;
        let ok = seq.report.as_ref().is_some_and(|r| r.all_ok());
        put(all_ok, ok, "all_ok")?;
        put(out, c_string(to_pretty(&Loader::new().sequence_value(&seq))), "out")
    })
}
