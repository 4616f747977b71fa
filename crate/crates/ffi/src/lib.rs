//! C ABI over the eigenring engine.
//!
//! Every function returns an [`EigStatus`]; on anything but `EIG_STATUS_OK` the
//! message is available from [`eig_last_error`] on the same thread. Handles
//! and strings returned through out-pointers are owned by the caller and
//! released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use eigenring::algebra::Algebra;
use eigenring::cli::{build_corpus, default_corpus, run_suite, AlgebraSpec, InstanceSpec, RunOptions, Suite};
use eigenring::matring::enumerate_maxl_matrix_ring;
use eigenring::module::{ModuleSpec, RightModule};
use eigenring::{Budget, Error, DEFAULT_TRIALS};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigStatus {
    Ok = 0,
    InvalidInput = 1,
    OverBudget = 2,
    NotApplicable = 3,
    Contract = 4,
    Internal = 5,
}

/// An algebra over a prime field.
pub struct EigAlgebra {
    inner: Arc<Algebra>,
}

/// A right module over an [`EigAlgebra`].
pub struct EigModule {
    inner: RightModule,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> EigStatus {
    match e {
        Error::OverBudget { .. } => EigStatus::OverBudget,
        Error::NotApplicable(_) | Error::NoTranspose => EigStatus::NotApplicable,
        Error::Contract(_) => EigStatus::Contract,
        Error::Io(_) => EigStatus::Internal,
        _ => EigStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (EigStatus, String)>) -> EigStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EigStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            EigStatus::Internal
        }
    }
}

fn lift<T>(r: eigenring::Result<T>) -> Result<T, (EigStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (EigStatus, String) {
    (EigStatus::InvalidInput, format!("{what} is null"))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, (EigStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (EigStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn out<T>(p: *mut T, v: T, what: &str) -> Result<(), (EigStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    p.write(v);
    Ok(())
}

fn budget(enumeration: u64) -> Result<Budget, (EigStatus, String)> {
    if enumeration == 0 {
        return Err((EigStatus::InvalidInput, "budget must be positive".into()));
    }
    Ok(Budget::with_enumeration(enumeration))
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn eig_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Algebra from its structure-constant JSON `{"p", "dim", "table", "unit"}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eig_algebra_from_json(json: *const c_char, out_alg: *mut *mut EigAlgebra) -> EigStatus {
    guard(|| {
        let a = lift(Algebra::from_json(text(json, "json")?))?;
        out(out_alg, Box::into_raw(Box::new(EigAlgebra { inner: Arc::new(a) })), "out")
    })
}

/// Algebra from a kind-tagged spec such as `{"kind":"matrix","n":2}`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eig_algebra_from_spec(
    p: u32,
    spec: *const c_char,
    out_alg: *mut *mut EigAlgebra,
) -> EigStatus {
    guard(|| {
        let s: AlgebraSpec = lift(serde_json::from_str(text(spec, "spec")?).map_err(Error::from))?;
        let a = lift(s.build(p))?;
        out(out_alg, Box::into_raw(Box::new(EigAlgebra { inner: Arc::new(a) })), "out")
    })
}

/// # Safety
/// `alg` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn eig_algebra_free(alg: *mut EigAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// `alg` must be a live handle and the out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn eig_algebra_dims(alg: *const EigAlgebra, p: *mut u32, dim: *mut usize) -> EigStatus {
    guard(|| {
        let a = alg.as_ref().ok_or_else(|| null("algebra"))?;
        out(p, a.inner.p(), "p")?;
        out(dim, a.inner.dim(), "dim")
    })
}

/// Number of maximal right ideals.
///
/// # Safety
/// `alg` must be a live handle and `count` valid.
#[no_mangle]
pub unsafe extern "C" fn eig_algebra_maximal_right_ideals(
    alg: *const EigAlgebra,
    enumeration: u64,
    count: *mut usize,
) -> EigStatus {
    guard(|| {
        let a = alg.as_ref().ok_or_else(|| null("algebra"))?;
        let n = lift(a.inner.maximal_right_ideals(&budget(enumeration)?))?.len();
        out(count, n, "count")
    })
}

/// Module from its JSON spec (`regular`, `idempotent`, `direct_sum`, `action`).
///
/// # Safety
/// `alg` must be a live handle, `json` NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn eig_module_from_json(
    alg: *const EigAlgebra,
    json: *const c_char,
    out_mod: *mut *mut EigModule,
) -> EigStatus {
    guard(|| {
        let a = alg.as_ref().ok_or_else(|| null("algebra"))?;
        let spec: ModuleSpec = lift(serde_json::from_str(text(json, "json")?).map_err(Error::from))?;
        let m = lift(spec.build(&a.inner))?;
        out(out_mod, Box::into_raw(Box::new(EigModule { inner: m })), "out")
    })
}

/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn eig_module_free(m: *mut EigModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle and `dim` valid.
#[no_mangle]
pub unsafe extern "C" fn eig_module_dim(m: *const EigModule, dim: *mut usize) -> EigStatus {
    guard(|| {
        let m = m.as_ref().ok_or_else(|| null("module"))?;
        out(dim, m.inner.dim(), "dim")
    })
}

/// `|Max(M)|`.
///
/// # Safety
/// `m` must be a live handle and `count` valid.
#[no_mangle]
pub unsafe extern "C" fn eig_module_max_count(m: *const EigModule, enumeration: u64, count: *mut usize) -> EigStatus {
    guard(|| {
        let m = m.as_ref().ok_or_else(|| null("module"))?;
        let n = lift(m.inner.maximal_submodules(&budget(enumeration)?))?.len();
        out(count, n, "count")
    })
}

/// Composition length.
///
/// # Safety
/// `m` must be a live handle and `length` valid.
#[no_mangle]
pub unsafe extern "C" fn eig_module_length(m: *const EigModule, enumeration: u64, length: *mut usize) -> EigStatus {
    guard(|| {
        let m = m.as_ref().ok_or_else(|| null("module"))?;
        let l = lift(m.inner.length(&budget(enumeration)?))?;
        out(length, l, "length")
    })
}

/// Projectivity and generator flags.
///
/// # Safety
/// `m` must be a live handle and the out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn eig_module_projectivity(
    m: *const EigModule,
    projective: *mut bool,
    generator: *mut bool,
) -> EigStatus {
    guard(|| {
        let m = m.as_ref().ok_or_else(|| null("module"))?;
        let p = lift(m.inner.is_projective())?.projective;
        let g = lift(m.inner.is_generator())?;
        out(projective, p, "projective")?;
        out(generator, g, "generator")
    })
}

/// `|Maxl(M_n(F_p))|` through Stone's ideals. `crosschecked` is 1 or 0 for
/// agreement with brute force, or -1 when brute force was over budget.
///
/// # Safety
/// The out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn eig_stone_count(
    p: u32,
    n: usize,
    enumeration: u64,
    count: *mut usize,
    crosschecked: *mut i32,
) -> EigStatus {
    guard(|| {
        let e = lift(enumerate_maxl_matrix_ring(p, n, &budget(enumeration)?))?;
        out(count, e.count(), "count")?;
        out(crosschecked, e.crosschecked.map_or(-1, i32::from), "crosschecked")
    })
}

/// Runs a suite and writes the JSON report to `report`. `corpus` is null for
/// the default corpus, or a JSON instance or array of instances. `failures`
/// receives the number of failed checks.
///
/// # Safety
/// `suite` must be NUL-terminated, `corpus` null or NUL-terminated, and the
/// out-pointers valid. Free `*report` with [`eig_string_free`].
#[no_mangle]
pub unsafe extern "C" fn eig_verify_json(
    suite: *const c_char,
    corpus: *const c_char,
    enumeration: u64,
    seed: u64,
    report: *mut *mut c_char,
    failures: *mut usize,
) -> EigStatus {
    guard(|| {
        let suite: Suite = lift(text(suite, "suite")?.parse())?;
        let specs = if corpus.is_null() {
            default_corpus()
        } else {
            lift(InstanceSpec::list_from_json(text(corpus, "corpus")?))?
        };
        let instances = lift(build_corpus(&specs))?;
        let opts = RunOptions {
            budget: Budget {
                enumeration: budget(enumeration)?.enumeration,
                trials: DEFAULT_TRIALS,
                seed,
            },
            timing: false,
        };
        let r = run_suite(suite, &instances, &opts);
        let json = lift(r.to_json())?;
        let c = CString::new(json).map_err(|_| (EigStatus::Internal, "NUL in report".into()))?;
        out(failures, r.summary.fail, "failures")?;
        out(report, c.into_raw(), "report")
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn eig_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
