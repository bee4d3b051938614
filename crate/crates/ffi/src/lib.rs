//! C ABI over `racah-core`.
//!
//! Engines and observables are opaque heap handles released with their
//! `*_free` function. Every fallible call returns a [`RacahStatus`]; on
//! failure [`racah_last_error_message`] describes the cause. Strings handed
//! out by the library are released with [`racah_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use racah_core::cli::{self, CliError, ModeSelection, ParamMode, RunConfig, Suite};
use racah_core::racah::emit_chain_graph;
use racah_core::{Algebra, AlgebraError, AlgebraMode, IndexSubset, Observable, RacahBasis};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RacahStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BadIndices = 3,
    ModeMismatch = 4,
    AlgebraFailure = 5,
    Io = 6,
    Panic = 7,
}

/// Arithmetic of an engine.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RacahMode {
    Classical = 0,
    Quantum = 1,
}

/// Modes covered by [`racah_verify`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RacahModeSelection {
    Classical = 0,
    Quantum = 1,
    Both = 2,
}

/// Suite run by [`racah_verify`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RacahSuite {
    Racah = 0,
    Substructures = 1,
    Casimirs = 2,
    Involution = 3,
    Limit = 4,
    All = 5,
}

/// Parameter handling for [`racah_verify`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RacahParams {
    Exact = 0,
    Random = 1,
}

/// Symbolic engine over `n` sites holding the two- and one-index Casimirs.
pub struct RacahEngine {
    basis: RacahBasis,
}

/// An exact observable produced by an engine.
pub struct RacahObservable {
    inner: Observable,
}

struct Failure {
    status: RacahStatus,
    message: String,
}

impl Failure {
    fn new(status: RacahStatus, message: impl Into<String>) -> Self {
        Self { status, message: message.into() }
    }

    fn null(what: &str) -> Self {
        Self::new(RacahStatus::NullPointer, format!("{what} is null"))
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        let status = match e {
            AlgebraError::BadIndices { .. } | AlgebraError::BadRange { .. } => RacahStatus::BadIndices,
            AlgebraError::ModeMismatch | AlgebraError::DimensionMismatch { .. } => RacahStatus::ModeMismatch,
            _ => RacahStatus::AlgebraFailure,
        };
        Self::new(status, e.to_string())
    }
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        let status = match e {
            CliError::Usage(_) => RacahStatus::InvalidArgument,
            CliError::Io { .. } => RacahStatus::Io,
            CliError::Algebra(inner) => return inner.into(),
            _ => RacahStatus::AlgebraFailure,
        };
        Self::new(status, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RacahStatus {
    let failure = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            return RacahStatus::Ok;
        }
        Ok(Err(failure)) => failure,
        Err(_) => Failure::new(RacahStatus::Panic, "internal panic"),
    };
    set_last_error(&failure.message);
    failure.status
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn emit_observable(out: *mut *mut RacahObservable, inner: Observable) -> Result<(), Failure> {
    write_out(out, Box::into_raw(Box::new(RacahObservable { inner })))
}

unsafe fn emit_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::new(RacahStatus::AlgebraFailure, "string contains NUL"))?;
    write_out(out, c.into_raw())
}

fn site(i: u32) -> usize {
    i as usize
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn racah_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn racah_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Create an engine over `n >= 1` sites with symbolic parameters.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn racah_engine_new(mode: RacahMode, n: u32, out: *mut *mut RacahEngine) -> RacahStatus {
    guard(|| {
        if n == 0 {
            return Err(Failure::new(RacahStatus::InvalidArgument, "n must be at least 1"));
        }
        let mode = match mode {
            RacahMode::Classical => AlgebraMode::Classical,
            RacahMode::Quantum => AlgebraMode::Quantum,
        };
        let basis = RacahBasis::new(&Algebra::new(mode, site(n)))?;
        write_out(out, Box::into_raw(Box::new(RacahEngine { basis })))
    })
}

/// Release an engine. Null is ignored.
///
/// # Safety
/// `engine` must come from [`racah_engine_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn racah_engine_free(engine: *mut RacahEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Number of sites, or 0 for null.
///
/// # Safety
/// `engine` must be null or a live engine.
#[no_mangle]
pub unsafe extern "C" fn racah_engine_sites(engine: *const RacahEngine) -> u32 {
    engine.as_ref().map_or(0, |e| e.basis.n() as u32)
}

unsafe fn with_engine(
    engine: *const RacahEngine,
    out: *mut *mut RacahObservable,
    f: impl FnOnce(&RacahBasis) -> Result<Observable, AlgebraError>,
) -> RacahStatus {
    guard(|| {
        let e = deref(engine, "engine")?;
        let value = f(&e.basis)?;
        emit_observable(out, value)
    })
}

/// Left Casimir on sites `1..=m`.
///
/// # Safety
/// `engine` must be a live engine and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn racah_left_casimir(engine: *const RacahEngine, m: u32, out: *mut *mut RacahObservable) -> RacahStatus {
    with_engine(engine, out, |b| b.algebra().left_casimir(site(m)))
}

/// Right Casimir on the last `m` sites.
///
/// # Safety
/// `engine` must be a live engine and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn racah_right_casimir(engine: *const RacahEngine, m: u32, out: *mut *mut RacahObservable) -> RacahStatus {
    with_engine(engine, out, |b| b.algebra().right_casimir(site(m)))
}

/// Two-index Casimir `C_ij`.
///
/// # Safety
/// `engine` must be a live engine and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn racah_two_index_c(engine: *const RacahEngine, i: u32, j: u32, out: *mut *mut RacahObservable) -> RacahStatus {
    with_engine(engine, out, |b| b.algebra().two_index_c(site(i), site(j)))
}

/// One-index Casimir `C_i`.
///
/// # Safety
/// `engine` must be a live engine and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn racah_one_index_c(engine: *const RacahEngine, i: u32, out: *mut *mut RacahObservable) -> RacahStatus {
    with_engine(engine, out, |b| b.c(site(i)).cloned())
}

/// `P_ij = C_ij - C_i - C_j`.
///
/// # Safety
/// `engine` must be a live engine and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn racah_p(engine: *const RacahEngine, i: u32, j: u32, out: *mut *mut RacahObservable) -> RacahStatus {
    with_engine(engine, out, |b| b.p(site(i), site(j)))
}

/// `F_ijk = ½ {P_ij, P_jk}`.
///
/// # Safety
/// `engine` must be a live engine and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn racah_f(engine: *const RacahEngine, i: u32, j: u32, k: u32, out: *mut *mut RacahObservable) -> RacahStatus {
    with_engine(engine, out, |b| b.f(site(i), site(j), site(k)))
}

/// Casimir of the site subset `indices[0..len]`.
///
/// # Safety
/// `engine` must be a live engine, `indices` valid for `len` reads and `out`
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn racah_subset_casimir(
    engine: *const RacahEngine,
    indices: *const u32,
    len: usize,
    out: *mut *mut RacahObservable,
) -> RacahStatus {
    if indices.is_null() && len > 0 {
        return guard(|| Err(Failure::null("indices")));
    }
    let raw: Vec<usize> = if len == 0 { Vec::new() } else { std::slice::from_raw_parts(indices, len).iter().map(|&i| site(i)).collect() };
    with_engine(engine, out, |b| b.subset_casimir(&IndexSubset::new(&raw, b.n())?))
}

/// Poisson bracket or `[a, b]/(i hb)`, following the engine mode.
///
/// # Safety
/// All handles must be live and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn racah_bracket(
    engine: *const RacahEngine,
    a: *const RacahObservable,
    b: *const RacahObservable,
    out: *mut *mut RacahObservable,
) -> RacahStatus {
    guard(|| {
        let e = deref(engine, "engine")?;
        let a = deref(a, "left operand")?;
        let b = deref(b, "right operand")?;
        let value = e.basis.algebra().bracket(&a.inner, &b.inner)?;
        emit_observable(out, value)
    })
}

/// Release an observable. Null is ignored.
///
/// # Safety
/// `obs` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn racah_observable_free(obs: *mut RacahObservable) {
    if !obs.is_null() {
        drop(Box::from_raw(obs));
    }
}

/// Number of stored terms, or 0 for null.
///
/// # Safety
/// `obs` must be null or a live observable.
#[no_mangle]
pub unsafe extern "C" fn racah_observable_term_count(obs: *const RacahObservable) -> usize {
    obs.as_ref().map_or(0, |o| o.inner.term_count())
}

/// Whether the observable is exactly zero; null counts as zero.
///
/// # Safety
/// `obs` must be null or a live observable.
#[no_mangle]
pub unsafe extern "C" fn racah_observable_is_zero(obs: *const RacahObservable) -> bool {
    obs.as_ref().is_none_or(|o| o.inner.is_zero())
}

/// Canonical text form, released with [`racah_string_free`].
///
/// # Safety
/// `obs` must be a live observable and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn racah_observable_render(obs: *const RacahObservable, out: *mut *mut c_char) -> RacahStatus {
    guard(|| {
        let o = deref(obs, "observable")?;
        emit_string(out, o.inner.to_string())
    })
}

/// Verification options for [`racah_verify`].
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct RacahVerifyOptions {
    pub n: u32,
    pub mode: RacahModeSelection,
    pub suite: RacahSuite,
    pub params: RacahParams,
    pub has_seed: bool,
    pub seed: u64,
    /// Worker threads; 0 means available parallelism.
    pub threads: u32,
}

/// Run a verification suite. On success `out_json` receives the report
/// (release with [`racah_string_free`]) and `out_exit_code` the command-line
/// exit code the report implies.
///
/// # Safety
/// `options` must be valid for reads; both outputs valid for writes.
#[no_mangle]
pub unsafe extern "C" fn racah_verify(
    options: *const RacahVerifyOptions,
    out_json: *mut *mut c_char,
    out_exit_code: *mut i32,
) -> RacahStatus {
    guard(|| {
        let o = deref(options, "options")?;
        if out_json.is_null() || out_exit_code.is_null() {
            return Err(Failure::null("output pointer"));
        }
        let mode = match o.mode {
            RacahModeSelection::Classical => ModeSelection::Classical,
            RacahModeSelection::Quantum => ModeSelection::Quantum,
            RacahModeSelection::Both => ModeSelection::Both,
        };
        let suite = match o.suite {
            RacahSuite::Racah => Suite::Racah,
            RacahSuite::Substructures => Suite::Substructures,
            RacahSuite::Casimirs => Suite::Casimirs,
            RacahSuite::Involution => Suite::Involution,
            RacahSuite::Limit => Suite::Limit,
            RacahSuite::All => Suite::All,
        };
        let params = match o.params {
            RacahParams::Exact => ParamMode::Exact,
            RacahParams::Random => ParamMode::Random,
        };
        let mut config = RunConfig::new(site(o.n), mode, suite, params);
        config.seed = o.has_seed.then_some(o.seed);
        config.threads = (o.threads > 0).then_some(site(o.threads));
        let outcome = cli::run(&config)?;
        emit_string(out_json, outcome.report.to_json())?;
        write_out(out_exit_code, outcome.exit_code)
    })
}

/// DOT description of the substructure chain for `n >= 3` sites.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn racah_chain_graph_dot(n: u32, out: *mut *mut c_char) -> RacahStatus {
    guard(|| emit_string(out, emit_chain_graph(site(n))?))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn racah_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version contains NUL"),
    };
    VERSION.as_ptr()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_errors_map_to_status_codes() {
        let bad = Failure::from(AlgebraError::BadIndices { indices: vec![1, 1], n: 3 });
        assert_eq!(bad.status, RacahStatus::BadIndices);
        assert_eq!(Failure::from(AlgebraError::ModeMismatch).status, RacahStatus::ModeMismatch);
        assert_eq!(Failure::from(CliError::Usage("n".into())).status, RacahStatus::InvalidArgument);
        assert_eq!(Failure::from(CliError::Algebra(AlgebraError::ModeMismatch)).status, RacahStatus::ModeMismatch);
    }

    #[test]
    fn panics_become_status_codes() {
        assert_eq!(guard(|| panic!("boom")), RacahStatus::Panic);
        assert_eq!(unsafe { CStr::from_ptr(racah_last_error_message()) }.to_str().unwrap(), "internal panic");
        assert_eq!(guard(|| Ok(())), RacahStatus::Ok);
        assert!(racah_last_error_message().is_null());
    }
}
