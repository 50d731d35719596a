//! C ABI over the natfull analyzers.
//!
//! Instances are opaque handles created from JSON text or a file and released
//! with [`natfull_instance_free`]. Every fallible call returns a
//! [`NatfullStatus`]; on failure [`natfull_last_error`] describes the cause.
//! Reports are returned as JSON strings owned by the caller and released with
//! [`natfull_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use natfull::bimodfunc::analyze_bimodule;
use natfull::cli::fixtures::emit;
use natfull::cli::instance::select;
use natfull::cli::render;
use natfull::cli::Instance;
use natfull::corings::analyze_coring;
use natfull::cormor::analyze_coring_morphism;
use natfull::error::Error;
use natfull::oracle::suite::{equivalence_suite, SuiteConfig};
use natfull::report::Options;
use natfull::scalars::analyze_scalars;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NatfullStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    UnknownId = 5,
    InvalidModulus = 6,
    Io = 7,
    /// Hypotheses of an analyzer fail on the input.
    Unsupported = 8,
    /// Criteria disagree or a witness failed re-verification.
    Inconsistent = 9,
    Internal = 10,
}

impl From<&Error> for NatfullStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) | Error::Json(_) => Self::Parse,
            Error::Validation(_) | Error::DimensionMismatch(_) => Self::Validation,
            Error::UnknownId(_) => Self::UnknownId,
            Error::InvalidModulus(_) => Self::InvalidModulus,
            Error::Io(_) => Self::Io,
            Error::NotProjective(_) | Error::EqualizerNotPreserved(_) | Error::SearchSpaceTooLarge(_) | Error::CriterionNotMet(_) => {
                Self::Unsupported
            }
            Error::InconsistentCriteria(_) | Error::WitnessViolation(_) => Self::Inconsistent,
            Error::Inconsistent(_) | Error::NotInvariant(_) => Self::Internal,
        }
    }
}

/// A resolved and validated instance file.
pub struct NatfullInstance(Instance);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: NatfullStatus, msg: impl Into<String>) -> NatfullStatus {
    set_last_error(msg.into());
    status
}

/// Runs `f`, records any error or panic, and maps it to a status.
fn guard(f: impl FnOnce() -> Result<(), NatfullStatus>) -> NatfullStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NatfullStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(NatfullStatus::Internal, "panic inside natfull"),
    }
}

fn lib_err(e: Error) -> NatfullStatus {
    let status = NatfullStatus::from(&e);
    fail(status, e.to_string())
}

/// Borrows a required C string.
///
/// # Safety
/// `s` is null or a valid nul-terminated string.
unsafe fn required<'a>(s: *const c_char, what: &str) -> Result<&'a str, NatfullStatus> {
    if s.is_null() {
        return Err(fail(NatfullStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(NatfullStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// Borrows an optional C string; null means absent.
///
/// # Safety
/// `s` is null or a valid nul-terminated string.
unsafe fn optional<'a>(s: *const c_char, what: &str) -> Result<Option<&'a str>, NatfullStatus> {
    if s.is_null() {
        Ok(None)
    } else {
        required(s, what).map(Some)
    }
}

/// # Safety
/// `inst` is null or a handle from this library that has not been freed.
unsafe fn instance<'a>(inst: *const NatfullInstance) -> Result<&'a Instance, NatfullStatus> {
    inst.as_ref().map(|i| &i.0).ok_or_else(|| fail(NatfullStatus::NullPointer, "instance is null"))
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), NatfullStatus> {
    if out.is_null() {
        return Err(fail(NatfullStatus::NullPointer, "output pointer is null"));
    }
    let c = CString::new(s).map_err(|_| fail(NatfullStatus::Internal, "report contains a nul byte"))?;
    *out = c.into_raw();
    Ok(())
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn write_instance(out: *mut *mut NatfullInstance, inst: Instance) -> Result<(), NatfullStatus> {
    if out.is_null() {
        return Err(fail(NatfullStatus::NullPointer, "output pointer is null"));
    }
    *out = Box::into_raw(Box::new(NatfullInstance(inst)));
    Ok(())
}

fn options(seed: u64) -> Options {
    Options { seed, ..Options::default() }
}

/// Library version, a static nul-terminated string.
#[no_mangle]
pub extern "C" fn natfull_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn natfull_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn natfull_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates an instance from JSON text.
///
/// # Safety
/// `json` is a nul-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn natfull_instance_parse(json: *const c_char, out: *mut *mut NatfullInstance) -> NatfullStatus {
    guard(|| {
        let text = required(json, "json")?;
        write_instance(out, Instance::parse(text).map_err(lib_err)?)
    })
}

/// Loads and validates an instance file.
///
/// # Safety
/// `path` is a nul-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn natfull_instance_load(path: *const c_char, out: *mut *mut NatfullInstance) -> NatfullStatus {
    guard(|| {
        let path = required(path, "path")?;
        write_instance(out, natfull::cli::load(Path::new(path)).map_err(lib_err)?)
    })
}

/// Releases an instance. Null is ignored.
///
/// # Safety
/// `inst` is null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn natfull_instance_free(inst: *mut NatfullInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// The prime of an instance, or 0 for a null handle.
///
/// # Safety
/// `inst` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn natfull_instance_prime(inst: *const NatfullInstance) -> u32 {
    inst.as_ref().map_or(0, |i| i.0.p())
}

/// Which analyzer to run on an instance.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NatfullAnalyzer {
    /// Restriction and extension of scalars along a morphism.
    Scalars = 0,
    /// Coinduction and induction along a bimodule.
    Bimodule = 1,
    /// Forgetful and cotensor functors of a coring.
    Coring = 2,
    /// Induction and cotensor functors of a coring morphism.
    CoringMorphism = 3,
}

fn analyze(inst: &Instance, analyzer: NatfullAnalyzer, id: Option<&str>, opts: &Options) -> natfull::error::Result<String> {
    let p = inst.p();
    match analyzer {
        NatfullAnalyzer::Scalars => {
            let (id, phi) = select(&inst.morphisms, id, "morphism")?;
            render::json("scalars", id, p, &analyze_scalars(phi, opts)?)
        }
        NatfullAnalyzer::Bimodule => {
            let (id, m) = select(&inst.bimodules, id, "bimodule")?;
            render::json("bimodule", id, p, &analyze_bimodule(m, opts)?)
        }
        NatfullAnalyzer::Coring => {
            let (id, c) = select(&inst.corings, id, "coring")?;
            render::json("coring", id, p, &analyze_coring(c, opts)?)
        }
        NatfullAnalyzer::CoringMorphism => {
            let (id, m) = select(&inst.coring_morphisms, id, "coring morphism")?;
            render::json("coring_morphism", id, p, &analyze_coring_morphism(m, opts)?)
        }
    }
}

/// Runs an analyzer on the object `id` of the relevant section and writes
/// the JSON report to `out`. `id` may be null when the section has exactly
/// one object.
///
/// # Safety
/// `inst` is a live handle; `id` is null or a nul-terminated string; `out`
/// is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn natfull_analyze(
    inst: *const NatfullInstance,
    analyzer: NatfullAnalyzer,
    id: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
) -> NatfullStatus {
    guard(|| {
        let inst = instance(inst)?;
        let id = optional(id, "id")?;
        let report = analyze(inst, analyzer, id, &options(seed)).map_err(lib_err)?;
        write_string(out, report)
    })
}

/// Emits a catalog fixture as instance-file JSON. `p == 0` selects the
/// default prime; `base` is null except for fixtures built on another.
///
/// # Safety
/// `id` is a nul-terminated string; `base` is null or one; `out` is valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn natfull_fixture_emit(id: *const c_char, p: u32, base: *const c_char, out: *mut *mut c_char) -> NatfullStatus {
    guard(|| {
        let id = required(id, "id")?;
        let base = optional(base, "base")?;
        let file = emit(id, (p != 0).then_some(p), base).map_err(lib_err)?;
        write_string(out, file.to_json().map_err(lib_err)?)
    })
}

/// Runs the seeded equivalence suite over all kinds and writes its JSON
/// report. `p == 0` alternates between 2 and 3. Returns `Inconsistent` when
/// the report contains a violation; the report is written either way.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn natfull_suite_run(seed: u64, count: usize, p: u32, max_dim: usize, out: *mut *mut c_char) -> NatfullStatus {
    guard(|| {
        let mut cfg = SuiteConfig { seed, count, max_dim, ..SuiteConfig::default() };
        if p != 0 {
            natfull::exactla::PrimeField::new(p).map_err(lib_err)?;
            cfg.primes = vec![p];
        }
        let report = equivalence_suite(&cfg);
        write_string(out, report.to_json().map_err(lib_err)?)?;
        if report.is_clean() {
            Ok(())
        } else {
            Err(fail(NatfullStatus::Inconsistent, format!("{} violation(s)", report.violations().len())))
        }
    })
}
