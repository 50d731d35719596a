//! The C ABI, called from Rust and from a C program built against the header.

use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use natfull_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

/// Takes ownership of a returned string.
unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    natfull_string_free(s);
    out
}

fn last_error() -> Option<String> {
    let e = natfull_last_error();
    (!e.is_null()).then(|| unsafe { CStr::from_ptr(e) }.to_str().unwrap().to_string())
}

fn emit(id: &str, p: u32, base: Option<&str>) -> String {
    let id = cstr(id);
    let base = base.map(cstr);
    let mut out = ptr::null_mut();
    let status = unsafe { natfull_fixture_emit(id.as_ptr(), p, base.as_ref().map_or(ptr::null(), |b| b.as_ptr()), &mut out) };
    assert_eq!(status, NatfullStatus::Ok, "{:?}", last_error());
    unsafe { take(out) }
}

fn parse(json: &str) -> Result<*mut NatfullInstance, NatfullStatus> {
    let text = cstr(json);
    let mut inst = ptr::null_mut();
    match unsafe { natfull_instance_parse(text.as_ptr(), &mut inst) } {
        NatfullStatus::Ok => Ok(inst),
        s => Err(s),
    }
}

fn analyze(inst: *const NatfullInstance, analyzer: NatfullAnalyzer, id: Option<&str>) -> Result<serde_json::Value, NatfullStatus> {
    let id = id.map(cstr);
    let mut out = ptr::null_mut();
    let status = unsafe { natfull_analyze(inst, analyzer, id.as_ref().map_or(ptr::null(), |c| c.as_ptr()), 0, &mut out) };
    if status != NatfullStatus::Ok {
        assert!(out.is_null());
        return Err(status);
    }
    Ok(serde_json::from_str(&unsafe { take(out) }).unwrap())
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(natfull_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn analyzers_return_json_reports() {
    let tri = parse(&emit("FIX-TRI", 3, None)).unwrap();
    assert_eq!(unsafe { natfull_instance_prime(tri) }, 3);
    let report = analyze(tri, NatfullAnalyzer::Scalars, None).unwrap();
    assert_eq!(report["analyzer"], "scalars");
    assert_eq!(report["report"]["extension"]["naturally_full"], false);
    assert_eq!(report["report"]["restriction"]["naturally_full"], true);
    unsafe { natfull_instance_free(tri) };

    let swe = parse(&emit("FIX-SWE", 0, Some("FIX-PROJ"))).unwrap();
    let coring = analyze(swe, NatfullAnalyzer::Coring, Some("sweedler")).unwrap();
    assert_eq!(coring["report"]["cotensor"]["naturally_full"], true);
    let morphism = analyze(swe, NatfullAnalyzer::CoringMorphism, None).unwrap();
    assert_eq!(morphism["analyzer"], "coring_morphism");
    unsafe { natfull_instance_free(swe) };

    let mat2 = parse(&emit("FIX-MAT2", 0, None)).unwrap();
    assert_eq!(analyze(mat2, NatfullAnalyzer::Bimodule, None).unwrap()["report"]["coinduction"]["naturally_full"], false);
    unsafe { natfull_instance_free(mat2) };
}

#[test]
fn errors_map_to_status_codes() {
    assert_eq!(parse("{").unwrap_err(), NatfullStatus::Parse);
    assert!(last_error().unwrap().contains("malformed"));

    let bad = r#"{"version": "natfull/1", "p": 2,
        "algebras": {"R": {"dim": 1, "mul": [[[1]]], "unit": [0]}}}"#;
    assert_eq!(parse(bad).unwrap_err(), NatfullStatus::Validation);

    let swe = parse(&emit("FIX-SWE", 0, None)).unwrap();
    assert_eq!(analyze(swe, NatfullAnalyzer::Coring, None).unwrap_err(), NatfullStatus::UnknownId);
    assert_eq!(analyze(swe, NatfullAnalyzer::Scalars, Some("nope")).unwrap_err(), NatfullStatus::UnknownId);
    assert!(analyze(swe, NatfullAnalyzer::Scalars, Some("phi")).is_ok());
    assert!(last_error().is_none(), "a successful call clears the last error");
    unsafe { natfull_instance_free(swe) };

    let id = cstr("FIX-NOPE");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { natfull_fixture_emit(id.as_ptr(), 0, ptr::null(), &mut out) }, NatfullStatus::UnknownId);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { natfull_suite_run(1, 1, 4, 2, &mut out) }, NatfullStatus::InvalidModulus);
}

#[test]
fn null_arguments_are_rejected() {
    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { natfull_instance_parse(ptr::null(), &mut inst) }, NatfullStatus::NullPointer);
    let text = cstr(&emit("FIX-ID", 0, None));
    assert_eq!(unsafe { natfull_instance_parse(text.as_ptr(), ptr::null_mut()) }, NatfullStatus::NullPointer);
    assert_eq!(analyze(ptr::null(), NatfullAnalyzer::Scalars, None).unwrap_err(), NatfullStatus::NullPointer);
    assert_eq!(unsafe { natfull_instance_prime(ptr::null()) }, 0);
    unsafe {
        natfull_instance_free(ptr::null_mut());
        natfull_string_free(ptr::null_mut());
    }
}

#[test]
fn instances_load_from_files() {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", "fix_f4.json"].iter().collect();
    let path = cstr(path.to_str().unwrap());
    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { natfull_instance_load(path.as_ptr(), &mut inst) }, NatfullStatus::Ok);
    let report = analyze(inst, NatfullAnalyzer::Scalars, None).unwrap();
    assert_eq!(report["report"]["restriction"]["full"], false);
    unsafe { natfull_instance_free(inst) };
    let missing = cstr("/nonexistent/natfull.json");
    assert_eq!(unsafe { natfull_instance_load(missing.as_ptr(), &mut inst) }, NatfullStatus::Io);
}

#[test]
fn suite_reports_are_deterministic() {
    let run = || {
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { natfull_suite_run(9, 2, 0, 2, &mut out) }, NatfullStatus::Ok);
        unsafe { take(out) }
    };
    let a = run();
    assert_eq!(a, run());
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["config"]["seed"], 9);
}

/// Directory holding the built shared library, next to `deps/`.
fn library_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_header_and_library() {
    let lib = library_dir();
    assert!(lib.join("libnatfull_ffi.so").exists() || lib.join("libnatfull_ffi.dylib").exists(), "no shared library in {}", lib.display());
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = tempfile_path("natfull_smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-L")
        .arg(&lib)
        .arg("-lnatfull_ffi")
        .arg("-o")
        .arg(&out)
        .status()
        .unwrap_or_else(|e| panic!("{cc}: {e}"));
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&out).env("LD_LIBRARY_PATH", &lib).env("DYLD_LIBRARY_PATH", &lib).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}

fn tempfile_path(stem: &str) -> PathBuf {
    std::env::temp_dir().join(format!("{stem}_{}", std::process::id()))
}
