use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use hochhom_ffi::*;

fn last_error() -> String {
    let p = hochhom_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn dims(r: *const HochhomReport) -> Vec<usize> {
    let mut len = 0;
    let p = unsafe { hochhom_report_dims(r, &mut len) };
    if p.is_null() {
        return Vec::new();
    }
    unsafe { std::slice::from_raw_parts(p, len) }.to_vec()
}

#[test]
fn homology_through_handles() {
    let spec = CString::new("truncated_poly(3)").unwrap();
    let space = CString::new("sphere(2)").unwrap();
    let mut a = ptr::null_mut();
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(hochhom_algebra_new(spec.as_ptr(), &mut a), HochhomStatus::Ok);
        assert_eq!(hochhom_algebra_dim(a), 3);
        assert_eq!(hochhom_homology(a, space.as_ptr(), 3, true, 0, &mut r), HochhomStatus::Ok);
        assert_eq!(dims(r)[..3], [3, 0, 2]);
        assert_eq!(hochhom_report_exit_code(r), 0);
        let json = hochhom_report_json(r, false);
        let text = CStr::from_ptr(json).to_str().unwrap().to_string();
        hochhom_string_free(json);
        assert!(!text.contains("elapsed_ms"));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["result"]["space"], "sphere(2)");
        hochhom_report_free(r);
        hochhom_algebra_free(a);
    }
}

#[test]
fn jobs_and_error_codes() {
    let ok = CString::new(r#"{"command":"verify","suite":"localization"}"#).unwrap();
    let bad = CString::new(r#"{"command":"homology","algebra":"ground_field","N":2}"#).unwrap();
    let disconnected = CString::new(r#"{"command":"verify","suite":"localization","space":"disjoint(point,point)"}"#).unwrap();
    let budget = CString::new(r#"{"command":"homology","algebra":"truncated_poly(4)","space":"sphere(3)","N":8,"budget":1000}"#).unwrap();
    let mut job = ptr::null_mut();
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(hochhom_job_parse(ok.as_ptr(), &mut job), HochhomStatus::Ok);
        assert_eq!(hochhom_job_run(job, &mut r), HochhomStatus::Ok);
        assert_eq!(hochhom_report_exit_code(r), 0);
        assert!(dims(r).is_empty());
        hochhom_report_free(r);
        hochhom_job_free(job);

        assert_eq!(hochhom_job_parse(bad.as_ptr(), &mut job), HochhomStatus::InvalidInput);
        assert!(job.is_null());
        assert!(last_error().contains(".space"));

        assert_eq!(hochhom_job_parse(disconnected.as_ptr(), &mut job), HochhomStatus::Ok);
        assert_eq!(hochhom_job_run(job, &mut r), HochhomStatus::HypothesisViolated);
        assert!(r.is_null());
        assert!(last_error().contains("connected"));
        hochhom_job_free(job);

        assert_eq!(hochhom_job_parse(budget.as_ptr(), &mut job), HochhomStatus::Ok);
        assert_eq!(hochhom_job_run(job, &mut r), HochhomStatus::BudgetExceeded);
        hochhom_job_free(job);
    }
}

#[test]
fn null_and_utf8_guards() {
    let mut a = ptr::null_mut();
    let bytes = [0xffu8, 0xfe, 0];
    unsafe {
        assert_eq!(hochhom_algebra_new(ptr::null(), &mut a), HochhomStatus::NullPointer);
        assert_eq!(hochhom_algebra_new(bytes.as_ptr().cast(), &mut a), HochhomStatus::InvalidUtf8);
        assert_eq!(hochhom_job_run(ptr::null(), ptr::null_mut()), HochhomStatus::NullPointer);
        assert_eq!(hochhom_report_exit_code(ptr::null()), -1);
        assert_eq!(hochhom_algebra_dim(ptr::null()), 0);
        hochhom_report_free(ptr::null_mut());
        hochhom_string_free(ptr::null_mut());
    }
    let poly = CString::new("poly(1)").unwrap();
    unsafe {
        assert_eq!(hochhom_algebra_new(poly.as_ptr(), &mut a), HochhomStatus::InvalidInput);
    }
    assert!(last_error().contains("infinite"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/hochhom.h")).unwrap();
    let src = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|s| s.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 12);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct HochhomReport HochhomReport;"));
}

/// Compiles and runs a C program against the static library, when a C
/// compiler is on the path.
#[test]
fn c_program_links_and_runs() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    // tests run from target/<profile>/deps
    let profile_dir: PathBuf = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libhochhom_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: static library or C compiler not available");
        return;
    }
    let out_dir = tempfile::tempdir().unwrap();
    let exe = out_dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C smoke program failed to build");
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "C smoke program exited with {:?}", run.status.code());
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
