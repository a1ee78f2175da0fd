//! C ABI over the hochhom library.
//!
//! Every fallible call returns a `HochhomStatus` and writes its result
//! through an out-pointer. On failure the message is kept per thread and
//! read with `hochhom_last_error_message`. Handles are opaque; free each
//! with its matching `_free` function. Strings returned to the caller are
//! released with `hochhom_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hochhom::algebra::{AlgebraDescription, FDAlgebra};
use hochhom::budget::Budget;
use hochhom::cli::{parse_config, run, ConfigError, JobConfig, Report, ReportBody, RunError};
use hochhom::hochschild::{homology, HochschildError, Options};
use hochhom::simplicial::SpaceExpr;
use hochhom::verify::VerifyError;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HochhomStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    BudgetExceeded = 4,
    HypothesisViolated = 5,
    Internal = 6,
}

/// A parsed and validated job.
pub struct HochhomJob {
    config: JobConfig,
}

/// The outcome of a job or computation.
pub struct HochhomReport {
    report: Report,
    dims: Vec<usize>,
}

/// A finite-dimensional algebra.
pub struct HochhomAlgebra {
    algebra: FDAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: HochhomStatus, msg: impl Into<String>) -> HochhomStatus {
    set_error(msg);
    status
}

fn config_status(e: &ConfigError) -> HochhomStatus {
    match e {
        ConfigError::Budget(_) => HochhomStatus::BudgetExceeded,
        _ => HochhomStatus::InvalidInput,
    }
}

fn run_status(e: &RunError) -> HochhomStatus {
    match e {
        RunError::Verify(VerifyError::Hypothesis(_)) => HochhomStatus::HypothesisViolated,
        _ if e.exit_code() == hochhom::cli::EXIT_BUDGET => HochhomStatus::BudgetExceeded,
        _ => HochhomStatus::InvalidInput,
    }
}

/// Runs `f` with panics turned into `Internal`.
fn guarded(f: impl FnOnce() -> HochhomStatus) -> HochhomStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(HochhomStatus::Internal, "internal error (panic) inside hochhom"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, HochhomStatus> {
    if p.is_null() {
        return Err(fail(HochhomStatus::NullPointer, "string argument is NULL"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(HochhomStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn report_handle(report: Report) -> *mut HochhomReport {
    let dims = match &report.result {
        ReportBody::Table(t) => t.dims.clone(),
        ReportBody::Ext(e) => e.dims.clone(),
        ReportBody::Suite(_) => Vec::new(),
    };
    Box::into_raw(Box::new(HochhomReport { report, dims }))
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn hochhom_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static version string.
#[no_mangle]
pub extern "C" fn hochhom_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a JSON job config (same schema as the command-line tool).
///
/// # Safety
/// `json` must be NULL or a NUL-terminated string; `out` must be NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn hochhom_job_parse(json: *const c_char, out: *mut *mut HochhomJob) -> HochhomStatus {
    guarded(|| {
        if out.is_null() {
            return fail(HochhomStatus::NullPointer, "out is NULL");
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_config(text) {
            Ok(config) => {
                *out = Box::into_raw(Box::new(HochhomJob { config }));
                HochhomStatus::Ok
            }
            Err(e) => fail(config_status(&e), e.to_string()),
        }
    })
}

/// Executes a job. A failing verification suite still returns `Ok`; read
/// the verdict with `hochhom_report_exit_code`.
///
/// # Safety
/// `job` must be NULL or a live handle from `hochhom_job_parse`; `out`
/// must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hochhom_job_run(job: *const HochhomJob, out: *mut *mut HochhomReport) -> HochhomStatus {
    guarded(|| {
        if job.is_null() || out.is_null() {
            return fail(HochhomStatus::NullPointer, "job or out is NULL");
        }
        *out = ptr::null_mut();
        match run(&(*job).config) {
            Ok(r) => {
                *out = report_handle(r);
                HochhomStatus::Ok
            }
            Err(e) => fail(run_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `job` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hochhom_job_free(job: *mut HochhomJob) {
    if !job.is_null() {
        drop(Box::from_raw(job));
    }
}

/// Reads an algebra from a preset name (`"truncated_poly(3)"`) or a JSON
/// object. Infinite-dimensional presets are rejected.
///
/// # Safety
/// `spec` must be NULL or a NUL-terminated string; `out` must be NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn hochhom_algebra_new(spec: *const c_char, out: *mut *mut HochhomAlgebra) -> HochhomStatus {
    guarded(|| {
        if out.is_null() {
            return fail(HochhomStatus::NullPointer, "out is NULL");
        }
        *out = ptr::null_mut();
        let text = match read_str(spec) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let value = serde_json_value(text);
        let desc = match AlgebraDescription::from_json(&value) {
            Ok(d) => d,
            Err(e) => return fail(HochhomStatus::InvalidInput, e.to_string()),
        };
        match desc.finite {
            Some(algebra) => {
                *out = Box::into_raw(Box::new(HochhomAlgebra { algebra }));
                HochhomStatus::Ok
            }
            None => fail(HochhomStatus::InvalidInput, format!("{} is infinite-dimensional", desc.label)),
        }
    })
}

/// A JSON document if `text` parses as one, else the text as a preset name.
fn serde_json_value(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap_or_else(|_| serde_json::Value::String(text.to_string()))
}

/// Dimension over ℚ, or 0 for NULL.
///
/// # Safety
/// `a` must be NULL or a live algebra handle.
#[no_mangle]
pub unsafe extern "C" fn hochhom_algebra_dim(a: *const HochhomAlgebra) -> usize {
    if a.is_null() {
        0
    } else {
        (*a).algebra.dim()
    }
}

/// # Safety
/// `a` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hochhom_algebra_free(a: *mut HochhomAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// `H_n(K, A)` for `n ≤ top` with `K` given as an expression such as
/// `"sphere(2)"`. `budget = 0` means the default.
///
/// # Safety
/// `a` must be NULL or a live algebra handle, `space` NULL or a
/// NUL-terminated string, `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hochhom_homology(
    a: *const HochhomAlgebra,
    space: *const c_char,
    top: usize,
    normalized: bool,
    budget: usize,
    out: *mut *mut HochhomReport,
) -> HochhomStatus {
    guarded(|| {
        if a.is_null() || out.is_null() {
            return fail(HochhomStatus::NullPointer, "algebra or out is NULL");
        }
        *out = ptr::null_mut();
        let expr: SpaceExpr = match read_str(space).map(str::parse) {
            Ok(Ok(e)) => e,
            Ok(Err(e)) => return fail(HochhomStatus::InvalidInput, e.to_string()),
            Err(s) => return s,
        };
        if top == 0 {
            return fail(HochhomStatus::InvalidInput, "top degree must be at least 1");
        }
        let k = match expr.build(top + 1) {
            Ok(k) => k,
            Err(e) => return fail(HochhomStatus::InvalidInput, e.to_string()),
        };
        let opts = Options {
            budget: if budget == 0 { Budget::default() } else { Budget(budget) },
            normalized,
            representatives: false,
        };
        match homology(&k, &(*a).algebra, top, &opts) {
            Ok(t) => {
                *out = report_handle(Report {
                    schema_version: hochhom::cli::REPORT_SCHEMA_VERSION,
                    command: "homology".into(),
                    status: "ok",
                    result: ReportBody::Table(t),
                });
                HochhomStatus::Ok
            }
            Err(e @ HochschildError::BudgetExceeded { .. }) => fail(HochhomStatus::BudgetExceeded, e.to_string()),
            Err(e) => fail(HochhomStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Dimensions in degrees `0..len`, or NULL for suite reports. The array
/// lives as long as the report.
///
/// # Safety
/// `r` must be NULL or a live report; `len` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hochhom_report_dims(r: *const HochhomReport, len: *mut usize) -> *const usize {
    if r.is_null() {
        if !len.is_null() {
            *len = 0;
        }
        return ptr::null();
    }
    let dims = &(*r).dims;
    if !len.is_null() {
        *len = dims.len();
    }
    if dims.is_empty() {
        ptr::null()
    } else {
        dims.as_ptr()
    }
}

/// The status the command-line tool would exit with: 0 success, 1 failed
/// suite. Returns -1 for NULL.
///
/// # Safety
/// `r` must be NULL or a live report.
#[no_mangle]
pub unsafe extern "C" fn hochhom_report_exit_code(r: *const HochhomReport) -> i32 {
    if r.is_null() {
        -1
    } else {
        (*r).report.exit_code()
    }
}

/// The JSON report as a new string; release it with `hochhom_string_free`.
/// `with_timing = false` drops every `elapsed_ms` field.
///
/// # Safety
/// `r` must be NULL or a live report.
#[no_mangle]
pub unsafe extern "C" fn hochhom_report_json(r: *const HochhomReport, with_timing: bool) -> *mut c_char {
    if r.is_null() {
        set_error("report is NULL");
        return ptr::null_mut();
    }
    let report = &(*r).report;
    let text = if with_timing {
        report.to_json()
    } else {
        report.to_json_without_timing()
    };
    CString::new(text).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `r` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hochhom_report_free(r: *mut HochhomReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hochhom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
