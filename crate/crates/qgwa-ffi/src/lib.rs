//! C ABI for the qgwa analysis engine.
//!
//! The interface is handle-based: parse and analyze an input document with
//! [`qgwa_analyze`], then read the result out of the opaque report handle as
//! JSON or text. Every string returned by this library must be released with
//! [`qgwa_string_free`], and every report handle with [`qgwa_report_free`].
//!
//! All entry points are panic-safe: a panic inside the engine is caught and
//! reported as `QGWA_STATUS_INTERNAL` instead of unwinding across the ABI.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qgwa::parser::parse_request;
use qgwa::pipeline::run_analysis;
use qgwa::report::{emit_report, AnalysisReport, ReportFormat};

/// Status codes returned by the entry points. The nonzero values mirror the
/// CLI exit codes so embedders can treat them uniformly.
pub const QGWA_STATUS_OK: i32 = 0;
/// The configuration violates a structural hypothesis (for example
/// `gcd(m, n) != 1`); the report still contains the stages that ran.
pub const QGWA_STATUS_HYPOTHESIS: i32 = 2;
/// The input document failed to parse; the report contains the error.
pub const QGWA_STATUS_PARSE: i32 = 3;
/// A cross-check or brute-force verification failed.
pub const QGWA_STATUS_CROSS_CHECK: i32 = 4;
/// A null pointer, invalid UTF-8, or an internal panic.
pub const QGWA_STATUS_INTERNAL: i32 = -1;

/// Opaque analysis report. Created by [`qgwa_analyze`], released by
/// [`qgwa_report_free`].
pub struct QgwaReport {
    report: AnalysisReport,
}

fn to_c_string(s: String) -> *mut c_char {
    // Interior NULs cannot occur in our output, but never panic across FFI.
    match CString::new(s) {
        Ok(c) => c.into_raw(),
        Err(_) => ptr::null_mut(),
    }
}

/// Parses and analyzes one input document.
///
/// `input` must be a NUL-terminated UTF-8 input document. On return `*out`
/// holds a report handle (even when the status is nonzero, so diagnostics can
/// be read from it), or null on `QGWA_STATUS_INTERNAL`. The returned status
/// is the report's exit code.
///
/// # Safety
/// `input` must point to a valid NUL-terminated string and `out` to a valid
/// pointer slot; both must stay valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn qgwa_analyze(input: *const c_char, out: *mut *mut QgwaReport) -> i32 {
    if input.is_null() || out.is_null() {
        return QGWA_STATUS_INTERNAL;
    }
    unsafe { *out = ptr::null_mut() };
    let text = match unsafe { CStr::from_ptr(input) }.to_str() {
        Ok(t) => t.to_owned(),
        Err(_) => return QGWA_STATUS_INTERNAL,
    };
    let result = catch_unwind(AssertUnwindSafe(|| match parse_request(&text) {
        Ok(request) => run_analysis(&request),
        Err(e) => {
            let mut report = AnalysisReport::empty();
            report.record_error("parse", &e);
            report
        }
    }));
    match result {
        Ok(report) => {
            let status = report.exit_code();
            unsafe { *out = Box::into_raw(Box::new(QgwaReport { report })) };
            status
        }
        Err(_) => QGWA_STATUS_INTERNAL,
    }
}

/// Returns the report's exit code (see the status constants), or
/// `QGWA_STATUS_INTERNAL` for a null handle.
///
/// # Safety
/// `report` must be null or a handle returned by [`qgwa_analyze`] that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn qgwa_report_status(report: *const QgwaReport) -> i32 {
    match unsafe { report.as_ref() } {
        Some(r) => r.report.exit_code(),
        None => QGWA_STATUS_INTERNAL,
    }
}

unsafe fn render(report: *const QgwaReport, format: ReportFormat) -> *mut c_char {
    let Some(r) = (unsafe { report.as_ref() }) else {
        return ptr::null_mut();
    };
    match catch_unwind(AssertUnwindSafe(|| emit_report(&r.report, format))) {
        Ok(s) => to_c_string(s),
        Err(_) => ptr::null_mut(),
    }
}

/// Renders the report as deterministic pretty-printed JSON. The returned
/// string must be released with [`qgwa_string_free`]. Null on failure.
///
/// # Safety
/// `report` must be null or a handle returned by [`qgwa_analyze`] that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn qgwa_report_json(report: *const QgwaReport) -> *mut c_char {
    unsafe { render(report, ReportFormat::Json) }
}

/// Renders the report in the human-readable text format. The returned string
/// must be released with [`qgwa_string_free`]. Null on failure.
///
/// # Safety
/// Same as [`qgwa_report_json`].
#[no_mangle]
pub unsafe extern "C" fn qgwa_report_text(report: *const QgwaReport) -> *mut c_char {
    unsafe { render(report, ReportFormat::Text) }
}

/// Releases a report handle. Null is a no-op.
///
/// # Safety
/// `report` must be null or a handle returned by [`qgwa_analyze`] that has
/// not already been freed.
#[no_mangle]
pub unsafe extern "C" fn qgwa_report_free(report: *mut QgwaReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string returned by this library that has not
/// already been freed.
#[no_mangle]
pub unsafe extern "C" fn qgwa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Returns the library version as a static string. Do not free it.
#[no_mangle]
pub extern "C" fn qgwa_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
