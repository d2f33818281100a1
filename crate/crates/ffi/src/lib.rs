//! C ABI for `xgraph`.
//!
//! Graphs are opaque `XgGraph` handles created by [`xg_graph_from_json`] and
//! released with [`xg_graph_free`]. Strings returned through `char **`
//! out-parameters are owned by the caller and released with
//! [`xg_string_free`]. Every fallible function returns an [`XgStatus`]; on
//! failure [`xg_last_error_message`] describes the error for the calling
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use xgraph::certificate::certificate_report;
use xgraph::io::{graph_to_json, parse_graph};
use xgraph::search::{search_max_dimension, SearchSpace};
use xgraph::{Error, ExperimentGraph};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XgStatus {
    Ok = 0,
    /// The graph is not valid where a valid graph is required.
    Invalid = 1,
    NullPointer = 2,
    Utf8 = 3,
    /// Malformed or unsupported input.
    Input = 4,
    CapExceeded = 5,
    Precondition = 6,
    Internal = 7,
}

/// Opaque graph handle.
pub struct XgGraph {
    inner: ExperimentGraph,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct XgVerdict {
    pub is_valid: bool,
    pub vacuous: bool,
    pub mu: usize,
    pub matching_count: usize,
    pub violation_count: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> XgStatus {
    match e {
        Error::InvalidGraph(_) => XgStatus::Invalid,
        Error::CapExceeded { .. } => XgStatus::CapExceeded,
        Error::Precondition(_) | Error::MonoedgeViolated(_) => XgStatus::Precondition,
        Error::Internal(_) => XgStatus::Internal,
        _ => XgStatus::Input,
    }
}

/// Runs `f`, recording any error or panic for [`xg_last_error_message`].
fn guard(f: impl FnOnce() -> Result<(), (XgStatus, String)>) -> XgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            XgStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            XgStatus::Internal
        }
    }
}

fn lib<T>(r: xgraph::Result<T>) -> Result<T, (XgStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (XgStatus, String) {
    (XgStatus::NullPointer, "null pointer argument".into())
}

unsafe fn graph_ref<'a>(g: *const XgGraph) -> Result<&'a ExperimentGraph, (XgStatus, String)> {
    g.as_ref().map(|g| &g.inner).ok_or_else(null)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, (XgStatus, String)> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|e| (XgStatus::Utf8, e.to_string()))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (XgStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    let c = CString::new(s).map_err(|e| (XgStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn xg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn xg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses a graph from its JSON text.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn xg_graph_from_json(json: *const c_char, out: *mut *mut XgGraph) -> XgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let g = lib(parse_graph(read_str(json)?))?;
        *out = Box::into_raw(Box::new(XgGraph { inner: g }));
        Ok(())
    })
}

/// Releases a graph; null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn xg_graph_free(g: *mut XgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn xg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `g` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn xg_graph_vertex_count(g: *const XgGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.vertex_count())
}

/// # Safety
/// `g` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn xg_graph_edge_count(g: *const XgGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.edge_count())
}

/// Serializes a graph to JSON.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn xg_graph_to_json(g: *const XgGraph, out: *mut *mut c_char) -> XgStatus {
    guard(|| put_string(out, pretty(&graph_to_json(graph_ref(g)?))))
}

/// Exact validity check. Returns `XG_STATUS_OK` for invalid graphs too;
/// inspect `out->is_valid`.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn xg_verify(g: *const XgGraph, out: *mut XgVerdict) -> XgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let out = out.as_mut().ok_or_else(null)?;
        let v = lib(xgraph::verify(g))?;
        *out = XgVerdict {
            is_valid: v.is_valid,
            vacuous: v.vacuous,
            mu: v.mu,
            matching_count: v.matching_count,
            violation_count: v.violations.len(),
        };
        Ok(())
    })
}

/// Full verdict as JSON, including the weight table.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn xg_verify_json(g: *const XgGraph, out: *mut *mut c_char) -> XgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let table = lib(xgraph::weight_table(g))?;
        let mut j = xgraph::validity::verdict_from_table(g, &table).to_json(g);
        j["weight_table"] = table.to_json(g);
        put_string(out, pretty(&j))
    })
}

/// Prunes a valid graph to the fixpoint of the pruning rules. `trace_json`
/// may be null; otherwise it receives the trace.
///
/// # Safety
/// `g` must be a live handle, `out` writable, `trace_json` writable or null.
#[no_mangle]
pub unsafe extern "C" fn xg_prune(g: *const XgGraph, out: *mut *mut XgGraph, trace_json: *mut *mut c_char) -> XgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if out.is_null() {
            return Err(null());
        }
        let (pruned, trace) = lib(xgraph::prune_to_fixpoint(g))?;
        if !trace_json.is_null() {
            put_string(trace_json, pretty(&trace.to_json(g)))?;
        }
        *out = Box::into_raw(Box::new(XgGraph { inner: pruned }));
        Ok(())
    })
}

/// Certificate report as JSON; `all_hold` (nullable) receives whether every
/// check holds.
///
/// # Safety
/// `g` must be a live handle, `out` writable, `all_hold` writable or null.
#[no_mangle]
pub unsafe extern "C" fn xg_certify_json(g: *const XgGraph, out: *mut *mut c_char, all_hold: *mut bool) -> XgStatus {
    guard(|| {
        let report = lib(certificate_report(graph_ref(g)?))?;
        if let Some(flag) = all_hold.as_mut() {
            *flag = report.all_hold();
        }
        put_string(out, pretty(&report.to_json()))
    })
}

/// The validity conditions as polynomial equations, one per line.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn xg_export_poly(g: *const XgGraph, out: *mut *mut c_char) -> XgStatus {
    guard(|| put_string(out, lib(xgraph::poly::export_polynomial_system(graph_ref(g)?))?))
}

/// Searches for maximum-dimension valid graphs; the result is JSON.
/// `weights` is `"pm1"`, `"i4"` or a comma-separated list.
///
/// # Safety
/// `weights` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn xg_search_json(
    n: usize,
    max_colors: usize,
    weights: *const c_char,
    mono_only: bool,
    up_to_iso: bool,
    min_mu: usize,
    budget: u64,
    out: *mut *mut c_char,
) -> XgStatus {
    guard(|| {
        let space = SearchSpace {
            weight_alphabet: lib(xgraph::cli::parse_weights(read_str(weights)?))?,
            mono_only,
            up_to_iso,
            min_mu,
            ..SearchSpace::new(n, max_colors)
        };
        let r = lib(search_max_dimension(&space, budget))?;
        put_string(out, pretty(&r.to_json(&space)))
    })
}

