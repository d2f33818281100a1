use std::ffi::{CStr, CString};
use std::ptr;

use xgraph_ffi::*;

fn fixture(name: &str) -> CString {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn load(name: &str) -> *mut XgGraph {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { xg_graph_from_json(fixture(name).as_ptr(), &mut g) }, XgStatus::Ok);
    assert!(!g.is_null());
    g
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { xg_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(xg_last_error_message()) }.to_str().unwrap().to_string()
}

#[test]
fn verify_fig1_and_broken() {
    let g = load("ghz62_fig1.json");
    let mut v = XgVerdict::default();
    assert_eq!(unsafe { xg_verify(g, &mut v) }, XgStatus::Ok);
    assert_eq!(v, XgVerdict { is_valid: true, vacuous: false, mu: 2, matching_count: 4, violation_count: 0 });
    assert_eq!(unsafe { (xg_graph_vertex_count(g), xg_graph_edge_count(g)) }, (6, 9));
    unsafe { xg_graph_free(g) };

    let b = load("broken.json");
    assert_eq!(unsafe { xg_verify(b, &mut v) }, XgStatus::Ok);
    assert!(!v.is_valid);
    assert_eq!(v.violation_count, 1);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { xg_verify_json(b, &mut s) }, XgStatus::Ok);
    let j: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(j["violations"][0]["coloring"], "111001");
    unsafe { xg_graph_free(b) };
}

#[test]
fn prune_certify_export() {
    let g = load("ghz62_fig1.json");
    let (mut p, mut trace) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { xg_prune(g, &mut p, &mut trace) }, XgStatus::Ok);
    assert_eq!(unsafe { xg_graph_edge_count(p) }, 6);
    assert!(take(trace).contains("color-isolated"));

    let mut report = ptr::null_mut();
    let mut ok = false;
    assert_eq!(unsafe { xg_certify_json(p, &mut report, &mut ok) }, XgStatus::Ok);
    assert!(ok);
    assert!(take(report).contains("boundchi"));

    let mut poly = ptr::null_mut();
    assert_eq!(unsafe { xg_export_poly(g, &mut poly) }, XgStatus::Ok);
    assert_eq!(take(poly).lines().count(), 3);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { xg_graph_to_json(p, &mut json) }, XgStatus::Ok);
    let round = CString::new(take(json)).unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { xg_graph_from_json(round.as_ptr(), &mut q) }, XgStatus::Ok);
    assert_eq!(unsafe { xg_graph_edge_count(q) }, 6);
    unsafe {
        xg_graph_free(q);
        xg_graph_free(p);
        xg_graph_free(g);
    }
}

#[test]
fn error_codes() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { xg_graph_from_json(ptr::null(), &mut g) }, XgStatus::NullPointer);
    let bad = CString::new("{\"vertices\": 2, \"edges\": [{\"u\":0,\"v\":0,\"cu\":0,\"cv\":0}]}").unwrap();
    assert_eq!(unsafe { xg_graph_from_json(bad.as_ptr(), &mut g) }, XgStatus::Input);
    assert!(!last_error().is_empty());
    let not_utf8 = [0xffu8, 0];
    assert_eq!(unsafe { xg_graph_from_json(not_utf8.as_ptr() as *const _, &mut g) }, XgStatus::Utf8);

    let b = load("broken.json");
    assert!(last_error().is_empty());
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { xg_prune(b, &mut p, ptr::null_mut()) }, XgStatus::Invalid);
    assert!(p.is_null());
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { xg_certify_json(b, &mut s, ptr::null_mut()) }, XgStatus::Invalid);
    assert_eq!(unsafe { xg_verify(ptr::null(), ptr::null_mut()) }, XgStatus::NullPointer);
    assert_eq!(unsafe { xg_graph_edge_count(ptr::null()) }, 0);
    unsafe {
        xg_graph_free(b);
        xg_graph_free(ptr::null_mut());
        xg_string_free(ptr::null_mut());
    }
}

#[test]
fn search() {
    let mut s = ptr::null_mut();
    let w = CString::new("1").unwrap();
    assert_eq!(unsafe { xg_search_json(4, 3, w.as_ptr(), true, true, 1, 1_000_000, &mut s) }, XgStatus::Ok);
    let j: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(j["best_mu"], 3);
    assert_eq!(unsafe { xg_search_json(5, 3, w.as_ptr(), true, true, 1, 1000, &mut s) }, XgStatus::Input);
}

#[test]
fn version() {
    let v = unsafe { CStr::from_ptr(xg_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
