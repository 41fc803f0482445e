use std::ffi::{CStr, CString};
use std::ptr;

use drgkit_ffi::*;

fn last_error() -> String {
    let p = drg_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn construct(family: &str, params: &[i64]) -> *mut DrgGraph {
    let f = CString::new(family).unwrap();
    let mut g = ptr::null_mut();
    let s = unsafe { drg_graph_construct(f.as_ptr(), params.as_ptr(), params.len(), &mut g) };
    assert_eq!(s, DrgStatus::Ok);
    g
}

unsafe fn take_string(p: *mut libc::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    drg_string_free(p);
    s
}

#[test]
fn construct_and_query() {
    let g = construct("shrikhande", &[]);
    unsafe {
        let mut n = 0;
        assert_eq!(drg_graph_vertex_count(g, &mut n), DrgStatus::Ok);
        assert_eq!(n, 16);
        let mut dim = 0;
        assert_eq!(drg_terwilliger_dim(g, 3, &mut dim), DrgStatus::Ok);
        assert_eq!(dim, 20);
        let mut v = DrgPvt::NotPvt;
        assert_eq!(drg_check_pvt(g, &mut v), DrgStatus::Ok);
        assert_eq!(v, DrgPvt::Pvt);
        drg_graph_free(g);
    }
}

#[test]
fn json_round_trip_and_adjacency() {
    let g = construct("icosahedron", &[]);
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(drg_graph_to_json(g, &mut s), DrgStatus::Ok);
        let text = CString::new(take_string(s)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(drg_graph_from_json(text.as_ptr(), &mut back), DrgStatus::Ok);
        let mut dim = 0;
        assert_eq!(drg_terwilliger_dim(back, 0, &mut dim), DrgStatus::Ok);
        assert_eq!(dim, 24);
        drg_graph_free(back);
        drg_graph_free(g);

        // 5-cycle
        let n = 5;
        let adj: Vec<u8> = (0..n * n).map(|k| u8::from((k / n + n - k % n) % n == 1 || (k % n + n - k / n) % n == 1)).collect();
        let mut c5 = ptr::null_mut();
        assert_eq!(drg_graph_from_adjacency(adj.as_ptr(), n, &mut c5), DrgStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(drg_analyze_json(c5, -1, 0, &mut out), DrgStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(report["vertices"].as_array().unwrap().len(), 5);
        drg_graph_free(c5);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        let bad = CString::new("nope").unwrap();
        assert_eq!(drg_graph_construct(bad.as_ptr(), ptr::null(), 0, &mut g), DrgStatus::InvalidArgument);
        assert!(last_error().contains("nope"));
        assert_eq!(drg_graph_construct(ptr::null(), ptr::null(), 0, &mut g), DrgStatus::NullPointer);
        let junk = CString::new("{").unwrap();
        assert_eq!(drg_graph_from_json(junk.as_ptr(), &mut g), DrgStatus::Parse);

        // path on 3 vertices
        let adj = [0u8, 1, 0, 1, 0, 1, 0, 1, 0];
        assert_eq!(drg_graph_from_adjacency(adj.as_ptr(), 3, &mut g), DrgStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(drg_analyze_json(g, 0, 0, &mut out), DrgStatus::NotDistanceRegular);
        assert!(out.is_null());
        let mut dim = 0;
        assert_eq!(drg_terwilliger_dim(g, 9, &mut dim), DrgStatus::InvalidArgument);
        drg_graph_free(g);

        let ok = construct("shrikhande", &[]);
        let mut n = 0;
        assert_eq!(drg_graph_vertex_count(ok, &mut n), DrgStatus::Ok);
        assert!(drg_last_error().is_null());
        drg_graph_free(ok);
        drg_graph_free(ptr::null_mut());
        drg_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_generated() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/drgkit.h")).unwrap();
    for name in ["drg_graph_construct", "drg_analyze_json", "drg_last_error", "typedef struct DrgGraph DrgGraph", "DRG_STATUS_OK"] {
        assert!(h.contains(name), "{name}");
    }
}
