use std::ffi::{c_char, CStr, CString};
use std::ptr;

use quandle_kit_ffi::*;
use serde_json::Value;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    qk_string_free(p);
    s
}

unsafe fn last_error() -> String {
    let p = qk_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn quandle_handles() {
    unsafe {
        let mut q = ptr::null_mut();
        assert_eq!(qk_quandle_dihedral(3, &mut q), QkStatus::Ok);
        assert_eq!(qk_quandle_order(q), 3);
        let mut v = 0;
        assert_eq!(qk_quandle_op(q, 0, 1, &mut v), QkStatus::Ok);
        assert_eq!(v, 2);
        assert_eq!(qk_quandle_op(q, 3, 1, &mut v), QkStatus::OutOfRange);
        assert_eq!(qk_quandle_orbit_count(q, &mut v), QkStatus::Ok);
        assert_eq!(v, 1);
        qk_quandle_free(q);

        let json = cstr(r#"{"n":2,"table":[[0,0],[1,1]]}"#);
        assert_eq!(qk_quandle_from_json(json.as_ptr(), &mut q), QkStatus::Ok);
        assert_eq!(qk_quandle_orbit_count(q, &mut v), QkStatus::Ok);
        assert_eq!(v, 2);
        qk_quandle_free(q);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut q = ptr::null_mut();
        let bad = cstr(r#"{"n":2,"table":[[0,0],[0,1]]}"#);
        assert_eq!(qk_quandle_from_json(bad.as_ptr(), &mut q), QkStatus::NotAQuandle);
        assert!(q.is_null());
        assert!(!last_error().is_empty());

        let garbage = cstr("{");
        assert_eq!(qk_quandle_from_json(garbage.as_ptr(), &mut q), QkStatus::Parse);
        assert_eq!(qk_quandle_from_json(ptr::null(), &mut q), QkStatus::NullPointer);

        let mut d = ptr::null_mut();
        let pd = cstr("X[1,2,3]");
        assert_eq!(qk_diagram_from_pd(pd.as_ptr(), &mut d), QkStatus::Parse);
        let name = cstr("no-such-knot");
        assert_eq!(qk_diagram_from_corpus(name.as_ptr(), &mut d), QkStatus::InvalidDiagram);

        assert_eq!(qk_quandle_dihedral(3, &mut q), QkStatus::Ok);
        assert!(qk_last_error_message().is_null());
        qk_quandle_free(q);

        qk_quandle_free(ptr::null_mut());
        qk_diagram_free(ptr::null_mut());
        qk_cochain_free(ptr::null_mut());
        qk_string_free(ptr::null_mut());
    }
}

#[test]
fn cohomology_and_cocycles() {
    unsafe {
        let mut q = ptr::null_mut();
        assert_eq!(qk_quandle_dihedral(3, &mut q), QkStatus::Ok);
        let mut out = ptr::null_mut();
        let rat = cstr("Q");
        let status = qk_cohomology_json(q, QkFlavor::Rack, QkSign::Neg, 2, rat.as_ptr(), false, &mut out);
        assert_eq!(status, QkStatus::Ok);
        let v: Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["free_rank"], 1);

        let z = cstr("Z");
        assert_eq!(qk_cocycle_basis_json(q, QkSign::Neg, z.as_ptr(), &mut out), QkStatus::Ok);
        let basis: Vec<Vec<Vec<i64>>> = serde_json::from_str(&take_string(out)).unwrap();
        assert!(basis.iter().all(|m| m.len() == 3));

        let status = qk_cohomology_json(q, QkFlavor::Quandle, QkSign::Neg, 9, z.as_ptr(), false, &mut out);
        assert_eq!(status, QkStatus::Unsupported);
        qk_quandle_free(q);
    }
}

#[test]
fn state_sum_of_hopf_link() {
    unsafe {
        let mut q = ptr::null_mut();
        assert_eq!(qk_quandle_trivial(2, &mut q), QkStatus::Ok);
        let mut d = ptr::null_mut();
        let name = cstr("hopf");
        assert_eq!(qk_diagram_from_corpus(name.as_ptr(), &mut d), QkStatus::Ok);
        assert_eq!(qk_diagram_crossing_count(d), 2);
        assert_eq!(qk_diagram_arc_count(d), 2);
        let mut n = 0;
        assert_eq!(qk_coloring_count(d, q, &mut n), QkStatus::Ok);
        assert_eq!(n, 4);

        let mut phi = ptr::null_mut();
        let json = cstr(r#"{"coeff":"Z","values":[[0,1],[0,0]]}"#);
        assert_eq!(qk_cochain_from_json(json.as_ptr(), &mut phi), QkStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(qk_state_sum_json(d, q, phi, QkSign::Neg, &mut out), QkStatus::Ok);
        let v: Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["colorings"], 4);
        assert_eq!(v["trivial"], false);
        qk_cochain_free(phi);

        let mut d3 = ptr::null_mut();
        assert_eq!(qk_quandle_dihedral(3, &mut d3), QkStatus::Ok);
        let json = cstr(r#"{"coeff":"Z","values":[[0,1,0],[0,0,0],[0,0,0]]}"#);
        assert_eq!(qk_cochain_from_json(json.as_ptr(), &mut phi), QkStatus::Ok);
        assert_eq!(qk_state_sum_json(d, d3, phi, QkSign::Neg, &mut out), QkStatus::InvalidCochain);
        assert!(last_error().contains("fails at"));
        assert_eq!(qk_state_sum_json(d, q, phi, QkSign::Neg, &mut out), QkStatus::InvalidCochain);

        qk_cochain_free(phi);
        qk_quandle_free(d3);
        qk_quandle_free(q);
        qk_diagram_free(d);
    }
}

#[test]
fn diagram_from_pd_text() {
    unsafe {
        let mut d = ptr::null_mut();
        let pd = cstr("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]");
        assert_eq!(qk_diagram_from_pd(pd.as_ptr(), &mut d), QkStatus::Ok);
        assert_eq!(qk_diagram_crossing_count(d), 3);
        assert_eq!(qk_diagram_arc_count(d), 3);
        qk_diagram_free(d);
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/quandle_kit.h")).unwrap();
    for name in [
        "qk_last_error_message",
        "qk_string_free",
        "qk_quandle_from_json",
        "qk_quandle_dihedral",
        "qk_quandle_trivial",
        "qk_quandle_free",
        "qk_quandle_order",
        "qk_quandle_op",
        "qk_quandle_orbit_count",
        "qk_cohomology_json",
        "qk_cocycle_basis_json",
        "qk_diagram_from_pd",
        "qk_diagram_from_corpus",
        "qk_diagram_free",
        "qk_diagram_crossing_count",
        "qk_diagram_arc_count",
        "qk_coloring_count",
        "qk_cochain_from_json",
        "qk_cochain_free",
        "qk_state_sum_json",
        "typedef struct QkQuandle QkQuandle",
        "QK_STATUS_INVALID_COCHAIN = 6",
    ] {
        assert!(header.contains(name), "header is missing {name}");
    }
}
