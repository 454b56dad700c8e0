use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::ptr;

use frobext_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    frob_string_free(p);
    s
}

#[test]
fn z4_lee_round_trip() {
    unsafe {
        let mut ring = ptr::null_mut();
        assert_eq!(frob_ring_from_json(c(r#"{"kind":"zn","n":4}"#).as_ptr(), &mut ring), FrobStatus::Ok);
        let (mut size, mut units, mut frob) = (0usize, 0usize, false);
        assert_eq!(frob_ring_size(ring, &mut size), FrobStatus::Ok);
        assert_eq!(frob_ring_unit_count(ring, &mut units), FrobStatus::Ok);
        assert_eq!(frob_ring_is_frobenius(ring, &mut frob), FrobStatus::Ok);
        assert_eq!((size, units, frob), (4, 2, true));

        let mut module = ptr::null_mut();
        assert_eq!(frob_bimodule_new(ring, &mut module), FrobStatus::Ok);
        let mut weight = ptr::null_mut();
        let table = c(r#"{"(0)":0,"(1)":1,"(2)":2,"(3)":1}"#);
        assert_eq!(frob_weight_from_json(module, table.as_ptr(), &mut weight), FrobStatus::Ok);
        let mut holds = false;
        assert_eq!(frob_check_condition(weight, &mut holds), FrobStatus::Ok);
        assert!(holds);

        let mut json = ptr::null_mut();
        assert_eq!(frob_certify_json(weight, &mut json), FrobStatus::Ok);
        let cert: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(cert["valid"], true);

        assert_eq!(frob_mobius_json(module, &mut json), FrobStatus::Ok);
        let rows: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(rows.as_array().unwrap().len(), 3);

        frob_weight_free(weight);
        frob_bimodule_free(module);
        frob_ring_free(ring);
    }
}

#[test]
fn u2f2_is_not_frobenius_but_has_a_dual() {
    unsafe {
        let mut ring = ptr::null_mut();
        let spec = c(r#"{"kind":"upper_triangular","k":2,"p":2}"#);
        assert_eq!(frob_ring_from_json(spec.as_ptr(), &mut ring), FrobStatus::Ok);
        let mut frob = true;
        assert_eq!(frob_ring_is_frobenius(ring, &mut frob), FrobStatus::Ok);
        assert!(!frob);
        let mut module = ptr::null_mut();
        assert_eq!(frob_bimodule_new(ring, &mut module), FrobStatus::Ok);
        let mut weight = ptr::null_mut();
        assert_eq!(frob_weight_homogeneous(module, &mut weight), FrobStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(frob_certify_json(weight, &mut json), FrobStatus::Ok);
        assert!(take_string(json).contains("\"valid\":true"));
        frob_weight_free(weight);
        frob_bimodule_free(module);
        frob_ring_free(ring);
    }
}

#[test]
fn errors_are_reported_with_codes_and_messages() {
    unsafe {
        let mut ring = ptr::null_mut();
        assert_eq!(frob_ring_from_json(c("{\"kind\":\"nope\"}").as_ptr(), &mut ring), FrobStatus::Input);
        let msg = CStr::from_ptr(frob_last_error_message()).to_str().unwrap();
        assert!(msg.contains("ring spec"), "{msg}");

        assert_eq!(frob_ring_from_json(ptr::null(), &mut ring), FrobStatus::NullPointer);
        assert_eq!(frob_ring_size(ptr::null(), ptr::null_mut()), FrobStatus::NullPointer);

        let big = c(r#"{"kind":"zn","n":100000}"#);
        assert_eq!(frob_ring_from_json(big.as_ptr(), &mut ring), FrobStatus::Resource);

        let bad_utf8 = [0xffu8, 0];
        assert_eq!(frob_ring_from_json(bad_utf8.as_ptr().cast(), &mut ring), FrobStatus::Utf8);

        // freeing null is a no-op
        frob_ring_free(ptr::null_mut());
        frob_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_valid_c() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/frobext.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["frob_ring_from_json", "frob_certify_json", "frob_last_error_message", "FROB_STATUS_PANIC"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", "-std=c99"])
        .arg(&header)
        .status()
    else {
        return; // no C compiler available
    };
    assert!(status.success());
}
