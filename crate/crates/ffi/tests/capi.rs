use std::ffi::{c_char, CStr, CString};
use std::ptr;

use tambara_ffi::*;

const FP_F4: &str = r#"{"schema": 1, "group": {"named": "C2"},
  "functor": {"fp": {"ring": {"kind": "Fq", "q": 4}, "action": [[0, 1, 2, 3], [0, 1, 3, 2]]}}}"#;
const COIND_F3: &str = r#"{"schema": 1, "group": {"named": "C2"},
  "functor": {"coind": {"from": "e", "functor": {"fp": {"ring": {"kind": "Fq", "q": 3}}}}}}"#;
const GREEN: &str = r#"{"schema": 1, "group": {"named": "C2"},
  "functor": {"green_example": {"ring": {"kind": "Fq", "q": 2}}}}"#;

fn load(json: &str) -> *mut TambaraFunctor {
    let text = CString::new(json).unwrap();
    let mut f = ptr::null_mut();
    let status = unsafe { tambara_functor_from_json(text.as_ptr(), &mut f) };
    assert_eq!(status, TambaraStatus::Ok, "{}", last_error());
    f
}

fn last_error() -> String {
    let p = tambara_last_error();
    if p.is_null() {
        String::new()
    } else {
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { tambara_string_free(s) };
    out
}

#[test]
fn check_and_level_sizes() {
    let f = load(FP_F4);
    let mut report = ptr::null_mut();
    let status = unsafe { tambara_functor_check(f, 2, &mut report) };
    assert_eq!(status, TambaraStatus::Ok);
    assert!(take(report).contains("pass  exponential formula"));
    let e = CString::new("e").unwrap();
    let g = CString::new("G").unwrap();
    let bad = CString::new("C3").unwrap();
    unsafe {
        assert_eq!(tambara_functor_level_size(f, e.as_ptr()), 4);
        assert_eq!(tambara_functor_level_size(f, g.as_ptr()), 2);
        assert_eq!(tambara_functor_level_size(f, bad.as_ptr()), 0);
        tambara_functor_free(f);
    }
}

#[test]
fn parse_errors_set_the_message() {
    let text = CString::new("{\"schema\": 3}").unwrap();
    let mut f = ptr::null_mut();
    let status = unsafe { tambara_functor_from_json(text.as_ptr(), &mut f) };
    assert_eq!(status, TambaraStatus::InputError);
    assert!(f.is_null());
    assert!(last_error().contains("malformed definition"));
    let status = unsafe { tambara_functor_from_json(ptr::null(), &mut f) };
    assert_eq!(status, TambaraStatus::NullArgument);
}

#[test]
fn decompose_round_trips_through_json() {
    let f = load(COIND_F3);
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { tambara_functor_decompose(f, &mut out) },
        TambaraStatus::Ok
    );
    let json = take(out);
    assert!(json.contains("\"kind\": \"decomposition\""));
    let g = load(&json);
    let mut iso = -1;
    assert_eq!(
        unsafe { tambara_functor_isomorphic(f, g, 1 << 20, &mut iso) },
        TambaraStatus::Ok
    );
    assert_eq!(iso, 1);
    unsafe {
        tambara_functor_free(g);
        tambara_functor_free(f);
    }
}

#[test]
fn clarify_to_zero_and_serialize() {
    let f = load(COIND_F3);
    let top = CString::new("C2").unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(
        unsafe { tambara_functor_clarify(f, top.as_ptr(), &mut q) },
        TambaraStatus::Ok
    );
    let e = CString::new("e").unwrap();
    assert_eq!(unsafe { tambara_functor_level_size(q, e.as_ptr()) }, 1);
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { tambara_functor_to_json(q, &mut out) },
        TambaraStatus::Ok
    );
    let back = load(&take(out));
    unsafe {
        tambara_functor_free(back);
        tambara_functor_free(q);
        tambara_functor_free(f);
    }
}

#[test]
fn green_functors_have_no_decomposition() {
    let f = load(GREEN);
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { tambara_functor_decompose(f, &mut out) },
        TambaraStatus::NoNorms
    );
    assert!(out.is_null());
    let mut lewis = ptr::null_mut();
    assert_eq!(
        unsafe { tambara_functor_lewis(f, &mut lewis) },
        TambaraStatus::Ok
    );
    assert!(take(lewis).starts_with("Green functor"));
    let mut iso = -1;
    let other = load(FP_F4);
    assert_eq!(
        unsafe { tambara_functor_isomorphic(f, other, 10, &mut iso) },
        TambaraStatus::Ok
    );
    assert_eq!(iso, 0);
    unsafe {
        tambara_functor_free(other);
        tambara_functor_free(f);
    }
}

#[test]
fn header_declares_the_api() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/tambara.h")).unwrap();
    for name in [
        "tambara_functor_from_json",
        "tambara_functor_free",
        "tambara_functor_check",
        "tambara_functor_decompose",
        "tambara_functor_clarify",
        "tambara_functor_isomorphic",
        "tambara_string_free",
        "tambara_last_error",
        "typedef struct TambaraFunctor TambaraFunctor;",
        "TAMBARA_STATUS_TIMEOUT = 5",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
