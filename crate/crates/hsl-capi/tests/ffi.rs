//! Exercises the C interface exactly as a C caller would: through the
//! exported symbols, raw pointers, and the documented ownership rules.

use std::ffi::{c_char, CStr, CString};

use hsl_capi::{
    hsl_eval, hsl_last_error, hsl_session_free, hsl_session_new, hsl_set_max_steps,
    hsl_string_free, hsl_version, HslStatus,
};

struct Session(*mut hsl_capi::HslSession);

impl Session {
    fn new() -> Session {
        let s = hsl_session_new();
        assert!(!s.is_null());
        Session(s)
    }
    fn eval(&self, script: &str) -> (HslStatus, Option<String>) {
        let src = CString::new(script).unwrap();
        let mut out: *mut c_char = std::ptr::null_mut();
        let status = unsafe { hsl_eval(self.0, src.as_ptr(), &mut out) };
        let json = if out.is_null() {
            None
        } else {
            let s = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
            unsafe { hsl_string_free(out) };
            Some(s)
        };
        (status, json)
    }
    fn last_error(&self) -> Option<String> {
        let p = unsafe { hsl_last_error(self.0) };
        if p.is_null() {
            None
        } else {
            Some(unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string())
        }
    }
}

impl Drop for Session {
    fn drop(&mut self) {
        unsafe { hsl_session_free(self.0) };
    }
}

#[test]
fn eval_returns_documents_as_json() {
    let s = Session::new();
    let (status, json) = s.eval(
        "ring R = F(32003)[x,y,u,v] / (x*u - y*v); theta(ideal(x,y), ideal(u,v));",
    );
    assert_eq!(status, HslStatus::HslOk);
    assert!(s.last_error().is_none());
    let v: serde_json::Value = serde_json::from_str(&json.expect("json")).unwrap();
    assert_eq!(v[0]["payload"]["kind"], "theta");
    assert_eq!(v[0]["payload"]["value"], 1);
}

#[test]
fn syntax_errors_set_status_and_message() {
    let s = Session::new();
    let (status, json) = s.eval("ring R = F(32003)[x,y] /");
    assert_eq!(status, HslStatus::HslErrSyntax);
    assert!(json.is_none());
    let msg = s.last_error().expect("message");
    assert!(msg.contains("line 1"), "{msg}");
}

#[test]
fn engine_errors_keep_partial_results() {
    let s = Session::new();
    let (status, json) = s.eval(
        "ring R = F(32003)[x,y,u,v] / (x*u - y*v);
         depth(free(1));
         decency(ideal(x), ideal(y));",
    );
    assert_eq!(status, HslStatus::HslErrEngine);
    let v: serde_json::Value = serde_json::from_str(&json.expect("partial json")).unwrap();
    let docs = v.as_array().unwrap();
    assert_eq!(docs.len(), 2);
    assert_eq!(docs[0]["payload"]["value"], 3);
    assert_eq!(docs[1]["payload"]["kind"], "error");
    assert!(s.last_error().is_some());
}

#[test]
fn null_arguments_are_rejected() {
    let s = Session::new();
    let src = CString::new("ring R = Q[x];").unwrap();
    let mut out: *mut c_char = std::ptr::null_mut();
    unsafe {
        assert_eq!(
            hsl_eval(std::ptr::null_mut(), src.as_ptr(), &mut out),
            HslStatus::HslErrNullArg
        );
        assert_eq!(hsl_eval(s.0, std::ptr::null(), &mut out), HslStatus::HslErrNullArg);
        assert_eq!(
            hsl_eval(s.0, src.as_ptr(), std::ptr::null_mut()),
            HslStatus::HslErrNullArg
        );
        assert_eq!(hsl_set_max_steps(std::ptr::null_mut(), 5), HslStatus::HslErrNullArg);
        // Freeing NULL is a no-op, as in free(3).
        hsl_string_free(std::ptr::null_mut());
        hsl_session_free(std::ptr::null_mut());
    }
}

#[test]
fn invalid_utf8_is_reported() {
    let s = Session::new();
    let bytes: &[u8] = b"ring R = Q[x]; \xFF\xFE\0";
    let mut out: *mut c_char = std::ptr::null_mut();
    let status = unsafe { hsl_eval(s.0, bytes.as_ptr() as *const c_char, &mut out) };
    assert_eq!(status, HslStatus::HslErrUtf8);
    assert!(out.is_null());
}

#[test]
fn step_budget_applies_per_session() {
    let s = Session::new();
    assert_eq!(unsafe { hsl_set_max_steps(s.0, 1) }, HslStatus::HslOk);
    let (status, _) = s.eval("ring R = F(32003)[x,y,u,v]; resolve(ideal(x,y,u,v), 5);");
    assert_eq!(status, HslStatus::HslErrEngine);
    assert!(s.last_error().unwrap().contains("step"), "{:?}", s.last_error());
    // Zero restores the default and the same script succeeds.
    assert_eq!(unsafe { hsl_set_max_steps(s.0, 0) }, HslStatus::HslOk);
    let (status, _) = s.eval("ring R = F(32003)[x,y,u,v]; resolve(ideal(x,y,u,v), 5);");
    assert_eq!(status, HslStatus::HslOk);
}

#[test]
fn version_matches_the_crate() {
    let v = unsafe { CStr::from_ptr(hsl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn generated_header_covers_the_surface() {
    let header = include_str!("../include/hsl.h");
    for needle in [
        "typedef struct HslSession HslSession",
        "HSL_OK = 0",
        "HSL_ERR_ENGINE = 1",
        "HSL_ERR_SYNTAX = 2",
        "HSL_ERR_NULL_ARG = 3",
        "HSL_ERR_UTF8 = 4",
        "HSL_ERR_PANIC = 5",
        "hsl_session_new",
        "hsl_session_free",
        "hsl_set_max_steps",
        "hsl_eval",
        "hsl_last_error",
        "hsl_string_free",
        "hsl_version",
    ] {
        assert!(header.contains(needle), "header is missing `{needle}`");
    }
}
