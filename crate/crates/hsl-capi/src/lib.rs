//! C interface to the engine: an opaque session, status codes, and one
//! entry point that evaluates a script and returns the result documents
//! as a JSON array. All strings are UTF-8, NUL-terminated, and owned by
//! the side that allocated them: strings returned through `out_json` must
//! be released with `hsl_string_free`, never with `free(3)`.
//!
//! Every call is panic-safe: a panic inside the engine is caught and
//! reported as `HSL_ERR_PANIC` instead of unwinding across the boundary.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hsl_core::script::{parse_script, run_script, RunOptions};

/// Status of a C-interface call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HslStatus {
    /// Success.
    HslOk = 0,
    /// The script ran into an engine-level failure; partial results (ending
    /// with an error document) are still returned.
    HslErrEngine = 1,
    /// The script does not parse; details via `hsl_last_error`.
    HslErrSyntax = 2,
    /// A required pointer argument was NULL.
    HslErrNullArg = 3,
    /// The script bytes are not valid UTF-8.
    HslErrUtf8 = 4,
    /// An internal panic was caught at the boundary.
    HslErrPanic = 5,
}

/// Opaque evaluation session. Holds options and the last error message.
pub struct HslSession {
    max_steps: Option<u64>,
    last_error: Option<CString>,
}

fn set_error(session: &mut HslSession, msg: String) {
    let cleaned: String = msg.chars().filter(|c| *c != '\0').collect();
    session.last_error = CString::new(cleaned).ok();
}

/// Creates a session. Never returns NULL; release with `hsl_session_free`.
#[no_mangle]
pub extern "C" fn hsl_session_new() -> *mut HslSession {
    Box::into_raw(Box::new(HslSession { max_steps: None, last_error: None }))
}

/// Releases a session created by `hsl_session_new`. NULL is a no-op.
///
/// # Safety
/// `session` must be a pointer returned by `hsl_session_new` that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn hsl_session_free(session: *mut HslSession) {
    if !session.is_null() {
        drop(unsafe { Box::from_raw(session) });
    }
}

/// Sets the Groebner pair-step budget for subsequent evaluations
/// (0 restores the default).
///
/// # Safety
/// `session` must be a live session pointer.
#[no_mangle]
pub unsafe extern "C" fn hsl_set_max_steps(session: *mut HslSession, n: u64) -> HslStatus {
    let Some(session) = (unsafe { session.as_mut() }) else {
        return HslStatus::HslErrNullArg;
    };
    session.max_steps = if n == 0 { None } else { Some(n) };
    HslStatus::HslOk
}

/// Evaluates a script. On `HSL_OK` and `HSL_ERR_ENGINE`, `*out_json`
/// receives a newly allocated JSON array of result documents (free it
/// with `hsl_string_free`); on other statuses it is set to NULL.
///
/// # Safety
/// `session` must be a live session pointer, `script` a NUL-terminated
/// string, and `out_json` a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn hsl_eval(
    session: *mut HslSession,
    script: *const c_char,
    out_json: *mut *mut c_char,
) -> HslStatus {
    let Some(out_slot) = (unsafe { out_json.as_mut() }) else {
        return HslStatus::HslErrNullArg;
    };
    *out_slot = std::ptr::null_mut();
    let Some(session) = (unsafe { session.as_mut() }) else {
        return HslStatus::HslErrNullArg;
    };
    session.last_error = None;
    if script.is_null() {
        set_error(session, "script pointer is NULL".into());
        return HslStatus::HslErrNullArg;
    }
    let bytes = unsafe { CStr::from_ptr(script) };
    let Ok(source) = bytes.to_str() else {
        set_error(session, "script is not valid UTF-8".into());
        return HslStatus::HslErrUtf8;
    };
    let max_steps = session.max_steps;
    let result = catch_unwind(AssertUnwindSafe(|| {
        let parsed = match parse_script(source) {
            Ok(p) => p,
            Err(e) => return Err((HslStatus::HslErrSyntax, e.to_string())),
        };
        let opts = RunOptions { max_steps, ..RunOptions::default() };
        let outcome = run_script(&parsed, &opts);
        let docs: Vec<serde_json::Value> =
            outcome.documents.iter().map(|d| d.to_value()).collect();
        let json = serde_json::Value::Array(docs).to_string();
        match outcome.error {
            None => Ok((HslStatus::HslOk, json, None)),
            Some(e) => {
                let status = if e.is_syntax() {
                    HslStatus::HslErrSyntax
                } else {
                    HslStatus::HslErrEngine
                };
                Ok((status, json, Some(e.to_string())))
            }
        }
    }));
    match result {
        Ok(Ok((status, json, err))) => {
            if let Some(err) = err {
                set_error(session, err);
            }
            match CString::new(json.replace('\0', "")) {
                Ok(c) => {
                    *out_slot = c.into_raw();
                    status
                }
                Err(_) => {
                    set_error(session, "result could not be encoded".into());
                    HslStatus::HslErrPanic
                }
            }
        }
        Ok(Err((status, msg))) => {
            set_error(session, msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic in engine".into());
            set_error(session, msg);
            HslStatus::HslErrPanic
        }
    }
}

/// The last error message of this session, or NULL when the previous call
/// succeeded. The pointer is owned by the session and is valid until the
/// next call on it.
///
/// # Safety
/// `session` must be a live session pointer.
#[no_mangle]
pub unsafe extern "C" fn hsl_last_error(session: *const HslSession) -> *const c_char {
    match unsafe { session.as_ref() }.and_then(|s| s.last_error.as_ref()) {
        Some(msg) => msg.as_ptr(),
        None => std::ptr::null(),
    }
}

/// Releases a string returned through `out_json`. NULL is a no-op.
///
/// # Safety
/// `s` must be a pointer produced by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn hsl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Engine version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hsl_version() -> *const c_char {
    // A static with a trailing NUL keeps this allocation-free.
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
