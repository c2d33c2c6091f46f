//! C ABI for `tambara-core`.
//!
//! Functors are opaque `TambaraFunctor` handles built from schema-1 JSON.
//! Every fallible call returns a `TambaraStatus`; on failure the message is
//! available from `tambara_last_error` on the same thread. Strings returned
//! through `out` parameters are owned by the caller and released with
//! `tambara_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use tambara_core::decompose::{clarify, full_decomposition};
use tambara_core::functors::{check_axioms, functor_isomorphism, CheckConfig, TambaraData};
use tambara_core::io;
use tambara_core::lewis::lewis_diagram;
use tambara_core::Error;

/// Status codes; the nonzero values match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TambaraStatus {
    Ok = 0,
    InputError = 1,
    AxiomFailure = 2,
    NoNorms = 3,
    NotChain = 4,
    Timeout = 5,
    NullArgument = 6,
    Panic = 7,
}

/// Opaque functor handle.
pub struct TambaraFunctor {
    inner: Arc<TambaraData>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(e: Error) -> TambaraStatus {
    let status = match e.code() {
        2 => TambaraStatus::AxiomFailure,
        3 => TambaraStatus::NoNorms,
        4 => TambaraStatus::NotChain,
        5 => TambaraStatus::Timeout,
        _ => TambaraStatus::InputError,
    };
    set_error(e.to_string());
    status
}

fn guard(f: impl FnOnce() -> TambaraStatus) -> TambaraStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        TambaraStatus::Panic
    })
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, TambaraStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(TambaraStatus::NullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        TambaraStatus::InputError
    })
}

unsafe fn handle<'a>(f: *const TambaraFunctor) -> Result<&'a TambaraFunctor, TambaraStatus> {
    f.as_ref().ok_or_else(|| {
        set_error("null functor handle");
        TambaraStatus::NullArgument
    })
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> TambaraStatus {
    if out.is_null() {
        set_error("null output pointer");
        return TambaraStatus::NullArgument;
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    TambaraStatus::Ok
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message for the last failed call on this thread, or null.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn tambara_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a schema-1 definition.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tambara_functor_from_json(
    json: *const c_char,
    out: *mut *mut TambaraFunctor,
) -> TambaraStatus {
    guard(|| {
        let text = try_status!(read_str(json));
        if out.is_null() {
            set_error("null output pointer");
            return TambaraStatus::NullArgument;
        }
        match io::parse_functor(text) {
            Ok(t) => {
                *out = Box::into_raw(Box::new(TambaraFunctor { inner: Arc::new(t) }));
                TambaraStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `f` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tambara_functor_free(f: *mut TambaraFunctor) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `s` must come from this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tambara_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Explicit schema-1 JSON for the functor.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tambara_functor_to_json(
    f: *const TambaraFunctor,
    out: *mut *mut c_char,
) -> TambaraStatus {
    guard(|| {
        let f = try_status!(handle(f));
        put_string(out, io::functor_to_json(&f.inner))
    })
}

/// Number of elements of the level at `subgroup`, or 0 if the id does not
/// name a subgroup of the base.
///
/// # Safety
/// `f` must be a live handle and `subgroup` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn tambara_functor_level_size(
    f: *const TambaraFunctor,
    subgroup: *const c_char,
) -> usize {
    let (Ok(f), Ok(id)) = (handle(f), read_str(subgroup)) else {
        return 0;
    };
    let t = &f.inner;
    match t.group().resolve(id) {
        Ok(h) if t.group().is_subgroup(h, t.base()) => t.level(h).size(),
        _ => 0,
    }
}

/// Runs every axiom family. Returns `Ok` or `AxiomFailure`; the per-family
/// report is written to `report` either way.
///
/// # Safety
/// `f` must be a live handle and `report` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tambara_functor_check(
    f: *const TambaraFunctor,
    fiber_bound: usize,
    report: *mut *mut c_char,
) -> TambaraStatus {
    guard(|| {
        let f = try_status!(handle(f));
        let config = CheckConfig {
            fiber_bound,
            ..CheckConfig::default()
        };
        let r = check_axioms(&f.inner, &config);
        let status = put_string(report, r.to_string());
        if status != TambaraStatus::Ok {
            return status;
        }
        match r.first_failure() {
            None => TambaraStatus::Ok,
            Some(fam) => {
                set_error(format!(
                    "{}: {}",
                    fam.family,
                    fam.witness.as_deref().unwrap_or("")
                ));
                TambaraStatus::AxiomFailure
            }
        }
    })
}

/// Product decomposition as schema-1 JSON with a `witness` block.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tambara_functor_decompose(
    f: *const TambaraFunctor,
    out: *mut *mut c_char,
) -> TambaraStatus {
    guard(|| {
        let f = try_status!(handle(f));
        match full_decomposition(&f.inner) {
            Ok(dec) => put_string(out, io::to_json(&io::decomposition_document(&dec))),
            Err(e) => fail(e),
        }
    })
}

/// Clarification at `lambda` (`"all"` or a subgroup id) as a new handle.
///
/// # Safety
/// `f` must be a live handle, `lambda` a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tambara_functor_clarify(
    f: *const TambaraFunctor,
    lambda: *const c_char,
    out: *mut *mut TambaraFunctor,
) -> TambaraStatus {
    guard(|| {
        let f = try_status!(handle(f));
        let id = try_status!(read_str(lambda));
        if out.is_null() {
            set_error("null output pointer");
            return TambaraStatus::NullArgument;
        }
        let result = io::parse_lambda(&f.inner, id).and_then(|set| clarify(&f.inner, &set));
        match result {
            Ok((q, _)) => {
                *out = Box::into_raw(Box::new(TambaraFunctor { inner: Arc::new(q) }));
                TambaraStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Lewis diagram over the subgroup chain of the base.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tambara_functor_lewis(
    f: *const TambaraFunctor,
    out: *mut *mut c_char,
) -> TambaraStatus {
    guard(|| {
        let f = try_status!(handle(f));
        match lewis_diagram(&f.inner, None) {
            Ok(s) => put_string(out, s),
            Err(e) => fail(e),
        }
    })
}

/// Sets `*isomorphic` to 1 if an isomorphism `a → b` exists within `budget`
/// search nodes and to 0 otherwise.
///
/// # Safety
/// `a` and `b` must be live handles and `isomorphic` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tambara_functor_isomorphic(
    a: *const TambaraFunctor,
    b: *const TambaraFunctor,
    budget: u64,
    isomorphic: *mut i32,
) -> TambaraStatus {
    guard(|| {
        let a = try_status!(handle(a));
        let b = try_status!(handle(b));
        if isomorphic.is_null() {
            set_error("null output pointer");
            return TambaraStatus::NullArgument;
        }
        let (s, t) = (&a.inner, &b.inner);
        if **s.group() != **t.group() || s.base() != t.base() || s.has_norms() != t.has_norms() {
            *isomorphic = 0;
            return TambaraStatus::Ok;
        }
        match functor_isomorphism(s, t, budget) {
            Ok(m) => {
                *isomorphic = m.is_some() as i32;
                TambaraStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
