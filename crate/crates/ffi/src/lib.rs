//! C ABI over the `vamz` library.
//!
//! States cross the boundary as opaque `VamzState` handles. Every function
//! returns a `VamzStatus`; results come back through out-pointers, which are
//! written only on success. On failure `vamz_last_error_message` describes the
//! error for the calling thread. Strings returned by the library must be
//! released with `vamz_string_free` and handles with `vamz_state_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vamz::classical::poly_monomial_mz_decide;
use vamz::fock::{apply_alpha, parse_state, translate_d, FockState};
use vamz::modes::{mode_product_oracle, virasoro_l, ModeEngine};
use vamz::setcalc::PeriodicSet;
use vamz::vamz::{fock_mz_decide, SubspaceSpec};
use vamz::zhu::zhu_star;
use vamz::Error;

/// Opaque handle to a state of the Fock space.
pub struct VamzState(FockState);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VamzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    WeightCapExceeded = 5,
    Io = 6,
    Panic = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(VamzStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => VamzStatus::ParseError,
            Error::WeightCapExceeded { .. } => VamzStatus::WeightCapExceeded,
            Error::InvalidArgument(_) => VamzStatus::InvalidArgument,
            Error::Io(_) => VamzStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> VamzStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            VamzStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            VamzStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(VamzStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(VamzStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn state<'a>(p: *const VamzState, what: &str) -> Result<&'a FockState, Failure> {
    p.as_ref().map(|s| &s.0).ok_or_else(|| null(what))
}

unsafe fn put_state(out: *mut *mut VamzState, s: FockState) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(VamzState(s)));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn vamz_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a state such as `a(-1)^2|0> - 1/2*a(-2)|0>`.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vamz_state_parse(text: *const c_char, out: *mut *mut VamzState) -> VamzStatus {
    guard(|| {
        let s = parse_state(read_text(text, "text")?)?;
        put_state(out, s)
    })
}

/// Canonical text of a state; free with `vamz_string_free`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vamz_state_format(s: *const VamzState, out: *mut *mut c_char) -> VamzStatus {
    guard(|| put_string(out, state(s, "state")?.to_string()))
}

/// Exact equality of two states.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vamz_state_equal(
    a: *const VamzState,
    b: *const VamzState,
    out: *mut bool,
) -> VamzStatus {
    guard(|| {
        let eq = state(a, "a")? == state(b, "b")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = eq;
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vamz_state_free(s: *mut VamzState) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be NULL or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vamz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `A(n)w` by the memoized recursion.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vamz_mode_product(
    a: *const VamzState,
    n: i64,
    w: *const VamzState,
    out: *mut *mut VamzState,
) -> VamzStatus {
    guard(|| {
        let r = ModeEngine::shared().mode_product(state(a, "A")?, n, state(w, "w")?);
        put_state(out, r)
    })
}

/// `A(n)w` by normal-ordered coefficient extraction.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vamz_mode_product_oracle(
    a: *const VamzState,
    n: i64,
    w: *const VamzState,
    out: *mut *mut VamzState,
) -> VamzStatus {
    guard(|| put_state(out, mode_product_oracle(state(a, "A")?, n, state(w, "w")?)))
}

/// `a(n)w`.
///
/// # Safety
/// `w` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vamz_apply_alpha(
    n: i64,
    w: *const VamzState,
    out: *mut *mut VamzState,
) -> VamzStatus {
    guard(|| put_state(out, apply_alpha(n, state(w, "w")?)))
}

/// `D w`.
///
/// # Safety
/// `w` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vamz_translate_d(w: *const VamzState, out: *mut *mut VamzState) -> VamzStatus {
    guard(|| put_state(out, translate_d(state(w, "w")?)))
}

/// `L(n) w`.
///
/// # Safety
/// `w` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vamz_virasoro_l(
    n: i64,
    w: *const VamzState,
    out: *mut *mut VamzState,
) -> VamzStatus {
    guard(|| put_state(out, virasoro_l(ModeEngine::shared(), n, state(w, "w")?)))
}

/// Zhu star product `a ⋆ b`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vamz_zhu_star(
    a: *const VamzState,
    b: *const VamzState,
    out: *mut *mut VamzState,
) -> VamzStatus {
    guard(|| put_state(out, zhu_star(ModeEngine::shared(), state(a, "a")?, state(b, "b")?)))
}

/// Mathieu-Zhao decision for a subspace spec such as
/// `lengths mod 3 in {1,2}`. Writes `{"reason", "verdict", "witness_d"?}`.
///
/// # Safety
/// `space` must be NUL-terminated; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vamz_mz_decide(space: *const c_char, out_json: *mut *mut c_char) -> VamzStatus {
    guard(|| {
        let spec = SubspaceSpec::parse(read_text(space, "space")?)?;
        let v = fock_mz_decide(&spec);
        put_string(out_json, serde_json::to_string(&v).expect("verdict serializes"))
    })
}

/// Same decision for a set such as `mod 2 in {0}`.
///
/// # Safety
/// `set` must be NUL-terminated; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vamz_set_mz_decide(set: *const c_char, out_json: *mut *mut c_char) -> VamzStatus {
    guard(|| {
        let s = PeriodicSet::parse(read_text(set, "set")?)?;
        let v = poly_monomial_mz_decide(&s);
        put_string(out_json, serde_json::to_string(&v).expect("verdict serializes"))
    })
}
