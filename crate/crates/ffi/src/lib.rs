//! C interface to `lieposet`.
//!
//! Objects are opaque handles released with their `_free` function. Every
//! fallible call returns an [`LpStatus`]; on failure the message is available
//! from [`lp_last_error`] on the same thread until the next failing call.
//! Strings returned to the caller are released with [`lp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lieposet::invariants::{index_oracle, InvariantError};
use lieposet::report::{analyze, ClassificationReport, Settings};
use lieposet::{Family, PosetError, SignedPoset};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidPoset = 3,
    HeightError = 4,
    Inconsistency = 5,
    InvalidArgument = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpFamily {
    B = 0,
    C = 1,
    D = 2,
}

impl From<LpFamily> for Family {
    fn from(f: LpFamily) -> Self {
        match f {
            LpFamily::B => Family::B,
            LpFamily::C => Family::C,
            LpFamily::D => Family::D,
        }
    }
}

/// A validated signed poset.
pub struct LpPoset(SignedPoset);

/// A classification report.
pub struct LpReport(ClassificationReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: LpStatus, msg: impl Into<String>) -> LpStatus {
    set_error(msg);
    status
}

fn invariant_status(e: InvariantError) -> LpStatus {
    let status = match e {
        InvariantError::HeightError(_) => LpStatus::HeightError,
        InvariantError::Inconsistency(_) => LpStatus::Inconsistency,
        _ => LpStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn poset_status(e: PosetError) -> LpStatus {
    fail(LpStatus::InvalidPoset, e.to_string())
}

fn guard(f: impl FnOnce() -> LpStatus) -> LpStatus {
    catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| fail(LpStatus::Panic, "panic inside lieposet"))
}

/// Message for the last failing call on this thread, or null. Owned by the
/// library.
#[no_mangle]
pub extern "C" fn lp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn lp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parse `{"family": "C", "n": 3, "relations": [[-1, 2], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_poset_from_json(
    json: *const c_char,
    out: *mut *mut LpPoset,
) -> LpStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return fail(LpStatus::NullArgument, "null argument");
        }
        let text = match CStr::from_ptr(json).to_str() {
            Ok(t) => t,
            Err(e) => return fail(LpStatus::InvalidUtf8, e.to_string()),
        };
        match SignedPoset::from_json(text) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(LpPoset(p)));
                LpStatus::Ok
            }
            Err(e) => poset_status(e),
        }
    })
}

/// Build from `pair_count` generator pairs stored flat in `pairs`
/// (`x0, y0, x1, y1, ...`, each meaning `x ≺ y`).
///
/// # Safety
/// `pairs` must point to `2 * pair_count` integers (or be null when
/// `pair_count` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_poset_new(
    family: LpFamily,
    n: usize,
    pairs: *const i32,
    pair_count: usize,
    out: *mut *mut LpPoset,
) -> LpStatus {
    guard(|| {
        if out.is_null() || (pairs.is_null() && pair_count > 0) {
            return fail(LpStatus::NullArgument, "null argument");
        }
        let flat: &[i32] = if pair_count == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(pairs, 2 * pair_count)
        };
        let gens: Vec<(i32, i32)> = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        match SignedPoset::from_generators(family.into(), n, &gens) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(LpPoset(p)));
                LpStatus::Ok
            }
            Err(e) => poset_status(e),
        }
    })
}

/// # Safety
/// `p` must come from this library and not be used afterwards. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn lp_poset_free(p: *mut LpPoset) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Height of the poset (longest chain length minus one).
///
/// # Safety
/// `p` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_poset_height(p: *const LpPoset) -> usize {
    p.as_ref().map_or(0, |p| p.0.height())
}

/// Number of strict relations.
///
/// # Safety
/// `p` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_poset_relation_count(p: *const LpPoset) -> usize {
    p.as_ref().map_or(0, |p| p.0.relation_count())
}

/// Sampled index with `samples` random functionals mod `prime`.
///
/// # Safety
/// `p` must be a live handle, `out_dim` and `out_index` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_index(
    p: *const LpPoset,
    samples: usize,
    prime: u64,
    seed: u64,
    out_dim: *mut usize,
    out_index: *mut usize,
) -> LpStatus {
    guard(|| {
        let Some(p) = p.as_ref() else {
            return fail(LpStatus::NullArgument, "null poset");
        };
        if out_dim.is_null() || out_index.is_null() {
            return fail(LpStatus::NullArgument, "null output");
        }
        let settings = Settings {
            samples,
            prime,
            seed,
            ..Settings::default()
        };
        if let Err(m) = settings.validate() {
            return fail(LpStatus::InvalidArgument, m);
        }
        match index_oracle(&p.0, samples, prime, &mut settings.rng()) {
            Ok(r) => {
                *out_dim = r.dim;
                *out_index = r.oracle;
                LpStatus::Ok
            }
            Err(e) => invariant_status(e),
        }
    })
}

/// Full classification with default sampling and the given seed.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_analyze(
    p: *const LpPoset,
    seed: u64,
    out: *mut *mut LpReport,
) -> LpStatus {
    guard(|| {
        let Some(p) = p.as_ref() else {
            return fail(LpStatus::NullArgument, "null poset");
        };
        if out.is_null() {
            return fail(LpStatus::NullArgument, "null output");
        }
        match analyze(&p.0, &Settings::default().with_seed(seed)) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(LpReport(r)));
                LpStatus::Ok
            }
            Err(e) => invariant_status(e),
        }
    })
}

/// # Safety
/// `r` must come from [`lp_analyze`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lp_report_free(r: *mut LpReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_report_dim(r: *const LpReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.dim)
}

/// # Safety
/// `r` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_report_index(r: *const LpReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.index)
}

/// # Safety
/// `r` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_report_frobenius(r: *const LpReport) -> bool {
    r.as_ref().is_some_and(|r| r.0.frobenius)
}

/// 1 contact, 0 not contact, -1 not decided (height above one).
///
/// # Safety
/// `r` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_report_contact(r: *const LpReport) -> i32 {
    match r.as_ref().and_then(|r| r.0.contact) {
        Some(true) => 1,
        Some(false) => 0,
        None => -1,
    }
}

/// Report as JSON; release with [`lp_string_free`]. Null on a null handle.
///
/// # Safety
/// `r` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_report_to_json(r: *const LpReport) -> *mut c_char {
    let Some(r) = r.as_ref() else {
        set_error("null report");
        return ptr::null_mut();
    };
    let json = serde_json::to_string(&r.0).expect("report serializes");
    CString::new(json).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `s` must come from this library. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn lp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
