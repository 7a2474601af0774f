//! C interface to `partavoid`.
//!
//! Partitions are opaque heap handles. Every fallible call returns a
//! [`PaStatus`]; on failure [`pa_last_error`] describes what went wrong on the
//! calling thread. Strings handed out by the library are released with
//! [`pa_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use partavoid::enumeration::{count_by, EnumError, Method};
use partavoid::SetPartition;

/// Opaque set partition.
pub struct PaPartition(SetPartition);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaStatus {
    Ok = 0,
    NullPointer = 1,
    ParseError = 2,
    InvalidArgument = 3,
    MethodUnavailable = 4,
    Panic = 5,
}

pub const PA_METHOD_ORACLE: u32 = 0;
pub const PA_METHOD_FORMULA: u32 = 1;
pub const PA_METHOD_GF: u32 = 2;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn guard(f: impl FnOnce() -> Result<(), (PaStatus, String)>) -> PaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PaStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PaStatus::Panic
        }
    }
}

fn null(what: &str) -> (PaStatus, String) {
    (PaStatus::NullPointer, format!("{what} is null"))
}

unsafe fn partition<'a>(
    p: *const PaPartition,
    what: &str,
) -> Result<&'a SetPartition, (PaStatus, String)> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| null(what))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (PaStatus, String)> {
    let c = CString::new(s).map_err(|e| (PaStatus::InvalidArgument, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn put_partition(out: *mut *mut PaPartition, p: SetPartition) {
    *out = Box::into_raw(Box::new(PaPartition(p)));
}

/// The message for the last failed call on this thread, or an empty string.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn pa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `"1 3/2 4"` or `"13/24"`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pa_partition_parse(
    text: *const c_char,
    out: *mut *mut PaPartition,
) -> PaStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (PaStatus::ParseError, e.to_string()))?;
        let p: SetPartition = s
            .parse()
            .map_err(|e: partavoid::PartitionError| (PaStatus::ParseError, e.to_string()))?;
        put_partition(out, p);
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pa_partition_free(p: *mut PaPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Size of the ground set, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pa_partition_size(p: *const PaPartition) -> usize {
    p.as_ref().map_or(0, |h| h.0.n())
}

/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pa_partition_block_count(p: *const PaPartition) -> usize {
    p.as_ref().map_or(0, |h| h.0.block_count())
}

/// Spaced standard form, e.g. `"1 3/2 4"`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pa_partition_to_string(
    p: *const PaPartition,
    out: *mut *mut c_char,
) -> PaStatus {
    guard(|| {
        let p = partition(p, "partition")?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, p.to_string())
    })
}

/// Restricted growth word, e.g. `"1212"`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pa_partition_to_rgf(
    p: *const PaPartition,
    out: *mut *mut c_char,
) -> PaStatus {
    guard(|| {
        let p = partition(p, "partition")?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, p.to_rgf().to_string())
    })
}

/// Replaces every element `x` by `n + 1 - x`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pa_partition_complement(
    p: *const PaPartition,
    out: *mut *mut PaPartition,
) -> PaStatus {
    guard(|| {
        let p = partition(p, "partition")?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_partition(out, p.complement());
        Ok(())
    })
}

/// Sets `*out` to whether `sigma` contains `tau`.
///
/// # Safety
/// Both handles must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pa_contains(
    sigma: *const PaPartition,
    tau: *const PaPartition,
    out: *mut bool,
) -> PaStatus {
    guard(|| {
        let s = partition(sigma, "sigma")?;
        let t = partition(tau, "tau")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = partavoid::contains(s, t);
        Ok(())
    })
}

/// Number of partitions of `[n]` avoiding `tau`, as a decimal string.
/// `method` is one of the `PA_METHOD_*` constants; `shards` of 0 means 1.
///
/// # Safety
/// `tau` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pa_count_avoiders(
    tau: *const PaPartition,
    n: usize,
    method: u32,
    shards: usize,
    out: *mut *mut c_char,
) -> PaStatus {
    guard(|| {
        let t = partition(tau, "tau")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let method = match method {
            PA_METHOD_ORACLE => Method::Oracle,
            PA_METHOD_FORMULA => Method::Formula,
            PA_METHOD_GF => Method::Gf,
            other => return Err((PaStatus::InvalidArgument, format!("unknown method {other}"))),
        };
        let count = count_by(t, n, method, shards.max(1)).map_err(|e| match e {
            EnumError::MethodUnavailable { .. } => (PaStatus::MethodUnavailable, e.to_string()),
            other => (PaStatus::InvalidArgument, other.to_string()),
        })?;
        put_string(out, count.to_string())
    })
}
