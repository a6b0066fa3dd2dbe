//! C ABI over `rcat`. Every fallible call returns an [`RcatStatus`]; on failure
//! [`rcat_last_error`] describes what went wrong on the calling thread.
//!
//! Handles are opaque and owned by the caller once returned; release them with
//! the matching `_free` function. Strings returned by the library are released
//! with [`rcat_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rcat::lattice_paths::{catalan, DyckPath, Slope};
use rcat::parking::{character, predicted_character, Permutation};
use rcat::qseries::{catalan_instance, csp_verify};
use rcat::rational_nc::{
    enumerate_nc, is_member_kreweras, is_member_rank_orbit, is_member_reconstruction, partition_of_path, rank_sequence,
};
use rcat::set_partitions::SetPartition;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RcatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidSlope = 3,
    InvalidPartition = 4,
    InvalidPath = 5,
    InvalidArgument = 6,
    BufferTooSmall = 7,
    Overflow = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RcatMethod {
    Reconstruction = 0,
    Kreweras = 1,
    RankOrbit = 2,
}

/// A set partition of `[n]`.
pub struct RcatPartition(SetPartition);

/// A rational Dyck path.
pub struct RcatPath(DyckPath);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

type Failure = (RcatStatus, String);

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, records any failure, and never lets a panic cross the boundary.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RcatStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RcatStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            RcatStatus::Panic
        }
    }
}

fn slope(a: u32, b: u32) -> Result<Slope, Failure> {
    Slope::proper(a, b).map_err(|e| (RcatStatus::InvalidSlope, e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or((RcatStatus::NullPointer, "null pointer argument".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err((RcatStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

fn partition_err(e: impl ToString) -> Failure {
    (RcatStatus::InvalidPartition, e.to_string())
}

/// The message for the most recent failure on this thread, or null. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rcat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rcat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `Cat(a,b)` for coprime `a, b`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rcat_catalan(a: u32, b: u32, out: *mut u64) -> RcatStatus {
    guard(|| {
        let s = Slope::new(a, b).map_err(|e| (RcatStatus::InvalidSlope, e.to_string()))?;
        let v = u64::try_from(catalan(s)).map_err(|_| (RcatStatus::Overflow, "Cat(a,b) exceeds 64 bits".into()))?;
        write_out(out, v)
    })
}

/// `|NC(a,b)|` by enumeration.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rcat_nc_count(a: u32, b: u32, out: *mut u64) -> RcatStatus {
    guard(|| {
        let all = enumerate_nc(slope(a, b)?).map_err(|e| (RcatStatus::InvalidSlope, e.to_string()))?;
        write_out(out, all.len() as u64)
    })
}

/// Parses a partition such as `"1,3,7|2|4,5,6"`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rcat_partition_parse(text: *const c_char, out: *mut *mut RcatPartition) -> RcatStatus {
    guard(|| {
        if text.is_null() {
            return Err((RcatStatus::NullPointer, "null text".into()));
        }
        let text = CStr::from_ptr(text).to_str().map_err(|e| (RcatStatus::InvalidUtf8, e.to_string()))?;
        let p: SetPartition = text.parse().map_err(partition_err)?;
        write_out(out, Box::into_raw(Box::new(RcatPartition(p))))
    })
}

/// # Safety
/// `p` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn rcat_partition_free(p: *mut RcatPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// The canonical text form; free with `rcat_string_free`.
///
/// # Safety
/// `p` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rcat_partition_to_string(p: *const RcatPartition, out: *mut *mut c_char) -> RcatStatus {
    guard(|| {
        let p = deref(p)?;
        let s = CString::new(p.0.to_string()).expect("partition text has no nuls");
        write_out(out, s.into_raw())
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rcat_partition_num_blocks(p: *const RcatPartition, out: *mut usize) -> RcatStatus {
    guard(|| write_out(out, deref(p)?.0.num_blocks()))
}

/// Kreweras complement of a noncrossing partition.
///
/// # Safety
/// `p` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rcat_partition_kreweras(p: *const RcatPartition, out: *mut *mut RcatPartition) -> RcatStatus {
    guard(|| {
        let k = deref(p)?.0.kreweras().map_err(partition_err)?;
        write_out(out, Box::into_raw(Box::new(RcatPartition(k))))
    })
}

/// Rotation `i -> i + k` modulo `n`; negative `k` rotates backwards.
///
/// # Safety
/// `p` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rcat_partition_rotate(p: *const RcatPartition, k: i64, out: *mut *mut RcatPartition) -> RcatStatus {
    guard(|| {
        let r = deref(p)?.0.rotate_by(k);
        write_out(out, Box::into_raw(Box::new(RcatPartition(r))))
    })
}

/// Membership of a partition of `[b-1]` in `NC(a,b)`.
///
/// # Safety
/// `p` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rcat_is_member(
    p: *const RcatPartition,
    a: u32,
    b: u32,
    method: RcatMethod,
    out: *mut bool,
) -> RcatStatus {
    guard(|| {
        let p = &deref(p)?.0;
        let s = slope(a, b)?;
        let v = match method {
            RcatMethod::Reconstruction => is_member_reconstruction(p, s),
            RcatMethod::Kreweras => is_member_kreweras(p, s),
            RcatMethod::RankOrbit => is_member_rank_orbit(p, s),
        }
        .map_err(partition_err)?;
        write_out(out, v)
    })
}

/// Writes the rank sequence (length `b - 1`) of a member partition into `buf`.
///
/// # Safety
/// `p` must be a live handle; `buf` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn rcat_rank_sequence(p: *const RcatPartition, a: u32, b: u32, buf: *mut u32, len: usize) -> RcatStatus {
    guard(|| {
        let seq = rank_sequence(&deref(p)?.0, slope(a, b)?).map_err(partition_err)?;
        if buf.is_null() {
            return Err((RcatStatus::NullPointer, "null buffer".into()));
        }
        if len < seq.entries.len() {
            return Err((RcatStatus::BufferTooSmall, format!("need {} entries", seq.entries.len())));
        }
        ptr::copy_nonoverlapping(seq.entries.as_ptr(), buf, seq.entries.len());
        Ok(())
    })
}

/// A Dyck path from its run vector (`runs[x]` north steps in column `x`).
///
/// # Safety
/// `runs` must be valid for `len` reads; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rcat_path_new(a: u32, b: u32, runs: *const u32, len: usize, out: *mut *mut RcatPath) -> RcatStatus {
    guard(|| {
        let s = Slope::new(a, b).map_err(|e| (RcatStatus::InvalidSlope, e.to_string()))?;
        if runs.is_null() && len > 0 {
            return Err((RcatStatus::NullPointer, "null runs".into()));
        }
        let runs = if len == 0 { &[][..] } else { std::slice::from_raw_parts(runs, len) };
        let path = DyckPath::new(s, runs).map_err(|e| (RcatStatus::InvalidPath, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(RcatPath(path))))
    })
}

/// # Safety
/// `p` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn rcat_path_free(p: *mut RcatPath) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// The laser partition of a path with `a < b`.
///
/// # Safety
/// `path` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rcat_path_partition(path: *const RcatPath, out: *mut *mut RcatPartition) -> RcatStatus {
    guard(|| {
        let p = partition_of_path(&deref(path)?.0).map_err(|e| (RcatStatus::InvalidSlope, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(RcatPartition(p))))
    })
}

/// Runs the Catalan cyclic sieving check; `out` receives the verdict.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rcat_csp_catalan(a: u32, b: u32, out: *mut bool) -> RcatStatus {
    guard(|| {
        let inst = catalan_instance(slope(a, b)?).map_err(|e| (RcatStatus::InvalidArgument, e.to_string()))?;
        let report = csp_verify(&inst).map_err(|e| (RcatStatus::InvalidArgument, e.to_string()))?;
        write_out(out, report.pass)
    })
}

/// Brute and predicted parking character at `(w, g^d)`; `w` is one-line notation on `[a]`.
///
/// # Safety
/// `w` must be valid for `len` reads; both outputs must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rcat_park_character(
    a: u32,
    b: u32,
    w: *const u32,
    len: usize,
    d: u32,
    brute: *mut u64,
    predicted: *mut u64,
) -> RcatStatus {
    guard(|| {
        let s = slope(a, b)?;
        if w.is_null() {
            return Err((RcatStatus::NullPointer, "null permutation".into()));
        }
        let arg = |e: rcat::parking::ParkingError| (RcatStatus::InvalidArgument, e.to_string());
        let perm = Permutation::new(std::slice::from_raw_parts(w, len).to_vec()).map_err(arg)?;
        let x = character(s, &perm, d).map_err(arg)?;
        let y = predicted_character(s, &perm, d).map_err(arg)?;
        write_out(brute, x)?;
        write_out(predicted, y)
    })
}
