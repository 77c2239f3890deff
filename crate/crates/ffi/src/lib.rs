//! C ABI for `opineq`.
//!
//! Matrices cross the boundary as opaque handles built from row-major
//! interleaved `(re, im)` doubles. Every entry point returns an
//! [`OpineqStatus`]; on failure the message is kept per thread and can be read
//! with [`opineq_last_error_message`]. Panics never unwind into C.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use opineq::{BoundId, ComplexMatrix, Error, ToleranceConfig, C64};

/// Status codes returned by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpineqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NumericalFailure = 4,
    UnknownBound = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Opaque dense complex matrix.
pub struct OpineqMatrix {
    inner: ComplexMatrix,
}

/// Numerical thresholds; see `opineq_default_tolerances`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpineqTolerances {
    pub eig_tol: f64,
    pub radius_tol: f64,
    pub slack_tol: f64,
}

/// Certified enclosure `lower <= w(T) <= upper`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OpineqRadius {
    pub lower: f64,
    pub upper: f64,
    pub theta_star: f64,
    pub evaluations: u64,
    /// 1 if the requested width was reached.
    pub converged: i32,
}

/// One evaluated inequality `lhs <= rhs`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OpineqBoundResult {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub normalized_slack: f64,
    /// 1 if the inequality holds within tolerance.
    pub holds: i32,
}

impl From<ToleranceConfig> for OpineqTolerances {
    fn from(c: ToleranceConfig) -> Self {
        Self {
            eig_tol: c.eig_tol,
            radius_tol: c.radius_tol,
            slack_tol: c.slack_tol,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

struct Failure(OpineqStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::DimensionMismatch(_) | Error::NotSquare { .. } | Error::Arity { .. } | Error::BadLength { .. } => {
                OpineqStatus::DimensionMismatch
            }
            Error::NoConvergence { .. } | Error::NotHermitian { .. } | Error::NotPsd { .. } => {
                OpineqStatus::NumericalFailure
            }
            Error::UnknownBound(_) => OpineqStatus::UnknownBound,
            _ => OpineqStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(OpineqStatus::NullPointer, format!("`{what}` is null"))
}

/// Runs `f`, records any failure and converts panics to `Panic`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> OpineqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            OpineqStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            OpineqStatus::Panic
        }
    }
}

unsafe fn matrix_ref<'a>(m: *const OpineqMatrix, what: &str) -> Result<&'a ComplexMatrix, Failure> {
    m.as_ref().map(|m| &m.inner).ok_or_else(|| null(what))
}

unsafe fn tolerances(tol: *const OpineqTolerances) -> Result<ToleranceConfig, Failure> {
    match tol.as_ref() {
        None => Ok(ToleranceConfig::default()),
        Some(t) => Ok(ToleranceConfig::new(t.eig_tol, t.radius_tol, t.slack_tol)?),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn opineq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Default thresholds: `eig_tol = 1e-12`, `radius_tol = 1e-8`, `slack_tol = 1e-7`.
#[no_mangle]
pub extern "C" fn opineq_default_tolerances() -> OpineqTolerances {
    ToleranceConfig::default().into()
}

/// Copies the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `capacity - 1` bytes). Returns the full message length
/// excluding the terminator; 0 means the last call succeeded.
///
/// # Safety
/// `buf` must be null or valid for `capacity` bytes of writes.
#[no_mangle]
pub unsafe extern "C" fn opineq_last_error_message(buf: *mut c_char, capacity: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && capacity > 0 {
            let n = msg.len().min(capacity - 1);
            ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Builds a `rows x cols` matrix from `2 * rows * cols` doubles laid out
/// row-major as `re, im, re, im, ...`. On success `*out` owns the handle.
///
/// # Safety
/// `entries` must be valid for `2 * rows * cols` reads; `out` must be valid
/// for one write.
#[no_mangle]
pub unsafe extern "C" fn opineq_matrix_new(
    rows: usize,
    cols: usize,
    entries: *const f64,
    out: *mut *mut OpineqMatrix,
) -> OpineqStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        if entries.is_null() {
            return Err(null("entries"));
        }
        let len = rows
            .checked_mul(cols)
            .and_then(|n| n.checked_mul(2))
            .ok_or_else(|| Failure(OpineqStatus::InvalidArgument, format!("{rows}x{cols} overflows")))?;
        let raw = std::slice::from_raw_parts(entries, len);
        let data = raw.chunks_exact(2).map(|c| C64::new(c[0], c[1])).collect();
        let inner = ComplexMatrix::new(rows, cols, data)?;
        *out = Box::into_raw(Box::new(OpineqMatrix { inner }));
        Ok(())
    })
}

/// Releases a handle. Null is a no-op.
///
/// # Safety
/// `m` must be null or a handle from `opineq_matrix_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn opineq_matrix_free(m: *mut OpineqMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Writes the matrix shape.
///
/// # Safety
/// `m` must be a live handle; `rows` and `cols` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn opineq_matrix_shape(
    m: *const OpineqMatrix,
    rows: *mut usize,
    cols: *mut usize,
) -> OpineqStatus {
    guard(|| {
        let a = matrix_ref(m, "m")?;
        if rows.is_null() {
            return Err(null("rows"));
        }
        if cols.is_null() {
            return Err(null("cols"));
        }
        *rows = a.rows();
        *cols = a.cols();
        Ok(())
    })
}

/// Spectral norm `||T||`.
///
/// # Safety
/// `m` must be a live handle; `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn opineq_operator_norm(m: *const OpineqMatrix, out: *mut f64) -> OpineqStatus {
    guard(|| {
        let a = matrix_ref(m, "m")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = opineq::operator_norm(a);
        Ok(())
    })
}

/// Singular values in non-increasing order. `*written` receives the count
/// (`min(rows, cols)`) even when `capacity` is too small.
///
/// # Safety
/// `m` must be a live handle; `buf` must be valid for `capacity` writes;
/// `written` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn opineq_singular_values(
    m: *const OpineqMatrix,
    buf: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> OpineqStatus {
    guard(|| {
        let a = matrix_ref(m, "m")?;
        if written.is_null() {
            return Err(null("written"));
        }
        let s = opineq::singular_values(a);
        *written = s.len();
        if capacity < s.len() {
            return Err(Failure(
                OpineqStatus::BufferTooSmall,
                format!("need {} slots, got {capacity}", s.len()),
            ));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(s.as_ptr(), buf, s.len());
        Ok(())
    })
}

/// Certified numerical radius. `tol` may be null for defaults.
///
/// # Safety
/// `m` must be a live handle; `tol` must be null or valid; `out` must be
/// valid for one write.
#[no_mangle]
pub unsafe extern "C" fn opineq_numerical_radius(
    m: *const OpineqMatrix,
    tol: *const OpineqTolerances,
    out: *mut OpineqRadius,
) -> OpineqStatus {
    guard(|| {
        let a = matrix_ref(m, "m")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let est = opineq::numerical_radius(a, &tolerances(tol)?)?;
        *out = OpineqRadius {
            lower: est.lower,
            upper: est.upper,
            theta_star: est.theta_star,
            evaluations: est.evaluations as u64,
            converged: est.converged as i32,
        };
        Ok(())
    })
}

/// Evaluates bound `id` (for example `"B5"` or `"BASE-TRI"`) on `count`
/// operands. `B12` reports its worst singular value index. `tol` may be
/// null for defaults.
///
/// # Safety
/// `id` must be a NUL-terminated string; `ops` must be valid for `count`
/// reads of live handles; `tol` must be null or valid; `out` must be valid
/// for one write.
#[no_mangle]
pub unsafe extern "C" fn opineq_evaluate_bound(
    id: *const c_char,
    ops: *const *const OpineqMatrix,
    count: usize,
    tol: *const OpineqTolerances,
    out: *mut OpineqBoundResult,
) -> OpineqStatus {
    guard(|| {
        if id.is_null() {
            return Err(null("id"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        if ops.is_null() && count > 0 {
            return Err(null("ops"));
        }
        let id = CStr::from_ptr(id)
            .to_str()
            .map_err(|_| Failure(OpineqStatus::InvalidArgument, "bound id is not UTF-8".into()))?;
        let bound: BoundId = id.parse()?;
        let handles = if count == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(ops, count)
        };
        let operands = handles
            .iter()
            .enumerate()
            .map(|(k, &h)| matrix_ref(h, &format!("ops[{k}]")).cloned())
            .collect::<Result<Vec<_>, _>>()?;
        let r = opineq::evaluate_bound(bound, &operands, &tolerances(tol)?)?;
        *out = OpineqBoundResult {
            lhs: r.lhs,
            rhs: r.rhs,
            slack: r.slack,
            normalized_slack: r.normalized_slack,
            holds: r.holds as i32,
        };
        Ok(())
    })
}
