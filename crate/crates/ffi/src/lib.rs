//! C ABI over the `quasifold` engine.
//!
//! Polytopes and analyses are opaque handles owned by the caller and released
//! with the matching `*_free` function. Every fallible call returns a
//! [`QfStatus`]; the message of the most recent failure on the calling thread
//! is available from [`qf_last_error`]. Strings returned by the library are
//! released with [`qf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quasifold::delzant::{dimensions, NullClosure};
use quasifold::report::{analyze, parse_direction, Analysis, DirectionChoice, Mode};
use quasifold::{Error, HRep};

/// Result codes of the C API.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Field = 4,
    Dimension = 5,
    Empty = 6,
    Unbounded = 7,
    NonSimple = 8,
    Redundant = 9,
    NotSurjective = 10,
    NonGeneric = 11,
    OutsideDelta = 12,
    Consistency = 13,
    BufferTooSmall = 14,
    Panic = 15,
}

impl From<&Error> for QfStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) | Error::Io(_) => QfStatus::Parse,
            Error::FieldMismatch(..) | Error::InvalidRadicand(_) | Error::DivisionByZero => QfStatus::Field,
            Error::Dimension(_) => QfStatus::Dimension,
            Error::Empty => QfStatus::Empty,
            Error::Unbounded(_) => QfStatus::Unbounded,
            Error::NonSimple { .. } => QfStatus::NonSimple,
            Error::Redundant(_) => QfStatus::Redundant,
            Error::NotSurjective { .. } => QfStatus::NotSurjective,
            Error::NonGeneric(_) => QfStatus::NonGeneric,
            Error::OutsideDelta(_) => QfStatus::OutsideDelta,
            Error::IndexBoundViolation { .. } | Error::NegativeEntry { .. } | Error::EulerMismatch { .. } => {
                QfStatus::Consistency
            }
        }
    }
}

/// Closedness of the null subgroup.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QfNullClosure {
    RationalClosed = 0,
    DenseWinding = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QfDimensions {
    pub dim_m: usize,
    pub dim_f: usize,
    pub codim: usize,
    pub quasifold_dim: usize,
}

/// Opaque polytope handle.
pub struct QfPolytope {
    hrep: HRep,
}

/// Opaque analysis handle.
pub struct QfAnalysis {
    analysis: Analysis,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(e: &Error) -> QfStatus {
    set_error(e.to_string());
    QfStatus::from(e)
}

fn guard(f: impl FnOnce() -> QfStatus) -> QfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            QfStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, QfStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(QfStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        QfStatus::InvalidUtf8
    })
}

unsafe fn copy_out(values: &[u64], out: *mut u64, capacity: usize, written: *mut usize) -> QfStatus {
    if !written.is_null() {
        *written = values.len();
    }
    if capacity < values.len() {
        set_error(format!("buffer holds {capacity} entries, {} needed", values.len()));
        return QfStatus::BufferTooSmall;
    }
    if values.is_empty() {
        return QfStatus::Ok;
    }
    if out.is_null() {
        set_error("null output buffer");
        return QfStatus::NullPointer;
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    QfStatus::Ok
}

/// Message of the last failure on this thread, or NULL. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn qf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a polytope file (JSON text) into a new handle stored in `*out`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qf_polytope_from_json(json: *const c_char, out: *mut *mut QfPolytope) -> QfStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return QfStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match HRep::from_json(text) {
            Ok(hrep) => {
                *out = Box::into_raw(Box::new(QfPolytope { hrep }));
                QfStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `p` must come from [`qf_polytope_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qf_polytope_free(p: *mut QfPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Ambient dimension `m`, or 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live polytope handle.
#[no_mangle]
pub unsafe extern "C" fn qf_polytope_dim(p: *const QfPolytope) -> usize {
    p.as_ref().map_or(0, |p| p.hrep.m())
}

/// Number of half-spaces `d`, or 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live polytope handle.
#[no_mangle]
pub unsafe extern "C" fn qf_polytope_facet_count(p: *const QfPolytope) -> usize {
    p.as_ref().map_or(0, |p| p.hrep.d())
}

/// Runs the full pipeline. `xi` is an optional comma-separated direction
/// (NULL selects one from `seed`); `audit` enables every counting audit.
///
/// # Safety
/// `p` must be a live polytope handle, `xi` NULL or NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qf_analyze(
    p: *const QfPolytope,
    xi: *const c_char,
    seed: i64,
    audit: bool,
    out: *mut *mut QfAnalysis,
) -> QfStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return QfStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let Some(p) = p.as_ref() else {
            set_error("null polytope");
            return QfStatus::NullPointer;
        };
        let choice = if xi.is_null() {
            DirectionChoice::Seed(seed)
        } else {
            let text = match read_str(xi) {
                Ok(t) => t,
                Err(s) => return s,
            };
            match parse_direction(text) {
                Ok(coords) => DirectionChoice::Explicit(coords),
                Err(e) => return fail(&e),
            }
        };
        let mode = if audit { Mode::Audit } else { Mode::Analyze };
        match analyze(&p.hrep, &choice, mode) {
            Ok(analysis) => {
                *out = Box::into_raw(Box::new(QfAnalysis { analysis }));
                QfStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `a` must come from [`qf_analyze`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qf_analysis_free(a: *mut QfAnalysis) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

unsafe fn vector_of(
    a: *const QfAnalysis,
    pick: impl FnOnce(&Analysis) -> &[u64],
    out: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> QfStatus {
    let Some(a) = a.as_ref() else {
        set_error("null analysis");
        return QfStatus::NullPointer;
    };
    copy_out(pick(&a.analysis), out, capacity, written)
}

/// Face counts `f_0, …, f_m`.
///
/// Writes the entry count to `*written` (if non-NULL) and copies the entries
/// when `capacity` suffices, else returns `BufferTooSmall`.
///
/// # Safety
/// `a` must be a live analysis handle; `out` must hold `capacity` entries.
#[no_mangle]
pub unsafe extern "C" fn qf_analysis_f_vector(
    a: *const QfAnalysis,
    out: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> QfStatus {
    vector_of(a, |a| &a.report.f, out, capacity, written)
}

/// h-vector `h_0, …, h_m`.
///
/// Writes the entry count to `*written` (if non-NULL) and copies the entries
/// when `capacity` suffices, else returns `BufferTooSmall`.
///
/// # Safety
/// `a` must be a live analysis handle; `out` must hold `capacity` entries.
#[no_mangle]
pub unsafe extern "C" fn qf_analysis_h_vector(
    a: *const QfAnalysis,
    out: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> QfStatus {
    vector_of(a, |a| &a.report.h, out, capacity, written)
}

/// Basic Betti numbers `b_0, …, b_{2m}` from vertex indices.
///
/// Writes the entry count to `*written` (if non-NULL) and copies the entries
/// when `capacity` suffices, else returns `BufferTooSmall`.
///
/// # Safety
/// `a` must be a live analysis handle; `out` must hold `capacity` entries.
#[no_mangle]
pub unsafe extern "C" fn qf_analysis_betti(
    a: *const QfAnalysis,
    out: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> QfStatus {
    vector_of(a, |a| &a.report.betti, out, capacity, written)
}

/// Basic Betti numbers `b_0, …, b_{2m}` from the h-vector.
///
/// Writes the entry count to `*written` (if non-NULL) and copies the entries
/// when `capacity` suffices, else returns `BufferTooSmall`.
///
/// # Safety
/// `a` must be a live analysis handle; `out` must hold `capacity` entries.
#[no_mangle]
pub unsafe extern "C" fn qf_analysis_betti_h(
    a: *const QfAnalysis,
    out: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> QfStatus {
    vector_of(a, |a| &a.report.betti_h, out, capacity, written)
}

/// Basic Euler characteristic, or 0 for NULL.
///
/// # Safety
/// `a` must be NULL or a live analysis handle.
#[no_mangle]
pub unsafe extern "C" fn qf_analysis_euler(a: *const QfAnalysis) -> i64 {
    a.as_ref().map_or(0, |a| a.analysis.report.euler)
}

/// Basic Hodge number `h^{p,q}`, or 0 when out of range.
///
/// # Safety
/// `a` must be NULL or a live analysis handle.
#[no_mangle]
pub unsafe extern "C" fn qf_analysis_hodge(a: *const QfAnalysis, p: usize, q: usize) -> u64 {
    a.as_ref()
        .and_then(|a| a.analysis.report.hodge.get(p).and_then(|row| row.get(q)).copied())
        .unwrap_or(0)
}

/// # Safety
/// `a` must be a live analysis handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qf_analysis_dimensions(a: *const QfAnalysis, out: *mut QfDimensions) -> QfStatus {
    let (Some(a), false) = (a.as_ref(), out.is_null()) else {
        set_error("null argument");
        return QfStatus::NullPointer;
    };
    let d = dimensions(&a.analysis.construction);
    *out = QfDimensions {
        dim_m: d.dim_m,
        dim_f: d.dim_f,
        codim: d.codim,
        quasifold_dim: d.quasifold_dim,
    };
    QfStatus::Ok
}

/// # Safety
/// `a` must be a live analysis handle.
#[no_mangle]
pub unsafe extern "C" fn qf_analysis_null_closure(a: *const QfAnalysis) -> QfNullClosure {
    match a.as_ref().map(|a| a.analysis.construction.null_closed) {
        Some(NullClosure::DenseWinding) => QfNullClosure::DenseWinding,
        _ => QfNullClosure::RationalClosed,
    }
}

/// Whether every audit in the report passed; false for NULL.
///
/// # Safety
/// `a` must be NULL or a live analysis handle.
#[no_mangle]
pub unsafe extern "C" fn qf_analysis_all_audits_pass(a: *const QfAnalysis) -> bool {
    a.as_ref().is_some_and(|a| a.analysis.report.all_pass())
}

/// The JSON report as a new string, released with [`qf_string_free`]; NULL on failure.
///
/// # Safety
/// `a` must be a live analysis handle.
#[no_mangle]
pub unsafe extern "C" fn qf_analysis_report_json(a: *const QfAnalysis) -> *mut c_char {
    let Some(a) = a.as_ref() else {
        set_error("null analysis");
        return ptr::null_mut();
    };
    CString::new(a.analysis.report.to_json()).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
