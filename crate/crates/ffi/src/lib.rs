//! C ABI over `quandle-kit`.
//!
//! Objects cross the boundary as opaque handles created by the
//! constructor functions and released by the matching `qk_*_free`. Every fallible
//! call returns a [`QkStatus`]; on failure `qk_last_error_message` returns
//! the message for the calling thread. Strings returned by the library are
//! owned by the caller and must be released with `qk_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quandle_kit::chain::{Flavor, Sign};
use quandle_kit::diagram::{corpus_text, parse_pd_file_text, PreparedDiagram};
use quandle_kit::homology::{cocycle_basis, cocycle_violation, cohomology_group, homology_group, Cochain2, CoefficientGroup};
use quandle_kit::invariants::{enumerate_colorings, state_sum, InvariantDocument};
use quandle_kit::quandle::{dihedral_quandle, orbits, parse_quandle_json, trivial_quandle, Operation, QuandleTable};
use quandle_kit::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotAQuandle = 4,
    InvalidDiagram = 5,
    InvalidCochain = 6,
    Unsupported = 7,
    Overflow = 8,
    OutOfRange = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QkSign {
    Neg = 0,
    Pos = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QkFlavor {
    Rack = 0,
    Degenerate = 1,
    Quandle = 2,
}

impl From<QkSign> for Sign {
    fn from(s: QkSign) -> Sign {
        match s {
            QkSign::Neg => Sign::Minus,
            QkSign::Pos => Sign::Plus,
        }
    }
}

impl From<QkFlavor> for Flavor {
    fn from(f: QkFlavor) -> Flavor {
        match f {
            QkFlavor::Rack => Flavor::Rack,
            QkFlavor::Degenerate => Flavor::Degenerate,
            QkFlavor::Quandle => Flavor::Quandle,
        }
    }
}

/// Opaque quandle handle.
pub struct QkQuandle(QuandleTable);

/// Opaque prepared-diagram handle.
pub struct QkDiagram {
    name: String,
    inner: PreparedDiagram,
}

/// Opaque 2-cochain handle.
pub struct QkCochain(Cochain2);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(QkStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::MalformedTable(_) | Error::PdParse(_) | Error::Json(_) | Error::Coefficient(_) => QkStatus::Parse,
            Error::NotAQuandle(_) | Error::InvalidGroup(_) => QkStatus::NotAQuandle,
            Error::InvalidDiagram(_) => QkStatus::InvalidDiagram,
            Error::InvalidCochain(_) => QkStatus::InvalidCochain,
            Error::UnsupportedOrder { .. } | Error::UnsupportedDegree(_) => QkStatus::Unsupported,
            Error::Overflow(_) => QkStatus::Overflow,
            Error::NoColorings | Error::Io(_) => QkStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QkStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QkStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QkStatus::Internal
        }
    }
}

fn null() -> Failure {
    Failure(QkStatus::NullPointer, "null pointer argument".into())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(QkStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn put_box<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(value)))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(QkStatus::Internal, "string contains NUL".into()))?;
    put(out, c.into_raw())
}

fn coeff_arg(s: &str) -> Result<CoefficientGroup, Failure> {
    Ok(s.parse::<CoefficientGroup>()?)
}

/// Message of the last failed call on this thread, or NULL.
///
/// The pointer stays valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn qk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"n": 3, "table": [[...], ...]}` into a validated quandle.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_from_json(json: *const c_char, out: *mut *mut QkQuandle) -> QkStatus {
    guard(|| {
        let q = parse_quandle_json(str_arg(json)?)?;
        put_box(out, QkQuandle(q))
    })
}

/// Dihedral quandle `i ∗ j = 2j − i mod n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_dihedral(n: usize, out: *mut *mut QkQuandle) -> QkStatus {
    guard(|| put_box(out, QkQuandle(dihedral_quandle(n)?)))
}

/// Trivial quandle `a ∗ b = a`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_trivial(n: usize, out: *mut *mut QkQuandle) -> QkStatus {
    guard(|| put_box(out, QkQuandle(trivial_quandle(n)?)))
}

/// # Safety
/// `q` must be NULL or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_free(q: *mut QkQuandle) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Order of the quandle, or 0 for NULL.
///
/// # Safety
/// `q` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_order(q: *const QkQuandle) -> usize {
    q.as_ref().map_or(0, |q| q.0.n())
}

/// `a ∗ b`.
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_op(q: *const QkQuandle, a: usize, b: usize, out: *mut usize) -> QkStatus {
    guard(|| {
        let q = &handle(q)?.0;
        if a >= q.n() || b >= q.n() {
            return Err(Failure(QkStatus::OutOfRange, format!("({a}, {b}) outside order {}", q.n())));
        }
        put(out, q.op(a, b))
    })
}

/// Number of orbits.
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_orbit_count(q: *const QkQuandle, out: *mut usize) -> QkStatus {
    guard(|| put(out, orbits(&handle(q)?.0).len()))
}

/// (Co)homology group as JSON `{"group": "Z + Z/2", "free_rank": 1, "torsion": [2]}`.
///
/// # Safety
/// `q` must be a live handle, `coeff` a NUL-terminated string such as
/// "Z", "Q" or "Z2"; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qk_cohomology_json(
    q: *const QkQuandle,
    flavor: QkFlavor,
    sign: QkSign,
    degree: usize,
    coeff: *const c_char,
    homology: bool,
    out: *mut *mut c_char,
) -> QkStatus {
    guard(|| {
        let q = &handle(q)?.0;
        let coeff = coeff_arg(str_arg(coeff)?)?;
        let g = if homology {
            homology_group(q, flavor.into(), sign.into(), degree, coeff)?
        } else {
            cohomology_group(q, flavor.into(), sign.into(), degree, coeff)?
        };
        let doc = serde_json::json!({ "group": g.to_string(), "free_rank": g.free_rank, "torsion": g.torsion });
        put_string(out, doc.to_string())
    })
}

/// 2-cocycle basis (over Z) or spanning set (over Z/m) as a JSON array of
/// value matrices.
///
/// # Safety
/// As for `qk_cohomology_json`.
#[no_mangle]
pub unsafe extern "C" fn qk_cocycle_basis_json(
    q: *const QkQuandle,
    sign: QkSign,
    coeff: *const c_char,
    out: *mut *mut c_char,
) -> QkStatus {
    guard(|| {
        let q = &handle(q)?.0;
        let basis = cocycle_basis(q, sign.into(), coeff_arg(str_arg(coeff)?)?)?;
        let rows: Vec<Vec<Vec<i64>>> = basis.iter().map(Cochain2::rows).collect();
        put_string(out, serde_json::to_string(&rows).expect("plain data serializes"))
    })
}

/// Parses PD text (`X[a,b,c,d]` and `O[k]` terms) into a diagram.
///
/// # Safety
/// `pd` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qk_diagram_from_pd(pd: *const c_char, out: *mut *mut QkDiagram) -> QkStatus {
    guard(|| {
        let text = str_arg(pd)?;
        let inner = PreparedDiagram::new(parse_pd_file_text(text)?, None)?;
        put_box(out, QkDiagram { name: text.trim().to_string(), inner })
    })
}

/// Loads a bundled diagram such as "trefoil", "figure8" or "hopf".
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qk_diagram_from_corpus(name: *const c_char, out: *mut *mut QkDiagram) -> QkStatus {
    guard(|| {
        let name = str_arg(name)?;
        let text = corpus_text(name)
            .ok_or_else(|| Failure(QkStatus::InvalidDiagram, format!("no corpus diagram named `{name}`")))?;
        let inner = PreparedDiagram::new(parse_pd_file_text(&text)?, None)?;
        put_box(out, QkDiagram { name: name.to_string(), inner })
    })
}

/// # Safety
/// `d` must be NULL or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn qk_diagram_free(d: *mut QkDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of crossings, or 0 for NULL.
///
/// # Safety
/// `d` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qk_diagram_crossing_count(d: *const QkDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.inner.diagram.crossing_count())
}

/// Number of arcs, or 0 for NULL.
///
/// # Safety
/// `d` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qk_diagram_arc_count(d: *const QkDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.inner.arcs.len())
}

/// Number of colorings of `d` by `q`.
///
/// # Safety
/// `d`, `q` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qk_coloring_count(d: *const QkDiagram, q: *const QkQuandle, out: *mut usize) -> QkStatus {
    guard(|| put(out, enumerate_colorings(&handle(d)?.inner, &handle(q)?.0).len()))
}

/// Parses `{"coeff": "Z", "values": [[...], ...]}` into a 2-cochain.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qk_cochain_from_json(json: *const c_char, out: *mut *mut QkCochain) -> QkStatus {
    guard(|| put_box(out, QkCochain(Cochain2::from_json(str_arg(json)?)?)))
}

/// # Safety
/// `c` must be NULL or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn qk_cochain_free(c: *mut QkCochain) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Evaluates the state-sum invariant and returns the result document
/// `{"quandle", "diagram", "mode", "coeff", "colorings", "invariant", "trivial"}`.
///
/// Fails with `QK_STATUS_INVALID_COCHAIN` when `phi` is not a 2-cocycle of
/// the requested sign.
///
/// # Safety
/// All handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qk_state_sum_json(
    d: *const QkDiagram,
    q: *const QkQuandle,
    phi: *const QkCochain,
    mode: QkSign,
    out: *mut *mut c_char,
) -> QkStatus {
    guard(|| {
        let (d, q, phi) = (handle(d)?, &handle(q)?.0, &handle(phi)?.0);
        let mode = Sign::from(mode);
        if phi.n() != q.n() {
            return Err(Failure(QkStatus::InvalidCochain, format!("cochain order {} != quandle order {}", phi.n(), q.n())));
        }
        if let Some(t) = cocycle_violation(q, phi, mode) {
            return Err(Failure(QkStatus::InvalidCochain, format!("not a {mode} 2-cocycle: fails at {t:?}")));
        }
        let value = state_sum(&d.inner, q, phi, mode)?;
        let doc = InvariantDocument::new("quandle", &d.name, mode, &value)?;
        put_string(out, serde_json::to_string(&doc).expect("plain data serializes"))
    })
}
