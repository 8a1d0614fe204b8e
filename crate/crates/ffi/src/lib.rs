//! C ABI over `hopfspecies`.
//!
//! Instances live behind opaque handles built from the JSON file encodings.
//! Every fallible call returns an [`HsStatus`]; on failure the message is
//! available from [`hs_last_error`] on the same thread. Strings handed out
//! by the library are JSON documents and must be released with
//! [`hs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hopfspecies::cli::{parse_instance, Instance};
use hopfspecies::graphs::{self, BlockGraph};
use hopfspecies::rational::parse_q;
use hopfspecies::topology::{self, QuasiPoset};
use hopfspecies::{fock, Error, Q};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Capacity = 5,
    NotInvertible = 6,
    WrongKind = 7,
    Panic = 8,
}

/// A block graph.
pub struct HsGraph(BlockGraph);

/// A finite topology (quasi-poset).
pub struct HsPoset(QuasiPoset);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(HsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let s = match e {
            Error::Parse(_) => HsStatus::Parse,
            Error::Domain(_) => HsStatus::Domain,
            Error::Capacity(_) => HsStatus::Capacity,
            Error::NotInvertible(_) => HsStatus::NotInvertible,
        };
        Fail(s, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HsStatus::Ok
        }
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            HsStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(HsStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(HsStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn rational(p: *const c_char) -> Result<Q, Fail> {
    Ok(parse_q(text(p)?)?)
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(HsStatus::NullPointer, "null handle".into()))
}

unsafe fn emit(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(HsStatus::NullPointer, "null output pointer".into()));
    }
    *out = CString::new(s).unwrap().into_raw();
    Ok(())
}

/// Parses `{"blocks": [...], "edges": [...]}` into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_graph_from_json(json: *const c_char, out: *mut *mut HsGraph) -> HsStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(HsStatus::NullPointer, "null output pointer".into()));
        }
        match parse_instance(text(json)?.as_bytes())? {
            Instance::Graph(g) => {
                *out = Box::into_raw(Box::new(HsGraph(g)));
                Ok(())
            }
            other => Err(Fail(HsStatus::WrongKind, format!("expected a graph, got a {}", other.kind()))),
        }
    })
}

/// # Safety
/// `g` must come from [`hs_graph_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hs_graph_free(g: *mut HsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Parses `{"classes": [...], "covers": [...]}` into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_poset_from_json(json: *const c_char, out: *mut *mut HsPoset) -> HsStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(HsStatus::NullPointer, "null output pointer".into()));
        }
        match parse_instance(text(json)?.as_bytes())? {
            Instance::QuasiPoset(t) => {
                *out = Box::into_raw(Box::new(HsPoset(t)));
                Ok(())
            }
            other => Err(Fail(HsStatus::WrongKind, format!("expected a quasi-poset, got a {}", other.kind()))),
        }
    })
}

/// # Safety
/// `t` must come from [`hs_poset_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hs_poset_free(t: *mut HsPoset) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Chromatic polynomial as `{"coeffs": [...]}`, low degree first. `q` is
/// rational text such as `"1"` or `"-1/2"`.
///
/// # Safety
/// Pointers must be valid; `*out` must be released with [`hs_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hs_chromatic(g: *const HsGraph, q: *const c_char, out: *mut *mut c_char) -> HsStatus {
    guard(|| {
        let (g, q) = (deref(g)?, rational(q)?);
        emit(out, fock::chromatic_polynomial(&g.0, &q).to_json().to_string())
    })
}

/// Ehrhart polynomial as `{"coeffs": [...]}`.
///
/// # Safety
/// As [`hs_chromatic`].
#[no_mangle]
pub unsafe extern "C" fn hs_ehrhart(t: *const HsPoset, q: *const c_char, out: *mut *mut c_char) -> HsStatus {
    guard(|| {
        let (t, q) = (deref(t)?, rational(q)?);
        emit(out, fock::ehrhart_polynomial(&t.0, &q).to_json().to_string())
    })
}

/// `φ_chr_q(g)` as `[{"coeff", "key"}]` over set compositions.
///
/// # Safety
/// As [`hs_chromatic`].
#[no_mangle]
pub unsafe extern "C" fn hs_phi_chr(g: *const HsGraph, q: *const c_char, out: *mut *mut c_char) -> HsStatus {
    guard(|| {
        let (g, q) = (deref(g)?, rational(q)?);
        emit(out, graphs::phi_chr_q(&g.0, &q).to_json().to_string())
    })
}

/// `φ_ehr_q(t)` as `[{"coeff", "key"}]` over set compositions.
///
/// # Safety
/// As [`hs_chromatic`].
#[no_mangle]
pub unsafe extern "C" fn hs_phi_ehr(t: *const HsPoset, q: *const c_char, out: *mut *mut c_char) -> HsStatus {
    guard(|| {
        let (t, q) = (deref(t)?, rational(q)?);
        emit(out, topology::phi_ehr_q(&t.0, &q).to_json().to_string())
    })
}

/// Number of acyclic orientations.
///
/// # Safety
/// `g` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hs_acyclic_orientations(g: *const HsGraph, out: *mut u64) -> HsStatus {
    guard(|| {
        let g = deref(g)?;
        if out.is_null() {
            return Err(Fail(HsStatus::NullPointer, "null output pointer".into()));
        }
        *out = graphs::ao_count(&g.0) as u64;
        Ok(())
    })
}

/// Number of heap orders (linear extensions bijective on classes).
///
/// # Safety
/// `t` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hs_heap_orders(t: *const HsPoset, out: *mut u64) -> HsStatus {
    guard(|| {
        let t = deref(t)?;
        if out.is_null() {
            return Err(Fail(HsStatus::NullPointer, "null output pointer".into()));
        }
        *out = topology::heap_order_count(&t.0) as u64;
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn hs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn hs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
