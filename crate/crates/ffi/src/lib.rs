//! C interface to the objcomb engine.
//!
//! Results come back through out-parameters as opaque handles; every call
//! returns an [`ObjcombStatus`]. On failure a message is kept per thread and
//! read with [`objcomb_last_error`]. Strings returned by the library are freed
//! with [`objcomb_string_free`], handles with their own `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use objcomb::cli::{parse_lambda, parse_partition};
use objcomb::incidence::{self, Poly, TensorPoly};
use objcomb::partition::enumerate_transversals;
use objcomb::series::{self, MultiSeries, Series1};
use objcomb::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Outcome of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjcombStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Mismatch = 3,
    OutOfRange = 4,
    NotSurjective = 5,
    InvalidPartition = 6,
    BoundExceeded = 7,
    Parse = 8,
    NonzeroConstantTerm = 9,
    InvalidSimplex = 10,
    Precondition = 11,
    Panic = 12,
}

impl From<&Error> for ObjcombStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Mismatch { .. } => ObjcombStatus::Mismatch,
            Error::OutOfRange { .. } => ObjcombStatus::OutOfRange,
            Error::NotSurjective(_) => ObjcombStatus::NotSurjective,
            Error::InvalidPartition(_) => ObjcombStatus::InvalidPartition,
            Error::BoundExceeded { .. } => ObjcombStatus::BoundExceeded,
            Error::Parse { .. } => ObjcombStatus::Parse,
            Error::NonzeroConstantTerm => ObjcombStatus::NonzeroConstantTerm,
            Error::InvalidSimplex(_) => ObjcombStatus::InvalidSimplex,
            Error::Precondition(_) => ObjcombStatus::Precondition,
        }
    }
}

/// Opaque coproduct: a finite sum of `coeff · left ⊗ right`.
pub struct ObjcombTensor(TensorPoly);

/// Opaque polynomial in the generators.
pub struct ObjcombPoly(Poly);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Failure(ObjcombStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure((&e).into(), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> ObjcombStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ObjcombStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            ObjcombStatus::Panic
        }
    }
}

unsafe fn input<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(ObjcombStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(ObjcombStatus::InvalidUtf8, e.to_string()))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(ObjcombStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no nul bytes").into_raw()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn objcomb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call on the same thread.
#[no_mangle]
pub extern "C" fn objcomb_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// `Δ(Aₙ)` in the Faà di Bruno bialgebra.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn objcomb_fdb_coproduct(n: usize, out: *mut *mut ObjcombTensor) -> ObjcombStatus {
    guard(|| {
        let t = incidence::fdb_coproduct(n)?;
        write(out, Box::into_raw(Box::new(ObjcombTensor(t))))
    })
}

/// `Δ(A_λ)` in the plethystic bialgebra; `lambda` as `{2:1,3:1}` or `[[0,1],[2]]`.
///
/// # Safety
/// `lambda` must be NUL-terminated; `out` must be valid for one handle.
#[no_mangle]
pub unsafe extern "C" fn objcomb_plethystic_coproduct(lambda: *const c_char, out: *mut *mut ObjcombTensor) -> ObjcombStatus {
    guard(|| {
        let l = parse_lambda(input(lambda)?)?;
        let t = incidence::plethystic_coproduct(&l)?;
        write(out, Box::into_raw(Box::new(ObjcombTensor(t))))
    })
}

/// Partial Bell polynomial `B_{n,k}`.
///
/// # Safety
/// `out` must be valid for one handle.
#[no_mangle]
pub unsafe extern "C" fn objcomb_bell_polynomial(n: usize, k: usize, out: *mut *mut ObjcombPoly) -> ObjcombStatus {
    guard(|| {
        let p = incidence::bell_polynomial(n, k)?;
        write(out, Box::into_raw(Box::new(ObjcombPoly(p))))
    })
}

/// Number of labelled transversals of a partition given as `[[0,1],[2]]`.
///
/// # Safety
/// `sigma` must be NUL-terminated; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn objcomb_transversal_count(sigma: *const c_char, count: *mut usize) -> ObjcombStatus {
    guard(|| {
        let s = parse_partition(input(sigma)?)?;
        let pairs = enumerate_transversals(&s, incidence::DEFAULT_PLETHYSTIC_BOUND)?;
        write(count, pairs.len())
    })
}

/// Duality of `Δ(Aₙ)` with composition on `trials` seeded random series pairs.
///
/// # Safety
/// `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn objcomb_fdb_duality_check(n: usize, trials: usize, seed: u64, passed: *mut bool) -> ObjcombStatus {
    guard(|| {
        let d = incidence::fdb_coproduct(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ok = true;
        for _ in 0..trials {
            let f = Series1::random(n, true, &mut rng);
            let g = Series1::random(n, false, &mut rng);
            ok &= series::fdb_duality_check(n, &f, &g, &d)?;
        }
        write(passed, ok)
    })
}

/// Duality of `Δ(A_λ)` with plethystic substitution on seeded random series.
///
/// # Safety
/// `lambda` must be NUL-terminated; `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn objcomb_plethystic_duality_check(
    lambda: *const c_char,
    trials: usize,
    seed: u64,
    passed: *mut bool,
) -> ObjcombStatus {
    guard(|| {
        let l = parse_lambda(input(lambda)?)?;
        let d = incidence::plethystic_coproduct(&l)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ok = true;
        for _ in 0..trials {
            let f = MultiSeries::random(l.weight(), true, &mut rng);
            let g = MultiSeries::random(l.weight(), false, &mut rng);
            ok &= series::plethystic_duality_check(&l, &f, &g, &d)?;
        }
        write(passed, ok)
    })
}

/// Number of terms.
///
/// # Safety
/// `t` must be a live handle or NULL (which gives 0).
#[no_mangle]
pub unsafe extern "C" fn objcomb_tensor_len(t: *const ObjcombTensor) -> usize {
    t.as_ref().map_or(0, |t| t.0.len())
}

/// JSON array of `{left, right, coeff}`; free with [`objcomb_string_free`].
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn objcomb_tensor_to_json(t: *const ObjcombTensor, out: *mut *mut c_char) -> ObjcombStatus {
    guard(|| {
        let t = t
            .as_ref()
            .ok_or_else(|| Failure(ObjcombStatus::NullPointer, "null handle".into()))?;
        write(out, into_c_string(t.0.to_json().to_string()))
    })
}

/// JSON array of `{monomial, coeff}`; free with [`objcomb_string_free`].
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn objcomb_poly_to_json(p: *const ObjcombPoly, out: *mut *mut c_char) -> ObjcombStatus {
    guard(|| {
        let p = p
            .as_ref()
            .ok_or_else(|| Failure(ObjcombStatus::NullPointer, "null handle".into()))?;
        write(out, into_c_string(p.0.to_json().to_string()))
    })
}

/// # Safety
/// `t` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn objcomb_tensor_free(t: *mut ObjcombTensor) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `p` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn objcomb_poly_free(p: *mut ObjcombPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `s` must be a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn objcomb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
