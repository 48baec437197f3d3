//! C ABI for the `bohr` library.
//!
//! Every function returns a [`BohrStatus`] and writes results through out
//! pointers. Series and polynomials are opaque handles owned by the caller
//! and released with the matching `*_free` function. On failure a message
//! is kept per thread and can be read with [`bohr_last_error`].
//!
//! Out pointers may be null, which yields [`BohrStatus::NullPointer`];
//! any non-null pointer must be valid for the access it describes.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bohr::series::{parse_series, TruncatedSeries};
use bohr::upper::{self, SignedHomPoly};
use bohr::{lower, wiener, Error};

/// Result code of every exported function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BohrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Unresolved = 4,
    GuardViolated = 5,
    Utf8 = 6,
    Panic = 7,
}

/// Truncated power series in `n` variables.
pub struct BohrSeries {
    inner: TruncatedSeries,
}

/// Homogeneous polynomial with `±` multinomial coefficients.
pub struct BohrPoly {
    inner: SignedHomPoly,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BohrStatus {
    match e {
        Error::Parse { .. } => BohrStatus::Parse,
        Error::Unresolved { .. }
        | Error::TailNotContracting { .. }
        | Error::InvalidBracket { .. } => BohrStatus::Unresolved,
        Error::GuardViolated(_) | Error::CertificateMismatch => BohrStatus::GuardViolated,
        _ => BohrStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), BohrStatus>) -> BohrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BohrStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            BohrStatus::Panic
        }
    }
}

fn check<T>(r: bohr::Result<T>) -> Result<T, BohrStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, BohrStatus> {
    // SAFETY: callers pass either null or a valid, writable pointer.
    unsafe { p.as_mut() }.ok_or_else(|| {
        set_error("null output pointer".into());
        BohrStatus::NullPointer
    })
}

unsafe fn input<'a, T>(p: *const T) -> Result<&'a T, BohrStatus> {
    // SAFETY: callers pass either null or a pointer from this library.
    unsafe { p.as_ref() }.ok_or_else(|| {
        set_error("null handle".into());
        BohrStatus::NullPointer
    })
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bohr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// `1/(3√n)`.
///
/// # Safety
///
/// Pointer arguments must be null or valid for the reads and writes above;
/// handles must come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn bohr_naive_lower(n: u64, value: *mut f64) -> BohrStatus {
    guard(|| {
        if n == 0 {
            return check(Err(Error::ZeroDimension));
        }
        *out(value)? = lower::naive_lower(n);
        Ok(())
    })
}

/// Certified enclosure `[lo, hi]` of the refined lower bound.
///
/// # Safety
///
/// Pointer arguments must be null or valid for the reads and writes above;
/// handles must come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn bohr_refined_lower(
    n: u64,
    tol: f64,
    lo: *mut f64,
    hi: *mut f64,
) -> BohrStatus {
    guard(|| {
        let (lo, hi) = (out(lo)?, out(hi)?);
        let e = check(lower::refined_lower(n, tol))?;
        *lo = e.lo();
        *hi = e.hi();
        Ok(())
    })
}

/// Explicit upper bound for `n ≥ 189` and the degree it used.
///
/// # Safety
///
/// Pointer arguments must be null or valid for the reads and writes above;
/// handles must come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn bohr_theoretical_upper(
    n: u64,
    value: *mut f64,
    degree: *mut u32,
) -> BohrStatus {
    guard(|| {
        let (value, degree) = (out(value)?, out(degree)?);
        let b = check(upper::theoretical_upper(n))?;
        *value = b.value;
        *degree = b.degree;
        Ok(())
    })
}

/// Bohr radius `1/(1+2a)` of `(a − z)/(1 − a z)` for `0 < a < 1`.
///
/// # Safety
///
/// Pointer arguments must be null or valid for the reads and writes above;
/// handles must come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn bohr_mobius_bohr_radius(a: f64, value: *mut f64) -> BohrStatus {
    guard(|| {
        *out(value)? = check(wiener::mobius_bohr_radius(a))?;
        Ok(())
    })
}

/// Parses a series from its text form (one `exponents re im` line per term).
///
/// # Safety
///
/// Pointer arguments must be null or valid for the reads and writes above;
/// handles must come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_parse(
    text: *const c_char,
    series: *mut *mut BohrSeries,
) -> BohrStatus {
    guard(|| {
        let slot = out(series)?;
        if text.is_null() {
            set_error("null text".into());
            return Err(BohrStatus::NullPointer);
        }
        // SAFETY: non-null and nul-terminated per the contract.
        let text = unsafe { CStr::from_ptr(text) }.to_str().map_err(|e| {
            set_error(e.to_string());
            BohrStatus::Utf8
        })?;
        let inner = check(parse_series(text, None))?;
        *slot = Box::into_raw(Box::new(BohrSeries { inner }));
        Ok(())
    })
}

/// Taylor series of `(a − z)/(1 − a z)` up to order `cap`.
///
/// # Safety
///
/// Pointer arguments must be null or valid for the reads and writes above;
/// handles must come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_mobius(
    a: f64,
    cap: u32,
    series: *mut *mut BohrSeries,
) -> BohrStatus {
    guard(|| {
        let slot = out(series)?;
        let params = check(wiener::MobiusParams::new(a))?;
        let inner = check(wiener::mobius_series(params, cap))?;
        *slot = Box::into_raw(Box::new(BohrSeries { inner }));
        Ok(())
    })
}

/// Number of variables of a series.
///
/// # Safety
///
/// Pointer arguments must be null or valid for the reads and writes above;
/// handles must come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_dim(series: *const BohrSeries, dim: *mut usize) -> BohrStatus {
    guard(|| {
        *out(dim)? = input(series)?.inner.dim();
        Ok(())
    })
}

/// `Σ |c_α| z^α` at the moduli `z[0..len]`.
///
/// # Safety
///
/// Pointer arguments must be null or valid for the reads and writes above;
/// handles must come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_majorant(
    series: *const BohrSeries,
    z: *const f64,
    len: usize,
    value: *mut f64,
) -> BohrStatus {
    guard(|| {
        let (s, value) = (input(series)?, out(value)?);
        let z = if len == 0 {
            &[][..]
        } else {
            input(z)?;
            // SAFETY: non-null and `len` readable doubles per the contract.
            unsafe { std::slice::from_raw_parts(z, len) }
        };
        *value = check(s.inner.majorant(z))?;
        Ok(())
    })
}

/// Compares `‖c_k‖₂` with `1 − |c_0|²`; `holds` is 1 when within `tol`.
///
/// # Safety
///
/// Pointer arguments must be null or valid for the reads and writes above;
/// handles must come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_wiener_check(
    series: *const BohrSeries,
    k: u32,
    tol: f64,
    lhs: *mut f64,
    rhs: *mut f64,
    holds: *mut i32,
) -> BohrStatus {
    guard(|| {
        let s = input(series)?;
        let (lhs, rhs, holds) = (out(lhs)?, out(rhs)?, out(holds)?);
        let r = check(wiener::wiener_bound_check(&s.inner, k, tol))?;
        *lhs = r.lhs;
        *rhs = r.rhs;
        *holds = i32::from(r.holds);
        Ok(())
    })
}

/// Releases a series; null is ignored.
///
/// # Safety
///
/// Pointer arguments must be null or valid for the reads and writes above;
/// handles must come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_free(series: *mut BohrSeries) {
    if !series.is_null() {
        // SAFETY: pointer came from `Box::into_raw` in this library.
        drop(unsafe { Box::from_raw(series) });
    }
}

/// Random-sign polynomial of the given degree in `n` variables.
///
/// # Safety
///
/// Pointer arguments must be null or valid for the reads and writes above;
/// handles must come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn bohr_poly_random_signs(
    n: usize,
    degree: u32,
    seed: u64,
    poly: *mut *mut BohrPoly,
) -> BohrStatus {
    guard(|| {
        let slot = out(poly)?;
        let inner = check(upper::random_signs(n, degree, seed))?;
        *slot = Box::into_raw(Box::new(BohrPoly { inner }));
        Ok(())
    })
}

/// Certified enclosure of the sup norm on the torus from a grid with
/// `points_per_axis` points per free angle.
///
/// # Safety
///
/// Pointer arguments must be null or valid for the reads and writes above;
/// handles must come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn bohr_poly_sup_norm(
    poly: *const BohrPoly,
    points_per_axis: usize,
    lo: *mut f64,
    hi: *mut f64,
) -> BohrStatus {
    guard(|| {
        let p = input(poly)?;
        let (lo, hi) = (out(lo)?, out(hi)?);
        let cert = check(upper::sup_norm_certified(&p.inner, points_per_axis))?;
        *lo = cert.enclosure().lo();
        *hi = cert.enclosure().hi();
        Ok(())
    })
}

/// Certified upper bound on `K_n` from one polynomial, using
/// `grid_divisor · degree` points per free angle.
///
/// # Safety
///
/// Pointer arguments must be null or valid for the reads and writes above;
/// handles must come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn bohr_poly_kn_upper(
    poly: *const BohrPoly,
    grid_divisor: u32,
    value: *mut f64,
) -> BohrStatus {
    guard(|| {
        let p = input(poly)?;
        let value = out(value)?;
        let points = upper::default_points(p.inner.degree(), grid_divisor);
        let cert = check(upper::sup_norm_certified(&p.inner, points))?;
        *value = check(upper::kn_upper_from_poly(&p.inner, &cert))?;
        Ok(())
    })
}

/// Releases a polynomial; null is ignored.
///
/// # Safety
///
/// Pointer arguments must be null or valid for the reads and writes above;
/// handles must come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn bohr_poly_free(poly: *mut BohrPoly) {
    if !poly.is_null() {
        // SAFETY: pointer came from `Box::into_raw` in this library.
        drop(unsafe { Box::from_raw(poly) });
    }
}

/// Best certified bound over `trials` random-sign polynomials. `poly` may
/// be null; otherwise it receives the witness, owned by the caller.
///
/// # Safety
///
/// Pointer arguments must be null or valid for the reads and writes above;
/// handles must come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn bohr_search_upper(
    n: usize,
    degree: u32,
    trials: u64,
    seed: u64,
    grid_divisor: u32,
    bound: *mut f64,
    trial: *mut u64,
    poly: *mut *mut BohrPoly,
) -> BohrStatus {
    guard(|| {
        let (bound, trial) = (out(bound)?, out(trial)?);
        if n > upper::CERTIFIED_MAX_N {
            set_error(format!(
                "certified search supports n <= {}, got {n}",
                upper::CERTIFIED_MAX_N
            ));
            return Err(BohrStatus::InvalidArgument);
        }
        let found = check(upper::search_upper(n, degree, trials, seed, grid_divisor))?;
        *bound = found.bound;
        *trial = found.trial;
        // SAFETY: null or a valid, writable pointer per the contract.
        if let Some(slot) = unsafe { poly.as_mut() } {
            *slot = Box::into_raw(Box::new(BohrPoly { inner: found.poly }));
        }
        Ok(())
    })
}
