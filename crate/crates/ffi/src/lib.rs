//! C ABI for the tmzv toolkit: opaque handles over the word algebra and
//! symbol combinations, error codes instead of panics, and caller-freed
//! strings. The header is generated into include/tmzv.h at build time.

use std::ffi::{CStr, CString};
use std::os::raw::{c_char, c_double, c_int};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tmzv::bigfloat::Ctx;
use tmzv::coeff::Rat;
use tmzv::numerics::eval_tmzv;
use tmzv::product::{product, ProductKind};
use tmzv::reg::{z_reg_eval, RegKind};
use tmzv::{Element, Error, Index, ZetaCombination};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum TmzvStatus {
    Ok = 0,
    NullArgument = 1,
    ParseError = 2,
    DomainError = 3,
    NotAdmissible = 4,
    SubalgebraError = 5,
    Pole = 6,
    NoConvergence = 7,
    InternalError = 8,
}

fn status_of(e: &Error) -> TmzvStatus {
    match e {
        Error::Parse(_) => TmzvStatus::ParseError,
        Error::NotAdmissible(_) => TmzvStatus::NotAdmissible,
        Error::NotInH0(_) | Error::NotInH1(_) => TmzvStatus::SubalgebraError,
        Error::Pole(_) => TmzvStatus::Pole,
        Error::Divergent(_) | Error::Convergence { .. } => TmzvStatus::NoConvergence,
        Error::Domain(_) => TmzvStatus::DomainError,
    }
}

/// Opaque handle to an element of the word algebra.
pub struct TmzvElement(Element);

/// Opaque handle to a combination of zeta symbols.
pub struct TmzvCombination(ZetaCombination);

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> TmzvStatus {
    if out.is_null() {
        return TmzvStatus::NullArgument;
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    TmzvStatus::Ok
}

unsafe fn str_arg<'a>(s: *const c_char) -> Option<&'a str> {
    if s.is_null() {
        return None;
    }
    unsafe { CStr::from_ptr(s) }.to_str().ok()
}

fn guarded(f: impl FnOnce() -> TmzvStatus) -> TmzvStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(TmzvStatus::InternalError)
}

/// Parses an element from text ("xyy", "z2z1", "xy + t*xx").
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tmzv_element_parse(
    text: *const c_char,
    out: *mut *mut TmzvElement,
) -> TmzvStatus {
    guarded(|| {
        let Some(text) = (unsafe { str_arg(text) }) else {
            return TmzvStatus::NullArgument;
        };
        match Element::parse(text) {
            Ok(e) => unsafe { write_out(out, TmzvElement(e)) },
            Err(e) => status_of(&e),
        }
    })
}

/// Frees an element handle. Passing NULL is a no-op.
///
/// # Safety
/// `e` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tmzv_element_free(e: *mut TmzvElement) {
    if !e.is_null() {
        drop(unsafe { Box::from_raw(e) });
    }
}

/// Renders an element; `as_z` selects z-notation. The result must be freed
/// with tmzv_string_free. Returns NULL on invalid input.
///
/// # Safety
/// `e` must be a live element handle.
#[no_mangle]
pub unsafe extern "C" fn tmzv_element_to_string(
    e: *const TmzvElement,
    as_z: c_int,
) -> *mut c_char {
    if e.is_null() {
        return ptr::null_mut();
    }
    let el = unsafe { &(*e).0 };
    let rendered = if as_z != 0 {
        if !el.in_h1() {
            return ptr::null_mut();
        }
        format!("{}", el.display_z())
    } else {
        format!("{el}")
    };
    CString::new(rendered).map_or(ptr::null_mut(), CString::into_raw)
}

/// Product kinds: 0 concat, 1 sh, 2 t_sh, 3 st, 4 t_st.
fn product_kind(kind: c_int) -> Option<ProductKind> {
    Some(match kind {
        0 => ProductKind::Concat,
        1 => ProductKind::Sh,
        2 => ProductKind::TSh,
        3 => ProductKind::St,
        4 => ProductKind::TSt,
        _ => return None,
    })
}

/// Multiplies two elements with the selected product.
///
/// # Safety
/// `a`, `b` must be live element handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tmzv_product(
    kind: c_int,
    a: *const TmzvElement,
    b: *const TmzvElement,
    out: *mut *mut TmzvElement,
) -> TmzvStatus {
    guarded(|| {
        if a.is_null() || b.is_null() {
            return TmzvStatus::NullArgument;
        }
        let Some(kind) = product_kind(kind) else {
            return TmzvStatus::DomainError;
        };
        match product(kind, unsafe { &(*a).0 }, unsafe { &(*b).0 }) {
            Ok(e) => unsafe { write_out(out, TmzvElement(e)) },
            Err(e) => status_of(&e),
        }
    })
}

/// Expands the t-MZV at an admissible index given as an array of parts.
///
/// # Safety
/// `parts` must point to `len` valid entries and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tmzv_expand(
    parts: *const u32,
    len: usize,
    out: *mut *mut TmzvCombination,
) -> TmzvStatus {
    guarded(|| {
        if parts.is_null() || len == 0 {
            return TmzvStatus::NullArgument;
        }
        let parts = unsafe { std::slice::from_raw_parts(parts, len) }.to_vec();
        let idx = match Index::new(parts) {
            Ok(i) => i,
            Err(e) => return status_of(&e),
        };
        match tmzv::tmzv_expand(&idx) {
            Ok(c) => unsafe { write_out(out, TmzvCombination(c)) },
            Err(e) => status_of(&e),
        }
    })
}

/// Regularized evaluation of an h^1 element; `kind` is 0 for the shuffle
/// map, 1 for the harmonic map.
///
/// # Safety
/// `e` must be a live element handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tmzv_reg_eval(
    kind: c_int,
    e: *const TmzvElement,
    out: *mut *mut TmzvCombination,
) -> TmzvStatus {
    guarded(|| {
        if e.is_null() {
            return TmzvStatus::NullArgument;
        }
        let kind = match kind {
            0 => RegKind::Sh,
            1 => RegKind::St,
            _ => return TmzvStatus::DomainError,
        };
        match z_reg_eval(kind, unsafe { &(*e).0 }) {
            Ok(c) => unsafe { write_out(out, TmzvCombination(c)) },
            Err(e) => status_of(&e),
        }
    })
}

/// Frees a combination handle. Passing NULL is a no-op.
///
/// # Safety
/// `c` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tmzv_combination_free(c: *mut TmzvCombination) {
    if !c.is_null() {
        drop(unsafe { Box::from_raw(c) });
    }
}

/// Renders a combination as JSON. Free with tmzv_string_free.
///
/// # Safety
/// `c` must be a live combination handle.
#[no_mangle]
pub unsafe extern "C" fn tmzv_combination_to_json(c: *const TmzvCombination) -> *mut c_char {
    if c.is_null() {
        return ptr::null_mut();
    }
    let json = unsafe { &(*c).0 }.to_json().to_string();
    CString::new(json).map_or(ptr::null_mut(), CString::into_raw)
}

/// Evaluates the interpolated multiple zeta value at t = t_num/t_den.
/// Writes the value and an error bound estimate on success.
///
/// # Safety
/// Pointer arguments must be valid; `parts` must hold `len` entries.
#[no_mangle]
pub unsafe extern "C" fn tmzv_eval(
    parts: *const u32,
    len: usize,
    t_num: i64,
    t_den: i64,
    precision_bits: usize,
    tol: c_double,
    max_cutoff: u64,
    value: *mut c_double,
    error_bound: *mut c_double,
) -> TmzvStatus {
    guarded(|| {
        if parts.is_null() || len == 0 || value.is_null() || error_bound.is_null() {
            return TmzvStatus::NullArgument;
        }
        if t_den == 0 || precision_bits < 64 || !(tol > 0.0) {
            return TmzvStatus::DomainError;
        }
        let parts = unsafe { std::slice::from_raw_parts(parts, len) }.to_vec();
        let idx = match Index::new(parts) {
            Ok(i) => i,
            Err(e) => return status_of(&e),
        };
        let t = Rat::new(t_num.into(), t_den.into());
        let mut ctx = Ctx::new(precision_bits);
        match eval_tmzv(&idx, &t, &mut ctx, tol, max_cutoff) {
            Ok(r) => {
                unsafe {
                    *value = r.value_f64();
                    *error_bound = r.error_f64();
                }
                TmzvStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Frees a string returned by this library. Passing NULL is a no-op.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tmzv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    #[test]
    fn round_trip_product() {
        let x = CString::new("x").unwrap();
        let y = CString::new("y").unwrap();
        let mut a: *mut TmzvElement = ptr::null_mut();
        let mut b: *mut TmzvElement = ptr::null_mut();
        unsafe {
            assert!(tmzv_element_parse(x.as_ptr(), &mut a) == TmzvStatus::Ok);
            assert!(tmzv_element_parse(y.as_ptr(), &mut b) == TmzvStatus::Ok);
            let mut p: *mut TmzvElement = ptr::null_mut();
            assert!(tmzv_product(2, a, b, &mut p) == TmzvStatus::Ok);
            let s = tmzv_element_to_string(p, 0);
            let rendered = CStr::from_ptr(s).to_str().unwrap().to_string();
            assert_eq!(rendered, "-t*xx + xy + yx");
            tmzv_string_free(s);
            tmzv_element_free(p);
            tmzv_element_free(a);
            tmzv_element_free(b);
        }
    }

    #[test]
    fn eval_and_errors() {
        let parts = [2u32, 1];
        let (mut v, mut e) = (0.0f64, 0.0f64);
        unsafe {
            let st = tmzv_eval(parts.as_ptr(), 2, 1, 1, 256, 1e-10, 1 << 22, &mut v, &mut e);
            assert!(st == TmzvStatus::Ok);
        }
        let zeta3 = 1.2020569031595943;
        assert!((v - 2.0 * zeta3).abs() < 1e-9);
        let bad = [1u32, 2];
        unsafe {
            let st = tmzv_eval(bad.as_ptr(), 2, 0, 1, 256, 1e-10, 1 << 22, &mut v, &mut e);
            assert!(st == TmzvStatus::NotAdmissible);
        }
        unsafe {
            assert!(
                tmzv_eval(ptr::null(), 0, 0, 1, 256, 1e-10, 1, &mut v, &mut e)
                    == TmzvStatus::NullArgument
            );
        }
    }

    #[test]
    fn expand_to_json() {
        let parts = [2u32, 1];
        let mut c: *mut TmzvCombination = ptr::null_mut();
        unsafe {
            assert!(tmzv_expand(parts.as_ptr(), 2, &mut c) == TmzvStatus::Ok);
            let s = tmzv_combination_to_json(c);
            let text = CStr::from_ptr(s).to_str().unwrap().to_string();
            assert!(text.contains("2,1"));
            tmzv_string_free(s);
            tmzv_combination_free(c);
        }
    }
}
