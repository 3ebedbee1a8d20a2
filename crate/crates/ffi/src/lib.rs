//! C ABI over `gray2`.
//!
//! Every fallible function returns a [`Gray2Status`] and writes its result through an
//! out-pointer. On failure, [`gray2_last_error`] gives a message for the calling thread.
//! Handles and strings returned by this library must be released with
//! [`gray2_twocat_free`] and [`gray2_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use gray2::cli::{run_suite, shuffles_out, Format, RunReport, Settings, Suite};
use gray2::gray::{gray_colax, gray_lax};
use gray2::phi::phi_obj;
use gray2::theta2::Theta2Obj;
use gray2::twocat::{iso_two_cats, realize, to_dot, Corruption, FunctorSearch, SearchError, SearchOptions, TwoCat};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gray2Status {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    BudgetExceeded = 5,
    CheckFailed = 6,
    Panic = 7,
}

/// Opaque handle to a finite strict 2-category.
pub struct Gray2TwoCat {
    inner: TwoCat,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

struct Fail(Gray2Status, String);

type FfiResult<T> = Result<T, Fail>;

fn guard(f: impl FnOnce() -> FfiResult<()>) -> Gray2Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            Gray2Status::Ok
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            Gray2Status::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Fail(Gray2Status::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(Gray2Status::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn obj_arg(p: *const c_char, what: &str) -> FfiResult<Theta2Obj> {
    str_arg(p, what)?
        .parse::<Theta2Obj>()
        .map_err(|e| Fail(Gray2Status::Parse, format!("{what}: {e}")))
}

unsafe fn cat_arg<'a>(h: *const Gray2TwoCat, what: &str) -> FfiResult<&'a TwoCat> {
    h.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Fail(Gray2Status::NullPointer, format!("{what} is null")))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(Fail(Gray2Status::NullPointer, "output pointer is null".into()));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_cat(out: *mut *mut Gray2TwoCat, c: TwoCat) -> FfiResult<()> {
    if out.is_null() {
        return Err(Fail(Gray2Status::NullPointer, "output pointer is null".into()));
    }
    out.write(Box::into_raw(Box::new(Gray2TwoCat { inner: c })));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    if out.is_null() {
        return Err(Fail(Gray2Status::NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|e| Fail(Gray2Status::Invalid, e.to_string()))?;
    out.write(c.into_raw());
    Ok(())
}

fn budget_fail(e: SearchError) -> Fail {
    Fail(Gray2Status::BudgetExceeded, e.to_string())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn gray2_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Realization of a Theta_2 object written as `[k](n_1,...,n_k)`.
///
/// # Safety
/// `obj` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gray2_realize(obj: *const c_char, out: *mut *mut Gray2TwoCat) -> Gray2Status {
    guard(|| put_cat(out, realize(&obj_arg(obj, "obj")?)))
}

/// Colax Gray tensor product of two realizations.
///
/// # Safety
/// `left` and `right` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gray2_gray_colax(
    left: *const c_char,
    right: *const c_char,
    out: *mut *mut Gray2TwoCat,
) -> Gray2Status {
    guard(|| put_cat(out, gray_colax(&obj_arg(left, "left")?, &obj_arg(right, "right")?)))
}

/// Lax Gray tensor product of two realizations.
///
/// # Safety
/// As for [`gray2_gray_colax`].
#[no_mangle]
pub unsafe extern "C" fn gray2_gray_lax(
    left: *const c_char,
    right: *const c_char,
    out: *mut *mut Gray2TwoCat,
) -> Gray2Status {
    guard(|| put_cat(out, gray_lax(&obj_arg(left, "left")?, &obj_arg(right, "right")?)))
}

/// The cylinder object on `obj` with `m` steps.
///
/// # Safety
/// `obj` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gray2_phi_obj(obj: *const c_char, m: usize, out: *mut *mut Gray2TwoCat) -> Gray2Status {
    guard(|| put_cat(out, phi_obj(&obj_arg(obj, "obj")?, m)))
}

/// Parses and validates a 2-category from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gray2_twocat_from_json(json: *const c_char, out: *mut *mut Gray2TwoCat) -> Gray2Status {
    guard(|| {
        let c: TwoCat = serde_json::from_str(str_arg(json, "json")?).map_err(|e| Fail(Gray2Status::Parse, e.to_string()))?;
        put_cat(out, c)
    })
}

/// # Safety
/// `h` must be a live handle; `out` must be writable. Free the result with [`gray2_string_free`].
#[no_mangle]
pub unsafe extern "C" fn gray2_twocat_to_json(h: *const Gray2TwoCat, out: *mut *mut c_char) -> Gray2Status {
    guard(|| {
        let s = serde_json::to_string(cat_arg(h, "handle")?).map_err(|e| Fail(Gray2Status::Invalid, e.to_string()))?;
        put_string(out, s)
    })
}

/// # Safety
/// As for [`gray2_twocat_to_json`].
#[no_mangle]
pub unsafe extern "C" fn gray2_twocat_to_dot(h: *const Gray2TwoCat, out: *mut *mut c_char) -> Gray2Status {
    guard(|| put_string(out, to_dot(cat_arg(h, "handle")?)))
}

/// Numbers of objects, 1-cells and 2-cells.
///
/// # Safety
/// `h` must be a live handle; each out-pointer must be writable.
#[no_mangle]
pub unsafe extern "C" fn gray2_twocat_counts(
    h: *const Gray2TwoCat,
    objects: *mut usize,
    one_cells: *mut usize,
    two_cells: *mut usize,
) -> Gray2Status {
    guard(|| {
        let (a, b, c) = cat_arg(h, "handle")?.counts();
        write_out(objects, a)?;
        write_out(one_cells, b)?;
        write_out(two_cells, c)
    })
}

/// Number of strict 2-functors `src -> tgt`, exploring at most `budget` search nodes.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gray2_count_two_functors(
    src: *const Gray2TwoCat,
    tgt: *const Gray2TwoCat,
    budget: u64,
    out: *mut u64,
) -> Gray2Status {
    guard(|| {
        let (s, t) = (cat_arg(src, "src")?, cat_arg(tgt, "tgt")?);
        let opts = SearchOptions { budget, ..Default::default() };
        let n = FunctorSearch::new(s).count(t, &opts).map_err(budget_fail)?;
        write_out(out, n)
    })
}

/// Whether two 2-categories are isomorphic.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gray2_twocat_isomorphic(
    a: *const Gray2TwoCat,
    b: *const Gray2TwoCat,
    budget: u64,
    out: *mut bool,
) -> Gray2Status {
    guard(|| {
        let r = iso_two_cats(cat_arg(a, "a")?, cat_arg(b, "b")?, budget).map_err(budget_fail)?;
        write_out(out, r.is_some())
    })
}

/// Runs a verification suite with the default probes and writes its JSON report.
///
/// `suite` is one of `segal`, `graytenscolim`, `phieq`, `odot`, `mates`, `all`.
/// `corrupt` is null, `extra-object` or `collapse2-cells`. Returns
/// [`Gray2Status::CheckFailed`] when some check does not pass; the report is written anyway.
///
/// # Safety
/// `suite` must be a NUL-terminated string, `corrupt` null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gray2_verify_suite(
    suite: *const c_char,
    corrupt: *const c_char,
    budget: u64,
    out: *mut *mut c_char,
) -> Gray2Status {
    guard(|| {
        let name = str_arg(suite, "suite")?;
        let suite = Suite::parse(name).ok_or_else(|| Fail(Gray2Status::Parse, format!("unknown suite {name:?}")))?;
        let corrupt = if corrupt.is_null() {
            None
        } else {
            Some(match str_arg(corrupt, "corrupt")? {
                "extra-object" => Corruption::ExtraObject,
                "collapse2-cells" => Corruption::Collapse2Cells,
                other => return Err(Fail(Gray2Status::Parse, format!("unknown corruption {other:?}"))),
            })
        };
        let settings = Settings { budget, corrupt, format: Format::Json, ..Settings::default() };
        let report = RunReport::new(format!("verify {}", suite.name()), run_suite(suite, &settings));
        let passed = report.passed;
        let json = serde_json::to_string(&report).map_err(|e| Fail(Gray2Status::Invalid, e.to_string()))?;
        put_string(out, json)?;
        if passed {
            Ok(())
        } else {
            Err(Fail(Gray2Status::CheckFailed, format!("verify {} has failing checks", suite.name())))
        }
    })
}

/// Maximal chains of the `k x m` grid as JSON nodes and cover edges.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gray2_shuffles_json(k: usize, m: usize, out: *mut *mut c_char) -> Gray2Status {
    guard(|| put_string(out, shuffles_out(k, m, Format::Json)))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gray2_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `h` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gray2_twocat_free(h: *mut Gray2TwoCat) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn null_arguments_are_reported() {
        let mut h = ptr::null_mut();
        let st = unsafe { gray2_realize(ptr::null(), &mut h) };
        assert_eq!(st, Gray2Status::NullPointer);
        assert!(h.is_null());
        let msg = unsafe { CStr::from_ptr(gray2_last_error()) };
        assert!(msg.to_str().unwrap().contains("null"));
    }

    #[test]
    fn error_clears_after_success() {
        let bad = CString::new("[1](").unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(unsafe { gray2_realize(bad.as_ptr(), &mut h) }, Gray2Status::Parse);
        let good = CString::new("[1](1)").unwrap();
        assert_eq!(unsafe { gray2_realize(good.as_ptr(), &mut h) }, Gray2Status::Ok);
        assert!(unsafe { CStr::from_ptr(gray2_last_error()) }.to_bytes().is_empty());
        unsafe { gray2_twocat_free(h) };
    }
}
