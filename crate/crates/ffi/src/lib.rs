//! C ABI for `szabo-core`.
//!
//! Objects cross the boundary as opaque handles; structured results as
//! NUL-terminated JSON strings owned by the library (release them with
//! [`sz_string_free`]). Every function returns an [`SzStatus`]; on failure
//! the message is available from [`sz_last_error_message`] on the same thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use szabo_core::curvature::{self, CovDerivTensor};
use szabo_core::json::{self, OperatorJson};
use szabo_core::obstruction::{self, WolfVerdict};
use szabo_core::polydep::{self, PolyMapFamily};
use szabo_core::szaboclass::{self, HomPolyMap};
use szabo_core::{Error, Signature};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Inapplicable = 5,
    Internal = 6,
}

/// Covariant derivative of curvature on a flat model space.
pub struct SzTensor(CovDerivTensor);
/// Homogeneous polynomial map into square matrices.
pub struct SzPolyMap(HomPolyMap);
/// Family of vector-valued polynomial maps.
pub struct SzFamily(PolyMapFamily);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn status_of(e: &Error) -> SzStatus {
    match e {
        Error::Parse(_) | Error::Json(_) | Error::Io(_) => SzStatus::Parse,
        Error::InadmissibleSignature { .. } | Error::Inapplicable(_) | Error::Precondition(_) => {
            SzStatus::Inapplicable
        }
        _ => SzStatus::Domain,
    }
}

enum Fail {
    Null,
    Utf8,
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SzStatus::Ok,
        Ok(Err(Fail::Null)) => {
            set_error("null pointer argument");
            SzStatus::NullPointer
        }
        Ok(Err(Fail::Utf8)) => {
            set_error("argument is not valid UTF-8");
            SzStatus::InvalidUtf8
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            SzStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null);
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Utf8)
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null)
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail::Core(Error::Parse("interior NUL".into())))?;
    put(out, c.into_raw())
}

unsafe fn put_box<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    put(out, Box::into_raw(Box::new(v)))
}

fn sig(p: u32, q: u32) -> Result<Signature, Fail> {
    Ok(Signature::new(p as usize, q as usize)?)
}

/// Message of the last failure on this thread. The pointer stays valid until
/// the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn sz_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub unsafe extern "C" fn sz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn sz_tensor_from_json(
    text: *const c_char,
    out: *mut *mut SzTensor,
) -> SzStatus {
    guard(|| put_box(out, SzTensor(json::tensor_from_str(str_arg(text)?)?)))
}

/// Seeded random tensor satisfying every symmetry.
#[no_mangle]
pub unsafe extern "C" fn sz_tensor_random(
    p: u32,
    q: u32,
    seed: u64,
    out: *mut *mut SzTensor,
) -> SzStatus {
    guard(|| {
        put_box(
            out,
            SzTensor(curvature::random_symmetric_tensor(sig(p, q)?, seed)?),
        )
    })
}

#[no_mangle]
pub unsafe extern "C" fn sz_tensor_to_json(t: *const SzTensor, out: *mut *mut c_char) -> SzStatus {
    guard(|| put_string(out, json::tensor_to_string(&handle(t)?.0)))
}

/// Number of violated symmetry equations.
#[no_mangle]
pub unsafe extern "C" fn sz_tensor_check_symmetries(
    t: *const SzTensor,
    violations: *mut usize,
) -> SzStatus {
    guard(|| put(violations, curvature::check_symmetries(&handle(t)?.0).len()))
}

/// Szabó operator at `vector` (`"1,0,1/2"`), as operator JSON.
#[no_mangle]
pub unsafe extern "C" fn sz_tensor_szabo_at_json(
    t: *const SzTensor,
    vector: *const c_char,
    out: *mut *mut c_char,
) -> SzStatus {
    guard(|| {
        let t = &handle(t)?.0;
        let v = json::parse_vector(str_arg(vector)?)?;
        let a = curvature::szabo_at(t, &v)?;
        let s =
            serde_json::to_string(&OperatorJson::new(t.signature(), &a)).map_err(Error::from)?;
        put_string(out, s)
    })
}

#[no_mangle]
pub unsafe extern "C" fn sz_tensor_szabo_polymap(
    t: *const SzTensor,
    out: *mut *mut SzPolyMap,
) -> SzStatus {
    guard(|| put_box(out, SzPolyMap(curvature::szabo_polymap(&handle(t)?.0)?)))
}

#[no_mangle]
pub unsafe extern "C" fn sz_tensor_free(t: *mut SzTensor) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

#[no_mangle]
pub unsafe extern "C" fn sz_polymap_from_json(
    text: *const c_char,
    out: *mut *mut SzPolyMap,
) -> SzStatus {
    guard(|| put_box(out, SzPolyMap(json::polymap_from_str(str_arg(text)?)?)))
}

#[no_mangle]
pub unsafe extern "C" fn sz_polymap_to_json(
    s: *const SzPolyMap,
    out: *mut *mut c_char,
) -> SzStatus {
    guard(|| put_string(out, json::polymap_to_string(&handle(s)?.0)))
}

/// Writes `n` when the map is in the class of degree `2n+1`, else -1.
#[no_mangle]
pub unsafe extern "C" fn sz_polymap_pclass_member(s: *const SzPolyMap, n: *mut i32) -> SzStatus {
    guard(|| {
        let r = szaboclass::pclass_check(&handle(s)?.0);
        let v = match r.n {
            Some(k) if r.is_member() => k as i32,
            _ => -1,
        };
        put(n, v)
    })
}

/// Least power vanishing on the nullcone, or -1 when none up to `m` does.
#[no_mangle]
pub unsafe extern "C" fn sz_polymap_vanishing_order(
    s: *const SzPolyMap,
    order: *mut i32,
) -> SzStatus {
    guard(|| {
        let r = szaboclass::vanishing_order_on_nullcone(&handle(s)?.0)?;
        put(order, r.order.map_or(-1, |o| o as i32))
    })
}

#[no_mangle]
pub unsafe extern "C" fn sz_polymap_free(s: *mut SzPolyMap) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn sz_family_from_json(
    text: *const c_char,
    out: *mut *mut SzFamily,
) -> SzStatus {
    guard(|| put_box(out, SzFamily(json::family_from_str(str_arg(text)?)?)))
}

/// Dependence degree, or -1 for the zero ideal.
#[no_mangle]
pub unsafe extern "C" fn sz_family_dependence_degree(f: *const SzFamily, k: *mut i64) -> SzStatus {
    guard(|| {
        let d = polydep::dependence_degree(&handle(f)?.0)?;
        put(k, d.map_or(-1, i64::from))
    })
}

#[no_mangle]
pub unsafe extern "C" fn sz_family_free(f: *mut SzFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// 1 for locally symmetric, 0 for inconclusive.
#[no_mangle]
pub unsafe extern "C" fn sz_wolf_verdict(p: u32, q: u32, symmetric: *mut i32) -> SzStatus {
    guard(|| {
        let (v, _) = obstruction::wolf_verdict(p as usize, q as usize)?;
        put(symmetric, i32::from(v == WolfVerdict::LocallySymmetric))
    })
}

#[no_mangle]
pub unsafe extern "C" fn sz_wolf_trace_json(p: u32, q: u32, out: *mut *mut c_char) -> SzStatus {
    guard(|| {
        let (_, t) = obstruction::wolf_verdict(p as usize, q as usize)?;
        put_string(out, serde_json::to_string(&t).map_err(Error::from)?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn sz_phi(n: u64, out: *mut u64) -> SzStatus {
    guard(|| put(out, obstruction::phi(n)?))
}

/// Proof trace for one rank question. `case` is 1, 2 or 3; `k` is read only
/// by case 3 and `rank_max` only by case 2.
#[no_mangle]
pub unsafe extern "C" fn sz_obstruction_json(
    case: u32,
    n: u64,
    k: u64,
    r: u64,
    rank_max: u64,
    out: *mut *mut c_char,
) -> SzStatus {
    guard(|| {
        let t = match case {
            1 => obstruction::techn_case1(n, r)?,
            2 => obstruction::techn_case2(n, r, rank_max)?,
            3 => obstruction::techn_case3(n, k, r)?,
            c => return Err(Error::Parse(format!("case must be 1, 2 or 3, got {c}")).into()),
        };
        put_string(out, serde_json::to_string(&t).map_err(Error::from)?)
    })
}
