//! C ABI for `frobext`.
//!
//! Objects are opaque handles created by `*_new` / `*_from_json` functions
//! and released with the matching `*_free`. Every fallible function returns
//! a `FrobStatus`; on failure `frob_last_error_message` describes the error
//! for the calling thread. Strings returned through out-parameters must be
//! released with `frob_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use frobext::extension::{certify, check_condition, homogeneous_weight, DEFAULT_LATTICE_CAP};
use frobext::finring::{build_ring, DEFAULT_SIZE_CAP};
use frobext::mobius::{build_cyclic_poset, mobius_by_character, mobius_report};
use frobext::sgring::WeightFn;
use frobext::{generating_character_search, Error, FiniteRing, FrobeniusBimodule, RingSpec};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrobStatus {
    Ok = 0,
    NullPointer = -1,
    Input = -2,
    Resource = -3,
    Condition = -4,
    Internal = -5,
    Panic = -6,
    Utf8 = -7,
}

/// A finite ring.
pub struct FrobRing {
    inner: Arc<FiniteRing>,
}

/// The character bimodule of a ring, with its generating character.
pub struct FrobBimodule {
    inner: Arc<FrobeniusBimodule>,
}

/// A weight on a bimodule.
pub struct FrobWeight {
    inner: WeightFn,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> FrobStatus {
    match err.kind() {
        "input" => FrobStatus::Input,
        "resource" => FrobStatus::Resource,
        "condition" => FrobStatus::Condition,
        _ => FrobStatus::Internal,
    }
}

enum Failure {
    Null(&'static str),
    Utf8,
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `body`, translating errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FrobStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => FrobStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            FrobStatus::NullPointer
        }
        Ok(Err(Failure::Utf8)) => {
            set_error("string argument is not valid UTF-8".into());
            FrobStatus::Utf8
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("panic inside frobext".into());
            FrobStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8)
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn frob_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a ring from a JSON description (`{"kind": "zn", "n": 4}` etc.).
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frob_ring_from_json(json: *const c_char, out: *mut *mut FrobRing) -> FrobStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let ring = build_ring(&RingSpec::from_json(text)?, DEFAULT_SIZE_CAP)?;
        let handle = Box::into_raw(Box::new(FrobRing { inner: Arc::new(ring) }));
        write_out(out, handle, "out")
    })
}

/// # Safety
/// `ring` must come from `frob_ring_from_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn frob_ring_free(ring: *mut FrobRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frob_ring_size(ring: *const FrobRing, out: *mut usize) -> FrobStatus {
    guard(|| write_out(out, borrow(ring, "ring")?.inner.size(), "out"))
}

/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frob_ring_unit_count(ring: *const FrobRing, out: *mut usize) -> FrobStatus {
    guard(|| write_out(out, borrow(ring, "ring")?.inner.units().len(), "out"))
}

/// Whether the ring admits a generating character.
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frob_ring_is_frobenius(ring: *const FrobRing, out: *mut bool) -> FrobStatus {
    guard(|| {
        let found = generating_character_search(&borrow(ring, "ring")?.inner).is_some();
        write_out(out, found, "out")
    })
}

/// Builds the character bimodule of `ring`.
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frob_bimodule_new(ring: *const FrobRing, out: *mut *mut FrobBimodule) -> FrobStatus {
    guard(|| {
        let module = FrobeniusBimodule::dual(Arc::clone(&borrow(ring, "ring")?.inner))?;
        let handle = Box::into_raw(Box::new(FrobBimodule { inner: Arc::new(module) }));
        write_out(out, handle, "out")
    })
}

/// # Safety
/// `module` must come from `frob_bimodule_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn frob_bimodule_free(module: *mut FrobBimodule) {
    if !module.is_null() {
        drop(Box::from_raw(module));
    }
}

/// Reads a weight table: a JSON object mapping element labels to integers
/// or rational strings.
///
/// # Safety
/// `module` must be a live handle, `json` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn frob_weight_from_json(
    module: *const FrobBimodule,
    json: *const c_char,
    out: *mut *mut FrobWeight,
) -> FrobStatus {
    guard(|| {
        let m = Arc::clone(&borrow(module, "module")?.inner);
        let w = WeightFn::from_json(m, read_str(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(FrobWeight { inner: w })), "out")
    })
}

/// The homogeneous weight of `module`.
///
/// # Safety
/// `module` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frob_weight_homogeneous(module: *const FrobBimodule, out: *mut *mut FrobWeight) -> FrobStatus {
    guard(|| {
        let w = homogeneous_weight(&borrow(module, "module")?.inner);
        write_out(out, Box::into_raw(Box::new(FrobWeight { inner: w })), "out")
    })
}

/// # Safety
/// `weight` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn frob_weight_free(weight: *mut FrobWeight) {
    if !weight.is_null() {
        drop(Box::from_raw(weight));
    }
}

/// Whether the weight satisfies the submodule condition.
///
/// # Safety
/// `weight` must be a live handle; `holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frob_check_condition(weight: *const FrobWeight, holds: *mut bool) -> FrobStatus {
    guard(|| {
        let report = check_condition(&borrow(weight, "weight")?.inner, DEFAULT_LATTICE_CAP)?;
        write_out(holds, report.holds, "holds")
    })
}

/// The full extension certificate as JSON.
///
/// # Safety
/// `weight` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frob_certify_json(weight: *const FrobWeight, out_json: *mut *mut c_char) -> FrobStatus {
    guard(|| {
        let cert = certify(&borrow(weight, "weight")?.inner, DEFAULT_LATTICE_CAP)?;
        let text = serde_json::to_string(&cert).map_err(Error::from)?;
        write_out(out_json, to_c_string(text), "out_json")
    })
}

/// Möbius table rows `(representative, size, mu)` as JSON.
///
/// # Safety
/// `module` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frob_mobius_json(module: *const FrobBimodule, out_json: *mut *mut c_char) -> FrobStatus {
    guard(|| {
        let m = &borrow(module, "module")?.inner;
        let poset = build_cyclic_poset(m)?;
        let mu = mobius_by_character(m, &poset)?;
        let text = serde_json::to_string(&mobius_report(m, &poset, &mu)).map_err(Error::from)?;
        write_out(out_json, to_c_string(text), "out_json")
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn frob_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
