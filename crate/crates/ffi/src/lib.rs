//! C ABI over `soft-bitop`.
//!
//! Spaces are built from the same JSON description the CLI reads and are
//! handed out as opaque `SbSpace` pointers. Every call returns an
//! [`SbStatus`]; on failure `sb_last_error` describes what went wrong on the
//! calling thread. Strings returned through out-pointers are owned by the
//! caller and must be released with `sb_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use soft_bitop::cli::description::{ResolvedDescription, SpaceDescription};
use soft_bitop::cli::{cmd_check, cmd_verify};
use soft_bitop::finite_sets::{family_separation, pairwise_separation};
use soft_bitop::pairwise::{
    component_bitop, induced_bitop, pairwise_soft, verify_theorems, SoftBitopSpace,
};
use soft_bitop::{Axiom, Error, PairReading};

/// Status codes. 1 to 3 match the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbStatus {
    Ok = 0,
    /// A theorem check failed.
    InvariantFailure = 1,
    /// Malformed description, unknown names, bad arguments.
    Input = 2,
    /// A capacity guard was hit.
    Capacity = 3,
    NullPointer = 4,
    /// A string argument was not valid UTF-8.
    Utf8 = 5,
    /// The library panicked; the handle should not be used further.
    Panic = 6,
}

/// Separation axioms, passed as `uint32_t`.
pub const SB_AXIOM_T0: u32 = 0;
pub const SB_AXIOM_T1: u32 = 1;
pub const SB_AXIOM_T2: u32 = 2;

/// A resolved space description.
pub struct SbSpace {
    json: String,
    resolved: ResolvedDescription,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(SbStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if e.is_capacity() {
            SbStatus::Capacity
        } else {
            SbStatus::Input
        };
        Failure(status, e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

fn guard(f: impl FnOnce() -> FfiResult<()>) -> SbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SbStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            SbStatus::Panic
        }
    }
}

fn non_null<T>(p: *const T, what: &str) -> FfiResult<()> {
    if p.is_null() {
        Err(Failure(SbStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

/// # Safety
/// `space` is null or a live handle.
unsafe fn space_ref<'a>(space: *const SbSpace) -> FfiResult<&'a SbSpace> {
    non_null(space, "space")?;
    Ok(&*space)
}

fn bitop(space: &SbSpace) -> FfiResult<&SoftBitopSpace> {
    space
        .resolved
        .space
        .as_ref()
        .ok_or_else(|| Failure(SbStatus::Input, "description has no soft topologies".into()))
}

fn axiom(code: u32) -> FfiResult<Axiom> {
    match code {
        SB_AXIOM_T0 => Ok(Axiom::T0),
        SB_AXIOM_T1 => Ok(Axiom::T1),
        SB_AXIOM_T2 => Ok(Axiom::T2),
        other => Err(Failure(
            SbStatus::Input,
            format!("unknown axiom code {other}"),
        )),
    }
}

fn write_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    let c = CString::new(s)
        .map_err(|_| Failure(SbStatus::Input, "report contains a nul byte".into()))?;
    // SAFETY: checked non-null by the caller.
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses and resolves a JSON space description.
///
/// # Safety
/// `json` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn sb_space_from_json(
    json: *const c_char,
    out: *mut *mut SbSpace,
) -> SbStatus {
    guard(|| {
        non_null(json, "json")?;
        non_null(out, "out")?;
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(SbStatus::Utf8, e.to_string()))?
            .to_string();
        let resolved = SpaceDescription::from_json(&text)?.resolve()?;
        *out = Box::into_raw(Box::new(SbSpace {
            json: text,
            resolved,
        }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `space` is null or a handle from `sb_space_from_json` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sb_space_free(space: *mut SbSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Number of soft elements of the ambient soft set.
///
/// # Safety
/// `space` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn sb_space_se_count(space: *const SbSpace, out: *mut usize) -> SbStatus {
    guard(|| {
        non_null(out, "out")?;
        let s = bitop(space_ref(space)?)?;
        *out = s.soft_elements().len();
        Ok(())
    })
}

/// Number of parameters.
///
/// # Safety
/// `space` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn sb_space_param_count(space: *const SbSpace, out: *mut usize) -> SbStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = bitop(space_ref(space)?)?.param_count();
        Ok(())
    })
}

/// Pairwise soft separation of the space.
///
/// # Safety
/// `space` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn sb_space_soft_separation(
    space: *const SbSpace,
    axiom_code: u32,
    out: *mut bool,
) -> SbStatus {
    guard(|| {
        non_null(out, "out")?;
        let s = bitop(space_ref(space)?)?;
        *out = pairwise_soft(s, axiom(axiom_code)?).holds;
        Ok(())
    })
}

/// Pairwise separation of the induced pair on the soft elements.
///
/// # Safety
/// `space` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn sb_space_induced_separation(
    space: *const SbSpace,
    axiom_code: u32,
    out: *mut bool,
) -> SbStatus {
    guard(|| {
        non_null(out, "out")?;
        let s = bitop(space_ref(space)?)?;
        let a = axiom(axiom_code)?;
        *out = family_separation(&induced_bitop(s)?, a, PairReading::Ordered).holds();
        Ok(())
    })
}

/// Pairwise separation of the component pair at parameter `param`.
///
/// # Safety
/// `space` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn sb_space_component_separation(
    space: *const SbSpace,
    param: usize,
    axiom_code: u32,
    out: *mut bool,
) -> SbStatus {
    guard(|| {
        non_null(out, "out")?;
        let s = bitop(space_ref(space)?)?;
        let a = axiom(axiom_code)?;
        *out = pairwise_separation(&component_bitop(s, param)?, a, PairReading::Ordered).holds();
        Ok(())
    })
}

/// Runs every theorem check. Returns `INVARIANT_FAILURE` if any check
/// fails; the number of failing checks is written to `failures` when it is
/// not null.
///
/// # Safety
/// `space` is a live handle; `failures` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn sb_space_verify(space: *const SbSpace, failures: *mut usize) -> SbStatus {
    guard(|| {
        let s = bitop(space_ref(space)?)?;
        let report = verify_theorems(s)?;
        let ids: Vec<&str> = report.failures().map(|c| c.id.as_str()).collect();
        if !failures.is_null() {
            *failures = ids.len();
        }
        if !ids.is_empty() {
            return Err(Failure(
                SbStatus::InvariantFailure,
                format!("failed: {}", ids.join(", ")),
            ));
        }
        Ok(())
    })
}

/// JSON report identical to `soft-bitop --json check` (`verify` false) or
/// `soft-bitop --json verify` (`verify` true). Free with `sb_string_free`.
///
/// # Safety
/// `space` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn sb_space_report_json(
    space: *const SbSpace,
    verify: bool,
    out: *mut *mut c_char,
) -> SbStatus {
    guard(|| {
        non_null(out, "out")?;
        let s = space_ref(space)?;
        let report = if verify {
            cmd_verify(&s.json)?
        } else {
            cmd_check(&s.json)?
        };
        write_string(out, report.to_json())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
