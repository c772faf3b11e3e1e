//! C ABI over the `mendeleev` crate.
//!
//! Every fallible function returns an [`MdlStatus`]; on failure a message is
//! kept per thread and can be read with [`mdl_last_error`]. Registries and
//! fitted models cross the boundary as opaque handles that must be released
//! with their `_free` function. Strings returned to the caller are owned by
//! the caller and released with [`mdl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::io::BufReader;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mendeleev::aufbau::configuration_of;
use mendeleev::fit::{fit_with, FitModel, FitOptions, FitScope, IntegrityBasis};
use mendeleev::navigation::{MoveAlgebra, Navigator};
use mendeleev::registry::{PropertyDataset, Registry, Status};
use mendeleev::table::{family_of, Family};
use mendeleev::{quartet_of, z_of, Error, Quartet};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MdlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidQuartet = 2,
    Domain = 3,
    Parse = 4,
    Fit = 5,
    Io = 6,
    Unreachable = 7,
    Panic = 8,
}

/// Quartet `(n, l, j, m)` with `j` and `m` doubled.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MdlQuartet {
    pub n: u32,
    pub l: u32,
    pub j2: u32,
    pub m2: i32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MdlFamily {
    AlkaliMetal = 0,
    AlkalineEarth = 1,
    Chalcogen = 2,
    Halogen = 3,
    NobleGas = 4,
    Other = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MdlElementStatus {
    NamedObserved = 0,
    ObservedUnnamed = 1,
    Unobserved = 2,
}

/// Bits for `algebra_mask` in [`mdl_shortest_path_len`].
pub const MDL_MOVE_SO3XSU2: u32 = 1;
pub const MDL_MOVE_SO4XSU2: u32 = 2;
pub const MDL_MOVE_SO21: u32 = 4;
pub const MDL_MOVE_SO42XSU2: u32 = 8;

/// Opaque element registry.
pub struct MdlRegistry(Registry);

/// Opaque fitted model.
pub struct MdlModel(FitModel);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn fail(status: MdlStatus, message: impl Into<String>) -> MdlStatus {
    set_error(message);
    status
}

fn status_of(err: &Error) -> MdlStatus {
    match err {
        Error::InvalidQuartet(_) => MdlStatus::InvalidQuartet,
        Error::Domain(_) | Error::SingleSubBlock | Error::Conflict(_) => MdlStatus::Domain,
        Error::Parse { .. } | Error::Schema(_) | Error::Json(_) => MdlStatus::Parse,
        Error::Fit(_) => MdlStatus::Fit,
        Error::Io(_) => MdlStatus::Io,
    }
}

fn from_error(err: Error) -> MdlStatus {
    let status = status_of(&err);
    fail(status, err.to_string())
}

/// Runs `body`, turning a panic into `MdlStatus::Panic`.
fn guard(body: impl FnOnce() -> MdlStatus) -> MdlStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| fail(MdlStatus::Panic, "internal panic"))
}

fn to_quartet(q: MdlQuartet) -> Result<Quartet, MdlStatus> {
    Quartet::new(q.n, q.l, q.j2, q.m2).map_err(from_error)
}

fn from_quartet(q: &Quartet) -> MdlQuartet {
    MdlQuartet { n: q.n(), l: q.l(), j2: q.j2(), m2: q.m2() }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, MdlStatus> {
    if text.is_null() {
        return Err(fail(MdlStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(MdlStatus::Parse, "string argument is not UTF-8"))
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mdl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `text` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn mdl_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// # Safety
/// `out_z` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mdl_z_of(q: MdlQuartet, out_z: *mut u64) -> MdlStatus {
    guard(|| {
        if out_z.is_null() {
            return fail(MdlStatus::NullPointer, "out_z is null");
        }
        match to_quartet(q) {
            Ok(q) => {
                *out_z = z_of(&q);
                MdlStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mdl_quartet_of(z: u64, out: *mut MdlQuartet) -> MdlStatus {
    guard(|| {
        if out.is_null() {
            return fail(MdlStatus::NullPointer, "out is null");
        }
        match quartet_of(z) {
            Ok(q) => {
                *out = from_quartet(&q);
                MdlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mdl_family_of(q: MdlQuartet, out: *mut MdlFamily) -> MdlStatus {
    guard(|| {
        if out.is_null() {
            return fail(MdlStatus::NullPointer, "out is null");
        }
        let q = match to_quartet(q) {
            Ok(q) => q,
            Err(status) => return status,
        };
        *out = match family_of(&q) {
            Family::AlkaliMetal => MdlFamily::AlkaliMetal,
            Family::AlkalineEarth => MdlFamily::AlkalineEarth,
            Family::Chalcogen => MdlFamily::Chalcogen,
            Family::Halogen => MdlFamily::Halogen,
            Family::NobleGas => MdlFamily::NobleGas,
            Family::Other => MdlFamily::Other,
        };
        MdlStatus::Ok
    })
}

/// Idealized configuration of element `z` in conventional notation
/// (`1s2 2s2 2p6 ...`). Free the result with [`mdl_string_free`].
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mdl_configuration(z: u64, out: *mut *mut c_char) -> MdlStatus {
    guard(|| {
        if out.is_null() {
            return fail(MdlStatus::NullPointer, "out is null");
        }
        match configuration_of(z) {
            Ok(c) => {
                *out = into_c_string(c.to_string());
                MdlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Number of steps on a shortest path between two cells using the algebras
/// in `algebra_mask` (`MDL_MOVE_*` bits), visiting only cells with
/// `Z <= max_z`. Returns `MdlStatus::Unreachable` when no path exists.
///
/// # Safety
/// `out_steps` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mdl_shortest_path_len(
    from: MdlQuartet,
    to: MdlQuartet,
    algebra_mask: u32,
    max_z: u64,
    out_steps: *mut usize,
) -> MdlStatus {
    guard(|| {
        if out_steps.is_null() {
            return fail(MdlStatus::NullPointer, "out_steps is null");
        }
        let (from, to) = match (to_quartet(from), to_quartet(to)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let allowed: Vec<MoveAlgebra> = MoveAlgebra::ALL
            .iter()
            .enumerate()
            .filter(|(i, _)| algebra_mask & (1 << i) != 0)
            .map(|(_, a)| *a)
            .collect();
        if allowed.is_empty() {
            return fail(MdlStatus::Domain, "algebra_mask selects no algebra");
        }
        match Navigator::new(max_z).shortest_path(&from, &to, &allowed) {
            Some(path) => {
                *out_steps = path.len();
                MdlStatus::Ok
            }
            None => fail(MdlStatus::Unreachable, "no path within the bound"),
        }
    })
}

/// The built-in 2006 registry snapshot. Release with [`mdl_registry_free`].
#[no_mangle]
pub extern "C" fn mdl_registry_snapshot() -> *mut MdlRegistry {
    Box::into_raw(Box::new(MdlRegistry(Registry::snapshot())))
}

/// Loads a registry CSV (`z,symbol,name,status`).
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mdl_registry_load(path: *const c_char, out: *mut *mut MdlRegistry) -> MdlStatus {
    guard(|| {
        if out.is_null() {
            return fail(MdlStatus::NullPointer, "out is null");
        }
        let path = match read_str(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match Registry::load_path(path) {
            Ok(reg) => {
                *out = Box::into_raw(Box::new(MdlRegistry(reg)));
                MdlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `registry` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mdl_registry_free(registry: *mut MdlRegistry) {
    if !registry.is_null() {
        drop(Box::from_raw(registry));
    }
}

/// # Safety
/// `registry` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mdl_registry_status(
    registry: *const MdlRegistry,
    z: u64,
    out: *mut MdlElementStatus,
) -> MdlStatus {
    guard(|| {
        if registry.is_null() || out.is_null() {
            return fail(MdlStatus::NullPointer, "null registry or out pointer");
        }
        *out = match (*registry).0.status(z) {
            Status::NamedObserved => MdlElementStatus::NamedObserved,
            Status::ObservedUnnamed => MdlElementStatus::ObservedUnnamed,
            Status::Unobserved => MdlElementStatus::Unobserved,
        };
        MdlStatus::Ok
    })
}

/// Symbol of element `z`, or NULL in `*out` when the element has none.
/// Free a non-NULL result with [`mdl_string_free`].
///
/// # Safety
/// `registry` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mdl_registry_symbol(
    registry: *const MdlRegistry,
    z: u64,
    out: *mut *mut c_char,
) -> MdlStatus {
    guard(|| {
        if registry.is_null() || out.is_null() {
            return fail(MdlStatus::NullPointer, "null registry or out pointer");
        }
        *out = match (*registry).0.get(z).symbol {
            Some(sym) => into_c_string(sym),
            None => ptr::null_mut(),
        };
        MdlStatus::Ok
    })
}

/// Fits `values[i]` at atomic numbers `zs[i]` over the comma-separated
/// `basis` (NULL for the default basis). Release with [`mdl_model_free`].
///
/// # Safety
/// `zs` and `values` must point to `len` elements; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mdl_fit(
    zs: *const u64,
    values: *const f64,
    len: usize,
    basis: *const c_char,
    ridge: f64,
    allow_rank_deficient: bool,
    out: *mut *mut MdlModel,
) -> MdlStatus {
    guard(|| {
        if out.is_null() || (len > 0 && (zs.is_null() || values.is_null())) {
            return fail(MdlStatus::NullPointer, "null input or out pointer");
        }
        let (zs, values) = if len == 0 {
            (&[][..], &[][..])
        } else {
            (std::slice::from_raw_parts(zs, len), std::slice::from_raw_parts(values, len))
        };
        let basis = if basis.is_null() {
            IntegrityBasis::default()
        } else {
            let text = match read_str(basis) {
                Ok(t) => t,
                Err(s) => return s,
            };
            match IntegrityBasis::parse_list(text) {
                Ok(b) => b,
                Err(e) => return from_error(e.into()),
            }
        };
        let data = PropertyDataset::from_values("property", "", zs.iter().copied().zip(values.iter().copied()));
        let scope = FitScope::Set { zs: zs.to_vec() };
        let options = FitOptions { allow_rank_deficient, ridge };
        match fit_with(&scope, &basis, &data, &options) {
            Ok(model) => {
                *out = Box::into_raw(Box::new(MdlModel(model)));
                MdlStatus::Ok
            }
            Err(e) => from_error(e.into()),
        }
    })
}

/// Loads a model written by `mendeleev fit --out`.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mdl_model_load(path: *const c_char, out: *mut *mut MdlModel) -> MdlStatus {
    guard(|| {
        if out.is_null() {
            return fail(MdlStatus::NullPointer, "out is null");
        }
        let path = match read_str(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) => return from_error(e.into()),
        };
        match FitModel::read_json(BufReader::new(file)) {
            Ok(model) => {
                *out = Box::into_raw(Box::new(MdlModel(model)));
                MdlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mdl_model_predict(model: *const MdlModel, z: u64, out: *mut f64) -> MdlStatus {
    guard(|| {
        if model.is_null() || out.is_null() {
            return fail(MdlStatus::NullPointer, "null model or out pointer");
        }
        match (*model).0.predict(z) {
            Ok(v) => {
                *out = v;
                MdlStatus::Ok
            }
            Err(e) => from_error(e.into()),
        }
    })
}

/// Residual sum of squares of the fit.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mdl_model_rss(model: *const MdlModel, out: *mut f64) -> MdlStatus {
    guard(|| {
        if model.is_null() || out.is_null() {
            return fail(MdlStatus::NullPointer, "null model or out pointer");
        }
        *out = (*model).0.diagnostics.rss;
        MdlStatus::Ok
    })
}

/// # Safety
/// `model` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mdl_model_free(model: *mut MdlModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}
