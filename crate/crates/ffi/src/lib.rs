//! C interface to prymkit.
//!
//! Every fallible call returns a [`PrymStatus`]; on failure the message is
//! kept per thread and read back with [`prym_last_error`]. Objects cross the
//! boundary as opaque handles released by their `_free` function, and
//! strings handed out by the library are released with [`prym_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use num_traits::ToPrimitive;
use prymkit::abelian::FinAbGroup;
use prymkit::cli::{self, CliError};
use prymkit::spectral::{self, DescriptorFile, SpectralCoverDescriptor};
use prymkit::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrymStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON or a field of the wrong shape.
    Schema = 3,
    InvalidInput = 4,
    /// A mathematical invariant failed to hold; never caused by valid input.
    InvariantViolation = 5,
    /// Any other computational error, such as a failed precondition.
    Compute = 6,
    /// The value does not fit the requested integer type.
    Overflow = 7,
    OutOfRange = 8,
}

/// Component group of a Prym variety.
pub struct PrymGroup(FinAbGroup);

/// Spectral cover descriptor.
pub struct PrymDescriptor(SpectralCoverDescriptor);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PrymVariantBound {
    pub smallest_prime: u64,
    pub codimension: u64,
    pub bound: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: PrymStatus, message: impl ToString) -> PrymStatus {
    let msg = CString::new(message.to_string().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
    status
}

fn status_of(e: &Error) -> PrymStatus {
    match e {
        Error::InvariantViolation(_) => PrymStatus::InvariantViolation,
        Error::InvalidInput(_) | Error::OddDegree(_) | Error::DegreeBound { .. } => {
            PrymStatus::InvalidInput
        }
        Error::IndexOutOfRange { .. } => PrymStatus::OutOfRange,
        _ => PrymStatus::Compute,
    }
}

fn from_lib(e: Error) -> PrymStatus {
    fail(status_of(&e), &e)
}

fn from_cli(e: CliError) -> PrymStatus {
    let status = match &e {
        CliError::Compute(inner) => status_of(inner),
        CliError::Usage(_) => PrymStatus::InvalidInput,
        CliError::Io { .. } | CliError::Schema { .. } => PrymStatus::Schema,
    };
    fail(status, &e)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PrymStatus> {
    if s.is_null() {
        return Err(fail(PrymStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| fail(PrymStatus::InvalidUtf8, e))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> PrymStatus {
    if out.is_null() {
        return fail(PrymStatus::NullPointer, "null output pointer");
    }
    out.write(value);
    PrymStatus::Ok
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> PrymStatus {
    match CString::new(s) {
        Ok(c) => write_out(out, c.into_raw()),
        Err(e) => fail(PrymStatus::Compute, e),
    }
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn prym_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static, nul-terminated version string.
#[no_mangle]
pub extern "C" fn prym_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn prym_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a descriptor from JSON.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn prym_descriptor_from_json(
    json: *const c_char,
    out: *mut *mut PrymDescriptor,
) -> PrymStatus {
    let text = try_ffi!(read_str(json));
    let file: DescriptorFile =
        try_ffi!(serde_json::from_str(text).map_err(|e| fail(PrymStatus::Schema, e)));
    let desc = try_ffi!(SpectralCoverDescriptor::try_from(file).map_err(from_lib));
    write_out(out, Box::into_raw(Box::new(PrymDescriptor(desc))))
}

/// The multiple curve `C_n` over a base of genus `g`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prym_descriptor_multiple_curve(
    n: u64,
    g: u32,
    out: *mut *mut PrymDescriptor,
) -> PrymStatus {
    let desc = try_ffi!(SpectralCoverDescriptor::multiple_curve(n, g).map_err(from_lib));
    write_out(out, Box::into_raw(Box::new(PrymDescriptor(desc))))
}

/// # Safety
/// `d` must be null or a live descriptor handle.
#[no_mangle]
pub unsafe extern "C" fn prym_descriptor_free(d: *mut PrymDescriptor) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

unsafe fn descriptor<'a>(
    d: *const PrymDescriptor,
) -> Result<&'a SpectralCoverDescriptor, PrymStatus> {
    d.as_ref()
        .map(|d| &d.0)
        .ok_or_else(|| fail(PrymStatus::NullPointer, "null descriptor"))
}

/// Component group of the Prym variety of `d`.
///
/// # Safety
/// `d` must be a live descriptor handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn prym_descriptor_pi0(
    d: *const PrymDescriptor,
    out: *mut *mut PrymGroup,
) -> PrymStatus {
    let desc = try_ffi!(descriptor(d));
    let group = try_ffi!(spectral::pi0_prym(desc).map_err(from_lib));
    write_out(out, Box::into_raw(Box::new(PrymGroup(group))))
}

/// # Safety
/// `d` must be a live descriptor handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn prym_descriptor_is_cn(
    d: *const PrymDescriptor,
    out: *mut bool,
) -> PrymStatus {
    let desc = try_ffi!(descriptor(d));
    let cn = try_ffi!(spectral::is_cn_cover(desc).map_err(from_lib));
    write_out(out, cn)
}

/// # Safety
/// `g` must be null or a live group handle.
#[no_mangle]
pub unsafe extern "C" fn prym_group_free(g: *mut PrymGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

unsafe fn group<'a>(g: *const PrymGroup) -> Result<&'a FinAbGroup, PrymStatus> {
    g.as_ref()
        .map(|g| &g.0)
        .ok_or_else(|| fail(PrymStatus::NullPointer, "null group"))
}

/// Number of invariant factors.
///
/// # Safety
/// `g` must be a live group handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn prym_group_rank(g: *const PrymGroup, out: *mut usize) -> PrymStatus {
    let g = try_ffi!(group(g));
    write_out(out, g.rank())
}

/// The `i`-th invariant factor, in divisibility order.
///
/// # Safety
/// `g` must be a live group handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn prym_group_invariant_factor(
    g: *const PrymGroup,
    i: usize,
    out: *mut u64,
) -> PrymStatus {
    let g = try_ffi!(group(g));
    let Some(f) = g.invariant_factors().get(i) else {
        return fail(
            PrymStatus::OutOfRange,
            format!("index {i} with rank {}", g.rank()),
        );
    };
    let f = try_ffi!(f.to_u64().ok_or_else(|| fail(PrymStatus::Overflow, f)));
    write_out(out, f)
}

/// Group order as a decimal string, freed with [`prym_string_free`].
///
/// # Safety
/// `g` must be a live group handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn prym_group_order(
    g: *const PrymGroup,
    out: *mut *mut c_char,
) -> PrymStatus {
    let g = try_ffi!(group(g));
    write_string(out, g.order().to_string())
}

/// `dim A_Gamma` for a cyclic group of order `d` dividing `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prym_endoscopic_dim(n: u64, d: u64, g: u64, out: *mut u64) -> PrymStatus {
    let dim = try_ffi!(spectral::endoscopic_dim(n, d, g).map_err(from_lib));
    write_out(out, dim)
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prym_variant_bound(
    n: u64,
    g: u64,
    out: *mut PrymVariantBound,
) -> PrymStatus {
    let vb = try_ffi!(spectral::variant_bound(n, g).map_err(from_lib));
    write_out(
        out,
        PrymVariantBound {
            smallest_prime: vb.smallest_prime,
            codimension: vb.codimension,
            bound: vb.bound,
        },
    )
}

/// Runs a batch command (`pi0`, `norm`, `factor` or `galois`) on a JSON
/// input and returns the JSON report, freed with [`prym_string_free`].
///
/// # Safety
/// `command` and `input` must be nul-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn prym_run_json(
    command: *const c_char,
    input: *const c_char,
    out: *mut *mut c_char,
) -> PrymStatus {
    let command = try_ffi!(read_str(command));
    let input = try_ffi!(read_str(input)).as_bytes();
    let report = try_ffi!(match command {
        "pi0" => cli::run_pi0(input),
        "norm" => cli::run_norm(input),
        "factor" => cli::run_factor(input),
        "galois" => cli::run_galois(input),
        other => Err(CliError::Usage(format!("unknown command `{other}`"))),
    }
    .map_err(from_cli));
    write_string(out, cli::render(&report, cli::Format::Json))
}
