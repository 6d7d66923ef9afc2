//! C interface to `unit_order_lab`.
//!
//! Every fallible function returns a [`UolStatus`]; on failure the message
//! is available from [`uol_last_error`] on the same thread. Matrices and
//! reports are opaque handles released with their `_free` functions.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use unit_order_lab::arith::{factorize, is_prime, pow_mod};
use unit_order_lab::lab::{self, ExperimentConfig, ExperimentReport, ReportFormat};
use unit_order_lab::order::{carmichael_lambda, integer_order_mod_n, MatrixOrderEngine, PrimeOrderRecord};
use unit_order_lab::quad::{field_data, PrimeSplitting, Sl2Matrix};
use unit_order_lab::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UolStatus {
    Ok = 0,
    InvalidInput = 1,
    ResourceLimit = 2,
    Overflow = 3,
    IncompleteFactorization = 4,
    Io = 5,
    Config = 6,
    /// The scan stopped early; the returned report is partial.
    Partial = 7,
    NullPointer = 8,
    Panic = 9,
}

/// Report file format.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UolFormat {
    Csv = 0,
    Json = 1,
}

/// Opaque hyperbolic SL2(Z) matrix.
pub struct UolMatrix {
    engine: MatrixOrderEngine,
}

/// Opaque experiment report.
pub struct UolReport {
    report: ExperimentReport,
}

/// Order of a matrix or integer modulo a prime.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UolPrimeRecord {
    pub p: u64,
    /// 'S', 'I' or 'R'.
    pub class_code: c_char,
    /// p - 1 or p + 1; 0 for ramified primes.
    pub torus_order: u64,
    pub ord: u64,
    /// Index in the torus; 0 for ramified primes.
    pub index: u64,
    pub is_bad: bool,
}

/// Field data of the eigenvalue field of a matrix.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UolFieldInfo {
    pub trace: i64,
    /// t^2 - 4.
    pub disc: i64,
    pub field_disc: i64,
    pub conductor: u64,
    pub unit_norm: i8,
    pub power_index: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &Error) -> UolStatus {
    match err {
        Error::InvalidInput(_) => UolStatus::InvalidInput,
        Error::ResourceLimit { .. } => UolStatus::ResourceLimit,
        Error::Overflow(_) => UolStatus::Overflow,
        Error::IncompleteFactorization { .. } => UolStatus::IncompleteFactorization,
        Error::Io { .. } => UolStatus::Io,
        Error::Config { .. } => UolStatus::Config,
        Error::Partial { .. } => UolStatus::Partial,
    }
}

fn fail(status: UolStatus, message: impl Into<String>) -> UolStatus {
    set_last_error(message.into());
    status
}

/// Runs `body`, turning errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), UolStatus>) -> UolStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => UolStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(UolStatus::Panic, "internal panic"),
    }
}

fn lift(err: Error) -> UolStatus {
    let status = status_of(&err);
    fail(status, err.to_string())
}

fn out_ref<'a, T>(ptr: *mut T) -> Result<&'a mut T, UolStatus> {
    // SAFETY: the caller passes either null or a valid, writable pointer
    unsafe { ptr.as_mut() }.ok_or_else(|| fail(UolStatus::NullPointer, "output pointer is null"))
}

fn in_ref<'a, T>(ptr: *const T) -> Result<&'a T, UolStatus> {
    // SAFETY: the caller passes either null or a live handle
    unsafe { ptr.as_ref() }.ok_or_else(|| fail(UolStatus::NullPointer, "handle is null"))
}

fn prime_record_to_c(r: &PrimeOrderRecord) -> UolPrimeRecord {
    UolPrimeRecord {
        p: r.p,
        class_code: r.class.code() as c_char,
        torus_order: r.torus_order.filter(|_| r.class != PrimeSplitting::Ramified).unwrap_or(0),
        ord: r.ord,
        index: r.index.filter(|_| r.class != PrimeSplitting::Ramified).unwrap_or(0),
        is_bad: r.is_bad,
    }
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn uol_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Deterministic primality test for 64-bit integers.
#[no_mangle]
pub extern "C" fn uol_is_prime(n: u64) -> bool {
    is_prime(n)
}

/// `base^exp mod modulus`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uol_pow_mod(base: u64, exp: u64, modulus: u64, out: *mut u64) -> UolStatus {
    guard(|| {
        let out = out_ref(out)?;
        if modulus == 0 {
            return Err(fail(UolStatus::InvalidInput, "modulus must be positive"));
        }
        *out = pow_mod(base, exp, modulus);
        Ok(())
    })
}

/// Multiplicative order of `base` modulo `n`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uol_integer_order(base: i64, n: u64, out: *mut u64) -> UolStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = integer_order_mod_n(base, n).map_err(lift)?;
        Ok(())
    })
}

/// Carmichael lambda of `n >= 1`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uol_carmichael_lambda(n: u64, out: *mut u64) -> UolStatus {
    guard(|| {
        let out = out_ref(out)?;
        if n == 0 {
            return Err(fail(UolStatus::InvalidInput, "n must be positive"));
        }
        let factored = factorize(n as u128).map_err(lift)?;
        *out = carmichael_lambda(&factored) as u64;
        Ok(())
    })
}

fn matrix_handle(m: Sl2Matrix, out: *mut *mut UolMatrix) -> Result<(), UolStatus> {
    let out = out_ref(out)?;
    let engine = MatrixOrderEngine::new(&m).map_err(lift)?;
    *out = Box::into_raw(Box::new(UolMatrix { engine }));
    Ok(())
}

/// New hyperbolic matrix `[[a, b], [c, d]]` with determinant 1.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uol_matrix_new(a: i64, b: i64, c: i64, d: i64, out: *mut *mut UolMatrix) -> UolStatus {
    guard(|| {
        let m = Sl2Matrix::try_from([[a, b], [c, d]]).map_err(lift)?;
        matrix_handle(m, out)
    })
}

/// Companion matrix `[[t, -1], [1, 0]]`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uol_matrix_from_trace(trace: i64, out: *mut *mut UolMatrix) -> UolStatus {
    guard(|| matrix_handle(Sl2Matrix::companion(trace), out))
}

/// Releases a matrix. Null is ignored.
///
/// # Safety
/// `matrix` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn uol_matrix_free(matrix: *mut UolMatrix) {
    if !matrix.is_null() {
        // SAFETY: created by Box::into_raw in matrix_handle
        drop(unsafe { Box::from_raw(matrix) });
    }
}

/// Field data of the matrix eigenvalue.
///
/// # Safety
/// `matrix` must be null or a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uol_matrix_field_info(matrix: *const UolMatrix, out: *mut UolFieldInfo) -> UolStatus {
    guard(|| {
        let m = in_ref(matrix)?;
        let out = out_ref(out)?;
        let fd = field_data(m.engine.matrix()).map_err(lift)?;
        let narrow = |v: i128, what: &str| {
            i64::try_from(v).map_err(|_| fail(UolStatus::Overflow, format!("{what} does not fit in 64 bits")))
        };
        *out = UolFieldInfo {
            trace: fd.trace,
            disc: narrow(fd.disc, "discriminant")?,
            field_disc: narrow(fd.field_disc, "field discriminant")?,
            conductor: u64::try_from(fd.conductor)
                .map_err(|_| fail(UolStatus::Overflow, "conductor does not fit in 64 bits"))?,
            unit_norm: fd.unit_norm,
            power_index: fd.power_index,
        };
        Ok(())
    })
}

/// Order record of the matrix modulo the prime `p`.
///
/// # Safety
/// `matrix` must be null or a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uol_matrix_order_mod_p(matrix: *const UolMatrix, p: u64, out: *mut UolPrimeRecord) -> UolStatus {
    guard(|| {
        let m = in_ref(matrix)?;
        let out = out_ref(out)?;
        if !is_prime(p) {
            return Err(fail(UolStatus::InvalidInput, format!("{p} is not prime")));
        }
        *out = prime_record_to_c(&m.engine.prime_record(p).map_err(lift)?);
        Ok(())
    })
}

/// Order of the matrix modulo `n >= 2`.
///
/// # Safety
/// `matrix` must be null or a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uol_matrix_order_mod_n(matrix: *const UolMatrix, n: u64, out: *mut u64) -> UolStatus {
    guard(|| {
        let m = in_ref(matrix)?;
        let out = out_ref(out)?;
        let (record, _) = m.engine.composite_record(n, |p| m.engine.prime_record(p)).map_err(lift)?;
        *out = u64::try_from(record.ord).map_err(|_| fail(UolStatus::Overflow, "order does not fit in 64 bits"))?;
        Ok(())
    })
}

fn scan_into(config: ExperimentConfig, composites: bool, out: *mut *mut UolReport) -> Result<(), UolStatus> {
    let out = out_ref(out)?;
    let result = if composites { lab::scan_composites(&config) } else { lab::scan_primes(&config) };
    match result {
        Ok(report) => {
            *out = Box::into_raw(Box::new(UolReport { report }));
            Ok(())
        }
        Err(Error::Partial { report, reason }) => {
            *out = Box::into_raw(Box::new(UolReport { report: *report }));
            Err(fail(UolStatus::Partial, reason))
        }
        Err(e) => Err(lift(e)),
    }
}

/// Prime scan of the matrix up to `limit`. `workers` 0 means available
/// parallelism. Results do not depend on `workers`.
///
/// # Safety
/// `matrix` must be null or a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uol_scan_primes(
    matrix: *const UolMatrix,
    limit: u64,
    workers: usize,
    out: *mut *mut UolReport,
) -> UolStatus {
    guard(|| {
        let m = in_ref(matrix)?;
        let config = ExperimentConfig::for_matrix(*m.engine.matrix(), limit).with_workers(workers);
        scan_into(config, false, out)
    })
}

/// Prime scan of the integer `base` up to `limit`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uol_scan_primes_base(base: i64, limit: u64, workers: usize, out: *mut *mut UolReport) -> UolStatus {
    guard(|| scan_into(ExperimentConfig::for_base(base, limit).with_workers(workers), false, out))
}

/// Composite scan of the matrix over `N` in `[2, limit]`.
///
/// # Safety
/// `matrix` must be null or a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uol_scan_composites(
    matrix: *const UolMatrix,
    limit: u64,
    workers: usize,
    out: *mut *mut UolReport,
) -> UolStatus {
    guard(|| {
        let m = in_ref(matrix)?;
        let config = ExperimentConfig::for_matrix(*m.engine.matrix(), limit).with_workers(workers);
        scan_into(config, true, out)
    })
}

/// Number of prime records in a report.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn uol_report_prime_count(report: *const UolReport) -> usize {
    // SAFETY: null or live handle per contract
    unsafe { report.as_ref() }.map_or(0, |r| r.report.records.primes.len())
}

/// The `index`-th prime record of a report.
///
/// # Safety
/// `report` must be null or a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uol_report_prime_record(report: *const UolReport, index: usize, out: *mut UolPrimeRecord) -> UolStatus {
    guard(|| {
        let r = in_ref(report)?;
        let out = out_ref(out)?;
        let rec = r
            .report
            .records
            .primes
            .get(index)
            .ok_or_else(|| fail(UolStatus::InvalidInput, format!("record index {index} out of range")))?;
        *out = prime_record_to_c(rec);
        Ok(())
    })
}

/// Report as a JSON string; release it with [`uol_string_free`].
///
/// # Safety
/// `report` must be null or a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn uol_report_to_json(report: *const UolReport, out: *mut *mut c_char) -> UolStatus {
    guard(|| {
        let r = in_ref(report)?;
        let out = out_ref(out)?;
        let mut buf = Vec::new();
        lab::write_report(&r.report, ReportFormat::Json, &mut buf).map_err(|e| fail(UolStatus::Io, e.to_string()))?;
        *out = CString::new(buf).map_err(|_| fail(UolStatus::Io, "report contains a nul byte"))?.into_raw();
        Ok(())
    })
}

/// Writes the report to the file at `path`.
///
/// # Safety
/// `report` must be null or a live handle; `path` null or a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn uol_report_write(report: *const UolReport, format: UolFormat, path: *const c_char) -> UolStatus {
    guard(|| {
        let r = in_ref(report)?;
        if path.is_null() {
            return Err(fail(UolStatus::NullPointer, "path is null"));
        }
        // SAFETY: non-null, nul-terminated per contract
        let path = unsafe { CStr::from_ptr(path) }
            .to_str()
            .map_err(|_| fail(UolStatus::InvalidInput, "path is not valid UTF-8"))?;
        let format = match format {
            UolFormat::Csv => ReportFormat::Csv,
            UolFormat::Json => ReportFormat::Json,
        };
        lab::emit_report(&r.report, format, Path::new(path)).map_err(lift)
    })
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `report` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn uol_report_free(report: *mut UolReport) {
    if !report.is_null() {
        // SAFETY: created by Box::into_raw in scan_into
        drop(unsafe { Box::from_raw(report) });
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn uol_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: created by CString::into_raw
        drop(unsafe { CString::from_raw(s) });
    }
}
