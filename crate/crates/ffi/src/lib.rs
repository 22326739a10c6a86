//! C ABI over the `mertens` crate.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_load`
//! and released by the matching `*_free`. Every fallible call returns a
//! [`MertensStatus`]; results go through out-pointers, and the message of the
//! most recent failure on the calling thread is available from
//! [`mertens_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mertens::{explicit, limiting, random_model, sieve, stats, zeta, Error};

/// Status codes. Values 3 to 9 match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MertensStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Domain = 3,
    MissingFile = 4,
    BadInput = 5,
    NotSimple = 6,
    Numerics = 7,
    DeltaTooLarge = 8,
    Io = 9,
    Panic = 10,
}

/// Which arithmetic function a series sums.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MertensKind {
    Moebius = 0,
    Liouville = 1,
}

/// Opaque partial-sum series M(x) or L(x).
pub struct MertensSeries(sieve::MertensSeries);

/// Opaque table of zeta zeros with ζ′ at each.
pub struct MertensZeroSet(zeta::ZeroSet);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MertensStatus {
    match e.exit_code() {
        3 => MertensStatus::Domain,
        4 => MertensStatus::MissingFile,
        5 => MertensStatus::BadInput,
        6 => MertensStatus::NotSimple,
        7 => MertensStatus::Numerics,
        8 => MertensStatus::DeltaTooLarge,
        _ => MertensStatus::Io,
    }
}

enum Fail {
    Null,
    Utf8,
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard<F>(f: F) -> MertensStatus
where
    F: FnOnce() -> Result<(), Fail>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MertensStatus::Ok,
        Ok(Err(Fail::Null)) => {
            set_error("null pointer argument".into());
            MertensStatus::NullPointer
        }
        Ok(Err(Fail::Utf8)) => {
            set_error("path is not valid UTF-8".into());
            MertensStatus::InvalidUtf8
        }
        Ok(Err(Fail::Lib(e))) => {
            let s = status_of(&e);
            set_error(e.to_string());
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            MertensStatus::Panic
        }
    }
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null)
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    out.write(v);
    Ok(())
}

/// Message of the last failure on this thread, or NULL if none.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mertens_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// μ(n) for n ≥ 1.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mertens_mu(n: u64, out: *mut i8) -> MertensStatus {
    guard(|| put(out, sieve::mu(n)?))
}

/// Sieve partial sums up to `x_max` with checkpoints every `stride`.
///
/// # Safety
/// `out` must be valid for writes. The handle written there must be released
/// with [`mertens_series_free`].
#[no_mangle]
pub unsafe extern "C" fn mertens_series_new(
    x_max: u64,
    stride: u64,
    kind: MertensKind,
    out: *mut *mut MertensSeries,
) -> MertensStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null);
        }
        let kind = match kind {
            MertensKind::Moebius => sieve::SeriesKind::Moebius,
            MertensKind::Liouville => sieve::SeriesKind::Liouville,
        };
        let s = sieve::mertens_series(x_max, stride, kind)?;
        put(out, Box::into_raw(Box::new(MertensSeries(s))))
    })
}

/// Release a series. NULL is ignored.
///
/// # Safety
/// `series` must come from [`mertens_series_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mertens_series_free(series: *mut MertensSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Largest x covered by the series, 0 for NULL.
///
/// # Safety
/// `series` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mertens_series_x_max(series: *const MertensSeries) -> u64 {
    series.as_ref().map_or(0, |s| s.0.x_max())
}

/// M(n) (or L(n)) for 1 ≤ n ≤ x_max.
///
/// # Safety
/// `series` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mertens_series_value_at(
    series: *const MertensSeries,
    n: u64,
    out: *mut i64,
) -> MertensStatus {
    guard(|| put(out, get(series)?.0.value_at(n)?))
}

/// (1/log X) ∫₂^X (M(x)/x)² dx; needs a stride-1 series.
///
/// # Safety
/// `series` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mertens_weak_mertens_ratio(
    series: *const MertensSeries,
    x: f64,
    out: *mut f64,
) -> MertensStatus {
    guard(|| put(out, stats::weak_mertens_ratio(&get(series)?.0, x)?.ratio))
}

/// Logarithmic density of {x : |M(x)| ≤ √x} up to x_max; needs a stride-1 series.
///
/// # Safety
/// `series` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mertens_log_density(
    series: *const MertensSeries,
    out: *mut f64,
) -> MertensStatus {
    guard(|| put(out, limiting::log_density_s(&get(series)?.0)?))
}

/// Load a zero table (one ordinate per line); `limit` 0 keeps all zeros.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` valid for writes. The
/// handle must be released with [`mertens_zeros_free`].
#[no_mangle]
pub unsafe extern "C" fn mertens_zeros_load(
    path: *const c_char,
    limit: usize,
    out: *mut *mut MertensZeroSet,
) -> MertensStatus {
    guard(|| {
        if path.is_null() || out.is_null() {
            return Err(Fail::Null);
        }
        let path = CStr::from_ptr(path).to_str().map_err(|_| Fail::Utf8)?;
        let limit = (limit > 0).then_some(limit);
        let z = zeta::load_zeros(path, limit)?;
        put(out, Box::into_raw(Box::new(MertensZeroSet(z))))
    })
}

/// Release a zero set. NULL is ignored.
///
/// # Safety
/// `zeros` must come from [`mertens_zeros_load`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mertens_zeros_free(zeros: *mut MertensZeroSet) {
    if !zeros.is_null() {
        drop(Box::from_raw(zeros));
    }
}

/// Number of zeros, 0 for NULL.
///
/// # Safety
/// `zeros` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mertens_zeros_len(zeros: *const MertensZeroSet) -> usize {
    zeros.as_ref().map_or(0, |z| z.0.len())
}

/// γ and ζ′(½+iγ) of the zero at 0-based `index`.
///
/// # Safety
/// `zeros` must be a live handle; the out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mertens_zeros_record(
    zeros: *const MertensZeroSet,
    index: usize,
    gamma: *mut f64,
    re_zeta_prime: *mut f64,
    im_zeta_prime: *mut f64,
) -> MertensStatus {
    guard(|| {
        let z = get(zeros)?;
        let rec = z.0.records().get(index).ok_or_else(|| Error::OutOfRange {
            what: "index",
            value: index as f64,
            limit: z.0.len() as f64,
        })?;
        put(gamma, rec.gamma)?;
        put(re_zeta_prime, rec.zeta_prime.re)?;
        put(im_zeta_prime, rec.zeta_prime.im)
    })
}

/// Zero-sum approximation of M(x) using zeros with γ ≤ t.
///
/// # Safety
/// `zeros` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mertens_zero_sum(
    zeros: *const MertensZeroSet,
    x: f64,
    t: f64,
    out: *mut f64,
) -> MertensStatus {
    guard(|| put(out, explicit::zero_sum_m(x, t, &get(zeros)?.0)?))
}

/// β = Σ 2/|ρζ′(ρ)|² over the table plus the modeled tail.
///
/// # Safety
/// `zeros` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mertens_beta(zeros: *const MertensZeroSet, out: *mut f64) -> MertensStatus {
    guard(|| put(out, limiting::beta(&get(zeros)?.0)))
}

/// ν̂(ξ) over the first `n` zeros.
///
/// # Safety
/// `zeros` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mertens_nu_hat(
    zeros: *const MertensZeroSet,
    xi: f64,
    n: usize,
    out: *mut f64,
) -> MertensStatus {
    guard(|| put(out, limiting::nu_hat(xi, &get(zeros)?.0, n)?))
}

/// Importance-sampled P(X ≥ v) for the series over the first `n_zeros` zeros.
///
/// # Safety
/// `zeros` must be a live handle; the out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mertens_tail_probability(
    zeros: *const MertensZeroSet,
    n_zeros: usize,
    v: f64,
    n_samples: usize,
    seed: u64,
    estimate: *mut f64,
    stderr: *mut f64,
) -> MertensStatus {
    guard(|| {
        let z = &get(zeros)?.0;
        if n_zeros == 0 || n_zeros > z.len() {
            return Err(Error::OutOfRange {
                what: "n_zeros",
                value: n_zeros as f64,
                limit: z.len() as f64,
            }
            .into());
        }
        let r = random_model::sorted_r(z, n_zeros);
        let t = random_model::tilted_tail(&r, v, n_samples, seed)?;
        put(estimate, t.estimate)?;
        put(stderr, t.stderr)
    })
}
