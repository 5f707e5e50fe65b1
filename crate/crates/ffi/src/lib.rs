//! C ABI for toposmooth.
//!
//! Series and diagrams cross the boundary as opaque handles created by the
//! `ts_*_new`/producer functions and released with the matching `ts_*_free`.
//! Every fallible call returns a [`TsStatus`]; on failure the message is
//! available from [`ts_last_error`] on the same thread until the next call.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use toposmooth::metrics::{points_of, EntropyParams};
use toposmooth::{
    approx_entropy, bottleneck, compute_persistence, norm_l1, norm_linf, simplify, wasserstein1,
    Error, FilterSpec, PersistenceDiagram, SimplifyPolicy, TimeSeries,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidSeries = 2,
    InvalidParameter = 3,
    LengthMismatch = 4,
    BufferTooSmall = 5,
    Internal = 6,
    Panic = 7,
}

/// Opaque series handle.
pub struct TsSeries(TimeSeries);

/// Opaque persistence diagram handle.
pub struct TsDiagram(PersistenceDiagram);

/// One finite pair of a diagram.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TsPair {
    pub birth_index: usize,
    pub death_index: usize,
    pub birth: f64,
    pub death: f64,
    pub persistence: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsPolicy {
    /// Drop pairs with persistence strictly below the parameter.
    Threshold = 0,
    /// Drop the lowest-ranked fraction of pairs.
    Fraction = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsFilter {
    /// Parameter: odd window length.
    Median = 0,
    /// Parameter: sigma.
    Gaussian = 1,
    /// Parameter: number of frequencies kept.
    Cutoff = 2,
    /// Parameter: stride.
    Subsample = 3,
    /// Parameter: epsilon.
    DouglasPeucker = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    let c = CString::new(text).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &Error) -> TsStatus {
    match err {
        Error::InvalidSeries(_) => TsStatus::InvalidSeries,
        Error::InvalidParameter { .. } => TsStatus::InvalidParameter,
        Error::LengthMismatch { .. } => TsStatus::LengthMismatch,
        _ => TsStatus::Internal,
    }
}

/// Runs `body`, recording the error message and turning panics into a status.
fn guard(body: impl FnOnce() -> Result<(), (TsStatus, String)>) -> TsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => TsStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {message}"));
            TsStatus::Panic
        }
    }
}

fn lib<T>(r: toposmooth::Result<T>) -> Result<T, (TsStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (TsStatus, String) {
    (TsStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (TsStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn slice<'a>(
    p: *const f64,
    len: usize,
    what: &str,
) -> Result<&'a [f64], (TsStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn emit<T>(out: *mut *mut T, value: T) -> Result<(), (TsStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), (TsStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = value;
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates a series with unit-spaced positions from `len` samples.
///
/// # Safety
/// `values` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_series_new(
    values: *const f64,
    len: usize,
    out: *mut *mut TsSeries,
) -> TsStatus {
    guard(|| {
        let v = slice(values, len, "values")?;
        emit(out, TsSeries(lib(TimeSeries::new(v.to_vec()))?))
    })
}

/// Creates a series with explicit, strictly increasing positions.
///
/// # Safety
/// `values` and `positions` must each point to `len` readable doubles.
#[no_mangle]
pub unsafe extern "C" fn ts_series_with_positions(
    values: *const f64,
    positions: *const f64,
    len: usize,
    out: *mut *mut TsSeries,
) -> TsStatus {
    guard(|| {
        let v = slice(values, len, "values")?;
        let p = slice(positions, len, "positions")?;
        emit(
            out,
            TsSeries(lib(TimeSeries::with_positions(v.to_vec(), p.to_vec()))?),
        )
    })
}

/// # Safety
/// `series` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_series_free(series: *mut TsSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Number of samples, or 0 for a null handle.
///
/// # Safety
/// `series` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_series_len(series: *const TsSeries) -> usize {
    series.as_ref().map_or(0, |s| s.0.len())
}

/// Copies the samples into `buffer`. `written` receives the series length
/// even when the buffer is too small.
///
/// # Safety
/// `buffer` must hold `capacity` writable doubles; `written` may be null.
#[no_mangle]
pub unsafe extern "C" fn ts_series_copy_values(
    series: *const TsSeries,
    buffer: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> TsStatus {
    guard(|| {
        let values = deref(series, "series")?.0.values();
        if let Some(w) = written.as_mut() {
            *w = values.len();
        }
        if capacity < values.len() {
            return Err((
                TsStatus::BufferTooSmall,
                format!("buffer holds {capacity}, series has {}", values.len()),
            ));
        }
        if buffer.is_null() {
            return Err(null("buffer"));
        }
        std::slice::from_raw_parts_mut(buffer, values.len()).copy_from_slice(values);
        Ok(())
    })
}

/// Persistence-guided simplification.
///
/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_simplify(
    series: *const TsSeries,
    policy: TsPolicy,
    parameter: f64,
    out: *mut *mut TsSeries,
) -> TsStatus {
    guard(|| {
        let s = deref(series, "series")?;
        let policy = match policy {
            TsPolicy::Threshold => SimplifyPolicy::Threshold(parameter),
            TsPolicy::Fraction => SimplifyPolicy::Fraction(parameter),
        };
        emit(out, TsSeries(lib(simplify(&s.0, policy))?))
    })
}

fn count(parameter: f64, name: &str) -> Result<usize, (TsStatus, String)> {
    if parameter.is_finite() && parameter >= 0.0 && parameter.fract() == 0.0 {
        Ok(parameter as usize)
    } else {
        Err((
            TsStatus::InvalidParameter,
            format!("{name} must be a non-negative integer, got {parameter}"),
        ))
    }
}

/// Applies one of the baseline filters.
///
/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_filter(
    series: *const TsSeries,
    filter: TsFilter,
    parameter: f64,
    out: *mut *mut TsSeries,
) -> TsStatus {
    guard(|| {
        let s = deref(series, "series")?;
        let spec = match filter {
            TsFilter::Median => FilterSpec::Median {
                window: count(parameter, "window")?,
            },
            TsFilter::Gaussian => FilterSpec::Gaussian { sigma: parameter },
            TsFilter::Cutoff => FilterSpec::Cutoff {
                keep_frequencies: count(parameter, "keep_frequencies")?,
            },
            TsFilter::Subsample => FilterSpec::Subsample {
                stride: count(parameter, "stride")?,
            },
            TsFilter::DouglasPeucker => FilterSpec::DouglasPeucker { epsilon: parameter },
        };
        emit(out, TsSeries(lib(spec.apply(&s.0))?))
    })
}

/// Sublevel-set persistence diagram of the series.
///
/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_persistence(
    series: *const TsSeries,
    out: *mut *mut TsDiagram,
) -> TsStatus {
    guard(|| {
        let s = deref(series, "series")?;
        emit(out, TsDiagram(compute_persistence(&s.0).0))
    })
}

/// # Safety
/// `diagram` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_diagram_free(diagram: *mut TsDiagram) {
    if !diagram.is_null() {
        drop(Box::from_raw(diagram));
    }
}

/// Number of finite pairs, or 0 for a null handle.
///
/// # Safety
/// `diagram` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_diagram_len(diagram: *const TsDiagram) -> usize {
    diagram.as_ref().map_or(0, |d| d.0.len())
}

/// Sample index of the global minimum (the essential class).
///
/// # Safety
/// `diagram` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_diagram_essential_index(
    diagram: *const TsDiagram,
    out: *mut usize,
) -> TsStatus {
    guard(|| write(out, deref(diagram, "diagram")?.0.essential_min_index()))
}

/// The `index`-th pair in ascending persistence order.
///
/// # Safety
/// `diagram` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_diagram_pair(
    diagram: *const TsDiagram,
    index: usize,
    out: *mut TsPair,
) -> TsStatus {
    guard(|| {
        let pairs = deref(diagram, "diagram")?.0.pairs();
        let p = pairs.get(index).ok_or_else(|| {
            (
                TsStatus::InvalidParameter,
                format!("pair index {index} out of range (len {})", pairs.len()),
            )
        })?;
        write(
            out,
            TsPair {
                birth_index: p.birth_index,
                death_index: p.death_index,
                birth: p.birth_value,
                death: p.death_value,
                persistence: p.persistence,
            },
        )
    })
}

unsafe fn distance(
    a: *const TsDiagram,
    b: *const TsDiagram,
    out: *mut f64,
    f: fn(&[toposmooth::DiagramPoint], &[toposmooth::DiagramPoint]) -> toposmooth::Result<f64>,
) -> TsStatus {
    guard(|| {
        let a = points_of(&deref(a, "a")?.0);
        let b = points_of(&deref(b, "b")?.0);
        write(out, lib(f(&a, &b))?)
    })
}

/// 1-Wasserstein distance between the finite parts of two diagrams.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_wasserstein1(
    a: *const TsDiagram,
    b: *const TsDiagram,
    out: *mut f64,
) -> TsStatus {
    distance(a, b, out, wasserstein1)
}

/// Bottleneck distance between the finite parts of two diagrams.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_bottleneck(
    a: *const TsDiagram,
    b: *const TsDiagram,
    out: *mut f64,
) -> TsStatus {
    distance(a, b, out, bottleneck)
}

/// Sum of absolute differences of two equal-length series.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_norm_l1(
    a: *const TsSeries,
    b: *const TsSeries,
    out: *mut f64,
) -> TsStatus {
    guard(|| write(out, lib(norm_l1(&deref(a, "a")?.0, &deref(b, "b")?.0))?))
}

/// Largest absolute difference of two equal-length series.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_norm_linf(
    a: *const TsSeries,
    b: *const TsSeries,
    out: *mut f64,
) -> TsStatus {
    guard(|| write(out, lib(norm_linf(&deref(a, "a")?.0, &deref(b, "b")?.0))?))
}

/// Approximate entropy with template length `m` and absolute tolerance `r`.
/// A negative `r` selects the default: 0.2 times the sample standard deviation.
///
/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_approx_entropy(
    series: *const TsSeries,
    m: usize,
    r: f64,
    out: *mut f64,
) -> TsStatus {
    guard(|| {
        let s = &deref(series, "series")?.0;
        let r = if r < 0.0 {
            EntropyParams {
                m,
                ..Default::default()
            }
            .tolerance(s)
        } else {
            r
        };
        write(out, lib(approx_entropy(s, m, r))?)
    })
}
