//! C ABI for `hankel-core`.
//!
//! Every fallible function returns an [`HkStatus`]. On failure a message is
//! stored per thread and can be read with [`hk_last_error_message`].
//! Selector arguments (class, functional, model, variant) are plain `int32_t`
//! values from the `HK_*` constants and are validated on entry.
//!
//! Handles returned by `*_new` or [`hk_audit`] must be released with the
//! matching `*_free` function; strings with [`hk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hankel_core::caratheodory::{lz_expand, LZParams};
use hankel_core::class_maps::{ClassTag, CoefficientSequence};
use hankel_core::cli::ResultItem;
use hankel_core::extremal::{extremal_series, ExtremalSpec, Variant};
use hankel_core::functionals::{triangle_bound, FunctionalName, TriangleInputs};
use hankel_core::optimizer::{audit_class, Model, SearchConfig};
use hankel_core::report::{BoundReport, Verdict};
use hankel_core::Error;
use num_complex::Complex64;
use num_traits::ToPrimitive;

pub const HK_CLASS_BOUNDED_TURNING: i32 = 0;
pub const HK_CLASS_STARLIKE: i32 = 1;
pub const HK_CLASS_CONVEX: i32 = 2;

pub const HK_FUNCTIONAL_T: i32 = 0;
pub const HK_FUNCTIONAL_FS: i32 = 1;
pub const HK_FUNCTIONAL_H22: i32 = 2;
pub const HK_FUNCTIONAL_H31: i32 = 3;

pub const HK_MODEL_LZ: i32 = 0;
pub const HK_MODEL_LZ_REAL: i32 = 1;
pub const HK_MODEL_HERGLOTZ: i32 = 2;

pub const HK_VARIANT_PAPER: i32 = 0;
pub const HK_VARIANT_DERIVED: i32 = 1;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfDomain = 3,
    InsufficientData = 4,
    NotNormalized = 5,
    BufferTooSmall = 6,
    Overflow = 7,
    NoValue = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HkVerdict {
    AttainsWithinTol = 0,
    BelowBound = 1,
    ExceedsBound = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HkComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for HkComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<HkComplex> for Complex64 {
    fn from(z: HkComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Opaque search configuration.
pub struct HkSearchConfig {
    inner: SearchConfig,
}

/// Opaque result of [`hk_audit`].
pub struct HkBoundReport {
    inner: BoundReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: HkStatus, msg: impl Into<String>) -> HkStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> HkStatus {
    match e {
        Error::InvalidParams(_) | Error::InvalidMeasure(_) | Error::InvalidConfig(_) => {
            HkStatus::InvalidArgument
        }
        Error::OutOfRange { .. } | Error::CapViolated { .. } => HkStatus::OutOfDomain,
        Error::InsufficientCoefficients { .. } | Error::ModelInsufficient { .. } => {
            HkStatus::InsufficientData
        }
        Error::NotNormalized(_) | Error::ZeroConstantTerm | Error::NonzeroConstantTerm => {
            HkStatus::NotNormalized
        }
        Error::IrrationalRotation(_) => HkStatus::InvalidArgument,
    }
}

/// Runs `f`, recording errors and converting panics into [`HkStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), (HkStatus, String)>) -> HkStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HkStatus::Ok,
        Ok(Err((status, msg))) => fail(status, msg),
        Err(_) => fail(HkStatus::Panic, "internal panic"),
    }
}

type FfiResult<T> = Result<T, (HkStatus, String)>;

fn core<T>(r: hankel_core::Result<T>) -> FfiResult<T> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (HkStatus, String) {
    (HkStatus::NullPointer, format!("{what} is null"))
}

fn class_of(tag: i32) -> FfiResult<ClassTag> {
    match tag {
        HK_CLASS_BOUNDED_TURNING => Ok(ClassTag::BoundedTurning),
        HK_CLASS_STARLIKE => Ok(ClassTag::Starlike),
        HK_CLASS_CONVEX => Ok(ClassTag::Convex),
        other => Err((HkStatus::InvalidArgument, format!("unknown class {other}"))),
    }
}

fn functional_of(tag: i32) -> FfiResult<FunctionalName> {
    match tag {
        HK_FUNCTIONAL_T => Ok(FunctionalName::TA2A3A4),
        HK_FUNCTIONAL_FS => Ok(FunctionalName::FeketeSzego),
        HK_FUNCTIONAL_H22 => Ok(FunctionalName::SecondHankel),
        HK_FUNCTIONAL_H31 => Ok(FunctionalName::H31),
        other => Err((HkStatus::InvalidArgument, format!("unknown functional {other}"))),
    }
}

fn variant_of(tag: i32) -> FfiResult<Variant> {
    match tag {
        HK_VARIANT_PAPER => Ok(Variant::PaperFormula),
        HK_VARIANT_DERIVED => Ok(Variant::DerivedFormula),
        other => Err((HkStatus::InvalidArgument, format!("unknown variant {other}"))),
    }
}

/// # Safety
/// `ptr` must be null or valid for `len` reads.
unsafe fn slice_in<'a, T>(ptr: *const T, len: usize, what: &str) -> FfiResult<&'a [T]> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

/// # Safety
/// `ptr` must be null or valid for `len` writes.
unsafe fn slice_out<'a, T>(ptr: *mut T, len: usize, what: &str) -> FfiResult<&'a mut [T]> {
    if len == 0 {
        return Ok(&mut []);
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts_mut(ptr, len))
}

fn need(len: usize, needed: usize) -> FfiResult<()> {
    if len < needed {
        Err((
            HkStatus::BufferTooSmall,
            format!("buffer holds {len} values, {needed} needed"),
        ))
    } else {
        Ok(())
    }
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn hk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Writes `c1, c2, c3` for the parameters `(c1, x, zeta)` into `out[0..3]`.
///
/// # Safety
/// `out` must point to three writable `HkComplex` values.
#[no_mangle]
pub unsafe extern "C" fn hk_lz_expand(
    c1: HkComplex,
    x: HkComplex,
    zeta: HkComplex,
    out: *mut HkComplex,
) -> HkStatus {
    guard(|| {
        let out = slice_out(out, 3, "out")?;
        let params = core(LZParams::new(c1.into(), x.into(), zeta.into()))?;
        let (c2, c3) = core(lz_expand(&params))?;
        out[0] = c1;
        out[1] = c2.into();
        out[2] = c3.into();
        Ok(())
    })
}

/// Coefficients `a_0..a_n` of the class member generated by `c_1..c_{c_len}`.
/// `out_len` must be at least `n + 1`.
///
/// # Safety
/// `c` must be valid for `c_len` reads and `out` for `out_len` writes.
#[no_mangle]
pub unsafe extern "C" fn hk_class_coeffs(
    class: i32,
    c: *const HkComplex,
    c_len: usize,
    n: usize,
    out: *mut HkComplex,
    out_len: usize,
) -> HkStatus {
    guard(|| {
        let class = class_of(class)?;
        let c: Vec<Complex64> = slice_in(c, c_len, "c")?.iter().map(|&z| z.into()).collect();
        need(out_len, n + 1)?;
        let out = slice_out(out, out_len, "out")?;
        let a = core(class.coeffs(&c, n))?;
        for (o, v) in out.iter_mut().zip(a.coeffs()) {
            *o = (*v).into();
        }
        Ok(())
    })
}

/// Evaluates a functional on `a_0..a_{a_len - 1}` without cap checks.
///
/// # Safety
/// `a` must be valid for `a_len` reads and `out` for one write.
#[no_mangle]
pub unsafe extern "C" fn hk_functional_eval(
    functional: i32,
    a: *const HkComplex,
    a_len: usize,
    out: *mut HkComplex,
) -> HkStatus {
    guard(|| {
        let functional = functional_of(functional)?;
        let a: Vec<Complex64> = slice_in(a, a_len, "a")?.iter().map(|&z| z.into()).collect();
        if out.is_null() {
            return Err(null("out"));
        }
        if a.is_empty() {
            return Err((HkStatus::InsufficientData, "no coefficients".into()));
        }
        let seq = CoefficientSequence::unchecked(ClassTag::BoundedTurning, a);
        let v = core(functional.eval(&seq))?;
        *out = v.into();
        Ok(())
    })
}

fn to_i64(q: &hankel_core::scalar::Rational) -> FfiResult<(i64, i64)> {
    match (q.numer().to_i64(), q.denom().to_i64()) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err((HkStatus::Overflow, format!("{q} does not fit in 64 bits"))),
    }
}

/// Triangle-inequality ceiling for `|H_3(1)|`, reduced.
///
/// # Safety
/// `num` and `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hk_triangle_bound(class: i32, num: *mut i64, den: *mut i64) -> HkStatus {
    guard(|| {
        let class = class_of(class)?;
        if num.is_null() || den.is_null() {
            return Err(null("num/den"));
        }
        let (n, d) = to_i64(&triangle_bound(&TriangleInputs::for_class(class)))?;
        *num = n;
        *den = d;
        Ok(())
    })
}

/// Exact coefficients `a_0..a_n` of an extremal function as fractions.
/// Normalization is not checked. `out_len` must be at least `n + 1`.
///
/// # Safety
/// `num` and `den` must be valid for `out_len` writes.
#[no_mangle]
pub unsafe extern "C" fn hk_extremal_coeffs(
    class: i32,
    variant: i32,
    n: usize,
    num: *mut i64,
    den: *mut i64,
    out_len: usize,
) -> HkStatus {
    guard(|| {
        let spec = core(ExtremalSpec::new(class_of(class)?, variant_of(variant)?))?;
        need(out_len, n + 1)?;
        let num = slice_out(num, out_len, "num")?;
        let den = slice_out(den, out_len, "den")?;
        let series = core(extremal_series(&spec, n))?;
        for (k, q) in series.coeffs().iter().enumerate() {
            let (p, d) = to_i64(q)?;
            num[k] = p;
            den[k] = d;
        }
        Ok(())
    })
}

/// New configuration with default settings. `atoms` is used only by the
/// Herglotz model. Returns null on an invalid model.
#[no_mangle]
pub extern "C" fn hk_search_config_new(model: i32, atoms: usize) -> *mut HkSearchConfig {
    clear_error();
    let model = match model {
        HK_MODEL_LZ => Model::Lz,
        HK_MODEL_LZ_REAL => Model::LzReal,
        HK_MODEL_HERGLOTZ => Model::Herglotz(atoms),
        other => {
            set_error(format!("unknown model {other}"));
            return ptr::null_mut();
        }
    };
    Box::into_raw(Box::new(HkSearchConfig {
        inner: SearchConfig::with_model(model),
    }))
}

/// # Safety
/// `config` must be null or come from [`hk_search_config_new`].
#[no_mangle]
pub unsafe extern "C" fn hk_search_config_free(config: *mut HkSearchConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Applies `edit` to a copy of the configuration and keeps it if valid.
///
/// # Safety
/// `config` must be null or come from [`hk_search_config_new`].
unsafe fn update(config: *mut HkSearchConfig, edit: impl FnOnce(&mut SearchConfig)) -> HkStatus {
    guard(|| {
        let config = config.as_mut().ok_or_else(|| null("config"))?;
        let mut next = config.inner;
        edit(&mut next);
        core(next.validate())?;
        config.inner = next;
        Ok(())
    })
}

/// Coarse grid points per axis, at least 3.
///
/// # Safety
/// `config` must come from [`hk_search_config_new`].
#[no_mangle]
pub unsafe extern "C" fn hk_search_config_set_grid(config: *mut HkSearchConfig, value: usize) -> HkStatus {
    update(config, |c| c.grid_points_per_axis = value)
}

/// Local refinements started from the best coarse points.
///
/// # Safety
/// `config` must come from [`hk_search_config_new`].
#[no_mangle]
pub unsafe extern "C" fn hk_search_config_set_restarts(config: *mut HkSearchConfig, value: usize) -> HkStatus {
    update(config, |c| c.restarts = value)
}

/// Seed of the coarse sample used when the grid is too large.
///
/// # Safety
/// `config` must come from [`hk_search_config_new`].
#[no_mangle]
pub unsafe extern "C" fn hk_search_config_set_seed(config: *mut HkSearchConfig, value: u64) -> HkStatus {
    update(config, |c| c.seed = value)
}

/// Final refinement step and verdict tolerance.
///
/// # Safety
/// `config` must come from [`hk_search_config_new`].
#[no_mangle]
pub unsafe extern "C" fn hk_search_config_set_tol(config: *mut HkSearchConfig, value: f64) -> HkStatus {
    update(config, |c| c.tol = value)
}

/// Largest coarse grid evaluated in full.
///
/// # Safety
/// `config` must come from [`hk_search_config_new`].
#[no_mangle]
pub unsafe extern "C" fn hk_search_config_set_max_coarse_points(config: *mut HkSearchConfig, value: usize) -> HkStatus {
    update(config, |c| c.max_coarse_points = value)
}


/// Maximizes `|functional|` over the class. On success `*out` receives a
/// report owned by the caller.
///
/// # Safety
/// `config` must come from [`hk_search_config_new`]; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hk_audit(
    class: i32,
    functional: i32,
    config: *const HkSearchConfig,
    out: *mut *mut HkBoundReport,
) -> HkStatus {
    guard(|| {
        let class = class_of(class)?;
        let functional = functional_of(functional)?;
        let config = config.as_ref().ok_or_else(|| null("config"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = core(audit_class(class, functional, &config.inner))?;
        *out = Box::into_raw(Box::new(HkBoundReport { inner }));
        Ok(())
    })
}

/// # Safety
/// `report` must be null or come from [`hk_audit`].
#[no_mangle]
pub unsafe extern "C" fn hk_bound_report_free(report: *mut HkBoundReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Best `|functional|` found, or NaN for a null report.
///
/// # Safety
/// `report` must be null or come from [`hk_audit`].
#[no_mangle]
pub unsafe extern "C" fn hk_bound_report_best_modulus(report: *const HkBoundReport) -> f64 {
    report.as_ref().map_or(f64::NAN, |r| r.inner.best_modulus)
}

/// # Safety
/// `report` must come from [`hk_audit`]; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hk_bound_report_verdict(
    report: *const HkBoundReport,
    out: *mut HkVerdict,
) -> HkStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = match r.inner.verdict {
            Verdict::AttainsWithinTol => HkVerdict::AttainsWithinTol,
            Verdict::BelowBound => HkVerdict::BelowBound,
            Verdict::ExceedsBound => HkVerdict::ExceedsBound,
        };
        Ok(())
    })
}

/// Number of search parameters in the report, 0 for a null report.
///
/// # Safety
/// `report` must be null or come from [`hk_audit`].
#[no_mangle]
pub unsafe extern "C" fn hk_bound_report_param_count(report: *const HkBoundReport) -> usize {
    report.as_ref().map_or(0, |r| r.inner.best_params.len())
}

/// # Safety
/// `report` must come from [`hk_audit`]; `out` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn hk_bound_report_params(
    report: *const HkBoundReport,
    out: *mut f64,
    len: usize,
) -> HkStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        let params = &r.inner.best_params;
        need(len, params.len())?;
        slice_out(out, len, "out")?[..params.len()].copy_from_slice(params);
        Ok(())
    })
}

/// Literature bound as a reduced fraction; [`HkStatus::NoValue`] when the
/// report has none.
///
/// # Safety
/// `report` must come from [`hk_audit`]; `num` and `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hk_bound_report_paper_bound(
    report: *const HkBoundReport,
    num: *mut i64,
    den: *mut i64,
) -> HkStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        if num.is_null() || den.is_null() {
            return Err(null("num/den"));
        }
        let q = r
            .inner
            .paper_bound
            .as_ref()
            .ok_or((HkStatus::NoValue, "report has no bound".to_string()))?;
        let (n, d) = to_i64(q)?;
        *num = n;
        *den = d;
        Ok(())
    })
}

/// The report as a JSON object, or null on failure. Free with
/// [`hk_string_free`].
///
/// # Safety
/// `report` must be null or come from [`hk_audit`].
#[no_mangle]
pub unsafe extern "C" fn hk_bound_report_to_json(report: *const HkBoundReport) -> *mut c_char {
    clear_error();
    let Some(r) = report.as_ref() else {
        set_error("report is null");
        return ptr::null_mut();
    };
    let json = ResultItem::Bound(r.inner.clone()).to_json().to_string();
    match CString::new(json) {
        Ok(s) => s.into_raw(),
        Err(_) => {
            set_error("json contains a nul byte");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `s` must be null or come from a string-returning function of this library.
#[no_mangle]
pub unsafe extern "C" fn hk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
