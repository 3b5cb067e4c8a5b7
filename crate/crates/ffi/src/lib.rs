//! C ABI for the `qgft` engine.
//!
//! Models are opaque handles created by [`qgft_model_new`] and released by
//! [`qgft_model_free`]. Every fallible call returns a [`QgftStatus`]; on
//! failure a description is available from [`qgft_last_error_message`] on
//! the same thread. Complex arrays are interleaved `{re, im}` pairs, and
//! matrices are row-major `n×n`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use qgft::fourier::{convolve, convolve_dual, fourier, inverse_fourier, pairing};
use qgft::linalg::{ComplexMatrix, Tolerance};
use qgft::models::{GroupFunction, GroupModel};
use qgft::suite::{verify, ModelSource, SuiteConfig};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QgftComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for QgftComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<QgftComplex> for Complex64 {
    fn from(z: QgftComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QgftStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    LengthMismatch = 3,
    ParseError = 4,
    GroupError = 5,
    EngineError = 6,
    /// The call completed but a verification check did not pass.
    CheckFailed = 7,
    Panic = 8,
}

/// The three routes of the dual pairing `⟨b|a⟩`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QgftPairing {
    pub via_inverse: QgftComplex,
    pub via_forward: QgftComplex,
    pub via_w: QgftComplex,
    pub spread: f64,
}

/// Opaque model handle.
pub struct QgftModel {
    spec: String,
    model: GroupModel,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(text).expect("interior NULs removed")));
}

struct Failure(QgftStatus, String);

fn fail<T>(status: QgftStatus, msg: impl ToString) -> Result<T, Failure> {
    Err(Failure(status, msg.to_string()))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QgftStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QgftStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QgftStatus::Panic
        }
    }
}

fn tolerance() -> Tolerance {
    Tolerance::default()
}

unsafe fn model_ref<'a>(model: *const QgftModel) -> Result<&'a QgftModel, Failure> {
    if model.is_null() {
        return fail(QgftStatus::NullPointer, "model handle is null");
    }
    Ok(&*model)
}

unsafe fn read_function(model: &GroupModel, values: *const QgftComplex, len: usize) -> Result<GroupFunction, Failure> {
    if values.is_null() {
        return fail(QgftStatus::NullPointer, "input array is null");
    }
    if len != model.order() {
        return fail(
            QgftStatus::LengthMismatch,
            format!("function has {len} values, group order is {}", model.order()),
        );
    }
    let slice = std::slice::from_raw_parts(values, len);
    let f = GroupFunction::new(slice.iter().map(|&z| z.into()).collect());
    if f.values().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return fail(QgftStatus::InvalidArgument, "function values must be finite");
    }
    Ok(f)
}

unsafe fn write_values(values: &[Complex64], out: *mut QgftComplex, out_len: usize) -> Result<(), Failure> {
    if out.is_null() {
        return fail(QgftStatus::NullPointer, "output array is null");
    }
    if out_len != values.len() {
        return fail(
            QgftStatus::LengthMismatch,
            format!("output buffer holds {out_len} values, {} required", values.len()),
        );
    }
    let dst = std::slice::from_raw_parts_mut(out, out_len);
    for (d, &v) in dst.iter_mut().zip(values) {
        *d = v.into();
    }
    Ok(())
}

unsafe fn write_matrix(m: &ComplexMatrix, out: *mut QgftComplex, out_len: usize) -> Result<(), Failure> {
    write_values(m.as_slice(), out, out_len)
}

fn engine<E: ToString>(e: E) -> Failure {
    Failure(QgftStatus::EngineError, e.to_string())
}

/// Builds the model of a group from its shorthand (`cyclic:6`, `s3`,
/// `product:cyclic:2xcyclic:3`, ...) or a Cayley table file path.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qgft_model_new(spec: *const c_char, out: *mut *mut QgftModel) -> QgftStatus {
    guard(|| {
        if spec.is_null() || out.is_null() {
            return fail(QgftStatus::NullPointer, "spec and out must be non-null");
        }
        *out = ptr::null_mut();
        let spec = match CStr::from_ptr(spec).to_str() {
            Ok(s) => s.to_string(),
            Err(_) => return fail(QgftStatus::ParseError, "spec is not UTF-8"),
        };
        let group = qgft::io::parse_group(&spec).map_err(|e| {
            let status = match e {
                qgft::io::IoError::Group(_) => QgftStatus::GroupError,
                _ => QgftStatus::ParseError,
            };
            Failure(status, e.to_string())
        })?;
        let handle = Box::new(QgftModel {
            spec,
            model: GroupModel::build(group),
        });
        *out = Box::into_raw(handle);
        Ok(())
    })
}

/// Releases a model. Null is ignored.
///
/// # Safety
/// `model` must come from [`qgft_model_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qgft_model_free(model: *mut QgftModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Group order `n`, the dimension of the Hilbert space.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qgft_model_order(model: *const QgftModel, out: *mut usize) -> QgftStatus {
    guard(|| {
        let m = model_ref(model)?;
        if out.is_null() {
            return fail(QgftStatus::NullPointer, "out is null");
        }
        *out = m.model.order();
        Ok(())
    })
}

/// `F(π_a)` as a row-major `n×n` matrix (`out_len = n²`).
///
/// # Safety
/// `a` must hold `len` values and `out` room for `out_len` values.
#[no_mangle]
pub unsafe extern "C" fn qgft_fourier(
    model: *const QgftModel,
    a: *const QgftComplex,
    len: usize,
    out: *mut QgftComplex,
    out_len: usize,
) -> QgftStatus {
    guard(|| {
        let m = &model_ref(model)?.model;
        let a = read_function(m, a, len)?;
        let x = m.pi(&a).map_err(engine)?;
        let f = fourier(m.qg(), &x, tolerance()).map_err(engine)?;
        write_matrix(&f, out, out_len)
    })
}

/// `F⁻¹(L_b)` as a row-major `n×n` matrix (`out_len = n²`).
///
/// # Safety
/// As for [`qgft_fourier`].
#[no_mangle]
pub unsafe extern "C" fn qgft_inverse_fourier(
    model: *const QgftModel,
    b: *const QgftComplex,
    len: usize,
    out: *mut QgftComplex,
    out_len: usize,
) -> QgftStatus {
    guard(|| {
        let m = &model_ref(model)?.model;
        let b = read_function(m, b, len)?;
        let y = m.l(&b).map_err(engine)?;
        let f = inverse_fourier(m.qg(), &y, tolerance()).map_err(engine)?;
        write_matrix(&f, out, out_len)
    })
}

/// Convolution of two functions (`dual = false`) or of two coefficient
/// functions of the group algebra (`dual = true`), as a function of
/// length `n`.
///
/// # Safety
/// `a` and `c` must hold `len` values each and `out` room for `out_len`.
#[no_mangle]
pub unsafe extern "C" fn qgft_convolve(
    model: *const QgftModel,
    a: *const QgftComplex,
    c: *const QgftComplex,
    len: usize,
    dual: bool,
    out: *mut QgftComplex,
    out_len: usize,
) -> QgftStatus {
    guard(|| {
        let m = &model_ref(model)?.model;
        let a = read_function(m, a, len)?;
        let c = read_function(m, c, len)?;
        let result = if dual {
            let r = convolve_dual(m.qg(), &m.l(&a).map_err(engine)?, &m.l(&c).map_err(engine)?, tolerance()).map_err(engine)?;
            m.function_of_l(&r)
        } else {
            let r = convolve(m.qg(), &m.pi(&a).map_err(engine)?, &m.pi(&c).map_err(engine)?, tolerance()).map_err(engine)?;
            m.function_of_pi(&r)
        };
        write_values(result.values(), out, out_len)
    })
}

/// `⟨L_b|π_a⟩` by the three Haar-weight routes.
///
/// # Safety
/// `a` and `b` must hold `len` values each and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qgft_pair(
    model: *const QgftModel,
    a: *const QgftComplex,
    b: *const QgftComplex,
    len: usize,
    out: *mut QgftPairing,
) -> QgftStatus {
    guard(|| {
        let m = &model_ref(model)?.model;
        let a = read_function(m, a, len)?;
        let b = read_function(m, b, len)?;
        if out.is_null() {
            return fail(QgftStatus::NullPointer, "out is null");
        }
        let p = pairing(m.qg(), &m.l(&b).map_err(engine)?, &m.pi(&a).map_err(engine)?, tolerance()).map_err(engine)?;
        *out = QgftPairing {
            via_inverse: p.via_inverse.into(),
            via_forward: p.via_forward.into(),
            via_w: p.via_w.into(),
            spread: p.spread,
        };
        Ok(())
    })
}

/// Runs the verification suite and hands back the JSON report, to be
/// released with [`qgft_string_free`]. Returns `CheckFailed` (with the
/// report still written) when any check fails.
///
/// # Safety
/// `model` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qgft_verify(model: *const QgftModel, tol: f64, seed: u64, out_json: *mut *mut c_char) -> QgftStatus {
    guard(|| {
        let m = model_ref(model)?;
        if out_json.is_null() {
            return fail(QgftStatus::NullPointer, "out_json is null");
        }
        *out_json = ptr::null_mut();
        let tol = Tolerance::new(tol, tol).map_err(|e| Failure(QgftStatus::InvalidArgument, e.to_string()))?;
        let config = SuiteConfig {
            tol,
            seed,
            deterministic: true,
            ..SuiteConfig::default()
        };
        let report = verify(&m.spec, &ModelSource::Group(m.model.group().clone()), config);
        *out_json = CString::new(report.to_json()).expect("JSON has no NUL").into_raw();
        match report.first_failure() {
            None => Ok(()),
            Some(c) => fail(QgftStatus::CheckFailed, format!("check `{}` failed", c.name)),
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qgft_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qgft_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
