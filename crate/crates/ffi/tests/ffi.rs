use std::ffi::{CStr, CString};
use std::ptr;

use qgft_ffi::*;

fn c(re: f64) -> QgftComplex {
    QgftComplex { re, im: 0.0 }
}

struct Handle(*mut QgftModel);

impl Handle {
    fn new(spec: &str) -> Self {
        let spec = CString::new(spec).unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { qgft_model_new(spec.as_ptr(), &mut out) }, QgftStatus::Ok);
        Handle(out)
    }
}

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { qgft_model_free(self.0) };
    }
}

fn last_error() -> String {
    let p = qgft_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn order_and_fourier_of_cyclic_three() {
    let h = Handle::new("cyclic:3");
    let mut n = 0usize;
    assert_eq!(unsafe { qgft_model_order(h.0, &mut n) }, QgftStatus::Ok);
    assert_eq!(n, 3);
    let a = [c(1.0), c(2.0), c(3.0)];
    let mut out = [c(0.0); 9];
    assert_eq!(unsafe { qgft_fourier(h.0, a.as_ptr(), 3, out.as_mut_ptr(), 9) }, QgftStatus::Ok);
    // first column of L_a is a itself
    for (x, expected) in [1.0, 2.0, 3.0].into_iter().enumerate() {
        assert!((out[x * 3].re - expected).abs() < 1e-14);
    }
}

#[test]
fn inverse_fourier_gives_multiplication_operator() {
    let h = Handle::new("cyclic:2");
    let b = [c(5.0), c(7.0)];
    let mut out = [c(0.0); 4];
    assert_eq!(
        unsafe { qgft_inverse_fourier(h.0, b.as_ptr(), 2, out.as_mut_ptr(), 4) },
        QgftStatus::Ok
    );
    assert!((out[0].re - 5.0).abs() < 1e-14 && (out[3].re - 7.0).abs() < 1e-14);
    assert!(out[1].re.abs() < 1e-14 && out[2].re.abs() < 1e-14);
}

#[test]
fn convolutions_on_both_sides() {
    let h = Handle::new("cyclic:2");
    let mut out = [c(0.0); 2];
    let (a, cc) = ([c(1.0), c(2.0)], [c(3.0), c(4.0)]);
    assert_eq!(
        unsafe { qgft_convolve(h.0, a.as_ptr(), cc.as_ptr(), 2, false, out.as_mut_ptr(), 2) },
        QgftStatus::Ok
    );
    assert!((out[0].re - 11.0).abs() < 1e-13 && (out[1].re - 10.0).abs() < 1e-13);
    let (b, d) = ([c(5.0), c(7.0)], [c(2.0), c(3.0)]);
    assert_eq!(
        unsafe { qgft_convolve(h.0, b.as_ptr(), d.as_ptr(), 2, true, out.as_mut_ptr(), 2) },
        QgftStatus::Ok
    );
    assert!((out[0].re - 10.0).abs() < 1e-13 && (out[1].re - 21.0).abs() < 1e-13);
}

#[test]
fn pairing_routes() {
    let h = Handle::new("cyclic:2");
    let (a, b) = ([c(1.0), c(2.0)], [c(3.0), c(4.0)]);
    let mut p = QgftPairing {
        via_inverse: c(0.0),
        via_forward: c(0.0),
        via_w: c(0.0),
        spread: -1.0,
    };
    assert_eq!(unsafe { qgft_pair(h.0, a.as_ptr(), b.as_ptr(), 2, &mut p) }, QgftStatus::Ok);
    for v in [p.via_inverse, p.via_forward, p.via_w] {
        assert!((v.re - 11.0).abs() < 1e-13 && v.im.abs() < 1e-13);
    }
    assert!(p.spread < 1e-13);
}

#[test]
fn verify_returns_report() {
    let h = Handle::new("s3");
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { qgft_verify(h.0, 1e-10, 7, &mut json) }, QgftStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    unsafe { qgft_string_free(json) };
    assert!(text.contains("\"name\": \"pentagon\""));
    assert!(text.contains("\"model\": \"s3\""));
}

#[test]
fn error_codes() {
    let bad = CString::new("cyclic:zero").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qgft_model_new(bad.as_ptr(), &mut out) }, QgftStatus::ParseError);
    assert!(out.is_null());
    assert!(last_error().contains("unknown group"));

    let too_big = CString::new("cyclic:25").unwrap();
    assert_eq!(unsafe { qgft_model_new(too_big.as_ptr(), &mut out) }, QgftStatus::GroupError);

    assert_eq!(unsafe { qgft_model_new(ptr::null(), &mut out) }, QgftStatus::NullPointer);

    let h = Handle::new("cyclic:3");
    let a = [c(1.0), c(2.0)];
    let mut buf = [c(0.0); 9];
    assert_eq!(
        unsafe { qgft_fourier(h.0, a.as_ptr(), 2, buf.as_mut_ptr(), 9) },
        QgftStatus::LengthMismatch
    );
    assert!(last_error().contains("group order is 3"));
    let a3 = [c(1.0), c(2.0), c(3.0)];
    assert_eq!(
        unsafe { qgft_fourier(h.0, a3.as_ptr(), 3, buf.as_mut_ptr(), 4) },
        QgftStatus::LengthMismatch
    );
    let nan = [c(f64::NAN), c(0.0), c(0.0)];
    assert_eq!(
        unsafe { qgft_fourier(h.0, nan.as_ptr(), 3, buf.as_mut_ptr(), 9) },
        QgftStatus::InvalidArgument
    );
    assert_eq!(unsafe { qgft_model_order(ptr::null(), &mut 0) }, QgftStatus::NullPointer);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { qgft_verify(h.0, -1.0, 0, &mut json) }, QgftStatus::InvalidArgument);
    unsafe { qgft_model_free(ptr::null_mut()) };
    unsafe { qgft_string_free(ptr::null_mut()) };
}

#[test]
fn header_declares_every_entry_point() {
    let header = include_str!("../include/qgft.h");
    for name in [
        "qgft_model_new",
        "qgft_model_free",
        "qgft_model_order",
        "qgft_fourier",
        "qgft_inverse_fourier",
        "qgft_convolve",
        "qgft_pair",
        "qgft_verify",
        "qgft_string_free",
        "qgft_last_error_message",
        "typedef struct QgftModel QgftModel",
        "QGFT_STATUS_OK = 0",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
