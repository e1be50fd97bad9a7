use std::ffi::CStr;
use std::ptr;

use hankel_ffi::*;

fn last_error() -> String {
    let p = hk_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn cx(re: f64, im: f64) -> HkComplex {
    HkComplex { re, im }
}

#[test]
fn lz_expand_boundary_and_errors() {
    let mut out = [HkComplex::default(); 3];
    let s = unsafe { hk_lz_expand(cx(2.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), out.as_mut_ptr()) };
    assert_eq!(s, HkStatus::Ok);
    assert_eq!(out, [cx(2.0, 0.0), cx(2.0, 0.0), cx(2.0, 0.0)]);
    assert!(hk_last_error_message().is_null());

    let s = unsafe { hk_lz_expand(cx(2.5, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), out.as_mut_ptr()) };
    assert_eq!(s, HkStatus::InvalidArgument);
    assert!(last_error().contains("2.5"));

    let s = unsafe { hk_lz_expand(cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), ptr::null_mut()) };
    assert_eq!(s, HkStatus::NullPointer);
}

#[test]
fn koebe_coefficients_through_the_abi() {
    let c = [cx(2.0, 0.0); 6];
    let mut a = [HkComplex::default(); 8];
    let s = unsafe {
        hk_class_coeffs(HK_CLASS_STARLIKE, c.as_ptr(), c.len(), 7, a.as_mut_ptr(), a.len())
    };
    assert_eq!(s, HkStatus::Ok);
    for (k, v) in a.iter().enumerate() {
        assert!((v.re - k as f64).abs() < 1e-12 && v.im == 0.0, "a_{k} = {v:?}");
    }

    let mut t = HkComplex::default();
    let s = unsafe { hk_functional_eval(HK_FUNCTIONAL_T, a.as_ptr(), a.len(), &mut t) };
    assert_eq!(s, HkStatus::Ok);
    assert!((t.re - 2.0).abs() < 1e-12);
}

#[test]
fn buffer_and_selector_errors() {
    let c = [cx(2.0, 0.0); 6];
    let mut a = [HkComplex::default(); 3];
    let s = unsafe {
        hk_class_coeffs(HK_CLASS_STARLIKE, c.as_ptr(), c.len(), 7, a.as_mut_ptr(), a.len())
    };
    assert_eq!(s, HkStatus::BufferTooSmall);

    let s = unsafe { hk_class_coeffs(9, c.as_ptr(), c.len(), 2, a.as_mut_ptr(), a.len()) };
    assert_eq!(s, HkStatus::InvalidArgument);
    assert!(last_error().contains("class"));

    let s = unsafe {
        hk_class_coeffs(HK_CLASS_CONVEX, c.as_ptr(), 1, 7, ptr::null_mut(), 0)
    };
    assert_eq!(s, HkStatus::BufferTooSmall);
}

#[test]
fn triangle_bounds() {
    let (mut n, mut d) = (0i64, 0i64);
    for (class, expected) in [
        (HK_CLASS_BOUNDED_TURNING, (439, 540)),
        (HK_CLASS_STARLIKE, (16, 1)),
        (HK_CLASS_CONVEX, (5, 8)),
    ] {
        assert_eq!(unsafe { hk_triangle_bound(class, &mut n, &mut d) }, HkStatus::Ok);
        assert_eq!((n, d), expected);
    }
}

#[test]
fn extremal_fractions() {
    let mut num = [0i64; 8];
    let mut den = [0i64; 8];
    let s = unsafe {
        hk_extremal_coeffs(
            HK_CLASS_BOUNDED_TURNING,
            HK_VARIANT_PAPER,
            7,
            num.as_mut_ptr(),
            den.as_mut_ptr(),
            8,
        )
    };
    assert_eq!(s, HkStatus::Ok);
    assert_eq!(num, [0, 1, 0, 0, 1, 0, 0, 2]);
    assert_eq!(den, [1, 1, 1, 1, 2, 1, 1, 7]);

    let s = unsafe {
        hk_extremal_coeffs(HK_CLASS_CONVEX, HK_VARIANT_PAPER, 7, num.as_mut_ptr(), den.as_mut_ptr(), 8)
    };
    assert_eq!(s, HkStatus::Ok);
    assert_eq!((num[1], num[2], den[2]), (0, 1, 2));
}

#[test]
fn audit_handle_lifecycle() {
    let cfg = hk_search_config_new(HK_MODEL_LZ, 0);
    assert!(!cfg.is_null());
    unsafe {
        assert_eq!(hk_search_config_set_grid(cfg, 1), HkStatus::InvalidArgument);
        assert!(last_error().contains("grid"));
        assert_eq!(hk_search_config_set_seed(cfg, 3), HkStatus::Ok);
        assert_eq!(hk_search_config_set_restarts(cfg, 8), HkStatus::Ok);

        let mut report = ptr::null_mut();
        let s = hk_audit(HK_CLASS_BOUNDED_TURNING, HK_FUNCTIONAL_FS, cfg, &mut report);
        assert_eq!(s, HkStatus::Ok);
        assert!((hk_bound_report_best_modulus(report) - 2.0 / 3.0).abs() < 1e-4);

        let mut verdict = HkVerdict::BelowBound;
        assert_eq!(hk_bound_report_verdict(report, &mut verdict), HkStatus::Ok);
        assert_eq!(verdict, HkVerdict::AttainsWithinTol);

        let count = hk_bound_report_param_count(report);
        assert_eq!(count, 6);
        let mut params = vec![0.0; count];
        assert_eq!(hk_bound_report_params(report, params.as_mut_ptr(), count), HkStatus::Ok);
        assert_eq!(hk_bound_report_params(report, params.as_mut_ptr(), 2), HkStatus::BufferTooSmall);

        let (mut n, mut d) = (0, 0);
        assert_eq!(hk_bound_report_paper_bound(report, &mut n, &mut d), HkStatus::Ok);
        assert_eq!((n, d), (2, 3));

        let js = hk_bound_report_to_json(report);
        assert!(!js.is_null());
        let text = CStr::from_ptr(js).to_str().unwrap().to_owned();
        hk_string_free(js);
        assert!(text.contains("\"verdict\":\"attains-within-tol\""));

        hk_bound_report_free(report);
        hk_search_config_free(cfg);
    }
}

#[test]
fn lz_cannot_reach_h31() {
    let cfg = hk_search_config_new(HK_MODEL_LZ, 0);
    let mut report = ptr::null_mut();
    let s = unsafe { hk_audit(HK_CLASS_STARLIKE, HK_FUNCTIONAL_H31, cfg, &mut report) };
    assert_eq!(s, HkStatus::InsufficientData);
    assert!(report.is_null());
    unsafe { hk_search_config_free(cfg) };
    assert!(hk_search_config_new(42, 0).is_null());
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        hk_search_config_free(ptr::null_mut());
        hk_bound_report_free(ptr::null_mut());
        hk_string_free(ptr::null_mut());
        assert!(hk_bound_report_best_modulus(ptr::null()).is_nan());
        assert_eq!(hk_bound_report_param_count(ptr::null()), 0);
        assert!(hk_bound_report_to_json(ptr::null()).is_null());
    }
}
