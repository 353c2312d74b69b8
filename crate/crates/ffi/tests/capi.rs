use std::ffi::{CStr, CString};
use std::ptr;

use lieposet_ffi::*;

fn last_error() -> String {
    let p = lp_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn analyze_from_json() {
    let json =
        CString::new(r#"{"family":"C","n":3,"relations":[[-2,1],[-1,2],[-2,3],[-3,2]]}"#).unwrap();
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(lp_poset_from_json(json.as_ptr(), &mut p), LpStatus::Ok);
        assert_eq!(lp_poset_height(p), 1);
        assert_eq!(lp_poset_relation_count(p), 4);

        let mut r = ptr::null_mut();
        assert_eq!(lp_analyze(p, 0, &mut r), LpStatus::Ok);
        assert_eq!(lp_report_dim(r), 5);
        assert_eq!(lp_report_index(r), 1);
        assert_eq!(lp_report_contact(r), 1);
        assert!(!lp_report_frobenius(r));

        let s = lp_report_to_json(r);
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        assert!(text.starts_with(r#"{"family":"C","n":3,"#), "{text}");
        lp_string_free(s);
        lp_report_free(r);
        lp_poset_free(p);
    }
}

#[test]
fn loop_poset_from_pairs() {
    let pairs = [-3, -2, -3, 1, -3, 3];
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(
            lp_poset_new(LpFamily::C, 3, pairs.as_ptr(), 3, &mut p),
            LpStatus::Ok
        );
        let (mut dim, mut index) = (0usize, 99usize);
        assert_eq!(
            lp_index(p, 8, 2_147_483_647, 0, &mut dim, &mut index),
            LpStatus::Ok
        );
        assert_eq!((dim, index), (6, 0));
        let mut r = ptr::null_mut();
        assert_eq!(lp_analyze(p, 1, &mut r), LpStatus::Ok);
        assert!(lp_report_frobenius(r));
        assert_eq!(lp_report_contact(r), 0);
        lp_report_free(r);
        lp_poset_free(p);
    }
}

#[test]
fn errors_are_reported() {
    let mut p = ptr::null_mut();
    unsafe {
        // -1 < 1 is a cover in type D
        let pairs = [-1, 1];
        assert_eq!(
            lp_poset_new(LpFamily::D, 1, pairs.as_ptr(), 1, &mut p),
            LpStatus::InvalidPoset
        );
        assert!(last_error().contains("CoverViolation"), "{}", last_error());
        assert!(p.is_null());

        let bad = CString::new("{not json").unwrap();
        assert_eq!(
            lp_poset_from_json(bad.as_ptr(), &mut p),
            LpStatus::InvalidPoset
        );
        assert_eq!(
            lp_poset_from_json(ptr::null(), &mut p),
            LpStatus::NullArgument
        );

        let pairs = [-1, 2];
        assert_eq!(
            lp_poset_new(LpFamily::C, 2, pairs.as_ptr(), 1, &mut p),
            LpStatus::Ok
        );
        let (mut d, mut i) = (0, 0);
        assert_eq!(
            lp_index(p, 8, 15, 0, &mut d, &mut i),
            LpStatus::InvalidArgument
        );
        assert!(last_error().contains("NotPrime"));
        lp_poset_free(p);

        lp_poset_free(ptr::null_mut());
        lp_report_free(ptr::null_mut());
        lp_string_free(ptr::null_mut());
        assert!(lp_report_to_json(ptr::null()).is_null());
    }
}

#[test]
fn tall_posets_leave_contact_open() {
    let pairs = [-2, -1, -1, 1];
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(
            lp_poset_new(LpFamily::C, 2, pairs.as_ptr(), 2, &mut p),
            LpStatus::Ok
        );
        assert_eq!(lp_poset_height(p), 3);
        let mut r = ptr::null_mut();
        assert_eq!(lp_analyze(p, 0, &mut r), LpStatus::Ok);
        assert_eq!(lp_report_contact(r), -1);
        lp_report_free(r);
        lp_poset_free(p);
    }
}

#[test]
fn header_is_generated() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/lieposet.h"))
            .unwrap();
    for name in [
        "lp_poset_from_json",
        "lp_analyze",
        "lp_report_to_json",
        "lp_string_free",
        "lp_last_error",
        "LP_STATUS_OK",
    ] {
        assert!(header.contains(name), "{name}");
    }
    let v = unsafe { CStr::from_ptr(lp_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
