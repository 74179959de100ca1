use std::ffi::{CStr, CString};
use std::ptr;

use objcomb::incidence::{fdb_coproduct, plethystic_coproduct, Poly, TensorPoly};
use objcomb::lambda::Lambda;
use objcomb_ffi::*;

fn json_of(t: *const ObjcombTensor) -> serde_json::Value {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { objcomb_tensor_to_json(t, &mut s) }, ObjcombStatus::Ok);
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { objcomb_string_free(s) };
    v
}

fn last_error() -> String {
    let p = objcomb_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn version_matches_the_crate() {
    let v = unsafe { CStr::from_ptr(objcomb_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn fdb_coproduct_through_a_handle() {
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { objcomb_fdb_coproduct(3, &mut t) }, ObjcombStatus::Ok);
    assert!(objcomb_last_error().is_null());
    assert_eq!(unsafe { objcomb_tensor_len(t) }, 3);
    assert_eq!(TensorPoly::from_json(&json_of(t)).unwrap(), fdb_coproduct(3).unwrap());
    unsafe { objcomb_tensor_free(t) };
}

#[test]
fn plethystic_coproduct_accepts_both_syntaxes() {
    let expected = plethystic_coproduct(&Lambda::from_pairs([(1, 1), (2, 1)])).unwrap();
    for src in ["{1:1,2:1}", "[[0],[1,2]]"] {
        let c = CString::new(src).unwrap();
        let mut t = ptr::null_mut();
        assert_eq!(unsafe { objcomb_plethystic_coproduct(c.as_ptr(), &mut t) }, ObjcombStatus::Ok);
        assert_eq!(TensorPoly::from_json(&json_of(t)).unwrap(), expected);
        unsafe { objcomb_tensor_free(t) };
    }
}

#[test]
fn bell_polynomial_json() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { objcomb_bell_polynomial(4, 2, &mut p) }, ObjcombStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { objcomb_poly_to_json(p, &mut s) }, ObjcombStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    assert_eq!(Poly::from_json(&v).unwrap().to_string(), "4 A{1:1}*A{3:1} + 3 A{2:1}^2");
    unsafe {
        objcomb_string_free(s);
        objcomb_poly_free(p);
    }
}

#[test]
fn transversal_counts() {
    for (sigma, expected) in [("[[0],[1],[2]]", 5), ("[[0,1]]", 2)] {
        let c = CString::new(sigma).unwrap();
        let mut n = 0usize;
        assert_eq!(unsafe { objcomb_transversal_count(c.as_ptr(), &mut n) }, ObjcombStatus::Ok);
        assert_eq!(n, expected);
    }
}

#[test]
fn duality_checks_pass() {
    let mut ok = false;
    assert_eq!(unsafe { objcomb_fdb_duality_check(5, 5, 7, &mut ok) }, ObjcombStatus::Ok);
    assert!(ok);
    let c = CString::new("{1:2,2:1}").unwrap();
    ok = false;
    assert_eq!(unsafe { objcomb_plethystic_duality_check(c.as_ptr(), 5, 7, &mut ok) }, ObjcombStatus::Ok);
    assert!(ok);
}

#[test]
fn failures_set_status_and_message() {
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { objcomb_fdb_coproduct(20, &mut t) }, ObjcombStatus::BoundExceeded);
    assert!(t.is_null());
    assert!(last_error().contains("20"));

    let c = CString::new("{2:").unwrap();
    assert_eq!(unsafe { objcomb_plethystic_coproduct(c.as_ptr(), &mut t) }, ObjcombStatus::Parse);

    let c = CString::new("[[0,0]]").unwrap();
    let mut n = 0usize;
    assert_eq!(unsafe { objcomb_transversal_count(c.as_ptr(), &mut n) }, ObjcombStatus::InvalidPartition);

    assert_eq!(unsafe { objcomb_plethystic_coproduct(ptr::null(), &mut t) }, ObjcombStatus::NullPointer);
    assert_eq!(unsafe { objcomb_fdb_coproduct(2, ptr::null_mut()) }, ObjcombStatus::NullPointer);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { objcomb_plethystic_coproduct(bad.as_ptr().cast(), &mut t) }, ObjcombStatus::InvalidUtf8);

    assert_eq!(unsafe { objcomb_tensor_len(ptr::null()) }, 0);
    unsafe {
        objcomb_tensor_free(ptr::null_mut());
        objcomb_poly_free(ptr::null_mut());
        objcomb_string_free(ptr::null_mut());
    }
}
