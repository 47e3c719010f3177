//! Exercise the C ABI exactly as a foreign caller would: through raw
//! pointers, encodings, and status codes.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use gqm_ffi::*;

unsafe fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let s = CStr::from_ptr(ptr).to_str().unwrap().to_string();
    gqm_string_free(ptr);
    s
}

#[test]
fn field_handle_lifecycle_and_arithmetic() {
    unsafe {
        let mut field: *mut GqmField = ptr::null_mut();
        assert_eq!(gqm_field_new(2, 2, &mut field), GQM_OK);
        assert!(!field.is_null());

        let mut q = 0u64;
        assert_eq!(gqm_field_order(field, &mut q), GQM_OK);
        assert_eq!(q, 4);
        let mut p = 0u64;
        assert_eq!(gqm_field_characteristic(field, &mut p), GQM_OK);
        assert_eq!(p, 2);
        let mut n = 0u32;
        assert_eq!(gqm_field_degree(field, &mut n), GQM_OK);
        assert_eq!(n, 2);

        // in GF(4) with encodings 0,1,a=2,a+1=3: a * a = a + 1
        let mut out = 0u64;
        assert_eq!(gqm_field_mul(field, 2, 2, &mut out), GQM_OK);
        assert_eq!(out, 3);
        assert_eq!(gqm_field_add(field, 3, 3, &mut out), GQM_OK);
        assert_eq!(out, 0);
        assert_eq!(gqm_field_inv(field, 2, &mut out), GQM_OK);
        assert_eq!(out, 3);
        assert_eq!(gqm_field_pow(field, 2, 3, &mut out), GQM_OK);
        assert_eq!(out, 1); // generator^(q-1) = 1

        let mut gen = 0u64;
        assert_eq!(gqm_field_generator(field, &mut gen), GQM_OK);
        assert_eq!(gen, 2);

        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(gqm_field_element_str(field, 3, &mut s), GQM_OK);
        assert_eq!(take_string(s), "a+1");

        // error paths
        assert_eq!(gqm_field_inv(field, 0, &mut out), GQM_ERR_DOMAIN);
        assert_eq!(gqm_field_mul(field, 9, 0, &mut out), GQM_ERR_INVALID_ARGUMENT);
        assert_eq!(gqm_field_order(ptr::null(), &mut q), GQM_ERR_NULL_POINTER);

        gqm_field_free(field);
        gqm_field_free(ptr::null_mut());
    }
}

#[test]
fn construction_errors_map_to_statuses() {
    unsafe {
        let mut field: *mut GqmField = ptr::null_mut();
        assert_eq!(gqm_field_new(6, 1, &mut field), GQM_ERR_INVALID_ARGUMENT);
        assert_eq!(gqm_field_from_order(12, &mut field), GQM_ERR_INVALID_ARGUMENT);
        assert_eq!(gqm_field_new(2, 1, ptr::null_mut()), GQM_ERR_NULL_POINTER);
        assert!(field.is_null(), "out pointer must stay untouched on failure");
    }
}

#[test]
fn version_and_status_messages_are_static() {
    unsafe {
        let v = CStr::from_ptr(gqm_version()).to_str().unwrap();
        assert!(!v.is_empty());
        let ok = CStr::from_ptr(gqm_status_message(GQM_OK)).to_str().unwrap();
        assert_eq!(ok, "ok");
        let unknown = CStr::from_ptr(gqm_status_message(99)).to_str().unwrap();
        assert_eq!(unknown, "unknown status");
    }
}

#[test]
fn table1_json_round_trips() {
    unsafe {
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(gqm_table1_json(3, &mut out), GQM_OK);
        let json = take_string(out);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 4);
        assert_eq!(v["rows"][0]["ev"], "-1");
        assert_eq!(v["rows"][3]["pp"], "1/4");

        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(gqm_table1_json(6, &mut out), GQM_ERR_INVALID_ARGUMENT);
        assert!(out.is_null());
    }
}

#[test]
fn chsh_and_counts_json() {
    unsafe {
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(gqm_chsh_json(2, false, &mut out), GQM_OK);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["max_abs"], "2");

        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(gqm_counts_json(2, 4, false, &mut out), GQM_OK);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["q_int"], "15");
    }
}

#[test]
fn lhv_json_paths() {
    unsafe {
        let uniform = CString::new(
            r#"{"m1":1,"m2":1,"pairs":{"0,0":{"pp":"1/4","pm":"1/4","mp":"1/4","mm":"1/4"}}}"#,
        )
        .unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(gqm_lhv_table_json(uniform.as_ptr(), &mut out), GQM_OK);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["feasible"], true);
        assert_eq!(v["verified"], true);

        let garbage = CString::new("{oops").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(gqm_lhv_table_json(garbage.as_ptr(), &mut out), GQM_ERR_INVALID_ARGUMENT);

        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(gqm_lhv_gqm_json(2, 0, 0, &mut out), GQM_OK);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["feasible"], false);
        assert_eq!(v["verified"], true);

        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(gqm_lhv_gqm_json(2, 7, 0, &mut out), GQM_ERR_INVALID_ARGUMENT);
    }
}

#[test]
fn fun_and_probs_json() {
    unsafe {
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(gqm_fun_json(3, &mut out), GQM_OK);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["automorphism_order"], 6);
        assert_eq!(v["spin_model"]["superposition"], "AdditionForbidden");

        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(gqm_probs_json(3, -1, -1, &mut out), GQM_OK);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 3);

        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(gqm_probs_json(3, 0, 1, &mut out), GQM_OK);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["observable"], "A(0,1)");
    }
}

#[test]
fn verify_all_reports_aggregate() {
    unsafe {
        let mut all_passed = false;
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(gqm_verify_all_json(2, &mut all_passed, &mut out), GQM_OK);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert!(all_passed);
        assert_eq!(v["all_passed"], true);
        assert!(v["checks"].as_array().unwrap().len() >= 10);
    }
}
