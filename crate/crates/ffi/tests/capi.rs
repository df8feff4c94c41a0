//! Exercises the C surface through the exported extern functions.

use std::ffi::{CStr, CString};
use std::ptr;

use tilecon_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(ptr: *mut std::ffi::c_char) -> String {
    assert!(!ptr.is_null());
    let text = CStr::from_ptr(ptr).to_str().unwrap().to_string();
    tc_string_free(ptr);
    text
}

fn last_error() -> String {
    unsafe {
        CStr::from_ptr(tc_last_error_message())
            .to_str()
            .unwrap()
            .to_string()
    }
}

#[test]
fn analyze_roundtrip_through_the_c_surface() {
    unsafe {
        let mut system: *mut TcSystem = ptr::null_mut();
        let digits = c("0,1,8/5");
        assert_eq!(
            tc_system_new(-1, -3, digits.as_ptr(), &mut system),
            TcStatus::TcOk
        );
        assert!(!system.is_null());

        let mut json_ptr: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(tc_analyze_json(system, &mut json_ptr), TcStatus::TcOk);
        let json: serde_json::Value =
            serde_json::from_str(&take_string(json_ptr)).expect("valid JSON report");
        assert_eq!(json["schema"], 1);
        assert_eq!(json["verdict"], "connected");
        assert_eq!(json["input"]["digits"][2], "8/5");

        tc_system_free(system);
    }
}

#[test]
fn membership_and_witness() {
    unsafe {
        let mut system: *mut TcSystem = ptr::null_mut();
        let digits = c("0,1,3");
        assert_eq!(
            tc_system_new(-1, -3, digits.as_ptr(), &mut system),
            TcStatus::TcOk
        );

        let gamma = c("2");
        let delta = c("0");
        let mut member = -1i32;
        let mut witness: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            tc_is_member(
                system,
                gamma.as_ptr(),
                delta.as_ptr(),
                &mut member,
                &mut witness
            ),
            TcStatus::TcOk
        );
        assert_eq!(member, 1);
        let witness_text = take_string(witness);
        // the witness must verify against the target through the same ABI
        let expansion = c(&witness_text);
        let mut verified = -1i32;
        assert_eq!(
            tc_verify_expansion(
                -1,
                -3,
                expansion.as_ptr(),
                gamma.as_ptr(),
                delta.as_ptr(),
                digits.as_ptr(),
                &mut verified,
            ),
            TcStatus::TcOk
        );
        assert_eq!(verified, 1);

        // a point outside the box is refuted without a witness
        let gamma = c("100");
        let mut member = -1i32;
        let mut witness: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            tc_is_member(
                system,
                gamma.as_ptr(),
                delta.as_ptr(),
                &mut member,
                &mut witness
            ),
            TcStatus::TcOk
        );
        assert_eq!(member, 0);
        assert!(witness.is_null());

        tc_system_free(system);
    }
}

#[test]
fn verify_known_identity_without_alphabet() {
    unsafe {
        let expansion = c("0.(-2,-3)[3,-3,0]");
        let gamma = c("2");
        let delta = c("0");
        let mut verified = -1i32;
        assert_eq!(
            tc_verify_expansion(
                2,
                3,
                expansion.as_ptr(),
                gamma.as_ptr(),
                delta.as_ptr(),
                ptr::null(),
                &mut verified,
            ),
            TcStatus::TcOk
        );
        assert_eq!(verified, 1);
    }
}

#[test]
fn sweep_csv_through_the_c_surface() {
    unsafe {
        let values = c("8/5,2,9/2");
        let mut csv_ptr: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            tc_sweep_csv(-1, -3, values.as_ptr(), &mut csv_ptr),
            TcStatus::TcOk
        );
        let csv = take_string(csv_ptr);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "b,numerator,denominator,verdict,states,ms");
        assert!(lines[1].starts_with("8/5,8,5,connected,"));
        assert!(lines[3].starts_with("9/2,9,2,disconnected,"));
    }
}

#[test]
fn render_writes_pgm_via_c_surface() {
    unsafe {
        let mut system: *mut TcSystem = ptr::null_mut();
        let digits = c("0,1,4");
        assert_eq!(
            tc_system_new(1, 3, digits.as_ptr(), &mut system),
            TcStatus::TcOk
        );
        let dir = std::env::temp_dir().join(format!("tilecon-ffi-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.pgm");
        let path_c = c(path.to_str().unwrap());
        assert_eq!(
            tc_render_pgm(system, 8, 120, 80, 0.05, ptr::null(), path_c.as_ptr()),
            TcStatus::TcOk
        );
        let bytes = std::fs::read(&path).unwrap();
        assert!(bytes.starts_with(b"P5\n120 80\n255\n"));
        assert_eq!(bytes.len(), 14 + 120 * 80);
        tc_system_free(system);
    }
}

#[test]
fn error_paths_set_status_and_message() {
    unsafe {
        // not expanding
        let mut system: *mut TcSystem = ptr::null_mut();
        let digits = c("0,1,2");
        assert_eq!(
            tc_system_new(4, 3, digits.as_ptr(), &mut system),
            TcStatus::TcInvalidInput
        );
        assert!(system.is_null());
        assert!(last_error().contains("not expanding"));

        // null argument
        assert_eq!(
            tc_system_new(1, 3, ptr::null(), &mut system),
            TcStatus::TcNullArgument
        );

        // state limit surfaces as a resource limit
        let mut system: *mut TcSystem = ptr::null_mut();
        assert_eq!(
            tc_system_new(1, 3, digits.as_ptr(), &mut system),
            TcStatus::TcOk
        );
        assert_eq!(tc_system_set_state_limit(system, 2), TcStatus::TcOk);
        let mut json_ptr: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            tc_analyze_json(system, &mut json_ptr),
            TcStatus::TcResourceLimit
        );
        assert!(last_error().contains("state limit"));
        tc_system_free(system);
    }
}

#[test]
fn defaults_are_exposed() {
    assert_eq!(tc_default_bound_terms(), 13);
    assert_eq!(tc_default_state_limit(), 10_000_000);
}

#[test]
fn generated_header_exists_and_names_the_surface() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("include")
        .join("tilecon.h");
    let text = std::fs::read_to_string(header).expect("cbindgen header generated at build time");
    for symbol in [
        "tc_system_new",
        "tc_system_free",
        "tc_analyze_json",
        "tc_is_member",
        "tc_verify_expansion",
        "tc_sweep_csv",
        "tc_render_pgm",
        "tc_string_free",
        "tc_last_error_message",
        "TC_RESOURCE_LIMIT",
        "typedef struct TcSystem TcSystem",
    ] {
        assert!(text.contains(symbol), "header is missing {symbol}");
    }
}
