use std::ffi::{CStr, CString};
use std::ptr;

use discplan::bench::{generate, Family};
use discplan_ffi::*;

fn scenario(json: &str) -> (DpStatus, *mut DpScenario) {
    let c = CString::new(json).unwrap();
    let mut s = ptr::null_mut();
    let st = unsafe { dp_scenario_from_json(c.as_ptr(), &mut s) };
    (st, s)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(dp_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

fn take(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { dp_string_free(p) };
    s
}

#[test]
fn plan_round_trip() {
    let (st, s) = scenario(&generate(Family::Grid, 3, 2).unwrap().to_json());
    assert_eq!(st, DpStatus::Ok);
    assert_eq!(unsafe { dp_scenario_validate(s) }, DpStatus::Ok);
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { dp_plan(s, &mut p) }, DpStatus::Ok);
    assert_eq!(unsafe { dp_plan_step_count(p) }, 3);
    let (cost, lb) = unsafe { (dp_plan_total_cost(p), dp_plan_lower_bound(p)) };
    assert!(cost >= lb - 1e-12);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dp_plan_to_json(p, &mut out) }, DpStatus::Ok);
    let json = take(out);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 3);
    assert_eq!(v["totalCost"].as_f64().unwrap(), cost);

    assert_eq!(unsafe { dp_render_svg(s, p, &mut out) }, DpStatus::Ok);
    assert_eq!(take(out).matches("class=\"step\"").count(), 3);
    assert_eq!(
        unsafe { dp_render_svg(s, ptr::null(), &mut out) },
        DpStatus::Ok
    );
    assert!(!take(out).contains("<path"));

    unsafe {
        dp_plan_free(p);
        dp_scenario_free(s);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let (st, s) = scenario("{ not json");
    assert_eq!(st, DpStatus::InvalidInput);
    assert!(s.is_null());
    assert!(!last_error().is_empty());

    let (st, s) = scenario(&generate(Family::Wall, 4, 1).unwrap().to_json());
    assert_eq!(st, DpStatus::Ok);
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { dp_plan(s, &mut p) }, DpStatus::Infeasible);
    assert!(p.is_null());
    assert!(last_error().contains("infeasible"), "{}", last_error());
    unsafe { dp_scenario_free(s) };

    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { dp_scenario_from_json(ptr::null(), &mut s) },
        DpStatus::NullArgument
    );
    assert_eq!(
        unsafe { dp_scenario_validate(ptr::null()) },
        DpStatus::NullArgument
    );
    let bad = [0xffu8, 0];
    assert_eq!(
        unsafe { dp_scenario_from_json(bad.as_ptr().cast(), &mut s) },
        DpStatus::Utf8
    );
    assert!(unsafe { dp_plan_total_cost(ptr::null()) }.is_nan());
    assert_eq!(unsafe { dp_plan_step_count(ptr::null()) }, 0);
    unsafe {
        dp_plan_free(ptr::null_mut());
        dp_scenario_free(ptr::null_mut());
        dp_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/discplan.h"))
            .unwrap();
    for name in [
        "dp_scenario_from_json",
        "dp_scenario_free",
        "dp_scenario_validate",
        "dp_plan(",
        "dp_plan_free",
        "dp_plan_step_count",
        "dp_plan_total_cost",
        "dp_plan_lower_bound",
        "dp_plan_to_json",
        "dp_render_svg",
        "dp_string_free",
        "dp_last_error_message",
        "DP_STATUS_INFEASIBLE = 2",
        "typedef struct DpScenario DpScenario",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
