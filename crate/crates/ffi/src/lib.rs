//! C interface to the planner.
//!
//! Scenarios and plans are opaque handles. Every fallible call returns a
//! [`DpStatus`]; on failure [`dp_last_error_message`] describes the error
//! for the calling thread. Strings returned by the library must be released
//! with [`dp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use discplan::render::render_svg;
use discplan::report::PlanFile;
use discplan::{Error, Plan, Scenario};

/// Result codes. The nonzero values below 4 match the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DpStatus {
    Ok = 0,
    InvalidInput = 1,
    Infeasible = 2,
    InvariantViolation = 3,
    NullArgument = 4,
    Utf8 = 5,
    Panic = 6,
}

/// Opaque scenario handle.
pub struct DpScenario(Scenario);

/// Opaque plan handle; remembers the radius used for file units.
pub struct DpPlan {
    plan: Plan,
    file: PlanFile,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> DpStatus {
    match e.exit_code() {
        2 => DpStatus::Infeasible,
        3 => DpStatus::InvariantViolation,
        _ => DpStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), DpStatus>) -> DpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            DpStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            DpStatus::Panic
        }
    }
}

fn fail(e: Error) -> DpStatus {
    set_error(&e.to_string());
    status_of(&e)
}

fn null(what: &str) -> DpStatus {
    set_error(&format!("{what} is null"));
    DpStatus::NullArgument
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, DpStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        DpStatus::Utf8
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), DpStatus> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| {
        set_error("output contains NUL");
        DpStatus::Utf8
    })?;
    *out = c.into_raw();
    Ok(())
}

/// Parses a scenario from JSON text and stores a new handle in `out`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dp_scenario_from_json(
    json: *const c_char,
    out: *mut *mut DpScenario,
) -> DpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let text = read_str(json, "json")?;
        let s = Scenario::from_json(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(DpScenario(s)));
        Ok(())
    })
}

/// # Safety
/// `s` must come from [`dp_scenario_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dp_scenario_free(s: *mut DpScenario) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Checks the separation requirements.
///
/// # Safety
/// `s` must be a live scenario handle.
#[no_mangle]
pub unsafe extern "C" fn dp_scenario_validate(s: *const DpScenario) -> DpStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("scenario"))?;
        s.0.validate().map_err(fail)
    })
}

/// Validates and plans the scenario, storing a new plan handle in `out`.
///
/// # Safety
/// `s` must be a live scenario handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dp_plan(s: *const DpScenario, out: *mut *mut DpPlan) -> DpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let s = &s.as_ref().ok_or_else(|| null("scenario"))?.0;
        s.validate().map_err(fail)?;
        let plan = discplan::plan(s).map_err(fail)?;
        let file = PlanFile::new(&plan, s.robot_radius);
        *out = Box::into_raw(Box::new(DpPlan { plan, file }));
        Ok(())
    })
}

/// # Safety
/// `p` must come from [`dp_plan`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dp_plan_free(p: *mut DpPlan) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of steps, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live plan handle.
#[no_mangle]
pub unsafe extern "C" fn dp_plan_step_count(p: *const DpPlan) -> usize {
    p.as_ref().map_or(0, |p| p.plan.steps.len())
}

/// Total path length in scenario units, or NaN for a null handle.
///
/// # Safety
/// `p` must be null or a live plan handle.
#[no_mangle]
pub unsafe extern "C" fn dp_plan_total_cost(p: *const DpPlan) -> f64 {
    p.as_ref().map_or(f64::NAN, |p| p.file.total_cost)
}

/// Optimal assignment cost in scenario units, or NaN for a null handle.
///
/// # Safety
/// `p` must be null or a live plan handle.
#[no_mangle]
pub unsafe extern "C" fn dp_plan_lower_bound(p: *const DpPlan) -> f64 {
    p.as_ref().map_or(f64::NAN, |p| p.file.lower_bound)
}

/// Plan JSON in scenario units. Free the result with [`dp_string_free`].
///
/// # Safety
/// `p` must be a live plan handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dp_plan_to_json(p: *const DpPlan, out: *mut *mut c_char) -> DpStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("plan"))?;
        write_string(out, p.file.to_json())
    })
}

/// SVG drawing of the scenario and, if `p` is not null, the plan.
///
/// # Safety
/// `s` must be a live scenario handle, `p` null or a live plan handle and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dp_render_svg(
    s: *const DpScenario,
    p: *const DpPlan,
    out: *mut *mut c_char,
) -> DpStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("scenario"))?;
        let file = p.as_ref().map(|p| &p.file);
        write_string(out, render_svg(&s.0, file))
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failure on this thread; empty after a
/// success. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn dp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
