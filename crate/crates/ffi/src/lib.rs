//! C ABI over `fanoxc`.
//!
//! Every fallible function returns a `FanoxcStatus` and writes its result
//! through an out-pointer. On failure the out-pointer is left untouched and
//! `fanoxc_last_error_message` describes the error on the calling thread.
//! Strings handed out by the library must be released with
//! `fanoxc_string_free`; handles with their matching `*_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use fanoxc::chern::{euler_characteristic, twist, SheafClass};
use fanoxc::chow::{make_model, parse_expression, ChowElement, ThreefoldModel};
use fanoxc::instanton::instanton_invariants;
use fanoxc::ledger::{
    bundled_ledger, emit_report, parse_ledger, run_entries, ReportFormat, RunOptions,
};
use fanoxc::p2::sym_power_cohomology;
use fanoxc::rational::exact_string;
use fanoxc::xcoh::line_cohomology_x;
use fanoxc::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FanoxcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parameter = 3,
    ModelMismatch = 4,
    NotHomogeneous = 5,
    Syntax = 6,
    Consistency = 7,
    Presentation = 8,
    Ledger = 9,
    Io = 10,
    Panic = 11,
}

impl From<&Error> for FanoxcStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parameter(_) => Self::Parameter,
            Error::ModelMismatch { .. } => Self::ModelMismatch,
            Error::NotHomogeneous { .. } => Self::NotHomogeneous,
            Error::Syntax { .. } | Error::DivisionByZero { .. } => Self::Syntax,
            Error::Consistency(_) => Self::Consistency,
            Error::Presentation { .. } => Self::Presentation,
            Error::LedgerParse { .. } | Error::LedgerSchema { .. } => Self::Ledger,
            Error::Io(_) => Self::Io,
        }
    }
}

/// Opaque handle to one threefold X_c.
pub struct FanoxcModel(ThreefoldModel);

/// Opaque handle to a normal-form Chow ring element.
pub struct FanoxcElement(ChowElement);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Failure(FanoxcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure((&e).into(), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(FanoxcStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FanoxcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            FanoxcStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FanoxcStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(FanoxcStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn read_opt_str<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        read_str(p, what).map(Some)
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure(FanoxcStatus::Consistency, e.to_string()))?;
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(c.into_raw());
    Ok(())
}

/// Message for the last failing call on this thread; empty after a success.
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn fanoxc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fanoxc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates the model for `0 <= c <= 4`.
#[no_mangle]
pub unsafe extern "C" fn fanoxc_model_new(c: i64, out: *mut *mut FanoxcModel) -> FanoxcStatus {
    guard(|| {
        let m = make_model(c)?;
        write_out(out, Box::into_raw(Box::new(FanoxcModel(m))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn fanoxc_model_free(model: *mut FanoxcModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// The parameter c of the model, or -1 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn fanoxc_model_c(model: *const FanoxcModel) -> i32 {
    model.as_ref().map_or(-1, |m| m.0.c() as i32)
}

/// Parses an expression in `xi`, `f`, `h`, `K` and rationals.
#[no_mangle]
pub unsafe extern "C" fn fanoxc_element_parse(
    model: *const FanoxcModel,
    expr: *const c_char,
    out: *mut *mut FanoxcElement,
) -> FanoxcStatus {
    guard(|| {
        let m = model.as_ref().ok_or_else(|| null("model"))?;
        let e = parse_expression(read_str(expr, "expression")?, &m.0)?;
        write_out(out, Box::into_raw(Box::new(FanoxcElement(e))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn fanoxc_element_free(element: *mut FanoxcElement) {
    if !element.is_null() {
        drop(Box::from_raw(element));
    }
}

/// Product of two elements of the same model.
#[no_mangle]
pub unsafe extern "C" fn fanoxc_element_mul(
    a: *const FanoxcElement,
    b: *const FanoxcElement,
    out: *mut *mut FanoxcElement,
) -> FanoxcStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("left operand"))?;
        let b = b.as_ref().ok_or_else(|| null("right operand"))?;
        let p = a.0.checked_mul(&b.0)?;
        write_out(out, Box::into_raw(Box::new(FanoxcElement(p))))
    })
}

/// Normal form, e.g. `2*xi*f - f^2`. Free with `fanoxc_string_free`.
#[no_mangle]
pub unsafe extern "C" fn fanoxc_element_to_string(
    element: *const FanoxcElement,
    out: *mut *mut c_char,
) -> FanoxcStatus {
    guard(|| {
        let e = element.as_ref().ok_or_else(|| null("element"))?;
        write_string(out, e.0.to_string())
    })
}

/// Degree of the top component as an exact "p/q" or integer string.
#[no_mangle]
pub unsafe extern "C" fn fanoxc_element_degree(
    element: *const FanoxcElement,
    out: *mut *mut c_char,
) -> FanoxcStatus {
    guard(|| {
        let e = element.as_ref().ok_or_else(|| null("element"))?;
        write_string(out, exact_string(&e.0.degree()))
    })
}

/// Exact Euler characteristic of a class given by expressions. `c3` and
/// `twist_by` may be null.
#[no_mangle]
pub unsafe extern "C" fn fanoxc_euler_characteristic(
    model: *const FanoxcModel,
    rank: u32,
    c1: *const c_char,
    c2: *const c_char,
    c3: *const c_char,
    twist_by: *const c_char,
    out: *mut *mut c_char,
) -> FanoxcStatus {
    guard(|| {
        let m = model.as_ref().ok_or_else(|| null("model"))?.0;
        let parse = |s: &str| parse_expression(s, &m);
        let c3 = match read_opt_str(c3, "c3")? {
            Some(s) => parse(s)?,
            None => m.zero(),
        };
        let mut s = SheafClass::new(
            rank,
            parse(read_str(c1, "c1")?)?,
            parse(read_str(c2, "c2")?)?,
            c3,
        )?;
        if let Some(d) = read_opt_str(twist_by, "twist")? {
            s = twist(&s, &parse(d)?)?;
        }
        write_string(out, exact_string(&euler_characteristic(&s)?))
    })
}

/// `h^i(X_c, O(l1 xi + l2 f))` as JSON: `{"exact":true,"h":[..]}` or bounds.
#[no_mangle]
pub unsafe extern "C" fn fanoxc_line_cohomology(
    c: i64,
    l1: i64,
    l2: i64,
    out: *mut *mut c_char,
) -> FanoxcStatus {
    guard(|| {
        write_string(
            out,
            serde_json::to_string(&line_cohomology_x(c, l1, l2)?).expect("serializable"),
        )
    })
}

/// `h^i(P^2, S^m F_c (b))` as JSON, same shape as the line table.
#[no_mangle]
pub unsafe extern "C" fn fanoxc_sym_cohomology(
    c: i64,
    m: i64,
    b: i64,
    out: *mut *mut c_char,
) -> FanoxcStatus {
    guard(|| {
        write_string(
            out,
            serde_json::to_string(&sym_power_cohomology(c, m, b)?).expect("serializable"),
        )
    })
}

/// Instanton invariants of `c2 = alpha xi f + beta f^2` as a JSON object.
#[no_mangle]
pub unsafe extern "C" fn fanoxc_instanton_invariants(
    c: i64,
    alpha: i64,
    beta: i64,
    out: *mut *mut c_char,
) -> FanoxcStatus {
    guard(|| {
        write_string(
            out,
            serde_json::to_string(&instanton_invariants(alpha, beta, c)?).expect("serializable"),
        )
    })
}

/// Runs a ledger given as JSON text, or the bundled ledger when `ledger_json`
/// is null, and writes the JSON report. Failing entries still return
/// `FANOXC_STATUS_OK`; inspect `"failed"` in the report.
#[no_mangle]
pub unsafe extern "C" fn fanoxc_verify(
    ledger_json: *const c_char,
    parallel: bool,
    out: *mut *mut c_char,
) -> FanoxcStatus {
    guard(|| {
        let ledger = match read_opt_str(ledger_json, "ledger")? {
            Some(text) => parse_ledger(text)?,
            None => bundled_ledger(),
        };
        let report = run_entries(
            &ledger,
            RunOptions {
                parallel,
                record_timings: true,
            },
        );
        let bytes = emit_report(&report, ReportFormat::Json);
        write_string(out, String::from_utf8(bytes).expect("utf-8 report"))
    })
}
