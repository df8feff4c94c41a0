//! C ABI for the connectedness engine.
//!
//! The surface follows the usual conventions: opaque handles, integer status
//! codes, UTF-8 strings allocated by this library and released through
//! [`tc_string_free`], and a thread-local last-error message. The header is
//! generated by cbindgen into `include/tilecon.h` at build time.
//!
//! Rationals cross the boundary as text (`"8/5"`, `"-3"`) so no precision is
//! lost; reports and sweep results come back as JSON/CSV strings with the
//! same layout as the CLI output.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::sync::Mutex;

use tilecon::algebra::{parse_rational, QuadraticPoly, Rational};
use tilecon::cli::{report_to_json, sweep_to_csv};
use tilecon::connectivity::{decide_with, sweep, DecideOptions};
use tilecon::coords::DEFAULT_BOUND_TERMS;
use tilecon::error::Error;
use tilecon::neighbors::{DigitSystem, LatticePoint, NeighborAutomaton, DEFAULT_STATE_LIMIT};
use tilecon::radix::{self, RadixExpansion};
use tilecon::render::{default_depth, enumerate_points, pgm_bytes, rasterize, RenderConfig};

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TcStatus {
    /// Success.
    TcOk = 0,
    /// Malformed or out-of-domain input.
    TcInvalidInput = 1,
    /// The automaton state limit was exceeded.
    TcResourceLimit = 2,
    /// Internal failure; see `tc_last_error_message`.
    TcInternal = 3,
    /// A required pointer argument was null.
    TcNullArgument = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let cstring = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = cstring);
}

fn status_of(err: &Error) -> TcStatus {
    match err {
        Error::StateLimit { .. } => TcStatus::TcResourceLimit,
        Error::NoContraction { .. } => TcStatus::TcInternal,
        _ => TcStatus::TcInvalidInput,
    }
}

fn fail(err: &Error) -> TcStatus {
    set_error(&err.to_string());
    status_of(err)
}

/// Opaque handle: a digit system plus decision options and a cached
/// membership automaton.
pub struct TcSystem {
    system: DigitSystem,
    options: DecideOptions,
    automaton: Mutex<Option<NeighborAutomaton>>,
}

unsafe fn cstr<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    CStr::from_ptr(ptr).to_str().ok()
}

fn parse_digits(csv: &str) -> Result<Vec<Rational>, Error> {
    csv.split(',').map(parse_rational).collect()
}

fn export_string(text: String, out: *mut *mut c_char) -> TcStatus {
    match CString::new(text) {
        Ok(cstring) => {
            unsafe { *out = cstring.into_raw() };
            TcStatus::TcOk
        }
        Err(_) => {
            set_error("output contained an interior NUL byte");
            TcStatus::TcInternal
        }
    }
}

/// Build a digit system for `f(x) = x^2 + px + q` with the comma-separated
/// digit coefficients in `digits_csv`. On success `*out_system` owns the new
/// handle; release it with [`tc_system_free`].
///
/// # Safety
/// `digits_csv` must be a valid NUL-terminated string and `out_system` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_system_new(
    p: i64,
    q: i64,
    digits_csv: *const c_char,
    out_system: *mut *mut TcSystem,
) -> TcStatus {
    if out_system.is_null() {
        set_error("out_system is null");
        return TcStatus::TcNullArgument;
    }
    *out_system = std::ptr::null_mut();
    let Some(csv) = cstr(digits_csv) else {
        set_error("digits_csv is null or not UTF-8");
        return TcStatus::TcNullArgument;
    };
    let system = QuadraticPoly::new(p, q)
        .and_then(|poly| parse_digits(csv).and_then(|digits| DigitSystem::new(poly, digits)));
    match system {
        Ok(system) => {
            let handle = Box::new(TcSystem {
                system,
                options: DecideOptions::default(),
                automaton: Mutex::new(None),
            });
            *out_system = Box::into_raw(handle);
            TcStatus::TcOk
        }
        Err(e) => fail(&e),
    }
}

/// Release a handle created by [`tc_system_new`]. Null is a no-op.
///
/// # Safety
/// `system` must be a pointer previously returned by [`tc_system_new`] that
/// has not been freed already.
#[no_mangle]
pub unsafe extern "C" fn tc_system_free(system: *mut TcSystem) {
    if !system.is_null() {
        drop(Box::from_raw(system));
    }
}

/// Override the number of explicitly summed tail-bound terms (default 13).
/// Resets the cached automaton.
///
/// # Safety
/// `system` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_system_set_bound_terms(
    system: *mut TcSystem,
    terms: usize,
) -> TcStatus {
    let Some(handle) = system.as_mut() else {
        set_error("system is null");
        return TcStatus::TcNullArgument;
    };
    if terms < 2 {
        set_error("bound terms must be at least 2");
        return TcStatus::TcInvalidInput;
    }
    handle.options.bound_terms = terms;
    *handle.automaton.lock().unwrap() = None;
    TcStatus::TcOk
}

/// Override the automaton state limit (default 10^7). Resets the cached
/// automaton.
///
/// # Safety
/// `system` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_system_set_state_limit(
    system: *mut TcSystem,
    limit: usize,
) -> TcStatus {
    let Some(handle) = system.as_mut() else {
        set_error("system is null");
        return TcStatus::TcNullArgument;
    };
    if limit == 0 {
        set_error("state limit must be positive");
        return TcStatus::TcInvalidInput;
    }
    handle.options.state_limit = limit;
    *handle.automaton.lock().unwrap() = None;
    TcStatus::TcOk
}

/// Decide connectedness and return the JSON report (schema 1, identical to
/// the CLI `analyze` output). The returned string is owned by the caller;
/// free it with [`tc_string_free`].
///
/// # Safety
/// `system` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_analyze_json(
    system: *const TcSystem,
    out_json: *mut *mut c_char,
) -> TcStatus {
    let Some(handle) = system.as_ref() else {
        set_error("system is null");
        return TcStatus::TcNullArgument;
    };
    if out_json.is_null() {
        set_error("out_json is null");
        return TcStatus::TcNullArgument;
    }
    match decide_with(&handle.system, &handle.options) {
        Ok(report) => export_string(report_to_json(&report), out_json),
        Err(e) => fail(&e),
    }
}

/// Decide whether `gamma v + delta Av` (rationals as text) lies in `T - T`.
/// `*out_member` receives 0 or 1. When the point is a member and
/// `out_witness` is non-null, `*out_witness` receives the digit witness in
/// the expansion grammar (free with [`tc_string_free`]); otherwise it is set
/// to null.
///
/// # Safety
/// `system` must be a live handle; `gamma`, `delta` valid strings;
/// `out_member` a valid pointer; `out_witness` null or valid.
#[no_mangle]
pub unsafe extern "C" fn tc_is_member(
    system: *const TcSystem,
    gamma: *const c_char,
    delta: *const c_char,
    out_member: *mut i32,
    out_witness: *mut *mut c_char,
) -> TcStatus {
    let Some(handle) = system.as_ref() else {
        set_error("system is null");
        return TcStatus::TcNullArgument;
    };
    if out_member.is_null() {
        set_error("out_member is null");
        return TcStatus::TcNullArgument;
    }
    let (Some(gamma), Some(delta)) = (cstr(gamma), cstr(delta)) else {
        set_error("gamma/delta is null or not UTF-8");
        return TcStatus::TcNullArgument;
    };
    let point = match (parse_rational(gamma), parse_rational(delta)) {
        (Ok(g), Ok(d)) => LatticePoint::new(g, d),
        (Err(e), _) | (_, Err(e)) => return fail(&e),
    };
    if !out_witness.is_null() {
        *out_witness = std::ptr::null_mut();
    }

    let mut cache = handle.automaton.lock().unwrap();
    if cache.is_none() {
        let bounds =
            match tilecon::coords::tail_bounds(handle.system.poly(), handle.options.bound_terms) {
                Ok(b) => b,
                Err(e) => return fail(&e),
            };
        match NeighborAutomaton::build(&handle.system, &bounds, handle.options.state_limit) {
            Ok(a) => *cache = Some(a),
            Err(e) => return fail(&e),
        }
    }
    let automaton = cache.as_mut().expect("just built");
    match automaton.is_member(&point) {
        Ok(membership) => {
            *out_member = membership.is_member as i32;
            if let (false, Some(witness)) = (out_witness.is_null(), membership.witness) {
                return export_string(witness.to_string(), out_witness);
            }
            TcStatus::TcOk
        }
        Err(e) => fail(&e),
    }
}

/// Evaluate `expansion` (grammar `int.(pre)[period]`) in base
/// `x^2 + px + q` and compare with the target point. When `digits_csv` is
/// non-null the fractional digits must also come from the difference set of
/// those digits. `*out_verified` receives 0 or 1.
///
/// # Safety
/// String arguments must be valid NUL-terminated strings (or null where
/// documented); `out_verified` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_verify_expansion(
    p: i64,
    q: i64,
    expansion: *const c_char,
    gamma: *const c_char,
    delta: *const c_char,
    digits_csv: *const c_char,
    out_verified: *mut i32,
) -> TcStatus {
    if out_verified.is_null() {
        set_error("out_verified is null");
        return TcStatus::TcNullArgument;
    }
    let (Some(expansion), Some(gamma), Some(delta)) = (cstr(expansion), cstr(gamma), cstr(delta))
    else {
        set_error("expansion/gamma/delta is null or not UTF-8");
        return TcStatus::TcNullArgument;
    };
    let poly = match QuadraticPoly::new(p, q) {
        Ok(poly) => poly,
        Err(e) => return fail(&e),
    };
    let parsed: RadixExpansion = match expansion.parse() {
        Ok(parsed) => parsed,
        Err(e) => return fail(&e),
    };
    let target = match (parse_rational(gamma), parse_rational(delta)) {
        (Ok(g), Ok(d)) => LatticePoint::new(g, d),
        (Err(e), _) | (_, Err(e)) => return fail(&e),
    };
    let verified = if digits_csv.is_null() {
        radix::eval(&parsed, &poly) == target
    } else {
        let Some(csv) = cstr(digits_csv) else {
            set_error("digits_csv is not UTF-8");
            return TcStatus::TcNullArgument;
        };
        let system = match parse_digits(csv).and_then(|d| DigitSystem::new(poly, d)) {
            Ok(system) => system,
            Err(e) => return fail(&e),
        };
        radix::verify(&parsed, &target, &poly, &system.delta_digits())
    };
    *out_verified = verified as i32;
    TcStatus::TcOk
}

/// Run the three-digit sweep `D = {0, 1, b}` over the comma-separated `b`
/// samples and return the CSV (same layout as the CLI `sweep` output).
///
/// # Safety
/// `b_values_csv` must be a valid string and `out_csv` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_sweep_csv(
    p: i64,
    q: i64,
    b_values_csv: *const c_char,
    out_csv: *mut *mut c_char,
) -> TcStatus {
    if out_csv.is_null() {
        set_error("out_csv is null");
        return TcStatus::TcNullArgument;
    }
    let Some(csv) = cstr(b_values_csv) else {
        set_error("b_values_csv is null or not UTF-8");
        return TcStatus::TcNullArgument;
    };
    let poly = match QuadraticPoly::new(p, q) {
        Ok(poly) => poly,
        Err(e) => return fail(&e),
    };
    let values = match parse_digits(csv) {
        Ok(values) => values,
        Err(e) => return fail(&e),
    };
    let items = sweep(&poly, &values, &DecideOptions::default());
    export_string(sweep_to_csv(&items), out_csv)
}

/// Enumerate the attractor and write a binary PGM image. `depth = 0` picks
/// the default rule (smallest depth with at least 10^5 points). `basis` is
/// an optional `"x,y"` vector, defaulting to `(1, 0)`.
///
/// # Safety
/// `system` must be a live handle; `path` a valid string; `basis` null or a
/// valid string.
#[no_mangle]
pub unsafe extern "C" fn tc_render_pgm(
    system: *const TcSystem,
    depth: usize,
    width: u32,
    height: u32,
    margin: f64,
    basis: *const c_char,
    path: *const c_char,
) -> TcStatus {
    let Some(handle) = system.as_ref() else {
        set_error("system is null");
        return TcStatus::TcNullArgument;
    };
    let Some(path) = cstr(path) else {
        set_error("path is null or not UTF-8");
        return TcStatus::TcNullArgument;
    };
    let basis_vector = if basis.is_null() {
        (
            Rational::from_integer(1.into()),
            Rational::from_integer(0.into()),
        )
    } else {
        let Some(text) = cstr(basis) else {
            set_error("basis is not UTF-8");
            return TcStatus::TcNullArgument;
        };
        let Some((x, y)) = text.split_once(',') else {
            set_error("basis must be \"x,y\"");
            return TcStatus::TcInvalidInput;
        };
        match (parse_rational(x), parse_rational(y)) {
            (Ok(x), Ok(y)) => (x, y),
            (Err(e), _) | (_, Err(e)) => return fail(&e),
        }
    };
    let depth = if depth == 0 {
        default_depth(handle.system.digits().len())
    } else {
        depth
    };
    let config = RenderConfig {
        depth,
        width,
        height,
        basis_vector,
        margin,
    };
    let result = enumerate_points(&handle.system, depth)
        .and_then(|cloud| rasterize(&cloud, &config))
        .and_then(|image| std::fs::write(path, pgm_bytes(&image)).map_err(Error::from));
    match result {
        Ok(()) => TcStatus::TcOk,
        Err(e) => fail(&e),
    }
}

/// Number of tail-bound terms the library uses by default.
#[no_mangle]
pub extern "C" fn tc_default_bound_terms() -> usize {
    DEFAULT_BOUND_TERMS
}

/// Default automaton state limit.
#[no_mangle]
pub extern "C" fn tc_default_state_limit() -> usize {
    DEFAULT_STATE_LIMIT
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be a pointer previously returned by a `tc_*` function and not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn tc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing `tc_*` call on the same thread.
#[no_mangle]
pub extern "C" fn tc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}
