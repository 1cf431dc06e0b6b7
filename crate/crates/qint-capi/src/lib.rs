//! C ABI for the qint library.
//!
//! Polynomials and rules travel as opaque handles (`QintPoly`, `QintRule`);
//! structured data (reports, tables, sequences) crosses the boundary as the
//! same JSON the CLI speaks. Every function returns a [`QintStatus`];
//! out-parameters are written only on `QINT_STATUS_OK` unless documented
//! otherwise. Strings returned through `char**` are heap-allocated and must
//! be released with [`qint_string_free`]; handles with their `_free`
//! functions. A human-readable message for the most recent failure on the
//! current thread is available from [`qint_last_error_message`].
//!
//! The generated header lives at `include/qint.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qint::{Error, Poly, PolyFormat, QuadRule, RuleName, SolutionSeq, UvTables, ZeroIdentity};

/// Status codes shared by every API function. The first three mirror the
/// CLI exit-code contract.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QintStatus {
    /// Operation succeeded (and any verification passed).
    Ok = 0,
    /// The operation ran but the verification verdict is negative.
    VerifyFailed = 1,
    /// Malformed input: bad text, bad JSON, bad tables or out-of-range
    /// indices.
    InvalidInput = 2,
    /// A required pointer argument was null.
    NullPointer = 3,
    /// An internal invariant failed; this is a bug in the library.
    InternalError = 4,
}

/// Output formats for [`qint_poly_render`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QintPolyFormat {
    Plain = 0,
    Latex = 1,
    Json = 2,
}

/// Opaque polynomial handle.
pub struct QintPoly(Poly);

/// Opaque addition-rule handle.
pub struct QintRule(QuadRule);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let cstring = CString::new(msg.into())
        .unwrap_or_else(|_| CString::new("error message contained NUL").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn error_status(err: &Error) -> QintStatus {
    match err {
        Error::NotAZeroIdentity(_) | Error::NotAQuantumAdditionRule(_) => QintStatus::VerifyFailed,
        Error::InternalDivisibilityViolation(_) => QintStatus::InternalError,
        _ => QintStatus::InvalidInput,
    }
}

fn fail(err: Error) -> QintStatus {
    let status = error_status(&err);
    set_error(err.to_string());
    status
}

/// Run a fallible body, translating panics into `QintInternalError`.
fn guarded(body: impl FnOnce() -> QintStatus) -> QintStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic in qint".into());
            set_error(msg);
            QintStatus::InternalError
        }
    }
}

/// SAFETY: callers promise `ptr` is null or a valid NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, QintStatus> {
    if ptr.is_null() {
        set_error(format!("{what} is null"));
        return Err(QintStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        QintStatus::InvalidInput
    })
}

unsafe fn deref<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, QintStatus> {
    if ptr.is_null() {
        set_error(format!("{what} is null"));
        return Err(QintStatus::NullPointer);
    }
    Ok(&*ptr)
}

fn require_out<T>(ptr: *mut T, what: &str) -> Result<(), QintStatus> {
    if ptr.is_null() {
        set_error(format!("{what} is null"));
        return Err(QintStatus::NullPointer);
    }
    Ok(())
}

/// SAFETY: `out` must be a valid, writable pointer.
unsafe fn write_string(s: String, out: *mut *mut c_char) -> QintStatus {
    match CString::new(s) {
        Ok(cstring) => {
            *out = cstring.into_raw();
            QintStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte");
            QintStatus::InternalError
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("qint values serialize infallibly")
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, QintStatus> {
    serde_json::from_str(text).map_err(|e| {
        set_error(format!("invalid {what} JSON: {e}"));
        QintStatus::InvalidInput
    })
}

/// Resolve the `0 = use the rule's own horizon` convention and bound-check.
fn resolve_horizon(rule: &QuadRule, requested: u64) -> Result<usize, QintStatus> {
    let horizon = if requested == 0 {
        rule.horizon()
    } else {
        requested as usize
    };
    if horizon > rule.horizon() {
        set_error(format!(
            "requested horizon {horizon} exceeds the rule horizon {}",
            rule.horizon()
        ));
        return Err(QintStatus::InvalidInput);
    }
    Ok(horizon)
}

const MAX_INDEX: u64 = 1 << 20;

fn checked_index(value: u64, what: &str) -> Result<usize, QintStatus> {
    if value == 0 || value > MAX_INDEX {
        set_error(format!("{what} must be in 1..={MAX_INDEX}, got {value}"));
        return Err(QintStatus::InvalidInput);
    }
    Ok(value as usize)
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn qint_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread, or null. The caller
/// frees the returned string with [`qint_string_free`].
#[no_mangle]
pub extern "C" fn qint_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a pointer previously returned by a qint function
/// that documents `qint_string_free` ownership, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qint_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Release a polynomial handle. Null is a no-op.
///
/// # Safety
/// `p` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn qint_poly_free(p: *mut QintPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Release a rule handle. Null is a no-op.
///
/// # Safety
/// `r` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn qint_rule_free(r: *mut QintRule) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Parse the polynomial grammar (e.g. `"1 - 2/3 q^2 + q^5"`).
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qint_poly_parse(
    text: *const c_char,
    out: *mut *mut QintPoly,
) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(out, "out") {
            return status;
        }
        let text = match read_str(text, "text") {
            Ok(s) => s,
            Err(status) => return status,
        };
        match qint::parse_poly(text) {
            Ok(poly) => {
                *out = Box::into_raw(Box::new(QintPoly(poly)));
                QintStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Build a polynomial from its canonical JSON `{"coeffs": ["n/d", ...]}`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qint_poly_from_json(
    json: *const c_char,
    out: *mut *mut QintPoly,
) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(out, "out") {
            return status;
        }
        let text = match read_str(json, "json") {
            Ok(s) => s,
            Err(status) => return status,
        };
        match parse_json::<Poly>(text, "polynomial") {
            Ok(poly) => {
                *out = Box::into_raw(Box::new(QintPoly(poly)));
                QintStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// Render a polynomial; the result is freed with [`qint_string_free`].
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qint_poly_render(
    p: *const QintPoly,
    format: QintPolyFormat,
    out: *mut *mut c_char,
) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(out, "out") {
            return status;
        }
        let poly = match deref(p, "p") {
            Ok(p) => p,
            Err(status) => return status,
        };
        let format = match format {
            QintPolyFormat::Plain => PolyFormat::Plain,
            QintPolyFormat::Latex => PolyFormat::Latex,
            QintPolyFormat::Json => PolyFormat::Json,
        };
        write_string(qint::render_poly(&poly.0, format), out)
    })
}

/// Exact evaluation at a rational point given as `"n"` or `"n/d"`; the
/// result string is in the same form.
///
/// # Safety
/// `p` must be a live handle; `x` a valid string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qint_poly_eval(
    p: *const QintPoly,
    x: *const c_char,
    out: *mut *mut c_char,
) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(out, "out") {
            return status;
        }
        let poly = match deref(p, "p") {
            Ok(p) => p,
            Err(status) => return status,
        };
        let x = match read_str(x, "x") {
            Ok(s) => s,
            Err(status) => return status,
        };
        match qint::rat_from_str(x) {
            Ok(point) => write_string(poly.0.eval_at(&point).to_string(), out),
            Err(e) => fail(e),
        }
    })
}

/// Whether the polynomial is zero.
///
/// # Safety
/// `p` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qint_poly_is_zero(p: *const QintPoly, out: *mut bool) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(out, "out") {
            return status;
        }
        match deref(p, "p") {
            Ok(poly) => {
                *out = poly.0.is_zero();
                QintStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// Degree of the polynomial; the zero polynomial reports -1.
///
/// # Safety
/// `p` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qint_poly_degree(p: *const QintPoly, out: *mut i64) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(out, "out") {
            return status;
        }
        match deref(p, "p") {
            Ok(poly) => {
                *out = match poly.0.degree() {
                    qint::Degree::NegInf => -1,
                    qint::Degree::Finite(d) => d as i64,
                };
                QintStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// The quantum integer `[n]_q`; `n = 0` gives the zero polynomial.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qint_quantum_int(n: u64, out: *mut *mut QintPoly) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(out, "out") {
            return status;
        }
        if n > MAX_INDEX {
            set_error(format!("n must be at most {MAX_INDEX}, got {n}"));
            return QintStatus::InvalidInput;
        }
        *out = Box::into_raw(Box::new(QintPoly(qint::quantum_int(n as usize))));
        QintStatus::Ok
    })
}

/// Build a built-in rule (`fundamental`, `rule1`, `rule2`,
/// `linear_example`) tabulated up to `horizon` (>= 1).
///
/// # Safety
/// `name` must be a valid string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qint_rule_named(
    name: *const c_char,
    horizon: u64,
    out: *mut *mut QintRule,
) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(out, "out") {
            return status;
        }
        let name = match read_str(name, "name") {
            Ok(s) => s,
            Err(status) => return status,
        };
        let horizon = match checked_index(horizon, "horizon") {
            Ok(h) => h,
            Err(status) => return status,
        };
        match name.parse::<RuleName>() {
            Ok(rule_name) => {
                *out = Box::into_raw(Box::new(QintRule(qint::named_rule(rule_name, horizon))));
                QintStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Build a rule from its JSON form `{"N", "r", "s", "t"}`.
///
/// # Safety
/// `json` must be a valid string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qint_rule_from_json(
    json: *const c_char,
    out: *mut *mut QintRule,
) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(out, "out") {
            return status;
        }
        let text = match read_str(json, "json") {
            Ok(s) => s,
            Err(status) => return status,
        };
        match parse_json::<QuadRule>(text, "rule") {
            Ok(rule) => {
                *out = Box::into_raw(Box::new(QintRule(rule)));
                QintStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// Serialize a rule to its JSON form.
///
/// # Safety
/// `r` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qint_rule_to_json(
    r: *const QintRule,
    out: *mut *mut c_char,
) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(out, "out") {
            return status;
        }
        match deref(r, "r") {
            Ok(rule) => write_string(to_json(&rule.0), out),
            Err(status) => status,
        }
    })
}

/// Tabulated horizon of a rule.
///
/// # Safety
/// `r` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qint_rule_horizon(r: *const QintRule, out: *mut u64) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(out, "out") {
            return status;
        }
        match deref(r, "r") {
            Ok(rule) => {
                *out = rule.0.horizon() as u64;
                QintStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// Symbolically verify the addition identity up to `horizon` (0 = the
/// rule's own horizon). Returns `QINT_STATUS_OK` on an empty failure list,
/// `QINT_STATUS_VERIFY_FAILED` otherwise. When `report_json` is non-null it
/// receives the full report either way.
///
/// # Safety
/// `r` must be a live handle; `report_json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn qint_rule_verify(
    r: *const QintRule,
    horizon: u64,
    report_json: *mut *mut c_char,
) -> QintStatus {
    guarded(|| {
        clear_error();
        let rule = match deref(r, "r") {
            Ok(rule) => rule,
            Err(status) => return status,
        };
        let horizon = match resolve_horizon(&rule.0, horizon) {
            Ok(h) => h,
            Err(status) => return status,
        };
        let report = qint::verify_rule(&rule.0, horizon);
        if !report_json.is_null() {
            let status = write_string(to_json(&report), report_json);
            if status != QintStatus::Ok {
                return status;
            }
        }
        if report.passed() {
            QintStatus::Ok
        } else {
            set_error(format!("{} failing pairs", report.failures.len()));
            QintStatus::VerifyFailed
        }
    })
}

/// Randomized evaluation cross-check at `trials` seeded rational points.
/// Status semantics match [`qint_rule_verify`].
///
/// # Safety
/// `r` must be a live handle; `report_json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn qint_rule_spot_check(
    r: *const QintRule,
    horizon: u64,
    trials: u64,
    seed: u64,
    report_json: *mut *mut c_char,
) -> QintStatus {
    guarded(|| {
        clear_error();
        let rule = match deref(r, "r") {
            Ok(rule) => rule,
            Err(status) => return status,
        };
        let horizon = match resolve_horizon(&rule.0, horizon) {
            Ok(h) => h,
            Err(status) => return status,
        };
        if trials > 10_000 {
            set_error(format!("trials must be at most 10000, got {trials}"));
            return QintStatus::InvalidInput;
        }
        let report = qint::spot_check_rule(&rule.0, horizon, trials as usize, seed);
        if !report_json.is_null() {
            let status = write_string(to_json(&report), report_json);
            if status != QintStatus::Ok {
                return status;
            }
        }
        if report.passed() {
            QintStatus::Ok
        } else {
            set_error(format!("{} failing pairs", report.failures.len()));
            QintStatus::VerifyFailed
        }
    })
}

/// Compute `r'_n a + s'_m b + t'_{m,n} a b`.
///
/// # Safety
/// `r`, `a`, `b` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qint_rule_apply(
    r: *const QintRule,
    m: u64,
    n: u64,
    a: *const QintPoly,
    b: *const QintPoly,
    out: *mut *mut QintPoly,
) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(out, "out") {
            return status;
        }
        let (rule, a, b) = match (deref(r, "r"), deref(a, "a"), deref(b, "b")) {
            (Ok(rule), Ok(a), Ok(b)) => (rule, a, b),
            (Err(s), _, _) | (_, Err(s), _) | (_, _, Err(s)) => return s,
        };
        let (m, n) = match (checked_index(m, "m"), checked_index(n, "n")) {
            (Ok(m), Ok(n)) => (m, n),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match qint::apply_rule(&rule.0, m, n, &a.0, &b.0) {
            Ok(result) => {
                *out = Box::into_raw(Box::new(QintPoly(result)));
                QintStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Division-algorithm standard form. `result_json` (nullable) receives
/// `{"U", "V", "residual", "is_fundamental"}`; `is_fundamental` (nullable)
/// the flag. Returns `QINT_STATUS_OK` when the residual is the fundamental
/// rule, `QINT_STATUS_VERIFY_FAILED` otherwise.
///
/// # Safety
/// `r` must be a live handle; out-pointers null or writable.
#[no_mangle]
pub unsafe extern "C" fn qint_rule_normalize(
    r: *const QintRule,
    horizon: u64,
    result_json: *mut *mut c_char,
    is_fundamental: *mut bool,
) -> QintStatus {
    guarded(|| {
        clear_error();
        let rule = match deref(r, "r") {
            Ok(rule) => rule,
            Err(status) => return status,
        };
        let horizon = match resolve_horizon(&rule.0, horizon) {
            Ok(h) => h,
            Err(status) => return status,
        };
        let result = qint::normalize(&rule.0, horizon);
        if !result_json.is_null() {
            let status = write_string(to_json(&result), result_json);
            if status != QintStatus::Ok {
                return status;
            }
        }
        if !is_fundamental.is_null() {
            *is_fundamental = result.is_fundamental;
        }
        if result.is_fundamental {
            QintStatus::Ok
        } else {
            set_error("residual is not the fundamental rule");
            QintStatus::VerifyFailed
        }
    })
}

/// Build the rule determined by a (U, V) pair given as
/// `{"U": [...], "V": [...]}`. `horizon` 0 means the tables' length.
///
/// # Safety
/// `uv_json` must be a valid string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qint_rule_from_uv_json(
    uv_json: *const c_char,
    horizon: u64,
    out: *mut *mut QintRule,
) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(out, "out") {
            return status;
        }
        let uv = match read_uv(uv_json) {
            Ok(uv) => uv,
            Err(status) => return status,
        };
        let horizon = match resolve_uv_horizon(&uv, horizon) {
            Ok(h) => h,
            Err(status) => return status,
        };
        let rule = qint::rule_from_uv(&uv.u, &uv.v, horizon);
        *out = Box::into_raw(Box::new(QintRule(rule)));
        QintStatus::Ok
    })
}

/// Recover the (U, V) pair of a verified rule as JSON. Tables that are not
/// an addition rule yield `QINT_STATUS_VERIFY_FAILED`.
///
/// # Safety
/// `r` must be a live handle; `uv_json` writable.
#[no_mangle]
pub unsafe extern "C" fn qint_rule_extract_uv(
    r: *const QintRule,
    horizon: u64,
    uv_json: *mut *mut c_char,
) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(uv_json, "uv_json") {
            return status;
        }
        let rule = match deref(r, "r") {
            Ok(rule) => rule,
            Err(status) => return status,
        };
        let horizon = match resolve_horizon(&rule.0, horizon) {
            Ok(h) => h,
            Err(status) => return status,
        };
        match qint::extract_uv(&rule.0, horizon) {
            Ok((u, v)) => match UvTables::new(u, v) {
                Ok(uv) => write_string(to_json(&uv), uv_json),
                Err(e) => fail(e),
            },
            Err(e) => fail(e),
        }
    })
}

unsafe fn read_uv(uv_json: *const c_char) -> Result<UvTables, QintStatus> {
    let text = read_str(uv_json, "uv_json")?;
    let uv: UvTables = parse_json(text, "(U, V)")?;
    uv.validate().map_err(|e| {
        let status = error_status(&e);
        set_error(e.to_string());
        status
    })
}

fn resolve_uv_horizon(uv: &UvTables, requested: u64) -> Result<usize, QintStatus> {
    let horizon = if requested == 0 {
        uv.horizon()
    } else {
        requested as usize
    };
    if horizon == 0 || horizon > uv.horizon() {
        set_error(format!(
            "requested horizon {horizon} not within the tables' length {}",
            uv.horizon()
        ));
        return Err(QintStatus::InvalidInput);
    }
    Ok(horizon)
}

/// Build the zero identity of a (U, V) pair; the identity JSON
/// `{"N", "u", "v", "w"}` is written to `zi_json`.
///
/// # Safety
/// `uv_json` must be a valid string; `zi_json` writable.
#[no_mangle]
pub unsafe extern "C" fn qint_zero_from_uv_json(
    uv_json: *const c_char,
    horizon: u64,
    zi_json: *mut *mut c_char,
) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(zi_json, "zi_json") {
            return status;
        }
        let uv = match read_uv(uv_json) {
            Ok(uv) => uv,
            Err(status) => return status,
        };
        let horizon = match resolve_uv_horizon(&uv, horizon) {
            Ok(h) => h,
            Err(status) => return status,
        };
        let zi = qint::zero_identity_from_uv(&uv.u, &uv.v, horizon);
        write_string(to_json(&zi), zi_json)
    })
}

unsafe fn read_zero_identity(
    zi_json: *const c_char,
    horizon: u64,
) -> Result<(ZeroIdentity, usize), QintStatus> {
    let text = read_str(zi_json, "zi_json")?;
    let zi: ZeroIdentity = parse_json(text, "zero identity")?;
    let horizon = if horizon == 0 {
        zi.horizon()
    } else {
        horizon as usize
    };
    if horizon > zi.horizon() {
        set_error(format!(
            "requested horizon {horizon} exceeds the identity horizon {}",
            zi.horizon()
        ));
        return Err(QintStatus::InvalidInput);
    }
    Ok((zi, horizon))
}

/// Verify a zero identity given as JSON. Status semantics match
/// [`qint_rule_verify`].
///
/// # Safety
/// `zi_json` must be a valid string; `report_json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn qint_zero_verify_json(
    zi_json: *const c_char,
    horizon: u64,
    report_json: *mut *mut c_char,
) -> QintStatus {
    guarded(|| {
        clear_error();
        let (zi, horizon) = match read_zero_identity(zi_json, horizon) {
            Ok(pair) => pair,
            Err(status) => return status,
        };
        let report = qint::verify_zero_identity(&zi, horizon);
        if !report_json.is_null() {
            let status = write_string(to_json(&report), report_json);
            if status != QintStatus::Ok {
                return status;
            }
        }
        if report.passed() {
            QintStatus::Ok
        } else {
            set_error(format!("{} failing pairs", report.failures.len()));
            QintStatus::VerifyFailed
        }
    })
}

/// Decompose a verified zero identity back into its (U, V) pair.
///
/// # Safety
/// `zi_json` must be a valid string; `uv_json` writable.
#[no_mangle]
pub unsafe extern "C" fn qint_zero_decompose_json(
    zi_json: *const c_char,
    horizon: u64,
    uv_json: *mut *mut c_char,
) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(uv_json, "uv_json") {
            return status;
        }
        let (zi, horizon) = match read_zero_identity(zi_json, horizon) {
            Ok(pair) => pair,
            Err(status) => return status,
        };
        match qint::decompose_zero_identity(&zi, horizon) {
            Ok((u, v)) => match UvTables::new(u, v) {
                Ok(uv) => write_string(to_json(&uv), uv_json),
                Err(e) => fail(e),
            },
            Err(e) => fail(e),
        }
    })
}

/// Degree bound on a zero identity: `deg(u'_n) < n - 1` forces `u'_n = 0`
/// (and symmetrically for `v'_m`). `QINT_STATUS_VERIFY_FAILED` when the
/// bound fails; `holds` (nullable) receives the flag.
///
/// # Safety
/// `zi_json` must be a valid string; `holds` null or writable.
#[no_mangle]
pub unsafe extern "C" fn qint_zero_degree_bound_json(
    zi_json: *const c_char,
    horizon: u64,
    holds: *mut bool,
) -> QintStatus {
    guarded(|| {
        clear_error();
        let (zi, horizon) = match read_zero_identity(zi_json, horizon) {
            Ok(pair) => pair,
            Err(status) => return status,
        };
        let ok = qint::check_degree_bound(&zi, horizon);
        if !holds.is_null() {
            *holds = ok;
        }
        if ok {
            QintStatus::Ok
        } else {
            set_error("degree bound violated");
            QintStatus::VerifyFailed
        }
    })
}

/// Generate the solution sequence grown from seed `h` up to `horizon`
/// (0 = the rule's own horizon); the JSON `{"h", "N", "f"}` is written to
/// `seq_json`.
///
/// # Safety
/// `r` and `h` must be live handles; `seq_json` writable.
#[no_mangle]
pub unsafe extern "C" fn qint_seq_generate(
    r: *const QintRule,
    h: *const QintPoly,
    horizon: u64,
    seq_json: *mut *mut c_char,
) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(seq_json, "seq_json") {
            return status;
        }
        let (rule, seed) = match (deref(r, "r"), deref(h, "h")) {
            (Ok(rule), Ok(seed)) => (rule, seed),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let horizon = if horizon == 0 {
            rule.0.horizon()
        } else {
            horizon as usize
        };
        match qint::generate_sequence(&rule.0, &seed.0, horizon) {
            Ok(seq) => write_string(to_json(&seq), seq_json),
            Err(e) => fail(e),
        }
    })
}

/// Check a stored sequence (JSON `{"h", "N", "f"}`) against the rule's
/// functional equation over all `m + n <= horizon` (0 = the sequence's N).
/// Status semantics match [`qint_rule_verify`].
///
/// # Safety
/// `r` must be a live handle; `seq_json` a valid string; `report_json`
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn qint_seq_check(
    r: *const QintRule,
    seq_json: *const c_char,
    horizon: u64,
    report_json: *mut *mut c_char,
) -> QintStatus {
    guarded(|| {
        clear_error();
        let rule = match deref(r, "r") {
            Ok(rule) => rule,
            Err(status) => return status,
        };
        let text = match read_str(seq_json, "seq_json") {
            Ok(s) => s,
            Err(status) => return status,
        };
        let seq: SolutionSeq = match parse_json(text, "solution sequence") {
            Ok(seq) => seq,
            Err(status) => return status,
        };
        let horizon = if horizon == 0 {
            seq.horizon()
        } else {
            horizon as usize
        };
        if horizon > seq.horizon() || horizon.saturating_sub(1) > rule.0.horizon() {
            set_error(format!(
                "horizon {horizon} not coverable by sequence N = {} and rule horizon {}",
                seq.horizon(),
                rule.0.horizon()
            ));
            return QintStatus::InvalidInput;
        }
        let report = qint::check_functional_equation(&rule.0, &seq, horizon);
        if !report_json.is_null() {
            let status = write_string(to_json(&report), report_json);
            if status != QintStatus::Ok {
                return status;
            }
        }
        if report.passed() {
            QintStatus::Ok
        } else {
            set_error(format!("{} failing pairs", report.failures.len()));
            QintStatus::VerifyFailed
        }
    })
}

/// Closed-form solution entry f_n for `fundamental`, `rule1` or `rule2`.
///
/// # Safety
/// `name` must be a valid string; `h` a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qint_closed_form(
    name: *const c_char,
    h: *const QintPoly,
    n: u64,
    out: *mut *mut QintPoly,
) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(out, "out") {
            return status;
        }
        let name = match read_str(name, "name") {
            Ok(s) => s,
            Err(status) => return status,
        };
        let seed = match deref(h, "h") {
            Ok(seed) => seed,
            Err(status) => return status,
        };
        let n = match checked_index(n, "n") {
            Ok(n) => n,
            Err(status) => return status,
        };
        let rule_name: RuleName = match name.parse() {
            Ok(rule_name) => rule_name,
            Err(e) => return fail(e),
        };
        match qint::closed_form(rule_name, &seed.0, n) {
            Ok(poly) => {
                *out = Box::into_raw(Box::new(QintPoly(poly)));
                QintStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Evaluate the necessary condition `A h = B` on seeds for a (U, V) pair;
/// the report JSON `{"A", "B", "verdict"[, "candidate"]}` is written to
/// `report_json`.
///
/// # Safety
/// `uv_json` must be a valid string; `report_json` writable.
#[no_mangle]
pub unsafe extern "C" fn qint_seed_admissibility_json(
    uv_json: *const c_char,
    report_json: *mut *mut c_char,
) -> QintStatus {
    guarded(|| {
        clear_error();
        if let Err(status) = require_out(report_json, "report_json") {
            return status;
        }
        let uv = match read_uv(uv_json) {
            Ok(uv) => uv,
            Err(status) => return status,
        };
        if uv.horizon() < 2 {
            set_error("the necessary condition reads (U, V) at indices 1 and 2");
            return QintStatus::InvalidInput;
        }
        let report = qint::admissibility(&uv.u, &uv.v);
        write_string(to_json(&report), report_json)
    })
}

/// Empirical seed probe: generate from `h` and check the functional
/// equation up to `horizon` (0 = the library default of 12). Returns
/// `QINT_STATUS_OK` when the whole family is consistent,
/// `QINT_STATUS_VERIFY_FAILED` otherwise.
///
/// # Safety
/// `r` and `h` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn qint_seed_test(
    r: *const QintRule,
    h: *const QintPoly,
    horizon: u64,
) -> QintStatus {
    guarded(|| {
        clear_error();
        let (rule, seed) = match (deref(r, "r"), deref(h, "h")) {
            (Ok(rule), Ok(seed)) => (rule, seed),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let horizon = if horizon == 0 {
            qint::DEFAULT_SEED_TEST_HORIZON.min(rule.0.horizon() + 1)
        } else {
            horizon as usize
        };
        match qint::test_seed(&rule.0, &seed.0, horizon) {
            Ok(true) => QintStatus::Ok,
            Ok(false) => {
                set_error("the generated family violates the functional equation");
                QintStatus::VerifyFailed
            }
            Err(e) => fail(e),
        }
    })
}
