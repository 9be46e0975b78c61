//! C ABI over `reesmult`.
//!
//! A session is parsed once from DSL text and owns its sample cache. Every
//! call returns a [`ReesmultStatus`]; on failure [`reesmult_last_error`]
//! describes it. Strings handed out must be released with
//! [`reesmult_string_free`], sessions with [`reesmult_session_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use reesmult::cli::Failure;
use reesmult::dsl::{parse_session, Session};
use reesmult::hilbert::HilbertEngine;
use reesmult::lattice::MonomialIdeal;
use reesmult::rees::{OracleConfig, ReesInstance};
use reesmult::report;
use reesmult::theorems::{check_equation_strict_g3, check_necessary_conditions_g2, TheoremError};

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReesmultStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    NotMPrimary = 5,
    Overflow = 6,
    StabilizationFailure = 7,
    Violation = 8,
    Panic = 9,
}

/// Opaque parsed session.
pub struct ReesmultSession {
    session: Session,
    engine: HilbertEngine,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Error(ReesmultStatus, String);

impl From<Failure> for Error {
    fn from(f: Failure) -> Self {
        let status = match f.code {
            reesmult::cli::EXIT_STABILIZATION => ReesmultStatus::StabilizationFailure,
            reesmult::cli::EXIT_VIOLATION => ReesmultStatus::Violation,
            _ if f.span.is_some() => ReesmultStatus::ParseError,
            _ => ReesmultStatus::InvalidArgument,
        };
        Error(status, f.message)
    }
}

macro_rules! via_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for Error {
            fn from(e: $t) -> Self {
                Failure::from(e).into()
            }
        }
    )*};
}

via_failure!(
    reesmult::dsl::DslError,
    reesmult::hilbert::HilbertError,
    reesmult::rees::ReesError,
    TheoremError
);

fn guard(f: impl FnOnce() -> Result<(), Error>) -> ReesmultStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            ReesmultStatus::Ok
        }
        Ok(Err(Error(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ReesmultStatus::Panic
        }
    }
}

unsafe fn utf8<'a>(p: *const c_char) -> Result<&'a str, Error> {
    if p.is_null() {
        return Err(Error(ReesmultStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Error(ReesmultStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn session<'a>(p: *const ReesmultSession) -> Result<&'a ReesmultSession, Error> {
    p.as_ref().ok_or_else(|| Error(ReesmultStatus::NullPointer, "null session".into()))
}

fn out_ptr<T>(p: *mut T) -> Result<(), Error> {
    if p.is_null() {
        Err(Error(ReesmultStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn ideals(s: &ReesmultSession, csv: &str) -> Result<(Vec<String>, Vec<MonomialIdeal>), Error> {
    let names: Vec<String> = csv.split(',').map(|n| n.trim().to_string()).filter(|n| !n.is_empty()).collect();
    if names.is_empty() {
        return Err(Error(ReesmultStatus::InvalidArgument, "no ideals named".into()));
    }
    let found = names
        .iter()
        .map(|n| {
            s.session
                .ideal(n)
                .cloned()
                .ok_or_else(|| Error(ReesmultStatus::InvalidArgument, format!("undeclared ideal {n}")))
        })
        .collect::<Result<_, _>>()?;
    Ok((names, found))
}

fn to_u64(v: num_bigint::BigUint) -> Result<u64, Error> {
    u64::try_from(v).map_err(|e| Error(ReesmultStatus::Overflow, format!("{} exceeds 64 bits", e.into_original())))
}

/// Parses DSL `text` into a new session stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn reesmult_session_parse(text: *const c_char, out: *mut *mut ReesmultSession) -> ReesmultStatus {
    guard(|| {
        out_ptr(out)?;
        *out = ptr::null_mut();
        let session = parse_session(utf8(text)?)?;
        let boxed = Box::new(ReesmultSession { session, engine: HilbertEngine::default() });
        *out = Box::into_raw(boxed);
        Ok(())
    })
}

/// Releases a session; null is ignored.
///
/// # Safety
/// `session` must come from [`reesmult_session_parse`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn reesmult_session_free(session: *mut ReesmultSession) {
    if !session.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(session))));
    }
}

/// Writes the analysis of the comma-separated ideals as a JSON document to
/// `*out_json`. A nonzero `oracle` enables the graded-piece cross-check.
/// Returns `Violation` (with the JSON still written) when a check fails or
/// the oracle disagrees.
///
/// # Safety
/// Pointers must be valid; `ideals_csv` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn reesmult_analyze_json(
    session_ptr: *const ReesmultSession,
    ideals_csv: *const c_char,
    oracle: i32,
    out_json: *mut *mut c_char,
) -> ReesmultStatus {
    guard(|| {
        out_ptr(out_json)?;
        *out_json = ptr::null_mut();
        let s = session(session_ptr)?;
        let (names, found) = ideals(s, utf8(ideals_csv)?)?;
        let started = std::time::Instant::now();
        let inst = ReesInstance::with_names(found, names)?;
        let rep = inst.verdict(&s.engine, (oracle != 0).then(OracleConfig::default))?;
        let checks = match inst.g() {
            2 => check_necessary_conditions_g2(&s.engine, &inst)?,
            g if g >= 3 => vec![check_equation_strict_g3(&s.engine, &inst)?],
            _ => Vec::new(),
        };
        let doc = report::analysis_json(&rep, &checks, started.elapsed().as_millis());
        let json = serde_json::to_string(&doc).unwrap_or_default();
        *out_json = CString::new(json).unwrap_or_default().into_raw();
        if !rep.oracle_agrees() || checks.iter().any(|c| c.is_violation()) {
            return Err(Error(ReesmultStatus::Violation, "a check failed; see the JSON document".into()));
        }
        Ok(())
    })
}

/// `e(I₁^{[w₁]}|…|I_g^{[w_g]})` for the comma-separated ideals and `len`
/// weights.
///
/// # Safety
/// `weights` must point to `len` readable values; other pointers valid.
#[no_mangle]
pub unsafe extern "C" fn reesmult_mixed_multiplicity(
    session_ptr: *const ReesmultSession,
    ideals_csv: *const c_char,
    weights: *const u32,
    len: usize,
    out: *mut u64,
) -> ReesmultStatus {
    guard(|| {
        out_ptr(out)?;
        let s = session(session_ptr)?;
        let (_, found) = ideals(s, utf8(ideals_csv)?)?;
        if weights.is_null() {
            return Err(Error(ReesmultStatus::NullPointer, "null weights".into()));
        }
        let w = std::slice::from_raw_parts(weights, len);
        *out = to_u64(s.engine.mixed(&found, w)?)?;
        Ok(())
    })
}

/// `ℓ(R/I)`; `NotMPrimary` when infinite.
///
/// # Safety
/// Pointers must be valid; `ideal` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn reesmult_colength(
    session_ptr: *const ReesmultSession,
    ideal: *const c_char,
    out: *mut u64,
) -> ReesmultStatus {
    guard(|| {
        out_ptr(out)?;
        let s = session(session_ptr)?;
        let (names, found) = ideals(s, utf8(ideal)?)?;
        if found.len() != 1 {
            return Err(Error(ReesmultStatus::InvalidArgument, "expected one ideal".into()));
        }
        match found[0].colength().finite() {
            Some(n) => *out = to_u64(n)?,
            None => return Err(Error(ReesmultStatus::NotMPrimary, format!("ideal {} is not m-primary", names[0]))),
        }
        Ok(())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used again.
#[no_mangle]
pub unsafe extern "C" fn reesmult_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread ("" after success). The
/// pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn reesmult_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
