//! C ABI over the loveline engine.
//!
//! A parsed document lives behind an opaque [`LovelineDocument`] handle.
//! Every fallible call returns a [`LovelineStatus`]; on anything other than
//! `LOVELINE_STATUS_OK` a description is available from
//! [`loveline_last_error`] on the same thread. Strings returned by this
//! library are owned by the caller and must be released with
//! [`loveline_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use loveline::report::{trace_text, verdicts_json, VerdictRecord};
use loveline::{parse_document, parse_rational, project_timeline, tick_oracle, Evaluator, ParsedDocument, Rational};
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LovelineStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    QueryOutOfRange = 4,
    EvalError = 5,
    /// A rational does not fit the fixed-width fields of [`LovelineRational`].
    Overflow = 6,
    InvalidArgument = 7,
}

/// Opaque handle to a parsed and validated timeline document.
pub struct LovelineDocument {
    doc: ParsedDocument,
}

/// `numer / denom` in lowest terms, `denom > 0`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LovelineRational {
    pub numer: i64,
    pub denom: i64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LovelineVerdict {
    pub holds: bool,
    /// Loving sum.
    pub s: LovelineRational,
    /// Loving complement.
    pub c: LovelineRational,
    pub threshold: LovelineRational,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: LovelineStatus, message: impl Into<String>) -> LovelineStatus {
    let message = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
    status
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn to_c_rational(value: &Rational) -> Option<LovelineRational> {
    Some(LovelineRational {
        numer: value.numer().to_i64()?,
        denom: value.denom().to_i64()?,
    })
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `text` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, LovelineStatus> {
    if text.is_null() {
        return Err(fail(LovelineStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| fail(LovelineStatus::InvalidUtf8, e.to_string()))
}

/// # Safety
/// `doc` must be null or a handle from [`loveline_document_parse`] not yet freed.
unsafe fn document<'a>(doc: *const LovelineDocument) -> Result<&'a ParsedDocument, LovelineStatus> {
    doc.as_ref()
        .map(|d| &d.doc)
        .ok_or_else(|| fail(LovelineStatus::NullArgument, "null document handle"))
}

/// Message describing the last failure on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn loveline_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses `text` as a loveline v1 document and stores a new handle in `*out`.
/// On `LOVELINE_STATUS_PARSE_ERROR` the last error holds every diagnostic,
/// one per line, and `*out` is set to null.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn loveline_document_parse(text: *const c_char, out: *mut *mut LovelineDocument) -> LovelineStatus {
    if out.is_null() {
        return fail(LovelineStatus::NullArgument, "null output pointer");
    }
    *out = ptr::null_mut();
    let text = match read_str(text) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match parse_document(text) {
        Ok(doc) => {
            clear_error();
            *out = Box::into_raw(Box::new(LovelineDocument { doc }));
            LovelineStatus::Ok
        }
        Err(diags) => {
            let joined: Vec<String> = diags.iter().map(ToString::to_string).collect();
            fail(LovelineStatus::ParseError, joined.join("\n"))
        }
    }
}

/// # Safety
/// `doc` must be null or a handle from [`loveline_document_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn loveline_document_free(doc: *mut LovelineDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Number of queries in the document; 0 for a null handle.
///
/// # Safety
/// `doc` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn loveline_document_query_count(doc: *const LovelineDocument) -> usize {
    doc.as_ref().map_or(0, |d| d.doc.queries().len())
}

/// Evaluates query `index` (0-based) into `*out`.
///
/// # Safety
/// `doc` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn loveline_document_evaluate(
    doc: *const LovelineDocument,
    index: usize,
    out: *mut LovelineVerdict,
) -> LovelineStatus {
    let doc = match document(doc) {
        Ok(d) => d,
        Err(status) => return status,
    };
    if out.is_null() {
        return fail(LovelineStatus::NullArgument, "null output pointer");
    }
    let Some(query) = doc.queries().get(index) else {
        return fail(
            LovelineStatus::QueryOutOfRange,
            format!("query index {index} out of range ({} queries)", doc.queries().len()),
        );
    };
    let verdict = match Evaluator::new(&doc.timeline).evaluate_query(query) {
        Ok(v) => v,
        Err(e) => return fail(LovelineStatus::EvalError, format!("{}: {e}", e.code())),
    };
    let parts = (
        to_c_rational(verdict.s.value()),
        to_c_rational(verdict.c.value()),
        to_c_rational(&verdict.threshold),
    );
    let (Some(s), Some(c), Some(threshold)) = parts else {
        return fail(LovelineStatus::Overflow, "verdict magnitudes exceed 64-bit fields; use the JSON API");
    };
    *out = LovelineVerdict {
        holds: verdict.holds,
        s,
        c,
        threshold,
    };
    clear_error();
    LovelineStatus::Ok
}

/// All verdicts as a JSON array (same schema as `loveline eval --format json`),
/// or null on failure.
///
/// # Safety
/// `doc` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn loveline_document_eval_json(doc: *const LovelineDocument) -> *mut c_char {
    let Ok(doc) = document(doc) else { return ptr::null_mut() };
    let ev = Evaluator::new(&doc.timeline);
    let mut records = Vec::with_capacity(doc.queries().len());
    for q in doc.queries() {
        match ev.evaluate_query(q) {
            Ok(v) => records.push(VerdictRecord::new(q, &v)),
            Err(e) => {
                fail(LovelineStatus::EvalError, format!("{}: {e}", e.code()));
                return ptr::null_mut();
            }
        }
    }
    clear_error();
    into_c_string(verdicts_json(&records))
}

/// Text trace for query `index` (0-based), or null on failure.
///
/// # Safety
/// `doc` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn loveline_document_explain(doc: *const LovelineDocument, index: usize) -> *mut c_char {
    let Ok(doc) = document(doc) else { return ptr::null_mut() };
    let Some(q) = doc.queries().get(index) else {
        fail(LovelineStatus::QueryOutOfRange, format!("query index {index} out of range"));
        return ptr::null_mut();
    };
    let ev = Evaluator::new(&doc.timeline);
    match ev.explain(&q.subject, &q.object, &q.interval, &ev.threshold_for(q)) {
        Ok(trace) => {
            clear_error();
            into_c_string(trace_text(index + 1, q, &trace))
        }
        Err(e) => {
            fail(LovelineStatus::EvalError, format!("{}: {e}", e.code()));
            ptr::null_mut()
        }
    }
}

/// The BFO export lines for the document, or null on failure.
///
/// # Safety
/// `doc` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn loveline_document_export_bfo(doc: *const LovelineDocument) -> *mut c_char {
    let Ok(doc) = document(doc) else { return ptr::null_mut() };
    clear_error();
    into_c_string(project_timeline(&doc.timeline).export())
}

/// Compares query `index` (0-based) against the tick oracle at `granularity`
/// (a rational literal such as `"1/2"`); `*agree` receives the outcome.
///
/// # Safety
/// `doc` must be a live handle, `granularity` a NUL-terminated string and
/// `agree` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn loveline_document_oracle(
    doc: *const LovelineDocument,
    index: usize,
    granularity: *const c_char,
    agree: *mut bool,
) -> LovelineStatus {
    let doc = match document(doc) {
        Ok(d) => d,
        Err(status) => return status,
    };
    if agree.is_null() {
        return fail(LovelineStatus::NullArgument, "null output pointer");
    }
    let granularity = match read_str(granularity) {
        Ok(g) => g,
        Err(status) => return status,
    };
    let granularity = match parse_rational(granularity) {
        Ok(g) => g,
        Err(msg) => return fail(LovelineStatus::InvalidArgument, msg),
    };
    let Some(q) = doc.queries().get(index) else {
        return fail(LovelineStatus::QueryOutOfRange, format!("query index {index} out of range"));
    };
    let t = &doc.timeline;
    let ev = Evaluator::new(t);
    let threshold = ev.threshold_for(q);
    let reference = match tick_oracle(&q.subject, &q.object, &q.interval, &threshold, t, &t.config, &granularity) {
        Ok(r) => r,
        Err(e) => return fail(LovelineStatus::EvalError, format!("{}: {e}", e.code())),
    };
    let verdict = match ev.evaluate_query(q) {
        Ok(v) => v,
        Err(e) => return fail(LovelineStatus::EvalError, format!("{}: {e}", e.code())),
    };
    *agree = verdict == reference;
    clear_error();
    LovelineStatus::Ok
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn loveline_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
