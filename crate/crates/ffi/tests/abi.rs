use std::ffi::{CStr, CString};
use std::ptr;

use loveline::fixtures::{TIMELINE_A, TIMELINE_C};
use loveline_ffi::*;

struct Doc(*mut LovelineDocument);

impl Drop for Doc {
    fn drop(&mut self) {
        unsafe { loveline_document_free(self.0) }
    }
}

fn parse(text: &str) -> Result<Doc, (LovelineStatus, String)> {
    let text = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { loveline_document_parse(text.as_ptr(), &mut out) };
    if status == LovelineStatus::Ok {
        Ok(Doc(out))
    } else {
        assert!(out.is_null());
        Err((status, last_error().unwrap()))
    }
}

fn last_error() -> Option<String> {
    let p = loveline_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned())
}

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null(), "{:?}", last_error());
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { loveline_string_free(s) };
    owned
}

#[test]
fn evaluate_fixture() {
    let doc = parse(TIMELINE_A).unwrap();
    assert_eq!(unsafe { loveline_document_query_count(doc.0) }, 1);
    let mut v = LovelineVerdict {
        holds: true,
        s: LovelineRational { numer: 0, denom: 1 },
        c: LovelineRational { numer: 0, denom: 1 },
        threshold: LovelineRational { numer: 0, denom: 1 },
    };
    let status = unsafe { loveline_document_evaluate(doc.0, 0, &mut v) };
    assert_eq!(status, LovelineStatus::Ok);
    assert!(!v.holds);
    assert_eq!(v.s, LovelineRational { numer: 4, denom: 1 });
    assert_eq!(v.c, LovelineRational { numer: 6, denom: 1 });
    assert_eq!(v.threshold, LovelineRational { numer: 1, denom: 1 });
    assert!(last_error().is_none());

    let status = unsafe { loveline_document_evaluate(doc.0, 1, &mut v) };
    assert_eq!(status, LovelineStatus::QueryOutOfRange);
    assert!(last_error().unwrap().contains("out of range"));
}

#[test]
fn string_outputs() {
    let doc = parse(TIMELINE_C).unwrap();
    let json = take(unsafe { loveline_document_eval_json(doc.0) });
    assert!(json.contains("\"holds\": true"), "{json}");
    assert!(json.contains("\"c\": \"0\""));

    let trace = take(unsafe { loveline_document_explain(doc.0, 0) });
    assert!(trace.starts_with("query 1: loves(sally,john)"), "{trace}");
    assert!(trace.contains("first_failure: none"));

    let bfo = take(unsafe { loveline_document_export_bfo(doc.0) });
    assert!(bfo.contains("individual sally Agent \"sally\""));

    assert!(unsafe { loveline_document_explain(doc.0, 5) }.is_null());
    assert!(last_error().is_some());
}

#[test]
fn oracle_agreement() {
    let doc = parse(TIMELINE_A).unwrap();
    let mut agree = false;
    let g = CString::new("1/2").unwrap();
    assert_eq!(unsafe { loveline_document_oracle(doc.0, 0, g.as_ptr(), &mut agree) }, LovelineStatus::Ok);
    assert!(agree);

    let g = CString::new("3").unwrap();
    assert_eq!(unsafe { loveline_document_oracle(doc.0, 0, g.as_ptr(), &mut agree) }, LovelineStatus::EvalError);
    assert!(last_error().unwrap().starts_with("E_GRANULARITY"));

    let g = CString::new("half").unwrap();
    assert_eq!(
        unsafe { loveline_document_oracle(doc.0, 0, g.as_ptr(), &mut agree) },
        LovelineStatus::InvalidArgument
    );
}

#[test]
fn parse_errors_carry_every_diagnostic() {
    let text = TIMELINE_A.replace("agent john", "agent sally").replace("[3,7)", "[7,3)");
    let (status, message) = parse(&text).err().unwrap();
    assert_eq!(status, LovelineStatus::ParseError);
    assert!(message.contains("E_DUP_ID"), "{message}");
    assert!(message.lines().count() >= 2, "{message}");
}

#[test]
fn null_arguments_are_rejected() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { loveline_document_parse(ptr::null(), &mut out) }, LovelineStatus::NullArgument);
    let text = CString::new(TIMELINE_A).unwrap();
    assert_eq!(
        unsafe { loveline_document_parse(text.as_ptr(), ptr::null_mut()) },
        LovelineStatus::NullArgument
    );
    assert_eq!(unsafe { loveline_document_query_count(ptr::null()) }, 0);
    assert!(unsafe { loveline_document_eval_json(ptr::null()) }.is_null());
    assert_eq!(
        unsafe { loveline_document_evaluate(ptr::null(), 0, ptr::null_mut()) },
        LovelineStatus::NullArgument
    );
    unsafe {
        loveline_document_free(ptr::null_mut());
        loveline_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_utf8_is_rejected() {
    let bytes = CString::new(vec![0x23u8, 0xff, 0xfe]).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { loveline_document_parse(bytes.as_ptr(), &mut out) }, LovelineStatus::InvalidUtf8);
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/loveline.h")).unwrap();
    for decl in [
        "typedef struct LovelineDocument LovelineDocument;",
        "LOVELINE_STATUS_OK = 0",
        "LOVELINE_STATUS_PARSE_ERROR = 3",
        "const char *loveline_last_error(void);",
        "enum LovelineStatus loveline_document_parse(const char *text, struct LovelineDocument **out);",
        "void loveline_document_free(struct LovelineDocument *doc);",
        "size_t loveline_document_query_count(const struct LovelineDocument *doc);",
        "char *loveline_document_eval_json(const struct LovelineDocument *doc);",
        "void loveline_string_free(char *s);",
    ] {
        assert!(header.contains(decl), "missing `{decl}`");
    }
}
