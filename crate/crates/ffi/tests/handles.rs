use std::ffi::{CStr, CString};
use std::ptr;

use strobj_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    strobj_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(strobj_last_error()).to_str().unwrap().to_string()
}

#[test]
fn join_and_meet_through_handles() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(strobj_session_new(c("ab").as_ptr(), ptr::null(), &mut s), StrobjStatus::Ok);
        let (mut x, mut y, mut j, mut m) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(strobj_object_atom(s, c("ab").as_ptr(), &mut x), StrobjStatus::Ok);
        assert_eq!(strobj_object_atom(s, c("abb").as_ptr(), &mut y), StrobjStatus::Ok);
        assert_eq!(strobj_object_join(s, x, y, &mut j), StrobjStatus::Ok);
        assert_eq!(strobj_object_meet(s, x, y, &mut m), StrobjStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(strobj_object_to_json(s, j, &mut out), StrobjStatus::Ok);
        assert_eq!(take_string(out), r#"{"length":{"hi":4,"lo":2},"value":{"prefix":"ab","suffix":"b"}}"#);
        assert_eq!(strobj_object_to_json(s, m, &mut out), StrobjStatus::Ok);
        assert_eq!(take_string(out), r#"{"bottom":true}"#);
        let mut inside = false;
        assert_eq!(strobj_object_contains(s, j, c("abb").as_ptr(), &mut inside), StrobjStatus::Ok);
        assert!(inside);
        assert_eq!(strobj_object_contains(s, j, c("ba").as_ptr(), &mut inside), StrobjStatus::Ok);
        assert!(!inside);
        for o in [x, y, j, m] {
            strobj_object_free(o);
        }
        strobj_session_free(s);
    }
}

#[test]
fn json_round_trip_with_properties() {
    unsafe {
        let props = c(r#"{"properties":[{"name":"tags","classes":[{"chars":"<"},{"chars":">"}],"erase":"*"}]}"#);
        let mut s = ptr::null_mut();
        assert_eq!(strobj_session_new(c("<>ab").as_ptr(), props.as_ptr(), &mut s), StrobjStatus::Ok);
        let (mut a, mut t, mut cat) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(strobj_object_atom(s, c("<a>").as_ptr(), &mut a), StrobjStatus::Ok);
        assert_eq!(strobj_object_top(&mut t), StrobjStatus::Ok);
        assert_eq!(strobj_object_concat(s, a, t, &mut cat), StrobjStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(strobj_object_to_json(s, cat, &mut out), StrobjStatus::Ok);
        let first = take_string(out);
        let mut back = ptr::null_mut();
        assert_eq!(strobj_object_from_json(s, c(&first).as_ptr(), &mut back), StrobjStatus::Ok);
        assert_eq!(strobj_object_to_json(s, back, &mut out), StrobjStatus::Ok);
        assert_eq!(take_string(out), first);
        for o in [a, t, cat, back] {
            strobj_object_free(o);
        }
        strobj_session_free(s);
    }
}

#[test]
fn analyze_program_text() {
    unsafe {
        let src = c("let x = unknown(); let y = x ? '<tag>' + x : '';\nlet z = '?';\nif (y) {\n  z = y.charAt(4); }\nif (!z) {\n  return 'Error'; }\nelse { return z; }");
        let mut out = ptr::null_mut();
        assert_eq!(strobj_analyze(src.as_ptr(), ptr::null(), ptr::null(), &mut out), StrobjStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert!(report["verdicts"].as_array().unwrap().contains(&serde_json::json!({"kind": "unreachable", "line": 6})));
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(strobj_session_new(ptr::null(), ptr::null(), &mut s), StrobjStatus::NullPointer);
        assert_eq!(strobj_session_new(c("").as_ptr(), ptr::null(), &mut s), StrobjStatus::InvalidArgument);
        let bad = [0xffu8, 0];
        assert_eq!(strobj_session_new(bad.as_ptr().cast(), ptr::null(), &mut s), StrobjStatus::InvalidUtf8);
        assert_eq!(strobj_session_new(c("ab").as_ptr(), c("{").as_ptr(), &mut s), StrobjStatus::ParseError);
        let props = c(r#"{"properties":[{"classes":[{"chars":"ab"}],"erase":"a"}]}"#);
        assert_eq!(strobj_session_new(c("ab").as_ptr(), props.as_ptr(), &mut s), StrobjStatus::ParseError);
        assert_eq!(last_error(), "properties[0].erase: letter 'a' is assigned twice");
        assert_eq!(strobj_session_new(c("ab").as_ptr(), ptr::null(), ptr::null_mut()), StrobjStatus::NullPointer);
        assert_eq!(strobj_session_new(c("ab").as_ptr(), ptr::null(), &mut s), StrobjStatus::Ok);
        let mut o = ptr::null_mut();
        assert_eq!(strobj_object_atom(s, c("abc").as_ptr(), &mut o), StrobjStatus::InvalidArgument);
        assert_eq!(strobj_object_from_json(s, c(r#"{"length":{"lo":0}}"#).as_ptr(), &mut o), StrobjStatus::ParseError);
        assert_eq!(last_error(), "$.length: range must satisfy 1 <= lo < hi");
        let mut out = ptr::null_mut();
        assert_eq!(strobj_analyze(c("let = 1").as_ptr(), ptr::null(), ptr::null(), &mut out), StrobjStatus::ParseError);
        assert_eq!(
            strobj_analyze(c("let x = 'q';").as_ptr(), ptr::null(), c("ab").as_ptr(), &mut out),
            StrobjStatus::InvalidArgument
        );
        strobj_session_free(s);
        strobj_session_free(ptr::null_mut());
        strobj_object_free(ptr::null_mut());
        strobj_string_free(ptr::null_mut());
    }
}
