//! C ABI over the string object domain.
//!
//! Sessions and objects are opaque heap handles. Every fallible call
//! returns a [`StrobjStatus`] and writes its result through an out pointer;
//! the message of the last failure on the calling thread is available from
//! [`strobj_last_error`]. Strings returned to the caller are released with
//! [`strobj_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use strobj::config::PropertyConfig;
use strobj::interp::{analyze_program, parse_program, render_report, session_ctx, Format, Options};
use strobj::json::{object_from_json, object_to_json};
use strobj::object::{Ctx, StringObject};
use strobj::ops::abs_concat;
use strobj::word::{word, Alphabet};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrobjStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    Internal = 5,
}

/// Alphabet and custom properties shared by a family of objects.
pub struct StrobjSession {
    ctx: Ctx,
}

/// An abstract string value.
pub struct StrobjObject {
    inner: StringObject,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(StrobjStatus, String);

fn fail<T>(status: StrobjStatus, msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, msg.into()))
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> StrobjStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => StrobjStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error".to_string());
            StrobjStatus::Internal
        }
    }
}

/// # Safety
/// `s` is null or a valid NUL-terminated string.
unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return fail(StrobjStatus::NullPointer, format!("{what} is null"));
    }
    CStr::from_ptr(s).to_str().or_else(|_| fail(StrobjStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `s` is null or a valid NUL-terminated string.
unsafe fn opt_text<'a>(s: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if s.is_null() {
        Ok(None)
    } else {
        text(s, what).map(Some)
    }
}

/// # Safety
/// `p` is null or points to a live value of type `T`.
unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(StrobjStatus::NullPointer, format!("{what} is null")))
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return fail(StrobjStatus::NullPointer, "output pointer is null");
    }
    out.write(value);
    Ok(())
}

fn load_config(props_json: Option<&str>) -> Result<PropertyConfig, Failure> {
    match props_json {
        None => Ok(PropertyConfig::default()),
        Some(s) => PropertyConfig::parse(s).or_else(|e| fail(StrobjStatus::ParseError, e.to_string())),
    }
}

fn owned_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).or_else(|_| fail(StrobjStatus::Internal, "string contains NUL"))
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn strobj_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Creates a session over the letters of `alphabet`. `props_json` is a
/// property configuration document or null.
///
/// # Safety
/// `alphabet` and a non-null `props_json` are NUL-terminated strings;
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn strobj_session_new(
    alphabet: *const c_char,
    props_json: *const c_char,
    out: *mut *mut StrobjSession,
) -> StrobjStatus {
    guard(|| {
        let letters = text(alphabet, "alphabet")?;
        if letters.is_empty() {
            return fail(StrobjStatus::InvalidArgument, "alphabet is empty");
        }
        let sigma = Alphabet::from_str(letters);
        let cfg = load_config(opt_text(props_json, "props_json")?)?;
        if let Some(c) = cfg.letters().into_iter().find(|&c| !sigma.contains(c)) {
            return fail(StrobjStatus::InvalidArgument, format!("letter {c:?} is missing from the alphabet"));
        }
        let props = cfg
            .morphisms(&sigma)
            .or_else(|e| fail(StrobjStatus::ParseError, e.to_string()))?
            .into_iter()
            .map(|(_, m)| m)
            .collect();
        let session = Box::new(StrobjSession { ctx: Ctx::new(sigma, props) });
        put(out, Box::into_raw(session))
    })
}

/// # Safety
/// `session` is null or was returned by [`strobj_session_new`] and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn strobj_session_free(session: *mut StrobjSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

fn new_object(o: StringObject) -> *mut StrobjObject {
    Box::into_raw(Box::new(StrobjObject { inner: o }))
}

/// The object describing exactly the string `w`.
///
/// # Safety
/// `session` is a live session, `w` a NUL-terminated string, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn strobj_object_atom(
    session: *const StrobjSession,
    w: *const c_char,
    out: *mut *mut StrobjObject,
) -> StrobjStatus {
    guard(|| {
        let s = handle(session, "session")?;
        let w = word(text(w, "word")?);
        if let Some(c) = w.iter().find(|&&c| !s.ctx.sigma.contains(c)) {
            return fail(StrobjStatus::InvalidArgument, format!("letter {c:?} is missing from the alphabet"));
        }
        put(out, new_object(StringObject::atom(&w, &s.ctx)))
    })
}

/// The object describing every string.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn strobj_object_top(out: *mut *mut StrobjObject) -> StrobjStatus {
    guard(|| put(out, new_object(StringObject::top())))
}

/// Decodes an object from its JSON form.
///
/// # Safety
/// `session` is a live session, `json` a NUL-terminated string, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn strobj_object_from_json(
    session: *const StrobjSession,
    json: *const c_char,
    out: *mut *mut StrobjObject,
) -> StrobjStatus {
    guard(|| {
        let s = handle(session, "session")?;
        let v: serde_json::Value =
            serde_json::from_str(text(json, "json")?).or_else(|e| fail(StrobjStatus::ParseError, e.to_string()))?;
        let o = object_from_json(&v, &s.ctx.sigma, "$").or_else(|e| fail(StrobjStatus::ParseError, e.to_string()))?;
        put(out, new_object(o))
    })
}

/// # Safety
/// `object` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn strobj_object_free(object: *mut StrobjObject) {
    if !object.is_null() {
        drop(Box::from_raw(object));
    }
}

/// # Safety
/// All handles are live and `out` is valid for writes.
unsafe fn binary(
    session: *const StrobjSession,
    a: *const StrobjObject,
    b: *const StrobjObject,
    out: *mut *mut StrobjObject,
    op: fn(&StringObject, &StringObject, &Ctx) -> StringObject,
) -> StrobjStatus {
    guard(|| {
        let s = handle(session, "session")?;
        let (a, b) = (handle(a, "first object")?, handle(b, "second object")?);
        put(out, new_object(op(&a.inner, &b.inner, &s.ctx)))
    })
}

/// Least upper bound of two objects.
///
/// # Safety
/// All handles are live and `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn strobj_object_join(
    session: *const StrobjSession,
    a: *const StrobjObject,
    b: *const StrobjObject,
    out: *mut *mut StrobjObject,
) -> StrobjStatus {
    binary(session, a, b, out, StringObject::join)
}

/// Greatest lower bound of two objects.
///
/// # Safety
/// All handles are live and `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn strobj_object_meet(
    session: *const StrobjSession,
    a: *const StrobjObject,
    b: *const StrobjObject,
    out: *mut *mut StrobjObject,
) -> StrobjStatus {
    binary(session, a, b, out, StringObject::meet)
}

/// Abstract concatenation `a + b`.
///
/// # Safety
/// All handles are live and `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn strobj_object_concat(
    session: *const StrobjSession,
    a: *const StrobjObject,
    b: *const StrobjObject,
    out: *mut *mut StrobjObject,
) -> StrobjStatus {
    binary(session, a, b, out, abs_concat)
}

/// Whether `w` satisfies every property of `object`.
///
/// # Safety
/// Handles are live, `w` is a NUL-terminated string, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn strobj_object_contains(
    session: *const StrobjSession,
    object: *const StrobjObject,
    w: *const c_char,
    out: *mut bool,
) -> StrobjStatus {
    guard(|| {
        let s = handle(session, "session")?;
        let o = handle(object, "object")?;
        put(out, o.inner.contains(&word(text(w, "word")?), &s.ctx))
    })
}

/// JSON form of `object`; free the result with [`strobj_string_free`].
///
/// # Safety
/// Handles are live and `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn strobj_object_to_json(
    session: *const StrobjSession,
    object: *const StrobjObject,
    out: *mut *mut c_char,
) -> StrobjStatus {
    guard(|| {
        let s = handle(session, "session")?;
        let o = handle(object, "object")?;
        put(out, owned_string(object_to_json(&o.inner, &s.ctx.sigma).to_string())?)
    })
}

/// Analyzes `program` and writes the JSON report. `props_json` and
/// `alphabet` may be null; the alphabet then defaults to the letters in
/// use plus one more.
///
/// # Safety
/// Non-null arguments are NUL-terminated strings; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn strobj_analyze(
    program: *const c_char,
    props_json: *const c_char,
    alphabet: *const c_char,
    out: *mut *mut c_char,
) -> StrobjStatus {
    guard(|| {
        let p = parse_program(text(program, "program")?).or_else(|e| fail(StrobjStatus::ParseError, e.to_string()))?;
        let cfg = load_config(opt_text(props_json, "props_json")?)?;
        let sigma = opt_text(alphabet, "alphabet")?.filter(|a| !a.is_empty()).map(Alphabet::from_str);
        let ctx = session_ctx(&p, &cfg, sigma).or_else(|e| fail(StrobjStatus::InvalidArgument, e.to_string()))?;
        let report =
            analyze_program(&p, &ctx, &Options::default()).or_else(|e| fail(StrobjStatus::Internal, e.to_string()))?;
        put(out, owned_string(render_report(&report, &ctx.sigma, Format::Json))?)
    })
}

/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn strobj_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
