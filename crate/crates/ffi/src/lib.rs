//! C ABI for the polykw engine.
//!
//! Every fallible function returns a [`PkwStatus`]; on failure a message is
//! available from [`pkw_last_error`] on the same thread. Objects are opaque
//! handles released with their `_free` function. Strings returned through
//! out-parameters are owned by the caller and released with
//! [`pkw_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use polykw::corpus::{Document, Split};
use polykw::embed_extract::FileProvider;
use polykw::eval::score_at_k;
use polykw::extractor::{Extractor, ExtractorConfig};
use polykw::normalize::{Mode, Normalizer, Stopwords};
use polykw::{Error, Method};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PkwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    UnknownExtractor = 4,
    ProviderRequired = 5,
    DataError = 6,
    Panic = 7,
}

pub struct PkwNormalizer(Normalizer);

pub struct PkwExtractor(Extractor);

/// Metrics for one ranked prediction list.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PkwScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub precision_fixed_k: f64,
    pub f1_fixed_k: f64,
    pub matches: usize,
    pub considered: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(PkwStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::UnknownExtractor(_) => PkwStatus::UnknownExtractor,
            Error::ProviderRequired(_) => PkwStatus::ProviderRequired,
            Error::InvalidArgument(_) => PkwStatus::InvalidArgument,
            _ => PkwStatus::DataError,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PkwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PkwStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PkwStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(PkwStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(PkwStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

unsafe fn opt_str_arg<'a>(p: *const c_char, name: &str) -> Result<Option<&'a str>, Fail> {
    if p.is_null() {
        Ok(None)
    } else {
        str_arg(p, name).map(Some)
    }
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(PkwStatus::NullPointer, format!("{name} is null")))
}

fn out_check<T>(p: *mut T) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(PkwStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail(PkwStatus::DataError, "string contains a NUL byte".into()))
}

fn json_strings(text: &str, name: &str) -> Result<Vec<String>, Fail> {
    serde_json::from_str(text).map_err(|e| Fail(PkwStatus::InvalidArgument, format!("{name}: {e}")))
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pkw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pkw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a normalizer for `lang`. `mode` may be null for the language
/// default, or one of `porter`, `latvian`, `identity`.
///
/// # Safety
/// `lang` and `mode` must be null or NUL-terminated strings; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pkw_normalizer_new(
    lang: *const c_char,
    mode: *const c_char,
    out: *mut *mut PkwNormalizer,
) -> PkwStatus {
    guard(|| {
        out_check(out)?;
        let lang = str_arg(lang, "lang")?;
        let normalizer = match opt_str_arg(mode, "mode")? {
            None => Normalizer::for_language(lang, None),
            Some(m) => {
                let mode: Mode = m.parse()?;
                Normalizer::new(lang, mode, None, Stopwords::bundled(lang).unwrap_or_else(Stopwords::empty))?
            }
        };
        *out = Box::into_raw(Box::new(PkwNormalizer(normalizer)));
        Ok(())
    })
}

/// # Safety
/// `n` must be null or a handle from [`pkw_normalizer_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pkw_normalizer_free(n: *mut PkwNormalizer) {
    if !n.is_null() {
        drop(Box::from_raw(n));
    }
}

/// Normalized form of a phrase, tokens joined by single spaces.
///
/// # Safety
/// Pointers must be valid; the returned string must be released with
/// [`pkw_string_free`].
#[no_mangle]
pub unsafe extern "C" fn pkw_normalize_phrase(
    n: *const PkwNormalizer,
    phrase: *const c_char,
    out: *mut *mut c_char,
) -> PkwStatus {
    guard(|| {
        out_check(out)?;
        let n = handle(n, "normalizer")?;
        *out = to_c_string(n.0.normalize_phrase(str_arg(phrase, "phrase")?))?;
        Ok(())
    })
}

/// Creates an extractor. `config_json` may be null for defaults or a JSON
/// object keyed by method (`{"kpminer": {"lasf": 2}}`); missing fields keep
/// their defaults.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pkw_extractor_new(
    method: *const c_char,
    config_json: *const c_char,
    out: *mut *mut PkwExtractor,
) -> PkwStatus {
    guard(|| {
        out_check(out)?;
        let method: Method = str_arg(method, "method")?.parse()?;
        let config: ExtractorConfig = match opt_str_arg(config_json, "config_json")? {
            None => ExtractorConfig::default(),
            Some(j) => serde_json::from_str(j).map_err(|e| Fail(PkwStatus::InvalidArgument, format!("config: {e}")))?,
        };
        *out = Box::into_raw(Box::new(PkwExtractor(Extractor::new(method, config))));
        Ok(())
    })
}

/// Attaches a precomputed embeddings file (`text<TAB>v1 v2 ...`) as the
/// embedding provider.
///
/// # Safety
/// `e` must be a live extractor handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pkw_extractor_set_embeddings(e: *mut PkwExtractor, path: *const c_char) -> PkwStatus {
    guard(|| {
        let e = e.as_mut().ok_or_else(|| Fail(PkwStatus::NullPointer, "extractor is null".into()))?;
        let provider = FileProvider::load(str_arg(path, "path")?)?;
        e.0 = e.0.clone().with_provider(Arc::new(provider));
        Ok(())
    })
}

/// # Safety
/// `e` must be null or a handle from [`pkw_extractor_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pkw_extractor_free(e: *mut PkwExtractor) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Extracts up to `k` keywords from `text`, writing a JSON array of
/// `{"phrase", "score"}` objects ranked best first.
///
/// # Safety
/// Handles must be live, strings NUL-terminated; the returned string must be
/// released with [`pkw_string_free`].
#[no_mangle]
pub unsafe extern "C" fn pkw_extract(
    e: *const PkwExtractor,
    n: *const PkwNormalizer,
    text: *const c_char,
    k: usize,
    out_json: *mut *mut c_char,
) -> PkwStatus {
    guard(|| {
        out_check(out_json)?;
        let e = handle(e, "extractor")?;
        let n = handle(n, "normalizer")?;
        let text = str_arg(text, "text")?;
        e.0.validate()?;
        let doc = Document::new("doc", n.0.lang(), text, Vec::new(), Split::Test);
        let keywords = e.0.extract(&doc, &n.0, k)?;
        let items: Vec<serde_json::Value> =
            keywords.iter().map(|kw| serde_json::json!({"phrase": kw.phrase, "score": kw.score})).collect();
        *out_json = to_c_string(serde_json::Value::Array(items).to_string())?;
        Ok(())
    })
}

/// Scores predictions against gold phrases. Both arguments are JSON arrays of
/// strings; predictions are best first. Gold phrases are normalized here and
/// all count as present.
///
/// # Safety
/// Pointers must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pkw_score_at_k(
    n: *const PkwNormalizer,
    predicted_json: *const c_char,
    gold_json: *const c_char,
    k: usize,
    out: *mut PkwScores,
) -> PkwStatus {
    guard(|| {
        out_check(out)?;
        let n = handle(n, "normalizer")?;
        let predicted = json_strings(str_arg(predicted_json, "predicted_json")?, "predicted_json")?;
        let gold = json_strings(str_arg(gold_json, "gold_json")?, "gold_json")?
            .iter()
            .map(|g| n.0.normalize_phrase(g))
            .filter(|g| !g.is_empty())
            .collect();
        let s = score_at_k(&predicted, &gold, &n.0, k);
        *out = PkwScores {
            precision: s.precision,
            recall: s.recall,
            f1: s.f1,
            precision_fixed_k: s.precision_fixed_k,
            f1_fixed_k: s.f1_fixed_k,
            matches: s.matches,
            considered: s.considered,
        };
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pkw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
