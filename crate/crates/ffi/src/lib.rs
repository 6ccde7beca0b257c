//! C interface to the semantic-graph similarity library.
//!
//! Every entry point returns a [`CssgStatus`]; on failure the message is
//! available from [`cssg_last_error_message`] on the same thread. Graphs are
//! opaque handles released with [`cssg_graph_free`]; strings returned by the
//! library are released with [`cssg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cssg::frontend::{Language, SourceUnit};
use cssg::ged::{ExactOptions, Solver};
use cssg::metrics::cssg_graphs;
use cssg::semgraph::{build_semantic_graph, deserialize, serialize, GraphFormat, SemanticGraph};
use cssg::Error;

pub const CSSG_LANGUAGE_PYTHON: i32 = 0;
pub const CSSG_LANGUAGE_JAVA: i32 = 1;
pub const CSSG_LANGUAGE_CPP: i32 = 2;

/// Combined node count up to which the exact solver is tried.
pub const CSSG_DEFAULT_EXACT_BUDGET: usize = 80;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CssgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnsupportedLanguage = 3,
    ParseFailure = 4,
    InvalidGraph = 5,
    Internal = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CssgSolver {
    Exact = 0,
    Approx = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CssgSimilarity {
    pub score: f64,
    pub ged: usize,
    pub d_max: usize,
    pub solver: CssgSolver,
    /// Both graphs held only the root node.
    pub degenerate: bool,
}

/// Opaque semantic graph.
pub struct CssgGraph {
    inner: SemanticGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(CssgStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::UnsupportedLanguage(_) => CssgStatus::UnsupportedLanguage,
            Error::ParseFailure { .. } => CssgStatus::ParseFailure,
            Error::InvalidUtf8(_) => CssgStatus::InvalidUtf8,
            Error::InvalidGraph(_) | Error::Json(_) => CssgStatus::InvalidGraph,
            _ => CssgStatus::Internal,
        };
        Fail(status, e.to_string())
    }
}

/// Runs `f`, recording any failure or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CssgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CssgStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            CssgStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(CssgStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(CssgStatus::InvalidUtf8, format!("`{what}` is not valid UTF-8")))
}

unsafe fn graph_ref<'a>(g: *const CssgGraph, what: &str) -> Result<&'a SemanticGraph, Fail> {
    g.as_ref().map(|g| &g.inner).ok_or_else(|| null(what))
}

fn language(code: i32) -> Result<Language, Fail> {
    match code {
        CSSG_LANGUAGE_PYTHON => Ok(Language::Python),
        CSSG_LANGUAGE_JAVA => Ok(Language::Java),
        CSSG_LANGUAGE_CPP => Ok(Language::Cpp),
        other => Err(Fail(CssgStatus::UnsupportedLanguage, format!("unknown language code {other}"))),
    }
}

fn build(lang: i32, src: &str) -> Result<SemanticGraph, Fail> {
    Ok(build_semantic_graph(&SourceUnit::new(language(lang)?, src, "ffi"))?)
}

fn boxed(g: SemanticGraph) -> *mut CssgGraph {
    Box::into_raw(Box::new(CssgGraph { inner: g }))
}

fn similarity(a: &SemanticGraph, b: &SemanticGraph, budget: usize) -> CssgSimilarity {
    let opts = ExactOptions {
        budget,
        ..ExactOptions::default()
    };
    let r = cssg_graphs(a, b, &opts);
    CssgSimilarity {
        score: r.score,
        ged: r.ged.unwrap_or(0),
        d_max: r.d_max.unwrap_or(0),
        solver: match r.solver {
            Some(Solver::Approx) => CssgSolver::Approx,
            _ => CssgSolver::Exact,
        },
        degenerate: r.degenerate,
    }
}

fn write_string(out: *mut *mut c_char, s: Vec<u8>) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(CssgStatus::Internal, "output contains a nul byte".into()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn cssg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cssg_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(s) => s,
        Err(_) => panic!("version has no interior nul"),
    };
    VERSION.as_ptr()
}

/// Builds the semantic graph of NUL-terminated UTF-8 `source`.
///
/// # Safety
/// `source` must be null or a valid C string; `out` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cssg_graph_from_source(
    language: i32,
    source: *const c_char,
    out: *mut *mut CssgGraph,
) -> CssgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let g = build(language, read_str(source, "source")?)?;
        *out = boxed(g);
        Ok(())
    })
}

/// Parses the JSON graph format produced by [`cssg_graph_to_json`].
///
/// # Safety
/// As [`cssg_graph_from_source`].
#[no_mangle]
pub unsafe extern "C" fn cssg_graph_from_json(json: *const c_char, out: *mut *mut CssgGraph) -> CssgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let g = deserialize(read_str(json, "json")?.as_bytes())?;
        *out = boxed(g);
        Ok(())
    })
}

/// Serializes to JSON; free the result with [`cssg_string_free`].
///
/// # Safety
/// `graph` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cssg_graph_to_json(graph: *const CssgGraph, out: *mut *mut c_char) -> CssgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        write_string(out, serialize(graph_ref(graph, "graph")?, GraphFormat::Json))
    })
}

/// Serializes to Graphviz DOT; free the result with [`cssg_string_free`].
///
/// # Safety
/// As [`cssg_graph_to_json`].
#[no_mangle]
pub unsafe extern "C" fn cssg_graph_to_dot(graph: *const CssgGraph, out: *mut *mut c_char) -> CssgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        write_string(out, serialize(graph_ref(graph, "graph")?, GraphFormat::Dot))
    })
}

/// Node count, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cssg_graph_node_count(graph: *const CssgGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.inner.node_count())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cssg_graph_edge_count(graph: *const CssgGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.inner.edge_count())
}

/// # Safety
/// `graph` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cssg_graph_free(graph: *mut CssgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cssg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// CSSG score of two graphs. Pairs above `exact_budget` combined nodes
/// use the approximate solver.
///
/// # Safety
/// `a` and `b` must be null or live handles; `out` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cssg_similarity(
    a: *const CssgGraph,
    b: *const CssgGraph,
    exact_budget: usize,
    out: *mut CssgSimilarity,
) -> CssgStatus {
    guard(|| {
        let (ga, gb) = (graph_ref(a, "a")?, graph_ref(b, "b")?);
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = similarity(ga, gb, exact_budget);
        Ok(())
    })
}

/// Builds both graphs and scores them in one call.
///
/// # Safety
/// Sources must be null or valid C strings; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cssg_compare_sources(
    language_a: i32,
    source_a: *const c_char,
    language_b: i32,
    source_b: *const c_char,
    exact_budget: usize,
    out: *mut CssgSimilarity,
) -> CssgStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let ga = build(language_a, read_str(source_a, "source_a")?)?;
        let gb = build(language_b, read_str(source_b, "source_b")?)?;
        *out = similarity(&ga, &gb, exact_budget);
        Ok(())
    })
}
