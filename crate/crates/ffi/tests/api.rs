use std::ffi::{c_char, CStr, CString};
use std::ptr;

use cssg_ffi::*;

const A1: &str = "def f():\n    x = 1\n    y = x + 1\n    z = x + 1\n";
const A2: &str = "def f():\n    x = 1\n    y = x + 1\n    z = y + 1\n";

fn graph(lang: i32, src: &str) -> *mut CssgGraph {
    let src = CString::new(src).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { cssg_graph_from_source(lang, src.as_ptr(), &mut g) }, CssgStatus::Ok);
    assert!(!g.is_null());
    g
}

fn last_error() -> String {
    let p = cssg_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { cssg_string_free(p) };
    s
}

#[test]
fn budget_constant_matches_core() {
    assert_eq!(CSSG_DEFAULT_EXACT_BUDGET, cssg::ged::DEFAULT_EXACT_BUDGET);
}

#[test]
fn empty_source_is_root_plus_entry() {
    let g = graph(CSSG_LANGUAGE_PYTHON, "");
    unsafe {
        assert_eq!(cssg_graph_node_count(g), 2);
        assert_eq!(cssg_graph_edge_count(g), 1);
        cssg_graph_free(g);
    }
}

#[test]
fn similarity_of_data_flow_variants() {
    let (a, b) = (graph(CSSG_LANGUAGE_PYTHON, A1), graph(CSSG_LANGUAGE_PYTHON, A2));
    let mut out = CssgSimilarity {
        score: -1.0,
        ged: 0,
        d_max: 0,
        solver: CssgSolver::Approx,
        degenerate: true,
    };
    unsafe {
        assert_eq!(cssg_similarity(a, a, CSSG_DEFAULT_EXACT_BUDGET, &mut out), CssgStatus::Ok);
        assert_eq!((out.score, out.ged, out.solver, out.degenerate), (1.0, 0, CssgSolver::Exact, false));
        assert_eq!(cssg_similarity(a, b, CSSG_DEFAULT_EXACT_BUDGET, &mut out), CssgStatus::Ok);
        assert!(out.score < 1.0);
        assert_eq!(out.score, 1.0 - out.ged as f64 / out.d_max as f64);
        assert_eq!(cssg_similarity(a, b, 0, &mut out), CssgStatus::Ok);
        assert_eq!(out.solver, CssgSolver::Approx);
        cssg_graph_free(a);
        cssg_graph_free(b);
    }
}

#[test]
fn compare_sources_across_languages() {
    let py = CString::new("def f(n):\n    return n + 1\n").unwrap();
    let java = CString::new("class Main { static int f(int n) { return n + 1; } }").unwrap();
    let mut out = CssgSimilarity {
        score: 0.0,
        ged: 0,
        d_max: 0,
        solver: CssgSolver::Exact,
        degenerate: false,
    };
    let status = unsafe {
        cssg_compare_sources(CSSG_LANGUAGE_PYTHON, py.as_ptr(), CSSG_LANGUAGE_JAVA, java.as_ptr(), 80, &mut out)
    };
    assert_eq!(status, CssgStatus::Ok);
    assert!((0.0..=1.0).contains(&out.score));
}

#[test]
fn json_round_trip() {
    let g = graph(CSSG_LANGUAGE_PYTHON, A1);
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(cssg_graph_to_json(g, &mut json), CssgStatus::Ok);
        let text = take_string(json);
        let c = CString::new(text).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(cssg_graph_from_json(c.as_ptr(), &mut back), CssgStatus::Ok);
        assert_eq!(cssg_graph_node_count(back), cssg_graph_node_count(g));
        assert_eq!(cssg_graph_edge_count(back), cssg_graph_edge_count(g));
        let mut dot = ptr::null_mut();
        assert_eq!(cssg_graph_to_dot(back, &mut dot), CssgStatus::Ok);
        assert!(take_string(dot).starts_with("digraph"));
        cssg_graph_free(back);
        cssg_graph_free(g);
    }
}

#[test]
fn error_codes() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(cssg_graph_from_source(CSSG_LANGUAGE_PYTHON, ptr::null(), &mut g), CssgStatus::NullPointer);
        assert!(last_error().contains("source"));
        let src = CString::new("x = 1").unwrap();
        assert_eq!(cssg_graph_from_source(42, src.as_ptr(), &mut g), CssgStatus::UnsupportedLanguage);
        let bad = [0xffu8, 0xfe, 0];
        assert_eq!(cssg_graph_from_source(CSSG_LANGUAGE_PYTHON, bad.as_ptr().cast(), &mut g), CssgStatus::InvalidUtf8);
        let junk = CString::new("{\"nodes\": 3}").unwrap();
        assert_eq!(cssg_graph_from_json(junk.as_ptr(), &mut g), CssgStatus::InvalidGraph);
        assert!(g.is_null());
        assert_eq!(cssg_similarity(ptr::null(), ptr::null(), 80, ptr::null_mut()), CssgStatus::NullPointer);
        assert_eq!(cssg_graph_node_count(ptr::null()), 0);
        cssg_graph_free(ptr::null_mut());
        cssg_string_free(ptr::null_mut());
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(cssg_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
