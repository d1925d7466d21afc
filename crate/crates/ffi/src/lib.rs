//! C ABI over `expander-core`.
//!
//! Graphs live behind an opaque `ExpanderGraph` handle. Every entry point
//! returns an `ExpanderStatus`; on failure `expander_last_error` describes
//! the problem. Strings handed out by the library are released with
//! `expander_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use expander_core::certification::{certify_alpha_exact, certify_heuristic, find_separator, Mode};
use expander_core::generators::{gen, GenSpec};
use expander_core::minors::{clique_minor, CliqueOverrides};
use expander_core::paths::{long_cycle, long_path, natural_sigma};
use expander_core::spectral::fiedler;
use expander_core::{Error, Graph};

/// Opaque graph handle.
pub struct ExpanderGraph {
    inner: Graph,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpanderStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ExactLimit = 3,
    Parse = 4,
    NonConvergence = 5,
    BudgetExceeded = 6,
    Contradiction = 7,
    Hypothesis = 8,
    Io = 9,
    Panic = 10,
    Other = 11,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ExpanderStatus {
    match e {
        Error::InvalidArgument(_) => ExpanderStatus::InvalidArgument,
        Error::ExactLimit { .. } => ExpanderStatus::ExactLimit,
        Error::Parse { .. } => ExpanderStatus::Parse,
        Error::NonConvergence { .. } => ExpanderStatus::NonConvergence,
        Error::BudgetExceeded { .. } => ExpanderStatus::BudgetExceeded,
        Error::Contradiction(_) => ExpanderStatus::Contradiction,
        Error::Hypothesis(_) => ExpanderStatus::Hypothesis,
        Error::Io(_) => ExpanderStatus::Io,
        _ => ExpanderStatus::Other,
    }
}

/// Runs `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), (ExpanderStatus, String)>) -> ExpanderStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ExpanderStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("panic inside the library");
            ExpanderStatus::Panic
        }
    }
}

fn lib<T>(r: expander_core::Result<T>) -> Result<T, (ExpanderStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (ExpanderStatus, String) {
    (ExpanderStatus::NullPointer, format!("{what} is null"))
}

unsafe fn graph_ref<'a>(g: *const ExpanderGraph) -> Result<&'a Graph, (ExpanderStatus, String)> {
    g.as_ref().map(|h| &h.inner).ok_or_else(|| null("graph"))
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (ExpanderStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (ExpanderStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn put_handle(g: Graph, out: *mut *mut ExpanderGraph) -> Result<(), (ExpanderStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(ExpanderGraph { inner: g }));
    Ok(())
}

unsafe fn put_json<T: serde::Serialize>(v: &T, out: *mut *mut c_char) -> Result<(), (ExpanderStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let s = serde_json::to_string(v).map_err(|e| (ExpanderStatus::Other, e.to_string()))?;
    *out = CString::new(s).map_err(|e| (ExpanderStatus::Other, e.to_string()))?.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread. Owned by the library and
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn expander_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a graph on `n` vertices from `m` pairs stored as `edges[2i]`,
/// `edges[2i + 1]`.
///
/// # Safety
/// `edges` must point to `2 m` readable values (it may be null when `m` is 0)
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expander_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut ExpanderGraph,
) -> ExpanderStatus {
    guard(|| {
        let pairs: Vec<(usize, usize)> = if m == 0 {
            Vec::new()
        } else {
            if edges.is_null() {
                return Err(null("edges"));
            }
            std::slice::from_raw_parts(edges, 2 * m).chunks(2).map(|c| (c[0], c[1])).collect()
        };
        put_handle(lib(Graph::from_edges(n, pairs))?, out)
    })
}

/// Parses an edge list (one `u v` pair per line).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn expander_graph_parse(text: *const c_char, out: *mut *mut ExpanderGraph) -> ExpanderStatus {
    guard(|| {
        let t = c_str(text, "text")?;
        put_handle(lib(Graph::parse_str(t))?, out)
    })
}

/// Generates a graph from a JSON spec such as
/// `{"kind": "random_regular", "n": 100, "d": 3, "seed": 7}`.
///
/// # Safety
/// `spec_json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn expander_graph_generate(
    spec_json: *const c_char,
    out: *mut *mut ExpanderGraph,
) -> ExpanderStatus {
    guard(|| {
        let t = c_str(spec_json, "spec_json")?;
        let spec: GenSpec =
            serde_json::from_str(t).map_err(|e| (ExpanderStatus::InvalidArgument, format!("bad spec: {e}")))?;
        put_handle(lib(gen(&spec))?, out)
    })
}

/// Releases a graph; null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn expander_graph_free(g: *mut ExpanderGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn expander_graph_n(g: *const ExpanderGraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.n())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn expander_graph_m(g: *const ExpanderGraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.m())
}

/// Order-independent hash of the edge list.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn expander_graph_hash(g: *const ExpanderGraph, out: *mut u64) -> ExpanderStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = g.graph_hash();
        Ok(())
    })
}

/// Exact worst ratio `min |N(U)| / |U|` over `1 <= |U| <= n/2`; infinity
/// when no set is admissible. Refuses graphs above the exact limit.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn expander_alpha_star(g: *const ExpanderGraph, out: *mut f64) -> ExpanderStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = lib(certify_alpha_exact(g, Mode::Half))?.alpha_star;
        Ok(())
    })
}

/// Second-smallest normalized-Laplacian eigenvalue.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn expander_mu(g: *const ExpanderGraph, seed: u64, out: *mut f64) -> ExpanderStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = lib(fiedler(g, 2000, seed))?.mu;
        Ok(())
    })
}

/// Expansion report as JSON; `exact` selects exhaustive certification.
///
/// # Safety
/// `g` must be a live handle and `out` writable; free the string with
/// `expander_string_free`.
#[no_mangle]
pub unsafe extern "C" fn expander_certify_json(g: *const ExpanderGraph, exact: bool, out: *mut *mut c_char) -> ExpanderStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let r = if exact { lib(certify_alpha_exact(g, Mode::Half))? } else { lib(certify_heuristic(g))? };
        put_json(&r, out)
    })
}

/// Separator report as JSON.
///
/// # Safety
/// As for `expander_certify_json`.
#[no_mangle]
pub unsafe extern "C" fn expander_separator_json(g: *const ExpanderGraph, out: *mut *mut c_char) -> ExpanderStatus {
    guard(|| {
        let g = graph_ref(g)?;
        put_json(&lib(find_separator(g))?, out)
    })
}

/// Long path or non-expanding witness as JSON (natural vertex order).
///
/// # Safety
/// As for `expander_certify_json`.
#[no_mangle]
pub unsafe extern "C" fn expander_long_path_json(
    g: *const ExpanderGraph,
    k: usize,
    ell: usize,
    out: *mut *mut c_char,
) -> ExpanderStatus {
    guard(|| {
        let g = graph_ref(g)?;
        put_json(&lib(long_path(g, k, ell, &natural_sigma(g.n())))?, out)
    })
}

/// Long cycle or violation as JSON (natural vertex order).
///
/// # Safety
/// As for `expander_certify_json`.
#[no_mangle]
pub unsafe extern "C" fn expander_long_cycle_json(
    g: *const ExpanderGraph,
    k: usize,
    ell: usize,
    out: *mut *mut c_char,
) -> ExpanderStatus {
    guard(|| {
        let g = graph_ref(g)?;
        put_json(&lib(long_cycle(g, k, ell, &natural_sigma(g.n())))?, out)
    })
}

/// Clique minor as JSON. Zero for `b`, `k` or `walk_constant` keeps the
/// derived default.
///
/// # Safety
/// As for `expander_certify_json`.
#[no_mangle]
pub unsafe extern "C" fn expander_clique_minor_json(
    g: *const ExpanderGraph,
    alpha: f64,
    b: usize,
    k: usize,
    walk_constant: f64,
    seed: u64,
    out: *mut *mut c_char,
) -> ExpanderStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let o = CliqueOverrides {
            b: (b > 0).then_some(b),
            k: (k > 0).then_some(k),
            walk_constant: (walk_constant > 0.0).then_some(walk_constant),
            no_padding: false,
        };
        put_json(&lib(clique_minor(g, alpha, o, seed))?, out)
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn expander_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn expander_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::InvalidArgument("x".into())), ExpanderStatus::InvalidArgument);
        assert_eq!(status_of(&Error::BudgetExceeded { budget: 1 }), ExpanderStatus::BudgetExceeded);
    }

    #[test]
    fn null_handles() {
        let mut x = 0.0;
        assert_eq!(unsafe { expander_alpha_star(ptr::null(), &mut x) }, ExpanderStatus::NullPointer);
        let msg = unsafe { CStr::from_ptr(expander_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "graph is null");
    }
}
