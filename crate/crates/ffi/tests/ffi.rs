use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use expander_ffi::*;

fn take(s: *mut std::ffi::c_char) -> serde_json::Value {
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { expander_string_free(s) };
    v
}

fn cycle(n: usize) -> *mut ExpanderGraph {
    let edges: Vec<usize> = (0..n).flat_map(|i| [i, (i + 1) % n]).collect();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { expander_graph_from_edges(n, edges.as_ptr(), n, &mut g) }, ExpanderStatus::Ok);
    g
}

#[test]
fn cycle_certificate() {
    let g = cycle(8);
    assert_eq!(unsafe { expander_graph_n(g) }, 8);
    assert_eq!(unsafe { expander_graph_m(g) }, 8);
    let mut a = 0.0;
    assert_eq!(unsafe { expander_alpha_star(g, &mut a) }, ExpanderStatus::Ok);
    assert_eq!(a, 0.5);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { expander_certify_json(g, true, &mut out) }, ExpanderStatus::Ok);
    let v = take(out);
    assert_eq!(v["alpha_star"], 0.5);
    assert_eq!(v["exhaustive"], true);
    let mut h = 0u64;
    assert_eq!(unsafe { expander_graph_hash(g, &mut h) }, ExpanderStatus::Ok);
    assert_eq!(v["graph_hash"], h);
    unsafe { expander_graph_free(g) };
}

#[test]
fn paths_and_separator() {
    let g = cycle(9);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { expander_long_cycle_json(g, 4, 2, &mut out) }, ExpanderStatus::Ok);
    let v = take(out);
    assert_eq!(v["branch"], "cycle");
    assert_eq!(v["cycle"]["length"], 9);
    assert_eq!(unsafe { expander_long_path_json(g, 4, 3, &mut out) }, ExpanderStatus::Ok);
    assert_eq!(take(out)["branch"], "path");
    assert_eq!(unsafe { expander_separator_json(g, &mut out) }, ExpanderStatus::Ok);
    assert_eq!(take(out)["size"], 2);
    unsafe { expander_graph_free(g) };
}

#[test]
fn generated_graph_and_spectrum() {
    let spec = CString::new(r#"{"kind": "random_regular", "n": 200, "d": 3, "seed": 7}"#).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { expander_graph_generate(spec.as_ptr(), &mut g) }, ExpanderStatus::Ok);
    assert_eq!(unsafe { expander_graph_m(g) }, 300);
    let mut mu = 0.0;
    assert_eq!(unsafe { expander_mu(g, 1, &mut mu) }, ExpanderStatus::Ok);
    assert!(mu > 0.0 && mu < 1.0);
    unsafe { expander_graph_free(g) };
}

#[test]
fn errors_are_reported() {
    let text = CString::new("0 1\n2 2\n").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { expander_graph_parse(text.as_ptr(), &mut g) }, ExpanderStatus::Parse);
    assert!(g.is_null());
    let msg = unsafe { CStr::from_ptr(expander_last_error()) }.to_str().unwrap().to_string();
    assert!(msg.contains("line 2"), "{msg}");
    let big = cycle(30);
    let mut a = 0.0;
    assert_eq!(unsafe { expander_alpha_star(big, &mut a) }, ExpanderStatus::ExactLimit);
    unsafe { expander_graph_free(big) };
    let bad = CString::new("{\"kind\": \"nope\"}").unwrap();
    assert_eq!(unsafe { expander_graph_generate(bad.as_ptr(), &mut g) }, ExpanderStatus::InvalidArgument);
    assert_eq!(unsafe { expander_long_path_json(ptr::null(), 1, 1, &mut ptr::null_mut()) }, ExpanderStatus::NullPointer);
    unsafe {
        expander_graph_free(ptr::null_mut());
        expander_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/expander.h")).unwrap();
    for f in [
        "expander_last_error",
        "expander_graph_from_edges",
        "expander_graph_parse",
        "expander_graph_generate",
        "expander_graph_free",
        "expander_graph_n",
        "expander_graph_m",
        "expander_graph_hash",
        "expander_alpha_star",
        "expander_mu",
        "expander_certify_json",
        "expander_separator_json",
        "expander_long_path_json",
        "expander_long_cycle_json",
        "expander_clique_minor_json",
        "expander_string_free",
        "expander_version",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from the header");
    }
}

/// Compiles and runs a C program against the static library when a C
/// compiler is on the path.
#[test]
fn c_program_links() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipped");
        return;
    }
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libexpander_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipped", lib.display());
        return;
    }
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let tmp = std::env::temp_dir().join(format!("expander_ffi_{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let src = tmp.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "expander.h"
int main(void) {
    size_t e[] = {0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 0};
    ExpanderGraph *g = NULL;
    if (expander_graph_from_edges(6, e, 6, &g) != EXPANDER_STATUS_OK) return 2;
    double a = 0;
    if (expander_alpha_star(g, &a) != EXPANDER_STATUS_OK) return 3;
    char *json = NULL;
    if (expander_long_cycle_json(g, 3, 2, &json) != EXPANDER_STATUS_OK) return 4;
    printf("%.6f %s\n", a, json);
    expander_string_free(json);
    expander_graph_free(g);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = tmp.join("main");
    let st = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(st.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("0.666667 "), "{text}");
    assert!(text.contains("\"length\":6"), "{text}");
}
