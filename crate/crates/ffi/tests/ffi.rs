use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use hopfspecies_ffi::*;

const STAR: &str = r#"{"blocks":[["a"],["b"],["c"]],"edges":[[0,1],[0,2]]}"#;
const CHAIN2: &str = r#"{"classes":[["a"],["b"]],"covers":[[0,1]]}"#;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    hs_string_free(p);
    s
}

fn last_error() -> String {
    let p = hs_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn chromatic_of_star() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(hs_graph_from_json(c(STAR).as_ptr(), &mut g), HsStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(hs_chromatic(g, c("1").as_ptr(), &mut out), HsStatus::Ok);
        assert_eq!(take(out), r#"{"coeffs":["0","1","-2","1"]}"#);
        let mut ao = 0;
        assert_eq!(hs_acyclic_orientations(g, &mut ao), HsStatus::Ok);
        assert_eq!(ao, 4);
        hs_graph_free(g);
    }
}

#[test]
fn ehrhart_and_phi_of_chain() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(hs_poset_from_json(c(CHAIN2).as_ptr(), &mut t), HsStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(hs_ehrhart(t, c("-1").as_ptr(), &mut out), HsStatus::Ok);
        assert_eq!(take(out), r#"{"coeffs":["0","1/2","1/2"]}"#);
        assert_eq!(hs_phi_ehr(t, c("1").as_ptr(), &mut out), HsStatus::Ok);
        assert_eq!(take(out), r#"[{"coeff":"1","key":[["a"],["b"]]}]"#);
        let mut ho = 0;
        assert_eq!(hs_heap_orders(t, &mut ho), HsStatus::Ok);
        assert_eq!(ho, 1);
        hs_poset_free(t);
    }
}

#[test]
fn phi_chr_of_edge() {
    unsafe {
        let mut g = ptr::null_mut();
        let edge = c(r#"{"blocks":[["a"],["b"]],"edges":[[0,1]]}"#);
        assert_eq!(hs_graph_from_json(edge.as_ptr(), &mut g), HsStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(hs_phi_chr(g, c("1").as_ptr(), &mut out), HsStatus::Ok);
        assert_eq!(
            take(out),
            r#"[{"coeff":"1","key":[["a"],["b"]]},{"coeff":"1","key":[["b"],["a"]]}]"#
        );
        hs_graph_free(g);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut t = ptr::null_mut();
        let cyc = c(r#"{"classes":[["a"],["b"]],"covers":[[0,1],[1,0]]}"#);
        assert_eq!(hs_poset_from_json(cyc.as_ptr(), &mut t), HsStatus::Domain);
        assert!(last_error().contains("cycle"));
        assert!(t.is_null());

        let mut g = ptr::null_mut();
        assert_eq!(hs_graph_from_json(c(CHAIN2).as_ptr(), &mut g), HsStatus::WrongKind);
        assert_eq!(hs_graph_from_json(c("{").as_ptr(), &mut g), HsStatus::Parse);
        assert_eq!(hs_graph_from_json(ptr::null(), &mut g), HsStatus::NullPointer);

        let big: Vec<String> = (0..9).map(|i| format!(r#"["v{i}"]"#)).collect();
        let big = c(&format!(r#"{{"blocks":[{}],"edges":[]}}"#, big.join(",")));
        assert_eq!(hs_graph_from_json(big.as_ptr(), &mut g), HsStatus::Capacity);

        assert_eq!(hs_graph_from_json(c(STAR).as_ptr(), &mut g), HsStatus::Ok);
        assert!(hs_last_error().is_null());
        let mut out = ptr::null_mut();
        assert_eq!(hs_chromatic(g, c("1/0").as_ptr(), &mut out), HsStatus::Parse);
        assert_eq!(hs_chromatic(ptr::null(), c("1").as_ptr(), &mut out), HsStatus::NullPointer);
        hs_graph_free(g);
        hs_graph_free(ptr::null_mut());
        hs_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let h = std::fs::read_to_string(dir.join("include/hopfspecies.h")).unwrap();
    for f in [
        "hs_graph_from_json",
        "hs_graph_free",
        "hs_poset_from_json",
        "hs_poset_free",
        "hs_chromatic",
        "hs_ehrhart",
        "hs_phi_chr",
        "hs_phi_ehr",
        "hs_acyclic_orientations",
        "hs_heap_orders",
        "hs_string_free",
        "hs_last_error",
        "hs_version",
        "HS_STATUS_CAPACITY",
        "typedef struct HsGraph HsGraph",
    ] {
        assert!(h.contains(f), "{f} missing from header");
    }
}

/// Compiles and runs a C program against the static library when a C
/// compiler is on the path.
#[test]
fn c_program_links() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libhopfspecies_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let out = std::env::temp_dir().join(format!("hs_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stdout));
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(stdout.starts_with(r#"{"coeffs":["0","1","-2","1"]}"#));
}
