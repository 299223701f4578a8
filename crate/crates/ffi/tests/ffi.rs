use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use soft_bitop_ffi::*;

const SQUARE: &str = r#"{
    "universe": ["0", "1"],
    "params": ["a", "b"],
    "sections": {"a": ["0", "1"], "b": ["0", "1"]},
    "tau1": {"generate": "canonical", "subbases": {"a": [["0"], ["1"]], "b": [["0"], ["1"]]}},
    "tau2": {"generate": "canonical", "subbases": {"a": [["0"], ["1"]], "b": [["0"], ["1"]]}}
}"#;

const ONE_PARAMETER: &str = r#"{
    "universe": ["p", "q"],
    "params": ["t"],
    "sections": {"t": ["p", "q"]},
    "tau1": {"opens": [{"t": ["p"]}, {"t": ["q"]}]},
    "tau2": {"opens": [{"t": ["p"]}, {"t": ["q"]}]}
}"#;

fn load(json: &str) -> *mut SbSpace {
    let c = CString::new(json).unwrap();
    let mut space = ptr::null_mut();
    let status = unsafe { sb_space_from_json(c.as_ptr(), &mut space) };
    assert_eq!(status, SbStatus::Ok, "{}", last_error());
    assert!(!space.is_null());
    space
}

fn last_error() -> String {
    let p = sb_last_error();
    if p.is_null() {
        String::new()
    } else {
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }
}

fn flag(f: impl FnOnce(*mut bool) -> SbStatus) -> bool {
    let mut out = false;
    assert_eq!(f(&mut out), SbStatus::Ok, "{}", last_error());
    out
}

#[test]
fn separation_queries() {
    let space = load(SQUARE);
    unsafe {
        let mut n = 0;
        assert_eq!(sb_space_se_count(space, &mut n), SbStatus::Ok);
        assert_eq!(n, 4);
        assert_eq!(sb_space_param_count(space, &mut n), SbStatus::Ok);
        assert_eq!(n, 2);
        assert!(flag(|o| sb_space_soft_separation(space, SB_AXIOM_T1, o)));
        assert!(!flag(|o| sb_space_soft_separation(space, SB_AXIOM_T2, o)));
        assert!(flag(|o| sb_space_induced_separation(space, SB_AXIOM_T2, o)));
        assert!(flag(|o| sb_space_component_separation(
            space,
            1,
            SB_AXIOM_T2,
            o
        )));
        let mut out = false;
        assert_eq!(
            sb_space_component_separation(space, 5, SB_AXIOM_T0, &mut out),
            SbStatus::Input
        );
        assert_eq!(
            sb_space_soft_separation(space, 9, &mut out),
            SbStatus::Input
        );
        assert_eq!(last_error(), "unknown axiom code 9");
        sb_space_free(space);
    }
}

#[test]
fn verify_reports_failures() {
    let square = load(SQUARE);
    let one = load(ONE_PARAMETER);
    unsafe {
        let mut failures = 0;
        assert_eq!(
            sb_space_verify(square, &mut failures),
            SbStatus::InvariantFailure
        );
        assert_eq!(failures, 2);
        assert!(last_error().contains("component-to-soft-t2"));
        assert_eq!(sb_space_verify(one, &mut failures), SbStatus::Ok);
        assert_eq!(failures, 0);
        assert_eq!(sb_space_verify(one, ptr::null_mut()), SbStatus::Ok);
        sb_space_free(square);
        sb_space_free(one);
    }
}

#[test]
fn report_matches_cli() {
    let space = load(SQUARE);
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(sb_space_report_json(space, false, &mut s), SbStatus::Ok);
        let text = CStr::from_ptr(s).to_str().unwrap().to_string();
        sb_string_free(s);
        assert_eq!(text, soft_bitop::cli::cmd_check(SQUARE).unwrap().to_json());
        assert_eq!(sb_space_report_json(space, true, &mut s), SbStatus::Ok);
        assert!(CStr::from_ptr(s)
            .to_str()
            .unwrap()
            .contains("\"command\": \"verify\""));
        sb_string_free(s);
        sb_space_free(space);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut space = ptr::null_mut();
        assert_eq!(
            sb_space_from_json(ptr::null(), &mut space),
            SbStatus::NullPointer
        );
        let bad = CString::new(r#"{"universe": ["0"], "params": ["a"], "sections": {"a": ["9"]}}"#)
            .unwrap();
        assert_eq!(
            sb_space_from_json(bad.as_ptr(), &mut space),
            SbStatus::Input
        );
        assert_eq!(last_error(), "sections.a: unknown element \"9\"");
        assert!(space.is_null());
        let invalid = [0xffu8, 0xfe, 0];
        assert_eq!(
            sb_space_from_json(invalid.as_ptr().cast(), &mut space),
            SbStatus::Utf8
        );

        let wide: Vec<String> = (0..21).map(|i| format!("\"p{i}\"")).collect();
        let sections: Vec<String> = (0..21)
            .map(|i| format!("\"p{i}\": [\"0\", \"1\"]"))
            .collect();
        let json = format!(
            r#"{{"universe": ["0", "1"], "params": [{}], "sections": {{{}}}, "tau1": {{"opens": []}}, "tau2": {{"opens": []}}}}"#,
            wide.join(","),
            sections.join(",")
        );
        let c = CString::new(json).unwrap();
        assert_eq!(
            sb_space_from_json(c.as_ptr(), &mut space),
            SbStatus::Capacity,
            "{}",
            last_error()
        );

        let mut n = 0;
        assert_eq!(
            sb_space_se_count(ptr::null(), &mut n),
            SbStatus::NullPointer
        );
        sb_space_free(ptr::null_mut());
        sb_string_free(ptr::null_mut());
    }
}

#[test]
fn symbolic_only_description_has_no_space() {
    let space = load(
        r#"{"universe": ["0", "1"], "symbolic": {"target": {"default": ["0", "1"]}, "template": {"at_index": ["1"], "default": ["0"]}}}"#,
    );
    unsafe {
        let mut n = 0;
        assert_eq!(sb_space_se_count(space, &mut n), SbStatus::Input);
        let mut s = ptr::null_mut();
        assert_eq!(sb_space_report_json(space, false, &mut s), SbStatus::Ok);
        assert!(CStr::from_ptr(s)
            .to_str()
            .unwrap()
            .contains("symbolic-finite-subcover"));
        sb_string_free(s);
        sb_space_free(space);
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/soft_bitop.h"),
    )
    .unwrap();
    for name in [
        "typedef struct SbSpace SbSpace;",
        "SB_STATUS_CAPACITY = 3",
        "sb_space_from_json",
        "sb_space_free",
        "sb_space_se_count",
        "sb_space_soft_separation",
        "sb_space_induced_separation",
        "sb_space_component_separation",
        "sb_space_verify",
        "sb_space_report_json",
        "sb_string_free",
        "sb_last_error",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let profile_dir = tmp.parent().unwrap().join(if cfg!(debug_assertions) {
        "debug"
    } else {
        "release"
    });
    let lib = profile_dir.join("libsoft_bitop_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let exe = tmp.join("sb_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("cc runs");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "se=4 soft_t0=0 induced_t2=1 report=1\nbad=2\n"
    );
}
