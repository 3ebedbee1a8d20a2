use std::ffi::{CStr, CString};
use std::ptr;

use gray2_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { gray2_string_free(p) };
    s
}

fn gray(left: &str, right: &str, lax: bool) -> *mut Gray2TwoCat {
    let mut h = ptr::null_mut();
    let (l, r) = (cstr(left), cstr(right));
    let st = unsafe {
        if lax {
            gray2_gray_lax(l.as_ptr(), r.as_ptr(), &mut h)
        } else {
            gray2_gray_colax(l.as_ptr(), r.as_ptr(), &mut h)
        }
    };
    assert_eq!(st, Gray2Status::Ok);
    h
}

fn counts(h: *const Gray2TwoCat) -> (usize, usize, usize) {
    let (mut a, mut b, mut c) = (0, 0, 0);
    assert_eq!(unsafe { gray2_twocat_counts(h, &mut a, &mut b, &mut c) }, Gray2Status::Ok);
    (a, b, c)
}

#[test]
fn square_counts() {
    let h = gray("[1](0)", "[1](0)", false);
    let (objs, _, _) = counts(h);
    assert_eq!(objs, 4);
    unsafe { gray2_twocat_free(h) };
}

#[test]
fn json_roundtrip_preserves_isomorphism_type() {
    let h = gray("[1](1)", "[1](0)", false);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gray2_twocat_to_json(h, &mut s) }, Gray2Status::Ok);
    let json = cstr(&take_string(s));
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { gray2_twocat_from_json(json.as_ptr(), &mut back) }, Gray2Status::Ok);
    assert_eq!(counts(h), counts(back));
    let mut same = false;
    assert_eq!(unsafe { gray2_twocat_isomorphic(h, back, 1_000_000, &mut same) }, Gray2Status::Ok);
    assert!(same);
    unsafe {
        gray2_twocat_free(h);
        gray2_twocat_free(back);
    }
}

#[test]
fn malformed_json_is_a_parse_error() {
    let mut h = ptr::null_mut();
    let bad = cstr("{\"objects\": 3}");
    assert_eq!(unsafe { gray2_twocat_from_json(bad.as_ptr(), &mut h) }, Gray2Status::Parse);
    assert!(h.is_null());
    assert!(!unsafe { CStr::from_ptr(gray2_last_error()) }.to_bytes().is_empty());
}

#[test]
fn phi_of_arrow_is_the_two_cell() {
    let mut p = ptr::null_mut();
    let mut r = ptr::null_mut();
    let (a, b) = (cstr("[1](0)"), cstr("[1](1)"));
    unsafe {
        assert_eq!(gray2_phi_obj(a.as_ptr(), 1, &mut p), Gray2Status::Ok);
        assert_eq!(gray2_realize(b.as_ptr(), &mut r), Gray2Status::Ok);
        let mut same = false;
        assert_eq!(gray2_twocat_isomorphic(p, r, 1_000_000, &mut same), Gray2Status::Ok);
        assert!(same);
        gray2_twocat_free(p);
        gray2_twocat_free(r);
    }
}

#[test]
fn lax_and_colax_differ_only_by_orientation() {
    let colax = gray("[1](0)", "[1](0)", false);
    let lax = gray("[1](0)", "[1](0)", true);
    assert_eq!(counts(colax), counts(lax));
    let mut n = 0u64;
    assert_eq!(unsafe { gray2_count_two_functors(colax, lax, 1_000_000, &mut n) }, Gray2Status::Ok);
    assert!(n > 0);
    unsafe {
        gray2_twocat_free(colax);
        gray2_twocat_free(lax);
    }
}

#[test]
fn tiny_budget_is_reported() {
    let a = gray("[2](1,1)", "[1](1)", false);
    let mut n = 0u64;
    let st = unsafe { gray2_count_two_functors(a, a, 1, &mut n) };
    assert_eq!(st, Gray2Status::BudgetExceeded);
    unsafe { gray2_twocat_free(a) };
}

#[test]
fn dot_and_shuffles() {
    let h = gray("[1](0)", "[1](0)", false);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gray2_twocat_to_dot(h, &mut s) }, Gray2Status::Ok);
    assert!(take_string(s).starts_with("digraph"));
    unsafe { gray2_twocat_free(h) };
    assert_eq!(unsafe { gray2_shuffles_json(3, 2, &mut s) }, Gray2Status::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 10);
}

#[test]
fn verify_suite_reports_and_detects_corruption() {
    let suite = cstr("odot");
    let mut s = ptr::null_mut();
    let st = unsafe { gray2_verify_suite(suite.as_ptr(), ptr::null(), 10_000_000, &mut s) };
    assert_eq!(st, Gray2Status::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(v["passed"], true);

    let how = cstr("extra-object");
    let st = unsafe { gray2_verify_suite(suite.as_ptr(), how.as_ptr(), 10_000_000, &mut s) };
    assert_eq!(st, Gray2Status::CheckFailed);
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(v["passed"], false);

    let bogus = cstr("nope");
    assert_eq!(unsafe { gray2_verify_suite(bogus.as_ptr(), ptr::null(), 1, &mut s) }, Gray2Status::Parse);
}

#[test]
fn free_accepts_null() {
    unsafe {
        gray2_twocat_free(ptr::null_mut());
        gray2_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/gray2.h");
    let src = include_str!("../src/lib.rs");
    for line in src.lines() {
        let Some(rest) = line.trim_start().strip_prefix("pub ") else { continue };
        let rest = rest.trim_start_matches("unsafe ");
        if let Some(rest) = rest.strip_prefix("extern \"C\" fn ") {
            let name = rest.split('(').next().unwrap();
            assert!(header.contains(&format!("{name}(")), "{name} missing from header");
        }
    }
    assert!(header.contains("typedef struct Gray2TwoCat Gray2TwoCat;"));
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = std::process::Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(cc.status.success());
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let out = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c", "-I", include, "-"])
        .stdin(std::process::Stdio::piped())
        .spawn()
        .and_then(|mut child| {
            use std::io::Write;
            child.stdin.take().unwrap().write_all(b"#include \"gray2.h\"\nint main(void) { Gray2TwoCat *h = 0; size_t n; return gray2_twocat_counts(h, &n, &n, &n) == GRAY2_STATUS_OK; }\n")?;
            child.wait_with_output()
        })
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
