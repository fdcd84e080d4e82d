use moebius_ortho_ffi::*;
use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

fn c(re: f64, im: f64) -> MoComplex {
    MoComplex { re, im }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(mo_last_error()).to_string_lossy().into_owned() }
}

fn inversion() -> *mut MoMap {
    let mut m = ptr::null_mut();
    let s = unsafe { mo_map_new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), &mut m) };
    assert_eq!(s, MoStatus::Ok);
    m
}

#[test]
fn map_lifecycle() {
    let m = inversion();
    let mut v = c(0.0, 0.0);
    assert_eq!(unsafe { mo_map_apply(m, c(2.0, 0.0), &mut v) }, MoStatus::Ok);
    assert_eq!(v, c(0.5, 0.0));
    assert_eq!(unsafe { mo_map_apply(m, c(0.0, 0.0), &mut v) }, MoStatus::Pole);
    assert!(last_error().contains("pole"));
    let mut inv = ptr::null_mut();
    assert_eq!(unsafe { mo_map_inverse(m, &mut inv) }, MoStatus::Ok);
    assert_eq!(unsafe { mo_map_apply(inv, c(4.0, 0.0), &mut v) }, MoStatus::Ok);
    assert_eq!(v, c(0.25, 0.0));
    unsafe {
        mo_map_free(inv);
        mo_map_free(m);
        mo_map_free(ptr::null_mut());
    }
}

#[test]
fn degenerate_and_null() {
    let mut m = ptr::null_mut();
    let one = c(1.0, 0.0);
    assert_eq!(unsafe { mo_map_new(one, one, one, one, &mut m) }, MoStatus::DegenerateMap);
    assert!(m.is_null());
    assert_eq!(unsafe { mo_map_new(one, one, one, c(2.0, 0.0), ptr::null_mut()) }, MoStatus::NullPointer);
    let mut v = c(0.0, 0.0);
    assert_eq!(unsafe { mo_map_apply(ptr::null(), one, &mut v) }, MoStatus::NullPointer);
}

#[test]
fn chebyshev_inversion_table() {
    let m = inversion();
    let name = CString::new("chebyshev").unwrap();
    let mut seq = ptr::null_mut();
    assert_eq!(unsafe { mo_sequence_new(name.as_ptr(), ptr::null(), 0, m, 4, &mut seq) }, MoStatus::Ok);
    let mut buf = [c(0.0, 0.0); 5];
    let mut len = 0;
    // 8 - 8x² + x⁴
    assert_eq!(unsafe { mo_sequence_coeffs(seq, 4, buf.as_mut_ptr(), 5, &mut len) }, MoStatus::Ok);
    assert_eq!(len, 5);
    let want = [8.0, 0.0, -8.0, 0.0, 1.0];
    for k in 0..5 {
        assert!((buf[k].re - want[k]).abs() < 1e-12 && buf[k].im.abs() < 1e-12, "{k}: {:?}", buf[k]);
    }
    assert_eq!(unsafe { mo_sequence_coeffs(seq, 4, buf.as_mut_ptr(), 2, &mut len) }, MoStatus::BufferTooSmall);
    assert_eq!(len, 5);
    assert_eq!(unsafe { mo_sequence_coeffs(seq, 9, buf.as_mut_ptr(), 5, &mut len) }, MoStatus::InvalidArgument);
    let mut v = c(0.0, 0.0);
    assert_eq!(unsafe { mo_sequence_eval(seq, 4, c(1.0, 0.0), &mut v) }, MoStatus::Ok);
    assert!((v.re - 1.0).abs() < 1e-12);
    let mut roots = [c(0.0, 0.0); 4];
    assert_eq!(unsafe { mo_sequence_roots(seq, 4, roots.as_mut_ptr(), 4, &mut len) }, MoStatus::Ok);
    assert_eq!(len, 4);
    for z in roots {
        // reciprocals of the Chebyshev nodes
        let t = 1.0 / z.re;
        let tt = 8.0 * t.powi(4) - 8.0 * t * t + 1.0;
        assert!(tt.abs() < 1e-10 && z.im.abs() < 1e-10);
    }
    unsafe {
        mo_sequence_free(seq);
        mo_map_free(m);
    }
}

#[test]
fn gram_through_ffi() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { mo_map_cayley(&mut m) }, MoStatus::Ok);
    let name = CString::new("jacobi").unwrap();
    let params = [c(0.5, 0.0), c(-0.25, 0.0)];
    let mut seq = ptr::null_mut();
    assert_eq!(unsafe { mo_sequence_new(name.as_ptr(), params.as_ptr(), 2, m, 5, &mut seq) }, MoStatus::Ok);
    let (mut off, mut diag) = (1.0, 1.0);
    assert_eq!(unsafe { mo_sequence_gram(seq, 0, &mut off, &mut diag) }, MoStatus::Ok);
    assert!(off < 1e-8 && diag < 1e-7, "{off} {diag}");
    let mut w = c(0.0, 0.0);
    assert_eq!(unsafe { mo_sequence_weight(seq, 1, 2, c(0.3, 0.4), &mut w) }, MoStatus::Ok);
    assert!(w.re.is_finite() && w.im.is_finite());
    unsafe {
        mo_sequence_free(seq);
        mo_map_free(m);
    }
}

#[test]
fn unknown_family() {
    let m = inversion();
    let name = CString::new("legendre-q").unwrap();
    let mut seq = ptr::null_mut();
    assert_eq!(unsafe { mo_sequence_new(name.as_ptr(), ptr::null(), 0, m, 3, &mut seq) }, MoStatus::UnknownFamily);
    assert!(last_error().contains("legendre-q"));
    unsafe { mo_map_free(m) };
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/moebius_ortho.h")
}

#[test]
fn header_declares_api() {
    let h = std::fs::read_to_string(header()).unwrap();
    for sym in [
        "typedef struct MoMap MoMap;",
        "typedef struct MoSequence MoSequence;",
        "MO_STATUS_OK = 0",
        "mo_last_error(void)",
        "mo_map_new(",
        "mo_sequence_new(",
        "mo_sequence_coeffs(",
        "mo_sequence_gram(",
        "mo_sequence_roots(",
    ] {
        assert!(h.contains(sym), "missing {sym}");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "moebius_ortho.h"

int main(void) {
    MoComplex z = {0.0, 0.0}, one = {1.0, 0.0};
    MoMap *m = NULL;
    if (mo_map_new(z, one, one, z, &m) != MO_STATUS_OK) return 1;
    MoSequence *s = NULL;
    if (mo_sequence_new("chebyshev", NULL, 0, m, 4, &s) != MO_STATUS_OK) return 2;
    MoComplex buf[5];
    size_t len = 0;
    if (mo_sequence_coeffs(s, 4, buf, 5, &len) != MO_STATUS_OK || len != 5) return 3;
    for (size_t k = 0; k < len; k++) printf("%.1f ", buf[k].re);
    printf("\n");
    MoComplex a = {1.0, 0.0};
    MoMap *bad = NULL;
    if (mo_map_new(a, a, a, a, &bad) != MO_STATUS_DEGENERATE_MAP) return 4;
    mo_sequence_free(s);
    mo_map_free(m);
    return 0;
}
"#;

/// Builds the static library, then compiles and runs a C caller against the header. Needs
/// a C compiler (`$CC` or `cc`).
#[test]
fn c_caller() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler; skipped");
        return;
    }
    // `cargo test` builds only the rlib, so the archive comes from a separate build
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("c_caller");
    let target = dir.join("target");
    let build = Command::new(env!("CARGO"))
        .args(["build", "--quiet", "--offline", "-p", "moebius-ortho-ffi", "--lib", "--target-dir"])
        .arg(&target)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap();
    assert!(build.status.success(), "{}", String::from_utf8_lossy(&build.stderr));
    let lib = target.join("debug/libmoebius_ortho_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let src = dir.join("main.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let bin = dir.join("main");
    let out = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&bin)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "8.0 0.0 -8.0 0.0 1.0");
}
