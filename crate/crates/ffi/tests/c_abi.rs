use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use prymkit_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(prym_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { prym_string_free(s) };
    out
}

#[test]
fn multiple_curve_group() {
    let mut d = ptr::null_mut();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(prym_descriptor_multiple_curve(2, 2, &mut d), PrymStatus::Ok);
        let mut cn = false;
        assert_eq!(prym_descriptor_is_cn(d, &mut cn), PrymStatus::Ok);
        assert!(cn);
        assert_eq!(prym_descriptor_pi0(d, &mut g), PrymStatus::Ok);
        let mut rank = 0;
        assert_eq!(prym_group_rank(g, &mut rank), PrymStatus::Ok);
        assert_eq!(rank, 4);
        let mut order = ptr::null_mut();
        assert_eq!(prym_group_order(g, &mut order), PrymStatus::Ok);
        assert_eq!(take(order), "16");
        prym_group_free(g);
        prym_descriptor_free(d);
    }
}

#[test]
fn descriptor_json_errors() {
    let mut d = ptr::null_mut();
    unsafe {
        let json = c(r#"{"n": 2, "g": 1, "components": [{"degree": "x"}]}"#);
        assert_eq!(
            prym_descriptor_from_json(json.as_ptr(), &mut d),
            PrymStatus::Schema
        );
        assert!(d.is_null());
        let json = c(r#"{"n": 3, "g": 0, "components": []}"#);
        assert_eq!(
            prym_descriptor_from_json(json.as_ptr(), &mut d),
            PrymStatus::InvalidInput
        );
        assert!(last_error().contains("g must be positive"));
        assert_eq!(
            prym_descriptor_from_json(ptr::null(), &mut d),
            PrymStatus::NullPointer
        );
    }
}

#[test]
fn order_two_kernel() {
    let json = c(r#"{"n": 2, "g": 1, "components": [
        {"degree": 2, "multiplicity": 1, "kernel_modulus": 2, "kernel_generators": [[1, 0]]}]}"#);
    let mut d = ptr::null_mut();
    let mut g = ptr::null_mut();
    let mut f = 0;
    unsafe {
        assert_eq!(
            prym_descriptor_from_json(json.as_ptr(), &mut d),
            PrymStatus::Ok
        );
        assert_eq!(prym_descriptor_pi0(d, &mut g), PrymStatus::Ok);
        assert_eq!(prym_group_invariant_factor(g, 0, &mut f), PrymStatus::Ok);
        assert_eq!(f, 2);
        assert_eq!(
            prym_group_invariant_factor(g, 1, &mut f),
            PrymStatus::OutOfRange
        );
        prym_group_free(g);
        prym_descriptor_free(d);
    }
}

#[test]
fn null_handles_are_rejected() {
    let mut rank = 0;
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(
            prym_group_rank(ptr::null(), &mut rank),
            PrymStatus::NullPointer
        );
        assert_eq!(
            prym_descriptor_pi0(ptr::null(), &mut g),
            PrymStatus::NullPointer
        );
        prym_group_free(ptr::null_mut());
        prym_descriptor_free(ptr::null_mut());
        prym_string_free(ptr::null_mut());
    }
}

#[test]
fn endoscopy_values() {
    let mut dim = 0;
    let mut vb = PrymVariantBound::default();
    unsafe {
        assert_eq!(prym_endoscopic_dim(6, 3, 2, &mut dim), PrymStatus::Ok);
        assert_eq!(dim, 11);
        assert_eq!(prym_endoscopic_dim(6, 4, 2, &mut dim), PrymStatus::Compute);
        assert_eq!(prym_variant_bound(6, 2, &mut vb), PrymStatus::Ok);
    }
    assert_eq!((vb.smallest_prime, vb.codimension, vb.bound), (2, 18, 36));
}

#[test]
fn batch_commands() {
    let input = c(r#"{"cover": {"f": ["1", "0", "1"]},
        "twisted": {"m": 1, "deg_m": 1, "coeffs": [{"u": ["0"], "v": ["-1"]}]}}"#);
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(
            prym_run_json(c("galois").as_ptr(), input.as_ptr(), &mut out),
            PrymStatus::Ok
        );
        let report = take(out);
        assert!(report.contains("\"trace_is_twice_u1\": true"), "{report}");
        assert_eq!(
            prym_run_json(c("nope").as_ptr(), input.as_ptr(), &mut out),
            PrymStatus::InvalidInput
        );
        assert_eq!(
            prym_run_json(c("pi0").as_ptr(), c("[").as_ptr(), &mut out),
            PrymStatus::Schema
        );
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(prym_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// `target/<profile>`, two levels above this test binary.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = profile_dir().join("libprymkit_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let bin = Path::new(env!("CARGO_TARGET_TMPDIR")).join("prymkit_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success());
    let run = Command::new(&bin).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
