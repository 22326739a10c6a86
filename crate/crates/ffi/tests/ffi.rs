use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use mertens_ffi::*;

fn table() -> CString {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_2000.txt");
    CString::new(p.to_str().unwrap()).unwrap()
}

fn last_error() -> String {
    let p = mertens_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn mu_and_errors() {
    let mut v = 0i8;
    unsafe {
        assert_eq!(mertens_mu(6, &mut v), MertensStatus::Ok);
        assert_eq!(v, 1);
        assert_eq!(mertens_mu(0, &mut v), MertensStatus::Domain);
        assert!(!last_error().is_empty());
        assert_eq!(mertens_mu(6, ptr::null_mut()), MertensStatus::NullPointer);
    }
}

#[test]
fn series_round_trip() {
    unsafe {
        let mut s: *mut MertensSeries = ptr::null_mut();
        assert_eq!(mertens_series_new(1000, 1, MertensKind::Moebius, &mut s), MertensStatus::Ok);
        assert_eq!(mertens_series_x_max(s), 1000);
        let mut m = 0i64;
        assert_eq!(mertens_series_value_at(s, 10, &mut m), MertensStatus::Ok);
        assert_eq!(m, -1);
        assert_eq!(mertens_series_value_at(s, 1000, &mut m), MertensStatus::Ok);
        assert_eq!(m, 2);
        assert_eq!(mertens_series_value_at(s, 1001, &mut m), MertensStatus::Domain);
        let mut d = 0.0;
        assert_eq!(mertens_log_density(s, &mut d), MertensStatus::Ok);
        assert_eq!(d, 1.0);
        assert_eq!(mertens_weak_mertens_ratio(s, 3.0, &mut d), MertensStatus::Ok);
        assert_eq!(d, 0.0);
        mertens_series_free(s);

        let mut l: *mut MertensSeries = ptr::null_mut();
        assert_eq!(mertens_series_new(9, 1, MertensKind::Liouville, &mut l), MertensStatus::Ok);
        assert_eq!(mertens_series_value_at(l, 9, &mut m), MertensStatus::Ok);
        assert_eq!(m, -1);
        mertens_series_free(l);
        mertens_series_free(ptr::null_mut());
        assert_eq!(mertens_series_x_max(ptr::null()), 0);
    }
}

#[test]
fn coarse_series_is_rejected() {
    unsafe {
        let mut s: *mut MertensSeries = ptr::null_mut();
        assert_eq!(mertens_series_new(1000, 10, MertensKind::Moebius, &mut s), MertensStatus::Ok);
        let mut d = 0.0;
        assert_eq!(mertens_log_density(s, &mut d), MertensStatus::Numerics);
        mertens_series_free(s);
    }
}

#[test]
fn zeros_handle() {
    unsafe {
        let mut z: *mut MertensZeroSet = ptr::null_mut();
        assert_eq!(mertens_zeros_load(table().as_ptr(), 100, &mut z), MertensStatus::Ok);
        assert_eq!(mertens_zeros_len(z), 100);
        let (mut g, mut re, mut im) = (0.0, 0.0, 0.0);
        assert_eq!(mertens_zeros_record(z, 0, &mut g, &mut re, &mut im), MertensStatus::Ok);
        assert!((g - 14.134725141734693).abs() < 1e-9);
        assert!((re - 0.783296511867).abs() < 1e-5 && (im - 0.124699829748).abs() < 1e-5);
        assert_eq!(
            mertens_zeros_record(z, 100, &mut g, &mut re, &mut im),
            MertensStatus::Domain
        );
        let mut v = 0.0;
        assert_eq!(mertens_nu_hat(z, 0.0, 100, &mut v), MertensStatus::Ok);
        assert_eq!(v, 1.0);
        assert_eq!(mertens_beta(z, &mut v), MertensStatus::Ok);
        assert!(v > 0.02 && v < 0.04);
        assert_eq!(mertens_zero_sum(z, 1000.5, 1e6, &mut v), MertensStatus::Domain);
        let mut err = 0.0;
        assert_eq!(
            mertens_tail_probability(z, 100, 0.5, 2000, 7, &mut v, &mut err),
            MertensStatus::Ok
        );
        assert!(v > 0.0 && v < 0.01 && err < v);
        mertens_zeros_free(z);
    }
}

#[test]
fn missing_table() {
    unsafe {
        let mut z: *mut MertensZeroSet = ptr::null_mut();
        let p = CString::new("/nonexistent/zeros.txt").unwrap();
        assert_eq!(mertens_zeros_load(p.as_ptr(), 0, &mut z), MertensStatus::MissingFile);
        assert!(z.is_null());
        assert!(last_error().contains("nonexistent"));
        assert_eq!(mertens_zeros_load(ptr::null(), 0, &mut z), MertensStatus::NullPointer);
    }
}

#[test]
fn header_declares_every_export() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/mertens.h")).unwrap();
    let src = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|s| s.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        return;
    };
    if !cc.status.success() {
        return;
    }
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let tmp = std::env::temp_dir().join(format!("mertens_ffi_{}.c", std::process::id()));
    std::fs::write(
        &tmp,
        "#include \"mertens.h\"\nint main(void) { int8_t m; return mertens_mu(6, &m) == MERTENS_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let status = Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&tmp)
        .status()
        .unwrap();
    let _ = std::fs::remove_file(&tmp);
    assert!(status.success());
}
