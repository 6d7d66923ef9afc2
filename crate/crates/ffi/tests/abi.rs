use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use unit_order_lab_ffi::*;

fn last_error() -> String {
    let p = uol_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn cat_map() -> *mut UolMatrix {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { uol_matrix_new(2, 1, 1, 1, &mut m) }, UolStatus::Ok);
    m
}

#[test]
fn scalar_queries() {
    assert!(uol_is_prime(1_000_000_007));
    assert!(!uol_is_prime(1));
    let mut out = 0u64;
    unsafe {
        assert_eq!(uol_pow_mod(7, 1_000_000, (1 << 32) + 15, &mut out), UolStatus::Ok);
        assert_eq!(out, 3_090_946_082);
        assert_eq!(uol_pow_mod(7, 2, 0, &mut out), UolStatus::InvalidInput);
        assert_eq!(uol_integer_order(2, 7, &mut out), UolStatus::Ok);
        assert_eq!(out, 3);
        assert_eq!(uol_integer_order(2, 10, &mut out), UolStatus::InvalidInput);
        assert!(last_error().contains("not coprime"));
        assert_eq!(uol_carmichael_lambda(561, &mut out), UolStatus::Ok);
        assert_eq!(out, 80);
        assert_eq!(uol_carmichael_lambda(0, &mut out), UolStatus::InvalidInput);
    }
}

#[test]
fn null_outputs_are_rejected() {
    unsafe {
        assert_eq!(uol_integer_order(2, 7, ptr::null_mut()), UolStatus::NullPointer);
        assert_eq!(uol_matrix_order_mod_n(ptr::null(), 7, &mut 0), UolStatus::NullPointer);
        uol_matrix_free(ptr::null_mut());
        uol_report_free(ptr::null_mut());
        uol_string_free(ptr::null_mut());
        assert_eq!(uol_report_prime_count(ptr::null()), 0);
    }
}

#[test]
fn matrix_handles() {
    let m = cat_map();
    unsafe {
        let mut ord = 0u64;
        assert_eq!(uol_matrix_order_mod_n(m, 77, &mut ord), UolStatus::Ok);
        assert_eq!(ord, 40);

        let mut rec = std::mem::zeroed::<UolPrimeRecord>();
        assert_eq!(uol_matrix_order_mod_p(m, 5, &mut rec), UolStatus::Ok);
        assert_eq!((rec.class_code as u8, rec.ord, rec.torus_order, rec.index), (b'R', 10, 0, 0));
        assert_eq!(uol_matrix_order_mod_p(m, 7, &mut rec), UolStatus::Ok);
        assert_eq!((rec.class_code as u8, rec.ord, rec.torus_order, rec.index), (b'I', 8, 8, 1));
        assert_eq!(uol_matrix_order_mod_p(m, 9, &mut rec), UolStatus::InvalidInput);

        let mut info = std::mem::zeroed::<UolFieldInfo>();
        assert_eq!(uol_matrix_field_info(m, &mut info), UolStatus::Ok);
        assert_eq!((info.trace, info.disc, info.field_disc, info.conductor), (3, 5, 5, 1));
        assert_eq!((info.unit_norm, info.power_index), (-1, 2));
        uol_matrix_free(m);

        let mut bad = ptr::null_mut();
        assert_eq!(uol_matrix_new(0, -1, 1, 0, &mut bad), UolStatus::InvalidInput);
        assert!(bad.is_null());
        assert!(last_error().contains("elliptic"));
        assert_eq!(uol_matrix_new(1, 1, 1, 1, &mut bad), UolStatus::InvalidInput);
        assert_eq!(uol_matrix_from_trace(-4, &mut bad), UolStatus::Ok);
        uol_matrix_free(bad);
    }
}

#[test]
fn reports() {
    let m = cat_map();
    let dir = tempfile::tempdir().unwrap();
    unsafe {
        let mut one = ptr::null_mut();
        let mut many = ptr::null_mut();
        assert_eq!(uol_scan_primes(m, 20_000, 1, &mut one), UolStatus::Ok);
        assert_eq!(uol_scan_primes(m, 20_000, 4, &mut many), UolStatus::Ok);
        assert_eq!(uol_report_prime_count(one), 2262);

        let mut rec = std::mem::zeroed::<UolPrimeRecord>();
        assert_eq!(uol_report_prime_record(one, 4, &mut rec), UolStatus::Ok);
        assert_eq!((rec.p, rec.ord), (11, 5));
        assert_eq!(uol_report_prime_record(one, 5000, &mut rec), UolStatus::InvalidInput);

        let paths: Vec<CString> = ["a.csv", "b.csv"]
            .iter()
            .map(|n| CString::new(dir.path().join(n).to_str().unwrap()).unwrap())
            .collect();
        assert_eq!(uol_report_write(one, UolFormat::Csv, paths[0].as_ptr()), UolStatus::Ok);
        assert_eq!(uol_report_write(many, UolFormat::Csv, paths[1].as_ptr()), UolStatus::Ok);
        let a = std::fs::read(dir.path().join("a.csv")).unwrap();
        assert_eq!(a, std::fs::read(dir.path().join("b.csv")).unwrap());
        assert!(a.starts_with(b"p,class,torus,ord,i_p,is_bad\n"));

        let missing = CString::new("/nonexistent-dir/x.csv").unwrap();
        assert_eq!(uol_report_write(one, UolFormat::Csv, missing.as_ptr()), UolStatus::Io);
        assert!(last_error().contains("/nonexistent-dir/x.csv"));

        let mut json = ptr::null_mut();
        assert_eq!(uol_report_to_json(one, &mut json), UolStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        uol_string_free(json);
        assert!(text.starts_with('{'));
        assert!(text.contains("\"partial\": false"));

        uol_report_free(one);
        uol_report_free(many);

        let mut comp = ptr::null_mut();
        assert_eq!(uol_scan_composites(m, 500, 2, &mut comp), UolStatus::Ok);
        uol_report_free(comp);

        let mut base = ptr::null_mut();
        assert_eq!(uol_scan_primes_base(2, 1000, 2, &mut base), UolStatus::Ok);
        // p = 2 divides the base
        assert_eq!(uol_report_prime_count(base), 167);
        uol_report_free(base);

        let mut over = ptr::null_mut();
        assert_eq!(uol_scan_primes(m, 1 << 40, 1, &mut over), UolStatus::ResourceLimit);
        assert!(over.is_null());
        uol_matrix_free(m);
    }
}

fn compiler() -> Option<String> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .map(str::to_owned)
}

#[test]
fn header_compiles_as_c() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; header check skipped");
        return;
    };
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(root.join("include"))
        .arg(root.join("tests/c/smoke.c"))
        .status()
        .unwrap();
    assert!(status.success());
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; link check skipped");
        return;
    };
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libunit_order_lab_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; link check skipped", lib.display());
        return;
    }
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("smoke");
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(root.join("include"))
        .arg(root.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert!(String::from_utf8_lossy(&run.stdout).contains("elliptic"));
}
