use std::ffi::{c_char, CStr};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use opineq_ffi::*;

fn matrix(rows: usize, cols: usize, entries: &[f64]) -> *mut OpineqMatrix {
    let mut m = ptr::null_mut();
    let status = unsafe { opineq_matrix_new(rows, cols, entries.as_ptr(), &mut m) };
    assert_eq!(status, OpineqStatus::Ok, "{}", last_error());
    assert!(!m.is_null());
    m
}

fn real(rows: usize, cols: usize, values: &[f64]) -> *mut OpineqMatrix {
    let entries: Vec<f64> = values.iter().flat_map(|&v| [v, 0.0]).collect();
    matrix(rows, cols, &entries)
}

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    unsafe {
        opineq_last_error_message(buf.as_mut_ptr(), buf.len());
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

#[test]
fn version_and_defaults() {
    let v = unsafe { CStr::from_ptr(opineq_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    let t = opineq_default_tolerances();
    assert_eq!((t.eig_tol, t.radius_tol, t.slack_tol), (1e-12, 1e-8, 1e-7));
}

#[test]
fn shape_norm_and_singular_values() {
    let m = real(2, 3, &[3.0, 0.0, 0.0, 0.0, 4.0, 0.0]);
    unsafe {
        let (mut r, mut c) = (0, 0);
        assert_eq!(opineq_matrix_shape(m, &mut r, &mut c), OpineqStatus::Ok);
        assert_eq!((r, c), (2, 3));

        let mut norm = 0.0;
        assert_eq!(opineq_operator_norm(m, &mut norm), OpineqStatus::Ok);
        assert!((norm - 4.0).abs() < 1e-12);

        let mut buf = [0.0; 1];
        let mut written = 0;
        assert_eq!(
            opineq_singular_values(m, buf.as_mut_ptr(), buf.len(), &mut written),
            OpineqStatus::BufferTooSmall
        );
        assert_eq!(written, 2);

        let mut buf = [0.0; 4];
        assert_eq!(
            opineq_singular_values(m, buf.as_mut_ptr(), buf.len(), &mut written),
            OpineqStatus::Ok
        );
        assert_eq!(written, 2);
        assert!((buf[0] - 4.0).abs() < 1e-12 && (buf[1] - 3.0).abs() < 1e-12);
        opineq_matrix_free(m);
    }
}

#[test]
fn radius_encloses_known_value() {
    // w([[2,1],[0,2]]) = 2 + 1/2.
    let m = real(2, 2, &[2.0, 1.0, 0.0, 2.0]);
    let mut r = OpineqRadius::default();
    unsafe {
        assert_eq!(opineq_numerical_radius(m, ptr::null(), &mut r), OpineqStatus::Ok);
        opineq_matrix_free(m);
    }
    assert!(r.lower <= 2.5 + 1e-12 && 2.5 - 1e-12 <= r.upper, "{r:?}");
    assert!(r.upper - r.lower <= 1e-8 * (1.0 + r.lower));
    assert_eq!(r.converged, 1);
}

#[test]
fn complex_entries_are_interleaved() {
    // i * I has norm 1 and numerical radius 1.
    let m = matrix(2, 2, &[0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    let mut r = OpineqRadius::default();
    unsafe {
        assert_eq!(opineq_numerical_radius(m, ptr::null(), &mut r), OpineqStatus::Ok);
        opineq_matrix_free(m);
    }
    assert!((r.lower - 1.0).abs() < 1e-9 && (r.upper - 1.0).abs() < 1e-8);
}

#[test]
fn bound_evaluation() {
    let a = real(2, 2, &[2.0, 1.0, 0.0, 2.0]);
    let b = real(2, 2, &[1.0, 0.0, 1.0, 1.0]);
    let ops = [a as *const OpineqMatrix, b as *const OpineqMatrix];
    let tol = opineq_default_tolerances();
    let mut out = OpineqBoundResult::default();
    unsafe {
        for id in ["B5", "base-tri", "B12", "B1"] {
            let id = format!("{id}\0");
            let status = opineq_evaluate_bound(id.as_ptr().cast(), ops.as_ptr(), 2, &tol, &mut out);
            assert_eq!(status, OpineqStatus::Ok, "{}", last_error());
            assert_eq!(out.holds, 1);
            assert!((out.slack - (out.rhs - out.lhs)).abs() < 1e-12);
        }
        assert_eq!(last_error(), "");

        let status = opineq_evaluate_bound(c"B7".as_ptr(), ops.as_ptr(), 2, &tol, &mut out);
        assert_eq!(status, OpineqStatus::DimensionMismatch);
        assert!(last_error().contains("B7"));

        let status = opineq_evaluate_bound(c"B99".as_ptr(), ops.as_ptr(), 2, &tol, &mut out);
        assert_eq!(status, OpineqStatus::UnknownBound);

        let bad = OpineqTolerances { slack_tol: -1.0, ..tol };
        let status = opineq_evaluate_bound(c"B5".as_ptr(), ops.as_ptr(), 2, &bad, &mut out);
        assert_eq!(status, OpineqStatus::InvalidArgument);
        assert!(last_error().contains("slack_tol"));

        opineq_matrix_free(a);
        opineq_matrix_free(b);
    }
}

#[test]
fn invalid_inputs() {
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(opineq_matrix_new(2, 2, ptr::null(), &mut m), OpineqStatus::NullPointer);
        assert!(m.is_null());
        assert_eq!(
            opineq_matrix_new(0, 2, [0.0].as_ptr(), &mut m),
            OpineqStatus::InvalidArgument
        );
        let nan = [f64::NAN, 0.0];
        assert_eq!(
            opineq_matrix_new(1, 1, nan.as_ptr(), &mut m),
            OpineqStatus::InvalidArgument
        );
        assert!(last_error().contains("non-finite"));
        assert_eq!(
            opineq_matrix_new(usize::MAX, 2, nan.as_ptr(), &mut m),
            OpineqStatus::InvalidArgument
        );

        let mut norm = 0.0;
        assert_eq!(opineq_operator_norm(ptr::null(), &mut norm), OpineqStatus::NullPointer);
        assert_eq!(last_error(), "`m` is null");

        let rect = real(1, 2, &[1.0, 2.0]);
        let mut r = OpineqRadius::default();
        assert_eq!(
            opineq_numerical_radius(rect, ptr::null(), &mut r),
            OpineqStatus::DimensionMismatch
        );
        assert_eq!(
            opineq_numerical_radius(rect, ptr::null(), ptr::null_mut()),
            OpineqStatus::NullPointer
        );

        let ops = [rect as *const OpineqMatrix, ptr::null()];
        let mut out = OpineqBoundResult::default();
        let status = opineq_evaluate_bound(c"B5".as_ptr(), ops.as_ptr(), 2, ptr::null(), &mut out);
        assert_eq!(status, OpineqStatus::NullPointer);
        assert_eq!(last_error(), "`ops[1]` is null");

        opineq_matrix_free(rect);
        opineq_matrix_free(ptr::null_mut());
    }
}

#[test]
fn error_message_truncates() {
    unsafe {
        let mut norm = 0.0;
        opineq_operator_norm(ptr::null(), &mut norm);
        let full = opineq_last_error_message(ptr::null_mut(), 0);
        let mut buf = [0x7f as c_char; 4];
        assert_eq!(opineq_last_error_message(buf.as_mut_ptr(), buf.len()), full);
        assert_eq!(CStr::from_ptr(buf.as_ptr()).to_bytes(), b"`m`");
    }
}

#[test]
fn errors_are_per_thread() {
    unsafe {
        let mut norm = 0.0;
        opineq_operator_norm(ptr::null(), &mut norm);
    }
    let other = std::thread::spawn(last_error).join().unwrap();
    assert_eq!(other, "");
    assert!(!last_error().is_empty());
}

fn target_dir() -> PathBuf {
    // tests live in <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_is_current() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/opineq.h")).unwrap();
    for name in [
        "opineq_version",
        "opineq_default_tolerances",
        "opineq_last_error_message",
        "opineq_matrix_new",
        "opineq_matrix_free",
        "opineq_matrix_shape",
        "opineq_operator_norm",
        "opineq_singular_values",
        "opineq_numerical_radius",
        "opineq_evaluate_bound",
        "OPINEQ_STATUS_BUFFER_TOO_SMALL = 6",
        "typedef struct OpineqMatrix OpineqMatrix;",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

/// Compiles and runs a C program against the static library when a C
/// compiler is available.
#[test]
fn c_smoke_program() {
    let Some(cc) = ["cc", "gcc", "clang"].into_iter().find(|c| {
        Command::new(c)
            .arg("--version")
            .output()
            .is_ok_and(|o| o.status.success())
    }) else {
        eprintln!("no C compiler found, skipping");
        return;
    };
    let lib = target_dir().join("libopineq_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built, skipping", lib.display());
        return;
    }
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let tmp = tempfile::tempdir().unwrap();
    let exe = tmp.path().join("smoke");
    let build = Command::new(cc)
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(build.status.success(), "{}", String::from_utf8_lossy(&build.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
