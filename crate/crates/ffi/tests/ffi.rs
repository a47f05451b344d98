//! Calls through the C ABI, from Rust and from a compiled C program.

use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use schurlab_ffi::*;

fn last_error() -> String {
    let p = schurlab_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn simplex_config(d: usize) -> *mut SchurlabConfig {
    let cfg = schurlab_core::geom::regular_unit_simplex(d, d + 1).unwrap();
    let coords: Vec<f64> = cfg.points().iter().flat_map(|p| p.iter().copied()).collect();
    let mut out = ptr::null_mut();
    let status = unsafe { schurlab_config_new_euclidean(coords.as_ptr(), d + 1, d, &mut out) };
    assert_eq!(status, SchurlabStatus::Ok);
    out
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(schurlab_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn simplex_audit_through_handles() {
    let cfg = simplex_config(4);
    unsafe {
        assert_eq!(schurlab_config_len(cfg), 5);
        assert_eq!(schurlab_config_dim(cfg), 4);
        let mut count = 0;
        assert_eq!(schurlab_count_cliques(cfg, 4, 0.0, &mut count), SchurlabStatus::Ok);
        assert_eq!(count, 5);
        let mut audit = SchurlabAudit::default();
        assert_eq!(schurlab_audit(cfg, 0, 0.0, &mut audit), SchurlabStatus::Ok);
        assert_eq!((audit.cliques, audit.bound, audit.min_pairwise_intersection), (5, 5, 3));
        assert!(audit.passed && audit.in_scope);
        let mut center = [f64::NAN; 4];
        let mut radius = 0.0;
        assert_eq!(schurlab_min_enclosing_ball(cfg, center.as_mut_ptr(), 4, &mut radius), SchurlabStatus::Ok);
        assert!((radius - (0.4f64).sqrt()).abs() < 1e-12);
        assert!(center.iter().all(|c| c.abs() < 1e-12));
        schurlab_config_free(cfg);
    }
}

#[test]
fn json_configurations_load() {
    let json = CString::new(r#"{"space":{"type":"euclidean","dim":2},"points":[[0,0],[1,0],[0.5,0.8660254037844386]]}"#).unwrap();
    let mut cfg = ptr::null_mut();
    unsafe {
        assert_eq!(schurlab_config_from_json(json.as_ptr(), &mut cfg), SchurlabStatus::Ok);
        let mut count = 0;
        assert_eq!(schurlab_count_cliques(cfg, 2, 0.0, &mut count), SchurlabStatus::Ok);
        assert_eq!(count, 3);
        schurlab_config_free(cfg);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let mut cfg = ptr::null_mut();
    let mut count = 0;
    unsafe {
        assert_eq!(schurlab_count_cliques(ptr::null(), 2, 0.0, &mut count), SchurlabStatus::NullPointer);
        assert!(last_error().contains("config"));

        let bad = CString::new("{\"space\": 1}").unwrap();
        assert_eq!(schurlab_config_from_json(bad.as_ptr(), &mut cfg), SchurlabStatus::Json);
        assert!(cfg.is_null());

        assert_eq!(schurlab_config_new_euclidean([0.0].as_ptr(), 0, 1, &mut cfg), SchurlabStatus::Argument);
        assert_eq!(schurlab_config_new_euclidean([0.0].as_ptr(), 1, 0, &mut cfg), SchurlabStatus::Dimension);

        let simplex = simplex_config(3);
        assert_eq!(schurlab_count_cliques(simplex, 9, 0.0, &mut count), SchurlabStatus::Argument);
        assert_eq!(schurlab_count_cliques(simplex, 2, 0.5, &mut count), SchurlabStatus::Argument);
        assert!(last_error().contains("eq_tol"));
        let mut center = [0.0; 2];
        let mut radius = 0.0;
        assert_eq!(
            schurlab_min_enclosing_ball(simplex, center.as_mut_ptr(), 2, &mut radius),
            SchurlabStatus::BufferTooSmall
        );
        // a successful call clears the message
        assert_eq!(schurlab_count_cliques(simplex, 2, 0.0, &mut count), SchurlabStatus::Ok);
        assert!(schurlab_last_error().is_null());
        schurlab_config_free(simplex);

        let mut rb = SchurlabRedBlue::default();
        assert_eq!(schurlab_red_blue_margins(2, 1e-3, &mut rb), SchurlabStatus::Argument);
        schurlab_config_free(ptr::null_mut());
        schurlab_body_free(ptr::null_mut());
    }
}

#[test]
fn bodies_answer_membership() {
    let mut body = ptr::null_mut();
    let mut inside = false;
    unsafe {
        assert_eq!(schurlab_body_regular_simplex(3, &mut body), SchurlabStatus::Ok);
        assert_eq!(schurlab_body_contains(body, [0.0; 3].as_ptr(), 3, &mut inside), SchurlabStatus::Ok);
        assert!(inside);
        assert_eq!(schurlab_body_contains(body, [2.0, 0.0, 0.0].as_ptr(), 3, &mut inside), SchurlabStatus::Ok);
        assert!(!inside);
        schurlab_body_free(body);

        assert_eq!(schurlab_body_regular_rugby_ball(1, &mut body), SchurlabStatus::Dimension);
        assert_eq!(schurlab_body_regular_rugby_ball(3, &mut body), SchurlabStatus::Ok);
        assert_eq!(schurlab_body_contains(body, [0.0; 3].as_ptr(), 3, &mut inside), SchurlabStatus::Ok);
        assert!(inside);
        schurlab_body_free(body);
    }
}

#[test]
fn red_blue_margins_match_the_library() {
    for d in 3..=6 {
        let mut rb = SchurlabRedBlue::default();
        assert_eq!(unsafe { schurlab_red_blue_margins(d, 1e-3, &mut rb) }, SchurlabStatus::Ok);
        let m = schurlab_core::reuleaux::red_blue_margins(d, 1e-3, Default::default()).unwrap();
        assert_eq!(rb.blue_count, m.blue_count);
        assert_eq!(rb.min_blue_blue, m.min_blue_blue);
        assert!(rb.passed);
    }
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include").join("schurlab.h")
}

#[test]
fn header_declares_every_export() {
    let text = std::fs::read_to_string(header()).unwrap();
    assert!(text.starts_with("#ifndef SCHURLAB_H"));
    for name in [
        "schurlab_version",
        "schurlab_last_error",
        "schurlab_config_new_euclidean",
        "schurlab_config_from_json",
        "schurlab_config_free",
        "schurlab_count_cliques",
        "schurlab_audit",
        "schurlab_min_enclosing_ball",
        "schurlab_body_regular_simplex",
        "schurlab_body_contains",
        "schurlab_red_blue_margins",
        "typedef struct SchurlabConfig SchurlabConfig;",
        "SCHURLAB_STATUS_NULL_POINTER = 1",
        "SCHURLAB_STATUS_PANIC = 99",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
}

/// Compiles and runs a C program against the static library. Skipped when
/// no C compiler or static archive is available.
#[test]
fn c_program_links_against_the_static_library() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libschurlab_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library at {} or no cc", lib.display());
        return;
    }
    let out_dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("ffi");
    std::fs::create_dir_all(&out_dir).unwrap();
    let bin = out_dir.join("smoke");
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("c").join("smoke.c");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl"])
        .arg("-o")
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "cc failed");
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert_eq!(stdout.trim(), format!("ok {}", env!("CARGO_PKG_VERSION")));
}
