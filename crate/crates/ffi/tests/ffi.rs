use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use rcat_ffi::*;

fn parse(text: &str) -> *mut RcatPartition {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { rcat_partition_parse(c.as_ptr(), &mut out) }, RcatStatus::Ok);
    out
}

fn text(p: *const RcatPartition) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { rcat_partition_to_string(p, &mut s) }, RcatStatus::Ok);
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { rcat_string_free(s) };
    owned
}

fn last_error() -> String {
    let p = rcat_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn counts() {
    let mut n = 0u64;
    assert_eq!(unsafe { rcat_catalan(5, 8, &mut n) }, RcatStatus::Ok);
    assert_eq!(n, 99);
    assert_eq!(unsafe { rcat_nc_count(3, 5, &mut n) }, RcatStatus::Ok);
    assert_eq!(n, 7);
    assert_eq!(unsafe { rcat_catalan(4, 6, &mut n) }, RcatStatus::InvalidSlope);
    assert!(last_error().contains("coprime"));
    assert_eq!(unsafe { rcat_catalan(3, 5, ptr::null_mut()) }, RcatStatus::NullPointer);
}

#[test]
fn partitions() {
    let p = parse("1|2,7|3,4,5|6");
    assert_eq!(text(p), "1|2,7|3,4,5|6");
    let mut k = 0usize;
    assert_eq!(unsafe { rcat_partition_num_blocks(p, &mut k) }, RcatStatus::Ok);
    assert_eq!(k, 4);
    for method in [RcatMethod::Reconstruction, RcatMethod::Kreweras, RcatMethod::RankOrbit] {
        let mut member = false;
        assert_eq!(unsafe { rcat_is_member(p, 5, 8, method, &mut member) }, RcatStatus::Ok);
        assert!(member);
    }
    let mut buf = [0u32; 7];
    assert_eq!(unsafe { rcat_rank_sequence(p, 5, 8, buf.as_mut_ptr(), 7) }, RcatStatus::Ok);
    assert_eq!(buf.iter().sum::<u32>(), 5);
    assert_eq!(unsafe { rcat_rank_sequence(p, 5, 8, buf.as_mut_ptr(), 3) }, RcatStatus::BufferTooSmall);

    let mut krew = ptr::null_mut();
    assert_eq!(unsafe { rcat_partition_kreweras(p, &mut krew) }, RcatStatus::Ok);
    let mut rot = ptr::null_mut();
    assert_eq!(unsafe { rcat_partition_rotate(p, 1, &mut rot) }, RcatStatus::Ok);
    assert_eq!(text(rot), "1,3|2|4,5,6|7");
    unsafe {
        rcat_partition_free(krew);
        rcat_partition_free(rot);
        rcat_partition_free(p);
    }

    let bad = CString::new("1,3|2,4").unwrap();
    let mut out = ptr::null_mut();
    let mut crossing = ptr::null_mut();
    assert_eq!(unsafe { rcat_partition_parse(bad.as_ptr(), &mut crossing) }, RcatStatus::Ok);
    assert_eq!(unsafe { rcat_partition_kreweras(crossing, &mut out) }, RcatStatus::InvalidPartition);
    unsafe { rcat_partition_free(crossing) };
    let junk = CString::new("1,x").unwrap();
    assert_eq!(unsafe { rcat_partition_parse(junk.as_ptr(), &mut out) }, RcatStatus::InvalidPartition);
    assert_eq!(unsafe { rcat_partition_parse(ptr::null(), &mut out) }, RcatStatus::NullPointer);
}

#[test]
fn paths() {
    let runs = [2u32, 1, 0, 2, 0, 0, 0];
    let mut path = ptr::null_mut();
    assert_eq!(unsafe { rcat_path_new(5, 8, runs.as_ptr(), runs.len(), &mut path) }, RcatStatus::Ok);
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { rcat_path_partition(path, &mut p) }, RcatStatus::Ok);
    assert_eq!(text(p), "1,3,7|2|4,5,6");
    unsafe {
        rcat_partition_free(p);
        rcat_path_free(path);
    }
    let below = [0u32, 5, 0, 0, 0, 0, 0];
    assert_eq!(unsafe { rcat_path_new(5, 8, below.as_ptr(), below.len(), &mut path) }, RcatStatus::InvalidPath);
}

#[test]
fn verification_calls() {
    let mut pass = false;
    assert_eq!(unsafe { rcat_csp_catalan(3, 5, &mut pass) }, RcatStatus::Ok);
    assert!(pass);
    let w = [2u32, 1, 3];
    let (mut brute, mut predicted) = (0u64, 0u64);
    assert_eq!(unsafe { rcat_park_character(3, 5, w.as_ptr(), 3, 2, &mut brute, &mut predicted) }, RcatStatus::Ok);
    assert_eq!((brute, predicted), (5, 5));
    let not_perm = [1u32, 1, 3];
    assert_eq!(
        unsafe { rcat_park_character(3, 5, not_perm.as_ptr(), 3, 2, &mut brute, &mut predicted) },
        RcatStatus::InvalidArgument
    );
}

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/rcat.h")).unwrap();
    for name in ["rcat_partition_parse", "rcat_last_error", "RCAT_STATUS_OK", "typedef struct RcatPartition"] {
        assert!(header.contains(name), "{name} missing from header");
    }
    let probe = std::env::temp_dir().join(format!("rcat_probe_{}.c", std::process::id()));
    std::fs::write(
        &probe,
        "#include \"rcat.h\"\nint main(void) { uint64_t n; return rcat_catalan(3, 5, &n) == RCAT_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&probe)
        .status();
    let _ = std::fs::remove_file(&probe);
    match status {
        Ok(s) => assert!(s.success(), "header failed to compile"),
        Err(e) => eprintln!("skipping C compile check: no C compiler ({e})"),
    }
}
