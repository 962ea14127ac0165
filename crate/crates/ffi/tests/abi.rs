use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use szabo_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { sz_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sz_last_error_message()) }
        .to_str()
        .unwrap()
        .to_owned()
}

#[test]
fn tensor_round_trip_and_symmetries() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(sz_tensor_random(1, 2, 7, &mut t), SzStatus::Ok);
        let mut n = usize::MAX;
        assert_eq!(sz_tensor_check_symmetries(t, &mut n), SzStatus::Ok);
        assert_eq!(n, 0);

        let mut js = ptr::null_mut();
        assert_eq!(sz_tensor_to_json(t, &mut js), SzStatus::Ok);
        let text = CString::new(take(js)).unwrap();
        let mut t2 = ptr::null_mut();
        assert_eq!(sz_tensor_from_json(text.as_ptr(), &mut t2), SzStatus::Ok);

        // S(2v) = 8 S(v)
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        let v = CString::new("1,1/2,0").unwrap();
        let w = CString::new("2,1,0").unwrap();
        assert_eq!(
            sz_tensor_szabo_at_json(t2, v.as_ptr(), &mut a),
            SzStatus::Ok
        );
        assert_eq!(
            sz_tensor_szabo_at_json(t2, w.as_ptr(), &mut b),
            SzStatus::Ok
        );
        let a: serde_json::Value = serde_json::from_str(&take(a)).unwrap();
        let b: serde_json::Value = serde_json::from_str(&take(b)).unwrap();
        let ent = |x: &serde_json::Value, i: usize, j: usize| {
            x["entries"][i][j].as_str().unwrap().to_owned()
        };
        for i in 0..3 {
            for j in 0..3 {
                let (n1, d1) = ent(&a, i, j)
                    .split_once('/')
                    .map(|(n, d)| (n.parse::<i64>().unwrap(), d.parse::<i64>().unwrap()))
                    .unwrap();
                let (n2, d2) = ent(&b, i, j)
                    .split_once('/')
                    .map(|(n, d)| (n.parse::<i64>().unwrap(), d.parse::<i64>().unwrap()))
                    .unwrap();
                assert_eq!(8 * n1 * d2, n2 * d1);
            }
        }

        let mut pm = ptr::null_mut();
        assert_eq!(sz_tensor_szabo_polymap(t, &mut pm), SzStatus::Ok);
        let mut k = -2;
        assert_eq!(sz_polymap_pclass_member(pm, &mut k), SzStatus::Ok);
        assert_eq!(k, 1);
        sz_polymap_free(pm);
        sz_tensor_free(t);
        sz_tensor_free(t2);
    }
}

#[test]
fn error_paths() {
    unsafe {
        let mut t = ptr::null_mut();
        let bad = CString::new("{not json").unwrap();
        assert_eq!(sz_tensor_from_json(bad.as_ptr(), &mut t), SzStatus::Parse);
        assert!(t.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(
            sz_tensor_from_json(ptr::null(), &mut t),
            SzStatus::NullPointer
        );
        assert_eq!(sz_tensor_random(0, 0, 1, &mut t), SzStatus::Domain);
        let mut x = 0u64;
        assert_eq!(sz_phi(0, &mut x), SzStatus::Inapplicable);
        assert_eq!(sz_phi(9, ptr::null_mut()), SzStatus::NullPointer);
        let invalid = [0xffu8, 0xfe, 0];
        assert_eq!(
            sz_polymap_from_json(invalid.as_ptr().cast(), &mut ptr::null_mut()),
            SzStatus::InvalidUtf8
        );
        sz_tensor_free(ptr::null_mut());
        sz_string_free(ptr::null_mut());
    }
}

#[test]
fn inadmissible_vanishing_order() {
    unsafe {
        let text = CString::new(szabo_core::json::polymap_to_string(
            &szabo_core::fixtures::split_plane(),
        ))
        .unwrap();
        let mut pm = ptr::null_mut();
        assert_eq!(sz_polymap_from_json(text.as_ptr(), &mut pm), SzStatus::Ok);
        let mut o = 0;
        assert_eq!(
            sz_polymap_vanishing_order(pm, &mut o),
            SzStatus::Inapplicable
        );
        assert!(last_error().contains("inadmissible"));
        sz_polymap_free(pm);

        let text = CString::new(szabo_core::json::polymap_to_string(
            &szabo_core::fixtures::null_rank_one(),
        ))
        .unwrap();
        assert_eq!(sz_polymap_from_json(text.as_ptr(), &mut pm), SzStatus::Ok);
        assert_eq!(sz_polymap_vanishing_order(pm, &mut o), SzStatus::Ok);
        assert_eq!(o, 2);
        sz_polymap_free(pm);
    }
}

#[test]
fn obstruction_and_wolf() {
    unsafe {
        let mut x = 0u64;
        assert_eq!(sz_phi(10, &mut x), SzStatus::Ok);
        assert_eq!(x, 6);
        let mut sym = -1;
        assert_eq!(sz_wolf_verdict(3, 3, &mut sym), SzStatus::Ok);
        assert_eq!(sym, 1);
        assert_eq!(sz_wolf_verdict(8, 8, &mut sym), SzStatus::Ok);
        assert_eq!(sym, 0);
        let mut s = ptr::null_mut();
        assert_eq!(sz_wolf_trace_json(2, 11, &mut s), SzStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["verdict"], "locally-symmetric");
        assert_eq!(sz_obstruction_json(3, 12, 10, 4, 0, &mut s), SzStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["verdict"], "infeasible");
        assert_eq!(
            sz_obstruction_json(3, 12, 9, 4, 0, &mut s),
            SzStatus::Inapplicable
        );
        assert!(last_error().contains("k >= 10 fails"));
        assert_eq!(sz_obstruction_json(4, 1, 1, 1, 1, &mut s), SzStatus::Parse);
    }
}

#[test]
fn family_degree() {
    unsafe {
        let sig = szabo_core::Signature::new(1, 2).unwrap();
        let f = szabo_core::polydep::standard_family(sig, 2, 2).unwrap();
        let text = CString::new(szabo_core::json::family_to_string(&f)).unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(sz_family_from_json(text.as_ptr(), &mut h), SzStatus::Ok);
        let mut k = -5;
        assert_eq!(sz_family_dependence_degree(h, &mut k), SzStatus::Ok);
        assert_eq!(k, 0);
        sz_family_free(h);
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/szabo.h");
    let text = std::fs::read_to_string(header).unwrap();
    for f in [
        "sz_tensor_from_json",
        "sz_obstruction_json",
        "sz_last_error_message",
        "SZ_STATUS_INAPPLICABLE",
    ] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let Ok(st) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header])
        .status()
    else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(st.success());
}
