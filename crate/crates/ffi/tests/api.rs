use std::ffi::{CStr, CString};
use std::ptr;

use homcat_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(homcat_last_error()) }.to_string_lossy().into_owned()
}

const K_R2: &str = r#"{"ring": "preset:truncated_poly,p=2,n=2", "dim": 1, "side": "right", "action": [[[1]], [[0]]]}"#;
const SOCLE_INCL: &str = r#"{"ring": "preset:truncated_poly,p=2,n=2",
  "A": {"dim": 1, "side": "right", "action": [[[1]], [[0]]]},
  "B": {"dim": 2, "side": "right", "action": [[[1, 0], [0, 1]], [[0, 0], [1, 0]]]},
  "f": [[0], [1]]}"#;
const ZERO_TO_K: &str = r#"{"ring": "preset:truncated_poly,p=2,n=2",
  "A": {"dim": 0, "side": "right", "action": [[], []]},
  "B": {"dim": 1, "side": "right", "action": [[[1]], [[0]]]},
  "f": []}"#;

unsafe fn object(json: &str) -> *mut HomcatObject {
    let mut x = ptr::null_mut();
    assert_eq!(homcat_object_new(c(json).as_ptr(), &mut x), HomcatStatus::Ok, "{}", last_error());
    x
}

#[test]
fn ring_handles() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(homcat_ring_new(c("preset:truncated_poly,p=2,n=2").as_ptr(), &mut r), HomcatStatus::Ok);
        let mut info = HomcatRingInfo::default();
        assert_eq!(homcat_ring_classify(r, &mut info), HomcatStatus::Ok);
        assert!(info.local && info.gorenstein_local && info.commutative);
        assert_eq!((info.dim, info.radical_dim, info.socle_dim), (2, 1, 1));

        let mut t = ptr::null_mut();
        assert_eq!(homcat_ring_triangular(r, &mut t), HomcatStatus::Ok);
        let mut tinfo = HomcatRingInfo::default();
        assert_eq!(homcat_ring_classify(t, &mut tinfo), HomcatStatus::Ok);
        assert_eq!(tinfo.dim, 6);
        assert!(!tinfo.commutative);

        let mut s = ptr::null_mut();
        assert_eq!(homcat_ring_to_json(r, &mut s), HomcatStatus::Ok);
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        homcat_string_free(s);
        let mut again = ptr::null_mut();
        assert_eq!(homcat_ring_new(c(&text).as_ptr(), &mut again), HomcatStatus::Ok);
        homcat_ring_free(again);
        homcat_ring_free(t);
        homcat_ring_free(r);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(homcat_ring_new(c("{not json").as_ptr(), &mut r), HomcatStatus::Input);
        assert!(last_error().contains("JSON"));
        assert!(r.is_null());
        assert_eq!(homcat_ring_new(ptr::null(), &mut r), HomcatStatus::NullArgument);
        let broken = r#"{"p": 2, "dim": 2, "basis": ["1", "x"], "unit": [1, 0], "mul": [[[1, 0], [0, 0]], [[0, 1], [0, 0]]]}"#;
        assert_eq!(homcat_ring_new(c(broken).as_ptr(), &mut r), HomcatStatus::Input);
        assert!(last_error().contains("unit"));

        let sz = r#"{"ring": "preset:square_zero_plane,p=2", "dim": 1, "side": "right", "action": [[[1]], [[0]], [[0]]]}"#;
        let mut m = ptr::null_mut();
        assert_eq!(homcat_module_new(c(sz).as_ptr(), &mut m), HomcatStatus::Ok, "{}", last_error());
        let mut t = ptr::null_mut();
        assert_eq!(homcat_module_tau(m, false, &mut t), HomcatStatus::Precondition);
        assert!(t.is_null());
        homcat_module_free(m);

        // A successful call clears the message.
        let mut ok = ptr::null_mut();
        assert_eq!(homcat_ring_new(c("preset:truncated_poly,p=2,n=2").as_ptr(), &mut ok), HomcatStatus::Ok);
        assert_eq!(last_error(), "");
        homcat_ring_free(ok);
        homcat_ring_free(ptr::null_mut());
    }
}

#[test]
fn module_operations() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(homcat_module_new(c(K_R2).as_ptr(), &mut k), HomcatStatus::Ok);
        assert_eq!(homcat_module_dim(k), 1);
        let mut omega = ptr::null_mut();
        assert_eq!(homcat_module_syzygy(k, 1, &mut omega), HomcatStatus::Ok);
        let mut iso = false;
        assert_eq!(homcat_module_is_isomorphic(k, omega, &mut iso), HomcatStatus::Ok);
        assert!(iso);
        let mut count = 0;
        assert_eq!(homcat_module_summand_count(k, &mut count), HomcatStatus::Ok);
        assert_eq!(count, 1);
        let mut link = HomcatLinkage::default();
        assert_eq!(homcat_module_linkage(k, &mut link), HomcatStatus::Ok);
        assert!(link.linked && link.lambda_square_iso);
        let mut tr = ptr::null_mut();
        assert_eq!(homcat_module_transpose(k, &mut tr), HomcatStatus::Ok);
        assert_eq!(homcat_module_dim(tr), 1);
        for h in [k, omega, tr] {
            homcat_module_free(h);
        }
    }
}

#[test]
fn object_operations() {
    unsafe {
        let x = object(SOCLE_INCL);
        let mut info = HomcatObjectInfo::default();
        assert_eq!(homcat_object_classify(x, &mut info), HomcatStatus::Ok);
        assert!(info.mono && !info.epi && info.g_decided && info.in_g && info.indecomposable);

        let mut tr = ptr::null_mut();
        let mut certified = false;
        assert_eq!(homcat_object_transpose(x, &mut tr, &mut certified), HomcatStatus::Ok);
        assert!(certified);

        let mut env = ptr::null_mut();
        assert_eq!(homcat_object_e_envelope(x, &mut env), HomcatStatus::Ok);
        let mut einfo = HomcatObjectInfo::default();
        homcat_object_classify(env, &mut einfo);
        assert!(einfo.epi);

        let z = object(ZERO_TO_K);
        let mut tau = ptr::null_mut();
        assert_eq!(homcat_object_tau(z, HomcatCategory::G, false, &mut tau), HomcatStatus::Ok);
        let mut tinfo = HomcatObjectInfo::default();
        homcat_object_classify(tau, &mut tinfo);
        assert_eq!((tinfo.dim_a, tinfo.dim_b, tinfo.mono, tinfo.epi), (1, 1, true, true));

        let mut cover = ptr::null_mut();
        assert_eq!(homcat_object_g_cover(z, &mut cover), HomcatStatus::Ok);
        let mut same = false;
        assert_eq!(homcat_object_is_isomorphic(cover, z, &mut same), HomcatStatus::Ok);
        assert!(same);

        let mut reduced = ptr::null_mut();
        assert_eq!(homcat_object_red(x, HomcatRedContext::M, &mut reduced), HomcatStatus::Ok);
        homcat_object_is_isomorphic(reduced, x, &mut same);
        assert!(same);

        let mut s = ptr::null_mut();
        let mut ok = false;
        assert_eq!(
            homcat_almost_split_sequence(ptr::null(), z, HomcatCategory::G, 0, &mut s, &mut ok),
            HomcatStatus::Ok,
            "{}",
            last_error()
        );
        assert!(ok);
        assert!(CStr::from_ptr(s).to_str().unwrap().contains("\"category\": \"G\""));
        homcat_string_free(s);

        let mut j = ptr::null_mut();
        assert_eq!(homcat_object_to_json(x, &mut j), HomcatStatus::Ok);
        let back = object(CStr::from_ptr(j).to_str().unwrap());
        homcat_string_free(j);
        homcat_object_is_isomorphic(back, x, &mut same);
        assert!(same);

        for h in [x, tr, env, z, tau, cover, reduced, back] {
            homcat_object_free(h);
        }
    }
}

#[test]
fn null_handles_are_reported() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(homcat_object_g_cover(ptr::null(), &mut out), HomcatStatus::NullArgument);
        assert!(last_error().contains("object"));
        let k = {
            let mut m = ptr::null_mut();
            homcat_module_new(c(K_R2).as_ptr(), &mut m);
            m
        };
        assert_eq!(homcat_module_syzygy(k, 1, ptr::null_mut()), HomcatStatus::NullArgument);
        assert_eq!(homcat_module_dim(ptr::null()), 0);
        homcat_module_free(k);
    }
}
