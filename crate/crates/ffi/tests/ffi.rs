use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use mendeleev_ffi::*;

fn q(n: u32, l: u32, j2: u32, m2: i32) -> MdlQuartet {
    MdlQuartet { n, l, j2, m2 }
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    mdl_string_free(p);
    s
}

fn last_error() -> String {
    let p = mdl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn z_and_quartet_round_trip() {
    unsafe {
        let mut z = 0;
        assert_eq!(mdl_z_of(q(4, 3, 5, -5), &mut z), MdlStatus::Ok);
        assert_eq!(z, 57);
        assert_eq!(mdl_z_of(q(6, 3, 7, 7), &mut z), MdlStatus::Ok);
        assert_eq!(z, 152);

        let mut out = q(0, 0, 0, 0);
        assert_eq!(mdl_quartet_of(121, &mut out), MdlStatus::Ok);
        assert_eq!(out, q(5, 4, 7, -7));
        for z in 1..=300 {
            assert_eq!(mdl_quartet_of(z, &mut out), MdlStatus::Ok);
            let mut back = 0;
            assert_eq!(mdl_z_of(out, &mut back), MdlStatus::Ok);
            assert_eq!(back, z);
        }
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut z = 0;
        assert_eq!(mdl_z_of(q(2, 2, 5, 1), &mut z), MdlStatus::InvalidQuartet);
        assert!(last_error().contains("l must satisfy"));
        assert_eq!(mdl_z_of(q(1, 0, 1, 1), ptr::null_mut()), MdlStatus::NullPointer);

        let mut out = q(0, 0, 0, 0);
        assert_eq!(mdl_quartet_of(0, &mut out), MdlStatus::Domain);
        assert_eq!(mdl_registry_load(ptr::null(), &mut ptr::null_mut()), MdlStatus::NullPointer);

        let path = CString::new("/nonexistent/registry.csv").unwrap();
        let mut reg = ptr::null_mut();
        assert_eq!(mdl_registry_load(path.as_ptr(), &mut reg), MdlStatus::Io);
        assert!(reg.is_null());
    }
}

#[test]
fn families_and_configuration() {
    unsafe {
        let mut fam = MdlFamily::Other;
        assert_eq!(mdl_family_of(q(3, 0, 1, -1), &mut fam), MdlStatus::Ok);
        assert_eq!(fam, MdlFamily::AlkaliMetal);
        assert_eq!(mdl_family_of(q(2, 1, 3, 3), &mut fam), MdlStatus::Ok);
        assert_eq!(fam, MdlFamily::NobleGas);

        let mut s = ptr::null_mut();
        assert_eq!(mdl_configuration(10, &mut s), MdlStatus::Ok);
        assert_eq!(take_string(s), "1s2 2s2 2p6");
        assert_eq!(mdl_configuration(0, &mut s), MdlStatus::Domain);
    }
}

#[test]
fn registry_queries() {
    unsafe {
        let reg = mdl_registry_snapshot();
        let mut st = MdlElementStatus::Unobserved;
        assert_eq!(mdl_registry_status(reg, 110, &mut st), MdlStatus::Ok);
        assert_eq!(st, MdlElementStatus::NamedObserved);
        assert_eq!(mdl_registry_status(reg, 114, &mut st), MdlStatus::Ok);
        assert_eq!(st, MdlElementStatus::ObservedUnnamed);
        assert_eq!(mdl_registry_status(reg, 117, &mut st), MdlStatus::Ok);
        assert_eq!(st, MdlElementStatus::Unobserved);

        let mut sym = ptr::null_mut();
        assert_eq!(mdl_registry_symbol(reg, 110, &mut sym), MdlStatus::Ok);
        assert_eq!(take_string(sym), "Ds");
        assert_eq!(mdl_registry_symbol(reg, 115, &mut sym), MdlStatus::Ok);
        assert!(sym.is_null());
        assert_eq!(mdl_registry_status(ptr::null(), 1, &mut st), MdlStatus::NullPointer);
        mdl_registry_free(reg);
    }
}

#[test]
fn shortest_paths() {
    unsafe {
        let mut steps = 0;
        let h = q(1, 0, 1, -1);
        assert_eq!(
            mdl_shortest_path_len(h, q(2, 1, 3, 3), MDL_MOVE_SO3XSU2 | MDL_MOVE_SO4XSU2 | MDL_MOVE_SO21, 60, &mut steps),
            MdlStatus::Ok
        );
        assert_eq!(steps, 3);
        assert_eq!(mdl_shortest_path_len(h, q(2, 0, 1, -1), MDL_MOVE_SO21, 60, &mut steps), MdlStatus::Ok);
        assert_eq!(steps, 1);
        assert_eq!(mdl_shortest_path_len(h, q(1, 0, 1, 1), MDL_MOVE_SO21, 60, &mut steps), MdlStatus::Unreachable);
        assert_eq!(mdl_shortest_path_len(h, q(1, 0, 1, 1), MDL_MOVE_SO42XSU2, 60, &mut steps), MdlStatus::Ok);
        assert_eq!(steps, 1);
        assert_eq!(mdl_shortest_path_len(h, h, MDL_MOVE_SO21, 60, &mut steps), MdlStatus::Ok);
        assert_eq!(steps, 0);
        assert_eq!(mdl_shortest_path_len(h, h, 0, 60, &mut steps), MdlStatus::Domain);
    }
}

#[test]
fn fit_predict_and_load() {
    let zs: Vec<u64> = (1..=36).collect();
    let values: Vec<f64> = zs
        .iter()
        .map(|&z| {
            let mut out = q(0, 0, 0, 0);
            unsafe { mdl_quartet_of(z, &mut out) };
            2.0 + 3.0 * out.n as f64
        })
        .collect();
    let basis = CString::new("1,n").unwrap();
    unsafe {
        let mut model = ptr::null_mut();
        assert_eq!(
            mdl_fit(zs.as_ptr(), values.as_ptr(), zs.len(), basis.as_ptr(), 0.0, false, &mut model),
            MdlStatus::Ok
        );
        let mut rss = f64::NAN;
        assert_eq!(mdl_model_rss(model, &mut rss), MdlStatus::Ok);
        assert!(rss < 1e-18);
        let mut y = 0.0;
        assert_eq!(mdl_model_predict(model, 87, &mut y), MdlStatus::Ok);
        assert!((y - 23.0).abs() < 1e-9);
        assert_eq!(mdl_model_predict(model, 0, &mut y), MdlStatus::Fit);
        mdl_model_free(model);

        let bad = CString::new("1,1").unwrap();
        let mut model = ptr::null_mut();
        assert_eq!(
            mdl_fit(zs.as_ptr(), values.as_ptr(), zs.len(), bad.as_ptr(), 0.0, false, &mut model),
            MdlStatus::Fit
        );
        assert!(model.is_null());
    }

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    let dataset = mendeleev::registry::PropertyDataset::from_values(
        "p",
        "",
        zs.iter().copied().zip(values.iter().copied()),
    );
    let model = mendeleev::fit::fit_with(
        &mendeleev::fit::FitScope::Set { zs: zs.clone() },
        &mendeleev::fit::IntegrityBasis::parse_list("1,n").unwrap(),
        &dataset,
        &Default::default(),
    )
    .unwrap();
    model.write_json(std::fs::File::create(&path).unwrap()).unwrap();

    let cpath = CString::new(path.to_str().unwrap()).unwrap();
    unsafe {
        let mut loaded = ptr::null_mut();
        assert_eq!(mdl_model_load(cpath.as_ptr(), &mut loaded), MdlStatus::Ok);
        let mut y = 0.0;
        assert_eq!(mdl_model_predict(loaded, 55, &mut y), MdlStatus::Ok);
        assert!((y - 20.0).abs() < 1e-9);
        mdl_model_free(loaded);
    }
}

#[test]
fn header_declares_exports() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/mendeleev.h")).unwrap();
    for name in [
        "mdl_z_of",
        "mdl_quartet_of",
        "mdl_family_of",
        "mdl_configuration",
        "mdl_shortest_path_len",
        "mdl_registry_snapshot",
        "mdl_registry_status",
        "mdl_fit",
        "mdl_model_load",
        "mdl_model_predict",
        "mdl_model_free",
        "mdl_last_error",
        "typedef struct MdlModel MdlModel",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
