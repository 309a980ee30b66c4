use std::ffi::CStr;
use std::ptr;

use ptosc_ffi::*;

fn last_error() -> String {
    let p = ptosc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn momentum(w: f64, l: f64) -> *mut PtoscSpec {
    let mut spec = ptr::null_mut();
    assert_eq!(unsafe { ptosc_spec_new_momentum(w, l, &mut spec) }, PtoscStatus::Ok);
    assert!(!spec.is_null());
    spec
}

#[test]
fn invalid_spec_reports_domain() {
    let mut spec = ptr::null_mut();
    let st = unsafe { ptosc_spec_new_momentum(-1.0, 0.0, &mut spec) };
    assert_eq!(st, PtoscStatus::Domain);
    assert!(spec.is_null());
    assert!(last_error().contains("domain"));
}

#[test]
fn null_out_pointer() {
    assert_eq!(unsafe { ptosc_spec_new_coordinate(1.0, 0.0, ptr::null_mut()) }, PtoscStatus::NullPointer);
    assert_eq!(unsafe { ptosc_select_frequency(ptr::null(), PtoscStrategy::Sum, 0.0, ptr::null_mut()) }, PtoscStatus::NullPointer);
}

#[test]
fn frequency_selection_and_rejection() {
    let spec = momentum(10.0, 5.4);
    let mut w = 0.0;
    unsafe {
        assert_eq!(ptosc_select_frequency(spec, PtoscStrategy::Sum, 0.0, &mut w), PtoscStatus::Ok);
        assert_eq!(w, 15.4);
        assert_eq!(ptosc_select_frequency(spec, PtoscStrategy::Diff, 0.0, &mut w), PtoscStatus::Rejected);
        assert_eq!(ptosc_select_frequency(spec, PtoscStrategy::Manual, 3.0, &mut w), PtoscStatus::Ok);
        assert_eq!(w, 3.0);
        let mut c = PtoscCoefficients::default();
        assert_eq!(ptosc_coefficients(spec, 15.4, &mut c), PtoscStatus::Ok);
        assert!((c.d - 20.0).abs() < 1e-12 && c.u.abs() < 1e-12);
        let mut e = 0.0;
        let mut exact = false;
        assert_eq!(ptosc_closed_form_energy(spec, PtoscStrategy::Sum, 0.0, 2, &mut e, &mut exact), PtoscStatus::Ok);
        assert!((e - 50.0).abs() < 1e-12 && exact);
        ptosc_spec_free(spec);
    }
}

#[test]
fn matrix_and_spectrum_round_trip() {
    let spec = momentum(1.0, 0.0);
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(ptosc_hamiltonian(spec, 1.0, 8, PtoscAssembly::SecondQuantized, &mut m), PtoscStatus::Ok);
        assert_eq!(ptosc_matrix_dim(m), 8);
        let mut z = PtoscComplex::default();
        assert_eq!(ptosc_matrix_get(m, 2, 2, &mut z), PtoscStatus::Ok);
        assert!((z.re - 5.0).abs() < 1e-12);
        assert_eq!(ptosc_matrix_get(m, 8, 0, &mut z), PtoscStatus::OutOfRange);

        let mut s = ptr::null_mut();
        assert_eq!(ptosc_matrix_spectrum(m, PtoscSort::Magnitude, &mut s), PtoscStatus::Ok);
        assert_eq!(ptosc_spectrum_len(s), 8);
        assert_eq!(ptosc_spectrum_get(s, 0, &mut z), PtoscStatus::Ok);
        assert!((z.re - 1.0).abs() < 1e-12 && z.im.abs() < 1e-12);
        assert_eq!(ptosc_spectrum_get(s, 8, &mut z), PtoscStatus::OutOfRange);
        ptosc_spectrum_free(s);
        ptosc_matrix_free(m);
        ptosc_spec_free(spec);
    }
}

#[test]
fn diagnosis_matches_core() {
    let spec = momentum(10.0, 5.4);
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(ptosc_diagnose(spec, PtoscStrategy::Sum, 0.0, 60, 20, 1e-6, PtoscSort::Magnitude, &mut d), PtoscStatus::Ok);
        let mut v = PtoscVerdict::Broken;
        assert_eq!(ptosc_diagnosis_verdict(d, &mut v), PtoscStatus::Ok);
        assert_eq!(v, PtoscVerdict::AllRealPositive);
        assert_eq!(ptosc_diagnosis_count(d), 20);
        assert_eq!(ptosc_diagnosis_frequency(d), 15.4);
        let mut z = PtoscComplex::default();
        let mut class = PtoscValueClass::Stray;
        assert_eq!(ptosc_diagnosis_value(d, 1, &mut z, &mut class), PtoscStatus::Ok);
        assert!((z.re - 30.0).abs() < 1e-9);
        assert_eq!(class, PtoscValueClass::Real);
        assert_eq!(ptosc_diagnosis_value(d, 20, &mut z, ptr::null_mut()), PtoscStatus::OutOfRange);
        ptosc_diagnosis_free(d);

        assert_eq!(ptosc_diagnose(spec, PtoscStrategy::Sum, 0.0, 10, 11, 1e-6, PtoscSort::Magnitude, &mut d), PtoscStatus::OutOfRange);
        ptosc_spec_free(spec);
    }
}

#[test]
fn broken_verdict_through_ffi() {
    let spec = momentum(10.0, 5.4);
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(ptosc_diagnose(spec, PtoscStrategy::Variational, 0.0, 100, 50, 1e-6, PtoscSort::Magnitude, &mut d), PtoscStatus::Ok);
        let mut v = PtoscVerdict::AllRealPositive;
        ptosc_diagnosis_verdict(d, &mut v);
        assert_eq!(v, PtoscVerdict::Broken);
        ptosc_diagnosis_free(d);
        ptosc_spec_free(spec);
    }
}

#[test]
fn status_names_are_static() {
    let name = unsafe { CStr::from_ptr(ptosc_status_name(PtoscStatus::NoConvergence)) };
    assert_eq!(name.to_str().unwrap(), "no convergence");
}

#[test]
fn free_accepts_null() {
    unsafe {
        ptosc_spec_free(ptr::null_mut());
        ptosc_matrix_free(ptr::null_mut());
        ptosc_spectrum_free(ptr::null_mut());
        ptosc_diagnosis_free(ptr::null_mut());
    }
}
