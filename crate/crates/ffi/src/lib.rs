//! C ABI over `ptosc`.
//!
//! Every fallible entry point returns a [`PtoscStatus`] and writes results
//! through out-pointers. On failure a message is kept per thread and can be
//! read with [`ptosc_last_error_message`]. Handles are opaque and must be
//! released with their matching `_free` function. Enum arguments must hold
//! one of their declared values.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ptosc::analysis::{self, DiagnoseOptions, PTDiagnosis, Verdict};
use ptosc::eigen::{SortMode, Spectrum, ValueClass};
use ptosc::fock::{self, Assembly};
use ptosc::model::{self, FrequencyLabel, OscillatorSpec};
use ptosc::{ComplexMatrix, Error};

/// Status codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtoscStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Rejected = 3,
    NoClosedForm = 4,
    NoConvergence = 5,
    BasisTooSmall = 6,
    NonFinite = 7,
    OutOfRange = 8,
    Internal = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtoscStrategy {
    Sum = 0,
    Diff = 1,
    NegDiff = 2,
    Variational = 3,
    Manual = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtoscAssembly {
    Direct = 0,
    SecondQuantized = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtoscSort {
    Magnitude = 0,
    RealPart = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtoscVerdict {
    AllRealPositive = 0,
    AllRealNegative = 1,
    Broken = 2,
    MixedReal = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtoscValueClass {
    Real = 0,
    Pair = 1,
    Stray = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PtoscComplex {
    pub re: f64,
    pub im: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PtoscCoefficients {
    pub d: f64,
    pub u: f64,
    pub v: f64,
}

/// Opaque oscillator parameters.
pub struct PtoscSpec(OscillatorSpec);

/// Opaque dense complex matrix.
pub struct PtoscMatrix(ComplexMatrix);

/// Opaque sorted eigenvalue list.
pub struct PtoscSpectrum(Spectrum);

/// Opaque PT diagnosis.
pub struct PtoscDiagnosis(PTDiagnosis);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> PtoscStatus {
    match e {
        Error::Domain(_) => PtoscStatus::Domain,
        Error::Rejected { .. } => PtoscStatus::Rejected,
        Error::NoClosedForm(_) => PtoscStatus::NoClosedForm,
        Error::NoConvergence { .. } => PtoscStatus::NoConvergence,
        Error::BasisTooSmall { .. } => PtoscStatus::BasisTooSmall,
        Error::NonFinite(_) => PtoscStatus::NonFinite,
        _ => PtoscStatus::Internal,
    }
}

fn fail(status: PtoscStatus, msg: impl Into<String>) -> PtoscStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), PtoscStatus>) -> PtoscStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PtoscStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(PtoscStatus::Panic, "internal panic"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, PtoscStatus>;
}

impl<T> OrStatus<T> for ptosc::Result<T> {
    fn or_status(self) -> Result<T, PtoscStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

unsafe fn deref<'a, T>(p: *const T, name: &str) -> Result<&'a T, PtoscStatus> {
    p.as_ref().ok_or_else(|| fail(PtoscStatus::NullPointer, format!("{name} is null")))
}

unsafe fn write_out<T>(p: *mut T, value: T, name: &str) -> Result<(), PtoscStatus> {
    if p.is_null() {
        return Err(fail(PtoscStatus::NullPointer, format!("{name} is null")));
    }
    p.write(value);
    Ok(())
}

unsafe fn check_out<T>(p: *mut T, name: &str) -> Result<(), PtoscStatus> {
    if p.is_null() {
        Err(fail(PtoscStatus::NullPointer, format!("{name} is null")))
    } else {
        Ok(())
    }
}

impl From<PtoscStrategy> for FrequencyLabel {
    fn from(s: PtoscStrategy) -> Self {
        match s {
            PtoscStrategy::Sum => FrequencyLabel::SumRoot,
            PtoscStrategy::Diff => FrequencyLabel::DiffRoot,
            PtoscStrategy::NegDiff => FrequencyLabel::NegDiffRoot,
            PtoscStrategy::Variational => FrequencyLabel::Variational,
            PtoscStrategy::Manual => FrequencyLabel::Manual,
        }
    }
}

impl From<PtoscSort> for SortMode {
    fn from(s: PtoscSort) -> Self {
        match s {
            PtoscSort::Magnitude => SortMode::ByMagnitude,
            PtoscSort::RealPart => SortMode::ByRealPart,
        }
    }
}

impl From<Verdict> for PtoscVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::AllRealPositive => PtoscVerdict::AllRealPositive,
            Verdict::AllRealNegative => PtoscVerdict::AllRealNegative,
            Verdict::Broken => PtoscVerdict::Broken,
            Verdict::MixedReal => PtoscVerdict::MixedReal,
        }
    }
}

fn manual(strategy: PtoscStrategy, w: f64) -> Option<f64> {
    (strategy == PtoscStrategy::Manual).then_some(w)
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn ptosc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn ptosc_status_name(status: PtoscStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        PtoscStatus::Ok => b"ok\0",
        PtoscStatus::NullPointer => b"null pointer\0",
        PtoscStatus::Domain => b"domain error\0",
        PtoscStatus::Rejected => b"frequency rejected\0",
        PtoscStatus::NoClosedForm => b"no closed form\0",
        PtoscStatus::NoConvergence => b"no convergence\0",
        PtoscStatus::BasisTooSmall => b"basis too small\0",
        PtoscStatus::NonFinite => b"non-finite value\0",
        PtoscStatus::OutOfRange => b"index out of range\0",
        PtoscStatus::Internal => b"internal error\0",
        PtoscStatus::Panic => b"panic\0",
    };
    s.as_ptr().cast()
}

/// Momentum-shift oscillator with potential strength `w_potential` and shift `l_shift`.
#[no_mangle]
pub unsafe extern "C" fn ptosc_spec_new_momentum(w_potential: f64, l_shift: f64, out: *mut *mut PtoscSpec) -> PtoscStatus {
    guard(|| {
        check_out(out, "out")?;
        let spec = OscillatorSpec::momentum(w_potential, l_shift).or_status()?;
        out.write(Box::into_raw(Box::new(PtoscSpec(spec))));
        Ok(())
    })
}

/// Coordinate-shift oscillator with kinetic strength `l_kinetic` and shift `r_shift`.
#[no_mangle]
pub unsafe extern "C" fn ptosc_spec_new_coordinate(l_kinetic: f64, r_shift: f64, out: *mut *mut PtoscSpec) -> PtoscStatus {
    guard(|| {
        check_out(out, "out")?;
        let spec = OscillatorSpec::coordinate(l_kinetic, r_shift).or_status()?;
        out.write(Box::into_raw(Box::new(PtoscSpec(spec))));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ptosc_spec_free(spec: *mut PtoscSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Auxiliary frequency for `strategy`; `manual_w` is read only for manual.
#[no_mangle]
pub unsafe extern "C" fn ptosc_select_frequency(
    spec: *const PtoscSpec,
    strategy: PtoscStrategy,
    manual_w: f64,
    out_w: *mut f64,
) -> PtoscStatus {
    guard(|| {
        let spec = deref(spec, "spec")?;
        let choice = model::select_frequency(&spec.0, strategy.into(), manual(strategy, manual_w)).or_status()?;
        write_out(out_w, choice.w(), "out_w")
    })
}

#[no_mangle]
pub unsafe extern "C" fn ptosc_coefficients(spec: *const PtoscSpec, w: f64, out: *mut PtoscCoefficients) -> PtoscStatus {
    guard(|| {
        let spec = deref(spec, "spec")?;
        let c = model::coefficients(&spec.0, w).or_status()?;
        write_out(out, PtoscCoefficients { d: c.d, u: c.u, v: c.v }, "out")
    })
}

/// Diagonal energy of level `n`; `out_is_eigenvalue` is false when that value
/// is only an expectation (variational or manual frequency).
#[no_mangle]
pub unsafe extern "C" fn ptosc_closed_form_energy(
    spec: *const PtoscSpec,
    strategy: PtoscStrategy,
    manual_w: f64,
    n: u64,
    out_value: *mut f64,
    out_is_eigenvalue: *mut bool,
) -> PtoscStatus {
    guard(|| {
        let spec = deref(spec, "spec")?;
        check_out(out_value, "out_value")?;
        check_out(out_is_eigenvalue, "out_is_eigenvalue")?;
        let choice = model::select_frequency(&spec.0, strategy.into(), manual(strategy, manual_w)).or_status()?;
        let e = model::closed_form_energy(&spec.0, &choice, n).or_status()?;
        out_value.write(e.value);
        out_is_eigenvalue.write(e.is_eigenvalue);
        Ok(())
    })
}

/// Truncated Hamiltonian of size `size` at frequency `w`.
#[no_mangle]
pub unsafe extern "C" fn ptosc_hamiltonian(
    spec: *const PtoscSpec,
    w: f64,
    size: usize,
    assembly: PtoscAssembly,
    out: *mut *mut PtoscMatrix,
) -> PtoscStatus {
    guard(|| {
        let spec = deref(spec, "spec")?;
        check_out(out, "out")?;
        let how = match assembly {
            PtoscAssembly::Direct => Assembly::Direct,
            PtoscAssembly::SecondQuantized => Assembly::SecondQuantized,
        };
        let m = fock::hamiltonian(&spec.0, w, size, how).or_status()?;
        out.write(Box::into_raw(Box::new(PtoscMatrix(m))));
        Ok(())
    })
}

/// Dimension of `m`, or 0 for null.
#[no_mangle]
pub unsafe extern "C" fn ptosc_matrix_dim(m: *const PtoscMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.dim())
}

#[no_mangle]
pub unsafe extern "C" fn ptosc_matrix_get(m: *const PtoscMatrix, row: usize, col: usize, out: *mut PtoscComplex) -> PtoscStatus {
    guard(|| {
        let m = deref(m, "matrix")?;
        let n = m.0.dim();
        if row >= n || col >= n {
            return Err(fail(PtoscStatus::OutOfRange, format!("entry ({row}, {col}) outside {n}x{n}")));
        }
        let z = m.0[(row, col)];
        write_out(out, PtoscComplex { re: z.re, im: z.im }, "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn ptosc_matrix_free(m: *mut PtoscMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// All eigenvalues of `m`, sorted.
#[no_mangle]
pub unsafe extern "C" fn ptosc_matrix_spectrum(m: *const PtoscMatrix, sort: PtoscSort, out: *mut *mut PtoscSpectrum) -> PtoscStatus {
    guard(|| {
        let m = deref(m, "matrix")?;
        check_out(out, "out")?;
        let s = Spectrum::of(&m.0, sort.into()).or_status()?;
        out.write(Box::into_raw(Box::new(PtoscSpectrum(s))));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ptosc_spectrum_len(s: *const PtoscSpectrum) -> usize {
    s.as_ref().map_or(0, |s| s.0.len())
}

#[no_mangle]
pub unsafe extern "C" fn ptosc_spectrum_get(s: *const PtoscSpectrum, index: usize, out: *mut PtoscComplex) -> PtoscStatus {
    guard(|| {
        let s = deref(s, "spectrum")?;
        let z = *s.0.values.get(index).ok_or_else(|| fail(PtoscStatus::OutOfRange, format!("index {index} >= {}", s.0.len())))?;
        write_out(out, PtoscComplex { re: z.re, im: z.im }, "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn ptosc_spectrum_free(s: *mut PtoscSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Builds, diagonalizes and classifies the leading `count` eigenvalues.
#[no_mangle]
pub unsafe extern "C" fn ptosc_diagnose(
    spec: *const PtoscSpec,
    strategy: PtoscStrategy,
    manual_w: f64,
    basis_size: usize,
    count: usize,
    tol_real: f64,
    sort: PtoscSort,
    out: *mut *mut PtoscDiagnosis,
) -> PtoscStatus {
    guard(|| {
        let spec = deref(spec, "spec")?;
        check_out(out, "out")?;
        if count == 0 || count > basis_size {
            return Err(fail(PtoscStatus::OutOfRange, format!("count {count} must be in 1..={basis_size}")));
        }
        let choice = model::select_frequency(&spec.0, strategy.into(), manual(strategy, manual_w)).or_status()?;
        let opts = DiagnoseOptions { basis_size, examined_count: count, tol_real, sort_mode: sort.into() };
        let d = analysis::diagnose_with(&spec.0, &choice, &opts).or_status()?;
        out.write(Box::into_raw(Box::new(PtoscDiagnosis(d))));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ptosc_diagnosis_verdict(d: *const PtoscDiagnosis, out: *mut PtoscVerdict) -> PtoscStatus {
    guard(|| write_out(out, deref(d, "diagnosis")?.0.verdict.into(), "out"))
}

/// Frequency the diagnosis was run at, or NaN for null.
#[no_mangle]
pub unsafe extern "C" fn ptosc_diagnosis_frequency(d: *const PtoscDiagnosis) -> f64 {
    d.as_ref().map_or(f64::NAN, |d| d.0.choice.w())
}

/// Number of examined eigenvalues, or 0 for null.
#[no_mangle]
pub unsafe extern "C" fn ptosc_diagnosis_count(d: *const PtoscDiagnosis) -> usize {
    d.as_ref().map_or(0, |d| d.0.examined_count)
}

/// Examined eigenvalue `index` and its class. `out_class` may be null.
#[no_mangle]
pub unsafe extern "C" fn ptosc_diagnosis_value(
    d: *const PtoscDiagnosis,
    index: usize,
    out: *mut PtoscComplex,
    out_class: *mut PtoscValueClass,
) -> PtoscStatus {
    guard(|| {
        let d = deref(d, "diagnosis")?;
        check_out(out, "out")?;
        let (_, z, class) = d
            .0
            .examined()
            .nth(index)
            .ok_or_else(|| fail(PtoscStatus::OutOfRange, format!("index {index} >= {}", d.0.examined_count)))?;
        out.write(PtoscComplex { re: z.re, im: z.im });
        if !out_class.is_null() {
            out_class.write(match class {
                ValueClass::Real => PtoscValueClass::Real,
                ValueClass::Pair(_) => PtoscValueClass::Pair,
                ValueClass::Stray => PtoscValueClass::Stray,
            });
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ptosc_diagnosis_free(d: *mut PtoscDiagnosis) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}
