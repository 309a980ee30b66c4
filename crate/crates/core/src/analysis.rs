//! PT diagnosis, truncation convergence and parameter sweeps.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::eigen::{classify, Classification, SortMode, Spectrum, ValueClass, DEFAULT_TOL_REAL};
use crate::error::{Error, Result};
use crate::fock::hamiltonian_direct;
use crate::model::{closed_form_energy, select_frequency, Family, FrequencyChoice, FrequencyLabel, OscillatorSpec};

pub const DEFAULT_BASIS_SIZE: usize = 100;
pub const DEFAULT_EXAMINED: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    AllRealPositive,
    AllRealNegative,
    /// Complex values among the examined ones.
    Broken,
    /// All real, both signs present (or a zero).
    MixedReal,
}

impl Verdict {
    /// Whether the real-spectrum condition holds for this verdict.
    pub fn pt_holds(self) -> bool {
        matches!(self, Verdict::AllRealPositive | Verdict::AllRealNegative)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::AllRealPositive => "all-real-positive",
            Verdict::AllRealNegative => "all-real-negative",
            Verdict::Broken => "broken",
            Verdict::MixedReal => "mixed-real",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnoseOptions {
    pub basis_size: usize,
    pub examined_count: usize,
    pub tol_real: f64,
    pub sort_mode: SortMode,
}

impl Default for DiagnoseOptions {
    fn default() -> Self {
        Self {
            basis_size: DEFAULT_BASIS_SIZE,
            examined_count: DEFAULT_EXAMINED,
            tol_real: DEFAULT_TOL_REAL,
            sort_mode: SortMode::ByMagnitude,
        }
    }
}

/// Verdict for one `(spec, w, N)` with the eigenvalue evidence behind it.
///
/// The whole spectrum is classified so that a conjugate pair straddling
/// the examined cutoff is still recognised as a pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PTDiagnosis {
    pub spec: OscillatorSpec,
    pub choice: FrequencyChoice,
    pub basis_size: usize,
    pub verdict: Verdict,
    pub evidence: Spectrum,
    pub classification: Classification,
    pub examined_count: usize,
}

impl PTDiagnosis {
    /// `(index, value, class)` of the examined leading values.
    pub fn examined(&self) -> impl Iterator<Item = (usize, Complex64, ValueClass)> + '_ {
        self.evidence
            .values
            .iter()
            .zip(&self.classification.labels)
            .take(self.examined_count)
            .enumerate()
            .map(|(i, (&z, &l))| (i, z, l))
    }

    pub fn examined_reals(&self) -> Vec<f64> {
        self.examined().filter(|(_, _, l)| *l == ValueClass::Real).map(|(_, z, _)| z.re).collect()
    }

    /// Pairs with at least one member among the examined values.
    pub fn examined_pairs(&self) -> Vec<(Complex64, Complex64)> {
        let mut ids: Vec<usize> = Vec::new();
        for (_, _, l) in self.examined() {
            if let ValueClass::Pair(id) = l {
                if !ids.contains(&id) {
                    ids.push(id);
                }
            }
        }
        ids.into_iter().map(|id| self.classification.pairs[id]).collect()
    }
}

fn verdict_of(labels: &[ValueClass], values: &[Complex64]) -> Verdict {
    if labels.iter().any(|l| *l != ValueClass::Real) {
        return Verdict::Broken;
    }
    if values.iter().all(|z| z.re > 0.0) {
        Verdict::AllRealPositive
    } else if values.iter().all(|z| z.re < 0.0) {
        Verdict::AllRealNegative
    } else {
        Verdict::MixedReal
    }
}

pub fn diagnose_with(spec: &OscillatorSpec, choice: &FrequencyChoice, opts: &DiagnoseOptions) -> Result<PTDiagnosis> {
    if opts.examined_count == 0 || opts.examined_count > opts.basis_size {
        return Err(Error::domain(format!(
            "need 1 <= examined count <= N, got count={} N={}",
            opts.examined_count, opts.basis_size
        )));
    }
    if !(opts.tol_real.is_finite() && opts.tol_real > 0.0) {
        return Err(Error::domain(format!("tol_real must be > 0, got {}", opts.tol_real)));
    }
    let h = hamiltonian_direct(spec, choice.w(), opts.basis_size)?;
    let mut evidence = Spectrum::of(&h, opts.sort_mode)?;
    evidence.tol_real = opts.tol_real;
    let classification = evidence.classify();
    let k = opts.examined_count;
    let verdict = verdict_of(&classification.labels[..k], &evidence.values[..k]);
    Ok(PTDiagnosis {
        spec: *spec,
        choice: *choice,
        basis_size: opts.basis_size,
        verdict,
        evidence,
        classification,
        examined_count: k,
    })
}

/// Diagnosis with magnitude ordering, the listing order of the reference tables.
pub fn diagnose(spec: &OscillatorSpec, choice: &FrequencyChoice, basis_size: usize, examined_count: usize, tol_real: f64) -> Result<PTDiagnosis> {
    diagnose_with(spec, choice, &DiagnoseOptions { basis_size, examined_count, tol_real, sort_mode: SortMode::ByMagnitude })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DriftRecord {
    pub small: Complex64Repr,
    pub large: Complex64Repr,
    pub drift: f64,
}

/// Serializable mirror of a complex number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Complex64Repr {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Complex64Repr {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<Complex64Repr> for Complex64 {
    fn from(z: Complex64Repr) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub small_size: usize,
    pub large_size: usize,
    pub drift_tol: f64,
    /// One record per eigenvalue of the smaller basis, by real part.
    pub records: Vec<DriftRecord>,
    /// Length of the leading run with `drift <= drift_tol·max(1, |λ|)`.
    pub stable_count: usize,
}

/// Compares spectra at two basis sizes.
///
/// Each eigenvalue at `small` is matched with its nearest neighbour at
/// `large` (a value at `large` may serve several matches); the stable run
/// is counted from the lowest real part upwards.
pub fn converged_subset(spec: &OscillatorSpec, choice: &FrequencyChoice, small: usize, large: usize, drift_tol: f64) -> Result<ConvergenceReport> {
    if !(4 <= small && small < large) {
        return Err(Error::domain(format!("need 4 <= N1 < N2, got N1={small} N2={large}")));
    }
    if !(drift_tol.is_finite() && drift_tol > 0.0) {
        return Err(Error::domain(format!("drift tolerance must be > 0, got {drift_tol}")));
    }
    let spectrum = |n| -> Result<Spectrum> { Spectrum::of(&hamiltonian_direct(spec, choice.w(), n)?, SortMode::ByRealPart) };
    let lo = spectrum(small)?;
    let hi = spectrum(large)?;
    let records: Vec<DriftRecord> = lo
        .values
        .iter()
        .map(|&z| {
            let nearest = hi
                .values
                .iter()
                .copied()
                .min_by(|a, b| (a - z).norm().total_cmp(&(b - z).norm()))
                .expect("non-empty spectrum");
            DriftRecord { small: z.into(), large: nearest.into(), drift: (nearest - z).norm() }
        })
        .collect();
    let stable_count = records
        .iter()
        .take_while(|r| r.drift <= drift_tol * Complex64::from(r.small).norm().max(1.0))
        .count();
    Ok(ConvergenceReport { small_size: small, large_size: large, drift_tol, records, stable_count })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub n: u64,
    pub computed: f64,
    pub closed_form: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormComparison {
    pub rows: Vec<ComparisonRow>,
    /// Fewer than the requested number of real values were available.
    pub partial: bool,
}

impl ClosedFormComparison {
    pub fn max_abs_error(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_error).fold(0.0, f64::max)
    }

    pub fn max_rel_error(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.abs_error / r.closed_form.abs().max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
    }
}

/// Pairs the `k` lowest-modulus examined real eigenvalues with `d(w)/2·(2n+1)`.
pub fn compare_closed_form(diag: &PTDiagnosis, k: usize) -> Result<ClosedFormComparison> {
    let label = diag.choice.label();
    if !label.has_closed_form() {
        return Err(Error::NoClosedForm(label));
    }
    let mut reals = diag.examined_reals();
    reals.sort_by(|a, b| a.abs().total_cmp(&b.abs()).then(a.total_cmp(b)));
    let partial = reals.len() < k;
    let rows = reals
        .into_iter()
        .take(k)
        .enumerate()
        .map(|(n, computed)| {
            let n = n as u64;
            let closed_form = closed_form_energy(&diag.spec, &diag.choice, n)?.value;
            Ok(ComparisonRow { n, computed, closed_form, abs_error: (computed - closed_form).abs() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClosedFormComparison { rows, partial })
}

/// Which parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepAxis {
    /// `W` (momentum family) or `L` (coordinate family).
    Strength,
    /// `L` (momentum family) or `R` (coordinate family).
    Shift,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRequest {
    pub family: Family,
    pub strength: f64,
    pub shift: f64,
    pub axis: SweepAxis,
    pub values: Vec<f64>,
    pub strategy: FrequencyLabel,
    pub manual_w: Option<f64>,
    pub options: DiagnoseOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepOutcome {
    Diagnosed(Box<PTDiagnosis>),
    /// The grid point has no admissible spec or frequency.
    Rejected(String),
    Failed(Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub index: usize,
    pub value: f64,
    pub spec: Option<OscillatorSpec>,
    pub outcome: SweepOutcome,
}

fn sweep_point(req: &SweepRequest, index: usize, value: f64) -> SweepRow {
    let (strength, shift) = match req.axis {
        SweepAxis::Strength => (value, req.shift),
        SweepAxis::Shift => (req.strength, value),
    };
    let spec = match OscillatorSpec::new(req.family, strength, shift) {
        Ok(s) => s,
        Err(e) => return SweepRow { index, value, spec: None, outcome: SweepOutcome::Rejected(e.to_string()) },
    };
    let outcome = match select_frequency(&spec, req.strategy, req.manual_w) {
        Err(e) => SweepOutcome::Rejected(e.to_string()),
        Ok(choice) => match diagnose_with(&spec, &choice, &req.options) {
            Ok(d) => SweepOutcome::Diagnosed(Box::new(d)),
            Err(e) => SweepOutcome::Failed(e),
        },
    };
    SweepRow { index, value, spec: Some(spec), outcome }
}

/// One row per grid value, in grid order; points run in parallel.
pub fn sweep(req: &SweepRequest) -> Vec<SweepRow> {
    req.values
        .par_iter()
        .enumerate()
        .map(|(i, &v)| sweep_point(req, i, v))
        .collect()
}

/// Re-classifies an arbitrary slice with the diagnosis rules.
pub fn verdict_for(values: &[Complex64], tol_real: f64) -> Verdict {
    let cl = classify(values, tol_real);
    verdict_of(&cl.labels, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn choice(spec: &OscillatorSpec, label: FrequencyLabel) -> FrequencyChoice {
        select_frequency(spec, label, None).unwrap()
    }

    #[test]
    fn sum_root_is_isospectral() {
        let spec = OscillatorSpec::momentum(10.0, 5.4).unwrap();
        let d = diagnose(&spec, &choice(&spec, FrequencyLabel::SumRoot), 100, 40, 1e-6).unwrap();
        assert_eq!(d.verdict, Verdict::AllRealPositive);
        let reals = d.examined_reals();
        for (got, want) in reals.iter().zip([10.0, 30.0, 50.0, 70.0, 90.0]) {
            assert!((got - want).abs() < 1e-6);
        }
    }

    #[test]
    fn diff_root_is_negative() {
        let spec = OscillatorSpec::momentum(5.4, 10.0).unwrap();
        let d = diagnose(&spec, &choice(&spec, FrequencyLabel::DiffRoot), 100, 40, 1e-6).unwrap();
        assert_eq!(d.verdict, Verdict::AllRealNegative);
        for (got, want) in d.examined_reals().iter().zip([-5.4, -16.2, -27.0, -37.8]) {
            assert!((got - want).abs() < 1e-6, "{got} vs {want}");
        }
    }

    #[test]
    fn variational_spectrum_contains_the_large_pair() {
        let spec = OscillatorSpec::momentum(10.0, 5.4).unwrap();
        let d = diagnose(&spec, &choice(&spec, FrequencyLabel::Variational), 100, 50, 1e-6).unwrap();
        assert_eq!(d.verdict, Verdict::Broken);
        assert!(d
            .examined_pairs()
            .iter()
            .any(|(a, _)| (a.re - 816.4).abs() < 1.0 && (a.im.abs() - 28.4).abs() < 1.0));
    }

    #[test]
    fn examined_count_is_validated() {
        let spec = OscillatorSpec::momentum(1.0, 0.0).unwrap();
        let w = FrequencyChoice::manual(1.0).unwrap();
        assert!(diagnose(&spec, &w, 10, 11, 1e-6).is_err());
        assert!(diagnose(&spec, &w, 10, 0, 1e-6).is_err());
        assert!(diagnose(&spec, &w, 10, 5, 0.0).is_err());
    }

    #[test]
    fn verdict_rules() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(verdict_for(&[c(1.0, 0.0), c(3.0, 0.0)], 1e-6), Verdict::AllRealPositive);
        assert_eq!(verdict_for(&[c(-1.0, 0.0), c(-3.0, 0.0)], 1e-6), Verdict::AllRealNegative);
        assert_eq!(verdict_for(&[c(-1.0, 0.0), c(3.0, 0.0)], 1e-6), Verdict::MixedReal);
        assert_eq!(verdict_for(&[c(1.0, 0.0), c(3.0, 1.0), c(3.0, -1.0)], 1e-6), Verdict::Broken);
        assert_eq!(verdict_for(&[c(1.0, 0.0), c(3.0, 1.0)], 1e-6), Verdict::Broken);
    }

    #[test]
    fn pair_straddling_the_cutoff_counts() {
        // first 41 by magnitude end inside the 816.39 pair
        let spec = OscillatorSpec::momentum(10.0, 5.4).unwrap();
        let d = diagnose(&spec, &choice(&spec, FrequencyLabel::Variational), 100, 41, 1e-6).unwrap();
        assert_eq!(d.verdict, Verdict::Broken);
        assert_eq!(d.examined_pairs().len(), 1);
        assert!(d.classification.strays.is_empty());
    }

    #[test]
    fn closed_form_comparison() {
        let spec = OscillatorSpec::coordinate(8.0, 10.0).unwrap();
        let d = diagnose(&spec, &choice(&spec, FrequencyLabel::NegDiffRoot), 100, 40, 1e-6).unwrap();
        let cmp = compare_closed_form(&d, 4).unwrap();
        assert!(!cmp.partial);
        let want = [-8.0, -24.0, -40.0, -56.0];
        for (row, w) in cmp.rows.iter().zip(want) {
            assert!((row.closed_form - w).abs() < 1e-12);
            assert!(row.abs_error < 1e-8);
        }

        let herm = OscillatorSpec::momentum(2.5, 0.0).unwrap();
        let d = diagnose(&herm, &choice(&herm, FrequencyLabel::SumRoot), 100, 40, 1e-6).unwrap();
        let cmp = compare_closed_form(&d, 10).unwrap();
        for row in &cmp.rows {
            assert!((row.computed - 2.5 * (2 * row.n + 1) as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn closed_form_needs_a_root() {
        let spec = OscillatorSpec::momentum(10.0, 5.4).unwrap();
        let d = diagnose(&spec, &choice(&spec, FrequencyLabel::Variational), 100, 40, 1e-6).unwrap();
        assert_eq!(compare_closed_form(&d, 3), Err(Error::NoClosedForm(FrequencyLabel::Variational)));
    }

    #[test]
    fn partial_comparison_is_flagged() {
        let spec = OscillatorSpec::momentum(1.0, 0.0).unwrap();
        let d = diagnose(&spec, &choice(&spec, FrequencyLabel::SumRoot), 10, 5, 1e-6).unwrap();
        let cmp = compare_closed_form(&d, 8).unwrap();
        assert!(cmp.partial);
        assert_eq!(cmp.rows.len(), 5);
    }

    #[test]
    fn convergence_hermitian() {
        let spec = OscillatorSpec::momentum(1.0, 0.0).unwrap();
        let w = FrequencyChoice::manual(1.0).unwrap();
        let rep = converged_subset(&spec, &w, 50, 100, 1e-8).unwrap();
        assert!(rep.stable_count >= 40);
        assert_eq!(rep.records.len(), 50);
        for (n, r) in rep.records.iter().take(20).enumerate() {
            assert!((r.small.re - (2 * n + 1) as f64).abs() < 1e-10);
        }
        assert!(converged_subset(&spec, &w, 50, 50, 1e-8).is_err());
        assert!(converged_subset(&spec, &w, 3, 50, 1e-8).is_err());
    }

    #[test]
    fn sweep_rows_follow_the_grid() {
        let req = SweepRequest {
            family: Family::MomentumShift,
            strength: 10.0,
            shift: 0.0,
            axis: SweepAxis::Shift,
            values: vec![0.0, 5.4, 10.0, -1.0],
            strategy: FrequencyLabel::Variational,
            manual_w: None,
            options: DiagnoseOptions { basis_size: 40, examined_count: 10, ..Default::default() },
        };
        let rows = sweep(&req);
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().enumerate().all(|(i, r)| r.index == i));
        match &rows[0].outcome {
            SweepOutcome::Diagnosed(d) => assert_eq!(d.verdict, Verdict::AllRealPositive),
            other => panic!("{other:?}"),
        }
        assert!(matches!(rows[1].outcome, SweepOutcome::Diagnosed(_)));
        assert!(matches!(&rows[2].outcome, SweepOutcome::Rejected(r) if r.contains("W > L")));
        assert!(matches!(rows[3].outcome, SweepOutcome::Rejected(_)));
    }
}
