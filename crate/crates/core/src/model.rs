//! Closed-form algebra of the two shifted-oscillator families.
//!
//! Both families are quadratic in `x` and `p`. Substituting
//! `x = (a + a†)/sqrt(2w)` and `p = i sqrt(w/2) (a† - a)` brings the
//! Hamiltonian to the form
//!
//! ```text
//! H = d (2a†a + 1)/2 + u a²/2 + v (a†)²/2
//! ```
//!
//! with real coefficients `d`, `u`, `v` that depend on the auxiliary
//! frequency `w`. Choosing `w` to kill `u` or `v` leaves a triangular
//! truncated matrix whose eigenvalues are the diagonal `d/2 (2n + 1)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `H = (p + i L x)² + W² x²`
    MomentumShift,
    /// `H = L² p² + (x + i R p)²`
    CoordinateShift,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::MomentumShift => "momentum",
            Family::CoordinateShift => "coordinate",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One oscillator of either family.
///
/// `strength` is `W` for the momentum-shift family and `L` for the
/// coordinate-shift family; `shift` is `L` and `R` respectively. The
/// closed-form energies are always `±(2n + 1)·strength`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillatorSpec {
    family: Family,
    strength: f64,
    shift: f64,
}

impl OscillatorSpec {
    /// `H = (p + i L x)² + W² x²` with `W > 0`, `L >= 0`.
    pub fn momentum(w_potential: f64, l_shift: f64) -> Result<Self> {
        Self::new(Family::MomentumShift, w_potential, l_shift)
    }

    /// `H = L² p² + (x + i R p)²` with `L > 0`, `R >= 0`.
    pub fn coordinate(l_kinetic: f64, r_shift: f64) -> Result<Self> {
        Self::new(Family::CoordinateShift, l_kinetic, r_shift)
    }

    pub fn new(family: Family, strength: f64, shift: f64) -> Result<Self> {
        let (sname, hname) = match family {
            Family::MomentumShift => ("W", "L"),
            Family::CoordinateShift => ("L", "R"),
        };
        if !(strength.is_finite() && strength > 0.0) {
            return Err(Error::domain(format!("{sname} must be finite and > 0, got {strength}")));
        }
        if !(shift.is_finite() && shift >= 0.0) {
            return Err(Error::domain(format!("{hname} must be finite and >= 0, got {shift}")));
        }
        Ok(Self { family, strength, shift })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// A zero shift leaves an ordinary Hermitian oscillator.
    pub fn is_hermitian(&self) -> bool {
        self.shift == 0.0
    }

    /// `(W, L, R)` as printed in reports; absent parameters are `None`.
    pub fn named_params(&self) -> (Option<f64>, Option<f64>, Option<f64>) {
        match self.family {
            Family::MomentumShift => (Some(self.strength), Some(self.shift), None),
            Family::CoordinateShift => (None, Some(self.strength), Some(self.shift)),
        }
    }
}

impl fmt::Display for OscillatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::MomentumShift => write!(f, "momentum(W={}, L={})", self.strength, self.shift),
            Family::CoordinateShift => write!(f, "coordinate(L={}, R={})", self.strength, self.shift),
        }
    }
}

/// Where an auxiliary frequency came from.
///
/// For the coordinate-shift family the roots are `SumRoot = 1/(L - R)`,
/// `DiffRoot = 1/(R + L)` and `NegDiffRoot = 1/(R - L)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrequencyLabel {
    SumRoot,
    DiffRoot,
    NegDiffRoot,
    Variational,
    Manual,
}

impl FrequencyLabel {
    pub const ROOTS: [FrequencyLabel; 3] = [Self::SumRoot, Self::DiffRoot, Self::NegDiffRoot];

    /// Roots zero an off-diagonal coefficient, so their energies are exact.
    pub fn has_closed_form(self) -> bool {
        matches!(self, Self::SumRoot | Self::DiffRoot | Self::NegDiffRoot)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::SumRoot => "sum",
            Self::DiffRoot => "diff",
            Self::NegDiffRoot => "negdiff",
            Self::Variational => "variational",
            Self::Manual => "manual",
        }
    }
}

impl fmt::Display for FrequencyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A positive, finite auxiliary frequency tagged with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrequencyChoice {
    label: FrequencyLabel,
    w: f64,
}

impl FrequencyChoice {
    pub fn new(label: FrequencyLabel, w: f64) -> Result<Self> {
        if !w.is_finite() {
            return Err(Error::Rejected { label, reason: format!("w = {w} is not finite") });
        }
        if w <= 0.0 {
            return Err(Error::Rejected { label, reason: format!("w = {w} is not > 0") });
        }
        Ok(Self { label, w })
    }

    pub fn manual(w: f64) -> Result<Self> {
        Self::new(FrequencyLabel::Manual, w)
    }

    pub fn label(&self) -> FrequencyLabel {
        self.label
    }

    pub fn w(&self) -> f64 {
        self.w
    }
}

/// A candidate frequency that did not survive the positivity check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rejection {
    pub label: FrequencyLabel,
    pub value: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidates {
    pub accepted: Vec<FrequencyChoice>,
    pub rejected: Vec<Rejection>,
}

impl Candidates {
    pub fn get(&self, label: FrequencyLabel) -> Option<FrequencyChoice> {
        self.accepted.iter().copied().find(|c| c.label == label)
    }
}

/// Coefficients of `d (2a†a + 1)/2 + u a²/2 + v (a†)²/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadraticCoefficients {
    pub d: f64,
    pub u: f64,
    pub v: f64,
}

pub fn coefficients(spec: &OscillatorSpec, w: f64) -> Result<QuadraticCoefficients> {
    if !(w.is_finite() && w > 0.0) {
        return Err(Error::domain(format!("w must be finite and > 0, got {w}")));
    }
    let (s, h) = (spec.strength, spec.shift);
    let q = match spec.family {
        Family::MomentumShift => {
            let c = (s * s - h * h) / w;
            QuadraticCoefficients { d: w + c, u: -w + c + 2.0 * h, v: -w + c - 2.0 * h }
        }
        Family::CoordinateShift => {
            let c = (s * s - h * h) * w;
            let inv = 1.0 / w;
            QuadraticCoefficients { d: c + inv, u: -c + inv + 2.0 * h, v: -c + inv - 2.0 * h }
        }
    };
    if !(q.d.is_finite() && q.u.is_finite() && q.v.is_finite()) {
        return Err(Error::NonFinite("quadratic coefficients"));
    }
    Ok(q)
}

fn raw_candidate(spec: &OscillatorSpec, label: FrequencyLabel) -> f64 {
    let (s, h) = (spec.strength, spec.shift);
    match (spec.family, label) {
        (Family::MomentumShift, FrequencyLabel::SumRoot) => h + s,
        (Family::MomentumShift, FrequencyLabel::DiffRoot) => h - s,
        (Family::MomentumShift, FrequencyLabel::NegDiffRoot) => s - h,
        (Family::MomentumShift, FrequencyLabel::Variational) => (s * s - h * h).sqrt(),
        (Family::CoordinateShift, FrequencyLabel::SumRoot) => 1.0 / (s - h),
        (Family::CoordinateShift, FrequencyLabel::DiffRoot) => 1.0 / (h + s),
        (Family::CoordinateShift, FrequencyLabel::NegDiffRoot) => 1.0 / (h - s),
        (Family::CoordinateShift, FrequencyLabel::Variational) => 1.0 / (s * s - h * h).sqrt(),
        (_, FrequencyLabel::Manual) => f64::NAN,
    }
}

fn candidate(spec: &OscillatorSpec, label: FrequencyLabel) -> std::result::Result<FrequencyChoice, Rejection> {
    let value = raw_candidate(spec, label);
    if label == FrequencyLabel::Variational {
        if let Err(Error::Domain(reason)) = variational_frequency(spec) {
            return Err(Rejection { label, value, reason });
        }
    }
    FrequencyChoice::new(label, value).map_err(|e| {
        let reason = match e {
            Error::Rejected { reason, .. } => reason,
            other => other.to_string(),
        };
        Rejection { label, value, reason }
    })
}

/// All root and variational frequencies, split into admissible and rejected.
pub fn candidate_frequencies(spec: &OscillatorSpec) -> Candidates {
    let mut accepted = Vec::new();
    let mut rejected = Vec::new();
    for label in FrequencyLabel::ROOTS.into_iter().chain([FrequencyLabel::Variational]) {
        match candidate(spec, label) {
            Ok(c) => accepted.push(c),
            Err(r) => rejected.push(r),
        }
    }
    Candidates { accepted, rejected }
}

/// Stationary point of `d(w)`: `sqrt(W² - L²)` or `1/sqrt(L² - R²)`.
pub fn variational_frequency(spec: &OscillatorSpec) -> Result<FrequencyChoice> {
    let (s, h) = (spec.strength, spec.shift);
    if s <= h {
        let msg = match spec.family {
            Family::MomentumShift => format!("variational frequency requires W > L (W={s}, L={h})"),
            Family::CoordinateShift => format!("variational frequency requires L > R (L={s}, R={h})"),
        };
        return Err(Error::Domain(msg));
    }
    let w = raw_candidate(spec, FrequencyLabel::Variational);
    FrequencyChoice::new(FrequencyLabel::Variational, w)
        .map_err(|e| Error::domain(e.to_string()))
}

/// Picks one frequency by provenance. `Manual` carries its own value.
pub fn select_frequency(spec: &OscillatorSpec, label: FrequencyLabel, manual_w: Option<f64>) -> Result<FrequencyChoice> {
    match label {
        FrequencyLabel::Manual => {
            let w = manual_w.ok_or_else(|| Error::domain("manual frequency requires an explicit w"))?;
            FrequencyChoice::manual(w)
        }
        FrequencyLabel::Variational => variational_frequency(spec),
        root => candidate(spec, root).map_err(|r| Error::Rejected { label: r.label, reason: r.reason }),
    }
}

/// Diagonal energy `d(w)/2 · (2n + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormEnergy {
    pub value: f64,
    /// False for variational/manual choices: the value is only the
    /// diagonal expectation, not an eigenvalue.
    pub is_eigenvalue: bool,
}

pub fn closed_form_energy(spec: &OscillatorSpec, choice: &FrequencyChoice, n: u64) -> Result<ClosedFormEnergy> {
    let q = coefficients(spec, choice.w)?;
    Ok(ClosedFormEnergy {
        value: 0.5 * q.d * (2 * n + 1) as f64,
        is_eigenvalue: choice.label.has_closed_form(),
    })
}


#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    fn any_spec() -> impl Strategy<Value = OscillatorSpec> {
        (any::<bool>(), 0.1f64..30.0, 0.0f64..30.0).prop_map(|(m, s, h)| {
            if m {
                OscillatorSpec::momentum(s, h).unwrap()
            } else {
                OscillatorSpec::coordinate(s, h).unwrap()
            }
        })
    }

    proptest! {
        #[test]
        fn shift_difference_is_four_times_shift(spec in any_spec(), w in 0.01f64..100.0) {
            let q = coefficients(&spec, w).unwrap();
            let scale = q.u.abs().max(q.v.abs()).max(1.0);
            prop_assert!(((q.u - q.v) - 4.0 * spec.shift()).abs() <= 1e-12 * scale);
        }

        #[test]
        fn roots_zero_an_off_diagonal(spec in any_spec()) {
            for c in candidate_frequencies(&spec).accepted {
                let q = coefficients(&spec, c.w()).unwrap();
                let scale = q.d.abs().max(spec.strength()).max(spec.shift()).max(1.0);
                match (spec.family(), c.label()) {
                    (Family::MomentumShift, FrequencyLabel::SumRoot | FrequencyLabel::DiffRoot)
                    | (Family::CoordinateShift, FrequencyLabel::SumRoot) => {
                        prop_assert!(q.u.abs() <= 1e-12 * scale, "u = {}", q.u)
                    }
                    (Family::MomentumShift, FrequencyLabel::NegDiffRoot)
                    | (Family::CoordinateShift, FrequencyLabel::DiffRoot | FrequencyLabel::NegDiffRoot) => {
                        prop_assert!(q.v.abs() <= 1e-12 * scale, "v = {}", q.v)
                    }
                    _ => {}
                }
            }
        }

        #[test]
        fn root_energies_are_plus_minus_strength(spec in any_spec(), n in 0u64..50) {
            for c in candidate_frequencies(&spec).accepted {
                if !c.label().has_closed_form() {
                    continue;
                }
                let e = closed_form_energy(&spec, &c, n).unwrap().value;
                let magnitude = (2 * n + 1) as f64 * spec.strength();
                prop_assert!((e.abs() - magnitude).abs() <= 1e-10 * magnitude.max(1.0));
            }
        }
    }
}
