//! Built-in invariant suite behind the `check` command.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eigen::eigenvalues;
use crate::error::Result;
use crate::fock::{band_max, hamiltonian_direct, hamiltonian_second_quantized, momentum_matrix, position_matrix};
use crate::matrix::ComplexMatrix;
use crate::model::{candidate_frequencies, coefficients, variational_frequency, Family, OscillatorSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }
}

/// Parameter sets used by the bundled checks.
pub fn sample_specs() -> Vec<OscillatorSpec> {
    [
        (Family::MomentumShift, 10.0, 5.4),
        (Family::MomentumShift, 5.4, 10.0),
        (Family::MomentumShift, 1.0, 0.0),
        (Family::CoordinateShift, 10.0, 8.0),
        (Family::CoordinateShift, 8.0, 10.0),
        (Family::CoordinateShift, 2.0, 0.0),
    ]
    .into_iter()
    .map(|(f, s, h)| OscillatorSpec::new(f, s, h).expect("valid sample"))
    .collect()
}

/// `x p - p x - i I`, which should vanish except at the corner.
pub fn commutator_defect(size: usize, w: f64) -> Result<f64> {
    let x = position_matrix(size, w)?;
    let p = momentum_matrix(size, w)?;
    let mut expect = ComplexMatrix::identity(size).scale(Complex64::new(0.0, 1.0));
    expect[(size - 1, size - 1)] = Complex64::new(0.0, 1.0 - size as f64);
    Ok((&(&x * &p) - &(&p * &x)).max_abs_diff(&expect))
}

/// Entrywise gap between the two assembly routes, relative to `‖H‖_max`.
pub fn assembly_gap(spec: &OscillatorSpec, w: f64, size: usize) -> Result<f64> {
    let direct = hamiltonian_direct(spec, w, size)?;
    let sq = hamiltonian_second_quantized(spec, w, size)?;
    Ok(direct.max_abs_diff(&sq) / direct.max_abs().max(f64::MIN_POSITIVE))
}

/// Multiset distance: each expected value matched to its nearest unused
/// computed value; returns the worst residual relative to `max(1, |λ|)`.
pub fn multiset_rel_gap(expected: &[Complex64], computed: &[Complex64]) -> f64 {
    let mut used = vec![false; computed.len()];
    let mut worst: f64 = 0.0;
    for &e in expected {
        let best = computed
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .min_by(|a, b| (a.1 - e).norm().total_cmp(&(b.1 - e).norm()));
        match best {
            Some((j, &z)) => {
                used[j] = true;
                worst = worst.max((z - e).norm() / e.norm().max(1.0));
            }
            None => return f64::INFINITY,
        }
    }
    worst
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// A random upper-triangular matrix and a well-conditioned similarity.
pub fn similarity_instance(rng: &mut ChaCha8Rng, dim: usize) -> (Vec<Complex64>, ComplexMatrix) {
    let diag: Vec<Complex64> = (0..dim)
        .map(|k| Complex64::new(k as f64 + rng.random_range(0.0..0.5), rng.random_range(-2.0..2.0)))
        .collect();
    let t = ComplexMatrix::from_fn(dim, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => diag[r],
        std::cmp::Ordering::Less => random_complex(rng) * 0.5,
        std::cmp::Ordering::Greater => Complex64::new(0.0, 0.0),
    });
    let scale = 0.3 / (dim as f64).sqrt();
    let s = ComplexMatrix::from_fn(dim, |r, c| {
        let z = random_complex(rng) * scale;
        if r == c { z + 1.0 } else { z }
    });
    let s_inv = s.inverse().expect("perturbed identity is invertible");
    (diag, &(&s * &t) * &s_inv)
}

pub fn run_all() -> Vec<CheckResult> {
    let mut out = Vec::new();

    let mut worst: f64 = 0.0;
    for size in [2, 5, 10, 100] {
        for w in [0.1, 1.0, 8.41665] {
            worst = worst.max(commutator_defect(size, w).unwrap_or(f64::INFINITY));
        }
    }
    out.push(CheckResult::new("commutator defect", worst <= 1e-13, format!("max deviation {worst:.3e} (limit 1e-13)")));

    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for spec in sample_specs() {
        for choice in candidate_frequencies(&spec).accepted {
            for size in [10, 50, 100] {
                worst = worst.max(assembly_gap(&spec, choice.w(), size).unwrap_or(f64::INFINITY));
                cases += 1;
            }
        }
    }
    out.push(CheckResult::new("assembly equivalence", worst <= 1e-10, format!("{cases} cases, max relative gap {worst:.3e} (limit 1e-10)")));

    let mut worst: f64 = 0.0;
    let mut band_ok = true;
    for spec in sample_specs() {
        for choice in candidate_frequencies(&spec).accepted.into_iter().filter(|c| c.label().has_closed_form()) {
            let h = match hamiltonian_direct(&spec, choice.w(), 100) {
                Ok(h) => h,
                Err(_) => {
                    worst = f64::INFINITY;
                    continue;
                }
            };
            let q = coefficients(&spec, choice.w()).expect("admissible frequency");
            let tiny = 1e-12 * h.max_abs();
            band_ok &= (q.u.abs() > 1e-12 || band_max(&h, 2) <= tiny) && (q.v.abs() > 1e-12 || band_max(&h, -2) <= tiny);
            let diag: Vec<Complex64> = (0..h.dim()).map(|i| h[(i, i)]).collect();
            worst = worst.max(eigenvalues(&h).map_or(f64::INFINITY, |e| multiset_rel_gap(&diag, &e)));
        }
    }
    out.push(CheckResult::new("triangular ground truth", worst <= 1e-9 && band_ok, format!("max relative gap {worst:.3e} (limit 1e-9), bands {}", if band_ok { "clean" } else { "dirty" })));

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    let mut trace_worst: f64 = 0.0;
    for dim in 2..=20 {
        let (diag, m) = similarity_instance(&mut rng, dim);
        match eigenvalues(&m) {
            Ok(e) => {
                worst = worst.max(multiset_rel_gap(&diag, &e));
                let sum: Complex64 = e.iter().sum();
                trace_worst = trace_worst.max((sum - m.trace()).norm() / (m.max_abs() * dim as f64));
            }
            Err(_) => worst = f64::INFINITY,
        }
    }
    out.push(CheckResult::new("similarity invariance", worst <= 1e-7, format!("dims 2..=20, max relative gap {worst:.3e} (limit 1e-7)")));
    out.push(CheckResult::new("trace identity", trace_worst <= 1e-8, format!("max |sum - trace| / (N ‖M‖) = {trace_worst:.3e} (limit 1e-8)")));

    let analytic = [
        (ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]), vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)]),
        (
            ComplexMatrix::from_real_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 3.0, 0.0], vec![0.0, 0.0, 5.0]]),
            vec![Complex64::new(1.0, 0.0), Complex64::new(3.0, 0.0), Complex64::new(5.0, 0.0)],
        ),
        (ComplexMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]), vec![Complex64::new(1.0, 0.0), Complex64::new(3.0, 0.0)]),
    ];
    let mut worst: f64 = 0.0;
    for (m, want) in analytic {
        let e = m.and_then(|m| eigenvalues(&m));
        worst = worst.max(e.map_or(f64::INFINITY, |e| multiset_rel_gap(&want, &e)));
    }
    out.push(CheckResult::new("analytic small cases", worst <= 1e-12, format!("max gap {worst:.3e} (limit 1e-12)")));

    let mut ok = true;
    let mut worst_fd: f64 = 0.0;
    for spec in sample_specs() {
        let Ok(wv) = variational_frequency(&spec) else { continue };
        let wv = wv.w();
        let d = |w: f64| coefficients(&spec, w).map(|q| q.d).unwrap_or(f64::NAN);
        let dmin = d(wv);
        for k in 0..1000 {
            let w = wv * 10f64.powf(-2.0 + 4.0 * k as f64 / 999.0);
            ok &= d(w) >= dmin - 1e-12 * dmin.abs();
        }
        let h = 1e-6 * wv;
        worst_fd = worst_fd.max(((d(wv + h) - d(wv - h)) / (2.0 * h)).abs());
    }
    out.push(CheckResult::new("variational stationarity", ok && worst_fd < 1e-6, format!("grid minimum {}, |d'(w_v)| = {worst_fd:.3e} (limit 1e-6)", if ok { "holds" } else { "violated" })));

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_checks_pass() {
        for r in run_all() {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }
}
