//! Eigenvalues of dense complex non-Hermitian matrices.
//!
//! The pipeline is the classical one:
//!
//! 1. off-diagonal entries below `16 ε ‖M‖_max` are zeroed;
//! 2. permutation balancing isolates eigenvalues sitting in rows or
//!    columns that are already triangular;
//! 3. diagonal scaling by powers of two balances the remaining block;
//! 4. Householder reduction to upper Hessenberg form;
//! 5. single-shift complex QR (Wilkinson shifts, exceptional shifts on
//!    stagnation) with Ahues-Tisseur deflation.
//!
//! Step 1 is a backward perturbation of the same order as rounding. It
//! matters for the nearly-triangular Hamiltonians produced by the root
//! frequencies: their vanishing band is only zero up to rounding, and the
//! banded part is so non-normal that QR on the unperturbed matrix smears
//! the low-lying eigenvalues. Once those rounding residues are dropped the
//! permutation step recovers the diagonal exactly.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

const EPS: f64 = f64::EPSILON;
const NEGLIGIBLE_FACTOR: f64 = 16.0;
/// QR sweeps allowed per unit of matrix dimension.
pub const SWEEPS_PER_DIM: usize = 40;
const EXCEPTIONAL_EVERY: usize = 10;

#[inline]
fn abs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

#[inline]
fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// All `N` eigenvalues of `m`, in no particular order.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    if !m.is_finite() {
        return Err(Error::NonFinite("eigenvalue input"));
    }
    let n = m.dim();
    match n {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![m[(0, 0)]]),
        _ => {}
    }

    let mut a = m.clone();
    drop_negligible(&mut a);
    let (lo, hi) = permute_isolate(&mut a);

    let mut values = Vec::with_capacity(n);
    for i in (0..lo).chain(hi..n) {
        values.push(a[(i, i)]);
    }
    if lo < hi {
        let mut block = a.principal_block(lo, hi - 1);
        scale_balance(&mut block);
        reduce_to_hessenberg(&mut block);
        let inner = hessenberg_qr(&mut block).map_err(|e| match e {
            Error::NoConvergence { lo: l, hi: h, iterations } => Error::NoConvergence {
                lo: l + lo,
                hi: h + lo,
                iterations,
            },
            other => other,
        })?;
        values.extend(inner);
    }
    Ok(values)
}

fn drop_negligible(a: &mut ComplexMatrix) {
    let tol = NEGLIGIBLE_FACTOR * EPS * a.max_abs();
    let n = a.dim();
    for r in 0..n {
        for c in 0..n {
            if r != c && a[(r, c)].norm() <= tol {
                a[(r, c)] = czero();
            }
        }
    }
}

fn swap_sym(a: &mut ComplexMatrix, i: usize, j: usize) {
    a.swap_rows(i, j);
    a.swap_cols(i, j);
}

/// Moves rows with no off-diagonal entries (inside the active window) to
/// the bottom and columns with none to the top. Returns the half-open
/// active window `lo..hi`; everything outside it is upper triangular.
fn permute_isolate(a: &mut ComplexMatrix) -> (usize, usize) {
    let mut lo = 0usize;
    let mut hi = a.dim();

    while let Some(j) = (lo..hi).rev().find(|&j| (lo..hi).all(|c| c == j || a[(j, c)] == czero())) {
        swap_sym(a, j, hi - 1);
        hi -= 1;
        if hi == lo {
            return (lo, hi);
        }
    }
    while let Some(j) = (lo..hi).find(|&j| (lo..hi).all(|r| r == j || a[(r, j)] == czero())) {
        swap_sym(a, j, lo);
        lo += 1;
        if lo == hi {
            return (lo, hi);
        }
    }
    (lo, hi)
}

/// Diagonal similarity by powers of two until row and column 1-norms of
/// every index are within a factor of two of each other.
fn scale_balance(a: &mut ComplexMatrix) {
    const RADIX: f64 = 2.0;
    let n = a.dim();
    let mut converged = false;
    let mut rounds = 0;
    while !converged && rounds < 100 {
        converged = true;
        rounds += 1;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for j in 0..n {
                if j != i {
                    col += abs1(a[(j, i)]);
                    row += abs1(a[(i, j)]);
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let total = col + row;
            let mut f = 1.0;
            let mut c = col;
            let mut r = row;
            while c < r / RADIX {
                c *= RADIX;
                r /= RADIX;
                f *= RADIX;
            }
            while c >= r * RADIX {
                c /= RADIX;
                r *= RADIX;
                f /= RADIX;
            }
            if (c + r) < 0.95 * total {
                converged = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// In-place unitary similarity to upper Hessenberg form.
fn reduce_to_hessenberg(a: &mut ComplexMatrix) {
    let n = a.dim();
    if n < 3 {
        return;
    }
    let mut v = vec![czero(); n];
    for k in 0..n - 2 {
        let norm: f64 = (k + 1..n).map(|r| a[(r, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        for r in k + 1..n {
            v[r] = a[(r, k)];
        }
        v[k + 1] -= alpha;
        let vnorm: f64 = (k + 1..n).map(|r| v[r].norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for x in &mut v[k + 1..n] {
            *x /= vnorm;
        }
        // A <- (I - 2 v v^H) A
        for c in k..n {
            let dot: Complex64 = (k + 1..n).map(|r| v[r].conj() * a[(r, c)]).sum();
            let f = dot * 2.0;
            for r in k + 1..n {
                let d = v[r] * f;
                a[(r, c)] -= d;
            }
        }
        // A <- A (I - 2 v v^H)
        for r in 0..n {
            let dot: Complex64 = (k + 1..n).map(|c| a[(r, c)] * v[c]).sum();
            let f = dot * 2.0;
            for c in k + 1..n {
                let d = f * v[c].conj();
                a[(r, c)] -= d;
            }
        }
        a[(k + 1, k)] = alpha;
        for r in k + 2..n {
            a[(r, k)] = czero();
        }
    }
}

/// Eigenvalues of `[[a, b], [c, d]]`, the larger-modulus root first.
fn eig2x2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let scale = abs1(a) + abs1(b) + abs1(c) + abs1(d);
    if scale == 0.0 {
        return (czero(), czero());
    }
    let (a, b, c, d) = (a / scale, b / scale, c / scale, d / scale);
    let mean = (a + d) * 0.5;
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let plus = mean + disc;
    let minus = mean - disc;
    let (big, small) = if plus.norm() >= minus.norm() { (plus, minus) } else { (minus, plus) };
    let det = a * d - b * c;
    let small = if big.norm() > 0.0 { det / big } else { small };
    (big * scale, small * scale)
}

/// A Givens rotation `G = [[c, s], [-conj(s), c]]` with real `c`.
#[derive(Clone, Copy)]
struct Rotation {
    c: f64,
    s: Complex64,
}

impl Rotation {
    /// Rotation with `G [f; g] = [r; 0]`.
    fn zeroing(f: Complex64, g: Complex64) -> Self {
        let fa = f.norm();
        let ga = g.norm();
        if ga == 0.0 {
            return Self { c: 1.0, s: czero() };
        }
        if fa == 0.0 {
            return Self { c: 0.0, s: g.conj() / ga };
        }
        let r = fa.hypot(ga);
        Self { c: fa / r, s: (f / fa) * g.conj() / r }
    }

    #[inline]
    fn apply_left(self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        (x * self.c + self.s * y, -self.s.conj() * x + y * self.c)
    }

    /// Multiplies the column pair `(x, y)` by `G^H` from the right.
    #[inline]
    fn apply_right_adjoint(self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        (x * self.c + self.s.conj() * y, -self.s * x + y * self.c)
    }
}

fn subdiagonal_negligible(h: &ComplexMatrix, k: usize, lo: usize, hi: usize) -> bool {
    let sub = abs1(h[(k, k - 1)]);
    if sub <= f64::MIN_POSITIVE / EPS {
        return true;
    }
    let mut tst = abs1(h[(k - 1, k - 1)]) + abs1(h[(k, k)]);
    if tst == 0.0 {
        if k >= lo + 2 {
            tst += abs1(h[(k - 1, k - 2)]);
        }
        if k < hi {
            tst += abs1(h[(k + 1, k)]);
        }
    }
    if sub > EPS * tst {
        return false;
    }
    let sup = abs1(h[(k - 1, k)]);
    let ab = sub.max(sup);
    let ba = sub.min(sup);
    let diff = abs1(h[(k - 1, k - 1)] - h[(k, k)]);
    let hkk = abs1(h[(k, k)]);
    let aa = hkk.max(diff);
    let bb = hkk.min(diff);
    let s = aa + ab;
    ba * (ab / s) <= (f64::MIN_POSITIVE / EPS).max(EPS * (bb * (aa / s)))
}

/// Single-shift QR on an upper Hessenberg matrix; destroys `h`.
fn hessenberg_qr(h: &mut ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = h.dim();
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return Ok(out);
    }
    let budget = SWEEPS_PER_DIM * n.max(1);
    let mut sweeps = 0usize;
    let mut stalled = 0usize;
    let mut hi = n - 1;
    let mut rotations: Vec<Rotation> = Vec::with_capacity(n);

    loop {
        let mut lo = hi;
        while lo > 0 {
            if subdiagonal_negligible(h, lo, 0, hi) {
                h[(lo, lo - 1)] = czero();
                break;
            }
            lo -= 1;
        }

        if lo == hi {
            out.push(h[(hi, hi)]);
            stalled = 0;
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }
        if lo + 1 == hi {
            let (e1, e2) = eig2x2(h[(lo, lo)], h[(lo, hi)], h[(hi, lo)], h[(hi, hi)]);
            out.push(e1);
            out.push(e2);
            stalled = 0;
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            continue;
        }

        if sweeps >= budget {
            return Err(Error::NoConvergence { lo, hi, iterations: sweeps });
        }
        sweeps += 1;
        stalled += 1;

        let shift = if stalled.is_multiple_of(EXCEPTIONAL_EVERY) {
            if (stalled / EXCEPTIONAL_EVERY) % 2 == 1 {
                h[(hi, hi)] + 0.75 * h[(hi, hi - 1)].re.abs()
            } else {
                h[(lo, lo)] + 0.75 * h[(lo + 1, lo)].re.abs()
            }
        } else {
            let (e1, e2) = eig2x2(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)]);
            let target = h[(hi, hi)];
            if (e1 - target).norm() <= (e2 - target).norm() { e1 } else { e2 }
        };

        // H - σI = QR, then H <- RQ + σI on the active window.
        for k in lo..=hi {
            h[(k, k)] -= shift;
        }
        rotations.clear();
        for k in lo..hi {
            let g = Rotation::zeroing(h[(k, k)], h[(k + 1, k)]);
            for c in k..=hi {
                let (x, y) = g.apply_left(h[(k, c)], h[(k + 1, c)]);
                h[(k, c)] = x;
                h[(k + 1, c)] = y;
            }
            h[(k + 1, k)] = czero();
            rotations.push(g);
        }
        for (idx, g) in rotations.iter().enumerate() {
            let k = lo + idx;
            for r in lo..=(k + 1).min(hi) {
                let (x, y) = g.apply_right_adjoint(h[(r, k)], h[(r, k + 1)]);
                h[(r, k)] = x;
                h[(r, k + 1)] = y;
            }
        }
        for k in lo..=hi {
            h[(k, k)] += shift;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SortMode {
    /// Real part ascending, ties by imaginary part ascending.
    ByRealPart,
    /// Modulus ascending, ties by phase ascending in `(-π, π]`.
    #[default]
    ByMagnitude,
}

/// Default relative threshold on `|Im λ|` for calling an eigenvalue real.
pub const DEFAULT_TOL_REAL: f64 = 1e-6;

/// A sorted multiset of eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<Complex64>,
    pub sort_mode: SortMode,
    pub tol_real: f64,
}

fn phase(z: Complex64) -> f64 {
    let p = z.arg();
    // atan2 returns -π for (-x, -0.0); fold it onto π
    if p == -PI { PI } else { p }
}

fn compare(mode: SortMode, a: &Complex64, b: &Complex64) -> Ordering {
    match mode {
        SortMode::ByRealPart => a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)),
        SortMode::ByMagnitude => a.norm().total_cmp(&b.norm()).then(phase(*a).total_cmp(&phase(*b))),
    }
}

impl Spectrum {
    pub fn new(values: Vec<Complex64>, sort_mode: SortMode, tol_real: f64) -> Self {
        let mut s = Self { values, sort_mode, tol_real };
        s.values.sort_by(|a, b| compare(sort_mode, a, b));
        s
    }

    pub fn of(m: &ComplexMatrix, sort_mode: SortMode) -> Result<Self> {
        Ok(Self::new(eigenvalues(m)?, sort_mode, DEFAULT_TOL_REAL))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sorted(self, mode: SortMode) -> Self {
        sort_spectrum(self, mode)
    }

    pub fn classify(&self) -> Classification {
        classify(&self.values, self.tol_real)
    }
}

pub fn sort_spectrum(mut s: Spectrum, mode: SortMode) -> Spectrum {
    s.values.sort_by(|a, b| compare(mode, a, b));
    s.sort_mode = mode;
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValueClass {
    Real,
    /// Member of the conjugate pair with this id.
    Pair(usize),
    Stray,
}

impl std::fmt::Display for ValueClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValueClass::Real => f.write_str("real"),
            ValueClass::Pair(id) => write!(f, "pair:{id}"),
            ValueClass::Stray => f.write_str("stray"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    /// Real parts of values classified real, in input order.
    pub reals: Vec<f64>,
    /// Conjugate pairs, lower-half-plane member first.
    pub pairs: Vec<(Complex64, Complex64)>,
    pub strays: Vec<Complex64>,
    /// Class of each input value, aligned with the input.
    pub labels: Vec<ValueClass>,
}

/// Splits values into reals, conjugate pairs and unpaired leftovers.
///
/// `λ` is real iff `|Im λ| <= tol·max(1, |λ|)`. Complex values are visited
/// by real part (ties by imaginary part) and each is paired with the
/// nearest unvisited `μ` such that `|λ - conj(μ)| <= 2·tol·max(1, |λ|)`.
pub fn classify(values: &[Complex64], tol_real: f64) -> Classification {
    let scale = |z: Complex64| z.norm().max(1.0);
    let mut labels = vec![ValueClass::Stray; values.len()];
    let mut reals = Vec::new();
    let mut complex_idx = Vec::new();
    for (i, &z) in values.iter().enumerate() {
        if z.im.abs() <= tol_real * scale(z) {
            labels[i] = ValueClass::Real;
            reals.push(z.re);
        } else {
            complex_idx.push(i);
        }
    }
    complex_idx.sort_by(|&a, &b| compare(SortMode::ByRealPart, &values[a], &values[b]).then(a.cmp(&b)));

    let mut used = vec![false; values.len()];
    let mut pairs = Vec::new();
    for (pos, &i) in complex_idx.iter().enumerate() {
        if used[i] {
            continue;
        }
        let z = values[i];
        let limit = 2.0 * tol_real * scale(z);
        let mut best: Option<(usize, f64)> = None;
        for &j in &complex_idx[pos + 1..] {
            if used[j] {
                continue;
            }
            let dist = (z - values[j].conj()).norm();
            if dist <= limit && best.is_none_or(|(_, d)| dist < d) {
                best = Some((j, dist));
            }
        }
        if let Some((j, _)) = best {
            used[i] = true;
            used[j] = true;
            let id = pairs.len();
            labels[i] = ValueClass::Pair(id);
            labels[j] = ValueClass::Pair(id);
            let (a, b) = if values[i].im <= values[j].im { (values[i], values[j]) } else { (values[j], values[i]) };
            pairs.push((a, b));
        }
    }
    let strays = values
        .iter()
        .zip(&labels)
        .filter(|(_, l)| **l == ValueClass::Stray)
        .map(|(&z, _)| z)
        .collect();
    Classification { reals, pairs, strays, labels }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted_re(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| compare(SortMode::ByRealPart, a, b));
        v
    }

    #[test]
    fn diagonal_matrix() {
        let m = ComplexMatrix::from_real_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 3.0, 0.0], vec![0.0, 0.0, 5.0]]).unwrap();
        assert_eq!(sorted_re(eigenvalues(&m).unwrap()), vec![c(1.0, 0.0), c(3.0, 0.0), c(5.0, 0.0)]);
    }

    #[test]
    fn rotation_generator() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        let e = sorted_re(eigenvalues(&m).unwrap());
        assert!((e[0] - c(0.0, -1.0)).norm() < 1e-15);
        assert!((e[1] - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn companion_matrix_roots() {
        // x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3)
        let m = ComplexMatrix::from_real_rows(&[vec![6.0, -11.0, 6.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        let e = sorted_re(eigenvalues(&m).unwrap());
        for (got, want) in e.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - c(want, 0.0)).norm() < 1e-12, "{got}");
        }
    }

    #[test]
    fn empty_and_scalar() {
        assert!(eigenvalues(&ComplexMatrix::zeros(0)).unwrap().is_empty());
        let m = ComplexMatrix::from_rows(&[vec![c(2.0, -1.0)]]).unwrap();
        assert_eq!(eigenvalues(&m).unwrap(), vec![c(2.0, -1.0)]);
    }

    #[test]
    fn non_finite_input_is_rejected() {
        let mut m = ComplexMatrix::identity(3);
        m[(1, 2)] = c(f64::INFINITY, 0.0);
        assert_eq!(eigenvalues(&m), Err(Error::NonFinite("eigenvalue input")));
    }

    #[test]
    fn jordan_like_block_converges() {
        let n = 30;
        let m = ComplexMatrix::from_fn(n, |r, cc| {
            if r == cc || cc == r + 1 {
                c(1.0, 0.0)
            } else if r == n - 1 && cc == 0 {
                c(1e-3, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let e = eigenvalues(&m).unwrap();
        assert_eq!(e.len(), n);
        // eigenvalues are 1 + (1e-3)^(1/n) * (n-th roots of unity)
        let radius = 1e-3f64.powf(1.0 / n as f64);
        for z in e {
            assert!(((z - 1.0).norm() - radius).abs() < 1e-8, "{z}");
        }
    }

    #[test]
    fn lower_triangular_is_isolated_exactly() {
        let n = 12;
        let m = ComplexMatrix::from_fn(n, |r, cc| {
            if r == cc {
                c(2.0 * r as f64 + 1.0, 0.0)
            } else if r == cc + 2 {
                c(-100.0 * r as f64, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let e = sorted_re(eigenvalues(&m).unwrap());
        for (k, z) in e.iter().enumerate() {
            assert_eq!(*z, c(2.0 * k as f64 + 1.0, 0.0));
        }
    }

    #[test]
    fn sort_modes() {
        let s = Spectrum::new(vec![c(-10.0, 0.0), c(816.4, -28.4), c(-30.0, 0.0)], SortMode::ByMagnitude, 1e-6);
        assert_eq!(s.values, vec![c(-10.0, 0.0), c(-30.0, 0.0), c(816.4, -28.4)]);
        for mode in [SortMode::ByMagnitude, SortMode::ByRealPart] {
            let s = Spectrum::new(vec![c(3.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)], mode, 1e-6);
            assert_eq!(s.values, vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        }
        let s = sort_spectrum(Spectrum::new(vec![c(1.0, 1.0), c(1.0, -1.0)], SortMode::ByMagnitude, 1e-6), SortMode::ByRealPart);
        assert_eq!(s.values, vec![c(1.0, -1.0), c(1.0, 1.0)]);
        assert_eq!(s.sort_mode, SortMode::ByRealPart);
    }

    #[test]
    fn magnitude_ties_break_on_phase() {
        let s = Spectrum::new(vec![c(-1.0, -0.0), c(0.0, 1.0), c(1.0, 0.0), c(0.0, -1.0)], SortMode::ByMagnitude, 1e-6);
        assert_eq!(s.values, vec![c(0.0, -1.0), c(1.0, 0.0), c(0.0, 1.0), c(-1.0, -0.0)]);
    }

    #[test]
    fn classify_table_like_values() {
        let vals = [c(10.0, 0.0), c(30.0, 0.0), c(816.4, 28.4), c(816.4, -28.4)];
        let cl = classify(&vals, 1e-6);
        assert_eq!(cl.reals, vec![10.0, 30.0]);
        assert_eq!(cl.pairs, vec![(c(816.4, -28.4), c(816.4, 28.4))]);
        assert!(cl.strays.is_empty());
        assert_eq!(cl.labels, vec![ValueClass::Real, ValueClass::Real, ValueClass::Pair(0), ValueClass::Pair(0)]);
    }

    #[test]
    fn classify_threshold_and_strays() {
        assert_eq!(classify(&[c(5.0, 0.0)], 1e-6).reals, vec![5.0]);
        assert_eq!(classify(&[c(2.0, 1e-9)], 1e-6).reals, vec![2.0]);
        let cl = classify(&[c(2.0, 1e-3), c(7.0, -1.0)], 1e-6);
        assert!(cl.reals.is_empty() && cl.pairs.is_empty());
        assert_eq!(cl.strays.len(), 2);
    }

    #[test]
    fn classify_pairs_nearest_partner() {
        let vals = [c(1.0, 2.0), c(1.0, -2.0 + 1e-7), c(1.0, -2.0)];
        let cl = classify(&vals, 1e-6);
        assert_eq!(cl.pairs.len(), 1);
        assert_eq!(cl.labels[0], ValueClass::Pair(0));
        assert_eq!(cl.labels[2], ValueClass::Pair(0));
        assert_eq!(cl.labels[1], ValueClass::Stray);
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    fn values() -> impl Strategy<Value = Vec<Complex64>> {
        prop::collection::vec(
            prop_oneof![
                (-50.0f64..50.0).prop_map(|x| Complex64::new(x, 0.0)),
                (-50.0f64..50.0, 0.1f64..20.0).prop_map(|(x, y)| Complex64::new(x, y)),
                (-50.0f64..50.0, -20.0f64..-0.1).prop_map(|(x, y)| Complex64::new(x, y)),
            ],
            0..30,
        )
    }

    proptest! {
        #[test]
        fn classification_partitions_input(v in values()) {
            let cl = classify(&v, 1e-6);
            prop_assert_eq!(cl.labels.len(), v.len());
            prop_assert_eq!(cl.reals.len() + 2 * cl.pairs.len() + cl.strays.len(), v.len());
            for (a, b) in &cl.pairs {
                prop_assert!((a - b.conj()).norm() <= 2e-6 * a.norm().max(1.0));
            }
        }

        #[test]
        fn sorting_is_a_permutation(v in values()) {
            let s = Spectrum::new(v.clone(), SortMode::ByRealPart, 1e-6);
            let back = sort_spectrum(s.clone(), SortMode::ByMagnitude);
            prop_assert_eq!(back.values.len(), v.len());
            let again = sort_spectrum(back, SortMode::ByRealPart);
            prop_assert_eq!(again.values, s.values);
        }
    }
}
