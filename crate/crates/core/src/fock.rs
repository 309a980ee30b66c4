//! Truncated number-basis representations.
//!
//! Basis indices run `0..N`. All products are taken between truncated
//! matrices, so the trailing row and column of any quadratic operator
//! differ from the truncation of the exact operator.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::model::{coefficients, Family, OscillatorSpec};

/// Smallest basis accepted by the Hamiltonian builders.
pub const MIN_HAMILTONIAN_BASIS: usize = 4;

/// Annihilation and creation operators on `|0>, ..., |N-1>`.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderPair {
    /// `a`, with `lower[n-1, n] = sqrt(n)`.
    pub lower: ComplexMatrix,
    /// `a†`, with `raise[n+1, n] = sqrt(n+1)`.
    pub raise: ComplexMatrix,
}

pub fn ladder(size: usize) -> Result<LadderPair> {
    if size < 2 {
        return Err(Error::BasisTooSmall { size, min: 2 });
    }
    let mut lower = ComplexMatrix::zeros(size);
    for n in 1..size {
        lower[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let raise = lower.transpose();
    Ok(LadderPair { lower, raise })
}

fn check_w(w: f64) -> Result<()> {
    if w.is_finite() && w > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("w must be finite and > 0, got {w}")))
    }
}

/// `x = (a + a†)/sqrt(2w)`.
pub fn position_matrix(size: usize, w: f64) -> Result<ComplexMatrix> {
    check_w(w)?;
    let l = ladder(size)?;
    Ok((&l.lower + &l.raise).scale_real(1.0 / (2.0 * w).sqrt()))
}

/// `p = i sqrt(w/2) (a† - a)`.
pub fn momentum_matrix(size: usize, w: f64) -> Result<ComplexMatrix> {
    check_w(w)?;
    let l = ladder(size)?;
    Ok((&l.raise - &l.lower).scale(Complex64::new(0.0, (0.5 * w).sqrt())))
}

fn check_size(size: usize) -> Result<()> {
    if size < MIN_HAMILTONIAN_BASIS {
        Err(Error::BasisTooSmall { size, min: MIN_HAMILTONIAN_BASIS })
    } else {
        Ok(())
    }
}

/// Builds `H` by multiplying the truncated `x` and `p` matrices.
pub fn hamiltonian_direct(spec: &OscillatorSpec, w: f64, size: usize) -> Result<ComplexMatrix> {
    check_size(size)?;
    let x = position_matrix(size, w)?;
    let p = momentum_matrix(size, w)?;
    let i = Complex64::new(0.0, 1.0);
    let (s, h) = (spec.strength(), spec.shift());
    let out = match spec.family() {
        Family::MomentumShift => {
            let y = &p + &x.scale(i * h);
            &(&y * &y) + &(&x * &x).scale_real(s * s)
        }
        Family::CoordinateShift => {
            let z = &x + &p.scale(i * h);
            &(&p * &p).scale_real(s * s) + &(&z * &z)
        }
    };
    if !out.is_finite() {
        return Err(Error::NonFinite("hamiltonian"));
    }
    Ok(out)
}

/// Builds `H = d (a a† + a† a)/2 + u a²/2 + v (a†)²/2` from the closed-form
/// coefficients.
///
/// `(2a†a + 1)` is written in the symmetric order `a a† + a† a`, which is
/// the order the products of truncated `x` and `p` produce; the two
/// builders then agree in every entry, corner included.
pub fn hamiltonian_second_quantized(spec: &OscillatorSpec, w: f64, size: usize) -> Result<ComplexMatrix> {
    check_size(size)?;
    let q = coefficients(spec, w)?;
    let l = ladder(size)?;
    let number_sym = &(&l.lower * &l.raise) + &(&l.raise * &l.lower);
    let lower2 = &l.lower * &l.lower;
    let raise2 = &l.raise * &l.raise;
    let out = &(&number_sym.scale_real(0.5 * q.d) + &lower2.scale_real(0.5 * q.u)) + &raise2.scale_real(0.5 * q.v);
    if !out.is_finite() {
        return Err(Error::NonFinite("hamiltonian"));
    }
    Ok(out)
}

/// Which assembly route to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Assembly {
    #[default]
    Direct,
    SecondQuantized,
}

pub fn hamiltonian(spec: &OscillatorSpec, w: f64, size: usize, how: Assembly) -> Result<ComplexMatrix> {
    match how {
        Assembly::Direct => hamiltonian_direct(spec, w, size),
        Assembly::SecondQuantized => hamiltonian_second_quantized(spec, w, size),
    }
}

/// Largest modulus on the diagonal at `offset` (positive = above the main diagonal).
pub fn band_max(m: &ComplexMatrix, offset: isize) -> f64 {
    let n = m.dim() as isize;
    (0..n)
        .filter_map(|r| {
            let c = r + offset;
            (0..n).contains(&c).then(|| m[(r as usize, c as usize)].norm())
        })
        .fold(0.0, f64::max)
}
