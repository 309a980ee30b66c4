//! Dense square complex matrices.

use std::io::{self, Write};
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Entries with modulus at or below this are left out of the nonzero dump.
pub const DUMP_THRESHOLD: f64 = 1e-14;

/// Row-major dense `N x N` matrix; entry `(r, c)` is `<r|O|c>`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from row-major entries; fails unless `rows` is square.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::NotSquare { rows: dim, cols: row.len() });
            }
            data.extend_from_slice(row);
        }
        let m = Self { dim, data };
        if !m.is_finite() {
            return Err(Error::NonFinite("matrix entries"));
        }
        Ok(m)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)])
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                let out_row = &mut out.data[r * n..(r + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// Inverse via Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm()))
                .expect("non-empty pivot range");
            if a[(pivot, col)].norm() <= f64::EPSILON * scale {
                return Err(Error::Singular);
            }
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].inv();
            for c in 0..n {
                a[(col, c)] *= p;
                inv[(col, c)] *= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f.re == 0.0 && f.im == 0.0 {
                    continue;
                }
                for c in 0..n {
                    let ac = a[(col, c)];
                    let ic = inv[(col, c)];
                    a[(r, c)] -= f * ac;
                    inv[(r, c)] -= f * ic;
                }
            }
        }
        Ok(inv)
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let n = self.dim;
        for c in 0..n {
            self.data.swap(i * n + c, j * n + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let n = self.dim;
        for r in 0..n {
            self.data.swap(r * n + i, r * n + j);
        }
    }

    /// Copies the principal block `lo..=hi`.
    pub(crate) fn principal_block(&self, lo: usize, hi: usize) -> Self {
        Self::from_fn(hi + 1 - lo, |r, c| self[(lo + r, lo + c)])
    }

    /// Entries with modulus above [`DUMP_THRESHOLD`] as `(row, col, value)`.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        let n = self.dim;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > DUMP_THRESHOLD)
            .map(move |(k, &z)| (k / n, k % n, z))
    }

    /// Writes the nonzero entries as `row,col,re,im` CSV.
    pub fn write_nonzero_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "row,col,re,im")?;
        for (r, c, z) in self.nonzeros() {
            writeln!(out, "{r},{c},{:e},{:e}", z.re, z.im)?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn from_rows_rejects_ragged_input() {
        let rows = vec![vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(3.0, 0.0)]];
        assert!(matches!(
            ComplexMatrix::from_rows(&rows),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn from_rows_rejects_nan() {
        let rows = vec![vec![c(f64::NAN, 0.0)]];
        assert!(matches!(
            ComplexMatrix::from_rows(&rows),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(2.0, 1.0), c(0.0, 1.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(3.0, 0.0), c(-1.0, 2.0)],
            vec![c(1.0, -1.0), c(0.5, 0.0), c(4.0, 0.0)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        let prod = &m * &inv;
        assert!(prod.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-14);
    }

    #[test]
    fn singular_matrix_is_reported() {
        let m = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert_eq!(m.inverse(), Err(Error::Singular));
    }

    #[test]
    fn nonzero_dump_skips_tiny_entries() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(1e-15, 0.0)],
            vec![c(0.0, -2.5), c(0.0, 0.0)],
        ])
        .unwrap();
        let mut buf = Vec::new();
        m.write_nonzero_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines, vec!["row,col,re,im", "0,0,1e0,0e0", "1,0,0e0,-2.5e0"]);
    }
}
