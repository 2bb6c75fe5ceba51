//! Fixed-size 2×2 complex operator algebra.
//!
//! Basis ordering is `[|2⟩, |1⟩]`: index 0 is the excited state, index 1 the
//! ground state. With that ordering `σ_z = diag(+1, −1)`, `σ_+ = |2⟩⟨1|` and
//! `σ_- = |1⟩⟨2|`.

use std::ops::{Add, Mul, Neg, Sub};

pub use num_complex::Complex64 as Complex;

use crate::error::{Error, Result};

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);
const I: Complex = Complex::new(0.0, 1.0);

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    entries: [[Complex; 2]; 2],
}

impl Matrix2 {
    pub const ZERO: Matrix2 = Matrix2::from_raw([[ZERO, ZERO], [ZERO, ZERO]]);
    pub const IDENTITY: Matrix2 = Matrix2::from_raw([[ONE, ZERO], [ZERO, ONE]]);
    pub const SIGMA_X: Matrix2 = Matrix2::from_raw([[ZERO, ONE], [ONE, ZERO]]);
    pub const SIGMA_Y: Matrix2 = Matrix2::from_raw([[ZERO, Complex::new(0.0, -1.0)], [I, ZERO]]);
    pub const SIGMA_Z: Matrix2 = Matrix2::from_raw([[ONE, ZERO], [ZERO, Complex::new(-1.0, 0.0)]]);
    /// Raising operator `|2⟩⟨1|`.
    pub const SIGMA_PLUS: Matrix2 = Matrix2::from_raw([[ZERO, ONE], [ZERO, ZERO]]);
    /// Lowering operator `|1⟩⟨2|`.
    pub const SIGMA_MINUS: Matrix2 = Matrix2::from_raw([[ZERO, ZERO], [ONE, ZERO]]);

    /// Builds a matrix, rejecting NaN or infinite entries.
    pub fn new(entries: [[Complex; 2]; 2]) -> Result<Self> {
        let finite = entries
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite());
        if finite {
            Ok(Matrix2 { entries })
        } else {
            Err(Error::NonFinite("Matrix2"))
        }
    }

    pub(crate) const fn from_raw(entries: [[Complex; 2]; 2]) -> Self {
        Matrix2 { entries }
    }

    pub fn entries(&self) -> &[[Complex; 2]; 2] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.entries[row][col]
    }

    pub fn trace(&self) -> Complex {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn determinant(&self) -> Complex {
        let [[a, b], [c, d]] = self.entries;
        a * d - b * c
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix2 {
        let [[a, b], [c, d]] = self.entries;
        Matrix2::from_raw([[a.conj(), c.conj()], [b.conj(), d.conj()]])
    }

    pub fn scale(&self, s: Complex) -> Matrix2 {
        self.map(|z| z * s)
    }

    fn map(&self, f: impl Fn(Complex) -> Complex) -> Matrix2 {
        let [[a, b], [c, d]] = self.entries;
        Matrix2::from_raw([[f(a), f(b)], [f(c), f(d)]])
    }

    fn zip(&self, other: &Matrix2, f: impl Fn(Complex, Complex) -> Complex) -> Matrix2 {
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, z) in row.iter_mut().enumerate() {
                *z = f(self.entries[r][c], other.entries[r][c]);
            }
        }
        Matrix2::from_raw(out)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix2) -> f64 {
        self.zip(other, |a, b| a - b)
            .entries
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Standard matrix product `a·b`.
pub fn mat_mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let (x, y) = (&a.entries, &b.entries);
    Matrix2::from_raw([
        [
            x[0][0] * y[0][0] + x[0][1] * y[1][0],
            x[0][0] * y[0][1] + x[0][1] * y[1][1],
        ],
        [
            x[1][0] * y[0][0] + x[1][1] * y[1][0],
            x[1][0] * y[0][1] + x[1][1] * y[1][1],
        ],
    ])
}

/// `[a, b] = a·b − b·a`.
pub fn commutator(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    mat_mul(a, b) - mat_mul(b, a)
}

impl Add for Matrix2 {
    type Output = Matrix2;
    fn add(self, rhs: Matrix2) -> Matrix2 {
        self.zip(&rhs, |a, b| a + b)
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;
    fn sub(self, rhs: Matrix2) -> Matrix2 {
        self.zip(&rhs, |a, b| a - b)
    }
}

impl Neg for Matrix2 {
    type Output = Matrix2;
    fn neg(self) -> Matrix2 {
        self.map(|z| -z)
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, rhs: Matrix2) -> Matrix2 {
        mat_mul(&self, &rhs)
    }
}

impl Mul<f64> for Matrix2 {
    type Output = Matrix2;
    fn mul(self, rhs: f64) -> Matrix2 {
        self.map(|z| z * rhs)
    }
}
