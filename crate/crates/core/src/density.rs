//! Validated two-level density matrix.

use crate::algebra::{Complex, Matrix2};
use crate::error::{Error, Result};

/// Allowed deviation of `tr ρ` from one.
pub const TRACE_TOLERANCE: f64 = 1e-10;
/// Allowed negative excursion of a population.
pub const POPULATION_TOLERANCE: f64 = 1e-12;
/// Allowed negative excursion of `ρ11·ρ22 − |ρ12|²`.
pub const DETERMINANT_TOLERANCE: f64 = 1e-10;
/// Slack on the Bloch vector length.
pub const BLOCH_TOLERANCE: f64 = 1e-12;

/// Density matrix of the two-level system.
///
/// `rho22` is the excited-state population and `rho11` the ground-state
/// population. Only `rho12 = ⟨1|ρ|2⟩` is stored; `rho21` is its conjugate, so
/// Hermiticity holds exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2 {
    rho11: f64,
    rho22: f64,
    rho12: Complex,
}

impl DensityMatrix2 {
    /// Builds a state from its independent components, checking trace,
    /// populations and the determinant against the module tolerances.
    pub fn new(rho11: f64, rho22: f64, rho12: Complex) -> Result<Self> {
        Self::at_time(rho11, rho22, rho12, f64::NAN)
    }

    pub(crate) fn at_time(rho11: f64, rho22: f64, rho12: Complex, time: f64) -> Result<Self> {
        if !(rho11.is_finite() && rho22.is_finite() && rho12.re.is_finite() && rho12.im.is_finite())
        {
            return Err(Error::NonFinite("DensityMatrix2"));
        }
        let violation = |what: String| Err(Error::InvariantViolation { time, what });
        let trace_err = (rho11 + rho22 - 1.0).abs();
        if trace_err > TRACE_TOLERANCE {
            return violation(format!("trace deviates from 1 by {trace_err:e}"));
        }
        if rho11 < -POPULATION_TOLERANCE || rho22 < -POPULATION_TOLERANCE {
            return violation(format!(
                "negative population (rho11 = {rho11:e}, rho22 = {rho22:e})"
            ));
        }
        let det = rho11 * rho22 - rho12.norm_sqr();
        if det < -DETERMINANT_TOLERANCE {
            return violation(format!("determinant {det:e} below tolerance"));
        }
        Ok(DensityMatrix2 {
            rho11,
            rho22,
            rho12,
        })
    }

    /// `ρ = ½(I + bx σx + by σy + bz σz)`.
    pub fn from_bloch(bx: f64, by: f64, bz: f64) -> Result<Self> {
        let length = (bx * bx + by * by + bz * bz).sqrt();
        if !length.is_finite() {
            return Err(Error::NonFinite("Bloch vector"));
        }
        if length * length > 1.0 + BLOCH_TOLERANCE {
            return Err(Error::BlochNorm { length });
        }
        Self::new(
            0.5 * (1.0 - bz),
            0.5 * (1.0 + bz),
            Complex::new(0.5 * bx, 0.5 * by),
        )
    }

    /// Reads a state back from a matrix in `[|2⟩, |1⟩]` ordering. The matrix
    /// must be Hermitian to within `1e-12`.
    pub fn from_matrix(m: &Matrix2) -> Result<Self> {
        if m.max_abs_diff(&m.adjoint()) > 1e-12 {
            return Err(Error::domain("matrix is not Hermitian"));
        }
        Self::new(m.get(1, 1).re, m.get(0, 0).re, m.get(1, 0))
    }

    pub fn excited() -> Self {
        DensityMatrix2 {
            rho11: 0.0,
            rho22: 1.0,
            rho12: Complex::new(0.0, 0.0),
        }
    }

    pub fn ground() -> Self {
        DensityMatrix2 {
            rho11: 1.0,
            rho22: 0.0,
            rho12: Complex::new(0.0, 0.0),
        }
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix2 {
            rho11: 0.5,
            rho22: 0.5,
            rho12: Complex::new(0.0, 0.0),
        }
    }

    pub fn rho11(&self) -> f64 {
        self.rho11
    }

    pub fn rho22(&self) -> f64 {
        self.rho22
    }

    pub fn rho12(&self) -> Complex {
        self.rho12
    }

    pub fn rho21(&self) -> Complex {
        self.rho12.conj()
    }

    /// Populations `(ρ11, ρ22)` with in-tolerance negative excursions clamped to zero.
    pub fn populations_clamped(&self) -> (f64, f64) {
        (self.rho11.max(0.0), self.rho22.max(0.0))
    }

    pub fn trace(&self) -> f64 {
        self.rho11 + self.rho22
    }

    /// `ρ11·ρ22 − |ρ12|²`.
    pub fn determinant(&self) -> f64 {
        self.rho11 * self.rho22 - self.rho12.norm_sqr()
    }

    /// Eigenvalues from trace and determinant, smaller first.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let tr = self.trace();
        let disc = (tr * tr - 4.0 * self.determinant()).max(0.0).sqrt();
        (0.5 * (tr - disc), 0.5 * (tr + disc))
    }

    pub fn bloch_vector(&self) -> (f64, f64, f64) {
        (
            2.0 * self.rho12.re,
            2.0 * self.rho12.im,
            self.rho22 - self.rho11,
        )
    }

    pub fn to_matrix(&self) -> Matrix2 {
        Matrix2::from_raw([
            [Complex::new(self.rho22, 0.0), self.rho21()],
            [self.rho12, Complex::new(self.rho11, 0.0)],
        ])
    }

    /// Largest componentwise difference over `ρ11`, `ρ22` and `ρ12`.
    pub fn max_abs_diff(&self, other: &DensityMatrix2) -> f64 {
        (self.rho11 - other.rho11)
            .abs()
            .max((self.rho22 - other.rho22).abs())
            .max((self.rho12 - other.rho12).norm())
    }
}

/// Convenience wrapper around [`DensityMatrix2::from_bloch`].
pub fn density_from_bloch(bx: f64, by: f64, bz: f64) -> Result<DensityMatrix2> {
    DensityMatrix2::from_bloch(bx, by, bz)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bloch_poles_center_equator() {
        let up = density_from_bloch(0.0, 0.0, 1.0).unwrap();
        assert_eq!(up.rho22(), 1.0);
        assert_eq!(up.rho11(), 0.0);
        assert_eq!(up, DensityMatrix2::excited());

        let mixed = density_from_bloch(0.0, 0.0, 0.0).unwrap();
        assert_eq!((mixed.rho11(), mixed.rho22()), (0.5, 0.5));
        assert_eq!(mixed.rho12(), Complex::new(0.0, 0.0));

        let eq = density_from_bloch(1.0, 0.0, 0.0).unwrap();
        assert_eq!((eq.rho11(), eq.rho22()), (0.5, 0.5));
        assert_eq!(eq.rho12(), Complex::new(0.5, 0.0));
    }

    #[test]
    fn bloch_norm_error() {
        assert!(matches!(
            density_from_bloch(0.8, 0.8, 0.0),
            Err(Error::BlochNorm { .. })
        ));
        assert!(density_from_bloch(1.0 + 1e-13, 0.0, 0.0).is_ok());
        assert!(density_from_bloch(f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn matrix_matches_bloch_decomposition() {
        let (bx, by, bz) = (0.3, -0.4, 0.5);
        let rho = density_from_bloch(bx, by, bz).unwrap().to_matrix();
        let expected = (Matrix2::IDENTITY
            + Matrix2::SIGMA_X * bx
            + Matrix2::SIGMA_Y * by
            + Matrix2::SIGMA_Z * bz)
            * 0.5;
        assert!(rho.max_abs_diff(&expected) < 1e-15);
        let back = DensityMatrix2::from_matrix(&rho).unwrap();
        assert!(back.max_abs_diff(&density_from_bloch(bx, by, bz).unwrap()) < 1e-15);
    }

    #[test]
    fn invariant_checks() {
        assert!(DensityMatrix2::new(0.5, 0.5 + 5e-11, Complex::new(0.0, 0.0)).is_ok());
        assert!(DensityMatrix2::new(0.5, 0.5 + 1e-9, Complex::new(0.0, 0.0)).is_err());
        assert!(DensityMatrix2::new(1.0 + 1e-13, -1e-13, Complex::new(0.0, 0.0)).is_ok());
        assert!(DensityMatrix2::new(1.0 + 1e-11, -1e-11, Complex::new(0.0, 0.0)).is_err());
        assert!(DensityMatrix2::new(0.5, 0.5, Complex::new(0.6, 0.0)).is_err());
    }

    #[test]
    fn clamping_on_read() {
        let rho = DensityMatrix2::new(1.0 + 1e-13, -1e-13, Complex::new(0.0, 0.0)).unwrap();
        assert_eq!(rho.populations_clamped(), (1.0 + 1e-13, 0.0));
    }

    #[test]
    fn non_hermitian_matrix_rejected() {
        let m = Matrix2::SIGMA_PLUS;
        assert!(DensityMatrix2::from_matrix(&m).is_err());
    }
}
