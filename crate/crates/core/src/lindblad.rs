//! Thermal-bath master equation for a two-level atom and its closed-form solution.
//!
//! Internal units: `ħ = k_B = 1`, frequencies in units of `ω_A` (so `ω_A = 1`
//! unless overridden), time in `1/ω_A`, temperature as `θ = k_B T / ħω_A`.
//! The Lamb-shifted frequency is taken equal to `ω_A`.

use crate::algebra::{commutator, mat_mul, Complex, Matrix2};
use crate::constants::{BOLTZMANN, HBAR, SPEED_OF_LIGHT, VACUUM_PERMITTIVITY};
use crate::density::DensityMatrix2;
use crate::error::{Error, Result};
use crate::thermal::planck_occupation;

/// Above `gamma / omega_a` of this size the weak-coupling picture is suspect.
pub const WEAK_COUPLING_RATIO: f64 = 0.1;

/// Dimensionless bath and system parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathParams {
    theta: f64,
    gamma: f64,
    omega_a: f64,
    n_bar: f64,
}

impl BathParams {
    /// Bath at reduced temperature `theta` with decay rate `gamma` in units of `ω_A`.
    pub fn new(theta: f64, gamma: f64) -> Result<Self> {
        Self::with_omega(theta, gamma, 1.0)
    }

    pub fn with_omega(theta: f64, gamma: f64, omega_a: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::domain(format!("gamma must be > 0, got {gamma}")));
        }
        if !(omega_a.is_finite() && omega_a > 0.0) {
            return Err(Error::domain(format!("omega_a must be > 0, got {omega_a}")));
        }
        if !theta.is_finite() {
            return Err(Error::domain(format!("theta must be finite, got {theta}")));
        }
        let n_bar = planck_occupation(theta)?;
        Ok(BathParams {
            theta,
            gamma,
            omega_a,
            n_bar,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn omega_a(&self) -> f64 {
        self.omega_a
    }

    /// Planck occupation at this temperature.
    pub fn n_bar(&self) -> f64 {
        self.n_bar
    }

    /// Population relaxation rate `γ(2n̄ + 1)`.
    pub fn relaxation_rate(&self) -> f64 {
        self.gamma * (2.0 * self.n_bar + 1.0)
    }

    /// Coherence decay rate `Γ_dec = γ(2n̄ + 1)/2`.
    pub fn decoherence_rate(&self) -> f64 {
        0.5 * self.relaxation_rate()
    }

    /// Fastest timescale in the problem, `max(ω_A, γ(2n̄ + 1))`.
    pub fn max_rate(&self) -> f64 {
        self.omega_a.max(self.relaxation_rate())
    }

    /// Largest step size recommended for [`crate::integrate::integrate`].
    pub fn recommended_dt(&self) -> f64 {
        0.01 / self.max_rate()
    }

    pub fn weak_coupling_violated(&self) -> bool {
        self.gamma > WEAK_COUPLING_RATIO * self.omega_a
    }

    /// Stationary state: `ρ22 = n̄/(2n̄+1)`, no coherence.
    pub fn steady_state(&self) -> DensityMatrix2 {
        let denom = 2.0 * self.n_bar + 1.0;
        let excited = self.n_bar / denom;
        DensityMatrix2::new(1.0 - excited, excited, Complex::new(0.0, 0.0))
            .expect("thermal populations form a valid state")
    }
}

/// Physical (SI) atom parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalAtomParams {
    /// Transition angular frequency, rad/s.
    pub omega_a_si: f64,
    /// Transition dipole magnitude, C·m.
    pub dipole: f64,
    /// Bath temperature, K.
    pub temperature_si: f64,
}

impl PhysicalAtomParams {
    pub fn new(omega_a_si: f64, dipole: f64, temperature_si: f64) -> Result<Self> {
        for (name, v) in [
            ("omega_a_si", omega_a_si),
            ("dipole", dipole),
            ("temperature_si", temperature_si),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!("{name} must be > 0, got {v}")));
            }
        }
        Ok(PhysicalAtomParams {
            omega_a_si,
            dipole,
            temperature_si,
        })
    }

    /// Reduced temperature `k_B T / ħω_A`.
    pub fn reduced_temperature(&self) -> f64 {
        BOLTZMANN * self.temperature_si / (HBAR * self.omega_a_si)
    }

    /// Converts to dimensionless bath parameters with `ω_A = 1`.
    pub fn to_bath(&self) -> Result<BathParams> {
        BathParams::new(
            self.reduced_temperature(),
            einstein_gamma(self) / self.omega_a_si,
        )
    }
}

/// Spontaneous emission rate `γ = (1/4πε₀)·4ω_A³d₁₂²/(3ħc³)` in 1/s.
pub fn einstein_gamma(p: &PhysicalAtomParams) -> f64 {
    let w = p.omega_a_si;
    let prefactor = 1.0 / (4.0 * std::f64::consts::PI * VACUUM_PERMITTIVITY);
    prefactor * 4.0 * w * w * w * p.dipole * p.dipole / (3.0 * HBAR * SPEED_OF_LIGHT.powi(3))
}

/// `Γ_dec = (γ/2)(2n̄ + 1)`.
pub fn decoherence_rate(gamma: f64, n_bar: f64) -> Result<f64> {
    if gamma.is_nan() || gamma < 0.0 || n_bar.is_nan() || n_bar < 0.0 {
        return Err(Error::domain(format!(
            "decoherence rate needs gamma >= 0 and n_bar >= 0, got {gamma}, {n_bar}"
        )));
    }
    Ok(0.5 * gamma * (2.0 * n_bar + 1.0))
}

/// Time derivative of a density matrix; traceless and Hermitian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityDerivative {
    pub d_rho11: f64,
    pub d_rho22: f64,
    pub d_rho12: Complex,
}

impl DensityDerivative {
    pub fn d_rho21(&self) -> Complex {
        self.d_rho12.conj()
    }
}

/// Master-equation right-hand side on a raw operator:
///
/// ```text
/// −i(ω_A/2)[σz, ρ]
///   + (γ/2)(n̄+1)(2σ₋ρσ₊ − σ₊σ₋ρ − ρσ₊σ₋)
///   + (γ/2)n̄(2σ₊ρσ₋ − σ₋σ₊ρ − ρσ₋σ₊)
/// ```
pub fn lindblad_rhs_matrix(rho: &Matrix2, bath: &BathParams) -> Matrix2 {
    let (sp, sm) = (&Matrix2::SIGMA_PLUS, &Matrix2::SIGMA_MINUS);
    let coherent = commutator(&Matrix2::SIGMA_Z, rho).scale(Complex::new(0.0, -0.5 * bath.omega_a));
    let dissipator = |jump: &Matrix2, jump_dag: &Matrix2| {
        let n = mat_mul(jump_dag, jump);
        mat_mul(&mat_mul(jump, rho), jump_dag) * 2.0 - mat_mul(&n, rho) - mat_mul(rho, &n)
    };
    let emission = dissipator(sm, sp) * (0.5 * bath.gamma * (bath.n_bar + 1.0));
    let absorption = dissipator(sp, sm) * (0.5 * bath.gamma * bath.n_bar);
    coherent + emission + absorption
}

pub fn lindblad_rhs(rho: &DensityMatrix2, bath: &BathParams) -> DensityDerivative {
    let d = lindblad_rhs_matrix(&rho.to_matrix(), bath);
    DensityDerivative {
        d_rho11: d.get(1, 1).re,
        d_rho22: d.get(0, 0).re,
        d_rho12: d.get(1, 0),
    }
}

/// State vector `[ρ11, ρ22, Re ρ12, Im ρ12]` used by the integrator.
pub(crate) type StateVec = [f64; 4];

pub(crate) fn state_to_matrix(x: &StateVec) -> Matrix2 {
    let rho12 = Complex::new(x[2], x[3]);
    Matrix2::from_raw([
        [Complex::new(x[1], 0.0), rho12.conj()],
        [rho12, Complex::new(x[0], 0.0)],
    ])
}

/// The master equation as a real-linear map on [`StateVec`].
///
/// Columns are obtained by applying [`lindblad_rhs_matrix`] to the four
/// Hermitian basis operators, so the map is exactly the operator form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Generator {
    rows: [[f64; 4]; 4],
}

impl Generator {
    pub fn new(bath: &BathParams) -> Self {
        let mut rows = [[0.0; 4]; 4];
        for col in 0..4 {
            let mut e = [0.0; 4];
            e[col] = 1.0;
            let d = lindblad_rhs_matrix(&state_to_matrix(&e), bath);
            let image = [
                d.get(1, 1).re,
                d.get(0, 0).re,
                d.get(1, 0).re,
                d.get(1, 0).im,
            ];
            for (row, v) in image.into_iter().enumerate() {
                rows[row][col] = v;
            }
        }
        Generator { rows }
    }

    #[inline]
    pub(crate) fn apply(&self, x: &StateVec) -> StateVec {
        let mut out = [0.0; 4];
        for (o, row) in out.iter_mut().zip(&self.rows) {
            *o = row[0] * x[0] + row[1] * x[1] + row[2] * x[2] + row[3] * x[3];
        }
        out
    }
}

/// Closed-form solution of the master equation at time `t`.
pub fn analytic_solution(
    rho0: &DensityMatrix2,
    bath: &BathParams,
    t: f64,
) -> Result<DensityMatrix2> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::domain(format!("time must be >= 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(*rho0);
    }
    let relax = bath.relaxation_rate();
    let excited_inf = bath.n_bar / (2.0 * bath.n_bar + 1.0);
    let rho22 = excited_inf + (rho0.rho22() - excited_inf) * (-relax * t).exp();
    let rho12 = rho0.rho12() * Complex::new(-0.5 * relax * t, bath.omega_a * t).exp();
    DensityMatrix2::at_time(1.0 - rho22, rho22, rho12, t)
}
