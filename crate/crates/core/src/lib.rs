//! Thermal decoherence of a two-level system and the resulting which-path
//! predictability in an electronic Mach-Zehnder interferometer.
//!
//! * [`algebra`], [`density`]: 2×2 operators and validated density matrices.
//! * [`lindblad`], [`integrate`]: the thermal master equation, its closed-form
//!   solution, an RK4 integrator and decoherence-rate fitting.
//! * [`interferometer`]: path amplitudes, predictability/visibility and the
//!   temperature-dependent predictability formulas.
//! * [`sweep`], [`config`]: the sweeps behind the `mzi-decohere` binary.

pub mod algebra;
pub mod config;
pub mod constants;
pub mod density;
pub mod error;
pub mod integrate;
pub mod interferometer;
pub mod lindblad;
pub mod par;
pub mod sweep;
pub mod thermal;

pub use algebra::{commutator, mat_mul, Complex, Matrix2};
pub use density::{density_from_bloch, DensityMatrix2};
pub use error::{Error, Result};
pub use integrate::{
    fit_decoherence_rate, integrate, integrate_observed, integrate_sampled, EvolutionResult,
};
pub use interferometer::{
    alpha_from_physical, attenuation_length, decayed_amplitude, path_amplitudes, predictability,
    predictability_eraser, predictability_near_equilibrium, predictability_thermal, visibility,
    AlphaParams, DetectorSegment, InterferometerConfig, ParticleParams, PathAmplitudes,
};
pub use lindblad::{
    analytic_solution, decoherence_rate, einstein_gamma, lindblad_rhs, BathParams,
    DensityDerivative, PhysicalAtomParams,
};
pub use par::Execution;
pub use sweep::{Mode, SweepOutput, SweepSpec, Table};
pub use thermal::planck_occupation;
