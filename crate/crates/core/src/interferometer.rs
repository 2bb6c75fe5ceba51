//! Two-arm Mach-Zehnder interferometer with lossy detector segments, and the
//! thermal path-predictability formulas built on it.
//!
//! Reduced variables throughout: `θ = k_B T / ħω_A` and, for the two-detector
//! case, `y = (T₂ − T₁)/T₁`.

use std::f64::consts::PI;

use crate::algebra::Complex;
use crate::constants::{HBAR, SPEED_OF_LIGHT, VACUUM_PERMITTIVITY};
use crate::error::{Error, Result};
use crate::thermal::{cosech2_inv_2theta, coth_inv_2theta};

/// Modulus bound on a single path amplitude (beam-splitter factor ½).
pub const MAX_AMPLITUDE: f64 = 0.5;
const AMPLITUDE_SLACK: f64 = 1e-12;

/// Above this `ħΓ / (p²/2m)` the weak-dissipation assumption is suspect.
pub const WEAK_DISSIPATION_RATIO: f64 = 0.1;

/// Largest `|y|` accepted by [`predictability_near_equilibrium`].
pub const NEAR_EQUILIBRIUM_MAX_REL_DIFF: f64 = 0.5;
/// Above this `|y|` the near-equilibrium expansion is flagged as questionable.
pub const NEAR_EQUILIBRIUM_WARN_REL_DIFF: f64 = 0.1;

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::domain(format!("{name} must be > 0, got {v}")))
    }
}

fn non_negative(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(Error::domain(format!("{name} must be >= 0, got {v}")))
    }
}

/// Mass and momentum of the interfering particle, internal units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleParams {
    mass: f64,
    momentum: f64,
    hbar: f64,
}

impl ParticleParams {
    pub fn new(mass: f64, momentum: f64) -> Result<Self> {
        Self::with_hbar(mass, momentum, 1.0)
    }

    pub fn with_hbar(mass: f64, momentum: f64, hbar: f64) -> Result<Self> {
        Ok(ParticleParams {
            mass: positive("mass", mass)?,
            momentum: positive("momentum", momentum)?,
            hbar: positive("hbar", hbar)?,
        })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn momentum(&self) -> f64 {
        self.momentum
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `k = p/ħ`.
    pub fn wave_number(&self) -> f64 {
        self.momentum / self.hbar
    }

    /// `p²/2m`.
    pub fn kinetic_energy(&self) -> f64 {
        self.momentum * self.momentum / (2.0 * self.mass)
    }
}

/// Lossy section of one arm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorSegment {
    length: f64,
    decay_rate: f64,
}

impl DetectorSegment {
    pub fn new(length: f64, decay_rate: f64) -> Result<Self> {
        Ok(DetectorSegment {
            length: non_negative("detector length", length)?,
            decay_rate: non_negative("decay rate", decay_rate)?,
        })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn decay_rate(&self) -> f64 {
        self.decay_rate
    }

    /// True when `ħΓ > 0.1·p²/2m`, i.e. the loss is no longer small compared
    /// to the kinetic energy.
    pub fn weak_dissipation_violated(&self, particle: &ParticleParams) -> bool {
        particle.hbar * self.decay_rate > WEAK_DISSIPATION_RATIO * particle.kinetic_energy()
    }

    /// Real amplitude factor `e^{−L/2l}` across the segment; 1 when lossless.
    pub fn amplitude_factor(&self, particle: &ParticleParams) -> Result<f64> {
        if self.length == 0.0 || self.decay_rate == 0.0 {
            return Ok(1.0);
        }
        let l = attenuation_length(particle, self.decay_rate)?;
        Ok((-self.length / (2.0 * l)).exp())
    }
}

/// Arm geometry and detectors. The arms must have equal length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferometerConfig {
    arm1_length: f64,
    arm2_length: f64,
    particle: ParticleParams,
    detector_arm2: DetectorSegment,
    detector_arm1: Option<DetectorSegment>,
}

impl InterferometerConfig {
    /// Single detector on arm 2.
    pub fn new(
        arm1_length: f64,
        arm2_length: f64,
        particle: ParticleParams,
        detector_arm2: DetectorSegment,
    ) -> Result<Self> {
        let arm1_length = positive("arm 1 length", arm1_length)?;
        let arm2_length = positive("arm 2 length", arm2_length)?;
        if (arm1_length - arm2_length).abs() > 1e-12 * arm1_length.max(arm2_length) {
            return Err(Error::UnequalArms {
                arm1: arm1_length,
                arm2: arm2_length,
            });
        }
        Ok(InterferometerConfig {
            arm1_length,
            arm2_length,
            particle,
            detector_arm2,
            detector_arm1: None,
        })
    }

    /// Adds a second detector on arm 1 (eraser setup).
    pub fn with_arm1_detector(mut self, detector: DetectorSegment) -> Self {
        self.detector_arm1 = Some(detector);
        self
    }

    pub fn particle(&self) -> &ParticleParams {
        &self.particle
    }

    pub fn detector_arm2(&self) -> &DetectorSegment {
        &self.detector_arm2
    }

    pub fn detector_arm1(&self) -> Option<&DetectorSegment> {
        self.detector_arm1.as_ref()
    }

    pub fn arm_lengths(&self) -> (f64, f64) {
        (self.arm1_length, self.arm2_length)
    }
}

/// Complex amplitudes for the two arms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathAmplitudes {
    psi1: Complex,
    psi2: Complex,
}

impl PathAmplitudes {
    pub fn new(psi1: Complex, psi2: Complex) -> Result<Self> {
        for z in [psi1, psi2] {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite("PathAmplitudes"));
            }
            if z.norm() > MAX_AMPLITUDE + AMPLITUDE_SLACK {
                return Err(Error::domain(format!("|psi| = {} exceeds 1/2", z.norm())));
            }
        }
        if psi1.norm_sqr() + psi2.norm_sqr() == 0.0 {
            return Err(Error::DegenerateAmplitudes);
        }
        Ok(PathAmplitudes { psi1, psi2 })
    }

    pub fn psi1(&self) -> Complex {
        self.psi1
    }

    pub fn psi2(&self) -> Complex {
        self.psi2
    }
}

/// Coupling constant of the thermal predictability formulas.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AlphaParams {
    alpha: f64,
}

impl AlphaParams {
    pub fn new(alpha: f64) -> Result<Self> {
        Ok(AlphaParams {
            alpha: non_negative("alpha", alpha)?,
        })
    }

    pub fn value(&self) -> f64 {
        self.alpha
    }
}

/// `κ = mΓ/2p`, the imaginary part of the wave number.
pub fn attenuation_wave_number(particle: &ParticleParams, decay_rate: f64) -> Result<f64> {
    positive("decay rate", decay_rate)?;
    Ok(particle.mass * decay_rate / (2.0 * particle.momentum))
}

/// `l = p/(mΓ)`, so that `κ = 1/2l`.
pub fn attenuation_length(particle: &ParticleParams, decay_rate: f64) -> Result<f64> {
    positive("decay rate", decay_rate)?;
    Ok(particle.momentum / (particle.mass * decay_rate))
}

/// `e^{ipx/ħ}·e^{−x/2l}`, without the splitter prefactor.
pub fn decayed_amplitude(particle: &ParticleParams, x: f64, l: f64) -> Result<Complex> {
    non_negative("distance", x)?;
    positive("attenuation length", l)?;
    let phase = particle.momentum * x / particle.hbar;
    Ok(Complex::from_polar((-x / (2.0 * l)).exp(), phase))
}

/// `ψ_j = −(i/2)·e^{ipR_j/ħ}·(detector attenuation on arm j)`.
pub fn path_amplitudes(config: &InterferometerConfig) -> Result<PathAmplitudes> {
    let p = &config.particle;
    let splitter = Complex::new(0.0, -0.5);
    let arm = |length: f64, detector: Option<&DetectorSegment>| -> Result<Complex> {
        let attenuation = match detector {
            Some(d) => d.amplitude_factor(p)?,
            None => 1.0,
        };
        Ok(splitter * Complex::from_polar(attenuation, p.momentum * length / p.hbar))
    };
    let psi1 = arm(config.arm1_length, config.detector_arm1.as_ref())?;
    let psi2 = arm(config.arm2_length, Some(&config.detector_arm2))?;
    PathAmplitudes::new(psi1, psi2)
}

/// `|(|ψ1|² − |ψ2|²)/(|ψ1|² + |ψ2|²)|`.
pub fn predictability(amps: &PathAmplitudes) -> Result<f64> {
    let (a, b) = (amps.psi1.norm_sqr(), amps.psi2.norm_sqr());
    if a + b == 0.0 {
        return Err(Error::DegenerateAmplitudes);
    }
    Ok(((a - b) / (a + b)).abs())
}

/// Fringe visibility `2|ψ1||ψ2|/(|ψ1|² + |ψ2|²)`.
pub fn visibility(amps: &PathAmplitudes) -> Result<f64> {
    let (a, b) = (amps.psi1.norm(), amps.psi2.norm());
    let total = a * a + b * b;
    if total == 0.0 {
        return Err(Error::DegenerateAmplitudes);
    }
    Ok((2.0 * a * b / total).min(1.0))
}

/// `(I_max − I_min)/(I_max + I_min)`.
pub fn visibility_from_intensities(i_max: f64, i_min: f64) -> Result<f64> {
    if !(i_max.is_finite() && i_min.is_finite()) || i_min < 0.0 || i_max < i_min {
        return Err(Error::domain(format!(
            "need 0 <= I_min <= I_max, got {i_min}, {i_max}"
        )));
    }
    if i_max == 0.0 {
        return Err(Error::DegenerateAmplitudes);
    }
    Ok((i_max - i_min) / (i_max + i_min))
}

/// Closed-form single-detector predictability `tanh(mL_decΓ/4ħk)`.
pub fn predictability_single_detector(
    particle: &ParticleParams,
    detector: &DetectorSegment,
) -> f64 {
    let arg = particle.mass * detector.length * detector.decay_rate
        / (4.0 * particle.hbar * particle.wave_number());
    arg.tanh()
}

/// `tanh(α·coth(1/2θ))`; `tanh α` at `θ = 0`.
pub fn predictability_thermal(alpha: AlphaParams, theta: f64) -> Result<f64> {
    Ok((alpha.alpha * coth_inv_2theta(theta)?).tanh())
}

/// `α = m L_dec ω_A³ d₁₂² / (24π ε₀ ħ² k c³)`, SI inputs.
pub fn alpha_from_physical(
    m: f64,
    l_dec: f64,
    omega_a_si: f64,
    d12: f64,
    k: f64,
) -> Result<AlphaParams> {
    for (name, v) in [
        ("mass", m),
        ("L_dec", l_dec),
        ("omega_a", omega_a_si),
        ("d12", d12),
        ("k", k),
    ] {
        positive(name, v)?;
    }
    let alpha = m * l_dec * omega_a_si.powi(3) * d12 * d12
        / (24.0 * PI * VACUUM_PERMITTIVITY * HBAR * HBAR * k * SPEED_OF_LIGHT.powi(3));
    AlphaParams::new(alpha)
}

/// Two detectors at `θ₁`, `θ₂`: `|tanh(α·(coth(1/2θ₂) − coth(1/2θ₁)))|`.
pub fn predictability_eraser(alpha: AlphaParams, theta1: f64, theta2: f64) -> Result<f64> {
    let diff = coth_inv_2theta(theta2)? - coth_inv_2theta(theta1)?;
    Ok((alpha.alpha * diff).tanh().abs())
}

/// Near-equilibrium form of [`predictability_eraser`] with `θ₂ = θ₁(1 + y)`:
///
/// ```text
/// |tanh( (α y / 2θ₁)·cosech²(1/2θ₁) / (1 − (y/2θ₁)·coth(1/2θ₁)) )|
/// ```
pub fn predictability_near_equilibrium(
    alpha: AlphaParams,
    theta1: f64,
    rel_diff: f64,
) -> Result<f64> {
    positive("theta1", theta1)?;
    if !rel_diff.is_finite() || rel_diff.abs() > NEAR_EQUILIBRIUM_MAX_REL_DIFF {
        return Err(Error::domain(format!(
            "|rel_diff| must be <= {NEAR_EQUILIBRIUM_MAX_REL_DIFF}, got {rel_diff}"
        )));
    }
    let scaled = rel_diff / (2.0 * theta1);
    let denominator = 1.0 - scaled * coth_inv_2theta(theta1)?;
    if denominator <= 0.0 {
        return Err(Error::domain(format!(
            "near-equilibrium expansion breaks down (denominator {denominator:e})"
        )));
    }
    let arg = alpha.alpha * scaled * cosech2_inv_2theta(theta1)? / denominator;
    Ok(arg.tanh().abs())
}

/// True when `|y|` is large enough that the expansion is only a rough guide.
pub fn near_equilibrium_warning(rel_diff: f64) -> bool {
    rel_diff.abs() > NEAR_EQUILIBRIUM_WARN_REL_DIFF
}
