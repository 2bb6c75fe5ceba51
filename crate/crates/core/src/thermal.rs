//! Thermal functions of the reduced temperature `θ = k_B T / ħω_A`.
//!
//! All of them go through `exp(−1/θ)` so that small temperatures never
//! overflow, and they return their exact limits at `θ = 0`.

use crate::error::{Error, Result};

/// Below this reduced temperature `n̄` is evaluated as `e/(1 − e)`, `e = exp(−1/θ)`.
const LOW_THETA: f64 = 1e-3;

fn check_theta(theta: f64) -> Result<()> {
    if theta.is_nan() || theta < 0.0 {
        Err(Error::domain(format!(
            "reduced temperature must be >= 0, got {theta}"
        )))
    } else {
        Ok(())
    }
}

/// Planck occupation `n̄ = 1/(exp(1/θ) − 1)`; zero at `θ = 0`.
pub fn planck_occupation(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    if theta == 0.0 {
        return Ok(0.0);
    }
    if theta < LOW_THETA {
        let e = (-1.0 / theta).exp();
        return Ok(e / (1.0 - e));
    }
    Ok(1.0 / (1.0 / theta).exp_m1())
}

/// `coth(1/(2θ))`, equal to `2n̄ + 1`; tends to 1 as `θ → 0`.
pub fn coth_inv_2theta(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    if theta == 0.0 {
        return Ok(1.0);
    }
    let x = 1.0 / theta;
    // coth(x/2) = (1 + e^{-x}) / (1 - e^{-x})
    Ok((1.0 + (-x).exp()) / -(-x).exp_m1())
}

/// `cosech²(1/(2θ))`; zero at `θ = 0`.
pub fn cosech2_inv_2theta(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    if theta == 0.0 {
        return Ok(0.0);
    }
    let x = 1.0 / theta;
    let d = (-x).exp_m1();
    // cosech²(x/2) = 4 e^{-x} / (1 - e^{-x})²
    Ok(4.0 * (-x).exp() / (d * d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zero_limits() {
        assert_eq!(planck_occupation(0.0).unwrap(), 0.0);
        assert_eq!(coth_inv_2theta(0.0).unwrap(), 1.0);
        assert_eq!(cosech2_inv_2theta(0.0).unwrap(), 0.0);
    }

    #[test]
    fn tiny_theta_does_not_overflow() {
        for theta in [1e-300, 1e-10, 5e-4, 1e-3] {
            let n = planck_occupation(theta).unwrap();
            assert!(n.is_finite() && n >= 0.0);
            assert!(coth_inv_2theta(theta).unwrap().is_finite());
            assert!(cosech2_inv_2theta(theta).unwrap().is_finite());
        }
    }

    #[test]
    fn unit_occupation() {
        let theta = 1.0 / std::f64::consts::LN_2;
        assert_relative_eq!(planck_occupation(theta).unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn branches_agree_at_switch() {
        let below = {
            let e = (-1.0 / LOW_THETA).exp();
            e / (1.0 - e)
        };
        let above = 1.0 / (1.0 / LOW_THETA).exp_m1();
        assert_relative_eq!(below, above, max_relative = 1e-12);
    }

    #[test]
    fn coth_identity() {
        for theta in [0.01, 0.3, 1.0, 7.0, 1e4] {
            let n = planck_occupation(theta).unwrap();
            assert_relative_eq!(
                coth_inv_2theta(theta).unwrap(),
                2.0 * n + 1.0,
                max_relative = 1e-13
            );
            let u = 1.0 / (2.0 * theta);
            let s = u.sinh();
            assert_relative_eq!(
                cosech2_inv_2theta(theta).unwrap(),
                1.0 / (s * s),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn negative_theta_rejected() {
        assert!(planck_occupation(-1e-9).is_err());
        assert!(coth_inv_2theta(-1.0).is_err());
        assert!(cosech2_inv_2theta(f64::NAN).is_err());
    }
}
