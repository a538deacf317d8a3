//! μ(iξ) models.

use crate::error::{Error, Result};

/// Default Debye relaxation energy ħω_m in eV (≈ 2.4·10⁴ Hz).
pub const DEFAULT_OMEGA_M: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PermeabilityModel {
    Unity,
    /// μ(iξ) = 1 + (μ₀ − 1)/(1 + ξ/ω_m).
    Debye { static_mu: f64, omega_m: f64 },
}

impl PermeabilityModel {
    pub fn debye(static_mu: f64) -> Self {
        PermeabilityModel::Debye {
            static_mu,
            omega_m: DEFAULT_OMEGA_M,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PermeabilityModel::Unity => Ok(()),
            PermeabilityModel::Debye { static_mu, omega_m } => {
                if !(static_mu >= 1.0 && static_mu.is_finite()) {
                    return Err(Error::InvalidModel(format!(
                        "static permeability must be >= 1, got {static_mu}"
                    )));
                }
                if !(omega_m > 0.0 && omega_m.is_finite()) {
                    return Err(Error::InvalidModel(format!(
                        "Debye frequency must be positive, got {omega_m}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// μ(iξ) for ξ ≥ 0; exactly μ₀ at ξ = 0.
    pub fn mu_imag_axis(&self, xi: f64) -> f64 {
        debug_assert!(xi >= 0.0);
        match *self {
            PermeabilityModel::Unity => 1.0,
            PermeabilityModel::Debye { static_mu, omega_m } => {
                if xi == 0.0 {
                    static_mu
                } else {
                    1.0 + (static_mu - 1.0) / (1.0 + xi / omega_m)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::matsubara_frequency;

    #[test]
    fn debye_static_value() {
        let m = PermeabilityModel::debye(110.0);
        assert_eq!(m.mu_imag_axis(0.0), 110.0);
    }

    #[test]
    fn debye_negligible_at_first_matsubara() {
        let xi1 = matsubara_frequency(1, 300.0).unwrap();
        for omega_m in [1e-10, 1e-9] {
            let m = PermeabilityModel::Debye {
                static_mu: 110.0,
                omega_m,
            };
            assert!((m.mu_imag_axis(xi1) - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn unity_everywhere() {
        for xi in [0.0, 1e-9, 0.16, 50.0] {
            assert_eq!(PermeabilityModel::Unity.mu_imag_axis(xi), 1.0);
        }
    }

    #[test]
    fn validation() {
        assert!(PermeabilityModel::debye(0.5).validate().is_err());
        assert!(PermeabilityModel::Debye { static_mu: 2.0, omega_m: 0.0 }
            .validate()
            .is_err());
        assert!(PermeabilityModel::debye(1.0).validate().is_ok());
    }

    proptest::proptest! {
        #[test]
        fn debye_bounded_and_non_increasing(mu0 in 1.0f64..500.0, xi in 0.0f64..1.0, dxi in 0.0f64..1.0) {
            let m = PermeabilityModel::debye(mu0);
            let a = m.mu_imag_axis(xi);
            let b = m.mu_imag_axis(xi + dxi);
            proptest::prop_assert!(b <= a);
            proptest::prop_assert!((1.0..=mu0).contains(&a));
        }
    }
}
