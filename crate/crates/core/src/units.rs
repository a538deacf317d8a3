//! Physical constants and unit conventions.
//!
//! Energies in eV, lengths in μm, temperatures in K. Frequencies are stored as
//! ħω in eV, so ξ/c becomes ξ/ħc in μm⁻¹.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// ħc in eV·μm.
pub const HBAR_C: f64 = 0.197_326_97;

/// Boltzmann constant in eV/K.
pub const K_B: f64 = 8.617_333_2e-5;

/// Elementary charge in C, used only for the eV → J step of force reporting.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Femtonewtons per eV·μm⁻¹.
pub const FN_PER_EV_PER_UM: f64 = ELEMENTARY_CHARGE * 1.0e6 * 1.0e15;

/// Converts a force in eV/μm into femtonewtons.
pub fn ev_per_um_to_fn(force: f64) -> f64 {
    force * FN_PER_EV_PER_UM
}

/// Temperature-derived quantities: first Matsubara energy and thermal length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalState {
    pub temperature: f64,
    pub xi1: f64,
    pub thermal_length: f64,
}

impl ThermalState {
    pub fn new(temperature: f64) -> Result<Self> {
        let xi1 = matsubara_frequency(1, temperature)?;
        Ok(Self {
            temperature,
            xi1,
            thermal_length: HBAR_C / xi1,
        })
    }

    /// ξ_l = l ξ₁.
    pub fn xi(&self, l: usize) -> f64 {
        l as f64 * self.xi1
    }
}

/// Matsubara energy ξ_l = 2π l k_B T in eV.
pub fn matsubara_frequency(l: usize, temperature: f64) -> Result<f64> {
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(Error::domain(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    Ok(2.0 * PI * l as f64 * K_B * temperature)
}

/// Zero-temperature energy per unit area between perfect mirrors,
/// −π²ħc/(720 a³), in eV·μm⁻².
pub fn ideal_energy(a: f64) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::domain(format!("separation must be positive, got {a}")));
    }
    Ok(-PI * PI * HBAR_C / (720.0 * a * a * a))
}
