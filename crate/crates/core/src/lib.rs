//! Thermal Casimir free energies between layered magnetodielectric plates.
//!
//! Frequencies are carried as energies in eV (ħ absorbed), lengths in μm and
//! temperatures in K. Free energies per unit area come out in eV·μm⁻²; the
//! conversion to femtonewtons happens only in [`setups`] when forces are
//! reported.
//!
//! The building blocks, bottom-up:
//!
//! - [`units`]: constants, Matsubara frequencies, the ideal-plate energy.
//! - [`materials`]: ε(iξ) and μ(iξ) models, optical tables and their
//!   Kramers-Kronig continuation under the Drude or plasma prescription.
//! - [`layers`]: axial wavenumbers, Fresnel coefficients, coated-plate
//!   reflection and the exact zero-frequency limits.
//! - [`lifshitz`]: the Matsubara sum for the free energy.
//! - [`setups`]: sphere-over-split-plate presets, PFA forces and ΔF.

pub mod error;
pub mod layers;
pub mod lifshitz;
pub mod materials;
pub mod quadrature;
pub mod setups;
pub mod units;

pub use error::{Error, Result};
pub use layers::{LayerStack, Polarization};
pub use lifshitz::{free_energy, FreeEnergyResult, QuadratureSettings};
pub use materials::{Material, MuToggle, PermeabilityModel, PermittivityModel, Prescription};
pub use setups::{delta_force, setup_preset, IsoelectronicSetup};
