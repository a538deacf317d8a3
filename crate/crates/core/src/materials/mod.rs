//! Dielectric and magnetic response on the imaginary frequency axis.

mod catalog;
mod optical;
mod permeability;
mod permittivity;

pub use catalog::{
    conductive_silicon, gold, nickel, platinum, preset, silicon, AU_DRUDE, NI_DRUDE, NI_STATIC_MU,
    PRESET_NAMES, PT_DRUDE, SIC_CONDUCTION, SI_OSCILLATOR,
};
pub use optical::{LorentzOscillator, OpticalDataTable, SyntheticSpectrum};
pub use permeability::{PermeabilityModel, DEFAULT_OMEGA_M};
pub use permittivity::{
    DielectricOscillator, DrudeParameters, PermittivityModel, PoleDescriptor, TabulatedPermittivity,
};

use crate::error::Result;

/// Low-frequency extrapolation rule for conduction electrons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prescription {
    /// Dissipative Drude continuation: ε(iξ) has a simple pole at ξ = 0.
    Drude,
    /// Relaxation neglected: ε(iξ) has a double pole at ξ = 0.
    Plasma,
}

impl Prescription {
    pub const ALL: [Prescription; 2] = [Prescription::Drude, Prescription::Plasma];

    pub fn as_str(self) -> &'static str {
        match self {
            Prescription::Drude => "drude",
            Prescription::Plasma => "plasma",
        }
    }
}

/// Whether the static permeability enters the calculation.
///
/// This is a property of the evaluation, not of the material: the same Ni
/// is evaluated with full or neglected magnetic response.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MuToggle {
    /// μ = 1 everywhere.
    Unity,
    /// The material's own permeability model.
    Full,
}

impl MuToggle {
    pub const ALL: [MuToggle; 2] = [MuToggle::Unity, MuToggle::Full];

    pub fn as_str(self) -> &'static str {
        match self {
            MuToggle::Unity => "mu1",
            MuToggle::Full => "muFull",
        }
    }
}

/// A named pairing of permittivity and permeability models.
#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    pub name: String,
    pub permittivity: PermittivityModel,
    pub permeability: PermeabilityModel,
}

impl Material {
    pub fn new(
        name: impl Into<String>,
        permittivity: PermittivityModel,
        permeability: PermeabilityModel,
    ) -> Result<Self> {
        permittivity.validate()?;
        permeability.validate()?;
        Ok(Self {
            name: name.into(),
            permittivity,
            permeability,
        })
    }

    /// The models actually used for a given prescription and μ-toggle.
    pub fn resolve(&self, prescription: Prescription, mu: MuToggle) -> ResolvedMaterial {
        ResolvedMaterial {
            permittivity: self.permittivity.under(prescription),
            permeability: match mu {
                MuToggle::Unity => PermeabilityModel::Unity,
                MuToggle::Full => self.permeability,
            },
        }
    }

    /// True when the material has a conduction-electron contribution, i.e. the
    /// prescription changes its low-frequency behaviour.
    pub fn is_conductor(&self) -> bool {
        self.permittivity.zero_frequency_behavior().order > 0
    }
}

/// A material with the prescription and μ-toggle already applied.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedMaterial {
    pub permittivity: PermittivityModel,
    pub permeability: PermeabilityModel,
}

impl ResolvedMaterial {
    pub fn vacuum() -> Self {
        Self {
            permittivity: PermittivityModel::Vacuum,
            permeability: PermeabilityModel::Unity,
        }
    }

    pub fn eps(&self, xi: f64) -> Result<f64> {
        self.permittivity.eps_imag_axis(xi)
    }

    pub fn mu(&self, xi: f64) -> f64 {
        self.permeability.mu_imag_axis(xi)
    }

    pub fn pole(&self) -> PoleDescriptor {
        self.permittivity.zero_frequency_behavior()
    }

    pub fn static_mu(&self) -> f64 {
        self.permeability.mu_imag_axis(0.0)
    }
}
