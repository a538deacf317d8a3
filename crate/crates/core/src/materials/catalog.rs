//! Named material presets.

use super::{
    DielectricOscillator, DrudeParameters, Material, PermeabilityModel, PermittivityModel,
};
use crate::error::{Error, Result};

pub const AU_DRUDE: DrudeParameters = DrudeParameters::new(8.9, 0.035);
pub const NI_DRUDE: DrudeParameters = DrudeParameters::new(4.89, 0.0436);
pub const PT_DRUDE: DrudeParameters = DrudeParameters::new(5.1, 0.07);
pub const SIC_CONDUCTION: DrudeParameters = DrudeParameters::new(0.46, 0.1);
pub const NI_STATIC_MU: f64 = 110.0;

/// Single-oscillator model of high-resistivity Si. A modeling default, not
/// fitted data.
pub const SI_OSCILLATOR: DielectricOscillator = DielectricOscillator::new(11.67, 4.34);

pub const PRESET_NAMES: [&str; 5] = ["Au", "Ni", "Pt", "Si", "Si_c"];

fn build(name: &str, eps: PermittivityModel, mu: PermeabilityModel) -> Material {
    Material {
        name: name.to_string(),
        permittivity: eps,
        permeability: mu,
    }
}

pub fn gold() -> Material {
    build(
        "Au",
        PermittivityModel::AnalyticDrude(AU_DRUDE),
        PermeabilityModel::Unity,
    )
}

pub fn nickel() -> Material {
    build(
        "Ni",
        PermittivityModel::AnalyticDrude(NI_DRUDE),
        PermeabilityModel::debye(NI_STATIC_MU),
    )
}

pub fn platinum() -> Material {
    build(
        "Pt",
        PermittivityModel::AnalyticDrude(PT_DRUDE),
        PermeabilityModel::Unity,
    )
}

pub fn silicon() -> Material {
    build(
        "Si",
        PermittivityModel::DielectricOscillator(SI_OSCILLATOR),
        PermeabilityModel::Unity,
    )
}

/// B-doped low-resistivity Si: dielectric Si plus a Drude conduction term.
pub fn conductive_silicon() -> Material {
    build(
        "Si_c",
        PermittivityModel::ConductiveSi {
            base: Box::new(PermittivityModel::DielectricOscillator(SI_OSCILLATOR)),
            conduction: SIC_CONDUCTION,
        },
        PermeabilityModel::Unity,
    )
}

pub fn preset(name: &str) -> Result<Material> {
    match name {
        "Au" => Ok(gold()),
        "Ni" => Ok(nickel()),
        "Pt" => Ok(platinum()),
        "Si" => Ok(silicon()),
        "Si_c" => Ok(conductive_silicon()),
        other => Err(Error::UnknownMaterial(other.to_string())),
    }
}
