//! Sphere above a split B/C plate under a shared overlayer.
//!
//! Under PFA the force on a sphere of radius R is 2πR times the plane-plane
//! free energy, so the differential signal is ΔF = 2πR (F_B − F_C) with F_B
//! and F_C the free energies of A facing D(w)/B and D(w)/C. Forces are
//! reported in fN; attraction is negative.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::layers::LayerStack;
use crate::lifshitz::{free_energy, QuadratureSettings};
use crate::materials::{preset, Material, MuToggle, Prescription};
use crate::units::ev_per_um_to_fn;

/// a/R above which PFA is flagged.
pub const PFA_RATIO_LIMIT: f64 = 0.01;
/// Required s/ρ for the probe points to be far from the B–C boundary.
pub const BOUNDARY_FACTOR: f64 = 10.0;

pub const PRESET_NAMES: [&str; 5] = ["fig3", "fig4_5", "fig6bis", "fig6", "fig7"];

/// Optional finite sphere coating: `thickness` of the coating material on a
/// `core` body. Without it the coating is a half-space.
#[derive(Debug, Clone, PartialEq)]
pub struct CoatingLayer {
    pub thickness: f64,
    pub core: Material,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsoelectronicSetup {
    pub name: String,
    /// Sphere radius in μm.
    pub radius: f64,
    pub coating: Material,
    pub coating_layer: Option<CoatingLayer>,
    pub overlayer: Material,
    /// Overlayer thickness in μm.
    pub thickness: f64,
    pub substrate_b: Material,
    pub substrate_c: Material,
    /// Temperature in K.
    pub temperature: f64,
    pub prescription: Prescription,
    pub mu: MuToggle,
}

impl IsoelectronicSetup {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::domain(format!(
                "sphere radius must be positive, got {}",
                self.radius
            )));
        }
        if !(self.thickness > 0.0 && self.thickness.is_finite()) {
            return Err(Error::domain(format!(
                "overlayer thickness must be positive, got {}",
                self.thickness
            )));
        }
        if !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return Err(Error::domain(format!(
                "temperature must be positive, got {}",
                self.temperature
            )));
        }
        if let Some(c) = &self.coating_layer {
            if !(c.thickness > 0.0 && c.thickness.is_finite()) {
                return Err(Error::domain("sphere coating thickness must be positive"));
            }
        }
        Ok(())
    }

    pub fn with_model(&self, prescription: Prescription, mu: MuToggle) -> Self {
        Self {
            prescription,
            mu,
            ..self.clone()
        }
    }

    /// The same setup with B and C exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            substrate_b: self.substrate_c.clone(),
            substrate_c: self.substrate_b.clone(),
            ..self.clone()
        }
    }

    pub fn sphere_stack(&self) -> LayerStack {
        match &self.coating_layer {
            None => LayerStack::HalfSpace(self.coating.clone()),
            Some(c) => LayerStack::Coated {
                overlayer: self.coating.clone(),
                thickness: c.thickness,
                substrate: c.core.clone(),
            },
        }
    }

    pub fn plate_b(&self) -> LayerStack {
        LayerStack::Coated {
            overlayer: self.overlayer.clone(),
            thickness: self.thickness,
            substrate: self.substrate_b.clone(),
        }
    }

    pub fn plate_c(&self) -> LayerStack {
        LayerStack::Coated {
            overlayer: self.overlayer.clone(),
            thickness: self.thickness,
            substrate: self.substrate_c.clone(),
        }
    }
}

fn catalog_entry(
    name: &str,
    coating: &str,
    overlayer: &str,
    thickness: f64,
    b: &str,
    c: &str,
) -> Result<IsoelectronicSetup> {
    Ok(IsoelectronicSetup {
        name: name.to_string(),
        radius: 150.0,
        coating: preset(coating)?,
        coating_layer: None,
        overlayer: preset(overlayer)?,
        thickness,
        substrate_b: preset(b)?,
        substrate_c: preset(c)?,
        temperature: 300.0,
        prescription: Prescription::Drude,
        mu: MuToggle::Full,
    })
}

/// Looks up one of the named setups; all use R = 150 μm and T = 300 K.
pub fn setup_preset(name: &str) -> Result<IsoelectronicSetup> {
    match name {
        "fig3" => catalog_entry(name, "Au", "Si_c", 0.1, "Si", "Au"),
        "fig4_5" => catalog_entry(name, "Ni", "Au", 0.08, "Au", "Ni"),
        "fig6bis" => catalog_entry(name, "Ni", "Pt", 0.02, "Pt", "Ni"),
        "fig6" => catalog_entry(name, "Ni", "Si_c", 0.1, "Pt", "Ni"),
        "fig7" => catalog_entry(name, "Ni", "Si_c", 0.1, "Si", "Ni"),
        other => Err(Error::UnknownSetup(other.to_string())),
    }
}

/// PFA sphere-plate force in fN: 2πR·F(a).
#[allow(clippy::too_many_arguments)]
pub fn pfa_force(
    sphere: &LayerStack,
    plate: &LayerStack,
    a: f64,
    temperature: f64,
    prescription: Prescription,
    mu: MuToggle,
    radius: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    let f = free_energy(sphere, plate, a, temperature, prescription, mu, settings)?;
    Ok(ev_per_um_to_fn(2.0 * PI * radius * f.total))
}

/// Both plate-region free energies and the resulting force difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaForce {
    /// eV·μm⁻²
    pub free_energy_b: f64,
    /// eV·μm⁻²
    pub free_energy_c: f64,
    /// fN
    pub delta: f64,
    pub error_estimate: f64,
}

pub fn delta_force_detail(
    setup: &IsoelectronicSetup,
    a: f64,
    settings: &QuadratureSettings,
) -> Result<DeltaForce> {
    setup.validate()?;
    let sphere = setup.sphere_stack();
    let (plate_b, plate_c) = (setup.plate_b(), setup.plate_c());
    let (fb, fc) = rayon::join(
        || free_energy(&sphere, &plate_b, a, setup.temperature, setup.prescription, setup.mu, settings),
        || free_energy(&sphere, &plate_c, a, setup.temperature, setup.prescription, setup.mu, settings),
    );
    let (fb, fc) = (fb?, fc?);
    let scale = ev_per_um_to_fn(2.0 * PI * setup.radius);
    Ok(DeltaForce {
        free_energy_b: fb.total,
        free_energy_c: fc.total,
        delta: scale * (fb.total - fc.total),
        error_estimate: scale * (fb.error_estimate + fc.error_estimate),
    })
}

/// ΔF(a) = 2πR (F_B − F_C) in fN.
pub fn delta_force(setup: &IsoelectronicSetup, a: f64, settings: &QuadratureSettings) -> Result<f64> {
    Ok(delta_force_detail(setup, a, settings)?.delta)
}

/// Separation and lateral probe distance from the B–C boundary, both in μm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SetupGeometry {
    pub a: f64,
    pub s: f64,
}

impl SetupGeometry {
    /// Interaction radius ρ = √(aR).
    pub fn rho(&self, radius: f64) -> f64 {
        (self.a * radius).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityReport {
    pub pfa_ok: bool,
    pub boundary_ok: bool,
    pub a_over_r: f64,
    pub rho: f64,
    pub s_over_rho: f64,
}

/// Reports, without enforcing, whether a/R and s/ρ are in the PFA regime.
pub fn validity_check(geometry: &SetupGeometry, radius: f64) -> ValidityReport {
    let a_over_r = geometry.a / radius;
    let rho = geometry.rho(radius);
    let s_over_rho = if rho > 0.0 { geometry.s / rho } else { f64::INFINITY };
    ValidityReport {
        pfa_ok: a_over_r < PFA_RATIO_LIMIT,
        boundary_ok: s_over_rho > BOUNDARY_FACTOR,
        a_over_r,
        rho,
        s_over_rho,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifshitz::{ideal_free_energy, IdealMirror};
    use crate::materials::gold;
    use crate::units::ideal_energy;

    #[test]
    fn catalog_contents() {
        let fig3 = setup_preset("fig3").unwrap();
        assert_eq!(
            (fig3.coating.name.as_str(), fig3.overlayer.name.as_str(), fig3.substrate_b.name.as_str(), fig3.substrate_c.name.as_str()),
            ("Au", "Si_c", "Si", "Au")
        );
        assert_eq!(fig3.thickness, 0.1);
        assert_eq!(setup_preset("fig4_5").unwrap().thickness, 0.08);
        assert_eq!(setup_preset("fig6bis").unwrap().thickness, 0.02);
        for name in PRESET_NAMES {
            let s = setup_preset(name).unwrap();
            assert_eq!(s.radius, 150.0);
            assert_eq!(s.temperature, 300.0);
            s.validate().unwrap();
        }
        assert!(matches!(setup_preset("fig9"), Err(Error::UnknownSetup(_))));
    }

    #[test]
    fn ideal_pfa_composition() {
        let s = QuadratureSettings::default();
        let f = ideal_free_energy(IdealMirror::Both, 1.0, 10.0, &s).unwrap();
        let force = ev_per_um_to_fn(2.0 * PI * 150.0 * f.total);
        let expected = ev_per_um_to_fn(2.0 * PI * 150.0 * ideal_energy(1.0).unwrap());
        assert!(((force - expected) / expected).abs() < 5e-3);
    }

    #[test]
    fn pfa_force_linear_in_radius_and_attractive() {
        let s = QuadratureSettings::default();
        let au = LayerStack::HalfSpace(gold());
        let f1 = pfa_force(&au, &au, 0.5, 300.0, Prescription::Drude, MuToggle::Full, 150.0, &s).unwrap();
        let f2 = pfa_force(&au, &au, 0.5, 300.0, Prescription::Drude, MuToggle::Full, 300.0, &s).unwrap();
        assert!(f1 < 0.0);
        assert_eq!(f2, 2.0 * f1);
    }

    #[test]
    fn presets_attract_at_half_micron() {
        let s = QuadratureSettings::default();
        for name in PRESET_NAMES {
            let setup = setup_preset(name).unwrap();
            let f = pfa_force(
                &setup.sphere_stack(),
                &setup.plate_b(),
                0.5,
                setup.temperature,
                setup.prescription,
                setup.mu,
                setup.radius,
                &s,
            )
            .unwrap();
            assert!(f < 0.0, "{name}");
        }
    }

    #[test]
    fn identical_regions_give_zero() {
        let s = QuadratureSettings::default();
        let mut setup = setup_preset("fig3").unwrap();
        setup.substrate_b = setup.substrate_c.clone();
        assert_eq!(delta_force(&setup, 1.0, &s).unwrap(), 0.0);
    }

    #[test]
    fn swap_is_exactly_antisymmetric() {
        let s = QuadratureSettings::default();
        let setup = setup_preset("fig6bis").unwrap().with_model(Prescription::Plasma, MuToggle::Full);
        let d = delta_force(&setup, 0.25, &s).unwrap();
        let e = delta_force(&setup.swapped(), 0.25, &s).unwrap();
        assert_eq!(d, -e);
        assert!(d != 0.0);
    }

    #[test]
    fn fig3_matches_independent_oracle() {
        let s = QuadratureSettings::default();
        let setup = setup_preset("fig3").unwrap();
        let d = delta_force(&setup.with_model(Prescription::Drude, MuToggle::Unity), 3.0, &s).unwrap();
        let p = delta_force(&setup.with_model(Prescription::Plasma, MuToggle::Unity), 3.0, &s).unwrap();
        assert!(((d - 0.348_536_102_669_291_75) / d).abs() < 1e-5, "{d}");
        assert!(((p - 4.787_808_459_050_203) / p).abs() < 1e-5, "{p}");
    }

    #[test]
    fn finite_sphere_coating_changes_the_sphere_stack() {
        let mut setup = setup_preset("fig4_5").unwrap();
        assert!(matches!(setup.sphere_stack(), LayerStack::HalfSpace(_)));
        setup.coating_layer = Some(CoatingLayer {
            thickness: 0.2,
            core: gold(),
        });
        assert!(matches!(setup.sphere_stack(), LayerStack::Coated { .. }));
    }

    #[test]
    fn validity_thresholds() {
        let r = validity_check(&SetupGeometry { a: 3.0, s: 1e4 }, 150.0);
        assert!(!r.pfa_ok);
        assert!((r.a_over_r - 0.02).abs() < 1e-15);
        let r = validity_check(&SetupGeometry { a: 1.0, s: 1e4 }, 150.0);
        assert!(r.boundary_ok);
        assert!((r.rho - 12.247_448_713_915_89).abs() < 1e-12);
        let r = validity_check(&SetupGeometry { a: 1e-9, s: 1.0 }, 150.0);
        assert!(r.pfa_ok && r.boundary_ok);
        let r = validity_check(&SetupGeometry { a: 1.0, s: 100.0 }, 150.0);
        assert!(!r.boundary_ok);
    }

    #[test]
    fn invalid_setup_rejected() {
        let mut setup = setup_preset("fig3").unwrap();
        setup.thickness = 0.0;
        assert!(delta_force(&setup, 1.0, &QuadratureSettings::default()).is_err());
    }
}
