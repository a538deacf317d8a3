//! Reflection of vacuum-facing planar bodies on the imaginary frequency axis.
//!
//! A body is either a homogeneous half-space or a single overlayer of
//! thickness w on a substrate. Interface coefficients follow the
//! magnetodielectric Fresnel form
//!
//! ```text
//! r_TE = (μ_b k_a − μ_a k_b)/(μ_b k_a + μ_a k_b)
//! r_TM = (ε_b k_a − ε_a k_b)/(ε_b k_a + ε_a k_b)
//! ```
//!
//! with k = √(ε μ ξ²/(ħc)² + k⊥²). The ξ = 0 term never goes through these
//! formulas numerically: it is taken from the pole structure of each medium
//! (see [`zero_frequency_reflection`]).

use crate::error::{Error, Result};
use crate::materials::{Material, MuToggle, PoleDescriptor, Prescription, ResolvedMaterial};
use crate::units::HBAR_C;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    TE,
    TM,
}

impl Polarization {
    pub const ALL: [Polarization; 2] = [Polarization::TE, Polarization::TM];
}

/// One quadrature point of the Lifshitz sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImaginaryMode {
    pub l: usize,
    /// ξ_l in eV.
    pub xi: f64,
    /// In-plane wavenumber in μm⁻¹.
    pub k_perp: f64,
    /// Vacuum axial wavenumber √(ξ²/(ħc)² + k⊥²) in μm⁻¹.
    pub q: f64,
}

impl ImaginaryMode {
    pub fn new(l: usize, xi: f64, k_perp: f64) -> Self {
        let w = xi / HBAR_C;
        Self {
            l,
            xi,
            k_perp,
            q: (w * w + k_perp * k_perp).sqrt(),
        }
    }
}

/// Vacuum-facing planar body.
#[derive(Debug, Clone, PartialEq)]
pub enum LayerStack {
    HalfSpace(Material),
    Coated {
        overlayer: Material,
        /// Overlayer thickness in μm.
        thickness: f64,
        substrate: Material,
    },
}

impl LayerStack {
    pub fn coated(overlayer: Material, thickness: f64, substrate: Material) -> Result<Self> {
        if !(thickness > 0.0 && thickness.is_finite()) {
            return Err(Error::domain(format!(
                "overlayer thickness must be positive, got {thickness}"
            )));
        }
        Ok(LayerStack::Coated {
            overlayer,
            thickness,
            substrate,
        })
    }

    pub fn resolve(&self, prescription: Prescription, mu: MuToggle) -> ResolvedStack {
        match self {
            LayerStack::HalfSpace(m) => ResolvedStack::HalfSpace(m.resolve(prescription, mu)),
            LayerStack::Coated {
                overlayer,
                thickness,
                substrate,
            } => ResolvedStack::Coated {
                overlayer: overlayer.resolve(prescription, mu),
                thickness: *thickness,
                substrate: substrate.resolve(prescription, mu),
            },
        }
    }

    pub fn describe(&self) -> String {
        match self {
            LayerStack::HalfSpace(m) => m.name.clone(),
            LayerStack::Coated {
                overlayer,
                thickness,
                substrate,
            } => format!("{}({thickness} um)/{}", overlayer.name, substrate.name),
        }
    }
}

/// A stack with prescription and μ-toggle applied.
#[derive(Debug, Clone, PartialEq)]
pub enum ResolvedStack {
    HalfSpace(ResolvedMaterial),
    Coated {
        overlayer: ResolvedMaterial,
        thickness: f64,
        substrate: ResolvedMaterial,
    },
}

impl ResolvedStack {
    /// Material responses frozen at one Matsubara energy ξ > 0.
    pub fn at_frequency(&self, xi: f64) -> Result<StackResponse> {
        Ok(match self {
            ResolvedStack::HalfSpace(m) => StackResponse::HalfSpace(MediumResponse::at(m, xi)?),
            ResolvedStack::Coated {
                overlayer,
                thickness,
                substrate,
            } => StackResponse::Coated {
                overlayer: MediumResponse::at(overlayer, xi)?,
                thickness: *thickness,
                substrate: MediumResponse::at(substrate, xi)?,
            },
        })
    }

    /// The ξ → 0 limit objects of every medium.
    pub fn static_limit(&self) -> StaticStack {
        match self {
            ResolvedStack::HalfSpace(m) => StaticStack::HalfSpace(StaticMedium::of(m)),
            ResolvedStack::Coated {
                overlayer,
                thickness,
                substrate,
            } => StaticStack::Coated {
                overlayer: StaticMedium::of(overlayer),
                thickness: *thickness,
                substrate: StaticMedium::of(substrate),
            },
        }
    }
}

/// ε and μ of one medium at fixed ξ > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumResponse {
    pub eps: f64,
    pub mu: f64,
}

impl MediumResponse {
    pub const VACUUM: MediumResponse = MediumResponse { eps: 1.0, mu: 1.0 };

    pub fn at(material: &ResolvedMaterial, xi: f64) -> Result<Self> {
        Ok(Self {
            eps: material.eps(xi)?,
            mu: material.mu(xi),
        })
    }

    /// k = √(ε μ ξ²/(ħc)² + k⊥²), with `w2 = ξ²/(ħc)²`.
    #[inline]
    fn wavenumber(&self, w2: f64, k2: f64) -> f64 {
        (self.eps * self.mu * w2 + k2).sqrt()
    }
}

#[inline]
fn interface(a: MediumResponse, ka: f64, b: MediumResponse, kb: f64, pol: Polarization) -> f64 {
    let (xa, xb) = match pol {
        Polarization::TE => (a.mu, b.mu),
        Polarization::TM => (a.eps, b.eps),
    };
    (xb * ka - xa * kb) / (xb * ka + xa * kb)
}

/// Reflection of a film with top interface `r0d`, bottom interface `rdb` and
/// round-trip attenuation e^(−2wk_D).
#[inline]
pub fn compose(r0d: f64, rdb: f64, attenuation: f64) -> f64 {
    (r0d + attenuation * rdb) / (1.0 + attenuation * r0d * rdb)
}

/// A stack whose media responses are fixed at one ξ > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StackResponse {
    HalfSpace(MediumResponse),
    Coated {
        overlayer: MediumResponse,
        thickness: f64,
        substrate: MediumResponse,
    },
}

impl StackResponse {
    /// Reflection coefficient seen from vacuum for the given ξ and k⊥.
    pub fn reflection(&self, pol: Polarization, xi: f64, k_perp: f64) -> f64 {
        let w = xi / HBAR_C;
        let (w2, k2) = (w * w, k_perp * k_perp);
        let q = (w2 + k2).sqrt();
        match *self {
            StackResponse::HalfSpace(m) => {
                interface(MediumResponse::VACUUM, q, m, m.wavenumber(w2, k2), pol)
            }
            StackResponse::Coated {
                overlayer,
                thickness,
                substrate,
            } => {
                let kd = overlayer.wavenumber(w2, k2);
                let kb = substrate.wavenumber(w2, k2);
                let r0d = interface(MediumResponse::VACUUM, q, overlayer, kd, pol);
                let rdb = interface(overlayer, kd, substrate, kb, pol);
                compose(r0d, rdb, (-2.0 * thickness * kd).exp())
            }
        }
    }

    /// (TE, TM) coefficients together.
    #[inline]
    pub fn reflections(&self, xi: f64, k_perp: f64) -> [f64; 2] {
        [
            self.reflection(Polarization::TE, xi, k_perp),
            self.reflection(Polarization::TM, xi, k_perp),
        ]
    }
}

/// ξ → 0 description of one medium: pole of ε and static μ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticMedium {
    pub pole: PoleDescriptor,
    pub mu0: f64,
}

impl StaticMedium {
    pub const VACUUM: StaticMedium = StaticMedium {
        pole: PoleDescriptor::new(0, 1.0),
        mu0: 1.0,
    };

    pub fn of(material: &ResolvedMaterial) -> Self {
        Self {
            pole: material.pole(),
            mu0: material.static_mu(),
        }
    }

    /// lim k as ξ → 0: ε μ ξ² vanishes unless ε has a double pole.
    pub fn wavenumber(&self, k_perp: f64) -> f64 {
        if self.pole.order >= 2 {
            let w2 = self.mu0 * self.pole.coefficient / (HBAR_C * HBAR_C);
            (w2 + k_perp * k_perp).sqrt()
        } else {
            k_perp
        }
    }
}

/// Exact ξ → 0 limit of the interface coefficient from medium a to b.
pub fn static_interface(a: &StaticMedium, b: &StaticMedium, pol: Polarization, k_perp: f64) -> f64 {
    let ka = a.wavenumber(k_perp);
    let kb = b.wavenumber(k_perp);
    match pol {
        Polarization::TE => (b.mu0 * ka - a.mu0 * kb) / (b.mu0 * ka + a.mu0 * kb),
        Polarization::TM => {
            // The medium with the stronger divergence of ε dominates; equal
            // orders leave the ratio of pole coefficients.
            match a.pole.order.cmp(&b.pole.order) {
                std::cmp::Ordering::Less => 1.0,
                std::cmp::Ordering::Greater => -1.0,
                std::cmp::Ordering::Equal => {
                    let (ca, cb) = (a.pole.coefficient, b.pole.coefficient);
                    (cb * ka - ca * kb) / (cb * ka + ca * kb)
                }
            }
        }
    }
}

/// ξ → 0 limits of every medium in a stack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StaticStack {
    HalfSpace(StaticMedium),
    Coated {
        overlayer: StaticMedium,
        thickness: f64,
        substrate: StaticMedium,
    },
}

impl StaticStack {
    pub fn reflection(&self, pol: Polarization, k_perp: f64) -> f64 {
        match self {
            StaticStack::HalfSpace(m) => static_interface(&StaticMedium::VACUUM, m, pol, k_perp),
            StaticStack::Coated {
                overlayer,
                thickness,
                substrate,
            } => {
                let r0d = static_interface(&StaticMedium::VACUUM, overlayer, pol, k_perp);
                let rdb = static_interface(overlayer, substrate, pol, k_perp);
                let kd = overlayer.wavenumber(k_perp);
                compose(r0d, rdb, (-2.0 * thickness * kd).exp())
            }
        }
    }

    #[inline]
    pub fn reflections(&self, k_perp: f64) -> [f64; 2] {
        [
            self.reflection(Polarization::TE, k_perp),
            self.reflection(Polarization::TM, k_perp),
        ]
    }
}

fn require_positive_xi(mode: &ImaginaryMode) -> Result<()> {
    if !(mode.xi > 0.0 && mode.xi.is_finite()) {
        return Err(Error::domain(format!(
            "finite-frequency reflection needs xi > 0 (got {}); use zero_frequency_reflection",
            mode.xi
        )));
    }
    Ok(())
}

/// k_l^(a) = √(ε_a μ_a ξ_l²/(ħc)² + k⊥²).
pub fn axial_wavenumber(material: &ResolvedMaterial, mode: &ImaginaryMode) -> Result<f64> {
    require_positive_xi(mode)?;
    let m = MediumResponse::at(material, mode.xi)?;
    let w = mode.xi / HBAR_C;
    Ok(m.wavenumber(w * w, mode.k_perp * mode.k_perp))
}

/// Interface coefficient from medium a into medium b.
pub fn fresnel(
    a: &ResolvedMaterial,
    b: &ResolvedMaterial,
    pol: Polarization,
    mode: &ImaginaryMode,
) -> Result<f64> {
    require_positive_xi(mode)?;
    let ma = MediumResponse::at(a, mode.xi)?;
    let mb = MediumResponse::at(b, mode.xi)?;
    let w = mode.xi / HBAR_C;
    let (w2, k2) = (w * w, mode.k_perp * mode.k_perp);
    Ok(interface(ma, ma.wavenumber(w2, k2), mb, mb.wavenumber(w2, k2), pol))
}

/// Reflection coefficient of a stack seen from vacuum, ξ > 0.
pub fn stack_reflection(
    stack: &ResolvedStack,
    pol: Polarization,
    mode: &ImaginaryMode,
) -> Result<f64> {
    require_positive_xi(mode)?;
    Ok(stack
        .at_frequency(mode.xi)?
        .reflection(pol, mode.xi, mode.k_perp))
}

/// Exact ξ → 0 reflection coefficient of a stack for the given prescription
/// and μ-toggle.
pub fn zero_frequency_reflection(
    stack: &LayerStack,
    pol: Polarization,
    prescription: Prescription,
    k_perp: f64,
    mu: MuToggle,
) -> Result<f64> {
    if !(k_perp > 0.0 && k_perp.is_finite()) {
        return Err(Error::domain(format!(
            "zero-frequency reflection needs k_perp > 0, got {k_perp}"
        )));
    }
    Ok(stack
        .resolve(prescription, mu)
        .static_limit()
        .reflection(pol, k_perp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::{
        gold, nickel, preset, PermeabilityModel, PermittivityModel, PRESET_NAMES,
    };
    use crate::units::matsubara_frequency;

    fn resolved(m: &Material, p: Prescription, mu: MuToggle) -> ResolvedMaterial {
        m.resolve(p, mu)
    }

    fn constant(eps: f64) -> ResolvedMaterial {
        // ε ≈ const over the sampled ξ: an oscillator with resonance far above
        ResolvedMaterial {
            permittivity: PermittivityModel::oscillator(eps, 1e12),
            permeability: PermeabilityModel::Unity,
        }
    }

    #[test]
    fn vacuum_wavenumber_is_q() {
        let mode = ImaginaryMode::new(3, 0.4, 2.0);
        let k = axial_wavenumber(&ResolvedMaterial::vacuum(), &mode).unwrap();
        assert!((k - mode.q).abs() < 1e-15);
    }

    #[test]
    fn wavenumber_scales_with_sqrt_eps() {
        let mode = ImaginaryMode::new(1, HBAR_C, 0.0);
        let k = axial_wavenumber(&constant(4.0), &mode).unwrap();
        assert!((k - 2.0).abs() < 1e-12);
    }

    #[test]
    fn gold_wavenumber_at_first_matsubara() {
        let xi1 = matsubara_frequency(1, 300.0).unwrap();
        let mode = ImaginaryMode::new(1, xi1, 1.0);
        let au = resolved(&gold(), Prescription::Drude, MuToggle::Full);
        let k = axial_wavenumber(&au, &mode).unwrap();
        assert!((k - 40.930_622_489_812_336).abs() < 1e-9);
    }

    #[test]
    fn zero_frequency_mode_has_q_equal_k_perp() {
        let mode = ImaginaryMode::new(0, 0.0, 1.7);
        assert_eq!(mode.q, mode.k_perp);
        assert!(axial_wavenumber(&ResolvedMaterial::vacuum(), &mode).is_err());
    }

    #[test]
    fn identical_media_do_not_reflect() {
        let au = resolved(&gold(), Prescription::Drude, MuToggle::Full);
        let mode = ImaginaryMode::new(2, 0.3, 4.0);
        for pol in Polarization::ALL {
            assert_eq!(fresnel(&au, &au, pol, &mode).unwrap(), 0.0);
        }
    }

    #[test]
    fn drude_metal_tm_tends_to_one() {
        let au = resolved(&gold(), Prescription::Drude, MuToggle::Full);
        let mode = ImaginaryMode::new(1, 1e-6, 1.0);
        let r = fresnel(&ResolvedMaterial::vacuum(), &au, Polarization::TM, &mode).unwrap();
        assert!((r - 1.0).abs() < 1e-3);
    }

    #[test]
    fn dielectric_small_xi_tm_limit() {
        let eps0 = 11.67;
        let si = resolved(&preset("Si").unwrap(), Prescription::Drude, MuToggle::Full);
        let mode = ImaginaryMode::new(1, 1e-9, 3.0);
        let r = fresnel(&ResolvedMaterial::vacuum(), &si, Polarization::TM, &mode).unwrap();
        assert!((r - (eps0 - 1.0) / (eps0 + 1.0)).abs() < 1e-9);
    }

    #[test]
    fn opaque_overlayer_equals_top_interface() {
        let stack = LayerStack::coated(gold(), 5.0, nickel()).unwrap();
        let rs = stack.resolve(Prescription::Drude, MuToggle::Full);
        let mode = ImaginaryMode::new(1, 0.16, 1.0);
        let au = resolved(&gold(), Prescription::Drude, MuToggle::Full);
        for pol in Polarization::ALL {
            let r = stack_reflection(&rs, pol, &mode).unwrap();
            let r0d = fresnel(&ResolvedMaterial::vacuum(), &au, pol, &mode).unwrap();
            assert!((r - r0d).abs() < 1e-29);
        }
    }

    #[test]
    fn same_overlayer_and_substrate_is_half_space() {
        let stack = LayerStack::coated(gold(), 0.05, gold()).unwrap();
        let half = LayerStack::HalfSpace(gold());
        let mode = ImaginaryMode::new(4, 0.65, 3.0);
        for pol in Polarization::ALL {
            let a = stack_reflection(&stack.resolve(Prescription::Drude, MuToggle::Full), pol, &mode);
            let b = stack_reflection(&half.resolve(Prescription::Drude, MuToggle::Full), pol, &mode);
            assert_eq!(a.unwrap(), b.unwrap());
        }
    }

    #[test]
    fn composition_formula_arithmetic() {
        let r = compose(0.6, 0.4, 0.5);
        assert!((r - 0.714_285_714_285_714_3).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(LayerStack::coated(gold(), 0.0, nickel()).is_err());
        let half = LayerStack::HalfSpace(gold());
        assert!(zero_frequency_reflection(
            &half,
            Polarization::TE,
            Prescription::Drude,
            0.0,
            MuToggle::Full
        )
        .is_err());
    }

    #[test]
    fn zero_frequency_te_vacuum_to_nickel() {
        let ni = LayerStack::HalfSpace(nickel());
        for k in [0.01, 1.0, 40.0] {
            let r = zero_frequency_reflection(&ni, Polarization::TE, Prescription::Drude, k, MuToggle::Full)
                .unwrap();
            assert!((r - 109.0 / 111.0).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_frequency_te_vanishes_for_nonmagnetic_drude() {
        let au = LayerStack::HalfSpace(gold());
        let coated = LayerStack::coated(gold(), 0.08, preset("Si").unwrap()).unwrap();
        let ni_unity = LayerStack::coated(preset("Pt").unwrap(), 0.02, nickel()).unwrap();
        for k in [0.1, 2.5, 30.0] {
            for s in [&au, &coated] {
                let r = zero_frequency_reflection(s, Polarization::TE, Prescription::Drude, k, MuToggle::Full)
                    .unwrap();
                assert_eq!(r, 0.0);
            }
            let r = zero_frequency_reflection(&ni_unity, Polarization::TE, Prescription::Drude, k, MuToggle::Unity)
                .unwrap();
            assert_eq!(r, 0.0);
        }
    }

    #[test]
    fn zero_frequency_gold_on_nickel_composition() {
        let stack = LayerStack::coated(gold(), 0.08, nickel()).unwrap();
        let r = zero_frequency_reflection(&stack, Polarization::TE, Prescription::Drude, 2.5, MuToggle::Full)
            .unwrap();
        assert!((r - 0.658_242_207_368_330_5).abs() < 1e-12);
    }

    #[test]
    fn zero_frequency_tm_table() {
        for name in PRESET_NAMES {
            let m = preset(name).unwrap();
            let stack = LayerStack::HalfSpace(m.clone());
            for p in Prescription::ALL {
                let r = zero_frequency_reflection(&stack, Polarization::TM, p, 1.0, MuToggle::Full)
                    .unwrap();
                if m.is_conductor() {
                    assert_eq!(r, 1.0, "{name}");
                } else {
                    assert!((r - 10.67 / 12.67).abs() < 1e-15, "{name}");
                }
            }
        }
    }

    #[test]
    fn zero_frequency_plasma_te() {
        let au = LayerStack::HalfSpace(gold());
        let k = 1.5;
        let r = zero_frequency_reflection(&au, Polarization::TE, Prescription::Plasma, k, MuToggle::Full)
            .unwrap();
        let kp = ((8.9 / HBAR_C).powi(2) + k * k).sqrt();
        assert!((r - (k - kp) / (k + kp)).abs() < 1e-15);
        assert!(r < 0.0);
    }

    #[test]
    fn zero_width_composite_is_substrate_fresnel() {
        // algebraic identity of the two-interface formula at w = 0
        let mode = ImaginaryMode::new(2, 0.32, 1.3);
        let d = resolved(&preset("Si_c").unwrap(), Prescription::Drude, MuToggle::Full);
        let b = resolved(&nickel(), Prescription::Plasma, MuToggle::Full);
        let vac = ResolvedMaterial::vacuum();
        for pol in Polarization::ALL {
            let r0d = fresnel(&vac, &d, pol, &mode).unwrap();
            let rdb = fresnel(&d, &b, pol, &mode).unwrap();
            let r0b = fresnel(&vac, &b, pol, &mode).unwrap();
            assert!((compose(r0d, rdb, 1.0) - r0b).abs() < 1e-12);
        }
    }

    proptest::proptest! {
        #[test]
        fn coefficients_bounded(
            ea in 1.0f64..1e6, eb in 1.0f64..1e6, mua in 1.0f64..200.0, mub in 1.0f64..200.0,
            xi in 1e-3f64..50.0, k in 1e-3f64..100.0, w in 1e-3f64..1.0,
        ) {
            let a = MediumResponse { eps: ea, mu: mua };
            let b = MediumResponse { eps: eb, mu: mub };
            let s = StackResponse::Coated { overlayer: a, thickness: w, substrate: b };
            let h = StackResponse::HalfSpace(b);
            for pol in Polarization::ALL {
                let r = s.reflection(pol, xi, k);
                proptest::prop_assert!(r.abs() <= 1.0);
                proptest::prop_assert!(h.reflection(pol, xi, k).abs() < 1.0);
            }
        }

        #[test]
        fn coated_monotone_in_attenuation(
            r0d in -0.99f64..0.99, rdb in -0.99f64..0.99, e1 in 0.0f64..1.0, e2 in 0.0f64..1.0,
        ) {
            let (lo, hi) = if e1 < e2 { (e1, e2) } else { (e2, e1) };
            let a = compose(r0d, rdb, lo);
            let b = compose(r0d, rdb, hi);
            // moves from r0d towards the w = 0 composite monotonically
            let end = compose(r0d, rdb, 1.0);
            if end >= r0d {
                proptest::prop_assert!(r0d <= a + 1e-15 && a <= b + 1e-15 && b <= end + 1e-15);
            } else {
                proptest::prop_assert!(r0d >= a - 1e-15 && a >= b - 1e-15 && b >= end - 1e-15);
            }
        }
    }
}
