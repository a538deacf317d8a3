//! ε(iξ) models.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, RwLock};

use super::optical::OpticalDataTable;
use super::Prescription;
use crate::error::{Error, Result};
use crate::quadrature;

/// Drude parameters as energies: plasma ħω_p and relaxation ħγ, in eV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeParameters {
    pub plasma: f64,
    pub relaxation: f64,
}

impl DrudeParameters {
    pub const fn new(plasma: f64, relaxation: f64) -> Self {
        Self { plasma, relaxation }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.plasma > 0.0 && self.plasma.is_finite()) {
            return Err(Error::InvalidModel(format!(
                "plasma energy must be positive, got {}",
                self.plasma
            )));
        }
        if !(self.relaxation >= 0.0 && self.relaxation.is_finite()) {
            return Err(Error::InvalidModel(format!(
                "relaxation energy must be non-negative, got {}",
                self.relaxation
            )));
        }
        Ok(())
    }

    /// ω_p²/(ξ(ξ+γ)); with γ = 0 this is the plasma term ω_p²/ξ².
    pub fn imag_axis_term(&self, xi: f64) -> f64 {
        self.plasma * self.plasma / (xi * (xi + self.relaxation))
    }

    /// Im ε_Dr(ω) = ω_p² γ / (ω(ω² + γ²)) on the real axis.
    pub fn imaginary_part(&self, omega: f64) -> f64 {
        let g = self.relaxation;
        self.plasma * self.plasma * g / (omega * (omega * omega + g * g))
    }

    pub fn without_relaxation(&self) -> Self {
        Self::new(self.plasma, 0.0)
    }
}

/// Undamped single oscillator, 1 + (ε_static − 1)/(1 + ξ²/ω₀²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DielectricOscillator {
    pub static_eps: f64,
    pub resonance: f64,
}

impl DielectricOscillator {
    pub const fn new(static_eps: f64, resonance: f64) -> Self {
        Self {
            static_eps,
            resonance,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.static_eps > 1.0 && self.static_eps.is_finite()) {
            return Err(Error::InvalidModel(format!(
                "oscillator static permittivity must exceed 1, got {}",
                self.static_eps
            )));
        }
        if !(self.resonance > 0.0 && self.resonance.is_finite()) {
            return Err(Error::InvalidModel(format!(
                "oscillator resonance must be positive, got {}",
                self.resonance
            )));
        }
        Ok(())
    }

    pub fn eval(&self, xi: f64) -> f64 {
        let r = xi / self.resonance;
        1.0 + (self.static_eps - 1.0) / (1.0 + r * r)
    }
}

/// Behaviour of ε(iξ) as ξ → 0⁺: ε ≈ coefficient / ξ^order.
///
/// Order 0 means a finite static permittivity equal to `coefficient`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleDescriptor {
    pub order: u8,
    pub coefficient: f64,
}

impl PoleDescriptor {
    pub const fn new(order: u8, coefficient: f64) -> Self {
        Self { order, coefficient }
    }
}

/// Permittivity along the imaginary frequency axis.
#[derive(Debug, Clone, PartialEq)]
pub enum PermittivityModel {
    /// ε ≡ 1.
    Vacuum,
    AnalyticDrude(DrudeParameters),
    /// 1 + ω_p²/ξ², plasma energy in eV.
    AnalyticPlasma(f64),
    DielectricOscillator(DielectricOscillator),
    /// Non-conducting base plus a Drude conduction term ω²/(ξ(ξ+γ)).
    ConductiveSi {
        base: Box<PermittivityModel>,
        conduction: DrudeParameters,
    },
    Tabulated(Arc<TabulatedPermittivity>),
}

impl PermittivityModel {
    pub fn oscillator(static_eps: f64, resonance: f64) -> Self {
        PermittivityModel::DielectricOscillator(DielectricOscillator::new(static_eps, resonance))
    }

    pub fn tabulated(
        table: OpticalDataTable,
        drude: Option<DrudeParameters>,
        prescription: Prescription,
    ) -> Result<Self> {
        Ok(PermittivityModel::Tabulated(Arc::new(
            TabulatedPermittivity::new(table, drude, prescription)?,
        )))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            PermittivityModel::Vacuum => Ok(()),
            PermittivityModel::AnalyticDrude(d) => d.validate(),
            PermittivityModel::AnalyticPlasma(wp) => DrudeParameters::new(*wp, 0.0).validate(),
            PermittivityModel::DielectricOscillator(o) => o.validate(),
            PermittivityModel::ConductiveSi { base, conduction } => {
                base.validate()?;
                if base.zero_frequency_behavior().order != 0 {
                    return Err(Error::InvalidModel(
                        "conductive-Si base must be a non-conducting model".into(),
                    ));
                }
                conduction.validate()
            }
            PermittivityModel::Tabulated(t) => t.validate(),
        }
    }

    /// The model with the given low-frequency prescription applied.
    ///
    /// Drude-type conduction terms lose their relaxation under the plasma
    /// prescription; dielectric models are unchanged.
    pub fn under(&self, prescription: Prescription) -> PermittivityModel {
        match (self, prescription) {
            (PermittivityModel::AnalyticDrude(d), Prescription::Plasma) => {
                PermittivityModel::AnalyticPlasma(d.plasma)
            }
            (PermittivityModel::ConductiveSi { base, conduction }, Prescription::Plasma) => {
                PermittivityModel::ConductiveSi {
                    base: Box::new(base.under(prescription)),
                    conduction: conduction.without_relaxation(),
                }
            }
            (PermittivityModel::Tabulated(t), p) if t.drude.is_some() && t.prescription != p => {
                PermittivityModel::Tabulated(Arc::new(t.with_prescription(p)))
            }
            _ => self.clone(),
        }
    }

    /// ε(iξ) for ξ > 0.
    pub fn eps_imag_axis(&self, xi: f64) -> Result<f64> {
        if !(xi > 0.0 && xi.is_finite()) {
            return Err(Error::domain(format!(
                "permittivity needs xi > 0 (got {xi}); use zero_frequency_behavior at xi = 0"
            )));
        }
        Ok(match self {
            PermittivityModel::Vacuum => 1.0,
            PermittivityModel::AnalyticDrude(d) => 1.0 + d.imag_axis_term(xi),
            PermittivityModel::AnalyticPlasma(wp) => 1.0 + wp * wp / (xi * xi),
            PermittivityModel::DielectricOscillator(o) => o.eval(xi),
            PermittivityModel::ConductiveSi { base, conduction } => {
                base.eps_imag_axis(xi)? + conduction.imag_axis_term(xi)
            }
            PermittivityModel::Tabulated(t) => t.eval(xi)?,
        })
    }

    pub fn zero_frequency_behavior(&self) -> PoleDescriptor {
        match self {
            PermittivityModel::Vacuum => PoleDescriptor::new(0, 1.0),
            PermittivityModel::AnalyticDrude(d) => drude_pole(d),
            PermittivityModel::AnalyticPlasma(wp) => PoleDescriptor::new(2, wp * wp),
            PermittivityModel::DielectricOscillator(o) => PoleDescriptor::new(0, o.static_eps),
            PermittivityModel::ConductiveSi { base, conduction } => {
                if conduction.plasma > 0.0 {
                    drude_pole(conduction)
                } else {
                    base.zero_frequency_behavior()
                }
            }
            PermittivityModel::Tabulated(t) => t.zero_frequency_behavior(),
        }
    }
}

fn drude_pole(d: &DrudeParameters) -> PoleDescriptor {
    let wp2 = d.plasma * d.plasma;
    if d.relaxation > 0.0 {
        PoleDescriptor::new(1, wp2 / d.relaxation)
    } else {
        PoleDescriptor::new(2, wp2)
    }
}

/// Relative tolerance for the sub-ω_min Drude segment.
const LOW_SEGMENT_REL_TOL: f64 = 1e-8;
const LOW_SEGMENT_MAX_INTERVALS: usize = 200;

/// Optical data continued to the imaginary axis by a Kramers-Kronig integral.
///
/// With `drude` set, ε″ below ω_min is the Drude extrapolation (Drude
/// prescription) or the plasma term plus the data-minus-Drude correction
/// (plasma prescription). Without it the table is treated as an insulator
/// with ε″ = 0 below ω_min.
#[derive(Debug)]
pub struct TabulatedPermittivity {
    pub table: OpticalDataTable,
    pub drude: Option<DrudeParameters>,
    pub prescription: Prescription,
    cache: RwLock<HashMap<u64, f64>>,
}

impl PartialEq for TabulatedPermittivity {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
            && self.drude == other.drude
            && self.prescription == other.prescription
    }
}

impl TabulatedPermittivity {
    pub fn new(
        table: OpticalDataTable,
        drude: Option<DrudeParameters>,
        prescription: Prescription,
    ) -> Result<Self> {
        let t = Self {
            table,
            drude,
            prescription,
            cache: RwLock::new(HashMap::new()),
        };
        t.validate()?;
        Ok(t)
    }

    fn with_prescription(&self, prescription: Prescription) -> Self {
        Self {
            table: self.table.clone(),
            drude: self.drude,
            prescription,
            cache: RwLock::new(HashMap::new()),
        }
    }

    fn validate(&self) -> Result<()> {
        if let Some(d) = &self.drude {
            d.validate()?;
            if d.relaxation <= 0.0 {
                return Err(Error::InvalidModel(
                    "Drude extrapolation of optical data needs a positive relaxation".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn zero_frequency_behavior(&self) -> PoleDescriptor {
        match (self.drude, self.prescription) {
            (Some(d), Prescription::Drude) => drude_pole(&d),
            (Some(d), Prescription::Plasma) => PoleDescriptor::new(2, d.plasma * d.plasma),
            (None, _) => PoleDescriptor::new(0, 1.0 + 2.0 / PI * self.data_integral(0.0)),
        }
    }

    fn eval(&self, xi: f64) -> Result<f64> {
        let key = xi.to_bits();
        if let Some(v) = self.cache.read().ok().and_then(|c| c.get(&key).copied()) {
            return Ok(v);
        }
        let v = self.compute(xi)?;
        if let Ok(mut c) = self.cache.write() {
            c.insert(key, v);
        }
        Ok(v)
    }

    fn compute(&self, xi: f64) -> Result<f64> {
        let data = self.data_integral(xi);
        let Some(d) = self.drude else {
            return Ok(1.0 + 2.0 / PI * data);
        };
        let low = drude_low_segment(&d, self.table.omega_min(), xi)?;
        Ok(match self.prescription {
            Prescription::Drude => 1.0 + 2.0 / PI * (low + data),
            // ∫_{ω_min}^∞ of the Drude ε″ is the full analytic value minus
            // the low segment.
            Prescription::Plasma => {
                let wp2 = d.plasma * d.plasma;
                1.0 + wp2 / (xi * xi) + 2.0 / PI * (data + low) - d.imag_axis_term(xi)
            }
        })
    }

    /// ∫_{ω_min}^∞ ω ε″(ω)/(ω²+ξ²) dω: log-grid trapezoid over the table plus a
    /// C·ω⁻³ tail matched at ω_max.
    fn data_integral(&self, xi: f64) -> f64 {
        let xi2 = xi * xi;
        let rows = self.table.rows();
        // With u = ln ω the integrand becomes ω² ε″/(ω² + ξ²).
        let g = |(w, e): (f64, f64)| w * w * e / (w * w + xi2);
        let mut sum = 0.0;
        for pair in rows.windows(2) {
            let du = (pair[1].0 / pair[0].0).ln();
            sum += 0.5 * du * (g(pair[0]) + g(pair[1]));
        }
        let (w_max, e_max) = *rows.last().expect("table has at least two rows");
        sum + e_max * w_max.powi(3) * inverse_cubic_tail(w_max, xi)
    }
}

/// ∫_0^{ω_min} ω ε″_Dr(ω)/(ω²+ξ²) dω by adaptive quadrature.
pub(crate) fn drude_low_segment(d: &DrudeParameters, omega_min: f64, xi: f64) -> Result<f64> {
    let wp2 = d.plasma * d.plasma;
    let g = d.relaxation;
    let xi2 = xi * xi;
    // ω ε″_Dr(ω) = ω_p² γ/(ω² + γ²)
    let f = |w: f64| wp2 * g / ((w * w + g * g) * (w * w + xi2));
    let mut breaks = vec![0.0];
    for scale in [g, xi] {
        if scale > 0.0 && scale < omega_min {
            breaks.push(scale);
        }
    }
    breaks.push(omega_min);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    Ok(quadrature::integrate_with_breaks(
        f,
        &breaks,
        LOW_SEGMENT_REL_TOL,
        LOW_SEGMENT_MAX_INTERVALS,
    )?
    .value)
}

/// ∫_W^∞ dω / (ω² (ω² + ξ²)).
fn inverse_cubic_tail(w: f64, xi: f64) -> f64 {
    let y = xi / w;
    let g = if y < 0.05 {
        let y2 = y * y;
        1.0 / 3.0 - y2 * (1.0 / 5.0 - y2 * (1.0 / 7.0 - y2 * (1.0 / 9.0 - y2 / 11.0)))
    } else {
        (1.0 - y.atan() / y) / (y * y)
    };
    g / (w * w * w)
}
