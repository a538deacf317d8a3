//! Built-in validation suite: invariants, acceptance criteria and the frozen
//! baselines, each reported as one `id status measured bound` line.

use std::fmt;

use rayon::prelude::*;

use casimir_core::layers::{self, ImaginaryMode};
use casimir_core::lifshitz::{free_energy, ideal_free_energy, reduction_factor, IdealMirror};
use casimir_core::materials::{self, PermittivityModel, SyntheticSpectrum};
use casimir_core::setups::{delta_force, setup_preset, IsoelectronicSetup, PRESET_NAMES};
use casimir_core::units::{ideal_energy, ThermalState, K_B};
use casimir_core::{LayerStack, MuToggle, Polarization, Prescription, QuadratureSettings, Result};

use crate::baselines;

const ZETA3: f64 = 1.202_056_903_159_594_3;

#[derive(Debug, Clone, PartialEq)]
pub enum Bound {
    AtMost(f64),
    AtLeast(f64),
    Within(f64, f64),
    Positive,
    Negative,
    Zero,
}

impl Bound {
    fn holds(&self, x: f64) -> bool {
        match *self {
            Bound::AtMost(b) => x <= b,
            Bound::AtLeast(b) => x >= b,
            Bound::Within(lo, hi) => (lo..=hi).contains(&x),
            Bound::Positive => x > 0.0,
            Bound::Negative => x < 0.0,
            Bound::Zero => x == 0.0,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::AtMost(b) => write!(f, "<={b:e}"),
            Bound::AtLeast(b) => write!(f, ">={b:e}"),
            Bound::Within(lo, hi) => write!(f, "[{lo:e},{hi:e}]"),
            Bound::Positive => write!(f, ">0"),
            Bound::Negative => write!(f, "<0"),
            Bound::Zero => write!(f, "==0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Measure {
    pub measured: f64,
    pub bound: Bound,
}

impl Measure {
    pub fn new(measured: f64, bound: Bound) -> Self {
        Self { measured, bound }
    }

    pub fn at_most(measured: f64, bound: f64) -> Self {
        Self::new(measured, Bound::AtMost(bound))
    }

    pub fn passed(&self) -> bool {
        self.measured.is_finite() && self.bound.holds(self.measured)
    }
}

type CheckFn = Box<dyn Fn(&QuadratureSettings) -> Result<Measure> + Send + Sync>;

pub struct Check {
    pub id: String,
    /// Acceptance criterion this check belongs to, if any.
    pub criterion: Option<u8>,
    run: CheckFn,
}

impl Check {
    pub fn new(
        id: impl Into<String>,
        criterion: Option<u8>,
        run: impl Fn(&QuadratureSettings) -> Result<Measure> + Send + Sync + 'static,
    ) -> Self {
        Self {
            id: id.into(),
            criterion,
            run: Box::new(run),
        }
    }

    pub fn run(&self, settings: &QuadratureSettings) -> CheckResult {
        let outcome = (self.run)(settings);
        let (passed, measured, bound, error) = match outcome {
            Ok(m) => (m.passed(), m.measured, m.bound.to_string(), None),
            Err(e) => (false, f64::NAN, "-".to_string(), Some(e.to_string())),
        };
        CheckResult {
            id: self.id.clone(),
            criterion: self.criterion,
            passed,
            measured,
            bound,
            error,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub id: String,
    pub criterion: Option<u8>,
    pub passed: bool,
    pub measured: f64,
    pub bound: String,
    pub error: Option<String>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {:.6e} {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.measured,
            self.bound
        )?;
        if let Some(e) = &self.error {
            write!(f, " error=\"{}\"", e.replace('"', "'"))?;
        }
        Ok(())
    }
}

/// Runs every check concurrently; results come back in registry order.
pub fn run_all(checks: &[Check], settings: &QuadratureSettings) -> Vec<CheckResult> {
    checks.par_iter().map(|c| c.run(settings)).collect()
}

fn rel(value: f64, reference: f64) -> f64 {
    ((value - reference) / reference).abs()
}

fn au() -> LayerStack {
    LayerStack::HalfSpace(materials::gold())
}

fn fe(p: Prescription, a: f64, s: &QuadratureSettings) -> Result<casimir_core::FreeEnergyResult> {
    free_energy(&au(), &au(), a, 300.0, p, MuToggle::Full, s)
}

fn delta(name: &str, a: f64, p: Prescription, mu: MuToggle, s: &QuadratureSettings) -> Result<f64> {
    delta_force(&setup_preset(name)?.with_model(p, mu), a, s)
}

/// ΔF at w, 2w, 4w; returns the largest of |ΔF(2w)|/|ΔF(w)| and
/// |ΔF(4w)|/|ΔF(2w)|.
fn screening_ratio(setup: &IsoelectronicSetup, a: f64, w: f64, s: &QuadratureSettings) -> Result<f64> {
    let mut mags = Vec::new();
    for k in [1.0, 2.0, 4.0] {
        let mut st = setup.clone();
        st.thickness = k * w;
        mags.push(delta_force(&st, a, s)?.abs());
    }
    Ok((mags[1] / mags[0]).max(mags[2] / mags[1]))
}

/// The full registry in report order.
pub fn registry() -> Vec<Check> {
    let mut c = Vec::new();

    // Criterion 1 and 2: ideal-mirror oracles.
    c.push(Check::new("ideal_mirror_t0", Some(1), |s| {
        let f = ideal_free_energy(IdealMirror::Both, 0.1, 10.0, s)?;
        Ok(Measure::at_most(rel(f.total, ideal_energy(0.1)?), 5e-3))
    }));
    c.push(Check::new("classical_limit", Some(2), |s| {
        let f = ideal_free_energy(IdealMirror::Both, 20.0, 300.0, s)?;
        let oracle = -ZETA3 * K_B * 300.0 / (8.0 * std::f64::consts::PI * 400.0);
        Ok(Measure::at_most(rel(f.total, oracle), 5e-3))
    }));
    c.push(Check::new("classical_limit_tm_only", Some(2), |s| {
        let f = ideal_free_energy(IdealMirror::TmOnly, 20.0, 300.0, s)?;
        let oracle = -ZETA3 * K_B * 300.0 / (16.0 * std::f64::consts::PI * 400.0);
        Ok(Measure::at_most(rel(f.total, oracle), 5e-3))
    }));

    // Criterion 3: Kramers-Kronig round trip on a synthetic Drude-Au table.
    c.push(Check::new("kk_round_trip", Some(3), |_| {
        let table = SyntheticSpectrum::drude(materials::AU_DRUDE).table(0.01, 100.0, 500)?;
        let model = PermittivityModel::tabulated(table, Some(materials::AU_DRUDE), Prescription::Drude)?;
        let analytic = PermittivityModel::AnalyticDrude(materials::AU_DRUDE);
        let xi1 = ThermalState::new(300.0)?.xi1;
        let mut worst: f64 = 0.0;
        for i in 0..40 {
            let xi = xi1 * (10.0 / xi1).powf(i as f64 / 39.0);
            worst = worst.max(rel(model.eps_imag_axis(xi)?, analytic.eps_imag_axis(xi)?));
        }
        Ok(Measure::at_most(worst, 5e-3))
    }));

    // Criterion 4: Au-Au TE0 attribution and ordering.
    c.push(Check::new("eta_plasma_without_te0_matches_drude", Some(4), |s| {
        let mut worst: f64 = 0.0;
        for a in [1.0, 2.0, 3.0, 5.0] {
            let d = fe(Prescription::Drude, a, s)?;
            let p = fe(Prescription::Plasma, a, s)?;
            worst = worst.max(rel(p.without_te0(), d.total));
        }
        Ok(Measure::at_most(worst, 0.05))
    }));
    c.push(Check::new("eta_plasma_above_drude", Some(4), |s| {
        let mut least = f64::INFINITY;
        for a in [1.0, 2.0, 3.0, 5.0] {
            let e = ideal_energy(a)?;
            let d = fe(Prescription::Drude, a, s)?.total / e;
            let p = fe(Prescription::Plasma, a, s)?.total / e;
            least = least.min(p - d);
        }
        Ok(Measure::new(least, Bound::Positive))
    }));

    // Criterion 5: fig3 plasma/Drude ratios.
    for (a, lo, hi) in [(3.0, 8.0, 20.0), (4.0, 25.0, 100.0)] {
        c.push(Check::new(format!("fig3_ratio_a{a}"), Some(5), move |s| {
            let d = delta("fig3", a, Prescription::Drude, MuToggle::Unity, s)?;
            let p = delta("fig3", a, Prescription::Plasma, MuToggle::Unity, s)?;
            Ok(Measure::new(p / d, Bound::Within(lo, hi)))
        }));
    }

    // Criterion 6: magnetic amplification.
    c.push(Check::new("fig4_5_amplification_a0.3", Some(6), |s| {
        let d = delta("fig4_5", 0.3, Prescription::Drude, MuToggle::Full, s)?;
        let p = delta("fig4_5", 0.3, Prescription::Plasma, MuToggle::Full, s)?;
        Ok(Measure::new((d / p).abs(), Bound::AtLeast(300.0)))
    }));

    // Criterion 7: fig6bis sign structure.
    for a in [0.2, 0.25, 0.3] {
        for (p, mu, bound) in [
            (Prescription::Plasma, MuToggle::Full, Bound::Positive),
            (Prescription::Drude, MuToggle::Unity, Bound::Negative),
            (Prescription::Plasma, MuToggle::Unity, Bound::Negative),
        ] {
            let id = format!("fig6bis_sign_a{a}_{}_{}", p.as_str(), mu.as_str());
            c.push(Check::new(id, Some(7), move |s| {
                Ok(Measure::new(delta("fig6bis", a, p, mu, s)?, bound.clone()))
            }));
        }
    }

    // Criterion 8: structural invariants.
    c.push(Check::new("delta_antisymmetry", Some(8), |s| {
        let mut worst: f64 = 0.0;
        for name in PRESET_NAMES {
            let setup = setup_preset(name)?.with_model(Prescription::Plasma, MuToggle::Full);
            let d = delta_force(&setup, 0.5, s)?;
            let e = delta_force(&setup.swapped(), 0.5, s)?;
            worst = worst.max((d + e).abs());
        }
        Ok(Measure::new(worst, Bound::Zero))
    }));
    c.push(Check::new("delta_identical_regions", Some(8), |s| {
        let mut worst: f64 = 0.0;
        for name in PRESET_NAMES {
            let mut setup = setup_preset(name)?;
            setup.substrate_b = setup.substrate_c.clone();
            for p in Prescription::ALL {
                for mu in MuToggle::ALL {
                    worst = worst.max(delta_force(&setup.with_model(p, mu), 0.5, s)?.abs());
                }
            }
        }
        Ok(Measure::new(worst, Bound::Zero))
    }));
    for (name, a, w) in [("fig4_5", 0.3, 0.7), ("fig6", 0.5, 1.2), ("fig7", 0.5, 1.2)] {
        c.push(Check::new(format!("overlayer_screening_{name}"), Some(8), move |s| {
            let setup = setup_preset(name)?.with_model(Prescription::Drude, MuToggle::Full);
            Ok(Measure::new(screening_ratio(&setup, a, w, s)?, Bound::Within(0.0, 1.0 - 1e-9)))
        }));
    }
    c.push(Check::new("convergence_halving", Some(8), |s| {
        let mut worst: f64 = 0.0;
        let half = QuadratureSettings {
            rel_tol: 0.5 * s.rel_tol,
            ..*s
        };
        for p in Prescription::ALL {
            for a in [0.3, 1.0, 3.0] {
                let f = fe(p, a, s)?;
                let g = fe(p, a, &half)?;
                worst = worst.max((g.total - f.total).abs() / f.error_estimate);
            }
        }
        Ok(Measure::new(worst, Bound::Within(0.0, 1.0)))
    }));

    // Criterion 9: static limit against the finite-frequency stack.
    c.push(Check::new("zero_frequency_limit", Some(9), |_| {
        let xi = 1e-8;
        let mut worst: f64 = 0.0;
        for name in PRESET_NAMES {
            let setup = setup_preset(name)?;
            for stack in [setup.sphere_stack(), setup.plate_b(), setup.plate_c()] {
                for p in Prescription::ALL {
                    let resolved = stack.resolve(p, MuToggle::Unity);
                    for pol in Polarization::ALL {
                        for k in [2.0, 5.0, 10.0, 20.0] {
                            let r0 = layers::zero_frequency_reflection(&stack, pol, p, k, MuToggle::Unity)?;
                            let r = layers::stack_reflection(&resolved, pol, &ImaginaryMode::new(0, xi, k))?;
                            worst = worst.max((r - r0).abs());
                        }
                    }
                }
            }
        }
        Ok(Measure::at_most(worst, 1e-4))
    }));

    // Lifshitz invariants outside the numbered criteria.
    c.push(Check::new("free_energy_monotone_in_a", None, |s| {
        let mut worst = f64::NEG_INFINITY;
        let mut prev: Option<f64> = None;
        for i in 0..12 {
            let a = 0.2 * 30f64.powf(i as f64 / 11.0);
            let f = fe(Prescription::Drude, a, s)?.total.abs();
            if let Some(q) = prev {
                worst = worst.max(f / q);
            }
            prev = Some(f);
        }
        Ok(Measure::new(worst, Bound::Within(0.0, 1.0 - 1e-12)))
    }));
    c.push(Check::new("prescription_gap_grows", None, |s| {
        let mut least = f64::INFINITY;
        let mut prev = 1.0;
        for a in [0.5, 1.0, 2.0, 4.0] {
            let r = fe(Prescription::Plasma, a, s)?.total / fe(Prescription::Drude, a, s)?.total;
            least = least.min(r - prev);
            prev = r;
        }
        Ok(Measure::new(least, Bound::Positive))
    }));
    c.push(Check::new("matsubara_tail", None, |s| {
        let mut worst: f64 = 0.0;
        for p in Prescription::ALL {
            for a in [0.3, 1.0] {
                let f = fe(p, a, s)?;
                let keep = f.l_used - f.l_used / 10;
                let dropped: f64 = f.per_l[keep..].iter().sum();
                worst = worst.max((dropped / f.total).abs() / s.rel_tol);
            }
        }
        Ok(Measure::at_most(worst, 10.0))
    }));
    c.push(Check::new("gap_is_te0", None, |s| {
        let mut worst: f64 = 0.0;
        for a in [2.0, 3.0, 5.0] {
            let d = fe(Prescription::Drude, a, s)?;
            let p = fe(Prescription::Plasma, a, s)?;
            worst = worst.max(rel(p.te0 - d.te0, p.total - d.total));
        }
        Ok(Measure::at_most(worst, 0.05))
    }));
    c.push(Check::new("eta_ratio_a3", None, |s| {
        let d = reduction_factor(&au(), &au(), 3.0, 300.0, Prescription::Drude, MuToggle::Full, s)?;
        let p = reduction_factor(&au(), &au(), 3.0, 300.0, Prescription::Plasma, MuToggle::Full, s)?;
        Ok(Measure::new(p / d, Bound::Within(1.5, 2.5)))
    }));
    c.push(Check::new("te0_drude_nonmagnetic_zero", None, |s| {
        Ok(Measure::new(fe(Prescription::Drude, 1.0, s)?.te0, Bound::Zero))
    }));
    c.push(Check::new("fig7_model_separation", None, |s| {
        let mut best: f64 = 0.0;
        for a in [1.0, 1.5, 2.0, 2.5, 3.0] {
            let d = delta("fig7", a, Prescription::Drude, MuToggle::Unity, s)?;
            let p = delta("fig7", a, Prescription::Plasma, MuToggle::Unity, s)?;
            best = best.max((p / d).abs().max((d / p).abs()));
        }
        Ok(Measure::new(best, Bound::AtLeast(2.0)))
    }));

    // Criterion 10: the frozen baselines.
    c.extend(baselines::checks());
    c
}
