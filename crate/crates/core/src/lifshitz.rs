//! Matsubara-sum free energy per unit area between two vacuum-facing bodies.
//!
//! With t = 2 a q_l (so that k⊥ dk⊥ = t dt / 4a²) each Matsubara term becomes
//!
//! ```text
//! F_l = (k_B T / 8π a²) (1 − δ_l0/2) ∫_{t_l}^{∞} t Σ_α ln(1 − e^{−t} R¹_α R²_α) dt
//! ```
//!
//! with t_l = 2 a ξ_l/ħc. The k⊥ integral is cut at t_l + window, where the
//! integrand has fallen by e^{−window}. The l = 0 term uses the exact
//! zero-frequency coefficients.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::layers::{LayerStack, ResolvedStack, StackResponse, StaticStack};
use crate::materials::{MuToggle, Prescription};
use crate::quadrature;
use crate::units::{ideal_energy, ThermalState, HBAR_C, K_B};

/// Numerical controls for the k⊥ quadrature and the Matsubara truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    /// Relative tolerance of every Matsubara term and of the truncated tail.
    pub rel_tol: f64,
    /// Hard cap on the number of Matsubara terms.
    pub l_max_cap: usize,
    /// Subinterval budget of the adaptive k⊥ rule, per term.
    pub max_intervals: usize,
    /// Width of the t-window [t_l, t_l + window].
    pub window: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            l_max_cap: 100_000,
            max_intervals: 500,
            window: 60.0,
        }
    }
}

impl QuadratureSettings {
    pub fn with_rel_tol(rel_tol: f64) -> Result<Self> {
        let s = Self {
            rel_tol,
            ..Self::default()
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1e-3) {
            return Err(Error::domain(format!(
                "rel_tol must lie in (0, 1e-3), got {}",
                self.rel_tol
            )));
        }
        if self.l_max_cap < 10 {
            return Err(Error::domain(format!(
                "l_max_cap must be at least 10, got {}",
                self.l_max_cap
            )));
        }
        if self.max_intervals < 4 {
            return Err(Error::domain("max_intervals must be at least 4"));
        }
        if !(self.window >= 20.0 && self.window.is_finite()) {
            return Err(Error::domain(format!(
                "window must be at least 20, got {}",
                self.window
            )));
        }
        Ok(())
    }
}

/// Free energy per unit area with its Matsubara breakdown.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeEnergyResult {
    /// eV·μm⁻².
    pub total: f64,
    /// Contribution of each summed Matsubara index, weights included.
    pub per_l: Vec<f64>,
    pub te0: f64,
    pub tm0: f64,
    /// Number of Matsubara terms summed (indices 0..l_used).
    pub l_used: usize,
    /// Quadrature error estimates plus the estimated truncated tail.
    pub error_estimate: f64,
}

impl FreeEnergyResult {
    /// Total with the TE l = 0 term removed.
    pub fn without_te0(&self) -> f64 {
        self.total - self.te0
    }
}

/// Which polarizations a perfect mirror reflects with R ≡ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealMirror {
    Both,
    TmOnly,
}

#[allow(clippy::large_enum_variant)]
enum Pair {
    Stacks(ResolvedStack, ResolvedStack),
    Ideal(IdealMirror),
}

/// Reflection products R¹R² for one Matsubara term, as a function of k⊥.
enum PairAt {
    Dynamic {
        first: StackResponse,
        second: StackResponse,
        xi: f64,
    },
    Static(StaticStack, StaticStack),
    Ideal([f64; 2]),
}

impl PairAt {
    #[inline]
    fn products(&self, k_perp: f64) -> [f64; 2] {
        match self {
            PairAt::Dynamic { first, second, xi } => {
                let a = first.reflections(*xi, k_perp);
                let b = second.reflections(*xi, k_perp);
                [a[0] * b[0], a[1] * b[1]]
            }
            PairAt::Static(first, second) => {
                let a = first.reflections(k_perp);
                let b = second.reflections(k_perp);
                [a[0] * b[0], a[1] * b[1]]
            }
            PairAt::Ideal(p) => *p,
        }
    }
}

impl Pair {
    fn at(&self, l: usize, xi: f64) -> Result<PairAt> {
        Ok(match self {
            Pair::Ideal(mode) => PairAt::Ideal(match mode {
                IdealMirror::Both => [1.0, 1.0],
                IdealMirror::TmOnly => [0.0, 1.0],
            }),
            Pair::Stacks(s1, s2) if l == 0 => PairAt::Static(s1.static_limit(), s2.static_limit()),
            Pair::Stacks(s1, s2) => PairAt::Dynamic {
                first: s1.at_frequency(xi)?,
                second: s2.at_frequency(xi)?,
                xi,
            },
        })
    }
}

/// ln(1 − e^{−t} p), accurate both for small arguments and for p e^{−t} → 1.
#[inline]
fn log_one_minus(t: f64, p: f64) -> f64 {
    let x = (-t).exp() * p;
    if x < 0.5 {
        (-x).ln_1p()
    } else {
        ((1.0 - p) - p * (-t).exp_m1()).ln()
    }
}

struct Term {
    /// Unweighted t-integrals per polarization (TE, TM); for l ≥ 1 only the
    /// sum is meaningful and is stored in `[0]` with `[1] = 0`.
    parts: [f64; 2],
    error: f64,
}

struct Geometry {
    a: f64,
    t1: f64,
    window: f64,
}

impl Geometry {
    /// k⊥ at a point t of term l, written to avoid cancellation near t_l.
    #[inline]
    fn k_perp(&self, t: f64, tl: f64) -> f64 {
        ((t - tl) * (t + tl)).max(0.0).sqrt() / (2.0 * self.a)
    }

    fn breakpoints(&self, tl: f64) -> Vec<f64> {
        let mut b = vec![tl];
        for off in [0.5, 2.0, 6.0, 15.0, 30.0] {
            if off < self.window {
                b.push(tl + off);
            }
        }
        b.push(tl + self.window);
        b
    }
}

fn evaluate_term(
    pair: &Pair,
    geom: &Geometry,
    thermal: &ThermalState,
    l: usize,
    settings: &QuadratureSettings,
) -> Result<Term> {
    let xi = thermal.xi(l);
    let at = pair.at(l, xi)?;
    let tl = l as f64 * geom.t1;
    let breaks = geom.breakpoints(tl);

    let integrate = |pol: Option<usize>| {
        quadrature::integrate_with_breaks(
            |t| {
                let p = at.products(geom.k_perp(t, tl));
                let s = match pol {
                    Some(i) => log_one_minus(t, p[i]),
                    None => log_one_minus(t, p[0]) + log_one_minus(t, p[1]),
                };
                t * s
            },
            &breaks,
            settings.rel_tol,
            settings.max_intervals,
        )
    };

    if l == 0 {
        let te = integrate(Some(0))?;
        let tm = integrate(Some(1))?;
        Ok(Term {
            parts: [te.value, tm.value],
            error: te.error + tm.error,
        })
    } else {
        let both = integrate(None)?;
        Ok(Term {
            parts: [both.value, 0.0],
            error: both.error,
        })
    }
}

fn validate_inputs(a: f64, temperature: f64, settings: &QuadratureSettings) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::domain(format!("separation must be positive, got {a}")));
    }
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(Error::domain(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    settings.validate()
}

fn matsubara_sum(
    pair: &Pair,
    a: f64,
    temperature: f64,
    settings: &QuadratureSettings,
) -> Result<FreeEnergyResult> {
    validate_inputs(a, temperature, settings)?;
    let thermal = ThermalState::new(temperature)?;
    let geom = Geometry {
        a,
        t1: 2.0 * a * thermal.xi1 / HBAR_C,
        window: settings.window,
    };
    let prefactor = K_B * temperature / (8.0 * PI * a * a);
    let ratio = (-geom.t1).exp();
    let tail_factor = ratio / (1.0 - ratio);

    // Terms are evaluated in parallel chunks but accumulated strictly in
    // increasing l, so the result does not depend on scheduling.
    let expected = ((-settings.rel_tol.ln()) / geom.t1).ceil() as usize + 2;
    let chunk = expected.clamp(8, 256);

    let mut per_l: Vec<f64> = Vec::new();
    let mut total = 0.0;
    let mut error = 0.0;
    let mut te0 = 0.0;
    let mut tm0 = 0.0;
    let mut start = 0usize;

    while start < settings.l_max_cap {
        let end = (start + chunk).min(settings.l_max_cap);
        let terms: Vec<Result<Term>> = (start..end)
            .into_par_iter()
            .map(|l| evaluate_term(pair, &geom, &thermal, l, settings))
            .collect();
        for (offset, term) in terms.into_iter().enumerate() {
            let l = start + offset;
            let term = term?;
            let value = if l == 0 {
                te0 = 0.5 * prefactor * term.parts[0];
                tm0 = 0.5 * prefactor * term.parts[1];
                te0 + tm0
            } else {
                prefactor * term.parts[0]
            };
            if !value.is_finite() {
                return Err(Error::Numeric(format!("Matsubara term {l} is {value}")));
            }
            let weight = if l == 0 { 0.5 } else { 1.0 };
            per_l.push(value);
            total += value;
            error += weight * prefactor * term.error;
            if l >= 1 {
                let tail = value.abs() * tail_factor;
                if tail <= settings.rel_tol * total.abs() {
                    return Ok(FreeEnergyResult {
                        total,
                        l_used: per_l.len(),
                        per_l,
                        te0,
                        tm0,
                        error_estimate: error + tail,
                    });
                }
            }
        }
        start = end;
    }

    let last = per_l.last().copied().unwrap_or(0.0);
    Err(Error::Convergence {
        terms: per_l.len(),
        tail: last.abs() * tail_factor,
        sum: total,
    })
}

/// Lifshitz free energy per unit area (eV·μm⁻²) between two stacks at
/// separation `a` (μm) and temperature `temperature` (K).
pub fn free_energy(
    stack1: &LayerStack,
    stack2: &LayerStack,
    a: f64,
    temperature: f64,
    prescription: Prescription,
    mu: MuToggle,
    settings: &QuadratureSettings,
) -> Result<FreeEnergyResult> {
    let pair = Pair::Stacks(
        stack1.resolve(prescription, mu),
        stack2.resolve(prescription, mu),
    );
    matsubara_sum(&pair, a, temperature, settings)
}

/// Free energy between perfect mirrors with R ≡ 1 in the chosen polarizations.
pub fn ideal_free_energy(
    mirror: IdealMirror,
    a: f64,
    temperature: f64,
    settings: &QuadratureSettings,
) -> Result<FreeEnergyResult> {
    matsubara_sum(&Pair::Ideal(mirror), a, temperature, settings)
}

/// η = F / E_id(a).
pub fn reduction_factor(
    stack1: &LayerStack,
    stack2: &LayerStack,
    a: f64,
    temperature: f64,
    prescription: Prescription,
    mu: MuToggle,
    settings: &QuadratureSettings,
) -> Result<f64> {
    let f = free_energy(stack1, stack2, a, temperature, prescription, mu, settings)?;
    Ok(f.total / ideal_energy(a)?)
}

/// The TE l = 0 contribution alone, eV·μm⁻².
pub fn te_zero_contribution(
    stack1: &LayerStack,
    stack2: &LayerStack,
    a: f64,
    temperature: f64,
    prescription: Prescription,
    mu: MuToggle,
    settings: &QuadratureSettings,
) -> Result<f64> {
    validate_inputs(a, temperature, settings)?;
    let pair = Pair::Stacks(
        stack1.resolve(prescription, mu),
        stack2.resolve(prescription, mu),
    );
    let thermal = ThermalState::new(temperature)?;
    let geom = Geometry {
        a,
        t1: 2.0 * a * thermal.xi1 / HBAR_C,
        window: settings.window,
    };
    let term = evaluate_term(&pair, &geom, &thermal, 0, settings)?;
    Ok(0.5 * K_B * temperature / (8.0 * PI * a * a) * term.parts[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::{gold, nickel};

    const ZETA3: f64 = 1.202_056_903_159_594_2;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn au() -> LayerStack {
        LayerStack::HalfSpace(gold())
    }

    #[test]
    fn log_one_minus_branches() {
        for (t, p) in [(0.3f64, 0.9), (2.0, 0.99), (1.0, -0.7), (0.01, 0.6)] {
            let direct = (1.0 - (-t).exp() * p).ln();
            assert!((log_one_minus(t, p) - direct).abs() <= 1e-14 * direct.abs().max(1e-300));
        }
        assert_eq!(log_one_minus(0.0, 1.0), f64::NEG_INFINITY);
        // tiny arguments keep full relative precision
        let x = (-40.0f64).exp();
        assert!(rel(log_one_minus(40.0, 1.0), -x) < 1e-15);
        // where 1 − e^{−t} cancels, ln(1 − e^{−t}) ≈ ln t
        let t = 1e-12;
        assert!(rel(log_one_minus(t, 1.0), t.ln()) < 1e-9);
    }

    #[test]
    fn settings_validation() {
        assert!(QuadratureSettings::with_rel_tol(1e-2).is_err());
        assert!(QuadratureSettings::with_rel_tol(0.0).is_err());
        let s = QuadratureSettings {
            l_max_cap: 5,
            ..QuadratureSettings::default()
        };
        assert!(s.validate().is_err());
    }

    #[test]
    fn ideal_low_temperature_matches_zero_temperature_energy() {
        let s = QuadratureSettings::default();
        let f = ideal_free_energy(IdealMirror::Both, 0.1, 10.0, &s).unwrap();
        // frozen: closed-form polylog sum at 40 digits
        assert!(rel(f.total, -2.704_915_463_650_302_3).abs() < 1e-7);
        assert!(rel(f.total, ideal_energy(0.1).unwrap()) < 5e-3);
    }

    #[test]
    fn ideal_classical_limit() {
        let s = QuadratureSettings::default();
        let a = 20.0;
        let classical = -ZETA3 * K_B * 300.0 / (8.0 * PI * a * a);
        let both = ideal_free_energy(IdealMirror::Both, a, 300.0, &s).unwrap();
        let tm = ideal_free_energy(IdealMirror::TmOnly, a, 300.0, &s).unwrap();
        assert!(rel(both.total, -3.091_144_564_859_367_7e-6) < 1e-7);
        assert!(rel(tm.total, -1.545_572_282_429_683_8e-6) < 1e-7);
        assert!(rel(both.total, classical) < 5e-3);
        assert!(rel(tm.total, 0.5 * classical) < 5e-3);
    }

    #[test]
    fn breakdown_is_consistent() {
        let s = QuadratureSettings::default();
        let f = free_energy(&au(), &au(), 1.0, 300.0, Prescription::Plasma, MuToggle::Full, &s)
            .unwrap();
        let sum: f64 = f.per_l.iter().sum();
        assert_eq!(sum.to_bits(), f.total.to_bits());
        assert_eq!(f.per_l[0], f.te0 + f.tm0);
        assert_eq!(f.l_used, f.per_l.len());
        assert!(f.per_l.iter().all(|&v| v <= 0.0));
    }

    #[test]
    fn gold_against_independent_oracle() {
        // frozen from an independent k⊥-variable QUADPACK evaluation at 1e-12
        let s = QuadratureSettings::default();
        let d = free_energy(&au(), &au(), 1.0, 300.0, Prescription::Drude, MuToggle::Full, &s)
            .unwrap();
        let p = free_energy(&au(), &au(), 1.0, 300.0, Prescription::Plasma, MuToggle::Full, &s)
            .unwrap();
        assert!(rel(d.total, -0.001_978_838_482_472_847) < 1e-6);
        assert_eq!(d.te0, 0.0);
        assert!(rel(d.tm0, -0.000_618_228_912_971_698_4) < 1e-6);
        assert!(rel(p.total, -0.002_557_723_843_784_450_3) < 1e-6);
        assert!(rel(p.te0, -0.000_566_852_459_783_732_9) < 1e-6);
    }

    #[test]
    fn te_zero_entries() {
        let s = QuadratureSettings::default();
        let dr = te_zero_contribution(&au(), &au(), 2.0, 300.0, Prescription::Drude, MuToggle::Full, &s)
            .unwrap();
        assert_eq!(dr, 0.0);
        let pl = te_zero_contribution(&au(), &au(), 2.0, 300.0, Prescription::Plasma, MuToggle::Full, &s)
            .unwrap();
        assert!(pl < 0.0);
        assert!(rel(pl, -0.000_147_925_375_782_925_45) < 1e-6);
        // Ni–Ni with full permeability: both r_TE(0) = 109/111 > 0, so the
        // term is attractive (negative)
        let ni = LayerStack::HalfSpace(nickel());
        let te = te_zero_contribution(&ni, &ni, 1.0, 300.0, Prescription::Drude, MuToggle::Full, &s)
            .unwrap();
        assert!(te < 0.0);
        assert!(rel(te, -0.000_589_103_408_220_081_8) < 1e-6);
    }

    #[test]
    fn invalid_inputs() {
        let s = QuadratureSettings::default();
        assert!(free_energy(&au(), &au(), 0.0, 300.0, Prescription::Drude, MuToggle::Full, &s).is_err());
        assert!(free_energy(&au(), &au(), 1.0, -1.0, Prescription::Drude, MuToggle::Full, &s).is_err());
        let bad = QuadratureSettings { rel_tol: 0.5, ..s };
        assert!(free_energy(&au(), &au(), 1.0, 300.0, Prescription::Drude, MuToggle::Full, &bad).is_err());
    }

    #[test]
    fn cap_reached_is_convergence_error() {
        let s = QuadratureSettings {
            l_max_cap: 10,
            ..QuadratureSettings::default()
        };
        let err = ideal_free_energy(IdealMirror::Both, 0.1, 10.0, &s).unwrap_err();
        match err {
            Error::Convergence { terms, .. } => assert_eq!(terms, 10),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_energy_is_deterministic() {
        let s = QuadratureSettings::default();
        let run = || {
            free_energy(&au(), &au(), 0.4, 300.0, Prescription::Drude, MuToggle::Full, &s)
                .unwrap()
                .total
        };
        let first = run();
        for _ in 0..3 {
            assert_eq!(run().to_bits(), first.to_bits());
        }
    }
}
