//! Reference values computed once by `tests/oracles/derive_baselines.py`
//! (closed forms, and brute-force quadrature at epsrel 1e-12) and replayed by
//! `validate`.

use casimir_core::layers::{self, ImaginaryMode};
use casimir_core::lifshitz::{free_energy, ideal_free_energy, IdealMirror};
use casimir_core::materials::{self, PermittivityModel};
use casimir_core::setups::{delta_force, setup_preset};
use casimir_core::units::{ideal_energy, ThermalState, K_B};
use casimir_core::{LayerStack, MuToggle, Polarization, Prescription, Result};

use crate::validate::{Check, Measure};

const ZETA3: f64 = 1.202_056_903_159_594_3;

/// Relative tolerance for closed-form quantities.
const CLOSED_FORM_TOL: f64 = 1e-12;
/// Relative tolerance for free energies.
const FREE_ENERGY_TOL: f64 = 1e-6;
/// Relative tolerance for the ideal-mirror sums, which carry the Matsubara
/// truncation of the default settings on top of quadrature error.
const IDEAL_TOL: f64 = 1e-6;
/// ΔF tolerance: relative part, plus an absolute floor in fN.
const DELTA_REL_TOL: f64 = 1e-5;
const DELTA_ABS_TOL: f64 = 1e-4;

pub const XI1_300: f64 = 0.162_432_904_047_932_54;
pub const THERMAL_LENGTH_300: f64 = 1.214_821_412_918_718_3;
pub const E_ID_1: f64 = -0.002_704_915_460_507_816_4;
pub const EPS_DRUDE_AU_XI1: f64 = 2_470.940_382_822_517_7;
pub const EPS_PLASMA_AU_XI1: f64 = 3_003.147_289_455_659_6;
pub const SIC_CONDUCTION_XI1: f64 = 4.963_903_935_387_785;
pub const KZ_AU_L1_K1: f64 = 40.930_622_489_812_336;
pub const STACK_FORMULA: f64 = 0.714_285_714_285_714_3;
pub const TE0_NI: f64 = 0.981_981_981_981_981_9;
pub const TE0_AU_ON_NI_K2P5: f64 = 0.658_242_207_368_330_5;
pub const IDEAL_A0P1_T10: f64 = -2.704_915_463_650_302_3;
pub const IDEAL_A20_T300: f64 = -3.091_144_564_859_367_7e-6;
pub const IDEAL_TM_A20_T300: f64 = -1.545_572_282_429_683_8e-6;
pub const IDEAL_A1_T10: f64 = -0.002_704_918_588_827_978_7;
pub const CLASSICAL_A20_T300: f64 = -3.091_144_564_858_493e-6;

/// Au-Au half-spaces as (a, prescription, total, TE₀, TM₀).
pub const AU_AU: [(f64, Prescription, f64, f64, f64); 8] = [
    (1.0, Prescription::Drude, -0.001_978_838_482_472_847, 0.0, -0.000_618_228_912_971_698_4),
    (1.0, Prescription::Plasma, -0.002_557_723_843_784_450_3, -0.000_566_852_459_783_732_9, -0.000_618_228_912_971_698_4),
    (2.0, Prescription::Drude, -0.000_235_281_092_101_744_99, 0.0, -0.000_154_557_228_242_924_6),
    (2.0, Prescription::Plasma, -0.000_383_851_436_174_278_6, -0.000_147_925_375_782_925_45, -0.000_154_557_228_242_924_6),
    (3.0, Prescription::Drude, -7.776_424_712_525_237e-5, 0.0, -6.869_210_144_129_984e-5),
    (3.0, Prescription::Plasma, -0.000_144_540_021_990_047_8, -6.670_561_580_396_287e-5, -6.869_210_144_129_984e-5),
    (5.0, Prescription::Drude, -2.491_558_568_184_448_5e-5, 0.0, -2.472_915_651_886_794_5e-5),
    (5.0, Prescription::Plasma, -4.921_330_059_552_847_4e-5, -2.429_629_949_773_837e-5, -2.472_915_651_886_794_5e-5),
];

/// Ni-Ni half-spaces, Drude, full permeability, a = 1 μm: (total, TE₀, TM₀).
pub const NI_NI_A1_DRUDE_MUFULL: (f64, f64, f64) = (
    -0.002_437_490_583_068_146,
    -0.000_589_103_408_220_081_8,
    -0.000_618_228_912_971_698_4,
);

/// ΔF in fN as (setup, a, prescription, μ-toggle, value).
pub const DELTA_FORCES: [(&str, f64, Prescription, MuToggle, f64); 32] = {
    use MuToggle::{Full, Unity};
    use Prescription::{Drude, Plasma};
    [
        ("fig3", 3.0, Drude, Unity, 0.348_536_102_669_291_75),
        ("fig3", 3.0, Plasma, Unity, 4.787_808_459_050_203),
        ("fig3", 4.0, Drude, Unity, 0.048_010_276_574_134_515),
        ("fig3", 4.0, Plasma, Unity, 2.281_779_776_444_978_3),
        ("fig4_5", 0.3, Drude, Unity, -0.595_013_259_968_572_5),
        ("fig4_5", 0.3, Drude, Full, 615.440_661_857_733_3),
        ("fig4_5", 0.3, Plasma, Unity, -0.454_055_026_275_126),
        ("fig4_5", 0.3, Plasma, Full, -0.391_852_655_125_775_8),
        ("fig6bis", 0.2, Plasma, Full, 24.586_672_464_756_59),
        ("fig6bis", 0.2, Drude, Unity, -38.553_402_424_684_414),
        ("fig6bis", 0.2, Plasma, Unity, -88.224_452_785_808_4),
        ("fig6bis", 0.25, Plasma, Full, 5.248_101_207_168_147),
        ("fig6bis", 0.25, Drude, Unity, -16.369_439_344_348),
        ("fig6bis", 0.25, Plasma, Unity, -44.539_947_676_772_3),
        ("fig6bis", 0.3, Plasma, Full, -1.999_333_699_857_135_2),
        ("fig6bis", 0.3, Drude, Unity, -7.597_936_208_125_055),
        ("fig6bis", 0.3, Plasma, Unity, -24.904_354_366_478_14),
        ("fig7", 1.0, Drude, Unity, 37.774_862_006_797_434),
        ("fig7", 1.0, Plasma, Unity, 82.238_006_015_678_82),
        ("fig7", 2.0, Drude, Unity, 2.619_992_611_689_369),
        ("fig7", 2.0, Plasma, Unity, 13.303_101_166_535_223),
        ("fig7", 3.0, Drude, Unity, 0.303_105_646_864_838_5),
        ("fig7", 3.0, Plasma, Unity, 4.588_269_775_645_517),
        ("fig6", 0.5, Drude, Unity, 0.357_165_038_922_612_6),
        ("fig6", 0.5, Plasma, Unity, -4.584_858_055_525_382),
        ("fig6", 0.5, Plasma, Full, -23.390_369_340_586_332),
        ("fig6", 1.0, Drude, Unity, 0.114_879_708_048_916_53),
        ("fig6", 1.0, Plasma, Unity, -0.568_130_955_037_385_3),
        ("fig6", 1.0, Plasma, Full, -10.720_263_801_371_052),
        ("fig6", 2.0, Drude, Unity, 0.010_239_794_575_416_414),
        ("fig6", 2.0, Plasma, Unity, -0.049_923_425_217_713_6),
        ("fig6", 2.0, Plasma, Full, -2.767_566_359_322_293_7),
    ]
};

fn rel_dev(value: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        value.abs()
    } else {
        ((value - reference) / reference).abs()
    }
}

fn relative(value: f64, reference: f64, tol: f64) -> Measure {
    Measure::at_most(rel_dev(value, reference), tol)
}

fn closed(id: String, reference: f64, f: impl Fn() -> Result<f64> + Send + Sync + 'static) -> Check {
    Check::new(id, Some(10), move |_| Ok(relative(f()?, reference, CLOSED_FORM_TOL)))
}

fn au() -> LayerStack {
    LayerStack::HalfSpace(materials::gold())
}

fn ni() -> LayerStack {
    LayerStack::HalfSpace(materials::nickel())
}

/// One check per frozen value.
pub fn checks() -> Vec<Check> {
    let mut out = vec![
        closed("baseline_xi1_300".into(), XI1_300, || Ok(ThermalState::new(300.0)?.xi1)),
        closed("baseline_thermal_length_300".into(), THERMAL_LENGTH_300, || {
            Ok(ThermalState::new(300.0)?.thermal_length)
        }),
        closed("baseline_e_id_1".into(), E_ID_1, || ideal_energy(1.0)),
        closed("baseline_eps_drude_au_xi1".into(), EPS_DRUDE_AU_XI1, || {
            materials::gold().resolve(Prescription::Drude, MuToggle::Unity).eps(XI1_300)
        }),
        closed("baseline_eps_plasma_au_xi1".into(), EPS_PLASMA_AU_XI1, || {
            materials::gold().resolve(Prescription::Plasma, MuToggle::Unity).eps(XI1_300)
        }),
        closed("baseline_sic_conduction_xi1".into(), SIC_CONDUCTION_XI1, || {
            let sic = materials::conductive_silicon().resolve(Prescription::Drude, MuToggle::Unity);
            let base = PermittivityModel::DielectricOscillator(materials::SI_OSCILLATOR);
            Ok(sic.eps(XI1_300)? - base.eps_imag_axis(XI1_300)?)
        }),
        closed("baseline_kz_au_l1_k1".into(), KZ_AU_L1_K1, || {
            let au = materials::gold().resolve(Prescription::Drude, MuToggle::Unity);
            layers::axial_wavenumber(&au, &ImaginaryMode::new(1, XI1_300, 1.0))
        }),
        closed("baseline_stack_formula".into(), STACK_FORMULA, || {
            Ok(layers::compose(0.6, 0.4, 0.5))
        }),
        closed("baseline_te0_ni".into(), TE0_NI, || {
            layers::zero_frequency_reflection(&ni(), Polarization::TE, Prescription::Drude, 1.0, MuToggle::Full)
        }),
        closed("baseline_te0_au_on_ni_k2p5".into(), TE0_AU_ON_NI_K2P5, || {
            let stack = LayerStack::coated(materials::gold(), 0.08, materials::nickel())?;
            layers::zero_frequency_reflection(&stack, Polarization::TE, Prescription::Drude, 2.5, MuToggle::Full)
        }),
        closed("baseline_classical_a20_t300".into(), CLASSICAL_A20_T300, || {
            Ok(-ZETA3 * K_B * 300.0 / (8.0 * std::f64::consts::PI * 400.0))
        }),
    ];

    for (id, mirror, a, t, reference) in [
        ("baseline_ideal_a0p1_t10", IdealMirror::Both, 0.1, 10.0, IDEAL_A0P1_T10),
        ("baseline_ideal_a20_t300", IdealMirror::Both, 20.0, 300.0, IDEAL_A20_T300),
        ("baseline_ideal_tm_a20_t300", IdealMirror::TmOnly, 20.0, 300.0, IDEAL_TM_A20_T300),
        ("baseline_ideal_a1_t10", IdealMirror::Both, 1.0, 10.0, IDEAL_A1_T10),
    ] {
        out.push(Check::new(id.to_string(), Some(10), move |s| {
            let f = ideal_free_energy(mirror, a, t, s)?;
            Ok(relative(f.total, reference, IDEAL_TOL))
        }));
    }

    for (a, p, total, te0, tm0) in AU_AU {
        let tag = format!("a{a}_{}", p.as_str());
        out.push(free_energy_check(format!("baseline_au_au_{tag}"), au(), au(), a, p, MuToggle::Full, (total, te0, tm0)));
    }
    out.push(free_energy_check(
        "baseline_ni_ni_a1_drude_muFull".into(),
        ni(),
        ni(),
        1.0,
        Prescription::Drude,
        MuToggle::Full,
        NI_NI_A1_DRUDE_MUFULL,
    ));

    for (name, a, p, mu, reference) in DELTA_FORCES {
        let id = format!("baseline_dF_{name}_a{a}_{}_{}", p.as_str(), mu.as_str());
        out.push(Check::new(id, Some(10), move |s| {
            let setup = setup_preset(name)?.with_model(p, mu);
            let d = delta_force(&setup, a, s)?;
            let bound = DELTA_REL_TOL * reference.abs() + DELTA_ABS_TOL;
            Ok(Measure::at_most((d - reference).abs(), bound))
        }));
    }
    out
}

fn free_energy_check(
    id: String,
    s1: LayerStack,
    s2: LayerStack,
    a: f64,
    p: Prescription,
    mu: MuToggle,
    reference: (f64, f64, f64),
) -> Check {
    Check::new(id, Some(10), move |s| {
        let f = free_energy(&s1, &s2, a, 300.0, p, mu, s)?;
        let dev = rel_dev(f.total, reference.0)
            .max(rel_dev(f.te0, reference.1))
            .max(rel_dev(f.tm0, reference.2));
        Ok(Measure::at_most(dev, FREE_ENERGY_TOL))
    })
}
