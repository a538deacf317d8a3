use std::fmt::Write as _;
use std::fs::File;
use std::io::BufReader;

use rayon::prelude::*;

use casimir_core::materials::{DrudeParameters, OpticalDataTable, PermittivityModel};
use casimir_core::setups::delta_force;
use casimir_core::units::ideal_energy;
use casimir_core::{free_energy, LayerStack, MuToggle, Prescription};

use crate::config::{MuChoice, PrescriptionChoice, RunConfig};
use crate::error::{CliError, Result};
use crate::validate;

/// Fixed CSV float format: 9 significant digits.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.8e}")
}

fn csv(config: &RunConfig, columns: &[String], rows: &[Vec<f64>]) -> String {
    let mut out = config.header();
    out.push_str(&columns.join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| fmt_num(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn load_table(config: &RunConfig) -> Result<Option<PermittivityModel>> {
    let Some(path) = &config.table else {
        return Ok(None);
    };
    let file = File::open(path).map_err(|source| CliError::Read {
        path: path.clone(),
        source,
    })?;
    let table = OpticalDataTable::from_reader(BufReader::new(file))?;
    let drude: Option<DrudeParameters> = match &config.material.permittivity {
        PermittivityModel::AnalyticDrude(d) => Some(*d),
        PermittivityModel::ConductiveSi { conduction, .. } => Some(*conduction),
        PermittivityModel::AnalyticPlasma(_) => {
            return Err(CliError::usage(
                "a table needs a material with a Drude term or none at all, not a plasma model",
            ))
        }
        _ => None,
    };
    let prescription = match config.prescription {
        PrescriptionChoice::Plasma => Prescription::Plasma,
        _ => Prescription::Drude,
    };
    Ok(Some(PermittivityModel::tabulated(table, drude, prescription)?))
}

/// ε(iξ) of one material under both prescriptions, plus the optical table
/// when one is given.
pub fn run_permittivity(config: &RunConfig) -> Result<String> {
    config.xi_grid.validate("xi")?;
    let tabulated = load_table(config)?;
    let drude = config.material.resolve(Prescription::Drude, MuToggle::Unity);
    let plasma = config.material.resolve(Prescription::Plasma, MuToggle::Unity);
    let mut columns = vec!["xi_eV".to_string(), "eps_drude".into(), "eps_plasma".into()];
    if tabulated.is_some() {
        columns.push("eps_tabulated".into());
    }
    let rows: Vec<Vec<f64>> = config
        .xi_grid
        .values()
        .into_par_iter()
        .map(|xi| -> Result<Vec<f64>> {
            let mut row = vec![xi, drude.eps(xi)?, plasma.eps(xi)?];
            if let Some(t) = &tabulated {
                row.push(t.eps_imag_axis(xi)?);
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(csv(config, &columns, &rows))
}

/// Reduction factor of two half-spaces; `--mu both` is treated as full.
pub fn run_eta(config: &RunConfig) -> Result<String> {
    config.validate()?;
    let mu = match config.mu {
        MuChoice::Unity => MuToggle::Unity,
        _ => MuToggle::Full,
    };
    let s1 = LayerStack::HalfSpace(config.material.clone());
    let s2 = LayerStack::HalfSpace(config.partner.clone());
    let (t, q) = (config.temperature, config.quadrature);
    let columns: Vec<String> = ["a_um", "eta_drude", "eta_plasma", "eta_plasma_noTE0"]
        .map(String::from)
        .to_vec();
    let rows: Vec<Vec<f64>> = config
        .a_grid
        .values()
        .into_par_iter()
        .map(|a| -> Result<Vec<f64>> {
            let e = ideal_energy(a)?;
            let d = free_energy(&s1, &s2, a, t, Prescription::Drude, mu, &q)?;
            let p = free_energy(&s1, &s2, a, t, Prescription::Plasma, mu, &q)?;
            Ok(vec![a, d.total / e, p.total / e, p.without_te0() / e])
        })
        .collect::<Result<_>>()?;
    Ok(csv(config, &columns, &rows))
}

/// Prescription × μ combinations in canonical column order.
pub fn combinations(config: &RunConfig) -> Vec<(Prescription, MuToggle)> {
    let ps = config.prescription.list();
    let mus = config.mu.list();
    let mut out = Vec::new();
    for p in Prescription::ALL {
        for mu in MuToggle::ALL {
            if ps.contains(&p) && mus.contains(&mu) {
                out.push((p, mu));
            }
        }
    }
    out
}

/// ΔF sweep over the a-grid, one column per model combination.
pub fn run_delta(config: &RunConfig) -> Result<String> {
    config.validate()?;
    let combos = combinations(config);
    let grid = config.a_grid.values();
    let q = config.quadrature;
    let tasks: Vec<(f64, Prescription, MuToggle)> = grid
        .iter()
        .flat_map(|&a| combos.iter().map(move |&(p, mu)| (a, p, mu)))
        .collect();
    let values: Vec<f64> = tasks
        .into_par_iter()
        .map(|(a, p, mu)| delta_force(&config.setup.with_model(p, mu), a, &q))
        .collect::<casimir_core::Result<_>>()?;
    let mut columns = vec!["a_um".to_string()];
    for (p, mu) in &combos {
        columns.push(format!("dF_fN_{}_{}", p.as_str(), mu.as_str()));
    }
    let rows: Vec<Vec<f64>> = grid
        .iter()
        .zip(values.chunks(combos.len()))
        .map(|(&a, vals)| std::iter::once(a).chain(vals.iter().copied()).collect())
        .collect();
    Ok(csv(config, &columns, &rows))
}

/// The validation report and the number of failed checks.
pub fn run_validate(config: &RunConfig) -> (String, usize) {
    let checks = validate::registry();
    let results = validate::run_all(&checks, &config.quadrature);
    let mut out = String::new();
    let mut failed = 0;
    for r in &results {
        if !r.passed {
            failed += 1;
        }
        let _ = writeln!(out, "{r}");
    }
    (out, failed)
}
