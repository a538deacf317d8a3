//! Flat `key = value` run configuration with `[section]` headers.
//!
//! Keys are addressed as `section.key`; keys before the first header live in
//! the root section. Command-line flags are applied through the same setter,
//! so both paths share validation.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use casimir_core::materials::{self, DrudeParameters, PermittivityModel};
use casimir_core::setups::{self, CoatingLayer, IsoelectronicSetup};
use casimir_core::{Material, MuToggle, PermeabilityModel, Prescription, QuadratureSettings};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Permittivity,
    Eta,
    Delta,
    Validate,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Permittivity => "permittivity",
            Command::Eta => "eta",
            Command::Delta => "delta",
            Command::Validate => "validate",
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "permittivity" => Ok(Command::Permittivity),
            "eta" => Ok(Command::Eta),
            "delta" => Ok(Command::Delta),
            "validate" => Ok(Command::Validate),
            other => Err(format!("unknown command '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Lin,
    Log,
}

impl Scale {
    pub fn as_str(self) -> &'static str {
        match self {
            Scale::Lin => "lin",
            Scale::Log => "log",
        }
    }
}

impl FromStr for Scale {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "lin" | "linear" => Ok(Scale::Lin),
            "log" => Ok(Scale::Log),
            other => Err(format!("unknown scale '{other}', expected lin or log")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: Scale,
}

impl Grid {
    pub fn validate(&self, what: &str) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(CliError::usage(format!(
                "{what} grid needs start < stop, got {} and {}",
                self.start, self.stop
            )));
        }
        if self.points < 2 {
            return Err(CliError::usage(format!("{what} grid needs at least 2 points")));
        }
        if self.start <= 0.0 {
            return Err(CliError::usage(format!("{what} grid must be positive")));
        }
        Ok(())
    }

    /// Grid nodes; the end points are hit exactly.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i == n - 1 {
                    return self.stop;
                }
                let f = i as f64 / (n - 1) as f64;
                match self.scale {
                    Scale::Lin => self.start + f * (self.stop - self.start),
                    Scale::Log => (self.start.ln() + f * (self.stop / self.start).ln()).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrescriptionChoice {
    Drude,
    Plasma,
    Both,
}

impl PrescriptionChoice {
    pub fn as_str(self) -> &'static str {
        match self {
            PrescriptionChoice::Drude => "drude",
            PrescriptionChoice::Plasma => "plasma",
            PrescriptionChoice::Both => "both",
        }
    }

    pub fn list(self) -> Vec<Prescription> {
        match self {
            PrescriptionChoice::Drude => vec![Prescription::Drude],
            PrescriptionChoice::Plasma => vec![Prescription::Plasma],
            PrescriptionChoice::Both => Prescription::ALL.to_vec(),
        }
    }
}

impl FromStr for PrescriptionChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "drude" => Ok(PrescriptionChoice::Drude),
            "plasma" => Ok(PrescriptionChoice::Plasma),
            "both" => Ok(PrescriptionChoice::Both),
            other => Err(format!(
                "unknown prescription '{other}', expected drude, plasma or both"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuChoice {
    Unity,
    Full,
    Both,
}

impl MuChoice {
    pub fn as_str(self) -> &'static str {
        match self {
            MuChoice::Unity => "unity",
            MuChoice::Full => "full",
            MuChoice::Both => "both",
        }
    }

    pub fn list(self) -> Vec<MuToggle> {
        match self {
            MuChoice::Unity => vec![MuToggle::Unity],
            MuChoice::Full => vec![MuToggle::Full],
            MuChoice::Both => MuToggle::ALL.to_vec(),
        }
    }
}

impl FromStr for MuChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "unity" | "1" => Ok(MuChoice::Unity),
            "full" => Ok(MuChoice::Full),
            "both" => Ok(MuChoice::Both),
            other => Err(format!("unknown mu toggle '{other}', expected full, unity or both")),
        }
    }
}

/// Parses a material spec: a preset name, `vacuum`, `drude:ωp,γ[,μ0]`,
/// `plasma:ωp[,μ0]`, `oscillator:ε0,ω0` or `conductive:ε0,ω0,ωp,γ`.
/// Energies in eV.
pub fn parse_material(spec: &str) -> std::result::Result<Material, String> {
    let spec = spec.trim();
    if materials::PRESET_NAMES.contains(&spec) {
        return materials::preset(spec).map_err(|e| e.to_string());
    }
    let (kind, args) = spec.split_once(':').unwrap_or((spec, ""));
    let nums: Vec<f64> = if args.is_empty() {
        Vec::new()
    } else {
        args.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad number '{t}' in '{spec}'")))
            .collect::<std::result::Result<_, _>>()?
    };
    let arity = |lo: usize, hi: usize| -> std::result::Result<(), String> {
        if nums.len() < lo || nums.len() > hi {
            Err(format!("'{kind}' takes {lo}..={hi} parameters, got {}", nums.len()))
        } else {
            Ok(())
        }
    };
    let mu_from = |idx: usize| {
        nums.get(idx)
            .map_or(PermeabilityModel::Unity, |&m| PermeabilityModel::debye(m))
    };
    let (eps, mu) = match kind {
        "vacuum" => {
            arity(0, 0)?;
            (PermittivityModel::Vacuum, PermeabilityModel::Unity)
        }
        "drude" => {
            arity(2, 3)?;
            (
                PermittivityModel::AnalyticDrude(DrudeParameters::new(nums[0], nums[1])),
                mu_from(2),
            )
        }
        "plasma" => {
            arity(1, 2)?;
            (PermittivityModel::AnalyticPlasma(nums[0]), mu_from(1))
        }
        "oscillator" => {
            arity(2, 2)?;
            (PermittivityModel::oscillator(nums[0], nums[1]), PermeabilityModel::Unity)
        }
        "conductive" => {
            arity(4, 4)?;
            (
                PermittivityModel::ConductiveSi {
                    base: Box::new(PermittivityModel::oscillator(nums[0], nums[1])),
                    conduction: DrudeParameters::new(nums[2], nums[3]),
                },
                PermeabilityModel::Unity,
            )
        }
        _ => return Err(casimir_core::Error::UnknownMaterial(spec.to_string()).to_string()),
    };
    let mut material = Material::new(spec, eps, mu).map_err(|e| e.to_string())?;
    material.name = format_material(&material)?;
    Ok(material)
}

/// Inverse of [`parse_material`]; presets are written by name.
pub fn format_material(m: &Material) -> std::result::Result<String, String> {
    if let Ok(p) = materials::preset(&m.name) {
        if &p == m {
            return Ok(m.name.clone());
        }
    }
    let mu = match m.permeability {
        PermeabilityModel::Unity => String::new(),
        PermeabilityModel::Debye { static_mu, omega_m } => {
            if omega_m != materials::DEFAULT_OMEGA_M {
                return Err("Debye permeability with a custom ω_m has no spec form".into());
            }
            format!(",{static_mu}")
        }
    };
    let body = match &m.permittivity {
        PermittivityModel::Vacuum if mu.is_empty() => "vacuum".to_string(),
        PermittivityModel::AnalyticDrude(d) => format!("drude:{},{}{mu}", d.plasma, d.relaxation),
        PermittivityModel::AnalyticPlasma(wp) => format!("plasma:{wp}{mu}"),
        PermittivityModel::DielectricOscillator(o) if mu.is_empty() => {
            format!("oscillator:{},{}", o.static_eps, o.resonance)
        }
        PermittivityModel::ConductiveSi { base, conduction } if mu.is_empty() => match base.as_ref() {
            PermittivityModel::DielectricOscillator(o) => format!(
                "conductive:{},{},{},{}",
                o.static_eps, o.resonance, conduction.plasma, conduction.relaxation
            ),
            _ => return Err(format!("material '{}' has no spec form", m.name)),
        },
        _ => return Err(format!("material '{}' has no spec form", m.name)),
    };
    Ok(body)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// Catalog name the setup started from, if any.
    pub setup_preset: Option<String>,
    pub setup: IsoelectronicSetup,
    pub a_grid: Grid,
    pub xi_grid: Grid,
    /// Material of `permittivity`, and first plate of `eta`.
    pub material: Material,
    /// Second plate of `eta`.
    pub partner: Material,
    pub table: Option<PathBuf>,
    /// Temperature of `eta`, K.
    pub temperature: f64,
    pub prescription: PrescriptionChoice,
    pub mu: MuChoice,
    pub quadrature: QuadratureSettings,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            setup_preset: Some("fig3".into()),
            setup: setups::setup_preset("fig3").expect("catalog entry"),
            a_grid: Grid {
                start: 0.5,
                stop: 5.0,
                points: 10,
                scale: Scale::Lin,
            },
            xi_grid: Grid {
                start: 0.01,
                stop: 10.0,
                points: 50,
                scale: Scale::Log,
            },
            material: materials::gold(),
            partner: materials::gold(),
            table: None,
            temperature: 300.0,
            prescription: PrescriptionChoice::Both,
            mu: MuChoice::Both,
            quadrature: QuadratureSettings::default(),
            out: None,
        }
    }

    /// Parses a config file on top of the defaults for `command`.
    pub fn from_text(command: Command, text: &str) -> Result<Self> {
        let mut config = Self::new(command);
        let mut section = String::new();
        let mut seen: Vec<String> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('[') {
                let name = rest.strip_suffix(']').ok_or_else(|| CliError::Config {
                    line: line_no,
                    message: format!("malformed section header '{line}'"),
                })?;
                section = name.trim().to_string();
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| CliError::Config {
                line: line_no,
                message: format!("expected 'key = value', got '{line}'"),
            })?;
            let key = key.trim();
            let full = if section.is_empty() {
                key.to_string()
            } else {
                format!("{section}.{key}")
            };
            if seen.contains(&full) {
                return Err(CliError::Config {
                    line: line_no,
                    message: format!("duplicate key '{full}'"),
                });
            }
            config.set(&full, value.trim()).map_err(|message| CliError::Config {
                line: line_no,
                message,
            })?;
            seen.push(full);
        }
        Ok(config)
    }

    /// Sets one `section.key`. `setup.preset` replaces the whole setup, so
    /// it should come before any individual setup keys.
    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        fn num<T: FromStr>(key: &str, v: &str) -> std::result::Result<T, String> {
            v.parse().map_err(|_| format!("invalid value '{v}' for {key}"))
        }
        let custom = |c: &mut Self| c.setup_preset = None;
        match key {
            "command" => self.command = value.parse()?,
            "setup.preset" => {
                self.setup = setups::setup_preset(value).map_err(|e| e.to_string())?;
                self.setup_preset = Some(value.to_string());
            }
            "setup.name" => {
                self.setup.name = value.to_string();
                custom(self);
            }
            "setup.radius" => {
                self.setup.radius = num(key, value)?;
                custom(self);
            }
            "setup.coating" => {
                self.setup.coating = parse_material(value)?;
                custom(self);
            }
            "setup.coating_thickness" => {
                let thickness: f64 = num(key, value)?;
                let core = self
                    .setup
                    .coating_layer
                    .take()
                    .map_or_else(|| self.setup.coating.clone(), |c| c.core);
                self.setup.coating_layer = Some(CoatingLayer { thickness, core });
                custom(self);
            }
            "setup.coating_core" => {
                let core = parse_material(value)?;
                match &mut self.setup.coating_layer {
                    Some(c) => c.core = core,
                    None => return Err("setup.coating_core needs setup.coating_thickness first".into()),
                }
                custom(self);
            }
            "setup.overlayer" => {
                self.setup.overlayer = parse_material(value)?;
                custom(self);
            }
            "setup.thickness" => {
                self.setup.thickness = num(key, value)?;
                custom(self);
            }
            "setup.substrate_b" => {
                self.setup.substrate_b = parse_material(value)?;
                custom(self);
            }
            "setup.substrate_c" => {
                self.setup.substrate_c = parse_material(value)?;
                custom(self);
            }
            "setup.temperature" => {
                self.setup.temperature = num(key, value)?;
                custom(self);
            }
            "grid.a_start" => self.a_grid.start = num(key, value)?,
            "grid.a_stop" => self.a_grid.stop = num(key, value)?,
            "grid.a_points" => self.a_grid.points = num(key, value)?,
            "grid.a_scale" => self.a_grid.scale = value.parse()?,
            "grid.xi_start" => self.xi_grid.start = num(key, value)?,
            "grid.xi_stop" => self.xi_grid.stop = num(key, value)?,
            "grid.xi_points" => self.xi_grid.points = num(key, value)?,
            "grid.xi_scale" => self.xi_grid.scale = value.parse()?,
            "model.prescription" => self.prescription = value.parse()?,
            "model.mu" => self.mu = value.parse()?,
            "materials.material" => self.material = parse_material(value)?,
            "materials.partner" => self.partner = parse_material(value)?,
            "materials.table" => self.table = Some(PathBuf::from(value)),
            "materials.temperature" => self.temperature = num(key, value)?,
            "quadrature.rel_tol" => self.quadrature.rel_tol = num(key, value)?,
            "quadrature.l_max_cap" => self.quadrature.l_max_cap = num(key, value)?,
            "quadrature.max_intervals" => self.quadrature.max_intervals = num(key, value)?,
            "quadrature.window" => self.quadrature.window = num(key, value)?,
            "output.out" => self.out = Some(PathBuf::from(value)),
            other => return Err(format!("unknown key '{other}'")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.a_grid.validate("a")?;
        self.xi_grid.validate("xi")?;
        self.setup.validate()?;
        if !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return Err(CliError::usage("temperature must be positive"));
        }
        Ok(())
    }

    /// Config-file text that parses back to `self`. Fails only for
    /// materials that have no spec form.
    pub fn to_text(&self) -> std::result::Result<String, String> {
        let mut s = String::new();
        let mut w = |line: String| {
            s.push_str(&line);
            s.push('\n');
        };
        w(format!("command = {}", self.command.as_str()));
        w(String::new());
        w("[setup]".into());
        match &self.setup_preset {
            Some(name) => w(format!("preset = {name}")),
            None => {
                let st = &self.setup;
                w(format!("name = {}", st.name));
                w(format!("radius = {}", st.radius));
                w(format!("coating = {}", format_material(&st.coating)?));
                if let Some(c) = &st.coating_layer {
                    w(format!("coating_thickness = {}", c.thickness));
                    w(format!("coating_core = {}", format_material(&c.core)?));
                }
                w(format!("overlayer = {}", format_material(&st.overlayer)?));
                w(format!("thickness = {}", st.thickness));
                w(format!("substrate_b = {}", format_material(&st.substrate_b)?));
                w(format!("substrate_c = {}", format_material(&st.substrate_c)?));
                w(format!("temperature = {}", st.temperature));
            }
        }
        w(String::new());
        w("[grid]".into());
        for (tag, g) in [("a", &self.a_grid), ("xi", &self.xi_grid)] {
            w(format!("{tag}_start = {}", g.start));
            w(format!("{tag}_stop = {}", g.stop));
            w(format!("{tag}_points = {}", g.points));
            w(format!("{tag}_scale = {}", g.scale.as_str()));
        }
        w(String::new());
        w("[model]".into());
        w(format!("prescription = {}", self.prescription.as_str()));
        w(format!("mu = {}", self.mu.as_str()));
        w(String::new());
        w("[materials]".into());
        w(format!("material = {}", format_material(&self.material)?));
        w(format!("partner = {}", format_material(&self.partner)?));
        if let Some(t) = &self.table {
            w(format!("table = {}", t.display()));
        }
        w(format!("temperature = {}", self.temperature));
        w(String::new());
        w("[quadrature]".into());
        let q = &self.quadrature;
        w(format!("rel_tol = {}", q.rel_tol));
        w(format!("l_max_cap = {}", q.l_max_cap));
        w(format!("max_intervals = {}", q.max_intervals));
        w(format!("window = {}", q.window));
        if let Some(out) = &self.out {
            w(String::new());
            w("[output]".into());
            w(format!("out = {}", out.display()));
        }
        Ok(s)
    }

    /// `to_text` as a block of `# ` comment lines.
    pub fn header(&self) -> String {
        let text = self
            .to_text()
            .unwrap_or_else(|e| format!("config not serializable: {e}\n"));
        let mut out = String::new();
        for line in text.lines().filter(|l| !l.is_empty()) {
            let _ = writeln!(out, "# {line}");
        }
        out
    }
}
