//! Tabulated ε″(ω) data: ingestion, validation and synthetic generation.

use std::fmt::Write as _;
use std::io::BufRead;

use super::permittivity::DrudeParameters;
use crate::error::{Error, Result};

/// Rows of (ħω in eV, ε″), strictly increasing in ω.
#[derive(Debug, Clone, PartialEq)]
pub struct OpticalDataTable {
    rows: Vec<(f64, f64)>,
}

impl OpticalDataTable {
    pub fn new(rows: Vec<(f64, f64)>) -> Result<Self> {
        for (i, &(w, e)) in rows.iter().enumerate() {
            check_row(i + 1, w, e)?;
            if i > 0 && w <= rows[i - 1].0 {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("frequency {w} does not exceed previous {}", rows[i - 1].0),
                });
            }
        }
        if rows.len() < 2 {
            return Err(Error::Parse {
                line: rows.len(),
                message: format!("need at least 2 rows, found {}", rows.len()),
            });
        }
        Ok(Self { rows })
    }

    /// Parses two whitespace-separated columns "ω_eV ε″"; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_reader(text.as_bytes())
    }

    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self> {
        let mut rows: Vec<(f64, f64)> = Vec::new();
        let mut last_line = 0;
        for (idx, line) in reader.lines().enumerate() {
            let n = idx + 1;
            last_line = n;
            let line = line.map_err(|e| Error::Parse {
                line: n,
                message: e.to_string(),
            })?;
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line: n,
                    message: format!("expected 2 columns, found {}", fields.len()),
                });
            }
            let num = |s: &str| {
                s.parse::<f64>().map_err(|_| Error::Parse {
                    line: n,
                    message: format!("not a number: {s:?}"),
                })
            };
            let (w, e) = (num(fields[0])?, num(fields[1])?);
            check_row(n, w, e)?;
            if let Some(&(prev, _)) = rows.last() {
                if w == prev {
                    return Err(Error::Parse {
                        line: n,
                        message: format!("duplicate frequency {w}"),
                    });
                }
                if w < prev {
                    return Err(Error::Parse {
                        line: n,
                        message: format!("frequency {w} below previous {prev}; rows must ascend"),
                    });
                }
            }
            rows.push((w, e));
        }
        if rows.len() < 2 {
            return Err(Error::Parse {
                line: last_line,
                message: format!("need at least 2 data rows, found {}", rows.len()),
            });
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[(f64, f64)] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn omega_min(&self) -> f64 {
        self.rows[0].0
    }

    pub fn omega_max(&self) -> f64 {
        self.rows[self.rows.len() - 1].0
    }

    /// Writes the table in the two-column text format.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# omega_eV epsilon_imag\n");
        for &(w, e) in &self.rows {
            let _ = writeln!(out, "{w:.17e} {e:.17e}");
        }
        out
    }
}

fn check_row(line: usize, w: f64, e: f64) -> Result<()> {
    if !w.is_finite() || !e.is_finite() {
        return Err(Error::Parse {
            line,
            message: "non-finite value".into(),
        });
    }
    if w <= 0.0 {
        return Err(Error::Parse {
            line,
            message: format!("frequency must be positive, got {w}"),
        });
    }
    if e < 0.0 {
        return Err(Error::Parse {
            line,
            message: format!("negative epsilon_imag {e}"),
        });
    }
    Ok(())
}

/// Damped Lorentz oscillator: Δε ω₀² / (ω₀² − ω² − iΓω).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzOscillator {
    pub strength: f64,
    pub resonance: f64,
    pub damping: f64,
}

impl LorentzOscillator {
    pub fn imaginary_part(&self, omega: f64) -> f64 {
        let w02 = self.resonance * self.resonance;
        let d = w02 - omega * omega;
        self.strength * w02 * self.damping * omega / (d * d + (self.damping * omega).powi(2))
    }

    /// Value on the imaginary axis, Δε ω₀²/(ω₀² + ξ² + Γξ).
    pub fn imag_axis(&self, xi: f64) -> f64 {
        let w02 = self.resonance * self.resonance;
        self.strength * w02 / (w02 + xi * xi + self.damping * xi)
    }
}

/// Drude plus Lorentz oscillators, used to generate synthetic optical tables.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SyntheticSpectrum {
    pub drude: Option<DrudeParameters>,
    pub oscillators: Vec<LorentzOscillator>,
}

impl SyntheticSpectrum {
    pub fn drude(params: DrudeParameters) -> Self {
        Self {
            drude: Some(params),
            oscillators: Vec::new(),
        }
    }

    pub fn with_oscillator(mut self, osc: LorentzOscillator) -> Self {
        self.oscillators.push(osc);
        self
    }

    pub fn imaginary_part(&self, omega: f64) -> f64 {
        let conduction = self.drude.map_or(0.0, |d| d.imaginary_part(omega));
        conduction
            + self
                .oscillators
                .iter()
                .map(|o| o.imaginary_part(omega))
                .sum::<f64>()
    }

    /// Exact ε(iξ) of the generating model.
    pub fn imag_axis(&self, xi: f64) -> f64 {
        1.0 + self.drude.map_or(0.0, |d| d.imag_axis_term(xi))
            + self.oscillators.iter().map(|o| o.imag_axis(xi)).sum::<f64>()
    }

    /// Samples ε″ on `points` log-spaced frequencies in [ω_min, ω_max].
    pub fn table(&self, omega_min: f64, omega_max: f64, points: usize) -> Result<OpticalDataTable> {
        if points < 2 || !(omega_min > 0.0 && omega_max > omega_min) {
            return Err(Error::domain(format!(
                "synthetic table needs 0 < omega_min < omega_max and >= 2 points, got [{omega_min}, {omega_max}] x {points}"
            )));
        }
        let ratio = (omega_max / omega_min).ln() / (points - 1) as f64;
        let rows = (0..points)
            .map(|i| {
                let w = if i == points - 1 {
                    omega_max
                } else {
                    omega_min * (ratio * i as f64).exp()
                };
                (w, self.imaginary_part(w))
            })
            .collect();
        OpticalDataTable::new(rows)
    }
}
