//! Run configuration: a JSON document merged over defaults, then overridden by flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use smx_core::models::{make_model, ModelKind, Parameter, SeparableModel};
use smx_core::symmetry::SymmetryCode;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelConfig {
    /// `tr` or `parity`.
    pub kind: String,
    /// Signed potential strength; its magnitude fixes the momentum unit.
    pub v0: f64,
    pub a: f64,
    pub b: f64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self { kind: "tr".into(), v0: 1.0, a: 1.0, b: 0.5 }
    }
}

/// Real momentum grid, inclusive at both ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub p_min: f64,
    pub p_max: f64,
    pub steps: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { p_min: 0.05, p_max: 5.0, steps: 100 }
    }
}

impl GridConfig {
    pub fn points(&self) -> Vec<f64> {
        linspace(self.p_min, self.p_max, self.steps)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    /// `v0`, `a` or `b`.
    pub parameter: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { parameter: "v0".into(), start: -3.0, stop: 3.0, steps: 121 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToleranceConfig {
    /// Relative residual below which a kernel symmetry holds.
    pub symmetry: f64,
    /// Mismatch allowed in pole mirror and energy pairing checks.
    pub pole: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { symmetry: smx_core::symmetry::DEFAULT_THRESHOLD, pole: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    /// Written to stdout when absent.
    pub path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PseudosymConfig {
    /// Symmetry codes, or `generic` for unsymmetric controls.
    pub codes: Vec<String>,
    pub dim: usize,
    /// Number of consecutive seeds starting at the run seed.
    pub seeds: u64,
    /// Conjugate-pairing tolerance.
    pub pairing_tol: f64,
}

impl Default for PseudosymConfig {
    fn default() -> Self {
        Self {
            codes: ["II", "IV", "V", "VII"].map(String::from).to_vec(),
            dim: 8,
            seeds: 10,
            pairing_tol: smx_core::pseudosym::PAIRING_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub grid: GridConfig,
    pub sweep: SweepConfig,
    pub tolerances: ToleranceConfig,
    pub output: OutputConfig,
    pub seed: u64,
    /// Worker threads; the rayon default when absent.
    pub threads: Option<usize>,
    pub pseudosym: PseudosymConfig,
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub threads: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
}

/// Which tolerance `--tol` replaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TolTarget {
    Symmetry,
    Pole,
    Pairing,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn apply(&mut self, o: &Overrides, target: TolTarget) {
        if let Some(out) = &o.out {
            self.output.path = Some(out.clone());
        }
        if let Some(format) = o.format {
            self.output.format = format;
        }
        if let Some(threads) = o.threads {
            self.threads = Some(threads);
        }
        if let Some(seed) = o.seed {
            self.seed = seed;
        }
        if let Some(tol) = o.tol {
            match target {
                TolTarget::Symmetry => self.tolerances.symmetry = tol,
                TolTarget::Pole => self.tolerances.pole = tol,
                TolTarget::Pairing => self.pseudosym.pairing_tol = tol,
            }
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |msg: String| Err(CliError::Config(msg));
        self.model_kind()?;
        let m = &self.model;
        if ![m.v0, m.a, m.b].iter().all(|x| x.is_finite()) {
            return bad("model parameters must be finite".into());
        }
        let g = &self.grid;
        if !(g.p_min > 0.0 && g.p_max > g.p_min && g.p_max.is_finite()) {
            return bad(format!("grid needs 0 < p_min < p_max, got [{}, {}]", g.p_min, g.p_max));
        }
        if g.steps < 2 {
            return bad(format!("grid needs at least 2 steps, got {}", g.steps));
        }
        self.sweep_parameter()?;
        let s = &self.sweep;
        if !(s.start.is_finite() && s.stop.is_finite()) || s.start == s.stop {
            return bad(format!("sweep range [{}, {}] is empty", s.start, s.stop));
        }
        if s.steps < 2 {
            return bad(format!("sweep needs at least 2 steps, got {}", s.steps));
        }
        let t = &self.tolerances;
        for (name, v) in [("symmetry", t.symmetry), ("pole", t.pole), ("pairing", self.pseudosym.pairing_tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} tolerance must be positive, got {v}"));
            }
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1".into());
        }
        self.pseudosym_codes()?;
        if self.pseudosym.dim < 2 {
            return bad(format!("pseudosym dimension must be at least 2, got {}", self.pseudosym.dim));
        }
        if self.pseudosym.seeds == 0 {
            return bad("pseudosym needs at least one seed".into());
        }
        Ok(())
    }

    pub fn model_kind(&self) -> CliResult<ModelKind> {
        match self.model.kind.parse::<ModelKind>() {
            Ok(ModelKind::CustomRational) => {
                Err(CliError::Config("custom models cannot be built from a config file".into()))
            }
            Ok(kind) => Ok(kind),
            Err(e) => Err(CliError::Config(e.to_string())),
        }
    }

    pub fn model(&self) -> CliResult<SeparableModel> {
        let m = &self.model;
        make_model(self.model_kind()?, m.v0, m.a, m.b).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn sweep_parameter(&self) -> CliResult<Parameter> {
        self.sweep.parameter.parse().map_err(|e: smx_core::Error| CliError::Config(e.to_string()))
    }

    /// `None` marks an unsymmetric control.
    pub fn pseudosym_codes(&self) -> CliResult<Vec<Option<SymmetryCode>>> {
        let allowed = [SymmetryCode::II, SymmetryCode::IV, SymmetryCode::V, SymmetryCode::VII];
        self.pseudosym
            .codes
            .iter()
            .map(|s| {
                if s.eq_ignore_ascii_case("generic") {
                    return Ok(None);
                }
                match s.parse::<SymmetryCode>() {
                    Ok(code) if allowed.contains(&code) => Ok(Some(code)),
                    Ok(code) => Err(CliError::Config(format!("code {code} has no pseudo-symmetry generator"))),
                    Err(e) => Err(CliError::Config(e.to_string())),
                }
            })
            .collect()
    }
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect()
}
