//! Subcommand implementations, each producing one table.

use num_complex::Complex64;
use rayon::prelude::*;

use smx_core::amplitudes::{
    amplitudes, check_generalized_unitarity, check_pam_relations, s_eigenvalues, ScatteringAmplitudes,
};
use smx_core::models::{Parameter, SeparableModel};
use smx_core::poles::{check_energy_pairing, check_mirror_symmetry, find_poles, trace_trajectory, PoleTrajectory};
use smx_core::pseudosym::{
    build_commuting_b, build_eta, build_tau, eta_residual, random_generic_hamiltonian, random_symmetric_hamiltonian,
    tau_residual, verify_conjugate_pairing,
};
use smx_core::symmetry::classify;
use smx_core::units::ComplexMomentum;

use crate::config::RunConfig;
use crate::error::{CliResult, NamedOp};
use crate::table::{complex_cells, complex_columns, Cell, Table};

pub const MOMENTUM: &str = "p0";
pub const ENERGY: &str = "|V0|";
pub const DIMENSIONLESS: &str = "1";

/// Residual bounds for the `verify` suites that are not configurable.
const UNITARITY_TOL: f64 = 1e-9;
const SUM_RULE_TOL: f64 = 1e-9;
const SECOND_EIGENVALUE_TOL: f64 = 1e-10;
const EIGENVALUE_RELATION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::Subcommand)]
pub enum Command {
    /// Transmission and reflection amplitudes of the model and its adjoint on the momentum grid
    Amplitudes,
    /// Nontrivial S-matrix eigenvalue on the momentum grid
    Eigenvalues,
    /// Classified core poles of the configured model
    Poles,
    /// Pole trajectories along the configured parameter sweep
    Trace,
    /// Residuals and verdicts for the eight kernel symmetries
    Classify,
    /// Pass/fail report of the exact identities and pole symmetries
    Verify,
    /// Pseudo-symmetry checks on seeded random matrix Hamiltonians
    Pseudosym,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::Amplitudes => "amplitudes",
            Self::Eigenvalues => "eigenvalues",
            Self::Poles => "poles",
            Self::Trace => "trace",
            Self::Classify => "classify",
            Self::Verify => "verify",
            Self::Pseudosym => "pseudosym",
        }
    }
}

/// A rendered table plus suites that failed, if the command checks anything.
pub struct Outcome {
    pub table: Table,
    pub failed: Vec<String>,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Self { table, failed: Vec::new() }
    }
}

pub fn run(command: Command, config: &RunConfig) -> CliResult<Outcome> {
    Ok(match command {
        Command::Amplitudes => amplitude_table(&config.model()?, &config.grid.points())?.into(),
        Command::Eigenvalues => eigenvalue_table(&config.model()?, &config.grid.points())?.into(),
        Command::Poles => pole_table(&config.model()?)?.into(),
        Command::Trace => {
            let model = config.model()?;
            let which = config.sweep_parameter()?;
            let s = &config.sweep;
            let t = trace_trajectory(&model, which, s.start, s.stop, s.steps).op("trace_trajectory")?;
            trajectory_table(&t).into()
        }
        Command::Classify => classify_table(&config.model()?, config.tolerances.symmetry)?.into(),
        Command::Verify => verify(&config.model()?, config)?,
        Command::Pseudosym => pseudosym_table(config)?.into(),
    })
}

fn real_momentum(p: f64) -> CliResult<ComplexMomentum> {
    ComplexMomentum::real(p).op("momentum")
}

fn amplitude_columns(table: &mut Vec<String>, suffix: &str) {
    for name in ["Tl", "Tr", "Rl", "Rr"] {
        table.extend(complex_columns(&format!("{name}{suffix}"), DIMENSIONLESS));
    }
    for name in ["Tl", "Tr", "Rl", "Rr"] {
        table.push(format!("|{name}{suffix}|^2 [{DIMENSIONLESS}]"));
    }
}

fn amplitude_cells(row: &mut Vec<Cell>, a: &ScatteringAmplitudes) {
    let values = [a.tl, a.tr, a.rl, a.rr];
    for z in values {
        row.extend(complex_cells(z));
    }
    for z in values {
        row.push(z.norm_sqr().into());
    }
}

pub fn amplitude_table(model: &SeparableModel, grid: &[f64]) -> CliResult<Table> {
    let mut columns = vec![format!("p [{MOMENTUM}]")];
    amplitude_columns(&mut columns, "");
    amplitude_columns(&mut columns, "_hat");
    let rows = grid
        .par_iter()
        .map(|&p| {
            let q = real_momentum(p)?;
            let direct = amplitudes(model, q, false).op("amplitudes")?;
            let hatted = amplitudes(model, q, true).op("amplitudes (adjoint)")?;
            let mut row = vec![Cell::Float(p)];
            amplitude_cells(&mut row, &direct);
            amplitude_cells(&mut row, &hatted);
            Ok(row)
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Table { columns, rows })
}

pub fn eigenvalue_table(model: &SeparableModel, grid: &[f64]) -> CliResult<Table> {
    let mut columns = vec![format!("p [{MOMENTUM}]")];
    columns.extend(complex_columns("S1", DIMENSIONLESS));
    columns.push(format!("|S1| [{DIMENSIONLESS}]"));
    columns.push(format!("S2 residual [{DIMENSIONLESS}]"));
    let rows = grid
        .par_iter()
        .map(|&p| {
            let a = amplitudes(model, real_momentum(p)?, false).op("amplitudes")?;
            let s = s_eigenvalues(&a).op("s_eigenvalues")?;
            let mut row = vec![Cell::Float(p)];
            row.extend(complex_cells(s.s1));
            row.push(s.s1.norm().into());
            row.push((s.s2 - 1.0).norm().into());
            Ok(row)
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Table { columns, rows })
}

pub fn pole_table(model: &SeparableModel) -> CliResult<Table> {
    let mut columns: Vec<String> = complex_columns("q", MOMENTUM).into();
    columns.extend(complex_columns("E", ENERGY));
    columns.extend(["class".into(), format!("residual [{DIMENSIONLESS}]"), "multiple".into()]);
    let mut table = Table::new(columns);
    for pole in find_poles(model).op("find_poles")? {
        let mut row: Vec<Cell> = complex_cells(pole.q.value()).into();
        row.extend(complex_cells(pole.energy));
        row.extend([pole.class.name().into(), pole.residual.into(), pole.multiplicity_flag.into()]);
        table.push(row);
    }
    Ok(table)
}

fn parameter_column(which: Parameter) -> String {
    let unit = match which {
        Parameter::V0 => ENERGY,
        Parameter::A | Parameter::B => MOMENTUM,
    };
    format!("{} [{unit}]", which.name())
}

/// Long format: one row per sample and track. A row is flagged when its
/// sample is the one closest to a detected collision involving its track.
pub fn trajectory_table(t: &PoleTrajectory) -> Table {
    let mut columns = vec![parameter_column(t.parameter), "track".to_string()];
    columns.extend(complex_columns("q", MOMENTUM));
    columns.extend(["class".into(), "collision".into()]);
    let mut flagged = vec![Vec::new(); t.samples.len()];
    for c in &t.collisions {
        let nearest = (0..t.samples.len())
            .min_by(|&i, &j| (t.samples[i].value - c.value).abs().total_cmp(&(t.samples[j].value - c.value).abs()))
            .expect("trajectory has samples");
        flagged[nearest].extend([c.tracks.0, c.tracks.1]);
    }
    let mut table = Table::new(columns);
    for (sample, flags) in t.samples.iter().zip(&flagged) {
        for (track, pole) in sample.poles.iter().enumerate() {
            let mut row = vec![Cell::Float(sample.value), track.into()];
            row.extend(complex_cells(pole.q.value()));
            row.extend([pole.class.name().into(), flags.contains(&track).into()]);
            table.push(row);
        }
    }
    table
}

pub fn classify_table(model: &SeparableModel, threshold: f64) -> CliResult<Table> {
    let report = classify(model, threshold).op("classify")?;
    let mut table =
        Table::new(["code".to_string(), "operation".into(), format!("residual [{DIMENSIONLESS}]"), "verdict".into()]);
    for (code, residual, verdict) in report.entries {
        table.push(vec![code.name().into(), code.superop().label().into(), residual.into(), verdict.into()]);
    }
    Ok(table)
}

/// Off-axis momenta for the eigenvalue relations, on both sides of the real axis.
fn off_axis_points() -> Vec<Complex64> {
    (0..20)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            Complex64::new(0.2 + 0.14 * k as f64, sign * (0.1 + 0.04 * k as f64))
        })
        .collect()
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

pub fn verify(model: &SeparableModel, config: &RunConfig) -> CliResult<Outcome> {
    let grid = config.grid.points();
    let per_p = grid
        .par_iter()
        .map(|&p| {
            let unitarity = max_of(check_generalized_unitarity(model, p).op("check_generalized_unitarity")?);
            let a = amplitudes(model, real_momentum(p)?, false).op("amplitudes")?;
            let s2 = (s_eigenvalues(&a).op("s_eigenvalues")?.s2 - 1.0).norm();
            Ok([unitarity, a.sum_rule_residual(), s2])
        })
        .collect::<CliResult<Vec<_>>>()?;
    let relations = off_axis_points()
        .par_iter()
        .map(|z| {
            let q = ComplexMomentum::new(z.re, z.im).op("momentum")?;
            Ok(max_of(check_pam_relations(model, q).op("check_pam_relations")?))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let poles = find_poles(model).op("find_poles")?;
    let pole_tol = config.tolerances.pole;
    let suites = [
        ("generalized unitarity", max_of(per_p.iter().map(|r| r[0])), UNITARITY_TOL),
        ("sum rule", max_of(per_p.iter().map(|r| r[1])), SUM_RULE_TOL),
        ("second eigenvalue", max_of(per_p.iter().map(|r| r[2])), SECOND_EIGENVALUE_TOL),
        ("eigenvalue relations", max_of(relations), EIGENVALUE_RELATION_TOL),
        ("mirror symmetry", check_mirror_symmetry(&poles, pole_tol).max_mismatch, pole_tol),
        ("energy pairing", check_energy_pairing(&poles, pole_tol).max_mismatch, pole_tol),
    ];
    let mut table = Table::new([
        "suite".to_string(),
        format!("max residual [{DIMENSIONLESS}]"),
        format!("tolerance [{DIMENSIONLESS}]"),
        "pass".into(),
    ]);
    let mut failed = Vec::new();
    for (name, residual, tol) in suites {
        let pass = residual < tol;
        if !pass {
            failed.push(name.to_string());
        }
        table.push(vec![name.into(), residual.into(), tol.into(), pass.into()]);
    }
    Ok(Outcome { table, failed })
}

pub fn pseudosym_table(config: &RunConfig) -> CliResult<Table> {
    let codes = config.pseudosym_codes()?;
    let n = config.pseudosym.dim;
    let tol = config.pseudosym.pairing_tol;
    let jobs: Vec<_> = codes
        .iter()
        .flat_map(|&code| (0..config.pseudosym.seeds).map(move |k| (code, config.seed.wrapping_add(k))))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(code, seed)| {
            let system = match code {
                Some(code) => random_symmetric_hamiltonian(code, n, seed).op("random_symmetric_hamiltonian")?,
                None => random_generic_hamiltonian(n, seed).op("random_generic_hamiltonian")?,
            };
            let paired = verify_conjugate_pairing(&system, tol);
            let (b, tau, eta) = if paired && code.is_some() {
                let tau = build_tau(&system).op("build_tau")?;
                let eta = build_eta(&system).op("build_eta")?;
                let b = build_commuting_b(&system).op("build_commuting_b")?;
                (b.commutator_residual(&system.h), tau_residual(&system, &tau), eta_residual(&system, &eta))
            } else {
                (f64::NAN, f64::NAN, f64::NAN)
            };
            let label = code.map_or("generic", |c| c.name());
            Ok(vec![label.into(), n.into(), seed.into(), paired.into(), b.into(), tau.into(), eta.into()])
        })
        .collect::<CliResult<Vec<_>>>()?;
    let r = |name: &str| format!("{name} residual [{DIMENSIONLESS}]");
    Ok(Table {
        columns: vec!["code".into(), "n".into(), "seed".into(), "pairing ok".into(), r("B"), r("tau"), r("eta")],
        rows,
    })
}
