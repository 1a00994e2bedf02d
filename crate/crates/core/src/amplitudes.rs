//! Scattering amplitudes, S-matrix eigenvalues and the identities linking a
//! model to its adjoint.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::models::SeparableModel;
use crate::units::ComplexMomentum;

/// `|1 - V0 Q0|` below this (relative to `max(1, |V0 Q0|)`) is a core pole.
pub const CORE_POLE_TOL: f64 = 1e-12;
/// Agreement required between the quadratic and the `Gamma` eigenvalue forms.
pub const BRANCH_TOL: f64 = 1e-9;
/// Discriminant magnitude treated as a coalescence of the two eigenvalues.
pub const DEGENERATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringAmplitudes {
    pub p: ComplexMomentum,
    pub tl: Complex64,
    pub tr: Complex64,
    pub rl: Complex64,
    pub rr: Complex64,
    pub hatted: bool,
}

impl ScatteringAmplitudes {
    /// `|Tl + Tr - Tl Tr + Rl Rr - 1|`
    pub fn sum_rule_residual(&self) -> f64 {
        (self.tl + self.tr - self.tl * self.tr + self.rl * self.rr - 1.0).norm()
    }

    pub fn is_finite(&self) -> bool {
        [self.tl, self.tr, self.rl, self.rr].iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SMatrixEigenvalues {
    pub p: ComplexMomentum,
    pub s1: Complex64,
    pub s2: Complex64,
    pub gamma: Complex64,
    /// The quadratic-formula roots, ordered to pair with `(s1, s2)`.
    pub quadratic: [Complex64; 2],
    /// The two eigenvalues coalesce.
    pub degenerate: bool,
}

/// `alpha = V0 / (1 - V0 Q0(q))`
pub fn alpha(model: &SeparableModel, q: ComplexMomentum) -> Result<Complex64> {
    let vq = model.v0 * model.q0_closed(q)?;
    let denom = 1.0 - vq;
    if denom.norm() < CORE_POLE_TOL * vq.norm().max(1.0) {
        return Err(Error::CorePole { at: q.value(), residual: denom.norm() });
    }
    Ok(model.v0 / denom)
}

/// The four amplitudes at momentum `p`; `hatted` selects the adjoint potential.
pub fn amplitudes(model: &SeparableModel, p: ComplexMomentum, hatted: bool) -> Result<ScatteringAmplitudes> {
    if p.value() == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroMomentum);
    }
    let adjoint;
    let m = if hatted {
        adjoint = model.adjoint();
        &adjoint
    } else {
        model
    };
    let z = p.value();
    let k = Complex64::new(0.0, 2.0 * PI) / z;
    let ka = k * alpha(m, p)?;
    let phi = |s: Complex64| m.phi_p.eval(s);
    let chi_bar = |s: Complex64| m.chi_p.eval(s.conj()).conj();
    Ok(ScatteringAmplitudes {
        p,
        tl: 1.0 - ka * phi(z) * chi_bar(z),
        tr: 1.0 - ka * phi(-z) * chi_bar(-z),
        rl: -ka * phi(-z) * chi_bar(z),
        rr: -ka * phi(z) * chi_bar(-z),
        hatted: hatted != model.is_hatted(),
    })
}

/// S-matrix eigenvalues from the amplitudes, cross-checked against the quadratic form.
pub fn s_eigenvalues(amps: &ScatteringAmplitudes) -> Result<SMatrixEigenvalues> {
    if !amps.is_finite() {
        return Err(Error::InvalidInput("amplitudes are not finite".into()));
    }
    let one = Complex64::new(1.0, 0.0);
    let gamma = 2.0 - amps.tl - amps.tr;
    let s1 = one - gamma;
    let s2 = one;

    let disc = (amps.tl - amps.tr).powi(2) + 4.0 * amps.rl * amps.rr;
    let root = disc.sqrt();
    let half_trace = 0.5 * (amps.tl + amps.tr);
    let plus = half_trace + 0.5 * root;
    let minus = half_trace - 0.5 * root;
    let straight = (plus - s1).norm().max((minus - s2).norm());
    let swapped = (minus - s1).norm().max((plus - s2).norm());
    let (quadratic, mismatch) = if straight <= swapped { ([plus, minus], straight) } else { ([minus, plus], swapped) };
    let scale = [amps.tl, amps.tr, amps.rl, amps.rr].iter().map(|z| z.norm()).fold(1.0, f64::max);
    if mismatch > BRANCH_TOL * scale {
        return Err(Error::BranchMismatch { mismatch });
    }
    Ok(SMatrixEigenvalues {
        p: amps.p,
        s1,
        s2,
        gamma,
        quadratic,
        degenerate: disc.norm() < DEGENERATE_TOL * scale * scale,
    })
}

/// Nontrivial eigenvalue `S1` at `q` for the model or its adjoint.
pub fn s1(model: &SeparableModel, q: ComplexMomentum, hatted: bool) -> Result<Complex64> {
    Ok(s_eigenvalues(&amplitudes(model, q, hatted)?)?.s1)
}

/// `S1(0+)` extrapolated from `p = 1e-3` and `p = 1e-4` with one Richardson step.
pub fn s1_zero_limit(model: &SeparableModel) -> Result<Complex64> {
    let coarse = s1(model, ComplexMomentum::real(1e-3)?, false)?;
    let fine = s1(model, ComplexMomentum::real(1e-4)?, false)?;
    Ok(fine + (fine - coarse) / 9.0)
}

/// Residuals of the generalized unitarity relations at real `p`.
pub fn check_generalized_unitarity(model: &SeparableModel, p: f64) -> Result<[f64; 4]> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidInput(format!("unitarity check needs real p > 0, got {p}")));
    }
    let q = ComplexMomentum::real(p)?;
    let a = amplitudes(model, q, false)?;
    let h = amplitudes(model, q, true)?;
    Ok([
        (h.tl * a.tl.conj() + h.rl * a.rl.conj() - 1.0).norm(),
        (h.tr * a.tr.conj() + h.rr * a.rr.conj() - 1.0).norm(),
        (h.tl.conj() * a.rr + a.tr * h.rl.conj()).norm(),
        (a.tl * h.rr.conj() + h.tr.conj() * a.rl).norm(),
    ])
}

/// Residuals of the eigenvalue relations under `q -> -q*`, `q -> q*` and `q -> -q`.
pub fn check_pam_relations(model: &SeparableModel, q: ComplexMomentum) -> Result<[f64; 3]> {
    let z = q.value();
    let at = |w: Complex64| ComplexMomentum::new(w.re, w.im);
    let s = s1(model, q, false)?;
    let hat_mirror = s1(model, at(-z.conj())?, true)?;
    let hat_conj = s1(model, at(z.conj())?, true)?;
    let reflected = s1(model, at(-z)?, false)?;
    Ok([(s - hat_mirror.conj()).norm(), (hat_conj.conj() * s - 1.0).norm(), (s * reflected - 1.0).norm()])
}
