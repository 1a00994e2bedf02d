//! Separable potentials `V = V0 |phi><chi|` and their free-resolvent overlaps.
//!
//! Two closed-form families are built in, a time-reversal symmetric one and a
//! parity pseudo-Hermitian one, plus a custom kind that accepts arbitrary
//! rational form factors.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::formfactor::{resolvent_overlap, FormFactor};
use crate::poly::Polynomial;
use crate::quadrature::{integrate_real_line, QuadConfig};
use crate::rational::RationalFunction;
use crate::units::ComplexMomentum;

/// Evaluation points closer than this to a resolvent pole are rejected.
pub const RESOLVENT_EXCLUSION: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    TimeReversalSymmetric,
    ParityPseudoHermitian,
    CustomRational,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::TimeReversalSymmetric => "tr",
            Self::ParityPseudoHermitian => "parity",
            Self::CustomRational => "custom",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tr" | "time-reversal" | "timereversalsymmetric" => Ok(Self::TimeReversalSymmetric),
            "parity" | "p" | "paritypseudohermitian" => Ok(Self::ParityPseudoHermitian),
            "custom" | "customrational" => Ok(Self::CustomRational),
            other => Err(Error::InvalidInput(format!("unknown model kind '{other}'"))),
        }
    }
}

/// Which model parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parameter {
    V0,
    A,
    B,
}

impl Parameter {
    pub fn name(self) -> &'static str {
        match self {
            Self::V0 => "V0",
            Self::A => "a",
            Self::B => "b",
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Parameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "V0" | "v0" => Ok(Self::V0),
            "a" | "A" => Ok(Self::A),
            "b" | "B" => Ok(Self::B),
            other => Err(Error::InvalidInput(format!("unknown parameter '{other}'"))),
        }
    }
}

/// A rank-one potential with its form factors and resolvent overlap
/// `Q0(q) = <chi|(q^2/2 - H0)^{-1}|phi>` stored as a rational function.
///
/// `a` and `b` are zero for custom models. `hatted` marks the adjoint
/// potential `V0 |chi><phi|`, obtained through [`SeparableModel::adjoint`].
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableModel {
    pub kind: ModelKind,
    pub v0: f64,
    pub a: f64,
    pub b: f64,
    pub phi_p: FormFactor,
    pub chi_p: FormFactor,
    q0: RationalFunction,
    hatted: bool,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::ParameterDomain(format!("{name} must be finite, got {v}")))
    }
}

fn tr_form_factors(a: f64, b: f64) -> Result<(FormFactor, FormFactor)> {
    let chi = FormFactor::simple(c((2.0 * a.powi(3) / PI).sqrt(), 0.0), &[c(0.0, -a), c(0.0, a)])?;
    let phi_scale = (a * b / (PI * (a + b))).sqrt() * (a + b);
    let phi = FormFactor::simple(c(phi_scale, 0.0), &[c(0.0, -a), c(0.0, b)])?;
    Ok((phi, chi))
}

fn parity_form_factors(a: f64, b: f64) -> Result<(FormFactor, FormFactor)> {
    let scale = c(2.0 * a, b) * (a / (2.0 * PI)).sqrt();
    let chi = FormFactor::simple(scale, &[c(0.0, -a), c(-b, a)])?;
    let phi = FormFactor::simple(scale, &[c(0.0, a), c(b, -a)])?;
    Ok((phi, chi))
}

fn tr_resolvent(a: f64, b: f64) -> Result<RationalFunction> {
    let pre = c(0.0, -(2.0 * b).sqrt());
    let numerator = Polynomial::new(vec![
        pre * (2.0 * a * (a + b).powi(2)),
        pre * c(0.0, -(2.0 * a + b) * (3.0 * a + b)),
        pre * -(3.0 * a + b),
    ]);
    let scale = c(0.0, (a + b).powf(1.5));
    RationalFunction::with_poles(numerator, scale, vec![c(0.0, 0.0), c(0.0, -a), c(0.0, -a), c(0.0, -b)])
}

fn parity_resolvent(a: f64, b: f64) -> Result<RationalFunction> {
    let s = 4.0 * a * a + b * b;
    let numerator = Polynomial::new(vec![
        c(0.0, -a * s * s),
        c(-4.0 * a * a * (10.0 * a * a + b * b), 0.0),
        c(0.0, 32.0 * a.powi(3)),
        c(8.0 * a * a, 0.0),
    ]);
    RationalFunction::with_poles(numerator, c(s, 0.0), vec![c(0.0, 0.0), c(0.0, -a), c(0.0, -a), c(-b, -a), c(b, -a)])
}

/// Builds one of the closed-form models, or rejects parameters outside its domain.
///
/// `V0 = 0` is allowed (free motion); it has no natural unit scale.
pub fn make_model(kind: ModelKind, v0: f64, a: f64, b: f64) -> Result<SeparableModel> {
    check_finite("V0", v0)?;
    check_finite("a", a)?;
    check_finite("b", b)?;
    if a <= 0.0 {
        return Err(Error::ParameterDomain(format!("a must be positive, got {a}")));
    }
    let (phi_p, chi_p, q0) = match kind {
        ModelKind::TimeReversalSymmetric => {
            if b <= 0.0 {
                return Err(Error::ParameterDomain(format!("b must be positive for the TR model, got {b}")));
            }
            let (phi, chi) = tr_form_factors(a, b)?;
            (phi, chi, tr_resolvent(a, b)?)
        }
        ModelKind::ParityPseudoHermitian => {
            let (phi, chi) = parity_form_factors(a, b)?;
            (phi, chi, parity_resolvent(a, b)?)
        }
        ModelKind::CustomRational => {
            return Err(Error::InvalidInput("custom models are built with SeparableModel::custom".into()))
        }
    };
    Ok(SeparableModel { kind, v0, a, b, phi_p, chi_p, q0, hatted: false })
}

impl SeparableModel {
    /// Custom model from rational form factors; normalization is the caller's.
    pub fn custom(v0: f64, phi_p: FormFactor, chi_p: FormFactor) -> Result<Self> {
        check_finite("V0", v0)?;
        let q0 = resolvent_overlap(&chi_p, &phi_p)?;
        Ok(Self { kind: ModelKind::CustomRational, v0, a: 0.0, b: 0.0, phi_p, chi_p, q0, hatted: false })
    }

    /// TR form factors with the `+ib` pole of `phi` moved to `ib + shift`.
    ///
    /// A shift with nonzero real part breaks every symmetry that forces mirror
    /// symmetric poles.
    pub fn shifted_tr(v0: f64, a: f64, b: f64, shift: Complex64) -> Result<Self> {
        make_model(ModelKind::TimeReversalSymmetric, v0, a, b)?;
        let (_, chi) = tr_form_factors(a, b)?;
        let moved = FormFactor::simple(c(1.0, 0.0), &[c(0.0, -a), c(0.0, b) + shift])?.normalized();
        Self::custom(v0, moved, chi)
    }

    pub fn is_hatted(&self) -> bool {
        self.hatted
    }

    /// `Q0` as a rational function of the complex momentum.
    pub fn resolvent(&self) -> &RationalFunction {
        &self.q0
    }

    /// The model for `H^dagger`: `V0 |chi><phi|`.
    pub fn adjoint(&self) -> Self {
        Self {
            kind: self.kind,
            v0: self.v0,
            a: self.a,
            b: self.b,
            phi_p: self.chi_p.clone(),
            chi_p: self.phi_p.clone(),
            q0: self.q0.schwarz().reflect(),
            hatted: !self.hatted,
        }
    }

    /// Same model with one parameter replaced.
    pub fn with_parameter(&self, which: Parameter, value: f64) -> Result<Self> {
        if which == Parameter::V0 {
            check_finite("V0", value)?;
            return Ok(Self { v0: value, ..self.clone() });
        }
        if self.kind == ModelKind::CustomRational {
            return Err(Error::InvalidInput(format!("custom models have no parameter {which}")));
        }
        let (a, b) = match which {
            Parameter::A => (value, self.b),
            _ => (self.a, value),
        };
        let m = make_model(self.kind, self.v0, a, b)?;
        Ok(if self.hatted { m.adjoint() } else { m })
    }

    pub fn parameter(&self, which: Parameter) -> f64 {
        match which {
            Parameter::V0 => self.v0,
            Parameter::A => self.a,
            Parameter::B => self.b,
        }
    }

    /// `<x|phi>`
    pub fn phi_x(&self, x: f64) -> Complex64 {
        self.phi_p.coordinate(x)
    }

    /// `<x|chi>`
    pub fn chi_x(&self, x: f64) -> Complex64 {
        self.chi_p.coordinate(x)
    }

    /// `<x|V|y>`
    pub fn kernel_xy(&self, x: f64, y: f64) -> Complex64 {
        if self.hatted {
            let base = Self { hatted: false, ..self.adjoint() };
            return base.kernel_xy(y, x).conj();
        }
        let (a, b, v0) = (self.a, self.b, self.v0);
        match self.kind {
            ModelKind::TimeReversalSymmetric => {
                let pre = v0 * (2.0 * a * a * b / (a + b)).sqrt();
                let e = if x >= 0.0 { -(a * y.abs() + b * x) } else { a * (x - y.abs()) };
                c(pre * e.exp(), 0.0)
            }
            ModelKind::ParityPseudoHermitian => {
                let pre = c(a * v0, 0.0);
                let ib = c(0.0, b);
                let arg = match (x >= 0.0, y >= 0.0) {
                    (true, true) => c(-a * (x + y), 0.0) + ib * y,
                    (true, false) => c(a * (y - x), 0.0),
                    (false, true) => c(a * (x - y), 0.0) + ib * (x + y),
                    (false, false) => c(a * (x + y), 0.0) + ib * x,
                };
                pre * arg.exp()
            }
            ModelKind::CustomRational => self.phi_x(x) * self.chi_x(y).conj() * v0,
        }
    }

    /// Slowest spatial decay rate of the kernel.
    pub fn decay_rate(&self) -> f64 {
        self.phi_p.decay_rate().min(self.chi_p.decay_rate())
    }

    /// `Q0(q)` from the rational closed form, valid on the whole `q` plane.
    pub fn q0_closed(&self, q: ComplexMomentum) -> Result<Complex64> {
        self.q0.eval_excluding(q.value(), RESOLVENT_EXCLUSION)
    }

    /// `Q0(E)` by quadrature over real momenta, for `E` off the non-negative real axis.
    pub fn q0_quadrature(&self, energy: Complex64, cfg: &QuadConfig) -> Result<Complex64> {
        if energy.im == 0.0 && energy.re >= 0.0 {
            return Err(Error::InvalidInput("quadrature integrand is singular for real E >= 0".into()));
        }
        let r = integrate_real_line(
            |p| {
                let pc = c(p, 0.0);
                self.chi_p.eval(pc).conj() * self.phi_p.eval(pc) / (energy - 0.5 * p * p)
            },
            cfg,
        )?;
        Ok(r.value)
    }

    /// `Q0` rebuilt from the form factors by residues, independent of the closed form.
    pub fn q0_from_residues(&self) -> Result<RationalFunction> {
        resolvent_overlap(&self.chi_p, &self.phi_p)
    }
}

/// Complex energy paired with its physical-sheet momentum (`Im q >= 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyPoint {
    pub energy: Complex64,
    pub q: ComplexMomentum,
}

impl EnergyPoint {
    pub fn from_energy(energy: Complex64) -> Result<Self> {
        let mut q = (2.0 * energy).sqrt();
        if q.im < 0.0 || (q.im == 0.0 && q.re < 0.0) {
            q = -q;
        }
        Ok(Self { energy, q: ComplexMomentum::new(q.re, q.im)? })
    }

    pub fn from_momentum(q: ComplexMomentum) -> Result<Self> {
        if q.im() < 0.0 {
            return Err(Error::InvalidInput(format!("momentum {q} is not on the physical sheet")));
        }
        Ok(Self { energy: q.energy(), q })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tr() -> SeparableModel {
        make_model(ModelKind::TimeReversalSymmetric, 1.0, 1.0, 0.5).unwrap()
    }

    fn parity() -> SeparableModel {
        make_model(ModelKind::ParityPseudoHermitian, 1.0, 0.5, 0.5).unwrap()
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(make_model(ModelKind::TimeReversalSymmetric, 1.0, 0.0, 1.0), Err(Error::ParameterDomain(_))));
        assert!(matches!(make_model(ModelKind::TimeReversalSymmetric, 1.0, 1.0, -0.1), Err(Error::ParameterDomain(_))));
        assert!(make_model(ModelKind::ParityPseudoHermitian, 1.0, 1.0, -0.1).is_ok());
        assert!(make_model(ModelKind::ParityPseudoHermitian, f64::NAN, 1.0, 0.1).is_err());
    }

    #[test]
    fn form_factors_are_normalized() {
        for m in [tr(), parity()] {
            assert!((m.phi_p.norm_sq() - 1.0).abs() < 1e-12);
            assert!((m.chi_p.norm_sq() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn tr_pole_locations() {
        let m = tr();
        let phi: Vec<Complex64> = m.phi_p.poles().iter().map(|p| p.0).collect();
        let chi: Vec<Complex64> = m.chi_p.poles().iter().map(|p| p.0).collect();
        assert_eq!(phi, vec![c(0.0, -1.0), c(0.0, 0.5)]);
        assert_eq!(chi, vec![c(0.0, -1.0), c(0.0, 1.0)]);
    }

    #[test]
    fn kernel_prefactor_at_origin() {
        let k = tr().kernel_xy(1e-300, 0.0);
        assert!((k.re - (2.0 * 0.5 / 1.5_f64).sqrt()).abs() < 1e-14 && k.im == 0.0);
    }

    #[test]
    fn kernel_matches_wavefunctions() {
        for m in [tr(), parity(), make_model(ModelKind::ParityPseudoHermitian, -0.7, 1.3, -0.4).unwrap()] {
            for x in [-3.0, -0.4, 0.2, 1.7] {
                for y in [-2.2, -0.1, 0.6, 2.5] {
                    let direct = m.kernel_xy(x, y);
                    let product = m.phi_x(x) * m.chi_x(y).conj() * m.v0;
                    assert!((direct - product).norm() < 1e-12, "{x} {y}: {direct} vs {product}");
                }
            }
        }
    }

    #[test]
    fn parity_b_zero_form_factors_coincide() {
        let m = make_model(ModelKind::ParityPseudoHermitian, 1.0, 0.7, 0.0).unwrap();
        assert_eq!(m.phi_p, m.chi_p);
    }

    #[test]
    fn closed_resolvent_matches_residue_construction() {
        for m in [tr(), parity(), make_model(ModelKind::ParityPseudoHermitian, 1.0, 2.0, -1.3).unwrap()] {
            let r = m.q0_from_residues().unwrap();
            for q in [c(0.3, 0.2), c(-1.1, -0.4), c(2.0, 0.0), c(0.0, 0.3)] {
                let a = m.q0_closed(ComplexMomentum::new(q.re, q.im).unwrap()).unwrap();
                let b = r.eval(q).unwrap();
                assert!((a - b).norm() < 1e-11 * a.norm().max(1.0), "{q}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn quadrature_oracle_at_imaginary_momentum() {
        let m = tr();
        let q = ComplexMomentum::new(0.0, 0.3).unwrap();
        let quad = m.q0_quadrature(q.energy(), &QuadConfig::default()).unwrap();
        assert!((quad - m.q0_closed(q).unwrap()).norm() < 1e-6);

        let m = parity();
        let e = EnergyPoint::from_energy(c(-0.5, 0.2)).unwrap();
        let quad = m.q0_quadrature(e.energy, &QuadConfig::default()).unwrap();
        assert!((quad - m.q0_closed(e.q).unwrap()).norm() < 1e-6);
    }

    #[test]
    fn resolvent_pole_hit() {
        let m = tr();
        for q in [c(0.0, 0.0), c(0.0, -1.0), c(0.0, -0.5)] {
            assert!(matches!(m.q0_closed(ComplexMomentum::new(q.re, q.im).unwrap()), Err(Error::PoleHit { .. })));
        }
    }

    #[test]
    fn adjoint_is_involution_and_swaps_kernel() {
        let m = parity();
        let h = m.adjoint();
        assert!(h.is_hatted());
        assert_eq!(h.adjoint().q0, m.q0);
        for (x, y) in [(0.3, -1.2), (-0.7, 0.4)] {
            assert!((h.kernel_xy(x, y) - m.kernel_xy(y, x).conj()).norm() < 1e-15);
            let via_wavefunctions = h.phi_x(x) * h.chi_x(y).conj() * h.v0;
            assert!((h.kernel_xy(x, y) - via_wavefunctions).norm() < 1e-12);
        }
        let residues = h.q0_from_residues().unwrap();
        let q = c(0.4, 0.3);
        assert!((residues.eval(q).unwrap() - h.resolvent().eval(q).unwrap()).norm() < 1e-11);
    }

    #[test]
    fn energy_point_branch() {
        let e = EnergyPoint::from_energy(c(-0.5, -0.2)).unwrap();
        assert!(e.q.im() > 0.0);
        assert!((e.q.value() * e.q.value() - 2.0 * e.energy).norm() < 1e-12);
        assert!(EnergyPoint::from_momentum(ComplexMomentum::new(0.1, -0.1).unwrap()).is_err());
    }

    #[test]
    fn with_parameter_rebuilds() {
        let m = tr().with_parameter(Parameter::A, 2.0).unwrap();
        assert_eq!(m.a, 2.0);
        assert!(tr().with_parameter(Parameter::B, -1.0).is_err());
        assert_eq!(tr().with_parameter(Parameter::V0, -3.0).unwrap().v0, -3.0);
    }
}
