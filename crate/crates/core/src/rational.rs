//! Rational functions of one complex variable.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Shared numerator/denominator roots closer than this are cancelled.
pub const CANCEL_TOL: f64 = 1e-12;
/// Default exclusion radius around denominator roots.
pub const POLE_EXCLUSION: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
    /// Cached denominator roots used for pole-hit detection.
    poles: Vec<Complex64>,
}

impl RationalFunction {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvalidInput("denominator is identically zero".into()));
        }
        let poles = if denominator.degree() == 0 { Vec::new() } else { denominator.root_values()? };
        Ok(Self { numerator, denominator, poles })
    }

    /// Builds from a numerator and known denominator roots, skipping the root solve.
    pub fn with_poles(numerator: Polynomial, scale: Complex64, poles: Vec<Complex64>) -> Result<Self> {
        if scale == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidInput("denominator is identically zero".into()));
        }
        let denominator = Polynomial::from_roots(&poles).scale(scale);
        Ok(Self { numerator, denominator, poles })
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn poles(&self) -> &[Complex64] {
        &self.poles
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.eval_excluding(z, POLE_EXCLUSION)
    }

    /// Evaluates, failing with `PoleHit` within `radius` of a denominator root.
    pub fn eval_excluding(&self, z: Complex64, radius: f64) -> Result<Complex64> {
        if self.poles.iter().any(|&p| (p - z).norm() <= radius) {
            return Err(Error::PoleHit { at: z });
        }
        let d = self.denominator.eval(z);
        if d == Complex64::new(0.0, 0.0) {
            return Err(Error::PoleHit { at: z });
        }
        Ok(self.numerator.eval(z) / d)
    }

    /// Denominator evaluated as `leading * prod (z - pole)`, accurate next to its roots.
    pub fn denominator_factored(&self, z: Complex64) -> Complex64 {
        self.poles.iter().fold(self.denominator.leading(), |acc, &p| acc * (z - p))
    }

    /// `conj(f(conj z))`
    pub fn schwarz(&self) -> Self {
        Self {
            numerator: self.numerator.conj_coeffs(),
            denominator: self.denominator.conj_coeffs(),
            poles: self.poles.iter().map(|p| p.conj()).collect(),
        }
    }

    /// `f(-z)`
    pub fn reflect(&self) -> Self {
        Self {
            numerator: self.numerator.reflect(),
            denominator: self.denominator.reflect(),
            poles: self.poles.iter().map(|p| -p).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            numerator: &self.numerator * &other.numerator,
            denominator: &self.denominator * &other.denominator,
            poles: self.poles.iter().chain(&other.poles).copied().collect(),
        }
    }

    /// Cancels numerator/denominator root pairs closer than [`CANCEL_TOL`].
    pub fn reduce(&self) -> Result<Self> {
        if self.numerator.is_zero() {
            return Self::new(Polynomial::zero(), Polynomial::one());
        }
        if self.numerator.degree() == 0 || self.poles.is_empty() {
            return Ok(self.clone());
        }
        let zeros = self.numerator.root_values()?;
        let mut num = self.numerator.clone();
        let mut den = self.denominator.clone();
        let mut poles = self.poles.clone();
        let mut cancelled = false;
        for z in zeros {
            if let Some(idx) = poles.iter().position(|&p| (p - z).norm() < CANCEL_TOL) {
                let shared = 0.5 * (poles[idx] + z);
                num = num.deflate(shared).0;
                den = den.deflate(shared).0;
                poles.remove(idx);
                cancelled = true;
            }
        }
        if !cancelled {
            return Ok(self.clone());
        }
        Ok(Self { numerator: num, denominator: den, poles })
    }
}
