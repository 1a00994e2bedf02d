//! Natural units (hbar = m = 1) and the complex momentum type.
//!
//! Every momentum handled by the library is expressed in units of
//! `p0 = sqrt(|V0|)` and every length in units of `L0 = 1 / p0`, where `V0`
//! is the reference potential strength. Parameters passed to the models are
//! therefore plain numbers; a reference strength of magnitude one makes the
//! natural and the scaled units coincide.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Momentum and length scales derived from a potential strength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    pub p0: f64,
    pub l0: f64,
}

impl Units {
    pub const HBAR: f64 = 1.0;
    pub const MASS: f64 = 1.0;

    pub fn from_strength(v0: f64) -> Result<Self> {
        if v0 == 0.0 || !v0.is_finite() {
            return Err(Error::ParameterDomain(format!("unit scale needs a finite nonzero V0, got {v0}")));
        }
        let p0 = (Self::MASS * v0.abs()).sqrt();
        Ok(Self { p0, l0: Self::HBAR / p0 })
    }

    /// Energy scale `p0^2 / m`, equal to `|V0|`.
    pub fn energy(&self) -> f64 {
        self.p0 * self.p0 / Self::MASS
    }
}

/// A finite complex momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMomentum(Complex64);

impl ComplexMomentum {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        Self::try_from(Complex64::new(re, im))
    }

    pub fn real(p: f64) -> Result<Self> {
        Self::new(p, 0.0)
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    /// Kinetic energy `q^2 / 2m` (complex in general).
    pub fn energy(self) -> Complex64 {
        self.0 * self.0 / (2.0 * Units::MASS)
    }

    /// Mirror image about the imaginary axis, `q -> -q*`.
    pub fn mirror(self) -> Self {
        Self(-self.0.conj())
    }
}

impl TryFrom<Complex64> for ComplexMomentum {
    type Error = Error;

    fn try_from(z: Complex64) -> Result<Self> {
        if z.re.is_finite() && z.im.is_finite() {
            Ok(Self(z))
        } else {
            Err(Error::InvalidInput(format!("non-finite momentum {z}")))
        }
    }
}

impl From<ComplexMomentum> for Complex64 {
    fn from(q: ComplexMomentum) -> Self {
        q.0
    }
}

impl fmt::Display for ComplexMomentum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scales_are_reciprocal() {
        for v0 in [1.0, -1.0, 0.25, 9.0, -3.7] {
            let u = Units::from_strength(v0).unwrap();
            assert!(u.p0 > 0.0);
            assert!((u.p0 * u.l0 - 1.0).abs() <= f64::EPSILON);
            assert!((u.energy() - v0.abs()).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_strength_has_no_scale() {
        assert!(matches!(Units::from_strength(0.0), Err(Error::ParameterDomain(_))));
    }

    #[test]
    fn rejects_nan() {
        assert!(ComplexMomentum::new(f64::NAN, 0.0).is_err());
        assert!(ComplexMomentum::new(0.0, f64::INFINITY).is_err());
        let q = ComplexMomentum::new(0.3, -0.2).unwrap();
        assert_eq!(q.mirror().value(), Complex64::new(-0.3, -0.2));
    }
}
