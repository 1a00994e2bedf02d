//! Dense univariate polynomials with complex coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Leading coefficients below this magnitude cannot be normalized.
pub const MIN_LEADING: f64 = 1e-14;
/// Roots closer than this are flagged as a multiple-root cluster.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Target backward error of a polished root.
pub const POLISH_TOL: f64 = 1e-12;

const POLISH_MAX_ITER: usize = 50;
const MULTIPLE_SPLIT_TOL: f64 = 1e-6;

/// Polynomial stored lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

/// A polished root together with its multiplicity flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: Complex64,
    /// Another root lies within [`CLUSTER_TOL`].
    pub clustered: bool,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![Complex64::new(0.0, 0.0)] }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// `z - root`
    pub fn linear(root: Complex64) -> Self {
        Self::new(vec![-root, Complex64::new(1.0, 0.0)])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        roots.iter().fold(Self::one(), |acc, &r| &acc * &Self::linear(r))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    /// Largest coefficient magnitude.
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && *self.coeffs.last().unwrap() == Complex64::new(0.0, 0.0) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(Complex64::new(0.0, 0.0));
        }
    }

    /// Drops trailing coefficients below `tol * max_coeff`.
    pub fn trimmed(&self, tol: f64) -> Self {
        let cut = tol * self.max_coeff();
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() > 1 && coeffs.last().unwrap().norm() <= cut {
            coeffs.pop();
        }
        Self::new(coeffs)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let mut p = zero;
        let mut dp = zero;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `sum |c_k| |z|^k`, the scale against which rounding in `eval` is measured.
    pub fn eval_abs(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Conjugated coefficients: the polynomial `conj(p(conj z))`.
    pub fn conj_coeffs(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    /// `p(-z)`
    pub fn reflect(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(k, &c)| if k % 2 == 1 { -c } else { c }).collect())
    }

    pub fn powi(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Coefficients of `p(center + t)` as a polynomial in `t`.
    pub fn taylor_shift(&self, center: Complex64) -> Self {
        // repeated synthetic division
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let hi = c[j + 1];
                c[j] += center * hi;
            }
        }
        Self::new(c)
    }

    /// Quotient and remainder of division by `z - root`.
    pub fn deflate(&self, root: Complex64) -> (Self, Complex64) {
        let n = self.coeffs.len();
        if n == 1 {
            return (Self::zero(), self.coeffs[0]);
        }
        let mut q = vec![Complex64::new(0.0, 0.0); n - 1];
        let mut acc = self.coeffs[n - 1];
        for k in (0..n - 1).rev() {
            q[k] = acc;
            acc = self.coeffs[k] + acc * root;
        }
        (Self::new(q), acc)
    }

    /// Roots with multiplicity, computed as eigenvalues of the companion
    /// matrix of the monic normalization and then Newton-polished.
    pub fn roots(&self) -> Result<Vec<Root>> {
        let deg = self.degree();
        if deg == 0 {
            return Err(Error::InvalidInput("polynomial of degree 0 has no roots".into()));
        }
        let lead = self.leading();
        if lead.norm() <= MIN_LEADING {
            return Err(Error::DegenerateLeadingCoefficient);
        }
        // exact zero roots are split off so the relative backward error stays meaningful
        let zeros = self.coeffs.iter().take_while(|c| **c == Complex64::new(0.0, 0.0)).count();
        let reduced = Self::new(self.coeffs[zeros..].to_vec());
        let monic: Vec<Complex64> = reduced.coeffs.iter().map(|&c| c / lead).collect();
        let deg = reduced.degree();

        let raw: Vec<Complex64> = if deg == 0 {
            Vec::new()
        } else if deg == 1 {
            vec![-monic[0]]
        } else {
            let mut m = CMatrix::zeros(deg, deg);
            for i in 1..deg {
                m[(i, i - 1)] = Complex64::new(1.0, 0.0);
            }
            for i in 0..deg {
                m[(i, deg - 1)] = -monic[i];
            }
            linalg::eigenvalues(&m)?
        };

        let mut polished = vec![Complex64::new(0.0, 0.0); zeros];
        for z0 in raw {
            polished.push(reduced.polish(z0)?);
        }
        let roots = polished
            .iter()
            .enumerate()
            .map(|(i, &z)| Root {
                value: z,
                clustered: polished.iter().enumerate().any(|(j, &w)| i != j && self.is_multiple_pair(z, w)),
            })
            .collect();
        Ok(roots)
    }

    /// Root values only.
    pub fn root_values(&self) -> Result<Vec<Complex64>> {
        Ok(self.roots()?.into_iter().map(|r| r.value).collect())
    }

    /// Relative backward error `|p(z)| / sum |c_k| |z|^k`.
    pub fn backward_error(&self, z: Complex64) -> f64 {
        let scale = self.eval_abs(z);
        if scale == 0.0 {
            0.0
        } else {
            self.eval(z).norm() / scale
        }
    }

    /// Two roots form a cluster when they are closer than [`CLUSTER_TOL`], or
    /// when they are split only by rounding: a multiple root separates by
    /// roughly `sqrt(eps)` while its midpoint stays a root of the derivative.
    fn is_multiple_pair(&self, z: Complex64, w: Complex64) -> bool {
        let gap = (z - w).norm();
        if gap < CLUSTER_TOL {
            return true;
        }
        gap < MULTIPLE_SPLIT_TOL && self.derivative().backward_error(0.5 * (z + w)) < POLISH_TOL
    }

    fn polish(&self, z0: Complex64) -> Result<Complex64> {
        let mut best = z0;
        let mut best_err = self.backward_error(z0);
        let mut z = z0;
        for _ in 0..POLISH_MAX_ITER {
            if best_err <= f64::EPSILON {
                break;
            }
            let (p, dp) = self.eval_with_derivative(z);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            z -= step;
            if !(z.re.is_finite() && z.im.is_finite()) {
                break;
            }
            let err = self.backward_error(z);
            if err < best_err {
                best = z;
                best_err = err;
            } else if step.norm() <= f64::EPSILON * z.norm().max(1.0) {
                break;
            }
        }
        if best_err > POLISH_TOL {
            return Err(Error::NoConvergence { what: "root polish", residual: best_err });
        }
        Ok(best)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        Polynomial::new(
            (0..n)
                .map(|k| self.coeffs.get(k).copied().unwrap_or(zero) + rhs.coeffs.get(k).copied().unwrap_or(zero))
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
        v
    }

    #[test]
    fn quadratic_with_imaginary_roots() {
        let p = Polynomial::from_real(&[1.0, 0.0, 1.0]);
        let r = sorted(p.root_values().unwrap());
        assert!((r[0] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((r[1] - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn linear_root() {
        let p = Polynomial::linear(c(1.0, 2.0));
        let r = p.roots().unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].value - c(1.0, 2.0)).norm() < 1e-15);
        assert!(!r[0].clustered);
    }

    #[test]
    fn degenerate_leading_coefficient() {
        let p = Polynomial::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(1e-15, 0.0)]);
        assert_eq!(p.roots(), Err(Error::DegenerateLeadingCoefficient));
        assert!(Polynomial::constant(c(3.0, 0.0)).roots().is_err());
    }

    #[test]
    fn double_root_is_flagged() {
        let p = Polynomial::from_roots(&[c(0.0, -1.0), c(0.0, -1.0), c(2.0, 0.5)]);
        let r = p.roots().unwrap();
        assert_eq!(r.iter().filter(|r| r.clustered).count(), 2);
        assert!(r.iter().filter(|r| !r.clustered).all(|r| (r.value - c(2.0, 0.5)).norm() < 1e-12));
    }

    #[test]
    fn exact_zero_roots() {
        let p = Polynomial::from_roots(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, -2.0)]);
        let r = p.roots().unwrap();
        assert_eq!(r.iter().filter(|r| r.value == c(0.0, 0.0) && r.clustered).count(), 2);
        assert!(r.iter().any(|r| (r.value - c(1.0, -2.0)).norm() < 1e-12 && !r.clustered));
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let p = Polynomial::new(vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0), c(2.0, -1.0)]);
        let center = c(0.3, -0.7);
        let s = p.taylor_shift(center);
        for t in [c(0.0, 0.0), c(0.2, 0.1), c(-1.0, 0.4)] {
            assert!((s.eval(t) - p.eval(center + t)).norm() < 1e-13);
        }
    }

    #[test]
    fn deflation_remainder_is_value() {
        let p = Polynomial::new(vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0)]);
        let z = c(0.4, -0.2);
        let (q, rem) = p.deflate(z);
        assert!((rem - p.eval(z)).norm() < 1e-15);
        let back = &(&q * &Polynomial::linear(z)) + &Polynomial::constant(rem);
        for (a, b) in back.coeffs().iter().zip(p.coeffs()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn reflect_and_conj() {
        let p = Polynomial::new(vec![c(1.0, 1.0), c(2.0, -1.0), c(0.5, 0.5)]);
        let z = c(0.7, 0.3);
        assert!((p.reflect().eval(z) - p.eval(-z)).norm() < 1e-15);
        assert!((p.conj_coeffs().eval(z) - p.eval(z.conj()).conj()).norm() < 1e-15);
        let d = p.derivative();
        assert!((d.eval(z) - p.eval_with_derivative(z).1).norm() < 1e-15);
    }
}
