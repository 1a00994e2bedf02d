//! Rational momentum-space form factors `<p|f>` with explicitly known poles.
//!
//! Keeping the pole list alongside the numerator lets every contour integral
//! needed by the separable models (coordinate wavefunctions, norms and the
//! free resolvent overlap) be evaluated by residues, with no root finding.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::RationalFunction;

/// Poles closer than this are merged into one higher-order pole.
pub const MERGE_TOL: f64 = 1e-12;

/// `numerator(p) / prod (p - pole)^order`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormFactor {
    numerator: Polynomial,
    poles: Vec<(Complex64, usize)>,
}

/// Laurent principal part at one pole: `sum_j coeffs[j-1] / (p - pole)^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleTerm {
    pub pole: Complex64,
    pub coeffs: Vec<Complex64>,
}

fn merge_poles(list: impl IntoIterator<Item = (Complex64, usize)>) -> Vec<(Complex64, usize)> {
    let mut merged: Vec<(Complex64, usize)> = Vec::new();
    for (p, m) in list {
        if m == 0 {
            continue;
        }
        match merged.iter_mut().find(|(q, _)| (*q - p).norm() < MERGE_TOL) {
            Some(entry) => entry.1 += m,
            None => merged.push((p, m)),
        }
    }
    merged.sort_by(|a, b| a.0.im.total_cmp(&b.0.im).then(a.0.re.total_cmp(&b.0.re)));
    merged
}

fn pole_product(poles: &[(Complex64, usize)]) -> Polynomial {
    poles.iter().fold(Polynomial::one(), |acc, &(p, m)| &acc * &Polynomial::linear(p).powi(m))
}

impl FormFactor {
    /// Requires a strictly proper function with no pole on the real axis.
    pub fn new(numerator: Polynomial, poles: Vec<(Complex64, usize)>) -> Result<Self> {
        let poles = merge_poles(poles);
        let order: usize = poles.iter().map(|(_, m)| m).sum();
        if numerator.is_zero() {
            return Err(Error::InvalidInput("form factor numerator is zero".into()));
        }
        if numerator.degree() >= order {
            return Err(Error::InvalidInput(format!(
                "form factor must be strictly proper (numerator degree {}, pole order {order})",
                numerator.degree()
            )));
        }
        if let Some((p, _)) = poles.iter().find(|(p, _)| p.im.abs() < MERGE_TOL) {
            return Err(Error::InvalidInput(format!("form factor pole {p} on the real axis")));
        }
        Ok(Self { numerator, poles })
    }

    /// `scale / prod (p - pole)`
    pub fn simple(scale: Complex64, poles: &[Complex64]) -> Result<Self> {
        Self::new(Polynomial::constant(scale), poles.iter().map(|&p| (p, 1)).collect())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn poles(&self) -> &[(Complex64, usize)] {
        &self.poles
    }

    pub fn pole_order(&self) -> usize {
        self.poles.iter().map(|(_, m)| m).sum()
    }

    pub fn denominator(&self) -> Polynomial {
        pole_product(&self.poles)
    }

    pub fn rational(&self) -> Result<RationalFunction> {
        let roots: Vec<Complex64> = self.poles.iter().flat_map(|&(p, m)| std::iter::repeat_n(p, m)).collect();
        RationalFunction::with_poles(self.numerator.clone(), Complex64::new(1.0, 0.0), roots)
    }

    pub fn eval(&self, p: Complex64) -> Complex64 {
        self.numerator.eval(p) / self.denominator().eval(p)
    }

    /// `conj(f(conj p))`; equals `f(p)*` on the real axis.
    pub fn schwarz(&self) -> Self {
        Self {
            numerator: self.numerator.conj_coeffs(),
            poles: merge_poles(self.poles.iter().map(|&(p, m)| (p.conj(), m))),
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { numerator: self.numerator.scale(Complex64::new(s, 0.0)), poles: self.poles.clone() }
    }

    pub fn product(&self, other: &Self) -> Self {
        Self {
            numerator: &self.numerator * &other.numerator,
            poles: merge_poles(self.poles.iter().chain(&other.poles).copied()),
        }
    }

    /// Principal parts at every pole.
    pub fn partial_fractions(&self) -> Vec<PoleTerm> {
        self.poles
            .iter()
            .enumerate()
            .map(|(k, &(pk, m))| {
                let rest: Vec<(Complex64, usize)> =
                    self.poles.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, &e)| e).collect();
                let num = self.numerator.taylor_shift(pk);
                let den = pole_product(&rest).taylor_shift(pk);
                let series = series_div(num.coeffs(), den.coeffs(), m);
                // coefficient of (p - pk)^{-j} is the Taylor coefficient of order m - j
                let coeffs = (1..=m).map(|j| series[m - j]).collect();
                PoleTerm { pole: pk, coeffs }
            })
            .collect()
    }

    /// `<x|f> = (2 pi)^{-1/2} \int dp e^{ipx} <p|f>` by residues.
    pub fn coordinate(&self, x: f64) -> Complex64 {
        let upper = x >= 0.0;
        let sign = if upper { 1.0 } else { -1.0 };
        let mut acc = Complex64::new(0.0, 0.0);
        for term in self.partial_fractions() {
            if (term.pole.im > 0.0) != upper {
                continue;
            }
            let e = (Complex64::i() * term.pole * x).exp();
            let ix = Complex64::new(0.0, x);
            let mut pow = Complex64::new(1.0, 0.0);
            let mut fact = 1.0;
            for (j, &c) in term.coeffs.iter().enumerate() {
                if j > 0 {
                    pow *= ix;
                    fact *= j as f64;
                }
                acc += c * pow / fact * e;
            }
        }
        acc * Complex64::i() * sign * (2.0 * PI).sqrt()
    }

    /// `\int |<p|f>|^2 dp` by residues.
    pub fn norm_sq(&self) -> f64 {
        let density = self.product(&self.schwarz());
        let sum: Complex64 = density.partial_fractions().iter().filter(|t| t.pole.im > 0.0).map(|t| t.coeffs[0]).sum();
        (2.0 * PI * Complex64::i() * sum).re
    }

    /// Copy rescaled to unit norm.
    pub fn normalized(&self) -> Self {
        self.scaled(self.norm_sq().sqrt().recip())
    }

    /// Slowest exponential decay rate of the coordinate form.
    pub fn decay_rate(&self) -> f64 {
        self.poles.iter().map(|(p, _)| p.im.abs()).fold(f64::INFINITY, f64::min)
    }
}

/// Truncated power-series quotient `num / den` to `terms` coefficients.
fn series_div(num: &[Complex64], den: &[Complex64], terms: usize) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let d0 = den[0];
    let mut out = Vec::with_capacity(terms);
    for i in 0..terms {
        let mut acc = num.get(i).copied().unwrap_or(zero);
        for j in 1..=i {
            acc -= den.get(j).copied().unwrap_or(zero) * out[i - j];
        }
        out.push(acc / d0);
    }
    out
}

/// `Q0(q) = <chi|(q^2/2 - H0)^{-1}|phi>` as a rational function of `q`.
///
/// For `Im q > 0` the momentum integral closes in the upper half plane; the
/// residue at `p = q` combines with the partial fractions of
/// `chi*(p) phi(p)` so that
///
/// ```text
/// Q0(q) = (2 pi i / q) [ -sum_{lower} c / (q - p_k)^j + sum_{upper} (-1)^{j-1} c / (q + p_k)^j ]
/// ```
///
/// which is rational and continues to the whole `q` plane.
pub fn resolvent_overlap(chi: &FormFactor, phi: &FormFactor) -> Result<RationalFunction> {
    let density = chi.schwarz().product(phi);
    if density.numerator.degree() + 2 > density.pole_order() {
        return Err(Error::InvalidInput("overlap density decays too slowly".into()));
    }
    let terms = density.partial_fractions();

    // (location, order, per-power coefficients) for every pole of Q0 except q = 0
    let mut blocks: Vec<(Complex64, Vec<Complex64>)> = Vec::new();
    let mut push = |at: Complex64, j: usize, c: Complex64| {
        let idx = match blocks.iter().position(|(z, _)| (*z - at).norm() < MERGE_TOL) {
            Some(i) => i,
            None => {
                blocks.push((at, Vec::new()));
                blocks.len() - 1
            }
        };
        let coeffs = &mut blocks[idx].1;
        if coeffs.len() < j {
            coeffs.resize(j, Complex64::new(0.0, 0.0));
        }
        coeffs[j - 1] += c;
    };
    for t in &terms {
        for (j0, &c) in t.coeffs.iter().enumerate() {
            let j = j0 + 1;
            if t.pole.im < 0.0 {
                push(t.pole, j, -c);
            } else {
                let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
                push(-t.pole, j, c * sign);
            }
        }
    }

    let factors: Vec<(Complex64, usize)> = blocks.iter().map(|(z, c)| (*z, c.len())).collect();
    let mut numerator = Polynomial::zero();
    for (k, (z, coeffs)) in blocks.iter().enumerate() {
        let others = factors
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .fold(Polynomial::one(), |acc, (_, &(w, m))| &acc * &Polynomial::linear(w).powi(m));
        let order = coeffs.len();
        for (j0, &c) in coeffs.iter().enumerate() {
            let j = j0 + 1;
            let part = &others * &Polynomial::linear(*z).powi(order - j);
            numerator = &numerator + &part.scale(c);
        }
    }
    let numerator = numerator.scale(2.0 * PI * Complex64::i());
    let mut poles = vec![Complex64::new(0.0, 0.0)];
    for &(z, m) in &factors {
        poles.extend(std::iter::repeat_n(z, m));
    }
    RationalFunction::with_poles(numerator, Complex64::new(1.0, 0.0), poles)?.reduce()
}
