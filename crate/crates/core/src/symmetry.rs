//! Symmetry classification of a discretized potential kernel.
//!
//! The eight symmetry codes correspond to invariance of `<x|V|y>` under one
//! element of the group generated by conjugation (`C`), transposition (`T`)
//! and coordinate inversion (`I`), all of which commute.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::amplitudes::amplitudes;
use crate::error::{Error, Result};
use crate::linalg::{frobenius, CMatrix};
use crate::models::SeparableModel;
use crate::units::ComplexMomentum;

/// Default relative residual below which a symmetry holds.
pub const DEFAULT_THRESHOLD: f64 = 1e-8;
/// Largest boundary-to-peak kernel ratio accepted in a box.
pub const DECAY_RATIO: f64 = 1e-6;
/// Grid points used by [`classify`].
pub const DEFAULT_POINTS: usize = 128;
const MIN_POINTS: usize = 64;
/// `rate * L` used by [`recommended_half_width`]; `e^-16` is about `1e-7`.
const BOX_DECAY_LENGTHS: f64 = 16.0;

/// Kernel samples on a midpoint grid `x_i = -L + (i + 1/2) dx` that is exactly
/// symmetric under `x -> -x`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix {
    pub grid: Vec<f64>,
    pub dx: f64,
    pub half_width: f64,
    pub values: CMatrix,
}

fn symmetric_grid(half_width: f64, n: usize) -> (Vec<f64>, f64) {
    let dx = 2.0 * half_width / n as f64;
    let positive: Vec<f64> = (0..n / 2).map(|k| (k as f64 + 0.5) * dx).collect();
    let grid = positive.iter().rev().map(|x| -x).chain(positive.iter().copied()).collect();
    (grid, dx)
}

/// Box half-width that keeps the kernel edge well below [`DECAY_RATIO`].
pub fn recommended_half_width(model: &SeparableModel) -> f64 {
    BOX_DECAY_LENGTHS / model.decay_rate()
}

fn boundary_ratio(values: &CMatrix) -> f64 {
    let n = values.nrows();
    let peak = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return 0.0;
    }
    let mut edge: f64 = 0.0;
    for k in 0..n {
        for z in [values[(0, k)], values[(n - 1, k)], values[(k, 0)], values[(k, n - 1)]] {
            edge = edge.max(z.norm());
        }
    }
    edge / peak
}

/// Samples `<x|V|y>` on an `n x n` grid over `[-L, L]`.
pub fn discretize_kernel(model: &SeparableModel, half_width: f64, n: usize) -> Result<KernelMatrix> {
    if n < MIN_POINTS || !n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("grid size must be even and at least {MIN_POINTS}, got {n}")));
    }
    if !(half_width > 0.0 && half_width.is_finite()) {
        return Err(Error::InvalidInput(format!("box half-width must be positive, got {half_width}")));
    }
    let (grid, dx) = symmetric_grid(half_width, n);
    let values = CMatrix::from_fn(n, n, |i, j| model.kernel_xy(grid[i], grid[j]));
    let ratio = boundary_ratio(&values);
    if ratio >= DECAY_RATIO {
        return Err(Error::BoxTooSmall { ratio });
    }
    Ok(KernelMatrix { grid, dx, half_width, values })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Linearity {
    Unitary,
    Antiunitary,
}

/// One element of the group generated by `C`, `T`, `I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperOp(u8);

impl SuperOp {
    pub const ONE: Self = Self(0);
    pub const C: Self = Self(1);
    pub const T: Self = Self(2);
    pub const I: Self = Self(4);
    pub const CT: Self = Self(3);
    pub const IC: Self = Self(5);
    pub const IT: Self = Self(6);
    pub const CTI: Self = Self(7);

    pub const ALL: [Self; 8] = [Self::ONE, Self::C, Self::T, Self::CT, Self::I, Self::IC, Self::IT, Self::CTI];

    pub fn contains(self, other: Self) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn compose(self, other: Self) -> Self {
        Self(self.0 ^ other.0)
    }

    pub fn linearity(self) -> Linearity {
        if self.contains(Self::C) {
            Linearity::Antiunitary
        } else {
            Linearity::Unitary
        }
    }

    pub fn label(self) -> &'static str {
        ["1", "C", "T", "CT", "I", "IC", "IT", "CTI"][self.0 as usize]
    }

    /// Acts on a matrix by transposition, conjugation and index reversal.
    pub fn apply(self, m: &CMatrix) -> CMatrix {
        let mut out = if self.contains(Self::T) { m.transpose() } else { m.clone() };
        if self.contains(Self::C) {
            out.iter_mut().for_each(|z| *z = z.conj());
        }
        if self.contains(Self::I) {
            let n = out.nrows();
            let k = out.ncols();
            out = CMatrix::from_fn(n, k, |i, j| out[(n - 1 - i, k - 1 - j)]);
        }
        out
    }

    /// The superoperator with the same action on momentum-space kernels.
    pub fn momentum_image(self) -> Self {
        // conjugation and transposition each carry an extra inversion across a Fourier transform
        let flips = self.contains(Self::C) as u8 + self.contains(Self::T) as u8;
        if flips % 2 == 1 {
            self.compose(Self::I)
        } else {
            self
        }
    }
}

impl fmt::Display for SuperOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `<<F|G>> = tr F^dagger G`
pub fn superop_inner(f: &CMatrix, g: &CMatrix) -> Complex64 {
    f.iter().zip(g.iter()).map(|(a, b)| a.conj() * b).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmetryCode {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
}

impl SymmetryCode {
    pub const ALL: [Self; 8] = [Self::I, Self::II, Self::III, Self::IV, Self::V, Self::VI, Self::VII, Self::VIII];

    pub fn superop(self) -> SuperOp {
        match self {
            Self::I => SuperOp::ONE,
            Self::II => SuperOp::CT,
            Self::III => SuperOp::I,
            Self::IV => SuperOp::CTI,
            Self::V => SuperOp::C,
            Self::VI => SuperOp::T,
            Self::VII => SuperOp::IC,
            Self::VIII => SuperOp::IT,
        }
    }

    pub fn name(self) -> &'static str {
        ["I", "II", "III", "IV", "V", "VI", "VII", "VIII"][self as usize]
    }

    pub fn description(self) -> &'static str {
        match self {
            Self::I => "trivial",
            Self::II => "hermiticity",
            Self::III => "parity",
            Self::IV => "parity pseudo-hermiticity",
            Self::V => "time reversal",
            Self::VI => "transpose symmetry",
            Self::VII => "PT symmetry",
            Self::VIII => "parity-transpose",
        }
    }

    /// Symmetries that force mirror-symmetric S-matrix poles.
    pub fn forces_mirror_poles(self) -> bool {
        matches!(self, Self::II | Self::IV | Self::V | Self::VII)
    }
}

impl fmt::Display for SymmetryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SymmetryCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown symmetry code '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    pub threshold: f64,
    /// `(code, relative residual, verdict)` in code order.
    pub entries: Vec<(SymmetryCode, f64, bool)>,
}

impl SymmetryReport {
    pub fn residual(&self, code: SymmetryCode) -> f64 {
        self.entries[code as usize].1
    }

    pub fn verdict(&self, code: SymmetryCode) -> bool {
        self.entries[code as usize].2
    }

    pub fn holding(&self) -> Vec<SymmetryCode> {
        self.entries.iter().filter(|e| e.2).map(|e| e.0).collect()
    }
}

/// Relative residuals `||K - L(K)|| / ||K||` for every code.
pub fn classify_kernel(kernel: &KernelMatrix, threshold: f64) -> SymmetryReport {
    let norm = frobenius(&kernel.values);
    let entries = SymmetryCode::ALL
        .into_iter()
        .map(|code| {
            let residual = if norm == 0.0 {
                0.0
            } else {
                frobenius(&(&kernel.values - code.superop().apply(&kernel.values))) / norm
            };
            (code, residual, residual < threshold)
        })
        .collect();
    SymmetryReport { threshold, entries }
}

/// Classifies a model on its recommended box with [`DEFAULT_POINTS`] points.
pub fn classify(model: &SeparableModel, threshold: f64) -> Result<SymmetryReport> {
    let kernel = discretize_kernel(model, recommended_half_width(model), DEFAULT_POINTS)?;
    Ok(classify_kernel(&kernel, threshold))
}

/// Unitary DFT `F[k][j] = e^{-i p_k x_j} / sqrt(N)` on the symmetric momentum grid.
pub fn fourier_matrix(kernel: &KernelMatrix) -> (Vec<f64>, CMatrix) {
    let n = kernel.grid.len();
    let step = 2.0 * PI / (n as f64 * kernel.dx);
    let momenta: Vec<f64> = (0..n).map(|k| (k as f64 - 0.5 * (n as f64 - 1.0)) * step).collect();
    let norm = (n as f64).sqrt().recip();
    let f = CMatrix::from_fn(n, n, |k, j| Complex64::from_polar(norm, -momenta[k] * kernel.grid[j]));
    (momenta, f)
}

/// Momentum-space kernel `F K F^dagger`.
pub fn momentum_kernel(kernel: &KernelMatrix) -> CMatrix {
    let (_, f) = fourier_matrix(kernel);
    &f * &kernel.values * f.adjoint()
}

/// Largest residual of the amplitude identities implied by `code` over real momenta.
pub fn amplitude_selection_rules(model: &SeparableModel, code: SymmetryCode, p_grid: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &p in p_grid {
        let q = ComplexMomentum::real(p)?;
        let a = amplitudes(model, q, false)?;
        let h = amplitudes(model, q, true)?;
        let pairs = match code {
            SymmetryCode::I => vec![],
            SymmetryCode::II => vec![(a.tl, h.tl), (a.tr, h.tr), (a.rl, h.rl), (a.rr, h.rr)],
            SymmetryCode::III => vec![(a.tl, a.tr), (a.rl, a.rr)],
            SymmetryCode::IV => vec![(a.tl, h.tr), (a.tr, h.tl), (a.rl, h.rr), (a.rr, h.rl)],
            SymmetryCode::V => vec![(a.tl, h.tr), (a.tr, h.tl), (a.rl, h.rl), (a.rr, h.rr)],
            SymmetryCode::VI => vec![(a.tl, a.tr)],
            SymmetryCode::VII => vec![(a.tl, h.tl), (a.tr, h.tr), (a.rl, h.rr), (a.rr, h.rl)],
            SymmetryCode::VIII => vec![(a.rl, a.rr)],
        };
        for (x, y) in pairs {
            worst = worst.max((x - y).norm());
        }
    }
    Ok(worst)
}
