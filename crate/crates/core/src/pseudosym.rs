//! Finite-matrix laboratory for pseudo-Hermiticity and hidden symmetries.
//!
//! Random Hamiltonians are projected onto one of the pole-symmetric classes,
//! diagonalized into a biorthonormal eigensystem, and used to build the
//! antilinear metric `tau`, the Hermitian metric `eta` and a symmetry `B`
//! commuting with `H`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{condition_number, eigen, frobenius, inverse, CMatrix};
use crate::symmetry::SymmetryCode;

/// Largest eigenvector-matrix condition number accepted.
pub const MAX_CONDITION: f64 = 1e8;
/// Relative tolerance for matching an eigenvalue with its conjugate.
pub const PAIRING_TOL: f64 = 1e-8;
/// Number of draws before giving up on a nondegenerate spectrum.
pub const MAX_RESAMPLES: usize = 10;
/// Smallest relative eigenvalue gap counted as nondegenerate.
const MIN_GAP: f64 = 1e-6;

/// `z -> matrix * conj(z)`
#[derive(Debug, Clone, PartialEq)]
pub struct AntilinearMap {
    pub matrix: CMatrix,
}

impl AntilinearMap {
    pub fn apply(&self, v: &CMatrix) -> CMatrix {
        &self.matrix * v.map(|z| z.conj())
    }

    /// Antilinear Hermiticity: the matrix equals its transpose.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        frobenius(&(&self.matrix - self.matrix.transpose())) <= tol * frobenius(&self.matrix).max(f64::MIN_POSITIVE)
    }
}

/// A linear or antilinear operator on `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub enum Operator {
    Linear(CMatrix),
    Antilinear(AntilinearMap),
}

impl Operator {
    pub fn identity(n: usize) -> Self {
        Self::Linear(CMatrix::identity(n, n))
    }

    /// Entrywise conjugation.
    pub fn conjugation(n: usize) -> Self {
        Self::Antilinear(AntilinearMap { matrix: CMatrix::identity(n, n) })
    }

    pub fn matrix(&self) -> &CMatrix {
        match self {
            Self::Linear(m) => m,
            Self::Antilinear(a) => &a.matrix,
        }
    }

    pub fn is_antilinear(&self) -> bool {
        matches!(self, Self::Antilinear(_))
    }

    fn from_parts(matrix: CMatrix, antilinear: bool) -> Self {
        if antilinear {
            Self::Antilinear(AntilinearMap { matrix })
        } else {
            Self::Linear(matrix)
        }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        let matrix = if self.is_antilinear() {
            self.matrix() * other.matrix().map(|z| z.conj())
        } else {
            self.matrix() * other.matrix()
        };
        Self::from_parts(matrix, self.is_antilinear() != other.is_antilinear())
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = inverse(self.matrix())?;
        Ok(match self {
            Self::Linear(_) => Self::Linear(inv),
            Self::Antilinear(_) => Self::Antilinear(AntilinearMap { matrix: inv.map(|z| z.conj()) }),
        })
    }

    pub fn apply(&self, v: &CMatrix) -> CMatrix {
        match self {
            Self::Linear(m) => m * v,
            Self::Antilinear(a) => a.apply(v),
        }
    }

    /// `||B H - H B|| / (||B|| ||H||)` with `H` acting linearly.
    pub fn commutator_residual(&self, h: &CMatrix) -> f64 {
        let lin = Self::Linear(h.clone());
        let diff = self.compose(&lin).matrix() - lin.compose(self).matrix();
        frobenius(&diff) / (frobenius(self.matrix()) * frobenius(h)).max(f64::MIN_POSITIVE)
    }
}

/// Index-reversal permutation.
pub fn reversal(n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |i, j| if i + j + 1 == n { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
}

/// Projects `h` onto the class with the given code.
pub fn project(code: SymmetryCode, h: &CMatrix) -> Result<CMatrix> {
    let n = h.nrows();
    let p = reversal(n);
    let half = Complex64::new(0.5, 0.0);
    Ok(match code {
        SymmetryCode::II => (h + h.adjoint()) * half,
        SymmetryCode::V => h.map(|z| Complex64::new(z.re, 0.0)),
        SymmetryCode::VII => (h + &p * h.map(|z| z.conj()) * &p) * half,
        SymmetryCode::IV => (h + &p * h.adjoint() * &p) * half,
        other => return Err(Error::InvalidInput(format!("code {other} does not force conjugate pairing"))),
    })
}

/// A matrix with its biorthonormal eigensystem: `left^dagger right = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixLabSystem {
    pub h: CMatrix,
    pub eigenvalues: Vec<Complex64>,
    pub right_vecs: CMatrix,
    pub left_vecs: CMatrix,
    pub code: Option<SymmetryCode>,
    pub seed: u64,
}

impl MatrixLabSystem {
    pub fn from_matrix(h: CMatrix, code: Option<SymmetryCode>, seed: u64) -> Result<Self> {
        if h.nrows() != h.ncols() || h.nrows() < 2 {
            return Err(Error::InvalidInput("lab matrices must be square with n >= 2".into()));
        }
        let (eigenvalues, right_vecs) = eigen(&h)?;
        let condition = condition_number(&right_vecs);
        if condition.is_nan() || condition > MAX_CONDITION {
            return Err(Error::IllConditioned { condition });
        }
        let left_vecs = inverse(&right_vecs)?.adjoint();
        Ok(Self { h, eigenvalues, right_vecs, left_vecs, code, seed })
    }

    pub fn dim(&self) -> usize {
        self.h.nrows()
    }

    fn spectral_scale(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(1.0, f64::max)
    }

    fn min_gap(&self) -> f64 {
        let e = &self.eigenvalues;
        let mut gap = f64::INFINITY;
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                gap = gap.min((e[i] - e[j]).norm());
            }
        }
        gap
    }

    /// `||left^dagger right - 1||`
    pub fn biorthonormality_residual(&self) -> f64 {
        let n = self.dim();
        frobenius(&(self.left_vecs.adjoint() * &self.right_vecs - CMatrix::identity(n, n)))
    }

    /// `||sum E_n |psi_n><phi_n| - H|| / ||H||`
    pub fn reconstruction_residual(&self) -> f64 {
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.eigenvalues.clone()));
        let rebuilt = &self.right_vecs * d * self.left_vecs.adjoint();
        frobenius(&(rebuilt - &self.h)) / frobenius(&self.h).max(f64::MIN_POSITIVE)
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// Seeded random Hamiltonian in the class `code`, with a simple spectrum.
pub fn random_symmetric_hamiltonian(code: SymmetryCode, n: usize, seed: u64) -> Result<MatrixLabSystem> {
    if n < 2 {
        return Err(Error::InvalidInput("n must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RESAMPLES {
        let h = project(code, &random_matrix(&mut rng, n))?;
        match MatrixLabSystem::from_matrix(h, Some(code), seed) {
            Ok(sys) if sys.min_gap() > MIN_GAP * sys.spectral_scale() => return Ok(sys),
            Ok(_) | Err(Error::IllConditioned { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegenerateSpectrum { attempts: MAX_RESAMPLES })
}

/// Seeded random Hamiltonian without any imposed symmetry.
pub fn random_generic_hamiltonian(n: usize, seed: u64) -> Result<MatrixLabSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    MatrixLabSystem::from_matrix(random_matrix(&mut rng, n), None, seed)
}

/// Indices of real eigenvalues and `(lower, upper)` index pairs of conjugate partners.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Pairing {
    pub real: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
}

/// Pairs each eigenvalue with its conjugate partner.
pub fn conjugate_pairing(eigenvalues: &[Complex64], tol: f64) -> Result<Pairing> {
    let scale = eigenvalues.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let cut = tol * scale;
    let mut order: Vec<usize> = (0..eigenvalues.len()).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (eigenvalues[i], eigenvalues[j]);
        a.re.total_cmp(&b.re).then(a.im.abs().total_cmp(&b.im.abs())).then(i.cmp(&j))
    });
    let mut used = vec![false; eigenvalues.len()];
    let mut real = Vec::new();
    let mut pairs = Vec::new();
    for &i in &order {
        if used[i] {
            continue;
        }
        let e = eigenvalues[i];
        if e.im.abs() <= cut {
            used[i] = true;
            real.push(i);
            continue;
        }
        let partner = order
            .iter()
            .copied()
            .filter(|&j| j != i && !used[j])
            .map(|j| (j, (eigenvalues[j] - e.conj()).norm()))
            .filter(|&(_, d)| d <= cut)
            .min_by(|x, y| x.1.total_cmp(&y.1));
        let Some((j, _)) = partner else {
            return Err(Error::UnpairedEigenvalue { value: e });
        };
        used[i] = true;
        used[j] = true;
        pairs.push(if e.im < 0.0 { (i, j) } else { (j, i) });
    }
    Ok(Pairing { real, pairs })
}

pub fn verify_conjugate_pairing(system: &MatrixLabSystem, tol: f64) -> bool {
    conjugate_pairing(&system.eigenvalues, tol).is_ok()
}

/// `tau z = sum_n <z|phi_n> phi_n`, an antilinear map with matrix `sum phi phi^T`.
pub fn build_tau(system: &MatrixLabSystem) -> Result<AntilinearMap> {
    let condition = condition_number(&system.right_vecs);
    if condition > MAX_CONDITION {
        return Err(Error::IllConditioned { condition });
    }
    Ok(AntilinearMap { matrix: &system.left_vecs * system.left_vecs.transpose() })
}

/// `||M H* - H^dagger M|| / (||M|| ||H||)`, the residual of `tau H = H^dagger tau`.
pub fn tau_residual(system: &MatrixLabSystem, tau: &AntilinearMap) -> f64 {
    let h = &system.h;
    let diff = &tau.matrix * h.map(|z| z.conj()) - h.adjoint() * &tau.matrix;
    frobenius(&diff) / (frobenius(&tau.matrix) * frobenius(h)).max(f64::MIN_POSITIVE)
}

/// Hermitian metric with `eta H = H^dagger eta`.
pub fn build_eta(system: &MatrixLabSystem) -> Result<CMatrix> {
    let Pairing { real, pairs } = conjugate_pairing(&system.eigenvalues, PAIRING_TOL)?;
    let n = system.dim();
    let phi = |k: usize| system.left_vecs.column(k).into_owned();
    let mut eta = CMatrix::zeros(n, n);
    for k in real {
        let v = phi(k);
        eta += &v * v.adjoint();
    }
    for (lo, hi) in pairs {
        let (minus, plus) = (phi(lo), phi(hi));
        eta += &minus * plus.adjoint() + &plus * minus.adjoint();
    }
    Ok(eta)
}

/// `||eta H - H^dagger eta|| / (||eta|| ||H||)`
pub fn eta_residual(system: &MatrixLabSystem, eta: &CMatrix) -> f64 {
    let h = &system.h;
    frobenius(&(eta * h - h.adjoint() * eta)) / (frobenius(eta) * frobenius(h)).max(f64::MIN_POSITIVE)
}

/// The pseudo-Hermiticity operator used for each code.
///
/// Codes II and IV use the identity and the reversal permutation. Codes V and
/// VII use `eta`: their natural antilinear operators turn `tau` into a map
/// intertwining `H` with `H^T` or `H^dagger` rather than one commuting with `H`.
pub fn metric_for(system: &MatrixLabSystem, code: SymmetryCode) -> Result<Operator> {
    let n = system.dim();
    Ok(match code {
        SymmetryCode::II => Operator::identity(n),
        SymmetryCode::IV => Operator::Linear(reversal(n)),
        SymmetryCode::V | SymmetryCode::VII => Operator::Linear(build_eta(system)?),
        other => return Err(Error::InvalidInput(format!("no metric for code {other}"))),
    })
}

/// `B = A^{-1} tau` for an arbitrary metric operator `A`.
pub fn commuting_symmetry(metric: &Operator, tau: &AntilinearMap) -> Result<Operator> {
    Ok(metric.inverse()?.compose(&Operator::Antilinear(tau.clone())))
}

/// `B = A^{-1} tau` with `A` from [`metric_for`].
pub fn build_commuting_b(system: &MatrixLabSystem) -> Result<Operator> {
    let code = system.code.ok_or_else(|| Error::InvalidInput("system carries no symmetry code".into()))?;
    let tau = build_tau(system)?;
    commuting_symmetry(&metric_for(system, code)?, &tau)
}

/// Worst residual `||H (B psi) - E* (B psi)||` over normalized images of eigenvectors.
pub fn antilinear_pairing_residual(system: &MatrixLabSystem, b: &Operator) -> f64 {
    let mut worst: f64 = 0.0;
    for (k, e) in system.eigenvalues.iter().enumerate() {
        let psi = system.right_vecs.columns(k, 1).into_owned();
        let image = b.apply(&psi);
        let norm = image.norm();
        let expected = if b.is_antilinear() { e.conj() } else { *e };
        let r = (&system.h * &image - &image * expected).norm() / norm.max(f64::MIN_POSITIVE);
        worst = worst.max(r / frobenius(&system.h).max(1.0));
    }
    worst
}
