//! Dense complex eigen-decomposition on top of nalgebra's Schur form.

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

const SCHUR_EPS: f64 = 1e-15;
const SCHUR_MAX_ITER: usize = 10_000;

/// Eigenvalues of a square complex matrix.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    let schur = Schur::try_new(m.clone(), SCHUR_EPS, SCHUR_MAX_ITER)
        .ok_or(Error::NoConvergence { what: "Schur decomposition", residual: f64::NAN })?;
    let (_, t) = schur.unpack();
    Ok((0..t.nrows()).map(|i| t[(i, i)]).collect())
}

/// Right eigenpairs `(values, vectors)` with unit-norm columns.
pub fn eigen(m: &CMatrix) -> Result<(Vec<Complex64>, CMatrix)> {
    let n = m.nrows();
    let schur = Schur::try_new(m.clone(), SCHUR_EPS, SCHUR_MAX_ITER)
        .ok_or(Error::NoConvergence { what: "Schur decomposition", residual: f64::NAN })?;
    let (q, t) = schur.unpack();
    let values: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
    let scale = t.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let small = scale * f64::EPSILON;

    let mut vecs = CMatrix::zeros(n, n);
    for k in 0..n {
        // back substitution on the triangular factor: (T - t_kk) v = 0, v_k = 1
        let lambda = t[(k, k)];
        let mut v = DVector::<Complex64>::zeros(n);
        v[k] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in i + 1..=k {
                acc += t[(i, j)] * v[j];
            }
            let mut d = t[(i, i)] - lambda;
            if d.norm() < small {
                d = Complex64::new(small, 0.0);
            }
            v[i] = -acc / d;
        }
        let mut w = &q * v;
        let norm = w.norm();
        w /= Complex64::new(norm, 0.0);
        vecs.set_column(k, &w);
    }
    Ok((values, vecs))
}

pub fn inverse(m: &CMatrix) -> Result<CMatrix> {
    m.clone().try_inverse().ok_or(Error::IllConditioned { condition: f64::INFINITY })
}

/// Ratio of the largest to the smallest singular value.
pub fn condition_number(m: &CMatrix) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
