//! Scattering on separable non-Hermitian potentials: models, amplitudes,
//! S-matrix poles, superoperator symmetry classification and a finite
//! matrix laboratory for pseudo-symmetries.

pub mod amplitudes;
pub mod error;
pub mod formfactor;
pub mod linalg;
pub mod models;
pub mod poles;
pub mod poly;
pub mod pseudosym;
pub mod quadrature;
pub mod rational;
pub mod symmetry;
pub mod units;

pub use error::{Error, Result};
