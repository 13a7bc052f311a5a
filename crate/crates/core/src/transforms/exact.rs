use crate::error::{Error, Result};
use crate::numerics::{root_of_unity, ComplexF, Matrix};

use super::DirectTransform;

/// The exact `n`-point DFT matrix, entries `w^{ik}` with `w = e^{-2 pi j / n}`.
///
/// Only used as a reference: evaluation is the direct `O(n^2)` product.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactDft {
    n: usize,
    matrix: Matrix<ComplexF>,
}

impl ExactDft {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter { name: "n", reason: "must be at least 1".into() });
        }
        let matrix = Matrix::from_fn(n, n, |i, k| root_of_unity(i * k, n));
        Ok(Self { n, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<ComplexF> {
        &self.matrix
    }

    /// `v = (1/n) F* V`.
    pub fn apply_inverse(&self, spectrum: &[ComplexF]) -> Result<Vec<ComplexF>> {
        let scale = 1.0 / self.n as f64;
        let adjoint = self.matrix.adjoint();
        Ok(adjoint.mat_vec(spectrum)?.into_iter().map(|z| z * scale).collect())
    }
}

impl DirectTransform for ExactDft {
    fn size(&self) -> usize {
        self.n
    }

    fn float_matrix(&self) -> &Matrix<ComplexF> {
        &self.matrix
    }
}

pub fn build_exact_dft(n: usize) -> Result<ExactDft> {
    ExactDft::new(n)
}

/// Inverse of the exact 8-point DFT.
pub fn apply_inverse_exact(spectrum: &[ComplexF]) -> Result<Vec<ComplexF>> {
    if spectrum.len() != 8 {
        return Err(Error::dims("vector of length 8", spectrum.len()));
    }
    ExactDft::new(8)?.apply_inverse(spectrum)
}
