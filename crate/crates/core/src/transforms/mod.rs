//! Exact DFT, the 8-point approximate DFT, and its multiplierless factorization.

mod approx;
mod exact;
mod factor;
mod fast;

pub use approx::{build_approx_matrix, ApproxTransform};
pub use exact::{apply_inverse_exact, build_exact_dft, ExactDft};
pub use factor::{
    apply_fast, build_factorization, complexity_report, verify_factorization, FactorStage, Factorization,
    FactorizationReport, OpCount, StageEntry, Term,
};
pub use fast::approx_dft8;

use serde::Serialize;

use crate::error::Result;
use crate::numerics::{ComplexF, Matrix};

/// A transform evaluated as a dense matrix-vector product.
pub trait DirectTransform {
    fn size(&self) -> usize;
    fn float_matrix(&self) -> &Matrix<ComplexF>;
}

/// `V = F · v`.
pub fn apply_direct<T: DirectTransform + ?Sized>(t: &T, v: &[ComplexF]) -> Result<Vec<ComplexF>> {
    t.float_matrix().mat_vec(v)
}

/// Cost of evaluating a matrix by the plain dense product, where every
/// nonzero entry is treated as a general complex multiplier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DirectOpCount {
    pub complex_additions: usize,
    pub complex_multiplications: usize,
}

impl DirectOpCount {
    pub fn from_matrix(m: &Matrix<ComplexF>) -> Self {
        let mut count = Self { complex_additions: 0, complex_multiplications: 0 };
        for i in 0..m.rows() {
            let nnz = m.row(i).iter().filter(|z| z.norm_sqr() != 0.0).count();
            count.complex_additions += nnz.saturating_sub(1);
            count.complex_multiplications += nnz;
        }
        count
    }

    /// A complex multiply is 4 real multiplies and 2 real additions.
    pub fn real_additions(&self) -> usize {
        2 * self.complex_additions + 2 * self.complex_multiplications
    }

    pub fn real_multiplications(&self) -> usize {
        4 * self.complex_multiplications
    }
}
