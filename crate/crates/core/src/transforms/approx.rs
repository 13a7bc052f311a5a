use crate::error::{Error, Result};
use crate::numerics::{ComplexF, DyadicGaussian, GaussianInt, Matrix};

use super::DirectTransform;

const fn g(re: i64, im: i64) -> GaussianInt {
    GaussianInt::new(re, im)
}

/// Unscaled integer matrix of the 8-point approximation, row by row.
#[rustfmt::skip]
const APPROX_INTEGER_ROWS: [[GaussianInt; 8]; 8] = [
    [g(2, 0), g(2, 0),   g(2, 0),  g(2, 0),   g(2, 0),  g(2, 0),   g(2, 0),  g(2, 0)],
    [g(2, 0), g(1, -1),  g(0, -2), g(-1, -1), g(-2, 0), g(-1, 1),  g(0, 2),  g(1, 1)],
    [g(2, 0), g(0, -2),  g(-2, 0), g(0, 2),   g(2, 0),  g(0, -2),  g(-2, 0), g(0, 2)],
    [g(2, 0), g(-1, -1), g(0, 2),  g(1, -1),  g(-2, 0), g(1, 1),   g(0, -2), g(-1, 1)],
    [g(2, 0), g(-2, 0),  g(2, 0),  g(-2, 0),  g(2, 0),  g(-2, 0),  g(2, 0),  g(-2, 0)],
    [g(2, 0), g(-1, 1),  g(0, -2), g(1, 1),   g(-2, 0), g(1, -1),  g(0, 2),  g(-1, -1)],
    [g(2, 0), g(0, 2),   g(-2, 0), g(0, -2),  g(2, 0),  g(0, 2),   g(-2, 0), g(0, -2)],
    [g(2, 0), g(1, 1),   g(0, 2),  g(-1, 1),  g(-2, 0), g(-1, -1), g(0, -2), g(1, -1)],
];

/// An 8-point approximate DFT: a dyadic scale times a Gaussian-integer matrix
/// whose entries have real and imaginary parts in `{0, ±1, ±2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxTransform {
    scale: DyadicGaussian,
    integer_matrix: Matrix<GaussianInt>,
    float_matrix: Matrix<ComplexF>,
}

impl ApproxTransform {
    pub fn new(scale: DyadicGaussian, integer_matrix: Matrix<GaussianInt>) -> Result<Self> {
        if integer_matrix.rows() != 8 || integer_matrix.cols() != 8 {
            return Err(Error::dims("8x8", format!("{}x{}", integer_matrix.rows(), integer_matrix.cols())));
        }
        if let Some(bad) = integer_matrix.entries().iter().find(|z| !z.in_small_set()) {
            return Err(Error::InvalidParameter {
                name: "integer_matrix",
                reason: format!("entry {bad} has a component outside {{0, ±1, ±2}}"),
            });
        }
        let s = scale.to_complex();
        let float_matrix = integer_matrix.map(|z| z.to_complex() * s);
        Ok(Self { scale, integer_matrix, float_matrix })
    }

    pub fn scale(&self) -> DyadicGaussian {
        self.scale
    }

    pub fn integer_matrix(&self) -> &Matrix<GaussianInt> {
        &self.integer_matrix
    }

    /// Scaled entry at zero-based `(i, k)`.
    pub fn entry(&self, i: usize, k: usize) -> DyadicGaussian {
        self.scale * DyadicGaussian::from(self.integer_matrix.get(i, k))
    }

    /// The scaled matrix in exact arithmetic.
    pub fn dyadic_matrix(&self) -> Matrix<DyadicGaussian> {
        Matrix::from_fn(8, 8, |i, k| self.entry(i, k))
    }

    /// Exact matrix-vector product.
    pub fn apply_direct_exact(&self, v: &[DyadicGaussian]) -> Result<Vec<DyadicGaussian>> {
        self.dyadic_matrix().mat_vec(v)
    }

    /// Whether `entry(i,k) = h(ik mod 8)` for one map `h` with
    /// `h(m+4) = -h(m)` and `h(8-m) = conj(h(m))`.
    pub fn has_dft_symmetry(&self) -> bool {
        let m = &self.integer_matrix;
        let mut h = [None::<GaussianInt>; 8];
        for i in 0..8 {
            for k in 0..8 {
                let slot = &mut h[(i * k) % 8];
                match slot {
                    Some(v) if *v != m.get(i, k) => return false,
                    _ => *slot = Some(m.get(i, k)),
                }
            }
        }
        let h = h.map(|v| v.expect("every residue mod 8 appears"));
        (0..8).all(|e| h[(e + 4) % 8] == -h[e] && h[(8 - e) % 8] == h[e].conj())
    }
}

impl DirectTransform for ApproxTransform {
    fn size(&self) -> usize {
        8
    }

    fn float_matrix(&self) -> &Matrix<ComplexF> {
        &self.float_matrix
    }
}

/// The 8-point approximate DFT: `1/2` times the printed Gaussian-integer matrix.
pub fn build_approx_matrix() -> ApproxTransform {
    let integer_matrix = Matrix::from_rows(&APPROX_INTEGER_ROWS).expect("8x8 literal");
    ApproxTransform::new(DyadicGaussian::HALF, integer_matrix).expect("literal entries are in range")
}
