//! Inputs and reference kernels shared by the criterion benches.

use adft_core::{build_approx_matrix, ComplexF, DirectTransform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Frame = [ComplexF; 8];
pub type DenseMatrix = [[ComplexF; 8]; 8];

pub fn frames(count: usize, seed: u64) -> Vec<Frame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| std::array::from_fn(|_| ComplexF::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))))
        .collect()
}

pub fn dense_approx() -> DenseMatrix {
    let t = build_approx_matrix();
    let m = t.float_matrix();
    std::array::from_fn(|i| std::array::from_fn(|k| m.get(i, k)))
}

/// Dense 8x8 product with fixed-size arrays, so the comparison with the
/// unrolled fast kernel is not dominated by allocation.
pub fn dense_apply(m: &DenseMatrix, x: &Frame) -> Frame {
    std::array::from_fn(|i| {
        let row = &m[i];
        let mut acc = row[0] * x[0];
        for k in 1..8 {
            acc += row[k] * x[k];
        }
        acc
    })
}
