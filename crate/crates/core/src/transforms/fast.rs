use crate::numerics::FastScalar;

/// Straight-line form of the seven-stage factorization.
///
/// Equivalent to [`apply_fast`](super::apply_fast) with
/// [`build_factorization`](super::build_factorization), without the per-row
/// dispatch. 26 complex additions, 2 halvings, 3 rotations by `j`.
#[inline]
pub fn approx_dft8<T: FastScalar>(x: &[T; 8]) -> [T; 8] {
    // B8
    let a0 = x[0] + x[4];
    let a1 = x[1] + x[5];
    let a2 = x[2] + x[6];
    let a3 = x[3] + x[7];
    let a4 = x[0] - x[4];
    let a5 = x[1] - x[5];
    let a6 = x[2] - x[6];
    let a7 = x[3] - x[7];

    // diag(B4, A2), then D1 on rows 5 and 7
    let b0 = a0 + a2;
    let b1 = a1 + a3;
    let b2 = a0 - a2;
    let b3 = a1 - a3;
    let b4 = a4;
    let b5 = (a5 + a7).halve();
    let b6 = a6;
    let b7 = (a5 - a7).halve();

    // diag(B2, I2, A4), then D2 on rows 3, 5, 6
    let c0 = b0 + b1;
    let c1 = b0 - b1;
    let c2 = b2;
    let c3 = b3.mul_j();
    let c4 = b4 + b7;
    let c5 = (b5 + b6).mul_j();
    let c6 = (b5 - b6).mul_j();
    let c7 = b4 - b7;

    // diag(I2, A1, A3)
    let d2 = c2 - c3;
    let d3 = c2 + c3;
    let d4 = c4 - c5;
    let d5 = c7 - c6;
    let d6 = c4 + c5;
    let d7 = c6 + c7;

    // P
    [c0, d4, d2, d5, c1, d7, d3, d6]
}
