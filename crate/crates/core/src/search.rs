//! Exhaustive search for the Gaussian-integer matrix closest to the 8-point DFT.
//!
//! Candidates keep the DFT's symmetry: entry `(i, k)` depends only on
//! `ik mod 8` through a map `h` with `h(m+4) = -h(m)` and `h(8-m) = conj(h(m))`.
//! That leaves three free classes,
//!
//! * `h0` real, in `{0, ±1, ±2}`,
//! * `h1` any Gaussian integer with parts in `{0, ±1, ±2}`,
//! * `h2` purely imaginary, `j·{0, ±1, ±2}`,
//!
//! for 5 · 25 · 5 = 625 candidates. Each is scored by the Frobenius distance
//! to the exact DFT after a least-squares real scale.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{ComplexF, DyadicGaussian, GaussianInt, Matrix, Scalar};
use crate::transforms::{build_exact_dft, ApproxTransform};

const SMALL_SET: [i64; 5] = [-2, -1, 0, 1, 2];

/// The three free entry classes of a symmetric 8-point candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CandidateParams {
    pub h0: i64,
    pub h1: GaussianInt,
    pub h2: GaussianInt,
}

impl CandidateParams {
    pub fn new(h0: i64, h1: GaussianInt, h2: GaussianInt) -> Result<Self> {
        let p = Self { h0, h1, h2 };
        let ok = h0.abs() <= 2 && h1.in_small_set() && h2.re == 0 && h2.im.abs() <= 2;
        if !ok {
            return Err(Error::InvalidParameter {
                name: "candidate",
                reason: format!("{p} is outside the symmetric search space"),
            });
        }
        Ok(p)
    }

    /// The full map `h(0..8)` implied by the symmetry rules.
    pub fn class_values(&self) -> [GaussianInt; 8] {
        let h0 = GaussianInt::new(self.h0, 0);
        [h0, self.h1, self.h2, -self.h1.conj(), -h0, -self.h1, -self.h2, self.h1.conj()]
    }

    /// The same candidate with every class multiplied by `c`, if it stays in range.
    pub fn scaled(&self, c: i64) -> Option<Self> {
        let m = GaussianInt::new(c, 0);
        Self::new(self.h0.checked_mul(c)?, self.h1.checked_mul(m).ok()?, self.h2.checked_mul(m).ok()?).ok()
    }
}

impl fmt::Display for CandidateParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.h0, self.h1, self.h2)
    }
}

/// All 625 symmetric candidates, ordered by `(h0, h1.re, h1.im, h2.im)`.
pub fn enumerate_candidates() -> Vec<CandidateParams> {
    let mut out = Vec::with_capacity(625);
    for h0 in SMALL_SET {
        for re in SMALL_SET {
            for im in SMALL_SET {
                for h2 in SMALL_SET {
                    out.push(CandidateParams { h0, h1: GaussianInt::new(re, im), h2: GaussianInt::new(0, h2) });
                }
            }
        }
    }
    out
}

/// Entry `(i, k)` is `h(ik mod 8)`.
pub fn candidate_to_matrix(p: &CandidateParams) -> Matrix<GaussianInt> {
    let h = p.class_values();
    Matrix::from_fn(8, 8, |i, k| h[(i * k) % 8])
}

/// Real `a` minimizing `||f - a g||_F`, i.e. `Re<f, g> / ||g||_F^2`.
///
/// A zero candidate gets scale 0.
pub fn optimal_scale(g: &Matrix<ComplexF>, f: &Matrix<ComplexF>) -> Result<f64> {
    if g.rows() != f.rows() || g.cols() != f.cols() {
        return Err(Error::dims(format!("{}x{}", f.rows(), f.cols()), format!("{}x{}", g.rows(), g.cols())));
    }
    let norm_sqr: f64 = g.entries().iter().map(|z| z.norm_sqr()).sum();
    if norm_sqr == 0.0 {
        return Ok(0.0);
    }
    let inner: f64 = g.entries().iter().zip(f.entries()).map(|(a, b)| (a.conj() * b).re).sum();
    Ok(inner / norm_sqr)
}

/// `||M M* - diag(M M*)||_F / ||diag(M M*)||_F`.
pub fn orthogonality_deviation<T: Scalar>(m: &Matrix<T>) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::dims("square matrix", format!("{}x{}", m.rows(), m.cols())));
    }
    let m = m.to_complex();
    let n = m.rows();
    let (mut diag, mut off) = (0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            let g: ComplexF = m.row(i).iter().zip(m.row(k)).map(|(a, b)| a * b.conj()).sum();
            if i == k {
                diag += g.norm_sqr();
            } else {
                off += g.norm_sqr();
            }
        }
    }
    if diag == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    Ok((off / diag).sqrt())
}

/// Same ratio as [`orthogonality_deviation`], with the Gram matrix formed in
/// exact integer arithmetic. Only the final square root is rounded.
pub fn orthogonality_deviation_exact(m: &Matrix<GaussianInt>) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::dims("square matrix", format!("{}x{}", m.rows(), m.cols())));
    }
    let n = m.rows();
    let (mut diag, mut off) = (0_i128, 0_i128);
    for i in 0..n {
        for k in 0..n {
            let g = m
                .row(i)
                .iter()
                .zip(m.row(k))
                .try_fold(GaussianInt::ZERO, |acc, (&a, &b)| acc.checked_add(a.checked_mul(b.conj())?))?;
            if i == k {
                diag += g.norm_sqr_exact();
            } else {
                off += g.norm_sqr_exact();
            }
        }
    }
    if diag == 0 {
        return Err(Error::ZeroMatrix);
    }
    Ok((off as f64 / diag as f64).sqrt())
}

/// Singular values of a complex matrix, descending.
///
/// One-sided Jacobi on the real embedding `[[A, -B], [B, A]]`, whose singular
/// values are those of `A + jB`, each repeated twice.
pub fn singular_values<T: Scalar>(m: &Matrix<T>) -> Vec<f64> {
    let m = m.to_complex();
    let (r, c) = (m.rows(), m.cols());
    let (rr, cc) = (2 * r, 2 * c);
    // column-major, so each column of the embedding is a contiguous slice
    let mut a = vec![0.0_f64; rr * cc];
    for k in 0..cc {
        for i in 0..rr {
            let z = m.get(i % r, k % c);
            a[k * rr + i] = match (i < r, k < c) {
                (true, true) | (false, false) => z.re,
                (true, false) => -z.im,
                (false, true) => z.im,
            };
        }
    }
    let mut norms: Vec<f64> = a.chunks(rr).map(|col| col.iter().map(|x| x * x).sum()).collect();

    const MAX_SWEEPS: usize = 60;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cc {
            for q in p + 1..cc {
                let (left, right) = a.split_at_mut(q * rr);
                let cp = &mut left[p * rr..(p + 1) * rr];
                let cq = &mut right[..rr];
                let gamma: f64 = cp.iter().zip(cq.iter()).map(|(x, y)| x * y).sum();
                let (alpha, beta) = (norms[p], norms[q]);
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                    let (u, v) = (*x, *y);
                    *x = cs * u - sn * v;
                    *y = sn * u + cs * v;
                }
                norms[p] = cp.iter().map(|x| x * x).sum();
                norms[q] = cq.iter().map(|x| x * x).sum();
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<f64> = norms.iter().map(|n| n.sqrt()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    // each value appears twice in the embedding
    sv.into_iter().step_by(2).take(r.min(c)).collect()
}

/// `sigma_max / sigma_min`; infinite when the matrix is numerically singular.
pub fn condition_number<T: Scalar>(m: &Matrix<T>) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::dims("square matrix", format!("{}x{}", m.rows(), m.cols())));
    }
    let sv = singular_values(m);
    let (max, min) = (sv[0], *sv.last().expect("non-empty"));
    if max == 0.0 || min <= max * 1e-12 {
        return Ok(f64::INFINITY);
    }
    Ok(max / min)
}

/// A scored candidate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SearchResult {
    pub params: CandidateParams,
    pub scale: f64,
    pub frobenius_error: f64,
    /// `None` for the zero candidate, where the ratio is undefined.
    pub orthogonality_deviation: Option<f64>,
    /// Unit-weight count `sum(|re| + |im|)` minus the number of rows.
    pub adder_cost: i64,
    pub condition_number: f64,
}

impl SearchResult {
    /// The optimal scale rounded to the nearest power of two `2^-k`, `k >= 0`.
    pub fn dyadic_scale(&self) -> Option<DyadicGaussian> {
        if self.scale <= 0.0 || !self.scale.is_finite() {
            return None;
        }
        let k = (-self.scale.log2()).round();
        (k >= 0.0).then(|| DyadicGaussian::new(1, 0, k as u32))
    }

    /// The candidate as an approximate transform with its dyadic scale.
    pub fn to_transform(&self) -> Result<ApproxTransform> {
        let scale = self.dyadic_scale().ok_or(Error::InvalidParameter {
            name: "scale",
            reason: format!("{} has no dyadic rounding 2^-k", self.scale),
        })?;
        ApproxTransform::new(scale, candidate_to_matrix(&self.params))
    }

    /// Error quantized to 1e-9 so that mathematically tied candidates compare
    /// equal despite rounding.
    fn error_key(&self) -> i64 {
        (self.frobenius_error * 1e9).round() as i64
    }

    /// Error, then hardware cost, then positive scale before negative, then params.
    pub fn rank_cmp(&self, other: &Self) -> Ordering {
        self.error_key()
            .cmp(&other.error_key())
            .then(self.adder_cost.cmp(&other.adder_cost))
            .then((self.scale < 0.0).cmp(&(other.scale < 0.0)))
            .then(self.params.cmp(&other.params))
    }
}

fn adder_cost(m: &Matrix<GaussianInt>) -> i64 {
    m.entries().iter().map(|z| z.l1()).sum::<i64>() - m.rows() as i64
}

/// Scores one candidate against `target`.
pub fn score_candidate(p: &CandidateParams, target: &Matrix<ComplexF>) -> Result<SearchResult> {
    let g = candidate_to_matrix(p);
    let gf = g.to_complex();
    let scale = optimal_scale(&gf, target)?;
    let residual = target.checked_sub(&gf.map(|z| z * scale))?;
    Ok(SearchResult {
        params: *p,
        scale,
        frobenius_error: residual.frobenius_norm(),
        orthogonality_deviation: orthogonality_deviation_exact(&g).ok(),
        adder_cost: adder_cost(&g),
        condition_number: condition_number(&g)?,
    })
}

/// Scores every candidate and returns them best first.
pub fn run_search() -> Vec<SearchResult> {
    let target = build_exact_dft(8).expect("n = 8").matrix().clone();
    let mut results: Vec<SearchResult> =
        enumerate_candidates().par_iter().map(|p| score_candidate(p, &target).expect("8x8 shapes agree")).collect();
    results.sort_by(SearchResult::rank_cmp);
    results
}
