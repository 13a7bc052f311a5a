//! 8-point approximate DFT with Gaussian-integer weights in `{0, ±1, ±2}`.
//!
//! The crate contains
//!
//! * exact complex-integer and dyadic arithmetic ([`numerics`]),
//! * the exact DFT, the approximate matrix and its seven-stage multiplierless
//!   factorization ([`transforms`]),
//! * the exhaustive Frobenius-norm search that recovers the approximation
//!   ([`search`]),
//! * a uniform-linear-array simulator for the resulting eight beams ([`beamsim`]).
//!
//! ```
//! use adft_core::{approx_dft8, build_approx_matrix, ComplexF};
//!
//! let frame = [ComplexF::new(1.0, 0.0); 8];
//! let beams = approx_dft8(&frame);
//! assert_eq!(beams[0], ComplexF::new(8.0, 0.0));
//! assert!(beams[1..].iter().all(|b| b.norm() == 0.0));
//! # let _ = build_approx_matrix();
//! ```

pub mod beamsim;
pub mod error;
pub mod numerics;
pub mod search;
pub mod transforms;

pub use error::{Error, Result};
pub use numerics::{ComplexF, DyadicGaussian, GaussianInt, Matrix};
pub use transforms::{
    apply_direct, apply_fast, approx_dft8, build_approx_matrix, build_exact_dft, build_factorization,
    complexity_report, verify_factorization, ApproxTransform, DirectTransform, ExactDft, Factorization, OpCount,
};
