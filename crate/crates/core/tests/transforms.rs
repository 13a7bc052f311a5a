use adft_core::numerics::{frobenius_norm, matmul, max_relative_deviation, FastScalar};
use adft_core::search::orthogonality_deviation;
use adft_core::transforms::DirectOpCount;
use adft_core::{
    apply_direct, apply_fast, approx_dft8, build_approx_matrix, build_exact_dft, build_factorization,
    complexity_report, ComplexF, DyadicGaussian, GaussianInt, Matrix,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_frame(rng: &mut ChaCha8Rng) -> Vec<ComplexF> {
    (0..8).map(|_| ComplexF::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()
}

#[test]
fn fast_matches_direct_on_random_frames() {
    let f = build_factorization();
    let t = build_approx_matrix();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let v = random_frame(&mut rng);
        let direct = apply_direct(&t, &v).unwrap();
        let fast = apply_fast(&f, &v).unwrap();
        let unrolled = approx_dft8(&<[ComplexF; 8]>::try_from(v.as_slice()).unwrap());
        worst = worst.max(max_relative_deviation(&fast, &direct));
        worst = worst.max(max_relative_deviation(&unrolled, &direct));
    }
    assert!(worst <= 1e-12, "max relative deviation {worst}");
}

#[test]
fn fast_of_zero_and_impulse() {
    let f = build_factorization();
    let zero = apply_fast(&f, &[ComplexF::new(0.0, 0.0); 8]).unwrap();
    assert!(zero.iter().all(|z| z.norm() == 0.0));
    let mut e1 = [ComplexF::new(0.0, 0.0); 8];
    e1[0] = ComplexF::new(1.0, 0.0);
    let col = apply_fast(&f, &e1).unwrap();
    assert!(col.iter().all(|z| *z == ComplexF::new(1.0, 0.0)));
}

#[test]
fn frobenius_norms() {
    // brute-force entrywise accumulation over the printed integer matrix, scaled by 1/2
    let t = build_approx_matrix();
    let mut acc = 0.0;
    for i in 0..8 {
        for k in 0..8 {
            let z = t.integer_matrix().get(i, k);
            acc += ((z.re * z.re + z.im * z.im) as f64) / 4.0;
        }
    }
    assert_eq!(acc, 56.0);
    assert!((frobenius_norm(&t.dyadic_matrix()) - acc.sqrt()).abs() < 1e-14);
    let f8 = build_exact_dft(8).unwrap();
    assert!((frobenius_norm(f8.matrix()) - 8.0).abs() < 1e-12);
}

#[test]
fn matmul_examples() {
    let t = build_approx_matrix();
    let mut e1 = vec![DyadicGaussian::ZERO; 8];
    e1[0] = DyadicGaussian::ONE;
    let e1 = Matrix::new(8, 1, e1).unwrap();
    let col = matmul(&t.dyadic_matrix(), &e1).unwrap();
    assert!(col.entries().iter().all(|z| *z == DyadicGaussian::ONE));

    let f8 = build_exact_dft(8).unwrap();
    let prod = matmul(&f8.matrix().adjoint(), f8.matrix()).unwrap().map(|z| z / 8.0);
    assert!(prod.max_abs_deviation(&Matrix::<ComplexF>::identity(8)).unwrap() < 1e-12);
}

/// Independent structural count: walk the dense stage matrices.
fn structural_counts() -> (usize, usize, usize) {
    let (mut adds, mut halves, mut rots) = (0, 0, 0);
    for s in build_factorization().stages() {
        let m = s.to_matrix();
        for i in 0..8 {
            let nz: Vec<DyadicGaussian> = m.row(i).iter().copied().filter(|z| !z.is_zero()).collect();
            adds += nz.len() - 1;
            halves += nz.iter().filter(|z| **z == DyadicGaussian::HALF).count();
            rots += nz.iter().filter(|z| z.re_num() == 0).count();
        }
    }
    (adds, halves, rots)
}

#[test]
fn complexity_matches_structural_oracle() {
    let f = build_factorization();
    let report = complexity_report(&f);
    let (adds, halves, rots) = structural_counts();
    assert_eq!(report.complex_additions, adds);
    assert_eq!(report.halvings, halves);
    assert_eq!(report.j_rotations, rots);
    assert_eq!(report.complex_additions, 26);
    assert_eq!(report.real_additions(), 52);
    assert_eq!(report.halvings, 2);
    assert_eq!(report.j_rotations, 3);
    assert_eq!(report.negations, 0);
    assert_eq!(f.general_multiplications(), 0);

    // direct product: every row of the approximation has 8 nonzeros
    let t = build_approx_matrix();
    let direct_adds: usize =
        (0..8).map(|i| t.integer_matrix().row(i).iter().filter(|z| **z != GaussianInt::ZERO).count() - 1).sum();
    assert_eq!(direct_adds, 56);
    let direct = DirectOpCount::from_matrix(adft_core::DirectTransform::float_matrix(&t));
    assert_eq!(direct.complex_additions, direct_adds);
    assert!(report.complex_additions < direct_adds);
    assert!(report.real_additions() < direct.real_additions());
}

#[test]
fn stage_entries_are_trivial() {
    let allowed: Vec<DyadicGaussian> =
        ["0", "1", "-1", "1j", "-1j", "1/2"].iter().map(|s| s.parse().unwrap()).collect();
    for s in build_factorization().stages() {
        let m = s.to_matrix();
        assert!(m.entries().iter().all(|z| allowed.contains(z)), "stage {}", s.name());
        for i in 0..8 {
            assert!(m.row(i).iter().filter(|z| !z.is_zero()).count() <= 2);
        }
    }
}

#[test]
fn near_orthogonality_frozen() {
    // exact oracle: G G* with G the printed integer matrix.
    // diagonal: 32 on even rows, 24 on odd rows; off-diagonal squared mass 256.
    let g = build_approx_matrix().integer_matrix().clone();
    let gram = matmul(&g, &g.adjoint()).unwrap();
    let mut diag = 0_i128;
    let mut off = 0_i128;
    for i in 0..8 {
        for k in 0..8 {
            let n = gram.get(i, k).norm_sqr_exact();
            if i == k {
                diag += n;
            } else {
                off += n;
            }
        }
    }
    assert_eq!((off, diag), (256, 6400));
    let frozen = 0.2;
    let got = orthogonality_deviation(&build_approx_matrix().dyadic_matrix()).unwrap();
    assert!((got - frozen).abs() < 1e-15, "{got}");
    // gram is diagonally dominant
    for i in 0..8 {
        let d = gram.get(i, i).norm_sqr_exact();
        let rest: i128 = (0..8).filter(|&k| k != i).map(|k| gram.get(i, k).norm_sqr_exact()).sum();
        assert!(d > rest);
    }
}

fn arb_frame() -> impl Strategy<Value = Vec<ComplexF>> {
    proptest::collection::vec((-1e3..1e3, -1e3..1e3).prop_map(|(a, b)| ComplexF::new(a, b)), 8)
}

fn arb_dyadic_frame() -> impl Strategy<Value = Vec<DyadicGaussian>> {
    let bound = 1_i64 << 16;
    proptest::collection::vec(
        (-bound..=bound, -bound..=bound, 0_u32..4).prop_map(|(r, i, e)| DyadicGaussian::new(r, i, e)),
        8,
    )
}

proptest! {
    #[test]
    fn fast_equals_direct_exactly(v in arb_dyadic_frame()) {
        let f = build_factorization();
        let t = build_approx_matrix();
        let direct = t.apply_direct_exact(&v).unwrap();
        prop_assert_eq!(apply_fast(&f, &v).unwrap(), direct.clone());
        let arr: [DyadicGaussian; 8] = v.try_into().unwrap();
        prop_assert_eq!(approx_dft8(&arr).to_vec(), direct);
    }

    #[test]
    fn fast_is_linear(u in arb_frame(), v in arb_frame(), a in -4.0..4.0_f64, b in -4.0..4.0_f64) {
        let f = build_factorization();
        let mix: Vec<ComplexF> = u.iter().zip(&v).map(|(x, y)| x * a + y * b).collect();
        let lhs = apply_fast(&f, &mix).unwrap();
        let fu = apply_fast(&f, &u).unwrap();
        let fv = apply_fast(&f, &v).unwrap();
        let rhs: Vec<ComplexF> = fu.iter().zip(&fv).map(|(x, y)| x * a + y * b).collect();
        let scale = rhs.iter().chain(&lhs).map(|z| z.norm()).fold(1.0, f64::max);
        for (x, y) in lhs.iter().zip(&rhs) {
            prop_assert!((x - y).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn inverse_round_trip(v in arb_frame()) {
        let f8 = build_exact_dft(8).unwrap();
        let back = adft_core::transforms::apply_inverse_exact(&apply_direct(&f8, &v).unwrap()).unwrap();
        let scale = v.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for (x, y) in back.iter().zip(&v) {
            prop_assert!((x - y).norm() <= 1e-12 * scale);
        }
    }
}

#[test]
fn mul_j_order_four_in_float() {
    let z = ComplexF::new(0.3, -1.7);
    assert_eq!(z.mul_j().mul_j().mul_j().mul_j(), z);
}
