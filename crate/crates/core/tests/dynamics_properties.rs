use foliation_core::dynamics::{
    averaging_operator_norm, covering_radius, enumerate_ball, harmonic_dimension, harmonic_space, haar_probes,
    laplacian_matrix, plane_rotation, DynError, GeneratorImages, DEFAULT_DEDUP_TOL, DEFAULT_POWER_ITERS, DEFAULT_POWER_TOL,
};
use foliation_core::exactnum::Field;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn two_rotations(a: f64, b: f64) -> GeneratorImages {
    GeneratorImages::from_float(vec![plane_rotation(3, 0, 1, a), plane_rotation(3, 1, 2, b)])
}

fn close(a: &DMatrix<f64>, b: &DMatrix<f64>) -> bool {
    (a - b).amax() <= 1e-9
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn balls_are_nested(a in 0.1f64..3.0, b in 0.1f64..3.0) {
        let g = two_rotations(a, b);
        let big = enumerate_ball(&g, 4, DEFAULT_DEDUP_TOL, 100_000).unwrap();
        for r in 1..4 {
            let small = enumerate_ball(&g, r, DEFAULT_DEDUP_TOL, 100_000).unwrap();
            prop_assert_eq!(small.len(), big.layer_ends[r]);
            for e in &small.elements {
                prop_assert!(big.up_to(r + 1).iter().any(|f| close(&e.matrix, &f.matrix)));
            }
        }
    }

    #[test]
    fn covering_radius_never_increases(a in 0.1f64..3.0, b in 0.1f64..3.0, seed in any::<u64>()) {
        let ball = enumerate_ball(&two_rotations(a, b), 5, DEFAULT_DEDUP_TOL, 100_000).unwrap();
        let report = covering_radius(&ball, 60, seed).unwrap();
        prop_assert!(report.is_non_increasing());
    }

    #[test]
    fn averaging_norm_is_a_contraction(seed in any::<u64>(), count in 1usize..4, n in 2usize..5, d in 1usize..4) {
        let g = GeneratorImages::from_float(haar_probes(n, count, seed));
        let h = harmonic_space(n, d, 2000).unwrap();
        // near-degenerate top eigenvalues may exhaust the iteration cap
        match averaging_operator_norm(&g, &h, DEFAULT_POWER_TOL, DEFAULT_POWER_ITERS) {
            Ok(est) => {
                prop_assert!(est.converged);
                if let Some(x) = est.estimate {
                    prop_assert!((0.0..=1.0 + 1e-8).contains(&x));
                }
            }
            Err(e) => prop_assert!(matches!(e, DynError::NotConverged { .. }), "{e}"),
        }
    }

    #[test]
    fn harmonic_action_is_a_homomorphism(seed in any::<u64>(), d in 1usize..5) {
        let gens = GeneratorImages::from_float(haar_probes(4, 2, seed));
        let ball = enumerate_ball(&gens, 2, DEFAULT_DEDUP_TOL, 1000).unwrap();
        let h = harmonic_space(4, d, 2000).unwrap();
        let m = ball.matrices();
        let (x, y) = (&m[m.len() / 3], &m[m.len() - 1]);
        let lhs = h.representation(&(x * y));
        let rhs = h.representation(x) * h.representation(y);
        prop_assert!((lhs - rhs).amax() <= 1e-9);
    }
}

#[test]
fn harmonic_dimensions_and_laplacian() {
    for n in 2..=6 {
        for d in 0..=5 {
            let h = harmonic_space(n, d, 2000).unwrap();
            assert_eq!(h.dim(), harmonic_dimension(n, d), "n={n} d={d}");
            let lap = laplacian_matrix(n, d);
            for v in &h.exact_basis {
                assert!(lap.mul_vec(v).iter().all(Field::is_zero));
            }
        }
    }
}

#[test]
fn pool_size_does_not_change_results() {
    let g = two_rotations(0.7, 2f64.sqrt());
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let ball = enumerate_ball(&g, 5, DEFAULT_DEDUP_TOL, 100_000).unwrap();
            let cov = covering_radius(&ball, 100, 5).unwrap();
            let words: Vec<Vec<u8>> = ball.elements.iter().map(|e| e.word.clone()).collect();
            (words, cov.covering_radius)
        })
    };
    assert_eq!(run(1), run(4));
}
