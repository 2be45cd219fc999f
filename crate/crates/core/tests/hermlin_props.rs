use proptest::prelude::*;
use skewrel::hermlin::{
    commutator, herm_eig, kron, partial_trace, psd_sqrt, ComplexMatrix, Subsystem,
};
use skewrel::states::{random_density_with, random_hermitian_with, StateRng};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psd_sqrt_squares_back(seed in any::<u64>(), d in 2usize..=9) {
        let mut rng = StateRng::new(seed, 0);
        let rho = random_density_with::<f64>(d, &mut rng);
        // rank-deficient PSD input as well
        let g: ComplexMatrix<f64> = rng.ginibre(d);
        let mut low = ComplexMatrix::zeros(d);
        for j in 0..d / 2 {
            low = &low + &ComplexMatrix::outer(&g.column(j));
        }
        for m in [rho.matrix().clone(), low] {
            let s = psd_sqrt(&m).unwrap();
            prop_assert!((&s * &s).max_abs_diff(&m) <= 1e-9);
            prop_assert!(s.hermiticity_deviation() <= 1e-12);
        }
    }

    #[test]
    fn eig_reconstructs(seed in any::<u64>(), d in 1usize..=9) {
        let mut rng = StateRng::new(seed, 0);
        let h = random_hermitian_with::<f64>(d, &mut rng);
        let eig = herm_eig(&h).unwrap();
        prop_assert!(eig.reconstruct().max_abs_diff(&h) <= 1e-10);
        let u = &eig.eigenvectors;
        prop_assert!((&u.adjoint() * u).max_abs_diff(&ComplexMatrix::identity(d)) <= 1e-10);
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn density_spectrum_sums_to_one(seed in any::<u64>(), d in 2usize..=9) {
        let rho = random_density_with::<f64>(d, &mut StateRng::new(seed, 0));
        let sum: f64 = herm_eig(rho.matrix()).unwrap().eigenvalues.iter().sum();
        prop_assert!((sum - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn partial_trace_of_product(seed in any::<u64>(), da in 1usize..=3, db in 1usize..=3) {
        let mut rng = StateRng::new(seed, 0);
        let a = random_density_with::<f64>(da.max(1), &mut rng);
        let b = random_density_with::<f64>(db.max(1), &mut rng);
        let ab = kron(a.matrix(), b.matrix());
        let ra = partial_trace(&ab, da, db, Subsystem::A).unwrap();
        let rb = partial_trace(&ab, da, db, Subsystem::B).unwrap();
        prop_assert!(ra.max_abs_diff(a.matrix()) <= 1e-12);
        prop_assert!(rb.max_abs_diff(b.matrix()) <= 1e-12);
        prop_assert!((ra.trace().re - ab.trace().re).abs() <= 1e-12);
    }

    #[test]
    fn commutator_is_traceless(seed in any::<u64>(), d in 1usize..=9) {
        let mut rng = StateRng::new(seed, 0);
        let a: ComplexMatrix<f64> = rng.ginibre(d);
        let b: ComplexMatrix<f64> = rng.ginibre(d);
        prop_assert!(commutator(&a, &b).unwrap().trace().norm() <= 1e-12);
    }
}
