use proptest::prelude::*;
use skewrel::states::{random_basis_with, random_density_with, StateRng};
use skewrel::{
    berta_bound, check_theorem, cond_entropy_after_measurement, ProjectiveBasis, QOptions,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theorem_holds_on_random_states(seed in any::<u64>(), db in 2usize..=3) {
        let mut rng = StateRng::new(seed, 0);
        let rho = random_density_with::<f64>(2 * db, &mut rng).with_split(2, db).unwrap();
        let phi = random_basis_with(2, &mut rng);
        let psi = random_basis_with(2, &mut rng);
        let rep = check_theorem(&rho, &phi, &psi, &QOptions { restarts: 8, ..QOptions::default() }).unwrap();
        prop_assert!(rep.slack >= -1e-6, "slack {}", rep.slack);
        prop_assert!(rep.is_finite());
        prop_assert_eq!(rep.slack, rep.lhs - rep.rhs);
    }

    #[test]
    fn berta_bound_below_entropic_sum(seed in any::<u64>()) {
        let mut rng = StateRng::new(seed, 0);
        let rho = random_density_with::<f64>(4, &mut rng).with_split(2, 2).unwrap();
        let (z, x) = (ProjectiveBasis::computational(2), ProjectiveBasis::fourier(2));
        let lhs = cond_entropy_after_measurement(&rho, &z).unwrap()
            + cond_entropy_after_measurement(&rho, &x).unwrap();
        prop_assert!(berta_bound(&rho, &z, &x).unwrap() <= lhs + 1e-9);
    }
}
