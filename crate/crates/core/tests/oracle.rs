use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tangleroof::oracle::{
    roof_upper_bound, verify_family, OracleOptions, RankTwoState, VerifyFlag, VerifyOptions,
};
use tangleroof::*;

fn light(sizes: Vec<usize>, restarts: usize, seed: u64) -> OracleOptions {
    OracleOptions {
        sizes,
        restarts,
        seed,
        ..Default::default()
    }
}

#[test]
fn identical_seeds_give_identical_results() {
    let fam = FamilyParams::new(0.8, 0.6, 0.48, 0.6, 0.64).unwrap();
    let rho = RankTwoState::family(&fam, 0.83).unwrap();
    let opts = light(vec![3, 4], 6, 99);
    let a = roof_upper_bound(&rho, &opts).unwrap();
    let b = roof_upper_bound(&rho, &opts).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.value.to_bits(), b.value.to_bits());

    // Execution on a single thread gives the same answer.
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let c = pool.install(|| roof_upper_bound(&rho, &opts).unwrap());
    assert_eq!(a, c);
}

#[test]
fn more_effort_never_hurts() {
    let fam = FamilyParams::symmetric();
    let rho = RankTwoState::family(&fam, 0.75).unwrap();
    let small = roof_upper_bound(&rho, &light(vec![3], 3, 5)).unwrap();
    let more_sizes = roof_upper_bound(&rho, &light(vec![3, 4], 3, 5)).unwrap();
    let more_restarts = roof_upper_bound(&rho, &light(vec![3, 4], 7, 5)).unwrap();
    assert!(more_sizes.value <= small.value);
    assert!(more_restarts.value <= more_sizes.value);
}

#[test]
fn bound_never_undercuts_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..3 {
        let fam = solve_coefficients(rng.random_range(0.2..4.0), rng.random_range(0.1..0.6)).unwrap();
        for p in [0.2, 0.5, 0.7, 0.9, 0.97] {
            let rho = RankTwoState::family(&fam, p).unwrap();
            let res = roof_upper_bound(&rho, &light(vec![3, 4], 6, 1)).unwrap();
            let exact = roof_value(&fam, p).unwrap();
            assert!(res.value >= exact - 1e-6, "p={p}: {} < {exact}", res.value);
            assert!(res.decomposition.residual(&rho.density_matrix()) <= 1e-10);
            assert_eq!(res.value, res.decomposition.average_tangle());
        }
    }
}

#[test]
fn product_ghz_of_zeros_is_zero_everywhere() {
    let t = 3.0_f64.sqrt().recip();
    let fam = FamilyParams::new(1.0, 0.0, t, t, t).unwrap();
    let opts = VerifyOptions {
        p_grid: 5,
        oracle: light(vec![3, 4], 4, 3),
        ..Default::default()
    };
    for row in verify_family(&fam, &opts).unwrap() {
        assert_eq!(row.analytic, 0.0);
        assert!(row.oracle <= 1e-6);
        assert_eq!(row.flag, VerifyFlag::Ok);
    }
}

#[test]
fn generic_state_outside_family() {
    // A random rank-2 state: the bound is a valid upper bound, nothing more.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let e1 = PureState3Q::random(&mut rng);
    let raw = PureState3Q::random(&mut rng);
    let ov = e1.inner(&raw);
    let e2 = PureState3Q::normalize(std::array::from_fn(|i| {
        raw.amplitudes()[i] - ov * e1.amplitudes()[i]
    }))
    .unwrap();
    let rho = RankTwoState::new([0.3, 0.7], [e1, e2]).unwrap();
    let res = roof_upper_bound(&rho, &light(vec![3, 4], 4, 2)).unwrap();
    let eigen_avg = 0.3 * three_tangle(&e1) + 0.7 * three_tangle(&e2);
    assert!(res.value <= eigen_avg + 1e-12);
    assert!(res.decomposition.residual(&rho.density_matrix()) <= 1e-10);
}
