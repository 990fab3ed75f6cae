use boson_bounds::bounds::{bound_pair, lower_bound, upper_bound};
use boson_bounds::jacobi::{
    from_relative, jacobi_matrix, pair_sum_identity_residual, to_relative, Configuration,
};
use boson_bounds::model::{coupling_scaling_factor, SystemSpec};
use boson_bounds::variational::{gaussian_energy, optimal_a};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

proptest! {
    #[test]
    fn bounds_scale_with_cube_root(n in 2usize..2000, log_g in -6.0f64..6.0, log_s in -6.0f64..6.0) {
        let gamma = 10f64.powf(log_g);
        let s = 10f64.powf(log_s);
        let factor = coupling_scaling_factor(&SystemSpec::relativistic(n, gamma), s).unwrap();
        let base = bound_pair(n, gamma).unwrap();
        let scaled = bound_pair(n, s * gamma).unwrap();
        prop_assert!(rel(scaled.lower, factor * base.lower) < 1e-14);
        prop_assert!(rel(scaled.upper, factor * base.upper) < 1e-14);
        prop_assert!(rel(scaled.mean, factor * base.mean) < 1e-14);
        prop_assert!((scaled.rel_half_gap - base.rel_half_gap).abs() < 1e-15);
    }

    #[test]
    fn bounds_grow_with_pair_count(n in 2usize..100_000, log_g in -3.0f64..3.0) {
        let gamma = 10f64.powf(log_g);
        let nf = n as f64;
        let expect = (nf * (nf - 1.0) / 2.0).powf(2.0 / 3.0);
        prop_assert!(rel(lower_bound(n, gamma).unwrap() / lower_bound(2, gamma).unwrap(), expect) < 1e-12);
        prop_assert!(rel(upper_bound(n, gamma).unwrap() / upper_bound(2, gamma).unwrap(), expect) < 1e-12);
    }

    #[test]
    fn lower_never_exceeds_upper(n in 2usize..1_000_000, log_g in -8.0f64..8.0) {
        let b = bound_pair(n, 10f64.powf(log_g)).unwrap();
        prop_assert!(b.lower < b.upper);
        prop_assert!(b.rel_half_gap > 0.00142 && b.rel_half_gap < 0.00143);
    }

    #[test]
    fn gaussian_energy_dominates_upper_bound(n in 2usize..500, log_g in -3.0f64..3.0, log_a in -4.0f64..4.0) {
        let gamma = 10f64.powf(log_g);
        let t = gaussian_energy(n, gamma, 10f64.powf(log_a)).unwrap();
        let ub = upper_bound(n, gamma).unwrap();
        prop_assert!(t.energy >= ub * (1.0 - 1e-14));
        prop_assert_eq!(t.energy, t.kinetic_part + t.potential_part);
        // at the stationary point the kinetic part is twice the potential part
        let star = gaussian_energy(n, gamma, optimal_a(n, gamma).unwrap()).unwrap();
        prop_assert!(rel(star.kinetic_part, 2.0 * star.potential_part) < 1e-12);
    }

    #[test]
    fn jacobi_identities_hold(
        positions in prop::collection::vec(prop::array::uniform3(-50.0f64..50.0), 2..24),
        momenta_seed in prop::array::uniform3(-3.0f64..3.0),
    ) {
        let n = positions.len();
        let frame = jacobi_matrix(n).unwrap();
        let momenta: Vec<[f64; 3]> = positions
            .iter()
            .map(|p| [p[1] + momenta_seed[0], p[2] * momenta_seed[1], p[0] - momenta_seed[2]])
            .collect();
        let config = Configuration { positions, momenta: Some(momenta) };
        prop_assert!(pair_sum_identity_residual(&frame, &config).unwrap() < 1e-12);
        let back = from_relative(&frame, &to_relative(&frame, &config).unwrap()).unwrap();
        let scale = config.positions.iter().flatten().fold(1.0f64, |m, x| m.max(x.abs()));
        for (a, b) in back.positions.iter().zip(&config.positions) {
            for d in 0..3 {
                prop_assert!((a[d] - b[d]).abs() < 1e-12 * scale);
            }
        }
    }
}
