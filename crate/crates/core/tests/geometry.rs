mod common;

use std::sync::Arc;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use jalpha::dynamics::IntegratorConfig;
use jalpha::gauge::{DerivMode, GaugeChart, GaugeRotated};
use jalpha::models::model_by_name;

fn point(rng: &mut ChaCha8Rng, chart: &GaugeChart) -> Vec<f64> {
    let u: Vec<f64> = (0..chart.base_dim()).map(|_| rng.random_range(0.1..0.9)).collect();
    chart.domain().from_unit(&u)
}

#[test]
fn hyperbolic_metric_is_half_space_metric() {
    let chart = model_by_name("hyperbolic3").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let x = point(&mut rng, &chart);
        let g = chart.induced_metric(&x).unwrap().g_matrix;
        let expected = common::half_space_metric(&x);
        assert!((g - &expected).norm() <= 1e-13 * expected.norm(), "at {x:?}");
    }
}

#[test]
fn pulled_back_connection_is_levi_civita() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for name in ["hyperbolic3", "homog:su2", "homog:so3"] {
        let chart = model_by_name(name).unwrap();
        let metric = |x: &[f64]| chart.induced_metric(x).unwrap().g_matrix;
        for _ in 0..20 {
            let x = point(&mut rng, &chart);
            let ours = chart.connection_coefficients(&x).unwrap();
            let oracle = common::christoffel(&metric, &x, 1e-5);
            let scale = oracle.iter().map(|g| g.amax()).fold(1.0, f64::max);
            for (a, b) in ours.iter().zip(&oracle) {
                assert!((a - b).amax() < 1e-7 * scale, "{name} at {x:?}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn geodesics_match_christoffel_oracle_off_axis() {
    let chart = model_by_name("hyperbolic3").unwrap();
    let (x0, v) = ([0.5, -1.0, 2.0], [0.3, 0.8, -0.5]);
    let step = 1e-3;
    let (_, traj) = chart.geodesic_trajectory(&x0, &DVector::from_column_slice(&v), 1.5, &IntegratorConfig::with_step(step)).unwrap();
    let oracle = common::geodesic(&common::half_space_metric, &x0, &v, 1.5, step);
    for s in traj.iter().step_by(50) {
        let j = (s.t / step).round() as usize;
        assert!(common::max_diff(&s.p.x, &oracle[j].1) < 1e-6, "t = {}", s.t);
    }
}

#[test]
fn gauge_rotation_leaves_invariants_unchanged() {
    for name in ["hyperbolic3", "homog:su2"] {
        let chart = model_by_name(name).unwrap();
        let alg = chart.algebra().clone();
        let rotated = GaugeRotated::new(chart.fields().clone(), alg.clone(), alg.basis_element(1), vec![0.7, -0.3, 0.4]).unwrap();
        let other = GaugeChart::new(alg, chart.domain().clone(), Arc::new(rotated), DerivMode::Numeric { h: 1e-5 }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_same_invariants(&mut rng, &chart, &other, name);
    }
}

fn assert_same_invariants(rng: &mut ChaCha8Rng, chart: &GaugeChart, other: &GaugeChart, name: &str) {
    for _ in 0..20 {
        let x = point(rng, chart);
        let g0 = chart.induced_metric(&x).unwrap().g_matrix;
        let g1 = other.induced_metric(&x).unwrap().g_matrix;
        assert!((&g0 - g1).amax() < 1e-12 * g0.amax(), "{name}: metric changed");
        assert!(other.integrability_residuals(&x).unwrap().max() < 1e-6 * g0.amax(), "{name}: rotated chart not integrable");
        let (u, v) = (DVector::from_fn(3, |_, _| rng.random_range(-1.0..1.0)), DVector::from_fn(3, |_, _| rng.random_range(-1.0..1.0)));
        let k0 = chart.sectional_curvature(&x, &u, &v).unwrap();
        let k1 = other.sectional_curvature(&x, &u, &v).unwrap();
        assert!((k0 - k1).abs() < 1e-12, "{name}: {k0} vs {k1}");
    }
}

#[test]
fn numeric_and_analytic_derivatives_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for name in ["hyperbolic3", "homog:su2"] {
        let chart = model_by_name(name).unwrap();
        let numeric = chart.with_mode(DerivMode::Numeric { h: 1e-5 });
        for _ in 0..10 {
            let x = point(&mut rng, &chart);
            let a = chart.covariant_d_alpha(&x).unwrap();
            let b = numeric.curvature(&x).unwrap();
            let c = chart.curvature(&x).unwrap();
            let scale = c.max_norm(chart.algebra()).max(1.0);
            for mu in 0..3 {
                for nu in 0..3 {
                    assert!((b.get(mu, nu) - c.get(mu, nu)).coeff_norm() < 1e-7 * scale);
                    assert!(a.get(mu, nu).coeff_norm() < 1e-10 * scale);
                }
            }
        }
    }
}
