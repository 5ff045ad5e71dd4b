//! Test-only oracles that never touch `α`, `A` or the Lie bracket: metric
//! Christoffel symbols by finite differences and a plain RK4 geodesic solver.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};

pub type Metric<'a> = dyn Fn(&[f64]) -> DMatrix<f64> + 'a;

/// Upper half-space metric `δ / x₃²`.
pub fn half_space_metric(x: &[f64]) -> DMatrix<f64> {
    DMatrix::identity(3, 3) / (x[2] * x[2])
}

/// `Γ^λ_{μν} = ½ g^{λκ}(∂_μ g_{κν} + ∂_ν g_{κμ} - ∂_κ g_{μν})`, indexed
/// `[λ][(μ, ν)]`, with central differences of step `h`.
pub fn christoffel(metric: &Metric, x: &[f64], h: f64) -> Vec<DMatrix<f64>> {
    let n = x.len();
    let dg: Vec<DMatrix<f64>> = (0..n)
        .map(|k| {
            let (mut xp, mut xm) = (x.to_vec(), x.to_vec());
            xp[k] += h;
            xm[k] -= h;
            (metric(&xp) - metric(&xm)) / (2.0 * h)
        })
        .collect();
    let ginv = metric(x).try_inverse().expect("metric is invertible");
    (0..n)
        .map(|l| {
            DMatrix::from_fn(n, n, |mu, nu| {
                0.5 * (0..n).map(|k| ginv[(l, k)] * (dg[mu][(k, nu)] + dg[nu][(k, mu)] - dg[k][(mu, nu)])).sum::<f64>()
            })
        })
        .collect()
}

fn geodesic_rhs(metric: &Metric, y: &DVector<f64>) -> DVector<f64> {
    let n = y.len() / 2;
    let x: Vec<f64> = y.rows(0, n).iter().copied().collect();
    let v = y.rows(n, n).into_owned();
    let gamma = christoffel(metric, &x, 1e-5);
    let mut out = DVector::zeros(2 * n);
    out.rows_mut(0, n).copy_from(&v);
    for l in 0..n {
        out[n + l] = -(v.transpose() * &gamma[l] * &v)[(0, 0)];
    }
    out
}

/// States `(t, x)` of `ẍ^λ + Γ^λ_{μν} ẋ^μ ẋ^ν = 0` at every RK4 step.
pub fn geodesic(metric: &Metric, x0: &[f64], v0: &[f64], duration: f64, step: f64) -> Vec<(f64, Vec<f64>)> {
    let n = x0.len();
    let steps = (duration / step).round() as usize;
    let mut y = DVector::from_iterator(2 * n, x0.iter().chain(v0).copied());
    let mut out = vec![(0.0, x0.to_vec())];
    for i in 0..steps {
        let k1 = geodesic_rhs(metric, &y);
        let k2 = geodesic_rhs(metric, &(&y + &k1 * (0.5 * step)));
        let k3 = geodesic_rhs(metric, &(&y + &k2 * (0.5 * step)));
        let k4 = geodesic_rhs(metric, &(&y + &k3 * step));
        y += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (step / 6.0);
        out.push(((i + 1) as f64 * step, y.rows(0, n).iter().copied().collect()));
    }
    out
}

/// `max |a - b|` entrywise.
pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
}
