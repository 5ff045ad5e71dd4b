//! Acceptance gates. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::f64::consts::{PI, SQRT_2};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector, Vector3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use jalpha::cli::HaltonSampler;
use jalpha::curves::{
    complex_element, conformality, develop, develop_scalar_closed_form, lattice_condition, quadric_residual,
    scalar_factorization, CurveForm, DevelopConfig, Factorization, LatticeVerdict, Path, PeriodData, StabilizerGroup,
    Surface,
};
use jalpha::dynamics::IntegratorConfig;
use jalpha::gauge::{BundlePoint, DerivMode, Domain, GaugeChart, PolynomialFields};
use jalpha::lie::{AlgebraElement, CMatrix, ComplexAlgebraElement, LieAlgebra};
use jalpha::models::{build_homogeneous_sample, model_by_name, LMap};
use jalpha::poly::ComplexPoly;

type Check = Result<(bool, String), Box<dyn std::error::Error>>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-r..r)).collect()
}

fn vector(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    DVector::from_vec(uniform(rng, n, 1.0))
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_chart(rng: &mut ChaCha8Rng, i: usize) -> jalpha::Result<GaugeChart> {
    let alg = if i % 2 == 0 { LieAlgebra::su2() } else { LieAlgebra::so3() };
    let fields = PolynomialFields::random(3, 2, 0.5, rng);
    GaugeChart::new(alg, Domain::cube(3, -0.5, 0.5), Arc::new(fields), DerivMode::Analytic)
}

fn hyperbolic_integrability() -> Check {
    let chart = model_by_name("hyperbolic3")?;
    let mut halton = HaltonSampler::new(3, 1);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        worst = worst.max(chart.integrability_residuals(&halton.next_in(chart.domain()))?.max());
    }
    Ok((worst < 1e-8, format!("max(r1, r2) = {worst:.2e} over 100 points")))
}

fn sectional_curvature_constant() -> Check {
    let mut r = rng(2);
    let mut worst = [0.0f64; 2];
    for (slot, (name, expected)) in [("homog:su2", -2.0), ("hyperbolic3", -1.0)].into_iter().enumerate() {
        let chart = model_by_name(name)?;
        let mut halton = HaltonSampler::new(3, 2);
        for _ in 0..1000 {
            let x = halton.next_in(chart.domain());
            let k = chart.sectional_curvature(&x, &vector(&mut r, 3), &vector(&mut r, 3))?;
            worst[slot] = worst[slot].max((k - expected).abs());
        }
    }
    Ok((worst[0] < 1e-9 && worst[1] < 1e-8, format!("|K + 2| ≤ {:.2e}, |K + 1| ≤ {:.2e}", worst[0], worst[1])))
}

fn nijenhuis_equivalence() -> Check {
    let mut r = rng(3);
    let mut min_order = f64::INFINITY;
    for i in 0..50 {
        let chart = random_chart(&mut r, i)?;
        let alg = chart.algebra().clone();
        let p = BundlePoint::new(uniform(&mut r, 3, 0.3), alg.exp_real(&AlgebraElement::random(3, &mut r, 1.0))?);
        let (x, y) = (AlgebraElement::random(3, &mut r, 1.0), AlgebraElement::random(3, &mut r, 1.0));
        let closed = chart.nijenhuis_closed_form(&p, &x, &y)?;
        let err = |h: f64| -> jalpha::Result<f64> { chart.tangent_norm(&p, &(&chart.nijenhuis_numeric(&p, &x, &y, h)? - &closed)) };
        min_order = min_order.min((err(1e-3)? / err(5e-4)?).log2());
    }
    let mut worst = 0.0f64;
    for name in ["hyperbolic3", "homog:su2"] {
        let chart = model_by_name(name)?;
        let alg = chart.algebra().clone();
        let mut halton = HaltonSampler::new(3, 3);
        for _ in 0..20 {
            let p = BundlePoint::new(halton.next_in(chart.domain()), alg.exp_real(&AlgebraElement::random(3, &mut r, 1.0))?);
            let (x, y) = (AlgebraElement::random(3, &mut r, 1.0), AlgebraElement::random(3, &mut r, 1.0));
            worst = worst.max(chart.tangent_norm(&p, &chart.nijenhuis_numeric(&p, &x, &y, 1e-3)?)?);
        }
    }
    Ok((
        min_order >= 1.9 && worst < 1e-5,
        format!("min observed order {min_order:.3} on 50 charts, integrable models |N| ≤ {worst:.2e}"),
    ))
}

fn torsion_is_covariant_derivative() -> Check {
    let mut r = rng(4);
    let mut charts = (0..10).map(|i| random_chart(&mut r, i)).collect::<jalpha::Result<Vec<_>>>()?;
    charts.push(model_by_name("hyperbolic3")?);
    charts.push(model_by_name("homog:su2")?);
    let hyperbolic_box = Domain::new(vec![-2.0, -2.0, 0.2], vec![2.0, 2.0, 3.0])?;
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let chart = &charts[i % charts.len()];
        let x = if i % charts.len() == 10 {
            hyperbolic_box.from_unit(&uniform(&mut r, 3, 1.0).iter().map(|t| 0.5 + 0.5 * t).collect::<Vec<_>>())
        } else {
            uniform(&mut r, 3, 0.45)
        };
        let (u, v) = (vector(&mut r, 3), vector(&mut r, 3));
        let gamma = chart.connection_coefficients(&x)?;
        let t: Vec<f64> = gamma
            .iter()
            .map(|g| {
                let antisym = g - g.transpose();
                (u.transpose() * antisym * &v)[(0, 0)]
            })
            .collect();
        let lhs = chart.solder_of(&x, &t)?;
        let rhs = chart.covariant_d_alpha(&x)?.eval(u.as_slice(), v.as_slice());
        worst = worst.max((&lhs - &rhs).coeff_norm());
    }
    Ok((worst < 1e-10, format!("max ‖α(T(u,v)) - d_Aα(u,v)‖ = {worst:.2e} over 1000 samples")))
}

fn nonpositive_curvature() -> Check {
    let mut r = rng(5);
    let models = ["hyperbolic3", "homog:su2", "homog:so3", "homog:t2", "homog:t3", "abelian:2", "abelian:3"];
    let mut max_k = f64::NEG_INFINITY;
    let mut max_nonabelian = f64::NEG_INFINITY;
    let mut samples = 0;
    for (m, name) in models.iter().enumerate() {
        let chart = model_by_name(name)?;
        let n = chart.base_dim();
        let mut halton = HaltonSampler::new(n, 5);
        let count = if m == 0 { 10_000 - 1430 * (models.len() - 1) } else { 1430 };
        for _ in 0..count {
            let x = halton.next_in(chart.domain());
            let k = chart.sectional_curvature(&x, &vector(&mut r, n), &vector(&mut r, n))?;
            max_k = max_k.max(k);
            if m < 3 {
                max_nonabelian = max_nonabelian.max(k);
            }
            samples += 1;
        }
    }
    Ok((
        max_k <= 1e-12 && max_nonabelian < -1e-6,
        format!("max K = {max_k:.2e}, max K on su2/so3 models = {max_nonabelian:.3} over {samples} samples"),
    ))
}

fn geodesic_correspondence() -> Check {
    let chart = model_by_name("hyperbolic3")?;
    let step = 1e-3;
    let cfg = IntegratorConfig::with_step(step);
    let mut worst = 0.0f64;
    let mut drift = 0.0f64;
    let mut reached = f64::INFINITY;
    for v in [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0]] {
        let x0 = [0.0, 0.0, 1.0];
        let (gen, traj) = chart.geodesic_trajectory(&x0, &DVector::from_column_slice(&v), 2.0, &cfg)?;
        let oracle = common::geodesic(&common::half_space_metric, &x0, &v, 2.0, step);
        for s in &traj {
            let j = (s.t / step).round() as usize;
            worst = worst.max(common::max_diff(&s.p.x, &oracle[j].1));
        }
        reached = reached.min(traj.last().map_or(0.0, |s| s.t));
        drift = drift.max(chart.energy_drift(&traj, &gen)?);
    }
    Ok((
        worst < 1e-5 && drift < 1e-7 && (reached - 2.0).abs() < 1e-9,
        format!("max deviation from Christoffel oracle {worst:.2e}, speed drift {drift:.2e}"),
    ))
}

fn action_property() -> Check {
    let sample = build_homogeneous_sample("su2")?;
    let chart = &sample.chart;
    let alg = sample.algebra().clone();
    let cfg = IntegratorConfig::with_step(1e-3);
    let mut r = rng(7);
    let small = |r: &mut ChaCha8Rng| ComplexAlgebraElement::new(AlgebraElement::random(3, r, 0.3), AlgebraElement::random(3, r, 0.3));
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let p = BundlePoint::new(uniform(&mut r, 3, 0.3), alg.exp_real(&AlgebraElement::random(3, &mut r, 1.0))?);
        let (g, h) = (alg.exp_matrix(&small(&mut r))?, alg.exp_matrix(&small(&mut r))?);
        let twice = chart.complexified_action(&chart.complexified_action(&p, &g, &cfg)?, &h, &cfg)?;
        let once = chart.complexified_action(&p, &(&g * &h), &cfg)?;
        worst = worst.max(twice.distance(&once));
    }
    let mut min_order = f64::INFINITY;
    for _ in 0..5 {
        let p = BundlePoint::new(uniform(&mut r, 3, 0.3), alg.exp_real(&AlgebraElement::random(3, &mut r, 1.0))?);
        let x = AlgebraElement::random(3, &mut r, 1.0);
        let errs = [1e-2, 5e-3, 2.5e-3].map(|h| chart.psi_derivative_check(&p, &x, h, &cfg));
        let errs = errs.into_iter().collect::<jalpha::Result<Vec<_>>>()?;
        for w in errs.windows(2) {
            min_order = min_order.min((w[0].0 / w[1].0).log2()).min((w[0].1 / w[1].1).log2());
        }
    }
    Ok((
        worst < 1e-6 && min_order >= 0.9,
        format!("max ‖ψ(ψ(p,g),h) - ψ(p,gh)‖ = {worst:.2e}, min derivative convergence order {min_order:.2}"),
    ))
}

fn development() -> Check {
    let mut r = rng(8);
    let cfg = DevelopConfig::default();
    let disc = Surface::Disc { center: c(0.0, 0.0), radius: 1.0 };
    let mut worst = 0.0f64;
    for i in 0..100 {
        let alg = if i % 2 == 0 { LieAlgebra::su2() } else { LieAlgebra::so3() };
        let z = complex_element(&uniform(&mut r, 3, 0.5), &uniform(&mut r, 3, 0.5));
        let zeta = ComplexPoly::new((0..=i % 4).map(|_| c(r.random_range(-0.5..0.5), r.random_range(-0.5..0.5))).collect());
        let form = CurveForm::scalar(z, zeta, disc.clone())?;
        let path = Path::new((0..3).map(|_| Complex64::from_polar(r.random_range(0.0..0.8), r.random_range(0.0..2.0 * PI))).collect());
        let exact = develop_scalar_closed_form(&alg, &form, &path)?.ok_or("scalar form has a closed form")?;
        worst = worst.max(develop(&alg, &form, &path, &cfg)?.distance(&exact));
    }

    let alg = LieAlgebra::su2();
    let eta = CurveForm::polynomial(
        vec![complex_element(&[0.0, 0.8, 0.0], &[0.1, 0.0, 0.0]), complex_element(&[0.6, 0.0, 0.0], &[0.0, 0.0, 0.4])],
        disc,
    )?;
    let a = Path::segment(c(0.0, 0.0), c(0.6, 0.0));
    let b = Path::segment(c(0.6, 0.0), c(0.6, 0.5));
    let (ga, gb) = (develop(&alg, &eta, &a, &cfg)?, develop(&alg, &eta, &b, &cfg)?);
    let homomorphism = develop(&alg, &eta, &a.then(&b)?, &cfg)?.distance(&(&ga * &gb));
    let order_gap = (&ga * &gb).distance(&(&gb * &ga));
    Ok((
        worst < 1e-8 && homomorphism < 1e-7 && order_gap > 1e-3,
        format!("scalar develop vs closed form {worst:.2e}; two-segment homomorphism {homomorphism:.2e} (g(a)g(b) vs g(b)g(a) differ by {order_gap:.2})"),
    ))
}

/// Whether `(b1, b2)` generates the same lattice as `(1, i)`.
fn is_square_lattice_basis(b: &[Complex64; 2]) -> bool {
    let m = [[b[0].re, b[0].im], [b[1].re, b[1].im]];
    let integral = m.iter().flatten().all(|v| (v - v.round()).abs() < 1e-9);
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    integral && (det.abs() - 1.0).abs() < 1e-9
}

fn lattice_and_factorisation() -> Check {
    let su2 = LieAlgebra::su2();
    let z = complex_element(&[0.0, 0.0, -2.0 * SQRT_2 * PI], &[0.0; 3]);
    let two_pi_i = c(0.0, 2.0 * PI);
    let expected_z = CMatrix::from_diagonal(&DVector::from_vec(vec![two_pi_i, -two_pi_i]));
    let z_ok = (su2.matrix_of_complex(&z)? - expected_z).norm() < 1e-12;
    let tau = c(0.0, 1.0);
    let periods = PeriodData::torus(c(1.0, 0.0), tau);

    let gens = periods.periods.iter().map(|w| su2.exp_matrix(&z.scale(*w))).collect::<jalpha::Result<Vec<_>>>()?;
    let gamma = StabilizerGroup::new(&su2, gens, 3, 1e-9)?;
    let elliptic = match scalar_factorization(&su2, &z, &periods, &gamma)? {
        Factorization::Elliptic { basis } => is_square_lattice_basis(&basis),
        _ => false,
    };

    let trivial = StabilizerGroup::trivial(2);
    let fails_at_i = matches!(lattice_condition(&su2, &z, &periods, &trivial)?, LatticeVerdict::Fails { period } if (period - tau).norm() < 1e-15);
    let hand = CMatrix::from_diagonal(&DVector::from_vec(vec![c((-2.0 * PI).exp(), 0.0), c((2.0 * PI).exp(), 0.0)]));
    let exp_zi = su2.exp_matrix(&z.scale(tau))?;
    let hand_err = (exp_zi.matrix() - &hand).norm() / hand.norm();
    let rejected = matches!(scalar_factorization(&su2, &z, &periods, &trivial)?, Factorization::Rejected { .. });
    Ok((
        z_ok && elliptic && fails_at_i && rejected && hand_err < 1e-12,
        format!("elliptic basis ok: {elliptic}; trivial Γ fails at period i: {fails_at_i}; exp(Z·i) relative error {hand_err:.1e}"),
    ))
}

/// Coefficients of the null vector `(1 - s², i(1 + s²), 2s)` in an
/// orthonormal basis of the algebra's inner product.
fn null_direction(l_inv_t: &DMatrix<f64>, s: Complex64) -> ComplexAlgebraElement {
    let y = [c(1.0, 0.0) - s * s, c(0.0, 1.0) * (c(1.0, 0.0) + s * s), s * 2.0];
    let coeffs: Vec<Complex64> = (0..3).map(|i| (0..3).map(|j| y[j] * l_inv_t[(i, j)]).sum()).collect();
    ComplexAlgebraElement::from_complex_coeffs(&coeffs)
}

fn quadric() -> Check {
    let su2 = LieAlgebra::su2();
    let l = su2.metric().clone().cholesky().ok_or("metric is positive definite")?.l();
    let l_inv_t = l.transpose().try_inverse().ok_or("triangular factor is invertible")?;
    let mut r = rng(10);
    let disc = Surface::Disc { center: c(0.0, 0.0), radius: 1.0 };
    let (mut worst_coeff, mut worst_conf) = (0.0f64, 0.0f64);
    for _ in 0..10 {
        // s(z) = s0 + s1 z, so μ(z) = v(s(z)) has degree 2 and moving direction
        let (s0, s1) = (c(r.random_range(-0.5..0.5), r.random_range(-0.5..0.5)), c(r.random_range(-0.5..0.5), r.random_range(-0.5..0.5)));
        let v0 = null_direction(&l_inv_t, c(0.0, 0.0));
        let quad = |s: Complex64| null_direction(&l_inv_t, s);
        // expand v(s0 + s1 z) in powers of z: v is quadratic in s
        let a = &quad(c(1.0, 0.0)) - &v0;
        let b = &quad(c(-1.0, 0.0)) - &v0;
        let lin = (&a - &b).scale(c(0.5, 0.0));
        let sq = (&a + &b).scale(c(0.5, 0.0));
        let coeffs = vec![
            &(&v0 + &lin.scale(s0)) + &sq.scale(s0 * s0),
            &lin.scale(s1) + &sq.scale(s0 * s1 * 2.0),
            sq.scale(s1 * s1),
        ];
        let eta = CurveForm::polynomial(coeffs, disc.clone())?;
        worst_coeff = worst_coeff.max(quadric_residual(&su2, &eta));
        for _ in 0..10 {
            let z = Complex64::from_polar(r.random_range(0.0..0.95), r.random_range(0.0..2.0 * PI));
            let conf = conformality(&su2, &eta, z);
            worst_conf = worst_conf.max(conf.residual).max(conf.defect);
        }
    }
    let real = CurveForm::polynomial(vec![complex_element(&[1.0, 0.0, 0.0], &[0.0; 3])], disc)?;
    let real_residual = quadric_residual(&su2, &real);
    let real_defect = conformality(&su2, &real, c(0.2, 0.1)).defect;
    Ok((
        worst_coeff < 1e-14 && worst_conf < 1e-12 && real_residual > 1e-6 && real_defect > 1e-6,
        format!(
            "isotropic Σμ² coefficients ≤ {worst_coeff:.1e}, conformality ≤ {worst_conf:.1e} at 100 points; real direction Σμ² = {real_residual:.3}"
        ),
    ))
}

fn lie_kernel() -> Check {
    let mut r = rng(11);
    let (mut jacobi, mut antisym, mut invariance, mut equivariance, mut cross, mut kappa) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let so3 = LieAlgebra::so3();
    for i in 0..1000 {
        let alg = if i % 2 == 0 { LieAlgebra::su2() } else { so3.clone() };
        let [x, y, z] = [(); 3].map(|_| AlgebraElement::random(3, &mut r, 1.0));
        let br = |a: &AlgebraElement, b: &AlgebraElement| alg.bracket(a, b);
        let j = &(&br(&br(&x, &y)?, &z)? + &br(&br(&y, &z)?, &x)?) + &br(&br(&z, &x)?, &y)?;
        jacobi = jacobi.max(j.coeff_norm());
        antisym = antisym.max((&br(&x, &y)? + &br(&y, &x)?).coeff_norm());
        invariance = invariance.max(alg.invariance_defect(&z, &x, &y));

        let [u, v, w] = [(); 3].map(|_| Vector3::from_iterator(uniform(&mut r, 3, 1.0)));
        let rot = so3.exp_real(&AlgebraElement::random(3, &mut r, 2.0))?;
        let rm = rot.matrix().map(|e| e.re);
        let rx = Vector3::from_iterator((&rm * DVector::from_column_slice(u.as_slice())).iter().copied());
        equivariance = equivariance.max((&so3.ad_action(&rot, &LMap.apply(&u))? - &LMap.apply(&rx)).coeff_norm());

        cross = cross.max(((v.cross(&w)).cross(&u) - (u.dot(&v) * w - u.dot(&w) * v)).norm());
        let (lu, lv, lw) = (LMap.apply(&u), LMap.apply(&v), LMap.apply(&w));
        let nested = so3.bracket(&so3.bracket(&lv, &lw)?, &lu)?;
        let rhs = (&lv * so3.inner(&lu, &lw)? - &lw * so3.inner(&lu, &lv)?) * -1.0;
        kappa = kappa.max((&nested - &rhs).coeff_norm());
        cross = cross.max((LMap.inverse(&so3.bracket(&lv, &lw)?) - v.cross(&w)).norm());
    }
    let worst = [jacobi, antisym, invariance, equivariance, cross, kappa].into_iter().fold(0.0, f64::max);
    Ok((
        worst < 1e-14,
        format!(
            "Jacobi {jacobi:.1e}, antisymmetry {antisym:.1e}, ad-invariance {invariance:.1e}, L equivariance {equivariance:.1e}, vector product {cross:.1e}, κ = -1 identity {kappa:.1e}"
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, u64); 11] = [
        ("hyperbolic integrability", hyperbolic_integrability, 1),
        ("constant sectional curvature", sectional_curvature_constant, 5),
        ("Nijenhuis oracle vs closed form", nijenhuis_equivalence, 60),
        ("torsion equals d_A α", torsion_is_covariant_derivative, 5),
        ("non-positive curvature", nonpositive_curvature, 10),
        ("geodesic correspondence", geodesic_correspondence, 10),
        ("complexified action", action_property, 30),
        ("development", development, 10),
        ("lattice condition and factorisation", lattice_and_factorisation, 1),
        ("quadric", quadric, 1),
        ("Lie kernel identities", lie_kernel, 1),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let (mut ok, mut detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        let elapsed = start.elapsed();
        if elapsed > Duration::from_secs(budget) {
            ok = false;
            detail.push_str(&format!("; over the {budget} s budget"));
        }
        println!("{} {:>2}. {name}: {detail} ({:.2} s)", if ok { "PASS" } else { "FAIL" }, i + 1, elapsed.as_secs_f64());
        failed += usize::from(!ok);
    }
    if failed == 0 {
        println!("all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
