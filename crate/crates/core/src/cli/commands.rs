use std::f64::consts::PI;
use std::path::PathBuf;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use serde_json::{json, Value};

use super::sampling::{rng, HaltonSampler};
use super::{CliError, CurveParams, GeneratorSpec, Outcome, RunOptions, Scenario};
use crate::curves::{
    conformality, develop, develop_scalar_closed_form, lattice_condition, quadric_polynomial, scalar_factorization,
    type10_residual, CurveForm, DevelopConfig, Factorization, FormKind, LatticeVerdict, Path, PeriodData, StabilizerGroup,
    Surface,
};
use crate::dynamics::IntegratorConfig;
use crate::error::Error;
use crate::gauge::{BundlePoint, GaugeChart};
use crate::lie::{AlgebraElement, CMatrix, GroupElement, LieAlgebra};

/// Step of the finite-difference Nijenhuis oracle.
pub const NIJENHUIS_H: f64 = 1e-3;
/// Numbers of histogram bins in curvature reports.
pub const HISTOGRAM_BINS: usize = 20;
/// Sectional curvatures above this count as positive.
pub const NONPOSITIVE_SLACK: f64 = 1e-12;
/// Speed drift allowed along a geodesic.
pub const SPEED_DRIFT_TOL: f64 = 1e-7;

struct Sink {
    dir: Option<PathBuf>,
    files: Vec<PathBuf>,
}

impl Sink {
    fn new(opts: &RunOptions) -> Result<Self, CliError> {
        if let Some(d) = &opts.out {
            std::fs::create_dir_all(d).map_err(|e| CliError { code: 3, message: format!("cannot create {}: {e}", d.display()) })?;
        }
        Ok(Self { dir: opts.out.clone(), files: Vec::new() })
    }

    fn json(&mut self, name: &str, value: &Value) -> Result<(), CliError> {
        let Some(dir) = &self.dir else { return Ok(()) };
        let path = dir.join(name);
        let mut text = serde_json::to_string_pretty(value).map_err(Error::from)?;
        text.push('\n');
        std::fs::write(&path, text).map_err(|e| CliError { code: 3, message: format!("cannot write {}: {e}", path.display()) })?;
        self.files.push(path);
        Ok(())
    }

    fn csv(&mut self, name: &str, header: &[String], rows: &[Vec<f64>]) -> Result<(), CliError> {
        let Some(dir) = &self.dir else { return Ok(()) };
        let path = dir.join(name);
        let io = |e: csv::Error| CliError { code: 3, message: format!("cannot write {}: {e}", path.display()) };
        let mut w = csv::Writer::from_path(&path).map_err(io)?;
        w.write_record(header).map_err(io)?;
        for r in rows {
            w.write_record(r.iter().map(|v| format!("{v:e}"))).map_err(io)?;
        }
        w.flush().map_err(|e| CliError { code: 3, message: e.to_string() })?;
        self.files.push(path);
        Ok(())
    }

    fn finish(self, passed: bool, report: Value) -> Outcome {
        Outcome { passed, report, files: self.files }
    }
}

fn coord_header(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn random_point(chart: &GaugeChart, x: Vec<f64>, rng: &mut impl Rng) -> Result<BundlePoint, Error> {
    let alg = chart.algebra();
    let k = alg.exp_real(&AlgebraElement::random(alg.dim(), rng, 1.0))?;
    Ok(BundlePoint::new(x, k))
}

/// Integrability residuals and both Nijenhuis evaluations over sampled points.
pub fn cmd_verify(s: &Scenario, opts: &RunOptions) -> Result<Outcome, CliError> {
    let chart = s.build_chart()?;
    let (seed, points, tol) = (opts.seed(s), opts.points(s, 100), opts.tol(s, 1e-8));
    let mut sink = Sink::new(opts)?;
    let n = chart.base_dim();
    let with_group = chart.algebra().has_representation();
    let mut sampler = HaltonSampler::new(n, seed);
    let mut r = rng(seed);
    let (mut r1, mut r2, mut closed, mut numeric) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut rows = Vec::with_capacity(points);
    for _ in 0..points {
        let x = sampler.next_in(chart.domain());
        let res = chart.integrability_residuals(&x)?;
        let (mut c, mut d) = (f64::NAN, f64::NAN);
        if with_group {
            let p = random_point(&chart, x.clone(), &mut r)?;
            let dim = chart.algebra().dim();
            let (a, b) = (AlgebraElement::random(dim, &mut r, 1.0), AlgebraElement::random(dim, &mut r, 1.0));
            c = chart.tangent_norm(&p, &chart.nijenhuis_closed_form(&p, &a, &b)?)?;
            d = chart.tangent_norm(&p, &chart.nijenhuis_numeric(&p, &a, &b, NIJENHUIS_H)?)?;
            closed = closed.max(c);
            numeric = numeric.max(d);
        }
        r1 = r1.max(res.r1);
        r2 = r2.max(res.r2);
        let mut row = x;
        row.extend([res.r1, res.r2, c, d]);
        rows.push(row);
    }
    let numeric_tol = tol.max(10.0 * NIJENHUIS_H * NIJENHUIS_H);
    let integrable = r1 <= tol && r2 <= tol && (!with_group || (closed <= tol && numeric <= numeric_tol));
    let verdict = if integrable { "integrable within tolerance" } else { "non-integrable" };
    log::info!("verify: max r1 {r1:e}, max r2 {r2:e}, verdict {verdict}");
    let report = json!({
        "command": "verify",
        "model": s.model_name(),
        "seed": seed,
        "points": points,
        "tol": tol,
        "max_r1": r1,
        "max_r2": r2,
        "max_nijenhuis_closed": if with_group { json!(closed) } else { Value::Null },
        "max_nijenhuis_numeric": if with_group { json!(numeric) } else { Value::Null },
        "nijenhuis_h": NIJENHUIS_H,
        "nijenhuis_numeric_tol": numeric_tol,
        "verdict": verdict,
    });
    let mut header = coord_header("x", n);
    header.extend(["r1", "r2", "nijenhuis_closed", "nijenhuis_numeric"].map(String::from));
    sink.csv("verify_points.csv", &header, &rows)?;
    sink.json("verify.json", &report)?;
    Ok(sink.finish(integrable, report))
}

/// Sectional curvature on random planes at sampled points.
pub fn cmd_curvature(s: &Scenario, opts: &RunOptions) -> Result<Outcome, CliError> {
    let chart = s.build_chart()?;
    let (seed, points, tol) = (opts.seed(s), opts.points(s, 1000), opts.tol(s, 1e-8));
    let mut sink = Sink::new(opts)?;
    let n = chart.base_dim();
    if n < 2 {
        return Err(CliError::usage("sectional curvature needs a base of dimension at least two"));
    }
    let mut sampler = HaltonSampler::new(n, seed);
    let mut r = rng(seed);
    let mut rows = Vec::with_capacity(points);
    let mut ks = Vec::with_capacity(points);
    for _ in 0..points {
        let x = sampler.next_in(chart.domain());
        let k = loop {
            let u = DVector::from_fn(n, |_, _| r.random_range(-1.0..1.0));
            let v = DVector::from_fn(n, |_, _| r.random_range(-1.0..1.0));
            match chart.sectional_curvature(&x, &u, &v) {
                Err(Error::Degenerate) => continue,
                other => break other?,
            }
        };
        ks.push(k);
        let mut row = x;
        row.push(k);
        rows.push(row);
    }
    let min = ks.iter().copied().fold(f64::INFINITY, f64::min);
    let max = ks.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = ks.iter().sum::<f64>() / ks.len().max(1) as f64;
    let (passed, deviation) = match s.expected_curvature {
        Some(e) => {
            let dev = ks.iter().map(|k| (k - e).abs()).fold(0.0, f64::max);
            (dev <= tol, Some(dev))
        }
        None => (max <= NONPOSITIVE_SLACK, None),
    };
    let width = (max - min) / HISTOGRAM_BINS as f64;
    let mut counts = vec![0usize; HISTOGRAM_BINS];
    for k in &ks {
        let i = if width > 0.0 { (((k - min) / width) as usize).min(HISTOGRAM_BINS - 1) } else { 0 };
        counts[i] += 1;
    }
    let histogram: Vec<Vec<f64>> = counts
        .iter()
        .enumerate()
        .map(|(i, c)| vec![min + i as f64 * width, min + (i + 1) as f64 * width, *c as f64])
        .collect();
    let verdict = match (passed, s.expected_curvature.is_some()) {
        (true, true) => "matches expected curvature",
        (false, true) => "deviates from expected curvature",
        (true, false) => "nonpositive",
        (false, false) => "positive curvature found",
    };
    let report = json!({
        "command": "curvature",
        "model": s.model_name(),
        "seed": seed,
        "points": points,
        "tol": tol,
        "min": min,
        "max": max,
        "mean": mean,
        "expected": s.expected_curvature,
        "max_deviation": deviation,
        "verdict": verdict,
    });
    let mut header = coord_header("x", n);
    header.push("sectional_curvature".into());
    sink.csv("curvature_samples.csv", &header, &rows)?;
    sink.csv("curvature_histogram.csv", &["lower", "upper", "count"].map(String::from), &histogram)?;
    sink.json("curvature.json", &report)?;
    Ok(sink.finish(passed, report))
}

fn default_initial(s: &Scenario, chart: &GaugeChart) -> Result<Vec<(Vec<f64>, DVector<f64>)>, Error> {
    if s.model_name() == "hyperbolic3" {
        // vertical line and the semicircle through (0, 0, 1)
        return Ok(vec![
            (vec![0.0, 0.0, 1.0], DVector::from_column_slice(&[0.0, 0.0, 1.0])),
            (vec![0.0, 0.0, 1.0], DVector::from_column_slice(&[1.0, 0.0, 0.0])),
        ]);
    }
    let d = chart.domain();
    let x: Vec<f64> = d.min.iter().zip(&d.max).map(|(a, b)| 0.5 * (a + b)).collect();
    let mut v = DVector::zeros(chart.base_dim());
    v[0] = 1.0;
    let speed = chart.induced_metric(&x)?.inner(&v, &v).sqrt();
    Ok(vec![(x, v / speed)])
}

/// Geodesics as base projections of `J_α X^#` flows.
pub fn cmd_geodesic(s: &Scenario, opts: &RunOptions) -> Result<Outcome, CliError> {
    let chart = s.build_chart()?;
    let params = s.geodesic.clone().unwrap_or_default();
    let (step, tol) = (opts.step(s, 1e-3), opts.tol(s, 1e-5));
    if !(params.duration > 0.0) || params.stride == 0 {
        return Err(CliError::usage("geodesic duration and stride must be positive"));
    }
    let initial = if params.initial.is_empty() {
        default_initial(s, &chart)?
    } else {
        params.initial.iter().map(|g| (g.x.clone(), DVector::from_column_slice(&g.v))).collect()
    };
    let n = chart.base_dim();
    for (x, v) in &initial {
        if x.len() != n || v.len() != n {
            return Err(CliError::usage(format!("initial data must have {n} coordinates")));
        }
        if v.norm() == 0.0 {
            return Err(CliError::usage("initial velocity must be nonzero"));
        }
    }
    let cfg = IntegratorConfig::with_step(step);
    let mut sink = Sink::new(opts)?;
    let mut summaries = Vec::new();
    let mut passed = true;
    let alg = chart.algebra();
    let m = alg.rep_size()?;
    for (i, (x, v)) in initial.iter().enumerate() {
        match chart.geodesic_trajectory(x, v, params.duration, &cfg) {
            Ok((gen, traj)) => {
                let residual = chart.geodesic_residual(&traj, &gen)?;
                let drift = chart.energy_drift(&traj, &gen)?;
                let ok = residual <= tol && drift <= SPEED_DRIFT_TOL;
                passed &= ok;
                let cdot0 = chart.j_base_velocity(&traj[0].p, &gen)?;
                let e0 = chart.induced_metric(&traj[0].p.x)?.inner(&cdot0, &cdot0);
                let mut rows = Vec::new();
                for st in traj.iter().step_by(params.stride) {
                    let cdot = chart.j_base_velocity(&st.p, &gen)?;
                    let e = chart.induced_metric(&st.p.x)?.inner(&cdot, &cdot);
                    let mut row = vec![st.t];
                    row.extend(&st.p.x);
                    row.extend(st.p.k.matrix().iter().flat_map(|c| [c.re, c.im]));
                    row.push((e - e0).abs());
                    rows.push(row);
                }
                let mut header = vec!["t".to_string()];
                header.extend(coord_header("x", n));
                // column-major entries of k
                for c in 0..m {
                    for r in 0..m {
                        header.push(format!("k{}{}_re", r + 1, c + 1));
                        header.push(format!("k{}{}_im", r + 1, c + 1));
                    }
                }
                header.push("speed_drift".into());
                sink.csv(&format!("geodesic_{i}.csv"), &header, &rows)?;
                let end = &traj.last().expect("non-empty trajectory").p.x;
                summaries.push(json!({
                    "index": i,
                    "x0": x,
                    "v0": v.as_slice(),
                    "status": "completed",
                    "endpoint": end,
                    "geodesic_residual": residual,
                    "speed_drift": drift,
                    "passed": ok,
                }));
            }
            Err(Error::ChartExit { t }) => {
                passed = false;
                summaries.push(json!({ "index": i, "x0": x, "v0": v.as_slice(), "status": "chart_exit", "exit_time": t, "passed": false }));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let report = json!({
        "command": "geodesic",
        "model": s.model_name(),
        "step": step,
        "duration": params.duration,
        "tol": tol,
        "speed_drift_tol": SPEED_DRIFT_TOL,
        "trajectories": summaries,
        "verdict": if passed { "geodesic" } else { "failed" },
    });
    sink.json("geodesic.json", &report)?;
    Ok(sink.finish(passed, report))
}

fn generator(alg: &LieAlgebra, g: &GeneratorSpec) -> Result<GroupElement, Error> {
    match g {
        GeneratorSpec::Exp { exp } => alg.exp_matrix(&exp.to_element()?),
        GeneratorSpec::Matrix { matrix } => {
            let n = matrix.len();
            if matrix.iter().any(|r| r.len() != n) {
                return Err(Error::Invalid("generator matrix must be square".into()));
            }
            Ok(GroupElement::from_matrix(CMatrix::from_fn(n, n, |r, c| Complex64::new(matrix[r][c][0], matrix[r][c][1]))))
        }
    }
}

/// Sample points on the surface: a disc, or a fundamental domain of the torus.
fn surface_points(form: &CurveForm, count: usize, seed: u64) -> Vec<Complex64> {
    let mut h = HaltonSampler::new(2, seed);
    (0..count)
        .map(|_| {
            let u = h.next_unit();
            match form.surface {
                Surface::Disc { center, radius } => center + Complex64::from_polar(0.9 * radius * u[0].sqrt(), 2.0 * PI * u[1]),
                Surface::Torus { tau } => Complex64::new(u[0], 0.0) + tau * u[1],
            }
        })
        .collect()
}

fn complex_list(cs: &[Complex64]) -> Value {
    json!(cs.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>())
}

fn matrix_value(m: &CMatrix) -> Value {
    json!((0..m.nrows()).map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// Development, lattice condition, factorisation and quadric checks.
pub fn cmd_curve(s: &Scenario, opts: &RunOptions) -> Result<Outcome, CliError> {
    let params: &CurveParams = s.curve.as_ref().ok_or_else(|| CliError::usage("scenario has no curve section"))?;
    let alg = params.algebra.build()?;
    let form = params.form.to_form()?;
    if form.dim() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), found: form.dim() }.into());
    }
    let (seed, points, tol) = (opts.seed(s), opts.points(s, 100), opts.tol(s, 1e-8));
    let cfg = DevelopConfig { integrator: IntegratorConfig::with_step(opts.step(s, 1e-3)), ..DevelopConfig::default() };
    let mut sink = Sink::new(opts)?;

    let quadric = quadric_polynomial(&alg, &form);
    let samples = surface_points(&form, points, seed);
    let (mut type10, mut conf_res, mut conf_defect) = (0.0f64, 0.0f64, 0.0f64);
    let mut rows = Vec::with_capacity(samples.len());
    for &z in &samples {
        let t = type10_residual(&alg, |a, b| form.eval(z, (a, b)));
        let c = conformality(&alg, &form, z);
        type10 = type10.max(t);
        conf_res = conf_res.max(c.residual);
        conf_defect = conf_defect.max(c.defect);
        rows.push(vec![z.re, z.im, t, c.residual, c.defect]);
    }

    let mut report = json!({
        "command": "curve",
        "algebra": alg.name(),
        "seed": seed,
        "points": points,
        "tol": tol,
        "quadric": {
            "coefficients": complex_list(&quadric.coeffs),
            "max_coefficient": quadric.max_coeff(),
            "zero_polynomial": quadric.max_coeff() <= 1e-14,
        },
        "max_type10_residual": type10,
        "max_conformality_residual": conf_res,
        "max_conformal_defect": conf_defect,
    });

    let mut passed = true;
    match &form.kind {
        FormKind::Polynomial { .. } => {
            report["kind"] = json!("polynomial");
            report["verdict"] = json!(if quadric.max_coeff() <= 1e-14 { "on quadric" } else { "off quadric" });
        }
        FormKind::Scalar { z, zeta } => {
            report["kind"] = json!("scalar");
            // development against the closed form along rays from the base point
            let base = match form.surface {
                Surface::Disc { center, .. } => center,
                Surface::Torus { .. } => Complex64::new(0.0, 0.0),
            };
            let mut dev_err = 0.0f64;
            for &w in samples.iter().take(20) {
                let path = Path::segment(base, w);
                let g = develop(&alg, &form, &path, &cfg)?;
                let exact = develop_scalar_closed_form(&alg, &form, &path)?.expect("scalar form");
                dev_err = dev_err.max(g.distance(&exact));
            }
            report["max_develop_error"] = json!(dev_err);

            let periods = match (params.periods(), &form.surface) {
                (Some(p), _) => PeriodData::new(p),
                (None, Surface::Torus { tau }) => PeriodData::torus(zeta.eval(Complex64::new(0.0, 0.0)), *tau),
                (None, Surface::Disc { .. }) => PeriodData::new(Vec::new()),
            };
            let spec = &params.stabilizer;
            let mut gens = spec.generators.iter().map(|g| generator(&alg, g)).collect::<Result<Vec<_>, _>>()?;
            if spec.from_periods {
                for &w in &periods.periods {
                    gens.push(alg.exp_matrix(&z.scale(w))?);
                }
            }
            if gens.is_empty() {
                gens.push(alg.identity()?);
            }
            let gamma = StabilizerGroup::new(&alg, gens, spec.closure_depth, spec.tolerance)?;
            let lattice = lattice_condition(&alg, z, &periods, &gamma)?;
            report["periods"] = complex_list(&periods.periods);
            report["lattice_condition"] = match &lattice {
                LatticeVerdict::Holds { witnesses } => json!({
                    "holds": true,
                    "witnesses": witnesses.iter().map(|(w, word)| json!({ "period": [w.re, w.im], "word": word })).collect::<Vec<_>>(),
                }),
                LatticeVerdict::Fails { period } => json!({
                    "holds": false,
                    "witness_period": [period.re, period.im],
                    "exp_z_period": matrix_value(alg.exp_matrix(&z.scale(*period))?.matrix()),
                }),
                LatticeVerdict::Undecided { period } => json!({ "holds": Value::Null, "undecided_period": [period.re, period.im] }),
            };
            let fact = scalar_factorization(&alg, z, &periods, &gamma)?;
            report["factorization"] = match &fact {
                Factorization::Constant { reason } => json!({ "classification": "constant", "reason": reason }),
                Factorization::Elliptic { basis } => json!({ "classification": "elliptic", "basis": complex_list(basis) }),
                Factorization::Rejected { reason } => json!({ "classification": "rejected", "reason": reason }),
                Factorization::Undecided { reason } => json!({ "classification": "undecided", "reason": reason }),
            };
            passed = matches!(fact, Factorization::Constant { .. } | Factorization::Elliptic { .. });
            report["verdict"] = report["factorization"]["classification"].clone();
        }
    }
    sink.csv("curve_samples.csv", &["re_z", "im_z", "type10_residual", "conformality_residual", "conformal_defect"].map(String::from), &rows)?;
    sink.json("curve.json", &report)?;
    Ok(sink.finish(passed, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(text: &str) -> Scenario {
        Scenario::from_json(text).unwrap()
    }

    #[test]
    fn verify_flags_abelian_curvature() {
        let s = scenario(r#"{"model": "abelian:2", "points": 10, "abelian_curvature": [{"mu":0,"nu":1,"value":[0.7,0]}]}"#);
        let o = cmd_verify(&s, &RunOptions::default()).unwrap();
        assert!(!o.passed);
        assert_eq!(o.report["verdict"], "non-integrable");
        assert!((o.report["max_r2"].as_f64().unwrap() - 0.7).abs() < 1e-15);
    }

    #[test]
    fn curvature_of_flat_model_is_zero() {
        let s = scenario(r#"{"model": "abelian:3", "points": 30, "expected_curvature": 0.0}"#);
        let o = cmd_curvature(&s, &RunOptions::default()).unwrap();
        assert!(o.passed);
        assert_eq!(o.report["max"].as_f64().unwrap(), 0.0);
    }

    #[test]
    fn zero_velocity_is_a_usage_error() {
        let s = scenario(r#"{"model": "hyperbolic3", "geodesic": {"initial": [{"x":[0,0,1],"v":[0,0,0]}]}}"#);
        assert_eq!(cmd_geodesic(&s, &RunOptions::default()).unwrap_err().code, 2);
    }

    #[test]
    fn missing_curve_section_is_a_usage_error() {
        let s = scenario(r#"{"model": "hyperbolic3"}"#);
        assert_eq!(cmd_curve(&s, &RunOptions::default()).unwrap_err().code, 2);
    }

    #[test]
    fn diagonal_counterexample_is_rejected() {
        let s = scenario(
            r#"{"points": 10, "curve": {"algebra": "su2",
                "form": {"kind": "scalar", "z": {"re": [0, 0, -8.885765876316732]}, "zeta": [[1, 0]],
                         "surface": {"type": "torus", "tau": [0, 1]}}}}"#,
        );
        let o = cmd_curve(&s, &RunOptions::default()).unwrap();
        assert!(!o.passed);
        assert_eq!(o.report["verdict"], "rejected");
        assert_eq!(o.report["lattice_condition"]["witness_period"], json!([0.0, 1.0]));
    }
}
