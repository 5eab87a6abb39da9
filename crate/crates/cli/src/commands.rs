use std::fs;
use std::path::Path;

use log::{info, warn};
use multibrot_core::arithmetic::{
    bang_bound, coprime_bang_bound, primitive_prime_divisors_with_budget, replay_theorem,
};
use multibrot_core::boettcher::{
    affine_symmetries, default_order, escape_radius, green_parameter, phi_eval, phi_series,
    psi_series,
};
use multibrot_core::curves::{invariance_report, is_exceptional, consistency_scan};
use multibrot_core::pcf::{hyperbolic_centers_capped, misiurewicz_capped, parabolic_boundary};
use multibrot_core::rays::{
    parabolic_pair_check, trace_dynamic_ray, trace_parameter_ray, verify_landing_pair, wake_contains,
};
use multibrot_core::render::{overlay, render_multibrot, OverlaySet};
use multibrot_core::rotation::{brute_force_enumerate, construct, unit_rotation_family, recognize};
use multibrot_core::verify::{criterion, VerifyReport, CRITERIA};
use multibrot_core::{Complex64, ExactPoly, RasterSpec, RayTrace, RunConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::error::CliError;

pub type Outcome = Result<Value, CliError>;

fn to_value<T: Serialize>(v: &T) -> Outcome {
    serde_json::to_value(v).map_err(CliError::from)
}

fn write_points_csv<I>(path: &Path, header: &[&str], rows: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = Vec<f64>>,
{
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::io(path, e))?;
    w.write_record(header).map_err(|e| CliError::io(path, e))?;
    for row in rows {
        w.write_record(row.iter().map(|x| format!("{x:e}")))
            .map_err(|e| CliError::io(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))?;
    Ok(())
}

fn traces_from(v: Value) -> Result<Vec<RayTrace>, serde_json::Error> {
    if let Some(result) = v.get("result") {
        return traces_from(result.clone());
    }
    if v.is_array() {
        return serde_json::from_value(v);
    }
    if let Some(t) = v.get("traces") {
        return serde_json::from_value(t.clone());
    }
    if let Some(p) = v.get("pair") {
        return traces_from(p.clone());
    }
    serde_json::from_value(v).map(|t| vec![t])
}

pub fn render(a: &RenderArgs, cfg: &RunConfig) -> Outcome {
    let spec = RasterSpec {
        center: a.center,
        width: a.width,
        pixels: a.px,
        max_iter: cfg.max_iter,
        d: a.degree,
    };
    info!("rendering {}x{} raster of M_{}", a.px.0, a.px.1, a.degree);
    let raster = render_multibrot(&spec)?;
    let mut traces = Vec::new();
    for path in &a.overlay {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let v: Value = serde_json::from_str(&text)?;
        traces.extend(traces_from(v)?);
    }
    let centers = match a.centers {
        Some(n) => hyperbolic_centers_capped(a.degree, n, cfg.degree_cap)?,
        None => Vec::new(),
    };
    let interior = raster.pixels.iter().filter(|&&p| p == 0).count();
    let o = overlay(
        &raster,
        &OverlaySet {
            rays: &traces,
            points: &centers,
            main_component: a.main_component,
        },
    )?;
    for w in &o.warnings {
        warn!("{w}");
    }
    fs::write(&a.out, o.raster.to_pgm()).map_err(|e| CliError::io(&a.out, e))?;
    if let Some(svg) = &a.svg {
        fs::write(svg, &o.svg).map_err(|e| CliError::io(svg, e))?;
    }
    Ok(json!({
        "spec": spec,
        "pgm": a.out,
        "svg": a.svg,
        "interior_pixels": interior,
        "rays": traces.iter().map(|t| t.theta.to_string()).collect::<Vec<_>>(),
        "warnings": o.warnings,
    }))
}

pub fn ray(a: &RayArgs, cfg: &RunConfig) -> Outcome {
    info!("tracing ray {} for d = {}", a.theta, a.d);
    let trace = match a.c {
        Some(c) => trace_dynamic_ray(a.d, c, &a.theta, cfg.ray_floor)?,
        None => trace_parameter_ray(a.d, &a.theta, cfg.ray_floor, cfg.ray_steps)?,
    };
    if let Some(path) = &a.csv {
        let rows = trace
            .samples
            .iter()
            .map(|s| vec![s.potential, s.point.re, s.point.im]);
        write_points_csv(path, &["potential", "re", "im"], rows)?;
    }
    to_value(&trace)
}

pub fn land(a: &LandArgs, cfg: &RunConfig) -> Outcome {
    if let Some(n) = a.parabolic_pair {
        let report = parabolic_pair_check(a.d, n, cfg.landing_tol)?;
        let wake = match a.wake {
            Some(p) => Some(wake_contains(a.d, &report.pair, p)?),
            None => None,
        };
        let mut v = to_value(&report)?;
        v["in_wake"] = json!(wake);
        return Ok(v);
    }
    let (Some(t), Some(tp)) = (&a.theta, &a.theta_prime) else {
        unreachable!("clap requires both angles");
    };
    let pair = verify_landing_pair(a.d, t, tp, cfg.extrapolation_tol)?;
    if pair.distance >= cfg.landing_tol {
        return Err(CliError::computation(
            "rays",
            format!(
                "rays land {:e} apart, above the landing tolerance {:e}",
                pair.distance, cfg.landing_tol
            ),
        ));
    }
    let wake = match a.wake {
        Some(p) => Some(wake_contains(a.d, &pair, p)?),
        None => None,
    };
    let mut v = to_value(&pair)?;
    v["in_wake"] = json!(wake);
    Ok(v)
}

pub fn rotset(a: &RotsetArgs) -> Outcome {
    if let Some(rot) = a.rot {
        return to_value(&construct(a.d, rot, &a.deploy)?);
    }
    if !a.recognize.is_empty() {
        return to_value(&recognize(a.d, &a.recognize)?);
    }
    if let Some(q) = a.enumerate {
        return to_value(&brute_force_enumerate(a.d, q)?);
    }
    let n = a.family.expect("clap requires one mode");
    to_value(&unit_rotation_family(a.d, n)?)
}

pub fn pcf(a: &PcfArgs, cfg: &RunConfig) -> Outcome {
    let (kind, points, residuals) = if a.parabolic {
        let ps = parabolic_boundary(a.d, a.n)?;
        let res: Vec<f64> = ps.iter().map(|p| p.residual(a.d)).collect();
        ("parabolic", ps.iter().map(|p| p.c).collect(), Some(res))
    } else if let Some(m) = a.preperiod {
        ("misiurewicz", misiurewicz_capped(a.d, m, a.n, cfg.degree_cap)?, None)
    } else {
        ("hyperbolic-center", hyperbolic_centers_capped(a.d, a.n, cfg.degree_cap)?, None)
    };
    let points: Vec<Complex64> = points;
    if let Some(path) = &a.csv {
        write_points_csv(path, &["re", "im"], points.iter().map(|c| vec![c.re, c.im]))?;
    }
    Ok(json!({
        "d": a.d,
        "n": a.n,
        "preperiod": a.preperiod,
        "kind": kind,
        "count": points.len(),
        "points": points,
        "residuals": residuals,
    }))
}

pub fn symmetry(a: &SymmetryArgs) -> Outcome {
    let order = a.order.unwrap_or_else(|| default_order(a.d));
    to_value(&affine_symmetries(a.d, order)?)
}

pub fn boettcher(a: &BoettcherArgs, cfg: &RunConfig) -> Outcome {
    let order = a.order.unwrap_or_else(|| default_order(a.d));
    let series = if a.inverse {
        psi_series(a.d, order)?
    } else {
        phi_series(a.d, order)?
    };
    let eval = match a.eval {
        Some(c) => {
            let phi = phi_eval(a.d, c, cfg.precision())?;
            let g = green_parameter(a.d, c, cfg.max_iter, escape_radius(a.d, c));
            Some(json!({ "c": c, "phi": phi, "green": g.value }))
        }
        None => None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut samples = Vec::with_capacity(a.samples);
    for _ in 0..a.samples {
        let c = Complex64::from_polar(rng.gen_range(2.0..4.0), rng.gen_range(0.0..std::f64::consts::TAU));
        let phi = phi_eval(a.d, c, cfg.precision())?;
        let g = green_parameter(a.d, c, cfg.max_iter, escape_radius(a.d, c));
        let rel = (phi.norm() - g.value.exp()).abs() / g.value.exp();
        samples.push(json!({ "c": c, "phi": phi, "exp_green": g.value.exp(), "relative_error": rel }));
    }
    Ok(json!({
        "d": a.d,
        "map": if a.inverse { "psi" } else { "phi" },
        "order": order,
        "coefficients": series.exact_pairs(),
        "eval": eval,
        "samples": samples,
    }))
}

pub fn bang(a: &BangArgs, cfg: &RunConfig) -> Outcome {
    if let Some(m) = a.m {
        return to_value(&primitive_prime_divisors_with_budget(a.a, m, cfg.factor_budget)?);
    }
    let cap = a.bound.expect("clap requires one mode");
    let bound = bang_bound(a.a, cap)?;
    let coprime = match a.coprime_to {
        Some(avoid) => Some(coprime_bang_bound(a.a, avoid, cap)?),
        None => None,
    };
    Ok(json!({ "a": a.a, "cap": cap, "bang_bound": bound, "coprime_to": a.coprime_to, "coprime_bound": coprime }))
}

pub fn replay(a: &ReplayArgs) -> Outcome {
    to_value(&replay_theorem(a.d, a.big_d, a.k.0, a.k.1)?)
}

pub fn curve(a: &CurveArgs) -> Outcome {
    if a.scan {
        info!("scanning the small-coefficient grid");
        return to_value(&consistency_scan());
    }
    if let Some(f) = &a.exceptional {
        let f = ExactPoly::parse_coeffs(f)?;
        let kind = is_exceptional(&f)?;
        return Ok(json!({ "f": f, "exceptional": kind.to_string(), "classification": kind }));
    }
    let q = ExactPoly::parse_coeffs(a.q.as_deref().expect("clap requires one mode"))?;
    let r = ExactPoly::parse_coeffs(a.r.as_deref().expect("clap requires r with q"))?;
    let mut v = to_value(&invariance_report(&q, &r)?)?;
    v["q"] = json!(q);
    v["r"] = json!(r);
    Ok(v)
}

pub fn verify_all(a: &VerifyArgs, cfg: &RunConfig) -> Result<VerifyReport, CliError> {
    let ids: Vec<usize> = if a.only.is_empty() {
        (1..=CRITERIA).collect()
    } else {
        a.only.clone()
    };
    if let Some(bad) = ids.iter().find(|i| !(1..=CRITERIA).contains(i)) {
        return Err(CliError::usage(format!("no criterion {bad}; ids run 1..={CRITERIA}")));
    }
    let mut criteria = Vec::new();
    for id in ids {
        let r = criterion(id, cfg);
        eprintln!("{}", r.line());
        for f in &r.failures {
            eprintln!("    failure: {f}");
        }
        criteria.push(r);
    }
    Ok(VerifyReport {
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    })
}
