//! External rays of `M_d` and of the filled Julia sets `K_c`, traced by Newton
//! continuation in the potential, with landing points extrapolated from the
//! tail of the trace.
//!
//! A point at potential `t` on the ray of angle `theta` solves
//! `log F_m(x) = d^m (t + 2 pi i theta)` where `F_m` is the `m`-th iterate
//! (`P_{m+1}(c)` in the parameter plane, `f_c^m(z)` in the dynamical plane)
//! and `m` is the least integer with `d^m t` above a fixed threshold. The
//! imaginary part of the equation is taken modulo `2 pi`, with the angle
//! `tau_d^m(theta)` computed exactly.

use std::f64::consts::{LN_2, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angles::{orbit_info, tau_iter, Angle};
use crate::boettcher::{cpow, escapes, green_dynamic};
use crate::pcf::{parabolic_boundary, ParabolicParam};

pub const DEFAULT_FLOOR: f64 = 1e-60;
/// Newton substeps per halving of the potential.
pub const DEFAULT_STEPS: u32 = 8;
pub const DEFAULT_TOL: f64 = 1e-4;
pub const PARABOLIC_PAIR_TOL: f64 = 1e-3;

const KAPPA: f64 = 2.0;
const WARMUP_POTENTIAL: f64 = 10.0;
const TARGET_LOG_MODULUS: f64 = 30.0;
const NEWTON_ITERS: usize = 64;
const FIT_WINDOW: usize = 10;
const FIT_STRIDE: usize = 4;
const CHECK_SHIFT: usize = 8;
const FIT_EXPONENTS: [f64; 4] = [1.0, 0.5, 1.0 / 3.0, 0.25];
const SETTLED: f64 = 1e-12;
const FAR_RADIUS: f64 = 1e3;
const CURVE_CLEARANCE: f64 = 1e-9;

type C64 = Complex64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RayError {
    #[error("degree must be at least 2, got {0}")]
    Degree(u32),
    #[error("potential floor must be positive and below log 4, got {0}")]
    Floor(f64),
    #[error("Newton continuation diverged at potential {potential:e}")]
    Divergence {
        potential: f64,
        last_good: Option<RaySample>,
    },
    #[error("c escapes: the floor {floor:e} must exceed the critical potential {critical:e}")]
    BelowCritical { floor: f64, critical: f64 },
    #[error("angle {0} is not periodic under tau_d")]
    NotPeriodic(Angle),
    #[error("landing estimate for {theta} did not settle (change {change:?})")]
    NotConverged { theta: Angle, change: Option<f64> },
    #[error("landing estimates {a} and {b} are {distance:e} apart (tol {tol:e})")]
    Disagree {
        a: C64,
        b: C64,
        distance: f64,
        tol: f64,
    },
    #[error("no parabolic parameter within {tol:e} of {point}; nearest is {distance:e} away")]
    NoParabolicMatch { point: C64, distance: f64, tol: f64 },
    #[error("n must be at least 2, otherwise the two angles coincide")]
    Iterate,
    #[error("point lies within {0:e} of the wake boundary")]
    TooClose(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RaySample {
    pub potential: f64,
    pub point: C64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayTrace {
    pub d: u32,
    pub theta: Angle,
    /// The parameter of the dynamical plane, absent for parameter rays.
    pub c: Option<C64>,
    pub samples: Vec<RaySample>,
    pub landing_estimate: C64,
    pub converged: bool,
    /// Distance between the final extrapolant and one taken eight samples earlier.
    pub extrapolation_change: Option<f64>,
    /// Exponent `p` of the selected model in `(1 / log(1/t))^p`; absent when the
    /// last sample was used directly.
    pub landing_exponent: Option<f64>,
    /// Set when the denominator of theta shares a factor with `d`.
    pub non_coprime_denominator: bool,
}

impl RayTrace {
    pub fn points(&self) -> impl DoubleEndedIterator<Item = C64> + '_ {
        self.samples.iter().map(|s| s.point)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LandingPair {
    pub theta: Angle,
    pub theta_prime: Angle,
    pub landing_point: C64,
    pub period: usize,
    pub distance: f64,
    pub traces: [RayTrace; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParabolicPairReport {
    pub d: u32,
    pub n: u32,
    pub pair: LandingPair,
    pub witness: ParabolicParam,
    pub witness_distance: f64,
    pub witness_residual: f64,
}

#[derive(Clone, Copy)]
enum Plane {
    Parameter,
    Dynamic(C64),
}

/// `log F_m(x)` and its derivative.
fn log_iterate(d: u32, plane: Plane, x: C64, m: u32) -> (C64, C64) {
    let (c, dc) = match plane {
        Plane::Parameter => (x, 1.0),
        Plane::Dynamic(c) => (c, 0.0),
    };
    let mut w = x;
    let mut dw = C64::new(1.0, 0.0);
    for k in 0..m {
        if w.norm() > 1e30 {
            let scale = (d as f64).powi((m - k) as i32);
            return (w.ln() * scale, dw / w * scale);
        }
        let wd1 = cpow(w, d - 1);
        dw = wd1 * dw * d as f64 + dc;
        w = wd1 * w + c;
    }
    (w.ln(), dw / w)
}

fn wrap_pi(x: f64) -> f64 {
    x - 2.0 * PI * ((x + PI) / (2.0 * PI)).floor()
}

fn newton(d: u32, plane: Plane, theta: &Angle, t: f64, guess: C64) -> Option<C64> {
    let df = d as f64;
    let mut m = 0u32;
    while df.powi(m as i32) * t < TARGET_LOG_MODULUS {
        m += 1;
    }
    let angle = tau_iter(d, theta, m as usize).to_f64();
    let target = C64::new(df.powi(m as i32) * t, 2.0 * PI * angle);
    let mut x = guess;
    let mut residual = f64::INFINITY;
    for _ in 0..NEWTON_ITERS {
        let (lf, dlf) = log_iterate(d, plane, x, m);
        let r = lf - target;
        let r = C64::new(r.re, wrap_pi(r.im));
        residual = r.norm();
        let step = r / dlf;
        if !step.is_finite() {
            return None;
        }
        x -= step;
        if step.norm() <= 1e-14 * x.norm().max(1.0) {
            return Some(x);
        }
    }
    (residual < 1e-8).then_some(x)
}

fn check_degree(d: u32) -> Result<(), RayError> {
    if d < 2 {
        return Err(RayError::Degree(d));
    }
    Ok(())
}

fn trace(
    d: u32,
    plane: Plane,
    theta: &Angle,
    floor: f64,
    steps: u32,
) -> Result<Vec<RaySample>, RayError> {
    let t0 = 4f64.ln();
    if !(floor > 0.0 && floor < t0) {
        return Err(RayError::Floor(floor));
    }
    let steps = steps.max(1);
    let mut x = C64::from_polar(WARMUP_POTENTIAL.exp(), 2.0 * PI * theta.to_f64());
    let warmup = ((WARMUP_POTENTIAL / t0).ln() / LN_2 * steps as f64).ceil() as i32;
    let mut samples = Vec::new();
    let diverged = |potential: f64, samples: &Vec<RaySample>| RayError::Divergence {
        potential,
        last_good: samples.last().copied(),
    };
    for i in 1..=warmup {
        let t = WARMUP_POTENTIAL * (t0 / WARMUP_POTENTIAL).powf(i as f64 / warmup as f64);
        x = newton(d, plane, theta, t, x).ok_or_else(|| diverged(t, &samples))?;
    }
    samples.push(RaySample {
        potential: t0,
        point: x,
    });
    let mut t = t0;
    while t / KAPPA >= floor {
        for i in 1..=steps {
            let tt = t * KAPPA.powf(-(i as f64) / steps as f64);
            x = newton(d, plane, theta, tt, x).ok_or_else(|| diverged(tt, &samples))?;
        }
        t /= KAPPA;
        samples.push(RaySample {
            potential: t,
            point: x,
        });
    }
    Ok(samples)
}

/// Landing models: the last sample itself, or a least-squares polynomial in
/// `g = (1 / log(1/t))^p` with the given basis, evaluated at `g = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Model {
    LastSample,
    Poly { p: f64, terms: usize },
}

const POLY_TERMS: [usize; 2] = [3, 5];

/// The value at `g = 0` of the fit over the window ending at `end`.
fn fit_window(samples: &[RaySample], end: usize, model: Model) -> Option<C64> {
    let span = FIT_STRIDE * (FIT_WINDOW - 1);
    if end < span || end >= samples.len() {
        return None;
    }
    let (p, terms) = match model {
        Model::LastSample => return Some(samples[end].point),
        Model::Poly { p, terms } => (p, terms),
    };
    let window: Vec<&RaySample> = (0..FIT_WINDOW)
        .map(|i| &samples[end - span + i * FIT_STRIDE])
        .collect();
    if window.iter().any(|s| s.potential >= 0.5) {
        return None;
    }
    let g: Vec<f64> = window
        .iter()
        .map(|s| (1.0 / (1.0 / s.potential).ln()).powf(p))
        .collect();
    let gmax = g.iter().cloned().fold(0.0, f64::max);
    // u^3 log u differs from g^3 log g by a multiple of u^3, so the span is unchanged.
    let a = DMatrix::from_fn(FIT_WINDOW, terms, |i, j| {
        let u = g[i] / gmax;
        match j {
            0 => 1.0,
            1 => u,
            2 => u * u,
            3 => u.powi(3) * u.ln(),
            _ => u.powi(3),
        }
    });
    let b = DMatrix::from_fn(FIT_WINDOW, 2, |i, j| {
        if j == 0 {
            window[i].point.re
        } else {
            window[i].point.im
        }
    });
    let x = a.svd(true, true).solve(&b, 1e-13).ok()?;
    Some(C64::new(x[(0, 0)], x[(0, 1)]))
}

struct Landing {
    estimate: C64,
    change: Option<f64>,
    exponent: Option<f64>,
}

/// Picks the model whose extrapolant moves least between the final window and
/// the window `CHECK_SHIFT` samples earlier.
fn extrapolate(samples: &[RaySample]) -> Landing {
    let last = samples.len() - 1;
    let models = std::iter::once(Model::LastSample).chain(
        FIT_EXPONENTS
            .iter()
            .flat_map(|&p| POLY_TERMS.iter().map(move |&terms| Model::Poly { p, terms })),
    );
    let best = models
        .filter_map(|m| {
            let v = fit_window(samples, last, m)?;
            let w = fit_window(samples, last.checked_sub(CHECK_SHIFT)?, m)?;
            let change = (v - w).norm();
            // A slowly drifting tail looks stable without having landed.
            if m == Model::LastSample && change > SETTLED * v.norm().max(1.0) {
                return None;
            }
            Some((m, v, change))
        })
        .fold(None::<(Model, C64, f64)>, |acc, cur| match acc {
            Some(a) if a.2 <= cur.2 => Some(a),
            _ => Some(cur),
        });
    match best {
        None => Landing {
            estimate: samples[last].point,
            change: None,
            exponent: None,
        },
        Some((m, v, change)) => Landing {
            estimate: v,
            change: Some(change),
            exponent: match m {
                Model::LastSample => None,
                Model::Poly { p, .. } => Some(p),
            },
        },
    }
}

fn shares_factor(d: u32, theta: &Angle) -> bool {
    let q = theta.denom();
    let g = q.gcd(&d.into());
    g.to_u32() != Some(1)
}

fn finish(d: u32, theta: &Angle, c: Option<C64>, samples: Vec<RaySample>) -> RayTrace {
    let landing = extrapolate(&samples);
    RayTrace {
        d,
        theta: theta.clone(),
        c,
        converged: landing.change.is_some_and(|ch| ch < DEFAULT_TOL),
        landing_estimate: landing.estimate,
        extrapolation_change: landing.change,
        landing_exponent: landing.exponent,
        non_coprime_denominator: shares_factor(d, theta),
        samples,
    }
}

/// Samples of the parameter ray `R(theta)` at potentials `log 4 / 2^j` down to
/// `potential_floor`, with `steps` Newton substeps between samples.
pub fn trace_parameter_ray(
    d: u32,
    theta: &Angle,
    potential_floor: f64,
    steps: u32,
) -> Result<RayTrace, RayError> {
    check_degree(d)?;
    let samples = trace(d, Plane::Parameter, theta, potential_floor, steps)?;
    Ok(finish(d, theta, None, samples))
}

/// Samples of the dynamic ray `R_{f_c}(theta)`.
pub fn trace_dynamic_ray(
    d: u32,
    c: C64,
    theta: &Angle,
    potential_floor: f64,
) -> Result<RayTrace, RayError> {
    check_degree(d)?;
    if escapes(d, c, 10_000) {
        let critical = green_dynamic(d, c, C64::new(0.0, 0.0), 10_000).value;
        if potential_floor <= critical {
            return Err(RayError::BelowCritical {
                floor: potential_floor,
                critical,
            });
        }
    }
    let samples = trace(d, Plane::Dynamic(c), theta, potential_floor, DEFAULT_STEPS)?;
    Ok(finish(d, theta, Some(c), samples))
}

/// Traces `R(theta)` and `R(theta_prime)` and checks that they land together.
pub fn verify_landing_pair(
    d: u32,
    theta: &Angle,
    theta_prime: &Angle,
    tol: f64,
) -> Result<LandingPair, RayError> {
    check_degree(d)?;
    let info = orbit_info(d, theta);
    for a in [theta, theta_prime] {
        if orbit_info(d, a).preperiod != 0 {
            return Err(RayError::NotPeriodic(a.clone()));
        }
    }
    let (a, b) = rayon::join(
        || trace_parameter_ray(d, theta, DEFAULT_FLOOR, DEFAULT_STEPS),
        || trace_parameter_ray(d, theta_prime, DEFAULT_FLOOR, DEFAULT_STEPS),
    );
    let (a, b) = (a?, b?);
    let distance = (a.landing_estimate - b.landing_estimate).norm();
    if distance >= tol {
        return Err(RayError::Disagree {
            a: a.landing_estimate,
            b: b.landing_estimate,
            distance,
            tol,
        });
    }
    for t in [&a, &b] {
        if !t.extrapolation_change.is_some_and(|ch| ch < tol) {
            return Err(RayError::NotConverged {
                theta: t.theta.clone(),
                change: t.extrapolation_change,
            });
        }
    }
    Ok(LandingPair {
        theta: theta.clone(),
        theta_prime: theta_prime.clone(),
        landing_point: (a.landing_estimate + b.landing_estimate) / 2.0,
        period: info.period,
        distance,
        traces: [a, b],
    })
}

/// The pair `1/(d^n - 1)`, `d/(d^n - 1)` lands together on the boundary of the
/// main component, at a parameter with a fixed point of multiplier `e^{2 pi i/n}`.
pub fn parabolic_pair_check(d: u32, n: u32, tol: f64) -> Result<ParabolicPairReport, RayError> {
    check_degree(d)?;
    if n < 2 {
        return Err(RayError::Iterate);
    }
    let q = num_bigint::BigInt::from(d).pow(n) - 1u32;
    let theta = Angle::new(1, q.clone()).expect("d^n - 1 > 0");
    let theta_prime = Angle::new(d, q).expect("d^n - 1 > 0");
    let pair = verify_landing_pair(d, &theta, &theta_prime, tol)?;
    let params = parabolic_boundary(d, n).map_err(|_| RayError::Iterate)?;
    let (witness, distance) = params
        .into_iter()
        .map(|p| {
            let dist = (p.c - pair.landing_point).norm();
            (p, dist)
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("d - 1 >= 1 parameters");
    if distance >= tol {
        return Err(RayError::NoParabolicMatch {
            point: pair.landing_point,
            distance,
            tol,
        });
    }
    Ok(ParabolicPairReport {
        d,
        n,
        witness_residual: witness.residual(d),
        witness,
        witness_distance: distance,
        pair,
    })
}

/// The closed curve: landing point, out along the first ray, across the arc of
/// radius `radius` through the angles between the two rays, back along the
/// second ray.
fn wake_curve(pair: &LandingPair, radius: f64) -> Vec<C64> {
    let [a, b] = &pair.traces;
    let start = 2.0 * PI * pair.theta.to_f64();
    let mut sweep = 2.0 * PI * pair.theta_prime.to_f64() - start;
    if sweep <= 0.0 {
        sweep += 2.0 * PI;
    }
    let mut curve = vec![pair.landing_point];
    curve.extend(a.points().rev());
    let arc = 512;
    curve.extend((0..=arc).map(|k| C64::from_polar(radius, start + sweep * k as f64 / arc as f64)));
    curve.extend(b.points());
    curve
}

fn segment_distance(p: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len = ab.norm_sqr();
    let s = if len == 0.0 {
        0.0
    } else {
        ((p - a) * ab.conj()).re / len
    };
    (p - (a + ab * s.clamp(0.0, 1.0))).norm()
}

fn winding(curve: &[C64], p: C64) -> i32 {
    let mut w = 0;
    for i in 0..curve.len() {
        let a = curve[i] - p;
        let b = curve[(i + 1) % curve.len()] - p;
        let cross = a.re * b.im - a.im * b.re;
        if a.im <= 0.0 {
            if b.im > 0.0 && cross > 0.0 {
                w += 1;
            }
        } else if b.im <= 0.0 && cross < 0.0 {
            w -= 1;
        }
    }
    w
}

/// Whether `point` lies in the wake of the pair: the component of the plane
/// cut by the two rays and their landing point that does not contain 0.
pub fn wake_contains(d: u32, pair: &LandingPair, point: C64) -> Result<bool, RayError> {
    check_degree(d)?;
    let radius = FAR_RADIUS.max(10.0 * point.norm());
    let curve = wake_curve(pair, radius);
    let clearance = (0..curve.len())
        .map(|i| segment_distance(point, curve[i], curve[(i + 1) % curve.len()]))
        .fold(f64::INFINITY, f64::min);
    if clearance < CURVE_CLEARANCE {
        return Err(RayError::TooClose(clearance));
    }
    let origin_inside = winding(&curve, C64::new(0.0, 0.0)) != 0;
    let point_inside = winding(&curve, point) != 0;
    Ok(point_inside != origin_inside)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boettcher::{green_parameter, phi_eval};

    fn a(p: i64, q: i64) -> Angle {
        Angle::frac(p, q)
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn real_rays() {
        let r = trace_parameter_ray(2, &a(0, 1), DEFAULT_FLOOR, DEFAULT_STEPS).unwrap();
        assert!(r.samples.iter().all(|s| s.point.im.abs() < 1e-12 && s.point.re > 0.25));
        assert!((r.landing_estimate - c(0.25, 0.0)).norm() < 1e-4, "{}", r.landing_estimate);
        let r = trace_parameter_ray(2, &a(1, 2), DEFAULT_FLOOR, DEFAULT_STEPS).unwrap();
        assert!(r.samples.iter().all(|s| s.point.im.abs() < 1e-12 && s.point.re < -2.0 + 1e-12));
        assert!((r.landing_estimate - c(-2.0, 0.0)).norm() < 1e-8);
        assert!(r.non_coprime_denominator);
        let r = trace_parameter_ray(2, &a(1, 3), DEFAULT_FLOOR, DEFAULT_STEPS).unwrap();
        assert!(r.converged);
        assert!((r.landing_estimate - c(-0.75, 0.0)).norm() < 1e-4);
        assert!(!r.non_coprime_denominator);
    }

    #[test]
    fn samples_sit_on_the_ray() {
        for (d, theta) in [(2, a(1, 7)), (3, a(1, 8)), (4, a(2, 5))] {
            let r = trace_parameter_ray(d, &theta, 1e-12, DEFAULT_STEPS).unwrap();
            for w in r.samples.windows(2) {
                assert!(w[1].potential < w[0].potential);
            }
            for s in &r.samples {
                let g = green_parameter(d, s.point, 1 << 20, 1e3).value;
                assert!((g - s.potential).abs() < 1e-6, "{d} {theta} {s:?} {g}");
            }
            for s in r.samples.iter().filter(|s| s.potential > 0.01) {
                let phi = phi_eval(d, s.point, 1e-10).unwrap();
                assert!((phi.norm().ln() - s.potential).abs() < 1e-6);
                let arg = phi.arg() / (2.0 * PI) - theta.to_f64();
                assert!((arg - arg.round()).abs() < 1e-6, "{d} {theta} {s:?} {phi}");
            }
        }
    }

    #[test]
    fn landing_pair_examples() {
        let p = verify_landing_pair(2, &a(1, 3), &a(2, 3), DEFAULT_TOL).unwrap();
        assert!((p.landing_point - c(-0.75, 0.0)).norm() < 1e-4);
        assert_eq!(p.period, 2);
        let p = verify_landing_pair(2, &a(1, 7), &a(2, 7), DEFAULT_TOL).unwrap();
        let want = c(-0.125, 3.0 * 3f64.sqrt() / 8.0);
        assert!((p.landing_point - want).norm() < 1e-4);
        assert_eq!(p.period, 3);
        assert!(matches!(
            verify_landing_pair(2, &a(1, 3), &a(1, 7), DEFAULT_TOL),
            Err(RayError::Disagree { .. })
        ));
        assert!(matches!(
            verify_landing_pair(2, &a(1, 2), &a(1, 3), DEFAULT_TOL),
            Err(RayError::NotPeriodic(_))
        ));
    }

    #[test]
    fn parabolic_pair_examples() {
        let r = parabolic_pair_check(2, 2, PARABOLIC_PAIR_TOL).unwrap();
        assert!((r.witness.alpha - c(-0.5, 0.0)).norm() < 1e-12);
        let r = parabolic_pair_check(2, 3, PARABOLIC_PAIR_TOL).unwrap();
        assert!((r.witness.c - c(-0.125, 3.0 * 3f64.sqrt() / 8.0)).norm() < 1e-12);
        let r = parabolic_pair_check(3, 2, PARABOLIC_PAIR_TOL).unwrap();
        assert_eq!((r.pair.theta.clone(), r.pair.theta_prime.clone()), (a(1, 8), a(3, 8)));
        let alpha = r.witness.alpha;
        assert!((alpha * alpha * 3.0 + 1.0).norm() < 1e-12);
        assert!(r.witness_residual < 1e-10);
    }

    #[test]
    fn dynamic_rays() {
        let r = trace_dynamic_ray(2, c(0.0, 0.0), &a(1, 5), 1e-20).unwrap();
        let dir = C64::from_polar(1.0, 2.0 * PI / 5.0);
        for s in &r.samples {
            assert!((s.point - dir * s.potential.exp()).norm() < 1e-12);
        }
        assert!((r.landing_estimate - dir).norm() < 1e-8);
        let r = trace_dynamic_ray(2, c(-0.75, 0.0), &a(1, 3), DEFAULT_FLOOR).unwrap();
        assert!((r.landing_estimate - c(-0.5, 0.0)).norm() < 1e-3, "{}", r.landing_estimate);
        for s in &r.samples {
            let g = green_dynamic(2, c(-0.75, 0.0), s.point, 1 << 20).value;
            assert!((g - s.potential).abs() < 1e-6);
        }
    }

    #[test]
    fn dynamic_ray_of_escaping_parameter() {
        let c1 = c(1.0, 0.0);
        let critical = green_dynamic(2, c1, c(0.0, 0.0), 1000).value;
        assert!(matches!(
            trace_dynamic_ray(2, c1, &a(0, 1), critical / 2.0),
            Err(RayError::BelowCritical { .. })
        ));
        let r = trace_dynamic_ray(2, c1, &a(0, 1), critical * 1.5).unwrap();
        let last = r.samples.last().unwrap();
        assert!(last.potential > critical);
        assert!(r.samples.iter().all(|s| s.point.im.abs() < 1e-12 && s.point.re > 0.0));
        let g = green_dynamic(2, c1, last.point, 1000).value;
        assert!((g - last.potential).abs() < 1e-9);
    }

    #[test]
    fn wake_of_the_period_two_pair() {
        let p = verify_landing_pair(2, &a(1, 3), &a(2, 3), DEFAULT_TOL).unwrap();
        assert!(wake_contains(2, &p, c(-1.0, 0.0)).unwrap());
        assert!(!wake_contains(2, &p, c(0.0, 0.0)).unwrap());
        assert!(!wake_contains(2, &p, c(1.0, 0.0)).unwrap());
        assert!(wake_contains(2, &p, c(-1.75, 0.0)).unwrap());
        assert!(!wake_contains(2, &p, c(0.0, 1.0)).unwrap());
        let on_ray = p.traces[0].samples[3].point;
        assert!(matches!(wake_contains(2, &p, on_ray), Err(RayError::TooClose(_))));
    }

    #[test]
    fn conjugation_symmetry() {
        for (d, theta) in [(2, a(1, 7)), (2, a(1, 5)), (3, a(1, 4)), (3, a(1, 8)), (4, a(1, 15))] {
            let r = trace_parameter_ray(d, &theta, DEFAULT_FLOOR, DEFAULT_STEPS).unwrap();
            let s = trace_parameter_ray(d, &theta.neg(), DEFAULT_FLOOR, DEFAULT_STEPS).unwrap();
            assert!((r.landing_estimate.conj() - s.landing_estimate).norm() < 2.0 * DEFAULT_TOL);
        }
    }

    #[test]
    fn rotation_symmetry() {
        for (d, theta) in [(3, a(1, 8)), (4, a(1, 15)), (4, a(1, 63))] {
            let r = trace_parameter_ray(d, &theta, DEFAULT_FLOOR, DEFAULT_STEPS).unwrap();
            for j in 1..(d as i64 - 1) {
                let xi = C64::from_polar(1.0, 2.0 * PI * j as f64 / (d - 1) as f64);
                let rotated = theta.add(&a(j, d as i64 - 1));
                let s = trace_parameter_ray(d, &rotated, DEFAULT_FLOOR, DEFAULT_STEPS).unwrap();
                assert!((xi * r.landing_estimate - s.landing_estimate).norm() < 2.0 * DEFAULT_TOL);
            }
        }
    }

    #[test]
    fn floor_is_validated() {
        assert!(matches!(
            trace_parameter_ray(2, &a(1, 3), 0.0, 8),
            Err(RayError::Floor(_))
        ));
        assert!(matches!(
            trace_parameter_ray(2, &a(1, 3), 2.0, 8),
            Err(RayError::Floor(_))
        ));
    }
}
