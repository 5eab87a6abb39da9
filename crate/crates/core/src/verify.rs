//! The acceptance suite: nine end-to-end criteria, each with its own checks and
//! runtime budget. Shared by the `verify-all` command and the acceptance tests.

use std::collections::BTreeSet;
use std::time::Instant;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::angles::Angle;
use crate::arithmetic::{bang_bound, primitive_prime_divisors, replay_theorem, REPLAY_CAP};
use crate::boettcher::{affine_symmetries, cpow, default_order, psi_series};
use crate::config::RunConfig;
use crate::curves::{is_exceptional, is_invariant, consistency_scan, Exceptional};
use crate::exact::ExactPoly;
use crate::pcf::{hyperbolic_centers, misiurewicz};
use crate::rays::{parabolic_pair_check, verify_landing_pair};
use crate::render::{overlay_rays, render_multibrot, Raster, RasterSpec};
use crate::rotation::{brute_force_enumerate, construct, unit_rotation_family, RotationNumber, RotationSet};

pub const CRITERIA: usize = 9;

/// Viewport used for the period-two landing pair picture.
pub const OVERVIEW_VIEW: RasterSpec = RasterSpec {
    center: Complex64::new(-0.75, 0.0),
    width: 3.0,
    pixels: (600, 400),
    max_iter: 500,
    d: 2,
};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub seconds: f64,
    pub limit_seconds: Option<f64>,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let limit = self
            .limit_seconds
            .map(|l| format!(" (limit {l:.0} s)"))
            .unwrap_or_default();
        format!(
            "{} criterion {}: {} [{:.2} s{limit}]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.seconds
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub criteria: Vec<CriterionResult>,
}

#[derive(Default)]
struct Log {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Log {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }
}

const TITLES: [&str; CRITERIA] = [
    "affine symmetry group of M_d",
    "leading coefficients of the inverse Boettcher series",
    "period-two landing pair at -3/4",
    "unit-fraction landing pairs at parabolic roots of H_d",
    "rotation-set construction against brute force",
    "primitive divisors and the contradiction replay",
    "hyperbolic centers and a Misiurewicz point",
    "invariant curves and exceptional polynomials",
    "deterministic, mirror-symmetric rendering",
];

const LIMITS: [Option<f64>; CRITERIA] = [
    Some(5.0 * 6.0),
    Some(10.0),
    Some(30.0),
    Some(300.0),
    Some(120.0),
    Some(120.0),
    Some(60.0),
    Some(300.0),
    None,
];

/// Runs criterion `id` (1-based).
pub fn criterion(id: usize, cfg: &RunConfig) -> CriterionResult {
    assert!((1..=CRITERIA).contains(&id), "criterion {id} does not exist");
    let start = Instant::now();
    let mut log = Log::default();
    match id {
        1 => symmetry_group(cfg, &mut log),
        2 => psi_leading(&mut log),
        3 => period_two_pair(cfg, &mut log),
        4 => unit_fraction_pairs(cfg, &mut log),
        5 => rotation_sets(&mut log),
        6 => replay(&mut log),
        7 => pcf_atlas(cfg, &mut log),
        8 => invariant_curves(&mut log),
        _ => rendering(cfg, &mut log),
    }
    let seconds = start.elapsed().as_secs_f64();
    let limit_seconds = LIMITS[id - 1];
    if let Some(l) = limit_seconds {
        log.check(seconds < l, || format!("took {seconds:.1} s, limit {l} s"));
    }
    CriterionResult {
        id,
        title: TITLES[id - 1],
        passed: log.failures.is_empty(),
        seconds,
        limit_seconds,
        failures: log.failures,
        notes: log.notes,
    }
}

pub fn verify_all(cfg: &RunConfig) -> VerifyReport {
    let criteria: Vec<CriterionResult> = (1..=CRITERIA).map(|i| criterion(i, cfg)).collect();
    VerifyReport {
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    }
}

fn reduced(j: u64, g: u64) -> (u64, u64) {
    if j == 0 {
        return (0, 1);
    }
    let mut a = j;
    let mut b = g;
    while b != 0 {
        (a, b) = (b, a % b);
    }
    (j / a, g / a)
}

fn symmetry_group(_cfg: &RunConfig, log: &mut Log) {
    for d in 2..=7u32 {
        let t = Instant::now();
        let report = match affine_symmetries(d, default_order(d)) {
            Ok(r) => r,
            Err(e) => {
                log.check(false, || format!("d = {d}: {e}"));
                continue;
            }
        };
        let g = d as u64 - 1;
        let want: BTreeSet<String> = (0..g)
            .map(|j| {
                let (a, b) = reduced(j, g);
                format!("{a}/{b}")
            })
            .collect();
        let got: BTreeSet<String> = report.symmetries.iter().map(|m| m.rotation.clone()).collect();
        log.check(got == want && report.symmetries.len() == g as usize, || {
            format!("d = {d}: rotations {got:?}, expected {want:?}")
        });
        for m in &report.symmetries {
            log.check(
                m.b == Complex64::zero() && (cpow(m.a, g as u32) - 1.0).norm() < 1e-12,
                || format!("d = {d}: map {} is not a rotation about 0", m.rotation),
            );
        }
        let secs = t.elapsed().as_secs_f64();
        log.check(secs < 5.0, || format!("d = {d} took {secs:.1} s"));
        log.note(format!("d = {d}: {} rotations in {secs:.2} s", got.len()));
    }
}

fn psi_leading(log: &mut Log) {
    for d in 2..=7u32 {
        let psi = match psi_series(d, d as usize + 2) {
            Ok(p) => p,
            Err(e) => {
                log.check(false, || format!("d = {d}: {e}"));
                continue;
            }
        };
        let lead = d as usize - 2;
        log.check((0..lead).all(|m| psi.coeff(m).is_zero()), || {
            format!("d = {d}: some b_m with m < {lead} is nonzero")
        });
        log.check(!psi.coeff(lead).is_zero(), || format!("d = {d}: b_{lead} vanishes"));
        log.note(format!("d = {d}: b_{lead} = {}", psi.coeff(lead)));
    }
    if let Ok(psi) = psi_series(2, 4) {
        let half = BigRational::new((-1).into(), 2.into());
        log.check(psi.coeff(0) == &half, || format!("d = 2: b_0 = {}, expected -1/2", psi.coeff(0)));
    }
}

fn period_two_pair(cfg: &RunConfig, log: &mut Log) {
    match verify_landing_pair(2, &Angle::frac(1, 3), &Angle::frac(2, 3), cfg.extrapolation_tol) {
        Ok(pair) => {
            let err = (pair.landing_point - Complex64::new(-0.75, 0.0)).norm();
            log.check(pair.traces.iter().all(|t| t.converged), || "traces did not converge".into());
            log.check(err < cfg.landing_tol, || {
                format!("landing point {} is {err:.2e} from -3/4", pair.landing_point)
            });
            log.note(format!(
                "landing {} (distance to -3/4 {err:.2e}, rays {:.2e} apart)",
                pair.landing_point, pair.distance
            ));
        }
        Err(e) => log.check(false, || e.to_string()),
    }
}

fn unit_fraction_pairs(cfg: &RunConfig, log: &mut Log) {
    for d in 2..=4u32 {
        for n in 2..=3u32 {
            match parabolic_pair_check(d, n, cfg.landing_tol) {
                Ok(r) => {
                    log.check(r.pair.distance < cfg.landing_tol, || {
                        format!("({d}, {n}): rays land {:.2e} apart", r.pair.distance)
                    });
                    log.check(r.witness_distance < cfg.landing_tol, || {
                        format!("({d}, {n}): parabolic witness {:.2e} away", r.witness_distance)
                    });
                    log.check(r.witness_residual < cfg.residual_tol, || {
                        format!("({d}, {n}): witness residual {:.2e}", r.witness_residual)
                    });
                    log.note(format!(
                        "({d}, {n}): landing {:.6}, witness {:.6} at {:.1e}, residual {:.1e}",
                        r.pair.landing_point, r.witness.c, r.witness_distance, r.witness_residual
                    ));
                }
                Err(e) => log.check(false, || format!("({d}, {n}): {e}")),
            }
        }
    }
}

fn deployments(len: usize, max: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, lo: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=max {
            cur.push(v);
            go(len, v, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, 0, max, &mut Vec::new(), &mut out);
    out
}

fn rotation_sets(log: &mut Log) {
    let key = |s: &RotationSet| (s.rot_num, s.angles.clone());
    for d in 2..=4u32 {
        for q in 1..=6u32 {
            let brute = match brute_force_enumerate(d, q) {
                Ok(b) => b,
                Err(e) => {
                    log.check(false, || format!("brute force ({d}, {q}): {e}"));
                    continue;
                }
            };
            let mut built = Vec::new();
            for p in (0..q as u64).filter(|&p| reduced(p, q as u64) == (p, q as u64)) {
                let rot = RotationNumber::new(p, q as u64).expect("reduced");
                for dep in deployments(d as usize - 1, (d as usize - 1) * q as usize) {
                    if let Ok(set) = construct(d, rot, &dep) {
                        built.push(set);
                    }
                }
            }
            let a: BTreeSet<_> = brute.iter().map(key).collect();
            let b: BTreeSet<_> = built.iter().map(key).collect();
            log.check(a == b && a.len() == brute.len() && b.len() == built.len(), || {
                format!("({d}, {q}): brute force {} sets, construction {} sets", a.len(), b.len())
            });
            for s in &brute {
                let again = construct(d, s.rot_num, &s.deployment);
                log.check(again.as_ref() == Ok(s), || {
                    format!("({d}, {q}): {:?} not reconstructed from its data", s.angles)
                });
            }
            log.note(format!("({d}, {q}): {} rotation sets", a.len()));
            if q >= 2 {
                match unit_rotation_family(d, q) {
                    Ok(fam) => {
                        let n = q as usize;
                        log.check(fam.len() == d as usize - 1, || {
                            format!("({d}, {q}): family has {} members", fam.len())
                        });
                        log.check(
                            fam.iter()
                                .all(|s| s.deployment.iter().all(|&e| e == 0 || e == n)),
                            || format!("({d}, {q}): deployment entries outside {{0, {n}}}"),
                        );
                        log.check(fam.iter().all(|s| a.contains(&key(s))), || {
                            format!("({d}, {q}): family member missing from brute force")
                        });
                    }
                    Err(e) => log.check(false, || format!("family ({d}, {q}): {e}")),
                }
            }
        }
    }
}

fn replay(log: &mut Log) {
    let primes = |a, m| primitive_prime_divisors(a, m).map(|r| r.primitive_primes);
    match primes(2, 6) {
        Ok(p) => log.check(p.is_empty(), || format!("2^6 - 1 has primitive primes {p:?}")),
        Err(e) => log.check(false, || e.to_string()),
    }
    match primes(2, 5) {
        Ok(p) => log.check(p == [31u32.into()], || format!("2^5 - 1 primitive primes {p:?}")),
        Err(e) => log.check(false, || e.to_string()),
    }
    let mut records = 0;
    let mut excluded = Vec::new();
    for d in 2..=6u64 {
        let bound = match bang_bound(d, REPLAY_CAP) {
            Ok(b) => b,
            Err(e) => {
                log.check(false, || e.to_string());
                continue;
            }
        };
        let threshold = bound.max(2);
        for big_d in 2..=6u64 {
            let report = match replay_theorem(d, big_d, 0, 20) {
                Ok(r) => r,
                Err(e) => {
                    log.check(false, || format!("({d}, {big_d}): {e}"));
                    continue;
                }
            };
            for rec in &report.records {
                if rec.m > threshold {
                    records += 1;
                    log.check(rec.contradiction, || {
                        format!("(d, D, k) = ({d}, {big_d}, {}): m = {} gives no contradiction", rec.k, rec.m)
                    });
                } else if rec.m > bound {
                    excluded.push(format!(
                        "({d},{big_d},{}){}",
                        rec.k,
                        if rec.contradiction { "" } else { "*" }
                    ));
                }
            }
        }
    }
    if !excluded.is_empty() {
        log.note(format!(
            "m = 2 records above the bang bound, outside the argument's M > 2 (* = no contradiction): {}",
            excluded.join(" ")
        ));
    }
    log.note(format!("{records} records above max(bang bound, 2), all contradictions"));
}

/// Exact period of the critical orbit at `c`, read off numerically.
fn orbit_period(c: Complex64, max: usize) -> Option<usize> {
    let mut z = Complex64::zero();
    for k in 1..=max {
        z = z * z + c;
        if z.norm() < 1e-8 {
            return Some(k);
        }
    }
    None
}

fn pcf_atlas(cfg: &RunConfig, log: &mut Log) {
    for (n, want) in [(1u32, 1usize), (2, 1), (3, 3), (4, 6)] {
        match hyperbolic_centers(2, n) {
            Ok(cs) => {
                log.check(cs.len() == want, || format!("period {n}: {} centers, expected {want}", cs.len()));
                for c in cs {
                    log.check(orbit_period(c, 16) == Some(n as usize), || {
                        format!("center {c} does not have exact period {n}")
                    });
                }
            }
            Err(e) => log.check(false, || format!("period {n}: {e}")),
        }
    }
    match misiurewicz(2, 2, 1) {
        Ok(ms) => log.check(
            ms.len() == 1 && (ms[0] + 2.0).norm() < cfg.residual_tol,
            || format!("misiurewicz(2, 2, 1) = {ms:?}"),
        ),
        Err(e) => log.check(false, || e.to_string()),
    }
}

fn invariant_curves(log: &mut Log) {
    let poly = |s: &str| ExactPoly::parse_coeffs(s).expect("literal polynomial");
    let z = ExactPoly::z();
    log.check(is_invariant(&z, &poly("0, 0, 1")) == Ok(true), || "C_z not invariant under z^2".into());
    log.check(is_invariant(&z, &poly("1, 0, 1")) == Ok(false), || "C_z invariant under z^2 + 1".into());
    log.check(
        matches!(is_exceptional(&poly("-2, 0, 1")), Ok(Exceptional::ChebyshevLike { .. })),
        || "z^2 - 2 not chebyshev-like".into(),
    );
    log.check(
        matches!(is_exceptional(&poly("0, 0, 3")), Ok(Exceptional::PowerLike { .. })),
        || "3z^2 not power-like".into(),
    );
    log.check(is_exceptional(&poly("1, 0, 1")) == Ok(Exceptional::None), || "z^2 + 1 exceptional".into());
    let scan = consistency_scan();
    log.check(scan.passed(), || {
        format!(
            "scan: {} violations, {} errors, first {:?}",
            scan.violations.len(),
            scan.errors.len(),
            scan.violations.first()
        )
    });
    log.note(format!(
        "scan: {} r x {} q, {} pairs, {} non-exceptional r, {} power maps, {} invariant pairs",
        scan.r_count, scan.q_count, scan.pairs_checked, scan.non_exceptional_r, scan.power_maps, scan.invariant_pairs
    ));
}

fn mirror_symmetric(r: &Raster) -> bool {
    let (w, h) = (r.width(), r.height());
    (0..h).all(|row| (0..w).all(|col| r.get(col, row) == r.get(col, h - 1 - row)))
}

fn rendering(cfg: &RunConfig, log: &mut Log) {
    let spec = OVERVIEW_VIEW;
    let pair = match verify_landing_pair(2, &Angle::frac(1, 3), &Angle::frac(2, 3), cfg.extrapolation_tol) {
        Ok(p) => p,
        Err(e) => return log.check(false, || e.to_string()),
    };
    let produce = || -> Result<(Raster, Raster, String), String> {
        let raster = render_multibrot(&spec).map_err(|e| e.to_string())?;
        let o = overlay_rays(&raster, &pair.traces).map_err(|e| e.to_string())?;
        Ok((raster, o.raster, o.svg))
    };
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build();
    let first = produce();
    let second = match single {
        Ok(pool) => pool.install(produce),
        Err(e) => Err(e.to_string()),
    };
    match (first, second) {
        (Ok((raster, drawn1, svg1)), Ok((_, drawn2, svg2))) => {
            let pgm = drawn1.to_pgm();
            log.check(pgm == drawn2.to_pgm(), || "PPM differs between thread counts".into());
            log.check(svg1 == svg2, || "SVG differs between thread counts".into());
            log.check(mirror_symmetric(&raster), || "raster is not mirror symmetric".into());
            let (x, y) = spec.to_pixel(Complex64::new(-0.75, 0.0));
            log.check(drawn1.get(x.round() as u32, y.round() as u32) == 255, || {
                "landing point -3/4 not marked".into()
            });
            log.check(svg1.matches("<polyline").count() >= 2, || "SVG lacks the two rays".into());
            log.note(format!("{} byte PPM, {} byte SVG", pgm.len(), svg1.len()));
        }
        (Err(e), _) | (_, Err(e)) => log.check(false, || e),
    }
}
