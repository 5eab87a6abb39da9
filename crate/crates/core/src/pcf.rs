//! Postcritically finite parameters: hyperbolic centers (roots of
//! `P_n(c) = f_c^n(0)` with exact period `n`), Misiurewicz parameters, and
//! the parametrization `alpha -> alpha - alpha^d` of the main component `H_d`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boettcher::cpow;
use crate::dd::Cdd;

pub const DEFAULT_DEGREE_CAP: u64 = 4096;
/// Residual below which an orbit relation counts as exact, in double-double.
pub const EXACT_TOL: f64 = 1e-20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PcfError {
    #[error("degree must be at least 2, got {0}")]
    Degree(u32),
    #[error("iterate count must be at least 1")]
    Iterate,
    #[error("polynomial degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: u64, cap: u64 },
    #[error("root finder left {count} of {degree} roots unconverged")]
    NonConvergence { count: usize, degree: usize },
}

/// `P_n(c) = f_c^n(0)` with exact integer coefficients, `coeffs[i]` on `c^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalOrbitPoly {
    pub d: u32,
    pub n: u32,
    pub coeffs: Vec<BigInt>,
}

impl CriticalOrbitPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParabolicParam {
    pub c: Complex64,
    pub alpha: Complex64,
    pub multiplier: Complex64,
}

impl ParabolicParam {
    /// Largest of `|d alpha^{d-1} - multiplier|` and `|alpha^d + c - alpha|`.
    pub fn residual(&self, d: u32) -> f64 {
        let a = (cpow(self.alpha, d - 1) * d as f64 - self.multiplier).norm();
        let b = (cpow(self.alpha, d) + self.c - self.alpha).norm();
        a.max(b)
    }
}

fn check(d: u32, n: u32) -> Result<(), PcfError> {
    if d < 2 {
        return Err(PcfError::Degree(d));
    }
    if n < 1 {
        return Err(PcfError::Iterate);
    }
    Ok(())
}

fn orbit_degree(d: u32, n: u32) -> Option<u64> {
    (d as u64).checked_pow(n - 1)
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn critical_orbit_poly(d: u32, n: u32) -> Result<CriticalOrbitPoly, PcfError> {
    critical_orbit_poly_capped(d, n, DEFAULT_DEGREE_CAP)
}

pub fn critical_orbit_poly_capped(d: u32, n: u32, cap: u64) -> Result<CriticalOrbitPoly, PcfError> {
    check(d, n)?;
    let degree = orbit_degree(d, n).unwrap_or(u64::MAX);
    if degree > cap {
        return Err(PcfError::DegreeCap { degree, cap });
    }
    let mut p = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..n {
        let mut q = p.clone();
        for _ in 1..d {
            q = poly_mul(&q, &p);
        }
        q[1] += 1;
        p = q;
    }
    Ok(CriticalOrbitPoly { d, n, coeffs: p })
}

/// `(P_k(c), P_k'(c))` in double-double.
fn orbit_dd(d: u32, c: Cdd, k: u32) -> (Cdd, Cdd) {
    let mut z = Cdd::ZERO;
    let mut dz = Cdd::ZERO;
    for _ in 0..k {
        dz = z.powu(d - 1) * dz;
        dz = dz.scale(d as f64) + Cdd::ONE;
        z = z.powu(d) + c;
    }
    (z, dz)
}

/// Critical orbit `z_0 = 0, ..., z_len` in double-double.
fn orbit_points(d: u32, c: Cdd, len: u32) -> Vec<Cdd> {
    let mut out = vec![Cdd::ZERO];
    let mut z = Cdd::ZERO;
    for _ in 0..len {
        z = z.powu(d) + c;
        out.push(z);
    }
    out
}

/// Value and derivative of `P_k`, or `None` for the value once it is huge;
/// the second component is then the log-derivative `P_k'/P_k`.
enum OrbitEval {
    Finite(Complex64, Complex64),
    Huge(Complex64),
}

fn orbit_f64(d: u32, c: Complex64, k: u32) -> OrbitEval {
    let mut z = Complex64::new(0.0, 0.0);
    let mut dz = Complex64::new(0.0, 0.0);
    for step in 0..k {
        if z.norm() > 1e8 {
            // P_{j+1}'/P_{j+1} = d P_j'/P_j up to a relative error |c| / |P_j|^d.
            let log_deriv = dz / z * (d as f64).powi((k - step) as i32);
            return OrbitEval::Huge(log_deriv);
        }
        dz = cpow(z, d - 1) * dz * d as f64 + 1.0;
        z = cpow(z, d) + c;
    }
    OrbitEval::Finite(z, dz)
}

/// Newton correction `f/f'` for `P_n`.
fn newton_step_orbit(d: u32, n: u32, c: Complex64) -> Complex64 {
    match orbit_f64(d, c, n) {
        OrbitEval::Finite(z, dz) => z / dz,
        OrbitEval::Huge(l) => l.inv(),
    }
}

/// Newton correction for `S = sum_j A^j B^{d-1-j}` with `A = P_{m-1+n}`,
/// `B = P_{m-1}`, so that `P_{m+n} - P_m = (A - B) S`.
fn newton_step_misiurewicz(d: u32, m: u32, n: u32, c: Complex64) -> Complex64 {
    let (a, da) = match orbit_f64(d, c, m - 1 + n) {
        OrbitEval::Finite(a, da) => (a, da),
        OrbitEval::Huge(l) => return (l * (d - 1) as f64).inv(),
    };
    let (b, db) = match orbit_f64(d, c, m - 1) {
        OrbitEval::Finite(b, db) => (b, db),
        OrbitEval::Huge(l) => return (l * (d - 1) as f64).inv(),
    };
    if a.norm() > 1e8 * b.norm().max(1.0) {
        return (da / a * (d - 1) as f64).inv();
    }
    let mut s = Complex64::new(0.0, 0.0);
    let mut ds = Complex64::new(0.0, 0.0);
    for j in 0..d {
        let i = d - 1 - j;
        let aj = a.powu(j);
        let bi = b.powu(i);
        s += aj * bi;
        if j > 0 {
            ds += a.powu(j - 1) * da * bi * j as f64;
        }
        if i > 0 {
            ds += aj * b.powu(i - 1) * db * i as f64;
        }
    }
    s / ds
}

/// Aberth-Ehrlich simultaneous iteration for a monic polynomial of the given
/// degree whose Newton correction `f/f'` is supplied. Returns the
/// approximations and whether each converged.
fn aberth<F>(degree: usize, radius: f64, step: F) -> (Vec<Complex64>, Vec<bool>)
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    use rayon::prelude::*;
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / degree as f64 + 0.4))
        .collect();
    let mut done = vec![false; degree];
    for _ in 0..5000 {
        let updates: Vec<Option<Complex64>> = (0..degree)
            .into_par_iter()
            .map(|i| {
                if done[i] {
                    return None;
                }
                let r = step(z[i]);
                if !r.is_finite() {
                    return Some(Complex64::new(0.0, 0.0));
                }
                let sum: Complex64 = (0..degree)
                    .filter(|&j| j != i)
                    .map(|j| (z[i] - z[j]).inv())
                    .sum();
                Some(r / (Complex64::new(1.0, 0.0) - r * sum))
            })
            .collect();
        let mut all = true;
        for (i, w) in updates.into_iter().enumerate() {
            if let Some(w) = w {
                if w.is_finite() {
                    z[i] -= w;
                }
                if !w.is_finite() || w.norm() <= 1e-15 * z[i].norm().max(1.0) {
                    done[i] = true;
                } else {
                    all = false;
                }
            }
        }
        if all {
            break;
        }
    }
    (z, done)
}

/// Groups approximations closer than `gap` and returns `(centroid, multiplicity)`.
fn clusters(roots: &[Complex64], gap: f64) -> Vec<(Complex64, usize)> {
    let mut used = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let mut members = vec![i];
        used[i] = true;
        let mut k = 0;
        while k < members.len() {
            let zi = roots[members[k]];
            for j in 0..roots.len() {
                if !used[j] && (roots[j] - zi).norm() < gap {
                    used[j] = true;
                    members.push(j);
                }
            }
            k += 1;
        }
        let centroid = members.iter().map(|&j| roots[j]).sum::<Complex64>() / members.len() as f64;
        out.push((centroid, members.len()));
    }
    out
}

/// Schroeder iteration `c <- c - k f/f'` in double-double.
fn polish<F>(c: Complex64, multiplicity: usize, eval: F) -> Cdd
where
    F: Fn(Cdd) -> (Cdd, Cdd),
{
    let mut c = Cdd::from(c);
    for _ in 0..8 {
        let (f, df) = eval(c);
        if f.norm() == 0.0 || df.norm() == 0.0 {
            break;
        }
        let w = (f / df).scale(multiplicity as f64);
        c = c - w;
        if w.norm() < 1e-32 * c.norm().max(1.0) {
            break;
        }
    }
    c
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|k| n.is_multiple_of(*k)).collect()
}

fn root_radius(d: u32) -> f64 {
    2f64.powf(1.0 / (d as f64 - 1.0)) + 0.2
}

/// All roots of `P_n`, polished in double-double.
fn orbit_roots(d: u32, n: u32, cap: u64) -> Result<Vec<Cdd>, PcfError> {
    let degree = orbit_degree(d, n).unwrap_or(u64::MAX);
    if degree > cap {
        return Err(PcfError::DegreeCap { degree, cap });
    }
    let degree = degree as usize;
    let (z, done) = aberth(degree, root_radius(d), |c| newton_step_orbit(d, n, c));
    let failed = done.iter().filter(|&&ok| !ok).count();
    if failed > 0 {
        return Err(PcfError::NonConvergence {
            count: failed,
            degree,
        });
    }
    let roots: Vec<Cdd> = z.iter().map(|&c| polish(c, 1, |c| orbit_dd(d, c, n))).collect();
    // P_n has simple roots; coincident approximations mean the iteration failed.
    if clusters(&roots.iter().map(|r| r.to_c64()).collect::<Vec<_>>(), 1e-12).len() != degree {
        return Err(PcfError::NonConvergence { count: 1, degree });
    }
    Ok(roots)
}

/// Smallest `j` with `P_j(c) = 0`, for a root `c` of `P_n`.
fn exact_period(d: u32, n: u32, c: Cdd) -> u32 {
    let orbit = orbit_points(d, c, n);
    divisors(n)
        .into_iter()
        .find(|&j| orbit[j as usize].norm() < EXACT_TOL)
        .unwrap_or(n)
}

/// Roots of `P_n` with exact period `n`, i.e. centers of period-`n` hyperbolic components.
pub fn hyperbolic_centers(d: u32, n: u32) -> Result<Vec<Complex64>, PcfError> {
    hyperbolic_centers_capped(d, n, DEFAULT_DEGREE_CAP)
}

pub fn hyperbolic_centers_capped(d: u32, n: u32, cap: u64) -> Result<Vec<Complex64>, PcfError> {
    check(d, n)?;
    Ok(orbit_roots(d, n, cap)?
        .into_iter()
        .filter(|&c| exact_period(d, n, c) == n)
        .map(|c| c.to_c64())
        .collect())
}

/// The roots of `P_n` grouped by the exact period of `0`: `(period, roots)`.
pub fn period_partition(d: u32, n: u32) -> Result<Vec<(u32, Vec<Complex64>)>, PcfError> {
    check(d, n)?;
    let roots = orbit_roots(d, n, DEFAULT_DEGREE_CAP)?;
    Ok(divisors(n)
        .into_iter()
        .map(|j| {
            let members = roots
                .iter()
                .filter(|&&c| exact_period(d, n, c) == j)
                .map(|c| c.to_c64())
                .collect();
            (j, members)
        })
        .collect())
}

/// Parameters whose critical orbit has exact preperiod `m` and exact period `n`.
pub fn misiurewicz(d: u32, m: u32, n: u32) -> Result<Vec<Complex64>, PcfError> {
    misiurewicz_capped(d, m, n, DEFAULT_DEGREE_CAP)
}

pub fn misiurewicz_capped(d: u32, m: u32, n: u32, cap: u64) -> Result<Vec<Complex64>, PcfError> {
    check(d, n)?;
    if m < 1 {
        return Err(PcfError::Iterate);
    }
    if m == 1 {
        // The only preimage of c is 0, so f(0) = c periodic forces 0 periodic.
        return Ok(Vec::new());
    }
    let base = orbit_degree(d, m - 1 + n).unwrap_or(u64::MAX);
    let degree = base.saturating_mul(d as u64 - 1);
    if degree > cap {
        return Err(PcfError::DegreeCap { degree, cap });
    }
    let degree = degree as usize;
    let (z, done) = aberth(degree, root_radius(d), |c| newton_step_misiurewicz(d, m, n, c));
    // Multiple roots converge slowly and land in tight clusters; they are
    // grouped with their stragglers and polished together.
    let groups = clusters(&z, 1e-6);

    let relation = |c: Cdd| -> (Cdd, Cdd) {
        let (a, da) = orbit_dd(d, c, m + n);
        let (b, db) = orbit_dd(d, c, m);
        (a - b, da - db)
    };
    let mut out = Vec::new();
    for (centroid, k) in groups {
        let c = polish(centroid, k, relation);
        let tol = EXACT_TOL.powf(1.0 / k as f64);
        let orbit = orbit_points(d, c, m + n);
        let close = |i: u32, j: u32| (orbit[i as usize] - orbit[j as usize]).norm() < tol;
        let lands = close(m + n, m);
        let earlier = close(m - 1 + n, m - 1);
        let shorter = divisors(n).into_iter().filter(|&j| j < n).any(|j| close(m + j, m));
        if lands && !earlier && !shorter {
            out.push(c.to_c64());
        }
    }
    let unconverged = done.iter().filter(|&&ok| !ok).count();
    if unconverged > 0 && out.is_empty() {
        return Err(PcfError::NonConvergence {
            count: unconverged,
            degree,
        });
    }
    Ok(out)
}

/// Every `alpha` with `d alpha^{d-1} = lambda`, mapped to `c = alpha - alpha^d`.
pub fn main_component_point(d: u32, lambda: Complex64) -> Vec<ParabolicParam> {
    assert!(d >= 2, "degree must be at least 2");
    if lambda.norm() == 0.0 {
        return vec![ParabolicParam {
            c: Complex64::new(0.0, 0.0),
            alpha: Complex64::new(0.0, 0.0),
            multiplier: lambda,
        }];
    }
    let e = d - 1;
    let base = (lambda / d as f64).powf(1.0 / e as f64);
    (0..e)
        .map(|k| {
            let alpha = base * Complex64::from_polar(1.0, 2.0 * PI * k as f64 / e as f64);
            ParabolicParam {
                c: alpha - cpow(alpha, d),
                alpha,
                multiplier: lambda,
            }
        })
        .collect()
}

/// The `d - 1` parameters on the boundary of `H_d` with a fixed point of multiplier `e^{2 pi i / n}`.
pub fn parabolic_boundary(d: u32, n: u32) -> Result<Vec<ParabolicParam>, PcfError> {
    check(d, n)?;
    Ok(main_component_point(
        d,
        Complex64::from_polar(1.0, 2.0 * PI / n as f64),
    ))
}

/// All `d` fixed points of `z^d + c`.
pub fn fixed_points(d: u32, c: Complex64) -> Vec<Complex64> {
    assert!(d >= 2, "degree must be at least 2");
    let (z, _) = aberth(d as usize, 2.0, |z| {
        (cpow(z, d) - z + c) / (cpow(z, d - 1) * d as f64 - 1.0)
    });
    z
}

/// Whether `z^d + c` has an attracting fixed point, i.e. `c` lies in `H_d`.
pub fn in_main_component(d: u32, c: Complex64) -> bool {
    fixed_points(d, c)
        .into_iter()
        .any(|z| (cpow(z, d - 1) * d as f64).norm() < 1.0)
}

/// Heuristic: whether the critical orbit revisits an earlier point within
/// `tol` before `max_iter` steps or escaping.
pub fn is_pcf_numeric(d: u32, c: Complex64, max_iter: usize, tol: f64) -> bool {
    let radius = crate::boettcher::escape_radius(d, c);
    let mut orbit = vec![Complex64::new(0.0, 0.0)];
    let mut z = orbit[0];
    for _ in 0..max_iter {
        z = cpow(z, d) + c;
        if z.norm() > radius {
            return false;
        }
        if orbit.iter().any(|w| (w - z).norm() < tol) {
            return true;
        }
        orbit.push(z);
    }
    false
}
