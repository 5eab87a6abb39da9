//! Green's functions, the uniformization `Phi: C \ M_d -> C \ closed disk`,
//! its inverse `Psi` as an exact Laurent series, and the affine symmetries of
//! `M_d` read off from the coefficients of `Psi`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{self, Series};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoettcherError {
    #[error("degree must be at least 2, got {0}")]
    Degree(u32),
    #[error("truncation order {order} too small (need at least {needed})")]
    Order { order: usize, needed: usize },
    #[error("truncation order {0} too shallow to decide the symmetry group")]
    TooShallow(usize),
    #[error("c = {0} lies in the multibrot set (Green potential 0)")]
    PointInside(Complex64),
    #[error("branch tracking failed near the boundary at c = {0}")]
    BranchTracking(Complex64),
}

/// Potential of a point, in nats. Zero means no escape was detected.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct GreenValue {
    pub value: f64,
}

impl GreenValue {
    pub fn is_inside(&self) -> bool {
        self.value == 0.0
    }
}

/// `z + sum_{m=0}^{N} coeffs[m] z^{-m}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentTail {
    pub order: usize,
    pub coeffs: Vec<BigRational>,
}

impl LaurentTail {
    pub fn coeff(&self, m: usize) -> &BigRational {
        &self.coeffs[m]
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        let inv = w.inv();
        let mut acc = Complex64::new(0.0, 0.0);
        for b in self.coeffs.iter().rev() {
            acc = acc * inv + b.to_f64().unwrap_or(f64::NAN);
        }
        w + acc
    }

    /// `(m, "b_m")` pairs with exact fractions.
    pub fn exact_pairs(&self) -> Vec<(String, String)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, b)| (m.to_string(), b.to_string()))
            .collect()
    }
}

/// `mu(z) = a z + b`, with `a = e^{2 pi i rotation}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub a: Complex64,
    pub b: Complex64,
    /// `a` as a fraction of a full turn, `"j/g"`.
    pub rotation: String,
}

impl AffineMap {
    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.a * z + self.b
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RejectedMap {
    pub map: AffineMap,
    /// Index `m` of a coefficient with `b_m != 0` and `a^{m+1} != 1`.
    pub killed_by: usize,
    /// A parameter in `M_d` whose image escapes, when one was found.
    pub witness: Option<Complex64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub d: u32,
    pub order: usize,
    pub symmetries: Vec<AffineMap>,
    /// Candidates allowed by the first nonzero `b_m` (m >= 1) but excluded by
    /// a later coefficient.
    pub rejected: Vec<RejectedMap>,
}

pub fn default_order(d: u32) -> usize {
    2 * d as usize + 8
}

pub(crate) fn cpow(z: Complex64, d: u32) -> Complex64 {
    let mut acc = z;
    for _ in 1..d {
        acc *= z;
    }
    acc
}

/// `max(2^{1/(d-1)}, |c|^{1/(d-1)}) + 1`.
pub fn escape_radius(d: u32, c: Complex64) -> f64 {
    let e = 1.0 / (d as f64 - 1.0);
    2f64.powf(e).max(c.norm().powf(e)) + 1.0
}

fn refine_cutoff(d: u32) -> f64 {
    10f64.powf(250.0 / d as f64)
}

/// Parameter potential `G_{f_c}(c) = lim log|f_c^n(0)| / d^{n-1}`.
pub fn green_parameter(d: u32, c: Complex64, max_iter: usize, escape_radius: f64) -> GreenValue {
    assert!(d >= 2, "degree must be at least 2");
    let cutoff = refine_cutoff(d).max(escape_radius);
    let mut z = c;
    let mut n = 1i32;
    for _ in 1..max_iter {
        if z.norm() > escape_radius {
            break;
        }
        z = cpow(z, d) + c;
        n += 1;
    }
    if z.norm().is_nan() || z.norm() <= escape_radius {
        return GreenValue { value: 0.0 };
    }
    while z.norm() < cutoff {
        z = cpow(z, d) + c;
        n += 1;
    }
    GreenValue {
        value: z.norm().ln() / (d as f64).powi(n - 1),
    }
}

/// Dynamical potential `G_{f_c}(z) = lim log|f_c^n(z)| / d^n`.
pub fn green_dynamic(d: u32, c: Complex64, z: Complex64, max_iter: usize) -> GreenValue {
    assert!(d >= 2, "degree must be at least 2");
    let radius = escape_radius(d, c).max(z.norm().min(1.0) + 1.0);
    let cutoff = refine_cutoff(d).max(radius);
    let mut z = z;
    let mut n = 0i32;
    for _ in 0..max_iter {
        if z.norm() > radius {
            break;
        }
        z = cpow(z, d) + c;
        n += 1;
    }
    if z.norm().is_nan() || z.norm() <= radius {
        return GreenValue { value: 0.0 };
    }
    while z.norm() < cutoff {
        z = cpow(z, d) + c;
        n += 1;
    }
    GreenValue {
        value: z.norm().ln() / (d as f64).powi(n),
    }
}

/// Whether the critical orbit leaves the escape disk within `max_iter` steps.
pub fn escapes(d: u32, c: Complex64, max_iter: usize) -> bool {
    let r = escape_radius(d, c);
    let mut z = Complex64::new(0.0, 0.0);
    for _ in 0..max_iter {
        z = cpow(z, d) + c;
        if z.norm() > r {
            return true;
        }
    }
    false
}

/// `F(u)` with `Phi(c) = c F(1/c)`, through `u^{len-1}`.
///
/// With `f_c^{n-1}(c) = c^{d^{n-1}} Q_n(1/c)` one has `Q_1 = 1` and
/// `Q_{n+1} = Q_n^d + u^{d^n - 1}`; once `d^n - 1 >= len` further steps do
/// not change `Q_n^{1/d^{n-1}}` below `u^len`.
fn phi_factor(d: u32, len: usize) -> Series {
    let mut q = series::one(len);
    let mut dn: u64 = 1;
    loop {
        let shift = dn * d as u64 - 1;
        if shift as usize >= len {
            break;
        }
        q = series::pow_int(&q, d as u64, len);
        q[shift as usize] += BigRational::one();
        dn *= d as u64;
    }
    series::pow_rational(&q, &BigRational::new(BigInt::one(), BigInt::from(dn)), len)
}

/// `Phi(c) = c + sum_{m=0}^{N} a_m c^{-m}`, exactly.
pub fn phi_series(d: u32, order: usize) -> Result<LaurentTail, BoettcherError> {
    if d < 2 {
        return Err(BoettcherError::Degree(d));
    }
    if order < 1 {
        return Err(BoettcherError::Order { order, needed: 1 });
    }
    let f = phi_factor(d, order + 2);
    Ok(LaurentTail {
        order,
        coeffs: f[1..].to_vec(),
    })
}

/// `Psi(w) = w + sum_{m=0}^{N} b_m w^{-m}`, the compositional inverse of `Phi`.
///
/// In `u = 1/c`, `v = 1/w` the relation is `v = u / F(u)`; Lagrange inversion
/// gives `u = H(v)` with `[v^k] H = [u^{k-1}] F^k / k`, and `Psi(w) = w / (H(v)/v)`.
pub fn psi_series(d: u32, order: usize) -> Result<LaurentTail, BoettcherError> {
    if d < 2 {
        return Err(BoettcherError::Degree(d));
    }
    if order < d as usize {
        return Err(BoettcherError::Order {
            order,
            needed: d as usize,
        });
    }
    let len = order + 2;
    let f = phi_factor(d, len);
    // h_over_v[k-1] = [v^k] H.
    let mut h_over_v = vec![BigRational::zero(); len];
    let mut fk = series::one(len);
    for k in 1..=len {
        fk = series::mul(&fk, &f, len);
        h_over_v[k - 1] = &fk[k - 1] / BigInt::from(k);
    }
    let k = series::reciprocal(&h_over_v, len);
    Ok(LaurentTail {
        order,
        coeffs: k[1..].to_vec(),
    })
}

/// `G(v)` with `phi_c(z) = z G(1/z)` for a rational parameter `c`, through `v^{len-1}`.
pub fn dynamic_phi_series(d: u32, c: &BigRational, len: usize) -> Series {
    assert!(d >= 2, "degree must be at least 2");
    let mut r = series::one(len);
    let mut dn: u64 = 1;
    loop {
        let next = dn * d as u64;
        if next as usize >= len {
            break;
        }
        r = series::pow_int(&r, d as u64, len);
        r[next as usize] += c;
        dn = next;
    }
    series::pow_rational(&r, &BigRational::new(BigInt::one(), BigInt::from(dn)), len)
}

fn unit_root(j: u64, g: u64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * j as f64 / g as f64)
}

fn affine_from_root(b0: f64, j: u64, g: u64) -> AffineMap {
    let (j, g) = if j == 0 { (0, 1) } else { (j / j.gcd(&g), g / j.gcd(&g)) };
    let a = if j == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        unit_root(j, g)
    };
    let b = (Complex64::new(1.0, 0.0) - a) * b0;
    AffineMap {
        a,
        b: if b.norm() < 1e-15 { Complex64::new(0.0, 0.0) } else { b },
        rotation: format!("{j}/{g}"),
    }
}

/// Solves `Psi(lambda z) = A Psi(z) + B` coefficientwise over `|lambda| = 1`.
///
/// Comparing coefficients gives `A = lambda`, `B = b_0 (1 - lambda)` and
/// `b_m (lambda^{m+1} - 1) = 0` for `m >= 1`, so `lambda` ranges over the
/// `g`-th roots of unity with `g = gcd{m + 1 : b_m != 0}`.
pub fn affine_symmetries(d: u32, order: usize) -> Result<SymmetryReport, BoettcherError> {
    if d < 2 {
        return Err(BoettcherError::Degree(d));
    }
    if order < d as usize + 2 {
        return Err(BoettcherError::Order {
            order,
            needed: d as usize + 2,
        });
    }
    let psi = psi_series(d, order)?;
    let nonzero: Vec<usize> = (1..=order).filter(|&m| !psi.coeffs[m].is_zero()).collect();
    let first = *nonzero.first().ok_or(BoettcherError::TooShallow(order))?;
    let g = nonzero.iter().fold(0u64, |g, &m| g.gcd(&(m as u64 + 1)));
    let b0 = psi.coeffs[0].to_f64().unwrap_or(0.0);

    let symmetries = (0..g).map(|j| affine_from_root(b0, j, g)).collect();
    let g0 = first as u64 + 1;
    let rejected = (0..g0)
        .filter(|&j| (j * g) % g0 != 0)
        .map(|j| {
            let killed_by = *nonzero
                .iter()
                .find(|&&m| !(j * (m as u64 + 1)).is_multiple_of(g0))
                .expect("j is not a g-th root");
            let map = affine_from_root(b0, j, g0);
            let witness = escaping_image_witness(d, &map);
            RejectedMap {
                map,
                killed_by,
                witness,
            }
        })
        .collect();
    Ok(SymmetryReport {
        d,
        order,
        symmetries,
        rejected,
    })
}

/// A grid point of `M_d` whose image under `map` escapes.
fn escaping_image_witness(d: u32, map: &AffineMap) -> Option<Complex64> {
    const STEPS: i32 = 40;
    const ITER: usize = 500;
    for i in 0..=STEPS {
        for j in 0..=STEPS / 2 {
            let c = Complex64::new(
                -2.0 + 4.0 * i as f64 / STEPS as f64,
                2.0 * j as f64 / STEPS as f64,
            );
            if !escapes(d, c, ITER) && escapes(d, map.apply(c), ITER) {
                return Some(c);
            }
        }
    }
    None
}

/// All `lambda` with `lambda^{D-1} = lead`: the possible values of
/// `lim phi_h(z)/z` for a polynomial `h` of degree `D` with leading coefficient `lead`.
pub fn boettcher_scale_roots(lead: Complex64, big_d: u32) -> Vec<Complex64> {
    assert!(big_d >= 2, "degree must be at least 2");
    let e = big_d - 1;
    let base = lead.powf(1.0 / e as f64);
    (0..e).map(|k| base * unit_root(k as u64, e as u64)).collect()
}

/// `Phi(c)` for `c` outside `M_d`.
///
/// `Phi(c) = c * prod_{n>=1} (1 + c / P_n^d)^{1/d^n}` with `P_n = f_c^{n-1}(c)`.
/// The logarithms of the factors are continued along the ray from a far
/// point `s c` (where principal branches are correct) down to `c`.
pub fn phi_eval(d: u32, c: Complex64, precision: f64) -> Result<Complex64, BoettcherError> {
    if d < 2 {
        return Err(BoettcherError::Degree(d));
    }
    if green_parameter(d, c, 10_000, escape_radius(d, c)).is_inside() {
        return Err(BoettcherError::PointInside(c));
    }
    let threshold = (precision * 1e-3).clamp(1e-20, 1e-6);
    let factors = |c: Complex64| -> Option<Vec<Complex64>> {
        let mut out = Vec::new();
        let mut p = c;
        for _ in 0..20_000 {
            let ratio = c / cpow(p, d);
            if ratio.norm() < threshold {
                return Some(out);
            }
            out.push(Complex64::new(1.0, 0.0) + ratio);
            p = cpow(p, d) + c;
        }
        None
    };

    let path = field_line_path(d, c).ok_or(BoettcherError::BranchTracking(c))?;
    let far = *path.last().expect("path starts at c");
    let mut current = factors(far).ok_or(BoettcherError::BranchTracking(c))?;
    let mut logs: Vec<Complex64> = current.iter().map(|z| z.ln()).collect();
    for seg in path.windows(2).rev() {
        let (to, from) = (seg[0], seg[1]);
        // Walk the segment from `from` to `to` in adaptive fractions.
        let mut s = 0.0f64;
        let mut step = 1.0f64;
        while s < 1.0 {
            let next_s = (s + step).min(1.0);
            let point = from + (to - from) * next_s;
            let next = factors(point).ok_or(BoettcherError::BranchTracking(c))?;
            let smooth = next
                .iter()
                .zip(&current)
                .all(|(a, b)| (a / b - 1.0).norm() < 0.25)
                && next.iter().skip(current.len()).all(|a| (a - 1.0).norm() < 0.25);
            if !smooth {
                step /= 2.0;
                if step < 1e-9 {
                    return Err(BoettcherError::BranchTracking(c));
                }
                continue;
            }
            let mut new_logs = Vec::with_capacity(next.len());
            for (i, z) in next.iter().enumerate() {
                let l = match (logs.get(i), current.get(i)) {
                    (Some(l), Some(prev)) => l + (z / prev).ln(),
                    _ => z.ln(),
                };
                new_logs.push(l);
            }
            logs = new_logs;
            current = next;
            s = next_s;
            step = (step * 2.0).min(1.0);
        }
    }
    let mut total = c.ln();
    let mut scale = 1.0;
    for l in &logs {
        scale /= d as f64;
        total += l * scale;
    }
    Ok(total.exp())
}


/// Polyline from `c` up the gradient of the parameter potential to `|c| >= 4`.
/// Steps are a fraction of `G / |grad G|`, which is comparable to the
/// distance to `M_d`, so straight segments stay outside the set.
fn field_line_path(d: u32, c: Complex64) -> Option<Vec<Complex64>> {
    let mut path = vec![c];
    let mut c = c;
    for _ in 0..100_000 {
        if c.norm() >= 4.0 {
            return Some(path);
        }
        let mut p = c;
        let mut dp = Complex64::new(1.0, 0.0);
        let mut n = 1i32;
        while p.norm() < 1e10 {
            dp = cpow(p, d - 1) * dp * d as f64 + 1.0;
            p = cpow(p, d) + c;
            n += 1;
            if n > 100_000 {
                return None;
            }
        }
        let scale = (d as f64).powi(n - 1);
        let g = p.norm().ln() / scale;
        let grad = (dp / p).conj() / scale;
        let len = (0.25 * g / grad.norm()).min(0.25 * c.norm().max(0.1));
        c += grad / grad.norm() * len;
        path.push(c);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    const R: fn(i64, i64) -> BigRational = rat;

    #[test]
    fn green_examples() {
        let g = |d, c: Complex64| green_parameter(d, c, 2000, escape_radius(d, c));
        assert!(g(2, Complex64::new(-0.75, 0.0)).is_inside());
        for d in 2..=6 {
            assert!(g(d, Complex64::new(0.0, 0.0)).is_inside());
        }
        assert!(g(2, Complex64::new(1.0, 0.0)).value > 0.0);
    }

    #[test]
    fn green_equals_log_abs_phi() {
        // Far from M_d the truncated Phi series converges fast.
        for d in 2..=4 {
            let phi = phi_series(d, 30).unwrap();
            for c in [Complex64::new(4.0, 0.0), Complex64::new(-3.0, 5.0)] {
                let want = phi.eval(c).norm().ln();
                let got = green_parameter(d, c, 100, escape_radius(d, c)).value;
                assert!((got - want).abs() < 1e-9, "d={d} c={c} {got} vs {want}");
            }
        }
    }

    #[test]
    fn green_scaling() {
        let c = Complex64::new(0.3, 0.6);
        for z in [Complex64::new(1.2, 0.1), Complex64::new(-0.4, 1.5)] {
            let g0 = green_dynamic(2, c, z, 500).value;
            let g1 = green_dynamic(2, c, z * z + c, 500).value;
            assert!(g0 > 0.0);
            assert!((g1 - 2.0 * g0).abs() < 1e-6);
        }
    }

    #[test]
    fn phi_leading_coefficients() {
        assert_eq!(phi_series(2, 4).unwrap().coeffs[0], R(1, 2));
        assert_eq!(phi_series(3, 4).unwrap().coeffs[0], R(0, 1));
    }

    #[test]
    fn psi_known_quadratic_coefficients() {
        let psi = psi_series(2, 6).unwrap();
        let want = [R(-1, 2), R(1, 8), R(-1, 4), R(15, 128), R(0, 1)];
        assert_eq!(&psi.coeffs[..5], &want);
    }

    /// Solves `F + sum_m b_m u^{m+1} F^{-m} = 1` order by order, which is
    /// `Psi(Phi(c)) = c` written in `u = 1/c`.
    fn reversion_oracle(d: u32, order: usize) -> Vec<BigRational> {
        let len = order + 2;
        let f = phi_factor(d, len);
        let finv = series::reciprocal(&f, len);
        let mut total = f.clone();
        let mut b = Vec::new();
        let mut finv_m = series::one(len);
        for m in 0..=order {
            let bm = -total[m + 1].clone();
            let mut term = vec![BigRational::zero(); len];
            for (i, x) in finv_m.iter().enumerate() {
                if i + m + 1 < len {
                    term[i + m + 1] = x * &bm;
                }
            }
            for (t, x) in total.iter_mut().zip(&term) {
                *t += x;
            }
            b.push(bm);
            finv_m = series::mul(&finv_m, &finv, len);
        }
        b
    }

    #[test]
    fn psi_agrees_with_composition_oracle() {
        for d in 2..=5 {
            let psi = psi_series(d, 12).unwrap();
            assert_eq!(psi.coeffs, reversion_oracle(d, 12), "d = {d}");
        }
    }

    #[test]
    fn phi_of_psi_is_identity() {
        // Phi(Psi(w)) = w: in v = 1/w and u = 1/Psi(w) = v/K(v), check u / F(u) = v.
        for d in 2..=4 {
            let order = 10;
            let len = order + 2;
            let psi = psi_series(d, order).unwrap();
            let mut k = vec![BigRational::one()];
            k.extend(psi.coeffs.iter().cloned());
            let u = series::mul(&[BigRational::zero(), BigRational::one()], &series::reciprocal(&k, len), len);
            let f = phi_factor(d, len);
            let back = series::mul(&u, &series::reciprocal(&series::compose(&f, &u, len), len), len);
            let mut want = vec![BigRational::zero(); len];
            want[1] = BigRational::one();
            assert_eq!(back, want);
        }
    }

    #[test]
    fn shimauchi_pattern() {
        for d in 2..=7u32 {
            let psi = psi_series(d, default_order(d)).unwrap();
            for m in 0..d as usize - 2 {
                assert!(psi.coeffs[m].is_zero(), "d={d} b_{m}");
            }
            assert!(!psi.coeffs[d as usize - 2].is_zero(), "d={d}");
        }
    }

    #[test]
    fn dynamic_functional_equation() {
        // (1 + c v^d) G(v^d / (1 + c v^d)) = G(v)^d
        for (d, c) in [(2u32, R(-3, 4)), (2, R(1, 3)), (3, R(2, 5))] {
            let len = 20;
            let g = dynamic_phi_series(d, &c, len);
            let mut one_plus = series::one(len);
            one_plus[d as usize] = c.clone();
            let mut vd = vec![BigRational::zero(); len];
            vd[d as usize] = BigRational::one();
            let inner = series::mul(&vd, &series::reciprocal(&one_plus, len), len);
            let lhs = series::mul(&one_plus, &series::compose(&g, &inner, len), len);
            let rhs = series::pow_int(&g, d as u64, len);
            assert_eq!(lhs, rhs, "d={d} c={c}");
        }
    }

    #[test]
    fn dynamic_series_at_parameter_gives_phi() {
        // Phi(c) = c G_c(1/c) evaluated numerically, compared with phi_eval.
        let c = R(5, 1);
        let g = dynamic_phi_series(2, &c, 40);
        let v = 0.2f64;
        let val: f64 = g.iter().rev().fold(0.0, |acc, x| acc * v + x.to_f64().unwrap());
        let want = phi_eval(2, Complex64::new(5.0, 0.0), 1e-12).unwrap();
        assert!((5.0 * val - want.re).abs() < 1e-9);
    }

    #[test]
    fn symmetry_groups() {
        let r = affine_symmetries(2, default_order(2)).unwrap();
        assert_eq!(r.symmetries.len(), 1);
        assert_eq!(r.symmetries[0].rotation, "0/1");
        assert_eq!(r.rejected.len(), 1);
        let rej = &r.rejected[0];
        assert!((rej.map.a + 1.0).norm() < 1e-12);
        assert!((rej.map.b + 1.0).norm() < 1e-12);
        assert_eq!(rej.killed_by, 2);
        assert!(rej.witness.is_some());

        for d in 3..=7u32 {
            let r = affine_symmetries(d, default_order(d)).unwrap();
            assert_eq!(r.symmetries.len(), d as usize - 1, "d = {d}");
            for s in &r.symmetries {
                assert!(s.b.norm() < 1e-15);
                assert!((s.a.powu(d - 1) - 1.0).norm() < 1e-12);
            }
        }
        assert!(matches!(
            affine_symmetries(3, 4),
            Err(BoettcherError::Order { .. })
        ));
    }

    #[test]
    fn phi_eval_examples() {
        let c = Complex64::new(10.0, 0.0);
        let w = phi_eval(2, c, 1e-10).unwrap();
        // Phi(c) = c + 1/2 - 1/(8c) + ..., so Phi(10) is about 10.49.
        assert!((w - c - 0.5).norm() < 0.02, "{w}");
        assert!((w / c - 1.0).norm() < 0.06);
        assert_eq!(
            phi_eval(2, Complex64::new(-0.75, 0.0), 1e-10),
            Err(BoettcherError::PointInside(Complex64::new(-0.75, 0.0)))
        );
    }

    #[test]
    fn phi_eval_round_trips_psi() {
        let psi = psi_series(2, 40).unwrap();
        let w = Complex64::from_polar(2.0, 2.0 * PI * 0.1);
        let c = psi.eval(w);
        let back = phi_eval(2, c, 1e-12).unwrap();
        assert!((back - w).norm() < 1e-8, "{back} vs {w}");
    }

    #[test]
    fn phi_eval_modulus_is_exp_green() {
        for (d, c) in [
            (2u32, Complex64::new(0.3, 0.6)),
            (2, Complex64::new(-1.8, 0.1)),
            (2, Complex64::new(0.26, 0.0)),
            (3, Complex64::new(0.1, 1.2)),
            (4, Complex64::new(-0.9, -0.9)),
        ] {
            let w = phi_eval(d, c, 1e-10).unwrap();
            let g = green_parameter(d, c, 5000, escape_radius(d, c)).value;
            assert!((w.norm().ln() - g).abs() < 1e-8, "d={d} c={c}");
        }
    }

    #[test]
    fn phi_commutes_with_rotations() {
        for d in 3..=5u32 {
            let r = affine_symmetries(d, default_order(d)).unwrap();
            for s in &r.symmetries {
                for c in [Complex64::new(0.5, 1.1), Complex64::new(-1.3, 0.4)] {
                    let lhs = phi_eval(d, s.a * c, 1e-12).unwrap();
                    let rhs = s.a * phi_eval(d, c, 1e-12).unwrap();
                    assert!((lhs - rhs).norm() < 1e-6, "d={d} c={c}");
                }
            }
        }
    }

    #[test]
    fn scale_roots_normalize_powering_maps() {
        // phi_h(z) = lambda z conjugates h(z) = a z^D to w^D exactly when lambda^{D-1} = a.
        let a = Complex64::new(0.0, 2.0);
        for lambda in boettcher_scale_roots(a, 3) {
            let z = Complex64::new(0.7, -1.3);
            let lhs = lambda * a * z.powu(3);
            let rhs = (lambda * z).powu(3);
            assert!((lhs - rhs).norm() < 1e-12);
        }
        assert_eq!(boettcher_scale_roots(a, 4).len(), 3);
    }
}
