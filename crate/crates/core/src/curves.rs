//! Invariant curves of `(r, r̄)` acting on `P^1 x P^1`.
//!
//! The Quine embedding sends `z` to `(z, z̄)`, so the unit circle lands in the
//! curve `XY = 1`. For a polynomial `q`, `C_q` is the image of that curve under
//! `(q, q̄)`, parametrized by `t -> (q(t), q̄(1/t))`.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{BiPoly, ExactPoly, GaussRat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("{0} must be non-constant")]
    Constant(&'static str),
    #[error("exceptional classification needs degree >= 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("resultant vanishes identically for q = {0}")]
    Degenerate(String),
    #[error("resultant of q = {0} is not a power of the curve equation")]
    Inconsistent(String),
}

/// Implicit equation of `C_q`. The resultant of the parametrization equals
/// `poly^multiplicity` up to a constant, where `multiplicity` is the number of
/// parameter values over a generic point of the curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BivariateCurve {
    pub poly: BiPoly,
    pub multiplicity: u32,
    pub parameter_degree: usize,
}

impl BivariateCurve {
    pub fn contains(&self, x: &GaussRat, y: &GaussRat) -> bool {
        self.poly.eval(x, y).is_zero()
    }
}

impl fmt::Display for BivariateCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

pub fn conjugate_poly(f: &ExactPoly) -> ExactPoly {
    f.conj()
}

/// Gaussian elimination over `Q(i)`.
fn det(mut m: Vec<Vec<GaussRat>>) -> GaussRat {
    let n = m.len();
    let mut acc = GaussRat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return GaussRat::zero();
        };
        if piv != col {
            m.swap(piv, col);
            acc = -acc;
        }
        let inv = m[col][col].inv();
        acc = &acc * &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let v = &m[r][c] - &(&f * &m[col][c]);
                m[r][c] = v;
            }
        }
    }
    acc
}

/// Basis of the right kernel of `rows` (each of length `ncols`).
fn nullspace(mut rows: Vec<Vec<GaussRat>>, ncols: usize) -> Vec<Vec<GaussRat>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for k in c..ncols {
            rows[r][k] = &rows[r][k] * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for k in c..ncols {
                let v = &rows[i][k] - &(&f * &rows[r][k]);
                rows[i][k] = v;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![GaussRat::zero(); ncols];
            v[f] = GaussRat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&rows[i][f];
            }
            v
        })
        .collect()
}

/// Polynomial through `(k, vals[k])` for `k = 0..vals.len()`.
fn interpolate(vals: &[GaussRat]) -> ExactPoly {
    let n = vals.len();
    let mut dd = vals.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            let den = GaussRat::from(level as i64);
            dd[k] = &(&dd[k] - &dd[k - 1]) / &den;
        }
    }
    let mut p = ExactPoly::default();
    for k in (0..n).rev() {
        let node = ExactPoly::from_ints(&[-(k as i64), 1]);
        p = &(&p * &node) + &ExactPoly::constant(dd[k].clone());
    }
    p
}

/// `Res_t(q(t) - a, b t^n - p(t))` with `p(t) = t^n q̄(1/t)` and `B` taken of
/// formal degree `n`, as `lc(q)^n det(multiplication by B mod A)`.
fn resultant_at(q: &ExactPoly, p: &ExactPoly, a: &GaussRat, b: &GaussRat) -> GaussRat {
    let n = q.degree();
    let lc = q.leading();
    let inv = lc.inv();
    let monic: Vec<GaussRat> = (0..n)
        .map(|j| {
            let c = if j == 0 { &q.coeff(0) - a } else { q.coeff(j) };
            &c * &inv
        })
        .collect();
    let mut residues: Vec<Vec<GaussRat>> = Vec::with_capacity(2 * n);
    let mut cur = vec![GaussRat::zero(); n];
    cur[0] = GaussRat::one();
    for _ in 0..2 * n {
        residues.push(cur.clone());
        let top = cur[n - 1].clone();
        let mut next = vec![GaussRat::zero(); n];
        for j in (1..n).rev() {
            next[j] = cur[j - 1].clone();
        }
        if !top.is_zero() {
            for j in 0..n {
                next[j] = &next[j] - &(&top * &monic[j]);
            }
        }
        cur = next;
    }
    let bcoef: Vec<GaussRat> = (0..=n)
        .map(|j| if j == n { b - &p.coeff(n) } else { -p.coeff(j) })
        .collect();
    let mut m = vec![vec![GaussRat::zero(); n]; n];
    for k in 0..n {
        for (j, bj) in bcoef.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            for row in 0..n {
                let v = &m[row][k] + &(bj * &residues[j + k][row]);
                m[row][k] = v;
            }
        }
    }
    &lc.pow(n as u32) * &det(m)
}

/// Nonzero `G` of bidegree at most `(m, m)` vanishing on `C_q`, if one exists.
fn curve_of_bidegree(qp: &[ExactPoly], pp: &[ExactPoly], n: usize, m: usize) -> Option<BiPoly> {
    let cols: Vec<(usize, usize)> = (0..=m).flat_map(|i| (0..=m).map(move |j| (i, j))).collect();
    let nrows = 2 * m * n + 1;
    let mut rows = vec![vec![GaussRat::zero(); cols.len()]; nrows];
    for (c, &(i, j)) in cols.iter().enumerate() {
        let prod = &qp[i] * &pp[j];
        let shift = (m - j) * n;
        for (k, v) in prod.coeffs().iter().enumerate() {
            rows[k + shift][c] = v.clone();
        }
    }
    let mut kernel = nullspace(rows, cols.len());
    if kernel.len() != 1 {
        return None;
    }
    let v = kernel.pop()?;
    Some(BiPoly::from_terms(
        cols.iter().zip(v).map(|(&(i, j), c)| ((i as u32, j as u32), c)),
    ))
}

/// Implicit equation of `C_q = {(q(t), q̄(1/t))}`, normalized and squarefree.
pub fn implicitize_cq(q: &ExactPoly) -> Result<BivariateCurve, CurveError> {
    let n = q.degree();
    if n < 1 {
        return Err(CurveError::Constant("q"));
    }
    let p = q.conj().reversed();
    let nodes: Vec<GaussRat> = (0..=n as i64).map(GaussRat::from).collect();
    let grid: Vec<Vec<GaussRat>> = nodes
        .iter()
        .map(|a| nodes.iter().map(|b| resultant_at(q, &p, a, b)).collect())
        .collect();
    if grid.iter().flatten().all(Zero::is_zero) {
        return Err(CurveError::Degenerate(q.to_string()));
    }
    let qp: Vec<ExactPoly> = (0..=n as u32).map(|i| q.pow(i)).collect();
    let pp: Vec<ExactPoly> = (0..=n as u32).map(|j| p.pow(j)).collect();
    for m in (1..n).filter(|m| n.is_multiple_of(*m)) {
        let Some(g) = curve_of_bidegree(&qp, &pp, n, m) else {
            continue;
        };
        let e = (n / m) as u32;
        let gv: Vec<Vec<GaussRat>> = nodes
            .iter()
            .map(|a| nodes.iter().map(|b| g.eval(a, b).pow(e)).collect())
            .collect();
        let Some((k, l)) = (0..=n)
            .flat_map(|k| (0..=n).map(move |l| (k, l)))
            .find(|&(k, l)| !gv[k][l].is_zero())
        else {
            return Err(CurveError::Inconsistent(q.to_string()));
        };
        let c = &grid[k][l] / &gv[k][l];
        let matches = (0..=n).all(|k| (0..=n).all(|l| grid[k][l] == &c * &gv[k][l]));
        if !matches {
            return Err(CurveError::Inconsistent(q.to_string()));
        }
        return Ok(BivariateCurve {
            poly: g.normalized(),
            multiplicity: e,
            parameter_degree: n,
        });
    }
    let by_y: Vec<ExactPoly> = grid.iter().map(|row| interpolate(row)).collect();
    let mut terms = Vec::new();
    for j in 0..=n {
        let column: Vec<GaussRat> = by_y.iter().map(|py| py.coeff(j)).collect();
        for (i, c) in interpolate(&column).coeffs().iter().enumerate() {
            terms.push(((i as u32, j as u32), c.clone()));
        }
    }
    Ok(BivariateCurve {
        poly: BiPoly::from_terms(terms).normalized(),
        multiplicity: 1,
        parameter_degree: n,
    })
}

const SAMPLE_PARAMETERS: [(i64, i64); 5] = [(2, 1), (-3, 1), (1, 2), (3, 5), (5, 7)];

/// True iff `g(x(t), ybar(1/t))` vanishes as a Laurent polynomial in `t`.
fn substitution_vanishes(g: &BiPoly, x: &ExactPoly, ybar: &ExactPoly) -> bool {
    let big_n = ybar.degree();
    let dy = g.degree_y() as usize;
    let rev = ybar.reversed();
    let xp: Vec<ExactPoly> = (0..=g.degree_x()).map(|i| x.pow(i)).collect();
    let rp: Vec<ExactPoly> = (0..=dy as u32).map(|j| rev.pow(j)).collect();
    let mut total = ExactPoly::default();
    for (&(i, j), c) in g.terms() {
        let shift = ExactPoly::monomial(c.clone(), (dy - j as usize) * big_n);
        total = &total + &(&(&xp[i as usize] * &rp[j as usize]) * &shift);
    }
    total.is_zero()
}

/// Invariance of `C_q` under `(r, r̄)`, given the already implicitized `C_q`.
/// A point of `C_{r∘q}` off `C_q` decides `false` exactly; otherwise the two
/// normalized curve equations are compared.
pub fn is_invariant_with(
    curve_q: &BivariateCurve,
    q: &ExactPoly,
    r: &ExactPoly,
) -> Result<bool, CurveError> {
    if r.degree() < 1 {
        return Err(CurveError::Constant("r"));
    }
    let qbar = q.conj();
    let rbar = r.conj();
    for (num, den) in SAMPLE_PARAMETERS {
        let t = GaussRat::rational(num, den);
        let x = r.eval(&q.eval(&t));
        let y = rbar.eval(&qbar.eval(&t.inv()));
        if !curve_q.contains(&x, &y) {
            return Ok(false);
        }
    }
    let rq = r.compose(q);
    if !substitution_vanishes(&curve_q.poly, &rq, &rbar.compose(&qbar)) {
        return Ok(false);
    }
    Ok(implicitize_cq(&rq)?.poly == curve_q.poly)
}

/// Whether `C_q` is invariant under `(r, r̄)`, i.e. `C_q = C_{r∘q}`.
pub fn is_invariant(q: &ExactPoly, r: &ExactPoly) -> Result<bool, CurveError> {
    if r.degree() < 1 {
        return Err(CurveError::Constant("r"));
    }
    is_invariant_with(&implicitize_cq(q)?, q, r)
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub invariant: bool,
    pub curve_q: String,
    pub curve_rq: String,
    pub exceptional: String,
}

pub fn invariance_report(q: &ExactPoly, r: &ExactPoly) -> Result<InvarianceReport, CurveError> {
    if r.degree() < 1 {
        return Err(CurveError::Constant("r"));
    }
    let curve_q = implicitize_cq(q)?;
    let curve_rq = implicitize_cq(&r.compose(q))?;
    let exceptional = if r.degree() >= 2 {
        is_exceptional(r)?.to_string()
    } else {
        "n/a (linear r)".to_string()
    };
    Ok(InvarianceReport {
        invariant: curve_q.poly == curve_rq.poly,
        curve_q: curve_q.to_string(),
        curve_rq: curve_rq.to_string(),
        exceptional,
    })
}

/// Chebyshev polynomial `C_D` with `C_D(z + 1/z) = z^D + z^{-D}`.
pub fn chebyshev(d: u32) -> ExactPoly {
    let mut prev = ExactPoly::from_ints(&[2]);
    let mut cur = ExactPoly::z();
    if d == 0 {
        return prev;
    }
    for _ in 1..d {
        let next = &(&ExactPoly::z() * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    assert!(satisfies_chebyshev_identity(&cur, d));
    cur
}

/// `t^D c(t + 1/t) = t^{2D} + 1` as exact polynomials.
fn satisfies_chebyshev_identity(c: &ExactPoly, d: u32) -> bool {
    if c.degree() != d as usize {
        return false;
    }
    let t2p1 = ExactPoly::from_ints(&[1, 0, 1]);
    let lhs = c.coeffs().iter().enumerate().fold(ExactPoly::default(), |acc, (k, ck)| {
        let term = &t2p1.pow(k as u32) * &ExactPoly::monomial(ck.clone(), d as usize - k);
        &acc + &term
    });
    let mut rhs = ExactPoly::monomial(GaussRat::one(), 2 * d as usize);
    rhs = &rhs + &ExactPoly::constant(GaussRat::one());
    lhs == rhs
}

/// Exceptional type of a polynomial of degree `D >= 2`.
///
/// `PowerLike`: `f(z) = coefficient (z - shift)^D + shift`.
/// `ChebyshevLike`: `f = L ∘ (sign C_D) ∘ L^{-1}` with `L(z) = a z + shift`,
/// `a^2 = scale_squared`. For even `D` the two signs are conjugate to each
/// other and `sign` is reported as `+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Exceptional {
    PowerLike {
        shift: GaussRat,
        coefficient: GaussRat,
    },
    ChebyshevLike {
        sign: i8,
        scale_squared: GaussRat,
        shift: GaussRat,
    },
    None,
}

impl Exceptional {
    pub fn is_exceptional(&self) -> bool {
        !matches!(self, Exceptional::None)
    }
}

impl fmt::Display for Exceptional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exceptional::PowerLike { shift, coefficient } => {
                write!(f, "power-like(beta={shift}, c={coefficient})")
            }
            Exceptional::ChebyshevLike {
                sign,
                scale_squared,
                shift,
            } => write!(
                f,
                "chebyshev-like(sign={}, a^2={scale_squared}, beta={shift})",
                if *sign > 0 { "+1" } else { "-1" }
            ),
            Exceptional::None => write!(f, "none"),
        }
    }
}

/// Decides linear conjugacy to `z^D` or `±C_D` exactly over `Q(i)`. Centering at
/// the critical barycenter `β` removes translation; a centered `±a C_D(z/a)`
/// is then pinned down by `a^2`, which is rational in the coefficients.
pub fn is_exceptional(f: &ExactPoly) -> Result<Exceptional, CurveError> {
    let d = f.degree();
    if d < 2 {
        return Err(CurveError::DegreeTooSmall(d));
    }
    let lead = f.leading();
    let beta = -(&f.coeff(d - 1) / &(&lead * &GaussRat::from(d as i64)));
    let shift_in = ExactPoly::new(vec![-beta.clone(), GaussRat::one()]);
    let power = &ExactPoly::monomial(lead.clone(), d).compose(&shift_in)
        + &ExactPoly::constant(beta.clone());
    if &power == f {
        return Ok(Exceptional::PowerLike {
            shift: beta,
            coefficient: lead,
        });
    }
    let shift_out = ExactPoly::new(vec![beta.clone(), GaussRat::one()]);
    let h = &f.compose(&shift_out) - &ExactPoly::constant(beta.clone());
    let w = -(&h.coeff(d - 2) / &(&lead * &GaussRat::from(d as i64)));
    if w.is_zero() {
        return Ok(Exceptional::None);
    }
    let sign = if d % 2 == 1 {
        let s = &lead * &w.pow((d as u32 - 1) / 2);
        if s == GaussRat::one() {
            1
        } else if s == -GaussRat::one() {
            -1
        } else {
            return Ok(Exceptional::None);
        }
    } else {
        if &lead.pow(2) * &w.pow(d as u32 - 1) != GaussRat::one() {
            return Ok(Exceptional::None);
        }
        1
    };
    let cheb = chebyshev(d as u32);
    let matches = (0..d).all(|k| {
        if (d - k) % 2 == 1 {
            h.coeff(k).is_zero()
        } else {
            h.coeff(k) == &(&lead * &cheb.coeff(k)) * &w.pow(((d - k) / 2) as u32)
        }
    });
    Ok(if matches {
        Exceptional::ChebyshevLike {
            sign,
            scale_squared: w,
            shift: beta,
        }
    } else {
        Exceptional::None
    })
}

pub const SCAN_R_DEGREES: std::ops::RangeInclusive<usize> = 2..=4;
pub const SCAN_Q_DEGREES: std::ops::RangeInclusive<usize> = 1..=3;

fn scan_r_coeffs() -> Vec<GaussRat> {
    [-1, 0, 1].into_iter().map(GaussRat::from).collect()
}

fn scan_q_coeffs() -> Vec<GaussRat> {
    vec![GaussRat::from(-1), GaussRat::zero(), GaussRat::one(), GaussRat::i()]
}

/// All polynomials with coefficients from `alphabet`, nonzero leading term, of
/// the given degrees.
pub fn enumerate_polys(
    alphabet: &[GaussRat],
    degrees: std::ops::RangeInclusive<usize>,
) -> Vec<ExactPoly> {
    let mut out = Vec::new();
    for d in degrees {
        let mut idx = vec![0usize; d + 1];
        loop {
            if !alphabet[idx[d]].is_zero() {
                out.push(ExactPoly::new(idx.iter().map(|&k| alphabet[k].clone()).collect()));
            }
            let mut pos = 0;
            while pos <= d {
                idx[pos] += 1;
                if idx[pos] < alphabet.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos > d {
                break;
            }
        }
    }
    out
}

fn is_unit_monomial(q: &ExactPoly) -> bool {
    let lead = q.leading();
    q.coeffs()[..q.degree()].iter().all(Zero::is_zero) && lead.norm_sqr().is_one()
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanViolation {
    pub q: String,
    pub r: String,
    pub invariant: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ScanReport {
    pub r_count: usize,
    pub q_count: usize,
    pub pairs_checked: usize,
    pub non_exceptional_r: usize,
    pub power_maps: usize,
    pub skipped_exceptional: usize,
    pub invariant_pairs: usize,
    pub violations: Vec<ScanViolation>,
    pub errors: Vec<String>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.errors.is_empty()
    }
}

/// Consistency scan over `r` of degree 2..=4 with coefficients in `{-1, 0, 1}`
/// and `q` of degree 1..=3 with coefficients in `{-1, 0, 1, i}`. Non-exceptional
/// `r` must leave no `C_q` invariant; for `r = ±z^D` exactly the unit monomials
/// `q = a z^k`, `|a| = 1`, must be invariant. Other exceptional `r` are counted
/// and skipped.
pub fn consistency_scan() -> ScanReport {
    scan(
        &enumerate_polys(&scan_r_coeffs(), SCAN_R_DEGREES),
        &enumerate_polys(&scan_q_coeffs(), SCAN_Q_DEGREES),
    )
}

pub fn scan(rs: &[ExactPoly], qs: &[ExactPoly]) -> ScanReport {
    let mut report = ScanReport {
        r_count: rs.len(),
        q_count: qs.len(),
        ..ScanReport::default()
    };
    let curves: Vec<Result<BivariateCurve, CurveError>> = qs.par_iter().map(implicitize_cq).collect();
    for (q, c) in qs.iter().zip(&curves) {
        if let Err(e) = c {
            report.errors.push(format!("q = {q}: {e}"));
        }
    }
    #[derive(Default)]
    struct Partial {
        pairs: usize,
        non_exceptional: usize,
        power: usize,
        skipped: usize,
        invariant: usize,
        violations: Vec<ScanViolation>,
        errors: Vec<String>,
    }
    let parts: Vec<Partial> = rs
        .par_iter()
        .map(|r| {
            let mut part = Partial::default();
            let kind = match is_exceptional(r) {
                Ok(k) => k,
                Err(e) => {
                    part.errors.push(format!("r = {r}: {e}"));
                    return part;
                }
            };
            let predicted: Option<fn(&ExactPoly) -> bool> = match &kind {
                Exceptional::None => {
                    part.non_exceptional += 1;
                    Some(|_| false)
                }
                Exceptional::PowerLike { shift, coefficient }
                    if shift.is_zero() && coefficient.norm_sqr().is_one() =>
                {
                    part.power += 1;
                    Some(is_unit_monomial)
                }
                _ => {
                    part.skipped += 1;
                    None
                }
            };
            let Some(predicted) = predicted else {
                return part;
            };
            for (q, c) in qs.iter().zip(&curves) {
                let Ok(curve) = c else { continue };
                part.pairs += 1;
                match is_invariant_with(curve, q, r) {
                    Ok(inv) => {
                        part.invariant += inv as usize;
                        if inv != predicted(q) {
                            part.violations.push(ScanViolation {
                                q: q.to_string(),
                                r: r.to_string(),
                                invariant: inv,
                            });
                        }
                    }
                    Err(e) => part.errors.push(format!("q = {q}, r = {r}: {e}")),
                }
            }
            part
        })
        .collect();
    for p in parts {
        report.pairs_checked += p.pairs;
        report.non_exceptional_r += p.non_exceptional;
        report.power_maps += p.power;
        report.skipped_exceptional += p.skipped;
        report.invariant_pairs += p.invariant;
        report.violations.extend(p.violations);
        report.errors.extend(p.errors);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> ExactPoly {
        ExactPoly::parse_coeffs(s).unwrap()
    }

    #[test]
    fn conjugation() {
        assert_eq!(conjugate_poly(&poly("i, 0, 1")).to_string(), "z^2 - i");
        assert_eq!(conjugate_poly(&poly("0, 0, 0, 1+i")).to_string(), "(1-i)*z^3");
        let real = poly("3, -1, 2");
        assert_eq!(conjugate_poly(&real), real);
    }

    #[test]
    fn implicitization_examples() {
        let c = implicitize_cq(&ExactPoly::z()).unwrap();
        assert_eq!(c.to_string(), "X*Y - 1");
        assert_eq!(c.multiplicity, 1);
        let c = implicitize_cq(&poly("0, 0, 1")).unwrap();
        assert_eq!(c.to_string(), "X*Y - 1");
        assert_eq!(c.multiplicity, 2);
        let c = implicitize_cq(&poly("2, 1")).unwrap();
        assert_eq!(c.to_string(), "X*Y - 2*X - 2*Y + 3");
        assert_eq!(implicitize_cq(&poly("5")), Err(CurveError::Constant("q")));
    }

    #[test]
    fn generic_curve_vanishes_on_parametrization() {
        let q = poly("1, i, 0, 2");
        let c = implicitize_cq(&q).unwrap();
        assert_eq!(c.multiplicity, 1);
        assert_eq!((c.poly.degree_x(), c.poly.degree_y()), (3, 3));
        let qbar = q.conj();
        for (n, d) in [(1, 1), (2, 1), (-1, 3), (7, 5)] {
            let t = GaussRat::rational(n, d);
            assert!(c.contains(&q.eval(&t), &qbar.eval(&t.inv())));
        }
    }

    #[test]
    fn invariance_examples() {
        let z = ExactPoly::z();
        assert!(is_invariant(&z, &poly("0, 0, 1")).unwrap());
        assert!(!is_invariant(&z, &poly("1, 0, 1")).unwrap());
        assert!(!is_invariant(&poly("2, 1"), &poly("0, 0, 1")).unwrap());
        let rep = invariance_report(&z, &poly("1, 0, 1")).unwrap();
        assert!(!rep.invariant);
        assert_eq!(rep.curve_rq, "X*Y - X - Y");
        assert_eq!(rep.exceptional, "none");
    }

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev(1).to_string(), "z");
        assert_eq!(chebyshev(2), ExactPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(chebyshev(3), ExactPoly::from_ints(&[0, -3, 0, 1]));
        for d in 1..=12 {
            assert!(satisfies_chebyshev_identity(&chebyshev(d), d));
        }
    }

    #[test]
    fn exceptional_examples() {
        assert!(matches!(
            is_exceptional(&poly("-2, 0, 1")).unwrap(),
            Exceptional::ChebyshevLike { sign: 1, .. }
        ));
        assert_eq!(
            is_exceptional(&poly("0, 0, 3")).unwrap(),
            Exceptional::PowerLike {
                shift: GaussRat::zero(),
                coefficient: GaussRat::from(3)
            }
        );
        assert_eq!(is_exceptional(&poly("1, 0, 1")).unwrap(), Exceptional::None);
        assert_eq!(is_exceptional(&poly("1, 1")), Err(CurveError::DegreeTooSmall(1)));
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_polys(&scan_r_coeffs(), SCAN_R_DEGREES).len(), 18 + 54 + 162);
        assert_eq!(enumerate_polys(&scan_q_coeffs(), SCAN_Q_DEGREES).len(), 12 + 48 + 192);
    }
}
