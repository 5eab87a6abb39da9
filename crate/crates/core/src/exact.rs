//! Exact Gaussian rationals `Q(i)`, univariate polynomials over them, and
//! bivariate polynomials in `X, Y`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("cannot parse {0:?} as a Gaussian rational")]
    Number(String),
    #[error("empty coefficient list")]
    Empty,
}

/// `re + im i` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn int(re: i64, im: i64) -> Self {
        GaussRat::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn rational(p: i64, q: i64) -> Self {
        GaussRat::new(BigRational::new(p.into(), q.into()), BigRational::zero())
    }

    pub fn i() -> Self {
        GaussRat::int(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero");
        GaussRat::new(&self.re / &n, -&self.im / &n)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GaussRat::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::new(BigRational::one(), BigRational::zero())
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::int(n, 0)
    }
}

impl From<BigRational> for GaussRat {
    fn from(r: BigRational) -> Self {
        GaussRat::new(r, BigRational::zero())
    }
}

impl Add<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat::from(&self.re * &o.re);
        }
        GaussRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Div<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn div(self, o: &GaussRat) -> GaussRat {
        self * &o.inv()
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for GaussRat {
            type Output = GaussRat;
            fn $f(self, o: GaussRat) -> GaussRat {
                (&self).$f(&o)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im = |r: &BigRational| -> String {
            if r.is_one() {
                "i".into()
            } else if (-r).is_one() {
                "-i".into()
            } else {
                format!("{}i", fmt_rat(r))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => write!(f, "{}", im(&self.im)),
            (false, false) => {
                let s = im(&self.im);
                if s.starts_with('-') {
                    write!(f, "{}{}", fmt_rat(&self.re), s)
                } else {
                    write!(f, "{}+{}", fmt_rat(&self.re), s)
                }
            }
        }
    }
}

fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Accepts `a`, `bi`, `a+bi`, `a-bi` with rational `a`, `b` (`p/q` allowed) and
/// the shorthands `i`, `-i`.
impl FromStr for GaussRat {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let err = || ParseError::Number(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let Some(body) = t.strip_suffix('i') else {
            return parse_rat(&t).map(GaussRat::from).ok_or_else(err);
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(k, ch)| (ch == '+' || ch == '-') && !body[..k].ends_with('/'))
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (parse_rat(&body[..k]).ok_or_else(err)?, &body[k..]),
            None => (BigRational::zero(), body),
        };
        let im = match im {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rat(other).ok_or_else(err)?,
        };
        Ok(GaussRat::new(re, im))
    }
}

impl Serialize for GaussRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Univariate polynomial with `coeffs[k]` on `z^k`; trailing zeros are trimmed,
/// so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactPoly {
    coeffs: Vec<GaussRat>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<GaussRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        ExactPoly::new(coeffs.iter().map(|&c| GaussRat::from(c)).collect())
    }

    pub fn monomial(c: GaussRat, k: usize) -> Self {
        let mut v = vec![GaussRat::zero(); k + 1];
        v[k] = c;
        ExactPoly::new(v)
    }

    pub fn z() -> Self {
        ExactPoly::monomial(GaussRat::one(), 1)
    }

    pub fn constant(c: GaussRat) -> Self {
        ExactPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussRat {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> GaussRat {
        self.coeffs.last().cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn conj(&self) -> Self {
        ExactPoly::new(self.coeffs.iter().map(GaussRat::conj).collect())
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        ExactPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &GaussRat) -> GaussRat {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussRat::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn derivative(&self) -> Self {
        ExactPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussRat::from(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(ExactPoly::constant(GaussRat::one()), |acc, _| &acc * self)
    }

    /// `self(inner(z))`.
    pub fn compose(&self, inner: &ExactPoly) -> Self {
        self.coeffs.iter().rev().fold(ExactPoly::default(), |acc, c| {
            &(&acc * inner) + &ExactPoly::constant(c.clone())
        })
    }

    /// `z^n self(1/z)` with `n = degree`.
    pub fn reversed(&self) -> Self {
        ExactPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Comma-separated coefficients, constant term first, e.g. `"1, 0, 1+i"` for `(1+i) z^2 + 1`.
    pub fn parse_coeffs(s: &str) -> Result<Self, ParseError> {
        let coeffs = s
            .split(',')
            .map(|c| c.trim())
            .filter(|c| !c.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<GaussRat>, _>>()?;
        if coeffs.is_empty() {
            return Err(ParseError::Empty);
        }
        Ok(ExactPoly::new(coeffs))
    }
}

impl Add<&ExactPoly> for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, o: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        ExactPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}

impl Sub<&ExactPoly> for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, o: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        ExactPoly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }
}

impl Mul<&ExactPoly> for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, o: &ExactPoly) -> ExactPoly {
        if self.is_zero() || o.is_zero() {
            return ExactPoly::default();
        }
        let mut out = vec![GaussRat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        ExactPoly::new(out)
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, first: bool, c: &GaussRat, mono: &str) -> fmt::Result {
    let s = c.to_string();
    let compound = !c.re.is_zero() && !c.im.is_zero();
    let (neg, body) = if !compound && s.starts_with('-') {
        (true, s[1..].to_string())
    } else {
        (false, s)
    };
    let body = if compound { format!("({body})") } else { body };
    let body = match (mono.is_empty(), body.as_str()) {
        (true, _) => body,
        (false, "1") => mono.to_string(),
        (false, _) => format!("{body}*{mono}"),
    };
    match (first, neg) {
        (true, false) => write!(f, "{body}"),
        (true, true) => write!(f, "-{body}"),
        (false, false) => write!(f, " + {body}"),
        (false, true) => write!(f, " - {body}"),
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{k}"),
            };
            fmt_term(f, first, c, &mono)?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for ExactPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Bivariate polynomial, `terms[(i, j)]` on `X^i Y^j`, zero terms omitted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), GaussRat>,
}

impl BiPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), GaussRat)>) -> Self {
        BiPoly {
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), GaussRat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &GaussRat, y: &GaussRat) -> GaussRat {
        let dx = self.degree_x();
        let dy = self.degree_y();
        let xp: Vec<GaussRat> = (0..=dx).map(|k| x.pow(k)).collect();
        let yp: Vec<GaussRat> = (0..=dy).map(|k| y.pow(k)).collect();
        self.terms.iter().fold(GaussRat::zero(), |acc, (&(i, j), c)| {
            &acc + &(&(c * &xp[i as usize]) * &yp[j as usize])
        })
    }

    /// Scales so that the coefficient of the lexicographically largest
    /// monomial (highest power of `X`, then of `Y`) is 1.
    pub fn normalized(&self) -> Self {
        let Some((_, lead)) = self.terms.iter().next_back() else {
            return self.clone();
        };
        let inv = lead.inv();
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, c * &inv)).collect(),
        }
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let power = |v: &str, k: u32| match k {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{k}"),
        };
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let mono = [power("X", i), power("Y", j)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join("*");
            fmt_term(f, n == 0, c, &mono)?;
        }
        Ok(())
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
