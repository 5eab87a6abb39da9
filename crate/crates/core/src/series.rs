//! Truncated power series in one variable over exact rationals.
//!
//! A series is a coefficient vector `s[0] + s[1] u + ...`; every operation
//! takes the truncation length `len` and returns exactly `len` coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Series = Vec<BigRational>;

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn one(len: usize) -> Series {
    let mut s = vec![BigRational::zero(); len];
    if len > 0 {
        s[0] = BigRational::one();
    }
    s
}

pub fn truncate(mut s: Series, len: usize) -> Series {
    s.resize(len, BigRational::zero());
    s
}

pub fn mul(a: &[BigRational], b: &[BigRational], len: usize) -> Series {
    let mut out = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

pub fn pow_int(a: &[BigRational], e: u64, len: usize) -> Series {
    let mut result = one(len);
    let mut base = truncate(a.to_vec(), len);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &base, len);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base, len);
        }
    }
    result
}

/// `a^alpha` for a series with `a[0] = 1`, via `a h' = alpha a' h`.
pub fn pow_rational(a: &[BigRational], alpha: &BigRational, len: usize) -> Series {
    assert!(
        a.first().is_some_and(|c| c.is_one()),
        "rational powers need constant term 1"
    );
    let a = truncate(a.to_vec(), len);
    let mut h = vec![BigRational::zero(); len];
    if len == 0 {
        return h;
    }
    h[0] = BigRational::one();
    let alpha_plus_one = alpha + BigRational::one();
    for n in 1..len {
        let mut acc = BigRational::zero();
        for k in 1..=n {
            if a[k].is_zero() {
                continue;
            }
            let weight = &alpha_plus_one * BigInt::from(k) - BigRational::from(BigInt::from(n));
            acc += weight * &a[k] * &h[n - k];
        }
        h[n] = acc / BigInt::from(n);
    }
    h
}

/// `1/a` for a series with nonzero constant term.
pub fn reciprocal(a: &[BigRational], len: usize) -> Series {
    let a0 = a.first().expect("empty series");
    assert!(!a0.is_zero(), "reciprocal needs a nonzero constant term");
    let mut out = vec![BigRational::zero(); len];
    if len == 0 {
        return out;
    }
    let inv0 = a0.recip();
    out[0] = inv0.clone();
    for n in 1..len {
        let mut acc = BigRational::zero();
        for k in 1..=n.min(a.len() - 1) {
            if !a[k].is_zero() {
                acc += &a[k] * &out[n - k];
            }
        }
        out[n] = -acc * &inv0;
    }
    out
}

/// `a(b(u))` where `b[0] = 0`.
pub fn compose(a: &[BigRational], b: &[BigRational], len: usize) -> Series {
    assert!(
        b.first().is_none_or(|c| c.is_zero()),
        "inner series must vanish at 0"
    );
    let mut out = vec![BigRational::zero(); len];
    let mut power = one(len);
    for coeff in a.iter().take(len) {
        if !coeff.is_zero() {
            for (o, p) in out.iter_mut().zip(&power) {
                *o += coeff * p;
            }
        }
        power = mul(&power, b, len);
    }
    out
}
