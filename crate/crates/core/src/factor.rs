//! Integer factorization: a sieve for trial division, Miller-Rabin, and
//! Pollard rho with Brent's cycle detection under an explicit budget.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub const TRIAL_LIMIT: u32 = 1_000_000;
pub const DEFAULT_RHO_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("factorization budget of {budget} rho iterations exceeded on {n}")]
    BudgetExceeded { n: String, budget: u64 },
}

pub type Factorization = BTreeMap<BigUint, u32>;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Deterministic below 2^64; a strong probable-prime test on twelve bases above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn rho_u64(n: u64, seed: u64, budget: &mut u64) -> Option<u64> {
    let c = seed;
    let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
    let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
    let m = 128u64;
    let (mut g, mut x, mut ys) = (1u64, 0u64, 0u64);
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let steps = m.min(r - k);
            for _ in 0..steps {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            *budget = budget.checked_sub(steps)?;
            g = q.gcd(&n);
            k += steps;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    Some(g)
}

fn rho_big(n: &BigUint, seed: u64, budget: &mut u64) -> Option<BigUint> {
    let c = BigUint::from(seed);
    let f = |x: &BigUint| (x * x + &c) % n;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let m = 128u64;
    let mut g = BigUint::one();
    let mut x = BigUint::zero();
    let mut ys = BigUint::zero();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let steps = m.min(r - k);
            for _ in 0..steps {
                y = f(&y);
                q = (q * diff(&x, &y)) % n;
            }
            *budget = budget.checked_sub(steps)?;
            g = q.gcd(n);
            k += steps;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    Some(g)
}

/// A nontrivial factor of the composite `n`.
fn split(n: &BigUint, budget: &mut u64, total: u64) -> Result<BigUint, FactorError> {
    let exceeded = || FactorError::BudgetExceeded {
        n: n.to_string(),
        budget: total,
    };
    for seed in 1u64.. {
        let g = match n.to_u64() {
            Some(small) => rho_u64(small, seed, budget).map(BigUint::from),
            None => rho_big(n, seed, budget),
        }
        .ok_or_else(exceeded)?;
        if !g.is_one() && &g != n {
            return Ok(g);
        }
    }
    unreachable!()
}

fn factor_cofactor(
    n: BigUint,
    out: &mut Factorization,
    budget: &mut u64,
    total: u64,
) -> Result<(), FactorError> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return Ok(());
    }
    let g = split(&n, budget, total)?;
    let rest = &n / &g;
    factor_cofactor(g, out, budget, total)?;
    factor_cofactor(rest, out, budget, total)
}

/// Prime factorization of `n >= 1` with at most `budget` rho iterations.
pub fn factorize(n: &BigUint, budget: u64) -> Result<Factorization, FactorError> {
    let mut out = Factorization::new();
    let mut n = n.clone();
    assert!(!n.is_zero(), "cannot factor 0");
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > n {
            break;
        }
        let mut e = 0;
        while (&n % p).is_zero() {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.insert(pb, e);
        }
    }
    let mut left = budget;
    factor_cofactor(n, &mut out, &mut left, budget)?;
    Ok(out)
}

pub fn product(f: &Factorization) -> BigUint {
    f.iter()
        .fold(BigUint::one(), |acc, (p, &e)| acc * p.pow(e))
}

/// Distinct prime divisors of a machine-size integer.
pub fn prime_divisors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
