//! Primitive prime divisors of `a^m - 1` and the replay of the final
//! arithmetic contradiction: if a polynomial of degree `D` had `M_d` as its
//! filled Julia set, the parameter rays at `D^k/(d^m - 1)` and
//! `d D^k/(d^m - 1)` would land together for every `k`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factor::{self, FactorError, DEFAULT_RHO_BUDGET};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithmeticError {
    #[error("base must be at least 2, got {0}")]
    Base(u64),
    #[error("exponent must be at least 1")]
    Exponent,
    #[error("cap {0} is below the last classical exception m = 6")]
    CapTooSmall(u64),
    #[error("empty k range {0}..={1}")]
    EmptyRange(u64, u64),
    #[error(transparent)]
    Factor(#[from] FactorError),
}

mod big_strings {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|x| x.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveDivisorReport {
    pub a: u64,
    pub m: u64,
    #[serde(with = "big_strings")]
    pub primitive_primes: Vec<BigUint>,
    /// `(prime, exponent)` pairs of `a^m - 1`, primes ascending and written in base 10.
    pub factorization: Vec<(String, u32)>,
}

fn pow(a: u64, e: u64) -> BigUint {
    BigUint::from(a).pow(e as u32)
}

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|e| m.is_multiple_of(*e)).collect()
}

fn mobius(n: u64) -> i8 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `Phi_e(a) = prod_{t | e} (a^t - 1)^{mu(e/t)}`, exactly.
pub fn cyclotomic_value(a: u64, e: u64) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for t in divisors(e) {
        match mobius(e / t) {
            1 => num *= pow(a, t) - 1u32,
            -1 => den *= pow(a, t) - 1u32,
            _ => {}
        }
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q
}

/// Whether the multiplicative order of `a` modulo `p` is exactly `m`.
pub fn has_order(a: u64, p: &BigUint, m: u64) -> bool {
    let a = BigUint::from(a) % p;
    if a.is_zero() || !a.modpow(&BigUint::from(m), p).is_one() {
        return false;
    }
    factor::prime_divisors_u64(m)
        .into_iter()
        .all(|q| !a.modpow(&BigUint::from(m / q), p).is_one())
}

/// Full factorization of `a^m - 1` and its primitive prime divisors.
pub fn primitive_prime_divisors(a: u64, m: u64) -> Result<PrimitiveDivisorReport, ArithmeticError> {
    primitive_prime_divisors_with_budget(a, m, DEFAULT_RHO_BUDGET)
}

pub fn primitive_prime_divisors_with_budget(
    a: u64,
    m: u64,
    budget: u64,
) -> Result<PrimitiveDivisorReport, ArithmeticError> {
    if a < 2 {
        return Err(ArithmeticError::Base(a));
    }
    if m < 1 {
        return Err(ArithmeticError::Exponent);
    }
    let mut total: BTreeMap<BigUint, u32> = BTreeMap::new();
    for e in divisors(m) {
        let piece = cyclotomic_value(a, e);
        if piece.is_one() {
            continue;
        }
        for (p, k) in factor::factorize(&piece, budget)? {
            *total.entry(p).or_insert(0) += k;
        }
    }
    let primitive_primes = total
        .keys()
        .filter(|p| has_order(a, p, m))
        .cloned()
        .collect();
    Ok(PrimitiveDivisorReport {
        a,
        m,
        primitive_primes,
        factorization: total.into_iter().map(|(p, e)| (p.to_string(), e)).collect(),
    })
}

/// `Phi_m(a)` with every prime dividing `m * avoid` removed.
///
/// A prime dividing `Phi_m(a)` has order exactly `m` unless it divides `m`,
/// so the result exceeds 1 iff `a^m - 1` has a primitive prime not dividing
/// `avoid`. No factorization is needed.
fn primitive_part(a: u64, m: u64, avoid: u64) -> BigUint {
    let mut x = cyclotomic_value(a, m);
    let mut strip = factor::prime_divisors_u64(m);
    if avoid > 1 {
        strip.extend(factor::prime_divisors_u64(avoid));
    }
    for q in strip {
        while !x.is_zero() && (&x % q).is_zero() {
            x /= q;
        }
    }
    x
}

pub fn has_primitive_divisor(a: u64, m: u64) -> bool {
    primitive_part(a, m, 1) > BigUint::one()
}

pub fn has_primitive_divisor_coprime_to(a: u64, m: u64, avoid: u64) -> bool {
    primitive_part(a, m, avoid) > BigUint::one()
}

/// The largest `m <= cap` for which `a^m - 1` has no primitive prime divisor
/// (0 if there is none). Zsigmondy's list of exceptions ends at `m = 6`, so
/// any `cap >= 6` makes the scan complete.
pub fn bang_bound(a: u64, cap: u64) -> Result<u64, ArithmeticError> {
    if a < 2 {
        return Err(ArithmeticError::Base(a));
    }
    if cap < 6 {
        return Err(ArithmeticError::CapTooSmall(cap));
    }
    Ok((1..=cap)
        .filter(|&m| !has_primitive_divisor(a, m))
        .max()
        .unwrap_or(0))
}

/// The largest `m <= cap` for which no primitive prime of `a^m - 1` is coprime to `avoid`.
pub fn coprime_bang_bound(a: u64, avoid: u64, cap: u64) -> Result<u64, ArithmeticError> {
    if a < 2 {
        return Err(ArithmeticError::Base(a));
    }
    if cap < 6 {
        return Err(ArithmeticError::CapTooSmall(cap));
    }
    Ok((1..=cap)
        .filter(|&m| !has_primitive_divisor_coprime_to(a, m, avoid))
        .max()
        .unwrap_or(0))
}

/// The unique `m` with `d^m - 1 <= D^k (d^2 - 1) < d^{m+1} - 1`.
pub fn m_of_k(d: u64, big_d: u64, k: u64) -> u64 {
    assert!(d >= 2 && big_d >= 2, "d and D must be at least 2");
    let target = pow(big_d, k) * (d * d - 1);
    let mut m = 0u64;
    let mut next = BigUint::from(d) - 1u32;
    while next <= target {
        m += 1;
        next = pow(d, m + 1) - 1u32;
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueWitness {
    /// Smallest primitive prime of `d^m - 1` not dividing `D`.
    pub p: String,
    /// `D^k (1 - d^{rn+1}) mod p` for every `(n, r)` with `rn + 1 < m`; all nonzero.
    pub congruence_residues: Vec<(u64, u64, String)>,
    /// `D^k (d^2 - 1) mod p`; nonzero while `d^m - 1 = 0 mod p`.
    pub excluded_residue: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayRecord {
    pub k: u64,
    pub m: u64,
    /// `(n, r)` with `n | m`, `r < m/n` and `D^k (1 - d^{rn+1}) = 0 mod (d^m - 1)`.
    pub solutions: Vec<(u64, u64)>,
    /// The only solution is `n = 1`, `r = m - 1`: the landing point would be on `H_d`.
    pub forces_fixed_point: bool,
    /// `d^m - 1 <= D^k (d^2 - 1) <= d (d^m - 1)`.
    pub wake_inequality: bool,
    /// `D^k (d^2 - 1)` equals `d^m - 1` or `d (d^m - 1)`.
    pub hits_wake_endpoint: bool,
    pub witness: Option<ResidueWitness>,
    /// Set when no primitive prime of `d^m - 1` is coprime to `D`.
    pub no_coprime_witness: bool,
    pub contradiction: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub d: u64,
    #[serde(rename = "D")]
    pub big_d: u64,
    /// Largest `m <= 64` with no primitive prime divisor of `d^m - 1`.
    pub bang_bound: u64,
    /// Largest `m <= 64` with no primitive prime divisor of `d^m - 1` coprime to `D`.
    pub coprime_bound: u64,
    /// `max(coprime_bound, 2)`: for `m = 2` the angles are the main pair itself.
    pub threshold: u64,
    /// Least `k` with `m(k) > threshold`.
    pub least_k: u64,
    pub records: Vec<ReplayRecord>,
}

pub const REPLAY_CAP: u64 = 64;

fn replay_record(d: u64, big_d: u64, k: u64) -> ReplayRecord {
    let m = m_of_k(d, big_d, k);
    let modulus = pow(d, m) - 1u32;
    let dk = pow(big_d, k);
    let mut solutions = Vec::new();
    for n in divisors(m) {
        for r in 0..m / n {
            let j = r * n + 1;
            // D^k (1 - d^j) = 0  <=>  D^k (d^j - 1) = 0 (mod d^m - 1)
            if ((&dk * (pow(d, j) - 1u32)) % &modulus).is_zero() {
                solutions.push((n, r));
            }
        }
    }
    let forces_fixed_point = solutions == [(1, m - 1)];
    let scaled = &dk * (d * d - 1);
    let wake_inequality = modulus <= scaled && scaled <= &modulus * d;
    let hits_wake_endpoint = scaled == modulus || scaled == &modulus * d;

    let no_coprime_witness = !has_primitive_divisor_coprime_to(d, m, big_d);
    let mut note = None;
    let witness = if no_coprime_witness {
        None
    } else {
        match factor::factorize(&primitive_part(d, m, big_d), DEFAULT_RHO_BUDGET) {
            Ok(f) => {
                let p = f.keys().next().expect("primitive part exceeds 1").clone();
                let congruence_residues = divisors(m)
                    .into_iter()
                    .flat_map(|n| (0..m / n).map(move |r| (n, r)))
                    .filter(|&(n, r)| r * n + 1 < m)
                    .map(|(n, r)| {
                        let v = (&dk * (pow(d, r * n + 1) - 1u32)) % &p;
                        let v = if v.is_zero() { v } else { &p - v };
                        (n, r, v.to_string())
                    })
                    .collect();
                Some(ResidueWitness {
                    excluded_residue: (&scaled % &p).to_string(),
                    p: p.to_string(),
                    congruence_residues,
                })
            }
            Err(e) => {
                note = Some(e.to_string());
                None
            }
        }
    };
    let contradiction = forces_fixed_point && wake_inequality && !hits_wake_endpoint;
    if !contradiction && note.is_none() {
        note = Some(if !forces_fixed_point {
            "congruence admits a non-fixed landing configuration".to_string()
        } else if !wake_inequality {
            "wake inequality fails".to_string()
        } else {
            "angle sits on a wake endpoint".to_string()
        });
    }
    ReplayRecord {
        k,
        m,
        solutions,
        forces_fixed_point,
        wake_inequality,
        hits_wake_endpoint,
        witness,
        no_coprime_witness,
        contradiction,
        note,
    }
}

/// Replays the final contradiction for every `k` in `k_min..=k_max`.
///
/// Each record solves the landing congruence exactly, checks the wake
/// inequality and the two excluded endpoint values, and, when `d^m - 1` has
/// a primitive prime `p` coprime to `D`, records the residues mod `p` that
/// the argument uses.
pub fn replay_theorem(
    d: u64,
    big_d: u64,
    k_min: u64,
    k_max: u64,
) -> Result<ReplayReport, ArithmeticError> {
    if d < 2 {
        return Err(ArithmeticError::Base(d));
    }
    if big_d < 2 {
        return Err(ArithmeticError::Base(big_d));
    }
    if k_min > k_max {
        return Err(ArithmeticError::EmptyRange(k_min, k_max));
    }
    let bang = bang_bound(d, REPLAY_CAP)?;
    let coprime_bound = coprime_bang_bound(d, big_d, REPLAY_CAP)?;
    let threshold = coprime_bound.max(2);
    let least_k = (0..)
        .find(|&k| m_of_k(d, big_d, k) > threshold)
        .expect("m(k) is unbounded");
    let records = (k_min..=k_max)
        .into_par_iter()
        .map(|k| replay_record(d, big_d, k))
        .collect();
    Ok(ReplayReport {
        d,
        big_d,
        bang_bound: bang,
        coprime_bound,
        threshold,
        least_k,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn primes(a: u64, m: u64) -> Vec<u64> {
        primitive_prime_divisors(a, m)
            .unwrap()
            .primitive_primes
            .iter()
            .map(|p| p.to_string().parse().unwrap())
            .collect()
    }

    /// Primitive primes by brute force over machine integers.
    fn naive_primitive(a: u64, m: u64) -> Vec<u64> {
        let n = a.pow(m as u32) - 1;
        let mut out = Vec::new();
        let mut rest = n;
        let mut p = 2;
        while p * p <= rest {
            if rest.is_multiple_of(p) {
                out.push(p);
                while rest.is_multiple_of(p) {
                    rest /= p;
                }
            }
            p += 1;
        }
        if rest > 1 {
            out.push(rest);
        }
        out.retain(|&p| (1..m).all(|k| !(a.pow(k as u32) - 1).is_multiple_of(p)));
        out
    }

    #[test]
    fn spec_examples() {
        assert_eq!(primes(2, 5), vec![31]);
        assert!(primes(2, 6).is_empty());
        assert!(primes(3, 2).is_empty());
        let r = primitive_prime_divisors(2, 6).unwrap();
        assert_eq!(r.factorization, vec![("3".to_string(), 2), ("7".to_string(), 1)]);
    }

    #[test]
    fn agrees_with_naive_scan() {
        for a in 2..=6u64 {
            for m in 1..=12u64 {
                if a.pow(m as u32) > 1 << 40 {
                    continue;
                }
                assert_eq!(primes(a, m), naive_primitive(a, m), "a={a} m={m}");
                assert_eq!(has_primitive_divisor(a, m), !naive_primitive(a, m).is_empty());
            }
        }
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic_value(2, 1), BigUint::from(1u32));
        assert_eq!(cyclotomic_value(2, 6), BigUint::from(3u32));
        assert_eq!(cyclotomic_value(3, 4), BigUint::from(10u32));
        assert_eq!(cyclotomic_value(10, 12), BigUint::from(9901u32));
    }

    #[test]
    fn bang_bounds() {
        assert_eq!(bang_bound(2, 50).unwrap(), 6);
        assert_eq!(bang_bound(3, 50).unwrap(), 2);
        assert_eq!(bang_bound(4, 50).unwrap(), 0);
        assert_eq!(bang_bound(7, 50).unwrap(), 2);
        assert_eq!(bang_bound(2, 5), Err(ArithmeticError::CapTooSmall(5)));
    }

    #[test]
    fn m_of_k_examples() {
        assert_eq!(m_of_k(2, 3, 5), 9);
        assert_eq!(m_of_k(2, 2, 0), 2);
        assert_eq!(m_of_k(3, 2, 3), 3);
    }

    #[test]
    fn replay_example_two_three() {
        let r = replay_theorem(2, 3, 5, 5).unwrap();
        let rec = &r.records[0];
        assert_eq!(rec.m, 9);
        assert_eq!(rec.witness.as_ref().unwrap().p, "73");
        assert!(rec.contradiction);
        let w = rec.witness.as_ref().unwrap();
        assert!(w.congruence_residues.iter().all(|(_, _, v)| v != "0"));
        assert_ne!(w.excluded_residue, "0");
    }

    #[test]
    fn replay_equal_degrees() {
        let r = replay_theorem(2, 2, 2, 10).unwrap();
        assert!(r.records.iter().all(|rec| rec.contradiction));
        // 2^6 - 1 = 63 has no primitive prime; the exact congruence still decides.
        let k5 = r.records.iter().find(|rec| rec.k == 5).unwrap();
        assert_eq!(k5.m, 6);
        assert!(k5.no_coprime_witness);
        assert!(k5.contradiction);
    }

    #[test]
    fn main_pair_is_not_a_contradiction() {
        // k = 0 gives the angle 1/(d^2 - 1) itself, which does land on H_d.
        let r = replay_theorem(4, 2, 0, 0).unwrap();
        assert_eq!(r.records[0].m, 2);
        assert!(r.records[0].hits_wake_endpoint);
        assert!(!r.records[0].contradiction);
    }

    #[test]
    fn replay_grid() {
        for d in 2..=6u64 {
            for big_d in 2..=6u64 {
                let bound = bang_bound(d, 64).unwrap().max(2);
                let r = replay_theorem(d, big_d, 0, 20).unwrap();
                for rec in &r.records {
                    if rec.m > bound {
                        assert!(rec.contradiction, "d={d} D={big_d} k={}", rec.k);
                    }
                    if rec.k >= r.least_k {
                        assert!(rec.witness.is_some(), "d={d} D={big_d} k={}", rec.k);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn order_law(a in 2u64..7, m in 1u64..30) {
            let r = primitive_prime_divisors(a, m).unwrap();
            for p in &r.primitive_primes {
                prop_assert!(has_order(a, p, m));
            }
            let n = pow(a, m) - 1u32;
            let product = r.factorization.iter().fold(BigUint::one(), |acc, (p, e)| {
                acc * p.parse::<BigUint>().unwrap().pow(*e)
            });
            prop_assert_eq!(product, n);
            for (p, _) in &r.factorization {
                let p: BigUint = p.parse().unwrap();
                prop_assert_eq!(has_order(a, &p, m), r.primitive_primes.contains(&p));
            }
        }

        #[test]
        fn m_of_k_inequalities(d in 2u64..7, big_d in 2u64..7, k in 1u64..40) {
            let m = m_of_k(d, big_d, k);
            let target = pow(big_d, k) * (d * d - 1);
            prop_assert!(pow(d, m) - 1u32 <= target);
            prop_assert!(target < pow(d, m + 1) - 1u32);
            let prev = m_of_k(d, big_d, k - 1);
            prop_assert!(prev <= m);
            prop_assert!(pow(d, m) <= pow(d, prev) * d * big_d);
        }
    }
}
