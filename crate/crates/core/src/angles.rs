//! Exact rational angles on the circle `R/Z` and the multiplication-by-`d` map.
//!
//! Angles are measured in full turns and are always stored reduced, with
//! `0 <= numerator < denominator`. No floating point value is ever stored, so
//! equality and ordering are exact.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AngleError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse angle {0:?}: expected \"p/q\"")]
    Parse(String),
}

/// A rational angle `p/q` modulo 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Angle {
    num: BigUint,
    den: BigUint,
}

/// Preperiod and period of an angle under `tau_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitInfo {
    pub preperiod: usize,
    pub period: usize,
}

impl OrbitInfo {
    pub fn is_periodic(&self) -> bool {
        self.preperiod == 0
    }
}

impl Angle {
    /// Builds `p/q` reduced modulo 1. Negative numerators wrap around.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, AngleError> {
        let mut p = p.into();
        let mut q = q.into();
        if q.is_zero() {
            return Err(AngleError::ZeroDenominator);
        }
        if q.sign() == Sign::Minus {
            p = -p;
            q = -q;
        }
        let r = p.mod_floor(&q);
        let g = r.gcd(&q);
        let num = (r / &g).to_biguint().expect("non-negative after mod_floor");
        let den = (q / &g).to_biguint().expect("positive");
        Ok(Angle { num, den })
    }

    /// Same as [`Angle::new`] for small integers; panics on a zero denominator.
    pub fn frac(p: i64, q: i64) -> Self {
        Angle::new(p, q).expect("non-zero denominator")
    }

    pub fn zero() -> Self {
        Angle {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        // Ratio of big integers; scale down first so huge denominators do not overflow.
        let bits = self.den.bits();
        if bits <= 1000 {
            self.num.to_f64().unwrap_or(0.0) / self.den.to_f64().unwrap_or(f64::INFINITY)
        } else {
            let shift = bits - 120;
            let n = (&self.num >> shift).to_f64().unwrap_or(0.0);
            let d = (&self.den >> shift).to_f64().unwrap_or(f64::INFINITY);
            n / d
        }
    }

    /// `self + other` modulo 1.
    pub fn add(&self, other: &Angle) -> Angle {
        let num = &self.num * &other.den + &other.num * &self.den;
        let den = &self.den * &other.den;
        Angle::new(BigInt::from(num), BigInt::from(den)).expect("non-zero denominator")
    }

    /// `-self` modulo 1.
    pub fn neg(&self) -> Angle {
        Angle::new(-BigInt::from(self.num.clone()), BigInt::from(self.den.clone()))
            .expect("non-zero denominator")
    }

    /// Whether `self < p/q` as real numbers in `[0, 1)`.
    pub fn lt_frac(&self, p: u64, q: u64) -> bool {
        &self.num * BigUint::from(q) < BigUint::from(p) * &self.den
    }

    /// Builds the angle whose base-`d` expansion is `prefix` followed by
    /// `period` repeated forever. An empty `period` means a terminating expansion.
    pub fn from_digits(d: u32, prefix: &[u32], period: &[u32]) -> Angle {
        let base = BigUint::from(d);
        let digits_value = |ds: &[u32]| {
            ds.iter()
                .fold(BigUint::zero(), |acc, &x| acc * &base + BigUint::from(x))
        };
        let pre_scale = base.pow(prefix.len() as u32);
        let pre_val = digits_value(prefix);
        if period.is_empty() {
            return Angle::new(BigInt::from(pre_val), BigInt::from(pre_scale))
                .expect("non-zero denominator");
        }
        let cyc_den = base.pow(period.len() as u32) - BigUint::one();
        let cyc_val = digits_value(period);
        // prefix/d^a + cyc/(d^a (d^b - 1))
        let num = pre_val * &cyc_den + cyc_val;
        let den = pre_scale * cyc_den;
        Angle::new(BigInt::from(num), BigInt::from(den)).expect("non-zero denominator")
    }
}

/// The multiplication-by-`d` map `tau_d` on `R/Z`, computed exactly.
pub fn tau(d: u32, a: &Angle) -> Angle {
    assert!(d >= 2, "degree must be at least 2");
    let num = (&a.num * BigUint::from(d)) % &a.den;
    let g = num.gcd(&a.den);
    if g.is_one() {
        Angle {
            num,
            den: a.den.clone(),
        }
    } else {
        Angle {
            num: num / &g,
            den: &a.den / &g,
        }
    }
}

/// `tau_d` applied `n` times.
pub fn tau_iter(d: u32, a: &Angle, n: usize) -> Angle {
    let mut x = a.clone();
    for _ in 0..n {
        x = tau(d, &x);
    }
    x
}

/// Minimal preperiod and period of `a` under `tau_d`.
///
/// The orbit stays among angles whose denominator divides `a.denom()`, so the
/// walk always closes up.
pub fn orbit_info(d: u32, a: &Angle) -> OrbitInfo {
    let mut seen: HashMap<Angle, usize> = HashMap::new();
    let mut x = a.clone();
    let mut i = 0usize;
    loop {
        if let Some(&first) = seen.get(&x) {
            return OrbitInfo {
                preperiod: first,
                period: i - first,
            };
        }
        let next = tau(d, &x);
        seen.insert(x, i);
        x = next;
        i += 1;
    }
}

/// The forward orbit `a, tau(a), ...` up to and including one full period.
pub fn orbit(d: u32, a: &Angle) -> Vec<Angle> {
    let info = orbit_info(d, a);
    let mut out = Vec::with_capacity(info.preperiod + info.period);
    let mut x = a.clone();
    for _ in 0..info.preperiod + info.period {
        let next = tau(d, &x);
        out.push(x);
        x = next;
    }
    out
}

/// First `len` base-`d` digits, `digit_k = floor(d * tau_d^k(a))`.
///
/// Terminating expansions end in zeros rather than a tail of `d - 1`s.
pub fn base_d_digits(d: u32, a: &Angle, len: usize) -> Vec<u32> {
    let base = BigUint::from(d);
    let mut out = Vec::with_capacity(len);
    let mut x = a.clone();
    for _ in 0..len {
        let digit = (&x.num * &base) / &x.den;
        out.push(digit.to_u32().expect("digit below d"));
        x = tau(d, &x);
    }
    out
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Angle {
    type Err = AngleError;

    /// Lenient parse: unreduced and out-of-range fractions are accepted, as is
    /// a bare integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || AngleError::Parse(s.to_string());
        match t.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                Angle::new(p, q)
            }
            None => {
                let p: BigInt = t.parse().map_err(|_| bad())?;
                Angle::new(p, 1)
            }
        }
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn construction_reduces_mod_one() {
        assert_eq!(Angle::frac(1, 3).to_string(), "1/3");
        assert_eq!(Angle::frac(4, 3).to_string(), "1/3");
        assert_eq!(Angle::frac(0, 7).to_string(), "0/1");
        assert_eq!(Angle::frac(-1, 3).to_string(), "2/3");
        assert_eq!(Angle::frac(2, -6).to_string(), "2/3");
        assert_eq!(Angle::new(1, 0), Err(AngleError::ZeroDenominator));
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(2, &Angle::frac(1, 3)), Angle::frac(2, 3));
        assert_eq!(tau(2, &Angle::frac(2, 3)), Angle::frac(1, 3));
        assert_eq!(tau(3, &Angle::frac(1, 8)), Angle::frac(3, 8));
        assert_eq!(tau(2, &Angle::frac(1, 2)), Angle::zero());
    }

    #[test]
    fn orbit_info_examples() {
        assert_eq!(
            orbit_info(2, &Angle::frac(1, 3)),
            OrbitInfo { preperiod: 0, period: 2 }
        );
        assert_eq!(
            orbit_info(2, &Angle::frac(1, 2)),
            OrbitInfo { preperiod: 1, period: 1 }
        );
    }

    /// Independent oracle: walk the orbit with plain integers and look for the
    /// first repeat.
    fn brute_orbit(d: u64, p: u64, q: u64) -> (usize, usize) {
        let mut seen = Vec::new();
        let mut x = p % q;
        loop {
            if let Some(i) = seen.iter().position(|&y| y == x) {
                return (i, seen.len() - i);
            }
            seen.push(x);
            x = (x * d) % q;
        }
    }

    #[test]
    fn orbit_info_matches_integer_walk_on_unit_fractions() {
        for d in 2u32..=5 {
            for n in 2u32..=5 {
                let q = (d as u64).pow(n) - 1;
                let info = orbit_info(d, &Angle::frac(1, q as i64));
                assert_eq!((info.preperiod, info.period), brute_orbit(d as u64, 1, q));
                assert_eq!(info, OrbitInfo { preperiod: 0, period: n as usize });
            }
        }
    }

    #[test]
    fn digits_examples() {
        assert_eq!(base_d_digits(2, &Angle::frac(1, 3), 4), vec![0, 1, 0, 1]);
        assert_eq!(base_d_digits(3, &Angle::frac(1, 2), 3), vec![1, 1, 1]);
        assert_eq!(base_d_digits(2, &Angle::frac(5, 8), 3), vec![1, 0, 1]);
        assert_eq!(base_d_digits(2, &Angle::frac(5, 8), 5), vec![1, 0, 1, 0, 0]);
    }

    #[test]
    fn coprime_denominators_are_purely_periodic() {
        for d in 2u32..=4 {
            for q in 1u64..=1000 {
                if num_integer::gcd(q, d as u64) != 1 {
                    continue;
                }
                for p in [1u64, q / 2, q.saturating_sub(1)] {
                    let a = Angle::frac(p as i64, q as i64);
                    assert_eq!(orbit_info(d, &a).preperiod, 0, "{a} under tau_{d}");
                }
            }
        }
    }

    #[test]
    fn tau_is_a_bijection_on_coprime_denominators() {
        for d in 2u32..=5 {
            for q in [7i64, 9, 11, 13, 21, 31] {
                if num_integer::gcd(q, d as i64) != 1 {
                    continue;
                }
                let mut image: Vec<Angle> =
                    (0..q).map(|p| tau(d, &Angle::frac(p, q))).collect();
                image.sort();
                image.dedup();
                assert_eq!(image.len() as i64, q);
            }
        }
    }

    #[test]
    fn parse_is_lenient_and_display_round_trips() {
        let a: Angle = "6/4".parse().unwrap();
        assert_eq!(a, Angle::frac(1, 2));
        let b: Angle = " -1 / 3 ".parse().unwrap();
        assert_eq!(b, Angle::frac(2, 3));
        assert!("1/0".parse::<Angle>().is_err());
        assert!("x".parse::<Angle>().is_err());
        let json = serde_json::to_string(&Angle::frac(3, 8)).unwrap();
        assert_eq!(json, "\"3/8\"");
        let back: Angle = serde_json::from_str(&json).unwrap();
        assert_eq!(back, Angle::frac(3, 8));
    }

    proptest! {
        #[test]
        fn period_divides_n(d in 2u32..6, n in 1u32..8, p in 0i64..10_000) {
            let q = (d as i64).pow(n) - 1;
            let info = orbit_info(d, &Angle::frac(p, q));
            prop_assert_eq!(info.preperiod, 0);
            prop_assert_eq!(n as usize % info.period, 0);
        }

        #[test]
        fn digits_reconstruct_the_angle(d in 2u32..6, p in 0i64..5000, q in 1i64..5000) {
            let a = Angle::frac(p, q);
            let info = orbit_info(d, &a);
            let digits = base_d_digits(d, &a, info.preperiod + info.period);
            let (pre, per) = digits.split_at(info.preperiod);
            prop_assert_eq!(Angle::from_digits(d, pre, per), a);
        }
    }
}
