//! Rotation subsets of the circle under `tau_d`.
//!
//! A finite set `X = {theta_0 < ... < theta_{n-1}}` is a rotation set when
//! `tau_d(theta_i) = theta_{(i + m) mod n}` for a fixed shift `m`. Writing
//! `m/n = p/q` in lowest terms, `p/q` is the rotation number and `k = n/q` the
//! number of cycles. The deployment sequence counts the angles below each
//! fixed point `i/(d-1)` of `tau_d`; together with the rotation number it
//! determines the set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::angles::{orbit_info, tau, Angle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RotationError {
    #[error("empty angle set")]
    Empty,
    #[error("degree must be at least 2, got {0}")]
    Degree(u32),
    #[error("set is not invariant under tau_{d}: {detail}")]
    NotInvariant { d: u32, detail: String },
    #[error("set is invariant but tau_{d} is not a rotation on it")]
    NotARotation { d: u32 },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unrealizable: {0}")]
    Unrealizable(String),
    #[error("instance too large: {d}^{q} exceeds the enumeration guard")]
    TooLarge { d: u32, q: u32 },
}

/// Rotation number `p/q` in lowest terms, `0 <= p < q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotationNumber {
    pub p: u64,
    pub q: u64,
}

impl RotationNumber {
    pub fn new(p: u64, q: u64) -> Result<Self, RotationError> {
        if q == 0 || p >= q || p.gcd(&q) != 1 {
            return Err(RotationError::Malformed(format!(
                "rotation number {p}/{q} must be reduced with 0 <= p < q"
            )));
        }
        Ok(RotationNumber { p, q })
    }
}

impl fmt::Display for RotationNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for RotationNumber {
    type Err = RotationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RotationError::Malformed(format!("cannot parse rotation number {s:?}"));
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let q: u64 = q.trim().parse().map_err(|_| bad())?;
        RotationNumber::new(p, q)
    }
}

impl Serialize for RotationNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RotationNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A degree-`d` rotation set with its combinatorial data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSet {
    pub d: u32,
    /// Strictly increasing.
    pub angles: Vec<Angle>,
    #[serde(rename = "rotation_number")]
    pub rot_num: RotationNumber,
    /// Number of cycles of `tau_d` on the set.
    pub k: usize,
    /// `d - 1` entries, non-decreasing, last entry `k * q`.
    pub deployment: Vec<usize>,
}

impl RotationSet {
    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// The unreduced index shift `m` with `m/n = p/q`, `n = |angles|`.
    pub fn shift(&self) -> usize {
        self.k * self.rot_num.p as usize
    }
}

/// `s_i = #{theta_j < i/(d-1)}` for `i = 1..d-1`. An angle sitting exactly on
/// `i/(d-1)` is not counted for that `i`.
pub fn deployment_sequence(d: u32, angles: &[Angle]) -> Vec<usize> {
    (1..d as u64)
        .map(|i| angles.iter().filter(|a| a.lt_frac(i, d as u64 - 1)).count())
        .collect()
}

/// Checks invariance and the index-shift condition and fills in the
/// rotation data.
pub fn recognize(d: u32, angles: &[Angle]) -> Result<RotationSet, RotationError> {
    if d < 2 {
        return Err(RotationError::Degree(d));
    }
    if angles.is_empty() {
        return Err(RotationError::Empty);
    }
    let set: BTreeSet<Angle> = angles.iter().cloned().collect();
    let sorted: Vec<Angle> = set.iter().cloned().collect();
    let n = sorted.len();
    let images: Vec<Angle> = sorted.iter().map(|a| tau(d, a)).collect();
    if let Some(out) = images.iter().find(|a| !set.contains(a)) {
        return Err(RotationError::NotInvariant {
            d,
            detail: format!("image {out} is not in the set"),
        });
    }
    let image_set: BTreeSet<&Angle> = images.iter().collect();
    if image_set.len() != n {
        return Err(RotationError::NotInvariant {
            d,
            detail: "tau is not injective on the set".to_string(),
        });
    }
    let m = sorted
        .binary_search(&images[0])
        .expect("image checked to lie in the set");
    for (i, img) in images.iter().enumerate() {
        if *img != sorted[(i + m) % n] {
            return Err(RotationError::NotARotation { d });
        }
    }
    let g = m.gcd(&n);
    let (p, q, k) = if m == 0 { (0, 1, n) } else { (m / g, n / g, g) };
    if k > d as usize - 1 {
        // Goldberg: at most d - 1 cycles. Only reachable for stacks of fixed points.
        return Err(RotationError::NotARotation { d });
    }
    let deployment = deployment_sequence(d, &sorted);
    Ok(RotationSet {
        d,
        angles: sorted,
        rot_num: RotationNumber {
            p: p as u64,
            q: q as u64,
        },
        k,
        deployment,
    })
}

/// Builds the unique rotation set with the given rotation number and
/// deployment sequence.
///
/// Each angle is written down through its base-`d` itinerary: the leading
/// digit of `theta_j` is the number of fixed points `i/(d-1)` at or below it,
/// plus one when the rotation wraps index `j` past `n`.
pub fn construct(
    d: u32,
    rot: RotationNumber,
    deployment: &[usize],
) -> Result<RotationSet, RotationError> {
    if d < 2 {
        return Err(RotationError::Degree(d));
    }
    let rot = RotationNumber::new(rot.p, rot.q)?;
    if deployment.len() != d as usize - 1 {
        return Err(RotationError::Malformed(format!(
            "deployment needs {} entries, got {}",
            d - 1,
            deployment.len()
        )));
    }
    if deployment.windows(2).any(|w| w[0] > w[1]) {
        return Err(RotationError::Malformed(
            "deployment must be non-decreasing".to_string(),
        ));
    }
    let q = rot.q as usize;
    let n = *deployment.last().expect("d >= 2");
    if n == 0 || !n.is_multiple_of(q) {
        return Err(RotationError::Malformed(format!(
            "last deployment entry {n} is not a positive multiple of q = {q}"
        )));
    }
    let k = n / q;
    if k > d as usize - 1 {
        return Err(RotationError::Malformed(format!(
            "k = {k} cycles exceeds d - 1 = {}",
            d - 1
        )));
    }
    let classes: BTreeSet<usize> = deployment.iter().map(|s| s % k).collect();
    if classes.len() != k {
        return Err(RotationError::Unrealizable(format!(
            "deployment {deployment:?} misses a residue class modulo k = {k}"
        )));
    }

    let m = k * rot.p as usize;
    let digit = |j: usize| -> u32 {
        let below = deployment.iter().filter(|&&s| s <= j).count() as u32;
        let wrap = u32::from(m > 0 && j >= n - m);
        below + wrap
    };
    let digits: Vec<u32> = (0..n).map(digit).collect();
    let angles: Vec<Angle> = (0..n)
        .map(|j| {
            let itinerary: Vec<u32> = (0..q).map(|t| digits[(j + t * m) % n]).collect();
            Angle::from_digits(d, &[], &itinerary)
        })
        .collect();

    if angles.windows(2).any(|w| w[0] >= w[1]) {
        return Err(RotationError::Unrealizable(format!(
            "itineraries for {rot} with deployment {deployment:?} are not cyclically ordered"
        )));
    }
    let set = recognize(d, &angles)?;
    if set.rot_num != rot || set.deployment != deployment {
        return Err(RotationError::Unrealizable(format!(
            "constructed set has data {} / {:?}",
            set.rot_num, set.deployment
        )));
    }
    Ok(set)
}

/// Every rotation set whose rotation number has denominator exactly `q`,
/// found by scanning the `tau_d`-cycles among angles `j/(d^q - 1)`.
///
/// A union of cycles can only be a rotation set if each cycle is one on its
/// own with the same rotation number, so single cycles are screened first and
/// then combined in groups of at most `d - 1`.
pub fn brute_force_enumerate(d: u32, q: u32) -> Result<Vec<RotationSet>, RotationError> {
    if d < 2 {
        return Err(RotationError::Degree(d));
    }
    if q == 0 {
        return Err(RotationError::Malformed("q must be positive".to_string()));
    }
    let size = (d as u64)
        .checked_pow(q)
        .filter(|&s| s <= 1_000_000)
        .ok_or(RotationError::TooLarge { d, q })?;
    let den = (size - 1) as i64;

    let mut cycles: Vec<Vec<Angle>> = Vec::new();
    let mut visited = vec![false; den as usize];
    for j in 0..den {
        if visited[j as usize] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = j;
        while !visited[x as usize] {
            visited[x as usize] = true;
            cyc.push(Angle::frac(x, den));
            x = (x * d as i64) % den;
        }
        if cyc.len() == q as usize && x == j {
            cycles.push(cyc);
        }
    }

    let mut by_rotation: BTreeMap<RotationNumber, Vec<Vec<Angle>>> = BTreeMap::new();
    for cyc in cycles {
        if let Ok(set) = recognize(d, &cyc) {
            if set.rot_num.q == q as u64 {
                by_rotation.entry(set.rot_num).or_default().push(cyc);
            }
        }
    }

    let mut out = Vec::new();
    for group in by_rotation.values() {
        let mut chosen: Vec<usize> = Vec::new();
        combine(d, group, 0, &mut chosen, &mut out);
    }
    out.sort_by(|a, b| (a.rot_num, &a.angles).cmp(&(b.rot_num, &b.angles)));
    Ok(out)
}

fn combine(
    d: u32,
    group: &[Vec<Angle>],
    start: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<RotationSet>,
) {
    if !chosen.is_empty() {
        let angles: Vec<Angle> = chosen.iter().flat_map(|&i| group[i].clone()).collect();
        match recognize(d, &angles) {
            Ok(set) => out.push(set),
            // A union that fails cannot be rescued by adding more cycles.
            Err(_) => return,
        }
    }
    if chosen.len() == d as usize - 1 {
        return;
    }
    for i in start..group.len() {
        chosen.push(i);
        combine(d, group, i + 1, chosen, out);
        chosen.pop();
    }
}

/// The `d - 1` rotation sets with rotation number `1/n` whose deployment
/// entries are all `0` or `n`. The set with deployment `{n, ..., n}`, namely
/// `{d^j/(d^n - 1)}`, comes first.
pub fn unit_rotation_family(d: u32, n: u32) -> Result<Vec<RotationSet>, RotationError> {
    if d < 2 {
        return Err(RotationError::Degree(d));
    }
    if n < 2 {
        return Err(RotationError::Malformed(format!("n = {n} must be at least 2")));
    }
    let rot = RotationNumber::new(1, n as u64)?;
    (0..d as usize - 1)
        .map(|zeros| {
            let deployment: Vec<usize> = (0..d as usize - 1)
                .map(|i| if i < zeros { 0 } else { n as usize })
                .collect();
            construct(d, rot, &deployment)
        })
        .collect()
}

/// Number of `tau_d` cycles in a set (each angle assumed periodic).
pub fn cycle_count(d: u32, angles: &[Angle]) -> usize {
    let mut seen: BTreeSet<Angle> = BTreeSet::new();
    let mut count = 0;
    for a in angles {
        if seen.contains(a) {
            continue;
        }
        count += 1;
        let period = orbit_info(d, a).period;
        let mut x = a.clone();
        for _ in 0..period {
            seen.insert(x.clone());
            x = tau(d, &x);
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn angles(list: &[(i64, i64)]) -> Vec<Angle> {
        list.iter().map(|&(p, q)| Angle::frac(p, q)).collect()
    }

    fn rn(p: u64, q: u64) -> RotationNumber {
        RotationNumber::new(p, q).unwrap()
    }

    #[test]
    fn recognize_period_two_pair() {
        let set = recognize(2, &angles(&[(1, 3), (2, 3)])).unwrap();
        assert_eq!(set.rot_num, rn(1, 2));
        assert_eq!(set.k, 1);
        assert_eq!(set.deployment, vec![2]);
    }

    #[test]
    fn recognize_rejects_non_invariant() {
        let err = recognize(2, &angles(&[(1, 3), (1, 2)])).unwrap_err();
        assert!(matches!(err, RotationError::NotInvariant { .. }));
        assert_eq!(recognize(2, &[]), Err(RotationError::Empty));
    }

    #[test]
    fn recognize_rejects_invariant_non_rotation() {
        // {0, 1/3, 2/3} is invariant under doubling but 0 is fixed while the
        // pair swaps.
        let err = recognize(2, &angles(&[(0, 1), (1, 3), (2, 3)])).unwrap_err();
        assert_eq!(err, RotationError::NotARotation { d: 2 });
    }

    #[test]
    fn recognize_unit_fraction_family() {
        for d in 2u32..=4 {
            for n in 2u32..=4 {
                let den = (d as i64).pow(n) - 1;
                let set: Vec<Angle> = (0..n)
                    .map(|j| Angle::frac((d as i64).pow(j), den))
                    .collect();
                let r = recognize(d, &set).unwrap();
                assert_eq!(r.rot_num, rn(1, n as u64));
                assert_eq!(r.deployment, vec![n as usize; d as usize - 1]);
            }
        }
    }

    #[test]
    fn deployment_examples() {
        assert_eq!(deployment_sequence(2, &angles(&[(1, 3), (2, 3)])), vec![2]);
        // 1/8 -> 3/8 -> 9/8 = 1/8 under tripling.
        assert_eq!(tau(3, &Angle::frac(3, 8)), Angle::frac(1, 8));
        assert_eq!(deployment_sequence(3, &angles(&[(1, 8), (3, 8)])), vec![2, 2]);
        assert_eq!(deployment_sequence(3, &angles(&[(5, 8), (7, 8)])), vec![0, 2]);
        // An angle on a partition point is not counted below it.
        assert_eq!(deployment_sequence(3, &angles(&[(1, 2)])), vec![0, 1]);
    }

    #[test]
    fn construct_examples() {
        let s = construct(2, rn(1, 2), &[2]).unwrap();
        assert_eq!(s.angles, angles(&[(1, 3), (2, 3)]));
        let s = construct(3, rn(1, 2), &[0, 2]).unwrap();
        assert_eq!(s.angles, angles(&[(5, 8), (7, 8)]));
        let s = construct(3, rn(1, 2), &[2, 2]).unwrap();
        assert_eq!(s.angles, angles(&[(1, 8), (3, 8)]));
        for d in 2u32..=4 {
            for n in 2u32..=3 {
                let den = (d as i64).pow(n) - 1;
                let s = construct(d, rn(1, n as u64), &vec![n as usize; d as usize - 1]).unwrap();
                let want: Vec<Angle> = (0..n).map(|j| Angle::frac((d as i64).pow(j), den)).collect();
                assert_eq!(s.angles, want);
            }
        }
    }

    #[test]
    fn construct_rejects_bad_input() {
        assert!(matches!(
            construct(3, rn(0, 1), &[2, 2]),
            Err(RotationError::Unrealizable(_))
        ));
        assert!(matches!(
            construct(3, rn(1, 2), &[2, 1]),
            Err(RotationError::Malformed(_))
        ));
        assert!(matches!(
            construct(3, rn(1, 2), &[3]),
            Err(RotationError::Malformed(_))
        ));
        assert!(matches!(
            construct(2, rn(1, 2), &[4]),
            Err(RotationError::Malformed(_))
        ));
        assert!(RotationNumber::new(2, 4).is_err());
    }

    #[test]
    fn two_fixed_points_for_cubing() {
        let s = construct(3, rn(0, 1), &[1, 2]).unwrap();
        assert_eq!(s.angles, angles(&[(0, 1), (1, 2)]));
        assert_eq!(s.k, 2);
    }

    #[test]
    fn brute_force_examples() {
        let sets = brute_force_enumerate(2, 2).unwrap();
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].angles, angles(&[(1, 3), (2, 3)]));

        let sets = brute_force_enumerate(2, 1).unwrap();
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].angles, vec![Angle::zero()]);
        assert_eq!(sets[0].rot_num, rn(0, 1));

        let sets = brute_force_enumerate(3, 2).unwrap();
        let lists: Vec<Vec<Angle>> = sets.iter().map(|s| s.angles.clone()).collect();
        assert!(lists.contains(&angles(&[(1, 8), (3, 8)])));
        assert!(lists.contains(&angles(&[(5, 8), (7, 8)])));

        assert_eq!(
            brute_force_enumerate(10, 7),
            Err(RotationError::TooLarge { d: 10, q: 7 })
        );
    }

    #[test]
    fn unit_rotation_family_examples() {
        let fam = unit_rotation_family(2, 2).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam[0].angles, angles(&[(1, 3), (2, 3)]));
        let fam = unit_rotation_family(3, 2).unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(fam[0].angles, angles(&[(1, 8), (3, 8)]));
        for d in 2u32..=5 {
            for n in 2u32..=4 {
                let fam = unit_rotation_family(d, n).unwrap();
                assert_eq!(fam.len(), d as usize - 1);
                for s in &fam {
                    assert_eq!(s.k, 1);
                    assert!(s.deployment.iter().all(|&x| x == 0 || x == n as usize));
                }
                let distinct: BTreeSet<&Vec<Angle>> = fam.iter().map(|s| &s.angles).collect();
                assert_eq!(distinct.len(), fam.len());
            }
        }
    }

    #[test]
    fn json_report_shape() {
        let s = construct(2, rn(1, 2), &[2]).unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "d": 2,
                "angles": ["1/3", "2/3"],
                "rotation_number": "1/2",
                "k": 1,
                "deployment": [2]
            })
        );
    }
}
