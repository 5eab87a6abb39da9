use multibrot_core::angles::tau;
use multibrot_core::rotation::{
    brute_force_enumerate, construct, cycle_count, recognize, unit_rotation_family,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn enumerated_sets_round_trip(d in 2u32..=4, q in 1u32..=6, pick in any::<prop::sample::Index>()) {
        let all = brute_force_enumerate(d, q).unwrap();
        prop_assume!(!all.is_empty());
        let s = pick.get(&all);
        let r = recognize(d, &s.angles).unwrap();
        prop_assert_eq!(&r, s);
        let back = construct(d, r.rot_num, &r.deployment).unwrap();
        prop_assert_eq!(&back, s);
        prop_assert_eq!(cycle_count(d, &s.angles), s.k);
        for a in &s.angles {
            prop_assert!(s.angles.contains(&tau(d, a)));
        }
    }

    #[test]
    fn constructed_sets_are_recognized(
        d in 2u32..=5,
        p in 1u64..7,
        q in 2u64..8,
        k in 1usize..=2,
        cuts in prop::collection::vec(any::<prop::sample::Index>(), 4),
    ) {
        prop_assume!(p < q && num_integer::gcd(p, q) == 1);
        let top = k * q as usize;
        let mut dep: Vec<usize> = cuts[..d as usize - 2].iter().map(|i| i.index(top + 1)).collect();
        dep.sort_unstable();
        dep.push(top);
        let rot = format!("{p}/{q}").parse().unwrap();
        let s = construct(d, rot, &dep);
        prop_assume!(s.is_ok());
        let s = s.unwrap();
        let r = recognize(d, &s.angles).unwrap();
        prop_assert_eq!(&r, &s);
        prop_assert_eq!(cycle_count(d, &s.angles), s.k);
        prop_assert_eq!(s.angles.len(), s.k * q as usize);
    }

    #[test]
    fn unit_family_deployments_are_extreme(d in 2u32..=5, n in 2u32..=6) {
        let fam = unit_rotation_family(d, n).unwrap();
        prop_assert_eq!(fam.len(), d as usize - 1);
        for s in &fam {
            prop_assert!(s.deployment.iter().all(|&e| e == 0 || e == n as usize));
            prop_assert_eq!(&recognize(d, &s.angles).unwrap(), s);
        }
    }
}
