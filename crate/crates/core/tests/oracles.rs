//! Library results against independent brute-force constructions.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use rcat::lattice_paths::{catalan, enumerate_paths, DyckPath, Slope, Step};
use rcat::parking::{enumerate_park, ParkingFunction};
use rcat::rational_nc::{enumerate_nc, is_member, rank_assignment};
use rcat::set_partitions::{enumerate_noncrossing, SetPartition};
use rcat::symmetry::{count_symmetric_catalan, count_symmetric_narayana, orbit_profile, SymmetricContext};

/// Every placement of `a` north steps among `a+b`, kept when no lattice point
/// falls strictly below the diagonal.
fn paths_by_subsets(s: Slope) -> BTreeSet<Vec<Step>> {
    let (a, b) = (s.a() as usize, s.b() as usize);
    let n = a + b;
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << n) {
        if mask.count_ones() as usize != a {
            continue;
        }
        let (mut x, mut y) = (0i64, 0i64);
        let mut ok = true;
        let mut steps = Vec::with_capacity(n);
        for k in 0..n {
            if mask >> k & 1 == 1 {
                y += 1;
                steps.push(Step::North);
            } else {
                x += 1;
                steps.push(Step::East);
            }
            ok &= b as i64 * y >= a as i64 * x;
        }
        if ok {
            out.insert(steps);
        }
    }
    out
}

#[test]
fn path_enumeration_matches_subsets() {
    for s in Slope::all_proper_up_to(10).into_iter().filter(|s| s.a() + s.b() <= 18) {
        let got: BTreeSet<Vec<Step>> = enumerate_paths(s).iter().map(DyckPath::steps).collect();
        assert_eq!(got, paths_by_subsets(s), "{s}");
        assert_eq!(BigUint::from(got.len()), catalan(s));
    }
}

#[test]
fn members_are_exactly_the_path_images() {
    for s in Slope::all_proper_up_to(9) {
        let images: BTreeSet<SetPartition> = enumerate_nc(s).unwrap().into_iter().collect();
        for p in enumerate_noncrossing(s.b() - 1) {
            assert_eq!(is_member(&p, s).unwrap(), images.contains(&p), "{s} {p}");
        }
    }
}

#[test]
fn parking_count_by_ordered_label_placement() {
    // sum over members of the multinomial a! / prod rank(B)!
    for s in Slope::all_proper_up_to(7) {
        let fact = |n: i64| (1..=n).product::<i64>();
        let expected: i64 = enumerate_nc(s)
            .unwrap()
            .iter()
            .map(|p| fact(s.a() as i64) / rank_assignment(p, s).unwrap().ranks.iter().map(|&r| fact(r)).product::<i64>())
            .sum();
        let all = enumerate_park(s).unwrap();
        assert_eq!(all.len() as i64, expected, "{s}");
        assert_eq!(all.len() as u64, (s.b() as u64).pow(s.a() - 1));
        let distinct: BTreeSet<&ParkingFunction> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
    }
}

#[test]
fn symmetric_counts_by_filtering() {
    for s in Slope::all_proper_up_to(11) {
        let all = enumerate_nc(s).unwrap();
        for ctx in SymmetricContext::all(s) {
            let fixed: Vec<&SetPartition> = all.iter().filter(|p| p.rotate_by(ctx.d as i64) == **p).collect();
            assert_eq!(BigUint::from(fixed.len()), count_symmetric_catalan(&ctx), "{s} d={}", ctx.d);
            let mut by: HashMap<(u32, bool), u64> = HashMap::new();
            for p in &fixed {
                let prof = orbit_profile(p, &ctx).unwrap();
                *by.entry((prof.orbits(), prof.central)).or_default() += 1;
            }
            for p in 0..=s.a() / ctx.q {
                for central in [true, false] {
                    let want = by.get(&(p, central)).copied().unwrap_or(0);
                    let got = count_symmetric_narayana(&ctx, p, central).unwrap();
                    assert_eq!(got, BigUint::from(want), "{s} d={} p={p} central={central}", ctx.d);
                }
            }
        }
    }
}

#[test]
fn parking_character_is_a_class_function() {
    use rcat::parking::{all_permutations, character, character_table, predicted_character, rotation_order};
    assert!(character_table(Slope::new(5, 6).unwrap()).unwrap().iter().all(|r| r.ok));
    for (a, b) in [(3, 5), (4, 5), (3, 7)] {
        let s = Slope::new(a, b).unwrap();
        let mut seen: HashMap<(Vec<u32>, u32), u64> = HashMap::new();
        for w in all_permutations(a) {
            for d in 0..b - 1 {
                let chi = character(s, &w, d).unwrap();
                assert_eq!(chi, predicted_character(s, &w, d).unwrap(), "({a},{b}) {w} d={d}");
                let key = (w.cycle_type(), rotation_order(s, d));
                assert_eq!(*seen.entry(key).or_insert(chi), chi, "({a},{b}) {w} d={d}");
            }
        }
    }
}
