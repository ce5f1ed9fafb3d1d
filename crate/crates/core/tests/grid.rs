mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::{brute_fpl, loop_count, pairing, three_bundle_centers, to_config, ASM};
use fplpp::grid::{
    enumerate_all_fpl, enumerate_fpl, internal_loop_count, is_type_abc, link_pattern, partition_by_pattern, FplGrid,
    LinkPattern,
};
use fplpp::Error;

#[test]
fn brute_force_counts_are_asm_numbers() {
    for n in 1..=6 {
        for parity in 0..2 {
            assert_eq!(brute_fpl(n, parity).len(), ASM[n - 1], "n = {n}");
        }
    }
}

#[test]
fn enumeration_matches_brute_force() {
    for n in 1..=5 {
        for parity in 0..2u8 {
            let got: BTreeSet<_> = enumerate_fpl(n, parity, 6).unwrap().iter().map(to_config).collect();
            let want: BTreeSet<_> = brute_fpl(n, parity as usize).into_iter().collect();
            assert_eq!(got, want, "n = {n}, parity {parity}");
        }
    }
    assert_eq!(enumerate_all_fpl(6).unwrap().len(), ASM[5]);
}

#[test]
fn patterns_and_loops_match_brute_force() {
    for n in 1..=5 {
        for parity in 0..2u8 {
            for g in enumerate_fpl(n, parity, 6).unwrap() {
                let c = to_config(&g);
                let pat = link_pattern(&g).unwrap();
                let pairs = pairing(n, &c);
                for i in 0..pat.len() {
                    assert_eq!(pairs[&pat.position(i)], pat.position(pat.partner(i)));
                }
                assert!(pat.is_noncrossing());
                assert_eq!(internal_loop_count(&g).unwrap(), loop_count(n, &c));
                let centers = is_type_abc(&pat).map(|t| {
                    let mut c = t.bundles.map(|b| b.center);
                    c.sort();
                    c
                });
                assert_eq!(centers, three_bundle_centers(n, &pairs));
            }
        }
    }
}

#[test]
fn bound_is_enforced() {
    assert!(matches!(enumerate_fpl(9, 0, 6), Err(Error::BoundExceeded { value: 9, bound: 6, .. })));
}

#[test]
fn json_is_canonical() {
    for g in enumerate_fpl(3, 1, 6).unwrap() {
        let s = g.to_json_string();
        let back = FplGrid::from_json_str(&s).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_json_string(), s);
    }
    assert!(matches!(FplGrid::from_json_str("{\"n\":2,\"occupied\":[[\"Q\",0,0]]}"), Err(Error::Parse(_))));
}

#[test]
fn pattern_counts_are_rotation_invariant() {
    for n in 1..=4 {
        for parity in 0..2u8 {
            let counts = partition_by_pattern(&enumerate_fpl(n, parity, 6).unwrap()).unwrap();
            for (p, k) in &counts {
                assert_eq!(counts.get(&p.rotated(1)), Some(k));
                assert_eq!(counts.get(&p.rotated(-1)), Some(k));
            }
        }
    }
}

fn patterns(n: usize) -> Vec<LinkPattern> {
    let counts = partition_by_pattern(&enumerate_fpl(n, 0, 6).unwrap()).unwrap();
    counts.into_keys().collect()
}

proptest! {
    #[test]
    fn rotation_composes(i in 0usize..42, j in -10isize..10, k in -10isize..10) {
        let ps = patterns(5);
        let p = &ps[i % ps.len()];
        prop_assert_eq!(p.rotated(j).rotated(k), p.rotated(j + k));
        prop_assert_eq!(p.rotated(10), p.clone());
        prop_assert!(p.rotated(j).is_noncrossing());
    }
}
