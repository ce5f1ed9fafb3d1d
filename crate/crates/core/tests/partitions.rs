mod common;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use proptest::prelude::*;

use common::brute_pp;
use fplpp::partitions::formula::{macmahon_binomial, macmahon_hyperfactorial, macmahon_product};
use fplpp::partitions::{
    enumerate_pp, macdonald_q, macmahon, pp_flip_neighbors, pp_to_tiling, tiling_to_pp, Honeycomb, Lozenge,
    PlanePartition,
};
use fplpp::Error;

#[test]
fn enumeration_matches_brute_force() {
    for a in 0..=3 {
        for b in 0..=3 {
            for c in 0..=3 {
                let got: Vec<Vec<Vec<usize>>> = enumerate_pp(a, b, c, 64).unwrap().map(|p| p.rows).collect();
                let mut want = brute_pp(a, b, c);
                want.sort();
                let mut sorted = got.clone();
                sorted.sort();
                assert_eq!(sorted, want, "({a},{b},{c})");
                assert_eq!(BigUint::from(got.len()), macmahon(a, b, c));
            }
        }
    }
}

#[test]
fn closed_forms_agree() {
    for a in 0..=8 {
        for b in 0..=8 {
            for c in 0..=8 {
                let p = macmahon_product(a, b, c);
                assert_eq!(p, macmahon_binomial(a, b, c));
                assert_eq!(p, macmahon_hyperfactorial(a, b, c));
                assert_eq!(macmahon_product(b, c, a), p);
            }
        }
    }
    let cubes: Vec<String> = (0..=5).map(|k| macmahon(k, k, k).to_string()).collect();
    assert_eq!(cubes, ["1", "2", "20", "980", "232848", "267227532"]);
}

#[test]
fn q_polynomial_counts_boxes() {
    for (a, b, c) in [(1, 1, 1), (2, 2, 2), (2, 3, 1), (3, 3, 2), (1, 4, 2)] {
        let mut hist: BTreeMap<usize, u32> = BTreeMap::new();
        for rows in brute_pp(a, b, c) {
            *hist.entry(rows.iter().flatten().sum()).or_default() += 1;
        }
        let q = macdonald_q(a, b, c);
        assert_eq!(q.degree(), a * b * c);
        for (k, coef) in q.coefficients().iter().enumerate() {
            assert_eq!(*coef, BigUint::from(hist.get(&k).copied().unwrap_or(0)), "({a},{b},{c}) q^{k}");
        }
    }
    assert_eq!(macdonald_q(3, 0, 5).to_string(), "1");
}

#[test]
fn tilings_of_every_small_box() {
    for (a, b, c) in [(1, 1, 1), (2, 2, 2), (1, 2, 3), (3, 2, 2)] {
        let h = Honeycomb::new(a, b, c);
        assert_eq!(h.vertices.len(), 2 * (a * b + b * c + c * a));
        for pp in enumerate_pp(a, b, c, 64).unwrap() {
            let d = pp_to_tiling(&pp, &h).unwrap();
            assert_eq!(d.len(), a * b + b * c + c * a);
            let z = d.dimers.iter().filter(|&&e| h.lozenge(e) == Lozenge::Z).count();
            assert_eq!(z, a * b);
            assert_eq!(tiling_to_pp(&d, &h).unwrap(), pp);
        }
    }
}

#[test]
fn mismatched_box_is_an_error() {
    let h = Honeycomb::new(2, 2, 2);
    let pp = PlanePartition::empty(1, 2, 2);
    assert!(matches!(pp_to_tiling(&pp, &h), Err(Error::IncompatibleBox { .. })));
    assert!(PlanePartition::new(2, 2, 2, vec![vec![1, 2], vec![0, 0]]).is_err());
    assert!(PlanePartition::new(1, 1, 1, vec![vec![3]]).is_err());
    assert!(matches!(enumerate_pp(5, 5, 5, 64), Err(Error::BoundExceeded { .. })));
}

fn arb_pp() -> impl Strategy<Value = PlanePartition> {
    (1usize..4, 1usize..4, 1usize..4).prop_flat_map(|(a, b, c)| {
        proptest::collection::vec(0..=c, a * b).prop_map(move |mut cells| {
            // sort each row and column downward to get a valid partition
            for i in 0..a {
                for j in 0..b {
                    let mut top = c;
                    if i > 0 {
                        top = top.min(cells[(i - 1) * b + j]);
                    }
                    if j > 0 {
                        top = top.min(cells[i * b + j - 1]);
                    }
                    cells[i * b + j] = cells[i * b + j].min(top);
                }
            }
            let rows = cells.chunks(b).map(|r| r.to_vec()).collect();
            PlanePartition::new(a, b, c, rows).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn tiling_round_trip(pp in arb_pp()) {
        let (a, b, c) = pp.dims();
        let h = Honeycomb::new(a, b, c);
        prop_assert_eq!(tiling_to_pp(&pp_to_tiling(&pp, &h).unwrap(), &h).unwrap(), pp);
    }

    #[test]
    fn complement_is_an_involution(pp in arb_pp()) {
        let (a, b, c) = pp.dims();
        let comp = pp.complement();
        prop_assert_eq!(comp.boxes(), a * b * c - pp.boxes());
        prop_assert_eq!(comp.complement(), pp);
    }

    #[test]
    fn axis_permutations_keep_boxes(pp in arb_pp()) {
        for perm in [[0, 1, 2], [1, 0, 2], [2, 0, 1], [1, 2, 0], [0, 2, 1], [2, 1, 0]] {
            let q = pp.permute_axes(perm);
            prop_assert_eq!(q.boxes(), pp.boxes());
            let inv = perm.iter().enumerate().fold([0; 3], |mut acc, (k, &p)| { acc[p] = k; acc });
            prop_assert_eq!(q.permute_axes(inv), pp.clone());
        }
    }

    #[test]
    fn flips_change_one_box(pp in arb_pp()) {
        for q in pp_flip_neighbors(&pp) {
            prop_assert_eq!(q.boxes().abs_diff(pp.boxes()), 1);
            prop_assert!(pp_flip_neighbors(&q).contains(&pp));
        }
    }

    #[test]
    fn json_round_trip(pp in arb_pp()) {
        prop_assert_eq!(PlanePartition::from_json_str(&pp.to_json_string()).unwrap(), pp);
    }
}
