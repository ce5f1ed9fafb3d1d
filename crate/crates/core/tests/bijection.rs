mod common;

use std::collections::BTreeSet;

use common::{loop_count, to_config};
use fplpp::bijection::{base_fpl, dimers_to_pp, fpl_to_dimers, pp_to_fpl, Bijection};
use fplpp::geometry::{all_triples, classify};
use fplpp::grid::{enumerate_fpl, is_type_abc, link_pattern, FplGrid};
use fplpp::partitions::{enumerate_pp, PlanePartition};
use fplpp::Error;

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn base_configuration_of_the_smallest_type() {
    let geo = classify(3, [0, 4, 8]).unwrap();
    let g = base_fpl(&geo).unwrap();
    assert_eq!(g, FplGrid::from_json_str(golden("base_111.json").trim()).unwrap());
    assert_eq!(g.ascii(), golden("base_111.txt"));
    let lat = g.lattice();
    let interior = g.occupied_edges().filter(|&e| !lat.is_external(e)).count();
    assert_eq!(interior, 6);
}

#[test]
fn both_smallest_configurations_give_both_matchings() {
    let bij = Bijection::from_centers(3, [0, 4, 8]).unwrap();
    let mut seen = BTreeSet::new();
    // centers on even positions leave the odd ones occupied
    for g in enumerate_fpl(3, 1, 6).unwrap() {
        let Some(t) = is_type_abc(&link_pattern(&g).unwrap()) else { continue };
        if t.bundles.map(|b| b.center) != [0, 4, 8] {
            continue;
        }
        let d = fpl_to_dimers(&g, &bij.region).unwrap();
        assert_eq!(d.len(), 3);
        seen.insert(d.dimers);
    }
    assert_eq!(seen.len(), 2);
    assert_eq!(bij.region.honeycomb.edges.len(), 6);
}

#[test]
fn extreme_partitions_are_loopless() {
    for n in 3..=6 {
        for t in all_triples(n) {
            let bij = Bijection::from_centers(n, t).unwrap();
            let (a, b, c) = bij.abc();
            for pp in [PlanePartition::empty(a, b, c), PlanePartition::full(a, b, c)] {
                let g = bij.pp_to_fpl(&pp).unwrap();
                assert_eq!(loop_count(n, &to_config(&g)), 0, "n = {n}, {t:?}");
                assert_eq!(link_pattern(&g).unwrap(), bij.geometry.bundles().link_pattern());
                assert_eq!(bij.fpl_to_pp(&g).unwrap(), pp);
            }
        }
    }
}

#[test]
fn round_trips_up_to_five() {
    for n in 3..=5 {
        for parity in 0..2u8 {
            for g in enumerate_fpl(n, parity, 6).unwrap() {
                let Some(t) = is_type_abc(&link_pattern(&g).unwrap()) else { continue };
                let bij = Bijection::from_centers(n, t.bundles.map(|b| b.center)).unwrap();
                let d = fpl_to_dimers(&g, &bij.region).unwrap();
                let (a, b, c) = bij.abc();
                assert_eq!(d.len(), a * b + b * c + c * a);
                let pp = dimers_to_pp(&d, &bij.region).unwrap();
                assert_eq!(pp_to_fpl(&pp, &bij.geometry).unwrap(), g);
            }
        }
        for t in all_triples(n) {
            let bij = Bijection::from_centers(n, t).unwrap();
            let (a, b, c) = bij.abc();
            for pp in enumerate_pp(a, b, c, 64).unwrap() {
                assert_eq!(bij.fpl_to_pp(&bij.pp_to_fpl(&pp).unwrap()).unwrap(), pp);
            }
        }
    }
}

#[test]
fn larger_box_round_trip() {
    let bij = Bijection::from_centers(9, [0, 12, 24]).unwrap();
    assert_eq!(bij.abc(), (3, 3, 3));
    let pp = PlanePartition::new(3, 3, 3, vec![vec![3, 2, 2], vec![2, 1, 0], vec![1, 0, 0]]).unwrap();
    let g = bij.pp_to_fpl(&pp).unwrap();
    assert_eq!(bij.fpl_to_pp(&g).unwrap(), pp);
}

#[test]
fn wrong_inputs_are_rejected() {
    let bij = Bijection::from_centers(4, [0, 4, 10]).unwrap();
    let other = enumerate_fpl(4, 0, 6)
        .unwrap()
        .into_iter()
        .find(|g| is_type_abc(&link_pattern(g).unwrap()).is_none())
        .unwrap();
    assert!(matches!(bij.fpl_to_pp(&other), Err(Error::NotAMatching(_))));
    let pp = PlanePartition::empty(2, 2, 2);
    assert!(matches!(bij.pp_to_fpl(&pp), Err(Error::IncompatibleBox { .. })));
}
