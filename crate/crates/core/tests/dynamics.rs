mod common;

use std::collections::{BTreeMap, HashSet};

use common::{brute_pp, loop_count, pairing, to_config};
use fplpp::bijection::Bijection;
use fplpp::dynamics::{flip_closure, fpl_flip_neighbors, hfpl_complement, nested_families, wieland_gyration};
use fplpp::geometry::{all_triples, classify};
use fplpp::grid::{enumerate_fpl, link_pattern, FplGrid};
use fplpp::partitions::{enumerate_pp, pp_flip_neighbors, pp_to_tiling, Honeycomb, PlanePartition};
use fplpp::Error;

#[test]
fn smallest_closures() {
    let one = flip_closure(&classify(3, [0, 4, 8]).unwrap(), 6).unwrap();
    assert_eq!(one.len(), 2);
    let bij = Bijection::from_centers(3, [0, 4, 8]).unwrap();
    assert_eq!(fpl_flip_neighbors(&bij.base_fpl().unwrap(), &bij.region).len(), 1);
    for t in all_triples(4) {
        let geo = classify(4, t).unwrap();
        let mut abc = [geo.a, geo.b, geo.c];
        abc.sort();
        assert_eq!(abc, [1, 1, 2]);
        assert_eq!(flip_closure(&geo, 6).unwrap().len(), 3);
    }
}

#[test]
fn flips_commute_with_the_bijection() {
    for n in 3..=6 {
        for t in all_triples(n) {
            let geo = classify(n, t).unwrap();
            let bij = Bijection::new(geo.clone()).unwrap();
            for g in flip_closure(&geo, 6).unwrap() {
                let pp = bij.fpl_to_pp(&g).unwrap();
                let mut images: Vec<PlanePartition> = fpl_flip_neighbors(&g, &bij.region)
                    .iter()
                    .map(|h| bij.fpl_to_pp(h).unwrap())
                    .collect();
                images.sort();
                assert_eq!(images, pp_flip_neighbors(&pp), "n = {n}, {t:?}");
            }
        }
    }
}

#[test]
fn flipping_twice_is_the_identity() {
    let bij = Bijection::from_centers(5, [0, 6, 12]).unwrap();
    let geo = bij.geometry.clone();
    for g in flip_closure(&geo, 6).unwrap() {
        for h in fpl_flip_neighbors(&g, &bij.region) {
            assert!(fpl_flip_neighbors(&h, &bij.region).contains(&g));
        }
    }
}

#[test]
fn closure_respects_the_bound() {
    let geo = classify(7, [0, 6, 16]).unwrap();
    assert!(matches!(flip_closure(&geo, 6), Err(Error::BoundExceeded { value: 7, .. })));
}

#[test]
fn gyration_rotates_patterns() {
    for n in 1..=4 {
        for parity in 0..2u8 {
            for g in enumerate_fpl(n, parity, 6).unwrap() {
                let before = link_pattern(&g).unwrap();
                let mut h = wieland_gyration(&g).unwrap();
                assert_eq!(link_pattern(&h).unwrap(), before.rotated(1));
                for _ in 1..2 * n {
                    h = wieland_gyration(&h).unwrap();
                }
                assert_eq!(link_pattern(&h).unwrap(), before);
            }
        }
    }
}

#[test]
fn gyration_is_a_bijection() {
    for n in 2..=5 {
        let all = enumerate_fpl(n, 0, 6).unwrap();
        let images: HashSet<FplGrid> = all.iter().map(|g| wieland_gyration(g).unwrap()).collect();
        assert_eq!(images.len(), all.len());
        for h in &images {
            let c = to_config(h);
            assert_eq!(pairing(n, &c).len(), 2 * n);
        }
    }
}

#[test]
fn gyration_keeps_three_bundle_types_loopless() {
    for n in 3..=5 {
        for t in all_triples(n) {
            for g in flip_closure(&classify(n, t).unwrap(), 6).unwrap() {
                let h = wieland_gyration(&g).unwrap();
                assert_eq!(loop_count(n, &to_config(&h)), 0);
            }
        }
    }
}

#[test]
fn incomplete_grids_are_not_gyrated() {
    let geo = classify(3, [0, 4, 8]).unwrap();
    let fixed = Bijection::new(geo).unwrap().region.fixed;
    assert!(matches!(wieland_gyration(&fixed), Err(Error::InvalidGrid(_))));
}

#[test]
fn honeycomb_loops_of_extreme_boxes() {
    for (a, b, c) in [(1, 1, 1), (2, 3, 4), (3, 3, 3), (1, 5, 2)] {
        let h = Honeycomb::new(a, b, c);
        for pp in [PlanePartition::empty(a, b, c), PlanePartition::full(a, b, c)] {
            let cfg = hfpl_complement(&pp_to_tiling(&pp, &h).unwrap());
            assert_eq!(cfg.internal_loop_count(), 0);
            assert_eq!(cfg.paths.len(), a + b + c);
            let mut fam = nested_families(&cfg.link_pattern()).unwrap();
            fam.sort();
            let mut want = vec![a, b, c];
            want.sort();
            assert_eq!(fam, want);
        }
    }
}

#[test]
fn honeycomb_loop_histogram() {
    let h = Honeycomb::new(2, 2, 2);
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for pp in enumerate_pp(2, 2, 2, 64).unwrap() {
        let d = pp_to_tiling(&pp, &h).unwrap();
        let cfg = hfpl_complement(&d);
        // every triangle keeps two unmatched half-edges
        let mut deg = vec![0; h.vertices.len()];
        for &e in &cfg.edges {
            deg[h.edges[e].0] += 1;
            deg[h.edges[e].1] += 1;
        }
        for s in &cfg.stubs {
            deg[s.vertex] += 1;
        }
        assert!(deg.iter().all(|&k| k == 2));
        *hist.entry(cfg.internal_loop_count()).or_default() += 1;
    }
    assert_eq!(hist.values().sum::<usize>(), brute_pp(2, 2, 2).len());
    assert_eq!(hist, BTreeMap::from([(0, 19), (1, 1)]));
}
