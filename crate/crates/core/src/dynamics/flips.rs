//! Domino flips and the configurations they reach.

use std::collections::{HashSet, VecDeque};

use crate::bijection::Bijection;
use crate::error::{Error, Result};
use crate::geometry::{ActiveRegion, ArchGeometry};
use crate::grid::{internal_loop_count, link_pattern, EdgeState, FplGrid};

/// Every configuration one domino flip away from `g`.
///
/// A domino flips when its six border edges alternate between occupied and
/// empty; the flip swaps the two halves. Outputs are in domino order.
pub fn fpl_flip_neighbors(g: &FplGrid, region: &ActiveRegion) -> Vec<FplGrid> {
    let pattern = link_pattern(g).expect("input is a valid configuration");
    let loops = internal_loop_count(g).expect("input is a valid configuration");
    let mut out = Vec::new();
    for d in &region.dominos {
        let occ = d.border.map(|e| g.is_occupied(e));
        let alternating = (0..6).all(|k| occ[k] != occ[(k + 1) % 6]);
        if !alternating {
            continue;
        }
        let mut h = g.clone();
        for (&e, &o) in d.border.iter().zip(&occ) {
            h.set(e, if o { EdgeState::Empty } else { EdgeState::Occupied });
        }
        assert_eq!(link_pattern(&h).as_ref(), Ok(&pattern), "flip changed the link pattern");
        assert_eq!(internal_loop_count(&h), Ok(loops), "flip changed the loop count");
        out.push(h);
    }
    out
}

/// Breadth-first closure of domino flips from the configuration of the
/// empty box, in discovery order.
pub fn flip_closure(geo: &ArchGeometry, bound: usize) -> Result<Vec<FplGrid>> {
    if geo.n > bound {
        return Err(Error::BoundExceeded {
            what: "n",
            value: geo.n,
            bound,
        });
    }
    let bij = Bijection::new(geo.clone())?;
    let start = bij.base_fpl()?;
    let mut seen = HashSet::from([start.to_json_string()]);
    let mut queue = VecDeque::from([start.clone()]);
    let mut out = vec![start];
    while let Some(g) = queue.pop_front() {
        for h in fpl_flip_neighbors(&g, &bij.region) {
            if seen.insert(h.to_json_string()) {
                queue.push_back(h.clone());
                out.push(h);
            }
        }
    }
    Ok(out)
}
