//! Configurations of three-bundle type to plane partitions and back.
//!
//! The forced edges leave open exactly the borders of the dominos. Every
//! open vertex already carries one forced occupied edge, so a completion
//! picks one more edge at each open vertex: a perfect matching of the open
//! graph, which is the honeycomb of the `(a, b, c)` hexagon.
//!
//! That matching only fixes the honeycomb up to the symmetries of the
//! hexagon. The placements reached from one another by gyration (every
//! center moved two positions on) form an orbit. The first placement of an
//! orbit takes the preferred identification and each later one takes the
//! identification under which gyration keeps the image partition, read
//! with the box axes following their centers.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use crate::dynamics::wieland_gyration;
use crate::error::{Error, Result};
use crate::geometry::{active_region_candidates, classify, fixed_edges, ActiveRegion, ArchGeometry};
use crate::grid::{link_pattern, EdgeState, FplGrid};
use crate::partitions::{pp_to_tiling, tiling_to_pp, DimerConfig, PlanePartition};

/// Everything needed to run the bijection for one placement of the centers.
#[derive(Clone, Debug)]
pub struct Bijection {
    pub geometry: ArchGeometry,
    pub region: ActiveRegion,
}

impl Bijection {
    pub fn new(geometry: ArchGeometry) -> Result<Self> {
        let region = region_for(&geometry)?;
        Ok(Self { geometry, region })
    }

    pub fn from_centers(n: usize, centers: [usize; 3]) -> Result<Self> {
        Self::new(classify(n, centers)?)
    }

    pub fn abc(&self) -> (usize, usize, usize) {
        self.region.abc
    }

    pub fn fpl_to_pp(&self, g: &FplGrid) -> Result<PlanePartition> {
        dimers_to_pp(&fpl_to_dimers(g, &self.region)?, &self.region)
    }

    pub fn pp_to_fpl(&self, pp: &PlanePartition) -> Result<FplGrid> {
        pp_to_fpl_in(pp, &self.geometry, &self.region)
    }

    pub fn base_fpl(&self) -> Result<FplGrid> {
        let (a, b, c) = self.abc();
        self.pp_to_fpl(&PlanePartition::empty(a, b, c))
    }
}

/// The occupied domino borders of `g`, as a matching of the honeycomb.
pub fn fpl_to_dimers(g: &FplGrid, region: &ActiveRegion) -> Result<DimerConfig> {
    if g.n() != region.n {
        return Err(Error::NotAMatching(format!(
            "grid of size {} for a region of size {}",
            g.n(),
            region.n
        )));
    }
    g.validate()
        .map_err(|e| Error::NotAMatching(format!("not a configuration: {e}")))?;
    let mut dimers = BTreeSet::new();
    for (e, &s) in region.fixed.states().iter().enumerate() {
        match s {
            EdgeState::Undetermined => {
                if g.is_occupied(e) {
                    dimers.insert(region.edge_to_honeycomb[&e]);
                }
            }
            forced if g.get(e) != forced => {
                let (v, _) = region.fixed.lattice().ends(e);
                return Err(Error::NotAMatching(format!(
                    "edge {e} at {v:?} differs from the forced edges of this type"
                )));
            }
            _ => {}
        }
    }
    DimerConfig::new(&region.honeycomb, dimers)
}

pub fn dimers_to_pp(d: &DimerConfig, region: &ActiveRegion) -> Result<PlanePartition> {
    tiling_to_pp(d, &region.honeycomb)
}

pub fn pp_to_fpl(pp: &PlanePartition, geo: &ArchGeometry) -> Result<FplGrid> {
    pp_to_fpl_in(pp, geo, &region_for(geo)?)
}

type RegionCache = Mutex<HashMap<(usize, [usize; 3]), ActiveRegion>>;

fn cache() -> &'static RegionCache {
    static CACHE: OnceLock<RegionCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn sorted_centers(geo: &ArchGeometry) -> [usize; 3] {
    let mut t = geo.centers();
    t.sort();
    t
}

fn shifted(n: usize, t: [usize; 3]) -> [usize; 3] {
    let mut s = t.map(|p| (p + 2) % (4 * n));
    s.sort();
    s
}

/// The identification of the open region with the honeycomb used by the
/// bijection at `geo`.
pub fn region_for(geo: &ArchGeometry) -> Result<ActiveRegion> {
    let n = geo.n;
    let target = sorted_centers(geo);
    if let Some(r) = cache().lock().unwrap().get(&(n, target)) {
        return Ok(r.clone());
    }
    let orbit: Vec<[usize; 3]> = std::iter::successors(Some(target), |&t| Some(shifted(n, t)))
        .take(2 * n)
        .collect();
    let first = *orbit.iter().min().unwrap();

    let mut t = first;
    let mut cur = classify(n, t)?;
    let mut region = active_region_candidates(&cur, &fixed_edges(&cur)?)?.remove(0);
    let mut found = Vec::new();
    loop {
        found.push((t, region.clone()));
        if t == target {
            break;
        }
        let t2 = shifted(n, t);
        let next = classify(n, t2)?;
        region = transport(&cur, &region, &next)?;
        cur = next;
        t = t2;
    }
    let mut c = cache().lock().unwrap();
    for (t, r) in found {
        c.entry((n, t)).or_insert(r);
    }
    Ok(region)
}

/// The candidate at `next` under which gyration preserves the images of a
/// few small partitions, chosen so that no symmetry of the hexagon fixes
/// them all.
fn transport(cur: &ArchGeometry, region: &ActiveRegion, next: &ArchGeometry) -> Result<ActiveRegion> {
    let m = 4 * cur.n;
    let ids = [cur.pos_a, cur.pos_b, cur.pos_c];
    let perm = [next.pos_a, next.pos_b, next.pos_c]
        .map(|q| ids.iter().position(|&p| (p + 2) % m == q).expect("centers move together"));
    let empty = PlanePartition::empty(cur.a, cur.b, cur.c);
    let mut single = empty.clone();
    single.rows[0][0] = 1;
    let mut pair = single.clone();
    if cur.b > 1 {
        pair.rows[0][1] = 1;
    }
    let mut probes = Vec::new();
    for pp in [empty, single, pair] {
        let g = wieland_gyration(&pp_to_fpl_in(&pp, cur, region)?)?;
        probes.push((g, pp.permute_axes(perm)));
    }
    let candidates = active_region_candidates(next, &fixed_edges(next)?)?;
    candidates
        .into_iter()
        .find(|r| {
            probes.iter().all(|(g, want)| {
                fpl_to_dimers(g, r)
                    .and_then(|d| dimers_to_pp(&d, r))
                    .is_ok_and(|got| &got == want)
            })
        })
        .ok_or_else(|| Error::Structure(format!("no identification at {:?} follows gyration", next.centers())))
}

fn pp_to_fpl_in(pp: &PlanePartition, geo: &ArchGeometry, region: &ActiveRegion) -> Result<FplGrid> {
    if pp.dims() != region.abc {
        return Err(Error::IncompatibleBox {
            got: pp.dims(),
            expected: region.abc,
        });
    }
    let tiling = pp_to_tiling(pp, &region.honeycomb)?;
    let mut g = region.fixed.clone();
    for (&e, &he) in &region.edge_to_honeycomb {
        let s = if tiling.contains(he) {
            EdgeState::Occupied
        } else {
            EdgeState::Empty
        };
        g.set(e, s);
    }
    g.validate()?;
    let want = geo.bundles().link_pattern();
    let got = link_pattern(&g)?;
    assert_eq!(got, want, "inverse map produced a configuration of another type");
    Ok(g)
}

/// The configuration of the empty partition.
pub fn base_fpl(geo: &ArchGeometry) -> Result<FplGrid> {
    Bijection::new(geo.clone())?.base_fpl()
}
