//! The dominos left open by the forced edges, and their identification with
//! the faces of the honeycomb inside the `(a, b, c)` hexagon.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::grid::{Dir, EdgeKind, EdgeState, FplGrid, Lattice, Vertex};
use crate::partitions::Honeycomb;

use super::ArchGeometry;

/// Two unit squares glued along an occupied forced edge, whose six outer
/// sides are all open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domino {
    /// Lower-left corners of the two squares.
    pub cells: [Vertex; 2],
    pub middle: usize,
    /// Square-lattice edges around the domino, counterclockwise.
    pub border: [usize; 6],
    /// Interior honeycomb point the domino becomes.
    pub face: (i64, i64),
}

#[derive(Clone, Debug)]
pub struct ActiveRegion {
    pub n: usize,
    pub abc: (usize, usize, usize),
    pub honeycomb: Honeycomb,
    pub fixed: FplGrid,
    pub dominos: Vec<Domino>,
    /// Square-lattice vertex of each honeycomb vertex.
    pub vertex_of: Vec<Vertex>,
    /// Square-lattice edge of each honeycomb edge.
    pub edge_of: Vec<usize>,
    /// Honeycomb edge of each open square-lattice edge.
    pub edge_to_honeycomb: BTreeMap<usize, usize>,
    /// Whether the identification reverses orientation.
    pub reflected: bool,
}

impl ActiveRegion {
    pub fn honeycomb_edge(&self, e: usize) -> Option<usize> {
        self.edge_to_honeycomb.get(&e).copied()
    }
}

/// Open square-lattice graph: vertices with an open edge, and their open
/// neighbours in counterclockwise order E, N, W, S.
struct OpenGraph {
    vertices: Vec<Vertex>,
    rotation: Vec<Vec<usize>>,
}

impl OpenGraph {
    fn new(g: &FplGrid) -> Result<Self> {
        let n = g.n();
        let lat = g.lattice();
        let mut vertices = Vec::new();
        for y in 0..n {
            for x in 0..n {
                let inc = lat.incident((x, y));
                if inc.iter().any(|&e| g.get(e) == EdgeState::Undetermined) {
                    let occ = inc.iter().filter(|&&e| g.is_occupied(e)).count();
                    if occ != 1 {
                        return Err(Error::Structure(format!(
                            "open vertex ({x}, {y}) carries {occ} forced occupied edges"
                        )));
                    }
                    vertices.push((x, y));
                }
            }
        }
        let index: HashMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let rotation = vertices
            .iter()
            .map(|&v| {
                Dir::ALL
                    .iter()
                    .filter(|&&d| g.get(lat.edge_at(v, d)) == EdgeState::Undetermined)
                    .map(|&d| {
                        let w = lat.neighbor(v, d).expect("open edges are internal");
                        index[&w]
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            vertices,
            rotation,
        })
    }
}

/// Extends a dart correspondence to a full isomorphism of rotation systems,
/// if there is one.
fn extend(
    ga: &[Vec<usize>],
    hb: &[Vec<usize>],
    seed: (usize, usize),
    image: (usize, usize),
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; ga.len()];
    let mut used = vec![false; hb.len()];
    let mut queue = VecDeque::new();
    // a vertex is anchored by one of its darts
    let anchor = |map: &mut Vec<usize>,
                      used: &mut Vec<bool>,
                      queue: &mut VecDeque<(usize, usize, usize, usize)>,
                      u: usize,
                      v: usize,
                      hu: usize,
                      hv: usize|
     -> bool {
        if map[u] == usize::MAX {
            if used[hu] || ga[u].len() != hb[hu].len() {
                return false;
            }
            map[u] = hu;
            used[hu] = true;
            queue.push_back((u, v, hu, hv));
            true
        } else {
            map[u] == hu
        }
    };
    let (u0, v0) = seed;
    let (h0, h1) = image;
    if !anchor(&mut map, &mut used, &mut queue, u0, v0, h0, h1) {
        return None;
    }
    while let Some((u, v, hu, hv)) = queue.pop_front() {
        let k = ga[u].len();
        let i = ga[u].iter().position(|&w| w == v)?;
        let j = hb[hu].iter().position(|&w| w == hv)?;
        for s in 0..k {
            let w = ga[u][(i + s) % k];
            let hw = hb[hu][(j + s) % k];
            if !anchor(&mut map, &mut used, &mut queue, w, u, hw, hu) {
                return None;
            }
        }
    }
    map.iter().all(|&m| m != usize::MAX).then_some(map)
}

fn all_isomorphisms(ga: &[Vec<usize>], hb: &[Vec<usize>]) -> Vec<Vec<usize>> {
    if ga.len() != hb.len() || ga.is_empty() {
        return Vec::new();
    }
    let Some(&v0) = ga[0].first() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (h0, nb) in hb.iter().enumerate() {
        for &h1 in nb {
            if let Some(m) = extend(ga, hb, (0, v0), (h0, h1)) {
                out.push(m);
            }
        }
    }
    out
}

fn border_of(lat: &Lattice, cells: [Vertex; 2], horizontal_middle: bool) -> [usize; 6] {
    let [(x0, y0), (x1, y1)] = cells;
    if horizontal_middle {
        // cells stacked vertically: (x, y-1) below (x, y)
        [
            lat.h(x0, y0),
            lat.v(x0 + 1, y0),
            lat.v(x1 + 1, y1),
            lat.h(x1, y1 + 1),
            lat.v(x1, y1),
            lat.v(x0, y0),
        ]
    } else {
        // cells side by side: (x-1, y) left of (x, y)
        [
            lat.h(x0, y0),
            lat.h(x1, y1),
            lat.v(x1 + 1, y1),
            lat.h(x1, y1 + 1),
            lat.h(x0, y0 + 1),
            lat.v(x0, y0),
        ]
    }
}

/// Two vertices, the edge between them and the six edges of the border.
type RawDomino = ([Vertex; 2], usize, [usize; 6]);

fn find_dominos(fixed: &FplGrid) -> Result<Vec<RawDomino>> {
    let n = fixed.n();
    let lat = fixed.lattice();
    let mut out = Vec::new();
    for e in 0..lat.internal_count() {
        if !fixed.is_occupied(e) {
            continue;
        }
        let r = lat.edge_ref(e);
        let (x, y) = (r.i as usize, r.j as usize);
        let horizontal = r.kind == EdgeKind::H;
        let cells = if horizontal {
            if y == 0 || y + 1 >= n {
                continue;
            }
            [(x, y - 1), (x, y)]
        } else {
            if x == 0 || x + 1 >= n {
                continue;
            }
            [(x - 1, y), (x, y)]
        };
        let border = border_of(&lat, cells, horizontal);
        if border.iter().all(|&b| fixed.get(b) == EdgeState::Undetermined) {
            out.push((cells, e, border));
        }
    }
    let mut covered: BTreeMap<usize, usize> = BTreeMap::new();
    for (_, _, border) in &out {
        for &b in border {
            *covered.entry(b).or_default() += 1;
        }
    }
    for e in 0..lat.edge_count() {
        if fixed.get(e) == EdgeState::Undetermined && !covered.contains_key(&e) {
            return Err(Error::Structure(format!("open edge {e} lies on no domino")));
        }
    }
    Ok(out)
}

/// Identifies the open part of `fixed` with the honeycomb of the hexagon.
///
/// Among the identifications compatible with the embedding, the one used
/// is chosen by [`orientation_key`].
pub fn active_region(geo: &ArchGeometry, fixed: &FplGrid) -> Result<ActiveRegion> {
    Ok(active_region_candidates(geo, fixed)?.remove(0))
}

/// Every identification of the open part of `fixed` with the honeycomb,
/// preferred one first.
pub fn active_region_candidates(geo: &ArchGeometry, fixed: &FplGrid) -> Result<Vec<ActiveRegion>> {
    let n = geo.n;
    let lat = Lattice::new(n);
    let hc = Honeycomb::new(geo.a, geo.b, geo.c);
    let og = OpenGraph::new(fixed)?;
    let dominos = find_dominos(fixed)?;
    if dominos.len() != hc.faces.len() {
        return Err(Error::Structure(format!(
            "{} dominos for {} hexagonal faces",
            dominos.len(),
            hc.faces.len()
        )));
    }
    let hrot: Vec<Vec<usize>> = (0..hc.vertices.len()).map(|v| hc.rotation(v)).collect();
    // a mirrored normalization reads the bundles clockwise
    let reflected = geo.symmetry.mirror;
    let grot: Vec<Vec<usize>> = if reflected {
        og.rotation
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect()
    } else {
        og.rotation.clone()
    };
    let mut isos = all_isomorphisms(&grot, &hrot);
    // a bare cycle has no rotation to fix its orientation: check the faces
    isos.retain(|m| {
        hc.faces.iter().all(|&f| {
            let ring = hc.face_ring(f);
            let pts: Vec<Vertex> = ring
                .iter()
                .map(|&h| og.vertices[m.iter().position(|&x| x == h).unwrap()])
                .collect();
            (signed_area(&pts) > 0) != reflected
        })
    });
    if isos.is_empty() {
        return Err(Error::Structure(format!(
            "open graph is not the honeycomb of the ({}, {}, {}) hexagon",
            geo.a, geo.b, geo.c
        )));
    }
    isos.sort_by_cached_key(|m| orientation_key(geo, &og.vertices, &hc, m));
    isos.into_iter()
        .map(|map| build(geo, fixed, &lat, &hc, &og, &dominos, &map, reflected))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn build(
    geo: &ArchGeometry,
    fixed: &FplGrid,
    lat: &Lattice,
    hc: &Honeycomb,
    og: &OpenGraph,
    dominos: &[([Vertex; 2], usize, [usize; 6])],
    map: &[usize],
    reflected: bool,
) -> Result<ActiveRegion> {
    let mut vertex_of = vec![(0, 0); hc.vertices.len()];
    for (gi, &hi) in map.iter().enumerate() {
        vertex_of[hi] = og.vertices[gi];
    }
    let mut edge_of = vec![usize::MAX; hc.edges.len()];
    let mut edge_to_honeycomb = BTreeMap::new();
    for (he, &(hu, hv)) in hc.edges.iter().enumerate() {
        let (u, v) = (vertex_of[hu], vertex_of[hv]);
        let d = Dir::ALL
            .into_iter()
            .find(|&d| lat.neighbor(u, d) == Some(v))
            .ok_or_else(|| Error::Structure("honeycomb edge between non-adjacent vertices".into()))?;
        let e = lat.edge_at(u, d);
        edge_of[he] = e;
        edge_to_honeycomb.insert(e, he);
    }

    let mut out = Vec::new();
    for &(cells, middle, border) in dominos {
        let hedges: Vec<usize> = border.iter().map(|b| edge_to_honeycomb[b]).collect();
        let face = hc
            .faces
            .iter()
            .copied()
            .find(|&f| {
                let fe = hc.face_edges(f);
                hedges.iter().all(|e| fe.contains(e))
            })
            .ok_or_else(|| Error::Structure(format!("domino at {cells:?} is not a hexagon")))?;
        // the middle edge joins opposite corners of the hexagon
        let ring = hc.face_ring(face);
        let (m0, m1) = lat.ends(middle);
        let pos = |v: Vertex| ring.iter().position(|&h| vertex_of[h] == v);
        match (pos(m0), m1.and_then(pos)) {
            (Some(i), Some(j)) if (i + 6 - j) % 6 == 3 => {}
            _ => {
                return Err(Error::Structure(format!(
                    "middle edge of the domino at {cells:?} is not a diameter"
                )))
            }
        }
        out.push(Domino {
            cells,
            middle,
            border,
            face,
        });
    }
    out.sort_by_key(|d| d.face);
    Ok(ActiveRegion {
        n: geo.n,
        abc: (geo.a, geo.b, geo.c),
        honeycomb: hc.clone(),
        fixed: fixed.clone(),
        dominos: out,
        vertex_of,
        edge_of,
        edge_to_honeycomb,
        reflected,
    })
}

fn signed_area(pts: &[Vertex]) -> i64 {
    let k = pts.len();
    (0..k)
        .map(|i| {
            let (p, q) = (pts[i], pts[(i + 1) % k]);
            p.0 as i64 * q.1 as i64 - q.0 as i64 * p.1 as i64
        })
        .sum()
}

/// Tie-break between identifications that differ by a symmetry of the
/// hexagon: compare where the honeycomb vertices land, read in the
/// normalized frame.
fn orientation_key(geo: &ArchGeometry, verts: &[Vertex], hc: &Honeycomb, map: &[usize]) -> Vec<(i64, i64)> {
    let mut inv = vec![(0i64, 0i64); hc.vertices.len()];
    for (gi, &hi) in map.iter().enumerate() {
        let p = geo.to_normalized(super::Point::vertex(verts[gi]));
        inv[hi] = (p.x2, p.y2);
    }
    inv
}
