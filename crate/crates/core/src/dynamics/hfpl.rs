//! Loops on the honeycomb formed by the edges a matching leaves out.
//!
//! Each triangle has three sides. A side on the hexagon boundary counts as a
//! half-edge leaving the region, so every triangle keeps exactly two
//! unmatched half-edges and the complement splits into boundary-to-boundary
//! paths and closed loops.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::partitions::{cartesian, DimerConfig, Honeycomb};

/// A side of a boundary triangle lying on the hexagon boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stub {
    pub vertex: usize,
    /// Ends of the side, in lattice coordinates.
    pub side: ((i64, i64), (i64, i64)),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HfplConfig {
    pub abc: (usize, usize, usize),
    /// Honeycomb edges outside the matching.
    pub edges: BTreeSet<usize>,
    /// Boundary sides, counterclockwise around the hexagon.
    pub stubs: Vec<Stub>,
    /// Vertex sequences of the paths, each joining two stubs.
    pub paths: Vec<Vec<usize>>,
    /// Stub indices at the two ends of each path.
    pub path_ends: Vec<(usize, usize)>,
    pub loops: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Half {
    Edge(usize),
    Stub(usize),
}

impl HfplConfig {
    pub fn internal_loop_count(&self) -> usize {
        self.loops.len()
    }

    /// Partner of each stub along the paths.
    pub fn link_pattern(&self) -> Vec<usize> {
        let mut partner = vec![0; self.stubs.len()];
        for &(i, j) in &self.path_ends {
            partner[i] = j;
            partner[j] = i;
        }
        partner
    }
}

fn boundary_stubs(h: &Honeycomb) -> Vec<Stub> {
    let n = h.vertices.len() as f64;
    let (cx, cy) = h
        .vertices
        .iter()
        .map(|t| t.centroid())
        .fold((0.0, 0.0), |(x, y), (px, py)| (x + px / n, y + py / n));
    let mut stubs = Vec::new();
    for (v, tri) in h.vertices.iter().enumerate() {
        let corners = tri.corners();
        let inner: Vec<[(i64, i64); 3]> = h.neighbors(v).iter().map(|&w| h.vertices[w].corners()).collect();
        for k in 0..3 {
            let side = (corners[k], corners[(k + 1) % 3]);
            let shared = inner.iter().any(|c| c.contains(&side.0) && c.contains(&side.1));
            if !shared {
                stubs.push(Stub {
                    vertex: v,
                    side: (side.0.min(side.1), side.0.max(side.1)),
                });
            }
        }
    }
    let angle = |s: &Stub| {
        let p = cartesian(s.side.0 .0, s.side.0 .1);
        let q = cartesian(s.side.1 .0, s.side.1 .1);
        ((p.1 + q.1) / 2.0 - cy)
            .atan2((p.0 + q.0) / 2.0 - cx)
            .rem_euclid(std::f64::consts::TAU)
    };
    stubs.sort_by(|p, q| angle(p).total_cmp(&angle(q)));
    stubs
}

/// The complement of `d` with its paths and loops.
pub fn hfpl_complement(d: &DimerConfig) -> HfplConfig {
    let (a, b, c) = d.abc;
    let h = Honeycomb::new(a, b, c);
    let edges: BTreeSet<usize> = (0..h.edges.len()).filter(|e| !d.contains(*e)).collect();
    let stubs = boundary_stubs(&h);

    let mut halves: Vec<Vec<Half>> = vec![Vec::new(); h.vertices.len()];
    for &e in &edges {
        let (u, v) = h.edges[e];
        halves[u].push(Half::Edge(e));
        halves[v].push(Half::Edge(e));
    }
    for (i, s) in stubs.iter().enumerate() {
        halves[s.vertex].push(Half::Stub(i));
    }
    debug_assert!(halves.iter().all(|x| x.len() == 2));

    let other_end = |e: usize, v: usize| {
        let (p, q) = h.edges[e];
        if p == v {
            q
        } else {
            p
        }
    };
    let mut seen = vec![false; h.vertices.len()];
    let mut paths = Vec::new();
    let mut path_ends = Vec::new();
    let mut used_stub = vec![false; stubs.len()];
    for start in 0..stubs.len() {
        if used_stub[start] {
            continue;
        }
        let mut v = stubs[start].vertex;
        let mut came = Half::Stub(start);
        let mut walk = Vec::new();
        let end = loop {
            seen[v] = true;
            walk.push(v);
            let next = if halves[v][0] == came { halves[v][1] } else { halves[v][0] };
            match next {
                Half::Stub(s) => break s,
                Half::Edge(e) => {
                    v = other_end(e, v);
                    came = Half::Edge(e);
                }
            }
        };
        used_stub[start] = true;
        used_stub[end] = true;
        paths.push(walk);
        path_ends.push((start, end));
    }
    let mut loops = Vec::new();
    for s in 0..h.vertices.len() {
        if seen[s] {
            continue;
        }
        let mut v = s;
        let mut came = halves[s][1];
        let mut cycle = Vec::new();
        while !seen[v] {
            seen[v] = true;
            cycle.push(v);
            let next = if halves[v][0] == came { halves[v][1] } else { halves[v][0] };
            let Half::Edge(e) = next else {
                unreachable!("stubs lie on paths")
            };
            v = other_end(e, v);
            came = Half::Edge(e);
        }
        loops.push(cycle);
    }
    HfplConfig {
        abc: d.abc,
        edges,
        stubs,
        paths,
        path_ends,
        loops,
    }
}

/// Sizes of the families of nested arches, counterclockwise, when the
/// pattern consists of such families only.
pub fn nested_families(partner: &[usize]) -> Option<Vec<usize>> {
    let m = partner.len();
    if m == 0 || m % 2 == 1 {
        return None;
    }
    let mut covered = vec![false; m];
    let mut sizes = Vec::new();
    for i in 0..m {
        let j = (i + 1) % m;
        if partner[i] != j || partner[j] != i {
            continue;
        }
        let mut k = 0;
        while k < m / 2 {
            let (l, r) = ((i + m - k) % m, (j + k) % m);
            if partner[l] != r || covered[l] || covered[r] {
                break;
            }
            covered[l] = true;
            covered[r] = true;
            k += 1;
        }
        sizes.push(k);
    }
    covered.iter().all(|&c| c).then_some(sizes)
}
