//! The honeycomb dual to the triangular lattice inside the hexagon with
//! sides a, b, c, and its perfect matchings.
//!
//! Lattice points are written `(s, t)` in the basis `f1` (angle 0) and `f2`
//! (angle 60 degrees). A point `(x, y, z)` of the box projects to
//! `(x - y, y - z)`, so the hexagon is `-b <= s <= a`, `-c <= t <= b`,
//! `-c <= s + t <= a`.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A unit triangle: `Up(s, t)` has corners `(s,t), (s+1,t), (s,t+1)`,
/// `Down(s, t)` has corners `(s+1,t), (s,t+1), (s+1,t+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tri {
    Up(i64, i64),
    Down(i64, i64),
}

impl Tri {
    pub fn corners(self) -> [(i64, i64); 3] {
        match self {
            Tri::Up(s, t) => [(s, t), (s + 1, t), (s, t + 1)],
            Tri::Down(s, t) => [(s + 1, t), (s, t + 1), (s + 1, t + 1)],
        }
    }

    /// Triangle with the given corners, in any order.
    pub fn from_corners(c: [(i64, i64); 3]) -> Tri {
        let s = c.iter().map(|p| p.0).min().unwrap();
        let t = c.iter().map(|p| p.1).min().unwrap();
        let sum: i64 = c.iter().map(|p| p.0 + p.1).sum();
        if sum == 3 * (s + t) + 2 {
            Tri::Up(s, t)
        } else {
            Tri::Down(s, t)
        }
    }

    /// Centroid in Cartesian coordinates.
    pub fn centroid(self) -> (f64, f64) {
        let (mut x, mut y) = (0.0, 0.0);
        for (s, t) in self.corners() {
            let (px, py) = cartesian(s, t);
            x += px / 3.0;
            y += py / 3.0;
        }
        (x, y)
    }
}

pub fn cartesian(s: i64, t: i64) -> (f64, f64) {
    (s as f64 + t as f64 / 2.0, t as f64 * 3f64.sqrt() / 2.0)
}

/// Lozenge orientation, named after the box axis normal to the face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Lozenge {
    X,
    Y,
    Z,
}

/// Honeycomb graph of the unit triangles of the hexagon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Honeycomb {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub vertices: Vec<Tri>,
    index: HashMap<Tri, usize>,
    /// Edges as `(up, down)` vertex indices, sorted.
    pub edges: Vec<(usize, usize)>,
    edge_index: HashMap<(usize, usize), usize>,
    /// Interior lattice points; each is surrounded by six edges.
    pub faces: Vec<(i64, i64)>,
}

impl Honeycomb {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        let (ai, bi, ci) = (a as i64, b as i64, c as i64);
        let inside = |(s, t): (i64, i64)| {
            (-bi..=ai).contains(&s) && (-ci..=bi).contains(&t) && (-ci..=ai).contains(&(s + t))
        };
        let mut vertices = Vec::new();
        for s in -bi..=ai {
            for t in -ci..=bi {
                for tri in [Tri::Up(s, t), Tri::Down(s, t)] {
                    if tri.corners().iter().all(|&p| inside(p)) {
                        vertices.push(tri);
                    }
                }
            }
        }
        vertices.sort();
        let index: HashMap<Tri, usize> = vertices.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let mut edges = Vec::new();
        for (i, &tri) in vertices.iter().enumerate() {
            if let Tri::Up(s, t) = tri {
                for d in [Tri::Down(s, t), Tri::Down(s - 1, t), Tri::Down(s, t - 1)] {
                    if let Some(&j) = index.get(&d) {
                        edges.push((i, j));
                    }
                }
            }
        }
        edges.sort();
        let edge_index = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        let mut faces = Vec::new();
        for s in -bi..=ai {
            for t in -ci..=bi {
                let interior = (-bi < s && s < ai) && (-ci < t && t < bi) && (-ci < s + t && s + t < ai);
                if interior {
                    faces.push((s, t));
                }
            }
        }
        Self {
            a,
            b,
            c,
            vertices,
            index,
            edges,
            edge_index,
            faces,
        }
    }

    pub fn vertex_index(&self, t: Tri) -> Option<usize> {
        self.index.get(&t).copied()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        let key = if matches!(self.vertices[u], Tri::Up(..)) { (u, v) } else { (v, u) };
        self.edge_index.get(&key).copied()
    }

    /// The lattice segment shared by the two triangles of an edge.
    pub fn shared_segment(&self, e: usize) -> ((i64, i64), (i64, i64)) {
        let (u, d) = self.edges[e];
        let cu = self.vertices[u].corners();
        let cd = self.vertices[d].corners();
        let mut common = cu.iter().filter(|p| cd.contains(p)).copied();
        let p = common.next().unwrap();
        let q = common.next().unwrap();
        (p.min(q), p.max(q))
    }

    /// Orientation of the lozenge formed by the two triangles of an edge.
    pub fn lozenge(&self, e: usize) -> Lozenge {
        let (p, q) = self.shared_segment(e);
        match (q.0 - p.0, q.1 - p.1) {
            (1, 0) => Lozenge::X,
            (0, 1) => Lozenge::Z,
            _ => Lozenge::Y,
        }
    }

    /// Neighbours of a vertex, counterclockwise by angle starting from the
    /// positive x axis.
    pub fn rotation(&self, v: usize) -> Vec<usize> {
        let (cx, cy) = self.vertices[v].centroid();
        let mut nb: Vec<(f64, usize)> = self
            .neighbors(v)
            .into_iter()
            .map(|w| {
                let (x, y) = self.vertices[w].centroid();
                ((y - cy).atan2(x - cx).rem_euclid(std::f64::consts::TAU), w)
            })
            .collect();
        nb.sort_by(|p, q| p.0.total_cmp(&q.0));
        nb.into_iter().map(|(_, w)| w).collect()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let cand = match self.vertices[v] {
            Tri::Up(s, t) => [Tri::Down(s, t), Tri::Down(s - 1, t), Tri::Down(s, t - 1)],
            Tri::Down(s, t) => [Tri::Up(s, t), Tri::Up(s + 1, t), Tri::Up(s, t + 1)],
        };
        for tri in cand {
            if let Some(w) = self.vertex_index(tri) {
                out.push(w);
            }
        }
        out
    }

    /// The six triangles around an interior lattice point, counterclockwise
    /// from the one to the right of the point.
    pub fn face_ring(&self, (s, t): (i64, i64)) -> [usize; 6] {
        let ring = [
            Tri::Up(s, t),
            Tri::Down(s - 1, t),
            Tri::Up(s - 1, t),
            Tri::Down(s - 1, t - 1),
            Tri::Up(s, t - 1),
            Tri::Down(s, t - 1),
        ];
        ring.map(|tri| self.vertex_index(tri).expect("interior point has a full ring"))
    }

    /// The six edges around an interior lattice point, edge `k` joining
    /// `face_ring[k]` and `face_ring[k+1]`.
    pub fn face_edges(&self, f: (i64, i64)) -> [usize; 6] {
        let r = self.face_ring(f);
        std::array::from_fn(|k| self.edge_between(r[k], r[(k + 1) % 6]).expect("ring edge"))
    }
}

/// A perfect matching of the honeycomb.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DimerConfig {
    pub abc: (usize, usize, usize),
    /// Indices into `Honeycomb::edges`, sorted.
    pub dimers: BTreeSet<usize>,
}

impl DimerConfig {
    /// Checks that every vertex is covered exactly once.
    pub fn new(h: &Honeycomb, dimers: BTreeSet<usize>) -> Result<Self> {
        let mut cover = vec![0u8; h.vertices.len()];
        for &e in &dimers {
            let Some(&(u, v)) = h.edges.get(e) else {
                return Err(Error::NotAMatching(format!("edge {e} is not in the honeycomb")));
            };
            cover[u] += 1;
            cover[v] += 1;
        }
        if let Some(v) = cover.iter().position(|&k| k != 1) {
            return Err(Error::NotAMatching(format!(
                "triangle {:?} is covered {} times",
                h.vertices[v], cover[v]
            )));
        }
        Ok(Self {
            abc: (h.a, h.b, h.c),
            dimers,
        })
    }

    pub fn len(&self) -> usize {
        self.dimers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dimers.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.dimers.contains(&e)
    }
}
