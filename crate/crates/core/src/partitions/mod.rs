//! Plane partitions in a box, their counts, moves and lozenge tilings.

pub mod formula;
pub mod honeycomb;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use formula::{macdonald_q, macmahon, QPolynomial};
pub use honeycomb::{cartesian, DimerConfig, Honeycomb, Lozenge, Tri};

/// Largest box volume `abc` that `enumerate_pp` accepts by default.
pub const DEFAULT_PP_BOUND: usize = 64;

/// An `a x b` matrix of heights in `0..=c`, weakly decreasing along rows
/// and columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlanePartition {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub rows: Vec<Vec<usize>>,
}

impl PlanePartition {
    pub fn new(a: usize, b: usize, c: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        let pp = Self { a, b, c, rows };
        pp.validate()?;
        Ok(pp)
    }

    pub fn empty(a: usize, b: usize, c: usize) -> Self {
        Self {
            a,
            b,
            c,
            rows: vec![vec![0; b]; a],
        }
    }

    pub fn full(a: usize, b: usize, c: usize) -> Self {
        Self {
            a,
            b,
            c,
            rows: vec![vec![c; b]; a],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows.len() != self.a || self.rows.iter().any(|r| r.len() != self.b) {
            return Err(Error::InvalidPartition(format!(
                "expected a {}x{} matrix",
                self.a, self.b
            )));
        }
        for i in 0..self.a {
            for j in 0..self.b {
                let h = self.rows[i][j];
                if h > self.c {
                    return Err(Error::InvalidPartition(format!(
                        "height {h} at ({i},{j}) exceeds {}",
                        self.c
                    )));
                }
                if (i > 0 && h > self.rows[i - 1][j]) || (j > 0 && h > self.rows[i][j - 1]) {
                    return Err(Error::InvalidPartition(format!(
                        "heights increase at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.a, self.b, self.c)
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.rows[i][j]
    }

    pub fn boxes(&self) -> usize {
        self.rows.iter().flatten().sum()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let pp: Self = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        pp.validate()?;
        Ok(pp)
    }

    fn upper(&self, i: usize, j: usize) -> usize {
        let mut m = self.c;
        if i > 0 {
            m = m.min(self.rows[i - 1][j]);
        }
        if j > 0 {
            m = m.min(self.rows[i][j - 1]);
        }
        m
    }

    fn lower(&self, i: usize, j: usize) -> usize {
        let mut m = 0;
        if i + 1 < self.a {
            m = m.max(self.rows[i + 1][j]);
        }
        if j + 1 < self.b {
            m = m.max(self.rows[i][j + 1]);
        }
        m
    }

    /// Cells where a box can be added.
    pub fn addable(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.a {
            for j in 0..self.b {
                if self.rows[i][j] < self.upper(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Cells where a box can be removed.
    pub fn removable(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.a {
            for j in 0..self.b {
                if self.rows[i][j] > self.lower(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Adds (`up`) or removes one box at `(i, j)`.
    pub fn flipped(&self, i: usize, j: usize, up: bool) -> PlanePartition {
        let mut p = self.clone();
        if up {
            p.rows[i][j] += 1;
        } else {
            p.rows[i][j] -= 1;
        }
        p
    }

    /// The same stack of boxes with its axes permuted: axis `k` of the result
    /// is axis `perm[k]` of `self`, with axes 0, 1, 2 indexing rows,
    /// columns and heights.
    pub fn permute_axes(&self, perm: [usize; 3]) -> PlanePartition {
        let dims = [self.a, self.b, self.c];
        let nd = perm.map(|k| dims[k]);
        let mut rows = vec![vec![0; nd[1]]; nd[0]];
        for i in 0..self.a {
            for j in 0..self.b {
                for k in 0..self.rows[i][j] {
                    let old = [i, j, k];
                    let new = perm.map(|axis| old[axis]);
                    // each new column counts its cubes
                    rows[new[0]][new[1]] = rows[new[0]][new[1]].max(new[2] + 1);
                }
            }
        }
        PlanePartition {
            a: nd[0],
            b: nd[1],
            c: nd[2],
            rows,
        }
    }

    /// `c - h` read from the opposite corner.
    pub fn complement(&self) -> PlanePartition {
        let mut p = self.clone();
        for i in 0..self.a {
            for j in 0..self.b {
                p.rows[i][j] = self.c - self.rows[self.a - 1 - i][self.b - 1 - j];
            }
        }
        p
    }
}

impl fmt::Display for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|h| h.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn complement(pp: &PlanePartition) -> PlanePartition {
    pp.complement()
}

/// Every partition one box away.
pub fn pp_flip_neighbors(pp: &PlanePartition) -> Vec<PlanePartition> {
    let mut out: Vec<PlanePartition> = pp
        .addable()
        .into_iter()
        .map(|(i, j)| pp.flipped(i, j, true))
        .chain(pp.removable().into_iter().map(|(i, j)| pp.flipped(i, j, false)))
        .collect();
    out.sort();
    out
}

/// All plane partitions in the box, in lexicographic order of the row-major
/// height sequence.
#[derive(Clone, Debug)]
pub struct PpIter {
    cur: Option<PlanePartition>,
}

impl Iterator for PpIter {
    type Item = PlanePartition;

    fn next(&mut self) -> Option<PlanePartition> {
        let out = self.cur.clone()?;
        let mut p = out.clone();
        let (a, b) = (p.a, p.b);
        let mut advanced = false;
        for cell in (0..a * b).rev() {
            let (i, j) = (cell / b, cell % b);
            if p.rows[i][j] < p.upper(i, j) {
                p.rows[i][j] += 1;
                for later in cell + 1..a * b {
                    p.rows[later / b][later % b] = 0;
                }
                advanced = true;
                break;
            }
        }
        self.cur = advanced.then_some(p);
        Some(out)
    }
}

pub fn enumerate_pp(a: usize, b: usize, c: usize, bound: usize) -> Result<PpIter> {
    let volume = a * b * c;
    if volume > bound {
        return Err(Error::BoundExceeded {
            what: "abc",
            value: volume,
            bound,
        });
    }
    Ok(PpIter {
        cur: Some(PlanePartition::empty(a, b, c)),
    })
}

fn proj(x: usize, y: usize, z: usize) -> (i64, i64) {
    (x as i64 - y as i64, y as i64 - z as i64)
}

fn lozenge_edge(h: &Honeycomb, p: (i64, i64), u: (i64, i64), v: (i64, i64)) -> usize {
    let add = |p: (i64, i64), d: (i64, i64)| (p.0 + d.0, p.1 + d.1);
    let far = add(add(p, u), v);
    // the short diagonal runs from p to p + u + v in all three orientations
    let t1 = Tri::from_corners([p, add(p, u), far]);
    let t2 = Tri::from_corners([p, add(p, v), far]);
    let (i, j) = (
        h.vertex_index(t1).expect("lozenge inside hexagon"),
        h.vertex_index(t2).expect("lozenge inside hexagon"),
    );
    h.edge_between(i, j).expect("adjacent triangles")
}

const FX: (i64, i64) = (1, 0);
const FY: (i64, i64) = (-1, 1);
const FZ: (i64, i64) = (0, -1);

/// The lozenge tiling of the stepped surface of `pp`, as a matching.
pub fn pp_to_tiling(pp: &PlanePartition, h: &Honeycomb) -> Result<DimerConfig> {
    if (h.a, h.b, h.c) != pp.dims() {
        return Err(Error::IncompatibleBox {
            got: pp.dims(),
            expected: (h.a, h.b, h.c),
        });
    }
    let (a, b, c) = pp.dims();
    let mut dimers = BTreeSet::new();
    for i in 0..a {
        for j in 0..b {
            dimers.insert(lozenge_edge(h, proj(i, j, pp.rows[i][j]), FX, FY));
        }
    }
    for j in 0..b {
        for k in 0..c {
            let x = (0..a).filter(|&i| pp.rows[i][j] > k).count();
            dimers.insert(lozenge_edge(h, proj(x, j, k), FY, FZ));
        }
    }
    for i in 0..a {
        for k in 0..c {
            let y = (0..b).filter(|&j| pp.rows[i][j] > k).count();
            dimers.insert(lozenge_edge(h, proj(i, y, k), FX, FZ));
        }
    }
    DimerConfig::new(h, dimers)
}

/// Reads the heights back from a tiling by lifting its lattice points to
/// the stepped surface.
pub fn tiling_to_pp(d: &DimerConfig, h: &Honeycomb) -> Result<PlanePartition> {
    let (a, b, c) = (h.a, h.b, h.c);
    // lozenge sides with their steps in the box
    type Sides = Vec<((i64, i64), [i64; 3])>;
    let mut adj: HashMap<(i64, i64), Sides> = HashMap::new();
    let mut add_side = |p: (i64, i64), q: (i64, i64)| {
        let step = match (q.0 - p.0, q.1 - p.1) {
            (1, 0) => [1, 0, 0],
            (-1, 1) => [0, 1, 0],
            (0, -1) => [0, 0, 1],
            (-1, 0) => [-1, 0, 0],
            (1, -1) => [0, -1, 0],
            (0, 1) => [0, 0, -1],
            _ => unreachable!("unit segment"),
        };
        adj.entry(p).or_default().push((q, step));
        adj.entry(q).or_default().push((p, step.map(|s| -s)));
    };
    for &e in &d.dimers {
        let (u, v) = h.edges[e];
        let shared = h.shared_segment(e);
        for tri in [h.vertices[u], h.vertices[v]] {
            let cs = tri.corners();
            for k in 0..3 {
                let (p, q) = (cs[k], cs[(k + 1) % 3]);
                if (p.min(q), p.max(q)) != shared {
                    add_side(p, q);
                }
            }
        }
    }
    let start = (a as i64, 0);
    let mut lift: HashMap<(i64, i64), [i64; 3]> = HashMap::from([(start, [a as i64, 0, 0])]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        let lp = lift[&p];
        for &(q, step) in adj.get(&p).map(|v| v.as_slice()).unwrap_or(&[]) {
            let lq = [lp[0] + step[0], lp[1] + step[1], lp[2] + step[2]];
            match lift.get(&q) {
                Some(&old) if old != lq => {
                    return Err(Error::NotAMatching("tiling does not lift to a surface".into()))
                }
                Some(_) => {}
                None => {
                    lift.insert(q, lq);
                    queue.push_back(q);
                }
            }
        }
    }
    let mut rows = vec![vec![usize::MAX; b]; a];
    for &e in &d.dimers {
        if h.lozenge(e) != Lozenge::Z {
            continue;
        }
        let (p, _) = h.shared_segment(e);
        let [i, j, k] = *lift
            .get(&p)
            .ok_or_else(|| Error::NotAMatching("unlifted lozenge".into()))?;
        if !(0..a as i64).contains(&i) || !(0..b as i64).contains(&j) || !(0..=c as i64).contains(&k) {
            return Err(Error::NotAMatching(format!("lozenge lifts outside the box at {p:?}")));
        }
        rows[i as usize][j as usize] = k as usize;
    }
    if rows.iter().flatten().any(|&v| v == usize::MAX) {
        return Err(Error::NotAMatching("a column has no top face".into()));
    }
    PlanePartition::new(a, b, c, rows)
}
