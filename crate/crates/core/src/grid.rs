//! Fully packed loop configurations on the `n x n` vertex grid.
//!
//! Vertices are `(x, y)` with `x` the column and `y` the row, row 0 at the
//! bottom. Internal edges are `H(x, y)` joining `(x, y)`-`(x + 1, y)` and
//! `V(x, y)` joining `(x, y)`-`(x, y + 1)`. The `4n` external edges are
//! labelled by their perimeter position, counterclockwise, starting with the
//! downward stub of the bottom-left vertex:
//!
//! ```text
//! bottom  p in [0, n)     vertex (p, 0)
//! right   p in [n, 2n)    vertex (n - 1, p - n)
//! top     p in [2n, 3n)   vertex (3n - 1 - p, n - 1)
//! left    p in [3n, 4n)   vertex (0, 4n - 1 - p)
//! ```
//!
//! In JSON and in [`EdgeRef`] an external edge is named by the lattice point
//! just outside the grid it points at, e.g. `["X", 2, -1]` for the bottom stub
//! of `(2, 0)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` the exhaustive oracle accepts unless told otherwise.
pub const DEFAULT_ORACLE_BOUND: usize = 6;

pub type Vertex = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    H,
    V,
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef {
    pub kind: EdgeKind,
    pub i: i32,
    pub j: i32,
}

impl EdgeRef {
    pub fn new(kind: EdgeKind, i: i32, j: i32) -> Self {
        Self { kind, i, j }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeState {
    Empty,
    Occupied,
    Undetermined,
}

/// Directions around a vertex, in counterclockwise order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    E = 0,
    N = 1,
    W = 2,
    S = 3,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::E, Dir::N, Dir::W, Dir::S];

    pub fn opposite(self) -> Dir {
        Dir::ALL[(self as usize + 2) % 4]
    }

    pub fn delta(self) -> (i32, i32) {
        match self {
            Dir::E => (1, 0),
            Dir::N => (0, 1),
            Dir::W => (-1, 0),
            Dir::S => (0, -1),
        }
    }
}

/// Edge indexing for a fixed side length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    pub n: usize,
}

impl Lattice {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn internal_h_count(&self) -> usize {
        self.n * (self.n - 1)
    }

    pub fn internal_count(&self) -> usize {
        2 * self.n * (self.n - 1)
    }

    pub fn edge_count(&self) -> usize {
        self.internal_count() + 4 * self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.n * self.n
    }

    pub fn h(&self, x: usize, y: usize) -> usize {
        debug_assert!(x + 1 < self.n && y < self.n);
        y * (self.n - 1) + x
    }

    pub fn v(&self, x: usize, y: usize) -> usize {
        debug_assert!(x < self.n && y + 1 < self.n);
        self.internal_h_count() + y * self.n + x
    }

    pub fn ext(&self, p: usize) -> usize {
        debug_assert!(p < 4 * self.n);
        self.internal_count() + p
    }

    pub fn is_external(&self, e: usize) -> bool {
        e >= self.internal_count()
    }

    pub fn ext_position(&self, e: usize) -> Option<usize> {
        self.is_external(e).then(|| e - self.internal_count())
    }

    /// Boundary vertex carrying the stub at perimeter position `p`, and the
    /// direction the stub points.
    pub fn stub(&self, p: usize) -> (Vertex, Dir) {
        let n = self.n;
        match p / n {
            0 => ((p, 0), Dir::S),
            1 => ((n - 1, p - n), Dir::E),
            2 => ((3 * n - 1 - p, n - 1), Dir::N),
            3 => ((0, 4 * n - 1 - p), Dir::W),
            _ => panic!("perimeter position {p} out of range for n = {n}"),
        }
    }

    /// Perimeter position of the stub leaving `v` in direction `d`, if any.
    pub fn stub_position(&self, v: Vertex, d: Dir) -> Option<usize> {
        let n = self.n;
        let (x, y) = v;
        match d {
            Dir::S if y == 0 => Some(x),
            Dir::E if x == n - 1 => Some(n + y),
            Dir::N if y == n - 1 => Some(3 * n - 1 - x),
            Dir::W if x == 0 => Some(4 * n - 1 - y),
            _ => None,
        }
    }

    /// The edge leaving `v` in direction `d` (internal or external).
    pub fn edge_at(&self, v: Vertex, d: Dir) -> usize {
        let (x, y) = v;
        if let Some(p) = self.stub_position(v, d) {
            return self.ext(p);
        }
        match d {
            Dir::E => self.h(x, y),
            Dir::W => self.h(x - 1, y),
            Dir::N => self.v(x, y),
            Dir::S => self.v(x, y - 1),
        }
    }

    /// Incident edges in E, N, W, S order.
    pub fn incident(&self, v: Vertex) -> [usize; 4] {
        Dir::ALL.map(|d| self.edge_at(v, d))
    }

    /// Grid endpoints of an edge; external edges have a single one.
    pub fn ends(&self, e: usize) -> (Vertex, Option<Vertex>) {
        let n = self.n;
        if let Some(p) = self.ext_position(e) {
            return (self.stub(p).0, None);
        }
        if e < self.internal_h_count() {
            let (y, x) = (e / (n - 1), e % (n - 1));
            ((x, y), Some((x + 1, y)))
        } else {
            let k = e - self.internal_h_count();
            let (y, x) = (k / n, k % n);
            ((x, y), Some((x, y + 1)))
        }
    }

    pub fn other_end(&self, e: usize, v: Vertex) -> Option<Vertex> {
        match self.ends(e) {
            (u, Some(w)) if u == v => Some(w),
            (u, Some(w)) if w == v => Some(u),
            _ => None,
        }
    }

    pub fn neighbor(&self, v: Vertex, d: Dir) -> Option<Vertex> {
        let (dx, dy) = d.delta();
        let x = v.0 as i32 + dx;
        let y = v.1 as i32 + dy;
        let n = self.n as i32;
        (0..n).contains(&x).then_some(())?;
        (0..n).contains(&y).then_some(())?;
        Some((x as usize, y as usize))
    }

    pub fn edge_ref(&self, e: usize) -> EdgeRef {
        if let Some(p) = self.ext_position(e) {
            let ((x, y), d) = self.stub(p);
            let (dx, dy) = d.delta();
            return EdgeRef::new(EdgeKind::X, x as i32 + dx, y as i32 + dy);
        }
        let ((x, y), _) = self.ends(e);
        let kind = if e < self.internal_h_count() {
            EdgeKind::H
        } else {
            EdgeKind::V
        };
        EdgeRef::new(kind, x as i32, y as i32)
    }

    pub fn index_of(&self, r: EdgeRef) -> Option<usize> {
        let n = self.n as i32;
        let (i, j) = (r.i, r.j);
        match r.kind {
            EdgeKind::H if (0..n - 1).contains(&i) && (0..n).contains(&j) => {
                Some(self.h(i as usize, j as usize))
            }
            EdgeKind::V if (0..n).contains(&i) && (0..n - 1).contains(&j) => {
                Some(self.v(i as usize, j as usize))
            }
            EdgeKind::X => {
                let inside = |c: i32| (0..n).contains(&c);
                let (v, d) = if j == -1 && inside(i) {
                    ((i, 0), Dir::S)
                } else if i == n && inside(j) {
                    ((n - 1, j), Dir::E)
                } else if j == n && inside(i) {
                    ((i, n - 1), Dir::N)
                } else if i == -1 && inside(j) {
                    ((0, j), Dir::W)
                } else {
                    return None;
                };
                let v = (v.0 as usize, v.1 as usize);
                self.stub_position(v, d).map(|p| self.ext(p))
            }
            _ => None,
        }
    }
}

/// Edge-state assignment over every edge of the grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FplGrid {
    n: usize,
    states: Vec<EdgeState>,
}

/// Grid with alternating external edges and every internal edge undetermined.
///
/// Parity 0 occupies the even perimeter positions.
pub fn boundary(n: usize, parity: u8) -> FplGrid {
    assert!(n >= 1, "grid side must be positive");
    assert!(parity < 2, "parity must be 0 or 1");
    let lat = Lattice::new(n);
    let mut states = vec![EdgeState::Undetermined; lat.edge_count()];
    for p in 0..4 * n {
        states[lat.ext(p)] = if p % 2 == parity as usize {
            EdgeState::Occupied
        } else {
            EdgeState::Empty
        };
    }
    FplGrid { n, states }
}

impl FplGrid {
    pub fn from_states(n: usize, states: Vec<EdgeState>) -> Result<Self> {
        let lat = Lattice::new(n);
        if n == 0 || states.len() != lat.edge_count() {
            return Err(Error::InvalidGrid(format!(
                "expected {} edge states for n = {n}, got {}",
                lat.edge_count(),
                states.len()
            )));
        }
        Ok(Self { n, states })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::new(self.n)
    }

    pub fn states(&self) -> &[EdgeState] {
        &self.states
    }

    pub fn get(&self, e: usize) -> EdgeState {
        self.states[e]
    }

    pub fn set(&mut self, e: usize, s: EdgeState) {
        self.states[e] = s;
    }

    pub fn is_occupied(&self, e: usize) -> bool {
        self.states[e] == EdgeState::Occupied
    }

    pub fn occupied_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.states.len()).filter(|&e| self.is_occupied(e))
    }

    pub fn count(&self, s: EdgeState) -> usize {
        self.states.iter().filter(|&&t| t == s).count()
    }

    pub fn is_complete(&self) -> bool {
        !self.states.contains(&EdgeState::Undetermined)
    }

    /// Number of occupied edges (stubs included) at `v`.
    pub fn degree(&self, v: Vertex) -> usize {
        let lat = self.lattice();
        lat.incident(v)
            .iter()
            .filter(|&&e| self.is_occupied(e))
            .count()
    }

    /// Boundary parity if the external edges alternate, else `None`.
    pub fn parity(&self) -> Option<u8> {
        let lat = self.lattice();
        let first = self.get(lat.ext(0));
        let parity = match first {
            EdgeState::Occupied => 0,
            EdgeState::Empty => 1,
            EdgeState::Undetermined => return None,
        };
        (0..4 * self.n)
            .all(|p| {
                let want = if p % 2 == parity {
                    EdgeState::Occupied
                } else {
                    EdgeState::Empty
                };
                self.get(lat.ext(p)) == want
            })
            .then_some(parity as u8)
    }

    /// Checks completeness, alternation, and degree 2 everywhere.
    pub fn validate(&self) -> Result<()> {
        if !self.is_complete() {
            return Err(Error::InvalidGrid("undetermined edges remain".into()));
        }
        if self.parity().is_none() {
            return Err(Error::InvalidGrid(
                "external edges do not alternate".into(),
            ));
        }
        for y in 0..self.n {
            for x in 0..self.n {
                let d = self.degree((x, y));
                if d != 2 {
                    return Err(Error::InvalidGrid(format!(
                        "vertex ({x}, {y}) has degree {d}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> GridJson {
        let lat = self.lattice();
        let collect = |s: EdgeState| {
            let mut v: Vec<EdgeRef> = (0..self.states.len())
                .filter(|&e| self.states[e] == s)
                .map(|e| lat.edge_ref(e))
                .collect();
            v.sort();
            v.into_iter().map(EdgeDescriptor::from).collect::<Vec<_>>()
        };
        GridJson {
            n: self.n,
            occupied: collect(EdgeState::Occupied),
            undetermined: collect(EdgeState::Undetermined),
        }
    }

    pub fn from_json(j: &GridJson) -> Result<Self> {
        if j.n == 0 {
            return Err(Error::Parse("n must be positive".into()));
        }
        let lat = Lattice::new(j.n);
        let mut states = vec![EdgeState::Empty; lat.edge_count()];
        for (list, s) in [
            (&j.occupied, EdgeState::Occupied),
            (&j.undetermined, EdgeState::Undetermined),
        ] {
            for d in list {
                let r = EdgeRef::try_from(d)?;
                let e = lat
                    .index_of(r)
                    .ok_or_else(|| Error::Parse(format!("no such edge {d:?} for n = {}", j.n)))?;
                states[e] = s;
            }
        }
        Ok(Self { n: j.n, states })
    }

    /// Canonical JSON text.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("grid JSON serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: GridJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }

    /// Text dump: `o` vertices, `-`/`|` occupied, `.`/`:` undetermined, blank empty.
    pub fn ascii(&self) -> String {
        let n = self.n;
        let lat = self.lattice();
        let w = 2 * n + 1;
        let mut canvas = vec![vec![' '; w]; w];
        let glyph = |e: usize, horizontal: bool| match (self.get(e), horizontal) {
            (EdgeState::Occupied, true) => '-',
            (EdgeState::Occupied, false) => '|',
            (EdgeState::Undetermined, true) => '.',
            (EdgeState::Undetermined, false) => ':',
            (EdgeState::Empty, _) => ' ',
        };
        // canvas row 0 is the top
        let at = |x: usize, y: usize| (2 * (n - 1 - y) + 1, 2 * x + 1);
        for y in 0..n {
            for x in 0..n {
                let (r, c) = at(x, y);
                canvas[r][c] = 'o';
                canvas[r][c + 1] = glyph(lat.edge_at((x, y), Dir::E), true);
                canvas[r - 1][c] = glyph(lat.edge_at((x, y), Dir::N), false);
                if x == 0 {
                    canvas[r][c - 1] = glyph(lat.edge_at((x, y), Dir::W), true);
                }
                if y == 0 {
                    canvas[r + 1][c] = glyph(lat.edge_at((x, y), Dir::S), false);
                }
            }
        }
        let mut out = String::new();
        for row in canvas {
            let line: String = row.into_iter().collect();
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for FplGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ascii())
    }
}

/// `["H" | "V" | "X", i, j]`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeDescriptor(pub String, pub i32, pub i32);

impl From<EdgeRef> for EdgeDescriptor {
    fn from(r: EdgeRef) -> Self {
        let k = match r.kind {
            EdgeKind::H => "H",
            EdgeKind::V => "V",
            EdgeKind::X => "X",
        };
        EdgeDescriptor(k.to_string(), r.i, r.j)
    }
}

impl TryFrom<&EdgeDescriptor> for EdgeRef {
    type Error = Error;

    fn try_from(d: &EdgeDescriptor) -> Result<Self> {
        let kind = match d.0.as_str() {
            "H" => EdgeKind::H,
            "V" => EdgeKind::V,
            "X" => EdgeKind::X,
            other => return Err(Error::Parse(format!("unknown edge kind {other:?}"))),
        };
        Ok(EdgeRef::new(kind, d.1, d.2))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridJson {
    pub n: usize,
    pub occupied: Vec<EdgeDescriptor>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub undetermined: Vec<EdgeDescriptor>,
}

/// Non-crossing pairing of the `2n` occupied external edges.
///
/// Occupied edges are labelled `0..2n` counterclockwise in perimeter order;
/// label `k` sits at perimeter position `2k + parity`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkPattern {
    parity: u8,
    partner: Vec<usize>,
}

impl LinkPattern {
    pub fn new(parity: u8, partner: Vec<usize>) -> Result<Self> {
        let m = partner.len();
        if !m.is_multiple_of(2) || parity > 1 {
            return Err(Error::InvalidGrid("malformed link pattern".into()));
        }
        for (i, &j) in partner.iter().enumerate() {
            if j >= m || j == i || partner[j] != i {
                return Err(Error::InvalidGrid(format!(
                    "label {i} is not properly paired"
                )));
            }
        }
        Ok(Self { parity, partner })
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    /// Number of labels, `2n`.
    pub fn len(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    pub fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }

    pub fn position(&self, label: usize) -> usize {
        2 * label + self.parity as usize
    }

    /// Arcs `(i, j)` with `i < j`, sorted.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter(|&i| i < self.partner[i])
            .map(|i| (i, self.partner[i]))
            .collect()
    }

    pub fn is_noncrossing(&self) -> bool {
        let arcs = self.arcs();
        arcs.iter().all(|&(i, j)| {
            arcs.iter()
                .all(|&(k, l)| !(i < k && k < j && j < l))
        })
    }

    /// Pattern with every label shifted by `k` (mod `2n`).
    pub fn rotated(&self, k: isize) -> LinkPattern {
        let m = self.len() as isize;
        let sh = |i: usize| ((i as isize + k).rem_euclid(m)) as usize;
        let mut partner = vec![0; self.len()];
        for i in 0..self.len() {
            partner[sh(i)] = sh(self.partner[i]);
        }
        LinkPattern {
            parity: self.parity,
            partner,
        }
    }
}

/// Traces every path between occupied external edges.
pub fn link_pattern(g: &FplGrid) -> Result<LinkPattern> {
    g.validate()?;
    let lat = g.lattice();
    let parity = g.parity().expect("validated grid alternates");
    let n = g.n;
    let mut partner = vec![usize::MAX; 2 * n];
    for label in 0..2 * n {
        if partner[label] != usize::MAX {
            continue;
        }
        let start = lat.ext(2 * label + parity as usize);
        let end = trace_path(g, start);
        let p = lat.ext_position(end).expect("paths end on external edges");
        let other = (p - parity as usize) / 2;
        partner[label] = other;
        partner[other] = label;
    }
    LinkPattern::new(parity, partner)
}

/// Follows the path entering through external edge `start`; returns the
/// external edge it leaves through.
fn trace_path(g: &FplGrid, start: usize) -> usize {
    let lat = g.lattice();
    let (mut v, _) = lat.ends(start);
    let mut came = start;
    loop {
        let next = lat
            .incident(v)
            .into_iter()
            .find(|&e| e != came && g.is_occupied(e))
            .expect("degree-2 vertex has a second edge");
        match lat.other_end(next, v) {
            Some(w) => {
                came = next;
                v = w;
            }
            None => return next,
        }
    }
}

/// Number of closed cycles of occupied edges.
pub fn internal_loop_count(g: &FplGrid) -> Result<usize> {
    g.validate()?;
    let lat = g.lattice();
    let n = g.n;
    let mut seen = vec![false; n * n];
    let idx = |v: Vertex| v.1 * n + v.0;
    // mark vertices on open paths
    for p in 0..4 * n {
        let e = lat.ext(p);
        if !g.is_occupied(e) {
            continue;
        }
        let (mut v, _) = lat.ends(e);
        let mut came = e;
        loop {
            seen[idx(v)] = true;
            let next = lat
                .incident(v)
                .into_iter()
                .find(|&f| f != came && g.is_occupied(f))
                .expect("degree 2");
            match lat.other_end(next, v) {
                Some(w) => {
                    came = next;
                    v = w;
                }
                None => break,
            }
        }
    }
    let mut loops = 0;
    for y in 0..n {
        for x in 0..n {
            if seen[idx((x, y))] {
                continue;
            }
            loops += 1;
            let mut stack = vec![(x, y)];
            seen[idx((x, y))] = true;
            while let Some(v) = stack.pop() {
                for e in lat.incident(v) {
                    if let (true, Some(w)) = (g.is_occupied(e), lat.other_end(e, v)) {
                        if !seen[idx(w)] {
                            seen[idx(w)] = true;
                            stack.push(w);
                        }
                    }
                }
            }
        }
    }
    Ok(loops)
}

/// One bundle of nested arches around an unoccupied external edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bundle {
    /// Perimeter position of the central unoccupied external edge.
    pub center: usize,
    /// Number of nested arches.
    pub size: usize,
}

/// A link pattern made of exactly three nested bundles, listed by center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThreeBundles {
    pub n: usize,
    pub parity: u8,
    pub bundles: [Bundle; 3],
}

/// Recognizes patterns made of three nested families of arches, each
/// non-empty.
pub fn is_type_abc(p: &LinkPattern) -> Option<ThreeBundles> {
    let m = p.len();
    if m < 6 {
        return None;
    }
    let n = m / 2;
    let mut bundles = Vec::new();
    for i in 0..m {
        let j = (i + 1) % m;
        if p.partner(i) != j {
            continue;
        }
        // innermost arch (i, i + 1); grow outward while arches stay nested
        let mut size = 1;
        while size < n {
            let lo = (i + m - size) % m;
            let hi = (j + size) % m;
            if p.partner(lo) != hi {
                break;
            }
            size += 1;
        }
        let center = (p.position(i) + 1) % (4 * n);
        bundles.push(Bundle { center, size });
    }
    if bundles.len() != 3 || bundles.iter().map(|b| b.size).sum::<usize>() != n {
        return None;
    }
    bundles.sort();
    Some(ThreeBundles {
        n,
        parity: p.parity(),
        bundles: [bundles[0], bundles[1], bundles[2]],
    })
}

impl ThreeBundles {
    /// Bundle decomposition implied by three unoccupied centers.
    ///
    /// The number of occupied external edges between two consecutive centers
    /// is the sum of their bundle sizes.
    pub fn from_centers(n: usize, centers: [usize; 3]) -> Result<Self> {
        let mut c = centers;
        c.sort();
        let perim = 4 * n;
        if c[2] >= perim || c[0] == c[1] || c[1] == c[2] {
            return Err(Error::InvalidTriple(format!(
                "centers {centers:?} must be distinct positions below {perim}"
            )));
        }
        if c[0] % 2 != c[1] % 2 || c[1] % 2 != c[2] % 2 {
            return Err(Error::InvalidTriple(format!(
                "centers {centers:?} do not share an alternation class"
            )));
        }
        let parity = ((c[0] + 1) % 2) as u8;
        // occupied edges strictly between consecutive centers
        let gaps = [
            (c[1] - c[0]) / 2,
            (c[2] - c[1]) / 2,
            (c[0] + perim - c[2]) / 2,
        ];
        // size of the bundle at c[k] is n minus the gap opposite to it
        let sizes = [n as isize - gaps[1] as isize, n as isize - gaps[2] as isize, n as isize - gaps[0] as isize];
        if sizes.iter().any(|&s| s < 1) {
            return Err(Error::InvalidTriple(format!(
                "centers {centers:?} give non-positive bundle sizes {sizes:?}"
            )));
        }
        let bundles = [0, 1, 2].map(|k| Bundle {
            center: c[k],
            size: sizes[k] as usize,
        });
        Ok(Self {
            n,
            parity,
            bundles,
        })
    }

    /// The link pattern with these bundles.
    pub fn link_pattern(&self) -> LinkPattern {
        let m = 2 * self.n;
        let mut partner = vec![0; m];
        for b in self.bundles {
            // label just before the center
            let inner = (b.center + 4 * self.n - 1 - self.parity as usize) % (4 * self.n) / 2;
            for k in 0..b.size {
                let lo = (inner + m - k) % m;
                let hi = (inner + 1 + k) % m;
                partner[lo] = hi;
                partner[hi] = lo;
            }
        }
        LinkPattern::new(self.parity, partner).expect("bundles form a pairing")
    }
}

/// Every FPL with boundary parity 0, for `n` up to [`DEFAULT_ORACLE_BOUND`].
pub fn enumerate_all_fpl(n: usize) -> Result<Vec<FplGrid>> {
    enumerate_fpl(n, 0, DEFAULT_ORACLE_BOUND)
}

/// Exhaustive backtracking over vertices in row-major order.
///
/// At each vertex the west and south edges are already decided, so only the
/// east and north edges are chosen; a branch dies as soon as the vertex cannot
/// reach degree 2.
pub fn enumerate_fpl(n: usize, parity: u8, bound: usize) -> Result<Vec<FplGrid>> {
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "n",
            value: n,
            bound,
        });
    }
    let mut grid = boundary(n, parity);
    let mut out = Vec::new();
    backtrack(&mut grid, 0, &mut out);
    Ok(out)
}

fn backtrack(g: &mut FplGrid, k: usize, out: &mut Vec<FplGrid>) {
    let n = g.n;
    if k == n * n {
        out.push(g.clone());
        return;
    }
    let lat = g.lattice();
    let v = (k % n, k / n);
    let mut have = 0;
    let mut free = Vec::with_capacity(2);
    for e in lat.incident(v) {
        match g.get(e) {
            EdgeState::Occupied => have += 1,
            EdgeState::Undetermined => free.push(e),
            EdgeState::Empty => {}
        }
    }
    if have > 2 || have + free.len() < 2 {
        return;
    }
    let need = 2 - have;
    let choices = free.len();
    for mask in 0u32..(1 << choices) {
        if mask.count_ones() as usize != need {
            continue;
        }
        for (b, &e) in free.iter().enumerate() {
            let s = if mask >> b & 1 == 1 {
                EdgeState::Occupied
            } else {
                EdgeState::Empty
            };
            g.set(e, s);
        }
        backtrack(g, k + 1, out);
    }
    for &e in &free {
        g.set(e, EdgeState::Undetermined);
    }
}

/// Groups grids by link pattern.
pub fn partition_by_pattern(grids: &[FplGrid]) -> Result<BTreeMap<LinkPattern, usize>> {
    let mut m = BTreeMap::new();
    for g in grids {
        *m.entry(link_pattern(g)?).or_insert(0) += 1;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_alternates() {
        let g = boundary(1, 0);
        assert_eq!(g.count(EdgeState::Occupied), 2);
        assert_eq!(g.states().len(), 4);
        for (parity, want) in [(0u8, 0usize), (1, 1)] {
            let g = boundary(3, parity);
            let lat = g.lattice();
            assert_eq!(g.count(EdgeState::Occupied), 6);
            assert_eq!(g.count(EdgeState::Undetermined), 12);
            for p in 0..12 {
                assert_eq!(g.is_occupied(lat.ext(p)), p % 2 == want);
            }
            assert_eq!(g.parity(), Some(parity));
        }
    }

    #[test]
    fn edge_counts_and_refs_round_trip() {
        for n in 1..6 {
            let lat = Lattice::new(n);
            assert_eq!(lat.internal_h_count(), n * (n - 1));
            assert_eq!(lat.edge_count() - lat.internal_count(), 4 * n);
            for e in 0..lat.edge_count() {
                assert_eq!(lat.index_of(lat.edge_ref(e)), Some(e));
            }
            for p in 0..4 * n {
                let (v, d) = lat.stub(p);
                assert_eq!(lat.stub_position(v, d), Some(p));
            }
        }
    }

    #[test]
    fn single_vertex() {
        let all = enumerate_all_fpl(1).unwrap();
        assert_eq!(all.len(), 1);
        let lp = link_pattern(&all[0]).unwrap();
        assert_eq!(lp.arcs(), vec![(0, 1)]);
        assert_eq!(internal_loop_count(&all[0]).unwrap(), 0);
    }

    #[test]
    fn oracle_counts() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| enumerate_all_fpl(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 7, 42, 429]);
        assert!(matches!(
            enumerate_all_fpl(7),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn central_four_cycle_is_one_loop() {
        // n = 4: a ring through the boundary vertices around a central square
        let n = 4;
        let mut g = boundary(n, 0);
        let lat = g.lattice();
        for e in 0..lat.internal_count() {
            g.set(e, EdgeState::Empty);
        }
        for e in [lat.h(1, 1), lat.h(1, 2), lat.v(1, 1), lat.v(2, 1)] {
            g.set(e, EdgeState::Occupied);
        }
        for e in [
            lat.h(0, 0),
            lat.h(1, 0),
            lat.v(3, 0),
            lat.v(3, 1),
            lat.h(1, 3),
            lat.h(2, 3),
            lat.v(0, 1),
            lat.v(0, 2),
        ] {
            g.set(e, EdgeState::Occupied);
        }
        g.validate().unwrap();
        assert_eq!(internal_loop_count(&g).unwrap(), 1);
    }

    #[test]
    fn invalid_grid_is_rejected() {
        let g = boundary(2, 0);
        assert!(link_pattern(&g).is_err());
        assert!(internal_loop_count(&g).is_err());
    }

    #[test]
    fn patterns_are_noncrossing_catalan() {
        let all = enumerate_all_fpl(3).unwrap();
        let by = partition_by_pattern(&all).unwrap();
        assert_eq!(by.len(), 5);
        assert_eq!(by.values().sum::<usize>(), 7);
        assert!(by.keys().all(|p| p.is_noncrossing()));
    }

    #[test]
    fn three_singleton_bundles() {
        let lp = LinkPattern::new(0, vec![5, 2, 1, 4, 3, 0]).unwrap();
        let t = is_type_abc(&lp).unwrap();
        assert_eq!(t.bundles.map(|b| b.size), [1, 1, 1]);
        assert_eq!(t.bundles.map(|b| b.center), [3, 7, 11]);
        assert_eq!(ThreeBundles::from_centers(3, [3, 7, 11]).unwrap(), t);
        assert_eq!(t.link_pattern(), lp);
    }

    #[test]
    fn fully_nested_is_rejected() {
        // one bundle of 3 arches
        let lp = LinkPattern::new(0, vec![5, 4, 3, 2, 1, 0]).unwrap();
        assert_eq!(is_type_abc(&lp), None);
        // two bundles
        let lp = LinkPattern::new(0, vec![3, 2, 1, 0]).unwrap();
        assert_eq!(is_type_abc(&lp), None);
    }

    #[test]
    fn json_round_trip() {
        for g in enumerate_all_fpl(3).unwrap() {
            let s = g.to_json_string();
            assert_eq!(FplGrid::from_json_str(&s).unwrap(), g);
        }
        let partial = boundary(2, 1);
        assert_eq!(
            FplGrid::from_json_str(&partial.to_json_string()).unwrap(),
            partial
        );
        assert!(FplGrid::from_json_str(r#"{"n":2,"occupied":[["H",5,0]]}"#).is_err());
    }
}
