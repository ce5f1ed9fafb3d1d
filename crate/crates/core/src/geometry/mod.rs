//! Geometry of a three-bundle configuration: which bundle center sees the
//! other two, the diagonals through the centers, the polygons they cut out,
//! the forced edges and the domino region.

pub mod fixed;
pub mod region;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Dir, EdgeKind, EdgeState, FplGrid, Lattice, ThreeBundles, Vertex};

pub use fixed::{degier_step, Arches};
pub use region::{active_region, active_region_candidates, ActiveRegion, Domino};

/// A point in doubled lattice coordinates, so that edge midpoints and
/// diagonal crossings are integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x2: i64,
    pub y2: i64,
}

impl Point {
    pub fn new(x2: i64, y2: i64) -> Self {
        Self { x2, y2 }
    }

    pub fn vertex(v: Vertex) -> Self {
        Self::new(2 * v.0 as i64, 2 * v.1 as i64)
    }

    /// Midpoint of an internal or external edge.
    pub fn midpoint(lat: &Lattice, e: usize) -> Self {
        let (u, w) = lat.ends(e);
        let a = Self::vertex(u);
        match w {
            Some(w) => {
                let b = Self::vertex(w);
                Self::new((a.x2 + b.x2) / 2, (a.y2 + b.y2) / 2)
            }
            None => {
                let p = lat.ext_position(e).expect("edge without a second end is external");
                let (dx, dy) = lat.stub(p).1.delta();
                Self::new(a.x2 + dx as i64, a.y2 + dy as i64)
            }
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = |v: i64| {
            if v % 2 == 0 {
                format!("{}", v / 2)
            } else {
                format!("{}.5", (v - 1) / 2)
            }
        };
        write!(f, "({}, {})", half(self.x2), half(self.y2))
    }
}

/// An element of the symmetry group of the square: `quarter_turns`
/// counterclockwise rotations followed by an optional left-right mirror.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symmetry {
    pub quarter_turns: u8,
    pub mirror: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry {
        quarter_turns: 0,
        mirror: false,
    };

    pub fn all() -> impl Iterator<Item = Symmetry> {
        (0..8).map(|k| Symmetry {
            quarter_turns: k % 4,
            mirror: k >= 4,
        })
    }

    /// Acts on doubled coordinates of an `n x n` grid.
    pub fn apply(self, n: usize, p: Point) -> Point {
        let m = 2 * (n as i64 - 1);
        let (mut x, mut y) = (p.x2, p.y2);
        for _ in 0..self.quarter_turns {
            (x, y) = (m - y, x);
        }
        if self.mirror {
            x = m - x;
        }
        Point::new(x, y)
    }

    pub fn inverse(self) -> Symmetry {
        if self.mirror {
            // a mirrored rotation is an involution
            self
        } else {
            Symmetry {
                quarter_turns: (4 - self.quarter_turns) % 4,
                mirror: false,
            }
        }
    }

    pub fn apply_vertex(self, n: usize, v: Vertex) -> Vertex {
        let p = self.apply(n, Point::vertex(v));
        ((p.x2 / 2) as usize, (p.y2 / 2) as usize)
    }

    pub fn apply_dir(self, d: Dir) -> Dir {
        let mut k = d as usize + self.quarter_turns as usize;
        if self.mirror && k.is_multiple_of(2) {
            k += 2;
        }
        Dir::ALL[k % 4]
    }

    /// Image of a perimeter position.
    pub fn apply_position(self, n: usize, p: usize) -> usize {
        let lat = Lattice::new(n);
        let (v, d) = lat.stub(p);
        lat.stub_position(self.apply_vertex(n, v), self.apply_dir(d))
            .expect("symmetries map the boundary to itself")
    }

    /// Image of an edge index.
    pub fn apply_edge(self, n: usize, e: usize) -> usize {
        let lat = Lattice::new(n);
        match lat.ext_position(e) {
            Some(p) => lat.ext(self.apply_position(n, p)),
            None => {
                let (u, w) = lat.ends(e);
                let (u, w) = (self.apply_vertex(n, u), self.apply_vertex(n, w.unwrap()));
                let (lo, hi) = (u.min(w), u.max(w));
                if lo.1 == hi.1 {
                    lat.h(lo.0.min(hi.0), lo.1)
                } else {
                    lat.v(lo.0, lo.1.min(hi.1))
                }
            }
        }
    }

    pub fn apply_grid(self, g: &FplGrid) -> FplGrid {
        let n = g.n();
        let mut states = vec![EdgeState::Empty; g.states().len()];
        for (e, &s) in g.states().iter().enumerate() {
            states[self.apply_edge(n, e)] = s;
        }
        FplGrid::from_states(n, states).expect("same size")
    }
}

/// Where the two other centers sit relative to the side of `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    /// Both on the opposite side.
    Opposite,
    /// `A` opposite, `B` on an adjacent side.
    Mixed,
    /// On the two sides adjacent to `C`.
    Adjacent,
}

impl Case {
    pub fn roman(self) -> &'static str {
        match self {
            Case::Opposite => "i",
            Case::Mixed => "ii",
            Case::Adjacent => "iii",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.roman())
    }
}

/// Sides of the square, in counterclockwise order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

pub fn side_of(n: usize, p: usize) -> Side {
    [Side::Bottom, Side::Right, Side::Top, Side::Left][p / n]
}

/// The classified geometry. Points are stored in the normalized frame,
/// where `C` is on the bottom side; `symmetry` maps the original grid to
/// that frame.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchGeometry {
    pub n: usize,
    /// Original perimeter positions of the centers.
    pub pos_a: usize,
    pub pos_b: usize,
    pub pos_c: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub case: Case,
    pub symmetry: Symmetry,
    pub pt_a: Point,
    pub pt_b: Point,
    pub pt_c: Point,
    pub a1: Point,
    pub a2: Point,
    pub b1: Point,
    pub b2: Point,
    pub c1: Point,
    pub c2: Point,
    pub d: Point,
}

/// The parts of a geometry that do not depend on how the input was placed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    pub n: usize,
    pub abc: (usize, usize, usize),
    pub case: Case,
    pub points: [Point; 10],
}

impl ArchGeometry {
    /// `A, A', A'', B, B', B'', C, C', C'', D`.
    pub fn points(&self) -> [Point; 10] {
        [
            self.pt_a, self.a1, self.a2, self.pt_b, self.b1, self.b2, self.pt_c, self.c1, self.c2,
            self.d,
        ]
    }

    pub fn shape(&self) -> Shape {
        Shape {
            n: self.n,
            abc: (self.a, self.b, self.c),
            case: self.case,
            points: self.points(),
        }
    }

    pub fn centers(&self) -> [usize; 3] {
        [self.pos_a, self.pos_b, self.pos_c]
    }

    pub fn bundles(&self) -> ThreeBundles {
        ThreeBundles::from_centers(self.n, self.centers()).expect("validated by classify")
    }

    /// Polygon `P`, counterclockwise, normalized frame.
    pub fn polygon_p(&self) -> Vec<Point> {
        let (a, a1, c1, c, c2, b, b2) = (
            self.pt_a, self.a1, self.c1, self.pt_c, self.c2, self.pt_b, self.b2,
        );
        match self.case {
            Case::Opposite => vec![a, a1, c1, c, c2, b2, b],
            Case::Mixed => vec![a, a1, c1, c, c2, b, b2],
            Case::Adjacent => vec![a1, a, c1, c, c2, b, b2],
        }
    }

    /// Polygon `P'`: `P` with `C` replaced by `B' D A''`.
    pub fn polygon_p_prime(&self) -> Vec<Point> {
        self.polygon_p()
            .into_iter()
            .flat_map(|p| {
                if p == self.pt_c {
                    vec![self.b1, self.d, self.a2]
                } else {
                    vec![p]
                }
            })
            .collect()
    }

    /// The rectangle `C B' D A''`.
    pub fn rectangle(&self) -> [Point; 4] {
        [self.pt_c, self.b1, self.d, self.a2]
    }

    pub fn to_original(&self, p: Point) -> Point {
        self.symmetry.inverse().apply(self.n, p)
    }

    pub fn to_normalized(&self, p: Point) -> Point {
        self.symmetry.apply(self.n, p)
    }
}

/// Whether `p` lies in the closed cone of the center at perimeter position
/// `center`: at least as far inward as it is sideways.
fn in_cone(n: usize, center: usize, p: Point) -> bool {
    let s = Symmetry {
        quarter_turns: bottom_turns(n, center),
        mirror: false,
    };
    let c = s.apply(n, Point::vertex(Lattice::new(n).stub(center).0));
    let q = s.apply(n, p);
    q.y2 >= (q.x2 - c.x2).abs()
}

/// Quarter turns bringing the side of `p` to the bottom.
fn bottom_turns(n: usize, p: usize) -> u8 {
    ((4 - p / n) % 4) as u8
}

fn on_side(n: usize, p: Point) -> bool {
    let m = 2 * (n as i64 - 1);
    p.x2 == 0 || p.y2 == 0 || p.x2 == m || p.y2 == m
}

/// Walks from `start` along `dir` (a diagonal, in half steps) and stops at the
/// first side of the square or diagonal through `c` that it reaches; lines
/// parallel to the walk are ignored.
fn ray(n: usize, start: Point, dir: (i64, i64), c: Point) -> Point {
    let m = 2 * (n as i64 - 1);
    let mut p = start;
    loop {
        let q = Point::new(p.x2 + dir.0, p.y2 + dir.1);
        if q.x2 < 0 || q.y2 < 0 || q.x2 > m || q.y2 > m {
            return p;
        }
        p = q;
        // the diagonal x + y = const is parallel to steps with dx = -dy
        let hits_sum = dir.0 == dir.1 && p.x2 + p.y2 == c.x2 + c.y2;
        let hits_diff = dir.0 != dir.1 && p.x2 - p.y2 == c.x2 - c.y2;
        if on_side(n, p) || hits_sum || hits_diff {
            return p;
        }
    }
}

/// Classifies three bundle centers given as perimeter positions.
pub fn classify(n: usize, centers: [usize; 3]) -> Result<ArchGeometry> {
    let tb = ThreeBundles::from_centers(n, centers)?;
    let lat = Lattice::new(n);
    let size_at = |p: usize| tb.bundles.iter().find(|b| b.center == p).unwrap().size;
    let vertex_pt = |p: usize| Point::vertex(lat.stub(p).0);

    let cone_centers: Vec<usize> = centers
        .iter()
        .copied()
        .filter(|&c| {
            centers
                .iter()
                .filter(|&&o| o != c)
                .all(|&o| in_cone(n, c, vertex_pt(o)))
        })
        .collect();
    let &[pos_c] = cone_centers.as_slice() else {
        return Err(Error::InvalidTriple(format!(
            "{} centers see the other two in their cone, expected exactly one",
            cone_centers.len()
        )));
    };

    let mut best: Option<ArchGeometry> = None;
    for mirror in [false, true] {
        let sym = Symmetry {
            quarter_turns: bottom_turns(n, pos_c),
            mirror,
        };
        let np = |p: usize| sym.apply_position(n, p);
        let c_norm = np(pos_c);
        // clockwise from C is decreasing position
        let mut others: Vec<usize> = centers.iter().copied().filter(|&p| p != pos_c).collect();
        others.sort_by_key(|&p| (c_norm + 4 * n - np(p)) % (4 * n));
        let (pos_a, pos_b) = (others[0], others[1]);
        let (sa, sb) = (side_of(n, np(pos_a)), side_of(n, np(pos_b)));
        let case = match (sa, sb) {
            (Side::Top, Side::Top) => Case::Opposite,
            (Side::Top, Side::Right) => Case::Mixed,
            (Side::Left, Side::Top) => continue,
            (Side::Left, Side::Right) => Case::Adjacent,
            _ => {
                return Err(Error::InvalidTriple(format!(
                    "centers at {sa:?} and {sb:?} relative to the cone center"
                )))
            }
        };
        let pt_a = sym.apply(n, vertex_pt(pos_a));
        let pt_b = sym.apply(n, vertex_pt(pos_b));
        let pt_c = sym.apply(n, vertex_pt(pos_c));
        let m = 2 * (n as i64 - 1);
        let xc = pt_c.x2;
        let c1 = Point::new(0, xc);
        let c2 = Point::new(m, m - xc);
        let a1 = match sa {
            Side::Top => ray(n, pt_a, (-1, -1), pt_c),
            _ => ray(n, pt_a, (1, 1), pt_c),
        };
        let a2 = ray(n, pt_a, (1, -1), pt_c);
        let b1 = ray(n, pt_b, (-1, -1), pt_c);
        let b2 = match sb {
            Side::Top => ray(n, pt_b, (1, -1), pt_c),
            _ => ray(n, pt_b, (-1, 1), pt_c),
        };
        // AA'' has constant x + y, BB' constant x - y
        let (s, t) = (pt_a.x2 + pt_a.y2, pt_b.x2 - pt_b.y2);
        let d = Point::new((s + t) / 2, (s - t) / 2);
        let geo = ArchGeometry {
            n,
            pos_a,
            pos_b,
            pos_c,
            a: size_at(pos_a),
            b: size_at(pos_b),
            c: size_at(pos_c),
            case,
            symmetry: sym,
            pt_a,
            pt_b,
            pt_c,
            a1,
            a2,
            b1,
            b2,
            c1,
            c2,
            d,
        };
        let key = |g: &ArchGeometry| (g.a, g.b, g.points());
        best = match best {
            Some(prev) if key(&prev) <= key(&geo) => Some(prev),
            _ => Some(geo),
        };
    }
    best.ok_or_else(|| Error::InvalidTriple("no admissible orientation".into()))
}

/// Every triple of bundle centers with positive sizes summing to `n`, for
/// both alternation classes, sorted.
pub fn all_triples(n: usize) -> Vec<[usize; 3]> {
    let perim = 4 * n;
    let mut out = Vec::new();
    for c0 in 0..perim {
        for c1 in (c0 + 2..perim).step_by(2) {
            for c2 in (c1 + 2..perim).step_by(2) {
                if ThreeBundles::from_centers(n, [c0, c1, c2]).is_ok() {
                    out.push([c0, c1, c2]);
                }
            }
        }
    }
    out
}

/// Whether `p` lies in the closed polygon.
pub fn in_polygon(poly: &[Point], p: Point) -> bool {
    let k = poly.len();
    let mut inside = false;
    for i in 0..k {
        let (u, w) = (poly[i], poly[(i + 1) % k]);
        let cross = (w.x2 - u.x2) * (p.y2 - u.y2) - (w.y2 - u.y2) * (p.x2 - u.x2);
        let within = p.x2 >= u.x2.min(w.x2)
            && p.x2 <= u.x2.max(w.x2)
            && p.y2 >= u.y2.min(w.y2)
            && p.y2 <= u.y2.max(w.y2);
        if cross == 0 && within {
            return true;
        }
        if (u.y2 > p.y2) != (w.y2 > p.y2) {
            // x of the crossing compared with p.x2, without division
            let lhs = (p.x2 - u.x2) * (w.y2 - u.y2);
            let rhs = (w.x2 - u.x2) * (p.y2 - u.y2);
            if (w.y2 > u.y2 && lhs < rhs) || (w.y2 < u.y2 && lhs > rhs) {
                inside = !inside;
            }
        }
    }
    inside
}

/// All forced edges of the configurations of type `geo`, in the original
/// frame.
///
/// Checks that every edge outside `P'` and every edge parallel to the side
/// of `C` inside the rectangle `C B' D A''` is determined.
pub fn fixed_edges(geo: &ArchGeometry) -> Result<FplGrid> {
    type Cache = Mutex<HashMap<(usize, [usize; 3]), FplGrid>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let key = (geo.n, geo.centers());
    let cache = CACHE.get_or_init(Default::default);
    if let Some(g) = cache.lock().unwrap().get(&key) {
        return Ok(g.clone());
    }
    let g = solve_and_check(geo)?;
    cache.lock().unwrap().insert(key, g.clone());
    Ok(g)
}

fn solve_and_check(geo: &ArchGeometry) -> Result<FplGrid> {
    let n = geo.n;
    let tb = geo.bundles();
    let g = fixed::solve_fixed(n, &tb.link_pattern())?;
    let lat = Lattice::new(n);
    let outer = geo.polygon_p_prime();
    let rect = geo.rectangle();
    for e in 0..lat.edge_count() {
        if g.get(e) != EdgeState::Undetermined {
            continue;
        }
        let e_norm = geo.symmetry.apply_edge(n, e);
        let mid = Point::midpoint(&lat, e_norm);
        let horizontal = lat.edge_ref(e_norm).kind == EdgeKind::H;
        if !in_polygon(&outer, mid) || (horizontal && in_polygon(&rect, mid)) {
            let (v, _) = lat.ends(e);
            return Err(Error::Contradiction {
                x: v.0,
                y: v.1,
                reason: format!("edge {e} at {mid} was expected to be forced"),
            });
        }
    }
    Ok(g)
}
