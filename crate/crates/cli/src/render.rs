//! Text and SVG pictures of grids, regions, tilings and honeycomb loops.

use std::fmt::Write;

use fplpp::dynamics::HfplConfig;
use fplpp::geometry::ActiveRegion;
use fplpp::grid::{EdgeState, FplGrid};
use fplpp::partitions::{cartesian, DimerConfig, Honeycomb, Lozenge, PlanePartition, Tri};

const UNIT: f64 = 40.0;

fn svg_open(w: f64, h: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {w:.1} {h:.1}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        w.ceil(),
        h.ceil()
    )
}

fn line(out: &mut String, p: (f64, f64), q: (f64, f64), style: &str) {
    writeln!(
        out,
        "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" {style}/>",
        p.0, p.1, q.0, q.1
    )
    .unwrap();
}

fn polygon(out: &mut String, pts: &[(f64, f64)], style: &str) {
    let s: Vec<String> = pts.iter().map(|p| format!("{:.1},{:.1}", p.0, p.1)).collect();
    writeln!(out, "<polygon points=\"{}\" {style}/>", s.join(" ")).unwrap();
}

/// Square grid with an optional shading of domino cells.
pub fn grid_svg(g: &FplGrid, region: Option<&ActiveRegion>) -> String {
    let n = g.n();
    let lat = g.lattice();
    let size = (n as f64 + 1.0) * UNIT;
    // vertex (x, y) at screen ((x + 1) u, (n - y) u)
    let at = |x: f64, y: f64| ((x + 1.0) * UNIT, (n as f64 - y) * UNIT);
    let mut out = svg_open(size, size);
    if let Some(r) = region {
        for d in &r.dominos {
            for (x, y) in d.cells {
                let (x, y) = (x as f64, y as f64);
                polygon(
                    &mut out,
                    &[at(x, y), at(x + 1.0, y), at(x + 1.0, y + 1.0), at(x, y + 1.0)],
                    "fill=\"#f3d9a4\" stroke=\"none\"",
                );
            }
        }
    }
    for e in 0..lat.edge_count() {
        let (v, w) = lat.ends(e);
        let p = at(v.0 as f64, v.1 as f64);
        let q = match w {
            Some(w) => at(w.0 as f64, w.1 as f64),
            None => {
                let (_, d) = lat.stub(lat.ext_position(e).unwrap());
                let (dx, dy) = d.delta();
                at(v.0 as f64 + 0.6 * dx as f64, v.1 as f64 + 0.6 * dy as f64)
            }
        };
        let style = match g.get(e) {
            EdgeState::Occupied => "stroke=\"black\" stroke-width=\"5\" stroke-linecap=\"round\"",
            EdgeState::Undetermined => "stroke=\"#888\" stroke-width=\"2\" stroke-dasharray=\"4 4\"",
            EdgeState::Empty if w.is_some() => "stroke=\"#ddd\" stroke-width=\"1\"",
            EdgeState::Empty => continue,
        };
        line(&mut out, p, q, style);
    }
    out.push_str("</svg>\n");
    out
}

/// The grid dump with `#` in the middle of every domino cell.
pub fn grid_ascii(g: &FplGrid, region: Option<&ActiveRegion>) -> String {
    let n = g.n();
    let text = g.ascii();
    let Some(r) = region else {
        return text;
    };
    let w = 2 * n + 1;
    let mut rows: Vec<Vec<char>> = text
        .lines()
        .map(|l| {
            let mut v: Vec<char> = l.chars().collect();
            v.resize(w, ' ');
            v
        })
        .collect();
    for d in &r.dominos {
        for (x, y) in d.cells {
            rows[2 * (n - 1 - y)][2 * x + 2] = '#';
        }
    }
    let mut out = String::new();
    for row in rows {
        let s: String = row.into_iter().collect();
        out.push_str(s.trim_end());
        out.push('\n');
    }
    out
}

struct Frame {
    min: (f64, f64),
    size: (f64, f64),
}

impl Frame {
    fn new(h: &Honeycomb) -> Self {
        let pts: Vec<(f64, f64)> = h
            .vertices
            .iter()
            .flat_map(|t| t.corners())
            .map(|(s, t)| cartesian(s, t))
            .collect();
        let fold = |f: fn(f64, f64) -> f64, init: f64, k: usize| pts.iter().map(|p| if k == 0 { p.0 } else { p.1 }).fold(init, f);
        let min = (fold(f64::min, f64::MAX, 0), fold(f64::min, f64::MAX, 1));
        let max = (fold(f64::max, f64::MIN, 0), fold(f64::max, f64::MIN, 1));
        Self {
            min,
            size: ((max.0 - min.0 + 1.0) * UNIT, (max.1 - min.1 + 1.0) * UNIT),
        }
    }

    fn map(&self, p: (f64, f64)) -> (f64, f64) {
        ((p.0 - self.min.0 + 0.5) * UNIT, self.size.1 - (p.1 - self.min.1 + 0.5) * UNIT)
    }

    fn lattice(&self, (s, t): (i64, i64)) -> (f64, f64) {
        self.map(cartesian(s, t))
    }
}

fn lozenge_fill(l: Lozenge) -> &'static str {
    match l {
        Lozenge::X => "#9ecae1",
        Lozenge::Y => "#fdae6b",
        Lozenge::Z => "#e5e5e5",
    }
}

/// Lozenge tiling of a partition, seen as a stack of boxes.
pub fn tiling_svg(h: &Honeycomb, d: &DimerConfig) -> String {
    let f = Frame::new(h);
    let mut out = svg_open(f.size.0, f.size.1);
    for &e in &d.dimers {
        let (u, v) = h.edges[e];
        let (p, q) = h.shared_segment(e);
        let apex = |t: Tri| t.corners().into_iter().find(|c| *c != p && *c != q).unwrap();
        let pts = [apex(h.vertices[u]), p, apex(h.vertices[v]), q].map(|c| f.lattice(c));
        let style = format!("fill=\"{}\" stroke=\"black\" stroke-width=\"1.5\"", lozenge_fill(h.lozenge(e)));
        polygon(&mut out, &pts, &style);
    }
    out.push_str("</svg>\n");
    out
}

/// Honeycomb graph with the matched edges drawn thick.
pub fn dimers_svg(h: &Honeycomb, d: &DimerConfig) -> String {
    let f = Frame::new(h);
    let mut out = svg_open(f.size.0, f.size.1);
    for (e, &(u, v)) in h.edges.iter().enumerate() {
        let style = if d.contains(e) {
            "stroke=\"black\" stroke-width=\"6\" stroke-linecap=\"round\""
        } else {
            "stroke=\"#bbb\" stroke-width=\"1.5\""
        };
        line(&mut out, f.map(h.vertices[u].centroid()), f.map(h.vertices[v].centroid()), style);
    }
    for t in &h.vertices {
        let (x, y) = f.map(t.centroid());
        writeln!(out, "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"3\" fill=\"black\"/>").unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// Paths in blue and loops in red.
pub fn hfpl_svg(h: &Honeycomb, cfg: &HfplConfig) -> String {
    let f = Frame::new(h);
    let mut out = svg_open(f.size.0, f.size.1);
    let mut on_loop = vec![false; h.vertices.len()];
    for l in &cfg.loops {
        for &v in l {
            on_loop[v] = true;
        }
    }
    let colour = |v: usize| if on_loop[v] { "#d62728" } else { "#1f77b4" };
    for &e in &cfg.edges {
        let (u, v) = h.edges[e];
        let style = format!("stroke=\"{}\" stroke-width=\"4\" stroke-linecap=\"round\"", colour(u));
        line(&mut out, f.map(h.vertices[u].centroid()), f.map(h.vertices[v].centroid()), &style);
    }
    for s in &cfg.stubs {
        let (p, q) = (cartesian(s.side.0 .0, s.side.0 .1), cartesian(s.side.1 .0, s.side.1 .1));
        let mid = f.map(((p.0 + q.0) / 2.0, (p.1 + q.1) / 2.0));
        let style = format!("stroke=\"{}\" stroke-width=\"4\" stroke-linecap=\"round\"", colour(s.vertex));
        line(&mut out, f.map(h.vertices[s.vertex].centroid()), mid, &style);
    }
    out.push_str("</svg>\n");
    out
}

/// One character per triangle, row by row from the top of the hexagon.
fn triangle_rows(h: &Honeycomb, glyph: impl Fn(usize) -> char) -> String {
    let (b, c) = (h.b as i64, h.c as i64);
    let col = |t: Tri| match t {
        Tri::Up(s, t) => 2 * s + t,
        Tri::Down(s, t) => 2 * s + t + 1,
    };
    let offset = h.vertices.iter().map(|&t| col(t)).min().unwrap_or(0);
    let mut out = String::new();
    for row in (-c..b).rev() {
        let mut line: Vec<char> = Vec::new();
        let mut cells: Vec<(i64, usize)> = h
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, t)| matches!(t, Tri::Up(_, r) | Tri::Down(_, r) if *r == row))
            .map(|(i, &t)| (col(t) - offset, i))
            .collect();
        cells.sort();
        for (k, i) in cells {
            let k = k as usize;
            if line.len() <= k {
                line.resize(k + 1, ' ');
            }
            line[k] = glyph(i);
        }
        out.extend(line);
        out.push('\n');
    }
    out
}

/// Lozenge letters `x`, `y`, `z` on the triangles they cover.
pub fn tiling_ascii(h: &Honeycomb, d: &DimerConfig) -> String {
    let mut letter = vec![' '; h.vertices.len()];
    for &e in &d.dimers {
        let ch = match h.lozenge(e) {
            Lozenge::X => 'x',
            Lozenge::Y => 'y',
            Lozenge::Z => 'z',
        };
        let (u, v) = h.edges[e];
        letter[u] = ch;
        letter[v] = ch;
    }
    triangle_rows(h, |i| letter[i])
}

pub fn hfpl_ascii(h: &Honeycomb, cfg: &HfplConfig) -> String {
    const NAMES: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    let mut mark = vec!['?'; h.vertices.len()];
    for (k, p) in cfg.paths.iter().enumerate() {
        for &v in p {
            mark[v] = NAMES[k % NAMES.len()] as char;
        }
    }
    for l in &cfg.loops {
        for &v in l {
            mark[v] = 'O';
        }
    }
    let mut out = format!(
        "paths {} loops {}\n",
        cfg.paths.len(),
        cfg.internal_loop_count()
    );
    out.push_str(&triangle_rows(h, |i| mark[i]));
    out
}

pub fn pp_ascii(pp: &PlanePartition) -> String {
    format!("{pp}")
}
