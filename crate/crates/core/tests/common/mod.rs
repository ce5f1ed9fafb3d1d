//! Brute-force references written without the library's solvers.
//!
//! Edges are named by their midpoints in doubled coordinates, so vertex
//! `(x, y)` is `(2x, 2y)` and the edge towards `(x+1, y)` is `(2x+1, 2y)`.
//! External edges stick out of the square and have midpoints outside it.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use fplpp::grid::{EdgeState, FplGrid};

pub type Mid = (i64, i64);
pub type Config = BTreeSet<Mid>;

/// Midpoint of the external edge at perimeter position `p`.
pub fn ext_mid(n: usize, p: usize) -> Mid {
    let n = n as i64;
    let p = p as i64;
    match p / n {
        0 => (2 * p, -1),
        1 => (2 * n - 1, 2 * (p - n)),
        2 => (2 * (3 * n - 1 - p), 2 * n - 1),
        _ => (-1, 2 * (4 * n - 1 - p)),
    }
}

/// Every fully packed loop configuration with the given boundary parity,
/// by filling rows bottom to top and vertices left to right.
pub fn brute_fpl(n: usize, parity: usize) -> Vec<Config> {
    let ext: HashMap<Mid, bool> = (0..4 * n).map(|p| (ext_mid(n, p), p % 2 == parity)).collect();
    let mut out = Vec::new();
    let mut chosen = BTreeSet::new();
    fill(n, 0, &ext, &mut chosen, &mut out);
    out
}

fn fill(n: usize, k: usize, ext: &HashMap<Mid, bool>, chosen: &mut Config, out: &mut Vec<Config>) {
    if k == n * n {
        let mut c = chosen.clone();
        c.extend(ext.iter().filter(|(_, &on)| on).map(|(&m, _)| m));
        out.push(c);
        return;
    }
    let (x, y) = ((k % n) as i64, (k / n) as i64);
    let state = |m: Mid, chosen: &Config| ext.get(&m).copied().unwrap_or_else(|| chosen.contains(&m));
    let w = (2 * x - 1, 2 * y);
    let s = (2 * x, 2 * y - 1);
    let e = (2 * x + 1, 2 * y);
    let nn = (2 * x, 2 * y + 1);
    let have = state(w, chosen) as usize + state(s, chosen) as usize;
    let options = |m: Mid| -> Vec<bool> {
        match ext.get(&m) {
            Some(&fixed) => vec![fixed],
            None => vec![false, true],
        }
    };
    for oe in options(e) {
        for on in options(nn) {
            if have + oe as usize + on as usize != 2 {
                continue;
            }
            let add: Vec<Mid> = [(e, oe), (nn, on)]
                .into_iter()
                .filter(|&(m, o)| o && !ext.contains_key(&m))
                .map(|(m, _)| m)
                .collect();
            chosen.extend(add.iter().copied());
            fill(n, k + 1, ext, chosen, out);
            for m in add {
                chosen.remove(&m);
            }
        }
    }
}

fn ends(m: Mid) -> [Mid; 2] {
    if m.0 % 2 != 0 {
        [(m.0 - 1, m.1), (m.0 + 1, m.1)]
    } else {
        [(m.0, m.1 - 1), (m.0, m.1 + 1)]
    }
}

fn incident(v: Mid) -> [Mid; 4] {
    [(v.0 + 1, v.1), (v.0, v.1 + 1), (v.0 - 1, v.1), (v.0, v.1 - 1)]
}

/// Partner perimeter position of every occupied external edge.
pub fn pairing(n: usize, c: &Config) -> BTreeMap<usize, usize> {
    let pos: HashMap<Mid, usize> = (0..4 * n).map(|p| (ext_mid(n, p), p)).collect();
    let inside = |v: Mid| v.0 >= 0 && v.1 >= 0 && v.0 < 2 * n as i64 && v.1 < 2 * n as i64;
    let mut out = BTreeMap::new();
    for p in 0..4 * n {
        let start = ext_mid(n, p);
        if !c.contains(&start) || out.contains_key(&p) {
            continue;
        }
        let mut edge = start;
        let mut v = *ends(edge).iter().find(|&&v| inside(v)).unwrap();
        loop {
            let next = *incident(v).iter().find(|&&m| m != edge && c.contains(&m)).unwrap();
            if let Some(&q) = pos.get(&next) {
                out.insert(p, q);
                out.insert(q, p);
                break;
            }
            edge = next;
            v = *ends(edge).iter().find(|&&w| w != v).unwrap();
        }
    }
    out
}

/// Closed loops: occupied internal edges not reached from the boundary.
pub fn loop_count(n: usize, c: &Config) -> usize {
    let inside = |v: Mid| v.0 >= 0 && v.1 >= 0 && v.0 < 2 * n as i64 && v.1 < 2 * n as i64;
    let mut seen: BTreeSet<Mid> = BTreeSet::new();
    let mut loops = 0;
    let start_from = |m0: Mid, seen: &mut BTreeSet<Mid>| {
        let mut stack = vec![m0];
        while let Some(m) = stack.pop() {
            if !seen.insert(m) {
                continue;
            }
            for v in ends(m) {
                if inside(v) {
                    stack.extend(incident(v).into_iter().filter(|x| c.contains(x)));
                }
            }
        }
    };
    for p in 0..4 * n {
        let m = ext_mid(n, p);
        if c.contains(&m) {
            start_from(m, &mut seen);
        }
    }
    for &m in c {
        if !seen.contains(&m) {
            start_from(m, &mut seen);
            loops += 1;
        }
    }
    loops
}

/// Centers of the three nested families when the pairing has that shape.
pub fn three_bundle_centers(n: usize, pair: &BTreeMap<usize, usize>) -> Option<[usize; 3]> {
    let occ: Vec<usize> = pair.keys().copied().collect();
    let m = occ.len();
    let label: HashMap<usize, usize> = occ.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let partner = |i: usize| label[&pair[&occ[i]]];
    let mut centers = Vec::new();
    let mut covered = 0;
    #[allow(clippy::needless_range_loop)]
    for i in 0..m {
        let j = (i + 1) % m;
        if partner(i) != j {
            continue;
        }
        let mut k = 0;
        while k < m / 2 && partner((i + m - k) % m) == (j + k) % m {
            k += 1;
        }
        covered += k;
        centers.push((occ[i] + 1) % (4 * n));
    }
    if centers.len() != 3 || covered != m / 2 {
        return None;
    }
    centers.sort();
    Some([centers[0], centers[1], centers[2]])
}

/// The library's grid in midpoint form.
pub fn to_config(g: &FplGrid) -> Config {
    g.occupied_edges().map(|e| mid_of(g, e)).collect()
}

pub fn mid_of(g: &FplGrid, e: usize) -> Mid {
    let lat = g.lattice();
    match lat.ext_position(e) {
        Some(p) => ext_mid(g.n(), p),
        None => {
            let (v, w) = lat.ends(e);
            let w = w.unwrap();
            ((v.0 + w.0) as i64, (v.1 + w.1) as i64)
        }
    }
}

/// Per edge: `Some(true)` if occupied in every configuration, `Some(false)`
/// if in none, `None` otherwise.
pub fn intersection(g: &FplGrid, all: &[Config]) -> Vec<Option<bool>> {
    (0..g.lattice().edge_count())
        .map(|e| {
            let m = mid_of(g, e);
            let k = all.iter().filter(|c| c.contains(&m)).count();
            match k {
                0 => Some(false),
                k if k == all.len() => Some(true),
                _ => None,
            }
        })
        .collect()
}

pub fn forced(s: EdgeState) -> Option<bool> {
    match s {
        EdgeState::Occupied => Some(true),
        EdgeState::Empty => Some(false),
        EdgeState::Undetermined => None,
    }
}

/// All weakly decreasing `a x b` matrices with entries at most `c`.
pub fn brute_pp(a: usize, b: usize, c: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut cells = vec![0; a * b];
    pp_rec(a, b, c, 0, &mut cells, &mut out);
    out
}

fn pp_rec(a: usize, b: usize, c: usize, k: usize, cells: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
    if k == a * b {
        out.push((0..a).map(|i| cells[i * b..(i + 1) * b].to_vec()).collect());
        return;
    }
    let (i, j) = (k / b, k % b);
    let mut top = c;
    if i > 0 {
        top = top.min(cells[k - b]);
    }
    if j > 0 {
        top = top.min(cells[k - 1]);
    }
    for h in 0..=top {
        cells[k] = h;
        pp_rec(a, b, c, k + 1, cells, out);
    }
}

/// Alternating sign matrices of size 1 to 7.
pub const ASM: [usize; 7] = [1, 2, 7, 42, 429, 7436, 218348];
