//! Forced edges shared by every FPL with a prescribed three-bundle pattern.
//!
//! Propagation combines three kinds of inference, each sound on its own:
//!
//! * degree closure: a vertex with two occupied edges empties the rest, a
//!   vertex that can only reach degree 2 one way takes it;
//! * path identity: occupied chains attached to an external edge carry the
//!   arch of that edge; an edge that would join two different arches, or
//!   close a chain that already reaches the boundary, is empty;
//! * de Gier's lemma (below), and a check that every arch can still reach
//!   its partner through open edges.
//!
//! Whatever stays open afterwards is settled by search: completions with the
//! right pattern are collected, and an edge on which they all agree is
//! forced exactly when no completion gives it the other value.

use crate::error::{Error, Result};
use crate::grid::{link_pattern, Dir, EdgeState, FplGrid, Lattice, LinkPattern, Vertex};

/// Arch identity of every occupied external edge, by perimeter position.
#[derive(Clone, Debug)]
pub struct Arches {
    arch: Vec<Option<usize>>,
    partner_pos: Vec<Option<usize>>,
}

impl Arches {
    pub fn new(n: usize, pattern: &LinkPattern) -> Self {
        let mut arch = vec![None; 4 * n];
        let mut partner_pos = vec![None; 4 * n];
        for label in 0..pattern.len() {
            let other = pattern.partner(label);
            let p = pattern.position(label);
            arch[p] = Some(label.min(other));
            partner_pos[p] = Some(pattern.position(other));
        }
        Self { arch, partner_pos }
    }

    pub fn arch(&self, position: usize) -> Option<usize> {
        self.arch[position]
    }

    pub fn partner(&self, position: usize) -> Option<usize> {
        self.partner_pos[position]
    }
}

/// Connected chains of occupied internal edges, with the arches of the
/// external edges they touch.
struct Chains {
    parent: Vec<usize>,
    arch: Vec<Option<usize>>,
    stubs: Vec<u8>,
}

impl Chains {
    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn build(g: &FplGrid, arches: &Arches) -> Result<Self> {
        let n = g.n();
        let lat = g.lattice();
        let mut c = Chains {
            parent: (0..n * n).collect(),
            arch: vec![None; n * n],
            stubs: vec![0; n * n],
        };
        let idx = |v: Vertex| v.1 * n + v.0;
        for e in 0..lat.internal_count() {
            if !g.is_occupied(e) {
                continue;
            }
            let (u, w) = lat.ends(e);
            let (ru, rw) = (c.find(idx(u)), c.find(idx(w.unwrap())));
            if ru == rw {
                continue;
            }
            c.parent[ru] = rw;
        }
        for p in 0..4 * n {
            if !g.is_occupied(lat.ext(p)) {
                continue;
            }
            let (v, _) = lat.stub(p);
            let r = c.find(idx(v));
            let a = arches.arch(p);
            c.stubs[r] += 1;
            match (c.arch[r], a) {
                (Some(x), Some(y)) if x != y => {
                    return Err(Error::Contradiction {
                        x: v.0,
                        y: v.1,
                        reason: format!("chain joins arches {x} and {y}"),
                    })
                }
                (None, Some(_)) => c.arch[r] = a,
                _ => {}
            }
        }
        Ok(c)
    }

    fn root_of(&self, n: usize, v: Vertex) -> usize {
        self.find(v.1 * n + v.0)
    }
}

fn set_checked(g: &mut FplGrid, e: usize, s: EdgeState, at: Vertex, why: &str) -> Result<bool> {
    match g.get(e) {
        EdgeState::Undetermined => {
            g.set(e, s);
            Ok(true)
        }
        t if t == s => Ok(false),
        _ => Err(Error::Contradiction {
            x: at.0,
            y: at.1,
            reason: format!("{why} conflicts with an already fixed edge"),
        }),
    }
}

/// Degree closure at every vertex, repeated until nothing changes.
pub fn degree_closure(g: &mut FplGrid) -> Result<bool> {
    let n = g.n();
    let lat = g.lattice();
    let mut any = false;
    loop {
        let mut changed = false;
        for y in 0..n {
            for x in 0..n {
                let inc = lat.incident((x, y));
                let occ = inc.iter().filter(|&&e| g.is_occupied(e)).count();
                let und = inc
                    .iter()
                    .filter(|&&e| g.get(e) == EdgeState::Undetermined)
                    .count();
                if occ > 2 || occ + und < 2 {
                    return Err(Error::Contradiction {
                        x,
                        y,
                        reason: format!("{occ} occupied, {und} open"),
                    });
                }
                if und == 0 {
                    continue;
                }
                let fill = if occ == 2 {
                    EdgeState::Empty
                } else if occ + und == 2 {
                    EdgeState::Occupied
                } else {
                    continue;
                };
                for e in inc {
                    if g.get(e) == EdgeState::Undetermined {
                        g.set(e, fill);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return Ok(any);
        }
        any = true;
    }
}

fn rotate_cw(d: Dir) -> Dir {
    Dir::ALL[(d as usize + 3) % 4]
}

fn step(lat: &Lattice, v: Vertex, d: Dir) -> Option<Vertex> {
    lat.neighbor(v, d)
}

/// One pass of local inference: degree closure, the arch-merge rule and
/// de Gier's lemma in all four orientations.
///
/// Lemma, in the orientation "up": let `k` have neighbours `l` above, `b`
/// left, `f` right and `d` below, and let `ab`, `ef`, `cd` be the edges
/// pointing down from `b`, `f`, `d`. If `ab` and `ef` are occupied and on
/// different arches, and `cd` is an empty external edge, or lies on a third
/// arch, or `d` is already chained to `ab` or to `ef`, then `kl` is occupied.
pub fn degier_step(g: &FplGrid, pattern: &LinkPattern) -> Result<FplGrid> {
    let arches = Arches::new(g.n(), pattern);
    degier_step_with(g, &arches)
}

pub(crate) fn degier_step_with(g: &FplGrid, arches: &Arches) -> Result<FplGrid> {
    let mut h = g.clone();
    degree_closure(&mut h)?;
    let n = h.n();
    let lat = h.lattice();
    let chains = Chains::build(&h, arches)?;
    let root = |v: Vertex| chains.root_of(n, v);

    // arch-merge rule
    for e in 0..lat.internal_count() {
        if h.get(e) != EdgeState::Undetermined {
            continue;
        }
        let (u, w) = lat.ends(e);
        let w = w.unwrap();
        let (ru, rw) = (root(u), root(w));
        let forbidden = if ru == rw {
            chains.stubs[ru] > 0
        } else {
            matches!((chains.arch[ru], chains.arch[rw]), (Some(x), Some(y)) if x != y)
        };
        if forbidden {
            h.set(e, EdgeState::Empty);
        }
    }

    // vertex choice: keep only the ways of completing a vertex to degree 2
    // that neither join two arches nor close a chain reaching the boundary
    for y in 0..n {
        for x in 0..n {
            vertex_choice(&mut h, &lat, &chains, (x, y))?;
        }
    }

    // arch carried by an occupied edge, if known
    let edge_arch = |g: &FplGrid, e: usize, at: Vertex| -> Option<usize> {
        if !g.is_occupied(e) {
            return None;
        }
        match lat.ext_position(e) {
            Some(p) => arches.arch(p),
            None => chains.arch[root(at)],
        }
    };

    for y in 0..n {
        for x in 0..n {
            let k = (x, y);
            for up in Dir::ALL {
                let kl = lat.edge_at(k, up);
                if h.get(kl) != EdgeState::Undetermined {
                    continue;
                }
                let right = rotate_cw(up);
                let down = up.opposite();
                let (Some(b), Some(f), Some(d)) = (
                    step(&lat, k, right.opposite()),
                    step(&lat, k, right),
                    step(&lat, k, down),
                ) else {
                    continue;
                };
                let ab = lat.edge_at(b, down);
                let ef = lat.edge_at(f, down);
                let cd = lat.edge_at(d, down);
                let (Some(arch_ab), Some(arch_ef)) = (edge_arch(&h, ab, b), edge_arch(&h, ef, f))
                else {
                    continue;
                };
                if arch_ab == arch_ef {
                    continue;
                }
                let third = match h.get(cd) {
                    EdgeState::Empty => lat.is_external(cd),
                    EdgeState::Occupied => {
                        matches!(edge_arch(&h, cd, d), Some(z) if z != arch_ab && z != arch_ef)
                    }
                    EdgeState::Undetermined => false,
                };
                let chained = (root(d) == root(b) || root(d) == root(f)) && chains.stubs[root(d)] > 0;
                if third || chained {
                    set_checked(&mut h, kl, EdgeState::Occupied, k, "de Gier's lemma")?;
                }
            }
        }
    }
    degree_closure(&mut h)?;
    arches_reachable(&h, arches)?;
    Ok(h)
}

/// Each arch must still be able to join its two external edges through
/// edges that are not empty, avoiding chains already carrying another arch.
fn arches_reachable(g: &FplGrid, arches: &Arches) -> Result<()> {
    let n = g.n();
    let lat = g.lattice();
    let chains = Chains::build(g, arches)?;
    for p in 0..4 * n {
        let Some(q) = arches.partner(p) else { continue };
        if q < p || !g.is_occupied(lat.ext(p)) {
            continue;
        }
        let arch = arches.arch(p);
        let (start, _) = lat.stub(p);
        let (goal, _) = lat.stub(q);
        let mut seen = vec![false; n * n];
        let mut stack = vec![start];
        seen[start.1 * n + start.0] = true;
        let mut found = false;
        while let Some(v) = stack.pop() {
            if v == goal {
                found = true;
                break;
            }
            for e in lat.incident(v) {
                if g.get(e) == EdgeState::Empty {
                    continue;
                }
                let Some(w) = lat.other_end(e, v) else { continue };
                let i = w.1 * n + w.0;
                if seen[i] {
                    continue;
                }
                let a = chains.arch[chains.find(i)];
                if a.is_some() && a != arch {
                    continue;
                }
                seen[i] = true;
                stack.push(w);
            }
        }
        if !found {
            return Err(Error::Contradiction {
                x: start.0,
                y: start.1,
                reason: format!("arch from position {p} cannot reach position {q}"),
            });
        }
    }
    Ok(())
}

/// Whether occupying the open edges selected by `mask` at `v` keeps every
/// chain on at most one arch and closes no chain that reaches the boundary.
fn choice_ok(lat: &Lattice, chains: &Chains, v: Vertex, open: &[usize], mask: u32) -> bool {
    let n = lat.n;
    let rv = chains.root_of(n, v);
    let mut roots = vec![rv];
    let mut arch = chains.arch[rv];
    let mut stubs = chains.stubs[rv];
    for (i, &e) in open.iter().enumerate() {
        if mask >> i & 1 == 0 {
            continue;
        }
        // open edges are always internal
        let w = lat.other_end(e, v).expect("open edge is internal");
        let rw = chains.root_of(n, w);
        if roots.contains(&rw) {
            if chains.stubs[rw] > 0 {
                return false;
            }
            continue;
        }
        roots.push(rw);
        stubs += chains.stubs[rw];
        match (arch, chains.arch[rw]) {
            (Some(x), Some(y)) if x != y => return false,
            (None, y) => arch = y,
            _ => {}
        }
    }
    stubs <= 2
}

fn vertex_choice(h: &mut FplGrid, lat: &Lattice, chains: &Chains, v: Vertex) -> Result<()> {
    let inc = lat.incident(v);
    let open: Vec<usize> = inc
        .iter()
        .copied()
        .filter(|&e| h.get(e) == EdgeState::Undetermined)
        .collect();
    if open.is_empty() {
        return Ok(());
    }
    let occ = inc.iter().filter(|&&e| h.is_occupied(e)).count();
    let mut seen_on = vec![false; open.len()];
    let mut seen_off = vec![false; open.len()];
    let mut any = false;
    for mask in 0u32..(1 << open.len()) {
        if occ + mask.count_ones() as usize != 2 || !choice_ok(lat, chains, v, &open, mask) {
            continue;
        }
        any = true;
        for i in 0..open.len() {
            if mask >> i & 1 == 1 {
                seen_on[i] = true;
            } else {
                seen_off[i] = true;
            }
        }
    }
    if !any {
        return Err(Error::Contradiction {
            x: v.0,
            y: v.1,
            reason: "no admissible way to reach degree 2".into(),
        });
    }
    for (i, &e) in open.iter().enumerate() {
        match (seen_on[i], seen_off[i]) {
            (true, false) => h.set(e, EdgeState::Occupied),
            (false, true) => h.set(e, EdgeState::Empty),
            _ => {}
        }
    }
    Ok(())
}

/// Runs `degier_step` until nothing changes.
pub fn propagate(g: &FplGrid, arches: &Arches) -> Result<FplGrid> {
    let mut cur = g.clone();
    // each productive pass fixes at least one edge
    for _ in 0..=cur.states().len() {
        let next = degier_step_with(&cur, arches)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    unreachable!("propagation is monotone")
}

/// A completion of `g` with the pattern of `arches`, by branching under
/// propagation. Path ends are extended first: a vertex with one occupied
/// edge takes exactly one of its open edges.
fn witness(g: &FplGrid, arches: &Arches, pattern: &LinkPattern) -> Option<FplGrid> {
    let g = propagate(g, arches).ok()?;
    let lat = g.lattice();
    let open_at = |v: Vertex| -> Vec<usize> {
        lat.incident(v)
            .into_iter()
            .filter(|&e| g.get(e) == EdgeState::Undetermined)
            .collect()
    };
    let mut best: Option<Vec<usize>> = None;
    for y in 0..g.n() {
        for x in 0..g.n() {
            let v = (x, y);
            let open = open_at(v);
            if g.degree(v) == 1 && !open.is_empty() && best.as_ref().is_none_or(|b| open.len() < b.len()) {
                best = Some(open);
            }
        }
    }
    let branches: Vec<FplGrid> = match best {
        Some(open) => open
            .iter()
            .map(|&e| {
                let mut t = g.clone();
                t.set(e, EdgeState::Occupied);
                t
            })
            .collect(),
        None => {
            let Some(e) = (0..lat.internal_count()).find(|&e| g.get(e) == EdgeState::Undetermined) else {
                let ok = g.validate().is_ok() && link_pattern(&g).ok().as_ref() == Some(pattern);
                return ok.then_some(g);
            };
            [EdgeState::Occupied, EdgeState::Empty]
                .into_iter()
                .map(|s| {
                    let mut t = g.clone();
                    t.set(e, s);
                    t
                })
                .collect()
        }
    };
    branches.iter().find_map(|t| witness(t, arches, pattern))
}

/// Settles every open edge: an edge is forced when no completion gives it
/// the other value. Completions found on the way rule out many edges at once.
fn backbone(g: FplGrid, arches: &Arches, pattern: &LinkPattern) -> Result<FplGrid> {
    let mut g = g;
    let first = witness(&g, arches, pattern).ok_or_else(|| Error::Contradiction {
        x: 0,
        y: 0,
        reason: "no configuration has this link pattern".into(),
    })?;
    let mut seen = vec![first];
    let open = g.lattice().internal_count();
    loop {
        let agreed = (0..open).find(|&e| {
            g.get(e) == EdgeState::Undetermined && seen.iter().all(|w| w.get(e) == seen[0].get(e))
        });
        let Some(e) = agreed else {
            return Ok(g);
        };
        let value = seen[0].get(e);
        let mut t = g.clone();
        t.set(e, if value == EdgeState::Occupied { EdgeState::Empty } else { EdgeState::Occupied });
        match witness(&t, arches, pattern) {
            Some(w) => seen.push(w),
            None => {
                g.set(e, value);
                g = propagate(&g, arches)?;
            }
        }
    }
}

/// Propagates, then settles what inference leaves open by search.
pub fn solve_fixed(n: usize, pattern: &LinkPattern) -> Result<FplGrid> {
    let arches = Arches::new(n, pattern);
    let g = propagate(&crate::grid::boundary(n, pattern.parity()), &arches)?;
    backbone(g, &arches, pattern)
}
