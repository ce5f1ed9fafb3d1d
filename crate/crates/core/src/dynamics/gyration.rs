//! Wieland's gyration on the square grid.

use crate::error::{Error, Result};
use crate::grid::{EdgeState, FplGrid, Lattice};

/// Edges of the unit square with lower-left corner `(x, y)`: bottom, top,
/// left, right.
fn plaquette(lat: &Lattice, x: usize, y: usize) -> [usize; 4] {
    [lat.h(x, y), lat.h(x, y + 1), lat.v(x, y), lat.v(x + 1, y)]
}

fn sweep(g: &mut FplGrid, class: usize) {
    let n = g.n();
    let lat = g.lattice();
    for y in 0..n - 1 {
        for x in 0..n - 1 {
            if (x + y) % 2 != class {
                continue;
            }
            let [b, t, l, r] = plaquette(&lat, x, y);
            let occ = [b, t, l, r].map(|e| g.is_occupied(e));
            let swap = match occ {
                [true, true, false, false] => Some(([b, t], [l, r])),
                [false, false, true, true] => Some(([l, r], [b, t])),
                _ => None,
            };
            if let Some((off, on)) = swap {
                for e in off {
                    g.set(e, EdgeState::Empty);
                }
                for e in on {
                    g.set(e, EdgeState::Occupied);
                }
            }
        }
    }
}

/// One gyration step: every unit square of one checkerboard class whose
/// occupied sides are exactly one opposite pair trades it for the other
/// pair, then the same on the other class. External edges are untouched and
/// the link pattern turns by one label.
///
/// Squares are classed by the parity of `x + y` at their lower-left corner.
/// The class opposite to the boundary parity goes first; the other order
/// does not rotate the pattern uniformly.
pub fn wieland_gyration(g: &FplGrid) -> Result<FplGrid> {
    g.validate()?;
    if !g.is_complete() {
        return Err(Error::InvalidGrid("gyration needs a complete configuration".into()));
    }
    let mut out = g.clone();
    let parity = g.parity().ok_or_else(|| Error::InvalidGrid("external edges do not alternate".into()))?;
    // the class sharing its parity with the occupied external edges goes second
    let first = (parity as usize + 1) % 2;
    sweep(&mut out, first);
    sweep(&mut out, 1 - first);
    Ok(out)
}
