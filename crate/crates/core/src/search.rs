//! Backtracking over tile fillings with a prescribed column-to-row code.
//!
//! Cells are filled in trace order (bottom-to-top, left-to-right), so labels
//! are propagated while the grid is built. A branch is cut as soon as a label
//! can no longer reach the column it must exit from: pipes only move North
//! or East, so a label heading East out of column `j` needs a target column
//! beyond `j`, and one heading North needs a target column at least `j`.
//!
//! Marked tiles are never produced here; callers add marks afterwards.

use crate::diagram::{DiagramKind, Tile};
use crate::error::{Error, Result};
use crate::permutation::Code;

/// Largest label the search supports (crossed pairs live in `u16` rows).
pub const MAX_SEARCH_N: usize = 15;

pub(crate) struct TileSearch {
    rows: usize,
    cols: usize,
    target: Vec<usize>,
    /// `target_col[label]`: the column `label` must exit from (0 if absent).
    target_col: Vec<usize>,
    /// Candidate tiles per cell, in trace order.
    order: Vec<(usize, usize, Vec<Tile>)>,
}

struct State {
    tiles: Vec<Tile>,
    east_out: Vec<usize>,
    north_out: Vec<usize>,
}

impl TileSearch {
    pub fn new(kind: DiagramKind, n: usize, code: &Code) -> Result<Self> {
        if n > MAX_SEARCH_N {
            return Err(Error::BoundExceeded {
                n,
                max: MAX_SEARCH_N,
            });
        }
        let (rows, cols) = kind.dims(n);
        if code.len() != cols {
            return Err(Error::InvalidCode(format!(
                "code {code} has {} entries, a {kind} of size {n} has {cols} columns",
                code.len()
            )));
        }
        let mut target_col = vec![0; rows + 1];
        for (k, &label) in code.entries.iter().enumerate() {
            if label > rows {
                return Err(Error::InvalidCode(format!("entry {label} exceeds {rows} rows")));
            }
            if label != 0 {
                target_col[label] = k + 1;
            }
        }
        let mut order = Vec::with_capacity(rows * cols);
        for i in (1..=rows).rev() {
            for j in 1..=cols {
                let allowed = kind
                    .allowed_tiles(n, i, j)
                    .iter()
                    .copied()
                    .filter(|&t| t != Tile::MarkedSE)
                    .collect();
                order.push((i, j, allowed));
            }
        }
        Ok(Self {
            rows,
            cols,
            target: code.entries.clone(),
            target_col,
            order,
        })
    }

    /// Call `visit` with the row-major tiles of every filling whose traced
    /// code equals the target.
    pub fn for_each(&self, mut visit: impl FnMut(&[Tile])) {
        let size = self.rows * self.cols;
        if size == 0 {
            if self.target.iter().all(|&t| t == 0) {
                visit(&[]);
            }
            return;
        }
        let mut state = State {
            tiles: vec![Tile::Blank; size],
            east_out: vec![0; size],
            north_out: vec![0; size],
        };
        self.step(0, [0u16; MAX_SEARCH_N + 1], &mut state, &mut visit);
    }

    fn step(
        &self,
        k: usize,
        crossed: [u16; MAX_SEARCH_N + 1],
        st: &mut State,
        visit: &mut impl FnMut(&[Tile]),
    ) {
        if k == self.order.len() {
            visit(&st.tiles);
            return;
        }
        let (i, j, ref allowed) = self.order[k];
        let at = (i - 1) * self.cols + (j - 1);
        let west_in = if j == 1 {
            // Pipes enter exactly at the rows listed in the code.
            if self.target_col[i] != 0 {
                i
            } else {
                0
            }
        } else {
            st.east_out[at - 1]
        };
        let south_in = if i == self.rows {
            0
        } else {
            st.north_out[at + self.cols]
        };
        for &t in allowed {
            if t.west() != (west_in != 0) || t.south() != (south_in != 0) {
                continue;
            }
            let mut next_crossed = crossed;
            let (north, east) = match t {
                Tile::Blank => (0, 0),
                Tile::Horizontal => (0, west_in),
                Tile::ElbowWN => (west_in, 0),
                Tile::ElbowSE | Tile::MarkedSE => (0, south_in),
                Tile::Bump => (west_in, south_in),
                Tile::Cross => {
                    let (a, b) = (west_in.min(south_in), west_in.max(south_in));
                    if crossed[a] & (1 << b) == 0 {
                        next_crossed[a] |= 1 << b;
                        (south_in, west_in)
                    } else {
                        (west_in, south_in)
                    }
                }
            };
            if east != 0 && (j == self.cols || self.target_col[east] <= j) {
                continue;
            }
            if i == 1 {
                if north != self.target[j - 1] {
                    continue;
                }
            } else if north != 0 && self.target_col[north] < j {
                continue;
            }
            st.tiles[at] = t;
            st.east_out[at] = east;
            st.north_out[at] = north;
            self.step(k + 1, next_crossed, st, visit);
        }
    }
}
