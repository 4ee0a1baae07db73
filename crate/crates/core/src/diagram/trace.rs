//! Label propagation through a tile grid.
//!
//! Cells are processed bottom-to-top and left-to-right within a row, so the
//! West and South inputs of a cell are known when it is reached. At a Cross
//! with West label `p` and South label `q`, the pair crosses for real the
//! first time it meets (`q` leaves North, `p` leaves East); on any later
//! meeting the crossing is fake and the labels bounce (`p` North, `q` East).

use std::collections::{BTreeMap, BTreeSet};

use super::{Cell, Diagram, DiagramKind, Side, Tile};
use crate::error::{Error, Result};
use crate::permutation::{Code, CodeRole};

/// One logical traversal of a cell by a labelled pipe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Traversal {
    pub label: usize,
    pub from: Side,
    pub to: Side,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub cell: Cell,
    pub from: Side,
    pub to: Side,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub cell: Cell,
    pub west: usize,
    pub south: usize,
    pub real: bool,
}

#[derive(Clone, Debug)]
pub struct TraceResult {
    /// Label leaving the top of each column, 0 if none.
    pub top_reading: Vec<usize>,
    pub code: Code,
    /// Steps of each pipe in the order it visits them, keyed by entering row.
    pub pipe_paths: BTreeMap<usize, Vec<Step>>,
    /// Every Cross tile in trace order.
    pub crossings: Vec<Crossing>,
    /// Unordered label pairs `(min, max)` that really cross.
    pub crossed_pairs: BTreeSet<(usize, usize)>,
    cols: usize,
    flows: Vec<Vec<Traversal>>,
}

impl TraceResult {
    /// Logical traversals of `cell` (at most two).
    pub fn traversals(&self, (i, j): Cell) -> &[Traversal] {
        &self.flows[(i - 1) * self.cols + (j - 1)]
    }

    pub fn label_through(&self, cell: Cell, from: Side, to: Side) -> Option<usize> {
        self.traversals(cell)
            .iter()
            .find(|t| t.from == from && t.to == to)
            .map(|t| t.label)
    }

    /// Label entering `cell` through `side`.
    pub fn label_entering(&self, cell: Cell, side: Side) -> Option<usize> {
        self.traversals(cell)
            .iter()
            .find(|t| t.from == side)
            .map(|t| t.label)
    }

    pub fn crossing_at(&self, cell: Cell) -> Option<&Crossing> {
        self.crossings.iter().find(|c| c.cell == cell)
    }

    pub fn have_crossed(&self, a: usize, b: usize) -> bool {
        self.crossed_pairs.contains(&(a.min(b), a.max(b)))
    }
}

fn malformed(cell: Cell, what: &str) -> Error {
    Error::Malformed(format!("{what} at {cell:?}"))
}

pub(super) fn trace(d: &Diagram) -> Result<TraceResult> {
    let (rows, cols) = (d.rows(), d.cols());
    let mut east_out: Vec<Option<usize>> = vec![None; rows * cols];
    let mut north_out: Vec<Option<usize>> = vec![None; rows * cols];
    let mut flows: Vec<Vec<Traversal>> = vec![Vec::new(); rows * cols];
    let mut crossings = Vec::new();
    let mut crossed = BTreeSet::new();
    let idx = |i: usize, j: usize| (i - 1) * cols + (j - 1);

    for i in (1..=rows).rev() {
        for j in 1..=cols {
            let t = d.tile(i, j);
            let west_in = if j == 1 {
                t.west().then_some(i)
            } else {
                east_out[idx(i, j - 1)]
            };
            let south_in = if i == rows {
                None
            } else {
                north_out[idx(i + 1, j)]
            };
            if t.west() != west_in.is_some() {
                return Err(malformed((i, j), "unmatched West edge"));
            }
            if t.south() != south_in.is_some() {
                return Err(malformed((i, j), "unmatched South edge"));
            }
            if j == cols && t.east() {
                return Err(malformed((i, j), "pipe exits the right boundary"));
            }
            let here = &mut flows[idx(i, j)];
            let mut go = |label: usize, from: Side, to: Side| {
                here.push(Traversal { label, from, to });
                match to {
                    Side::North => north_out[idx(i, j)] = Some(label),
                    Side::East => east_out[idx(i, j)] = Some(label),
                    _ => unreachable!(),
                }
            };
            match t {
                Tile::Blank => {}
                Tile::Horizontal => go(west_in.unwrap(), Side::West, Side::East),
                Tile::ElbowWN => go(west_in.unwrap(), Side::West, Side::North),
                Tile::ElbowSE | Tile::MarkedSE => go(south_in.unwrap(), Side::South, Side::East),
                Tile::Bump => {
                    go(west_in.unwrap(), Side::West, Side::North);
                    go(south_in.unwrap(), Side::South, Side::East);
                }
                Tile::Cross => {
                    let (p, q) = (west_in.unwrap(), south_in.unwrap());
                    if p == q {
                        return Err(malformed((i, j), "label collision"));
                    }
                    let real = crossed.insert((p.min(q), p.max(q)));
                    if real {
                        go(p, Side::West, Side::East);
                        go(q, Side::South, Side::North);
                    } else {
                        go(p, Side::West, Side::North);
                        go(q, Side::South, Side::East);
                    }
                    crossings.push(Crossing {
                        cell: (i, j),
                        west: p,
                        south: q,
                        real,
                    });
                }
            }
        }
    }

    let top_reading: Vec<usize> = (1..=cols)
        .map(|j| if rows == 0 { 0 } else { north_out[idx(1, j)].unwrap_or(0) })
        .collect();

    // Paths: follow each pipe from its entry cell.
    let mut pipe_paths = BTreeMap::new();
    for r in d.entering_rows() {
        let mut path = Vec::new();
        let (mut i, mut j, mut from) = (r, 1, Side::West);
        loop {
            let tr = flows[idx(i, j)]
                .iter()
                .find(|t| t.label == r && t.from == from)
                .copied()
                .ok_or_else(|| malformed((i, j), "broken pipe"))?;
            path.push(Step {
                cell: (i, j),
                from: tr.from,
                to: tr.to,
            });
            match tr.to {
                Side::North if i == 1 => break,
                Side::North => {
                    i -= 1;
                    from = Side::South;
                }
                _ => {
                    j += 1;
                    from = Side::West;
                }
            }
        }
        pipe_paths.insert(r, path);
    }

    let role = match d.kind() {
        DiagramKind::Bvpd => CodeRole::Reduced,
        _ => CodeRole::Full,
    };
    let code = Code::new(role, top_reading.clone())?;

    Ok(TraceResult {
        top_reading,
        code,
        pipe_paths,
        crossings,
        crossed_pairs: crossed,
        cols,
        flows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Diagram, DiagramKind};

    #[test]
    fn identity_pd_has_no_crossings() {
        let d = Diagram::parse_text(DiagramKind::Pd, 4, "bbbJ\nbbJ.\nbJ..\nJ...").unwrap();
        let tr = d.trace().unwrap();
        assert_eq!(tr.top_reading, vec![1, 2, 3, 4]);
        assert!(tr.crossings.is_empty());
        for (r, path) in &tr.pipe_paths {
            assert_eq!(path.first().unwrap().cell, (*r, 1));
            assert_eq!(path.last().unwrap().cell.0, 1);
        }
    }

    #[test]
    fn single_cross() {
        let d = Diagram::parse_text(DiagramKind::Pd, 2, "+J\nJ.").unwrap();
        let tr = d.trace().unwrap();
        assert_eq!(tr.top_reading, vec![2, 1]);
        assert_eq!(
            tr.crossings,
            vec![Crossing {
                cell: (1, 1),
                west: 1,
                south: 2,
                real: true
            }]
        );
        assert!(tr.have_crossed(2, 1));
    }

    #[test]
    fn second_meeting_is_fake() {
        let d = Diagram::parse_text(DiagramKind::Pd, 3, "++J\n+J.\nJ..").unwrap();
        let tr = d.trace().unwrap();
        assert_eq!(tr.top_reading, vec![3, 2, 1]);
        assert!(tr.crossings.iter().all(|c| c.real));
        // Pipes 2 and 3 cross at (2,1) and meet again at (1,3).
        let d = Diagram::parse_text(DiagramKind::Pd, 4, "b++J\n++J.\nbJ..\nJ...").unwrap();
        let tr = d.trace().unwrap();
        assert_eq!(tr.top_reading, vec![1, 4, 3, 2]);
        let fakes: Vec<_> = tr.crossings.iter().filter(|c| !c.real).collect();
        assert_eq!(fakes.len(), 1);
        assert_eq!((fakes[0].cell, fakes[0].west, fakes[0].south), ((1, 3), 3, 2));
    }
}
