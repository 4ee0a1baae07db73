//! Tile grids for pipe dreams (PD), marked vertical-less pipe dreams (MVPD)
//! and bumpless vertical-less pipe dreams (BVPD), with structural validation
//! and the shared tracing engine.
//!
//! Coordinates are `(row, column)`, one-based, row 1 at the top. A "lower"
//! row has a larger index.

mod text;
mod tile;
mod trace;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::Code;
use crate::polynomial::Monomial;

pub use text::DiagramJson;
pub use tile::{Side, Tile};
pub use trace::{Crossing, Step, TraceResult, Traversal};

/// One-based `(row, column)`.
pub type Cell = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiagramKind {
    #[serde(rename = "PD")]
    Pd,
    #[serde(rename = "MVPD")]
    Mvpd,
    #[serde(rename = "BVPD")]
    Bvpd,
}

impl fmt::Display for DiagramKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagramKind::Pd => "PD",
            DiagramKind::Mvpd => "MVPD",
            DiagramKind::Bvpd => "BVPD",
        })
    }
}

impl std::str::FromStr for DiagramKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pd" => Ok(DiagramKind::Pd),
            "mvpd" => Ok(DiagramKind::Mvpd),
            "bvpd" => Ok(DiagramKind::Bvpd),
            _ => Err(Error::Parse(format!("unknown diagram kind {s:?}"))),
        }
    }
}

const PD_CHOICE: &[Tile] = &[Tile::Cross, Tile::Bump];
const ANTI_DIAGONAL: &[Tile] = &[Tile::ElbowWN, Tile::Blank];
const PD_ANTI_DIAGONAL: &[Tile] = &[Tile::ElbowWN];
const OUTSIDE: &[Tile] = &[Tile::Blank];
const BVPD_TILES: &[Tile] = &[
    Tile::Blank,
    Tile::Horizontal,
    Tile::Cross,
    Tile::ElbowWN,
    Tile::ElbowSE,
];

impl DiagramKind {
    /// Grid dimensions for ambient size `n`.
    pub fn dims(self, n: usize) -> (usize, usize) {
        match self {
            DiagramKind::Pd | DiagramKind::Mvpd => (n, n),
            DiagramKind::Bvpd => (n, n.saturating_sub(1)),
        }
    }

    /// Tiles legal at `(i, j)`. PD and MVPD use the staircase `i + j <= n`
    /// with the anti-diagonal `i + j = n + 1`; BVPD is the same region with
    /// its first column removed.
    pub fn allowed_tiles(self, n: usize, i: usize, j: usize) -> &'static [Tile] {
        let s = i + j;
        match self {
            DiagramKind::Pd if s <= n => PD_CHOICE,
            DiagramKind::Pd if s == n + 1 => PD_ANTI_DIAGONAL,
            DiagramKind::Mvpd if s <= n => &Tile::ALL,
            DiagramKind::Mvpd if s == n + 1 => ANTI_DIAGONAL,
            DiagramKind::Bvpd if s < n => BVPD_TILES,
            DiagramKind::Bvpd if s == n => ANTI_DIAGONAL,
            _ => OUTSIDE,
        }
    }

    /// Whether the tile contributes to the weight monomial.
    pub fn is_weighty(self, tile: Tile) -> bool {
        match self {
            DiagramKind::Pd => tile == Tile::Cross,
            DiagramKind::Mvpd => {
                matches!(tile, Tile::Horizontal | Tile::Cross | Tile::MarkedSE)
            }
            DiagramKind::Bvpd => {
                matches!(tile, Tile::Horizontal | Tile::Cross | Tile::ElbowSE)
            }
        }
    }
}

/// A problem found by [`Diagram::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Dimensions {
        expected: (usize, usize),
        found: (usize, usize),
    },
    TileNotAllowed {
        cell: Cell,
        tile: Tile,
    },
    /// The connection on `side` of `cell` has no matching connection on the
    /// neighbouring cell (or the grid boundary).
    Edge {
        cell: Cell,
        side: Side,
    },
    /// A marked tile whose pipe has no Horizontal tile in a lower row.
    MarkRule {
        cell: Cell,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Dimensions { expected, found } => write!(
                f,
                "grid is {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            Violation::TileNotAllowed { cell, tile } => {
                write!(f, "tile {tile:?} not allowed at {cell:?}")
            }
            Violation::Edge { cell, side } => {
                write!(f, "unmatched {side} connection at {cell:?}")
            }
            Violation::MarkRule { cell } => {
                write!(f, "marked tile at {cell:?} has no Horizontal below on its pipe")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Validation {
    pub violations: Vec<Violation>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A rectangular grid of tiles tagged with the kind of diagram it represents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    kind: DiagramKind,
    n: usize,
    rows: usize,
    cols: usize,
    tiles: Vec<Tile>,
}

impl Diagram {
    /// The grid of the right size filled with Blank tiles.
    pub fn blank(kind: DiagramKind, n: usize) -> Self {
        let (rows, cols) = kind.dims(n);
        Self {
            kind,
            n,
            rows,
            cols,
            tiles: vec![Tile::Blank; rows * cols],
        }
    }

    /// Build from row-major tiles. Only the dimensions are checked; call
    /// [`Diagram::validate`] for the kind's structural rules.
    pub fn from_tiles(kind: DiagramKind, n: usize, tiles: Vec<Tile>) -> Result<Self> {
        let (rows, cols) = kind.dims(n);
        if tiles.len() != rows * cols {
            return Err(Error::Malformed(format!(
                "{} tiles for a {rows}x{cols} {kind} grid",
                tiles.len()
            )));
        }
        Ok(Self {
            kind,
            n,
            rows,
            cols,
            tiles,
        })
    }

    pub fn from_rows(kind: DiagramKind, n: usize, rows: Vec<Vec<Tile>>) -> Result<Self> {
        let (r, c) = kind.dims(n);
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidDiagram {
                kind,
                violations: vec![Violation::Dimensions {
                    expected: (r, c),
                    found: (rows.len(), rows.first().map_or(0, |row| row.len())),
                }],
            });
        }
        Self::from_tiles(kind, n, rows.into_iter().flatten().collect())
    }

    /// Like [`Diagram::from_rows`] but also requires the result to validate.
    pub fn validated(kind: DiagramKind, n: usize, rows: Vec<Vec<Tile>>) -> Result<Self> {
        let d = Self::from_rows(kind, n, rows)?;
        d.ensure_valid()?;
        Ok(d)
    }

    pub fn kind(&self) -> DiagramKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    fn index(&self, (i, j): Cell) -> usize {
        debug_assert!(i >= 1 && i <= self.rows && j >= 1 && j <= self.cols);
        (i - 1) * self.cols + (j - 1)
    }

    /// Tile at one-based `(i, j)`. Panics outside the grid.
    pub fn tile(&self, i: usize, j: usize) -> Tile {
        self.tiles[self.index((i, j))]
    }

    /// Tile at `(i, j)`, or `None` outside the grid.
    pub fn get(&self, i: usize, j: usize) -> Option<Tile> {
        (i >= 1 && i <= self.rows && j >= 1 && j <= self.cols).then(|| self.tile(i, j))
    }

    pub fn set(&mut self, (i, j): Cell, tile: Tile) {
        let k = self.index((i, j));
        self.tiles[k] = tile;
    }

    pub fn with_tile(&self, cell: Cell, tile: Tile) -> Self {
        let mut d = self.clone();
        d.set(cell, tile);
        d
    }

    /// All cells with their tiles, row-major from `(1, 1)`.
    pub fn cells(&self) -> impl Iterator<Item = (Cell, Tile)> + '_ {
        let cols = self.cols;
        self.tiles
            .iter()
            .enumerate()
            .map(move |(k, &t)| ((k / cols + 1, k % cols + 1), t))
    }

    pub fn count(&self, tile: Tile) -> usize {
        self.tiles.iter().filter(|&&t| t == tile).count()
    }

    /// Rows where a pipe enters through the left edge.
    pub fn entering_rows(&self) -> Vec<usize> {
        if self.cols == 0 {
            return Vec::new();
        }
        (1..=self.rows).filter(|&i| self.tile(i, 1).west()).collect()
    }

    /// Positions of the weighty tiles for this diagram's kind.
    pub fn weighty_cells(&self) -> BTreeSet<Cell> {
        self.cells()
            .filter(|&(_, t)| self.kind.is_weighty(t))
            .map(|(c, _)| c)
            .collect()
    }

    /// `∏ x_i` over weighty cells `(i, j)`. A BVPD also gets one `x_i` per
    /// pipe entering row `i`: that is the Horizontal its MVPD counterpart
    /// carries in the first column, and it makes the weight equal to the row
    /// product over Cross, Horizontal and ElbowWN tiles.
    pub fn weight(&self) -> Monomial {
        let mut rows: Vec<usize> = self.weighty_cells().into_iter().map(|(i, _)| i).collect();
        if self.kind == DiagramKind::Bvpd {
            rows.extend(self.entering_rows());
        }
        Monomial::from_rows(self.n, &rows).expect("weighty rows lie inside the grid")
    }

    /// Region and edge-consistency checks, without tracing.
    pub fn structural_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let expected = self.kind.dims(self.n);
        if expected != (self.rows, self.cols) {
            out.push(Violation::Dimensions {
                expected,
                found: (self.rows, self.cols),
            });
            return out;
        }
        for ((i, j), t) in self.cells() {
            if !self.kind.allowed_tiles(self.n, i, j).contains(&t) {
                out.push(Violation::TileNotAllowed { cell: (i, j), tile: t });
            }
            let east_ok = match self.get(i, j + 1) {
                Some(right) => t.east() == right.west(),
                None => !t.east(),
            };
            if !east_ok {
                out.push(Violation::Edge {
                    cell: (i, j),
                    side: Side::East,
                });
            }
            // North connections on row 1 exit the top edge.
            if let Some(above) = self.get(i - 1, j).filter(|_| i > 1) {
                if t.north() != above.south() {
                    out.push(Violation::Edge {
                        cell: (i, j),
                        side: Side::North,
                    });
                }
            }
            if i == self.rows && t.south() {
                out.push(Violation::Edge {
                    cell: (i, j),
                    side: Side::South,
                });
            }
        }
        if self.kind == DiagramKind::Pd {
            let entering = self.entering_rows();
            if entering.len() != self.n {
                for i in (1..=self.rows).filter(|i| !entering.contains(i)) {
                    out.push(Violation::Edge {
                        cell: (i, 1),
                        side: Side::West,
                    });
                }
            }
        }
        out
    }

    /// Every structural rule for the kind, including the MVPD mark rule.
    pub fn validate(&self) -> Validation {
        let mut violations = self.structural_violations();
        if violations.is_empty() && self.kind == DiagramKind::Mvpd {
            match self.trace() {
                Ok(tr) => violations.extend(
                    mark_rule_failures(self, &tr)
                        .into_iter()
                        .map(|cell| Violation::MarkRule { cell }),
                ),
                Err(e) => unreachable!("structurally valid diagram failed to trace: {e}"),
            }
        }
        Validation { violations }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidDiagram {
                kind: self.kind,
                violations: v.violations,
            })
        }
    }

    pub fn ensure_kind(&self, expected: DiagramKind) -> Result<()> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                expected,
                found: self.kind,
            })
        }
    }

    pub fn trace(&self) -> Result<TraceResult> {
        trace::trace(self)
    }

    pub fn column_to_row_code(&self) -> Result<Code> {
        Ok(self.trace()?.code)
    }
}

/// Marked cells whose pipe has no Horizontal tile strictly below them.
pub(crate) fn mark_rule_failures(d: &Diagram, tr: &TraceResult) -> Vec<Cell> {
    d.cells()
        .filter(|&(_, t)| t == Tile::MarkedSE)
        .filter(|&(cell, _)| {
            let label = tr
                .label_through(cell, Side::South, Side::East)
                .expect("marked tile carries a S-E pipe");
            !has_horizontal_below(d, tr, label, cell.0)
        })
        .map(|(c, _)| c)
        .collect()
}

/// Whether pipe `label` traverses a Horizontal tile in a row below `row`.
pub(crate) fn has_horizontal_below(d: &Diagram, tr: &TraceResult, label: usize, row: usize) -> bool {
    tr.pipe_paths[&label]
        .iter()
        .any(|s| s.cell.0 > row && d.tile(s.cell.0, s.cell.1) == Tile::Horizontal)
}

/// Sort diagrams by their text rendering, the canonical set order.
pub fn sort_canonical(diagrams: &mut [Diagram]) {
    diagrams.sort_by_cached_key(|d| d.render_text());
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(kind: DiagramKind, n: usize, s: &str) -> Diagram {
        Diagram::parse_text(kind, n, s).unwrap()
    }

    #[test]
    fn all_bump_pd_is_valid() {
        let d = parse(DiagramKind::Pd, 3, "bbJ\nbJ.\nJ..");
        assert_eq!(d.entering_rows(), vec![1, 2, 3]);
        assert!(d.weighty_cells().is_empty());
    }

    #[test]
    fn pd_alphabet_is_enforced() {
        let d = Diagram::from_rows(
            DiagramKind::Pd,
            2,
            vec![vec![Tile::Horizontal, Tile::ElbowWN], vec![Tile::ElbowWN, Tile::Blank]],
        )
        .unwrap();
        let v = d.validate();
        assert!(v.violations.contains(&Violation::TileNotAllowed {
            cell: (1, 1),
            tile: Tile::Horizontal
        }));
    }

    #[test]
    fn bvpd_rejects_bump() {
        let d = Diagram::from_rows(
            DiagramKind::Bvpd,
            3,
            vec![
                vec![Tile::Bump, Tile::ElbowWN],
                vec![Tile::ElbowWN, Tile::Blank],
                vec![Tile::Blank, Tile::Blank],
            ],
        )
        .unwrap();
        assert!(d.validate().violations.iter().any(|v| matches!(
            v,
            Violation::TileNotAllowed { tile: Tile::Bump, .. }
        )));
    }

    #[test]
    fn mark_without_lower_horizontal_is_rejected() {
        // Pipe 2: W-N at (2,1), S-E at (1,1), W-N at (1,2).
        let unmarked = parse(DiagramKind::Mvpd, 3, "rJ.\nJ..\n...");
        assert!(unmarked.validate().is_valid());
        let marked = unmarked.with_tile((1, 1), Tile::MarkedSE);
        assert_eq!(
            marked.validate().violations,
            vec![Violation::MarkRule { cell: (1, 1) }]
        );
        // With a Horizontal on the pipe below, the mark is legal.
        let ok = parse(DiagramKind::Mvpd, 3, ".RJ\n-J.\n...");
        assert!(ok.validate().is_valid(), "{:?}", ok.validate());
    }

    #[test]
    fn edge_mismatch_is_reported() {
        let d = Diagram::from_rows(
            DiagramKind::Mvpd,
            2,
            vec![vec![Tile::Horizontal, Tile::Blank], vec![Tile::Blank, Tile::Blank]],
        )
        .unwrap();
        assert!(d.validate().violations.contains(&Violation::Edge {
            cell: (1, 1),
            side: Side::East
        }));
    }

    #[test]
    fn weights_by_kind() {
        let m = parse(DiagramKind::Mvpd, 3, ".RJ\n-J.\n...");
        assert_eq!(m.weighty_cells(), BTreeSet::from([(1, 2), (2, 1)]));
        let b = parse(DiagramKind::Bvpd, 3, "rJ\nJ.\n..");
        assert_eq!(b.weighty_cells(), BTreeSet::from([(1, 1)]));
    }
}
