//! Text and JSON interchange formats.
//!
//! Text is one character per cell, rows separated by newlines:
//! `.` Blank, `-` Horizontal, `+` Cross, `J` ElbowWN, `r` ElbowSE, `b` Bump,
//! `R` MarkedSE.

use serde::{Deserialize, Serialize};

use super::{Diagram, DiagramKind, Tile};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub kind: DiagramKind,
    pub n: usize,
    pub rows: Vec<String>,
}

impl Diagram {
    /// Full grid, no trimming, no trailing newline.
    pub fn render_text(&self) -> String {
        self.row_strings().join("\n")
    }

    /// Drawing convention: blank rows at the bottom and blank columns on the
    /// right are omitted.
    pub fn render_trimmed(&self) -> String {
        let used_rows = (1..=self.rows())
            .rev()
            .find(|&i| (1..=self.cols()).any(|j| self.tile(i, j) != Tile::Blank))
            .unwrap_or(0);
        let used_cols = (1..=self.cols())
            .rev()
            .find(|&j| (1..=self.rows()).any(|i| self.tile(i, j) != Tile::Blank))
            .unwrap_or(0);
        (1..=used_rows)
            .map(|i| (1..=used_cols).map(|j| self.tile(i, j).symbol()).collect::<String>())
            .collect::<Vec<_>>()
            .join("\n")
    }

    fn row_strings(&self) -> Vec<String> {
        (1..=self.rows())
            .map(|i| (1..=self.cols()).map(|j| self.tile(i, j).symbol()).collect())
            .collect()
    }

    /// Parse the text format and validate the result for `kind`.
    pub fn parse_text(kind: DiagramKind, n: usize, text: &str) -> Result<Self> {
        let d = Self::parse_unchecked(kind, n, text)?;
        d.ensure_valid()?;
        Ok(d)
    }

    fn parse_unchecked(kind: DiagramKind, n: usize, text: &str) -> Result<Self> {
        let (rows, cols) = kind.dims(n);
        let lines: Vec<&str> = text.trim_end().lines().map(str::trim_end).collect();
        // A grid with zero columns renders as empty lines.
        let lines: Vec<&str> = if cols == 0 && lines.len() <= 1 && lines.concat().is_empty() {
            vec![""; rows]
        } else {
            lines
        };
        if lines.len() != rows {
            return Err(Error::Parse(format!(
                "expected {rows} rows for a {kind} of size {n}, found {}",
                lines.len()
            )));
        }
        let mut grid = Vec::with_capacity(rows);
        for (r, line) in lines.iter().enumerate() {
            let row: Vec<Tile> = line
                .chars()
                .map(|c| {
                    Tile::from_symbol(c).ok_or_else(|| {
                        Error::Parse(format!("bad character {c:?} in row {}", r + 1))
                    })
                })
                .collect::<Result<_>>()?;
            if row.len() != cols {
                return Err(Error::Parse(format!(
                    "row {} has {} cells, expected {cols}",
                    r + 1,
                    row.len()
                )));
            }
            grid.push(row);
        }
        Self::from_rows(kind, n, grid)
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            kind: self.kind(),
            n: self.n(),
            rows: self.row_strings(),
        }
    }

    pub fn from_json(json: &DiagramJson) -> Result<Self> {
        Self::parse_text(json.kind, json.n, &json.rows.join("\n"))
    }

    /// Read either format. JSON carries its own kind and size; text needs
    /// `kind` and `n` from the caller, or infers them when absent
    /// (`n` = number of rows; a grid one column narrower is a BVPD; a grid
    /// satisfying the PD rules is a PD; anything else is an MVPD).
    pub fn parse_auto(input: &str, kind: Option<DiagramKind>, n: Option<usize>) -> Result<Self> {
        let trimmed = input.trim();
        if trimmed.starts_with('{') {
            let json: DiagramJson = serde_json::from_str(trimmed)?;
            let d = Self::from_json(&json)?;
            if let Some(k) = kind {
                d.ensure_kind(k)?;
            }
            if let Some(n) = n.filter(|&n| n != d.n()) {
                return Err(Error::Parse(format!(
                    "diagram has n = {}, expected {n}",
                    d.n()
                )));
            }
            return Ok(d);
        }
        let lines: Vec<&str> = trimmed.lines().map(str::trim).collect();
        let n = n.unwrap_or(lines.len());
        match kind {
            Some(k) => Self::parse_text(k, n, trimmed),
            None => {
                let width = lines.first().map_or(0, |l| l.chars().count());
                if width + 1 == lines.len() {
                    return Self::parse_text(DiagramKind::Bvpd, n, trimmed);
                }
                Self::parse_text(DiagramKind::Pd, n, trimmed)
                    .or_else(|_| Self::parse_text(DiagramKind::Mvpd, n, trimmed))
            }
        }
    }
}
