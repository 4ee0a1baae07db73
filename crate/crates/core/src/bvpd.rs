//! Bumpless vertical-less pipe dreams and the top-degree formula.
//!
//! Everything here needs an inverse fireworks permutation. BVPD cell `(i, j)`
//! corresponds to MVPD/PD cell `(i, j + 1)`.

use std::collections::BTreeSet;

use crate::diagram::{sort_canonical, Cell, Diagram, DiagramKind, Tile};
use crate::error::{Error, Result};
use crate::mvpd::{self, deficit, ensure_member};
use crate::permutation::Permutation;
use crate::pipedream::Limits;
use crate::polynomial::Polynomial;
use crate::search::TileSearch;

fn require_inverse_fireworks(w: &Permutation) -> Result<()> {
    if w.is_inverse_fireworks() {
        Ok(())
    } else {
        Err(Error::NotInverseFireworks(w.to_string()))
    }
}

/// Whether `b` is a valid BVPD with code `α(w)`.
pub fn is_member(b: &Diagram, w: &Permutation) -> bool {
    b.kind() == DiagramKind::Bvpd
        && b.n() == w.n()
        && b.validate().is_valid()
        && w.alpha().ok() == b.column_to_row_code().ok()
}

fn ensure_bvpd_of(b: &Diagram, w: &Permutation) -> Result<()> {
    b.ensure_kind(DiagramKind::Bvpd)?;
    if b.n() != w.n() {
        return Err(Error::Precondition(format!(
            "diagram has n = {}, permutation {w} has n = {}",
            b.n(),
            w.n()
        )));
    }
    b.ensure_valid()?;
    let code = b.column_to_row_code()?;
    let alpha = w.alpha()?;
    if code != alpha {
        return Err(Error::Precondition(format!(
            "diagram has code {code}, BVPD({w}) needs {alpha}"
        )));
    }
    Ok(())
}

pub fn enumerate_bvpd(w: &Permutation) -> Result<Vec<Diagram>> {
    enumerate_bvpd_with(w, &Limits::default())
}

pub fn enumerate_bvpd_with(w: &Permutation, limits: &Limits) -> Result<Vec<Diagram>> {
    require_inverse_fireworks(w)?;
    limits.check(w.n())?;
    let n = w.n();
    let search = TileSearch::new(DiagramKind::Bvpd, n, &w.alpha()?)?;
    let mut out = Vec::new();
    search.for_each(|tiles| {
        out.push(Diagram::from_tiles(DiagramKind::Bvpd, n, tiles.to_vec()).expect("sized grid"));
    });
    sort_canonical(&mut out);
    Ok(out)
}

/// Positions of Cross, Horizontal and ElbowSE tiles.
pub fn wty_bvpd(b: &Diagram) -> Result<BTreeSet<Cell>> {
    b.ensure_kind(DiagramKind::Bvpd)?;
    Ok(b.weighty_cells())
}

/// `wt_B(x)`; see [`Diagram::weight`] for the entering-row factor.
pub fn weight(b: &Diagram) -> Result<crate::polynomial::Monomial> {
    b.ensure_kind(DiagramKind::Bvpd)?;
    Ok(b.weight())
}

/// Sum of BVPD weights, which is the top-degree part of `𝔊_w` up to sign.
pub fn top_grothendieck_via_bvpd(w: &Permutation) -> Result<Polynomial> {
    let mut g = Polynomial::zero(w.n());
    for b in enumerate_bvpd(w)? {
        g.add_term(b.weight(), 1.into());
    }
    Ok(g)
}

/// Drop the first column of a top MVPD and unmark its marked elbows.
pub fn m_to_b(m: &Diagram, w: &Permutation) -> Result<Diagram> {
    require_inverse_fireworks(w)?;
    ensure_member(m, w)?;
    if deficit(m) != 0 {
        return Err(Error::Precondition(
            "diagram has a Bump or unmarked ElbowSE, so it is not top".into(),
        ));
    }
    let n = m.n();
    for i in 1..=n {
        if !matches!(m.tile(i, 1), Tile::Blank | Tile::Horizontal) {
            return Err(Error::Invariant(format!(
                "first column of a top MVPD holds {:?} at ({i}, 1)",
                m.tile(i, 1)
            )));
        }
    }
    let mut b = Diagram::blank(DiagramKind::Bvpd, n);
    for ((i, j), tile) in m.cells().filter(|&((_, j), _)| j > 1) {
        let t = if tile == Tile::MarkedSE {
            Tile::ElbowSE
        } else {
            tile
        };
        b.set((i, j - 1), t);
    }
    ensure_bvpd_of(&b, w)
        .map_err(|e| Error::Invariant(format!("image is not in BVPD({w}): {e}")))?;
    Ok(b)
}

/// Prepend a column of Horizontals at the entering rows and mark every elbow.
pub fn b_to_m(b: &Diagram, w: &Permutation) -> Result<Diagram> {
    require_inverse_fireworks(w)?;
    ensure_bvpd_of(b, w)?;
    let n = b.n();
    let mut m = Diagram::blank(DiagramKind::Mvpd, n);
    for i in w.alpha_prime().entries.iter().copied().filter(|&r| r != 0) {
        m.set((i, 1), Tile::Horizontal);
    }
    for ((i, j), tile) in b.cells() {
        let t = if tile == Tile::ElbowSE {
            Tile::MarkedSE
        } else {
            tile
        };
        m.set((i, j + 1), t);
    }
    ensure_member(&m, w)
        .map_err(|e| Error::Invariant(format!("image is not in MVPD({w}): {e}")))?;
    Ok(m)
}

/// BVPD to top pipe dream, keeping weighty positions (shifted one column).
pub fn psi(b: &Diagram, w: &Permutation) -> Result<Diagram> {
    mvpd::phi_inverse(&b_to_m(b, w)?, w)
}

pub fn psi_inverse(p: &Diagram, w: &Permutation) -> Result<Diagram> {
    require_inverse_fireworks(w)?;
    m_to_b(&mvpd::phi(p, w)?, w)
}

/// Cross positions `psi(b)` must have: `(i, j)` with `(i, j − 1)` weighty in
/// `b`, plus `(i, 1)` for every row where a pipe of `b` enters.
pub fn predicted_psi_crosses(b: &Diagram) -> Result<BTreeSet<Cell>> {
    let mut cells: BTreeSet<Cell> = wty_bvpd(b)?.into_iter().map(|(i, j)| (i, j + 1)).collect();
    if b.cols() == 0 {
        return Ok(cells);
    }
    cells.extend(b.entering_rows().into_iter().map(|i| (i, 1)));
    Ok(cells)
}
