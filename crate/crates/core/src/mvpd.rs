//! Marked vertical-less pipe dreams.
//!
//! `MVPD(w)` is the set of MVPDs with column-to-row code `α′(w)`. Removing
//! the pipes labelled by left-to-right maxima of `w⁻¹` from a pipe dream
//! gives a weight-preserving bijection `PD(w) → MVPD(w)`.

use std::collections::BTreeSet;

use crate::diagram::{has_horizontal_below, sort_canonical, Cell, Diagram, DiagramKind, Side, Tile};
use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::pipedream::{Limits, PipeDreamIndex};
use crate::polynomial::{signed_factor_sum, Polynomial};
use crate::search::TileSearch;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvpdSet {
    pub w: Permutation,
    /// Sorted by text rendering.
    pub members: Vec<Diagram>,
}

impl MvpdSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Whether `m` is a valid MVPD with code `α′(w)`.
pub fn is_member(m: &Diagram, w: &Permutation) -> bool {
    m.kind() == DiagramKind::Mvpd
        && m.n() == w.n()
        && m.validate().is_valid()
        && m.column_to_row_code().ok() == Some(w.alpha_prime())
}

pub(crate) fn ensure_member(m: &Diagram, w: &Permutation) -> Result<()> {
    m.ensure_kind(DiagramKind::Mvpd)?;
    if m.n() != w.n() {
        return Err(Error::Precondition(format!(
            "diagram has n = {}, permutation {w} has n = {}",
            m.n(),
            w.n()
        )));
    }
    m.ensure_valid()?;
    let code = m.column_to_row_code()?;
    if code != w.alpha_prime() {
        return Err(Error::Precondition(format!(
            "diagram has code {code}, MVPD({w}) needs {}",
            w.alpha_prime()
        )));
    }
    Ok(())
}

fn ensure_pd_of(p: &Diagram, w: &Permutation) -> Result<Vec<usize>> {
    p.ensure_kind(DiagramKind::Pd)?;
    p.ensure_valid()?;
    let reading = p.trace()?.top_reading;
    let u = Permutation::from_one_line(reading.clone())?.inverse();
    if &u != w {
        return Err(Error::Precondition(format!("pipe dream belongs to {u}, not {w}")));
    }
    Ok(reading)
}

/// Delete the pipes labelled by left-to-right maxima of `w⁻¹`, keeping the
/// logical routes of the others. A Cross that keeps only its South-to-East
/// route becomes a marked elbow.
pub fn phi(p: &Diagram, w: &Permutation) -> Result<Diagram> {
    let reading = ensure_pd_of(p, w)?;
    let removed = Permutation::from_one_line(reading)?.lr_maxima();
    let tr = p.trace()?;
    let mut m = Diagram::blank(DiagramKind::Mvpd, p.n());
    for (cell, tile) in p.cells() {
        let kept: Vec<(Side, Side)> = tr
            .traversals(cell)
            .iter()
            .filter(|t| !removed.contains(&t.label))
            .map(|t| (t.from, t.to))
            .collect();
        let has = |arc: (Side, Side)| kept.contains(&arc);
        let we = has((Side::West, Side::East));
        let sn = has((Side::South, Side::North));
        let wn = has((Side::West, Side::North));
        let se = has((Side::South, Side::East));
        let new = match (tile, we, sn, wn, se) {
            (_, false, false, false, false) => Tile::Blank,
            (Tile::Cross, true, true, _, _) => Tile::Cross,
            (Tile::Cross, _, _, true, true) => Tile::Cross,
            (Tile::Cross, true, false, false, false) => Tile::Horizontal,
            (Tile::Cross, false, false, false, true) => Tile::MarkedSE,
            (Tile::Bump, _, _, true, true) => Tile::Bump,
            (Tile::Bump | Tile::ElbowWN, _, _, true, false) => Tile::ElbowWN,
            (Tile::Bump, _, _, false, true) => Tile::ElbowSE,
            _ => {
                return Err(Error::Invariant(format!(
                    "{tile:?} at {cell:?} reduces to arcs {kept:?} after removing pipes {removed:?}"
                )))
            }
        };
        m.set(cell, new);
    }
    ensure_member(&m, w).map_err(|e| Error::Invariant(format!("image is not in MVPD({w}): {e}")))?;
    Ok(m)
}

/// Cell-local inverse of [`phi`]: weighty tiles become Cross, the remaining
/// staircase cells become Bump, the anti-diagonal becomes ElbowWN.
pub fn phi_inverse(m: &Diagram, w: &Permutation) -> Result<Diagram> {
    ensure_member(m, w)?;
    let n = m.n();
    let mut p = Diagram::blank(DiagramKind::Pd, n);
    for ((i, j), tile) in m.cells() {
        let new = if i + j <= n {
            match tile {
                Tile::Cross | Tile::MarkedSE | Tile::Horizontal => Tile::Cross,
                _ => Tile::Bump,
            }
        } else if i + j == n + 1 {
            Tile::ElbowWN
        } else {
            Tile::Blank
        };
        p.set((i, j), new);
    }
    ensure_pd_of(&p, w)
        .map_err(|e| Error::Invariant(format!("preimage is not in PD({w}): {e}")))?;
    Ok(p)
}

/// `MVPD(w)` as the image of `PD(w)` under [`phi`].
pub fn mvpd_set(w: &Permutation) -> Result<MvpdSet> {
    let index = PipeDreamIndex::shared(w.n())?;
    mvpd_set_in(&index, w)
}

pub fn mvpd_set_in(index: &PipeDreamIndex, w: &Permutation) -> Result<MvpdSet> {
    let mut members = index
        .pd_set(w)?
        .iter()
        .map(|p| phi(p, w))
        .collect::<Result<Vec<_>>>()?;
    sort_canonical(&mut members);
    Ok(MvpdSet {
        w: w.clone(),
        members,
    })
}

/// `MVPD(w)` enumerated directly: backtrack over unmarked fillings with code
/// `α′(w)`, then add every subset of marks allowed by the mark rule.
pub fn enumerate_direct(w: &Permutation) -> Result<MvpdSet> {
    enumerate_direct_with(w, &Limits::default())
}

pub fn enumerate_direct_with(w: &Permutation, limits: &Limits) -> Result<MvpdSet> {
    limits.check(w.n())?;
    let n = w.n();
    let search = TileSearch::new(DiagramKind::Mvpd, n, &w.alpha_prime())?;
    let mut members = Vec::new();
    search.for_each(|tiles| {
        let base = Diagram::from_tiles(DiagramKind::Mvpd, n, tiles.to_vec()).expect("sized grid");
        let tr = base.trace().expect("search output traces");
        let markable: Vec<Cell> = base
            .cells()
            .filter(|&(_, t)| t == Tile::ElbowSE)
            .filter(|&(cell, _)| {
                let label = tr.label_through(cell, Side::South, Side::East).unwrap();
                has_horizontal_below(&base, &tr, label, cell.0)
            })
            .map(|(c, _)| c)
            .collect();
        for mask in 0u64..(1 << markable.len()) {
            let mut d = base.clone();
            for (k, &cell) in markable.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    d.set(cell, Tile::MarkedSE);
                }
            }
            members.push(d);
        }
    });
    sort_canonical(&mut members);
    Ok(MvpdSet {
        w: w.clone(),
        members,
    })
}

/// Positions of Horizontal, Cross and MarkedSE tiles.
pub fn wty_mvpd(m: &Diagram) -> Result<BTreeSet<Cell>> {
    m.ensure_kind(DiagramKind::Mvpd)?;
    Ok(m.weighty_cells())
}

fn signed_sum(members: &[Diagram], w: &Permutation, double: bool) -> Result<Polynomial> {
    let n = w.n();
    let len = w.length();
    let sets: Vec<BTreeSet<Cell>> = members.iter().map(Diagram::weighty_cells).collect();
    let negative = |c: &BTreeSet<Cell>| (c.len() + len) % 2 == 1;
    if double {
        return signed_factor_sum(n, sets.iter().map(|c| (negative(c), c)));
    }
    let mut g = Polynomial::zero(n);
    for (m, cells) in members.iter().zip(&sets) {
        g.signed_accumulate(negative(cells), &Polynomial::term(m.weight(), 1));
    }
    Ok(g)
}

pub fn grothendieck_via_mvpd(w: &Permutation) -> Result<Polynomial> {
    signed_sum(&mvpd_set(w)?.members, w, false)
}

pub fn double_grothendieck_via_mvpd(w: &Permutation) -> Result<Polynomial> {
    signed_sum(&mvpd_set(w)?.members, w, true)
}

/// Signed weight sum over an explicit member list.
pub fn grothendieck_over(members: &[Diagram], w: &Permutation, double: bool) -> Result<Polynomial> {
    signed_sum(members, w, double)
}

/// Number of Bump tiles plus unmarked ElbowSE tiles.
pub fn deficit(m: &Diagram) -> usize {
    m.count(Tile::Bump) + m.count(Tile::ElbowSE)
}

/// `|wty(M)| + #Bump + #ElbowSE = r(w)`.
pub fn lemma46_check(m: &Diagram, w: &Permutation) -> bool {
    m.weighty_cells().len() + deficit(m) == w.r_stat()
}

/// Whether `m` has the maximal number of weighty tiles in `MVPD(w)`. For
/// inverse fireworks `w` this is the tile census (no Bump, no unmarked
/// ElbowSE); otherwise the set is enumerated.
pub fn is_top(m: &Diagram, w: &Permutation) -> Result<bool> {
    ensure_member(m, w)?;
    if w.is_inverse_fireworks() {
        return Ok(deficit(m) == 0);
    }
    let best = mvpd_set(w)?
        .members
        .iter()
        .map(|d| d.weighty_cells().len())
        .max()
        .unwrap_or(0);
    Ok(m.weighty_cells().len() == best)
}

pub fn top_mvpd_set(w: &Permutation) -> Result<Vec<Diagram>> {
    top_of(&mvpd_set(w)?.members)
}

pub(crate) fn top_of(members: &[Diagram]) -> Result<Vec<Diagram>> {
    let best = members
        .iter()
        .map(|d| d.weighty_cells().len())
        .max()
        .unwrap_or(0);
    Ok(members
        .iter()
        .filter(|d| d.weighty_cells().len() == best)
        .cloned()
        .collect())
}

/// A single-tile rewrite adding one weighty tile.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Upgrade {
    /// Mark an ElbowSE whose pipe has a Horizontal tile below it.
    Mark(Cell),
    /// Turn a Bump whose two pipes really cross elsewhere into a Cross.
    BumpToCross(Cell),
}

impl Upgrade {
    pub fn cell(&self) -> Cell {
        match *self {
            Upgrade::Mark(c) | Upgrade::BumpToCross(c) => c,
        }
    }
}

/// First accepted upgrade in row-major order, with the rewritten diagram.
/// A candidate is accepted only if the result is still in `MVPD(w)`.
pub fn find_upgrade(m: &Diagram, w: &Permutation) -> Result<Option<(Upgrade, Diagram)>> {
    for up in upgrade_candidates(m, w)? {
        let d = match up {
            Upgrade::Mark(c) => m.with_tile(c, Tile::MarkedSE),
            Upgrade::BumpToCross(c) => m.with_tile(c, Tile::Cross),
        };
        if is_member(&d, w) {
            return Ok(Some((up, d)));
        }
    }
    Ok(None)
}

/// Every cell matching the upgrade patterns, row-major, before revalidation.
/// A Bump whose pipes cross elsewhere need not survive the rewrite: outside
/// inverse fireworks permutations, turning it into a Cross can swap two exit
/// columns.
pub fn upgrade_candidates(m: &Diagram, w: &Permutation) -> Result<Vec<Upgrade>> {
    ensure_member(m, w)?;
    let tr = m.trace()?;
    let mut out = Vec::new();
    for (cell, tile) in m.cells() {
        match tile {
            Tile::ElbowSE => {
                let label = tr.label_through(cell, Side::South, Side::East).unwrap();
                if has_horizontal_below(m, &tr, label, cell.0) {
                    out.push(Upgrade::Mark(cell));
                }
            }
            Tile::Bump => {
                let p = tr.label_through(cell, Side::West, Side::North).unwrap();
                let q = tr.label_through(cell, Side::South, Side::East).unwrap();
                if tr.have_crossed(p, q) {
                    out.push(Upgrade::BumpToCross(cell));
                }
            }
            _ => {}
        }
    }
    Ok(out)
}

/// No accepted upgrade exists.
pub fn is_saturated(m: &Diagram, w: &Permutation) -> Result<bool> {
    Ok(find_upgrade(m, w)?.is_none())
}

/// No cell matches an upgrade pattern at all, valid or not.
pub fn is_strictly_saturated(m: &Diagram, w: &Permutation) -> Result<bool> {
    Ok(upgrade_candidates(m, w)?.is_empty())
}

/// `MVPD(w)` for every `w` in the index, in permutation order.
pub fn all_sets(index: &PipeDreamIndex) -> Result<Vec<MvpdSet>> {
    index.permutations().map(|w| mvpd_set_in(index, w)).collect()
}
