//! Droop moves on MVPDs and the construction behind the support conjecture
//! for inverse fireworks permutations: from a non-top `M`, build `M′` with
//! `wt(M′) = wt(M)·x_i`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::diagram::{Cell, Diagram, DiagramJson, DiagramKind, Tile};
use crate::error::{Error, Result};
use crate::mvpd::{self, deficit, ensure_member, find_upgrade, Upgrade};
use crate::permutation::Permutation;
use crate::pipedream::PipeDreamIndex;
use crate::polynomial::Monomial;

/// Where a droop applies: the S→E pipe at `(i, j)` moves its vertical run
/// from column `j` (rows `i+1..i′`) to column `j + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DroopSite {
    pub i: usize,
    pub j: usize,
    pub i_prime: usize,
}

/// Check the droop conditions at `(i, j)`.
pub fn droop_site(m: &Diagram, i: usize, j: usize) -> Result<DroopSite> {
    m.ensure_kind(DiagramKind::Mvpd)?;
    let n = m.n();
    let bad = |why: String| Err(Error::Precondition(format!("no droop at ({i}, {j}): {why}")));
    if i == 0 || j == 0 || i > n || j >= n {
        return bad("cell outside the grid".into());
    }
    let here = m.tile(i, j);
    let fake_cross = here == Tile::Cross
        && m.trace()?.crossing_at((i, j)).is_some_and(|c| !c.real);
    if !(matches!(here, Tile::ElbowSE | Tile::MarkedSE | Tile::Bump) || fake_cross) {
        return bad(format!("{here:?} has no pipe from the bottom to the right"));
    }
    if m.tile(i, j + 1) != Tile::Horizontal {
        return bad(format!("({i}, {}) is {:?}, not Horizontal", j + 1, m.tile(i, j + 1)));
    }
    let Some(i_prime) = (i + 1..=n).find(|&r| m.tile(r, j) != Tile::Cross) else {
        return bad("column runs out of rows".into());
    };
    for r in i + 1..i_prime {
        if m.tile(r, j + 1) != Tile::Horizontal {
            return bad(format!("({r}, {}) is {:?}, not Horizontal", j + 1, m.tile(r, j + 1)));
        }
    }
    if m.tile(i_prime, j) != Tile::ElbowWN {
        return bad(format!("({i_prime}, {j}) is {:?}, not ElbowWN", m.tile(i_prime, j)));
    }
    let corner = m.tile(i_prime, j + 1);
    if !matches!(corner, Tile::Blank | Tile::ElbowSE | Tile::MarkedSE) {
        return bad(format!("({i_prime}, {}) is {corner:?}", j + 1));
    }
    Ok(DroopSite { i, j, i_prime })
}

fn apply_droop(m: &Diagram, site: DroopSite) -> Diagram {
    let DroopSite { i, j, i_prime } = site;
    let mut d = m.clone();
    let top = match m.tile(i, j) {
        Tile::ElbowSE | Tile::MarkedSE => Tile::Blank,
        // The West pipe still leaves North once the South input is gone.
        _ => Tile::ElbowWN,
    };
    d.set((i, j), top);
    d.set((i, j + 1), Tile::ElbowSE);
    for r in i + 1..i_prime {
        d.set((r, j), Tile::Horizontal);
        d.set((r, j + 1), Tile::Cross);
    }
    d.set((i_prime, j), Tile::Horizontal);
    let corner = match m.tile(i_prime, j + 1) {
        Tile::Blank => Tile::ElbowWN,
        _ => Tile::Bump,
    };
    d.set((i_prime, j + 1), corner);
    d
}

pub fn droop(m: &Diagram, i: usize, j: usize, w: &Permutation) -> Result<Diagram> {
    ensure_member(m, w)?;
    let site = droop_site(m, i, j)?;
    let d = apply_droop(m, site);
    ensure_member(&d, w).map_err(|e| {
        Error::Invariant(format!(
            "droop at ({i}, {j}) left MVPD({w}): {e}\nbefore:\n{}\nafter:\n{}",
            m.render_text(),
            d.render_text()
        ))
    })?;
    Ok(d)
}

/// Droop, then mark the new elbow at `(i, j + 1)`. Checks the weight ledger:
/// `(i′, j)` becomes weighty, `(i, j)` and `(i′, j + 1)` stop being weighty,
/// nothing else changes.
pub fn droop_prime(m: &Diagram, i: usize, j: usize, w: &Permutation) -> Result<Diagram> {
    let site = droop_site(m, i, j)?;
    let mut d = droop(m, i, j, w)?;
    d.set((i, j + 1), Tile::MarkedSE);
    ensure_member(&d, w).map_err(|e| {
        Error::Invariant(format!("marking ({i}, {}) after a droop failed: {e}", j + 1))
    })?;
    let mut expected = m.weighty_cells();
    expected.remove(&(i, j));
    expected.remove(&(site.i_prime, j + 1));
    expected.insert((site.i_prime, j));
    let found = d.weighty_cells();
    if found != expected {
        return Err(Error::Invariant(format!(
            "droop′ at ({i}, {j}) broke the weight ledger: expected {expected:?}, found {found:?}"
        )));
    }
    Ok(d)
}

/// Lowest Bump or unmarked ElbowSE with a Horizontal on its right (maximal
/// row, then maximal column).
pub fn pattern_cell(m: &Diagram) -> Option<Cell> {
    m.cells()
        .filter(|&((i, j), t)| {
            matches!(t, Tile::Bump | Tile::ElbowSE) && m.get(i, j + 1) == Some(Tile::Horizontal)
        })
        .map(|(c, _)| c)
        .max()
}

fn ensure_constructible(m: &Diagram, w: &Permutation) -> Result<()> {
    if !w.is_inverse_fireworks() {
        return Err(Error::NotInverseFireworks(w.to_string()));
    }
    ensure_member(m, w)?;
    if deficit(m) == 0 {
        return Err(Error::Precondition(
            "diagram is already of top degree".into(),
        ));
    }
    Ok(())
}

/// [`pattern_cell`] for a saturated, non-top `m`; its absence contradicts
/// the existence guarantee and is reported with the diagram.
pub fn find_pattern(m: &Diagram, w: &Permutation) -> Result<Cell> {
    ensure_constructible(m, w)?;
    if !mvpd::is_saturated(m, w)? {
        return Err(Error::Precondition("diagram is not saturated".into()));
    }
    pattern_cell(m).ok_or_else(|| {
        Error::Invariant(format!(
            "saturated non-top MVPD without a droop pattern:\n{}",
            m.render_text()
        ))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepOp {
    Mark,
    BumpToCross,
    DroopPrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub op: StepOp,
    pub cell: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub w: Permutation,
    pub input: DiagramJson,
    pub steps: Vec<StepRecord>,
    pub output: DiagramJson,
    pub gained_row: usize,
    /// Diagram after each step, in order.
    #[serde(skip)]
    pub trail: Vec<Diagram>,
    /// Column sum of `wty(input)`, which bounds the number of droop′ calls.
    #[serde(skip)]
    pub bound: usize,
}

impl Certificate {
    pub fn droop_count(&self) -> usize {
        self.steps.iter().filter(|s| s.op == StepOp::DroopPrime).count()
    }

    pub fn output_diagram(&self) -> &Diagram {
        self.trail.last().expect("a certificate has at least one step")
    }
}

/// Build `M′ ∈ MVPD(w)` with `wt(M′) = wt(M)·x_i`.
pub fn construct_up(m: &Diagram, w: &Permutation) -> Result<Certificate> {
    ensure_constructible(m, w)?;
    let start = m.weighty_cells();
    let bound: usize = start.iter().map(|&(_, j)| j).sum();
    let mut steps = Vec::new();
    let mut trail = Vec::new();
    let mut cur = m.clone();
    let finish = |steps: Vec<StepRecord>, trail: Vec<Diagram>, out: &Diagram, row: usize| {
        let want = m.weight().times_x(row);
        if out.weight() != want || out.weighty_cells().len() != start.len() + 1 {
            return Err(Error::Invariant(format!(
                "construction for {w} ended at weight {}, expected {want}",
                out.weight()
            )));
        }
        Ok(Certificate {
            w: w.clone(),
            input: m.to_json(),
            steps,
            output: out.to_json(),
            gained_row: row,
            trail,
            bound,
        })
    };
    loop {
        if let Some((up, next)) = find_upgrade(&cur, w)? {
            let (op, (i, j)) = match up {
                Upgrade::Mark(c) => (StepOp::Mark, c),
                Upgrade::BumpToCross(c) => (StepOp::BumpToCross, c),
            };
            steps.push(StepRecord { op, cell: [i, j] });
            trail.push(next.clone());
            return finish(steps, trail, &next, i);
        }
        if steps.len() >= bound {
            return Err(Error::Invariant(format!(
                "construction for {w} exceeded {bound} droop′ steps from\n{}",
                m.render_text()
            )));
        }
        let (i, j) = pattern_cell(&cur).ok_or_else(|| {
            Error::Invariant(format!(
                "saturated non-top MVPD without a droop pattern:\n{}",
                cur.render_text()
            ))
        })?;
        let site = droop_site(&cur, i, j)?;
        let next = droop_prime(&cur, i, j, w)?;
        steps.push(StepRecord {
            op: StepOp::DroopPrime,
            cell: [i, j],
        });
        trail.push(next.clone());
        let (before, after) = (cur.weighty_cells().len(), next.weighty_cells().len());
        if after == before + 1 {
            return finish(steps, trail, &next, site.i_prime);
        }
        if after != before || next.weight() != cur.weight() {
            return Err(Error::Invariant(format!(
                "droop′ at ({i}, {j}) changed the weight from {} to {}",
                cur.weight(),
                next.weight()
            )));
        }
        cur = next;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conj13Mode {
    Direct,
    Constructive,
}

/// `m · x_i` found in the support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extension {
    pub monomial: String,
    pub row: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportReport {
    pub w: Permutation,
    pub checked: usize,
    pub witnesses: Vec<Extension>,
    /// Monomials (or diagrams, in constructive mode) with no valid witness.
    pub failures: Vec<String>,
}

impl SupportReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn support_of(index: &PipeDreamIndex, w: &Permutation) -> Result<(BTreeSet<Monomial>, u32)> {
    let g = index.grothendieck(w)?;
    let raj = g.total_degree()?;
    Ok((g.support(), raj))
}

/// Every support monomial below the top degree can be multiplied by some
/// `x_i` and stay in the support.
pub fn check_conj13(w: &Permutation, mode: Conj13Mode) -> Result<SupportReport> {
    check_conj13_in(&*PipeDreamIndex::shared(w.n())?, w, mode)
}

pub fn check_conj13_in(
    index: &PipeDreamIndex,
    w: &Permutation,
    mode: Conj13Mode,
) -> Result<SupportReport> {
    let (support, raj) = support_of(index, w)?;
    let below: Vec<&Monomial> = support.iter().filter(|m| m.degree() < raj).collect();
    let mut report = SupportReport {
        w: w.clone(),
        checked: 0,
        witnesses: Vec::new(),
        failures: Vec::new(),
    };
    match mode {
        Conj13Mode::Direct => {
            for m in below {
                report.checked += 1;
                match (1..=w.n()).find(|&i| support.contains(&m.times_x(i))) {
                    Some(row) => report.witnesses.push(Extension {
                        monomial: m.to_string(),
                        row,
                    }),
                    None => report.failures.push(m.to_string()),
                }
            }
        }
        Conj13Mode::Constructive => {
            if !w.is_inverse_fireworks() {
                return Err(Error::NotInverseFireworks(w.to_string()));
            }
            let mut covered = BTreeSet::new();
            for m in mvpd::mvpd_set_in(index, w)?.members {
                if deficit(&m) == 0 {
                    continue;
                }
                report.checked += 1;
                match construct_up(&m, w) {
                    Ok(cert) => {
                        let up = m.weight().times_x(cert.gained_row);
                        if support.contains(&up) {
                            covered.insert(m.weight());
                            report.witnesses.push(Extension {
                                monomial: m.weight().to_string(),
                                row: cert.gained_row,
                            });
                        } else {
                            report.failures.push(format!(
                                "{} times x{} is not in the support",
                                m.weight(),
                                cert.gained_row
                            ));
                        }
                    }
                    Err(e) => report.failures.push(format!("{}: {e}", m.render_text())),
                }
            }
            for m in below {
                if !covered.contains(m) {
                    report.failures.push(format!("{m} has no certificate"));
                }
            }
            report.witnesses.sort_by(|a, b| (&a.monomial, a.row).cmp(&(&b.monomial, b.row)));
            report.witnesses.dedup();
        }
    }
    Ok(report)
}

/// Every support monomial below the top degree divides another one.
pub fn check_conj12(w: &Permutation) -> Result<SupportReport> {
    check_conj12_in(&*PipeDreamIndex::shared(w.n())?, w)
}

pub fn check_conj12_in(index: &PipeDreamIndex, w: &Permutation) -> Result<SupportReport> {
    let (support, raj) = support_of(index, w)?;
    let mut report = SupportReport {
        w: w.clone(),
        checked: 0,
        witnesses: Vec::new(),
        failures: Vec::new(),
    };
    for m in support.iter().filter(|m| m.degree() < raj) {
        report.checked += 1;
        match support.iter().find(|&other| other != m && m.divides(other)) {
            Some(other) => report.witnesses.push(Extension {
                monomial: format!("{m} | {other}"),
                row: 0,
            }),
            None => report.failures.push(m.to_string()),
        }
    }
    Ok(report)
}
