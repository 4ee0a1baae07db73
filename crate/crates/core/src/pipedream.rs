//! Pipe dreams: exhaustive enumeration of the staircase fillings, grouping
//! by permutation, and the signed weight sums defining Grothendieck
//! polynomials.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{BufRead, Write};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use once_cell::sync::Lazy;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{sort_canonical, Cell, Diagram, DiagramKind, Tile};
use crate::error::{Error, Result};
use crate::permutation::{Code, CodeRole, Permutation};
use crate::polynomial::{signed_factor_sum, Monomial, Polynomial};
use crate::search::TileSearch;

/// Upper bound on `n` for exhaustive work. The default of 7 means at most
/// `2^21` pipe dream fillings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_n: 7 }
    }
}

impl Limits {
    /// Largest `n` whose fillings still fit in a `u64` bit mask.
    pub const HARD_MAX: usize = 11;

    pub fn forced() -> Self {
        Self {
            max_n: Self::HARD_MAX,
        }
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if n > self.max_n.min(Self::HARD_MAX) {
            Err(Error::BoundExceeded {
                n,
                max: self.max_n.min(Self::HARD_MAX),
            })
        } else {
            Ok(())
        }
    }
}

/// Cells `(i, j)` with `i + j <= n`, row-major. Bit `k` of a filling is set
/// when cell `k` holds a Cross (clear means Bump).
pub fn choice_cells(n: usize) -> Vec<Cell> {
    (1..n)
        .flat_map(|i| (1..=n - i).map(move |j| (i, j)))
        .collect()
}

/// Top reading of the filling `bits`, computed without building a grid.
fn top_reading(n: usize, bits: u64) -> Vec<usize> {
    // rising[j]: label entering row i from below in column j.
    let mut rising = vec![0usize; n + 2];
    let mut crossed = vec![0u16; n + 1];
    // Row i's choice cells start at this bit offset.
    let offset = |i: usize| (1..i).map(|r| n - r).sum::<usize>();
    for i in (1..=n).rev() {
        let mut west = i;
        let base = offset(i);
        for j in 1..=n - i {
            let south = rising[j];
            let (north, east) = if bits >> (base + j - 1) & 1 == 1 {
                let (a, b) = (west.min(south), west.max(south));
                if crossed[a] >> b & 1 == 0 {
                    crossed[a] |= 1 << b;
                    (south, west)
                } else {
                    (west, south)
                }
            } else {
                (west, south)
            };
            rising[j] = north;
            west = east;
        }
        rising[n + 1 - i] = west;
    }
    rising[1..=n].to_vec()
}

/// Every pipe dream of size `n`, grouped by permutation.
#[derive(Debug)]
pub struct PipeDreamIndex {
    n: usize,
    cells: Vec<Cell>,
    by_perm: BTreeMap<Permutation, Vec<u64>>,
}

impl PipeDreamIndex {
    pub fn build(n: usize) -> Result<Self> {
        Self::build_with(n, &Limits::default())
    }

    pub fn build_with(n: usize, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPermutation("n must be positive".into()));
        }
        limits.check(n)?;
        let cells = choice_cells(n);
        let total: u64 = 1 << cells.len();
        const CHUNK: u64 = 1 << 12;
        let partials: Vec<BTreeMap<Vec<usize>, Vec<u64>>> = (0..total.div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| {
                let mut part: BTreeMap<Vec<usize>, Vec<u64>> = BTreeMap::new();
                for bits in c * CHUNK..((c + 1) * CHUNK).min(total) {
                    part.entry(top_reading(n, bits)).or_default().push(bits);
                }
                part
            })
            .collect();
        let mut by_perm: BTreeMap<Permutation, Vec<u64>> = BTreeMap::new();
        for part in partials {
            for (reading, bits) in part {
                let w = Permutation::from_one_line(reading)?.inverse();
                by_perm.entry(w).or_default().extend(bits);
            }
        }
        Ok(Self { n, cells, by_perm })
    }

    /// Shared, lazily built index for `n` under the default limits.
    pub fn shared(n: usize) -> Result<Arc<PipeDreamIndex>> {
        static CACHE: Lazy<Mutex<HashMap<usize, Arc<PipeDreamIndex>>>> =
            Lazy::new(|| Mutex::new(HashMap::new()));
        if let Some(idx) = CACHE.lock().unwrap().get(&n) {
            return Ok(idx.clone());
        }
        let idx = Arc::new(Self::build(n)?);
        Ok(CACHE.lock().unwrap().entry(n).or_insert(idx).clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> usize {
        self.by_perm.values().map(Vec::len).sum()
    }

    pub fn permutations(&self) -> impl Iterator<Item = &Permutation> {
        self.by_perm.keys()
    }

    fn check_perm(&self, w: &Permutation) -> Result<()> {
        if w.n() != self.n {
            return Err(Error::Precondition(format!(
                "permutation {w} is not in S_{}",
                self.n
            )));
        }
        Ok(())
    }

    /// Filling masks of `PD(w)`, ascending.
    pub fn fillings(&self, w: &Permutation) -> Result<&[u64]> {
        self.check_perm(w)?;
        Ok(self.by_perm.get(w).map_or(&[][..], Vec::as_slice))
    }

    pub fn diagram(&self, bits: u64) -> Diagram {
        let mut d = Diagram::blank(DiagramKind::Pd, self.n);
        for (k, &cell) in self.cells.iter().enumerate() {
            d.set(cell, if bits >> k & 1 == 1 { Tile::Cross } else { Tile::Bump });
        }
        for i in 1..=self.n {
            d.set((i, self.n + 1 - i), Tile::ElbowWN);
        }
        d
    }

    fn cross_cells(&self, bits: u64) -> BTreeSet<Cell> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(k, _)| bits >> k & 1 == 1)
            .map(|(_, &c)| c)
            .collect()
    }

    pub fn pd_set(&self, w: &Permutation) -> Result<Vec<Diagram>> {
        let mut out: Vec<Diagram> = self.fillings(w)?.iter().map(|&b| self.diagram(b)).collect();
        sort_canonical(&mut out);
        Ok(out)
    }

    pub fn grothendieck(&self, w: &Permutation) -> Result<Polynomial> {
        let len = w.length();
        let mut g = Polynomial::zero(self.n);
        for &bits in self.fillings(w)? {
            let rows: Vec<usize> = self.cross_cells(bits).iter().map(|c| c.0).collect();
            let sign = sign_for(rows.len(), len);
            g.add_term(Monomial::from_rows(self.n, &rows)?, sign);
        }
        Ok(g)
    }

    pub fn double_grothendieck(&self, w: &Permutation) -> Result<Polynomial> {
        let len = w.length();
        let sets: Vec<BTreeSet<Cell>> =
            self.fillings(w)?.iter().map(|&b| self.cross_cells(b)).collect();
        signed_factor_sum(self.n, sets.iter().map(|c| ((c.len() + len) % 2 == 1, c)))
    }

    /// Largest number of crosses over `PD(w)`.
    pub fn raj(&self, w: &Permutation) -> Result<usize> {
        Ok(self
            .fillings(w)?
            .iter()
            .map(|b| b.count_ones() as usize)
            .max()
            .unwrap_or(0))
    }

    /// The members of `PD(w)` with the largest number of crosses.
    pub fn top_pd_set(&self, w: &Permutation) -> Result<Vec<Diagram>> {
        let raj = self.raj(w)?;
        let mut out: Vec<Diagram> = self
            .fillings(w)?
            .iter()
            .filter(|b| b.count_ones() as usize == raj)
            .map(|&b| self.diagram(b))
            .collect();
        sort_canonical(&mut out);
        Ok(out)
    }

    /// JSON lines `[bits, [w(1), ..., w(n)]]`, ascending by bits.
    pub fn write_cache(&self, mut out: impl Write) -> Result<()> {
        let mut rows: Vec<(u64, &Permutation)> = self
            .by_perm
            .iter()
            .flat_map(|(w, bits)| bits.iter().map(move |&b| (b, w)))
            .collect();
        rows.sort();
        for row in rows {
            serde_json::to_writer(&mut out, &CacheLine(row.0, row.1.clone()))?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    /// Load an index written by [`PipeDreamIndex::write_cache`]. Every line
    /// is re-traced, so a corrupt cache is rejected rather than trusted.
    pub fn read_cache(n: usize, input: impl BufRead) -> Result<Self> {
        let cells = choice_cells(n);
        let mut by_perm: BTreeMap<Permutation, Vec<u64>> = BTreeMap::new();
        let mut seen = 0usize;
        for line in input.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let CacheLine(bits, w) = serde_json::from_str(&line)?;
            if w.n() != n || bits >> cells.len() != 0 {
                return Err(Error::Parse(format!("cache line {line:?} does not fit n = {n}")));
            }
            if Permutation::from_one_line(top_reading(n, bits))?.inverse() != w {
                return Err(Error::Parse(format!("cache line {line:?} has the wrong permutation")));
            }
            by_perm.entry(w).or_default().push(bits);
            seen += 1;
        }
        if seen != 1usize << cells.len() {
            return Err(Error::Parse(format!(
                "cache has {seen} fillings, expected {}",
                1usize << cells.len()
            )));
        }
        for v in by_perm.values_mut() {
            v.sort_unstable();
        }
        Ok(Self { n, cells, by_perm })
    }
}

#[derive(Serialize, Deserialize)]
struct CacheLine(u64, Permutation);

fn sign_for(weight: usize, length: usize) -> BigInt {
    if (weight + length) % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

/// `PD(w)` via the shared index.
pub fn pd_set(w: &Permutation) -> Result<Vec<Diagram>> {
    PipeDreamIndex::shared(w.n())?.pd_set(w)
}

/// `PD(w)` by backtracking on the target top reading instead of sweeping all
/// fillings.
pub fn pd_set_backtracking(w: &Permutation) -> Result<Vec<Diagram>> {
    let reading = Code::new(CodeRole::Full, w.inverse().one_line().to_vec())?;
    let search = TileSearch::new(DiagramKind::Pd, w.n(), &reading)?;
    let mut out = Vec::new();
    search.for_each(|tiles| {
        out.push(Diagram::from_tiles(DiagramKind::Pd, w.n(), tiles.to_vec()).expect("sized grid"))
    });
    sort_canonical(&mut out);
    Ok(out)
}

pub fn enumerate_all(n: usize) -> Result<PipeDreamIndex> {
    PipeDreamIndex::build(n)
}

/// Positions of the Cross tiles of a pipe dream.
pub fn wty_pd(p: &Diagram) -> Result<BTreeSet<Cell>> {
    p.ensure_kind(DiagramKind::Pd)?;
    Ok(p.weighty_cells())
}

pub fn grothendieck(w: &Permutation) -> Result<Polynomial> {
    PipeDreamIndex::shared(w.n())?.grothendieck(w)
}

pub fn double_grothendieck(w: &Permutation) -> Result<Polynomial> {
    PipeDreamIndex::shared(w.n())?.double_grothendieck(w)
}

pub fn raj(w: &Permutation) -> Result<usize> {
    PipeDreamIndex::shared(w.n())?.raj(w)
}

pub fn top_pd_set(w: &Permutation) -> Result<Vec<Diagram>> {
    PipeDreamIndex::shared(w.n())?.top_pd_set(w)
}
