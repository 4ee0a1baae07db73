//! Independent oracles. Nothing here calls the library's tracer or
//! enumerators; diagrams are handled as plain character grids.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// Grid of symbols `. - + J r b R`, row-major, 1-based access via `at`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Grid {
    pub rows: usize,
    pub cols: usize,
    pub cells: Vec<char>,
}

impl Grid {
    pub fn parse(text: &str) -> Grid {
        let lines: Vec<&str> = text.lines().collect();
        let cols = lines.first().map_or(0, |l| l.len());
        Grid {
            rows: lines.len(),
            cols,
            cells: lines.iter().flat_map(|l| l.chars()).collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> char {
        self.cells[(i - 1) * self.cols + (j - 1)]
    }

    pub fn text(&self) -> String {
        self.cells
            .chunks(self.cols.max(1))
            .map(|c| c.iter().collect::<String>())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// (west, south, north, east) connectivity of a symbol.
fn ports(c: char) -> (bool, bool, bool, bool) {
    match c {
        '.' => (false, false, false, false),
        '-' => (true, false, false, true),
        '+' => (true, true, true, true),
        'J' => (true, false, true, false),
        'r' | 'R' => (false, true, false, true),
        'b' => (true, true, true, true),
        _ => panic!("bad symbol {c}"),
    }
}

pub struct NaiveTrace {
    /// Label leaving each column at the top (0 for none).
    pub top: Vec<usize>,
    /// (row, col, west label, south label, real)
    pub crosses: Vec<(usize, usize, usize, usize, bool)>,
    /// Labels through each cell as (label, from, to) with sides 'W','S','N','E'.
    pub through: BTreeMap<(usize, usize), Vec<(usize, char, char)>>,
}

/// Trace pipes entering at the rows whose first cell has a West port. Returns
/// `None` when labels collide with the tiles or leave through the right.
pub fn naive_trace(g: &Grid) -> Option<NaiveTrace> {
    let (rows, cols) = (g.rows, g.cols);
    // north_of[i][j]: label going up out of (i, j).
    let mut up = vec![vec![0usize; cols + 2]; rows + 2];
    let mut crossed: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut crosses = Vec::new();
    let mut through = BTreeMap::new();
    for i in (1..=rows).rev() {
        let mut carry = if cols > 0 && ports(g.at(i, 1)).0 { i } else { 0 };
        for j in 1..=cols {
            let c = g.at(i, j);
            let (west, south, _, _) = ports(c);
            let from_w = carry;
            let from_s = up[i + 1][j];
            if west != (from_w != 0) || south != (from_s != 0) {
                return None;
            }
            let mut seen = Vec::new();
            let (n_out, e_out) = match c {
                '.' => (0, 0),
                '-' => (0, from_w),
                'J' => (from_w, 0),
                'r' | 'R' => (0, from_s),
                'b' => (from_w, from_s),
                '+' => {
                    let key = (from_w.min(from_s), from_w.max(from_s));
                    if crossed.insert(key) {
                        crosses.push((i, j, from_w, from_s, true));
                        (from_s, from_w)
                    } else {
                        crosses.push((i, j, from_w, from_s, false));
                        (from_w, from_s)
                    }
                }
                _ => unreachable!(),
            };
            for (label, from) in [(from_w, 'W'), (from_s, 'S')] {
                if label == 0 {
                    continue;
                }
                let to = if n_out == label { 'N' } else { 'E' };
                seen.push((label, from, to));
            }
            through.insert((i, j), seen);
            up[i][j] = n_out;
            carry = e_out;
        }
        if carry != 0 {
            return None;
        }
    }
    Some(NaiveTrace {
        top: (1..=cols).map(|j| up[1][j]).collect(),
        crosses,
        through,
    })
}

pub fn inverse(w: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; w.len()];
    for (i, &v) in w.iter().enumerate() {
        inv[v - 1] = i + 1;
    }
    inv
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 1..=n {
            if !prefix.contains(&v) {
                prefix.push(v);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

/// Pipe dreams of every permutation, grouped by the Demazure product of the
/// crossing word: cell `(i, j)` stands for `s_{i+j-1}`, read right to left
/// within a row and rows top to bottom.
pub fn demazure_pd_classes(n: usize) -> BTreeMap<Vec<usize>, Vec<Grid>> {
    let cells: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| i + j <= n)
        .collect();
    let mut out: BTreeMap<Vec<usize>, Vec<Grid>> = BTreeMap::new();
    for mask in 0u64..(1 << cells.len()) {
        let crossing = |i: usize, j: usize| {
            cells
                .iter()
                .position(|&c| c == (i, j))
                .is_some_and(|k| mask >> k & 1 == 1)
        };
        let mut u: Vec<usize> = (1..=n).collect();
        for i in 1..=n {
            for j in (1..=n).rev() {
                if i + j <= n && crossing(i, j) {
                    let k = i + j - 1;
                    if u[k - 1] < u[k] {
                        u.swap(k - 1, k);
                    }
                }
            }
        }
        let mut g = Grid {
            rows: n,
            cols: n,
            cells: vec!['.'; n * n],
        };
        for i in 1..=n {
            for j in 1..=n {
                let c = if i + j <= n {
                    if crossing(i, j) {
                        '+'
                    } else {
                        'b'
                    }
                } else if i + j == n + 1 {
                    'J'
                } else {
                    '.'
                };
                g.cells[(i - 1) * n + (j - 1)] = c;
            }
        }
        out.entry(u).or_default().push(g);
    }
    out
}

/// Sparse polynomial in x only, keyed by exponent vectors.
pub type XPoly = BTreeMap<Vec<u32>, i64>;

pub fn weight_rows(g: &Grid, weighty: &[char], n: usize) -> Vec<u32> {
    let mut e = vec![0u32; n];
    for i in 1..=g.rows {
        for j in 1..=g.cols {
            if weighty.contains(&g.at(i, j)) {
                e[i - 1] += 1;
            }
        }
    }
    e
}

/// Signed crossing-count sum over a list of pipe dreams.
pub fn signed_weight_sum(pds: &[Grid], length: usize, n: usize) -> XPoly {
    let mut p = XPoly::new();
    for g in pds {
        let e = weight_rows(g, &['+'], n);
        let deg: u32 = e.iter().sum();
        let sign = if (deg as usize + length) % 2 == 0 { 1 } else { -1 };
        *p.entry(e).or_insert(0) += sign;
    }
    p.retain(|_, c| *c != 0);
    p
}

pub fn length(w: &[usize]) -> usize {
    let mut l = 0;
    for a in 0..w.len() {
        for b in a + 1..w.len() {
            if w[a] > w[b] {
                l += 1;
            }
        }
    }
    l
}

/// Every filling of `rows x cols` with the symbols allowed per cell whose
/// adjacent edges match, pipes entering exactly at `entering`, nothing
/// leaving the bottom or right.
pub fn brute_tilings(
    rows: usize,
    cols: usize,
    allowed: &dyn Fn(usize, usize) -> Vec<char>,
    entering: &BTreeSet<usize>,
) -> Vec<Grid> {
    fn go(
        k: usize,
        g: &mut Grid,
        allowed: &dyn Fn(usize, usize) -> Vec<char>,
        entering: &BTreeSet<usize>,
        out: &mut Vec<Grid>,
    ) {
        if k == g.rows * g.cols {
            out.push(g.clone());
            return;
        }
        let (i, j) = (k / g.cols + 1, k % g.cols + 1);
        for c in allowed(i, j) {
            let (w, s, nn, e) = ports(c);
            let west_ok = if j == 1 {
                w == entering.contains(&i)
            } else {
                w == ports(g.at(i, j - 1)).3
            };
            let north_ok = if i == 1 { true } else { nn == ports(g.at(i - 1, j)).1 };
            let edge_ok = (j < g.cols || !e) && (i < g.rows || !s);
            if west_ok && north_ok && edge_ok {
                g.cells[k] = c;
                go(k + 1, g, allowed, entering, out);
            }
        }
        g.cells[k] = '.';
    }
    let mut g = Grid {
        rows,
        cols,
        cells: vec!['.'; rows * cols],
    };
    let mut out = Vec::new();
    if rows * cols == 0 {
        if entering.is_empty() {
            out.push(g);
        }
        return out;
    }
    go(0, &mut g, allowed, entering, &mut out);
    out
}

/// MVPDs of size `n` with the given column-to-row code, by brute force.
pub fn brute_mvpds(n: usize, code: &[usize]) -> BTreeSet<String> {
    let entering: BTreeSet<usize> = code.iter().copied().filter(|&c| c != 0).collect();
    let allowed = |i: usize, j: usize| -> Vec<char> {
        if i + j <= n {
            vec!['.', '-', '+', 'J', 'r', 'b', 'R']
        } else if i + j == n + 1 {
            vec!['.', 'J']
        } else {
            vec!['.']
        }
    };
    let mut out = BTreeSet::new();
    for g in brute_tilings(n, n, &allowed, &entering) {
        let Some(t) = naive_trace(&g) else { continue };
        if t.top != code {
            continue;
        }
        // Marked pipe must pass a Horizontal strictly lower.
        let mark_ok = (1..=n).all(|i| {
            (1..=n).all(|j| {
                g.at(i, j) != 'R' || {
                    let label = t.through[&(i, j)][0].0;
                    (i + 1..=n).any(|r| {
                        (1..=n).any(|c| {
                            g.at(r, c) == '-' && t.through[&(r, c)].iter().any(|x| x.0 == label)
                        })
                    })
                }
            })
        });
        if mark_ok {
            out.insert(g.text());
        }
    }
    out
}

/// BVPDs of size `n` with the given code, by brute force.
pub fn brute_bvpds(n: usize, code: &[usize]) -> BTreeSet<String> {
    let entering: BTreeSet<usize> = code.iter().copied().filter(|&c| c != 0).collect();
    let allowed = |i: usize, j: usize| -> Vec<char> {
        if i + j < n {
            vec!['.', '-', '+', 'J', 'r']
        } else if i + j == n {
            vec!['.', 'J']
        } else {
            vec!['.']
        }
    };
    brute_tilings(n, n - 1, &allowed, &entering)
        .into_iter()
        .filter(|g| naive_trace(g).is_some_and(|t| t.top == code))
        .map(|g| g.text())
        .collect()
}
