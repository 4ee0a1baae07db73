//! Permutations of `{1..n}` in one-line notation, their statistics, and the
//! column-to-row codes derived from them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation `w` of `{1..n}`, stored as `(w(1), ..., w(n))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    pub fn from_one_line(values: impl Into<Vec<usize>>) -> Result<Self> {
        let one_line = values.into();
        let n = one_line.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty one-line notation".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} is outside 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("value {v} repeats")));
            }
            seen[v] = true;
        }
        Ok(Self { one_line })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            one_line: (1..=n).collect(),
        }
    }

    /// The longest element `n n-1 ... 1`.
    pub fn reversal(n: usize) -> Self {
        Self {
            one_line: (1..=n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    /// `w(i)` for one-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.one_line[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (k, &v) in self.one_line.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Self { one_line: inv }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.one_line;
        (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&b| b < w[i]).count())
            .sum()
    }

    /// One-based descent positions.
    pub fn descents(&self) -> Vec<usize> {
        self.one_line
            .windows(2)
            .enumerate()
            .filter(|(_, pair)| pair[0] > pair[1])
            .map(|(k, _)| k + 1)
            .collect()
    }

    /// Major index: sum of descent positions.
    pub fn maj(&self) -> usize {
        self.descents().iter().sum()
    }

    /// Maximal decreasing factors of the one-line notation.
    pub fn decreasing_runs(&self) -> Vec<Vec<usize>> {
        let mut runs: Vec<Vec<usize>> = Vec::new();
        for &v in &self.one_line {
            match runs.last_mut() {
                Some(run) if *run.last().unwrap() > v => run.push(v),
                _ => runs.push(vec![v]),
            }
        }
        runs
    }

    /// Fireworks: the first entries of the decreasing runs increase.
    pub fn is_fireworks(&self) -> bool {
        let firsts: Vec<usize> = self.decreasing_runs().iter().map(|r| r[0]).collect();
        firsts.windows(2).all(|p| p[0] < p[1])
    }

    pub fn is_inverse_fireworks(&self) -> bool {
        self.inverse().is_fireworks()
    }

    /// Values `w(i)` larger than every earlier value.
    pub fn lr_maxima(&self) -> BTreeSet<usize> {
        let mut best = 0;
        let mut out = BTreeSet::new();
        for &v in &self.one_line {
            if v > best {
                best = v;
                out.insert(v);
            }
        }
        out
    }

    /// `α′(w)`: `w⁻¹` in one-line notation with its left-to-right maxima
    /// replaced by zero.
    pub fn alpha_prime(&self) -> Code {
        let inv = self.inverse();
        let maxima = inv.lr_maxima();
        let entries = inv
            .one_line
            .iter()
            .map(|v| if maxima.contains(v) { 0 } else { *v })
            .collect();
        Code {
            role: CodeRole::Full,
            entries,
        }
    }

    /// `α(w)`: `α′(w)` without its leading zero. Only defined for inverse
    /// fireworks `w`.
    pub fn alpha(&self) -> Result<Code> {
        if !self.is_inverse_fireworks() {
            return Err(Error::NotInverseFireworks(self.to_string()));
        }
        let full = self.alpha_prime();
        Ok(Code {
            role: CodeRole::Reduced,
            entries: full.entries[1..].to_vec(),
        })
    }

    /// `r(w)`: sum of `i - 1` over positions `i` where `α′(w)` is non-zero.
    pub fn r_stat(&self) -> usize {
        self.alpha_prime()
            .entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(k, _)| k)
            .sum()
    }

    /// All permutations of `{1..n}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation {
                one_line: cur.clone(),
            });
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    /// Concatenated digits for `n < 10`, comma separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() < 10 { "" } else { "," };
        let parts: Vec<String> = self.one_line.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `2,4,1,3` or, when every value is a single digit, `2413`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidPermutation(format!("cannot parse {s:?}"));
        let values: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Self::from_one_line(values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_one_line(values).map_err(serde::de::Error::custom)
    }
}

/// Which ambient length a [`Code`] is meant for: `n` entries (`α′`, MVPD and
/// PD readings) or `n - 1` entries (`α`, BVPD readings).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CodeRole {
    Full,
    Reduced,
}

/// A column-to-row code: entry `c` is the row of the pipe exiting column `c`,
/// or zero if no pipe exits there.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Code {
    pub role: CodeRole,
    pub entries: Vec<usize>,
}

impl Code {
    pub fn new(role: CodeRole, entries: Vec<usize>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &e in &entries {
            if e != 0 && !seen.insert(e) {
                return Err(Error::InvalidCode(format!("entry {e} repeats")));
            }
        }
        Ok(Self { role, entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Non-zero entries: the rows at which pipes must enter.
    pub fn pipes(&self) -> BTreeSet<usize> {
        self.entries.iter().copied().filter(|&e| e != 0).collect()
    }

    /// Fill the zero positions of a full code with the missing values of
    /// `1..n` in increasing order. Returns the permutation only when the
    /// filled positions are exactly its left-to-right maxima.
    pub fn realize(&self) -> Option<Permutation> {
        if self.role != CodeRole::Full {
            return None;
        }
        let n = self.entries.len();
        if self.entries.iter().any(|&e| e > n) {
            return None;
        }
        let present = self.pipes();
        let mut missing = (1..=n).filter(|v| !present.contains(v));
        let filled: Vec<usize> = self
            .entries
            .iter()
            .map(|&e| if e == 0 { missing.next().unwrap_or(0) } else { e })
            .collect();
        let perm = Permutation::from_one_line(filled).ok()?;
        let maxima = perm.lr_maxima();
        let ok = self
            .entries
            .iter()
            .zip(perm.one_line())
            .all(|(&e, v)| (e == 0) == maxima.contains(v));
        ok.then_some(perm)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parses_both_notations() {
        assert_eq!(p("2,4,1,3"), p("2413"));
        assert_eq!(p("3167542").one_line(), &[3, 1, 6, 7, 5, 4, 2]);
        assert_eq!(p("1"), Permutation::identity(1));
    }

    #[test]
    fn rejects_bad_one_line() {
        assert!(Permutation::from_one_line(vec![]).is_err());
        assert!(Permutation::from_one_line(vec![1, 1]).is_err());
        assert!(Permutation::from_one_line(vec![1, 3]).is_err());
        assert!(Permutation::from_one_line(vec![0, 1]).is_err());
        assert!("12a".parse::<Permutation>().is_err());
    }

    #[test]
    fn inverses() {
        assert_eq!(p("24513").inverse(), p("41523"));
        assert_eq!(p("2413").inverse(), p("3142"));
        assert!(Permutation::identity(4).inverse().is_identity());
    }

    #[test]
    fn length_and_maj() {
        assert_eq!(p("2413").length(), 3);
        assert_eq!(Permutation::identity(5).length(), 0);
        assert_eq!(Permutation::reversal(6).length(), 15);
        assert_eq!(p("145632").maj(), 9);
        assert_eq!(p("321").maj(), 3);
        assert_eq!(Permutation::identity(4).maj(), 0);
    }

    #[test]
    fn runs_and_fireworks() {
        assert_eq!(
            p("3167542").decreasing_runs(),
            vec![vec![3, 1], vec![6], vec![7, 5, 4, 2]]
        );
        assert_eq!(
            p("145632").decreasing_runs(),
            vec![vec![1], vec![4], vec![5], vec![6, 3, 2]]
        );
        assert_eq!(Permutation::identity(3).decreasing_runs().len(), 3);
        assert!(p("3167542").is_fireworks());
        assert!(!p("6137542").is_fireworks());
        assert!(Permutation::identity(1).is_fireworks());
        assert!(p("165234").is_inverse_fireworks());
        assert!(p("2413").is_inverse_fireworks());
    }

    #[test]
    fn left_to_right_maxima() {
        assert_eq!(p("2143").lr_maxima(), BTreeSet::from([2, 4]));
        assert_eq!(p("12547386").lr_maxima(), BTreeSet::from([1, 2, 5, 7, 8]));
        assert_eq!(Permutation::identity(3).lr_maxima(), BTreeSet::from([1, 2, 3]));
    }

    #[test]
    fn codes() {
        let w = p("12547386").inverse();
        assert_eq!(w.alpha_prime().entries, vec![0, 0, 0, 4, 0, 3, 0, 6]);
        assert_eq!(w.r_stat(), 15);
        let w = p("3142").inverse();
        assert_eq!(w.alpha_prime().entries, vec![0, 1, 0, 2]);
        assert_eq!(p("2413").alpha().unwrap().entries, vec![1, 0, 2]);
        assert_eq!(p("2413").r_stat(), 4);
        assert_eq!(p("165234").alpha().unwrap().entries, vec![0, 0, 0, 3, 2]);
        assert_eq!(p("165234").alpha().unwrap().role, CodeRole::Reduced);
        assert!(Permutation::identity(4).alpha_prime().pipes().is_empty());
        assert_eq!(Permutation::identity(4).alpha().unwrap().entries, vec![0, 0, 0]);
        assert_eq!(Permutation::identity(4).r_stat(), 0);
        assert!(matches!(
            p("6137542").inverse().alpha(),
            Err(Error::NotInverseFireworks(_))
        ));
    }

    #[test]
    fn realize_rejects_non_maxima_fill() {
        // Filling (0,2,0) gives 1,2,3, whose maxima include position 2.
        let c = Code::new(CodeRole::Full, vec![0, 2, 0]).unwrap();
        assert!(c.realize().is_none());
        let c = Code::new(CodeRole::Full, vec![0, 1, 0, 2]).unwrap();
        assert_eq!(c.realize().unwrap(), p("3142"));
        assert!(Code::new(CodeRole::Full, vec![1, 1]).is_err());
    }

    #[test]
    fn enumerates_symmetric_group() {
        let all = Permutation::all(4);
        assert_eq!(all.len(), 24);
        assert_eq!(all[0], Permutation::identity(4));
        assert_eq!(all[23], Permutation::reversal(4));
        assert_eq!(Permutation::all(1).len(), 1);
    }
}
