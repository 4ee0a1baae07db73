//! Exact sparse polynomials over the integers in `x_1..x_n` and `y_1..y_n`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::Cell;
use crate::error::{Error, Result};

/// Exponent vectors for `x` and `y`, both of length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    x: Vec<u32>,
    y: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self {
            x: vec![0; n],
            y: vec![0; n],
        }
    }

    pub fn new(x: Vec<u32>, y: Vec<u32>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Polynomial(format!(
                "x has {} exponents but y has {}",
                x.len(),
                y.len()
            )));
        }
        Ok(Self { x, y })
    }

    pub fn from_x(x: Vec<u32>) -> Self {
        let n = x.len();
        Self { x, y: vec![0; n] }
    }

    /// `∏ x_i` over a multiset of one-based row indices.
    pub fn from_rows(n: usize, rows: &[usize]) -> Result<Self> {
        let mut m = Self::one(n);
        for &i in rows {
            if i == 0 || i > n {
                return Err(Error::Polynomial(format!("row {i} outside 1..={n}")));
            }
            m.x[i - 1] += 1;
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x_exps(&self) -> &[u32] {
        &self.x
    }

    pub fn y_exps(&self) -> &[u32] {
        &self.y
    }

    pub fn degree(&self) -> u32 {
        self.x.iter().chain(&self.y).sum()
    }

    pub fn is_one(&self) -> bool {
        self.degree() == 0
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            y: self.y.iter().zip(&other.y).map(|(a, b)| a + b).collect(),
        }
    }

    /// Multiply by `x_i` (one-based).
    pub fn times_x(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.x[i - 1] += 1;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.x.iter().zip(&other.x).all(|(a, b)| a <= b)
            && self.y.iter().zip(&other.y).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    /// Graded: total degree first, then exponents lexicographically (`x`
    /// before `y`), both ascending.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.x.cmp(&other.x))
            .then_with(|| self.y.cmp(&other.y))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        for (var, exps) in [("x", &self.x), ("y", &self.y)] {
            for (k, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("{var}{}", k + 1)),
                    _ => factors.push(format!("{var}{}^{e}", k + 1)),
                }
            }
        }
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::term(Monomial::one(n), 1)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(m.n());
        p.add_term(m, c.into());
        p
    }

    /// `x_i` (one-based).
    pub fn x(n: usize, i: usize) -> Self {
        Self::term(Monomial::one(n).times_x(i), 1)
    }

    /// `y_j` (one-based).
    pub fn y(n: usize, j: usize) -> Self {
        let mut m = Monomial::one(n);
        m.y[j - 1] += 1;
        Self::term(m, 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (graded lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        debug_assert_eq!(m.n(), self.n);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += sign * other` with `sign` in `{+1, -1}`.
    pub fn signed_accumulate(&mut self, negative: bool, other: &Polynomial) {
        for (m, c) in &other.terms {
            let c = if negative { -c.clone() } else { c.clone() };
            self.add_term(m.clone(), c);
        }
    }

    pub fn support(&self) -> BTreeSet<Monomial> {
        self.terms.keys().cloned().collect()
    }

    pub fn total_degree(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(Monomial::degree)
            .max()
            .ok_or_else(|| Error::Polynomial("degree of the zero polynomial".into()))
    }

    pub fn min_degree(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(Monomial::degree)
            .min()
            .ok_or_else(|| Error::Polynomial("degree of the zero polynomial".into()))
    }

    pub fn homogeneous_component(&self, degree: u32) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn top_component(&self) -> Result<Polynomial> {
        Ok(self.homogeneous_component(self.total_degree()?))
    }

    pub fn min_degree_component(&self) -> Result<Polynomial> {
        Ok(self.homogeneous_component(self.min_degree()?))
    }

    /// Replace every coefficient by its absolute value.
    pub fn abs(&self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.abs())).collect(),
        }
    }

    /// Substitute `y_j := 0` for every `j`.
    pub fn specialize_y_zero(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            if m.y.iter().all(|&e| e == 0) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(m, c)| TermJson {
                c: CoefficientJson(c.clone()),
                x: m.x.clone(),
                y: m.y.clone(),
            })
            .collect()
    }

    pub fn from_json(n: usize, terms: &[TermJson]) -> Result<Self> {
        let mut p = Polynomial::zero(n);
        for t in terms {
            let m = Monomial::new(t.x.clone(), t.y.clone())?;
            if m.n() != n {
                return Err(Error::Polynomial(format!("term has {} variables, expected {n}", m.n())));
            }
            p.add_term(m, t.c.0.clone());
        }
        Ok(p)
    }
}

/// `∏_{(i,j)} x_i` for the cells' rows.
pub fn weight_monomial(n: usize, rows: &[usize]) -> Result<Monomial> {
    Monomial::from_rows(n, rows)
}

/// `∏_{(i,j)} (x_i + y_j - x_i y_j)`, expanded.
pub fn weight_factor_product(n: usize, cells: &BTreeSet<Cell>) -> Result<Polynomial> {
    let mut acc = Polynomial::one(n);
    for &(i, j) in cells {
        if i == 0 || i > n || j == 0 || j > n {
            return Err(Error::Polynomial(format!("cell ({i},{j}) outside the {n}x{n} grid")));
        }
        let xi = Polynomial::x(n, i);
        let yj = Polynomial::y(n, j);
        let factor = &(&xi + &yj) - &(&xi * &yj);
        acc = &acc * &factor;
    }
    Ok(acc)
}

/// `Σ ± ∏_{(i,j)} (x_i + y_j - x_i y_j)` over many cell sets at once.
///
/// Same result as summing [`weight_factor_product`] terms, but expanded with
/// exponent vectors packed four bits per variable into a `u128` and machine
/// coefficients, which is what makes the double sums over `S_5` cheap.
pub fn signed_factor_sum<'a>(
    n: usize,
    items: impl IntoIterator<Item = (bool, &'a BTreeSet<Cell>)>,
) -> Result<Polynomial> {
    const MAX_VARS: usize = 16;
    if n > MAX_VARS {
        return Err(Error::Polynomial(format!("packed expansion supports n <= {MAX_VARS}")));
    }
    let overflow = || Error::Polynomial("coefficient overflow in packed expansion".into());
    let mut total: HashMap<u128, i128> = HashMap::new();
    let mut cur: HashMap<u128, i128> = HashMap::new();
    let mut next: HashMap<u128, i128> = HashMap::new();
    for (negative, cells) in items {
        cur.clear();
        cur.insert(0, if negative { -1 } else { 1 });
        let mut row_count = vec![0usize; n + 1];
        let mut col_count = vec![0usize; n + 1];
        for &(i, j) in cells {
            if i == 0 || i > n || j == 0 || j > n {
                return Err(Error::Polynomial(format!("cell ({i},{j}) outside the {n}x{n} grid")));
            }
            row_count[i] += 1;
            col_count[j] += 1;
            if row_count[i] > 15 || col_count[j] > 15 {
                return Err(Error::Polynomial("exponent too large to pack".into()));
            }
            let xi = 1u128 << (4 * (i - 1));
            let yj = 1u128 << (4 * (MAX_VARS + j - 1));
            next.clear();
            for (&k, &c) in &cur {
                for (shift, sign) in [(xi, c), (yj, c), (xi + yj, -c)] {
                    let e = next.entry(k + shift).or_insert(0);
                    *e = e.checked_add(sign).ok_or_else(overflow)?;
                }
            }
            next.retain(|_, c| *c != 0);
            std::mem::swap(&mut cur, &mut next);
        }
        for (&k, &c) in &cur {
            let e = total.entry(k).or_insert(0);
            *e = e.checked_add(c).ok_or_else(overflow)?;
        }
    }
    let mut out = Polynomial::zero(n);
    for (k, c) in total {
        if c == 0 {
            continue;
        }
        let digit = |v: usize| ((k >> (4 * v)) & 0xf) as u32;
        let x = (0..n).map(digit).collect();
        let y = (0..n).map(|v| digit(MAX_VARS + v)).collect();
        out.add_term(Monomial::new(x, y)?, BigInt::from(c));
    }
    Ok(out)
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.signed_accumulate(false, rhs);
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.signed_accumulate(true, rhs);
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        out.signed_accumulate(true, self);
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.times(b), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// `x1*x2^2 + x1^2*x2 - x1^2*x2^2`: canonical order, `^` powers, `*`
    /// products, unit coefficients omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// One term of the JSON polynomial format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: CoefficientJson,
    pub x: Vec<u32>,
    pub y: Vec<u32>,
}

/// An integer coefficient. Written as a JSON number when it fits in 64 bits,
/// as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientJson(pub BigInt);

impl Serialize for CoefficientJson {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for CoefficientJson {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(CoefficientJson(BigInt::from(v))),
            Raw::Text(s) => s
                .parse::<BigInt>()
                .map(CoefficientJson)
                .map_err(serde::de::Error::custom),
        }
    }
}
