//! Sparse multivariate polynomials over [`Rational`] on a fixed coordinate chart.
//!
//! A chart with parameter `s` carries `3s` coordinates in the frozen order
//! `u_1..u_s, v_1..v_s, t_1..t_s`. Every index convention in the crate
//! (frame vectors, matrix rows, tensor slots) follows this order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Which of the three coordinate blocks an index lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    U,
    V,
    T,
}

impl Block {
    fn letter(self) -> char {
        match self {
            Block::U => 'u',
            Block::V => 'v',
            Block::T => 't',
        }
    }
}

/// A named coordinate: block plus a zero-based position inside the block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord {
    pub block: Block,
    pub pos: usize,
}

impl Coord {
    pub fn u(a: usize) -> Self {
        Coord { block: Block::U, pos: a }
    }
    pub fn v(a: usize) -> Self {
        Coord { block: Block::V, pos: a }
    }
    pub fn t(a: usize) -> Self {
        Coord { block: Block::T, pos: a }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.block.letter(), self.pos + 1)
    }
}

impl FromStr for Coord {
    type Err = Error;

    /// Parses `u_1`, `v2`, `t_3` (one-based).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownCoordinate(s.to_string());
        let mut chars = s.chars();
        let block = match chars.next() {
            Some('u') | Some('U') => Block::U,
            Some('v') | Some('V') => Block::V,
            Some('t') | Some('T') => Block::T,
            _ => return Err(bad()),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let n: usize = rest.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        Ok(Coord { block, pos: n - 1 })
    }
}

/// The coordinate chart `(u, v, t)` on `R^{3s}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chart {
    s: usize,
}

impl Chart {
    pub fn new(s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidInput("chart needs s >= 1".into()));
        }
        Ok(Chart { s })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn dim(&self) -> usize {
        3 * self.s
    }

    /// Flat index of a coordinate, or `UnknownCoordinate` if it is out of range.
    pub fn index(&self, c: Coord) -> Result<usize> {
        if c.pos >= self.s {
            return Err(Error::UnknownCoordinate(c.to_string()));
        }
        let base = match c.block {
            Block::U => 0,
            Block::V => self.s,
            Block::T => 2 * self.s,
        };
        Ok(base + c.pos)
    }

    pub fn coord(&self, index: usize) -> Coord {
        assert!(index < self.dim(), "coordinate index out of range");
        let block = match index / self.s {
            0 => Block::U,
            1 => Block::V,
            _ => Block::T,
        };
        Coord { block, pos: index % self.s }
    }

    pub fn block_of(&self, index: usize) -> Block {
        self.coord(index).block
    }

    pub fn coord_names(&self) -> Vec<String> {
        (0..self.dim()).map(|i| self.coord(i).to_string()).collect()
    }

    fn check(&self, other: &Chart) -> Result<()> {
        if self.s != other.s {
            return Err(Error::ChartMismatch { left: self.s, right: other.s });
        }
        Ok(())
    }
}

/// Serialized polynomial term: `{"coeff": "p/q", "exps": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: Rational,
    pub exps: Vec<u32>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    chart: Chart,
    terms: BTreeMap<Vec<u32>, Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

impl Polynomial {
    pub fn zero(chart: Chart) -> Self {
        Polynomial { chart, terms: BTreeMap::new() }
    }

    pub fn constant(chart: Chart, c: Rational) -> Self {
        let mut p = Polynomial::zero(chart);
        p.add_term(vec![0; chart.dim()], c);
        p
    }

    pub fn var(chart: Chart, c: Coord) -> Result<Self> {
        let i = chart.index(c)?;
        let mut exps = vec![0; chart.dim()];
        exps[i] = 1;
        let mut p = Polynomial::zero(chart);
        p.add_term(exps, Rational::one());
        Ok(p)
    }

    /// `coeff * prod(coords)`; repeated coordinates raise the power.
    pub fn monomial(chart: Chart, coeff: Rational, coords: &[Coord]) -> Result<Self> {
        let mut exps = vec![0; chart.dim()];
        for &c in coords {
            exps[chart.index(c)?] += 1;
        }
        let mut p = Polynomial::zero(chart);
        p.add_term(exps, coeff);
        Ok(p)
    }

    pub fn from_terms(chart: Chart, terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        let mut p = Polynomial::zero(chart);
        for t in terms {
            if t.exps.len() != chart.dim() {
                return Err(Error::DimensionMismatch { expected: chart.dim(), got: t.exps.len() });
            }
            p.add_term(t.exps, t.coeff);
        }
        Ok(p)
    }

    pub fn to_terms(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(e, c)| Term { coeff: c.clone(), exps: e.clone() })
            .collect()
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Coefficient of the monomial with the given exponent vector.
    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.chart.dim()])
    }

    /// Maximum total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True if every monomial has degree `d` in the coordinates of `block`.
    pub fn is_homogeneous_in(&self, block: Block, d: u32) -> bool {
        self.terms.keys().all(|e| {
            (0..self.chart.dim())
                .filter(|&i| self.chart.block_of(i) == block)
                .map(|i| e[i])
                .sum::<u32>()
                == d
        })
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.chart);
        }
        Polynomial {
            chart: self.chart,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.chart.check(&other.chart)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.chart.check(&other.chart)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.chart.check(&other.chart)?;
        let mut out = Polynomial::zero(self.chart);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn arith(&self, other: &Polynomial, kind: ArithKind) -> Result<Polynomial> {
        match kind {
            ArithKind::Add => self.checked_add(other),
            ArithKind::Sub => self.checked_sub(other),
            ArithKind::Mul => self.checked_mul(other),
        }
    }

    /// Formal partial derivative with respect to a named coordinate.
    pub fn partial(&self, coord: Coord) -> Result<Polynomial> {
        let i = self.chart.index(coord)?;
        Ok(self.partial_index(i))
    }

    /// Partial derivative with respect to the flat coordinate index `i`.
    pub fn partial_index(&self, i: usize) -> Polynomial {
        assert!(i < self.chart.dim(), "coordinate index out of range");
        let mut out = Polynomial::zero(self.chart);
        for (e, c) in &self.terms {
            let k = e[i];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * Rational::from(k as i64));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.chart.dim() {
            return Err(Error::DimensionMismatch { expected: self.chart.dim(), got: point.len() });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    m *= x;
                }
                if m.is_zero() {
                    break;
                }
            }
            acc += m;
        }
        Ok(acc)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on chart mismatch; use [`Polynomial::checked_add`] for a `Result`.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("chart mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("chart mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("chart mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Rational::from(-1))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let name = self.chart.coord(i).to_string();
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if n == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial(s={}: {})", self.chart.s, self)
    }
}
