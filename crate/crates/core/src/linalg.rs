//! Exact dense linear algebra over [`Rational`].

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn diag(entries: &[Rational]) -> Self {
        let mut m = RatMatrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, got: bad.len() });
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from small integers; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
            .collect();
        RatMatrix::from_rows(data).expect("ragged matrix literal")
    }

    pub fn column(v: &[Rational]) -> Self {
        RatMatrix { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Self {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &RatMatrix) -> Result<Self> {
        self.same_shape(other)?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<Self> {
        self.same_shape(other)?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    fn same_shape(&self, other: &RatMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Bilinear form `xᵀ M y`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        let my = self.mul_vec(y)?;
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: x.len() });
        }
        Ok(x.iter().zip(&my).map(|(a, b)| a * b).sum())
    }

    /// Rows scaled to integers (each row by the lcm of its denominators).
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = Rational::common_denominator(row);
                row.iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect()
            })
            .collect()
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Fraction-free forward elimination. Pivots are taken as the first nonzero
/// entry scanning columns left to right, rows top to bottom. Returns the rank
/// and the last pivot (the determinant, up to sign, for full-rank squares).
fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> (usize, BigInt, bool) {
    let rows = a.len();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    let mut swaps_odd = false;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            swaps_odd = !swaps_odd;
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in c..cols {
                let v = &row[j] * &pivot_row[c] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot_row[c].clone();
        rank += 1;
    }
    (rank, prev, swaps_odd)
}

pub fn rank(m: &RatMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    bareiss(m.integer_rows(), m.cols).0
}

pub fn determinant(m: &RatMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows, got: m.cols });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Rational::one());
    }
    let scales: Vec<BigInt> = (0..n).map(|i| Rational::common_denominator(m.row(i))).collect();
    let (r, last, odd) = bareiss(m.integer_rows(), n);
    if r < n {
        return Ok(Rational::zero());
    }
    let total_scale: BigInt = scales.iter().product();
    let det = Rational::from(last) / Rational::from(total_scale);
    Ok(if odd { -det } else { det })
}

/// Solves `A X = B` exactly by Gauss-Jordan elimination.
pub fn solve(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows, got: a.cols });
    }
    if b.rows != a.rows {
        return Err(Error::DimensionMismatch { expected: a.rows, got: b.rows });
    }
    let n = a.rows;
    let m = b.cols;
    let mut lhs = a.clone();
    let mut rhs = b.clone();
    for c in 0..n {
        let p = (c..n).find(|&r| !lhs[(r, c)].is_zero()).ok_or(Error::SingularMatrix)?;
        if p != c {
            for j in 0..n {
                lhs.data.swap(p * n + j, c * n + j);
            }
            for j in 0..m {
                rhs.data.swap(p * m + j, c * m + j);
            }
        }
        let inv = lhs[(c, c)].recip();
        for j in 0..n {
            lhs[(c, j)] *= &inv;
        }
        for j in 0..m {
            rhs[(c, j)] *= &inv;
        }
        for r in 0..n {
            if r == c || lhs[(r, c)].is_zero() {
                continue;
            }
            let f = lhs[(r, c)].clone();
            for j in c..n {
                let d = &f * &lhs[(c, j)];
                lhs[(r, j)] -= d;
            }
            for j in 0..m {
                let d = &f * &rhs[(c, j)];
                rhs[(r, j)] -= d;
            }
        }
    }
    Ok(rhs)
}

pub fn inverse(a: &RatMatrix) -> Result<RatMatrix> {
    solve(a, &RatMatrix::identity(a.rows))
}

/// Reduced row echelon form and the pivot columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..cols {
            a[(r, j)] *= &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                let d = &f * &a[(r, j)];
                a[(i, j)] -= d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of the right null space; one vector per free column.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[(row, f)];
            }
            v
        })
        .collect()
}

/// Inertia of a symmetric form: `(negatives, positives, zeros)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub negatives: usize,
    pub positives: usize,
    pub zeros: usize,
}

impl Signature {
    pub fn new(negatives: usize, positives: usize, zeros: usize) -> Self {
        Signature { negatives, positives, zeros }
    }

    pub fn dim(&self) -> usize {
        self.negatives + self.positives + self.zeros
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.negatives, self.positives)?;
        if self.zeros > 0 {
            write!(f, "+{}0", self.zeros)?;
        }
        Ok(())
    }
}

/// Sylvester inertia by symmetric congruence diagonalization.
///
/// When every remaining diagonal entry is zero but an off-diagonal entry
/// `a_ij` is not, adding row/column `j` to `i` produces the pivot `2 a_ij`.
pub fn sylvester_signature(g: &RatMatrix) -> Result<Signature> {
    let (_, d) = congruence_basis(g)?;
    let mut sig = Signature::new(0, 0, 0);
    for x in &d {
        if x.is_positive() {
            sig.positives += 1;
        } else if x.is_negative() {
            sig.negatives += 1;
        } else {
            sig.zeros += 1;
        }
    }
    Ok(sig)
}

/// Symmetric congruence diagonalization: returns `P` and `d` with
/// `Pᵀ g P = diag(d)`. Columns of `P` form a `g`-orthogonal basis.
pub fn congruence_basis(g: &RatMatrix) -> Result<(RatMatrix, Vec<Rational>)> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = g.rows;
    let mut a = g.clone();
    let mut p = RatMatrix::identity(n);
    let swap = |a: &mut RatMatrix, p: &mut RatMatrix, i: usize, j: usize| {
        if i == j {
            return;
        }
        for k in 0..n {
            a.data.swap(i * n + k, j * n + k);
        }
        for k in 0..n {
            a.data.swap(k * n + i, k * n + j);
            p.data.swap(k * n + i, k * n + j);
        }
    };
    for k in 0..n {
        if let Some(q) = (k..n).find(|&i| !a[(i, i)].is_zero()) {
            swap(&mut a, &mut p, k, q);
        } else {
            let hit = (k..n).find_map(|i| ((i + 1)..n).find(|&j| !a[(i, j)].is_zero()).map(|j| (i, j)));
            let Some((i, j)) = hit else {
                break;
            };
            // row_i += row_j, then col_i += col_j
            for c in 0..n {
                let v = a[(j, c)].clone();
                a[(i, c)] += v;
            }
            for r in 0..n {
                let v = a[(r, j)].clone();
                a[(r, i)] += v;
                let w = p[(r, j)].clone();
                p[(r, i)] += w;
            }
            swap(&mut a, &mut p, k, i);
        }
        let pivot = a[(k, k)].clone();
        for r in (k + 1)..n {
            if a[(r, k)].is_zero() {
                continue;
            }
            let f = &a[(r, k)] / &pivot;
            for c in k..n {
                let d = &f * &a[(k, c)];
                a[(r, c)] -= d;
            }
            for rr in k..n {
                let d = &f * &a[(rr, k)];
                a[(rr, r)] -= d;
            }
            for rr in 0..n {
                let d = &f * &p[(rr, k)];
                p[(rr, r)] -= d;
            }
        }
    }
    let d = (0..n).map(|i| a[(i, i)].clone()).collect();
    Ok((p, d))
}
