//! Exact rational scalars and dense labeled matrices.
//!
//! Every quantity in the pipeline is a [`Rational`]. Matrices carry a string
//! label per row and column so that minors can be addressed by basis vector
//! rather than by position. Rank, pivots and determinants are computed by
//! fraction-free (Bareiss) elimination after clearing row denominators, so
//! intermediate values stay integral and exactly divisible.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("minor selection is not square: {rows} rows, {cols} columns")]
    UnequalSelection { rows: usize, cols: usize },
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
}

/// `n / d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p` (optionally signed) into canonical form.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::BadRational(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Always prints `p/q`, including `q = 1`; the dump format relies on this.
pub fn fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Result of exact Gaussian elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReduction {
    pub rank: usize,
    /// Row indices of the pivots, in the order they were chosen.
    pub pivot_rows: Vec<usize>,
    /// Column indices of the pivots, increasing.
    pub pivot_cols: Vec<usize>,
}

/// Dense matrix of rationals with unique row and column labels.
#[derive(Clone, PartialEq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    row_index: HashMap<String, usize>,
    col_index: HashMap<String, usize>,
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>, ExactError> {
    let mut map = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if map.insert(l.clone(), i).is_some() {
            return Err(ExactError::DuplicateLabel(l.clone()));
        }
    }
    Ok(map)
}

/// Positional labels `r0, r1, ...` / `c0, c1, ...`.
pub fn positional_labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

impl RatMatrix {
    /// Zero matrix with the given labels.
    pub fn zeros(row_labels: Vec<String>, col_labels: Vec<String>) -> Result<Self, ExactError> {
        let row_index = index_labels(&row_labels)?;
        let col_index = index_labels(&col_labels)?;
        let (rows, cols) = (row_labels.len(), col_labels.len());
        Ok(RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
            row_labels,
            col_labels,
            row_index,
            col_index,
        })
    }

    /// Builds a matrix from row vectors, labeling rows `r<i>` and columns `c<j>`.
    pub fn from_rows(data: Vec<Vec<Rational>>) -> Result<Self, ExactError> {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        Self::from_rows_labeled(
            positional_labels("r", rows),
            positional_labels("c", cols),
            data,
        )
    }

    pub fn from_rows_labeled(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        data: Vec<Vec<Rational>>,
    ) -> Result<Self, ExactError> {
        let mut m = Self::zeros(row_labels, col_labels)?;
        if data.len() != m.rows {
            return Err(ExactError::Shape(format!(
                "{} data rows for {} labels",
                data.len(),
                m.rows
            )));
        }
        for (i, row) in data.into_iter().enumerate() {
            if row.len() != m.cols {
                return Err(ExactError::Shape(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    m.cols
                )));
            }
            for (j, v) in row.into_iter().enumerate() {
                m.entries[i * m.cols + j] = v;
            }
        }
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(positional_labels("r", n), positional_labels("c", n))
            .expect("positional labels are unique");
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn row_position(&self, label: &str) -> Option<usize> {
        self.row_index.get(label).copied()
    }

    pub fn col_position(&self, label: &str) -> Option<usize> {
        self.col_index.get(label).copied()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        self.entries[i * self.cols + j] += v;
    }

    /// Entry addressed by labels.
    pub fn entry(&self, row: &str, col: &str) -> Result<&Rational, ExactError> {
        let i = self.row_position(row).ok_or_else(|| ExactError::UnknownLabel(row.into()))?;
        let j = self.col_position(col).ok_or_else(|| ExactError::UnknownLabel(col.into()))?;
        Ok(self.get(i, j))
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|v| !v.is_zero())
            .map(|k| (k / self.cols, k % self.cols))
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.col_labels.clone(), self.row_labels.clone())
            .expect("labels already unique");
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Matrix product `self * rhs`. Labels: rows of `self`, columns of `rhs`.
    pub fn mul(&self, rhs: &RatMatrix) -> Result<RatMatrix, ExactError> {
        if self.cols != rhs.rows {
            return Err(ExactError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.row_labels.clone(), rhs.col_labels.clone())?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Submatrix by positional indices, keeping labels.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        let rl = rows.iter().map(|&i| self.row_labels[i].clone()).collect();
        let cl = cols.iter().map(|&j| self.col_labels[j].clone()).collect();
        let mut m = RatMatrix::zeros(rl, cl).expect("selection indices must be distinct");
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Submatrix by labels.
    pub fn select<S: AsRef<str>>(&self, rows: &[S], cols: &[S]) -> Result<RatMatrix, ExactError> {
        let ri = self.row_positions(rows)?;
        let ci = self.col_positions(cols)?;
        Ok(self.submatrix(&ri, &ci))
    }

    pub fn row_positions<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>, ExactError> {
        labels
            .iter()
            .map(|l| {
                self.row_position(l.as_ref())
                    .ok_or_else(|| ExactError::UnknownLabel(l.as_ref().to_string()))
            })
            .collect()
    }

    pub fn col_positions<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>, ExactError> {
        labels
            .iter()
            .map(|l| {
                self.col_position(l.as_ref())
                    .ok_or_else(|| ExactError::UnknownLabel(l.as_ref().to_string()))
            })
            .collect()
    }

    /// Exact rank with a deterministic pivot set: columns are scanned left to
    /// right and the pivot in each column is the lowest-indexed remaining row
    /// with a nonzero entry. The submatrix `pivot_rows x pivot_cols` is
    /// always nonsingular.
    pub fn row_reduce(&self) -> RowReduction {
        let order: Vec<usize> = (0..self.rows).collect();
        self.row_reduce_with_order(&order)
    }

    /// Like [`row_reduce`](Self::row_reduce) but rows are preferred in the
    /// given order instead of index order. `order` must be a permutation of
    /// `0..rows`.
    pub fn row_reduce_with_order(&self, order: &[usize]) -> RowReduction {
        assert_eq!(order.len(), self.rows, "row order must cover every row");
        let rows: Vec<Vec<BigInt>> = order.iter().map(|&i| integral_row(self.row(i))).collect();
        let e = bareiss(rows, self.cols);
        RowReduction {
            rank: e.rank,
            pivot_rows: e.pivot_rows.iter().map(|&k| order[k]).collect(),
            pivot_cols: e.pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().rank
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<Rational, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(det_of_rows((0..self.rows).map(|i| self.row(i)), self.rows))
    }

    /// Determinant of the submatrix selected by labels. The empty selection
    /// has determinant 1.
    pub fn minor<S: AsRef<str>>(&self, rows: &[S], cols: &[S]) -> Result<Rational, ExactError> {
        if rows.len() != cols.len() {
            return Err(ExactError::UnequalSelection {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        let ri = self.row_positions(rows)?;
        let ci = self.col_positions(cols)?;
        for (list, labels) in [(&ri, rows), (&ci, cols)] {
            let mut seen = std::collections::HashSet::new();
            for (k, &i) in list.iter().enumerate() {
                if !seen.insert(i) {
                    return Err(ExactError::DuplicateLabel(labels[k].as_ref().to_string()));
                }
            }
        }
        Ok(self.submatrix(&ri, &ci).det().expect("selection is square"))
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  {:>12} |", self.row_labels[i])?;
            for v in self.row(i) {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Scales a rational row by the lcm of its denominators.
fn integral_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
}

fn row_scale(row: &[Rational]) -> BigInt {
    row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

fn det_of_rows<'a>(rows: impl Iterator<Item = &'a [Rational]>, n: usize) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut int_rows = Vec::with_capacity(n);
    for r in rows {
        scale *= row_scale(r);
        int_rows.push(integral_row(r));
    }
    let e = bareiss(int_rows, n);
    if e.rank < n {
        return Rational::zero();
    }
    let mut d = e.last_pivot;
    if e.odd_permutation {
        d = -d;
    }
    Rational::new(d, scale)
}

struct Echelon {
    rank: usize,
    /// Indices into the input row list.
    pivot_rows: Vec<usize>,
    pivot_cols: Vec<usize>,
    last_pivot: BigInt,
    odd_permutation: bool,
}

/// Fraction-free elimination over the integers. After `k` pivots, every
/// remaining entry equals a `(k+1)x(k+1)` minor of the input, so the division
/// by the previous pivot is exact.
fn bareiss(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let n = rows.len();
    let mut origin: Vec<usize> = (0..n).collect();
    let mut prev = BigInt::one();
    let mut pivot_rows = Vec::new();
    let mut pivot_cols = Vec::new();
    let mut odd = false;
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        // Lowest original index among remaining rows with a nonzero entry.
        let pick = (r..n)
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| origin[i]);
        let Some(p) = pick else { continue };
        if p != r {
            rows.swap(p, r);
            origin.swap(p, r);
            odd = !odd;
        }
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c..cols {
                let v = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        pivot_rows.push(origin[r]);
        pivot_cols.push(c);
        prev = pivot;
        r += 1;
    }
    Echelon {
        rank: r,
        pivot_rows,
        pivot_cols,
        last_pivot: prev,
        odd_permutation: odd,
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
