//! Dense matrices over exact rationals, and fraction-free elimination over
//! the integers for rank and kernel computations.
//!
//! Elimination works on integer rows. Each row is reduced to primitive form
//! (content divided out) after every update, which keeps entries small for
//! the sparse {-1, 0, 1} systems this crate produces. The fast path runs on
//! `i128` with checked arithmetic and falls back to arbitrary precision on
//! overflow.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Builds the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `"n/d"` with `d >= 1`, integers included.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the `"n/d"` (or bare `"n"`) format produced by [`format_rational`].
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),
}

/// Dense row-major matrix over exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(MatrixError::DimensionMismatch {
                    left: (r, c),
                    right: (1, row.len()),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
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

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    /// Nonzero entries as `(row, col, value)`, row-major.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.nonzeros() {
            t.set(c, r, v.clone());
        }
        t
    }

    pub fn trace(&self) -> Result<Rational, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        Ok((0..self.rows).map(|i| self.get(i, i).clone()).sum())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        // Everything this crate multiplies is very sparse.
        for (i, k, a) in self.nonzeros() {
            for j in 0..other.cols {
                let b = other.get(k, j);
                if !b.is_zero() {
                    let idx = i * out.cols + j;
                    out.data[idx] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self, MatrixError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn rank(&self) -> usize {
        integer_rows_rank(&self.integer_rows())
    }

    /// Basis of the right kernel `{v : self·v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        integer_rows_kernel(&self.integer_rows(), self.cols)
    }

    /// Each row scaled by the lcm of its denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
            })
            .collect()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Trait bundle for the integer types the eliminator runs on.
trait EliminationInt: Integer + Signed + Clone + CheckedMul + CheckedSub {}
impl<T: Integer + Signed + Clone + CheckedMul + CheckedSub> EliminationInt for T {}

/// Reduced echelon form over the integers: every pivot column is zero outside
/// its pivot row.
struct Echelon<T> {
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

fn make_primitive<T: EliminationInt>(row: &mut [T]) {
    let g = row.iter().fold(T::zero(), |g, v| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v = v.clone() / g.clone();
        }
    }
}

/// Fraction-free Gauss–Jordan elimination. Returns `None` on overflow.
fn reduce<T: EliminationInt>(mut rows: Vec<Vec<T>>, cols: usize) -> Option<Echelon<T>> {
    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    for r in rows.iter_mut() {
        make_primitive(r);
    }
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == rows.len() {
            break;
        }
        // Smallest nonzero pivot keeps entries small.
        let Some(p) = (next..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r][col].abs())
        else {
            continue;
        };
        rows.swap(next, p);
        let pivot_row = rows[next].clone();
        let pv = pivot_row[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[col]);
            let mul_row = pv.clone() / g.clone();
            let mul_piv = row[col].clone() / g;
            for (v, pvv) in row.iter_mut().zip(&pivot_row) {
                if pvv.is_zero() && v.is_zero() {
                    continue;
                }
                let a = v.checked_mul(&mul_row)?;
                let b = pvv.checked_mul(&mul_piv)?;
                *v = a.checked_sub(&b)?;
            }
            make_primitive(row);
        }
        pivots.push(col);
        next += 1;
    }
    rows.truncate(next);
    Some(Echelon { rows, pivots })
}

fn to_i128(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    rows.iter()
        .map(|r| r.iter().map(ToPrimitive::to_i128).collect())
        .collect()
}

fn reduce_any(rows: &[Vec<BigInt>], cols: usize) -> Echelon<BigInt> {
    if let Some(small) = to_i128(rows) {
        if let Some(e) = reduce(small, cols) {
            return Echelon {
                rows: e
                    .rows
                    .into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect(),
                pivots: e.pivots,
            };
        }
    }
    reduce(rows.to_vec(), cols).expect("arbitrary precision cannot overflow")
}

/// Rank of an integer matrix given by rows.
pub fn integer_rows_rank(rows: &[Vec<BigInt>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    reduce_any(rows, cols).pivots.len()
}

/// Kernel basis of an integer matrix with `cols` columns; one vector per free
/// column, with a 1 in that column.
pub fn integer_rows_kernel(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<Rational>> {
    let ech = reduce_any(rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                if !row[f].is_zero() {
                    v[p] = -Rational::new(row[f].clone(), row[p].clone());
                }
            }
            v
        })
        .collect()
}

/// Sparse integer linear system, stored row by row as `(column, coefficient)`.
#[derive(Debug, Clone, Default)]
pub struct SparseSystem {
    pub cols: usize,
    pub rows: Vec<Vec<(usize, i64)>>,
}

impl SparseSystem {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    /// Adds a row, merging repeated columns and dropping zeros.
    pub fn push(&mut self, mut row: Vec<(usize, i64)>) {
        row.sort_unstable_by_key(|&(c, _)| c);
        let mut merged: Vec<(usize, i64)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|&(_, v)| v != 0);
        if !merged.is_empty() {
            self.rows.push(merged);
        }
    }

    /// Restricts to a subset of columns (renumbered in the given order),
    /// keeping only rows that touch them. Rows touching other columns are
    /// truncated, which is only meaningful when the system is block diagonal
    /// along the given column set.
    pub fn restrict(&self, columns: &[usize]) -> SparseSystem {
        let mut index = vec![usize::MAX; self.cols];
        for (new, &old) in columns.iter().enumerate() {
            index[old] = new;
        }
        let mut out = SparseSystem::new(columns.len());
        for row in &self.rows {
            let kept: Vec<(usize, i64)> = row
                .iter()
                .filter(|&&(c, _)| index[c] != usize::MAX)
                .map(|&(c, v)| (index[c], v))
                .collect();
            out.push(kept);
        }
        out
    }

    fn dense(&self) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|row| {
                let mut d = vec![BigInt::zero(); self.cols];
                for &(c, v) in row {
                    d[c] = BigInt::from(v);
                }
                d
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        if self.cols == 0 {
            return 0;
        }
        integer_rows_rank(&self.dense())
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        integer_rows_kernel(&self.dense(), self.cols)
    }
}
