//! Exact dense linear algebra over a [`Scalar`] field.
//!
//! Rows are scaled to primitive integer vectors and reduced by
//! integer-preserving elimination: `row <- p * row - a * pivot_row`, followed
//! by exact division of the row by its content. Elimination first runs on
//! `i64` with checked arithmetic and falls back to `Scalar::Int` on overflow.
//!
//! Pivots are chosen as the first nonzero entry in column order, so the
//! reduced echelon form and therefore the kernel basis are deterministic.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{ExactInt, Scalar};

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from row vectors. An empty list gives the 0x0 matrix.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: nrows, cols, data })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if other.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j).clone();
                        out.set(i, j, cur + a.clone() * b.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    fn integer_rows(&self) -> Vec<Vec<F::Int>> {
        (0..self.rows).map(|i| integer_row(self.row(i))).collect()
    }

    /// Exact rank over the field.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        eliminate(self.integer_rows(), self.cols, false).pivots.len()
    }

    /// Basis of the right kernel, one vector per free column in ascending
    /// column order. The vector for free column `f` has a 1 in position `f`
    /// and zeros in every other free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        if self.cols == 0 {
            return Vec::new();
        }
        let ech = eliminate(self.integer_rows(), self.cols, true);
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                    if !row[f].is_zero() {
                        v[p] = -F::from_parts(row[f].clone(), row[p].clone());
                    }
                }
                v
            })
            .collect()
    }
}

/// Dimension of the span of `vectors`.
pub fn span_dim<F: Scalar>(vectors: &[Vec<F>]) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    let len = first.len();
    check_lengths(vectors, len)?;
    let rows = vectors.iter().map(|v| integer_row(v)).collect();
    Ok(eliminate(rows, len, false).pivots.len())
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span<F: Scalar>(v: &[F], basis: &[Vec<F>]) -> Result<bool> {
    check_lengths(basis, v.len())?;
    let mut ech = EchelonBasis::new(v.len());
    for b in basis {
        ech.insert(b)?;
    }
    ech.contains(v)
}

fn check_lengths<F>(vectors: &[Vec<F>], len: usize) -> Result<()> {
    match vectors.iter().find(|v| v.len() != len) {
        Some(v) => Err(Error::DimensionMismatch { expected: len, found: v.len() }),
        None => Ok(()),
    }
}

/// Scale a rational row to a primitive integer row with the same span.
pub(crate) fn integer_row<F: Scalar>(row: &[F]) -> Vec<F::Int> {
    let lcm = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(F::Int::one(), |acc, x| num_integer::Integer::lcm(&acc, &x.denom_int()));
    let mut out: Vec<F::Int> = row
        .iter()
        .map(|x| {
            if x.is_zero() {
                F::Int::zero()
            } else {
                x.numer_int() * (lcm.clone() / x.denom_int())
            }
        })
        .collect();
    make_primitive(&mut out);
    out
}

/// Divide a row by the gcd of its entries and make the leading entry positive.
fn make_primitive<I: ExactInt>(row: &mut [I]) {
    let mut g = I::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    let flip = row.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if !g.is_one() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() / g.clone();
            }
        }
    }
    if flip {
        for x in row.iter_mut() {
            *x = -x.clone();
        }
    }
}

/// `target <- p * target - a * pivot` on columns `from..`, where `p` is the
/// pivot entry and `a` the target's entry at the pivot column. `None` on
/// overflow.
fn combine<I: ExactInt>(target: &mut [I], pivot: &[I], col: usize, from: usize) -> Option<()> {
    let p = pivot[col].clone();
    let a = target[col].clone();
    let g = p.gcd(&a);
    let (p, a) = (p / g.clone(), a / g);
    for j in from..target.len() {
        let t = &target[j];
        let s = &pivot[j];
        let lhs = if t.is_zero() { I::zero() } else { t.checked_mul(&p)? };
        let rhs = if s.is_zero() { I::zero() } else { s.checked_mul(&a)? };
        target[j] = lhs.checked_sub(&rhs)?;
    }
    make_primitive(target);
    Some(())
}

struct Echelon<I> {
    rows: Vec<Vec<I>>,
    pivots: Vec<usize>,
}

fn eliminate<I: ExactInt>(rows: Vec<Vec<I>>, cols: usize, reduced: bool) -> Echelon<I> {
    let small: Option<Vec<Vec<i64>>> =
        rows.iter().map(|r| r.iter().map(|x| x.to_i64()).collect()).collect();
    if let Some(small) = small {
        if let Some(ech) = eliminate_checked(small, cols, reduced) {
            return Echelon {
                rows: ech
                    .rows
                    .into_iter()
                    .map(|r| r.into_iter().map(|x| I::from_i64(x).expect("i64 fits")).collect())
                    .collect(),
                pivots: ech.pivots,
            };
        }
    }
    eliminate_checked(rows, cols, reduced)
        .expect("integer type overflowed during elimination; use an arbitrary-precision scalar")
}

fn eliminate_checked<I: ExactInt>(
    mut rows: Vec<Vec<I>>,
    cols: usize,
    reduced: bool,
) -> Option<Echelon<I>> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot = &head[r];
        for row in tail.iter_mut() {
            if !row[c].is_zero() {
                combine(row, pivot, c, c)?;
            }
        }
        pivots.push(c);
        r += 1;
        // drop rows that vanished so later scans stay short
        let mut i = r;
        while i < rows.len() {
            if rows[i].iter().all(Zero::is_zero) {
                rows.swap_remove(i);
            } else {
                i += 1;
            }
        }
    }
    rows.truncate(pivots.len());
    if reduced {
        for k in (0..pivots.len()).rev() {
            let c = pivots[k];
            let (head, tail) = rows.split_at_mut(k);
            let pivot = &tail[0];
            for row in head.iter_mut() {
                if !row[c].is_zero() {
                    combine(row, pivot, c, 0)?;
                }
            }
        }
    }
    Some(Echelon { rows, pivots })
}

/// Incrementally grown echelon basis of a subspace of `F^len`.
#[derive(Debug, Clone)]
pub struct EchelonBasis<F: Scalar> {
    len: usize,
    // kept sorted by pivot column
    rows: Vec<(usize, Vec<F::Int>)>,
}

impl<F: Scalar> EchelonBasis<F> {
    pub fn new(len: usize) -> Self {
        EchelonBasis { len, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    fn reduce(&self, v: &[F]) -> Result<Vec<F::Int>> {
        if v.len() != self.len {
            return Err(Error::DimensionMismatch { expected: self.len, found: v.len() });
        }
        let mut w = integer_row(v);
        for (p, row) in &self.rows {
            if !w[*p].is_zero() {
                combine(&mut w, row, *p, 0).expect("arbitrary precision never overflows");
            }
        }
        Ok(w)
    }

    pub fn contains(&self, v: &[F]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Zero::is_zero))
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[F]) -> Result<bool> {
        let w = self.reduce(v)?;
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, w));
        Ok(true)
    }
}
