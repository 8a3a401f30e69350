//! Dense matrices over an exact field.
//!
//! Indices are 0-based in this API. Text formats and user-facing messages use
//! 1-based positions.

use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;

/// A dense row-major matrix whose entries all live in the same field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
    ctx: F::Ctx,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>, ctx: F::Ctx) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "construction",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        debug_assert!(data.iter().all(|x| x.context() == ctx));
        Ok(Matrix { rows, cols, data, ctx })
    }

    pub fn from_rows(rows: Vec<Vec<F>>, ctx: F::Ctx) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                op: "construction",
                left: (r, c),
                right: (1, bad.len()),
            });
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect(), ctx)
    }

    /// Builds a matrix from integer literals.
    ///
    /// Panics if the rows are ragged.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R], ctx: &F::Ctx) -> Self {
        let entries = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| F::from_i64(v, ctx)).collect())
            .collect();
        Matrix::from_rows(entries, ctx.clone()).expect("rows must have equal length")
    }

    pub fn from_fn(rows: usize, cols: usize, ctx: &F::Ctx, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            data,
            ctx: ctx.clone(),
        }
    }

    pub fn zeros(rows: usize, cols: usize, ctx: &F::Ctx) -> Self {
        Matrix::from_fn(rows, cols, ctx, |_, _| F::zero(ctx))
    }

    pub fn identity(n: usize, ctx: &F::Ctx) -> Self {
        Matrix::from_fn(n, n, ctx, |i, j| if i == j { F::one(ctx) } else { F::zero(ctx) })
    }

    /// The exchange matrix `J`: ones on the anti-diagonal.
    pub fn exchange(n: usize, ctx: &F::Ctx) -> Self {
        Matrix::from_fn(
            n,
            n,
            ctx,
            |i, j| {
                if i + j + 1 == n {
                    F::one(ctx)
                } else {
                    F::zero(ctx)
                }
            },
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Order of a square matrix.
    pub fn order(&self) -> Result<usize> {
        self.require_square()?;
        Ok(self.rows)
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            ctx: ctx.clone(),
        }
    }

    fn conformable(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.conformable(other, "addition")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Matrix::new(self.rows, self.cols, data, self.ctx.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.conformable(other, "subtraction")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Matrix::new(self.rows, self.cols, data, self.ctx.clone())
    }

    pub fn negate(&self) -> Self {
        self.map(&self.ctx, |x| -x.clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(&self.ctx, |x| x.clone() * s.clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "multiplication",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Matrix::<F>::zeros(self.rows, other.cols, &self.ctx);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, &self.ctx, |i, j| self.get(j, i).clone())
    }

    /// Copy of the block with the given row and column ranges.
    pub fn block(&self, rows: Range<usize>, cols: Range<usize>) -> Result<Self> {
        if rows.start > rows.end || cols.start > cols.end || rows.end > self.rows || cols.end > self.cols {
            return Err(Error::OutOfBounds(format!(
                "block rows {}..{} cols {}..{} of a {}x{} matrix",
                rows.start + 1,
                rows.end,
                cols.start + 1,
                cols.end,
                self.rows,
                self.cols
            )));
        }
        Ok(Matrix::from_fn(rows.len(), cols.len(), &self.ctx, |i, j| {
            self.get(rows.start + i, cols.start + j).clone()
        }))
    }

    /// Assembles `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::DimensionMismatch {
                op: "block assembly",
                left: (a.rows, a.cols),
                right: (d.rows, d.cols),
            });
        }
        let (r, c0) = (a.rows, a.cols);
        Ok(Matrix::from_fn(
            a.rows + c.rows,
            a.cols + b.cols,
            &a.ctx,
            |i, j| match (i < r, j < c0) {
                (true, true) => a.get(i, j).clone(),
                (true, false) => b.get(i, j - c0).clone(),
                (false, true) => c.get(i - r, j).clone(),
                (false, false) => d.get(i - r, j - c0).clone(),
            },
        ))
    }

    /// The `k x k` matrix formed by the first `k` rows and the listed
    /// columns, which must be strictly increasing.
    pub fn submatrix_by_columns(&self, columns: &[usize], k: usize) -> Result<Self> {
        if columns.len() != k || k > self.rows {
            return Err(Error::DimensionMismatch {
                op: "column restriction",
                left: (self.rows, self.cols),
                right: (k, columns.len()),
            });
        }
        if columns.windows(2).any(|w| w[0] >= w[1]) || columns.iter().any(|&c| c >= self.cols) {
            return Err(Error::OutOfBounds(format!(
                "column set {:?} must be strictly increasing and within 1..={}",
                columns.iter().map(|c| c + 1).collect::<Vec<_>>(),
                self.cols
            )));
        }
        Ok(Matrix::from_fn(k, k, &self.ctx, |i, j| self.get(i, columns[j]).clone()))
    }

    /// `P[i][j] = A[rows[i]][cols[j]]`.
    pub fn permuted(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), &self.ctx, |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Determinant. Integer matrices take the fraction-free route; anything
    /// else uses exact Gaussian elimination. Both give the same value.
    pub fn det(&self) -> Result<F> {
        self.require_square()?;
        match self.integer_entries() {
            Some(ints) => Ok(F::from_integer(&bareiss_det(ints, self.rows), &self.ctx)),
            None => self.det_gauss(),
        }
    }

    /// Determinant by Gaussian elimination, pivoting on the first nonzero
    /// entry of each column.
    pub fn det_gauss(&self) -> Result<F> {
        self.require_square()?;
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = F::one(&self.ctx);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r * n + c].is_zero()) else {
                return Ok(F::zero(&self.ctx));
            };
            if p != c {
                for j in 0..n {
                    m.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = m[c * n + c].clone();
            let pinv = pivot.inv()?;
            det = det * pivot;
            for r in c + 1..n {
                if m[r * n + c].is_zero() {
                    continue;
                }
                let factor = m[r * n + c].clone() * pinv.clone();
                for j in c..n {
                    let v = m[r * n + j].clone() - factor.clone() * m[c * n + j].clone();
                    m[r * n + j] = v;
                }
            }
        }
        Ok(det)
    }

    /// Bareiss elimination over the integers; fails on non-integer entries.
    pub fn det_fraction_free(&self) -> Result<F> {
        self.require_square()?;
        let ints = self.integer_entries().ok_or(Error::NotIntegral)?;
        Ok(F::from_integer(&bareiss_det(ints, self.rows), &self.ctx))
    }

    /// Integer view of the entries, when every entry is an integer.
    pub fn integer_entries(&self) -> Option<Vec<BigInt>> {
        self.data.iter().map(Field::to_integer).collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = Matrix::<F>::identity(n, &self.ctx).data;
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r * n + c].is_zero()).ok_or(Error::Singular)?;
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                    inv.swap(p * n + j, c * n + j);
                }
            }
            let pinv = a[c * n + c].inv()?;
            for j in 0..n {
                a[c * n + j] = a[c * n + j].clone() * pinv.clone();
                inv[c * n + j] = inv[c * n + j].clone() * pinv.clone();
            }
            for r in 0..n {
                if r == c || a[r * n + c].is_zero() {
                    continue;
                }
                let f = a[r * n + c].clone();
                for j in 0..n {
                    a[r * n + j] = a[r * n + j].clone() - f.clone() * a[c * n + j].clone();
                    inv[r * n + j] = inv[r * n + j].clone() - f.clone() * inv[c * n + j].clone();
                }
            }
        }
        Matrix::new(n, n, inv, self.ctx.clone())
    }

    pub fn rank(&self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.data.clone();
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r * cols + c].is_zero()) else {
                continue;
            };
            for j in 0..cols {
                m.swap(p * cols + j, rank * cols + j);
            }
            let pinv = m[rank * cols + c].inv().expect("pivot is nonzero");
            for r in rank + 1..rows {
                if m[r * cols + c].is_zero() {
                    continue;
                }
                let f = m[r * cols + c].clone() * pinv.clone();
                for j in c..cols {
                    let v = m[r * cols + j].clone() - f.clone() * m[rank * cols + j].clone();
                    m[r * cols + j] = v;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// `V^-1 * A * V`.
    pub fn conjugate_by(&self, v: &Self) -> Result<Self> {
        self.require_square()?;
        if v.rows != self.rows || !v.is_square() {
            return Err(Error::DimensionMismatch {
                op: "conjugation",
                left: (self.rows, self.cols),
                right: (v.rows, v.cols),
            });
        }
        v.inverse()?.mul(self)?.mul(v)
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Matrix with the given columns, all of the same length.
    pub fn from_columns(columns: &[Vec<F>], ctx: &F::Ctx) -> Self {
        let rows = columns.first().map_or(0, Vec::len);
        Matrix::from_fn(rows, columns.len(), ctx, |i, j| columns[j][i].clone())
    }
}

/// Fraction-free elimination: every intermediate quantity is itself a
/// minor, so all divisions are exact.
fn bareiss_det(mut m: Vec<BigInt>, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                m.swap(p * n + j, k * n + j);
            }
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                let (q, r) = v.div_rem(&prev);
                debug_assert!(r.is_zero());
                m[i * n + j] = q;
            }
        }
        prev = m[k * n + k].clone();
    }
    let d = m[n * n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", line.join(" "))?;
        }
        write!(f, "]")
    }
}
