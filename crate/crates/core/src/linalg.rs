//! Dense exact linear algebra: row reduction, kernels, coordinates in a
//! basis, and operators induced on subquotients.
//!
//! Vectors are columns. A "basis matrix" is a matrix whose columns are
//! linearly independent and span the subspace in question.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.name())?;
        for r in 0..self.rows {
            let row: Vec<_> = self.row(r).iter().map(|x| self.field.format_elem(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<F: Field> {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub reduced: Matrix<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "matrix row length",
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { field: field.clone(), rows: nrows, cols, data })
    }

    /// Build from small integers; panics on ragged input.
    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let converted = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, converted).expect("rectangular integer matrix")
    }

    /// Build an `nrows x columns.len()` matrix from column vectors.
    pub fn from_columns(field: &F, nrows: usize, columns: &[Vec<F::Elem>]) -> Result<Self> {
        let mut m = Self::zero(field, nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != nrows {
                return Err(Error::DimensionMismatch {
                    context: "column length",
                    expected: nrows,
                    found: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn field(&self) -> &F {
        &self.field
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

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        self.field.is_one(x)
                    } else {
                        self.field.is_zero(x)
                    }
                })
            })
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Self::zero(f, self.rows, other.cols);
        let oc = other.cols;
        for i in 0..self.rows {
            let out_row = &mut out.data[i * oc..(i + 1) * oc];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if f.is_zero(a) {
                    continue;
                }
                let other_row = &other.data[k * oc..(k + 1) * oc];
                for (o, b) in out_row.iter_mut().zip(other_row) {
                    if !f.is_zero(b) {
                        f.add_mul_assign(o, a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        f.add_mul_assign(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect())
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Result<Self> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "entrywise operation",
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| self.field.sub(a, b))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let data = self.data.iter().map(|x| self.field.mul(c, x)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Kronecker product; basis index of `a ⊗ b` is `ia * other.rows + ib`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let f = &self.field;
        Ok(Self::from_fn(
            f,
            self.rows * other.rows,
            self.cols * other.cols,
            |r, c| {
                let a = self.get(r / other.rows, c / other.cols);
                if f.is_zero(a) {
                    return f.zero();
                }
                f.mul(a, other.get(r % other.rows, c % other.cols))
            },
        ))
    }

    /// Block diagonal matrix `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let mut m = Self::zero(&self.field, self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        Ok(m)
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c).clone();
            }
        }
    }

    pub fn submatrix(&self, rows: core::ops::Range<usize>, cols: core::ops::Range<usize>) -> Self {
        Self::from_fn(&self.field, rows.len(), cols.len(), |r, c| {
            self.get(rows.start + r, cols.start + c).clone()
        })
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                context: "hstack",
                expected: self.rows,
                found: other.rows,
            });
        }
        Ok(Self::from_fn(&self.field, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        }))
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "vstack",
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (head, tail) = self.data.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    /// `row[target] -= c * row[source]`, touching columns `from..`.
    fn eliminate(&mut self, target: usize, source: usize, from: usize) {
        let cols = self.cols;
        let c = self.data[target * cols + from].clone();
        if self.field.is_zero(&c) {
            return;
        }
        let (src, dst) = if source < target {
            let (head, tail) = self.data.split_at_mut(target * cols);
            (&head[source * cols..(source + 1) * cols], &mut tail[..cols])
        } else {
            let (head, tail) = self.data.split_at_mut(source * cols);
            (&tail[..cols] as &[F::Elem], &mut head[target * cols..(target + 1) * cols])
        };
        for (d, s) in dst[from..].iter_mut().zip(&src[from..]) {
            if !self.field.is_zero(s) {
                self.field.sub_mul_assign(d, &c, s);
            }
        }
    }

    fn normalize_row(&mut self, r: usize, pivot_col: usize) {
        let inv = self.field.inv(self.get(r, pivot_col)).expect("pivot is nonzero");
        let cols = self.cols;
        for x in &mut self.data[r * cols + pivot_col..(r + 1) * cols] {
            if !self.field.is_zero(x) {
                *x = self.field.mul(x, &inv);
            }
        }
    }

    /// Gaussian elimination. With `full` the result is reduced row-echelon
    /// form; otherwise only an echelon form with unit pivots.
    fn eliminate_all(&mut self, full: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.field.is_zero(self.get(r, col))) else {
                continue;
            };
            self.swap_rows(row, p);
            self.normalize_row(row, col);
            let range = if full { 0..self.rows } else { row + 1..self.rows };
            for r in range {
                if r != row {
                    self.eliminate(r, row, col);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Reduced row-echelon form. Pivots are chosen as the first nonzero
    /// entry in column order, so the output is deterministic.
    pub fn rref(&self) -> Rref<F> {
        let mut reduced = self.clone();
        let pivots = reduced.eliminate_all(true);
        Rref { rank: pivots.len(), pivots, reduced }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Eliminate along the shorter side.
        let mut m = if self.rows > self.cols { self.transpose() } else { self.clone() };
        m.eliminate_all(false).len()
    }

    /// Columns form a basis of the null space, one per free column of the
    /// reduced form, in increasing free-column order.
    pub fn kernel_basis(&self) -> Self {
        let Rref { pivots, reduced, .. } = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![None; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| is_pivot[c].is_none()).collect();
        let mut basis = Self::zero(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            basis.set(fc, j, f.one());
            for (i, &p) in pivots.iter().enumerate() {
                let v = reduced.get(i, fc);
                if !f.is_zero(v) {
                    basis.set(p, j, f.neg(v));
                }
            }
        }
        basis
    }

    /// Independent columns spanning the column space (the pivot columns).
    pub fn column_space_basis(&self) -> Self {
        let Rref { pivots, .. } = self.rref();
        self.select_columns(&pivots)
    }

    /// Column space basis computed from the row space of the transpose; the
    /// columns are in reduced echelon form, so two spans are equal iff these
    /// are equal.
    pub fn canonical_span(&self) -> Self {
        let Rref { rank, reduced, .. } = self.transpose().rref();
        reduced.submatrix(0..rank, 0..self.rows).transpose()
    }
}

/// Solves for coordinates with respect to a fixed basis of a subspace.
#[derive(Clone, Debug)]
pub struct Coordinates<F: Field> {
    /// Row operations `E` with `E * basis = [I; 0]`.
    ops: Matrix<F>,
    dim: usize,
}

impl<F: Field> Coordinates<F> {
    /// `basis` must have linearly independent columns.
    pub fn new(basis: &Matrix<F>) -> Result<Self> {
        let n = basis.rows();
        let aug = basis.hstack(&Matrix::identity(basis.field(), n))?;
        let Rref { rank, pivots, reduced } = aug.rref();
        let dim = basis.cols();
        if pivots.iter().take_while(|&&p| p < dim).count() != dim {
            return Err(Error::InvariantViolation(format!(
                "basis columns are dependent (rank {} < {})",
                pivots.iter().take_while(|&&p| p < dim).count(),
                dim
            )));
        }
        debug_assert_eq!(rank, n);
        Ok(Coordinates { ops: reduced.submatrix(0..n, dim..dim + n), dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of each column of `vectors`, or `None` if some column is
    /// outside the span.
    pub fn solve(&self, vectors: &Matrix<F>) -> Result<Option<Matrix<F>>> {
        let t = self.ops.mul(vectors)?;
        let f = t.field();
        for r in self.dim..t.rows() {
            if t.row(r).iter().any(|x| !f.is_zero(x)) {
                return Ok(None);
            }
        }
        Ok(Some(t.submatrix(0..self.dim, 0..vectors.cols())))
    }

    pub fn contains(&self, vectors: &Matrix<F>) -> Result<bool> {
        Ok(self.solve(vectors)?.is_some())
    }
}

/// A subquotient `span(sub) / span(killed)` with a completed basis: the
/// killed basis followed by the first columns of `sub` independent of it.
#[derive(Clone, Debug)]
pub struct Subquotient<F: Field> {
    ambient: usize,
    killed_dim: usize,
    /// Basis of `span(sub)`: killed basis first, then the complement.
    completed: Matrix<F>,
    coords: Coordinates<F>,
}

impl<F: Field> Subquotient<F> {
    pub fn new(sub: &Matrix<F>, killed: &Matrix<F>) -> Result<Self> {
        if sub.rows() != killed.rows() {
            return Err(Error::DimensionMismatch {
                context: "subquotient ambient dimension",
                expected: sub.rows(),
                found: killed.rows(),
            });
        }
        let killed = killed.column_space_basis();
        let stacked = killed.hstack(sub)?;
        let Rref { pivots, .. } = stacked.rref();
        if pivots.iter().take_while(|&&p| p < killed.cols()).count() != killed.cols() {
            return Err(Error::InvariantViolation("killed basis is dependent".into()));
        }
        let completed = stacked.select_columns(&pivots);
        let sub_rank = sub.rank();
        if completed.cols() != sub_rank {
            return Err(Error::InvariantViolation(
                "killed subspace is not contained in the sub subspace".into(),
            ));
        }
        let coords = Coordinates::new(&completed)?;
        Ok(Subquotient { ambient: sub.rows(), killed_dim: killed.cols(), completed, coords })
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.completed.cols() - self.killed_dim
    }

    /// Ambient vectors representing the quotient basis.
    pub fn representatives(&self) -> Matrix<F> {
        self.completed.submatrix(0..self.ambient, self.killed_dim..self.completed.cols())
    }

    /// Quotient coordinates of ambient vectors lying in `span(sub)`.
    pub fn project(&self, vectors: &Matrix<F>) -> Result<Matrix<F>> {
        let c = self.coords.solve(vectors)?.ok_or_else(|| {
            Error::InvariantViolation("vector outside the sub subspace".into())
        })?;
        Ok(c.submatrix(self.killed_dim..c.rows(), 0..c.cols()))
    }

    /// Operator induced by `action` on the quotient.
    pub fn induced(&self, action: &Matrix<F>) -> Result<Matrix<F>> {
        if action.rows() != self.ambient || action.cols() != self.ambient {
            return Err(Error::DimensionMismatch {
                context: "subquotient action",
                expected: self.ambient,
                found: action.rows(),
            });
        }
        let image = action.mul(&self.completed)?;
        let coords = self.coords.solve(&image)?.ok_or_else(|| {
            Error::InvariantViolation("action does not preserve the sub subspace".into())
        })?;
        let f = action.field();
        for j in 0..self.killed_dim {
            for i in self.killed_dim..coords.rows() {
                if !f.is_zero(coords.get(i, j)) {
                    return Err(Error::InvariantViolation(
                        "action does not preserve the killed subspace".into(),
                    ));
                }
            }
        }
        let k = self.killed_dim;
        Ok(coords.submatrix(k..coords.rows(), k..coords.cols()))
    }
}

/// Matrix of the operator induced by `action` on `span(sub) / span(killed)`.
pub fn subquotient_action<F: Field>(
    action: &Matrix<F>,
    sub: &Matrix<F>,
    killed: &Matrix<F>,
) -> Result<Matrix<F>> {
    Subquotient::new(sub, killed)?.induced(action)
}
