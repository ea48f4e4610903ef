use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::echelon::Echelon;
use super::field::{FieldSpec, Scalar};
use super::sparse::{self, Accumulator, SparseVec};
use super::LinError;

/// A linear map `k^cols → k^rows`, stored by sparse columns.
///
/// Operators panic on shape or field mismatch; the `checked_*` methods return errors instead.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in self.to_rows() {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix { field, rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let columns = (0..n).map(|i| sparse::unit(i, field)).collect();
        ExactMatrix { field, rows: n, cols: n, columns }
    }

    /// Entries are reduced into the field.
    pub fn from_rows(field: FieldSpec, rows: &[Vec<Scalar>]) -> Result<Self, LinError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(LinError::Ragged);
        }
        Ok(Self::from_fn(field, r, c, |i, j| rows[i][j].clone()))
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let columns = (0..cols)
            .map(|j| {
                (0..rows)
                    .filter_map(|i| {
                        let x = field.reduce(f(i, j));
                        (x != 0u32).then_some((i, x))
                    })
                    .collect()
            })
            .collect();
        ExactMatrix { field, rows, cols, columns }
    }

    /// Columns must already be sorted, zero-free and reduced.
    pub fn from_sparse_columns(field: FieldSpec, rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(columns.iter().all(|c| c.iter().all(|(i, x)| *i < rows && *x != 0u32)));
        ExactMatrix { field, rows, cols: columns.len(), columns }
    }

    pub fn from_dense_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        sparse::get(&self.columns[j], i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn dense_column(&self, j: usize) -> Vec<Scalar> {
        sparse::to_dense(self.field, &self.columns[j], self.rows)
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, x) in c {
                out[*i][j] = x.clone();
            }
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self
                .columns
                .iter()
                .enumerate()
                .all(|(j, c)| c.len() == 1 && c[0].0 == j && c[0].1 == 1u32)
    }

    /// First entry where the two matrices differ, as `(row, col)`.
    pub fn first_difference(&self, other: &ExactMatrix) -> Option<(usize, usize)> {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in comparison");
        for j in 0..self.cols {
            if self.columns[j] != other.columns[j] {
                let d = sparse::sub(self.field, &self.columns[j], &other.columns[j]);
                return Some((d[0].0, j));
            }
        }
        None
    }

    fn same_field(&self, other: &ExactMatrix) -> Result<(), LinError> {
        if self.field != other.field {
            return Err(LinError::FieldMismatch { left: self.field, right: other.field });
        }
        Ok(())
    }

    pub fn expect_field(&self, field: FieldSpec) -> Result<(), LinError> {
        if self.field != field {
            return Err(LinError::FieldMismatch { left: field, right: self.field });
        }
        Ok(())
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, x) in c {
                cols[*i].push((j, x.clone()));
            }
        }
        ExactMatrix { field: self.field, rows: self.cols, cols: self.rows, columns: cols }
    }

    /// `self · v` for a sparse vector of length `cols`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.field, self.rows);
        for (k, x) in v {
            acc.add_scaled(x, &self.columns[*k]);
        }
        acc.take()
    }

    pub fn apply_dense(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        sparse::to_dense(self.field, &self.apply(&sparse::from_dense(v)), self.rows)
    }

    pub fn checked_mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinError> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(LinError::Shape {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut acc = Accumulator::new(self.field, self.rows);
        let columns = other
            .columns
            .iter()
            .map(|c| {
                for (k, x) in c {
                    acc.add_scaled(x, &self.columns[*k]);
                }
                acc.take()
            })
            .collect();
        Ok(ExactMatrix { field: self.field, rows: self.rows, cols: other.cols, columns })
    }

    fn combine(&self, other: &ExactMatrix, c: &Scalar, op: &'static str) -> Result<ExactMatrix, LinError> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(LinError::Shape { op, left: self.shape(), right: other.shape() });
        }
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| sparse::axpy(self.field, a, c, b))
            .collect();
        Ok(ExactMatrix { field: self.field, rows: self.rows, cols: self.cols, columns })
    }

    pub fn checked_add(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinError> {
        self.combine(other, &self.field.one(), "add")
    }

    pub fn checked_sub(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinError> {
        self.combine(other, &self.field.from_i64(-1), "sub")
    }

    pub fn scale(&self, c: &Scalar) -> ExactMatrix {
        let columns = self.columns.iter().map(|v| sparse::scale(self.field, v, c)).collect();
        ExactMatrix { field: self.field, rows: self.rows, cols: self.cols, columns }
    }

    /// Kronecker product; basis index of `e_i ⊗ e_j` is `i·n + j` (left factor major).
    pub fn checked_kron(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinError> {
        self.same_field(other)?;
        let f = self.field;
        let mut columns = Vec::with_capacity(self.cols * other.cols);
        for a in &self.columns {
            for b in &other.columns {
                let mut col = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a {
                    for (k, y) in b {
                        col.push((i * other.rows + k, f.mul(x, y)));
                    }
                }
                columns.push(col);
            }
        }
        Ok(ExactMatrix {
            field: f,
            rows: self.rows * other.rows,
            cols: self.cols * other.cols,
            columns,
        })
    }

    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        self.checked_kron(other).expect("kron")
    }

    /// Kronecker product of a list; the empty list gives the 1×1 identity.
    pub fn kron_all(field: FieldSpec, mats: &[&ExactMatrix]) -> ExactMatrix {
        mats.iter().fold(ExactMatrix::identity(field, 1), |acc, m| acc.kron(m))
    }

    pub fn hstack(field: FieldSpec, rows: usize, blocks: &[&ExactMatrix]) -> ExactMatrix {
        let mut columns = Vec::new();
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            assert_eq!(b.field, field, "hstack field mismatch");
            columns.extend(b.columns.iter().cloned());
        }
        ExactMatrix { field, rows, cols: columns.len(), columns }
    }

    pub fn vstack(field: FieldSpec, cols: usize, blocks: &[&ExactMatrix]) -> ExactMatrix {
        let mut columns: Vec<SparseVec> = vec![Vec::new(); cols];
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            assert_eq!(b.field, field, "vstack field mismatch");
            for (j, c) in b.columns.iter().enumerate() {
                columns[j].extend(c.iter().map(|(i, x)| (i + offset, x.clone())));
            }
            offset += b.rows;
        }
        ExactMatrix { field, rows: offset, cols, columns }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.field, other.field);
        let mut columns = self.columns.clone();
        for c in &other.columns {
            columns.push(c.iter().map(|(i, x)| (i + self.rows, x.clone())).collect());
        }
        ExactMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols + other.cols,
            columns,
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> ExactMatrix {
        let columns = idx.iter().map(|&j| self.columns[j].clone()).collect();
        ExactMatrix { field: self.field, rows: self.rows, cols: idx.len(), columns }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.field, self.rows);
        for c in &self.columns {
            e.insert(c.clone());
        }
        e.rank()
    }

    /// Some `X` with `self · X = rhs`, or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &ExactMatrix) -> Option<ExactMatrix> {
        assert_eq!(self.rows, rhs.rows, "solve row mismatch");
        let f = self.field;
        // Augment each column with its own unit tag so that reductions record the combination used.
        let n = self.rows;
        let mut e = Echelon::new(f, n + self.cols);
        for (j, c) in self.columns.iter().enumerate() {
            let mut v = c.clone();
            v.push((n + j, f.one()));
            e.insert(v);
        }
        let mut columns = Vec::with_capacity(rhs.cols);
        for b in &rhs.columns {
            let r = e.reduce(b);
            if r.first().is_some_and(|(i, _)| *i < n) {
                return None;
            }
            // b − Σ x_j a_j has tag part −x
            columns.push(r.iter().map(|(i, x)| (i - n, f.neg(x))).collect());
        }
        Some(ExactMatrix { field: f, rows: self.cols, cols: rhs.cols, columns })
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if !self.is_square() || self.rank() != self.rows {
            return None;
        }
        self.solve(&ExactMatrix::identity(self.field, self.rows))
    }

    pub fn pow(&self, k: u32) -> ExactMatrix {
        (0..k).fold(ExactMatrix::identity(self.field, self.rows), |acc, _| &acc * self)
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        self.scale(&self.field.from_i64(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn mul_transpose_kron() {
        let a = ExactMatrix::from_i64_rows(q(), &[&[1, 2], &[3, 4]]);
        let b = ExactMatrix::from_i64_rows(q(), &[&[0, 1], &[1, 0]]);
        assert_eq!(&a * &b, ExactMatrix::from_i64_rows(q(), &[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose().get(0, 1), q().from_i64(3));
        let k = a.kron(&b);
        assert_eq!(k.shape(), (4, 4));
        // (e_i ⊗ e_j) has index 2i + j
        assert_eq!(k.get(1, 2), q().from_i64(2));
    }

    #[test]
    fn solve_and_inverse() {
        let a = ExactMatrix::from_i64_rows(q(), &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        let s = ExactMatrix::from_i64_rows(q(), &[&[1, 1], &[1, 1]]);
        assert!(s.inverse().is_none());
        let b = ExactMatrix::from_i64_rows(q(), &[&[1], &[0]]);
        assert!(s.solve(&b).is_none());
        let b = ExactMatrix::from_i64_rows(q(), &[&[3], &[3]]);
        let x = s.solve(&b).unwrap();
        assert_eq!(&s * &x, b);
    }

    #[test]
    fn stacking() {
        let a = ExactMatrix::identity(q(), 2);
        let h = ExactMatrix::hstack(q(), 2, &[&a, &a]);
        assert_eq!(h.shape(), (2, 4));
        let v = ExactMatrix::vstack(q(), 2, &[&a, &a]);
        assert_eq!(v.shape(), (4, 2));
        assert_eq!(v.get(3, 1), q().one());
        assert_eq!(a.direct_sum(&a), ExactMatrix::identity(q(), 4));
    }
}
