use std::fmt;
use std::ops::Range;

use num_rational::BigRational;

use super::elim::{eliminate, PrimeOps, RationalOps};
use super::field::{FieldSpec, Scalar};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
///
/// Arithmetic helpers (`mul`, `add`, ...) panic on incompatible shapes or
/// fields; shapes are a structural invariant of every caller in this crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            field,
            data,
        }
    }

    /// Builds a matrix from row-major entries, checking count and field
    /// membership.
    pub fn from_vec(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| !field.contains(s)) {
            return Err(Error::Field(format!("{bad} is not in {field}")));
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data,
        })
    }

    /// Convenience constructor from integer rows; entries are reduced into
    /// the field. All rows must have equal length.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
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

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        debug_assert!(self.field.contains(&v));
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    fn assert_same_field(&self, other: &Matrix) {
        assert_eq!(self.field, other.field, "matrices over different fields");
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.assert_same_field(other);
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    fn zip_with(&self, other: &Matrix, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        self.assert_same_field(other);
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn neg(&self) -> Matrix {
        self.map(|f, a| f.neg(a))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        self.map(|f, a| f.mul(a, c))
    }

    fn map(&self, op: impl Fn(&FieldSpec, &Scalar) -> Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().map(|a| op(&self.field, a)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Matrix {
        assert!(rows.end <= self.rows && cols.end <= self.cols);
        Matrix::from_fn(self.field, rows.len(), cols.len(), |i, j| {
            self.get(rows.start + i, cols.start + j).clone()
        })
    }

    pub fn columns(&self, cols: Range<usize>) -> Matrix {
        self.submatrix(0..self.rows, cols)
    }

    pub fn select_columns(&self, which: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, which.len(), |i, j| self.get(i, which[j]).clone())
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        self.assert_same_field(block);
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    /// Horizontal concatenation; all parts must have `rows` rows.
    pub fn hstack(field: FieldSpec, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut c = 0;
        for p in parts {
            assert_eq!(p.rows, rows);
            out.set_block(0, c, p);
            c += p.cols;
        }
        out
    }

    /// Vertical concatenation; all parts must have `cols` columns.
    pub fn vstack(field: FieldSpec, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut r = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            out.set_block(r, 0, p);
            r += p.rows;
        }
        out
    }

    pub fn block_diagonal(field: FieldSpec, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|m| m.rows).sum();
        let cols = blocks.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Reduced row-echelon form. Pivots are chosen as the first nonzero
    /// entry at or below the current row, scanning columns left to right.
    pub fn rref(&self) -> Rref {
        let (reduced, pivot_cols) = match self.field.characteristic() {
            Some(p) => {
                let mut data: Vec<u64> = self
                    .data
                    .iter()
                    .map(|s| match s {
                        Scalar::Mod(v) => *v,
                        Scalar::Rat(_) => unreachable!(),
                    })
                    .collect();
                let piv = eliminate(&PrimeOps(p), self.rows, self.cols, &mut data);
                let data = data.into_iter().map(Scalar::Mod).collect();
                (data, piv)
            }
            None => {
                let mut data: Vec<BigRational> = self
                    .data
                    .iter()
                    .map(|s| match s {
                        Scalar::Rat(r) => r.clone(),
                        Scalar::Mod(_) => unreachable!(),
                    })
                    .collect();
                let piv = eliminate(&RationalOps, self.rows, self.cols, &mut data);
                let data = data.into_iter().map(Scalar::Rat).collect();
                (data, piv)
            }
        };
        Rref {
            reduced: Matrix {
                rows: self.rows,
                cols: self.cols,
                field: self.field,
                data: reduced,
            },
            rank: pivot_cols.len(),
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        let Rref {
            reduced, pivot_cols, ..
        } = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivot_cols {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let mut basis = Matrix::zeros(f, self.cols, free.len());
        for (k, &j) in free.iter().enumerate() {
            basis.data[j * free.len() + k] = f.one();
            for (r, &p) in pivot_cols.iter().enumerate() {
                basis.data[p * free.len() + k] = f.neg(reduced.get(r, j));
            }
        }
        Subspace::from_independent_columns(basis)
    }

    /// Basis of the column span.
    pub fn image_basis(&self) -> Subspace {
        Subspace::span(self)
    }

    /// Some `x` with `self * x = b`, or `None` if the system is
    /// inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        self.assert_same_field(b);
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} rows but right-hand side has {}",
                self.rows, b.rows
            )));
        }
        let f = self.field;
        let aug = Matrix::hstack(f, self.rows, &[self, b]);
        let Rref {
            reduced, pivot_cols, ..
        } = aug.rref();
        if pivot_cols.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(f, self.cols, b.cols);
        for (r, &p) in pivot_cols.iter().enumerate() {
            for j in 0..b.cols {
                x.data[p * b.cols + j] = reduced.get(r, self.cols + j).clone();
            }
        }
        Ok(Some(x))
    }

    /// `l` with `l * self = I`, present exactly when `self` has full column
    /// rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let id = Matrix::identity(self.field, self.cols);
        self.transpose()
            .solve(&id)
            .expect("shapes agree by construction")
            .map(|x| x.transpose())
    }

    /// `r` with `self * r = I`, present exactly when `self` has full row rank.
    pub fn right_inverse(&self) -> Option<Matrix> {
        let id = Matrix::identity(self.field, self.rows);
        self.solve(&id).expect("shapes agree by construction")
    }

    /// Two-sided inverse of a square matrix.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        self.right_inverse()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}[", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(f(5), 2);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 1]);

        let z = Matrix::zeros(FieldSpec::rationals(), 2, 2);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivot_cols.is_empty());
    }

    #[test]
    fn rref_dependent_rows() {
        let q = FieldSpec::rationals();
        let m = Matrix::from_i64(q, &[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.reduced, Matrix::from_i64(q, &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
    }

    #[test]
    fn rref_clears_above_pivots() {
        let q = FieldSpec::rationals();
        let m = Matrix::from_i64(q, &[&[0, 2, 4], &[3, 1, 0], &[3, 3, 4]]);
        let r = m.rref();
        let expect = Matrix::from_fn(q, 3, 3, |i, j| match (i, j) {
            (0, 0) | (1, 1) => q.one(),
            (0, 2) => q.ratio(-2, 3),
            (1, 2) => q.from_i64(2),
            _ => q.zero(),
        });
        assert_eq!(r.reduced, expect);
        assert_eq!(r.pivot_cols, vec![0, 1]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(f(2), 3).kernel_basis().dim(), 0);
        let k = Matrix::zeros(FieldSpec::rationals(), 2, 3).kernel_basis();
        assert_eq!(k.dim(), 3);
        assert_eq!(k.ambient_dim(), 3);
        let k = Matrix::from_i64(f(2), &[&[1, 1]]).kernel_basis();
        assert_eq!(k.basis(), &Matrix::from_i64(f(2), &[&[1], &[1]]));
    }

    #[test]
    fn image_examples() {
        let q = FieldSpec::rationals();
        assert_eq!(Matrix::identity(q, 3).image_basis().dim(), 3);
        assert_eq!(Matrix::zeros(q, 3, 2).image_basis().dim(), 0);
        let im = Matrix::from_i64(q, &[&[1], &[2]]).image_basis();
        assert_eq!(im.basis(), &Matrix::from_i64(q, &[&[1], &[2]]));
    }

    #[test]
    fn solve_examples() {
        let q = FieldSpec::rationals();
        let b = Matrix::from_i64(q, &[&[3, -1], &[7, 2]]);
        assert_eq!(Matrix::identity(q, 2).solve(&b).unwrap(), Some(b.clone()));
        let zero = Matrix::zeros(q, 2, 2);
        assert_eq!(zero.solve(&b).unwrap(), None);
        let x = Matrix::from_i64(q, &[&[2]])
            .solve(&Matrix::from_i64(q, &[&[1]]))
            .unwrap()
            .unwrap();
        assert_eq!(x.get(0, 0), &q.ratio(1, 2));
        assert!(matches!(
            zero.solve(&Matrix::zeros(q, 3, 1)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        let q = FieldSpec::rationals();
        let a = Matrix::from_i64(q, &[&[1, 1, 0], &[0, 0, 1]]);
        let b = Matrix::from_i64(q, &[&[5], &[2]]);
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(x, Matrix::from_i64(q, &[&[5], &[0], &[2]]));
    }

    #[test]
    fn left_inverse_examples() {
        let q = FieldSpec::rationals();
        let id = Matrix::identity(q, 3);
        assert_eq!(id.left_inverse(), Some(id.clone()));
        let col = Matrix::from_i64(q, &[&[1], &[0]]);
        assert_eq!(col.left_inverse(), Some(Matrix::from_i64(q, &[&[1, 0]])));
        assert_eq!(Matrix::from_i64(q, &[&[0]]).left_inverse(), None);
        let row = Matrix::from_i64(q, &[&[0, 3]]);
        let r = row.right_inverse().unwrap();
        assert!(row.mul(&r).is_identity());
        assert_eq!(col.right_inverse(), None);
    }

    #[test]
    fn empty_shapes() {
        let q = FieldSpec::rationals();
        let m = Matrix::zeros(q, 0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().dim(), 3);
        let l = Matrix::zeros(q, 2, 0).left_inverse().unwrap();
        assert_eq!(l.shape(), (0, 2));
    }
}
