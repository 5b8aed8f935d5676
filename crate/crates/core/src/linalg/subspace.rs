use super::field::FieldSpec;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A linear subspace of `field^ambient_dim`, stored as the columns of a
/// basis matrix in reduced column-echelon form. Equal subspaces therefore
/// have identical basis matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

/// Coset representatives for a quotient `big / small`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub dim: usize,
    /// Columns extending the basis of `small` to a basis of `big`.
    pub representatives: Matrix,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, ambient_dim, 0),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
        }
    }

    /// Column span of `m`.
    pub fn span(m: &Matrix) -> Self {
        let rr = m.transpose().rref();
        let basis = rr.reduced.submatrix(0..rr.rank, 0..m.rows()).transpose();
        Subspace {
            ambient_dim: m.rows(),
            basis,
        }
    }

    pub(crate) fn from_independent_columns(m: Matrix) -> Self {
        Self::span(&m)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    /// Basis vectors as columns.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Whether every column of `vectors` lies in this subspace.
    pub fn contains_columns(&self, vectors: &Matrix) -> bool {
        assert_eq!(vectors.rows(), self.ambient_dim);
        let joined = Matrix::hstack(self.field(), self.ambient_dim, &[&self.basis, vectors]);
        joined.rank() == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.ambient_dim == self.ambient_dim && self.contains_columns(&other.basis)
    }

    /// `self + other`.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Subspace::span(&Matrix::hstack(
            self.field(),
            self.ambient_dim,
            &[&self.basis, &other.basis],
        ))
    }

    /// Whether `self ∩ other = 0`.
    pub fn meets_trivially(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim() + other.dim()
    }

    /// Image of this subspace under `m`.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        Subspace::span(&m.mul(&self.basis))
    }

    /// Dimension of `big / small` and coset representatives: the columns
    /// of `big`'s canonical basis that extend `small`'s basis, chosen
    /// greedily left to right.
    pub fn quotient(big: &Subspace, small: &Subspace) -> Result<Quotient> {
        if big.ambient_dim != small.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                big.ambient_dim, small.ambient_dim
            )));
        }
        if !big.contains(small) {
            return Err(Error::Containment);
        }
        let k = small.dim();
        let joined = Matrix::hstack(big.field(), big.ambient_dim, &[&small.basis, &big.basis]);
        let rr = joined.rref();
        let extra: Vec<usize> = rr.pivot_cols.iter().filter(|&&p| p >= k).map(|&p| p - k).collect();
        Ok(Quotient {
            dim: big.dim() - k,
            representatives: big.basis.select_columns(&extra),
        })
    }
}

/// Free-function form of [`Subspace::quotient`].
pub fn quotient_dim_and_projection(big: &Subspace, small: &Subspace) -> Result<Quotient> {
    Subspace::quotient(big, small)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_is_unique() {
        let q = FieldSpec::rationals();
        let a = Subspace::span(&Matrix::from_i64(q, &[&[1, 0], &[1, 1], &[0, 1]]));
        let b = Subspace::span(&Matrix::from_i64(q, &[&[2, 1], &[3, 2], &[1, 1]]));
        assert_eq!(a, b);
        let c = Subspace::span(&Matrix::from_i64(q, &[&[1, 2, 3], &[1, 2, 3], &[0, 0, 0]]));
        assert_eq!(c.dim(), 1);
        assert_eq!(c.basis(), &Matrix::from_i64(q, &[&[1], &[1], &[0]]));
    }

    #[test]
    fn quotient_examples() {
        let f3 = FieldSpec::prime(3).unwrap();
        let full = Subspace::full(f3, 2);
        let q = Subspace::quotient(&full, &full).unwrap();
        assert_eq!(q.dim, 0);
        assert_eq!(q.representatives.cols(), 0);

        let q = Subspace::quotient(&full, &Subspace::zero(f3, 2)).unwrap();
        assert_eq!(q.dim, 2);

        let f2 = FieldSpec::prime(2).unwrap();
        let big = Subspace::span(&Matrix::identity(f2, 2));
        let small = Subspace::span(&Matrix::from_i64(f2, &[&[1], &[1]]));
        let q = Subspace::quotient(&big, &small).unwrap();
        assert_eq!(q.dim, 1);
        assert_eq!(q.representatives, Matrix::from_i64(f2, &[&[1], &[0]]));
    }

    #[test]
    fn quotient_requires_containment() {
        let f2 = FieldSpec::prime(2).unwrap();
        let big = Subspace::span(&Matrix::from_i64(f2, &[&[1], &[0]]));
        let small = Subspace::span(&Matrix::from_i64(f2, &[&[0], &[1]]));
        assert_eq!(Subspace::quotient(&big, &small), Err(Error::Containment));
    }

    #[test]
    fn trivial_intersection() {
        let q = FieldSpec::rationals();
        let a = Subspace::span(&Matrix::from_i64(q, &[&[1], &[0]]));
        let b = Subspace::span(&Matrix::from_i64(q, &[&[1], &[1]]));
        assert!(a.meets_trivially(&b));
        assert!(!a.meets_trivially(&a));
    }
}
