//! Exact dense linear algebra over `F_p` and `Q`.

mod elim;
mod field;
mod matrix;
mod subspace;
mod system;

pub use field::{FieldKind, FieldSpec, Scalar, MAX_CHARACTERISTIC};
pub use matrix::{Matrix, Rref};
pub use subspace::{quotient_dim_and_projection, Quotient, Subspace};
pub use system::{BlockId, LinearSystem, Term};

use crate::error::Result;

pub fn rref(m: &Matrix) -> Rref {
    m.rref()
}

pub fn kernel_basis(m: &Matrix) -> Subspace {
    m.kernel_basis()
}

pub fn image_basis(m: &Matrix) -> Subspace {
    m.image_basis()
}

pub fn solve_linear_system(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    a.solve(b)
}

pub fn left_inverse(m: &Matrix) -> Option<Matrix> {
    m.left_inverse()
}

pub fn right_inverse(m: &Matrix) -> Option<Matrix> {
    m.right_inverse()
}
