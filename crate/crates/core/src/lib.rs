//! Exact computations with N-complexes of finite-dimensional vector spaces
//! over `F_p` or `Q`.
//!
//! An N-complex is a graded vector space with a degree `-1` differential
//! satisfying `d^N = 0`. The crate computes amplitude homology, decides
//! chain homotopy by solving one linear system, decomposes contractible
//! complexes into disks, and implements the classification and
//! factorizations of maps in the degreewise-split model structure whose
//! weak equivalences are the chain homotopy equivalences.

pub mod complex;
pub mod contractible;
pub mod error;
pub mod homology;
pub mod homotopy;
pub mod io;
pub mod linalg;
pub mod model;
pub mod random;

pub use complex::{ChainMap, DiskSum, NComplex};
pub use contractible::{DiskDecomposition, Factorization};
pub use error::{Error, Result};
pub use homology::HomologyResult;
pub use homotopy::Homotopy;
pub use linalg::{FieldSpec, Matrix, Scalar, Subspace};
pub use model::{MapClassification, SplitShortExactSequence};
