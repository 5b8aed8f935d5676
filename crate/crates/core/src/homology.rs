//! Cycles, boundaries and amplitude homology `_tH_n = _tZ_n / _{N-t}B_n`.

use std::collections::BTreeMap;

use crate::complex::{ChainMap, NComplex};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub degree: i64,
    pub amplitude: usize,
    pub dim: usize,
    /// `_tZ_n`
    pub cycles: Subspace,
    /// `_{N-t}B_n`
    pub boundaries: Subspace,
    /// Columns completing the boundary basis to a basis of the cycles.
    pub representatives: Matrix,
}

fn check_amplitude(t: usize, lo: usize, hi: usize) -> Result<()> {
    if (lo..=hi).contains(&t) {
        Ok(())
    } else {
        Err(Error::AmplitudeOutOfRange { t, lo, hi })
    }
}

/// `_tZ_n = ker(d^t : X_n -> X_{n-t})`, for `1 <= t <= N`.
pub fn cycles(x: &NComplex, n: i64, t: usize) -> Result<Subspace> {
    check_amplitude(t, 1, x.order())?;
    Ok(x.composite_differential(n, t).kernel_basis())
}

/// `_tB_n = im(d^t : X_{n+t} -> X_n)`, for `1 <= t <= N`.
pub fn boundaries(x: &NComplex, n: i64, t: usize) -> Result<Subspace> {
    check_amplitude(t, 1, x.order())?;
    Ok(x.composite_differential(n + t as i64, t).image_basis())
}

/// Amplitude-`t` homology in degree `n`, for `1 <= t <= N-1`.
pub fn homology(x: &NComplex, n: i64, t: usize) -> Result<HomologyResult> {
    check_amplitude(t, 1, x.order() - 1)?;
    let z = cycles(x, n, t)?;
    let b = boundaries(x, n, x.order() - t)?;
    let q = Subspace::quotient(&z, &b)?;
    Ok(HomologyResult {
        degree: n,
        amplitude: t,
        dim: q.dim,
        cycles: z,
        boundaries: b,
        representatives: q.representatives,
    })
}

/// Homology dimensions for every degree in the support and every
/// amplitude. Degrees outside the support have zero homology.
pub fn homology_table(x: &NComplex) -> Result<BTreeMap<(i64, usize), usize>> {
    let mut out = BTreeMap::new();
    for n in x.degrees() {
        for t in 1..x.order() {
            out.insert((n, t), homology(x, n, t)?.dim);
        }
    }
    Ok(out)
}

/// First `(degree, amplitude)` with nonzero homology, scanning only the
/// given amplitudes.
fn first_nonzero(x: &NComplex, amplitudes: impl Iterator<Item = usize> + Clone) -> Option<(i64, usize)> {
    x.degrees().find_map(|n| {
        amplitudes.clone().find_map(|t| {
            let h = homology(x, n, t).expect("amplitude in range and d^N = 0");
            (h.dim > 0).then_some((n, t))
        })
    })
}

/// Whether all amplitude homology vanishes. Checks amplitude 1 only: a
/// complex is exact as soon as one fixed amplitude vanishes everywhere.
pub fn is_exact(x: &NComplex) -> bool {
    first_nonzero(x, 1..2).is_none()
}

/// Exactness checked over every amplitude.
pub fn is_exact_full(x: &NComplex) -> bool {
    first_nonexact(x).is_none()
}

/// Exactness at one fixed amplitude.
pub fn is_exact_at_amplitude(x: &NComplex, t: usize) -> Result<bool> {
    check_amplitude(t, 1, x.order() - 1)?;
    Ok(first_nonzero(x, t..t + 1).is_none())
}

/// A witness of non-exactness over all amplitudes.
pub fn first_nonexact(x: &NComplex) -> Option<(i64, usize)> {
    first_nonzero(x, 1..x.order())
}

/// Matrix of `_tH_n(f)` with respect to the representative bases of
/// [`homology`] on source and target.
pub fn induced_homology_map(f: &ChainMap, n: i64, t: usize) -> Result<Matrix> {
    let hx = homology(f.source(), n, t)?;
    let hy = homology(f.target(), n, t)?;
    let images = f.component(n).mul(&hx.representatives);
    let field = f.field();
    let ambient = f.target().dim(n);
    let basis = Matrix::hstack(field, ambient, &[hy.boundaries.basis(), &hy.representatives]);
    let coords = basis
        .solve(&images)?
        .ok_or_else(|| Error::Invariant(format!("f_{n} does not map cycles to cycles")))?;
    let skip = hy.boundaries.dim();
    Ok(coords.submatrix(skip..coords.rows(), 0..coords.cols()))
}
