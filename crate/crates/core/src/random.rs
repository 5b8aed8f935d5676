//! Random generators for tests and benchmarks.
//!
//! Every generator is driven by a caller-supplied RNG, so seeded runs are
//! reproducible. Rational entries are kept small (numerators in `[-3, 3]`,
//! denominators up to 3) to keep elimination cheap.

use std::collections::BTreeMap;

use rand::Rng;

use crate::complex::{ChainMap, DiskSum, NComplex};
use crate::error::Result;
use crate::homotopy::Homotopy;
use crate::linalg::{FieldKind, FieldSpec, Matrix, Scalar};

pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec) -> Scalar {
    match field.kind() {
        FieldKind::PrimeField => {
            let p = field.characteristic().expect("prime field");
            Scalar::Mod(rng.random_range(0..p))
        }
        FieldKind::Rationals => {
            let num = rng.random_range(-3..=3);
            let den = if rng.random_bool(0.25) {
                rng.random_range(2..=3)
            } else {
                1
            };
            field.ratio(num, den)
        }
    }
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| random_scalar(rng, field))
}

pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, field, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

/// Degreewise invertible matrices for every degree of `x`.
pub fn random_basis_change<R: Rng + ?Sized>(rng: &mut R, x: &NComplex) -> BTreeMap<i64, Matrix> {
    x.dims()
        .iter()
        .map(|(&n, &d)| (n, random_invertible(rng, x.field(), d)))
        .collect()
}

/// Disks `D_m` for `m` in `lo..=hi`, each of dimension `0..=max_dim`.
pub fn random_disk_sum<R: Rng + ?Sized>(
    rng: &mut R,
    order: usize,
    field: FieldSpec,
    lo: i64,
    hi: i64,
    max_dim: usize,
) -> DiskSum {
    let summands = (lo..=hi)
        .map(|m| (m, rng.random_range(0..=max_dim)))
        .filter(|&(_, d)| d > 0)
        .collect();
    DiskSum::new(order, field, summands).expect("valid disk parameters")
}

/// A biproduct of disks conjugated by a random degreewise change of basis.
/// Returns the complex together with the disks it was built from.
pub fn random_contractible<R: Rng + ?Sized>(
    rng: &mut R,
    order: usize,
    field: FieldSpec,
    lo: i64,
    hi: i64,
    max_dim: usize,
) -> (NComplex, DiskSum) {
    let disks = random_disk_sum(rng, order, field, lo, hi, max_dim);
    let changes = random_basis_change(rng, disks.complex());
    let (x, _, _) = disks.complex().transport(&changes).expect("invertible changes");
    (x, disks)
}

/// A random N-complex supported in `lo..=hi` with dimensions up to
/// `max_dim`, built upwards: `d_n` is a random map into the kernel of
/// `d^{N-1}` on `X_{n-1}`. About a third of the differentials are pushed
/// towards lower rank by zeroing part of the random factor.
pub fn random_complex<R: Rng + ?Sized>(
    rng: &mut R,
    order: usize,
    field: FieldSpec,
    lo: i64,
    hi: i64,
    max_dim: usize,
) -> NComplex {
    let mut dims = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for n in lo..=hi {
        let d = rng.random_range(0..=max_dim);
        if d == 0 {
            continue;
        }
        dims.insert(n, d);
        let below = dims.get(&(n - 1)).copied().unwrap_or(0);
        if below > 0 {
            let partial =
                NComplex::from_parts(order, field, dims.clone(), diffs.clone()).expect("shapes are consistent");
            let room = partial.composite_differential(n - 1, order - 1).kernel_basis();
            let k = room.dim();
            let mut factor = random_matrix(rng, field, k, d);
            if k > 0 && rng.random_bool(0.3) {
                let keep = rng.random_range(0..k);
                for i in keep..k {
                    for j in 0..d {
                        factor.set(i, j, field.zero());
                    }
                }
            }
            diffs.insert(n, room.basis().mul(&factor));
        }
    }
    NComplex::new(order, field, dims, diffs).expect("construction guarantees d^N = 0")
}

/// A contractible complex one time in three, otherwise [`random_complex`],
/// so that exact and non-exact samples both occur often.
pub fn random_mixed_complex<R: Rng + ?Sized>(
    rng: &mut R,
    order: usize,
    field: FieldSpec,
    width: i64,
    max_dim: usize,
) -> NComplex {
    let up = order as i64 - 1;
    match rng.random_range(0..3) {
        0 => random_contractible(rng, order, field, up, (width - 1).max(up), max_dim).0,
        _ => random_complex(rng, order, field, 0, width - 1, max_dim),
    }
}

/// A uniformly random combination of a basis of `Hom(X, Y)`.
pub fn random_chain_map<R: Rng + ?Sized>(rng: &mut R, x: &NComplex, y: &NComplex) -> Result<ChainMap> {
    let mut f = ChainMap::zero(x, y)?;
    for b in ChainMap::hom_basis(x, y)? {
        f = f.add(&b.scale(&random_scalar(rng, x.field())))?;
    }
    Ok(f)
}

pub fn random_homotopy<R: Rng + ?Sized>(rng: &mut R, x: &NComplex, y: &NComplex) -> Result<Homotopy> {
    let up = x.order() as i64 - 1;
    let comps = x
        .dims()
        .iter()
        .filter(|&(&n, _)| y.dim(n + up) > 0)
        .map(|(&n, &d)| (n, random_matrix(rng, x.field(), y.dim(n + up), d)))
        .collect();
    Homotopy::new(x.clone(), y.clone(), comps)
}
