#![allow(dead_code)]

use std::collections::BTreeMap;

use ncomplex::complex::{direct_sum, ChainMap, DiskSum, NComplex};
use ncomplex::homology::homology;
use ncomplex::random::{random_basis_change, random_complex, random_contractible, random_disk_sum};
use ncomplex::FieldSpec;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const MAX_WIDTH: i64 = 8;
pub const MAX_DIM: usize = 4;

pub fn fields() -> [FieldSpec; 3] {
    [
        FieldSpec::prime(2).unwrap(),
        FieldSpec::prime(5).unwrap(),
        FieldSpec::rationals(),
    ]
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Cycles through every `(N, field)` combination.
pub fn params(i: usize) -> (usize, FieldSpec) {
    (2 + i % 4, fields()[(i / 4) % 3])
}

pub fn within_scale(x: &NComplex) -> bool {
    let width_ok = x.support().is_none_or(|(lo, hi)| hi - lo < MAX_WIDTH);
    width_ok && x.dims().values().all(|&d| d <= MAX_DIM)
}

/// A random complex within the desk scale, supported in `0..width`.
pub fn complex(rng: &mut StdRng, order: usize, field: FieldSpec, width: i64, max_dim: usize) -> NComplex {
    random_complex(rng, order, field, 0, width - 1, max_dim)
}

/// A contractible complex within the desk scale with its ground-truth disks.
pub fn contractible(rng: &mut StdRng, order: usize, field: FieldSpec, max_dim: usize) -> (NComplex, DiskSum) {
    let up = order as i64 - 1;
    loop {
        let tops = rng.random_range(1..=(MAX_WIDTH - up).min(4));
        let (c, disks) = random_contractible(rng, order, field, 0, tops - 1, max_dim);
        if within_scale(&c) {
            return (c, disks);
        }
    }
}

/// Exact or not with roughly equal odds.
pub fn mixed(rng: &mut StdRng, order: usize, field: FieldSpec) -> NComplex {
    if rng.random_bool(0.4) {
        contractible(rng, order, field, 2).0
    } else {
        let width = rng.random_range(2..=6);
        complex(rng, order, field, width, 3)
    }
}

/// Homology dimensions at every degree near the support and every
/// amplitude; zero entries included so tables of different complexes
/// compare directly.
pub fn homology_dims(x: &NComplex, lo: i64, hi: i64) -> BTreeMap<(i64, usize), usize> {
    let mut out = BTreeMap::new();
    for n in lo..=hi {
        for t in 1..x.order() {
            out.insert((n, t), homology(x, n, t).unwrap().dim);
        }
    }
    out
}

/// `D ⊕ T` presented as a contractible `C` with a random basis, and a
/// retract `S` of it (a random presentation of `D`), with `r ∘ i = 1_S`.
pub fn contractible_retract(
    rng: &mut StdRng,
    order: usize,
    field: FieldSpec,
) -> (NComplex, NComplex, ChainMap, ChainMap) {
    loop {
        let d = random_disk_sum(rng, order, field, 0, 2, 1);
        let t = random_disk_sum(rng, order, field, 0, 2, 1);
        if d.complex().is_zero() {
            continue;
        }
        let sum = direct_sum(&[d.complex().clone(), t.complex().clone()]).unwrap();
        let (c, to_c, from_c) = sum.sum.transport(&random_basis_change(rng, &sum.sum)).unwrap();
        let (s, to_s, from_s) = d.complex().transport(&random_basis_change(rng, d.complex())).unwrap();
        let i = ChainMap::compose(&to_c, &ChainMap::compose(&sum.injections[0], &from_s).unwrap()).unwrap();
        let r = ChainMap::compose(&to_s, &ChainMap::compose(&sum.projections[0], &from_c).unwrap()).unwrap();
        if within_scale(&c) {
            return (c, s, i, r);
        }
    }
}
