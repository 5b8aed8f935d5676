//! Seeded inputs shared by the benchmarks.

use ncomplex::random::{random_chain_map, random_complex, random_contractible, random_homotopy, random_matrix};
use ncomplex::{ChainMap, FieldSpec, Matrix, NComplex};
use rand::rngs::StdRng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// The fields benchmarked: a small prime, a larger prime and Q.
pub fn fields() -> [FieldSpec; 3] {
    [
        FieldSpec::prime(2).unwrap(),
        FieldSpec::prime(101).unwrap(),
        FieldSpec::rationals(),
    ]
}

pub fn square_matrix(field: FieldSpec, n: usize) -> Matrix {
    random_matrix(&mut rng(n as u64), field, n, n)
}

/// A pair of homotopic maps between random complexes on `width` degrees.
pub fn homotopic_pair(field: FieldSpec, order: usize, width: i64) -> (ChainMap, ChainMap) {
    let mut r = rng(order as u64 * 31 + width as u64);
    let x = random_complex(&mut r, order, field, 0, width - 1, 3);
    let y = random_complex(&mut r, order, field, 0, width - 1, 3);
    let f = random_chain_map(&mut r, &x, &y).unwrap();
    let s = random_homotopy(&mut r, &x, &y).unwrap();
    let g = f.add(&s.boundary().unwrap()).unwrap();
    (f, g)
}

/// A contractible complex presented in scrambled coordinates.
pub fn contractible(field: FieldSpec, order: usize, width: i64) -> NComplex {
    random_contractible(
        &mut rng(order as u64 * 17 + width as u64),
        order,
        field,
        0,
        width - 1,
        2,
    )
    .0
}
