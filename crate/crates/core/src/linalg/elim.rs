//! Elimination kernels, specialized per field: `u64` residues for `F_p`,
//! `BigRational` for `Q`. Dense Gauss-Jordan backs `Matrix::rref`; the
//! sparse incremental variant backs the large structured systems.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Element operations used by the elimination kernel.
pub(crate) trait ElimOps {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `a - b * c`
    fn sub_mul(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E;
}

pub(crate) struct PrimeOps(pub u64);

impl ElimOps for PrimeOps {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat; p is small
        let p = self.0;
        let (mut base, mut exp, mut acc) = (*a % p, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn sub_mul(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        let p = self.0;
        (a + p - b * c % p) % p
    }
}

pub(crate) struct RationalOps;

impl ElimOps for RationalOps {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub_mul(&self, a: &BigRational, b: &BigRational, c: &BigRational) -> BigRational {
        a - b * c
    }
}

/// In-place Gauss-Jordan elimination; returns the pivot columns.
pub(crate) fn eliminate<O: ElimOps>(ops: &O, rows: usize, cols: usize, data: &mut [O::E]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !ops.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                data.swap(pr * cols + j, r * cols + j);
            }
        }
        // the systems we solve are sparse: only touch the pivot row's support
        let support: Vec<usize> = (c..cols).filter(|&j| !ops.is_zero(&data[r * cols + j])).collect();
        let inv = ops.inv(&data[r * cols + c]);
        for &j in &support {
            let v = ops.mul(&data[r * cols + j], &inv);
            data[r * cols + j] = v;
        }
        for i in 0..rows {
            if i == r || ops.is_zero(&data[i * cols + c]) {
                continue;
            }
            let factor = data[i * cols + c].clone();
            for &j in &support {
                let v = ops.sub_mul(&data[i * cols + j], &factor, &data[r * cols + j]);
                data[i * cols + j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A sparse row: `(column, nonzero value)` pairs, strictly increasing.
pub(crate) type Row<E> = Vec<(usize, E)>;

/// `a - factor * b`, dropping cancelled entries.
fn sub_scaled<O: ElimOps>(ops: &O, a: &Row<O::E>, factor: &O::E, b: &Row<O::E>) -> Row<O::E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let zero = ops.zero();
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else {
            let base = if ca == cb { &a[i].1 } else { &zero };
            let v = ops.sub_mul(base, factor, &b[j].1);
            if !ops.is_zero(&v) {
                out.push((cb, v));
            }
            if ca == cb {
                i += 1;
            }
            j += 1;
        }
    }
    out
}

/// Reduced echelon form of the row space, keyed by pivot column. The pivot
/// columns coincide with those of the dense reduced row-echelon form.
pub(crate) fn sparse_rref<O: ElimOps>(ops: &O, rows: Vec<Row<O::E>>) -> BTreeMap<usize, Row<O::E>> {
    let mut pivots: BTreeMap<usize, Row<O::E>> = BTreeMap::new();
    for mut row in rows {
        while let Some((lead, v)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => row = sub_scaled(ops, &row, &v, p),
                None => {
                    let inv = ops.inv(&v);
                    let row: Row<O::E> = row.iter().map(|(c, x)| (*c, ops.mul(x, &inv))).collect();
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    // back substitution, highest pivot first, so every row ends up free of
    // all other pivot columns
    let leads: Vec<usize> = pivots.keys().rev().copied().collect();
    for &c in &leads {
        let mut row = pivots.remove(&c).expect("pivot present");
        while let Some((col, v)) = row[1..].iter().find(|(col, _)| pivots.contains_key(col)).cloned() {
            row = sub_scaled(ops, &row, &v, &pivots[&col]);
        }
        pivots.insert(c, row);
    }
    pivots
}

/// Solves `A x = b` for `A` with `cols` columns, given as sparse rows whose
/// column `cols` carries `b`. Free variables are zero.
pub(crate) fn sparse_solve<O: ElimOps>(ops: &O, cols: usize, rows: Vec<Row<O::E>>) -> Option<Vec<O::E>> {
    let reduced = sparse_rref(ops, rows);
    if reduced.contains_key(&cols) {
        return None;
    }
    let mut x = vec![ops.zero(); cols];
    for (&c, row) in &reduced {
        if let Some((_, v)) = row.iter().find(|(col, _)| *col == cols) {
            x[c] = v.clone();
        }
    }
    Some(x)
}

/// Kernel basis read off the reduced form: one vector per free column `f`,
/// with a 1 in position `f`.
pub(crate) fn sparse_kernel<O: ElimOps>(ops: &O, cols: usize, rows: Vec<Row<O::E>>) -> Vec<Vec<O::E>> {
    let reduced = sparse_rref(ops, rows);
    (0..cols)
        .filter(|f| !reduced.contains_key(f))
        .map(|f| {
            let mut v = vec![ops.zero(); cols];
            for (&c, row) in &reduced {
                if let Some((_, x)) = row.iter().find(|(col, _)| *col == f) {
                    v[c] = ops.sub_mul(&ops.zero(), x, &ops.one());
                }
            }
            v[f] = ops.one();
            v
        })
        .collect()
}
