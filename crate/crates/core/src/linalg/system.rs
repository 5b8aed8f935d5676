//! Assembly of linear systems whose unknowns are matrices.
//!
//! Each equation has the shape `Σ_k L_k · S_{b_k} · R_k = C`, where the
//! `S_b` are unknown matrix blocks. Unknown entries are flattened block by
//! block in insertion order, row-major within a block; equations likewise.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::elim::{sparse_kernel, sparse_solve, PrimeOps, RationalOps, Row};
use super::field::{FieldSpec, Scalar};
use super::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockId(usize);

#[derive(Clone, Debug)]
pub struct Term {
    pub block: BlockId,
    pub left: Matrix,
    pub right: Matrix,
}

#[derive(Clone, Debug)]
struct Equation {
    terms: Vec<Term>,
    rhs: Matrix,
}

#[derive(Clone, Debug)]
pub struct LinearSystem {
    field: FieldSpec,
    blocks: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    unknowns: usize,
    equations: Vec<Equation>,
    rows: usize,
}

impl LinearSystem {
    pub fn new(field: FieldSpec) -> Self {
        LinearSystem {
            field,
            blocks: Vec::new(),
            offsets: Vec::new(),
            unknowns: 0,
            equations: Vec::new(),
            rows: 0,
        }
    }

    pub fn add_unknown(&mut self, rows: usize, cols: usize) -> BlockId {
        self.blocks.push((rows, cols));
        self.offsets.push(self.unknowns);
        self.unknowns += rows * cols;
        BlockId(self.blocks.len() - 1)
    }

    pub fn block_shape(&self, id: BlockId) -> (usize, usize) {
        self.blocks[id.0]
    }

    pub fn unknown_count(&self) -> usize {
        self.unknowns
    }

    pub fn equation_count(&self) -> usize {
        self.rows
    }

    /// Adds `Σ terms = rhs`. Panics on shape mismatch.
    pub fn add_equation(&mut self, terms: Vec<Term>, rhs: Matrix) {
        for t in &terms {
            let (br, bc) = self.blocks[t.block.0];
            assert_eq!(t.left.shape(), (rhs.rows(), br), "left factor shape");
            assert_eq!(t.right.shape(), (bc, rhs.cols()), "right factor shape");
        }
        self.rows += rhs.rows() * rhs.cols();
        self.equations.push(Equation { terms, rhs });
    }

    /// The coefficient matrix and right-hand side column.
    pub fn assemble(&self) -> (Matrix, Matrix) {
        let f = self.field;
        let mut a = Matrix::zeros(f, self.rows, self.unknowns);
        let mut b = Matrix::zeros(f, self.rows, 1);
        let mut row0 = 0;
        for eq in &self.equations {
            let (er, ec) = eq.rhs.shape();
            for i in 0..er {
                for j in 0..ec {
                    b.set(row0 + i * ec + j, 0, eq.rhs.get(i, j).clone());
                }
            }
            for t in &eq.terms {
                let (_, bc) = self.blocks[t.block.0];
                let off = self.offsets[t.block.0];
                for i in 0..er {
                    for p in 0..t.left.cols() {
                        let l = t.left.get(i, p);
                        if l.is_zero() {
                            continue;
                        }
                        for q in 0..bc {
                            for j in 0..ec {
                                let r = t.right.get(q, j);
                                if r.is_zero() {
                                    continue;
                                }
                                let (row, col) = (row0 + i * ec + j, off + p * bc + q);
                                let v = f.add(a.get(row, col), &f.mul(l, r));
                                a.set(row, col, v);
                            }
                        }
                    }
                }
            }
            row0 += er * ec;
        }
        (a, b)
    }

    /// Splits a flat solution column into its unknown blocks.
    pub fn unflatten(&self, x: &Matrix) -> Vec<Matrix> {
        assert_eq!(x.shape(), (self.unknowns, 1));
        self.blocks
            .iter()
            .zip(&self.offsets)
            .map(|(&(r, c), &off)| Matrix::from_fn(self.field, r, c, |i, j| x.get(off + i * c + j, 0).clone()))
            .collect()
    }

    /// Rows of `A` (and of `b`, in column `unknown_count()`) as sparse maps.
    fn sparse_rows(&self, with_rhs: bool) -> Vec<BTreeMap<usize, Scalar>> {
        let f = self.field;
        let mut rows = Vec::with_capacity(self.rows);
        for eq in &self.equations {
            let (er, ec) = eq.rhs.shape();
            let first = rows.len();
            rows.extend((0..er * ec).map(|_| BTreeMap::new()));
            for t in &eq.terms {
                let (_, bc) = self.blocks[t.block.0];
                let off = self.offsets[t.block.0];
                for i in 0..er {
                    for p in 0..t.left.cols() {
                        let l = t.left.get(i, p);
                        if l.is_zero() {
                            continue;
                        }
                        for q in 0..bc {
                            for j in 0..ec {
                                let r = t.right.get(q, j);
                                if r.is_zero() {
                                    continue;
                                }
                                let entry = rows[first + i * ec + j]
                                    .entry(off + p * bc + q)
                                    .or_insert_with(|| f.zero());
                                *entry = f.add(entry, &f.mul(l, r));
                            }
                        }
                    }
                }
            }
            if with_rhs {
                for i in 0..er {
                    for j in 0..ec {
                        let v = eq.rhs.get(i, j);
                        if !v.is_zero() {
                            rows[first + i * ec + j].insert(self.unknowns, v.clone());
                        }
                    }
                }
            }
        }
        rows
    }

    fn column(&self, x: Vec<Scalar>) -> Matrix {
        Matrix::from_vec(self.field, self.unknowns, 1, x).expect("one entry per unknown")
    }

    /// Canonical solution (free variables zero), if one exists. Equal to
    /// solving the assembled dense system, but eliminates sparsely.
    pub fn solve(&self) -> Option<Vec<Matrix>> {
        let rows = self.sparse_rows(true);
        let n = self.unknowns;
        let x: Vec<Scalar> = match self.field.characteristic() {
            Some(p) => sparse_solve(&PrimeOps(p), n, to_rows(rows, residue))?
                .into_iter()
                .map(Scalar::Mod)
                .collect(),
            None => sparse_solve(&RationalOps, n, to_rows(rows, rational))?
                .into_iter()
                .map(Scalar::Rat)
                .collect(),
        };
        Some(self.unflatten(&self.column(x)))
    }

    /// Basis of the solution space of the homogeneous system: one solution
    /// per free unknown, read off the reduced row-echelon form.
    pub fn homogeneous_solutions(&self) -> Vec<Vec<Matrix>> {
        let rows = self.sparse_rows(false);
        let n = self.unknowns;
        let basis: Vec<Vec<Scalar>> = match self.field.characteristic() {
            Some(p) => sparse_kernel(&PrimeOps(p), n, to_rows(rows, residue))
                .into_iter()
                .map(|v| v.into_iter().map(Scalar::Mod).collect())
                .collect(),
            None => sparse_kernel(&RationalOps, n, to_rows(rows, rational))
                .into_iter()
                .map(|v| v.into_iter().map(Scalar::Rat).collect())
                .collect(),
        };
        basis.into_iter().map(|v| self.unflatten(&self.column(v))).collect()
    }
}

fn residue(s: Scalar) -> u64 {
    match s {
        Scalar::Mod(v) => v,
        Scalar::Rat(_) => unreachable!("field checked by caller"),
    }
}

fn rational(s: Scalar) -> BigRational {
    match s {
        Scalar::Rat(r) => r,
        Scalar::Mod(_) => unreachable!("field checked by caller"),
    }
}

fn to_rows<E>(rows: Vec<BTreeMap<usize, Scalar>>, conv: impl Fn(Scalar) -> E) -> Vec<Row<E>> {
    rows.into_iter()
        .map(|r| {
            r.into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, conv(v)))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sylvester_style_equation() {
        // find X with A X + X B = C
        let q = FieldSpec::rationals();
        let a = Matrix::from_i64(q, &[&[1, 2], &[0, 3]]);
        let b = Matrix::from_i64(q, &[&[1, 0], &[1, 1]]);
        let x0 = Matrix::from_i64(q, &[&[1, -1], &[2, 5]]);
        let c = a.mul(&x0).add(&x0.mul(&b));
        let mut sys = LinearSystem::new(q);
        let x = sys.add_unknown(2, 2);
        sys.add_equation(
            vec![
                Term {
                    block: x,
                    left: a.clone(),
                    right: Matrix::identity(q, 2),
                },
                Term {
                    block: x,
                    left: Matrix::identity(q, 2),
                    right: b.clone(),
                },
            ],
            c.clone(),
        );
        let sol = sys.solve().unwrap();
        assert_eq!(a.mul(&sol[0]).add(&sol[0].mul(&b)), c);
    }

    #[test]
    fn inconsistent_system() {
        let f = FieldSpec::prime(3).unwrap();
        let mut sys = LinearSystem::new(f);
        let x = sys.add_unknown(1, 1);
        sys.add_equation(
            vec![Term {
                block: x,
                left: Matrix::zeros(f, 1, 1),
                right: Matrix::identity(f, 1),
            }],
            Matrix::identity(f, 1),
        );
        assert!(sys.solve().is_none());
        assert_eq!(sys.homogeneous_solutions().len(), 1);
    }

    fn random_system(seed: u64, field: FieldSpec) -> LinearSystem {
        // small deterministic pseudo-random entries, many zeros
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let v = (state >> 33) % 7;
            if v < 4 {
                0
            } else {
                v as i64 - 5
            }
        };
        let mut m = |r: usize, c: usize| Matrix::from_fn(field, r, c, |_, _| field.from_i64(next()));
        let mut sys = LinearSystem::new(field);
        let a = sys.add_unknown(2, 3);
        let b = sys.add_unknown(3, 1);
        let (sa, sb) = (m(2, 3), m(3, 1));
        for _ in 0..3 {
            let terms = vec![
                Term {
                    block: a,
                    left: m(2, 2),
                    right: m(3, 2),
                },
                Term {
                    block: b,
                    left: m(2, 3),
                    right: m(1, 2),
                },
            ];
            // odd seeds: consistent by construction
            let rhs = if seed % 2 == 1 {
                terms[0]
                    .left
                    .mul(&sa)
                    .mul(&terms[0].right)
                    .add(&terms[1].left.mul(&sb).mul(&terms[1].right))
            } else {
                m(2, 2)
            };
            sys.add_equation(terms, rhs);
        }
        sys
    }

    #[test]
    fn sparse_elimination_matches_dense() {
        for field in [
            FieldSpec::prime(2).unwrap(),
            FieldSpec::prime(5).unwrap(),
            FieldSpec::rationals(),
        ] {
            for seed in 0..60 {
                let sys = random_system(seed, field);
                let (a, b) = sys.assemble();
                let dense = a.solve(&b).unwrap().map(|x| sys.unflatten(&x));
                assert_eq!(sys.solve(), dense, "seed {seed} over {field}");
                if seed % 2 == 1 {
                    assert!(dense.is_some());
                }

                let kernel = a.kernel_basis();
                let sols = sys.homogeneous_solutions();
                assert_eq!(sols.len(), kernel.dim());
                for sol in &sols {
                    let flat: Vec<Scalar> = sol.iter().flat_map(|m| m.entries().to_vec()).collect();
                    let v = Matrix::from_vec(field, sys.unknown_count(), 1, flat).unwrap();
                    assert!(a.mul(&v).is_zero());
                    assert!(kernel.contains_columns(&v));
                }
            }
        }
    }
}
