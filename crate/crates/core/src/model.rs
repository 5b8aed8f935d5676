//! The degreewise-split model structure on N-complexes.
//!
//! Cofibrations are the degreewise split monomorphisms, fibrations the
//! degreewise split epimorphisms, trivial objects the contractible
//! complexes and weak equivalences the chain homotopy equivalences. Over a
//! field every injective (surjective) linear map splits, so the
//! degreewise conditions reduce to full column (row) rank.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::{direct_sum, ChainMap, DiskSum, NComplex};
use crate::contractible::{is_contractible, map_into_contractible, map_out_of_contractible};
use crate::error::{Error, Result};
use crate::linalg::{LinearSystem, Matrix, Term};

pub fn is_dw_projective(c: &NComplex) -> bool {
    is_contractible(c)
}

pub fn is_dw_injective(c: &NComplex) -> bool {
    is_contractible(c)
}

/// `0 -> left -> middle -> right -> 0`, split in every degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitShortExactSequence {
    pub left: NComplex,
    pub middle: NComplex,
    pub right: NComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
    /// Per degree of `middle`: `(retraction, section)` with
    /// `retraction ∘ inclusion = 1` and `projection ∘ section = 1`.
    pub splittings: BTreeMap<i64, (Matrix, Matrix)>,
}

impl SplitShortExactSequence {
    pub fn new(inclusion: ChainMap, projection: ChainMap, splittings: BTreeMap<i64, (Matrix, Matrix)>) -> Result<Self> {
        let seq = SplitShortExactSequence {
            left: inclusion.source().clone(),
            middle: inclusion.target().clone(),
            right: projection.target().clone(),
            inclusion,
            projection,
            splittings,
        };
        seq.verify()?;
        Ok(seq)
    }

    /// Checks every defining property, reporting the first failure.
    pub fn verify(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(msg));
        if self.projection.source() != &self.middle {
            return fail("projection does not start at the middle term".into());
        }
        if !ChainMap::compose(&self.projection, &self.inclusion)?.is_zero() {
            return fail("projection ∘ inclusion is nonzero".into());
        }
        let field = self.middle.field();
        let degrees = self
            .left
            .degrees()
            .chain(self.middle.degrees())
            .chain(self.right.degrees());
        for n in degrees {
            let (a, b, c) = (self.left.dim(n), self.middle.dim(n), self.right.dim(n));
            if a + c != b {
                return fail(format!("dimensions do not add up in degree {n}"));
            }
            let (i, p) = (self.inclusion.component(n), self.projection.component(n));
            if i.rank() != a || p.rank() != c {
                return fail(format!("not injective/surjective in degree {n}"));
            }
            let Some((r, s)) = self.splittings.get(&n) else {
                if b == 0 {
                    continue;
                }
                return fail(format!("missing splitting in degree {n}"));
            };
            if r.shape() != (a, b) || s.shape() != (b, c) {
                return fail(format!("splitting has wrong shape in degree {n}"));
            }
            if r.mul(&i) != Matrix::identity(field, a) || p.mul(s) != Matrix::identity(field, c) {
                return fail(format!("splitting fails in degree {n}"));
            }
        }
        Ok(())
    }
}

/// A degreewise cokernel or kernel complex with its structure map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub complex: NComplex,
    pub map: ChainMap,
}

/// Cokernel of a degreewise split monomorphism `f : A -> B`, realized on
/// the complement `ker r_n` of the image, where `r_n` is the given
/// retraction (or the canonical left inverse of `f_n`). Returns `Q` and the
/// projection `B -> Q`.
pub fn cokernel_of_split_mono(f: &ChainMap, retractions: Option<&BTreeMap<i64, Matrix>>) -> Result<Quotient> {
    let (a, b) = (f.source(), f.target());
    let field = b.field();
    let mut proj = BTreeMap::new();
    let mut incl = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for n in b.degrees() {
        let fi = f.component(n);
        let r = match retractions.and_then(|rs| rs.get(&n)) {
            Some(r) => r.clone(),
            None => fi
                .left_inverse()
                .ok_or_else(|| Error::shape(format!("f_{n} is not injective")))?,
        };
        if r.shape() != (a.dim(n), b.dim(n)) || !r.mul(&fi).is_identity() {
            return Err(Error::shape(format!("invalid retraction in degree {n}")));
        }
        let complement = r.kernel_basis();
        let coords = complement
            .basis()
            .left_inverse()
            .expect("basis columns are independent");
        let idempotent = Matrix::identity(field, b.dim(n)).sub(&fi.mul(&r));
        proj.insert(n, coords.mul(&idempotent));
        incl.insert(n, complement.basis().clone());
        dims.insert(n, complement.dim());
    }
    let diffs = b
        .differentials()
        .iter()
        .map(|(&n, d)| (n, proj[&(n - 1)].mul(d).mul(&incl[&n])))
        .collect();
    let q = NComplex::new(b.order(), field, dims, diffs)?;
    let map = ChainMap::new(b.clone(), q.clone(), proj)?;
    Ok(Quotient { complex: q, map })
}

/// Degreewise kernel of `f : X -> Y` with the restricted differential.
/// Returns `K` and the inclusion `K -> X`.
pub fn kernel_complex(f: &ChainMap) -> Result<Quotient> {
    let x = f.source();
    let field = x.field();
    let mut incl = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for n in x.degrees() {
        let k = f.component(n).kernel_basis();
        dims.insert(n, k.dim());
        incl.insert(n, k.basis().clone());
    }
    let diffs = x
        .differentials()
        .iter()
        .map(|(&n, d)| {
            let coords = incl[&(n - 1)].left_inverse().expect("independent columns");
            (n, coords.mul(d).mul(&incl[&n]))
        })
        .collect();
    let k = NComplex::new(x.order(), field, dims, diffs)?;
    let map = ChainMap::new(k.clone(), x.clone(), incl)?;
    Ok(Quotient { complex: k, map })
}

/// Solves for a chain map `l : X -> Y` subject to `left_n · l_n · right_n =
/// rhs_n` in every listed degree.
fn solve_for_chain_map(
    x: &NComplex,
    y: &NComplex,
    constraints: &[(i64, Matrix, Matrix, Matrix)],
) -> Result<Option<ChainMap>> {
    let field = x.field();
    let mut sys = LinearSystem::new(field);
    let mut blocks = BTreeMap::new();
    for (&n, &d) in x.dims() {
        if y.dim(n) > 0 {
            blocks.insert(n, sys.add_unknown(y.dim(n), d));
        }
    }
    for &n in x.dims().keys() {
        let below = y.dim(n - 1);
        if below == 0 {
            continue;
        }
        let mut terms = Vec::new();
        if let Some(&b) = blocks.get(&n) {
            terms.push(Term {
                block: b,
                left: y.differential(n),
                right: Matrix::identity(field, x.dim(n)),
            });
        }
        if let Some(&b) = blocks.get(&(n - 1)) {
            terms.push(Term {
                block: b,
                left: Matrix::identity(field, below).neg(),
                right: x.differential(n),
            });
        }
        if !terms.is_empty() {
            sys.add_equation(terms, Matrix::zeros(field, below, x.dim(n)));
        }
    }
    for (n, left, right, rhs) in constraints {
        match blocks.get(n) {
            Some(&b) => sys.add_equation(
                vec![Term {
                    block: b,
                    left: left.clone(),
                    right: right.clone(),
                }],
                rhs.clone(),
            ),
            None if rhs.is_zero() => {}
            None => return Ok(None),
        }
    }
    let Some(sol) = sys.solve() else {
        return Ok(None);
    };
    let comps = blocks.keys().copied().zip(sol).collect();
    ChainMap::new(x.clone(), y.clone(), comps).map(Some)
}

/// A chain map `l : C -> Y` with `e ∘ l = h`, for `e : Y -> Z`, `h : C -> Z`.
pub fn lift_against(h: &ChainMap, e: &ChainMap) -> Result<Option<ChainMap>> {
    if h.target() != e.target() {
        return Err(Error::shape("h and e have different targets"));
    }
    let (c, y) = (h.source(), e.source());
    let constraints: Vec<_> = c
        .degrees()
        .filter(|&n| h.target().dim(n) > 0)
        .map(|n| (n, e.component(n), Matrix::identity(c.field(), c.dim(n)), h.component(n)))
        .collect();
    solve_for_chain_map(c, y, &constraints)
}

/// A chain map `x : B -> C` with `x ∘ m = h`, for `m : A -> B`, `h : A -> C`.
pub fn extend_along(h: &ChainMap, m: &ChainMap) -> Result<Option<ChainMap>> {
    if h.source() != m.source() {
        return Err(Error::shape("h and m have different sources"));
    }
    let (b, c) = (m.target(), h.target());
    let constraints: Vec<_> = m
        .source()
        .degrees()
        .filter(|&n| c.dim(n) > 0)
        .map(|n| (n, Matrix::identity(c.field(), c.dim(n)), m.component(n), h.component(n)))
        .collect();
    solve_for_chain_map(b, c, &constraints)
}

/// `0 -> K -> ⊕_n D_n(X_n) -> X -> 0` with `K` the loop complex.
///
/// `K_n = X_{n+N-1} ⊕ ... ⊕ X_{n+1}` with
/// `d(x_{N-1}, ..., x_1) = (x_{N-2}, ..., x_1, -d^{N-1}x_{N-1} - ... - d x_1)`
/// and inclusion `(1, ..., 1, -d^{N-1} - ... - d)`.
pub fn enough_projectives(x: &NComplex) -> Result<SplitShortExactSequence> {
    let order = x.order();
    let field = x.field();
    let up = order as i64 - 1;
    let disks = DiskSum::new(order, field, x.dims().clone())?;
    let p_complex = disks.complex();
    let ids = x
        .dims()
        .iter()
        .map(|(&n, &d)| (n, Matrix::identity(field, d)))
        .collect();
    let projection = map_out_of_contractible(x, &ids, &disks)?;

    // slot j of K_n holds X_{n+j}, slots ordered j = N-1, ..., 1
    let slot_offset = |n: i64, j: i64| -> usize { (j + 1..=up).map(|k| x.dim(n + k)).sum() };
    let k_dim = |n: i64| -> usize { (1..=up).map(|j| x.dim(n + j)).sum() };
    let k_degrees: Vec<i64> = (x.support().map_or(0, |(lo, _)| lo - up)..=x.support().map_or(-1, |(_, hi)| hi - 1))
        .filter(|&n| k_dim(n) > 0)
        .collect();
    let dims: BTreeMap<i64, usize> = k_degrees.iter().map(|&n| (n, k_dim(n))).collect();

    let mut diffs = BTreeMap::new();
    for &n in &k_degrees {
        let below = k_dim(n - 1);
        if below == 0 {
            continue;
        }
        let mut d = Matrix::zeros(field, below, k_dim(n));
        let last = slot_offset(n - 1, 1);
        for j in 1..=up {
            let dj = x.dim(n + j);
            if dj == 0 {
                continue;
            }
            let col = slot_offset(n, j);
            if j < up {
                d.set_block(slot_offset(n - 1, j + 1), col, &Matrix::identity(field, dj));
            }
            d.set_block(last, col, &x.composite_differential(n + j, j as usize).neg());
        }
        diffs.insert(n, d);
    }
    let loop_complex = NComplex::new(order, field, dims, diffs)?;

    let mut incl = BTreeMap::new();
    let mut splittings = BTreeMap::new();
    for n in p_complex.degrees() {
        let (kn, pn, xn) = (k_dim(n), p_complex.dim(n), x.dim(n));
        let mut i = Matrix::zeros(field, pn, kn);
        i.set_block(0, 0, &Matrix::identity(field, kn));
        if xn > 0 {
            for j in 1..=up {
                if x.dim(n + j) > 0 {
                    let d = x.composite_differential(n + j, j as usize).neg();
                    i.set_block(kn, slot_offset(n, j), &d);
                }
            }
        }
        let mut retraction = Matrix::zeros(field, kn, pn);
        retraction.set_block(0, 0, &Matrix::identity(field, kn));
        let mut section = Matrix::zeros(field, pn, xn);
        section.set_block(kn, 0, &Matrix::identity(field, xn));
        incl.insert(n, i);
        splittings.insert(n, (retraction, section));
    }
    let inclusion = ChainMap::new(loop_complex, p_complex.clone(), incl)?;
    SplitShortExactSequence::new(inclusion, projection, splittings)
}

pub fn loop_complex(x: &NComplex) -> Result<NComplex> {
    Ok(enough_projectives(x)?.left)
}

/// The split monomorphism `β : X -> ⊕_n D_{n+N-1}(X_n)` with
/// `β_n = (1, d, ..., d^{N-1})`, and its retractions onto the first block.
pub fn suspension_embedding(x: &NComplex) -> Result<(DiskSum, ChainMap, BTreeMap<i64, Matrix>)> {
    let order = x.order();
    let field = x.field();
    let up = order as i64 - 1;
    let summands = x.dims().iter().map(|(&n, &d)| (n + up, d)).collect();
    let disks = DiskSum::new(order, field, summands)?;
    let ids = x
        .dims()
        .iter()
        .map(|(&n, &d)| (n, Matrix::identity(field, d)))
        .collect();
    let beta = map_into_contractible(x, &ids, &disks)?;
    let retractions = disks
        .complex()
        .degrees()
        .map(|n| {
            let mut r = Matrix::zeros(field, x.dim(n), disks.complex().dim(n));
            if let Some(rows) = disks.block(n, n + up) {
                r.set_block(0, rows.start, &Matrix::identity(field, rows.len()));
            }
            (n, r)
        })
        .collect();
    Ok((disks, beta, retractions))
}

/// Cokernel of the canonical embedding of `X` into a contractible complex.
pub fn suspension(x: &NComplex) -> Result<NComplex> {
    let (_, beta, retractions) = suspension_embedding(x)?;
    Ok(cokernel_of_split_mono(&beta, Some(&retractions))?.complex)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MapClassification {
    pub is_cofibration: bool,
    pub is_fibration: bool,
    pub is_trivial_cofibration: bool,
    pub is_trivial_fibration: bool,
    pub is_weak_equivalence: bool,
}

pub fn is_cofibration(f: &ChainMap) -> bool {
    f.source().degrees().all(|n| {
        let c = f.component(n);
        c.rank() == c.cols()
    })
}

pub fn is_fibration(f: &ChainMap) -> bool {
    f.target().degrees().all(|n| {
        let c = f.component(n);
        c.rank() == c.rows()
    })
}

pub fn is_trivial_cofibration(f: &ChainMap) -> Result<bool> {
    if !is_cofibration(f) {
        return Ok(false);
    }
    Ok(is_contractible(&cokernel_of_split_mono(f, None)?.complex))
}

pub fn is_trivial_fibration(f: &ChainMap) -> Result<bool> {
    if !is_fibration(f) {
        return Ok(false);
    }
    Ok(is_contractible(&kernel_complex(f)?.complex))
}

pub fn classify_map(f: &ChainMap) -> Result<MapClassification> {
    Ok(MapClassification {
        is_cofibration: is_cofibration(f),
        is_fibration: is_fibration(f),
        is_trivial_cofibration: is_trivial_cofibration(f)?,
        is_trivial_fibration: is_trivial_fibration(f)?,
        is_weak_equivalence: is_homotopy_equivalence(f)?,
    })
}

/// `f = p ∘ i` through `middle`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelFactorization {
    pub middle: NComplex,
    pub i: ChainMap,
    pub p: ChainMap,
}

/// `i = (j, f) : X -> D ⊕ Y`, `p` the projection onto `Y`.
fn cof_trivfib_parts(f: &ChainMap) -> Result<ModelFactorization> {
    let (_, j, _) = suspension_embedding(f.source())?;
    let sum = direct_sum(&[j.target().clone(), f.target().clone()])?;
    let i = ChainMap::compose(&sum.injections[0], &j)?.add(&ChainMap::compose(&sum.injections[1], f)?)?;
    Ok(ModelFactorization {
        middle: sum.sum,
        i,
        p: sum.projections[1].clone(),
    })
}

fn check_composite(f: &ChainMap, fac: &ModelFactorization) -> Result<()> {
    if ChainMap::compose(&fac.p, &fac.i)? != *f {
        return Err(Error::Invariant("p ∘ i differs from f".into()));
    }
    Ok(())
}

fn promise(holds: bool, what: &str) -> Result<()> {
    if holds {
        Ok(())
    } else {
        Err(Error::Invariant(format!("factorization map is not a {what}")))
    }
}

/// Cofibration followed by a trivial fibration.
pub fn factor_cof_trivfib(f: &ChainMap) -> Result<ModelFactorization> {
    let fac = cof_trivfib_parts(f)?;
    check_composite(f, &fac)?;
    promise(is_cofibration(&fac.i), "cofibration")?;
    promise(is_trivial_fibration(&fac.p)?, "trivial fibration")?;
    Ok(fac)
}

/// Trivial cofibration `(1, 0) : X -> X ⊕ P` followed by the fibration
/// `(f, q) : X ⊕ P -> Y`, where `q : P -> Y` is the contractible cover.
pub fn factor_trivcof_fib(f: &ChainMap) -> Result<ModelFactorization> {
    let cover = enough_projectives(f.target())?;
    let sum = direct_sum(&[f.source().clone(), cover.middle.clone()])?;
    let i = sum.injections[0].clone();
    let p =
        ChainMap::compose(f, &sum.projections[0])?.add(&ChainMap::compose(&cover.projection, &sum.projections[1])?)?;
    let fac = ModelFactorization { middle: sum.sum, i, p };
    check_composite(f, &fac)?;
    promise(is_trivial_cofibration(&fac.i)?, "trivial cofibration")?;
    promise(is_fibration(&fac.p), "fibration")?;
    Ok(fac)
}

/// Decides whether `f` is a chain homotopy equivalence: factor
/// `f = p ∘ (j, f)` with `p` a trivial fibration; then `f` is a weak
/// equivalence exactly when the cofibration `(j, f)` has contractible
/// cokernel.
pub fn is_homotopy_equivalence(f: &ChainMap) -> Result<bool> {
    let fac = cof_trivfib_parts(f)?;
    Ok(is_contractible(&cokernel_of_split_mono(&fac.i, None)?.complex))
}

/// Cokernel of the cofibration `(j, f)` used by [`is_homotopy_equivalence`].
pub fn mapping_cokernel(f: &ChainMap) -> Result<NComplex> {
    let fac = cof_trivfib_parts(f)?;
    Ok(cokernel_of_split_mono(&fac.i, None)?.complex)
}
