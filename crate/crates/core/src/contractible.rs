//! Contractible N-complexes: decision, decomposition into disks, maps into
//! and out of biproducts of disks, and factorization of homotopic maps
//! through a contractible complex.

use std::collections::BTreeMap;

use crate::complex::{ChainMap, DiskSum, NComplex};
use crate::error::{Error, Result};
use crate::homology::cycles;
use crate::homotopy::{find_homotopy, is_null_homotopic};
use crate::linalg::{Matrix, Subspace};

/// `C` is contractible when `1_C` is null homotopic.
pub fn is_contractible(c: &NComplex) -> bool {
    is_null_homotopic(&ChainMap::identity(c)).expect("identity is parallel to zero")
}

/// `X = ker g ⊕ im(s g)` for a map `g` with `g s g = g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub kernel: Subspace,
    pub image_sg: Subspace,
}

/// Splits the domain of `g : X -> Y` using `s : Y -> X` with `g s g = g`.
///
/// Also checks that `g` and `s` restrict to mutually inverse maps between
/// `im(s g)` and `im g`.
pub fn split_by(g: &Matrix, s: &Matrix) -> Result<Splitting> {
    if s.shape() != (g.cols(), g.rows()) {
        return Err(Error::shape(format!(
            "splitting of a {}x{} map must be {}x{}",
            g.rows(),
            g.cols(),
            g.cols(),
            g.rows()
        )));
    }
    let sg = s.mul(g);
    if g.mul(&sg) != *g {
        return Err(Error::SplittingViolation);
    }
    let kernel = g.kernel_basis();
    let image_sg = sg.image_basis();
    if kernel.dim() + image_sg.dim() != g.cols() || !kernel.meets_trivially(&image_sg) {
        return Err(Error::Invariant("ker g and im sg do not split the domain".into()));
    }
    let im_g = g.image_basis();
    let on_image_sg = sg.mul(image_sg.basis()) == *image_sg.basis();
    let on_image_g = g.mul(s).mul(im_g.basis()) == *im_g.basis();
    if !(on_image_sg && on_image_g) {
        return Err(Error::Invariant(
            "g and s do not restrict to inverse isomorphisms".into(),
        ));
    }
    Ok(Splitting { kernel, image_sg })
}

/// An isomorphism `C ≅ ⊕_m D_m(M_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskDecomposition {
    pub disks: DiskSum,
    pub iso_to_disks: ChainMap,
    pub iso_from_disks: ChainMap,
}

impl DiskDecomposition {
    /// `dim M_m` keyed by the top degree `m` of each disk.
    pub fn summand_dims(&self) -> &BTreeMap<i64, usize> {
        self.disks.summands()
    }
}

/// `_jZ_n` with the conventions `_0Z_n = 0` and `_NZ_n = C_n`.
fn cycle_filtration(c: &NComplex, n: i64, j: usize) -> Subspace {
    if j == 0 {
        Subspace::zero(c.field(), c.dim(n))
    } else {
        cycles(c, n, j).expect("amplitude within [1, N]")
    }
}

/// Decomposes a contractible complex into a biproduct of disks.
///
/// With `s` a contraction, `d^{N-1} s d^{N-1} = d^{N-1}`, so `s` splits
/// `g = d^{N-1} : C_m -> C_{m-N+1}` and the top of the disk at `m` is
/// `im(s g) = s[_1Z_{m-N+1}]`. The images `d^k s[_1Z_{n+k-N+1}]` then peel
/// `_{N-k}Z_n = _{N-1-k}Z_n ⊕ d^k s[...]` for `k = 0, ..., N-1`; each step is
/// checked, as is the final isomorphism.
pub fn disk_decomposition(c: &NComplex) -> Result<DiskDecomposition> {
    let order = c.order();
    let field = c.field();
    let up = order as i64 - 1;
    let id = ChainMap::identity(c);
    let zero = ChainMap::zero(c, c)?;
    let s = find_homotopy(&zero, &id)?.ok_or(Error::NotContractible)?;

    let mut tops: BTreeMap<i64, Subspace> = BTreeMap::new();
    for m in c.degrees() {
        let g = c.composite_differential(m, order - 1);
        let split = split_by(&g, &s.component(m - up))?;
        let expected = cycle_filtration(c, m - up, 1).dim();
        if split.image_sg.dim() != expected {
            return Err(Error::Invariant(format!(
                "top of the disk at {m} has dimension {} but _1Z_{} has {expected}",
                split.image_sg.dim(),
                m - up
            )));
        }
        if !split.image_sg.is_zero() {
            tops.insert(m, split.image_sg);
        }
    }

    for n in c.degrees() {
        for k in 0..order {
            let m = n + k as i64;
            let layer = match tops.get(&m) {
                Some(top) => top.image_under(&c.composite_differential(m, k)),
                None => Subspace::zero(field, c.dim(n)),
            };
            let lower = cycle_filtration(c, n, order - 1 - k);
            let upper = cycle_filtration(c, n, order - k);
            if !lower.meets_trivially(&layer) || lower.sum(&layer) != upper {
                return Err(Error::Invariant(format!("peeling step k = {k} fails in degree {n}")));
            }
        }
    }

    let summands = tops.iter().map(|(&m, t)| (m, t.dim())).collect();
    let disks = DiskSum::new(order, field, summands)?;
    let mut from = BTreeMap::new();
    let mut to = BTreeMap::new();
    for n in c.degrees() {
        let mut p = Matrix::zeros(field, c.dim(n), disks.complex().dim(n));
        for (&m, top) in tops.range(n..=n + up) {
            let cols = disks.block(n, m).expect("summand present");
            let vectors = c.composite_differential(m, (m - n) as usize).mul(top.basis());
            p.set_block(0, cols.start, &vectors);
        }
        let inv = p
            .inverse()
            .ok_or_else(|| Error::Invariant(format!("disk basis is not a basis in degree {n}")))?;
        from.insert(n, p);
        to.insert(n, inv);
    }
    let iso_from_disks = ChainMap::new(disks.complex().clone(), c.clone(), from)?;
    let iso_to_disks = ChainMap::new(c.clone(), disks.complex().clone(), to)?;
    let round_c = ChainMap::compose(&iso_from_disks, &iso_to_disks)?;
    let round_d = ChainMap::compose(&iso_to_disks, &iso_from_disks)?;
    if !(round_c.is_identity() && round_d.is_identity()) {
        return Err(Error::Invariant("decomposition isomorphisms are not inverse".into()));
    }
    Ok(DiskDecomposition {
        disks,
        iso_to_disks,
        iso_from_disks,
    })
}

/// The chain map `β : X -> ⊕ D_m(M_m)` determined by `u_n : X_n -> M_{n+N-1}`:
/// `β_n = (u_n, u_{n-1} d, ..., u_{n-N+1} d^{N-1})`.
pub fn map_into_contractible(x: &NComplex, u: &BTreeMap<i64, Matrix>, disks: &DiskSum) -> Result<ChainMap> {
    let c = disks.complex();
    x.check_compatible(c)?;
    let order = x.order();
    let up = order as i64 - 1;
    for (&n, un) in u {
        let shape = (disks.summand_dim(n + up), x.dim(n));
        if un.shape() != shape {
            return Err(Error::shape(format!(
                "u_{n} is {}x{} but should be {}x{}",
                un.rows(),
                un.cols(),
                shape.0,
                shape.1
            )));
        }
    }
    let mut comps = BTreeMap::new();
    for n in x.degrees().filter(|&n| c.dim(n) > 0) {
        let mut beta = Matrix::zeros(x.field(), c.dim(n), x.dim(n));
        for k in 0..order {
            let src = n - k as i64;
            let (Some(uk), Some(rows)) = (u.get(&src), disks.block(n, src + up)) else {
                continue;
            };
            beta.set_block(rows.start, 0, &uk.mul(&x.composite_differential(n, k)));
        }
        comps.insert(n, beta);
    }
    ChainMap::new(x.clone(), c.clone(), comps)
}

/// Recovers the `u_n` of a chain map into a biproduct of disks: the block
/// of `β_n` landing in `M_{n+N-1}`.
pub fn components_into(beta: &ChainMap, disks: &DiskSum) -> BTreeMap<i64, Matrix> {
    let up = beta.order() as i64 - 1;
    let x = beta.source();
    x.degrees()
        .filter_map(|n| {
            let rows = disks.block(n, n + up)?;
            let b = beta.component(n);
            Some((n, b.submatrix(rows, 0..x.dim(n))))
        })
        .collect()
}

/// The chain map `p : ⊕ D_m(M_m) -> Y` determined by `q_m : M_m -> Y_m`:
/// `p_n = d^{N-1} q_{n+N-1} + ... + d q_{n+1} + q_n`.
pub fn map_out_of_contractible(y: &NComplex, q: &BTreeMap<i64, Matrix>, disks: &DiskSum) -> Result<ChainMap> {
    let c = disks.complex();
    y.check_compatible(c)?;
    for (&m, qm) in q {
        let shape = (y.dim(m), disks.summand_dim(m));
        if qm.shape() != shape {
            return Err(Error::shape(format!(
                "q_{m} is {}x{} but should be {}x{}",
                qm.rows(),
                qm.cols(),
                shape.0,
                shape.1
            )));
        }
    }
    let order = y.order();
    let mut comps = BTreeMap::new();
    for n in c.degrees().filter(|&n| y.dim(n) > 0) {
        let mut p = Matrix::zeros(y.field(), y.dim(n), c.dim(n));
        for k in 0..order {
            let m = n + k as i64;
            let (Some(qm), Some(cols)) = (q.get(&m), disks.block(n, m)) else {
                continue;
            };
            p.set_block(0, cols.start, &y.composite_differential(m, k).mul(qm));
        }
        comps.insert(n, p);
    }
    ChainMap::new(c.clone(), y.clone(), comps)
}

/// Recovers the `q_m` of a chain map out of a biproduct of disks: the
/// block of `p_m` on the top summand `M_m`.
pub fn components_out_of(p: &ChainMap, disks: &DiskSum) -> BTreeMap<i64, Matrix> {
    let y = p.target();
    disks
        .summands()
        .keys()
        .filter_map(|&m| {
            let cols = disks.block(m, m)?;
            let pm = p.component(m);
            Some((m, pm.submatrix(0..y.dim(m), cols)))
        })
        .collect()
}

/// `g - f = p ∘ β` through the contractible complex `⊕_n D_n(Y_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub contractible: DiskSum,
    pub beta: ChainMap,
    pub p: ChainMap,
}

/// Factors `g - f` through a contractible complex when `f ~ g`; `None`
/// when the maps are not homotopic. The homotopy `s` gives `β` via
/// `u_n = s_n`, and identities give `p`.
pub fn factor_through_contractible(f: &ChainMap, g: &ChainMap) -> Result<Option<Factorization>> {
    let Some(s) = find_homotopy(f, g)? else {
        return Ok(None);
    };
    let (x, y) = (f.source(), f.target());
    let field = y.field();
    let disks = DiskSum::new(y.order(), field, y.dims().clone())?;
    let u: BTreeMap<i64, Matrix> = s.components().clone();
    let beta = map_into_contractible(x, &u, &disks)?;
    let ids = y
        .dims()
        .iter()
        .map(|(&n, &d)| (n, Matrix::identity(field, d)))
        .collect();
    let p = map_out_of_contractible(y, &ids, &disks)?;
    if ChainMap::compose(&p, &beta)? != g.sub(f)? {
        return Err(Error::Invariant("p ∘ β differs from g - f".into()));
    }
    Ok(Some(Factorization {
        contractible: disks,
        beta,
        p,
    }))
}
