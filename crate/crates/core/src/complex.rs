//! N-complexes, chain maps and the basic constructors: disks, direct sums,
//! shifts and transport along degreewise basis changes.
//!
//! Matrix convention: `d_n : X_n -> X_{n-1}` has `dim X_{n-1}` rows and
//! `dim X_n` columns, so the t-fold composite out of degree `n` is the
//! product `d_{n-t+1} * ... * d_{n-1} * d_n`.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, LinearSystem, Matrix, Scalar, Term};

/// A finitely supported N-complex of vector spaces.
///
/// Zero spaces are represented by absence from `dims`. Differentials are
/// stored for every degree `n` with both `X_n` and `X_{n-1}` nonzero
/// (possibly as zero matrices); all others are implicitly zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NComplex {
    order: usize,
    field: FieldSpec,
    dims: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, Matrix>,
}

impl NComplex {
    /// Checks shapes only; `d^N = 0` is left to [`NComplex::validate`].
    pub fn from_parts(
        order: usize,
        field: FieldSpec,
        dims: BTreeMap<i64, usize>,
        diffs: BTreeMap<i64, Matrix>,
    ) -> Result<Self> {
        if order < 2 {
            return Err(Error::shape(format!("N must be at least 2, got {order}")));
        }
        let dims: BTreeMap<i64, usize> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let dim = |n: i64| dims.get(&n).copied().unwrap_or(0);
        let mut stored = BTreeMap::new();
        for (n, m) in diffs {
            if m.field() != field {
                return Err(Error::MixedField(format!(
                    "differential d_{n} is over {}, complex over {field}",
                    m.field()
                )));
            }
            if m.shape() != (dim(n - 1), dim(n)) {
                return Err(Error::shape(format!(
                    "d_{n} is {}x{} but dims give {}x{}",
                    m.rows(),
                    m.cols(),
                    dim(n - 1),
                    dim(n)
                )));
            }
            if m.rows() > 0 && m.cols() > 0 {
                stored.insert(n, m);
            }
        }
        for (&n, &d) in &dims {
            if let Some(&below) = dims.get(&(n - 1)) {
                stored.entry(n).or_insert_with(|| Matrix::zeros(field, below, d));
            }
        }
        Ok(NComplex {
            order,
            field,
            dims,
            diffs: stored,
        })
    }

    /// Builds a complex and checks `d^N = 0`.
    pub fn new(
        order: usize,
        field: FieldSpec,
        dims: BTreeMap<i64, usize>,
        diffs: BTreeMap<i64, Matrix>,
    ) -> Result<Self> {
        let x = Self::from_parts(order, field, dims, diffs)?;
        let bad = x.validate();
        if bad.is_empty() {
            Ok(x)
        } else {
            Err(Error::NotAnNComplex(bad))
        }
    }

    pub fn zero(order: usize, field: FieldSpec) -> Self {
        Self::from_parts(order, field, BTreeMap::new(), BTreeMap::new()).expect("order checked by caller")
    }

    /// `field^dim` placed in a single degree.
    pub fn concentrated(order: usize, field: FieldSpec, degree: i64, dim: usize) -> Self {
        Self::from_parts(order, field, BTreeMap::from([(degree, dim)]), BTreeMap::new())
            .expect("a single space is always a complex")
    }

    /// Degrees `n` at which the N-fold composite out of `X_n` is nonzero.
    pub fn validate(&self) -> Vec<i64> {
        self.dims
            .keys()
            .copied()
            .filter(|&n| !self.composite_differential(n, self.order).is_zero())
            .collect()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    /// Stored differentials (both ends nonzero).
    pub fn differentials(&self) -> &BTreeMap<i64, Matrix> {
        &self.diffs
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Smallest and largest degree with a nonzero space.
    pub fn support(&self) -> Option<(i64, i64)> {
        Some((*self.dims.keys().next()?, *self.dims.keys().next_back()?))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }

    /// `d_n : X_n -> X_{n-1}`, materialized as a zero matrix where implicit.
    pub fn differential(&self, n: i64) -> Matrix {
        self.diffs
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(n - 1), self.dim(n)))
    }

    /// The t-fold composite `X_n -> X_{n-t}`; the identity for `t = 0`.
    pub fn composite_differential(&self, n: i64, t: usize) -> Matrix {
        let (rows, cols) = (self.dim(n - t as i64), self.dim(n));
        if t == 0 {
            return Matrix::identity(self.field, cols);
        }
        let mut acc: Option<Matrix> = None;
        for k in 0..t as i64 {
            let Some(d) = self.diffs.get(&(n - k)) else {
                return Matrix::zeros(self.field, rows, cols);
            };
            acc = Some(match acc {
                None => d.clone(),
                Some(m) => d.mul(&m),
            });
        }
        acc.expect("t >= 1")
    }

    /// `X` with every degree raised by `k`.
    pub fn shift(&self, k: i64) -> NComplex {
        NComplex {
            order: self.order,
            field: self.field,
            dims: self.dims.iter().map(|(&n, &d)| (n + k, d)).collect(),
            diffs: self.diffs.iter().map(|(&n, m)| (n + k, m.clone())).collect(),
        }
    }

    pub(crate) fn check_compatible(&self, other: &NComplex) -> Result<()> {
        if self.order != other.order {
            return Err(Error::MixedOrder(self.order, other.order));
        }
        if self.field != other.field {
            return Err(Error::MixedField(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    /// Transports the complex along invertible basis changes `P_n`
    /// (identity where absent): `d'_n = P_{n-1} d_n P_n^{-1}`. Returns the
    /// new complex with the isomorphism `P` and its inverse.
    pub fn transport(&self, changes: &BTreeMap<i64, Matrix>) -> Result<(NComplex, ChainMap, ChainMap)> {
        let mut fwd = BTreeMap::new();
        let mut inv = BTreeMap::new();
        for (&n, &d) in &self.dims {
            let p = changes
                .get(&n)
                .cloned()
                .unwrap_or_else(|| Matrix::identity(self.field, d));
            if p.shape() != (d, d) {
                return Err(Error::shape(format!("basis change at degree {n} has wrong shape")));
            }
            let pi = p
                .inverse()
                .ok_or_else(|| Error::shape(format!("basis change at degree {n} is singular")))?;
            fwd.insert(n, p);
            inv.insert(n, pi);
        }
        let diffs = self
            .diffs
            .iter()
            .map(|(&n, d)| (n, fwd[&(n - 1)].mul(d).mul(&inv[&n])))
            .collect();
        let y = NComplex::from_parts(self.order, self.field, self.dims.clone(), diffs)?;
        let to = ChainMap::new(self.clone(), y.clone(), fwd)?;
        let from = ChainMap::new(y.clone(), self.clone(), inv)?;
        Ok((y, to, from))
    }
}

/// The disk `D_n(field^dim)`: `field^dim` in degrees `n, ..., n-(N-1)`
/// joined by identities.
pub fn disk(order: usize, n: i64, dim: usize, field: FieldSpec) -> Result<NComplex> {
    if dim == 0 {
        return Err(Error::shape("disk on the zero space"));
    }
    let top = n;
    let bottom = n - (order as i64 - 1);
    let dims = (bottom..=top).map(|k| (k, dim)).collect();
    let diffs = (bottom + 1..=top).map(|k| (k, Matrix::identity(field, dim))).collect();
    NComplex::from_parts(order, field, dims, diffs)
}

/// A direct sum together with its biproduct structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: NComplex,
    pub injections: Vec<ChainMap>,
    pub projections: Vec<ChainMap>,
}

pub fn direct_sum(xs: &[NComplex]) -> Result<DirectSum> {
    let first = xs
        .first()
        .ok_or_else(|| Error::shape("direct sum of an empty family"))?;
    for x in &xs[1..] {
        first.check_compatible(x)?;
    }
    let (order, field) = (first.order, first.field);
    let degrees: BTreeSet<i64> = xs.iter().flat_map(|x| x.degrees()).collect();
    let dims: BTreeMap<i64, usize> = degrees
        .iter()
        .map(|&n| (n, xs.iter().map(|x| x.dim(n)).sum()))
        .collect();
    let diffs = degrees
        .iter()
        .map(|&n| {
            let blocks: Vec<Matrix> = xs.iter().map(|x| x.differential(n)).collect();
            let refs: Vec<&Matrix> = blocks.iter().collect();
            (n, Matrix::block_diagonal(field, &refs))
        })
        .collect();
    let sum = NComplex::from_parts(order, field, dims, diffs)?;

    let mut injections = Vec::with_capacity(xs.len());
    let mut projections = Vec::with_capacity(xs.len());
    let mut offsets: BTreeMap<i64, usize> = BTreeMap::new();
    for x in xs {
        let mut inj = BTreeMap::new();
        let mut proj = BTreeMap::new();
        for (&n, &d) in x.dims() {
            let off = offsets.entry(n).or_insert(0);
            let total = sum.dim(n);
            let mut i = Matrix::zeros(field, total, d);
            i.set_block(*off, 0, &Matrix::identity(field, d));
            proj.insert(n, i.transpose());
            inj.insert(n, i);
            *off += d;
        }
        injections.push(ChainMap::new(x.clone(), sum.clone(), inj)?);
        projections.push(ChainMap::new(sum.clone(), x.clone(), proj)?);
    }
    Ok(DirectSum {
        sum,
        injections,
        projections,
    })
}

/// A biproduct of disks `⊕_m D_m(field^{M_m})` in a fixed layout.
///
/// In degree `n` the summands present are `M_m` for `m = n+N-1, ..., n`,
/// stored in that (descending) order; `M_m` sits at depth `m - n` of its
/// disk. The differential maps the block `M_m` in degree `n` identically
/// onto the block `M_m` in degree `n-1`, except at the bottom of the disk
/// (`m = n+N-1`), where it is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskSum {
    summands: BTreeMap<i64, usize>,
    complex: NComplex,
}

impl DiskSum {
    pub fn new(order: usize, field: FieldSpec, summands: BTreeMap<i64, usize>) -> Result<Self> {
        if order < 2 {
            return Err(Error::shape(format!("N must be at least 2, got {order}")));
        }
        let summands: BTreeMap<i64, usize> = summands.into_iter().filter(|&(_, d)| d > 0).collect();
        let span = order as i64 - 1;
        let degrees: BTreeSet<i64> = summands.keys().flat_map(|&m| (m - span)..=m).collect();
        let layout = |n: i64| -> Vec<(i64, usize)> {
            (n..=n + span)
                .rev()
                .filter_map(|m| summands.get(&m).map(|&d| (m, d)))
                .collect()
        };
        let dims: BTreeMap<i64, usize> = degrees
            .iter()
            .map(|&n| (n, layout(n).iter().map(|&(_, d)| d).sum()))
            .collect();
        let mut diffs = BTreeMap::new();
        for &n in &degrees {
            let below = dims.get(&(n - 1)).copied().unwrap_or(0);
            if below == 0 {
                continue;
            }
            let mut d = Matrix::zeros(field, below, dims[&n]);
            let lower = layout(n - 1);
            let mut col = 0;
            for (m, dm) in layout(n) {
                if m < n + span {
                    let row: usize = lower.iter().take_while(|&&(m2, _)| m2 != m).map(|&(_, d2)| d2).sum();
                    d.set_block(row, col, &Matrix::identity(field, dm));
                }
                col += dm;
            }
            diffs.insert(n, d);
        }
        let complex = NComplex::from_parts(order, field, dims, diffs)?;
        Ok(DiskSum { summands, complex })
    }

    pub fn complex(&self) -> &NComplex {
        &self.complex
    }

    pub fn into_complex(self) -> NComplex {
        self.complex
    }

    pub fn order(&self) -> usize {
        self.complex.order
    }

    pub fn field(&self) -> FieldSpec {
        self.complex.field
    }

    /// `dim M_m` for each disk top degree `m`.
    pub fn summands(&self) -> &BTreeMap<i64, usize> {
        &self.summands
    }

    pub fn summand_dim(&self, m: i64) -> usize {
        self.summands.get(&m).copied().unwrap_or(0)
    }

    /// Row range of the block `M_m` inside degree `n`, if present.
    pub fn block(&self, n: i64, m: i64) -> Option<Range<usize>> {
        let span = self.order() as i64 - 1;
        if m < n || m > n + span {
            return None;
        }
        let dm = self.summand_dim(m);
        if dm == 0 {
            return None;
        }
        let start: usize = (m + 1..=n + span).map(|k| self.summand_dim(k)).sum();
        Some(start..start + dm)
    }
}

/// A chain map `f : X -> Y` with components `f_n : X_n -> Y_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainMap {
    source: NComplex,
    target: NComplex,
    components: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    /// Checks shapes and commutation `d^Y_n f_n = f_{n-1} d^X_n`. Missing
    /// components are zero.
    pub fn new(source: NComplex, target: NComplex, components: BTreeMap<i64, Matrix>) -> Result<Self> {
        let f = Self::from_parts(source, target, components)?;
        let bad = f.commutation_failures();
        if bad.is_empty() {
            Ok(f)
        } else {
            Err(Error::NotAChainMap(bad))
        }
    }

    /// Shape checks only.
    pub fn from_parts(source: NComplex, target: NComplex, components: BTreeMap<i64, Matrix>) -> Result<Self> {
        source.check_compatible(&target)?;
        let mut stored = BTreeMap::new();
        for (n, m) in components {
            if m.field() != source.field {
                return Err(Error::MixedField(format!("component f_{n}")));
            }
            if m.shape() != (target.dim(n), source.dim(n)) {
                return Err(Error::shape(format!(
                    "f_{n} is {}x{} but should be {}x{}",
                    m.rows(),
                    m.cols(),
                    target.dim(n),
                    source.dim(n)
                )));
            }
            if m.rows() > 0 && m.cols() > 0 {
                stored.insert(n, m);
            }
        }
        for (&n, &d) in source.dims() {
            let t = target.dim(n);
            if t > 0 {
                stored.entry(n).or_insert_with(|| Matrix::zeros(source.field, t, d));
            }
        }
        Ok(ChainMap {
            source,
            target,
            components: stored,
        })
    }

    /// Degrees where the commuting square fails.
    pub fn commutation_failures(&self) -> Vec<i64> {
        self.source
            .degrees()
            .filter(|&n| self.target.dim(n - 1) > 0)
            .filter(|&n| {
                let lhs = self.target.differential(n).mul(&self.component(n));
                let rhs = self.component(n - 1).mul(&self.source.differential(n));
                lhs != rhs
            })
            .collect()
    }

    pub fn identity(x: &NComplex) -> ChainMap {
        let comps = x
            .dims()
            .iter()
            .map(|(&n, &d)| (n, Matrix::identity(x.field, d)))
            .collect();
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            components: comps,
        }
    }

    pub fn zero(source: &NComplex, target: &NComplex) -> Result<ChainMap> {
        Self::from_parts(source.clone(), target.clone(), BTreeMap::new())
    }

    pub fn source(&self) -> &NComplex {
        &self.source
    }

    pub fn target(&self) -> &NComplex {
        &self.target
    }

    pub fn field(&self) -> FieldSpec {
        self.source.field
    }

    pub fn order(&self) -> usize {
        self.source.order
    }

    pub fn components(&self) -> &BTreeMap<i64, Matrix> {
        &self.components
    }

    /// `f_n`, materialized as a zero matrix where implicit.
    pub fn component(&self, n: i64) -> Matrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.source.field, self.target.dim(n), self.source.dim(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(Matrix::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.source.degrees().all(|n| self.component(n).is_identity())
    }

    pub fn is_parallel(&self, other: &ChainMap) -> bool {
        self.source == other.source && self.target == other.target
    }

    fn check_parallel(&self, other: &ChainMap) -> Result<()> {
        if self.is_parallel(other) {
            Ok(())
        } else {
            Err(Error::shape("maps do not share source and target"))
        }
    }

    fn zip(&self, other: &ChainMap, op: impl Fn(&Matrix, &Matrix) -> Matrix) -> Result<ChainMap> {
        self.check_parallel(other)?;
        let comps = self
            .components
            .iter()
            .map(|(&n, m)| (n, op(m, &other.components[&n])))
            .collect();
        Ok(ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            components: comps,
        })
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.zip(other, Matrix::add)
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.zip(other, Matrix::sub)
    }

    pub fn neg(&self) -> ChainMap {
        self.scale(&self.field().from_i64(-1))
    }

    pub fn scale(&self, c: &Scalar) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.iter().map(|(&n, m)| (n, m.scale(c))).collect(),
        }
    }

    /// `g ∘ f`.
    pub fn compose(g: &ChainMap, f: &ChainMap) -> Result<ChainMap> {
        if f.target != g.source {
            return Err(Error::shape("target of f is not the source of g"));
        }
        let comps = f
            .source
            .degrees()
            .filter(|&n| g.target.dim(n) > 0)
            .map(|n| (n, g.component(n).mul(&f.component(n))))
            .collect();
        ChainMap::from_parts(f.source.clone(), g.target.clone(), comps)
    }

    /// A basis of the vector space of all chain maps `X -> Y`.
    pub fn hom_basis(x: &NComplex, y: &NComplex) -> Result<Vec<ChainMap>> {
        x.check_compatible(y)?;
        let field = x.field;
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
        let keys: Vec<i64> = blocks.keys().copied().collect();
        sys.homogeneous_solutions()
            .into_iter()
            .map(|sol| {
                let comps = keys.iter().copied().zip(sol).collect();
                ChainMap::new(x.clone(), y.clone(), comps)
            })
            .collect()
    }
}
