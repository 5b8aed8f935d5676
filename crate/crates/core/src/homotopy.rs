//! Chain homotopies of N-complexes.
//!
//! `f ~ g` when there are maps `s_n : X_n -> Y_{n+N-1}` with
//! `g_n - f_n = Σ_{i=0}^{N-1} d^{N-1-i} s_{n-i} d^i` in every degree.
//! Deciding this is a single linear system in the entries of the `s_n`.

use std::collections::BTreeMap;

use crate::complex::{ChainMap, NComplex};
use crate::error::{Error, Result};
use crate::linalg::{LinearSystem, Matrix, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    source: NComplex,
    target: NComplex,
    components: BTreeMap<i64, Matrix>,
}

fn lift(x: &NComplex) -> i64 {
    x.order() as i64 - 1
}

impl Homotopy {
    /// Components are `s_n : X_n -> Y_{n+N-1}`; missing ones are zero.
    pub fn new(source: NComplex, target: NComplex, components: BTreeMap<i64, Matrix>) -> Result<Self> {
        source.check_compatible(&target)?;
        let up = lift(&source);
        let mut stored = BTreeMap::new();
        for (n, m) in components {
            let shape = (target.dim(n + up), source.dim(n));
            if m.shape() != shape {
                return Err(Error::shape(format!(
                    "s_{n} is {}x{} but should be {}x{}",
                    m.rows(),
                    m.cols(),
                    shape.0,
                    shape.1
                )));
            }
            if m.field() != source.field() {
                return Err(Error::MixedField(format!("component s_{n}")));
            }
            if shape.0 > 0 && shape.1 > 0 {
                stored.insert(n, m);
            }
        }
        Ok(Homotopy {
            source,
            target,
            components: stored,
        })
    }

    pub fn zero(source: &NComplex, target: &NComplex) -> Result<Self> {
        Self::new(source.clone(), target.clone(), BTreeMap::new())
    }

    pub fn source(&self) -> &NComplex {
        &self.source
    }

    pub fn target(&self) -> &NComplex {
        &self.target
    }

    /// Stored (nonzero-shaped) components.
    pub fn components(&self) -> &BTreeMap<i64, Matrix> {
        &self.components
    }

    pub fn component(&self, n: i64) -> Matrix {
        self.components.get(&n).cloned().unwrap_or_else(|| {
            Matrix::zeros(
                self.source.field(),
                self.target.dim(n + lift(&self.source)),
                self.source.dim(n),
            )
        })
    }

    /// The null-homotopic map `Σ_i d^{N-1-i} s d^i`, evaluated directly.
    pub fn boundary(&self) -> Result<ChainMap> {
        let (x, y) = (&self.source, &self.target);
        let order = x.order();
        let field = x.field();
        let mut comps = BTreeMap::new();
        for n in x.degrees().filter(|&n| y.dim(n) > 0) {
            let mut acc = Matrix::zeros(field, y.dim(n), x.dim(n));
            for i in 0..order {
                let k = n - i as i64;
                let Some(s) = self.components.get(&k) else {
                    continue;
                };
                let term = y
                    .composite_differential(k + order as i64 - 1, order - 1 - i)
                    .mul(s)
                    .mul(&x.composite_differential(n, i));
                acc = acc.add(&term);
            }
            comps.insert(n, acc);
        }
        ChainMap::new(x.clone(), y.clone(), comps)
    }

    pub fn add(&self, other: &Homotopy) -> Result<Homotopy> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::shape("homotopies between different complexes"));
        }
        let mut comps = self.components.clone();
        for (&n, m) in &other.components {
            let sum = match comps.get(&n) {
                Some(a) => a.add(m),
                None => m.clone(),
            };
            comps.insert(n, sum);
        }
        Homotopy::new(self.source.clone(), self.target.clone(), comps)
    }

    pub fn neg(&self) -> Homotopy {
        Homotopy {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.iter().map(|(&n, m)| (n, m.neg())).collect(),
        }
    }

    /// `s ∘ f` for `f : W -> X`; a homotopy witnessing `a∘f ~ b∘f` when
    /// `self` witnesses `a ~ b`.
    pub fn precompose(&self, f: &ChainMap) -> Result<Homotopy> {
        if f.target() != &self.source {
            return Err(Error::shape("map does not land in the homotopy's source"));
        }
        let comps = self
            .components
            .iter()
            .map(|(&n, s)| (n, s.mul(&f.component(n))))
            .collect();
        Homotopy::new(f.source().clone(), self.target.clone(), comps)
    }

    /// `g ∘ s` for `g : Y -> Z`.
    pub fn postcompose(&self, g: &ChainMap) -> Result<Homotopy> {
        if g.source() != &self.target {
            return Err(Error::shape("map does not start at the homotopy's target"));
        }
        let up = lift(&self.source);
        let comps = self
            .components
            .iter()
            .map(|(&n, s)| (n, g.component(n + up).mul(s)))
            .collect();
        Homotopy::new(self.source.clone(), g.target().clone(), comps)
    }
}

fn check_parallel(f: &ChainMap, g: &ChainMap) -> Result<()> {
    if f.is_parallel(g) {
        Ok(())
    } else {
        Err(Error::shape("maps do not share source and target"))
    }
}

/// Whether `s` witnesses `f ~ g`, i.e. `g - f = Σ d^{N-1-i} s d^i`.
pub fn verify_homotopy(f: &ChainMap, g: &ChainMap, s: &Homotopy) -> Result<bool> {
    check_parallel(f, g)?;
    if s.source() != f.source() || s.target() != f.target() {
        return Err(Error::shape("homotopy is between different complexes"));
    }
    Ok(g.sub(f)? == s.boundary()?)
}

/// Solves for a homotopy `f ~ g`. Unknowns are the entries of `s_n` for
/// every `n` with `X_n` and `Y_{n+N-1}` nonzero, flattened by ascending
/// degree and row-major within each block; free variables are zero.
pub fn find_homotopy(f: &ChainMap, g: &ChainMap) -> Result<Option<Homotopy>> {
    check_parallel(f, g)?;
    let (x, y) = (f.source(), f.target());
    let order = x.order();
    let up = lift(x);
    let mut sys = LinearSystem::new(x.field());
    let mut blocks = BTreeMap::new();
    for (&n, &d) in x.dims() {
        let rows = y.dim(n + up);
        if rows > 0 {
            blocks.insert(n, sys.add_unknown(rows, d));
        }
    }
    let diff = g.sub(f)?;
    for n in x.degrees().filter(|&n| y.dim(n) > 0) {
        let terms: Vec<Term> = (0..order)
            .filter_map(|i| {
                let k = n - i as i64;
                blocks.get(&k).map(|&block| Term {
                    block,
                    left: y.composite_differential(k + up, order - 1 - i),
                    right: x.composite_differential(n, i),
                })
            })
            .collect();
        let rhs = diff.component(n);
        if terms.is_empty() {
            if !rhs.is_zero() {
                return Ok(None);
            }
            continue;
        }
        sys.add_equation(terms, rhs);
    }
    let Some(solution) = sys.solve() else {
        return Ok(None);
    };
    let comps = blocks.keys().copied().zip(solution).collect();
    Homotopy::new(x.clone(), y.clone(), comps).map(Some)
}

pub fn is_homotopic(f: &ChainMap, g: &ChainMap) -> Result<bool> {
    Ok(find_homotopy(f, g)?.is_some())
}

pub fn is_null_homotopic(f: &ChainMap) -> Result<bool> {
    let zero = ChainMap::zero(f.source(), f.target())?;
    is_homotopic(&zero, f)
}
