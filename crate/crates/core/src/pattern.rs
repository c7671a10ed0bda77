//! Partial configurations over a monoid.
//!
//! A [`Pattern`] is a configuration known only on a finite domain. Every
//! operation computes its output only on sites where it is fully
//! determined by the input and reports the missing input sites otherwise.

use std::collections::BTreeMap;

use crate::algebra::{AlgElem, AlgMatrix};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::monoid::{Elem, Monoid};

/// Finite alphabet `{0, .., size - 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymbolAlphabet(u32);

impl SymbolAlphabet {
    pub fn new(size: u32) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidRule("alphabet must be nonempty".into()));
        }
        Ok(SymbolAlphabet(size))
    }

    pub fn size(self) -> u32 {
        self.0
    }

    pub fn check(self, symbol: u32) -> Result<()> {
        if symbol < self.0 {
            Ok(())
        } else {
            Err(Error::SymbolOutOfRange {
                symbol,
                size: self.0,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern<V> {
    monoid: Monoid,
    cells: BTreeMap<Elem, V>,
}

pub type SymbolPattern = Pattern<u32>;
pub type VectorPattern = Pattern<Vec<Scalar>>;

impl<V: Clone> Pattern<V> {
    pub fn empty(monoid: &Monoid) -> Self {
        Pattern {
            monoid: monoid.clone(),
            cells: BTreeMap::new(),
        }
    }

    /// Rejects elements outside the monoid and repeated sites.
    pub fn from_cells(monoid: &Monoid, cells: impl IntoIterator<Item = (Elem, V)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (m, v) in cells {
            monoid.check(&m)?;
            if map.insert(m.clone(), v).is_some() {
                return Err(Error::InvalidMonoid(format!(
                    "site {} is assigned twice",
                    monoid.name(&m)
                )));
            }
        }
        Ok(Pattern {
            monoid: monoid.clone(),
            cells: map,
        })
    }

    /// The same value on every site of `domain`.
    pub fn constant(monoid: &Monoid, domain: &[Elem], value: V) -> Result<Self> {
        Self::from_cells(monoid, domain.iter().map(|m| (m.clone(), value.clone())))
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn domain(&self) -> Vec<Elem> {
        self.cells.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, m: &Elem) -> Option<&V> {
        self.cells.get(m)
    }

    pub fn cells(&self) -> impl Iterator<Item = (&Elem, &V)> {
        self.cells.iter()
    }

    /// `c|_T`; `T` must lie inside the domain.
    pub fn restrict(&self, sites: &[Elem]) -> Result<Self> {
        let missing: Vec<String> = sites
            .iter()
            .filter(|m| !self.cells.contains_key(m))
            .map(|m| self.monoid.name(m))
            .collect();
        if !missing.is_empty() {
            return Err(Error::NotInDomain { missing });
        }
        Ok(Pattern {
            monoid: self.monoid.clone(),
            cells: sites
                .iter()
                .map(|m| (m.clone(), self.cells[m].clone()))
                .collect(),
        })
    }

    /// The shift `c o R_m`: defined at `x` whenever `x m` lies in the domain.
    /// Candidate sites are required for infinite monoids, where
    /// `{x : xm in D}` may be infinite; for finite monoids they default to
    /// all elements.
    pub fn shift(&self, m: &Elem, candidates: Option<&[Elem]>) -> Result<Self> {
        self.monoid.check(m)?;
        let all;
        let candidates = match candidates {
            Some(c) => c,
            None => {
                all = self.monoid.elements()?;
                &all
            }
        };
        let mut cells = BTreeMap::new();
        for x in candidates {
            self.monoid.check(x)?;
            if let Some(v) = self.cells.get(&self.monoid.op(x, m)) {
                cells.insert(x.clone(), v.clone());
            }
        }
        Ok(Pattern {
            monoid: self.monoid.clone(),
            cells,
        })
    }

    /// Fails with the sites of `needed` that are not in the domain.
    pub fn require(&self, needed: &[Elem]) -> Result<()> {
        let missing: Vec<String> = needed
            .iter()
            .filter(|m| !self.cells.contains_key(m))
            .map(|m| self.monoid.name(m))
            .collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::InsufficientDomain { missing })
        }
    }
}

/// Input sites needed to evaluate a rule with memory set `memory` at every
/// site of `window`: the product set `memory * window`.
pub fn required_domain(monoid: &Monoid, window: &[Elem], memory: &[Elem]) -> Result<Vec<Elem>> {
    monoid.product_set(memory, window)
}

impl VectorPattern {
    pub fn zero(field: &Field, monoid: &Monoid, dim: usize, domain: &[Elem]) -> Result<Self> {
        Self::constant(monoid, domain, vec![field.zero(); dim])
    }

    /// Checks that every value is a `dim`-vector over `field`.
    pub fn check_values(&self, field: &Field, dim: usize) -> Result<()> {
        for v in self.cells.values() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
            for c in v {
                field.check(c)?;
            }
        }
        Ok(())
    }

    /// Pointwise `lambda * self + mu * other` on the common domain.
    pub fn combine(&self, field: &Field, lambda: &Scalar, other: &Self, mu: &Scalar) -> Result<Self> {
        let mut cells = BTreeMap::new();
        for (m, v) in &self.cells {
            if let Some(w) = other.cells.get(m) {
                if v.len() != w.len() {
                    return Err(Error::DimensionMismatch {
                        expected: v.len(),
                        got: w.len(),
                    });
                }
                let out = v
                    .iter()
                    .zip(w)
                    .map(|(a, b)| field.add(&field.mul(lambda, a), &field.mul(mu, b)))
                    .collect();
                cells.insert(m.clone(), out);
            }
        }
        Ok(Pattern {
            monoid: self.monoid.clone(),
            cells,
        })
    }

    /// Indicator pattern on `domain`: component `i` is 1 at `site`, all else 0.
    pub fn indicator(
        field: &Field,
        monoid: &Monoid,
        dim: usize,
        domain: &[Elem],
        component: usize,
        site: &Elem,
    ) -> Result<Self> {
        let mut c = Self::zero(field, monoid, dim, domain)?;
        match c.cells.get_mut(site) {
            Some(v) => v[component] = field.one(),
            None => {
                return Err(Error::NotInDomain {
                    missing: vec![monoid.name(site)],
                })
            }
        }
        Ok(c)
    }
}

/// `(c * alpha)(m) = sum_s c(sm) alpha_s` on every site `m` of `window`,
/// for a 1-dimensional vector pattern `c`.
pub fn convolve_scalar(c: &VectorPattern, alpha: &AlgElem, window: &[Elem]) -> Result<VectorPattern> {
    if c.monoid != *alpha.monoid() {
        return Err(Error::CarrierMismatch);
    }
    c.check_values(alpha.field(), 1)?;
    convolve_matrix(c, &AlgMatrix::scalar(alpha.clone()), window)
}

/// `(c * A)_j = sum_i c_i * alpha_ij`, evaluated on `window`.
pub fn convolve_matrix(c: &VectorPattern, a: &AlgMatrix, window: &[Elem]) -> Result<VectorPattern> {
    let (field, monoid, d) = (a.field(), a.monoid(), a.dim());
    if c.monoid != *monoid {
        return Err(Error::CarrierMismatch);
    }
    c.check_values(field, d)?;
    c.require(&required_domain(monoid, window, &a.support())?)?;
    let mut cells = BTreeMap::new();
    for m in window {
        monoid.check(m)?;
        let mut out = vec![field.zero(); d];
        for i in 0..d {
            for (j, slot) in out.iter_mut().enumerate() {
                for (s, coeff) in a.entry(i, j).terms() {
                    let v = &c.cells[&monoid.op(s, m)][i];
                    *slot = field.add(slot, &field.mul(v, coeff));
                }
            }
        }
        cells.insert(m.clone(), out);
    }
    Ok(Pattern {
        monoid: monoid.clone(),
        cells,
    })
}
