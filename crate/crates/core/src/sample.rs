//! Seeded random instances for randomized checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{AlgElem, AlgMatrix};
use crate::field::{Field, Scalar};
use crate::monoid::{enumerate_monoids, Elem, Family, Monoid};
use crate::pattern::Pattern;

/// Draws random scalars, algebra elements and matrices over a fixed carrier.
///
/// Infinite monoids are sampled from a finite pool: bicyclic elements
/// `q^a p^b` and free commutative exponent vectors with exponents `<= 2`.
pub struct Sampler {
    field: Field,
    monoid: Monoid,
    pool: Vec<Elem>,
}

impl Sampler {
    pub fn new(field: &Field, monoid: &Monoid) -> Self {
        Self::with_max_exponent(field, monoid, 2)
    }

    pub fn with_max_exponent(field: &Field, monoid: &Monoid, max_exp: u32) -> Self {
        let pool = match monoid.family() {
            Family::Table { .. } | Family::Cyclic(_) => monoid.elements().expect("finite"),
            Family::Bicyclic => (0..=max_exp)
                .flat_map(|a| (0..=max_exp).map(move |b| Elem::Bicyclic(a, b)))
                .collect(),
            Family::FreeCommutative(r) => {
                let mut out = vec![vec![]];
                for _ in 0..*r {
                    out = out
                        .into_iter()
                        .flat_map(|v: Vec<u32>| {
                            (0..=max_exp).map(move |e| {
                                let mut v = v.clone();
                                v.push(e);
                                v
                            })
                        })
                        .collect();
                }
                out.into_iter().map(Elem::Free).collect()
            }
        };
        Sampler {
            field: field.clone(),
            monoid: monoid.clone(),
            pool,
        }
    }

    pub fn pool(&self) -> &[Elem] {
        &self.pool
    }

    pub fn element<R: Rng>(&self, rng: &mut R) -> Elem {
        self.pool.choose(rng).expect("nonempty pool").clone()
    }

    pub fn scalar<R: Rng>(&self, rng: &mut R) -> Scalar {
        match self.field.order() {
            Some(q) => Scalar::Finite(rng.gen_range(0..q)),
            None => self
                .field
                .rational(rng.gen_range(-3..=3), rng.gen_range(1..=3))
                .expect("nonzero denominator"),
        }
    }

    pub fn nonzero_scalar<R: Rng>(&self, rng: &mut R) -> Scalar {
        loop {
            let c = self.scalar(rng);
            if !self.field.is_zero(&c) {
                return c;
            }
        }
    }

    /// Up to `max_terms` random terms over the pool (possibly zero).
    pub fn alg_elem<R: Rng>(&self, rng: &mut R, max_terms: usize) -> AlgElem {
        let n = rng.gen_range(0..=max_terms);
        let terms: Vec<(Elem, Scalar)> = (0..n)
            .map(|_| (self.element(rng), self.nonzero_scalar(rng)))
            .collect();
        AlgElem::from_terms(&self.field, &self.monoid, terms).expect("pool elements")
    }

    /// Random element supported in `support`.
    pub fn alg_elem_in<R: Rng>(&self, rng: &mut R, support: &[Elem]) -> AlgElem {
        let terms: Vec<(Elem, Scalar)> = support
            .iter()
            .map(|m| (m.clone(), self.scalar(rng)))
            .collect();
        AlgElem::from_terms(&self.field, &self.monoid, terms).expect("support in monoid")
    }

    pub fn matrix<R: Rng>(&self, rng: &mut R, dim: usize, max_terms: usize) -> AlgMatrix {
        let entries = (0..dim * dim).map(|_| self.alg_elem(rng, max_terms)).collect();
        AlgMatrix::from_entries(dim, entries).expect("square")
    }

    /// A random vector pattern of length `dim` on the given domain (repeats ignored).
    pub fn vector_pattern<R: Rng>(
        &self,
        rng: &mut R,
        dim: usize,
        domain: &[Elem],
    ) -> Pattern<Vec<Scalar>> {
        let domain: std::collections::BTreeSet<&Elem> = domain.iter().collect();
        Pattern::from_cells(
            &self.monoid,
            domain
                .into_iter()
                .map(|m| (m.clone(), (0..dim).map(|_| self.scalar(rng)).collect())),
        )
        .expect("domain in monoid")
    }
}

/// A small, diverse set of carriers for randomized unit tests.
pub fn test_monoids() -> Vec<Monoid> {
    let mut out = vec![
        Monoid::bicyclic(),
        Monoid::cyclic(2).expect("positive"),
        Monoid::cyclic(3).expect("positive"),
        Monoid::free_commutative(2),
    ];
    out.push(enumerate_monoids(3).expect("order 3").swap_remove(4));
    out
}

pub fn test_fields() -> Vec<Field> {
    vec![
        Field::prime(2).expect("prime"),
        Field::prime(3).expect("prime"),
        Field::from_spec("4").expect("GF(4)"),
        Field::rationals(),
    ]
}
