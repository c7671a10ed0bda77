//! Linear cellular automata over `(M, K^d)` and the anti-isomorphism
//! `Psi : Mat_d(K[M]) -> LCA(M, K^d)^op`, `A |-> (c |-> c * A)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgElem, AlgMatrix};
use crate::ca::{CARule, MAX_TABLE};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::finiteness::flatten;
use crate::monoid::{Elem, Monoid};
use crate::pattern::{convolve_matrix, required_domain, SymbolAlphabet, VectorPattern};
use crate::sample::Sampler;

/// Random superposition checks performed by [`psi_inverse`].
pub const LINEARITY_CHECKS: usize = 8;

/// A linear rule, identified with its matrix. The memory set is the support
/// and the local map is derived from the coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRule {
    matrix: AlgMatrix,
}

pub fn psi(a: &AlgMatrix) -> LinearRule {
    LinearRule { matrix: a.clone() }
}

impl LinearRule {
    pub fn matrix(&self) -> &AlgMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    pub fn monoid(&self) -> &Monoid {
        self.matrix.monoid()
    }

    /// The minimal memory set, which is `supp(A)`.
    pub fn memory(&self) -> Vec<Elem> {
        self.matrix.support()
    }

    /// `mu_j(p) = sum_i sum_s p_i(s) alpha_ijs`, where `p[k]` is the value at
    /// `memory()[k]`.
    pub fn local(&self, p: &[Vec<Scalar>]) -> Vec<Scalar> {
        let (f, d) = (self.field(), self.dim());
        let memory = self.memory();
        let mut out = vec![f.zero(); d];
        for (k, s) in memory.iter().enumerate() {
            for i in 0..d {
                let v = &p[k][i];
                if f.is_zero(v) {
                    continue;
                }
                for (j, slot) in out.iter_mut().enumerate() {
                    let alpha = self.matrix.entry(i, j).coeff(s);
                    *slot = f.add(slot, &f.mul(v, &alpha));
                }
            }
        }
        out
    }

    /// `c * A` on `window`.
    pub fn apply(&self, c: &VectorPattern, window: &[Elem]) -> Result<VectorPattern> {
        convolve_matrix(c, &self.matrix, window)
    }

    /// `tau(c)(m) = mu((c o R_m)|_S)` evaluated through shift and restriction.
    pub fn apply_local(&self, c: &VectorPattern, window: &[Elem]) -> Result<VectorPattern> {
        let monoid = self.monoid();
        if c.monoid() != monoid {
            return Err(Error::CarrierMismatch);
        }
        c.check_values(self.field(), self.dim())?;
        let memory = self.memory();
        c.require(&required_domain(monoid, window, &memory)?)?;
        let cells = window
            .iter()
            .map(|m| {
                let shifted = c.shift(m, Some(&memory))?.restrict(&memory)?;
                let p: Vec<Vec<Scalar>> = memory
                    .iter()
                    .map(|s| shifted.get(s).expect("restricted").clone())
                    .collect();
                Ok((m.clone(), self.local(&p)))
            })
            .collect::<Result<Vec<_>>>()?;
        VectorPattern::from_cells(monoid, cells)
    }

    /// Evaluates both paths and fails if they disagree anywhere.
    pub fn apply_checked(&self, c: &VectorPattern, window: &[Elem]) -> Result<VectorPattern> {
        let direct = self.apply(c, window)?;
        let local = self.apply_local(c, window)?;
        for (m, v) in direct.cells() {
            if local.get(m) != Some(v) {
                return Err(Error::PathMismatch(self.monoid().name(m)));
            }
        }
        Ok(direct)
    }

    /// `self o inner`: with `inner = psi(A)` and `self = psi(B)` this is
    /// `psi(AB)`.
    pub fn compose(&self, inner: &LinearRule) -> Result<LinearRule> {
        Ok(psi(&inner.matrix.mul(&self.matrix)?))
    }

    /// Coordinates of `candidates` the rule depends on, found by evaluating
    /// indicator patterns at `1_M`. `candidates` must contain the memory set.
    pub fn dependence_reduction(&self, candidates: &[Elem]) -> Result<Vec<Elem>> {
        let (f, m, d) = (self.field(), self.monoid(), self.dim());
        let one = [m.identity()];
        let mut kept = Vec::new();
        for s in candidates {
            for i in 0..d {
                let delta = VectorPattern::indicator(f, m, d, candidates, i, s)?;
                let out = self.apply_local(&delta, &one)?;
                if out.get(&one[0]).expect("window").iter().any(|v| !f.is_zero(v)) {
                    kept.push(s.clone());
                    break;
                }
            }
        }
        Ok(kept)
    }

    /// The same automaton as a symbolic rule over the alphabet `K^d`
    /// (`q^d` symbols, vector digits by scalar rank, first component most
    /// significant), with the given memory.
    pub fn to_ca_rule(&self, memory: Vec<Elem>) -> Result<CARule> {
        let f = self.field();
        let q = f.order().ok_or_else(|| Error::NotFinite(f.to_string()))?;
        let d = self.dim() as u32;
        let size = q
            .checked_pow(d)
            .filter(|&a| a <= u32::MAX as u64)
            .ok_or_else(|| Error::BudgetExceeded {
                required: format!("{q}^{d} symbols"),
                budget: MAX_TABLE,
            })?;
        let alphabet = SymbolAlphabet::new(size as u32)?;
        let own = self.memory();
        if let Some(s) = own.iter().find(|s| !memory.contains(s)) {
            return Err(Error::InvalidRule(format!(
                "{} missing from memory",
                self.monoid().name(s)
            )));
        }
        let encode = |v: &[Scalar]| v.iter().fold(0u64, |acc, x| acc * q + f.rank(x).expect("finite")) as u32;
        let decode = |mut sym: u32| {
            let mut v = vec![f.zero(); d as usize];
            for slot in v.iter_mut().rev() {
                *slot = f.from_rank(sym as u64 % q).expect("in range");
                sym /= q as u32;
            }
            v
        };
        CARule::from_fn(self.monoid(), alphabet, memory.clone(), |p| {
            let vals: Vec<Vec<Scalar>> = own
                .iter()
                .map(|s| decode(p[memory.iter().position(|m| m == s).expect("checked")]))
                .collect();
            encode(&self.local(&vals))
        })
    }

    /// Injectivity and surjectivity on `(K^d)^M` for finite `M` and `K`,
    /// both equivalent to full rank of the flattening.
    pub fn injective_surjective_finite(&self) -> Result<FiniteVerdict> {
        if !self.field().is_finite() {
            return Err(Error::NotFinite(self.field().to_string()));
        }
        let flat = flatten(&self.matrix)?;
        let rank = flat.rank();
        let full = rank == flat.size();
        Ok(FiniteVerdict {
            injective: full,
            surjective: full,
            rank,
            size: flat.size(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteVerdict {
    pub injective: bool,
    pub surjective: bool,
    pub rank: usize,
    pub size: usize,
}

/// Recovers `A` with `supp(A)` inside `support` from a black box that
/// applies a linear automaton to patterns on `support` and reports the
/// output at `1_M`. Entry `alpha_ijs` is component `j` of the output on the
/// indicator `delta_(i,s)`. Linearity is spot-checked with seeded random
/// superpositions, and the recovered rule is compared with the black box
/// on the same random inputs.
pub fn psi_inverse(
    field: &Field,
    monoid: &Monoid,
    dim: usize,
    support: &[Elem],
    blackbox: impl Fn(&VectorPattern) -> Result<VectorPattern>,
    seed: u64,
) -> Result<AlgMatrix> {
    for (k, s) in support.iter().enumerate() {
        monoid.check(s)?;
        if support[..k].contains(s) {
            return Err(Error::DuplicateSupport(monoid.name(s)));
        }
    }
    let one = monoid.identity();
    let at_one = |c: &VectorPattern| -> Result<Vec<Scalar>> {
        let out = blackbox(c)?;
        let v = out
            .get(&one)
            .cloned()
            .ok_or_else(|| Error::NotLinear("no output at the identity".into()))?;
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
        for x in &v {
            field.check(x)?;
        }
        Ok(v)
    };

    let mut terms = vec![Vec::new(); dim * dim];
    for s in support {
        for i in 0..dim {
            let out = at_one(&VectorPattern::indicator(field, monoid, dim, support, i, s)?)?;
            for (j, v) in out.into_iter().enumerate() {
                terms[i * dim + j].push((s.clone(), v));
            }
        }
    }
    let entries = terms
        .into_iter()
        .map(|t| AlgElem::from_terms(field, monoid, t))
        .collect::<Result<Vec<_>>>()?;
    let a = AlgMatrix::from_entries(dim, entries)?;

    let zero = VectorPattern::zero(field, monoid, dim, support)?;
    if at_one(&zero)?.iter().any(|v| !field.is_zero(v)) {
        return Err(Error::NotLinear("zero pattern has nonzero image".into()));
    }
    let sampler = Sampler::new(field, monoid);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rule = psi(&a);
    for _ in 0..LINEARITY_CHECKS {
        let c1 = sampler.vector_pattern(&mut rng, dim, support);
        let c2 = sampler.vector_pattern(&mut rng, dim, support);
        let lambda = sampler.scalar(&mut rng);
        let mix = c1.combine(field, &lambda, &c2, &field.one())?;
        let (y1, y2, ymix) = (at_one(&c1)?, at_one(&c2)?, at_one(&mix)?);
        let expected: Vec<Scalar> = y1
            .iter()
            .zip(&y2)
            .map(|(a, b)| field.add(&field.mul(&lambda, a), b))
            .collect();
        if ymix != expected {
            return Err(Error::NotLinear("superposition check failed".into()));
        }
        let predicted = rule.apply(&c1, std::slice::from_ref(&one))?;
        if predicted.get(&one) != Some(&y1) {
            return Err(Error::NotLinear(
                "black box is not determined by its values on the support".into(),
            ));
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{test_fields, test_monoids};

    fn window_for(sampler: &Sampler, rng: &mut ChaCha8Rng) -> Vec<Elem> {
        let mut w: Vec<Elem> = (0..3).map(|_| sampler.element(rng)).collect();
        w.sort();
        w.dedup();
        w
    }

    #[test]
    fn both_evaluation_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for m in test_monoids() {
            for f in test_fields() {
                let s = Sampler::new(&f, &m);
                for d in 1..=2 {
                    for _ in 0..20 {
                        let a = s.matrix(&mut rng, d, 3);
                        let w = window_for(&s, &mut rng);
                        let dom = required_domain(&m, &w, &a.support()).unwrap();
                        let c = s.vector_pattern(&mut rng, d, &dom);
                        psi(&a).apply_checked(&c, &w).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn identity_and_zero() {
        let f = Field::prime(3).unwrap();
        let m = Monoid::bicyclic();
        let s = Sampler::new(&f, &m);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let w = vec![Elem::Bicyclic(0, 0), Elem::Bicyclic(1, 2)];
        let c = s.vector_pattern(&mut rng, 2, &w);
        let id = psi(&AlgMatrix::identity(2, &f, &m));
        assert_eq!(id.apply_checked(&c, &w).unwrap(), c);
        assert_eq!(id.memory(), vec![m.identity()]);
        let zero = psi(&AlgMatrix::zero(2, &f, &m));
        assert!(zero.memory().is_empty());
        assert_eq!(
            zero.apply_checked(&c, &w).unwrap(),
            VectorPattern::zero(&f, &m, 2, &w).unwrap()
        );
    }

    #[test]
    fn psi_of_p_reads_the_left_translate() {
        let f = Field::prime(2).unwrap();
        let m = Monoid::bicyclic();
        let p = Elem::Bicyclic(0, 1);
        let rule = psi(&AlgMatrix::scalar(AlgElem::basis(&f, &m, p.clone())));
        let s = Sampler::new(&f, &m);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let w: Vec<Elem> = s.pool().to_vec();
        let dom = required_domain(&m, &w, &[p.clone()]).unwrap();
        let c = s.vector_pattern(&mut rng, 1, &dom);
        let out = rule.apply_checked(&c, &w).unwrap();
        for x in &w {
            assert_eq!(out.get(x), c.get(&m.op(&p, x)));
        }
    }

    #[test]
    fn psi_inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for m in test_monoids() {
            for f in test_fields() {
                let s = Sampler::new(&f, &m);
                for d in 1..=3 {
                    for _ in 0..5 {
                        let a = s.matrix(&mut rng, d, 3);
                        let rule = psi(&a);
                        let mut support = a.support();
                        support.push(s.element(&mut rng));
                        support.sort();
                        support.dedup();
                        let one = [m.identity()];
                        let back = psi_inverse(&f, &m, d, &support, |c| rule.apply(c, &one), 1)
                            .unwrap();
                        assert_eq!(back, a);
                    }
                }
            }
        }
    }

    #[test]
    fn psi_inverse_of_shift_by_p() {
        let f = Field::prime(2).unwrap();
        let m = Monoid::bicyclic();
        let (p, q) = (Elem::Bicyclic(0, 1), Elem::Bicyclic(1, 0));
        let support = [p.clone(), q];
        let shift = |c: &VectorPattern| {
            let one = m.identity();
            VectorPattern::from_cells(&m, [(one.clone(), c.get(&m.op(&p, &one)).unwrap().clone())])
        };
        let a = psi_inverse(&f, &m, 1, &support, shift, 0).unwrap();
        assert_eq!(a.to_string(), "1\np^1\n");
        let zero = |_: &VectorPattern| VectorPattern::zero(&f, &m, 1, &[m.identity()]);
        assert!(psi_inverse(&f, &m, 1, &support, zero, 0).unwrap().is_zero());
    }

    #[test]
    fn psi_inverse_rejects_nonlinear_maps() {
        let f = Field::prime(3).unwrap();
        let m = Monoid::cyclic(2).unwrap();
        let support = m.elements().unwrap();
        let square = |c: &VectorPattern| {
            let one = m.identity();
            let v = &c.get(&one).unwrap()[0];
            VectorPattern::from_cells(&m, [(one, vec![f.mul(v, v)])])
        };
        assert!(matches!(
            psi_inverse(&f, &m, 1, &support, square, 3),
            Err(Error::NotLinear(_))
        ));
        let affine = |c: &VectorPattern| {
            let one = m.identity();
            let v = &c.get(&one).unwrap()[0];
            VectorPattern::from_cells(&m, [(one, vec![f.add(v, &f.one())])])
        };
        assert!(matches!(
            psi_inverse(&f, &m, 1, &support, affine, 3),
            Err(Error::NotLinear(_))
        ));
    }

    #[test]
    fn compose_is_anti_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for m in test_monoids() {
            for f in test_fields() {
                let s = Sampler::new(&f, &m);
                for d in 1..=2 {
                    for _ in 0..5 {
                        let a = s.matrix(&mut rng, d, 2);
                        let b = s.matrix(&mut rng, d, 2);
                        let (ra, rb) = (psi(&a), psi(&b));
                        let composed = rb.compose(&ra).unwrap();
                        assert_eq!(composed.matrix(), &a.mul(&b).unwrap());
                        let w = window_for(&s, &mut rng);
                        let mid = required_domain(&m, &w, &b.support()).unwrap();
                        let dom = required_domain(&m, &mid, &a.support()).unwrap();
                        let c = s.vector_pattern(&mut rng, d, &dom);
                        let seq = rb.apply(&ra.apply(&c, &mid).unwrap(), &w).unwrap();
                        assert_eq!(composed.apply(&c, &w).unwrap(), seq);
                    }
                }
            }
        }
    }

    #[test]
    fn bicyclic_q_after_p_is_identity() {
        let f = Field::prime(2).unwrap();
        let m = Monoid::bicyclic();
        let p = psi(&AlgMatrix::scalar(AlgElem::basis(&f, &m, Elem::Bicyclic(0, 1))));
        let q = psi(&AlgMatrix::scalar(AlgElem::basis(&f, &m, Elem::Bicyclic(1, 0))));
        assert!(q.compose(&p).unwrap().matrix().is_identity());
        assert!(!p.compose(&q).unwrap().matrix().is_identity());
    }

    #[test]
    fn dependence_reduction_recovers_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for m in test_monoids() {
            for f in test_fields() {
                let s = Sampler::new(&f, &m);
                for d in 1..=2 {
                    for _ in 0..5 {
                        let a = s.matrix(&mut rng, d, 3);
                        let mut cands = a.support();
                        cands.extend(s.pool().iter().take(3).cloned());
                        cands.sort();
                        cands.dedup();
                        assert_eq!(psi(&a).dependence_reduction(&cands).unwrap(), a.support());
                    }
                }
            }
        }
    }

    #[test]
    fn symbolic_rule_matches_linear_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = Field::prime(2).unwrap();
        for m in [Monoid::cyclic(2).unwrap(), Monoid::cyclic(3).unwrap()] {
            let els = m.elements().unwrap();
            let s = Sampler::new(&f, &m);
            for _ in 0..10 {
                let a = s.matrix(&mut rng, 1, 3);
                let rule = psi(&a);
                let ca = rule.to_ca_rule(els.clone()).unwrap();
                let (mem, _) = ca.minimal_memory();
                let mut mem = mem;
                mem.sort();
                assert_eq!(mem, a.support());
                let v = rule.injective_surjective_finite().unwrap();
                assert_eq!(ca.injective(1 << 20).unwrap().holds(), v.injective);
                assert_eq!(ca.surjective(1 << 20).unwrap().holds(), v.surjective);
            }
        }
    }

    #[test]
    fn finite_verdicts() {
        let f = Field::prime(2).unwrap();
        let m = Monoid::cyclic(3).unwrap();
        let id = psi(&AlgMatrix::identity(2, &f, &m)).injective_surjective_finite().unwrap();
        assert_eq!((id.injective, id.surjective, id.rank, id.size), (true, true, 6, 6));
        let zero = psi(&AlgMatrix::zero(2, &f, &m)).injective_surjective_finite().unwrap();
        assert!(!zero.injective && !zero.surjective);
        assert!(matches!(
            psi(&AlgMatrix::identity(1, &Field::rationals(), &m)).injective_surjective_finite(),
            Err(Error::NotFinite(_))
        ));
    }
}
