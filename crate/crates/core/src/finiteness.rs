//! Direct and stable finiteness probes.
//!
//! For a finite monoid, `(K^d)^M` is a finite-dimensional right module over
//! `Mat_d(K[M])` through `v |-> v * A`. Flattening writes this action as a
//! scalar matrix of size `d|M|` acting on row vectors, with basis vectors
//! `e_(i,m)` ordered by element index first and component second. With
//! row vectors, `flatten(AB) = flatten(A) flatten(B)`.

use rand::Rng;

use crate::algebra::{AlgElem, AlgMatrix};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::ScalarMatrix;
use crate::monoid::{Elem, Monoid};
use crate::sample::Sampler;
use crate::Verdict;

/// Scalar matrix of `v |-> v * A` in the `(element, component)` basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatMatrix {
    dim: usize,
    monoid: Monoid,
    matrix: ScalarMatrix,
}

impl FlatMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn mul(&self, other: &FlatMatrix) -> Result<FlatMatrix> {
        if self.dim != other.dim || self.monoid != other.monoid {
            return Err(Error::CarrierMismatch);
        }
        Ok(FlatMatrix {
            dim: self.dim,
            monoid: self.monoid.clone(),
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    /// Recovers the algebra matrix from the column block at `1_M`:
    /// `alpha_(i,j,s)` is the entry in row `(i, s)`, column `(j, 1_M)`.
    /// Fails if the flat matrix is not in the image of [`flatten`].
    pub fn unflatten(&self) -> Result<AlgMatrix> {
        let field = self.matrix.field();
        let d = self.dim;
        let els = self.monoid.elements()?;
        let one = self.monoid.index_of(&self.monoid.identity()).expect("finite");
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let terms = els.iter().enumerate().map(|(k, s)| {
                    (s.clone(), self.matrix.get(k * d + i, one * d + j).clone())
                });
                entries.push(AlgElem::from_terms(field, &self.monoid, terms)?);
            }
        }
        let a = AlgMatrix::from_entries(d, entries)?;
        if flatten(&a)? != *self {
            return Err(Error::Precondition(
                "flat matrix is not the image of an algebra matrix".into(),
            ));
        }
        Ok(a)
    }
}

fn basis_index(dim: usize, element: usize, component: usize) -> usize {
    element * dim + component
}

pub fn flatten(a: &AlgMatrix) -> Result<FlatMatrix> {
    let monoid = a.monoid();
    let field = a.field();
    let els = monoid.elements()?;
    let d = a.dim();
    let n = d * els.len();
    let mut flat = ScalarMatrix::zero(field, n);
    for (mi, m) in els.iter().enumerate() {
        for i in 0..d {
            for j in 0..d {
                for (s, coeff) in a.entry(i, j).terms() {
                    let src = monoid.index_of(&monoid.op(s, m)).expect("finite");
                    let cell = flat.get_mut(basis_index(d, src, i), basis_index(d, mi, j));
                    *cell = field.add(cell, coeff);
                }
            }
        }
    }
    Ok(FlatMatrix {
        dim: d,
        monoid: monoid.clone(),
        matrix: flat,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSidedCertificate {
    /// `BA = I_d` by direct multiplication.
    pub direct: bool,
    /// `flatten(A)` has full rank.
    pub full_rank: bool,
    pub rank: usize,
    pub size: usize,
}

impl TwoSidedCertificate {
    pub fn certified(&self) -> bool {
        self.direct && self.full_rank
    }
}

/// Given `AB = I_d` over a finite monoid, checks `BA = I_d` directly and
/// through the rank of `flatten(A)`.
pub fn certify_two_sided(a: &AlgMatrix, b: &AlgMatrix) -> Result<TwoSidedCertificate> {
    if !a.monoid().is_finite() {
        return Err(Error::InfiniteMonoid(a.monoid().to_string()));
    }
    if !a.mul(b)?.is_identity() {
        return Err(Error::Precondition("AB is not the identity".into()));
    }
    let flat = flatten(a)?;
    let rank = flat.rank();
    Ok(TwoSidedCertificate {
        direct: b.mul(a)?.is_identity(),
        full_rank: rank == flat.size(),
        rank,
        size: flat.size(),
    })
}

/// `A = [p]`, `B = [q]` over the bicyclic monoid, verified to satisfy
/// `AB = I_1` and `BA != I_1`.
pub fn bicyclic_witness(field: &Field) -> Result<(AlgMatrix, AlgMatrix)> {
    let m = Monoid::bicyclic();
    let a = AlgMatrix::scalar(AlgElem::basis(field, &m, Elem::Bicyclic(0, 1)));
    let b = AlgMatrix::scalar(AlgElem::basis(field, &m, Elem::Bicyclic(1, 0)));
    let ab = a.mul(&b)?;
    let ba = b.mul(&a)?;
    if !ab.is_identity() || ba.is_identity() {
        return Err(Error::Precondition("bicyclic relations failed".into()));
    }
    Ok((a, b))
}

/// Inverse of `A` computed by inverting its flattening.
pub fn inverse_via_flattening(a: &AlgMatrix) -> Result<Option<AlgMatrix>> {
    let flat = flatten(a)?;
    match flat.matrix.inverse() {
        None => Ok(None),
        Some(inv) => FlatMatrix {
            dim: flat.dim,
            monoid: flat.monoid,
            matrix: inv,
        }
        .unflatten()
        .map(Some),
    }
}

/// A product of `factors` random elementary units of `Mat_d(K[M])`:
/// transvections `I + lambda m E_ij` (i != j), diagonal scalings by nonzero
/// field elements, and, for monoid units `u`, `diag(..., u, ...)`.
pub fn random_unit<R: Rng>(sampler: &Sampler, rng: &mut R, field: &Field, monoid: &Monoid, dim: usize, factors: usize) -> Result<AlgMatrix> {
    let units: Vec<Elem> = match monoid.elements() {
        Ok(els) => els
            .into_iter()
            .filter(|u| els_has_inverse(monoid, u))
            .collect(),
        Err(_) => vec![monoid.identity()],
    };
    let mut acc = AlgMatrix::identity(dim, field, monoid);
    for _ in 0..factors {
        let mut entries: Vec<AlgElem> = AlgMatrix::identity(dim, field, monoid).entries().to_vec();
        let kind = if dim == 1 { 1 } else { rng.gen_range(0..3) };
        match kind {
            0 => {
                let i = rng.gen_range(0..dim);
                let j = (i + rng.gen_range(1..dim)) % dim;
                let m = sampler.element(rng);
                let lambda = sampler.nonzero_scalar(rng);
                entries[i * dim + j] = AlgElem::from_terms(field, monoid, [(m, lambda)])?;
            }
            1 => {
                let i = rng.gen_range(0..dim);
                let u = units[rng.gen_range(0..units.len())].clone();
                let lambda = sampler.nonzero_scalar(rng);
                entries[i * dim + i] = AlgElem::from_terms(field, monoid, [(u, lambda)])?;
            }
            _ => {
                let i = rng.gen_range(0..dim);
                let lambda = sampler.nonzero_scalar(rng);
                entries[i * dim + i] = AlgElem::from_terms(field, monoid, [(monoid.identity(), lambda)])?;
            }
        }
        acc = acc.mul(&AlgMatrix::from_entries(dim, entries)?)?;
    }
    Ok(acc)
}

fn els_has_inverse(monoid: &Monoid, u: &Elem) -> bool {
    let one = monoid.identity();
    monoid
        .elements()
        .map(|els| els.iter().any(|v| monoid.op(u, v) == one && monoid.op(v, u) == one))
        .unwrap_or(false)
}

/// Number of matrices with entry supports inside `support`.
pub fn matrix_space_size(field: &Field, support: &[Elem], dim: usize) -> Result<Option<u64>> {
    let q = field.order().ok_or_else(|| Error::NotFinite(field.to_string()))?;
    Ok(q.checked_pow((dim * dim * support.len()) as u32))
}

/// The matrix with coefficient vector `code` in base `q`: digit
/// `(i * d + j) * |S| + k` (most significant first) is the coefficient of
/// `support[k]` in entry `(i, j)`.
pub fn matrix_from_code(field: &Field, monoid: &Monoid, support: &[Elem], dim: usize, mut code: u64) -> Result<AlgMatrix> {
    let q = field.order().ok_or_else(|| Error::NotFinite(field.to_string()))?;
    let n = dim * dim * support.len();
    let mut digits = vec![0u64; n];
    for slot in digits.iter_mut().rev() {
        *slot = code % q;
        code /= q;
    }
    let entries = (0..dim * dim)
        .map(|e| {
            AlgElem::from_terms(
                field,
                monoid,
                support
                    .iter()
                    .enumerate()
                    .map(|(k, s)| (s.clone(), Scalar::Finite(digits[e * support.len() + k]))),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    AlgMatrix::from_entries(dim, entries)
}

/// Exhaustive search, at the level of matrices, for `A, B` with entry
/// supports in `support`, `AB = I_d` and `BA != I_d`. Pairs are visited in
/// lexicographic order of the coefficient codes of `(A, B)`.
pub fn exhaustive_matrix_search(
    field: &Field,
    monoid: &Monoid,
    support: &[Elem],
    dim: usize,
    budget: u64,
) -> Result<Verdict<(AlgMatrix, AlgMatrix)>> {
    let per = matrix_space_size(field, support, dim)?;
    let total = per.and_then(|n| n.checked_mul(n)).filter(|&t| t <= budget);
    let (Some(per), Some(_)) = (per, total) else {
        return Err(Error::BudgetExceeded {
            required: format!("{}^{}", field.order().unwrap_or(0), 2 * dim * dim * support.len()),
            budget,
        });
    };
    let all: Vec<AlgMatrix> = (0..per)
        .map(|code| matrix_from_code(field, monoid, support, dim, code))
        .collect::<Result<_>>()?;
    for a in &all {
        for b in &all {
            if a.mul(b)?.is_identity() && !b.mul(a)?.is_identity() {
                return Ok(Verdict::Fails((a.clone(), b.clone())));
            }
        }
    }
    Ok(Verdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::enumerate_monoids;
    use crate::pattern::{convolve_matrix, VectorPattern};
    use crate::sample::test_fields;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn finite_monoids() -> Vec<Monoid> {
        let mut out = vec![Monoid::cyclic(2).unwrap(), Monoid::cyclic(3).unwrap()];
        out.extend(enumerate_monoids(3).unwrap());
        out
    }

    #[test]
    fn flatten_identity_and_zero() {
        let f = Field::prime(3).unwrap();
        for m in finite_monoids() {
            for d in 1..=2 {
                let n = d * m.order().unwrap();
                assert!(flatten(&AlgMatrix::identity(d, &f, &m)).unwrap().matrix().is_identity());
                assert!(flatten(&AlgMatrix::zero(d, &f, &m)).unwrap().matrix().is_zero());
                assert_eq!(flatten(&AlgMatrix::zero(d, &f, &m)).unwrap().size(), n);
            }
        }
        assert!(matches!(
            flatten(&AlgMatrix::identity(1, &f, &Monoid::bicyclic())),
            Err(Error::InfiniteMonoid(_))
        ));
    }

    #[test]
    fn flatten_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for m in finite_monoids() {
            for spec in ["2", "3"] {
                let f = Field::from_spec(spec).unwrap();
                let s = Sampler::new(&f, &m);
                for d in 1..=2 {
                    for _ in 0..10 {
                        let a = s.matrix(&mut rng, d, 3);
                        let b = s.matrix(&mut rng, d, 3);
                        let lhs = flatten(&a.mul(&b).unwrap()).unwrap();
                        let rhs = flatten(&a).unwrap().mul(&flatten(&b).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn flatten_matches_convolution_on_basis_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let f = Field::prime(3).unwrap();
        for m in finite_monoids() {
            let els = m.elements().unwrap();
            let s = Sampler::new(&f, &m);
            let d = 2;
            let a = s.matrix(&mut rng, d, 3);
            let flat = flatten(&a).unwrap();
            for (xi, x) in els.iter().enumerate() {
                for i in 0..d {
                    let c = VectorPattern::indicator(&f, &m, d, &els, i, x).unwrap();
                    let out = convolve_matrix(&c, &a, &els).unwrap();
                    for (mi, site) in els.iter().enumerate() {
                        for j in 0..d {
                            assert_eq!(
                                &out.get(site).unwrap()[j],
                                flat.matrix().get(xi * d + i, mi * d + j)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn flatten_is_faithful_on_basis_matrices() {
        let f = Field::prime(2).unwrap();
        for m in finite_monoids() {
            let els = m.elements().unwrap();
            let d = 2;
            let mut seen = Vec::new();
            for e in 0..d * d {
                for s in &els {
                    let mut entries = AlgMatrix::zero(d, &f, &m).entries().to_vec();
                    entries[e] = AlgElem::basis(&f, &m, s.clone());
                    let a = AlgMatrix::from_entries(d, entries).unwrap();
                    let flat = flatten(&a).unwrap();
                    assert_eq!(flat.unflatten().unwrap(), a);
                    assert!(!seen.contains(&flat));
                    seen.push(flat);
                }
            }
        }
    }

    #[test]
    fn certify_identity_and_constructed_units() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for m in finite_monoids() {
            for f in test_fields() {
                let s = Sampler::new(&f, &m);
                for d in 1..=2 {
                    let id = AlgMatrix::identity(d, &f, &m);
                    assert!(certify_two_sided(&id, &id).unwrap().certified());
                    let a = random_unit(&s, &mut rng, &f, &m, d, 4).unwrap();
                    let b = inverse_via_flattening(&a).unwrap().expect("units are invertible");
                    let cert = certify_two_sided(&a, &b).unwrap();
                    assert!(cert.certified(), "{a:?} / {b:?}");
                }
            }
        }
    }

    #[test]
    fn certify_rejects_bad_inputs() {
        let f = Field::prime(2).unwrap();
        let m = Monoid::cyclic(2).unwrap();
        let zero = AlgMatrix::zero(1, &f, &m);
        assert!(matches!(certify_two_sided(&zero, &zero), Err(Error::Precondition(_))));
        let (a, b) = bicyclic_witness(&f).unwrap();
        assert!(matches!(certify_two_sided(&a, &b), Err(Error::InfiniteMonoid(_))));
    }

    #[test]
    fn bicyclic_witness_over_fields() {
        for f in test_fields() {
            let (a, b) = bicyclic_witness(&f).unwrap();
            assert!(a.mul(&b).unwrap().is_identity());
            let ba = b.mul(&a).unwrap();
            assert_eq!(ba.entry(0, 0).to_string(), "q^1p^1");
        }
    }

    #[test]
    fn matrix_search_finds_bicyclic_witness() {
        let f = Field::prime(2).unwrap();
        let b = Monoid::bicyclic();
        let support = [Elem::Bicyclic(0, 1), Elem::Bicyclic(1, 0)];
        match exhaustive_matrix_search(&f, &b, &support, 1, 1 << 16).unwrap() {
            Verdict::Fails((a, bb)) => {
                assert_eq!(a.entry(0, 0).to_string(), "p^1");
                assert_eq!(bb.entry(0, 0).to_string(), "q^1");
            }
            Verdict::Holds => panic!("bicyclic monoid is not directly finite"),
        }
        for m in finite_monoids() {
            let els = m.elements().unwrap();
            assert!(exhaustive_matrix_search(&f, &m, &els, 1, 1 << 16).unwrap().holds());
        }
        assert!(matches!(
            exhaustive_matrix_search(&f, &Monoid::cyclic(3).unwrap(), &Monoid::cyclic(3).unwrap().elements().unwrap(), 2, 1 << 16),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
