//! The sentence `psi_S = exists X exists Y : P(X,Y) and not P(Y,X)` as a
//! polynomial system, and an exhaustive model finder over finite fields.
//!
//! Variables `x_(i,j,s)` and `y_(i,j,s)` encode matrices `A`, `B` with entry
//! supports in `S`; `P(X,Y)_(i,j,m) = sum_k sum_(st=m) x_(i,k,s) y_(k,j,t)`
//! is the coefficient of `m` in `(AB)_ij`, equated to 1 on the diagonal at
//! `1_M` and to 0 elsewhere.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElem, AlgMatrix};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::monoid::{Elem, Monoid};

pub const DEFAULT_SENTENCE_BUDGET: u64 = 1 << 24;

/// The quantified data of `psi_S`: monoid, ordered support, dimension and
/// the product set `S^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceSpec {
    pub monoid: Monoid,
    pub support: Vec<Elem>,
    pub dim: usize,
    pub square: Vec<Elem>,
}

impl SentenceSpec {
    /// `d^2 |S|`, the size of each of the blocks `X` and `Y`.
    pub fn block_size(&self) -> usize {
        self.dim * self.dim * self.support.len()
    }

    pub fn x_index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.support.len() + k
    }

    pub fn y_index(&self, i: usize, j: usize, k: usize) -> usize {
        self.block_size() + self.x_index(i, j, k)
    }

    /// Reads `A` from the x-block and `B` from the y-block of an assignment.
    pub fn decode(&self, field: &Field, assignment: &[Scalar]) -> Result<(AlgMatrix, AlgMatrix)> {
        if assignment.len() != 2 * self.block_size() {
            return Err(Error::MissingVariables {
                expected: 2 * self.block_size(),
                got: assignment.len(),
            });
        }
        let d = self.dim;
        let read = |offset: usize| -> Result<AlgMatrix> {
            let entries = (0..d * d)
                .map(|e| {
                    let terms = self.support.iter().enumerate().map(|(k, s)| {
                        (s.clone(), assignment[offset + e * self.support.len() + k].clone())
                    });
                    AlgElem::from_terms(field, &self.monoid, terms)
                })
                .collect::<Result<Vec<_>>>()?;
            AlgMatrix::from_entries(d, entries)
        };
        Ok((read(0)?, read(self.block_size())?))
    }
}

/// A product of two variables with an integer coefficient, serialized as
/// `[coefficient, left, right]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial(pub i64, pub usize, pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation {
    /// `[i, j, m]` with 1-based `i`, `j` and the element name `m`.
    pub label: (usize, usize, String),
    pub monomials: Vec<Monomial>,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub d: usize,
    pub support: Vec<String>,
    pub square: Vec<String>,
    /// Set when `1_M` is not in `S^2`; the diagonal equations are then `0 = 1`.
    pub identity_missing: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

/// `P(X,Y)` as `equations` (all must hold) and `P(Y,X)` as `negated_block`
/// (at least one must fail).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySystem {
    pub meta: Meta,
    pub variables: Vec<String>,
    pub equations: Vec<Equation>,
    pub negated_block: Vec<Equation>,
}

pub fn build_sentence(monoid: &Monoid, support: &[Elem], dim: usize) -> Result<(SentenceSpec, PolySystem)> {
    if support.is_empty() {
        return Err(Error::Precondition("support must be nonempty".into()));
    }
    if dim == 0 {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    for (k, s) in support.iter().enumerate() {
        monoid.check(s)?;
        if support[..k].contains(s) {
            return Err(Error::DuplicateSupport(monoid.name(s)));
        }
    }
    let square = monoid.product_set(support, support)?;
    let spec = SentenceSpec {
        monoid: monoid.clone(),
        support: support.to_vec(),
        dim,
        square: square.clone(),
    };
    let one = monoid.identity();
    let identity_missing = !square.contains(&one);
    let names: Vec<String> = support.iter().map(|s| monoid.name(s)).collect();

    let mut variables = Vec::with_capacity(2 * spec.block_size());
    for block in ["x", "y"] {
        for i in 0..dim {
            for j in 0..dim {
                for name in &names {
                    variables.push(format!("{block}[{},{},{name}]", i + 1, j + 1));
                }
            }
        }
    }

    let mut sites = square.clone();
    if identity_missing {
        sites.push(one.clone());
        sites.sort();
    }
    let block = |swap: bool| {
        let mut eqs = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                for m in &sites {
                    let mut monomials = Vec::new();
                    for k in 0..dim {
                        for (si, s) in support.iter().enumerate() {
                            for (ti, t) in support.iter().enumerate() {
                                if monoid.op(s, t) != *m {
                                    continue;
                                }
                                let (l, r) = if swap {
                                    (spec.y_index(i, k, si), spec.x_index(k, j, ti))
                                } else {
                                    (spec.x_index(i, k, si), spec.y_index(k, j, ti))
                                };
                                monomials.push(Monomial(1, l, r));
                            }
                        }
                    }
                    let diagonal = i == j && *m == one;
                    if !diagonal && monomials.is_empty() {
                        continue;
                    }
                    eqs.push(Equation {
                        label: (i + 1, j + 1, monoid.name(m)),
                        monomials,
                        rhs: diagonal as i64,
                    });
                }
            }
        }
        eqs
    };

    let sys = PolySystem {
        meta: Meta {
            d: dim,
            support: names,
            square: square.iter().map(|m| monoid.name(m)).collect(),
            identity_missing,
            field: None,
        },
        variables,
        equations: block(false),
        negated_block: block(true),
    };
    Ok((spec, sys))
}

impl PolySystem {
    pub fn with_field(mut self, field: &Field) -> Self {
        self.meta.field = Some(field.spec_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<PolySystem> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))
    }

    /// The quantified formula, one conjunct per line.
    pub fn to_text(&self) -> String {
        let half = self.variables.len() / 2;
        let render = |eq: &Equation| {
            let lhs = if eq.monomials.is_empty() {
                "0".to_string()
            } else {
                eq.monomials
                    .iter()
                    .map(|Monomial(c, l, r)| {
                        let prod = format!("{}*{}", self.variables[*l], self.variables[*r]);
                        if *c == 1 { prod } else { format!("{c}*{prod}") }
                    })
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            format!("{lhs} = {}", eq.rhs)
        };
        let mut out = String::new();
        writeln!(out, "exists {}", self.variables[..half].join(" ")).unwrap();
        writeln!(out, "exists {} :", self.variables[half..].join(" ")).unwrap();
        for (n, eq) in self.equations.iter().enumerate() {
            let op = if n == 0 { "   " } else { " ∧ " };
            writeln!(out, "{op}({})", render(eq)).unwrap();
        }
        writeln!(out, " ∧ ¬(").unwrap();
        for (n, eq) in self.negated_block.iter().enumerate() {
            let op = if n == 0 { "     " } else { "   ∧ " };
            writeln!(out, "{op}({})", render(eq)).unwrap();
        }
        writeln!(out, "   )").unwrap();
        out
    }
}

/// Outcome of [`find_model`]. `scanned` counts assignments up to and
/// including the witness, or the whole space when there is none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub space: u64,
    pub scanned: u64,
    pub model: Option<Model>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    pub assignment: Vec<Scalar>,
    pub a: AlgMatrix,
    pub b: AlgMatrix,
}

/// Scalar arithmetic on ranks, tabulated for small fields.
struct RankArith {
    field: Field,
    q: u64,
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl RankArith {
    fn new(field: &Field, q: u64) -> Self {
        let (mut add, mut mul) = (Vec::new(), Vec::new());
        if q <= 256 {
            for a in 0..q {
                for b in 0..q {
                    add.push(Self::slow(field, a, b, true) as u32);
                    mul.push(Self::slow(field, a, b, false) as u32);
                }
            }
        }
        RankArith {
            field: field.clone(),
            q,
            add,
            mul,
        }
    }

    fn slow(field: &Field, a: u64, b: u64, add: bool) -> u64 {
        let (x, y) = (field.from_rank(a).expect("rank"), field.from_rank(b).expect("rank"));
        let z = if add { field.add(&x, &y) } else { field.mul(&x, &y) };
        field.rank(&z).expect("finite")
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        if self.add.is_empty() {
            Self::slow(&self.field, a, b, true)
        } else {
            self.add[(a * self.q + b) as usize] as u64
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        if self.mul.is_empty() {
            Self::slow(&self.field, a, b, false)
        } else {
            self.mul[(a * self.q + b) as usize] as u64
        }
    }

    fn eval(&self, eq: &Equation, vals: &[u64]) -> u64 {
        let mut acc = 0;
        for &Monomial(c, l, r) in &eq.monomials {
            let mut term = self.mul(vals[l], vals[r]);
            if c != 1 {
                let coeff = self.field.rank(&self.field.from_int(c)).expect("finite");
                term = self.mul(coeff, term);
            }
            acc = self.add(acc, term);
        }
        acc
    }

    fn satisfies(&self, sys: &PolySystem, rhs: &[u64], neg_rhs: &[u64], vals: &[u64]) -> bool {
        sys.equations
            .iter()
            .zip(rhs)
            .all(|(eq, &r)| self.eval(eq, vals) == r)
            && sys
                .negated_block
                .iter()
                .zip(neg_rhs)
                .any(|(eq, &r)| self.eval(eq, vals) != r)
    }
}

/// Searches assignments in increasing order of their code, where variable 0
/// is the most significant base-`q` digit and digits are scalar ranks. The
/// space is split into contiguous chunks, one per worker, and the least
/// satisfying code over all chunks is returned, so the result does not depend
/// on `workers`.
pub fn find_model(spec: &SentenceSpec, sys: &PolySystem, field: &Field, budget: u64, workers: usize) -> Result<SolveReport> {
    let q = field.order().ok_or_else(|| Error::NotFinite(field.to_string()))?;
    let n = sys.variables.len();
    if n != 2 * spec.block_size() {
        return Err(Error::MissingVariables {
            expected: 2 * spec.block_size(),
            got: n,
        });
    }
    let space = q
        .checked_pow(n as u32)
        .filter(|&s| s <= budget)
        .ok_or_else(|| Error::BudgetExceeded {
            required: format!("{q}^{n}"),
            budget,
        })?;
    let arith = RankArith::new(field, q);
    let to_rank = |v: i64| field.rank(&field.from_int(v)).expect("finite");
    let rhs: Vec<u64> = sys.equations.iter().map(|e| to_rank(e.rhs)).collect();
    let neg_rhs: Vec<u64> = sys.negated_block.iter().map(|e| to_rank(e.rhs)).collect();

    let scan = |start: u64, end: u64| -> Option<u64> {
        if start >= end {
            return None;
        }
        let mut vals = vec![0u64; n];
        let mut c = start;
        for slot in vals.iter_mut().rev() {
            *slot = c % q;
            c /= q;
        }
        let mut code = start;
        loop {
            if arith.satisfies(sys, &rhs, &neg_rhs, &vals) {
                return Some(code);
            }
            code += 1;
            if code == end {
                return None;
            }
            for slot in vals.iter_mut().rev() {
                *slot += 1;
                if *slot < q {
                    break;
                }
                *slot = 0;
            }
        }
    };

    let workers = workers.max(1) as u64;
    let chunk = space.div_ceil(workers);
    let found = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let (start, end) = ((w * chunk).min(space), ((w + 1) * chunk).min(space));
                let scan = &scan;
                scope.spawn(move || scan(start, end))
            })
            .collect();
        handles
            .into_iter()
            .filter_map(|h| h.join().expect("worker panicked"))
            .min()
    });

    let Some(code) = found else {
        return Ok(SolveReport {
            space,
            scanned: space,
            model: None,
        });
    };
    let mut assignment = vec![field.zero(); n];
    let mut c = code;
    for slot in assignment.iter_mut().rev() {
        *slot = field.from_rank(c % q)?;
        c /= q;
    }
    let (a, b) = spec.decode(field, &assignment)?;
    if !a.mul(&b)?.is_identity() || b.mul(&a)?.is_identity() {
        return Err(Error::Precondition("decoded witness does not satisfy AB = I, BA != I".into()));
    }
    Ok(SolveReport {
        space,
        scanned: code + 1,
        model: Some(Model { assignment, a, b }),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    /// Index of the first equation of `P(X,Y)` that fails, if any.
    pub failed_equation: Option<usize>,
    /// Whether some equation of `P(Y,X)` fails, as the negation requires.
    pub negation_holds: bool,
}

impl CheckReport {
    pub fn satisfied(&self) -> bool {
        self.failed_equation.is_none() && self.negation_holds
    }
}

/// Evaluates both blocks on `assignment` with ordinary field arithmetic.
pub fn check_model(sys: &PolySystem, field: &Field, assignment: &[Scalar]) -> Result<CheckReport> {
    if assignment.len() != sys.variables.len() {
        return Err(Error::MissingVariables {
            expected: sys.variables.len(),
            got: assignment.len(),
        });
    }
    for v in assignment {
        field.check(v)?;
    }
    let holds = |eq: &Equation| {
        let lhs = eq.monomials.iter().fold(field.zero(), |acc, Monomial(c, l, r)| {
            let term = field.mul(&field.from_int(*c), &field.mul(&assignment[*l], &assignment[*r]));
            field.add(&acc, &term)
        });
        lhs == field.from_int(eq.rhs)
    };
    Ok(CheckReport {
        failed_equation: sys.equations.iter().position(|eq| !holds(eq)),
        negation_holds: sys.negated_block.iter().any(|eq| !holds(eq)),
    })
}
