//! Sparse arithmetic in the monoid algebra `K[M]` and in `Mat_d(K[M])`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::monoid::{Elem, Monoid};

/// A finite linear combination of monoid elements. Terms are sorted by
/// element and never carry a zero coefficient, so equality is syntactic.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgElem {
    field: Field,
    monoid: Monoid,
    terms: Vec<(Elem, Scalar)>,
}

impl AlgElem {
    pub fn zero(field: &Field, monoid: &Monoid) -> Self {
        AlgElem {
            field: field.clone(),
            monoid: monoid.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(field: &Field, monoid: &Monoid) -> Self {
        Self::basis(field, monoid, monoid.identity())
    }

    /// The basis element `m` (coefficient 1). `m` is assumed to belong to `monoid`.
    pub fn basis(field: &Field, monoid: &Monoid, m: Elem) -> Self {
        AlgElem {
            field: field.clone(),
            monoid: monoid.clone(),
            terms: vec![(m, field.one())],
        }
    }

    /// Collects terms, merging repeated elements and dropping zeros.
    pub fn from_terms(
        field: &Field,
        monoid: &Monoid,
        terms: impl IntoIterator<Item = (Elem, Scalar)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<Elem, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            monoid.check(&m)?;
            field.check(&c)?;
            accumulate(field, &mut acc, m, c);
        }
        Ok(Self::from_map(field, monoid, acc))
    }

    fn from_map(field: &Field, monoid: &Monoid, acc: BTreeMap<Elem, Scalar>) -> Self {
        AlgElem {
            field: field.clone(),
            monoid: monoid.clone(),
            terms: acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn terms(&self) -> &[(Elem, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Elem) -> Scalar {
        match self.terms.binary_search_by(|(e, _)| e.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn support(&self) -> Vec<Elem> {
        self.terms.iter().map(|(m, _)| m.clone()).collect()
    }

    fn same_carriers(&self, other: &Self) -> Result<()> {
        if self.field == other.field && self.monoid == other.monoid {
            Ok(())
        } else {
            Err(Error::CarrierMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_carriers(other)?;
        let mut acc: BTreeMap<Elem, Scalar> = self.terms.iter().cloned().collect();
        for (m, c) in &other.terms {
            accumulate(&self.field, &mut acc, m.clone(), c.clone());
        }
        Ok(Self::from_map(&self.field, &self.monoid, acc))
    }

    pub fn neg(&self) -> Self {
        AlgElem {
            field: self.field.clone(),
            monoid: self.monoid.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, lambda: &Scalar) -> Result<Self> {
        self.field.check(lambda)?;
        let f = &self.field;
        Ok(AlgElem {
            field: f.clone(),
            monoid: self.monoid.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f.mul(lambda, c)))
                .filter(|(_, c)| !f.is_zero(c))
                .collect(),
        })
    }

    /// Convolution product: `(sum a_m m)(sum b_n n) = sum a_m b_n (mn)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_carriers(other)?;
        let f = &self.field;
        let mut acc: BTreeMap<Elem, Scalar> = BTreeMap::new();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                accumulate(f, &mut acc, self.monoid.op(m, n), f.mul(a, b));
            }
        }
        Ok(Self::from_map(f, &self.monoid, acc))
    }

    /// Parses the algebra literal grammar: `term (+ term)*` where a term is
    /// `[coeff *] element`, optionally preceded by `-`. Coefficients that
    /// contain `+` or `-` (extension-field polynomials) must be parenthesized.
    /// A bare field literal is read as a multiple of the identity; `0` is zero.
    pub fn parse(field: &Field, monoid: &Monoid, text: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidMonoid(format!("bad algebra literal `{text}`: {msg}"));
        let mut terms = Vec::new();
        for (negative, term) in split_terms(text).map_err(|m| bad(m.into()))? {
            let (coeff, elem) = match split_top_level(&term, '*') {
                Some((c, e)) => (Some(strip_parens(c)), e.to_string()),
                None => (None, term.clone()),
            };
            let (mut c, m) = match coeff {
                Some(c) => (field.parse_scalar(c)?, monoid.parse_elem(&elem)?),
                None => match monoid.parse_elem(&elem) {
                    Ok(m) => (field.one(), m),
                    Err(e) => match field.parse_scalar(strip_parens(&elem)) {
                        Ok(c) => (c, monoid.identity()),
                        Err(_) => return Err(e),
                    },
                },
            };
            if negative {
                c = field.neg(&c);
            }
            terms.push((m, c));
        }
        Self::from_terms(field, monoid, terms)
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let name = self.monoid.name(m);
                if self.field.is_one(c) {
                    name
                } else {
                    let lit = self.field.format(c);
                    if lit.contains('+') || lit.starts_with('-') {
                        format!("({lit})*{name}")
                    } else {
                        format!("{lit}*{name}")
                    }
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgElem({self})")
    }
}

fn accumulate(field: &Field, acc: &mut BTreeMap<Elem, Scalar>, m: Elem, c: Scalar) {
    match acc.get_mut(&m) {
        Some(v) => *v = field.add(v, &c),
        None => {
            acc.insert(m, c);
        }
    }
}

fn strip_parens(s: &str) -> &str {
    let s = s.trim();
    if s.starts_with('(') && s.ends_with(')') {
        &s[1..s.len() - 1]
    } else {
        s
    }
}

/// Splits at the first occurrence of `sep` outside parentheses.
fn split_top_level(s: &str, sep: char) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

fn split_terms(text: &str) -> std::result::Result<Vec<(bool, String)>, &'static str> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty");
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut negative = false;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err("unbalanced parentheses");
                }
                current.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if !current.is_empty() {
                    out.push((negative, std::mem::take(&mut current)));
                    negative = false;
                } else if !out.is_empty() && ch == '+' {
                    return Err("empty term");
                }
                if ch == '-' {
                    negative = !negative;
                }
            }
            _ => current.push(ch),
        }
    }
    if depth != 0 {
        return Err("unbalanced parentheses");
    }
    if current.is_empty() {
        return Err("dangling operator");
    }
    out.push((negative, current));
    Ok(out)
}

/// A `d x d` matrix over `K[M]`, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgMatrix {
    dim: usize,
    field: Field,
    monoid: Monoid,
    entries: Vec<AlgElem>,
}

impl AlgMatrix {
    pub fn zero(dim: usize, field: &Field, monoid: &Monoid) -> Self {
        AlgMatrix {
            dim,
            field: field.clone(),
            monoid: monoid.clone(),
            entries: vec![AlgElem::zero(field, monoid); dim * dim],
        }
    }

    pub fn identity(dim: usize, field: &Field, monoid: &Monoid) -> Self {
        let mut a = Self::zero(dim, field, monoid);
        for i in 0..dim {
            a.entries[i * dim + i] = AlgElem::one(field, monoid);
        }
        a
    }

    /// A `1 x 1` matrix.
    pub fn scalar(alpha: AlgElem) -> Self {
        AlgMatrix {
            dim: 1,
            field: alpha.field.clone(),
            monoid: alpha.monoid.clone(),
            entries: vec![alpha],
        }
    }

    pub fn from_entries(dim: usize, entries: Vec<AlgElem>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        let (field, monoid) = (entries[0].field.clone(), entries[0].monoid.clone());
        if entries.iter().any(|e| e.field != field || e.monoid != monoid) {
            return Err(Error::CarrierMismatch);
        }
        Ok(AlgMatrix {
            dim,
            field,
            monoid,
            entries,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn entry(&self, i: usize, j: usize) -> &AlgElem {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[AlgElem] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(AlgElem::is_zero)
    }

    /// Union of the entry supports, sorted.
    pub fn support(&self) -> Vec<Elem> {
        let set: BTreeSet<Elem> = self
            .entries
            .iter()
            .flat_map(|e| e.terms.iter().map(|(m, _)| m.clone()))
            .collect();
        set.into_iter().collect()
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field || self.monoid != other.monoid {
            return Err(Error::CarrierMismatch);
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgMatrix {
            entries,
            ..self.clone()
        })
    }

    pub fn scale(&self, lambda: &Scalar) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|a| a.scale(lambda))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgMatrix {
            entries,
            ..self.clone()
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let d = self.dim;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = AlgElem::zero(&self.field, &self.monoid);
                for k in 0..d {
                    let (a, b) = (self.entry(i, k), other.entry(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b)?)?;
                    }
                }
                entries.push(acc);
            }
        }
        Ok(AlgMatrix {
            entries,
            ..self.clone()
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim, &self.field, &self.monoid)
    }
}

impl fmt::Display for AlgMatrix {
    /// Matrix file format: the dimension, then one `;`-separated row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "{}", row.join("; "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.entry(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join("; ")
            })
            .collect();
        write!(f, "[{}]", rows.join(" | "))
    }
}
