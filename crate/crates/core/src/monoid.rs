//! Monoid universes.
//!
//! Finite monoids are given by a multiplication table (or are cyclic);
//! the bicyclic monoid `<p, q | pq = 1>` and free commutative monoids are
//! infinite and carried by normal forms. Elements are plain values
//! ([`Elem`]) interpreted by the monoid that produced them.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::Verdict;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `table[x * n + y]` is the index of `x * y`; index 0 is the identity.
    Table { names: Vec<String>, table: Vec<usize> },
    Bicyclic,
    Cyclic(usize),
    FreeCommutative(usize),
}

/// Shared handle to a monoid description.
#[derive(Clone)]
pub struct Monoid(Arc<Family>);

/// Canonical form of a monoid element.
///
/// `Bicyclic(a, b)` stands for `q^a p^b`; `Free` is an exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Index(usize),
    Bicyclic(u32, u32),
    Free(Vec<u32>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl PartialEq for Monoid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Monoid {}

impl fmt::Debug for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monoid({self})")
    }
}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Family::Table { names, .. } => write!(f, "table[{}]", names.join(" ")),
            Family::Bicyclic => write!(f, "bicyclic"),
            Family::Cyclic(n) => write!(f, "cyclic:{n}"),
            Family::FreeCommutative(r) => write!(f, "freecomm:{r}"),
        }
    }
}

impl Monoid {
    pub fn bicyclic() -> Self {
        Monoid(Arc::new(Family::Bicyclic))
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMonoid("cyclic order must be positive".into()));
        }
        Ok(Monoid(Arc::new(Family::Cyclic(n))))
    }

    pub fn free_commutative(rank: usize) -> Self {
        Monoid(Arc::new(Family::FreeCommutative(rank)))
    }

    /// Builds a table monoid. The first name is the identity; `table` is
    /// row-major with `table[x * n + y] = x * y`. Rejects identity-law
    /// failures and non-associative tables (with a witness triple).
    pub fn from_table(names: Vec<String>, table: Vec<usize>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidMonoid("no elements".into()));
        }
        if table.len() != n * n {
            return Err(Error::InvalidMonoid(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidMonoid("duplicate element names".into()));
        }
        if let Some(bad) = names.iter().find(|s| !valid_name(s)) {
            return Err(Error::InvalidMonoid(format!("invalid element name `{bad}`")));
        }
        if table.iter().any(|&v| v >= n) {
            return Err(Error::InvalidMonoid("table entry out of range".into()));
        }
        for x in 0..n {
            if table[x] != x || table[x * n] != x {
                return Err(Error::InvalidMonoid(format!(
                    "{} is not an identity for {}",
                    names[0], names[x]
                )));
            }
        }
        if let Some((x, y, z)) = associativity_violation(n, &table) {
            return Err(Error::NotAssociative {
                x: names[x].clone(),
                y: names[y].clone(),
                z: names[z].clone(),
            });
        }
        Ok(Monoid(Arc::new(Family::Table { names, table })))
    }

    /// Parses a builtin: `bicyclic`, `cyclic:n`, `freecomm:r`.
    /// Table files (`table:PATH`) are handled by [`crate::parse::monoid_from_spec`].
    pub fn builtin(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let bad = || Error::InvalidMonoid(format!("unknown monoid `{spec}`"));
        match spec.split_once(':') {
            None if spec == "bicyclic" => Ok(Self::bicyclic()),
            Some(("cyclic", n)) => Self::cyclic(n.trim().parse().map_err(|_| bad())?),
            Some(("freecomm", r)) => Ok(Self::free_commutative(r.trim().parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }

    pub fn family(&self) -> &Family {
        &self.0
    }

    pub fn is_finite(&self) -> bool {
        matches!(&*self.0, Family::Table { .. } | Family::Cyclic(_))
    }

    /// Number of elements, `None` when infinite.
    pub fn order(&self) -> Option<usize> {
        match &*self.0 {
            Family::Table { names, .. } => Some(names.len()),
            Family::Cyclic(n) => Some(*n),
            _ => None,
        }
    }

    pub fn identity(&self) -> Elem {
        match &*self.0 {
            Family::Table { .. } | Family::Cyclic(_) => Elem::Index(0),
            Family::Bicyclic => Elem::Bicyclic(0, 0),
            Family::FreeCommutative(r) => Elem::Free(vec![0; *r]),
        }
    }

    pub fn is_identity(&self, x: &Elem) -> bool {
        *x == self.identity()
    }

    pub fn contains(&self, x: &Elem) -> bool {
        match (&*self.0, x) {
            (Family::Table { names, .. }, Elem::Index(i)) => *i < names.len(),
            (Family::Cyclic(n), Elem::Index(i)) => i < n,
            (Family::Bicyclic, Elem::Bicyclic(..)) => true,
            (Family::FreeCommutative(r), Elem::Free(v)) => v.len() == *r,
            _ => false,
        }
    }

    pub fn check(&self, x: &Elem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::MixedMonoids(self.to_string()))
        }
    }

    /// Product of two elements known to belong to this monoid.
    ///
    /// # Panics
    /// If the elements come from a different family.
    pub fn op(&self, x: &Elem, y: &Elem) -> Elem {
        match (&*self.0, x, y) {
            (Family::Table { names, table }, Elem::Index(a), Elem::Index(b)) => {
                Elem::Index(table[a * names.len() + b])
            }
            (Family::Cyclic(n), Elem::Index(a), Elem::Index(b)) => Elem::Index((a + b) % n),
            (Family::Bicyclic, Elem::Bicyclic(a, b), Elem::Bicyclic(c, d)) => {
                let m = (*b).min(*c);
                Elem::Bicyclic(a + c - m, b + d - m)
            }
            (Family::FreeCommutative(_), Elem::Free(u), Elem::Free(v)) => {
                Elem::Free(u.iter().zip(v).map(|(a, b)| a + b).collect())
            }
            _ => panic!("elements do not belong to {self}"),
        }
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.op(x, y))
    }

    /// `Left` gives `m * x`, `Right` gives `x * m`.
    pub fn translate(&self, x: &Elem, m: &Elem, side: Side) -> Result<Elem> {
        match side {
            Side::Left => self.mul(m, x),
            Side::Right => self.mul(x, m),
        }
    }

    /// `{s * t : s in S, t in T}`, deduplicated and sorted.
    pub fn product_set(&self, s: &[Elem], t: &[Elem]) -> Result<Vec<Elem>> {
        for x in s.iter().chain(t) {
            self.check(x)?;
        }
        let set: BTreeSet<Elem> = s
            .iter()
            .flat_map(|a| t.iter().map(move |b| (a, b)))
            .map(|(a, b)| self.op(a, b))
            .collect();
        Ok(set.into_iter().collect())
    }

    /// All elements, identity first.
    pub fn elements(&self) -> Result<Vec<Elem>> {
        let n = self
            .order()
            .ok_or_else(|| Error::InfiniteMonoid(self.to_string()))?;
        Ok((0..n).map(Elem::Index).collect())
    }

    /// Position of `x` in [`Monoid::elements`].
    pub fn index_of(&self, x: &Elem) -> Option<usize> {
        match x {
            Elem::Index(i) if self.is_finite() && self.contains(x) => Some(*i),
            _ => None,
        }
    }

    /// Finds `(a, b)` with `ab = 1` and `ba != 1`, scanning pairs in element order.
    pub fn directly_finite(&self) -> Result<Verdict<(Elem, Elem)>> {
        let els = self.elements()?;
        let one = self.identity();
        for a in &els {
            for b in &els {
                if self.op(a, b) == one && self.op(b, a) != one {
                    return Ok(Verdict::Fails((a.clone(), b.clone())));
                }
            }
        }
        Ok(Verdict::Holds)
    }

    pub fn name(&self, x: &Elem) -> String {
        match (&*self.0, x) {
            (Family::Table { names, .. }, Elem::Index(i)) => names[*i].clone(),
            (Family::Cyclic(_), Elem::Index(0)) => "e".into(),
            (Family::Cyclic(_), Elem::Index(1)) => "g".into(),
            (Family::Cyclic(_), Elem::Index(i)) => format!("g{i}"),
            (Family::Bicyclic, Elem::Bicyclic(0, 0)) => "1".into(),
            (Family::Bicyclic, Elem::Bicyclic(a, b)) => {
                let mut s = String::new();
                if *a > 0 {
                    s.push_str(&format!("q^{a}"));
                }
                if *b > 0 {
                    s.push_str(&format!("p^{b}"));
                }
                s
            }
            (Family::FreeCommutative(_), Elem::Free(v)) => {
                let s: String = v
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{e}", i + 1)
                        }
                    })
                    .collect();
                if s.is_empty() {
                    "1".into()
                } else {
                    s
                }
            }
            _ => format!("{x:?}"),
        }
    }

    /// Parses an element name. Bicyclic elements may be given as any word in
    /// `p`, `q` with optional exponents (`pq`, `q^2p^3`); free commutative
    /// ones as `x1^2x3`; cyclic ones as `e`, `g`, `g2` or `g^2`. `1` always
    /// denotes the identity unless a table names an element `1`.
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let s = text.trim();
        let bad = || Error::InvalidMonoid(format!("`{s}` is not an element of {self}"));
        match &*self.0 {
            Family::Table { names, .. } => {
                if let Some(i) = names.iter().position(|n| n == s) {
                    Ok(Elem::Index(i))
                } else if s == "1" {
                    Ok(Elem::Index(0))
                } else {
                    Err(bad())
                }
            }
            Family::Cyclic(n) => {
                if s == "e" || s == "1" {
                    return Ok(Elem::Index(0));
                }
                let rest = s.strip_prefix('g').ok_or_else(bad)?;
                let rest = rest.strip_prefix('^').unwrap_or(rest);
                let k: usize = if rest.is_empty() {
                    1
                } else {
                    rest.parse().map_err(|_| bad())?
                };
                Ok(Elem::Index(k % n))
            }
            Family::Bicyclic => {
                if s == "1" || s == "e" {
                    return Ok(self.identity());
                }
                let factors = parse_word(s, |c| matches!(c, 'p' | 'q')).ok_or_else(bad)?;
                let mut acc = self.identity();
                for (gen, _, exp) in factors {
                    let g = if gen == 'p' {
                        Elem::Bicyclic(0, exp)
                    } else {
                        Elem::Bicyclic(exp, 0)
                    };
                    acc = self.op(&acc, &g);
                }
                Ok(acc)
            }
            Family::FreeCommutative(r) => {
                if s == "1" || s == "e" {
                    return Ok(self.identity());
                }
                let factors = parse_word(s, |c| c == 'x').ok_or_else(bad)?;
                let mut v = vec![0u32; *r];
                for (_, idx, exp) in factors {
                    let idx = idx.filter(|i| (1..=*r).contains(i)).ok_or_else(bad)?;
                    v[idx - 1] += exp;
                }
                Ok(Elem::Free(v))
            }
        }
    }
}

/// Splits a word like `q^2pq` or `x1^2x3` into `(generator, index, exponent)`.
fn parse_word(s: &str, is_gen: impl Fn(char) -> bool) -> Option<Vec<(char, Option<usize>, u32)>> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| -> Option<usize> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        (start < *i).then(|| chars[start..*i].iter().collect::<String>().parse().ok())?
    };
    while i < chars.len() {
        let g = chars[i];
        if !is_gen(g) {
            return None;
        }
        i += 1;
        let index = digits(&mut i);
        let mut exp = 1u32;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            exp = digits(&mut i)? as u32;
        }
        out.push((g, index, exp));
    }
    (!out.is_empty()).then_some(out)
}

pub(crate) fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '^' || c == '\'')
}

fn associativity_violation(n: usize, table: &[usize]) -> Option<(usize, usize, usize)> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = table[table[x * n + y] * n + z];
                let rhs = table[x * n + table[y * n + z]];
                if lhs != rhs {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

const ENUM_NAMES: [&str; 3] = ["e", "a", "b"];

/// All associative tables of order `n <= 3` on `e, a, b` with `e` the
/// identity, in lexicographic order of the non-identity block (row-major,
/// first entry most significant). No isomorphism reduction.
pub fn enumerate_monoids(n: usize) -> Result<Vec<Monoid>> {
    if !(1..=3).contains(&n) {
        return Err(Error::OrderOutOfRange(n));
    }
    let free = (n - 1) * (n - 1);
    let total = n.pow(free as u32);
    let names: Vec<String> = ENUM_NAMES[..n].iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    for code in 0..total {
        let mut table = vec![0usize; n * n];
        for x in 0..n {
            table[x] = x;
            table[x * n] = x;
        }
        let mut rest = code;
        for pos in (0..free).rev() {
            let (x, y) = (1 + pos / (n - 1), 1 + pos % (n - 1));
            table[x * n + y] = rest % n;
            rest /= n;
        }
        if associativity_violation(n, &table).is_none() {
            out.push(Monoid::from_table(names.clone(), table)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: rewrite `pq -> 1` on a word until stable.
    fn rewrite_normal_form(word: &str) -> (u32, u32) {
        let mut w = word.to_string();
        while let Some(pos) = w.find("pq") {
            w.replace_range(pos..pos + 2, "");
        }
        let a = w.chars().take_while(|&c| c == 'q').count();
        let b = w.len() - a;
        assert!(w[a..].chars().all(|c| c == 'p'));
        (a as u32, b as u32)
    }

    fn word(a: u32, b: u32) -> String {
        "q".repeat(a as usize) + &"p".repeat(b as usize)
    }

    fn names(m: &Monoid, xs: &[Elem]) -> Vec<String> {
        xs.iter().map(|x| m.name(x)).collect()
    }

    #[test]
    fn bicyclic_products() {
        let m = Monoid::bicyclic();
        let p = m.parse_elem("p").unwrap();
        let q = m.parse_elem("q").unwrap();
        assert_eq!(m.mul(&p, &q).unwrap(), m.identity());
        let qp = m.mul(&q, &p).unwrap();
        assert_eq!(qp, Elem::Bicyclic(1, 1));
        assert_ne!(qp, m.identity());
        assert_eq!(m.name(&qp), "q^1p^1");
        let x = Elem::Bicyclic(2, 3);
        let y = Elem::Bicyclic(1, 4);
        let xy = m.mul(&x, &y).unwrap();
        assert_eq!(xy, Elem::Bicyclic(2, 6));
        assert_eq!(rewrite_normal_form("qqpppqpppp"), (2, 6));
    }

    #[test]
    fn translations() {
        let m = Monoid::bicyclic();
        let p = m.parse_elem("p").unwrap();
        let q = m.parse_elem("q").unwrap();
        assert_eq!(m.translate(&q, &p, Side::Right).unwrap(), Elem::Bicyclic(1, 1));
        assert_eq!(m.translate(&q, &p, Side::Left).unwrap(), m.identity());
        assert_eq!(m.translate(&q, &m.identity(), Side::Right).unwrap(), q);
        let c3 = Monoid::cyclic(3).unwrap();
        let g = c3.parse_elem("g").unwrap();
        let g2 = c3.parse_elem("g2").unwrap();
        assert_eq!(c3.translate(&g, &g2, Side::Left).unwrap(), c3.identity());
        assert!(matches!(
            c3.translate(&g, &p, Side::Left),
            Err(Error::MixedMonoids(_))
        ));
    }

    #[test]
    fn product_sets() {
        let m = Monoid::bicyclic();
        let s = vec![m.parse_elem("p").unwrap(), m.parse_elem("q").unwrap()];
        let s2 = m.product_set(&s, &s).unwrap();
        // pp, pq = 1, qp, qq
        let expected: BTreeSet<Elem> = [
            Elem::Bicyclic(0, 2),
            Elem::Bicyclic(0, 0),
            Elem::Bicyclic(1, 1),
            Elem::Bicyclic(2, 0),
        ]
        .into_iter()
        .collect();
        assert_eq!(s2, expected.into_iter().collect::<Vec<_>>());
        assert_eq!(names(&m, &s2), ["1", "p^2", "q^1p^1", "q^2"]);
        let t = vec![Elem::Bicyclic(3, 1), Elem::Bicyclic(0, 2)];
        assert_eq!(m.product_set(&[m.identity()], &t).unwrap(), {
            let mut t = t.clone();
            t.sort();
            t
        });
        let c2 = Monoid::cyclic(2).unwrap();
        let g = c2.parse_elem("g").unwrap();
        assert_eq!(c2.product_set(&[g.clone()], &[g]).unwrap(), vec![c2.identity()]);
    }

    #[test]
    fn element_listing() {
        let c3 = Monoid::cyclic(3).unwrap();
        let els = c3.elements().unwrap();
        assert_eq!(names(&c3, &els), ["e", "g", "g2"]);
        assert!(matches!(
            Monoid::bicyclic().elements(),
            Err(Error::InfiniteMonoid(_))
        ));
        let two = Monoid::from_table(vec!["e".into(), "z".into()], vec![0, 1, 1, 1]).unwrap();
        assert_eq!(two.elements().unwrap().len(), 2);
    }

    #[test]
    fn table_validation() {
        let names: Vec<String> = ["e", "a", "b"].iter().map(|s| s.to_string()).collect();
        // pick a known non-associative block: a*a = b, a*b = b, b*a = a, b*b = a
        let t = vec![0, 1, 2, 1, 2, 2, 2, 1, 1];
        match Monoid::from_table(names.clone(), t) {
            Err(Error::NotAssociative { .. }) => {}
            other => panic!("expected associativity failure, got {other:?}"),
        }
        let bad_identity = vec![0, 1, 2, 1, 1, 1, 1, 1, 0];
        assert!(Monoid::from_table(names.clone(), bad_identity).is_err());
    }

    #[test]
    fn direct_finiteness_of_small_monoids() {
        for n in 1..=3 {
            for m in enumerate_monoids(n).unwrap() {
                assert_eq!(m.directly_finite().unwrap(), Verdict::Holds, "{m}");
            }
        }
        for n in 1..=5 {
            let c = Monoid::cyclic(n).unwrap();
            assert!(c.directly_finite().unwrap().holds());
        }
        assert!(Monoid::bicyclic().directly_finite().is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_monoids(1).unwrap().len(), 1);
        let two = enumerate_monoids(2).unwrap();
        assert_eq!(two.len(), 2);
        // a*a = e (Z/2) and a*a = a
        let blocks: Vec<usize> = two
            .iter()
            .map(|m| match m.family() {
                Family::Table { table, .. } => table[3],
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(blocks, [0, 1]);

        // independent oracle: all 3^9 full tables with identity e, filtered
        let mut oracle = 0;
        for code in 0..3usize.pow(9) {
            let t: Vec<usize> = (0..9).map(|i| code / 3usize.pow(i) % 3).collect();
            let identity_ok = (0..3).all(|x| t[x] == x && t[3 * x] == x);
            let assoc = (0..3).all(|x| {
                (0..3).all(|y| (0..3).all(|z| t[t[3 * x + y] * 3 + z] == t[3 * x + t[3 * y + z]]))
            });
            if identity_ok && assoc {
                oracle += 1;
            }
        }
        assert_eq!(enumerate_monoids(3).unwrap().len(), oracle);
        assert_eq!(oracle, 11);
        assert!(matches!(enumerate_monoids(4), Err(Error::OrderOutOfRange(4))));
        assert!(matches!(enumerate_monoids(0), Err(Error::OrderOutOfRange(0))));
    }

    #[test]
    fn tables_are_associative_and_unital() {
        for n in 1..=3 {
            for m in enumerate_monoids(n).unwrap() {
                let els = m.elements().unwrap();
                for x in &els {
                    assert_eq!(m.op(&m.identity(), x), *x);
                    assert_eq!(m.op(x, &m.identity()), *x);
                    for y in &els {
                        for z in &els {
                            assert_eq!(m.op(&m.op(x, y), z), m.op(x, &m.op(y, z)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parse_and_name_round_trip() {
        let b = Monoid::bicyclic();
        for text in ["1", "p", "q^2", "q^2p^3", "pqqp"] {
            let x = b.parse_elem(text).unwrap();
            assert_eq!(b.parse_elem(&b.name(&x)).unwrap(), x);
        }
        assert_eq!(b.parse_elem("pqqp").unwrap(), Elem::Bicyclic(1, 1));
        let f = Monoid::free_commutative(3);
        let x = f.parse_elem("x1^2x3").unwrap();
        assert_eq!(x, Elem::Free(vec![2, 0, 1]));
        assert_eq!(f.name(&x), "x1^2x3");
        assert!(f.parse_elem("x4").is_err());
        let c = Monoid::cyclic(4).unwrap();
        assert_eq!(c.parse_elem("g^3").unwrap(), Elem::Index(3));
        assert!(Monoid::builtin("cyclic:0").is_err());
        assert_eq!(Monoid::builtin("freecomm:2").unwrap(), Monoid::free_commutative(2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn bicyclic_matches_rewriting(a in 0u32..6, b in 0u32..6, c in 0u32..6, d in 0u32..6, e in 0u32..6, f in 0u32..6) {
            let m = Monoid::bicyclic();
            let x = Elem::Bicyclic(a, b);
            let y = Elem::Bicyclic(c, d);
            let z = Elem::Bicyclic(e, f);
            let xy = m.op(&x, &y);
            prop_assert_eq!(xy.clone(), {
                let (u, v) = rewrite_normal_form(&(word(a, b) + &word(c, d)));
                Elem::Bicyclic(u, v)
            });
            prop_assert_eq!(m.op(&xy, &z), m.op(&x, &m.op(&y, &z)));
            prop_assert_eq!(m.op(&m.identity(), &x), x.clone());
            prop_assert_eq!(m.op(&x, &m.identity()), x);
        }

        #[test]
        fn free_commutative_associative(u in proptest::collection::vec(0u32..5, 3),
                                        v in proptest::collection::vec(0u32..5, 3),
                                        w in proptest::collection::vec(0u32..5, 3)) {
            let m = Monoid::free_commutative(3);
            let (x, y, z) = (Elem::Free(u), Elem::Free(v), Elem::Free(w));
            prop_assert_eq!(m.op(&m.op(&x, &y), &z), m.op(&x, &m.op(&y, &z)));
            prop_assert_eq!(m.op(&x, &y), m.op(&y, &x));
        }

        #[test]
        fn product_set_members_factor(s in proptest::collection::vec((0u32..3, 0u32..3), 1..4),
                                      t in proptest::collection::vec((0u32..3, 0u32..3), 1..4)) {
            let m = Monoid::bicyclic();
            let s: Vec<Elem> = s.into_iter().map(|(a, b)| Elem::Bicyclic(a, b)).collect();
            let t: Vec<Elem> = t.into_iter().map(|(a, b)| Elem::Bicyclic(a, b)).collect();
            let st = m.product_set(&s, &t).unwrap();
            prop_assert!(st.len() <= s.len() * t.len());
            for x in &st {
                prop_assert!(s.iter().any(|a| t.iter().any(|b| m.op(a, b) == *x)));
            }
        }
    }
}
