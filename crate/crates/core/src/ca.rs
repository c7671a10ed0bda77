//! Cellular automata over a monoid with a finite alphabet.
//!
//! A rule is a memory set `S` (ordered) and a local map stored as a dense
//! table over `A^S`. The table index of an input `p` is the mixed-radix
//! number whose digits are `p(s_0), p(s_1), ...` with `s_0` most
//! significant. Configurations of a finite monoid are indexed the same way,
//! with digits taken in element order.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::monoid::{Elem, Monoid};
use crate::pattern::{required_domain, Pattern, SymbolAlphabet, SymbolPattern};
use crate::Verdict;

/// Largest configuration space `|A|^|M|` scanned exhaustively by default.
pub const DEFAULT_CONFIG_BUDGET: u64 = 1 << 20;
/// Largest number of rules enumerated by a scan by default.
pub const DEFAULT_RULE_BUDGET: u64 = 1 << 16;
/// Largest local table built by composition.
pub const MAX_TABLE: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CARule {
    monoid: Monoid,
    alphabet: SymbolAlphabet,
    memory: Vec<Elem>,
    table: Vec<u32>,
}

fn table_len(alphabet: SymbolAlphabet, arity: usize) -> Result<u64> {
    (alphabet.size() as u64)
        .checked_pow(arity as u32)
        .filter(|&n| n <= MAX_TABLE)
        .ok_or_else(|| Error::BudgetExceeded {
            required: format!("{}^{}", alphabet.size(), arity),
            budget: MAX_TABLE,
        })
}

/// Digits of `index` in base `a`, most significant first.
fn digits(mut index: u64, a: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for slot in out.iter_mut().rev() {
        *slot = (index % a as u64) as u32;
        index /= a as u64;
    }
    out
}

fn undigits(symbols: &[u32], a: u32) -> u64 {
    symbols.iter().fold(0u64, |acc, &s| acc * a as u64 + s as u64)
}

impl CARule {
    pub fn new(monoid: &Monoid, alphabet: SymbolAlphabet, memory: Vec<Elem>, table: Vec<u32>) -> Result<Self> {
        for (k, s) in memory.iter().enumerate() {
            monoid.check(s)?;
            if memory[..k].contains(s) {
                return Err(Error::InvalidRule(format!(
                    "memory element {} repeated",
                    monoid.name(s)
                )));
            }
        }
        let expected = table_len(alphabet, memory.len())?;
        if table.len() as u64 != expected {
            return Err(Error::InvalidRule(format!(
                "local table has {} entries, expected {expected}",
                table.len()
            )));
        }
        for &v in &table {
            alphabet.check(v)?;
        }
        Ok(CARule {
            monoid: monoid.clone(),
            alphabet,
            memory,
            table,
        })
    }

    /// Tabulates `local` over `A^S`; its argument lists symbols in memory order.
    pub fn from_fn(
        monoid: &Monoid,
        alphabet: SymbolAlphabet,
        memory: Vec<Elem>,
        local: impl Fn(&[u32]) -> u32,
    ) -> Result<Self> {
        let n = table_len(alphabet, memory.len())?;
        let table = (0..n)
            .map(|i| local(&digits(i, alphabet.size(), memory.len())))
            .collect();
        Self::new(monoid, alphabet, memory, table)
    }

    /// Memory `{1_M}`, local map the projection.
    pub fn identity(monoid: &Monoid, alphabet: SymbolAlphabet) -> Self {
        CARule {
            monoid: monoid.clone(),
            alphabet,
            memory: vec![monoid.identity()],
            table: (0..alphabet.size()).collect(),
        }
    }

    pub fn constant(monoid: &Monoid, alphabet: SymbolAlphabet, symbol: u32) -> Result<Self> {
        alphabet.check(symbol)?;
        Ok(CARule {
            monoid: monoid.clone(),
            alphabet,
            memory: Vec::new(),
            table: vec![symbol],
        })
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn alphabet(&self) -> SymbolAlphabet {
        self.alphabet
    }

    pub fn memory(&self) -> &[Elem] {
        &self.memory
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Local map applied to symbols listed in memory order.
    pub fn local(&self, input: &[u32]) -> u32 {
        self.table[undigits(input, self.alphabet.size()) as usize]
    }

    /// `tau(c)(m) = mu((c o R_m)|_S)` for every `m` in the window.
    pub fn apply(&self, c: &SymbolPattern, window: &[Elem]) -> Result<SymbolPattern> {
        if *c.monoid() != self.monoid {
            return Err(Error::CarrierMismatch);
        }
        c.require(&required_domain(&self.monoid, window, &self.memory)?)?;
        let mut input = vec![0u32; self.memory.len()];
        let mut out = Vec::with_capacity(window.len());
        for m in window {
            for (slot, s) in input.iter_mut().zip(&self.memory) {
                let v = *c.get(&self.monoid.op(s, m)).expect("required site");
                self.alphabet.check(v)?;
                *slot = v;
            }
            out.push((m.clone(), self.local(&input)));
        }
        Pattern::from_cells(&self.monoid, dedup(out))
    }

    /// `self o inner`: memory `S_inner * S_self`, local map
    /// `p |-> mu_self(t |-> mu_inner(s |-> p(st)))`.
    pub fn compose(&self, inner: &CARule) -> Result<CARule> {
        if self.monoid != inner.monoid || self.alphabet != inner.alphabet {
            return Err(Error::CarrierMismatch);
        }
        let memory = self.monoid.product_set(&inner.memory, &self.memory)?;
        let pos: BTreeMap<&Elem, usize> = memory.iter().enumerate().map(|(k, m)| (m, k)).collect();
        // index into the composite input for each (t, s) pair
        let lookup: Vec<Vec<usize>> = self
            .memory
            .iter()
            .map(|t| {
                inner
                    .memory
                    .iter()
                    .map(|s| pos[&self.monoid.op(s, t)])
                    .collect()
            })
            .collect();
        Self::from_fn(&self.monoid, self.alphabet, memory, |p| {
            let outer: Vec<u32> = lookup
                .iter()
                .map(|row| {
                    let inner_input: Vec<u32> = row.iter().map(|&idx| p[idx]).collect();
                    inner.local(&inner_input)
                })
                .collect();
            self.local(&outer)
        })
    }

    /// Coordinates on which the local map genuinely depends, and the rule
    /// reduced to them (memory order preserved).
    pub fn minimal_memory(&self) -> (Vec<Elem>, CARule) {
        let a = self.alphabet.size();
        let n = self.memory.len();
        let mut needed = vec![false; n];
        for index in 0..self.table.len() as u64 {
            let input = digits(index, a, n);
            for k in 0..n {
                if needed[k] {
                    continue;
                }
                let mut alt = input.clone();
                for v in 0..a {
                    alt[k] = v;
                    if self.table[undigits(&alt, a) as usize] != self.table[index as usize] {
                        needed[k] = true;
                        break;
                    }
                }
            }
        }
        let kept: Vec<usize> = (0..n).filter(|&k| needed[k]).collect();
        let memory: Vec<Elem> = kept.iter().map(|&k| self.memory[k].clone()).collect();
        let reduced = CARule::from_fn(&self.monoid, self.alphabet, memory.clone(), |p| {
            let mut full = vec![0u32; n];
            for (&k, &v) in kept.iter().zip(p) {
                full[k] = v;
            }
            self.local(&full)
        })
        .expect("reduced table is no larger");
        (memory, reduced)
    }

    /// Minimal rule with its memory sorted: two rules define the same
    /// cellular automaton iff their canonical forms are equal.
    pub fn canonical(&self) -> CARule {
        let (memory, reduced) = self.minimal_memory();
        let mut order: Vec<usize> = (0..memory.len()).collect();
        order.sort_by(|&x, &y| memory[x].cmp(&memory[y]));
        let sorted: Vec<Elem> = order.iter().map(|&k| memory[k].clone()).collect();
        CARule::from_fn(&self.monoid, self.alphabet, sorted, |p| {
            let mut orig = vec![0u32; order.len()];
            for (pos, &k) in order.iter().enumerate() {
                orig[k] = p[pos];
            }
            reduced.local(&orig)
        })
        .expect("same size")
    }

    pub fn equivalent(&self, other: &CARule) -> bool {
        self.monoid == other.monoid
            && self.alphabet == other.alphabet
            && self.canonical() == other.canonical()
    }

    /// Rule with memory `memory`, which must contain the current memory set,
    /// computing the same automaton.
    pub fn with_memory(&self, memory: Vec<Elem>) -> Result<CARule> {
        let pos: Vec<usize> = self
            .memory
            .iter()
            .map(|s| {
                memory.iter().position(|m| m == s).ok_or_else(|| {
                    Error::InvalidRule(format!("{} missing from new memory", self.monoid.name(s)))
                })
            })
            .collect::<Result<_>>()?;
        CARule::from_fn(&self.monoid, self.alphabet, memory, |p| {
            let input: Vec<u32> = pos.iter().map(|&k| p[k]).collect();
            self.local(&input)
        })
    }

    fn finite_space(&self, budget: u64) -> Result<(Vec<Elem>, u64)> {
        let els = self.monoid.elements()?;
        let a = self.alphabet.size() as u64;
        let total = a
            .checked_pow(els.len() as u32)
            .filter(|&n| n <= budget)
            .ok_or_else(|| Error::BudgetExceeded {
                required: format!("{a}^{}", els.len()),
                budget,
            })?;
        Ok((els, total))
    }

    /// The global map on `A^M` for finite `M`, as image indices.
    pub fn global_map(&self, budget: u64) -> Result<Vec<u64>> {
        let (els, total) = self.finite_space(budget)?;
        let a = self.alphabet.size();
        let n = els.len();
        // site index of s * m for each memory coordinate and site
        let index_of = |x: &Elem| self.monoid.index_of(x).expect("finite element");
        let lookup: Vec<Vec<usize>> = els
            .iter()
            .map(|m| self.memory.iter().map(|s| index_of(&self.monoid.op(s, m))).collect())
            .collect();
        let mut input = vec![0u32; self.memory.len()];
        let mut image = vec![0u32; n];
        Ok((0..total)
            .map(|code| {
                let config = digits(code, a, n);
                for (site, row) in lookup.iter().enumerate() {
                    for (slot, &k) in input.iter_mut().zip(row) {
                        *slot = config[k];
                    }
                    image[site] = self.local(&input);
                }
                undigits(&image, a)
            })
            .collect())
    }

    /// Configuration with the given index, as a pattern on all of `M`.
    pub fn configuration(&self, index: u64) -> Result<SymbolPattern> {
        let els = self.monoid.elements()?;
        let symbols = digits(index, self.alphabet.size(), els.len());
        Pattern::from_cells(&self.monoid, els.into_iter().zip(symbols))
    }

    /// Exhaustive injectivity check on finite `M`; the witness is the first
    /// colliding pair in configuration order.
    pub fn injective(&self, budget: u64) -> Result<Verdict<(SymbolPattern, SymbolPattern)>> {
        let map = self.global_map(budget)?;
        let mut first: BTreeMap<u64, u64> = BTreeMap::new();
        for (code, &img) in map.iter().enumerate() {
            if let Some(&earlier) = first.get(&img) {
                return Ok(Verdict::Fails((
                    self.configuration(earlier)?,
                    self.configuration(code as u64)?,
                )));
            }
            first.insert(img, code as u64);
        }
        Ok(Verdict::Holds)
    }

    /// Exhaustive surjectivity check on finite `M`; the witness is the least
    /// configuration outside the image.
    pub fn surjective(&self, budget: u64) -> Result<Verdict<SymbolPattern>> {
        let map = self.global_map(budget)?;
        let mut hit = vec![false; map.len()];
        for &img in &map {
            hit[img as usize] = true;
        }
        match hit.iter().position(|&h| !h) {
            Some(missed) => Ok(Verdict::Fails(self.configuration(missed as u64)?)),
            None => Ok(Verdict::Holds),
        }
    }

    /// A left inverse of an injective rule over finite `M`, with memory set
    /// `M` (in element order). Its local map sends `tau(c)` to `c(1_M)` and
    /// every input outside the image to symbol 0.
    pub fn left_inverse(&self, budget: u64) -> Result<CARule> {
        let map = self.global_map(budget)?;
        let els = self.monoid.elements()?;
        let mut table = vec![0u32; map.len()];
        let mut seen = vec![false; map.len()];
        let a = self.alphabet.size();
        let one = self
            .monoid
            .index_of(&self.monoid.identity())
            .expect("finite identity");
        for (code, &img) in map.iter().enumerate() {
            if seen[img as usize] {
                return Err(Error::NotInjective);
            }
            seen[img as usize] = true;
            table[img as usize] = digits(code as u64, a, els.len())[one];
        }
        CARule::new(&self.monoid, self.alphabet, els, table)
    }
}

fn dedup(cells: Vec<(Elem, u32)>) -> Vec<(Elem, u32)> {
    let map: BTreeMap<Elem, u32> = cells.into_iter().collect();
    map.into_iter().collect()
}

/// All rules with memory set `memory` over the alphabet, in table order
/// (the table read as a base-`|A|` number, first entry most significant).
pub fn all_rules(monoid: &Monoid, alphabet: SymbolAlphabet, memory: &[Elem], budget: u64) -> Result<Vec<CARule>> {
    let len = table_len(alphabet, memory.len())?;
    let count = (alphabet.size() as u64)
        .checked_pow(len as u32)
        .filter(|&n| n <= budget)
        .ok_or_else(|| Error::BudgetExceeded {
            required: format!("{}^{len}", alphabet.size()),
            budget,
        })?;
    (0..count)
        .map(|code| {
            CARule::new(
                monoid,
                alphabet,
                memory.to_vec(),
                digits(code, alphabet.size(), len as usize),
            )
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurjunctivityReport {
    pub rules: usize,
    pub injective: usize,
    pub surjective: usize,
    /// First injective rule that is not surjective.
    pub violation: Option<CARule>,
}

/// Checks "injective implies surjective" for every rule with memory `memory`.
pub fn surjunctivity_scan(
    monoid: &Monoid,
    alphabet: SymbolAlphabet,
    memory: &[Elem],
    rule_budget: u64,
    config_budget: u64,
) -> Result<SurjunctivityReport> {
    let mut report = SurjunctivityReport {
        rules: 0,
        injective: 0,
        surjective: 0,
        violation: None,
    };
    for rule in all_rules(monoid, alphabet, memory, rule_budget)? {
        report.rules += 1;
        let inj = rule.injective(config_budget)?.holds();
        let surj = rule.surjective(config_budget)?.holds();
        report.injective += inj as usize;
        report.surjective += surj as usize;
        if inj && !surj && report.violation.is_none() {
            report.violation = Some(rule);
        }
    }
    Ok(report)
}

/// Over all pairs `(sigma, tau)` of rules with memory `memory`: whenever
/// `sigma o tau` is the identity on `A^M`, so is `tau o sigma`. Returns the
/// first violating pair in rule order.
pub fn direct_finiteness_scan(
    monoid: &Monoid,
    alphabet: SymbolAlphabet,
    memory: &[Elem],
    rule_budget: u64,
    config_budget: u64,
) -> Result<Verdict<(CARule, CARule)>> {
    let rules = all_rules(monoid, alphabet, memory, rule_budget)?;
    let maps: Vec<Vec<u64>> = rules
        .iter()
        .map(|r| r.global_map(config_budget))
        .collect::<Result<_>>()?;
    let is_identity_after = |outer: &[u64], inner: &[u64]| {
        inner
            .iter()
            .enumerate()
            .all(|(code, &img)| outer[img as usize] == code as u64)
    };
    for (si, sigma) in maps.iter().enumerate() {
        for (ti, tau) in maps.iter().enumerate() {
            if is_identity_after(sigma, tau) && !is_identity_after(tau, sigma) {
                return Ok(Verdict::Fails((rules[si].clone(), rules[ti].clone())));
            }
        }
    }
    Ok(Verdict::Holds)
}
