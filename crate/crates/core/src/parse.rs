//! Text formats for monoid tables, matrices, patterns and rules.
//!
//! Blank lines and lines starting with `#` are ignored everywhere. Errors
//! carry the 1-based line and column of the offending token.

use std::path::Path;

use crate::algebra::{AlgElem, AlgMatrix};
use crate::ca::CARule;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::monoid::{Elem, Monoid};
use crate::pattern::{SymbolAlphabet, SymbolPattern, VectorPattern};

/// Meaningful lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(n, l)| {
        let t = l.trim();
        (!t.is_empty() && !t.starts_with('#')).then_some((n + 1, l))
    })
}

/// 1-based column of `part` inside `line`; `part` must be a subslice.
fn column(line: &str, part: &str) -> usize {
    (part.as_ptr() as usize).saturating_sub(line.as_ptr() as usize) + 1
}

fn at(line_no: usize, line: &str, part: &str) -> impl Fn(Error) -> Error {
    let col = column(line, part);
    move |e| Error::parse(line_no, col, e.to_string())
}

/// Splits `key: rest`, checking the key.
fn keyed<'a>(line_no: usize, line: &'a str, key: &str) -> Result<&'a str> {
    let t = line.trim_start();
    match t.split_once(':') {
        Some((k, rest)) if k.trim() == key => Ok(rest),
        _ => Err(Error::parse(line_no, column(line, t), format!("expected `{key}:`"))),
    }
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// `bicyclic`, `cyclic:n`, `freecomm:r` or `table:PATH`.
pub fn monoid_from_spec(spec: &str) -> Result<Monoid> {
    match spec.trim().strip_prefix("table:") {
        Some(path) => parse_monoid_table(&read_file(Path::new(path))?),
        None => Monoid::builtin(spec),
    }
}

/// `elements: e a b` (identity first), then one `row:` line per element
/// listing the products `(row)(column)` by name.
pub fn parse_monoid_table(text: &str) -> Result<Monoid> {
    let mut it = lines(text);
    let (n0, l0) = it
        .next()
        .ok_or_else(|| Error::parse(1, 1, "missing `elements:` line"))?;
    let names: Vec<String> = keyed(n0, l0, "elements")?
        .split_whitespace()
        .map(str::to_string)
        .collect();
    let mut table = Vec::with_capacity(names.len() * names.len());
    let mut rows = 0;
    let mut last = n0;
    for (n, l) in it {
        last = n;
        if rows == names.len() {
            return Err(Error::parse(n, 1, "too many rows"));
        }
        let rest = keyed(n, l, "row")?;
        let cells: Vec<&str> = rest.split_whitespace().collect();
        if cells.len() != names.len() {
            return Err(Error::parse(
                n,
                column(l, rest.trim_start()),
                format!("row has {} entries, expected {}", cells.len(), names.len()),
            ));
        }
        for c in cells {
            let idx = names
                .iter()
                .position(|x| x == c)
                .ok_or_else(|| Error::parse(n, column(l, c), format!("unknown element `{c}`")))?;
            table.push(idx);
        }
        rows += 1;
    }
    if rows != names.len() {
        return Err(Error::parse(last + 1, 1, format!("expected {} rows, got {rows}", names.len())));
    }
    Monoid::from_table(names, table)
}

/// The table file for a finite monoid.
pub fn format_monoid_table(monoid: &Monoid) -> Result<String> {
    let els = monoid.elements()?;
    let names: Vec<String> = els.iter().map(|x| monoid.name(x)).collect();
    let mut out = format!("elements: {}\n", names.join(" "));
    for x in &els {
        let row: Vec<String> = els.iter().map(|y| monoid.name(&monoid.op(x, y))).collect();
        out.push_str(&format!("row: {}\n", row.join(" ")));
    }
    Ok(out)
}

/// Matrix file: the dimension `d`, then `d` lines of `d` algebra literals
/// separated by `;`.
pub fn parse_matrix(field: &Field, monoid: &Monoid, text: &str) -> Result<AlgMatrix> {
    let mut it = lines(text);
    let (n0, l0) = it.next().ok_or_else(|| Error::parse(1, 1, "missing dimension"))?;
    let d: usize = l0
        .trim()
        .parse()
        .ok()
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::parse(n0, column(l0, l0.trim_start()), "dimension must be a positive integer"))?;
    let mut entries = Vec::with_capacity(d * d);
    let mut last = n0;
    for (n, l) in it {
        last = n;
        if entries.len() == d * d {
            return Err(Error::parse(n, 1, "too many rows"));
        }
        let cells: Vec<&str> = l.split(';').collect();
        if cells.len() != d {
            return Err(Error::parse(n, 1, format!("row has {} entries, expected {d}", cells.len())));
        }
        for c in cells {
            let lit = c.trim();
            let part = if lit.is_empty() { c } else { lit };
            entries.push(AlgElem::parse(field, monoid, lit).map_err(at(n, l, part))?);
        }
    }
    if entries.len() != d * d {
        return Err(Error::parse(last + 1, 1, format!("expected {d} rows, got {}", entries.len() / d)));
    }
    AlgMatrix::from_entries(d, entries)
}

fn pattern_cells<'a>(monoid: &Monoid, text: &'a str) -> Result<Vec<(usize, &'a str, Elem, &'a str)>> {
    lines(text)
        .map(|(n, l)| {
            let (site, value) = l
                .split_once(":=")
                .ok_or_else(|| Error::parse(n, 1, "expected `element := value`"))?;
            let site_t = site.trim();
            let e = monoid.parse_elem(site_t).map_err(at(n, l, site_t))?;
            Ok((n, l, e, value))
        })
        .collect()
}

fn dup_check<V: Clone>(monoid: &Monoid, cells: Vec<(usize, Elem, V)>) -> Result<crate::pattern::Pattern<V>> {
    let mut seen = std::collections::BTreeSet::new();
    for (n, e, _) in &cells {
        if !seen.insert(e.clone()) {
            return Err(Error::parse(*n, 1, format!("site `{}` given twice", monoid.name(e))));
        }
    }
    crate::pattern::Pattern::from_cells(monoid, cells.into_iter().map(|(_, e, v)| (e, v)))
}

/// Pattern file with symbol values: `element := symbol`.
pub fn parse_symbol_pattern(monoid: &Monoid, alphabet: SymbolAlphabet, text: &str) -> Result<SymbolPattern> {
    let cells = pattern_cells(monoid, text)?
        .into_iter()
        .map(|(n, l, e, value)| {
            let v = value.trim();
            let sym: u32 = v
                .parse()
                .map_err(|_| Error::parse(n, column(l, v), format!("`{v}` is not a symbol")))?;
            alphabet.check(sym).map_err(at(n, l, v))?;
            Ok((n, e, sym))
        })
        .collect::<Result<Vec<_>>>()?;
    dup_check(monoid, cells)
}

/// Pattern file with vector values: `element := l1, l2, ..., ld`.
pub fn parse_vector_pattern(field: &Field, monoid: &Monoid, dim: usize, text: &str) -> Result<VectorPattern> {
    let cells = pattern_cells(monoid, text)?
        .into_iter()
        .map(|(n, l, e, value)| {
            let parts: Vec<&str> = value.split(',').collect();
            if parts.len() != dim {
                return Err(Error::parse(
                    n,
                    column(l, value),
                    format!("expected {dim} components, got {}", parts.len()),
                ));
            }
            let v = parts
                .into_iter()
                .map(|p| field.parse_scalar(p).map_err(at(n, l, p.trim_start())))
                .collect::<Result<Vec<_>>>()?;
            Ok((n, e, v))
        })
        .collect::<Result<Vec<_>>>()?;
    dup_check(monoid, cells)
}

pub fn format_symbol_pattern(c: &SymbolPattern) -> String {
    let m = c.monoid();
    c.cells().map(|(e, v)| format!("{} := {v}\n", m.name(e))).collect()
}

pub fn format_vector_pattern(field: &Field, c: &VectorPattern) -> String {
    let m = c.monoid();
    c.cells()
        .map(|(e, v)| {
            let vals: Vec<String> = v.iter().map(|x| field.format(x)).collect();
            format!("{} := {}\n", m.name(e), vals.join(", "))
        })
        .collect()
}

/// Rule file:
///
/// ```text
/// alphabet: 2
/// memory: e g
/// table: 0110
/// ```
///
/// The table lists `mu` in mixed-radix order, first memory coordinate most
/// significant. Symbols are single characters `0-9a-z`, or whitespace
/// separated decimal integers (always so for alphabets larger than 36).
pub fn parse_rule(monoid: &Monoid, text: &str) -> Result<CARule> {
    let ls: Vec<(usize, &str)> = lines(text).collect();
    if ls.len() != 3 {
        let n = ls.get(3).map_or(ls.last().map_or(1, |l| l.0 + 1), |l| l.0);
        return Err(Error::parse(n, 1, "expected `alphabet:`, `memory:` and `table:` lines"));
    }
    let (na, la) = ls[0];
    let a_text = keyed(na, la, "alphabet")?.trim();
    let a: u32 = a_text
        .parse()
        .map_err(|_| Error::parse(na, column(la, a_text), "alphabet size must be an integer"))?;
    let alphabet = SymbolAlphabet::new(a).map_err(at(na, la, a_text))?;

    let (nm, lm) = ls[1];
    let memory = keyed(nm, lm, "memory")?
        .split_whitespace()
        .map(|s| monoid.parse_elem(s).map_err(at(nm, lm, s)))
        .collect::<Result<Vec<_>>>()?;

    let (nt, lt) = ls[2];
    let t_text = keyed(nt, lt, "table")?.trim();
    let table = if a > 36 || t_text.contains(char::is_whitespace) {
        t_text
            .split_whitespace()
            .map(|s| {
                s.parse::<u32>()
                    .map_err(|_| Error::parse(nt, column(lt, s), format!("`{s}` is not a symbol")))
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        t_text
            .char_indices()
            .map(|(k, ch)| {
                ch.to_digit(36)
                    .filter(|&v| v < a)
                    .ok_or_else(|| Error::parse(nt, column(lt, &t_text[k..]), format!("`{ch}` is not a symbol")))
            })
            .collect::<Result<Vec<_>>>()?
    };
    CARule::new(monoid, alphabet, memory, table).map_err(at(nt, lt, t_text))
}

pub fn format_rule(rule: &CARule) -> String {
    let m = rule.monoid();
    let a = rule.alphabet().size();
    let memory: Vec<String> = rule.memory().iter().map(|s| m.name(s)).collect();
    let table = if a <= 36 {
        rule.table()
            .iter()
            .map(|&v| char::from_digit(v, 36).expect("below 36"))
            .collect::<String>()
    } else {
        rule.table().iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
    };
    format!("alphabet: {a}\nmemory: {}\ntable: {table}\n", memory.join(" "))
}

/// Comma-separated element names.
pub fn parse_elem_list(monoid: &Monoid, text: &str) -> Result<Vec<Elem>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|s| monoid.parse_elem(s.trim())).collect()
}
