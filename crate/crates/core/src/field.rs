//! Exact coefficient fields: GF(p), GF(p^k) and the rationals.
//!
//! A [`Field`] is a cheap, shareable handle; [`Scalar`]s are plain values
//! interpreted by the field that produced them. Finite-field elements are
//! stored as their rank: the coefficient vector `c_0 + c_1 t + ... + c_{k-1} t^{k-1}`
//! read as the base-`p` integer `sum c_i p^i`. This gives 0 and 1 the ranks 0
//! and 1 and orders everything else lexicographically with the leading
//! coefficient most significant.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest field order accepted for GF(p^k).
pub const MAX_ORDER: u64 = 1 << 32;

const TABLE_LIMIT: u64 = 256;

/// Built-in moduli for GF(p^k), q <= 64, coefficients listed from the
/// constant term upwards (monic, leading 1 included).
const DEFAULT_MODULI: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 2, &[3, 6, 1]),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    PrimePower,
    Rational,
}

#[derive(Debug)]
pub struct FieldDesc {
    kind: FieldKind,
    characteristic: u64,
    degree: u32,
    /// Monic modulus, low degree first; empty for prime fields and the rationals.
    modulus: Vec<u64>,
    order: u64,
    mul_table: Option<Vec<u32>>,
}

/// Shared handle to a field description.
#[derive(Clone)]
pub struct Field(Arc<FieldDesc>);

/// A field element in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Finite(u64),
    Rational(BigRational),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Neg,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.kind == other.0.kind
                && self.0.characteristic == other.0.characteristic
                && self.0.degree == other.0.degree
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.kind {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::PrimePower if self.0.degree == 1 => write!(f, "GF({})", self.0.characteristic),
            FieldKind::PrimePower => write!(f, "GF({}^{})", self.0.characteristic, self.0.degree),
        }
    }
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    pub fn rationals() -> Self {
        Field(Arc::new(FieldDesc {
            kind: FieldKind::Rational,
            characteristic: 0,
            degree: 1,
            modulus: Vec::new(),
            order: 0,
            mul_table: None,
        }))
    }

    /// Builds GF(p^k). Without a modulus the built-in table is used, falling
    /// back to the least irreducible monic polynomial (by rank) for orders
    /// beyond the table. A user modulus must be monic of degree `k` and
    /// irreducible; reducible moduli are rejected with a factor.
    pub fn new(p: u64, k: u32, modulus: Option<Vec<u64>>) -> Result<Self> {
        if p == 0 {
            return if k == 1 && modulus.is_none() {
                Ok(Self::rationals())
            } else {
                Err(Error::InvalidField("characteristic 0 requires degree 1".into()))
            };
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidField("degree must be positive".into()));
        }
        let order = (0..k)
            .try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&o| o <= MAX_ORDER))
            .ok_or_else(|| Error::InvalidField(format!("{p}^{k} is too large")))?;
        let modulus = if k == 1 {
            if modulus.is_some() {
                return Err(Error::InvalidField("prime fields take no modulus".into()));
            }
            Vec::new()
        } else {
            match modulus {
                Some(m) => {
                    let m: Vec<u64> = m.into_iter().map(|c| c % p).collect();
                    if m.len() != k as usize + 1 || m[k as usize] != 1 {
                        return Err(Error::InvalidField(format!(
                            "modulus {} is not monic of degree {k}",
                            poly_to_string(&m)
                        )));
                    }
                    if let Some(factor) = find_factor(&m, p) {
                        return Err(Error::ReducibleModulus {
                            modulus: poly_to_string(&m),
                            factor: poly_to_string(&factor),
                        });
                    }
                    m
                }
                None => default_modulus(p, k),
            }
        };
        let mut desc = FieldDesc {
            kind: FieldKind::PrimePower,
            characteristic: p,
            degree: k,
            modulus,
            order,
            mul_table: None,
        };
        if k > 1 && order <= TABLE_LIMIT {
            let q = order as usize;
            let mut table = vec![0u32; q * q];
            for a in 0..q {
                for b in a..q {
                    let c = desc.poly_mul(a as u64, b as u64) as u32;
                    table[a * q + b] = c;
                    table[b * q + a] = c;
                }
            }
            desc.mul_table = Some(table);
        }
        Ok(Field(Arc::new(desc)))
    }

    /// Parses `p`, `p^k`, `q` (a prime power), or `Q`, optionally followed by
    /// `:modulus` written in `t`, e.g. `2^2:t^2+t+1`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        if spec == "Q" || spec == "q" || spec == "0" {
            return Ok(Self::rationals());
        }
        let (head, modulus) = match spec.split_once(':') {
            Some((h, m)) => (h, Some(m)),
            None => (spec.as_str(), None),
        };
        let bad = || Error::InvalidField(format!("cannot parse field `{spec}`"));
        let (p, k) = match head.split_once('^') {
            Some((p, k)) => (
                p.parse::<u64>().map_err(|_| bad())?,
                k.parse::<u32>().map_err(|_| bad())?,
            ),
            None => {
                let q = head.parse::<u64>().map_err(|_| bad())?;
                prime_power(q).ok_or(Error::NotPrime(q))?
            }
        };
        let modulus = match modulus {
            None => None,
            Some(m) => Some(parse_poly_in_t(m, p)?),
        };
        Self::new(p, k, modulus)
    }

    pub fn desc(&self) -> &FieldDesc {
        &self.0
    }

    pub fn kind(&self) -> FieldKind {
        self.0.kind
    }

    pub fn characteristic(&self) -> u64 {
        self.0.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    /// Monic modulus, low degree first (empty when `degree == 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self.0.kind {
            FieldKind::PrimePower => Some(self.0.order),
            FieldKind::Rational => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.0.kind == FieldKind::PrimePower
    }

    /// Compact name used in the CLI and serialized output: `2`, `2^2`, `Q`.
    pub fn spec_string(&self) -> String {
        match self.0.kind {
            FieldKind::Rational => "Q".into(),
            _ if self.0.degree == 1 => self.0.characteristic.to_string(),
            _ => format!("{}^{}", self.0.characteristic, self.0.degree),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self.0.kind {
            FieldKind::PrimePower => Scalar::Finite(0),
            FieldKind::Rational => Scalar::Rational(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.0.kind {
            FieldKind::PrimePower => Scalar::Finite(1),
            FieldKind::Rational => Scalar::Rational(BigRational::one()),
        }
    }

    /// Image of an integer under the canonical ring map from the integers.
    pub fn from_int(&self, n: i64) -> Scalar {
        match self.0.kind {
            FieldKind::PrimePower => {
                Scalar::Finite(n.rem_euclid(self.0.characteristic as i64) as u64)
            }
            FieldKind::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn rational(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        match self.0.kind {
            FieldKind::Rational => Ok(Scalar::Rational(BigRational::new(num.into(), den.into()))),
            FieldKind::PrimePower => {
                let d = self.from_int(den);
                self.div(&self.from_int(num), &d)
            }
        }
    }

    /// The generator `t` of GF(p^k), k > 1.
    pub fn generator(&self) -> Option<Scalar> {
        (self.0.kind == FieldKind::PrimePower && self.0.degree > 1)
            .then(|| Scalar::Finite(self.0.characteristic))
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Finite(v) => *v == 0,
            Scalar::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Finite(v) => *v == 1,
            Scalar::Rational(r) => r.is_one(),
        }
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        match (self.0.kind, a) {
            (FieldKind::PrimePower, Scalar::Finite(v)) => *v < self.0.order,
            (FieldKind::Rational, Scalar::Rational(_)) => true,
            _ => false,
        }
    }

    pub fn check(&self, a: &Scalar) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::MixedFields(self.to_string()))
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(self.0.add_codes(*x, *y)),
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            _ => panic!("scalars from different fields"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Finite(x) => Scalar::Finite(self.0.neg_code(*x)),
            Scalar::Rational(x) => Scalar::Rational(-x),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(self.0.mul_codes(*x, *y)),
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            _ => panic!("scalars from different fields"),
        }
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            Scalar::Finite(x) if self.0.degree == 1 => {
                Scalar::Finite(pow_mod(*x, self.0.characteristic - 2, self.0.characteristic))
            }
            Scalar::Finite(_) => self.pow(a, self.0.order - 2),
            Scalar::Rational(x) => Scalar::Rational(x.recip()),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Checked arithmetic entry point: validates membership of both operands.
    /// `b` is ignored by the unary operations.
    pub fn arith(&self, op: ScalarOp, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        if !matches!(op, ScalarOp::Inv | ScalarOp::Neg) {
            self.check(b)?;
        }
        Ok(match op {
            ScalarOp::Add => self.add(a, b),
            ScalarOp::Sub => self.sub(a, b),
            ScalarOp::Mul => self.mul(a, b),
            ScalarOp::Div => self.div(a, b)?,
            ScalarOp::Inv => self.inv(a)?,
            ScalarOp::Neg => self.neg(a),
        })
    }

    /// Position of `a` in the canonical enumeration of a finite field.
    pub fn rank(&self, a: &Scalar) -> Result<u64> {
        match a {
            Scalar::Finite(v) if self.is_finite() && *v < self.0.order => Ok(*v),
            Scalar::Finite(_) => Err(Error::MixedFields(self.to_string())),
            Scalar::Rational(_) => Err(Error::NotFinite(self.to_string())),
        }
    }

    pub fn from_rank(&self, rank: u64) -> Result<Scalar> {
        if !self.is_finite() {
            return Err(Error::NotFinite(self.to_string()));
        }
        if rank >= self.0.order {
            return Err(Error::InvalidField(format!("rank {rank} out of range for {self}")));
        }
        Ok(Scalar::Finite(rank))
    }

    /// All elements of a finite field in rank order.
    pub fn elements(&self) -> Result<impl Iterator<Item = Scalar>> {
        let q = self.order().ok_or_else(|| Error::NotFinite(self.to_string()))?;
        Ok((0..q).map(Scalar::Finite))
    }

    /// Coefficients `c_0 .. c_{k-1}` of a finite-field element.
    pub fn coefficients(&self, a: &Scalar) -> Vec<u64> {
        match a {
            Scalar::Finite(v) => self.0.digits(*v),
            Scalar::Rational(_) => Vec::new(),
        }
    }

    pub fn from_coefficients(&self, coeffs: &[u64]) -> Scalar {
        let p = self.0.characteristic;
        let reduced = self.0.reduce_poly(coeffs.iter().map(|c| c % p).collect());
        Scalar::Finite(self.0.encode(&reduced))
    }

    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Finite(v) if self.0.degree == 1 => v.to_string(),
            Scalar::Finite(v) => poly_to_string(&self.0.digits(*v)),
        }
    }

    /// Parses a field literal: a decimal integer for prime fields, a
    /// polynomial in `t` for extension fields, `a/b` for the rationals.
    /// Whitespace is ignored.
    pub fn parse_scalar(&self, literal: &str) -> Result<Scalar> {
        let s: String = literal.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |msg: &str| Error::InvalidField(format!("bad literal `{literal}` for {self}: {msg}"));
        if s.is_empty() {
            return Err(bad("empty"));
        }
        match self.0.kind {
            FieldKind::Rational => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s.as_str(), "1"),
                };
                let n: BigInt = n.parse().map_err(|_| bad("numerator"))?;
                let d: BigInt = d.parse().map_err(|_| bad("denominator"))?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rational(BigRational::new(n, d)))
            }
            FieldKind::PrimePower if self.0.degree == 1 => {
                if let Some((n, d)) = s.split_once('/') {
                    let n: i64 = n.parse().map_err(|_| bad("numerator"))?;
                    let d: i64 = d.parse().map_err(|_| bad("denominator"))?;
                    return self.rational(n, d);
                }
                let n: BigInt = s.parse().map_err(|_| bad("expected an integer"))?;
                let p = BigInt::from(self.0.characteristic);
                let r = ((n % &p) + &p) % &p;
                Ok(Scalar::Finite(r.to_u64().expect("reduced below p")))
            }
            FieldKind::PrimePower => {
                let coeffs = parse_poly_in_t(&s, self.0.characteristic)?;
                Ok(self.from_coefficients(&coeffs))
            }
        }
    }
}

impl FieldDesc {
    fn digits(&self, mut v: u64) -> Vec<u64> {
        let p = self.characteristic;
        (0..self.degree)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    fn encode(&self, digits: &[u64]) -> u64 {
        digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.characteristic + d)
    }

    fn add_codes(&self, x: u64, y: u64) -> u64 {
        let p = self.characteristic;
        if self.degree == 1 {
            return (x + y) % p;
        }
        if p == 2 {
            return x ^ y;
        }
        let (mut x, mut y, mut out, mut place) = (x, y, 0u64, 1u64);
        for _ in 0..self.degree {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        out
    }

    fn neg_code(&self, x: u64) -> u64 {
        let p = self.characteristic;
        if self.degree == 1 {
            return (p - x % p) % p;
        }
        let digits: Vec<u64> = self.digits(x).into_iter().map(|d| (p - d) % p).collect();
        self.encode(&digits)
    }

    fn mul_codes(&self, x: u64, y: u64) -> u64 {
        if self.degree == 1 {
            return ((x as u128 * y as u128) % self.characteristic as u128) as u64;
        }
        if let Some(table) = &self.mul_table {
            return table[(x * self.order + y) as usize] as u64;
        }
        self.poly_mul(x, y)
    }

    fn poly_mul(&self, x: u64, y: u64) -> u64 {
        let p = self.characteristic as u128;
        let a = self.digits(x);
        let b = self.digits(y);
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u128 + ai as u128 * bj as u128) % p) as u64;
            }
        }
        let reduced = self.reduce_poly(prod);
        self.encode(&reduced)
    }

    /// Reduces a coefficient vector modulo the field modulus, returning
    /// exactly `degree` coefficients.
    fn reduce_poly(&self, mut poly: Vec<u64>) -> Vec<u64> {
        let k = self.degree as usize;
        let p = self.characteristic;
        if k > 1 {
            while poly.len() > k {
                let lead = poly.pop().expect("nonempty");
                if lead == 0 {
                    continue;
                }
                let shift = poly.len() - k;
                for (i, &m) in self.modulus[..k].iter().enumerate() {
                    let sub = (lead as u128 * m as u128 % p as u128) as u64;
                    poly[shift + i] = (poly[shift + i] + p - sub) % p;
                }
            }
        } else {
            let v = poly.iter().copied().fold(0, |acc, c| (acc + c) % p);
            poly = vec![v];
        }
        poly.resize(k, 0);
        poly
    }
}

fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let m128 = m as u128;
    let mut b = base as u128 % m128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        e >>= 1;
    }
    acc as u64
}

/// Returns `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut k) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn default_modulus(p: u64, k: u32) -> Vec<u64> {
    if let Some((_, _, m)) = DEFAULT_MODULI.iter().find(|(pp, kk, _)| *pp == p && *kk == k) {
        return m.to_vec();
    }
    // least irreducible monic polynomial of degree k, by rank of its lower part
    let mut lower = 0u64;
    loop {
        let mut m: Vec<u64> = (0..k)
            .scan(lower, |rest, _| {
                let d = *rest % p;
                *rest /= p;
                Some(d)
            })
            .collect();
        m.push(1);
        if m[0] != 0 && find_factor(&m, p).is_none() {
            return m;
        }
        lower += 1;
    }
}

/// Finds a monic factor of degree in `1..=deg/2`, if any.
pub(crate) fn find_factor(poly: &[u64], p: u64) -> Option<Vec<u64>> {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.checked_pow(d as u32)?;
        for lower in 0..count {
            let mut cand: Vec<u64> = Vec::with_capacity(d + 1);
            let mut rest = lower;
            for _ in 0..d {
                cand.push(rest % p);
                rest /= p;
            }
            cand.push(1);
            if poly_rem(poly, &cand, p).iter().all(|&c| c == 0) {
                return Some(cand);
            }
        }
    }
    None
}

/// Remainder of `a` by a monic `b` over GF(p).
pub(crate) fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = r.pop().expect("nonempty");
        if lead == 0 {
            continue;
        }
        let shift = r.len() - db;
        for i in 0..db {
            let sub = (lead as u128 * b[i] as u128 % p as u128) as u64;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
    }
    r
}

/// Renders a coefficient vector (low degree first) as a polynomial in `t`.
pub fn poly_to_string(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".to_string(),
            (1, c) => format!("{c}t"),
            (i, 1) => format!("t^{i}"),
            (i, c) => format!("{c}t^{i}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// Parses a polynomial in `t` with integer coefficients, reducing them mod `p`.
/// Returns coefficients low degree first (not reduced by any modulus).
pub fn parse_poly_in_t(text: &str, p: u64) -> Result<Vec<u64>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |msg: &str| Error::InvalidField(format!("bad polynomial `{text}`: {msg}"));
    if s.is_empty() {
        return Err(bad("empty"));
    }
    let mut coeffs: Vec<i128> = Vec::new();
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1i128;
        while i < bytes.len() && (bytes[i] == '+' || bytes[i] == '-') {
            if bytes[i] == '-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: Option<i128> = if i > start {
            Some(
                bytes[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| bad("coefficient too large"))?,
            )
        } else {
            None
        };
        if i < bytes.len() && bytes[i] == '*' {
            i += 1;
        }
        let mut power = 0usize;
        if i < bytes.len() && bytes[i] == 't' {
            i += 1;
            power = 1;
            if i < bytes.len() && bytes[i] == '^' {
                i += 1;
                let s2 = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if s2 == i {
                    return Err(bad("missing exponent"));
                }
                power = bytes[s2..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| bad("exponent"))?;
            }
        } else if coeff.is_none() {
            return Err(bad("expected a term"));
        }
        if i < bytes.len() && bytes[i] != '+' && bytes[i] != '-' {
            return Err(bad("unexpected character"));
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] += sign * coeff.unwrap_or(1);
    }
    let p = p as i128;
    Ok(coeffs.into_iter().map(|c| c.rem_euclid(p) as u64).collect())
}

impl Scalar {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Finite(_) => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(spec: &str) -> Field {
        Field::from_spec(spec).unwrap()
    }

    // exhaustive root check is enough for degree <= 3
    fn has_root(poly: &[u64], p: u64) -> bool {
        (0..p).any(|x| {
            poly.iter()
                .rev()
                .fold(0u64, |acc, &c| (acc * x + c) % p)
                == 0
        })
    }

    #[test]
    fn make_fields() {
        let f = Field::new(2, 1, None).unwrap();
        assert_eq!(f.order(), Some(2));
        let f4 = Field::new(2, 2, Some(vec![1, 1, 1])).unwrap();
        assert_eq!(f4.order(), Some(4));
        assert!(!has_root(&[1, 1, 1], 2));
        assert_eq!(Field::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(Field::from_spec("6"), Err(Error::NotPrime(6))));
    }

    #[test]
    fn reducible_modulus_reports_factor() {
        // t^2 + 1 = (t + 1)^2 over GF(2)
        match Field::new(2, 2, Some(vec![1, 0, 1])) {
            Err(Error::ReducibleModulus { factor, .. }) => assert_eq!(factor, "t+1"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Field::new(2, 2, Some(vec![1, 1, 0])).is_err());
    }

    #[test]
    fn default_moduli_are_irreducible() {
        for &(p, k, m) in DEFAULT_MODULI {
            assert_eq!(m.len(), k as usize + 1);
            assert!(find_factor(m, p).is_none(), "GF({p}^{k})");
            if k <= 3 {
                assert!(!has_root(m, p));
            }
        }
        // beyond the table
        let f = Field::new(3, 4, None).unwrap();
        assert!(find_factor(f.modulus(), 3).is_none());
    }

    #[test]
    fn basic_arithmetic_examples() {
        let f3 = gf("3");
        assert_eq!(f3.mul(&f3.from_int(2), &f3.from_int(2)), f3.one());
        let f4 = gf("4");
        let t = f4.generator().unwrap();
        let tt = f4.mul(&t, &t);
        assert_eq!(f4.format(&tt), "t+1");
        let q = Field::rationals();
        let a = q.parse_scalar("1/3").unwrap();
        let b = q.parse_scalar("1/6").unwrap();
        assert_eq!(q.format(&q.add(&a, &b)), "1/2");
    }

    #[test]
    fn division_errors() {
        let f = gf("5");
        assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
        assert_eq!(
            f.arith(ScalarOp::Div, &f.one(), &f.zero()),
            Err(Error::DivisionByZero)
        );
        let q = Field::rationals();
        assert!(matches!(
            f.arith(ScalarOp::Add, &f.one(), &q.one()),
            Err(Error::MixedFields(_))
        ));
        assert!(matches!(
            f.arith(ScalarOp::Add, &Scalar::Finite(7), &f.one()),
            Err(Error::MixedFields(_))
        ));
    }

    #[test]
    fn rank_convention() {
        let f2 = gf("2");
        assert_eq!(f2.rank(&f2.zero()).unwrap(), 0);
        assert_eq!(f2.rank(&f2.one()).unwrap(), 1);
        let f4 = gf("4");
        assert_eq!(f4.rank(&f4.generator().unwrap()).unwrap(), 2);
        let f3 = gf("3");
        assert_eq!(f3.rank(&f3.from_int(2)).unwrap(), 2);
        assert!(matches!(
            Field::rationals().rank(&Field::rationals().one()),
            Err(Error::NotFinite(_))
        ));
    }

    #[test]
    fn rank_is_bijective_up_to_64() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64] {
            let f = Field::from_spec(&q.to_string()).unwrap();
            let mut seen = vec![false; q as usize];
            for a in f.elements().unwrap() {
                let r = f.rank(&a).unwrap() as usize;
                assert!(!seen[r]);
                seen[r] = true;
                assert_eq!(f.from_rank(r as u64).unwrap(), a);
                // rank agrees with lexicographic order on (c_{k-1}, ..., c_0)
                let mut key = f.coefficients(&a);
                key.reverse();
                let back = key.iter().fold(0u64, |acc, &c| acc * f.characteristic() + c);
                assert_eq!(back as usize, r);
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = Field::from_spec(&q.to_string()).unwrap();
            let els: Vec<Scalar> = f.elements().unwrap().collect();
            for a in &els {
                assert_eq!(f.add(a, &f.neg(a)), f.zero());
                if !f.is_zero(a) {
                    assert_eq!(f.mul(a, &f.inv(a).unwrap()), f.one(), "GF({q}) inverse");
                }
                for b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in &els {
                        assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
                        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, &f.add(b, c)),
                            f.add(&f.mul(a, b), &f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for q in [2u64, 3, 4, 8, 9, 16] {
            let f = Field::from_spec(&q.to_string()).unwrap();
            let p = f.characteristic();
            let els: Vec<Scalar> = f.elements().unwrap().collect();
            for a in &els {
                for b in &els {
                    let lhs = f.pow(&f.add(a, b), p);
                    let rhs = f.add(&f.pow(a, p), &f.pow(b, p));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn untabled_extension_matches_tabled() {
        // GF(2^9) multiplies without a table; the multiplicative group has order 511
        let f = Field::new(2, 9, None).unwrap();
        assert!(f.desc().mul_table.is_none());
        let t = f.generator().unwrap();
        assert_eq!(f.pow(&t, 511), f.one());
        let x = Scalar::Finite(300);
        assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
    }

    #[test]
    fn literal_parsing() {
        let f4 = gf("2^2");
        assert_eq!(f4.parse_scalar(" t + 1 ").unwrap(), Scalar::Finite(3));
        assert_eq!(f4.parse_scalar("t^2").unwrap(), Scalar::Finite(3));
        assert_eq!(f4.parse_scalar("3t").unwrap(), Scalar::Finite(2));
        let f9 = gf("9");
        assert_eq!(f9.format(&f9.parse_scalar("2*t+2").unwrap()), "2t+2");
        let f5 = gf("5");
        assert_eq!(f5.parse_scalar("-1").unwrap(), Scalar::Finite(4));
        assert_eq!(f5.parse_scalar("1/2").unwrap(), Scalar::Finite(3));
        let q = Field::rationals();
        assert_eq!(q.format(&q.parse_scalar("4/ 6").unwrap()), "2/3");
        assert!(f5.parse_scalar("t").is_err());
        assert!(f4.parse_scalar("t^").is_err());
        let custom = Field::from_spec("2^2:t^2+t+1").unwrap();
        assert_eq!(custom, f4);
    }
}
