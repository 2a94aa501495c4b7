//! Arithmetic in GF(p^k) over a fixed polynomial basis.
//!
//! An element is stored as a single integer whose base-`p` digits (least
//! significant first) are its coefficients in the basis `1, t, ..., t^(k-1)`.
//! Multiplication goes through discrete log tables built once per context,
//! so a [`FieldCtx`] is cheap to query and immutable after construction.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

/// Fields at most this large carry a full addition table.
const ADD_TABLE_LIMIT: u32 = 256;

/// An element of some [`FieldCtx`], encoded as its integer index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Felt(pub u32);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The operations exposed through [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow(i64),
}

pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Felt,
    /// `exp[i] = g^i`, doubled so that `log a + log b` never needs a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl FieldCtx {
    /// Builds GF(p^k). Without an explicit modulus the lexicographically
    /// smallest monic irreducible polynomial (constant term most significant)
    /// is used, so the same `(p, k)` always yields the same context.
    pub fn new(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<FieldCtx> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_ORDER);
        let q = match q {
            Some(q) => q as u32,
            None => return Err(Error::FieldTooLarge { p, k }),
        };
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || m[k as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus { expected: k, p });
                }
                if !fp::is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(fp::display(m)));
                }
                m.to_vec()
            }
            None => fp::smallest_irreducible(p, k),
        };
        Ok(Self::with_modulus(p, k, q, modulus))
    }

    pub fn new_shared(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Arc<FieldCtx>> {
        Self::new(p, k, modulus).map(Arc::new)
    }

    /// Prime field GF(p).
    pub fn prime(p: u32) -> Result<Arc<FieldCtx>> {
        Self::new_shared(p, 1, None)
    }

    /// GF(q) for a prime power q, with the default modulus.
    pub fn of_order(q: u32) -> Result<Arc<FieldCtx>> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrime(q as u64))?;
        Self::new_shared(p, k, None)
    }

    fn with_modulus(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> FieldCtx {
        let mut ctx = FieldCtx {
            p,
            k,
            q,
            modulus,
            generator: Felt::ONE,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add_table: None,
        };
        ctx.neg = (0..q).map(|v| ctx.neg_digits(v)).collect();
        if q <= ADD_TABLE_LIMIT {
            let mut table = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = ctx.add_digits(a, b);
                }
            }
            ctx.add_table = Some(table);
        }
        ctx.build_log_tables();
        ctx
    }

    fn build_log_tables(&mut self) {
        let order = self.q - 1;
        let factors = prime_factors(order as u64);
        let generator = (1..self.q)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.pow_slow(g, order as u64 / r) != 1 || order == 1)
            })
            .expect("multiplicative group of a finite field is cyclic");
        self.generator = Felt(generator);
        let mut exp = Vec::with_capacity(2 * order as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp.push(x);
            log[x as usize] = i;
            x = self.mul_slow(x, generator);
        }
        exp.extend_from_within(..);
        self.exp = exp;
        self.log = log;
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// A primitive element (generator of the multiplicative group).
    pub fn generator(&self) -> Felt {
        self.generator
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            k: self.k,
            modulus: Some(self.modulus.clone()),
        }
    }

    /// Returns `x` if it is a valid element of this field.
    pub fn element(&self, x: u32) -> Result<Felt> {
        if x < self.q {
            Ok(Felt(x))
        } else {
            Err(Error::ElementOutOfRange { value: x, q: self.q })
        }
    }

    #[inline]
    pub fn contains(&self, x: Felt) -> bool {
        x.0 < self.q
    }

    /// Image of the integer `n` under `Z -> GF(p)`.
    #[inline]
    pub fn from_int(&self, n: i64) -> Felt {
        Felt(n.rem_euclid(self.p as i64) as u32)
    }

    /// All elements in ascending index order.
    pub fn elements(&self) -> impl Iterator<Item = Felt> + Clone {
        (0..self.q).map(Felt)
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        if let Some(t) = &self.add_table {
            return Felt(t[(a.0 * self.q + b.0) as usize]);
        }
        Felt(self.add_digits(a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: Felt) -> Felt {
        Felt(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if a.0 == 0 || b.0 == 0 {
            return Felt::ZERO;
        }
        Felt(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Felt) -> Result<Felt> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.q - 1;
        Ok(Felt(self.exp[((order - self.log[a.0 as usize]) % order) as usize]))
    }

    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer exponent; negative exponents go through the inverse.
    pub fn pow(&self, a: Felt, e: i64) -> Result<Felt> {
        if a.0 == 0 {
            return match e {
                0 => Ok(Felt::ONE),
                e if e > 0 => Ok(Felt::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let order = (self.q - 1) as i64;
        let l = self.log[a.0 as usize] as i64;
        let r = ((l as i128 * e as i128).rem_euclid(order as i128)) as usize;
        Ok(Felt(self.exp[r]))
    }

    /// `a^e` for a nonnegative exponent.
    #[inline]
    pub fn pow_u(&self, a: Felt, e: u64) -> Felt {
        if e == 0 {
            return Felt::ONE;
        }
        if a.0 == 0 {
            return Felt::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Felt(self.exp[((l * (e % order)) % order) as usize])
    }

    /// `x^(p^r)`; `r = k` is the q-power Frobenius, which is the identity.
    pub fn frobenius(&self, x: Felt, r: u32) -> Felt {
        if x.0 == 0 {
            return x;
        }
        let order = (self.q - 1) as u64;
        let e = mod_pow(self.p as u64, r as u64, order);
        self.pow_u(x, if e == 0 { order } else { e })
    }

    /// Multiplies an element by an integer (repeated addition).
    pub fn scale_int(&self, n: u64, a: Felt) -> Felt {
        self.mul(self.from_int((n % self.p as u64) as i64), a)
    }

    /// Sum of a slice of elements.
    pub fn sum<I: IntoIterator<Item = Felt>>(&self, it: I) -> Felt {
        it.into_iter().fold(Felt::ZERO, |acc, x| self.add(acc, x))
    }

    /// Coefficients of `x` in the polynomial basis.
    pub fn digits(&self, x: Felt) -> Vec<u32> {
        let mut v = x.0;
        (0..self.k)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Felt {
        Felt(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d))
    }

    /// GF(q^m), built independently with its own default modulus.
    pub fn extension(&self, m: u32) -> Result<FieldCtx> {
        FieldCtx::new(self.p, self.k * m, None)
    }

    /// An embedding of this field into `big`, as a lookup table indexed by
    /// element value. Fails unless `big` has the same characteristic and a
    /// degree divisible by ours.
    pub fn embedding_into(&self, big: &FieldCtx) -> Result<Vec<Felt>> {
        if big.p != self.p || !big.k.is_multiple_of(self.k) {
            return Err(Error::ContextMismatch);
        }
        // A root of our modulus inside `big` is the image of t.
        let root = big
            .elements()
            .find(|&r| {
                let value = self
                    .modulus
                    .iter()
                    .rev()
                    .fold(Felt::ZERO, |acc, &c| big.add(big.mul(acc, r), Felt(c)));
                value.is_zero()
            })
            .expect("a subfield of matching degree exists");
        let powers: Vec<Felt> = (0..self.k).map(|i| big.pow_u(root, i as u64)).collect();
        Ok(self
            .elements()
            .map(|x| {
                let digits = self.digits(x);
                digits.iter().zip(&powers).fold(Felt::ZERO, |acc, (&d, &r)| {
                    big.add(acc, big.mul(Felt(d), r))
                })
            })
            .collect())
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn neg_digits(&self, a: u32) -> u32 {
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let da = self.digits(Felt(a));
        let db = self.digits(Felt(b));
        let prod = fp::mul(&da, &db, self.p);
        let r = fp::rem(&prod, &self.modulus, self.p);
        let mut digits = r;
        digits.resize(self.k as usize, 0);
        self.from_digits(&digits).0
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }
}

/// `field_make`: validated construction from a prime, a degree and an
/// optional modulus.
pub fn field_make(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Arc<FieldCtx>> {
    FieldCtx::new_shared(p, k, modulus)
}

/// Checked arithmetic entry point; every operand is validated against `ctx`.
pub fn field_arith(ctx: &FieldCtx, op: FieldOp, operands: &[Felt]) -> Result<Felt> {
    for &x in operands {
        ctx.element(x.0)?;
    }
    let unary = |name| match operands {
        [a] => Ok(*a),
        _ => Err(Error::Arity(name)),
    };
    let binary = |name| match operands {
        [a, b] => Ok((*a, *b)),
        _ => Err(Error::Arity(name)),
    };
    match op {
        FieldOp::Add => binary("add").map(|(a, b)| ctx.add(a, b)),
        FieldOp::Sub => binary("sub").map(|(a, b)| ctx.sub(a, b)),
        FieldOp::Mul => binary("mul").map(|(a, b)| ctx.mul(a, b)),
        FieldOp::Div => binary("div").and_then(|(a, b)| ctx.div(a, b)),
        FieldOp::Neg => unary("neg").map(|a| ctx.neg(a)),
        FieldOp::Inv => unary("inv").and_then(|a| ctx.inv(a)),
        FieldOp::Pow(e) => unary("pow").and_then(|a| ctx.pow(a, e)),
    }
}

/// Field description used by curve files and CLI flags:
/// `p=<p> k=<k> mod=<c0,c1,...,ck>`; commas may replace the spaces and the
/// modulus may be omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    pub modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn build(&self) -> Result<Arc<FieldCtx>> {
        FieldCtx::new_shared(self.p, self.k, self.modulus.as_deref())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} k={}", self.p, self.k)?;
        if let Some(m) = &self.modulus {
            let coeffs: Vec<String> = m.iter().map(|c| c.to_string()).collect();
            write!(f, " mod={}", coeffs.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FieldSpec> {
        let err = |column: usize, message: String| Error::Parse { line: 1, column, message };
        let mut p = None;
        let mut k = None;
        let mut modulus: Option<Vec<u32>> = None;
        let mut in_mod = false;
        let mut column = 1;
        for raw in s.split(|c: char| c == ',' || c.is_whitespace()) {
            let token = raw.trim();
            let here = column;
            column += raw.len() + 1;
            if token.is_empty() {
                continue;
            }
            let number = |text: &str| {
                text.parse::<u32>()
                    .map_err(|_| err(here, format!("expected an integer, found {text:?}")))
            };
            match token.split_once('=') {
                Some((key, value)) => {
                    in_mod = false;
                    match key {
                        "p" => p = Some(number(value)?),
                        "k" => k = Some(number(value)?),
                        "mod" => {
                            in_mod = true;
                            let mut coeffs = Vec::new();
                            if !value.is_empty() {
                                coeffs.push(number(value)?);
                            }
                            modulus = Some(coeffs);
                        }
                        other => return Err(err(here, format!("unknown key {other:?}"))),
                    }
                }
                None if in_mod => modulus.as_mut().expect("in mod").push(number(token)?),
                None => return Err(err(here, format!("unexpected token {token:?}"))),
            }
        }
        let p = p.ok_or_else(|| err(1, "missing p=".into()))?;
        let k = k.unwrap_or(1);
        Ok(FieldSpec { p, k, modulus })
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^k` when it is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let factors = prime_factors(q as u64);
    match factors.as_slice() {
        [p] => {
            let p = *p as u32;
            let mut k = 0;
            let mut n = q;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            Some((p, k))
        }
        _ => None,
    }
}

/// `sqrt(q)` when `q` is a perfect square.
pub fn exact_sqrt(q: u64) -> Option<u64> {
    let r = (q as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&s| s * s == q)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn mod_pow(base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Dense polynomials over GF(p), coefficient vectors lowest degree first.
mod fp {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo a monic `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap() as u64;
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                let sub = lead * c as u64 % p as u64;
                let idx = shift + i;
                r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    /// Trial division by every monic polynomial of degree at most `deg/2`.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let deg = m.len() - 1;
        if deg <= 1 {
            return true;
        }
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for idx in 0..count {
                let mut div = Vec::with_capacity(d + 1);
                let mut v = idx;
                for _ in 0..d {
                    div.push((v % p as u64) as u32);
                    v /= p as u64;
                }
                div.push(1);
                if rem(m, &div, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    pub fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
        let k = k as usize;
        // Lexicographic on (c0, c1, ..., c_{k-1}): c0 is the most significant digit.
        let mut coeffs = vec![0u32; k];
        loop {
            let mut candidate = coeffs.clone();
            candidate.push(1);
            if is_irreducible(&candidate, p) {
                return candidate;
            }
            let mut i = k;
            loop {
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                assert!(i > 0, "an irreducible polynomial of every degree exists");
            }
        }
    }

    pub fn display(m: &[u32]) -> String {
        let terms: Vec<String> = m
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
                match i {
                    0 => coeff,
                    1 => format!("{coeff}t"),
                    _ => format!("{coeff}t^{i}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Arc<FieldCtx> {
        FieldCtx::of_order(q).unwrap()
    }

    #[test]
    fn default_moduli() {
        assert_eq!(gf(4).modulus(), &[1, 1, 1]);
        assert_eq!(gf(5).modulus(), &[0, 1]);
        assert_eq!(gf(9).modulus(), &[1, 0, 1]);
        assert_eq!(gf(4).q(), 4);
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(matches!(
            FieldCtx::new(2, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus(_))
        ));
        assert!(matches!(FieldCtx::new(2, 2, Some(&[1, 1])), Err(Error::BadModulus { .. })));
        assert_eq!(FieldCtx::new(6, 1, None).unwrap_err(), Error::NotPrime(6));
        assert!(matches!(FieldCtx::new(2, 21, None), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn gf4_examples() {
        let f = gf(4);
        assert_eq!(f.add(Felt(2), Felt(3)), Felt(1));
        assert_eq!(f.mul(Felt(2), Felt(2)), Felt(3));
        assert_eq!(f.inv(Felt(2)).unwrap(), Felt(3));
        assert_eq!(f.frobenius(Felt(2), 1), Felt(3));
        assert_eq!(f.frobenius(Felt(2), 2), Felt(2));
        assert_eq!(f.elements().map(|x| x.0).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn checked_arith() {
        let f = gf(4);
        assert_eq!(field_arith(&f, FieldOp::Add, &[Felt(2), Felt(3)]), Ok(Felt(1)));
        assert_eq!(field_arith(&f, FieldOp::Div, &[Felt(1), Felt(0)]), Err(Error::DivisionByZero));
        assert_eq!(field_arith(&f, FieldOp::Inv, &[Felt(0)]), Err(Error::DivisionByZero));
        assert!(matches!(
            field_arith(&f, FieldOp::Mul, &[Felt(4), Felt(1)]),
            Err(Error::ElementOutOfRange { .. })
        ));
        assert_eq!(field_arith(&f, FieldOp::Pow(-1), &[Felt(2)]), Ok(Felt(3)));
        assert_eq!(field_arith(&f, FieldOp::Neg, &[Felt(2), Felt(1)]), Err(Error::Arity("neg")));
    }

    #[test]
    fn axioms_exhaustive_small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25] {
            let f = gf(q);
            for a in f.elements() {
                assert_eq!(f.pow_u(a, q as u64), a);
                if !a.is_zero() {
                    assert_eq!(f.pow_u(a, q as u64 - 1), Felt::ONE);
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Felt::ONE);
                }
                assert_eq!(f.add(a, f.neg(a)), Felt::ZERO);
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_bijective_homomorphism() {
        for q in [4, 8, 9, 25, 27] {
            let f = gf(q);
            for r in 0..=f.k() {
                let mut seen: Vec<Felt> = f.elements().map(|x| f.frobenius(x, r)).collect();
                seen.sort();
                seen.dedup();
                assert_eq!(seen.len(), q as usize);
                for a in f.elements() {
                    for b in f.elements() {
                        assert_eq!(
                            f.frobenius(f.add(a, b), r),
                            f.add(f.frobenius(a, r), f.frobenius(b, r))
                        );
                    }
                }
            }
            for x in f.elements() {
                assert_eq!(f.frobenius(x, f.k()), x);
            }
        }
    }

    #[test]
    fn deterministic_construction() {
        let a = FieldCtx::new(3, 4, None).unwrap();
        let b = FieldCtx::new(3, 4, None).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a, b);
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let small = gf(4);
        let big = small.extension(3).unwrap();
        let map = small.embedding_into(&big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(map[small.add(a, b).0 as usize], big.add(map[a.0 as usize], map[b.0 as usize]));
                assert_eq!(map[small.mul(a, b).0 as usize], big.mul(map[a.0 as usize], map[b.0 as usize]));
            }
        }
        assert!(small.embedding_into(&FieldCtx::of_order(8).unwrap()).is_err());
    }

    #[test]
    fn spec_strings() {
        let s: FieldSpec = "p=2 k=2 mod=1,1,1".parse().unwrap();
        assert_eq!(s, FieldSpec { p: 2, k: 2, modulus: Some(vec![1, 1, 1]) });
        let s: FieldSpec = "p=2,k=2,mod=1,1,1".parse().unwrap();
        assert_eq!(s.modulus, Some(vec![1, 1, 1]));
        let s: FieldSpec = "p=5,k=1".parse().unwrap();
        assert_eq!(s.build().unwrap().q(), 5);
        assert_eq!(s.to_string(), "p=5 k=1");
        assert!("p=2 k=x".parse::<FieldSpec>().is_err());
        assert!("q=4".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn large_field_builds() {
        let f = FieldCtx::new(2, 18, None).unwrap();
        let g = f.generator();
        assert_eq!(f.pow_u(g, (f.q() - 1) as u64), Felt::ONE);
        assert_ne!(f.pow_u(g, ((f.q() - 1) / 3) as u64), Felt::ONE);
    }
}
