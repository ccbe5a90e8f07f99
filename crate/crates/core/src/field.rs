//! Finite fields F_q, q = p^e > 2.
//!
//! Elements are stored as `u32` indices: the residue `r_0 + r_1 x + ... + r_{e-1} x^{e-1}`
//! modulo the defining polynomial is encoded as `r_0 + r_1 p + ... + r_{e-1} p^{e-1}`.
//! For e = 1 the index is the residue itself. Contexts are interned, so a [`Field`]
//! is a copyable handle and two handles are equal iff they describe the same field
//! with the same modulus.

use std::fmt;
use std::sync::Mutex;

use crate::error::{Error, Result};

/// Built-in defining polynomials (coefficients low to high, monic).
const MODULUS_TABLE: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
];

const MAX_TABLE_Q: u32 = 1024;

pub struct FieldContext {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl FieldContext {
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Defining polynomial over F_p, low to high; `[0, 1]` for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

static REGISTRY: Mutex<Vec<&'static FieldContext>> = Mutex::new(Vec::new());

/// Handle to an interned, immutable [`FieldContext`].
#[derive(Clone, Copy)]
pub struct Field(&'static FieldContext);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}
impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        std::ptr::hash(self.0, state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n as u64 {
        if (n as u64).is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Splits `q` as `p^e`, if it is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, e))
}

impl Field {
    /// The field with `q` elements, using the built-in modulus table for small
    /// prime powers and the first irreducible polynomial (in enumeration order)
    /// otherwise.
    pub fn new(q: u32) -> Result<Field> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        check_q(q)?;
        if e == 1 {
            return Ok(intern(p, 1, vec![0, 1]));
        }
        if let Some((_, _, m)) = MODULUS_TABLE.iter().find(|(pp, ee, _)| *pp == p && *ee == e) {
            return Field::with_modulus(p, m.to_vec());
        }
        let base = Field::prime(p)?;
        let m = crate::poly::enumerate_monics(base, e as usize)
            .find(|f| f.is_irreducible().unwrap_or(false))
            .expect("irreducible polynomials exist in every degree");
        Field::with_modulus(p, m.coeffs().to_vec())
    }

    /// F_p^e built as F_p[x]/(modulus); `modulus` is monic, low to high.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let e = modulus.len().saturating_sub(1) as u32;
        if e == 0 || modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus must be monic of degree >= 1 with coefficients in 0..p".into()));
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or_else(|| Error::InvalidField("field too large".into()))? as u32;
        check_q(q)?;
        if e == 1 {
            return Ok(intern(p, 1, vec![0, 1]));
        }
        if q > MAX_TABLE_Q {
            return Err(Error::InvalidField(format!("extension fields are supported up to q = {MAX_TABLE_Q}")));
        }
        let base = Field::prime(p)?;
        let m = crate::poly::APoly::new(base, modulus.clone());
        if !m.is_irreducible()? {
            return Err(Error::InvalidField(format!("modulus {m} is reducible over F_{p}")));
        }
        Ok(intern(p, e, modulus))
    }

    /// The prime field F_p; also used internally for p = 2 while building extensions.
    fn prime(p: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(intern(p, 1, vec![0, 1]))
    }

    pub fn context(&self) -> &'static FieldContext {
        self.0
    }
    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn e(&self) -> u32 {
        self.0.e
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.0.tables {
            None => {
                let s = a as u64 + b as u64;
                (if s >= self.0.p as u64 { s - self.0.p as u64 } else { s }) as u32
            }
            Some(t) => t.add[(a * self.0.q + b) as usize],
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match &self.0.tables {
            None => {
                if a == 0 {
                    0
                } else {
                    self.0.p - a
                }
            }
            Some(t) => t.neg[a as usize],
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.0.tables {
            None => ((a as u64 * b as u64) % self.0.p as u64) as u32,
            Some(t) => t.mul[(a * self.0.q + b) as usize],
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        Some(match &self.0.tables {
            None => self.pow(a, (self.0.p - 2) as u64),
            Some(t) => t.inv[a as usize],
        })
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    /// The class of `x` (the generator of F_q over F_p); for prime fields there is none.
    pub fn generator(&self) -> Option<u32> {
        (self.0.e > 1).then_some(self.0.p)
    }

    /// Residue digits of an element over F_p, low to high (length e).
    pub fn residue(&self, a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.e as usize);
        let mut v = a;
        for _ in 0..self.0.e {
            out.push(v % self.0.p);
            v /= self.0.p;
        }
        out
    }

    /// Elements in the fixed enumeration order 0, 1, ..., q-1 of their indices.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    /// Printable form: an integer for elements of the prime field, otherwise the
    /// residue as a bracketed polynomial in `x`.
    pub fn format_elem(&self, a: u32) -> String {
        if a < self.0.p {
            return a.to_string();
        }
        let digits = self.residue(a);
        let mut parts = Vec::new();
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        format!("[{}]", parts.join(" + "))
    }
}

fn check_q(q: u32) -> Result<()> {
    if q <= 2 {
        return Err(Error::InvalidField(format!(
            "q = {q} is not supported: the identities implemented here assume q > 2"
        )));
    }
    Ok(())
}

fn intern(p: u32, e: u32, modulus: Vec<u32>) -> Field {
    let mut reg = REGISTRY.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(ctx) = reg.iter().find(|c| c.p == p && c.e == e && c.modulus == modulus) {
        return Field(ctx);
    }
    let q = p.pow(e);
    let tables = (e > 1).then(|| build_tables(p, e, &modulus));
    let ctx: &'static FieldContext = Box::leak(Box::new(FieldContext { p, e, q, modulus, tables }));
    reg.push(ctx);
    Field(ctx)
}

fn build_tables(p: u32, e: u32, modulus: &[u32]) -> Tables {
    let q = p.pow(e) as usize;
    let eu = e as usize;
    let digits = |mut v: usize| -> Vec<u32> {
        (0..eu)
            .map(|_| {
                let d = (v % p as usize) as u32;
                v /= p as usize;
                d
            })
            .collect()
    };
    let index = |ds: &[u32]| -> u32 { ds.iter().rev().fold(0, |acc, &d| acc * p + d) };
    let all: Vec<Vec<u32>> = (0..q).map(digits).collect();
    let mut add = vec![0; q * q];
    let mut mul = vec![0; q * q];
    for a in 0..q {
        for b in 0..q {
            let s: Vec<u32> = (0..eu).map(|i| (all[a][i] + all[b][i]) % p).collect();
            add[a * q + b] = index(&s);
            let mut prod = vec![0u32; 2 * eu];
            for i in 0..eu {
                for j in 0..eu {
                    prod[i + j] = (prod[i + j] + all[a][i] * all[b][j]) % p;
                }
            }
            for k in (eu..2 * eu).rev() {
                let c = prod[k];
                if c == 0 {
                    continue;
                }
                prod[k] = 0;
                for (i, &m) in modulus.iter().enumerate().take(eu) {
                    let idx = k - eu + i;
                    prod[idx] = (prod[idx] + (p - c) * m) % p;
                }
            }
            mul[a * q + b] = index(&prod[..eu]);
        }
    }
    let mut neg = vec![0; q];
    let mut inv = vec![0; q];
    for a in 0..q {
        neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u32;
        if a != 0 {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u32;
        }
    }
    Tables { add, mul, neg, inv }
}

/// An element of F_q carrying its field handle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FqElem {
    field: Field,
    value: u32,
}

impl FqElem {
    pub fn new(field: Field, value: u32) -> FqElem {
        assert!(value < field.q(), "element index out of range");
        FqElem { field, value }
    }
    pub fn field(&self) -> Field {
        self.field
    }
    pub fn value(&self) -> u32 {
        self.value
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_elem(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_q_two_and_non_prime_powers() {
        let err = Field::new(2).unwrap_err();
        assert!(err.to_string().contains("q > 2"), "{err}");
        assert!(Field::new(6).is_err());
        assert!(Field::new(1).is_err());
    }

    #[test]
    fn interning_gives_equal_handles() {
        assert_eq!(Field::new(9).unwrap(), Field::new(9).unwrap());
        assert_ne!(Field::new(3).unwrap(), Field::new(9).unwrap());
    }

    #[test]
    fn field_axioms_small_fields() {
        for q in [3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49] {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
                }
                // a^q = a
                assert_eq!(f.pow(a, q as u64), a);
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(a, b), f.add(b, a));
                }
            }
        }
    }

    #[test]
    fn custom_modulus_is_validated() {
        // x^2 + 1 = (x+1)^2 over F_2 is reducible
        assert!(Field::with_modulus(2, vec![1, 0, 1]).is_err());
        let f = Field::with_modulus(3, vec![2, 1, 1]).unwrap(); // x^2 + x + 2
        assert_eq!(f.q(), 9);
        assert_ne!(f, Field::new(9).unwrap());
    }

    #[test]
    fn element_formatting() {
        let f = Field::new(9).unwrap();
        assert_eq!(f.format_elem(2), "2");
        assert_eq!(f.format_elem(3), "[x]");
        assert_eq!(f.format_elem(7), "[2*x + 1]");
    }
}
