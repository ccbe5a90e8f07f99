//! Univariate polynomials over F_q in θ: the ring A = F_q[θ].

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;

/// Degree with a sentinel for the zero polynomial, ordered below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Deg {
    NegInf,
    Finite(u64),
}

impl Deg {
    pub fn finite(self) -> Option<u64> {
        match self {
            Deg::NegInf => None,
            Deg::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Deg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Deg::NegInf => f.write_str("-inf"),
            Deg::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Element of A = F_q[θ]; `coeffs[i]` is the coefficient of θ^i and the last
/// stored coefficient is nonzero.
#[derive(Clone)]
pub struct APoly {
    field: Field,
    coeffs: Vec<u32>,
}

impl PartialEq for APoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for APoly {}

impl Hash for APoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "APoly({self})")
    }
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl APoly {
    pub fn new(field: Field, mut coeffs: Vec<u32>) -> APoly {
        debug_assert!(coeffs.iter().all(|&c| c < field.q()));
        trim(&mut coeffs);
        APoly { field, coeffs }
    }

    pub fn zero(field: Field) -> APoly {
        APoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> APoly {
        APoly::constant(field, 1)
    }

    pub fn constant(field: Field, c: u32) -> APoly {
        APoly::new(field, vec![c])
    }

    /// The indeterminate θ.
    pub fn theta(field: Field) -> APoly {
        APoly::monomial(field, 1, 1)
    }

    /// `c θ^k`.
    pub fn monomial(field: Field, c: u32, k: usize) -> APoly {
        let mut v = vec![0; k + 1];
        v[k] = c;
        APoly::new(field, v)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn deg(&self) -> Deg {
        match self.coeffs.len() {
            0 => Deg::NegInf,
            n => Deg::Finite(n as u64 - 1),
        }
    }

    /// Degree as `usize`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Leading coefficient (0 for the zero polynomial).
    pub fn lc(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    fn check_field(&self, other: &APoly) {
        assert!(self.field == other.field, "polynomials over different fields");
    }

    pub fn scale(&self, c: u32) -> APoly {
        if c == 0 {
            return APoly::zero(self.field);
        }
        let f = self.field;
        APoly { field: f, coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> APoly {
        match self.field.inv(self.lc()) {
            None => self.clone(),
            Some(inv) => self.scale(inv),
        }
    }

    /// Euclidean division: `self = q * b + r` with `deg r < deg b`.
    pub fn divrem(&self, b: &APoly) -> Result<(APoly, APoly)> {
        self.check_field(b);
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.field;
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((APoly::zero(f), self.clone()));
        }
        let inv_lc = f.inv(b.lc()).expect("nonzero leading coefficient");
        let n = self.coeffs.len();
        let mut quot = vec![0u32; n - db];
        match f.context().e() {
            1 if f.p() < (1 << 16) => {
                let p = f.p() as u64;
                let mut r: Vec<u64> = self.coeffs.iter().map(|&c| c as u64).collect();
                for k in (db..n).rev() {
                    let c = (r[k] % p) as u32;
                    if c == 0 {
                        continue;
                    }
                    let factor = f.mul(c, inv_lc);
                    quot[k - db] = factor;
                    let negf = p - factor as u64;
                    let base = k - db;
                    for (j, &bj) in b.coeffs[..db].iter().enumerate() {
                        if bj != 0 {
                            r[base + j] += negf * bj as u64;
                        }
                    }
                    r[k] = 0;
                }
                let rem: Vec<u32> = r[..db].iter().map(|&x| (x % p) as u32).collect();
                Ok((APoly::new(f, quot), APoly::new(f, rem)))
            }
            _ => {
                let mut r = self.coeffs.clone();
                for k in (db..n).rev() {
                    let c = r[k];
                    if c == 0 {
                        continue;
                    }
                    let factor = f.mul(c, inv_lc);
                    quot[k - db] = factor;
                    let base = k - db;
                    for (j, &bj) in b.coeffs[..db].iter().enumerate() {
                        if bj != 0 {
                            r[base + j] = f.sub(r[base + j], f.mul(factor, bj));
                        }
                    }
                    r[k] = 0;
                }
                r.truncate(db);
                Ok((APoly::new(f, quot), APoly::new(f, r)))
            }
        }
    }

    pub fn rem(&self, b: &APoly) -> Result<APoly> {
        Ok(self.divrem(b)?.1)
    }

    /// Exact division; fails with `InexactDivision` on a nonzero remainder.
    pub fn div_exact(&self, b: &APoly) -> Result<APoly> {
        let (q, r) = self.divrem(b)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(q)
    }

    pub fn divides(&self, other: &APoly) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &APoly) -> Result<APoly> {
        self.check_field(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &APoly) -> Option<APoly> {
        let f = self.field;
        let (mut r0, mut r1) = (m.clone(), self.rem(m).ok()?);
        let (mut s0, mut s1) = (APoly::zero(f), APoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).ok()?;
            let s = &s0 - &(&q * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = f.inv(r0.lc())?;
        s0.scale(c).rem(m).ok()
    }

    /// Substitution θ -> θ^k.
    pub fn stretch(&self, k: usize) -> APoly {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        assert!(k > 0);
        let mut v = vec![0u32; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * k] = c;
        }
        APoly { field: self.field, coeffs: v }
    }

    /// `self^(q^m)`, computed as θ -> θ^(q^m) since c^q = c on F_q.
    pub fn frobenius(&self, m: u32) -> APoly {
        self.stretch((self.field.q() as usize).pow(m))
    }

    /// Coefficient-wise p-th power Frobenius: `self^p`.
    fn pth_power(&self) -> APoly {
        let f = self.field;
        let p = f.p() as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0u32; (self.coeffs.len() - 1) * p + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * p] = f.pow(c, p as u64);
        }
        APoly { field: f, coeffs: v }
    }

    /// `self^k`, splitting k into base-p digits so that p-th powers are free.
    pub fn pow(&self, k: u64) -> APoly {
        let f = self.field;
        let p = f.p() as u64;
        let mut acc = APoly::one(f);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            let digit = k % p;
            if digit > 0 {
                acc = &acc * &small_pow(&base, digit);
            }
            k /= p;
            if k > 0 {
                base = base.pth_power();
            }
        }
        acc
    }

    /// Composition `self(x)`.
    pub fn compose(&self, x: &APoly) -> APoly {
        self.check_field(x);
        let f = self.field;
        let mut acc = APoly::zero(f);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &APoly::constant(f, c);
        }
        acc
    }

    /// Value at an element of F_q.
    pub fn eval(&self, c: u32) -> u32 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, c), a))
    }

    /// Irreducibility over F_q (Rabin's test): `a | θ^(q^n) - θ` and
    /// `gcd(θ^(q^(n/r)) - θ, a) = 1` for every prime r dividing n = deg a.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Err(Error::ConstantInput),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let m = self.monic();
        let f = self.field;
        let theta = APoly::theta(f).rem(&m)?;
        let q = f.q() as usize;
        // powers[k] = θ^(q^k) mod m
        let mut powers = vec![theta.clone()];
        for _ in 0..n {
            let next = powers.last().unwrap().stretch(q).rem(&m)?;
            powers.push(next);
        }
        if powers[n] != theta {
            return Ok(false);
        }
        for r in prime_divisors(n) {
            let h = &powers[n / r] - &theta;
            if h.is_zero() || !h.gcd(&m)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn small_pow(base: &APoly, k: u64) -> APoly {
    let mut acc = APoly::one(base.field);
    let mut b = base.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = &acc * &b;
        }
        k >>= 1;
        if k > 0 {
            b = &b * &b;
        }
    }
    acc
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            while n.is_multiple_of(k) {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Schoolbook product skipping zero coefficients on both sides (cheap for
/// Frobenius-stretched operands).
pub(crate) fn mul_coeffs(f: Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (a, b) =
        if a.iter().filter(|&&c| c != 0).count() <= b.iter().filter(|&&c| c != 0).count() { (a, b) } else { (b, a) };
    let n = a.len() + b.len() - 1;
    if f.context().e() == 1 && f.p() < (1 << 16) {
        let p = f.p() as u64;
        let bnz: Vec<(usize, u64)> =
            b.iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, &c)| (j, c as u64)).collect();
        let mut acc = vec![0u64; n];
        let mut pending = 0u64;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let ai = ai as u64;
            for &(j, bj) in &bnz {
                acc[i + j] += ai * bj;
            }
            pending += 1;
            // each slot grows by < 2^32 per outer step
            if pending == 1 << 30 {
                acc.iter_mut().for_each(|x| *x %= p);
                pending = 0;
            }
        }
        acc.into_iter().map(|x| (x % p) as u32).collect()
    } else {
        let mut acc = vec![0u32; n];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj != 0 {
                    acc[i + j] = f.add(acc[i + j], f.mul(ai, bj));
                }
            }
        }
        acc
    }
}

impl Add for &APoly {
    type Output = APoly;
    fn add(self, rhs: &APoly) -> APoly {
        self.check_field(rhs);
        let f = self.field;
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut v = long.coeffs.clone();
        for (i, &c) in short.coeffs.iter().enumerate() {
            v[i] = f.add(v[i], c);
        }
        APoly::new(f, v)
    }
}

impl Neg for &APoly {
    type Output = APoly;
    fn neg(self) -> APoly {
        let f = self.field;
        APoly { field: f, coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }
}

impl Sub for &APoly {
    type Output = APoly;
    fn sub(self, rhs: &APoly) -> APoly {
        self.check_field(rhs);
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        APoly::new(f, v)
    }
}

impl Mul for &APoly {
    type Output = APoly;
    fn mul(self, rhs: &APoly) -> APoly {
        self.check_field(rhs);
        APoly::new(self.field, mul_coeffs(self.field, &self.coeffs, &rhs.coeffs))
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty { (&self).$m(rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(APoly, Add add, Sub sub, Mul mul);

impl Neg for APoly {
    type Output = APoly;
    fn neg(self) -> APoly {
        -&self
    }
}

impl fmt::Display for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => "θ".to_string(),
                    _ => format!("θ^{i}"),
                };
                match (c, i) {
                    (_, 0) => self.field.format_elem(c),
                    (1, _) => mono,
                    _ => format!("{}*{mono}", self.field.format_elem(c)),
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl APoly {
    /// Parses the textual form produced by `Display` (for example `2*θ^3 + θ + 1`);
    /// `theta` is accepted for θ, and `-` and parentheses are allowed.
    pub fn parse(field: Field, s: &str) -> Result<APoly> {
        let x = crate::text::parse_expr(field, 0, s)?.into_constant()?;
        x.into_apoly()
    }
}

/// Monic polynomials of degree `d`, in lexicographic order of `(c_0, ..., c_{d-1})`
/// over the index enumeration of F_q.
pub fn enumerate_monics(field: Field, d: usize) -> MonicIter {
    MonicIter { field, digits: vec![0; d], done: false }
}

pub struct MonicIter {
    field: Field,
    digits: Vec<u32>,
    done: bool,
}

impl Iterator for MonicIter {
    type Item = APoly;

    fn next(&mut self) -> Option<APoly> {
        if self.done {
            return None;
        }
        let mut coeffs = self.digits.clone();
        coeffs.push(1);
        let out = APoly { field: self.field, coeffs };
        // odometer: c_{d-1} moves fastest
        let q = self.field.q();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < q {
                break;
            }
            self.digits[i] = 0;
        }
        Some(out)
    }
}

/// All monic irreducibles of degree `d`, in monic enumeration order.
pub fn irreducibles_of_degree(field: Field, d: usize) -> Vec<APoly> {
    if d == 0 {
        return Vec::new();
    }
    enumerate_monics(field, d).filter(|a| a.is_irreducible().unwrap_or(false)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    fn p(f: Field, s: &str) -> APoly {
        APoly::parse(f, s).unwrap()
    }

    #[test]
    fn product_and_inverse_division() {
        let f = f3();
        let prod = &p(f, "θ + 1") * &p(f, "θ + 2");
        assert_eq!(prod, p(f, "θ^2 + 2"));
        assert_eq!(prod.div_exact(&p(f, "θ + 1")).unwrap(), p(f, "θ + 2"));
        assert_eq!(p(f, "θ^2 + 1").div_exact(&p(f, "θ + 1")), Err(Error::InexactDivision));
        assert_eq!(prod.divrem(&APoly::zero(f)), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        let f = f3();
        assert_eq!(p(f, "θ^2 - 1").gcd(&p(f, "θ - 1")).unwrap(), p(f, "θ + 2"));
        let a = p(f, "2*θ^2 + θ");
        assert_eq!(a.gcd(&APoly::zero(f)).unwrap(), a.monic());
        assert!(p(f, "θ^3 - θ").gcd(&p(f, "θ^2 + 1")).unwrap().is_one());
        assert_eq!(APoly::zero(f).gcd(&APoly::zero(f)), Err(Error::BothZero));
    }

    #[test]
    fn irreducibility_examples() {
        let f = f3();
        assert!(p(f, "θ^2 + 1").is_irreducible().unwrap());
        assert!(!p(f, "θ^2 + 2").is_irreducible().unwrap());
        assert!(p(f, "θ").is_irreducible().unwrap());
        assert_eq!(APoly::one(f).is_irreducible(), Err(Error::ConstantInput));
        // (θ^2+1)^2 has no roots but is reducible
        let sq = &p(f, "θ^2 + 1") * &p(f, "θ^2 + 1");
        assert!(!sq.is_irreducible().unwrap());
    }

    #[test]
    fn monic_enumeration() {
        let f = f3();
        let d0: Vec<_> = enumerate_monics(f, 0).collect();
        assert_eq!(d0, vec![APoly::one(f)]);
        let d1: Vec<String> = enumerate_monics(f, 1).map(|a| a.to_string()).collect();
        assert_eq!(d1, ["θ", "θ + 1", "θ + 2"]);
        let f4 = Field::new(4).unwrap();
        let all: Vec<_> = enumerate_monics(f4, 2).collect();
        assert_eq!(all.len(), 16);
        assert!(all.iter().all(|a| a.is_monic() && a.degree() == Some(2)));
        let mut dedup = all.clone();
        dedup.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
        dedup.dedup();
        assert_eq!(dedup.len(), 16);
    }

    #[test]
    fn quadratic_irreducibles_over_f3() {
        let f = f3();
        let irr: Vec<String> = irreducibles_of_degree(f, 2).iter().map(|a| a.to_string()).collect();
        let mut expected = vec!["θ^2 + 1", "θ^2 + θ + 2", "θ^2 + 2*θ + 2"];
        let mut got = irr.clone();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        for q in [3, 4, 9] {
            let f = Field::new(q).unwrap();
            let a = APoly::new(f, vec![1, 2 % q, 1, q - 1]);
            let mut acc = APoly::one(f);
            for k in 0..30u64 {
                assert_eq!(a.pow(k), acc, "q={q} k={k}");
                acc = &acc * &a;
            }
        }
    }

    #[test]
    fn frobenius_is_qth_power() {
        let f = Field::new(9).unwrap();
        let a = APoly::new(f, vec![3, 7, 1]);
        assert_eq!(a.frobenius(1), a.pow(9));
        assert_eq!(a.frobenius(2), a.pow(81));
    }

    #[test]
    fn inverse_mod_irreducible() {
        let f = f3();
        let m = p(f, "θ^2 + 1");
        let l1 = p(f, "θ - θ^3");
        let inv = l1.inv_mod(&m).unwrap();
        assert_eq!(inv, p(f, "θ"));
        assert!((&(&l1 * &inv) - &APoly::one(f)).rem(&m).unwrap().is_zero());
    }

    #[test]
    fn display_round_trip() {
        let f = Field::new(9).unwrap();
        let a = APoly::new(f, vec![1, 0, 5, 2]);
        let s = a.to_string();
        assert_eq!(s, "2*θ^3 + [x + 2]*θ^2 + 1");
        assert_eq!(APoly::parse(f, &s).unwrap(), a);
    }
}
