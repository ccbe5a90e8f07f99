//! The field K = F_q(θ) of normalized fractions, and the valuation at ∞.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{forward_owned, APoly};

/// Valuation with a sentinel for zero, ordered above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    Finite(i64),
    PosInf,
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Finite(v) => Some(v),
            Val::PosInf => None,
        }
    }
}

impl Add for Val {
    type Output = Val;
    fn add(self, rhs: Val) -> Val {
        match (self, rhs) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::PosInf,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(v) => write!(f, "{v}"),
            Val::PosInf => f.write_str("+inf"),
        }
    }
}

/// `num / den` with `den` monic and coprime to `num`; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatK {
    num: APoly,
    den: APoly,
}

impl fmt::Debug for RatK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatK({self})")
    }
}

impl RatK {
    pub fn new(num: APoly, den: APoly) -> Result<RatK> {
        assert!(num.field() == den.field(), "fraction over different fields");
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatK::zero(num.field()));
        }
        let g = num.gcd(&den)?;
        let (mut n, mut d) = if g.is_one() { (num, den) } else { (num.div_exact(&g)?, den.div_exact(&g)?) };
        let lc = d.lc();
        if lc != 1 {
            let inv = num_inv(&d, lc);
            n = n.scale(inv);
            d = d.scale(inv);
        }
        Ok(RatK { num: n, den: d })
    }

    /// Builds from parts already known to be normalized.
    fn from_parts(num: APoly, den: APoly) -> RatK {
        debug_assert!(den.is_monic());
        RatK { num, den }
    }

    pub fn zero(field: Field) -> RatK {
        RatK { num: APoly::zero(field), den: APoly::one(field) }
    }

    pub fn one(field: Field) -> RatK {
        RatK::from(APoly::one(field))
    }

    pub fn constant(field: Field, c: u32) -> RatK {
        RatK::from(APoly::constant(field, c))
    }

    pub fn theta(field: Field) -> RatK {
        RatK::from(APoly::theta(field))
    }

    pub fn field(&self) -> Field {
        self.num.field()
    }

    pub fn num(&self) -> &APoly {
        &self.num
    }

    pub fn den(&self) -> &APoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the fraction lies in A.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn into_apoly(self) -> Result<APoly> {
        if !self.is_integral() {
            return Err(Error::NonIntegral(self.to_string(), "A".into()));
        }
        Ok(self.num)
    }

    /// If the value is a constant of F_q, returns it.
    pub fn as_constant(&self) -> Option<u32> {
        (self.den.is_one() && self.num.degree().unwrap_or(0) == 0).then(|| self.num.coeff(0))
    }

    /// v_∞ = deg(den) - deg(num), with v_∞(θ) = -1 and v_∞(0) = +∞.
    pub fn valuation(&self) -> Val {
        match self.num.degree() {
            None => Val::PosInf,
            Some(dn) => Val::Finite(self.den.degree().unwrap() as i64 - dn as i64),
        }
    }

    /// Degree in θ, i.e. `-v_∞`, or `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.valuation().finite().map(|v| -v)
    }

    pub fn inv(&self) -> Result<RatK> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = self.num.lc();
        let inv = num_inv(&self.num, lc);
        Ok(RatK::from_parts(self.den.scale(inv), self.num.scale(inv)))
    }

    pub fn checked_div(&self, rhs: &RatK) -> Result<RatK> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: u32) -> RatK {
        RatK { num: self.num.scale(c), den: if c == 0 { APoly::one(self.field()) } else { self.den.clone() } }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i64) -> Result<RatK> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        Ok(RatK::from_parts(base.num.pow(e), base.den.pow(e)))
    }

    /// The map τ^m of K: θ -> θ^(q^m), equivalently the q^m-th power.
    pub fn frobenius(&self, m: u32) -> RatK {
        RatK::from_parts(self.num.frobenius(m), self.den.frobenius(m))
    }

    /// Substitutes θ := x.
    pub fn compose(&self, x: &RatK) -> Result<RatK> {
        let f = self.field();
        let eval = |a: &APoly| -> RatK {
            a.coeffs().iter().rev().fold(RatK::zero(f), |acc, &c| &(&acc * x) + &RatK::constant(f, c))
        };
        eval(&self.num).checked_div(&eval(&self.den))
    }

    /// Residue modulo `m` (a polynomial of degree >= 1) when `den` is invertible mod `m`.
    pub fn reduce_mod(&self, m: &APoly) -> Result<APoly> {
        let inv = self.den.inv_mod(m).ok_or_else(|| Error::NonIntegral(self.to_string(), m.to_string()))?;
        (&self.num * &inv).rem(m)
    }
}

fn num_inv(a: &APoly, lc: u32) -> u32 {
    a.field().inv(lc).expect("nonzero leading coefficient")
}

impl From<APoly> for RatK {
    fn from(a: APoly) -> RatK {
        let one = APoly::one(a.field());
        RatK { num: a, den: one }
    }
}

impl Add for &RatK {
    type Output = RatK;
    fn add(self, rhs: &RatK) -> RatK {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatK::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        if self.den.is_one() {
            return RatK::from_parts(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            return RatK::from_parts(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        // Henrici: with g = gcd(b, d), a/b + c/d = (a d' + c b') / (b' d) up to gcd(., g)
        let g = self.den.gcd(&rhs.den).expect("nonzero denominators");
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatK::from_parts(num, &self.den * &rhs.den);
        }
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return RatK::zero(self.field());
        }
        let g2 = num.gcd(&g).unwrap();
        if g2.is_one() {
            RatK::from_parts(num, &b1 * &rhs.den)
        } else {
            let num = num.div_exact(&g2).unwrap();
            let den = &b1 * &rhs.den.div_exact(&g2).unwrap();
            RatK::from_parts(num, den)
        }
    }
}

impl Neg for &RatK {
    type Output = RatK;
    fn neg(self) -> RatK {
        RatK { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &RatK {
    type Output = RatK;
    fn sub(self, rhs: &RatK) -> RatK {
        self + &(-rhs)
    }
}

impl Mul for &RatK {
    type Output = RatK;
    fn mul(self, rhs: &RatK) -> RatK {
        if self.is_zero() || rhs.is_zero() {
            return RatK::zero(self.field());
        }
        // cross-cancel: (a/b)(c/d) = (a/g1)(c/g2) / ((b/g2)(d/g1))
        let cancel = |n: &APoly, d: &APoly| -> (APoly, APoly) {
            if d.is_one() || n.degree() == Some(0) {
                return (n.clone(), d.clone());
            }
            let g = n.gcd(d).unwrap();
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
            }
        };
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        RatK::from_parts(&a * &c, &b * &d)
    }
}

impl Div for &RatK {
    type Output = RatK;
    /// Panics on division by zero; see [`RatK::checked_div`].
    fn div(self, rhs: &RatK) -> RatK {
        self.checked_div(rhs).expect("division by zero in K")
    }
}

forward_owned!(RatK, Add add, Sub sub, Mul mul, Div div);

impl Neg for RatK {
    type Output = RatK;
    fn neg(self) -> RatK {
        -&self
    }
}

impl fmt::Display for RatK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = self.num.to_string();
        if num.contains(' ') {
            write!(f, "({num})/({})", self.den)
        } else {
            write!(f, "{num}/({})", self.den)
        }
    }
}

impl RatK {
    /// Parses `num` or `(num)/(den)` style input.
    pub fn parse(field: Field, s: &str) -> Result<RatK> {
        crate::text::parse_expr(field, 0, s)?.into_constant()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    #[test]
    fn fraction_addition_normalizes() {
        let f = f3();
        let l1 = APoly::parse(f, "θ - θ^3").unwrap();
        let x = &RatK::new(APoly::one(f), l1.clone()).unwrap() + &RatK::one(f);
        // (θ - θ^3 + 1)/(θ - θ^3) with monic denominator θ^3 - θ
        assert_eq!(x.den(), &APoly::parse(f, "θ^3 - θ").unwrap());
        assert_eq!(x.num(), &(-&(&l1 + &APoly::one(f))));
    }

    #[test]
    fn valuation_examples() {
        let f = f3();
        assert_eq!(RatK::theta(f).valuation(), Val::Finite(-1));
        let x = RatK::parse(f, "1/(θ - θ^3)").unwrap();
        assert_eq!(x.valuation(), Val::Finite(3));
        assert_eq!(RatK::zero(f).valuation(), Val::PosInf);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = f3();
        assert_eq!(RatK::one(f).checked_div(&RatK::zero(f)), Err(Error::DivisionByZero));
        assert_eq!(RatK::new(APoly::one(f), APoly::zero(f)), Err(Error::DivisionByZero));
    }

    #[test]
    fn reduction_modulo_irreducible() {
        let f = f3();
        let m = APoly::parse(f, "θ^2 + 1").unwrap();
        let x = &RatK::one(f) + &RatK::parse(f, "1/(θ - θ^3)").unwrap();
        assert_eq!(x.reduce_mod(&m).unwrap(), APoly::parse(f, "θ + 1").unwrap());
        let bad = RatK::parse(f, "1/(θ^2 + 1)").unwrap();
        assert!(matches!(bad.reduce_mod(&m), Err(Error::NonIntegral(..))));
    }

    #[test]
    fn display_parse_round_trip() {
        let f = Field::new(4).unwrap();
        let x = RatK::parse(f, "([x]*θ^2 + 1)/(θ^3 + θ + [x + 1])").unwrap();
        assert_eq!(RatK::parse(f, &x.to_string()).unwrap(), x);
    }
}
