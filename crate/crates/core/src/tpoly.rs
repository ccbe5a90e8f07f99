//! Sparse polynomials in t_1, ..., t_s with coefficients in K.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{forward_owned, APoly, Deg};
use crate::ratk::RatK;

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(s: usize) -> Monomial {
        Monomial(vec![0; s])
    }

    /// t_i (1-based).
    pub fn var(s: usize, i: usize) -> Monomial {
        let mut v = vec![0; s];
        v[i - 1] = 1;
        Monomial(v)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("t{}", i + 1) } else { format!("t{}^{e}", i + 1) })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Element of K[t_1, ..., t_s]; no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct TPoly {
    field: Field,
    s: usize,
    terms: BTreeMap<Monomial, RatK>,
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TPoly[s={}]({self})", self.s)
    }
}

impl TPoly {
    pub fn zero(field: Field, s: usize) -> TPoly {
        TPoly { field, s, terms: BTreeMap::new() }
    }

    pub fn one(field: Field, s: usize) -> TPoly {
        TPoly::constant(RatK::one(field), s)
    }

    pub fn constant(c: RatK, s: usize) -> TPoly {
        let mut p = TPoly::zero(c.field(), s);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(s), c);
        }
        p
    }

    pub fn from_apoly(a: APoly, s: usize) -> TPoly {
        TPoly::constant(RatK::from(a), s)
    }

    /// t_i (1-based).
    pub fn var(field: Field, s: usize, i: usize) -> Result<TPoly> {
        check_index(i, s)?;
        Ok(TPoly::term(Monomial::var(s, i), RatK::one(field)))
    }

    pub fn term(m: Monomial, c: RatK) -> TPoly {
        let mut p = TPoly::zero(c.field(), m.0.len());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms(field: Field, s: usize, terms: impl IntoIterator<Item = (Monomial, RatK)>) -> TPoly {
        let mut p = TPoly::zero(field, s);
        for (m, c) in terms {
            assert_eq!(m.0.len(), s, "monomial of wrong arity");
            p.add_term(m, &c);
        }
        p
    }

    /// a(t_i) for a ∈ A.
    pub fn apoly_in_var(a: &APoly, s: usize, i: usize) -> Result<TPoly> {
        check_index(i, s)?;
        let f = a.field();
        Ok(TPoly::from_terms(
            f,
            s,
            a.coeffs().iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| {
                let mut m = Monomial::one(s);
                m.0[i - 1] = k as u32;
                (m, RatK::constant(f, c))
            }),
        ))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RatK)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> RatK {
        self.terms.get(m).cloned().unwrap_or_else(|| RatK::zero(self.field))
    }

    /// The value if no t-variable occurs.
    pub fn as_constant(&self) -> Option<RatK> {
        match self.terms.len() {
            0 => Some(RatK::zero(self.field)),
            1 => self.terms.get(&Monomial::one(self.s)).cloned(),
            _ => None,
        }
    }

    pub fn into_constant(self) -> Result<RatK> {
        self.as_constant().ok_or_else(|| Error::InvalidParams(format!("expected a constant, found {self}")))
    }

    fn add_term(&mut self, m: Monomial, c: &RatK) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let sum = &*old + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_compatible(&self, other: &TPoly) -> Result<()> {
        assert!(self.field == other.field, "TPoly values over different fields");
        if self.s != other.s {
            return Err(Error::ArityMismatch(self.s, other.s));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &TPoly) -> Result<TPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &TPoly) -> Result<TPoly> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &TPoly) -> Result<TPoly> {
        self.check_compatible(other)?;
        let mut out = TPoly::zero(self.field, self.s);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RatK) -> TPoly {
        if c.is_zero() {
            return TPoly::zero(self.field, self.s);
        }
        TPoly { field: self.field, s: self.s, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> TPoly {
        (0..k).fold(TPoly::one(self.field, self.s), |acc, _| &acc * self)
    }

    /// t_i := v, removing the variable (arity drops by one).
    pub fn substitute(&self, i: usize, v: &RatK) -> Result<TPoly> {
        check_index(i, self.s)?;
        let mut out = TPoly::zero(self.field, self.s - 1);
        let mut powers: Vec<RatK> = vec![RatK::one(self.field)];
        for (m, c) in &self.terms {
            let e = m.0[i - 1] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * v;
                powers.push(next);
            }
            let mut rest = m.0.clone();
            rest.remove(i - 1);
            out.add_term(Monomial(rest), &(c * &powers[e]));
        }
        Ok(out)
    }

    /// Maximal exponent of t_i; `NegInf` only for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Result<Deg> {
        check_index(i, self.s)?;
        Ok(self.terms.keys().map(|m| Deg::Finite(m.0[i - 1] as u64)).max().unwrap_or(Deg::NegInf))
    }

    /// Exact quotient by (t_i - v).
    pub fn div_linear(&self, i: usize, v: &RatK) -> Result<TPoly> {
        check_index(i, self.s)?;
        // group by the exponents of the other variables; synthetic division in t_i
        let mut groups: BTreeMap<Vec<u32>, BTreeMap<u32, RatK>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.0.clone();
            let e = std::mem::replace(&mut rest[i - 1], 0);
            groups.entry(rest).or_default().insert(e, c.clone());
        }
        let mut out = TPoly::zero(self.field, self.s);
        for (rest, coeffs) in groups {
            let top = *coeffs.keys().next_back().unwrap();
            let mut carry = RatK::zero(self.field);
            for e in (0..=top).rev() {
                let c = coeffs.get(&e).cloned().unwrap_or_else(|| RatK::zero(self.field));
                let cur = &c + &(&carry * v);
                if e == 0 {
                    if !cur.is_zero() {
                        return Err(Error::InexactDivision);
                    }
                } else {
                    let mut m = rest.clone();
                    m[i - 1] = e - 1;
                    out.add_term(Monomial(m), &cur);
                }
                carry = cur;
            }
        }
        Ok(out)
    }

    /// Terms whose exponents match `fixed` (pairs of 1-based index and exponent),
    /// with those exponents reset to zero.
    pub fn extract(&self, fixed: &[(usize, u32)]) -> Result<TPoly> {
        for &(i, _) in fixed {
            check_index(i, self.s)?;
        }
        let mut out = TPoly::zero(self.field, self.s);
        for (m, c) in &self.terms {
            if fixed.iter().all(|&(i, e)| m.0[i - 1] == e) {
                let mut m = m.clone();
                for &(i, _) in fixed {
                    m.0[i - 1] = 0;
                }
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    /// Renames t_i to t_{map[i-1]} in a polynomial ring of arity `s`.
    pub fn embed(&self, s: usize, map: &[usize]) -> Result<TPoly> {
        if map.len() != self.s {
            return Err(Error::ArityMismatch(map.len(), self.s));
        }
        for &j in map {
            check_index(j, s)?;
        }
        let mut out = TPoly::zero(self.field, s);
        for (m, c) in &self.terms {
            let mut v = vec![0; s];
            for (k, &e) in m.0.iter().enumerate() {
                v[map[k] - 1] += e;
            }
            out.add_term(Monomial(v), c);
        }
        Ok(out)
    }

    /// Drops trailing variables, which must not occur.
    pub fn restrict_arity(&self, s: usize) -> Result<TPoly> {
        if s > self.s {
            return Err(Error::ArityMismatch(s, self.s));
        }
        let mut out = TPoly::zero(self.field, s);
        for (m, c) in &self.terms {
            if m.0[s..].iter().any(|&e| e > 0) {
                return Err(Error::IndexOutOfRange { index: s + 1, arity: s });
            }
            out.terms.insert(Monomial(m.0[..s].to_vec()), c.clone());
        }
        Ok(out)
    }

    /// Applies τ^m to every coefficient, fixing the t-variables.
    pub fn frobenius(&self, m: u32) -> TPoly {
        TPoly {
            field: self.field,
            s: self.s,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.frobenius(m))).collect(),
        }
    }

    /// The least common multiple of the coefficient denominators.
    pub fn common_denominator(&self) -> APoly {
        let mut den = APoly::one(self.field);
        for c in self.terms.values() {
            if !c.den().is_one() && !c.den().divides(&den) {
                let g = den.gcd(c.den()).unwrap();
                den = &den * &c.den().div_exact(&g).unwrap();
            }
        }
        den
    }
}

fn check_index(i: usize, s: usize) -> Result<()> {
    if i == 0 || i > s {
        return Err(Error::IndexOutOfRange { index: i, arity: s });
    }
    Ok(())
}

impl Add for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        self.checked_add(rhs).expect("arity mismatch")
    }
}

impl Sub for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        self.checked_sub(rhs).expect("arity mismatch")
    }
}

impl Mul for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        self.checked_mul(rhs).expect("arity mismatch")
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly { field: self.field, s: self.s, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        -&self
    }
}

forward_owned!(TPoly, Add add, Sub sub, Mul mul);

impl fmt::Display for TPoly {
    /// Common-denominator form: `num` or `(num)/(den)`, terms in descending order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let den = self.common_denominator();
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let a = (&RatK::from(den.clone()) * c).into_apoly().expect("common denominator");
            let coeff = a.to_string();
            parts.push(match (m.is_one(), a.is_one()) {
                (true, _) => coeff,
                (false, true) => m.to_string(),
                (false, false) if coeff.contains(' ') => format!("({coeff})*{m}"),
                (false, false) => format!("{coeff}*{m}"),
            });
        }
        let num = parts.join(" + ");
        if den.is_one() {
            f.write_str(&num)
        } else if num.contains(' ') {
            write!(f, "({num})/({den})")
        } else {
            write!(f, "{num}/({den})")
        }
    }
}

impl TPoly {
    /// Parses the `Display` form (and general expressions) in arity `s`.
    pub fn parse(field: Field, s: usize, input: &str) -> Result<TPoly> {
        crate::text::parse_expr(field, s, input)
    }
}
