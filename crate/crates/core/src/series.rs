//! Truncated Laurent series in 1/θ with coefficients in F_q[t_1,…,t_s]: the numeric home
//! of ζ_C values and of the root-free factors of π̃ and ω.
//!
//! A series with precision N is exact for every term θ^{-v} with v ≤ N and asserts
//! nothing beyond. Terms are keyed by their valuation v.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::mzv::{multi_power_sums_upto, MatrixData, Mode, SumAlgebra};
use crate::powersum::Method;
use crate::ratk::{RatK, Val};
use crate::seq::SeqCache;
use crate::tpoly::{Monomial, TPoly};

/// A polynomial in t_1..t_s over F_q; no zero coefficients stored.
pub type FqMPoly = BTreeMap<Monomial, u32>;

fn mpoly_add_into(field: Field, acc: &mut FqMPoly, m: Monomial, c: u32) {
    match acc.entry(m) {
        Entry::Vacant(e) => {
            if c != 0 {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            let x = field.add(*e.get(), c);
            if x == 0 {
                e.remove();
            } else {
                *e.get_mut() = x;
            }
        }
    }
}

fn mpoly_mul(field: Field, a: &FqMPoly, b: &FqMPoly) -> FqMPoly {
    let mut out = FqMPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            mpoly_add_into(field, &mut out, ma.mul(mb), field.mul(*ca, *cb));
        }
    }
    out
}

fn mpoly_scale(field: Field, a: &FqMPoly, c: u32) -> FqMPoly {
    if c == 0 {
        return FqMPoly::new();
    }
    a.iter().map(|(m, x)| (m.clone(), field.mul(*x, c))).collect()
}

fn mpoly_fmt(field: Field, p: &FqMPoly) -> String {
    let parts: Vec<String> = p
        .iter()
        .rev()
        .map(|(m, c)| match (m.is_one(), *c == 1) {
            (true, _) => field.format_elem(*c),
            (false, true) => m.to_string(),
            (false, false) => format!("{}*{}", field.format_elem(*c), m),
        })
        .collect();
    parts.join(" + ")
}

#[derive(Clone, PartialEq, Eq)]
pub struct TateSeries {
    field: Field,
    s: usize,
    prec: i64,
    terms: BTreeMap<i64, FqMPoly>,
}

impl fmt::Debug for TateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TateSeries({self})")
    }
}

impl TateSeries {
    fn build(field: Field, s: usize, prec: i64, terms: BTreeMap<i64, FqMPoly>) -> TateSeries {
        let terms = terms.into_iter().filter(|(v, c)| *v <= prec && !c.is_empty()).collect();
        TateSeries { field, s, prec, terms }
    }

    pub fn zero(field: Field, s: usize, prec: i64) -> TateSeries {
        TateSeries { field, s, prec, terms: BTreeMap::new() }
    }

    pub fn one(field: Field, s: usize, prec: i64) -> TateSeries {
        TateSeries::monomial(field, s, prec, 0, Monomial::one(s), 1)
    }

    /// c·t^m·θ^{-v}.
    pub fn monomial(field: Field, s: usize, prec: i64, v: i64, m: Monomial, c: u32) -> TateSeries {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(v, FqMPoly::from([(m, c)]));
        }
        TateSeries::build(field, s, prec, terms)
    }

    /// The 1/θ-expansion of x, exact on valuations ≤ `prec`.
    pub fn from_ratk(x: &RatK, s: usize, prec: i64) -> TateSeries {
        let field = x.field();
        let mut terms = BTreeMap::new();
        for (v, c) in expand_ratk(x, prec) {
            terms.insert(v, FqMPoly::from([(Monomial::one(s), c)]));
        }
        TateSeries::build(field, s, prec, terms)
    }

    pub fn from_tpoly(x: &TPoly, prec: i64) -> TateSeries {
        let field = x.field();
        let mut terms: BTreeMap<i64, FqMPoly> = BTreeMap::new();
        for (m, c) in x.terms() {
            for (v, a) in expand_ratk(c, prec) {
                mpoly_add_into(field, terms.entry(v).or_default(), m.clone(), a);
            }
        }
        TateSeries::build(field, x.arity(), prec, terms)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.s
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &FqMPoly)> {
        self.terms.iter().map(|(v, c)| (*v, c))
    }

    /// Coefficient of θ^{-v}; `None` beyond the precision.
    pub fn coeff(&self, v: i64) -> Option<FqMPoly> {
        (v <= self.prec).then(|| self.terms.get(&v).cloned().unwrap_or_default())
    }

    /// Lowest valuation present; `PosInf` when the series is zero to its precision.
    pub fn valuation(&self) -> Val {
        self.terms.keys().next().map_or(Val::PosInf, |v| Val::Finite(*v))
    }

    /// A lower bound for the true valuation.
    fn valuation_bound(&self) -> i64 {
        self.terms.keys().next().copied().unwrap_or(self.prec + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncate(&self, prec: i64) -> TateSeries {
        TateSeries::build(self.field, self.s, prec.min(self.prec), self.terms.clone())
    }

    fn check_arity(&self, other: &TateSeries) -> Result<()> {
        if self.s != other.s {
            return Err(Error::ArityMismatch(self.s, other.s));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &TateSeries) -> Result<TateSeries> {
        self.check_arity(other)?;
        let prec = self.prec.min(other.prec);
        let mut terms = self.terms.clone();
        for (v, c) in &other.terms {
            let e = terms.entry(*v).or_default();
            for (m, x) in c {
                mpoly_add_into(self.field, e, m.clone(), *x);
            }
        }
        Ok(TateSeries::build(self.field, self.s, prec, terms))
    }

    pub fn neg(&self) -> TateSeries {
        let m1 = self.field.neg(1);
        let terms = self.terms.iter().map(|(v, c)| (*v, mpoly_scale(self.field, c, m1))).collect();
        TateSeries { terms, ..self.clone() }
    }

    pub fn checked_sub(&self, other: &TateSeries) -> Result<TateSeries> {
        self.checked_add(&other.neg())
    }

    /// Product with precision min(N_a + v_b, N_b + v_a).
    pub fn checked_mul(&self, other: &TateSeries) -> Result<TateSeries> {
        self.check_arity(other)?;
        let prec = (self.prec + other.valuation_bound()).min(other.prec + self.valuation_bound());
        Ok(TateSeries::build(self.field, self.s, prec, mul_terms(self.field, &self.terms, &other.terms, prec)))
    }

    pub fn scale(&self, c: u32) -> TateSeries {
        let terms = self.terms.iter().map(|(v, x)| (*v, mpoly_scale(self.field, x, c))).collect();
        TateSeries::build(self.field, self.s, self.prec, terms)
    }

    pub fn pow(&self, k: u32) -> TateSeries {
        (0..k).fold(TateSeries::one(self.field, self.s, i64::MAX / 4), |acc, _| acc.checked_mul(self).unwrap())
    }

    /// u⁻¹ for u = c θ^{-T}(1 + w) with c ∈ F_q^× and v(w) ≥ 1; precision N_u - 2T.
    pub fn inv_unit(&self) -> Result<TateSeries> {
        let (&t, lead) = self.terms.iter().next().ok_or(Error::NotAUnit)?;
        let one = Monomial::one(self.s);
        if lead.len() != 1 || !lead.contains_key(&one) {
            return Err(Error::NotAUnit);
        }
        let c_inv = self.field.inv(lead[&one]).ok_or(Error::NotAUnit)?;
        let inner_prec = self.prec - t;
        // -w, valuations shifted to start at 1
        let m1 = self.field.neg(c_inv);
        let neg_w: BTreeMap<i64, FqMPoly> =
            self.terms.iter().skip(1).map(|(v, x)| (v - t, mpoly_scale(self.field, x, m1))).collect();
        let mut acc: BTreeMap<i64, FqMPoly> = BTreeMap::from([(0, FqMPoly::from([(one.clone(), 1)]))]);
        let mut power = acc.clone();
        while !power.is_empty() {
            power = mul_terms(self.field, &power, &neg_w, inner_prec);
            for (v, x) in &power {
                let e = acc.entry(*v).or_default();
                for (m, c) in x {
                    mpoly_add_into(self.field, e, m.clone(), *c);
                }
            }
        }
        let terms = acc.into_iter().map(|(v, x)| (v - t, mpoly_scale(self.field, &x, c_inv))).collect();
        Ok(TateSeries::build(self.field, self.s, self.prec - 2 * t, terms))
    }

    /// Equality on the common precision.
    pub fn eq_to_precision(&self, other: &TateSeries) -> bool {
        self.checked_sub(other).is_ok_and(|d| d.is_zero())
    }

    /// Substitutes t_i := c ∈ F_q, dropping the variable.
    pub fn substitute(&self, i: usize, c: u32) -> Result<TateSeries> {
        if i == 0 || i > self.s {
            return Err(Error::IndexOutOfRange { index: i, arity: self.s });
        }
        let mut terms: BTreeMap<i64, FqMPoly> = BTreeMap::new();
        for (v, x) in &self.terms {
            let e = terms.entry(*v).or_default();
            for (m, a) in x {
                let mut exps = m.0.clone();
                let k = exps.remove(i - 1);
                mpoly_add_into(self.field, e, Monomial(exps), self.field.mul(*a, self.field.pow(c, k as u64)));
            }
        }
        Ok(TateSeries::build(self.field, self.s - 1, self.prec, terms))
    }
}

fn mul_terms(
    field: Field,
    a: &BTreeMap<i64, FqMPoly>,
    b: &BTreeMap<i64, FqMPoly>,
    limit: i64,
) -> BTreeMap<i64, FqMPoly> {
    let mut out: BTreeMap<i64, FqMPoly> = BTreeMap::new();
    for (va, ca) in a {
        for (vb, cb) in b {
            if va + vb > limit {
                break;
            }
            let e = out.entry(va + vb).or_default();
            for (m, x) in mpoly_mul(field, ca, cb) {
                mpoly_add_into(field, e, m, x);
            }
        }
    }
    out.retain(|_, c| !c.is_empty());
    out
}

/// (valuation, coefficient) pairs of x up to valuation `prec`.
///
/// With n = deg num, m = deg den and u = 1/θ: x = θ^{n-m} N(u)/D(u) where D(0) = 1
/// because den is monic, so the quotient is a plain power-series division.
fn expand_ratk(x: &RatK, prec: i64) -> Vec<(i64, u32)> {
    let field = x.field();
    let (Some(n), Some(m)) = (x.num().degree(), x.den().degree()) else {
        return Vec::new();
    };
    let shift = m as i64 - n as i64;
    if shift > prec {
        return Vec::new();
    }
    let count = (prec - shift + 1) as usize;
    let num = x.num().coeffs();
    let den = x.den().coeffs();
    let nrev = |j: usize| if j <= n { num[n - j] } else { 0 };
    let mut c: Vec<u32> = Vec::with_capacity(count);
    for j in 0..count {
        let mut acc = nrev(j);
        for i in 1..=j.min(m) {
            let d = den[m - i];
            if d != 0 && c[j - i] != 0 {
                acc = field.sub(acc, field.mul(d, c[j - i]));
            }
        }
        c.push(acc);
    }
    c.into_iter().enumerate().filter(|(_, a)| *a != 0).map(|(j, a)| (shift + j as i64, a)).collect()
}

impl SumAlgebra for TateSeries {
    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("same arity")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("same arity")
    }
}

impl fmt::Display for TateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (v, c) in &self.terms {
            let cs = mpoly_fmt(self.field, c);
            let cs = if c.len() > 1 { format!("({cs})") } else { cs };
            parts.push(match v {
                0 => cs,
                _ => {
                    let th = if *v == -1 { "θ".to_string() } else { format!("θ^{}", -v) };
                    if cs == "1" {
                        th
                    } else {
                        format!("{cs}*{th}")
                    }
                }
            });
        }
        parts.push(format!("O(θ^{})", -(self.prec + 1)));
        f.write_str(&parts.join(" + "))
    }
}

/// Π_π = ∏_{i≥1} (1 - θ^{1-q^i})^{-1}, the root-free factor of π̃.
pub fn product_pi(field: Field, prec: i64) -> TateSeries {
    let q = field.q() as i64;
    let mut acc = TateSeries::one(field, 0, prec);
    let mut step = q - 1;
    while step <= prec {
        let geo = (0..=prec / step).map(|k| (k * step, FqMPoly::from([(Monomial::one(0), 1)]))).collect();
        acc = acc.checked_mul(&TateSeries::build(field, 0, prec, geo)).unwrap();
        step = step * q + (q - 1);
    }
    acc
}

/// Π_ω(t) = ∏_{i≥0} (1 - t θ^{-q^i})^{-1}; the coefficient of t^k has valuation ≥ k.
pub fn product_omega(field: Field, prec: i64) -> TateSeries {
    let q = field.q() as i64;
    let mut acc = TateSeries::one(field, 1, prec);
    let mut step = 1;
    while step <= prec {
        let geo = (0..=prec / step).map(|k| (k * step, FqMPoly::from([(Monomial(vec![k as u32]), 1)]))).collect();
        acc = acc.checked_mul(&TateSeries::build(field, 1, prec, geo)).unwrap();
        step *= q;
    }
    acc
}

/// Hard cap on the number of degrees a zeta series may sum.
const MAX_DEGREES: u32 = 24;

/// Σ_d S_d(M) truncated at valuation `prec`.
///
/// Stops once two consecutive degree terms have valuation > `prec`, or earlier when the
/// bound v(S_d(M)) ≥ n_1·d already places every remaining term beyond `prec`.
/// A valuation that fails to increase across three consecutive nonzero terms is
/// reported as [`Error::NonConvergent`].
pub fn zeta_series(m: &MatrixData, prec: i64, mode: Mode, budget: u128) -> Result<TateSeries> {
    let field = m.field();
    let s = m.arity();
    let n1 = m.columns().first().map_or(i64::MAX / 4, |c| c.n);
    let mut acc = TateSeries::zero(field, s, prec);
    let mut quiet = 0;
    let mut recent: Vec<i64> = Vec::new();
    for d in 0..=MAX_DEGREES {
        if n1.saturating_mul(d as i64) > prec {
            return Ok(acc);
        }
        let exact = multi_power_sums_upto(d, m, mode, Method::Auto, budget)?.pop().unwrap();
        let term = TateSeries::from_tpoly(&exact, prec);
        match term.valuation() {
            Val::Finite(v) => {
                recent.push(v);
                if recent.len() >= 3 {
                    let w = &recent[recent.len() - 3..];
                    if w[2] <= w[1] && w[1] <= w[0] && w[2] <= prec {
                        return Err(Error::NonConvergent(format!("{m}: valuations {w:?} at degree {d}")));
                    }
                }
            }
            Val::PosInf => {}
        }
        acc = acc.checked_add(&term)?;
        quiet = if term.is_zero() { quiet + 1 } else { 0 };
        if quiet == 2 {
            return Ok(acc);
        }
    }
    Err(Error::NonConvergent(format!("{m}: no stabilization within {MAX_DEGREES} degrees")))
}

/// ζ_C(n_1,…,n_r) with trivial semi-characters.
pub fn zeta_weights(field: Field, ns: &[i64], prec: i64, budget: u128) -> Result<TateSeries> {
    zeta_series(&MatrixData::weights(field, 0, ns)?, prec, Mode::Strict, budget)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuationReport {
    pub threshold: i64,
    pub precision: i64,
    /// Valuation of lhs - rhs; `None` when it vanishes to the common precision.
    pub achieved: Option<i64>,
    pub passed: bool,
}

/// Passes iff v(lhs - rhs) > threshold, both sides known at least to the threshold.
pub fn check_valuation_identity(lhs: &TateSeries, rhs: &TateSeries, threshold: i64) -> Result<ValuationReport> {
    let precision = lhs.prec().min(rhs.prec());
    if precision < threshold {
        return Err(Error::PrecisionInsufficient { available: precision, threshold });
    }
    let diff = lhs.checked_sub(rhs)?;
    let achieved = diff.valuation().finite();
    Ok(ValuationReport { threshold, precision, achieved, passed: achieved.is_none_or(|v| v > threshold) })
}

/// ζ_C(1;χ_t)(θ - t)Π_ω(t) against θΠ_π.
///
/// With π̃ = θ(-θ)^{1/(q-1)}Π_π and ω = (-θ)^{1/(q-1)}Π_ω the two roots cancel in
/// π̃/ω, leaving an identity inside F_q[t]((1/θ)).
pub fn check_annals_identity(field: Field, threshold: i64, budget: u128) -> Result<ValuationReport> {
    // multiplying by θ costs one unit of precision on each side
    let work = threshold + 1;
    let zeta = zeta_series(&MatrixData::from_specs(field, 1, &[("t1", 1)])?, work, Mode::Strict, budget)?;
    let theta_minus_t = TateSeries::from_tpoly(&TPoly::parse(field, 1, "θ - t1")?, work);
    let lhs = zeta.checked_mul(&theta_minus_t)?.checked_mul(&product_omega(field, work))?;
    let theta = TateSeries::from_ratk(&RatK::theta(field), 0, work + 1);
    let rhs = theta.checked_mul(&product_pi(field, work))?;
    let rhs = TateSeries::build(field, 1, rhs.prec, rhs.terms.into_iter().map(|(v, c)| (v, lift(c))).collect());
    check_valuation_identity(&lhs, &rhs, threshold)
}

/// Embeds a 0-variable coefficient into one variable.
fn lift(c: FqMPoly) -> FqMPoly {
    c.into_values().map(|x| (Monomial::one(1), x)).collect()
}

/// F_D(1;χ_t) evaluated at t = θ^{q^k}; zero for D > k since θ^{q^k} is a trivial zero.
pub fn trivial_zero_value(field: Field, k: u32, terms: u32) -> RatK {
    let c = SeqCache::of(field);
    let x = c.theta_qpow(k);
    (0..terms).fold(RatK::zero(field), |acc, d| &acc + &(&RatK::from(c.b_at(d, &x)) * &c.l_inv(d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mzv::partial_zeta;
    use crate::powersum::DEFAULT_BUDGET;
    use proptest::prelude::*;

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    #[test]
    fn expansion_of_simple_fractions() {
        let f = f3();
        let x = RatK::parse(f, "1/(θ - θ^3)").unwrap();
        let s = TateSeries::from_ratk(&x, 0, 12);
        // -θ^{-3}(1 - θ^{-2})^{-1} = 2θ^{-3} + 2θ^{-5} + ...
        let vals: Vec<i64> = s.terms().map(|(v, _)| v).collect();
        assert_eq!(vals, vec![3, 5, 7, 9, 11]);
        assert!(s.terms().all(|(_, c)| c[&Monomial::one(0)] == 2));
        assert!(TateSeries::from_ratk(&RatK::zero(f), 0, 5).is_zero());
        let th = TateSeries::from_ratk(&RatK::theta(f), 0, 5);
        assert_eq!(th.valuation(), Val::Finite(-1));
    }

    #[test]
    fn geometric_inverse() {
        let f = f3();
        let u = TateSeries::from_tpoly(&TPoly::parse(f, 1, "1 - t1/θ").unwrap(), 10);
        let inv = u.inv_unit().unwrap();
        let prod = u.checked_mul(&inv).unwrap();
        assert!(prod.eq_to_precision(&TateSeries::one(f, 1, 10)));
        assert_eq!(inv.coeff(4).unwrap(), FqMPoly::from([(Monomial(vec![4]), 1)]));
        let not_unit = TateSeries::from_tpoly(&TPoly::parse(f, 1, "t1").unwrap(), 10);
        assert!(matches!(not_unit.inv_unit(), Err(Error::NotAUnit)));
    }

    #[test]
    fn precision_min_rule() {
        let f = f3();
        let a = TateSeries::one(f, 0, 10);
        let b = TateSeries::from_ratk(&RatK::parse(f, "1 + 1/θ").unwrap(), 0, 5);
        assert_eq!(a.checked_mul(&b).unwrap().prec(), 5);
        let theta = TateSeries::from_ratk(&RatK::theta(f), 0, 20);
        assert_eq!(theta.checked_mul(&b).unwrap().prec(), 4);
    }

    #[test]
    fn pi_factor_matches_unit_inverse() {
        let f = f3();
        let factor = TateSeries::from_ratk(&RatK::parse(f, "1 - 1/θ^2").unwrap(), 0, 30);
        let by_inverse = factor.inv_unit().unwrap();
        let mut direct = TateSeries::zero(f, 0, 30);
        for k in 0..=15 {
            direct = direct.checked_add(&TateSeries::monomial(f, 0, 30, 2 * k, Monomial::one(0), 1)).unwrap();
        }
        assert!(by_inverse.eq_to_precision(&direct));
        // one more factor of Π_π changes nothing below its own valuation
        let p = product_pi(f, 20);
        let extra = TateSeries::from_ratk(&RatK::parse(f, "1 - 1/θ^26").unwrap(), 0, 20).inv_unit().unwrap();
        assert!(p.checked_mul(&extra).unwrap().eq_to_precision(&p));
    }

    #[test]
    fn omega_self_truncation() {
        let f = f3();
        let w = product_omega(f, 20);
        for (v, c) in w.terms() {
            assert!(c.keys().all(|m| (m.0[0] as i64) <= v));
        }
    }

    #[test]
    fn log_one_is_zeta_one() {
        let f = f3();
        let z = zeta_weights(f, &[1], 40, DEFAULT_BUDGET).unwrap();
        let c = SeqCache::of(f);
        let log1 = (0..6).fold(RatK::zero(f), |acc, i| &acc + &c.l_inv(i));
        assert!(z.eq_to_precision(&TateSeries::from_ratk(&log1, 0, 40)));
    }

    #[test]
    fn annals_identity_holds() {
        let r = check_annals_identity(f3(), 15, DEFAULT_BUDGET).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn family_first_case() {
        let f = f3();
        let lhs = zeta_weights(f, &[3], 26, DEFAULT_BUDGET)
            .unwrap()
            .checked_mul(&zeta_weights(f, &[2], 26, DEFAULT_BUDGET).unwrap())
            .unwrap();
        let rhs = zeta_weights(f, &[5], 26, DEFAULT_BUDGET)
            .unwrap()
            .checked_add(&zeta_weights(f, &[2, 3], 26, DEFAULT_BUDGET).unwrap())
            .unwrap();
        let r = check_valuation_identity(&lhs, &rhs, 25).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(check_valuation_identity(&lhs, &lhs, 25).unwrap().passed);
        assert!(matches!(check_valuation_identity(&lhs, &rhs, 30), Err(Error::PrecisionInsufficient { .. })));
    }

    #[test]
    fn trivial_zeros_vanish() {
        let f = f3();
        for k in 1..=3 {
            assert!(trivial_zero_value(f, k, k + 2).is_zero());
        }
        assert!(trivial_zero_value(f, 0, 4).is_one());
    }

    #[test]
    fn exact_and_series_paths_agree() {
        let f = f3();
        let m = MatrixData::parse(f, "t1:1,1:1", None).unwrap();
        let z = zeta_series(&m, 20, Mode::Strict, DEFAULT_BUDGET).unwrap();
        for d in 0..=4 {
            let exact = partial_zeta(d, &m, Mode::Strict, Method::Auto, DEFAULT_BUDGET).unwrap();
            let part = TateSeries::from_tpoly(&exact, 20);
            // the tail beyond degree d - 1 starts at the valuation of S_d(1) = q^d - 1
            let tail = (3i64.pow(d) - 1).min(20);
            assert!(z.truncate(tail - 1).eq_to_precision(&part.truncate(tail - 1)), "d = {d}");
        }
    }

    proptest! {
        #[test]
        fn embedding_is_multiplicative(a in 1i64..40, b in 1i64..40, e in 0u32..4) {
            let f = f3();
            let x = RatK::parse(f, &format!("({a} + θ^{e})/(θ^3 + {b}θ + 1)")).unwrap();
            let y = RatK::parse(f, &format!("(θ + {b})/(θ^2 + {a})")).unwrap();
            let prod = TateSeries::from_ratk(&x, 0, 25).checked_mul(&TateSeries::from_ratk(&y, 0, 25)).unwrap();
            prop_assert!(prod.eq_to_precision(&TateSeries::from_ratk(&(&x * &y), 0, 25)));
        }
    }
}
