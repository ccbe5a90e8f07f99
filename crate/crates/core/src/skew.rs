//! The skew polynomial ring K{τ} with τc = c^q τ, the Carlitz action and η: K[t] ≅ K{τ}.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::mzv::{partial_zeta, MatrixData, Mode};
use crate::poly::{enumerate_monics, APoly};
use crate::powersum::{chain_coefficients, check_budget, Method};
use crate::ratk::RatK;
use crate::seq::SeqCache;
use crate::tpoly::{Monomial, TPoly};

/// Σ c_i τ^i with c_i ∈ K; the top coefficient is nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewPoly {
    field: Field,
    coeffs: Vec<RatK>,
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly({self})")
    }
}

impl SkewPoly {
    pub fn new(field: Field, mut coeffs: Vec<RatK>) -> SkewPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly { field, coeffs }
    }

    pub fn zero(field: Field) -> SkewPoly {
        SkewPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> SkewPoly {
        SkewPoly::constant(RatK::one(field))
    }

    pub fn constant(c: RatK) -> SkewPoly {
        SkewPoly::term(c, 0)
    }

    /// c τ^i.
    pub fn term(c: RatK, i: usize) -> SkewPoly {
        let f = c.field();
        let mut v = vec![RatK::zero(f); i];
        v.push(c);
        SkewPoly::new(f, v)
    }

    pub fn tau(field: Field, i: usize) -> SkewPoly {
        SkewPoly::term(RatK::one(field), i)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[RatK] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatK {
        self.coeffs.get(i).cloned().unwrap_or_else(|| RatK::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// τ-degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &SkewPoly) -> SkewPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        SkewPoly::new(self.field, (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &SkewPoly) -> SkewPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        SkewPoly::new(self.field, (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    /// c·f (left scalar multiplication).
    pub fn scale_left(&self, c: &RatK) -> SkewPoly {
        SkewPoly::new(self.field, self.coeffs.iter().map(|x| c * x).collect())
    }

    /// (a τ^i)(b τ^j) = a b^{q^i} τ^{i+j}.
    pub fn mul(&self, other: &SkewPoly) -> SkewPoly {
        if self.is_zero() || other.is_zero() {
            return SkewPoly::zero(self.field);
        }
        let mut out = vec![RatK::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * &b.frobenius(i as u32));
                }
            }
        }
        SkewPoly::new(self.field, out)
    }

    /// f(1) = Σ f_i.
    pub fn eval_at_one(&self) -> RatK {
        self.coeffs.iter().fold(RatK::zero(self.field), |acc, c| &acc + c)
    }

    /// g with f(ω) = g(t)ω, namely Σ f_i b_i(t).
    pub fn eval_at_omega(&self) -> TPoly {
        let c = SeqCache::of(self.field);
        self.coeffs
            .iter()
            .enumerate()
            .fold(TPoly::zero(self.field, 1), |acc, (i, x)| &acc + &c.b(i as u32, 1, 1).unwrap().scale(x))
    }

    /// Parses `c_0 + c_1*τ + c_2*τ^2` style input; `tau` is accepted for τ.
    pub fn parse(field: Field, input: &str) -> Result<SkewPoly> {
        let mut out = SkewPoly::zero(field);
        for (start, term) in split_top_level(input) {
            let t = term.trim();
            let ends_tau = |x: &str| x.ends_with('τ') || x.ends_with("tau");
            let (coef, power) = if ends_tau(t) {
                (strip_mul(t, t.len() - tau_len(t)), 1)
            } else {
                match t.rfind('^') {
                    Some(caret) if ends_tau(&t[..caret]) => {
                        let exp = t[caret + 1..]
                            .trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Syntax { pos: start + caret + 1, msg: "bad τ exponent".into() })?;
                        (strip_mul(t, caret - tau_len(&t[..caret])), exp)
                    }
                    _ => (t, 0),
                }
            };
            let c = if coef.is_empty() { RatK::one(field) } else { RatK::parse(field, coef)? };
            out = out.add(&SkewPoly::term(c, power));
        }
        Ok(out)
    }
}

fn tau_len(t: &str) -> usize {
    if t.ends_with("tau") {
        3
    } else {
        'τ'.len_utf8()
    }
}

/// The coefficient text before a trailing `*τ…`.
fn strip_mul(t: &str, end: usize) -> &str {
    let head = t[..end].trim_end();
    head.strip_suffix('*').unwrap_or(head).trim()
}

/// Splits at `+` signs outside parentheses and brackets.
fn split_top_level(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '+' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let cs = c.to_string();
                let cs = if cs.contains([' ', '/']) { format!("({cs})") } else { cs };
                match i {
                    0 => cs,
                    1 => format!("{cs}*τ"),
                    _ => format!("{cs}*τ^{i}"),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// C_θ = θ + τ.
pub fn carlitz_theta(field: Field) -> SkewPoly {
    SkewPoly::new(field, vec![RatK::theta(field), RatK::one(field)])
}

/// C_a, the image of a under θ ↦ θ + τ.
pub fn carlitz_action(a: &APoly) -> SkewPoly {
    let f = a.field();
    let ct = carlitz_theta(f);
    a.coeffs()
        .iter()
        .rev()
        .fold(SkewPoly::zero(f), |acc, &c| acc.mul(&ct).add(&SkewPoly::constant(RatK::constant(f, c))))
}

/// η(Σ h_i t^i) = Σ h_i (θ + τ)^i.
pub fn eta(h: &TPoly) -> Result<SkewPoly> {
    let f = h.field();
    if h.arity() != 1 {
        return Err(Error::ArityMismatch(h.arity(), 1));
    }
    let top = h.terms().map(|(m, _)| m.0[0]).max().unwrap_or(0);
    let ct = carlitz_theta(f);
    let mut power = SkewPoly::one(f);
    let mut out = SkewPoly::zero(f);
    for i in 0..=top {
        let c = h.coeff(&Monomial(vec![i]));
        out = out.add(&power.scale_left(&c));
        power = power.mul(&ct);
    }
    Ok(out)
}

/// η⁻¹ by back-substitution: (θ + τ)^i has top term τ^i, so the τ-degree drops each step.
pub fn eta_inv(g: &SkewPoly) -> TPoly {
    let f = g.field();
    let ct = carlitz_theta(f);
    let mut powers = vec![SkewPoly::one(f)];
    while powers.len() <= g.degree().unwrap_or(0) {
        let next = powers.last().unwrap().mul(&ct);
        powers.push(next);
    }
    let mut rest = g.clone();
    let mut out = TPoly::zero(f, 1);
    while let Some(k) = rest.degree() {
        let c = rest.coeff(k);
        out = &out + &TPoly::term(Monomial(vec![k as u32]), c.clone());
        rest = rest.sub(&powers[k].scale_left(&c));
    }
    out
}

/// 𝔖_d(q^n;1) = Σ_{a ∈ A⁺(d)} a^{-q^n} C_a by enumeration.
pub fn frak_s_brute(field: Field, d: u32, n: u32, budget: u128) -> Result<SkewPoly> {
    check_budget(field, d, budget)?;
    let q = field.q() as i64;
    let mut out = SkewPoly::zero(field);
    for a in enumerate_monics(field, d as usize) {
        let w = RatK::from(a.clone()).pow(-q.pow(n)).expect("monic is nonzero");
        out = out.add(&carlitz_action(&a).scale_left(&w));
    }
    Ok(out)
}

/// l_d^{q^{n-1}-q^n} Σ_{d ≥ i_1 ≥ ⋯ ≥ i_n ≥ 0} l_{i_1}^{q^{n-2}-q^{n-1}} ⋯ l_{i_n}^{-1} τ^{i_n}.
///
/// The image under η of the nested sum for S_d(q^n;χ_t); η(b_i) = τ^i puts each chain
/// on τ^{i_n}.
pub fn frak_s_closed(field: Field, d: u32, n: u32) -> SkewPoly {
    let q = field.q() as i64;
    let scale = SeqCache::of(field).l_k(d).pow(-q.pow(n)).expect("l_d is nonzero");
    let coeffs = chain_coefficients(field, n, d).into_iter().map(|w| &RatK::from(w) * &scale).collect();
    SkewPoly::new(field, coeffs)
}

/// The same nested sum with every chain placed on τ^n, as printed in the source statement.
pub fn frak_s_closed_literal(field: Field, d: u32, n: u32) -> SkewPoly {
    let total = frak_s_closed(field, d, n).eval_at_one();
    SkewPoly::term(total, n as usize)
}

/// 𝔖_d(q^n;1), checked against its closed form.
pub fn frak_s(field: Field, d: u32, n: u32, budget: u128) -> Result<SkewPoly> {
    let brute = frak_s_brute(field, d, n, budget)?;
    let closed = frak_s_closed(field, d, n);
    if brute != closed {
        return Err(Error::ClosedFormMismatch(format!("𝔖_{d}(q^{n};1): {brute} != {closed}")));
    }
    Ok(brute)
}

/// The links of Σ_{k<d} 𝔖_k(q;1)(1) = F*_d(q-1,1) = F_d(q-1,1) + F_d(1)^q
/// = F_d(1) F_d(q-1) - F_d(1,q-1).
#[derive(Clone, Debug)]
pub struct StarChain {
    pub d: u32,
    pub links: Vec<(&'static str, RatK)>,
}

impl StarChain {
    pub fn all_equal(&self) -> bool {
        self.links.windows(2).all(|w| w[0].1 == w[1].1)
    }
}

pub fn star_chain_check(field: Field, d: u32, budget: u128) -> Result<StarChain> {
    let q = field.q() as i64;
    let fz = |ns: &[i64], mode: Mode| -> Result<RatK> {
        let m = MatrixData::weights(field, 0, ns)?;
        partial_zeta(d, &m, mode, Method::Auto, budget)?.into_constant()
    };
    let mut skew_sum = RatK::zero(field);
    for k in 0..d {
        skew_sum = &skew_sum + &frak_s(field, k, 1, budget)?.eval_at_one();
    }
    let f1 = fz(&[1], Mode::Strict)?;
    let fq1 = fz(&[q - 1], Mode::Strict)?;
    let links = vec![
        ("sum of frak_S_k(q;1)(1)", skew_sum),
        ("F*_d(q-1,1)", fz(&[q - 1, 1], Mode::Star)?),
        ("F_d(q-1,1) + F_d(1)^q", &fz(&[q - 1, 1], Mode::Strict)? + &f1.frobenius(1)),
        ("F_d(1)F_d(q-1) - F_d(1,q-1)", &(&f1 * &fq1) - &fz(&[1, q - 1], Mode::Strict)?),
    ];
    Ok(StarChain { d, links })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::powersum::{power_sum_closed, ClosedKind, DEFAULT_BUDGET};
    use proptest::prelude::*;

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    fn sp(x: &str) -> SkewPoly {
        SkewPoly::parse(f3(), x).unwrap()
    }

    #[test]
    fn twisted_products() {
        let f = f3();
        assert_eq!(SkewPoly::tau(f, 1).mul(&SkewPoly::constant(RatK::theta(f))), sp("θ^3*τ"));
        let ct = carlitz_theta(f);
        assert_eq!(ct.mul(&ct), sp("θ^2 + (θ^3 + θ)*τ + τ^2"));
        assert_eq!(ct.mul(&SkewPoly::one(f)), ct);
        assert_eq!(carlitz_action(&APoly::parse(f, "θ^2").unwrap()), ct.mul(&ct));
        assert_eq!(carlitz_action(&APoly::one(f)), SkewPoly::one(f));
    }

    #[test]
    fn eta_examples() {
        let f = f3();
        assert_eq!(eta(&TPoly::parse(f, 1, "t1").unwrap()).unwrap(), carlitz_theta(f));
        assert_eq!(eta_inv(&SkewPoly::tau(f, 1)), TPoly::parse(f, 1, "t1 - θ").unwrap());
        let a = APoly::parse(f, "θ^2 + θ + 1").unwrap();
        assert_eq!(eta(&TPoly::apoly_in_var(&a, 1, 1).unwrap()).unwrap(), carlitz_action(&a));
    }

    #[test]
    fn evaluations() {
        let f = f3();
        assert_eq!(carlitz_theta(f).eval_at_omega(), TPoly::parse(f, 1, "t1").unwrap());
        assert_eq!(SkewPoly::one(f).eval_at_omega(), TPoly::one(f, 1));
        assert_eq!(SkewPoly::tau(f, 2).eval_at_omega(), TPoly::parse(f, 1, "(t1 - θ)*(t1 - θ^3)").unwrap());
        assert_eq!(carlitz_theta(f).eval_at_one(), RatK::parse(f, "θ + 1").unwrap());
        assert!(SkewPoly::zero(f).eval_at_one().is_zero());
        let l1 = RatK::parse(f, "θ - θ^3").unwrap();
        let expected = &(&RatK::one(f) + &l1) / &l1.pow(3).unwrap();
        assert_eq!(frak_s(f, 1, 1, DEFAULT_BUDGET).unwrap().eval_at_one(), expected);
    }

    #[test]
    fn frak_s_degree_zero_and_literal_reading() {
        let f = f3();
        assert_eq!(frak_s(f, 0, 1, DEFAULT_BUDGET).unwrap(), SkewPoly::one(f));
        assert_ne!(frak_s_closed_literal(f, 0, 1), SkewPoly::one(f));
        assert_ne!(frak_s_closed_literal(f, 1, 1), frak_s_brute(f, 1, 1, DEFAULT_BUDGET).unwrap());
        assert_eq!(frak_s_closed(f, 1, 1), sp("1/(θ - θ^3)^2 + 1/(θ - θ^3)^3*τ"));
    }

    #[test]
    fn star_chain_small() {
        for (q, d) in [(3, 1), (3, 3), (4, 3)] {
            let c = star_chain_check(Field::new(q).unwrap(), d, DEFAULT_BUDGET).unwrap();
            assert!(c.all_equal(), "{c:?}");
        }
        let c = star_chain_check(f3(), 1, DEFAULT_BUDGET).unwrap();
        assert!(c.links[0].1.is_one());
    }

    #[test]
    fn eta_of_power_sums() {
        let f = f3();
        for d in 0..5 {
            let s = power_sum_closed(f, d, ClosedKind::E2);
            let expected = SkewPoly::term(SeqCache::of(f).l_inv(d), d as usize);
            assert_eq!(eta(&s).unwrap(), expected);
        }
    }

    fn arb_skew() -> impl Strategy<Value = SkewPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 0..3), 0u32..2), 0..4).prop_map(|cs| {
            let f = f3();
            let den = APoly::parse(f, "θ + 1").unwrap();
            SkewPoly::new(
                f,
                cs.into_iter().map(|(n, k)| RatK::new(APoly::new(f, n), den.pow(k as u64)).unwrap()).collect(),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn ring_laws(a in arb_skew(), b in arb_skew(), c in arb_skew()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(SkewPoly::parse(f3(), &a.to_string()).unwrap(), a);
        }

        #[test]
        fn carlitz_is_multiplicative(da in 0usize..3, ia in 0usize..27, db in 0usize..3, ib in 0usize..27) {
            let f = f3();
            let a = enumerate_monics(f, da).nth(ia % 3usize.pow(da as u32)).unwrap();
            let b = enumerate_monics(f, db).nth(ib % 3usize.pow(db as u32)).unwrap();
            prop_assert_eq!(carlitz_action(&(&a * &b)), carlitz_action(&a).mul(&carlitz_action(&b)));
        }

        #[test]
        fn eta_is_bijective(coeffs in prop::collection::vec(prop::collection::vec(0u32..3, 0..3), 0..9)) {
            let f = f3();
            let h = TPoly::from_terms(f, 1, coeffs.into_iter().enumerate().map(|(i, c)| {
                (Monomial(vec![i as u32]), RatK::from(APoly::new(f, c)))
            }));
            let g = eta(&h).unwrap();
            prop_assert_eq!(eta_inv(&g), h.clone());
            prop_assert_eq!(g.eval_at_omega(), h);
            prop_assert_eq!(eta(&eta_inv(&g)).unwrap(), g);
        }
    }
}
