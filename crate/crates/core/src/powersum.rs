//! Twisted power sums S_d(k;σ) = Σ_{a ∈ A⁺(d)} a^{-k} σ(a): brute force and closed forms.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{enumerate_monics, APoly};
use crate::ratk::RatK;
use crate::semichar::{Factor, SemiChar};
use crate::seq::SeqCache;
use crate::tpoly::{Monomial, TPoly};

/// Default cap on the number of monics a brute-force sum may enumerate.
pub const DEFAULT_BUDGET: u128 = 1 << 16;

/// How [`power_sum`] evaluates a sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Closed form when one is known, enumeration otherwise.
    Auto,
    Brute,
    Closed,
}

/// The closed forms for weights 1 and 2 in zero, one and two variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedKind {
    /// S_d(1;𝟏) = 1/l_d
    E1,
    /// S_d(1;χ_{t1}) = b_d(t1)/l_d
    E2,
    /// S_d(1;χ_{t1}χ_{t2}) = b_d(t1) b_d(t2)/l_d
    E3,
    /// S_d(2;𝟏) = 1/l_d²
    F1,
    /// S_d(2;χ_{t1})
    F2,
    /// S_d(2;χ_{t1}χ_{t2})
    F3,
}

impl ClosedKind {
    pub const ALL: [ClosedKind; 6] =
        [ClosedKind::E1, ClosedKind::E2, ClosedKind::E3, ClosedKind::F1, ClosedKind::F2, ClosedKind::F3];

    pub fn weight(self) -> i64 {
        match self {
            ClosedKind::E1 | ClosedKind::E2 | ClosedKind::E3 => 1,
            _ => 2,
        }
    }

    pub fn arity(self) -> usize {
        match self {
            ClosedKind::E1 | ClosedKind::F1 => 0,
            ClosedKind::E2 | ClosedKind::F2 => 1,
            ClosedKind::E3 | ClosedKind::F3 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClosedKind::E1 => "e1",
            ClosedKind::E2 => "e2",
            ClosedKind::E3 => "e3",
            ClosedKind::F1 => "f1",
            ClosedKind::F2 => "f2",
            ClosedKind::F3 => "f3",
        }
    }

    /// The semi-character χ_{t1}⋯χ_{t_s} the form describes.
    pub fn semichar(self, field: Field) -> SemiChar {
        SemiChar::vars(field, self.arity(), self.arity()).expect("valid arity")
    }
}

/// Fails when q^d exceeds `budget`.
pub fn check_budget(field: Field, d: u32, budget: u128) -> Result<()> {
    let requested = (field.q() as u128).checked_pow(d).unwrap_or(u128::MAX);
    if requested > budget {
        return Err(Error::BudgetExceeded { requested, limit: budget });
    }
    Ok(())
}

/// Σ_{a ∈ A⁺(d)} a^{-k} σ(a) by enumeration; negative `k` sums positive powers.
///
/// For k > 0 every term is written over L^k with L = lcm(A⁺(d)) = ±l_d, so the
/// enumeration only multiplies polynomials and one normalization happens at the end.
pub fn power_sum_bruteforce(d: u32, k: i64, sigma: &SemiChar, budget: u128) -> Result<TPoly> {
    let f = sigma.field();
    let s = sigma.arity();
    check_budget(f, d, budget)?;
    let lcm = SeqCache::of(f).l(d).monic();
    let monics: Vec<APoly> = enumerate_monics(f, d as usize).collect();
    let weight = |a: &APoly| -> APoly {
        if k > 0 {
            lcm.div_exact(a).expect("monic of degree d divides l_d").pow(k as u64)
        } else {
            a.pow(k.unsigned_abs())
        }
    };
    let num: BTreeMap<Monomial, APoly> = monics
        .par_iter()
        .map(|a| -> Result<BTreeMap<Monomial, APoly>> {
            let w = weight(a);
            let sa = sigma.eval(a)?;
            Ok(sa
                .terms()
                .map(|(m, c)| (m.clone(), &w * &c.clone().into_apoly().expect("σ(a) has coefficients in A")))
                .collect())
        })
        .try_reduce(BTreeMap::new, |mut x, y| {
            for (m, c) in y {
                let e = x.entry(m).or_insert_with(|| APoly::zero(f));
                *e = &*e + &c;
            }
            Ok(x)
        })?;
    let den = if k > 0 { lcm.pow(k as u64) } else { APoly::one(f) };
    let terms: Vec<(Monomial, RatK)> = num
        .into_par_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (m, RatK::new(c, den.clone()).expect("nonzero denominator")))
        .collect();
    Ok(TPoly::from_terms(f, s, terms))
}

/// The closed forms (e1)-(e3), (f1)-(f3) at degree d.
pub fn power_sum_closed(field: Field, d: u32, kind: ClosedKind) -> TPoly {
    let c = SeqCache::of(field);
    let s = kind.arity();
    let l_inv = c.l_inv(d);
    let bs: Vec<TPoly> = (1..=s).map(|i| c.b(d, s, i).unwrap()).collect();
    let prod_b = bs.iter().fold(TPoly::one(field, s), |acc, b| &acc * b);
    match kind {
        ClosedKind::E1 | ClosedKind::E2 | ClosedKind::E3 => prod_b.scale(&l_inv),
        ClosedKind::F1 => TPoly::constant(&l_inv * &l_inv, 0),
        ClosedKind::F2 | ClosedKind::F3 => {
            let theta = RatK::theta(field);
            let lin = |i: usize| &TPoly::var(field, s, i).unwrap() - &TPoly::constant(theta.clone(), s);
            let gap = TPoly::constant(&theta - &RatK::from(c.theta_qpow(d)), s);
            // bracket multiplies b_d(t1)⋯ and is later divided by (t1-θ)⋯
            let bracket = if kind == ClosedKind::F2 {
                &lin(1) + &gap
            } else {
                &(&(&lin(1) * &lin(2)) + &(&lin(1) * &gap)) + &(&lin(2) * &gap)
            };
            let mut num = &prod_b * &bracket;
            for i in 1..=s {
                num = num.div_linear(i, &theta).expect("(t_i - θ) divides the numerator");
            }
            num.scale(&(&l_inv * &l_inv))
        }
    }
}

/// F_{d+1}(1;q) = b_d(t_1)⋯b_d(t_q)/l_d, in q variables.
pub fn partial_f_one_q(field: Field, d: u32) -> TPoly {
    let c = SeqCache::of(field);
    let s = field.q() as usize;
    (1..=s).fold(TPoly::constant(c.l_inv(d), s), |acc, i| &acc * &c.b(d, s, i).unwrap())
}

/// Coefficients w_i ∈ A with τ^n(b_d) = Σ_{i≤d} w_i b_i(t), namely
/// w_i = l_d^{q^{n-1}} Σ_{d ≥ i_1 ≥ ⋯ ≥ i_n = i} l_{i_1}^{q^{n-2}-q^{n-1}} ⋯ l_{i_{n-1}}^{1-q} l_i^{-1}.
///
/// Each chain term equals ∏_j (l_{i_{j-1}}/l_{i_j})^{q^{n-j}} with i_0 = d, so the sum
/// is built from exact quotients and Frobenius twists only.
pub fn chain_coefficients(field: Field, n: u32, d: u32) -> Vec<APoly> {
    assert!(n >= 1, "chains need n >= 1");
    let c = SeqCache::of(field);
    let mut w: Vec<APoly> = (0..=d).map(|i| if i == d { APoly::one(field) } else { APoly::zero(field) }).collect();
    for j in 1..=n {
        let twist = n - j;
        let next: Vec<APoly> = (0..=d)
            .map(|i| {
                (i..=d).filter(|&ip| !w[ip as usize].is_zero()).fold(APoly::zero(field), |acc, ip| {
                    &acc + &(&w[ip as usize] * &c.l_quotient(ip, i).frobenius(twist))
                })
            })
            .collect();
        w = next;
    }
    w
}

/// Both sides of τ^n(b_d(t)) = l_d^{q^{n-1}} Σ (nested sum) b_{i_n}(t), in one variable.
pub fn tau_b_expand(field: Field, n: u32, d: u32) -> (TPoly, TPoly) {
    let c = SeqCache::of(field);
    let lhs = c.b(d, 1, 1).unwrap().frobenius(n);
    let rhs = chain_coefficients(field, n, d)
        .into_iter()
        .enumerate()
        .fold(TPoly::zero(field, 1), |acc, (i, w)| &acc + &c.b(i as u32, 1, 1).unwrap().scale(&RatK::from(w)));
    (lhs, rhs)
}

/// S_d(q^n; χ_t) = l_d^{q^{n-1}-q^n} Σ (nested sum) b_{i_n}(t).
pub fn power_sum_qn_closed(field: Field, n: u32, d: u32) -> TPoly {
    let q = field.q() as i64;
    let (_, rhs) = tau_b_expand(field, n, d);
    rhs.scale(&SeqCache::of(field).l_k(d).pow(-q.pow(n)).expect("l_d is nonzero"))
}

/// `Some((c, l))` when k = c·q^l with 1 ≤ c ≤ q-1.
fn split_q_power(q: i64, k: i64) -> Option<(i64, u32)> {
    if k <= 0 {
        return None;
    }
    let (mut c, mut l) = (k, 0);
    while c % q == 0 {
        c /= q;
        l += 1;
    }
    (c < q).then_some((c, l))
}

/// A closed form for S_d(k;σ) when σ and k fall in a known family.
///
/// Degree characters factor out as S_d(k; ν_i ρ) = t_i^d S_d(k; ρ).
pub fn closed_form(d: u32, k: i64, sigma: &SemiChar) -> Option<TPoly> {
    let f = sigma.field();
    let s = sigma.arity();
    let q = f.q() as i64;
    let mut nu = Monomial::one(s);
    let mut vars = Vec::new();
    for factor in sigma.factors() {
        match *factor {
            Factor::DegChar(i) => nu.0[i - 1] += d,
            Factor::VarEval(i) => vars.push(i),
            Factor::ConstEval(_) => return None,
        }
    }
    if vars.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let base = match (vars.len(), k) {
        (0, _) => {
            let (c, l) = split_q_power(q, k)?;
            let x = SeqCache::of(f).l_k(d).pow(-(c * q.pow(l))).ok()?;
            TPoly::constant(x, 0)
        }
        (1, 1) => power_sum_closed(f, d, ClosedKind::E2),
        (1, 2) => power_sum_closed(f, d, ClosedKind::F2),
        (1, _) => {
            let (c, l) = split_q_power(q, k)?;
            if c != 1 || l == 0 {
                return None;
            }
            power_sum_qn_closed(f, l, d)
        }
        (2, 1) => power_sum_closed(f, d, ClosedKind::E3),
        (2, 2) => power_sum_closed(f, d, ClosedKind::F3),
        _ => return None,
    };
    let placed = base.embed(s, &vars).ok()?;
    Some(&placed * &TPoly::term(nu, RatK::one(f)))
}

type MemoKey = (usize, u32, i64, String, usize, bool);

static MEMO: Mutex<Option<HashMap<MemoKey, TPoly>>> = Mutex::new(None);

fn field_id(f: Field) -> usize {
    f.context() as *const _ as usize
}

/// S_d(k;σ) by the requested method; results are memoized.
pub fn power_sum(d: u32, k: i64, sigma: &SemiChar, method: Method, budget: u128) -> Result<TPoly> {
    let f = sigma.field();
    let closed = match method {
        Method::Brute => None,
        Method::Auto | Method::Closed => closed_form_memo(d, k, sigma),
    };
    match (closed, method) {
        (Some(x), _) => Ok(x),
        (None, Method::Closed) => Err(Error::UnsupportedCharacter(format!("no closed form for S_{d}({k};{sigma})"))),
        (None, _) => {
            let key = (field_id(f), d, k, sigma.to_string(), sigma.arity(), false);
            if let Some(x) = MEMO.lock().unwrap().get_or_insert_with(HashMap::new).get(&key) {
                return Ok(x.clone());
            }
            let x = power_sum_bruteforce(d, k, sigma, budget)?;
            MEMO.lock().unwrap().get_or_insert_with(HashMap::new).insert(key, x.clone());
            Ok(x)
        }
    }
}

fn closed_form_memo(d: u32, k: i64, sigma: &SemiChar) -> Option<TPoly> {
    let key = (field_id(sigma.field()), d, k, sigma.to_string(), sigma.arity(), true);
    if let Some(x) = MEMO.lock().unwrap().get_or_insert_with(HashMap::new).get(&key) {
        return Some(x.clone());
    }
    let x = closed_form(d, k, sigma)?;
    MEMO.lock().unwrap().get_or_insert_with(HashMap::new).insert(key, x.clone());
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    #[test]
    fn brute_force_examples() {
        let f = f3();
        let chi = SemiChar::var(f, 1, 1).unwrap();
        let x = power_sum_bruteforce(1, 1, &chi, DEFAULT_BUDGET).unwrap();
        assert_eq!(x, TPoly::parse(f, 1, "(t1 - θ)/(θ - θ^3)").unwrap());
        let one = SemiChar::trivial(f, 0);
        assert_eq!(power_sum_bruteforce(0, 5, &one, DEFAULT_BUDGET).unwrap(), TPoly::one(f, 0));
        assert_eq!(power_sum_bruteforce(1, -7, &one, DEFAULT_BUDGET).unwrap(), TPoly::parse(f, 0, "θ^3 + 2θ").unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let one = SemiChar::trivial(f3(), 0);
        assert_eq!(power_sum_bruteforce(3, 1, &one, 26), Err(Error::BudgetExceeded { requested: 27, limit: 26 }));
    }

    #[test]
    fn closed_form_examples() {
        let f = f3();
        assert_eq!(power_sum_closed(f, 1, ClosedKind::E2), TPoly::parse(f, 1, "(t1 - θ)/(θ - θ^3)").unwrap());
        assert_eq!(power_sum_closed(f, 1, ClosedKind::F2), TPoly::parse(f, 1, "(t1 - θ^3)/(θ - θ^3)^2").unwrap());
        for q in [3, 4, 5] {
            let g = Field::new(q).unwrap();
            for kind in ClosedKind::ALL {
                assert_eq!(power_sum_closed(g, 0, kind), TPoly::one(g, kind.arity()));
            }
        }
    }

    #[test]
    fn f_one_q_examples() {
        let f = f3();
        assert_eq!(partial_f_one_q(f, 0), TPoly::one(f, 3));
        let expected = TPoly::parse(f, 3, "(t1 - θ)*(t2 - θ)*(t3 - θ)/(θ - θ^3)").unwrap();
        assert_eq!(partial_f_one_q(f, 1), expected);
    }

    #[test]
    fn tau_b_small_cases() {
        let f = f3();
        let (l, r) = tau_b_expand(f, 1, 1);
        assert_eq!(l, TPoly::parse(f, 1, "t1 - θ^3").unwrap());
        assert_eq!(l, r);
        let (l, r) = tau_b_expand(f, 1, 0);
        assert_eq!((l.clone(), r), (TPoly::one(f, 1), l));
        let (l, r) = tau_b_expand(f, 2, 2);
        assert_eq!(l, r);
    }

    #[test]
    fn nu_factors_out() {
        let f = f3();
        let nu_chi = SemiChar::parse(f, 2, "nu2*t1").unwrap();
        for d in 0..3 {
            let brute = power_sum_bruteforce(d, 1, &nu_chi, DEFAULT_BUDGET).unwrap();
            assert_eq!(closed_form(d, 1, &nu_chi).unwrap(), brute);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn closed_forms_match_enumeration(qi in 0usize..2, d in 0u32..4, kind in 0usize..6) {
            let f = Field::new([3, 4][qi]).unwrap();
            let kind = ClosedKind::ALL[kind];
            let brute = power_sum_bruteforce(d, kind.weight(), &kind.semichar(f), DEFAULT_BUDGET).unwrap();
            prop_assert_eq!(power_sum_closed(f, d, kind), brute);
        }

        // Σ a^{-q} = (Σ a^{-1})^q in characteristic p
        #[test]
        fn frobenius_compatibility(qi in 0usize..3, d in 0u32..4) {
            let f = Field::new([3, 4, 5][qi]).unwrap();
            let one = SemiChar::trivial(f, 0);
            let sq = power_sum_bruteforce(d, f.q() as i64, &one, DEFAULT_BUDGET).unwrap().into_constant().unwrap();
            let s1 = power_sum_bruteforce(d, 1, &one, DEFAULT_BUDGET).unwrap().into_constant().unwrap();
            prop_assert_eq!(sq, s1.frobenius(1));
        }

        #[test]
        fn lemma_tau_b(qi in 0usize..3, d in 0u32..6) {
            let f = Field::new([3, 4, 5][qi]).unwrap();
            let (l, r) = tau_b_expand(f, 1, d);
            prop_assert_eq!(l, r);
        }
    }
}
