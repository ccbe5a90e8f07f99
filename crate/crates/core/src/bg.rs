//! Bernoulli-Goss polynomials BG_n = Σ_k Σ_{a ∈ A⁺(k)} a^n, their closed double sum
//! at n = q^d - 2, the degree formula and the congruences modulo irreducibles.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{digit_sum, geometric_sum, necklace_count};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{irreducibles_of_degree, APoly};
use crate::powersum::{power_sum, Method};
use crate::ratk::RatK;
use crate::semichar::SemiChar;
use crate::seq::SeqCache;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BGPoly {
    pub n: u64,
    pub value: APoly,
}

/// S_k(-n;𝟏) = Σ_{a ∈ A⁺(k)} a^n.
fn positive_power_sum(field: Field, k: u32, n: u64, budget: u128) -> Result<APoly> {
    let x = power_sum(k, -(n as i64), &SemiChar::trivial(field, 0), Method::Brute, budget)?;
    x.into_apoly()
}

/// BG_n summed up to K = ⌊ℓ_q(n)/(q-1)⌋; the next two power sums must vanish.
pub fn bg_polynomial(field: Field, n: u64, budget: u128) -> Result<BGPoly> {
    let q = field.q() as u64;
    let stop = (digit_sum(q, n) / (q - 1)) as u32;
    let mut value = APoly::zero(field);
    for k in 0..=stop {
        value = &value + &positive_power_sum(field, k, n, budget)?;
    }
    for k in stop + 1..=stop + 2 {
        if !positive_power_sum(field, k, n, budget)?.is_zero() {
            return Err(Error::TailNotVanishing { n, degree: k });
        }
    }
    Ok(BGPoly { n, value })
}

/// α_i = b_i(θ^{q^d})/l_i.
fn alpha(field: Field, d: u32, i: u32) -> RatK {
    let c = SeqCache::of(field);
    RatK::new(c.b_at(i, &c.theta_qpow(d)), c.l(i)).expect("l_i is nonzero")
}

/// -Σ_{d ≥ i > j ≥ 0} b_i(θ^{q^d})/(l_i l_j).
pub fn bg_formula_rhs(field: Field, d: u32) -> RatK {
    assert!(d >= 1, "the double sum needs d >= 1");
    let c = SeqCache::of(field);
    let mut acc = RatK::zero(field);
    let mut beta_prefix = RatK::zero(field);
    for i in 1..=d {
        beta_prefix = &beta_prefix + &c.l_inv(i - 1);
        acc = &acc + &(&alpha(field, d, i) * &beta_prefix);
    }
    -acc
}

/// δ_{i,j} = i q^d - Σ_{n=1}^{i} q^n - Σ_{m=1}^{j} q^m.
pub fn delta(q: u64, d: u32, i: u32, j: u32) -> i128 {
    i as i128 * (q as i128).pow(d) - geometric_sum(q, 1, i) - geometric_sum(q, 1, j)
}

/// Predicted and actual degrees for the split BG_{q^d-2} = -(U + V + W).
///
/// `None` marks an empty sum (degree -∞): V and W for d = 1, W for d = 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BgDegrees {
    pub d: u32,
    pub main: i128,
    pub u: i128,
    pub v: Option<i128>,
    pub w: Option<i128>,
    pub actual_bg: Option<i128>,
    pub actual_u: Option<i128>,
    pub actual_v: Option<i128>,
    pub actual_w: Option<i128>,
}

impl BgDegrees {
    /// All predictions agree with the computed degrees.
    pub fn consistent(&self) -> bool {
        self.actual_bg == Some(self.main)
            && self.actual_u == Some(self.u)
            && self.actual_v == self.v
            && self.actual_w == self.w
    }

    /// deg U > deg V = deg W, read with empty sums as -∞.
    pub fn dominance(&self) -> bool {
        let u = Some(self.u);
        u > self.v && u > self.w && (self.d < 3 || self.v == self.w)
    }
}

fn deg_of(x: &RatK) -> Option<i128> {
    x.degree().map(|d| d as i128)
}

/// The degree formula (d-1)q^d - 2q(q^{d-1}-1)/(q-1) with the U/V/W degrees, next to
/// the degrees of U, V, W and BG computed from the double sum.
pub fn bg_degree_formula(field: Field, d: u32) -> BgDegrees {
    assert!(d >= 1, "degree formula needs d >= 1");
    let q = field.q() as u64;
    let qi = q as i128;
    let dd = d as i128;
    let main = (dd - 1) * qi.pow(d) - 2 * qi * (qi.pow(d - 1) - 1) / (qi - 1);
    let u = (dd - 1) * qi.pow(d) - 2 * geometric_sum(q, 1, d - 1);
    let vw = (d >= 2).then(|| (dd - 2) * qi.pow(d) - geometric_sum(q, 1, d.saturating_sub(2)));

    let c = SeqCache::of(field);
    let al = |i: u32| alpha(field, d, i);
    let beta_sum = |upto: i64| (0..=upto).fold(RatK::zero(field), |acc, j| &acc + &c.l_inv(j as u32));
    let big_u = &al(d) * &c.l_inv(d - 1);
    let big_v = &(&al(d) + &al(d - 1)) * &beta_sum(d as i64 - 2);
    let mut big_w = RatK::zero(field);
    for i in 1..d.saturating_sub(1) {
        big_w = &big_w + &(&al(i) * &beta_sum(i as i64 - 1));
    }
    let total = -(&(&big_u + &big_v) + &big_w);
    BgDegrees {
        d,
        main,
        u,
        v: vw,
        w: (d >= 3).then_some(vw).flatten(),
        actual_bg: deg_of(&total),
        actual_u: deg_of(&big_u),
        actual_v: deg_of(&big_v),
        actual_w: deg_of(&big_w),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceRow {
    pub p: String,
    pub bg_mod_p: String,
    pub formula_mod_p: String,
    pub f_d_mod_p: String,
    pub congruent: bool,
    pub bg_vanishes: bool,
    pub divides_v: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub q: u32,
    pub d: u32,
    pub n: u64,
    pub rows: Vec<CongruenceRow>,
    pub irreducible_count: usize,
    pub necklace_count: u128,
    pub zero_count: usize,
    pub zero_bound: u64,
    pub v_degree: Option<usize>,
}

impl CongruenceReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.congruent && r.bg_vanishes == r.divides_v)
            && self.irreducible_count as u128 == self.necklace_count
            && self.zero_count as u64 <= self.zero_bound
            && self.v_degree.map(|v| v as i128) == Some(geometric_sum(self.q as u64, 1, self.d - 1))
    }
}

/// V(d) = l_{d-1} Σ_{i<d} l_i^{-1} ∈ A.
pub fn v_poly(field: Field, d: u32) -> APoly {
    let c = SeqCache::of(field);
    let s = (0..d).fold(RatK::zero(field), |acc, i| &acc + &c.l_inv(i));
    (&s * &c.l_k(d - 1)).into_apoly().expect("l_{d-1} clears the denominators")
}

/// For each monic irreducible P of degree d: BG_{q^d-2} mod P, the double sum reduced
/// term by term (each term is checked P-integral), and F_d(1;𝟏) mod P.
pub fn bg_congruence_check(field: Field, d: u32, budget: u128) -> Result<CongruenceReport> {
    assert!(d >= 1, "congruences need d >= 1");
    let q = field.q() as u64;
    let n = q.pow(d) - 2;
    let bg = bg_polynomial(field, n, budget)?.value;
    let c = SeqCache::of(field);
    let f_d = (0..d).fold(RatK::zero(field), |acc, i| &acc + &c.l_inv(i));
    let terms: Vec<RatK> =
        (1..=d).flat_map(|i| (0..i).map(move |j| (i, j))).map(|(i, j)| &alpha(field, d, i) * &c.l_inv(j)).collect();
    let v = v_poly(field, d);
    let irreducibles = irreducibles_of_degree(field, d as usize);
    let rows = irreducibles
        .par_iter()
        .map(|p| -> Result<CongruenceRow> {
            let bg_mod = bg.rem(p)?;
            let mut formula = APoly::zero(field);
            for t in &terms {
                formula = &formula - &t.reduce_mod(p)?;
            }
            let formula = formula.rem(p)?;
            let f_mod = f_d.reduce_mod(p)?;
            Ok(CongruenceRow {
                p: p.to_string(),
                bg_mod_p: bg_mod.to_string(),
                formula_mod_p: formula.to_string(),
                f_d_mod_p: f_mod.to_string(),
                congruent: bg_mod == f_mod && formula == f_mod,
                bg_vanishes: bg_mod.is_zero(),
                divides_v: p.divides(&v),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let zero_count = rows.iter().filter(|r| r.bg_vanishes).count();
    Ok(CongruenceReport {
        q: field.q(),
        d,
        n,
        irreducible_count: rows.len(),
        necklace_count: necklace_count(q, d),
        zero_count,
        zero_bound: (q.pow(d) - q) / (d as u64 * (q - 1)),
        v_degree: v.degree(),
        rows,
    })
}
