//! Matrix data, multiple power sums and partial multiple zeta values.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::powersum::{power_sum, Method};
use crate::semichar::{parse_factors, SemiChar};
use crate::tpoly::TPoly;

/// Strictly (`d > i_2 > ⋯`) or weakly (`d ≥ i_2 ≥ ⋯`) decreasing degree chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Strict,
    Star,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Column {
    pub sigma: SemiChar,
    pub n: i64,
}

/// Columns (σ_i, n_i) sharing the arity `s`; the empty data has value 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixData {
    field: Field,
    s: usize,
    columns: Vec<Column>,
}

impl MatrixData {
    pub fn new(field: Field, s: usize, columns: Vec<Column>) -> Result<MatrixData> {
        for (i, c) in columns.iter().enumerate() {
            if c.n < 1 {
                return Err(Error::WeightZero(i + 1));
            }
            if c.sigma.arity() != s {
                return Err(Error::ArityMismatch(c.sigma.arity(), s));
            }
        }
        Ok(MatrixData { field, s, columns })
    }

    pub fn empty(field: Field, s: usize) -> MatrixData {
        MatrixData { field, s, columns: Vec::new() }
    }

    /// Columns given as (semi-character text, weight) pairs in arity `s`.
    pub fn from_specs(field: Field, s: usize, cols: &[(&str, i64)]) -> Result<MatrixData> {
        let columns = cols
            .iter()
            .map(|&(sig, n)| Ok(Column { sigma: SemiChar::parse(field, s, sig)?, n }))
            .collect::<Result<Vec<_>>>()?;
        MatrixData::new(field, s, columns)
    }

    /// Columns of trivial semi-characters with the given weights (Thakur's ζ(n_1, …, n_r)).
    pub fn weights(field: Field, s: usize, ns: &[i64]) -> Result<MatrixData> {
        let columns = ns.iter().map(|&n| Column { sigma: SemiChar::trivial(field, s), n }).collect();
        MatrixData::new(field, s, columns)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.s
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn depth(&self) -> usize {
        self.columns.len()
    }

    pub fn weight(&self) -> i64 {
        self.columns.iter().map(|c| c.n).sum()
    }

    /// Parses `column ("," column)*` with `column := semichar ":" n`.
    ///
    /// The arity is `vars` when given, otherwise the largest variable index used.
    pub fn parse(field: Field, input: &str, vars: Option<usize>) -> Result<MatrixData> {
        if input.trim().is_empty() {
            return Err(Error::Syntax { pos: 0, msg: "empty matrix data".into() });
        }
        let mut parsed = Vec::new();
        let mut max = 0;
        let mut offset = 0;
        for (idx, col) in input.split(',').enumerate() {
            let start = offset;
            offset += col.len() + 1;
            if col.trim().is_empty() {
                return Err(Error::Syntax { pos: start, msg: format!("empty column {}", idx + 1) });
            }
            let Some(colon) = col.rfind(':') else {
                return Err(Error::Syntax { pos: start, msg: format!("column {} lacks `:weight`", idx + 1) });
            };
            let (sig, w) = (&col[..colon], &col[colon + 1..]);
            let (factors, m) = parse_factors(field, sig, start)?;
            max = max.max(m);
            let n: i64 = w
                .trim()
                .parse()
                .map_err(|_| Error::Syntax { pos: start + colon + 1, msg: format!("bad weight `{}`", w.trim()) })?;
            if n < 1 {
                return Err(Error::WeightZero(idx + 1));
            }
            parsed.push((factors, n));
        }
        let s = match vars {
            Some(s) if s < max => return Err(Error::BadIndex(format!("t{max} exceeds --vars {s}"))),
            Some(s) => s,
            None => max,
        };
        let columns = parsed
            .into_iter()
            .map(|(factors, n)| Ok(Column { sigma: SemiChar::new(field, s, factors)?, n }))
            .collect::<Result<Vec<_>>>()?;
        MatrixData::new(field, s, columns)
    }
}

impl fmt::Display for MatrixData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self.columns.iter().map(|c| format!("{}:{}", c.sigma, c.n)).collect();
        f.write_str(&cols.join(","))
    }
}

/// The operations chain sums need; implemented by exact and truncated values.
pub trait SumAlgebra: Clone {
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl SumAlgebra for TPoly {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// For a depth-r chain, returns S_i(M) for i = 0..=top, where `single(j, i)` is
/// S_i(n_j;σ_j) (columns 0-based). Depth 0 gives `one` at degree 0 and `zero` elsewhere.
///
/// Evaluated right to left: T_r(i) = S_i(col r), T_j(i) = S_i(col j)·Σ_{i' < i} T_{j+1}(i')
/// (`≤` in star mode), so only O(r·top) single sums are needed.
pub fn chain_sums<T: SumAlgebra>(
    depth: usize,
    top: u32,
    mode: Mode,
    zero: &T,
    one: &T,
    mut single: impl FnMut(usize, u32) -> Result<T>,
) -> Result<Vec<T>> {
    if depth == 0 {
        return Ok((0..=top).map(|i| if i == 0 { one.clone() } else { zero.clone() }).collect());
    }
    let mut cur: Vec<T> = (0..=top).map(|i| single(depth - 1, i)).collect::<Result<_>>()?;
    for j in (0..depth - 1).rev() {
        let mut next = Vec::with_capacity(cur.len());
        let mut prefix = zero.clone();
        for i in 0..=top {
            if mode == Mode::Star {
                prefix = prefix.add(&cur[i as usize]);
            }
            next.push(single(j, i)?.mul(&prefix));
            if mode == Mode::Strict {
                prefix = prefix.add(&cur[i as usize]);
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// S_i(M) for every i ≤ top.
pub fn multi_power_sums_upto(top: u32, m: &MatrixData, mode: Mode, method: Method, budget: u128) -> Result<Vec<TPoly>> {
    let f = m.field();
    let s = m.arity();
    chain_sums(m.depth(), top, mode, &TPoly::zero(f, s), &TPoly::one(f, s), |j, i| {
        let c = &m.columns()[j];
        power_sum(i, c.n, &c.sigma, method, budget)
    })
}

/// S_d(M) (strict) or S*_d(M) (star).
pub fn multi_power_sum(d: u32, m: &MatrixData, mode: Mode, method: Method, budget: u128) -> Result<TPoly> {
    Ok(multi_power_sums_upto(d, m, mode, method, budget)?.pop().unwrap())
}

/// F_d(M) = Σ_{k < d} S_k(M); F_0 = 0.
pub fn partial_zeta(d: u32, m: &MatrixData, mode: Mode, method: Method, budget: u128) -> Result<TPoly> {
    let zero = TPoly::zero(m.field(), m.arity());
    if d == 0 {
        return Ok(zero);
    }
    let terms = multi_power_sums_upto(d - 1, m, mode, method, budget)?;
    Ok(terms.iter().fold(zero, |acc, x| &acc + x))
}

/// F_k(M) for k = 0..=d.
pub fn partial_zetas_upto(d: u32, m: &MatrixData, mode: Mode, method: Method, budget: u128) -> Result<Vec<TPoly>> {
    let zero = TPoly::zero(m.field(), m.arity());
    let mut out = vec![zero.clone()];
    if d == 0 {
        return Ok(out);
    }
    let terms = multi_power_sums_upto(d - 1, m, mode, method, budget)?;
    let mut acc = zero;
    for t in &terms {
        acc = &acc + t;
        out.push(acc.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::powersum::DEFAULT_BUDGET;
    use crate::ratk::RatK;
    use crate::seq::SeqCache;
    use proptest::prelude::*;

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    #[test]
    fn parse_examples() {
        let f = f3();
        let m = MatrixData::parse(f, "t1:1,1:1", None).unwrap();
        assert_eq!((m.arity(), m.depth(), m.weight()), (1, 2, 2));
        assert_eq!(m.to_string(), "t1:1,1:1");
        let m = MatrixData::parse(f, "t1*t2:2", None).unwrap();
        assert_eq!((m.arity(), m.depth(), m.weight()), (2, 1, 2));
        assert!(matches!(MatrixData::parse(f, "t1:1,,", None), Err(Error::Syntax { pos: 5, .. })));
        assert_eq!(MatrixData::parse(f, "t1:0", None), Err(Error::WeightZero(1)));
        assert!(matches!(MatrixData::parse(f, "t3:1", Some(2)), Err(Error::BadIndex(_))));
        assert_eq!(MatrixData::parse(f, "1:1", Some(2)).unwrap().arity(), 2);
    }

    #[test]
    fn depth_two_examples() {
        let f = f3();
        let m = MatrixData::weights(f, 0, &[1, 1]).unwrap();
        let strict = |d| multi_power_sum(d, &m, Mode::Strict, Method::Brute, DEFAULT_BUDGET).unwrap();
        assert!(strict(0).is_zero());
        let c = SeqCache::of(f);
        let expected = &c.l_inv(2) * &(&RatK::one(f) + &c.l_inv(1));
        assert_eq!(strict(2), TPoly::constant(expected, 0));
    }

    #[test]
    fn partial_sums() {
        let f = f3();
        let one = MatrixData::weights(f, 0, &[1]).unwrap();
        let fz = |d| partial_zeta(d, &one, Mode::Strict, Method::Brute, DEFAULT_BUDGET).unwrap();
        assert!(fz(0).is_zero());
        assert_eq!(fz(1), TPoly::one(f, 0));
        assert_eq!(fz(2), TPoly::parse(f, 0, "1 + 1/(θ - θ^3)").unwrap());
        let empty = MatrixData::empty(f, 0);
        assert_eq!(multi_power_sum(0, &empty, Mode::Strict, Method::Brute, DEFAULT_BUDGET).unwrap(), TPoly::one(f, 0));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        // S*_d(n1,n2) = S_d(n1,n2) + S_d(n1;σ1) S_d(n2;σ2)
        #[test]
        fn star_strict_bridge(d in 0u32..4, n1 in 1i64..4, n2 in 1i64..4, sig in 0usize..3) {
            let f = f3();
            let s1 = ["1", "t1", "nu1"][sig];
            let m = MatrixData::from_specs(f, 1, &[(s1, n1), ("1", n2)]).unwrap();
            let star = multi_power_sum(d, &m, Mode::Star, Method::Auto, DEFAULT_BUDGET).unwrap();
            let strict = multi_power_sum(d, &m, Mode::Strict, Method::Auto, DEFAULT_BUDGET).unwrap();
            let a = power_sum(d, n1, &m.columns()[0].sigma, Method::Auto, DEFAULT_BUDGET).unwrap();
            let b = power_sum(d, n2, &m.columns()[1].sigma, Method::Auto, DEFAULT_BUDGET).unwrap();
            prop_assert_eq!(star, &strict + &(&a * &b));
        }

        #[test]
        fn dp_matches_nested_loops(d in 0u32..4, n in prop::collection::vec(1i64..3, 1..4)) {
            let f = f3();
            let m = MatrixData::weights(f, 0, &n).unwrap();
            let fast = multi_power_sum(d, &m, Mode::Strict, Method::Auto, DEFAULT_BUDGET).unwrap();
            fn nested(f: Field, n: &[i64], d: u32) -> TPoly {
                let sd = power_sum(d, n[0], &SemiChar::trivial(f, 0), Method::Auto, DEFAULT_BUDGET).unwrap();
                if n.len() == 1 {
                    return sd;
                }
                let inner = (0..d).fold(TPoly::zero(f, 0), |acc, i| &acc + &nested(f, &n[1..], i));
                &sd * &inner
            }
            prop_assert_eq!(fast, nested(f, &n, d));
        }

        #[test]
        fn matrix_data_round_trip(cols in prop::collection::vec((0usize..6, 1i64..9), 1..5)) {
            let f = Field::new(9).unwrap();
            let sigs = ["1", "t1", "t1*t2", "nu2", "c([x + 2])", "t2*nu1"];
            let text: Vec<String> = cols.iter().map(|(i, n)| format!("{}:{n}", sigs[*i])).collect();
            let m = MatrixData::parse(f, &text.join(","), Some(2)).unwrap();
            prop_assert_eq!(MatrixData::parse(f, &m.to_string(), Some(2)).unwrap(), m);
        }
    }
}
