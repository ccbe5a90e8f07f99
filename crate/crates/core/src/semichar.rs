//! Semi-characters: products of χ_{t_i}, χ_c and the degree character ν.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::APoly;
use crate::ratk::RatK;
use crate::tpoly::{Monomial, TPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    /// χ_{t_i}: a ↦ a(t_i).
    VarEval(usize),
    /// χ_c: a ↦ a(c), c ∈ F_q.
    ConstEval(u32),
    /// ν on t_i: a ↦ t_i^{deg a}.
    DegChar(usize),
}

/// A multiplicative map A⁺ → K[t_1..t_s]; factors are kept sorted, and the empty
/// product is the trivial semi-character 𝟏.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemiChar {
    field: Field,
    s: usize,
    factors: Vec<Factor>,
}

impl SemiChar {
    pub fn trivial(field: Field, s: usize) -> SemiChar {
        SemiChar { field, s, factors: Vec::new() }
    }

    pub fn new(field: Field, s: usize, mut factors: Vec<Factor>) -> Result<SemiChar> {
        for f in &factors {
            match *f {
                Factor::VarEval(i) | Factor::DegChar(i) if i == 0 || i > s => {
                    return Err(Error::IndexOutOfRange { index: i, arity: s })
                }
                Factor::ConstEval(c) if c >= field.q() => {
                    return Err(Error::UnsupportedCharacter(format!("c({c}) is not in F_{}", field.q())))
                }
                _ => {}
            }
        }
        factors.sort();
        Ok(SemiChar { field, s, factors })
    }

    /// χ_{t_i}.
    pub fn var(field: Field, s: usize, i: usize) -> Result<SemiChar> {
        SemiChar::new(field, s, vec![Factor::VarEval(i)])
    }

    /// χ_{t_1} ⋯ χ_{t_k}.
    pub fn vars(field: Field, s: usize, k: usize) -> Result<SemiChar> {
        SemiChar::new(field, s, (1..=k).map(Factor::VarEval).collect())
    }

    /// ν on t_i.
    pub fn nu(field: Field, s: usize, i: usize) -> Result<SemiChar> {
        SemiChar::new(field, s, vec![Factor::DegChar(i)])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.s
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Largest variable index used, 0 if none.
    pub fn max_index(&self) -> usize {
        self.factors
            .iter()
            .map(|f| match *f {
                Factor::VarEval(i) | Factor::DegChar(i) => i,
                Factor::ConstEval(_) => 0,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn with_arity(&self, s: usize) -> Result<SemiChar> {
        SemiChar::new(self.field, s, self.factors.clone())
    }

    pub fn mul(&self, other: &SemiChar) -> Result<SemiChar> {
        if self.s != other.s {
            return Err(Error::ArityMismatch(self.s, other.s));
        }
        let mut f = self.factors.clone();
        f.extend_from_slice(&other.factors);
        SemiChar::new(self.field, self.s, f)
    }

    /// σ(a) for monic a.
    pub fn eval(&self, a: &APoly) -> Result<TPoly> {
        if !a.is_monic() {
            return Err(Error::NonMonicInput);
        }
        let f = self.field;
        let deg = a.degree().unwrap() as u32;
        let mut scalar = 1u32;
        let mut mono = Monomial::one(self.s);
        let mut out = TPoly::one(f, self.s);
        for factor in &self.factors {
            match *factor {
                Factor::VarEval(i) => out = &out * &TPoly::apoly_in_var(a, self.s, i)?,
                Factor::ConstEval(c) => scalar = f.mul(scalar, horner(a, c)),
                Factor::DegChar(i) => mono.0[i - 1] += deg,
            }
        }
        Ok(&out * &TPoly::term(mono, RatK::constant(f, scalar)))
    }

    /// Parses `1 | factor ("*" factor)*` with `factor := t<i> | nu<i> | c(<elem>)`.
    pub fn parse(field: Field, s: usize, input: &str) -> Result<SemiChar> {
        let (factors, _) = parse_factors(field, input, 0)?;
        SemiChar::new(field, s, factors)
    }

    /// As [`SemiChar::parse`], with arity the largest index used.
    pub fn parse_infer(field: Field, input: &str) -> Result<SemiChar> {
        let (factors, max) = parse_factors(field, input, 0)?;
        SemiChar::new(field, max, factors)
    }
}

fn horner(a: &APoly, c: u32) -> u32 {
    a.eval(c)
}

/// Parses a semi-character starting at byte offset `base` of the enclosing input
/// (for error positions); returns factors and the largest index.
pub(crate) fn parse_factors(field: Field, input: &str, base: usize) -> Result<(Vec<Factor>, usize)> {
    let syntax = |pos: usize, msg: &str| Error::Syntax { pos: base + pos, msg: msg.to_string() };
    let trimmed = input.trim();
    let lead = input.len() - input.trim_start().len();
    if trimmed.is_empty() {
        return Err(syntax(lead, "empty semi-character"));
    }
    if trimmed == "1" {
        return Ok((Vec::new(), 0));
    }
    let mut factors = Vec::new();
    let mut max = 0;
    let mut offset = lead;
    for part in trimmed.split('*') {
        let p = part.trim();
        let at = offset + (part.len() - part.trim_start().len());
        offset += part.len() + 1;
        let index = |digits: &str, at: usize| -> Result<usize> {
            match digits.parse::<usize>() {
                Ok(0) => Err(Error::BadIndex(format!("index 0 in `{p}`"))),
                Ok(i) => Ok(i),
                Err(_) => Err(syntax(at, &format!("expected a variable index in `{p}`"))),
            }
        };
        if let Some(rest) = p.strip_prefix("nu") {
            let i = index(rest, at + 2)?;
            max = max.max(i);
            factors.push(Factor::DegChar(i));
        } else if let Some(rest) = p.strip_prefix("c(") {
            let inner = rest.strip_suffix(')').ok_or_else(|| syntax(at, "unclosed `c(`"))?;
            let c = crate::text::parse_fq(field, inner)
                .map_err(|_| Error::UnsupportedCharacter(format!("c({inner}) needs an element of F_{}", field.q())))?;
            factors.push(Factor::ConstEval(c));
        } else if let Some(rest) = p.strip_prefix('t') {
            let i = index(rest, at + 1)?;
            max = max.max(i);
            factors.push(Factor::VarEval(i));
        } else if p == "1" {
        } else {
            return Err(syntax(at, &format!("unknown factor `{p}`")));
        }
    }
    Ok((factors, max))
}

impl fmt::Display for SemiChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| match *x {
                Factor::VarEval(i) => format!("t{i}"),
                Factor::DegChar(i) => format!("nu{i}"),
                Factor::ConstEval(c) => format!("c({})", self.field.format_elem(c)),
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::enumerate_monics;
    use proptest::prelude::*;

    fn f3() -> Field {
        Field::new(3).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let f = f3();
        let a = APoly::parse(f, "θ^2 + 1").unwrap();
        let chi = SemiChar::var(f, 1, 1).unwrap();
        assert_eq!(chi.eval(&a).unwrap(), TPoly::parse(f, 1, "t1^2 + 1").unwrap());
        assert!(SemiChar::trivial(f, 1).eval(&a).unwrap() == TPoly::one(f, 1));
        let nu = SemiChar::nu(f, 1, 1).unwrap();
        let b = APoly::parse(f, "θ^2 + θ").unwrap();
        assert_eq!(nu.eval(&b).unwrap(), TPoly::parse(f, 1, "t1^2").unwrap());
        assert_eq!(chi.eval(&APoly::parse(f, "2θ").unwrap()), Err(Error::NonMonicInput));
    }

    #[test]
    fn grammar_round_trip() {
        let f = Field::new(9).unwrap();
        for s in ["1", "t1*t2", "nu1", "c([x + 1])*t2", "c(2)"] {
            let x = SemiChar::parse(f, 2, s).unwrap();
            assert_eq!(SemiChar::parse(f, 2, &x.to_string()).unwrap(), x);
        }
        assert_eq!(SemiChar::parse_infer(f, "t1*t3").unwrap().arity(), 3);
        assert!(matches!(SemiChar::parse(f, 2, "t0"), Err(Error::BadIndex(_))));
        assert!(matches!(SemiChar::parse(f, 2, "c(θ)"), Err(Error::UnsupportedCharacter(_))));
        assert!(matches!(SemiChar::parse(f, 2, "u1"), Err(Error::Syntax { .. })));
    }

    proptest! {
        #[test]
        fn semi_characters_are_multiplicative(
            da in 0usize..3, ia in 0usize..27, db in 0usize..3, ib in 0usize..27,
            which in 0usize..5,
        ) {
            let f = f3();
            let sigma = SemiChar::parse(f, 2, ["1", "t1", "t1*t2", "nu2*t1", "c(2)*t2"][which]).unwrap();
            let a = enumerate_monics(f, da).nth(ia % 3usize.pow(da as u32)).unwrap();
            let b = enumerate_monics(f, db).nth(ib % 3usize.pow(db as u32)).unwrap();
            prop_assert_eq!(sigma.eval(&(&a * &b)).unwrap(), &sigma.eval(&a).unwrap() * &sigma.eval(&b).unwrap());
            prop_assert_eq!(sigma.eval(&APoly::one(f)).unwrap(), TPoly::one(f, 2));
        }
    }
}
