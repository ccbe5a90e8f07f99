//! Expression parser shared by `APoly`, `RatK`, `TPoly` and F_q elements.
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := power (("*"|"/") power | power)*      juxtaposition multiplies
//! power  := atom ("^" ["-"] INT)?
//! atom   := INT | "θ" | "theta" | "t" INT | "x" | "[" expr "]" | "(" expr ")"
//! ```
//! `x` is the class of the generator of F_q over F_p and `[..]` must denote an
//! element of F_q. Division and negative powers need a constant operand.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::APoly;
use crate::ratk::RatK;
use crate::tpoly::TPoly;

/// Parses `input` as a polynomial in t_1..t_s with coefficients in K.
pub fn parse_expr(field: Field, s: usize, input: &str) -> Result<TPoly> {
    let mut p = Parser { field, s, chars: input.chars().collect(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

/// Parses an element of F_q, with or without surrounding brackets.
pub fn parse_fq(field: Field, input: &str) -> Result<u32> {
    let v = parse_expr(field, 0, input)?;
    v.as_constant()
        .and_then(|c| c.as_constant())
        .ok_or_else(|| Error::Syntax { pos: 0, msg: format!("`{input}` is not an element of F_{}", field.q()) })
}

struct Parser {
    field: Field,
    s: usize,
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn starts_with(&self, w: &str) -> bool {
        let w: Vec<char> = w.chars().collect();
        self.chars[self.pos..].starts_with(&w)
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| Error::Syntax { pos: start, msg: "integer too large".into() })
    }

    fn constant(&self, c: RatK) -> TPoly {
        TPoly::constant(c, self.s)
    }

    fn expr(&mut self) -> Result<TPoly> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') || self.eat('−') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<TPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') || self.eat('·') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.power()?;
                let c = d.as_constant().ok_or(Error::Syntax { pos: at, msg: "division by a non-constant".into() })?;
                let inv = c.inv().map_err(|_| Error::Syntax { pos: at, msg: "division by zero".into() })?;
                acc = acc.scale(&inv);
            } else if matches!(self.peek(), Some(c) if c == '(' || c == '[' || c == 'θ' || c == 't' || c == 'x') {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<TPoly> {
        let at = self.pos;
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let k = self.integer()?;
        if neg {
            let c =
                base.as_constant().ok_or(Error::Syntax { pos: at, msg: "negative power of a non-constant".into() })?;
            let x = c.pow(-(k as i64)).map_err(|_| Error::Syntax { pos: at, msg: "negative power of zero".into() })?;
            return Ok(self.constant(x));
        }
        if let Some(c) = base.as_constant() {
            return Ok(self.constant(c.pow(k as i64).expect("nonnegative power")));
        }
        Ok(base.pow(u32::try_from(k).map_err(|_| self.err("exponent too large"))?))
    }

    fn atom(&mut self) -> Result<TPoly> {
        let f = self.field;
        let Some(c) = self.peek() else {
            return Err(self.err("unexpected end of input"));
        };
        if c.is_ascii_digit() {
            let n = self.integer()?;
            return Ok(self.constant(RatK::constant(f, (n % f.p() as u64) as u32)));
        }
        if c == 'θ' {
            self.pos += 1;
            return Ok(self.constant(RatK::theta(f)));
        }
        if self.starts_with("theta") {
            self.pos += 5;
            return Ok(self.constant(RatK::theta(f)));
        }
        if c == 't' {
            self.pos += 1;
            let at = self.pos;
            let i = self.integer()? as usize;
            if i == 0 || i > self.s {
                return Err(Error::Syntax { pos: at, msg: format!("variable t{i} outside t1..t{}", self.s) });
            }
            return TPoly::var(f, self.s, i);
        }
        if c == 'x' {
            let g = f.generator().ok_or_else(|| self.err("`x` needs a field with e > 1"))?;
            self.pos += 1;
            return Ok(self.constant(RatK::constant(f, g)));
        }
        if c == '[' {
            self.pos += 1;
            let at = self.pos;
            let inner = self.expr()?;
            if !self.eat(']') {
                return Err(self.err("expected `]`"));
            }
            let is_fq = inner.as_constant().is_some_and(|x| x.as_constant().is_some());
            if !is_fq {
                return Err(Error::Syntax { pos: at, msg: "brackets must hold an element of F_q".into() });
            }
            return Ok(inner);
        }
        if c == '(' {
            self.pos += 1;
            let inner = self.expr()?;
            if !self.eat(')') {
                return Err(self.err("expected `)`"));
            }
            return Ok(inner);
        }
        Err(self.err(&format!("unexpected character `{c}`")))
    }
}

impl TPoly {
    /// Convenience for arity-0 values that must lie in A.
    pub fn into_apoly(self) -> Result<APoly> {
        self.into_constant()?.into_apoly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn syntax_errors_carry_positions() {
        let f = Field::new(3).unwrap();
        assert!(matches!(parse_expr(f, 1, "t1 + "), Err(Error::Syntax { pos: 5, .. })));
        assert!(matches!(parse_expr(f, 1, "t2"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_expr(f, 1, "1/t1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr(f, 0, "x"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn implicit_multiplication_and_theta_spelling() {
        let f = Field::new(3).unwrap();
        assert_eq!(parse_expr(f, 1, "2θ t1").unwrap(), parse_expr(f, 1, "2*theta*t1").unwrap());
        assert_eq!(parse_expr(f, 0, "θ^-1").unwrap(), parse_expr(f, 0, "1/θ").unwrap());
    }

    #[test]
    fn field_elements() {
        let f = Field::new(9).unwrap();
        let g = f.generator().unwrap();
        assert_eq!(parse_fq(f, "[x]").unwrap(), g);
        assert_eq!(parse_fq(f, "x + 1").unwrap(), f.add(g, 1));
        assert_eq!(parse_fq(f, "x^2").unwrap(), f.mul(g, g));
        assert_eq!(parse_fq(f, "4").unwrap(), 1);
        assert!(parse_fq(f, "θ").is_err());
    }
}
