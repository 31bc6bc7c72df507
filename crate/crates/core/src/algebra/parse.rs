//! Plain-text polynomial grammar.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor (['*'] factor)*          juxtaposition multiplies
//! factor := atom ['^' uint]
//! atom   := uint ['/' uint] | ident | '(' expr ')'
//! ```
//!
//! Identifiers must name an ambient variable.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::poly::{Polynomial, Rational, Vars};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("at offset {offset}: expected {}, found {found}", expected.join(" or "))]
pub struct PolyParseError {
    /// Byte offset into the parsed text.
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: &'a Vars,
}

pub fn parse_polynomial(src: &str, vars: &Vars) -> Result<Polynomial, PolyParseError> {
    let mut p = Parser { src, pos: 0, vars };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error(&["'+'", "'-'", "end of input"]));
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn error(&self, expected: &[&str]) -> PolyParseError {
        let found = match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        };
        PolyParseError {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    fn expr(&mut self) -> Result<Polynomial, PolyParseError> {
        self.skip_ws();
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                negate = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '(')
    }

    fn term(&mut self) -> Result<Polynomial, PolyParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                let f = self.factor()?;
                acc = &acc * &f;
            } else if self.starts_factor() {
                let f = self.factor()?;
                acc = &acc * &f;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, PolyParseError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint().ok_or_else(|| self.error(&["exponent"]))?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error(&["exponent below 2^32"]))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            self.src[start..self.pos].parse().ok()
        }
    }

    fn atom(&mut self) -> Result<Polynomial, PolyParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint().unwrap();
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.uint().ok_or_else(|| self.error(&["denominator"]))?;
                    if d.is_zero() {
                        self.pos -= 1;
                        return Err(self.error(&["nonzero denominator"]));
                    }
                    Ok(Polynomial::constant(self.vars, Rational::new(n, d)))
                } else {
                    self.pos = save;
                    Ok(Polynomial::constant(self.vars, Rational::from_integer(n)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                match Polynomial::named_var(self.vars, name) {
                    Some(v) => Ok(v),
                    None => {
                        self.pos = start;
                        let expected: Vec<String> =
                            self.vars.iter().map(|v| format!("variable '{v}'")).collect();
                        Err(PolyParseError {
                            offset: start,
                            expected: if expected.is_empty() {
                                vec!["number".into()]
                            } else {
                                expected
                            },
                            found: format!("'{name}'"),
                        })
                    }
                }
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error(&["')'"]));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error(&["number", "variable", "'('"])),
        }
    }
}

impl Polynomial {
    pub fn parse(src: &str, vars: &Vars) -> Result<Polynomial, PolyParseError> {
        parse_polynomial(src, vars)
    }
}

/// Convenience for tests and fixtures; panics on malformed input.
pub fn poly(src: &str, vars: &Vars) -> Polynomial {
    parse_polynomial(src, vars).unwrap_or_else(|e| panic!("bad polynomial {src:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::vars;
    use proptest::prelude::*;

    #[test]
    fn parses_spec_grammar() {
        let v = vars(&["x", "y"]);
        let p = poly("3/2 x^2 y - 1", &v);
        assert_eq!(p.to_string(), "3/2 x^2 y - 1");
        assert_eq!(poly("x*y + (x - y)^2", &v).to_string(), "x^2 - x y + y^2");
        assert_eq!(poly("-x + 2", &v).to_string(), "-x + 2");
        assert_eq!(poly("2 x y", &v), poly("2*x*y", &v));
    }

    #[test]
    fn double_caret_fails_at_second_caret() {
        let v = vars(&["x"]);
        let err = parse_polynomial("x^^2", &v).unwrap_err();
        assert_eq!(err.offset, 2);
        assert_eq!(err.found, "'^'");
    }

    #[test]
    fn unknown_variable_is_reported() {
        let v = vars(&["x"]);
        let err = parse_polynomial("x + q", &v).unwrap_err();
        assert_eq!(err.offset, 4);
        assert!(parse_polynomial("1/0", &v).is_err());
        assert!(parse_polynomial("x +", &v).is_err());
        assert!(parse_polynomial("(x", &v).is_err());
    }

    proptest! {
        #[test]
        fn display_round_trips(coeffs in proptest::collection::vec((-5i64..5, 1i64..4, 0u32..3, 0u32..3), 0..6)) {
            let v = vars(&["x", "y"]);
            let mut p = Polynomial::zero(&v);
            for (n, d, a, b) in coeffs {
                p.add_term(crate::algebra::poly::Monomial(vec![a, b]), crate::algebra::poly::ratio(n, d));
            }
            let back = parse_polynomial(&p.to_string(), &v).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
