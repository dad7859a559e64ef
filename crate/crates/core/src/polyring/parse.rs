//! Text syntax for polynomials.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' factor) | ('/' integer))*
//! factor := atom ['^' integer]
//! atom   := integer | name | '(' expr ')'
//! ```
//!
//! Rational literals are written `a/b`. Whitespace is ignored.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::coeff::FieldCoeff;
use super::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    /// Byte offset into the parsed text.
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    names: &'a [String],
}

type PResult<T> = std::result::Result<T, ParseError>;
type QPoly = Polynomial<BigRational>;

impl<'a> Parser<'a> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> PResult<T> {
        Err(ParseError { offset, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn n(&self) -> usize {
        self.names.len()
    }

    fn integer(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let digits: String = self.src[start..].chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return self.err(start, "expected an integer");
        }
        self.pos += digits.len();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn expr(&mut self) -> PResult<QPoly> {
        let negate = self.eat('-');
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<QPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.peek() == Some('/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.integer()?;
                if Zero::is_zero(&d) {
                    return self.err(at, "division by zero");
                }
                acc = acc.scale(&BigRational::new(1.into(), d));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> PResult<QPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.pos;
            let e = self.integer()?;
            let e: u32 = match u32::try_from(&e) {
                Ok(e) if e <= 10_000 => e,
                _ => return self.err(at, "exponent too large"),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<QPoly> {
        let n = self.n();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err(self.pos, "expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(Polynomial::constant(&(), n, BigRational::from_integer(v)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                let ident: String =
                    self.src[start..].chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
                match self.names.iter().position(|nm| *nm == ident) {
                    Some(i) => {
                        self.pos += ident.len();
                        Ok(Polynomial::var(&(), n, i))
                    }
                    None => self.err(start, format!("unknown variable '{ident}'")),
                }
            }
            Some(c) => self.err(self.pos, format!("unexpected '{c}'")),
            None => self.err(self.pos, "unexpected end of input"),
        }
    }
}

/// Parses over `Q` using the given variable names.
pub fn parse_poly(src: &str, names: &[String]) -> PResult<QPoly> {
    let mut p = Parser { src, pos: 0, names };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return p.err(p.pos, "trailing input");
    }
    Ok(e)
}

/// Parses and converts into the field `C`; fails if a denominator is not invertible.
pub fn parse_poly_in<C: FieldCoeff>(src: &str, names: &[String], ctx: &C::Ctx) -> PResult<Polynomial<C>> {
    let q = parse_poly(src, names)?;
    for (_, c) in q.terms() {
        if C::from_rational(ctx, c).is_none() {
            return Err(ParseError { offset: 0, message: format!("constant {c} is not in {}", C::domain(ctx)) });
        }
    }
    Ok(q.map_coeffs(ctx, |c| C::from_rational(ctx, c).expect("checked")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::coeff::{Fp, Prime};
    use crate::polyring::default_names;

    #[test]
    fn parses_and_prints() {
        let names = default_names(3);
        let f = parse_poly("-(x1 + 2*x2)^2 + 3/4*x3 - 1", &names).unwrap();
        assert_eq!(f.to_string(), "-x1^2 - 4*x1*x2 - 4*x2^2 + 3/4*x3 - 1");
        let g = parse_poly(&f.to_string(), &names).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn reports_errors_with_offset() {
        let names = default_names(2);
        let e = parse_poly("x1 + x3", &names).unwrap_err();
        assert_eq!(e.offset, 5);
        assert!(e.message.contains("x3"));
        assert!(parse_poly("x1 +", &names).is_err());
        assert!(parse_poly("x1 x2", &names).is_err());
        assert!(parse_poly("x1/0", &names).is_err());
    }

    #[test]
    fn field_conversion() {
        let p = Prime::new(5).unwrap();
        let names = default_names(2);
        let f: Polynomial<Fp> = parse_poly_in("x1^5 + 7*x2", &names, &p).unwrap();
        assert_eq!(f.to_string(), "x1^5 + 2*x2");
        assert!(parse_poly_in::<Fp>("x1/5", &names, &p).is_err());
    }
}
