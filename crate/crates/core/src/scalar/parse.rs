//! Recursive-descent parser for scalar expressions.
//!
//! Grammar: identifiers `x`, `y`, `c1`..`c9`; integer literals; binary
//! `+ - * /`; unary `-`; `^` with an integer exponent, binding tighter than
//! `*` and unary minus; parentheses. Whitespace is insignificant.

use num_bigint::BigInt;

use super::field::Scalar;
use super::poly::{Var, MAX_CONSTANTS};
use crate::error::{Error, Result};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: i64 = 64;

pub fn parse_scalar(src: &str) -> Result<Scalar> {
    parse_scalar_with(src, &[])
}

/// Parses with extra identifier aliases, e.g. `("t", Var::X)` for curve parameters.
pub fn parse_scalar_with(src: &str, aliases: &[(&str, Var)]) -> Result<Scalar> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        aliases,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(Error::parse(0, "empty expression"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(Error::parse(
            p.pos,
            format!("unexpected '{}'", p.src[p.pos] as char),
        ));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    aliases: &'a [(&'a str, Var)],
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while !self.at_end() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        let start = self.pos;
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let digits_at = self.pos;
        let n = self.integer_literal()?;
        if paren {
            if self.peek() != Some(b')') {
                return Err(Error::parse(self.pos, "expected ')' after exponent"));
            }
            self.pos += 1;
        }
        let n: i64 = n
            .try_into()
            .map_err(|_| Error::parse(digits_at, "exponent too large"))?;
        if n > MAX_EXPONENT {
            return Err(Error::SizeLimit(format!(
                "exponent {n} at position {start} exceeds {MAX_EXPONENT}"
            )));
        }
        Ok(if neg { -n } else { n })
    }

    fn integer_literal(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while !self.at_end() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.src.get(start) {
                Some(c) => Error::parse(start, format!("expected integer, found '{}'", *c as char)),
                None => Error::parse(start, "expected integer, found end of input"),
            });
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Scalar> {
        let c = match self.peek() {
            Some(c) => c,
            None => return Err(Error::parse(self.pos, "unexpected end of input")),
        };
        if c == b'(' {
            self.pos += 1;
            let v = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(Error::parse(self.pos, "expected ')'"));
            }
            self.pos += 1;
            return Ok(v);
        }
        if c.is_ascii_digit() {
            return Ok(Scalar::from_bigint(self.integer_literal()?));
        }
        if c.is_ascii_alphabetic() {
            let start = self.pos;
            while !self.at_end() && self.src[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            let ident = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
            return self.identifier(ident, start).map(Scalar::var);
        }
        Err(Error::parse(
            self.pos,
            format!("unexpected '{}'", c as char),
        ))
    }

    fn identifier(&self, ident: &str, at: usize) -> Result<Var> {
        if let Some((_, v)) = self.aliases.iter().find(|(a, _)| *a == ident) {
            return Ok(*v);
        }
        match ident {
            "x" => Ok(Var::X),
            "y" => Ok(Var::Y),
            _ => {
                if let Some(rest) = ident.strip_prefix('c') {
                    if let Ok(i) = rest.parse::<u8>() {
                        if (1..=MAX_CONSTANTS).contains(&i) && rest.len() == 1 {
                            return Ok(Var::C(i));
                        }
                    }
                }
                Err(Error::parse(at, format!("unknown identifier '{ident}'")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_of_power_over_minus() {
        let a = parse_scalar("-x^2").unwrap();
        let b = parse_scalar("-(x*x)").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn double_slash_reports_position() {
        match parse_scalar("1//x") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_identifier() {
        assert!(matches!(
            parse_scalar("z + 1"),
            Err(Error::Parse { position: 0, .. })
        ));
        assert!(parse_scalar("c10").is_err());
    }

    #[test]
    fn negative_exponent() {
        assert_eq!(
            parse_scalar("x^-2").unwrap(),
            parse_scalar("1/(x*x)").unwrap()
        );
        assert_eq!(
            parse_scalar("x^(-2)").unwrap(),
            parse_scalar("1/x^2").unwrap()
        );
    }

    #[test]
    fn alias_for_curve_parameter() {
        let t = parse_scalar_with("t^2", &[("t", Var::X)]).unwrap();
        assert_eq!(t, parse_scalar("x^2").unwrap());
    }
}
