//! Polynomial text parser.
//!
//! Grammar: signed sums of terms, each term a product of rational
//! coefficients (`3`, `-2/5`) and powers of variables (`z4^3`). `*` is
//! optional. Variables are `z1..zn`; for `n <= 3` the aliases `x, y, z` name
//! `z1, z2, z3`. In family mode the parameters `t` and `s` may also appear.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ambient::AmbientPolynomial;
use crate::error::{Error, Result};

/// Exponents of the family parameters `(t, s)`.
pub type ParamDegree = (u64, u64);

/// A parsed polynomial, split by its degree in the family parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedPolynomial {
    pub nvars: usize,
    pub parts: BTreeMap<ParamDegree, AmbientPolynomial>,
}

impl ParsedPolynomial {
    /// The polynomial itself, rejecting any parameter.
    pub fn plain(&self) -> Result<AmbientPolynomial> {
        match self.parts.keys().find(|k| **k != (0, 0)) {
            Some(_) => Err(Error::InvalidInput(
                "parameters t and s are only allowed in families".into(),
            )),
            None => Ok(self.part(0, 0)),
        }
    }

    pub fn part(&self, t: u64, s: u64) -> AmbientPolynomial {
        self.parts
            .get(&(t, s))
            .cloned()
            .unwrap_or_else(|| AmbientPolynomial::new(self.nvars))
    }

    /// Highest variable index used, 1-based.
    pub fn max_variable(&self) -> usize {
        self.parts
            .values()
            .flat_map(|p| p.terms.keys())
            .filter_map(|e| e.iter().rposition(|&k| k > 0))
            .map(|i| i + 1)
            .max()
            .unwrap_or(0)
    }
}

/// Parses a polynomial without family parameters.
pub fn parse_polynomial(text: &str, nvars: usize) -> Result<AmbientPolynomial> {
    Parser::new(text, nvars, false).parse()?.plain()
}

/// Parses a polynomial that may mention the parameters `t` and `s`.
pub fn parse_family_polynomial(text: &str, nvars: usize) -> Result<ParsedPolynomial> {
    Parser::new(text, nvars, true).parse()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    params: bool,
}

struct Term {
    coeff: BigRational,
    exps: Vec<u64>,
    params: ParamDegree,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, nvars: usize, params: bool) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            nvars,
            params,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::ParseError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<ParsedPolynomial> {
        let mut out = ParsedPolynomial {
            nvars: self.nvars,
            parts: BTreeMap::new(),
        };
        if self.peek().is_none() {
            return Err(self.err("empty input"));
        }
        let mut first = true;
        loop {
            let negative = match self.peek() {
                None if !first => break,
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Err(self.err("expected '+' or '-'")),
            };
            first = false;
            let mut term = self.term()?;
            if negative {
                term.coeff = -term.coeff;
            }
            let part = out
                .parts
                .entry(term.params)
                .or_insert_with(|| AmbientPolynomial::new(self.nvars));
            part.add_term(term.exps, term.coeff);
        }
        out.parts.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = Term {
            coeff: BigRational::one(),
            exps: vec![0; self.nvars],
            params: (0, 0),
        };
        // A signed coefficient may follow the operator, as in `x + -2*y`.
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                t.coeff = -t.coeff;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let q = self.rational()?;
                    t.coeff *= q;
                }
                Some(c) if c.is_ascii_alphabetic() => self.power(&mut t)?,
                Some(b'*') if factors > 0 => {
                    self.pos += 1;
                    match self.peek() {
                        Some(c) if c.is_ascii_alphanumeric() => continue,
                        _ => return Err(self.err("expected a factor after '*'")),
                    }
                }
                _ if factors == 0 => return Err(self.err("expected a coefficient or variable")),
                _ => return Ok(t),
            }
            factors += 1;
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit string"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let den = self.integer()?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            return Ok(BigRational::new(num, den));
        }
        Ok(BigRational::from_integer(num))
    }

    fn power(&mut self, t: &mut Term) -> Result<()> {
        let start = self.pos;
        self.pos += 1;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii name");
        let slot = self.variable(name)?;
        let mut exp = 1u64;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            match self.peek() {
                Some(b'-') => return Err(Error::NegativeExponent(self.pos)),
                Some(c) if c.is_ascii_digit() => {}
                _ => return Err(self.err("expected an exponent")),
            }
            let e = self.integer()?;
            exp = u64::try_from(&e).map_err(|_| self.err("exponent too large"))?;
        }
        match slot {
            Slot::Var(i) => t.exps[i] += exp,
            Slot::T => t.params.0 += exp,
            Slot::S => t.params.1 += exp,
        }
        Ok(())
    }

    fn variable(&self, name: &str) -> Result<Slot> {
        let unknown = || Error::UnknownVariable(name.to_string());
        if let Some(idx) = name.strip_prefix('z').filter(|r| !r.is_empty()) {
            let i: usize = idx.parse().map_err(|_| unknown())?;
            if i == 0 || i > self.nvars {
                return Err(unknown());
            }
            return Ok(Slot::Var(i - 1));
        }
        let alias = match name {
            "x" => Some(0),
            "y" => Some(1),
            "z" => Some(2),
            _ => None,
        };
        if let Some(i) = alias {
            if self.nvars <= 3 && i < self.nvars {
                return Ok(Slot::Var(i));
            }
            return Err(unknown());
        }
        match (name, self.params) {
            ("t", true) => Ok(Slot::T),
            ("s", true) => Ok(Slot::S),
            _ => Err(unknown()),
        }
    }
}

enum Slot {
    Var(usize),
    T,
    S,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip() {
        let p = parse_polynomial("z2^2 - z1^3", 3).unwrap();
        assert_eq!(p.to_string(), "-z1^3 + z2^2");
        assert_eq!(parse_polynomial(&p.to_string(), 3).unwrap(), p);
        let q = parse_polynomial("3/2 x y + 2y*x - 1/2*x*y + z1z2 - z2 z1", 2).unwrap();
        assert_eq!(q.to_string(), "3*z1*z2");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_polynomial("z1 +", 3), Err(Error::ParseError { pos: 4, .. })));
        assert_eq!(parse_polynomial("z4", 3), Err(Error::UnknownVariable("z4".into())));
        assert_eq!(parse_polynomial("w", 3), Err(Error::UnknownVariable("w".into())));
        assert_eq!(parse_polynomial("z1^-2", 3), Err(Error::NegativeExponent(3)));
        assert_eq!(parse_polynomial("x", 4), Err(Error::UnknownVariable("x".into())));
        assert_eq!(parse_polynomial("t*z1", 3), Err(Error::UnknownVariable("t".into())));
        assert!(parse_polynomial("0", 3).unwrap().is_zero());
        assert_eq!(parse_polynomial("x - -2*y", 2).unwrap(), parse_polynomial("x + 2y", 2).unwrap());
        assert!(parse_polynomial("x - - -y", 2).is_err());
    }

    #[test]
    fn family_parts() {
        let p = parse_family_polynomial("z2^2 - z1^3 - t*z1^2*z3^2", 3).unwrap();
        assert_eq!(p.part(0, 0).to_string(), "-z1^3 + z2^2");
        assert_eq!(p.part(1, 0).to_string(), "-z1^2*z3^2");
        assert!(p.plain().is_err());
    }
}
