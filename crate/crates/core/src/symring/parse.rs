use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Polynomial, Var};
use crate::error::Error;

/// Parses a polynomial from text.
///
/// ```
/// use forestsolve::symring::parse_poly;
///
/// let p = parse_poly("(z1 + 2*z2) * z3").unwrap();
/// assert_eq!(p.to_string(), "z1*z3 + 2*z2*z3");
/// assert_eq!(parse_poly("x^2 - x*x").unwrap().to_string(), "0");
/// ```
pub fn parse_poly(text: &str) -> Result<Polynomial, Error> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(out)
}

impl FromStr for Polynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        parse_poly(s)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn error(&self, message: String) -> Error {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..self.pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        Error::Parse {
            line,
            column,
            message,
        }
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

    fn expr(&mut self) -> Result<Polynomial, Error> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc += &self.term()?;
            } else if self.eat('-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, Error> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, Error> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, Error> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected a nonnegative integer exponent".into()));
            }
            let e: u32 = digits.parse().map_err(|_| {
                self.pos = start;
                self.error("exponent too large".into())
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<Polynomial, Error> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digit run");
                if self.peek() == Some('/') {
                    let save = self.pos;
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.digits();
                    if den.is_empty() {
                        self.pos = save + 1;
                        return Err(self.error("expected an integer denominator".into()));
                    }
                    let den: BigInt = den.parse().expect("digit run");
                    if den.is_zero() {
                        self.pos = save;
                        return Err(self.error("zero denominator".into()));
                    }
                    return Ok(Polynomial::constant(BigRational::new(num, den)));
                }
                Ok(Polynomial::constant(BigRational::from_integer(num)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                Ok(Polynomial::var(Var::new(&name)?))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`".into()));
                }
                Ok(inner)
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }
}

fn fmt_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, (v, e)) in m.factors().iter().enumerate() {
        if i > 0 {
            f.write_str("*")?;
        }
        if *e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        fmt_monomial(self, f)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}
