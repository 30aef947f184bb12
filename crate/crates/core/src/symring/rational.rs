use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Polynomial, Var};
use crate::error::Error;

/// A quotient of polynomials.
///
/// Construction divides out the common monomial factor and the rational
/// content, and makes the denominator's leading coefficient positive. No
/// polynomial GCD is taken, so two equal quotients may print differently;
/// compare them with [`RationalExpr::rat_equal`].
#[derive(Clone, Debug)]
pub struct RationalExpr {
    num: Polynomial,
    den: Polynomial,
}

impl RationalExpr {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalExpr {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.monomial_gcd().gcd(&den.monomial_gcd());
        let strip = |p: &Polynomial| {
            Polynomial::from_terms(
                p.terms()
                    .map(|(m, c)| (m.div(&g).expect("gcd divides every term"), c.clone())),
            )
        };
        let (mut num, mut den) = (strip(&num), strip(&den));
        let mut scale = den.content();
        if den.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            scale = -scale;
        }
        let inv = BigRational::from_integer(1.into()) / scale;
        num = num.scale(&inv);
        den = den.scale(&inv);
        RationalExpr { num, den }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `a.num * b.den == b.num * a.den`.
    pub fn rat_equal(&self, other: &RationalExpr) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn eval(&self, point: &BTreeMap<Var, BigRational>) -> Result<BigRational, Error> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.num.eval(point)? / d)
    }

    pub fn add(&self, other: &RationalExpr) -> RationalExpr {
        if self.den == other.den {
            return Self::normalized(&self.num + &other.num, self.den.clone());
        }
        Self::normalized(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn mul(&self, other: &RationalExpr) -> RationalExpr {
        Self::normalized(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn mul_poly(&self, p: &Polynomial) -> RationalExpr {
        Self::normalized(&self.num * p, self.den.clone())
    }

    pub fn neg(&self) -> RationalExpr {
        RationalExpr {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl PartialEq for RationalExpr {
    fn eq(&self, other: &Self) -> bool {
        self.rat_equal(other)
    }
}

fn needs_parens(p: &Polynomial) -> bool {
    p.len() > 1 || p.terms().any(|(_, c)| !c.is_integer())
}

fn is_compound_factor(p: &Polynomial) -> bool {
    p.len() > 1
        || p
            .leading_term()
            .is_some_and(|(m, c)| m.factors().len() > 1 || (!m.is_one() && !num_traits::One::is_one(c)))
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if is_compound_factor(&self.den) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}
