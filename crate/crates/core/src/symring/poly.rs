use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Var;
use crate::error::Error;

/// A power product of variables; exponents are strictly positive and the
/// factors are kept sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in factors {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < *v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == *v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((v.clone(), e - f)),
                }
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1.min(other.0[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial(out)
    }

    /// Drops every factor in `vars`, returning the remaining monomial and the
    /// removed part.
    pub fn split_off(&self, vars: &BTreeSet<Var>) -> (Monomial, Monomial) {
        let (inside, outside): (Vec<_>, Vec<_>) =
            self.0.iter().cloned().partition(|(v, _)| vars.contains(v));
        (Monomial(outside), Monomial(inside))
    }
}

/// Graded order first, then lexicographic with the smallest variable most
/// significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.degree().cmp(&other.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Coefficient-sign certificate for membership in the nonnegative or
/// nonpositive cone.
///
/// A nonzero polynomial whose coefficients are all nonnegative is strictly
/// positive on the open positive orthant, so `Nonneg` doubles as the strict
/// certificate; the same holds for `Nonpos`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Zero,
    Nonneg,
    Nonpos,
    Mixed,
}

impl Sign {
    /// Zero or nonnegative.
    pub fn is_nonneg(self) -> bool {
        matches!(self, Sign::Zero | Sign::Nonneg)
    }

    pub fn is_nonpos(self) -> bool {
        matches!(self, Sign::Zero | Sign::Nonpos)
    }

    pub fn is_strictly_positive(self) -> bool {
        self == Sign::Nonneg
    }

    pub fn is_strictly_negative(self) -> bool {
        self == Sign::Nonpos
    }
}

/// Exact multivariate polynomial over the rationals in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Polynomial::term(c, Monomial::one())
    }

    pub fn int(c: i64) -> Self {
        Polynomial::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Var) -> Self {
        Polynomial::term(BigRational::one(), Monomial::var(v))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (descending) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficient-sign classification.
    pub fn sign(&self) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        let pos = self.terms.values().any(|c| c.is_positive());
        let neg = self.terms.values().any(|c| c.is_negative());
        match (pos, neg) {
            (true, false) => Sign::Nonneg,
            (false, true) => Sign::Nonpos,
            _ => Sign::Mixed,
        }
    }

    /// Terms with positive coefficients.
    pub fn positive_part(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.is_positive())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms with negative coefficients; `p = p.positive_part() + p.negative_part()`.
    pub fn negative_part(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.is_negative())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, point: &BTreeMap<Var, BigRational>) -> Result<BigRational, Error> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                let x = point
                    .get(v)
                    .ok_or_else(|| Error::MissingVariable(v.name().to_string()))?;
                t *= num_traits::pow(x.clone(), *e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// One single-term polynomial per term, in canonical order.
    pub fn monomial_split(&self) -> Result<Vec<Polynomial>, Error> {
        if self.is_zero() {
            return Err(Error::ZeroSplit);
        }
        Ok(self
            .terms()
            .map(|(m, c)| Polynomial::term(c.clone(), m.clone()))
            .collect())
    }

    /// Largest monomial dividing every term (1 for the zero polynomial).
    pub fn monomial_gcd(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Zero for the zero polynomial.
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::zero();
        }
        BigRational::new(num, den)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c / lc;
            let step = Polynomial::term(qc, qm);
            rem = &rem - &(&step * divisor);
            quot += &step;
        }
        Some(quot)
    }

    /// Coefficient of `var^degree` viewed as a polynomial in the remaining
    /// variables.
    pub fn coefficient_of(&self, var: &Var, degree: u32) -> Polynomial {
        let vs: BTreeSet<Var> = [var.clone()].into_iter().collect();
        Polynomial::from_terms(self.terms.iter().filter(|&(m, _c)| m.degree_in(var) == degree ).map(|(m, c)| (m.split_off(&vs).0, c.clone())))
    }

    pub fn degree_in(&self, var: &Var) -> u32 {
        self.terms.keys().map(|m| m.degree_in(var)).max().unwrap_or(0)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::int(c)
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                self.$f(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl<'a> std::iter::Sum<&'a Polynomial> for Polynomial {
    fn sum<I: Iterator<Item = &'a Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::one(), |acc, p| &acc * &p)
    }
}

impl<'a> std::iter::Product<&'a Polynomial> for Polynomial {
    fn product<I: Iterator<Item = &'a Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::one(), |acc, p| &acc * p)
    }
}
