//! Exact polynomial and rational-function arithmetic over the rationals.
//!
//! Polynomials are kept in a canonical form (terms sorted by a graded
//! lexicographic order with variables compared in natural order), so
//! structural equality is mathematical equality. Nonnegativity is certified
//! coefficientwise: a polynomial with no negative coefficient takes
//! nonnegative values on the positive orthant.
//!
//! ```
//! use forestsolve::symring::{parse_poly, Sign};
//!
//! let p = parse_poly("(z1 + 2*z2) * z3 * z4").unwrap();
//! assert_eq!(p.to_string(), "z1*z3*z4 + 2*z2*z3*z4");
//! assert_eq!(p.sign(), Sign::Nonneg);
//! assert_eq!(parse_poly("1 - 2*z3").unwrap().sign(), Sign::Mixed);
//! ```

mod parse;
mod poly;
mod rational;
mod var;

pub use parse::parse_poly;
pub use poly::{Monomial, Polynomial, Sign};
pub use rational::RationalExpr;
pub use var::{is_valid_name, Var};

/// Shorthand for building a variable in tests and examples.
///
/// Panics on an invalid name.
pub fn var(name: &str) -> Var {
    Var::new(name).unwrap_or_else(|e| panic!("{e}"))
}
