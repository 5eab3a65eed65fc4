//! Exact rational arithmetic and sparse multivariate polynomials.

mod divide;
mod monomial;
mod order;
mod parse;
mod poly;
mod ring;

pub use divide::multivariate_divide;
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKey, OrderKind};
pub use parse::{parse_poly, parse_rational};
pub use poly::{format_monomial, Polynomial};
pub use ring::VarRing;
pub(crate) use ring::{is_identifier, is_moment_symbol};

use num_bigint::BigInt;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
