//! Exact arithmetic in `ℚ(c1..c9)(y)(x)` and the linear algebra built on it.

pub mod field;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod roots;
pub mod upoly;

pub use field::{canonical_cmp, Rational, Scalar, Valuation};
pub use matrix::{IntMatrix, Matrix};
pub use parse::{parse_scalar, parse_scalar_with};
pub use poly::{gcd, Monomial, Poly, Var};
pub use upoly::UPoly;

impl std::str::FromStr for Scalar {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Scalar> {
        parse_scalar(s)
    }
}
