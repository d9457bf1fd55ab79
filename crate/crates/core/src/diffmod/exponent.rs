use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::field::rational_floor_mod_one;
use crate::scalar::poly::MAX_CONSTANTS;
use crate::scalar::{Rational, Scalar, Var};

/// A `ℚ`-linear combination `r + Σ q_i c_i` taken modulo `ℤ`, with the
/// rational part normalized into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentClass {
    /// `q_1..q_9`.
    pub symbolic: Vec<Rational>,
    pub rational: Rational,
}

impl ExponentClass {
    /// Reads an affine-linear element of `ℚ[c1..c9]` and reduces it mod `ℤ`.
    pub fn from_scalar(s: &Scalar) -> Result<ExponentClass> {
        let not_linear =
            || Error::IrrationalExponents(format!("{s} is not affine-linear in c1..c9"));
        let den = s.denominator().as_constant().ok_or_else(not_linear)?;
        let mut symbolic = vec![Rational::zero(); MAX_CONSTANTS as usize];
        let mut rational = Rational::zero();
        for (m, c) in s.numerator().terms() {
            let q = Rational::new(c.clone(), den.clone());
            if m.is_one() {
                rational = q;
                continue;
            }
            if m.total_degree() != 1 {
                return Err(not_linear());
            }
            let idx = (1..=MAX_CONSTANTS)
                .find(|&i| m.degree(Var::C(i)) == 1)
                .ok_or_else(not_linear)?;
            symbolic[idx as usize - 1] = q;
        }
        Ok(ExponentClass {
            symbolic,
            rational: rational_floor_mod_one(&rational),
        })
    }

    /// The class modulo `ℚ`: only the symbolic coordinates survive.
    pub fn mod_q(&self) -> &[Rational] {
        &self.symbolic
    }

    pub fn is_rational(&self) -> bool {
        self.symbolic.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for ExponentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, q) in self.symbolic.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let a = q.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                out.push_str(&format!("{a}*"));
            }
            out.push_str(&format!("c{}", i + 1));
        }
        if !self.rational.is_zero() || out.is_empty() {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&self.rational.to_string());
        }
        f.write_str(&out)
    }
}

/// Multiset of exponent classes, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentSet(pub Vec<ExponentClass>);

impl ExponentSet {
    pub fn new(mut classes: Vec<ExponentClass>) -> ExponentSet {
        classes.sort();
        ExponentSet(classes)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for ExponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
