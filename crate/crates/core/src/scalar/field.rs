use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{gcd, Monomial, Poly, Var};
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Exact valuation at `v = 0`; `Infinity` is the valuation of zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
            (Valuation::Infinity, _) => Ordering::Greater,
            (_, Valuation::Infinity) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// An element of `ℚ(c1..c9)(y)(x)`, stored as a reduced quotient of integer
/// polynomials.
///
/// Canonical form: `gcd(num, den) = 1` in `ℚ[vars]`, the integer contents of
/// numerator and denominator are coprime, and the leading coefficient of the
/// denominator is positive. Zero is `0/1`. Structural equality is therefore
/// field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn from_int(c: i64) -> Scalar {
        Scalar::from_poly(Poly::from_i64(c))
    }

    pub fn from_bigint(c: BigInt) -> Scalar {
        Scalar::from_poly(Poly::constant(c))
    }

    pub fn from_rational(q: &Rational) -> Scalar {
        Scalar::from_parts_unchecked(
            Poly::constant(q.numer().clone()),
            Poly::constant(q.denom().clone()),
        )
    }

    pub fn var(v: Var) -> Scalar {
        Scalar::from_poly(Poly::var(v))
    }

    pub fn from_poly(p: Poly) -> Scalar {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    /// `num / den`, reduced to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::reduce(num, den))
    }

    fn from_parts_unchecked(num: Poly, den: Poly) -> Scalar {
        Scalar::reduce(num, den)
    }

    fn reduce(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Scalar::fix_content(num, den)
    }

    /// Normalizes integer content and sign, assuming the polynomial parts are coprime.
    fn fix_content(mut num: Poly, mut den: Poly) -> Scalar {
        let k = num.content().gcd(&den.content());
        if !k.is_one() && !k.is_zero() {
            num = num.div_integer(&k);
            den = den.div_integer(&k);
        }
        if den.lead_coefficient().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    /// Variables occurring in numerator or denominator.
    pub fn vars(&self) -> Vec<Var> {
        let mut v = self.num.vars();
        for w in self.den.vars() {
            if !v.contains(&w) {
                v.push(w);
            }
        }
        v.sort();
        v
    }

    pub fn total_degree(&self) -> u32 {
        self.num.total_degree().max(self.den.total_degree())
    }

    /// The value as a rational number, when the element is a constant of `ℚ`.
    pub fn as_rational(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(Rational::new(n, d))
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::fix_content(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        if e >= 0 {
            let e = e as u32;
            Ok(Scalar::fix_content(self.num.pow(e), self.den.pow(e)))
        } else {
            self.inv()?.pow(-e)
        }
    }

    pub fn scale_int(&self, k: i64) -> Scalar {
        self * &Scalar::from_int(k)
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> Scalar {
        if !self.contains(v) {
            return Scalar::zero();
        }
        let n = self
            .num
            .derivative(v)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative(v)));
        Scalar::reduce(n, self.den.mul(&self.den))
    }

    /// The Euler derivation `v·∂/∂v`.
    pub fn theta(&self, v: Var) -> Scalar {
        if !self.contains(v) {
            return Scalar::zero();
        }
        &self.derivative(v) * &Scalar::var(v)
    }

    /// Valuation at `v = 0`.
    pub fn ord(&self, v: Var) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinity;
        }
        Valuation::Finite(self.num.min_degree(v) as i64 - self.den.min_degree(v) as i64)
    }

    /// Valuation and leading coefficient at `v = 0`; the coefficient is free of `v`.
    pub fn leading(&self, v: Var) -> Option<(i64, Scalar)> {
        if self.is_zero() {
            return None;
        }
        let sn = self.num.min_degree(v);
        let sd = self.den.min_degree(v);
        let c = Scalar::reduce(self.num.coeff_of(v, sn), self.den.coeff_of(v, sd));
        Some((sn as i64 - sd as i64, c))
    }

    /// First `count` coefficients of the Laurent expansion in `v` at `0`.
    ///
    /// Returns the valuation `o` and coefficients `a_o, a_{o+1}, …`, each free
    /// of `v`. For zero the valuation is reported as 0 and all coefficients vanish.
    pub fn laurent(&self, v: Var, count: usize) -> (i64, Vec<Scalar>) {
        if self.is_zero() {
            return (0, vec![Scalar::zero(); count]);
        }
        let sn = self.num.min_degree(v) as usize;
        let sd = self.den.min_degree(v) as usize;
        let n: Vec<Scalar> = self.num.coeffs_in(v)[sn..]
            .iter()
            .map(|p| Scalar::from_poly(p.clone()))
            .collect();
        let d: Vec<Scalar> = self.den.coeffs_in(v)[sd..]
            .iter()
            .map(|p| Scalar::from_poly(p.clone()))
            .collect();
        let d0inv = d[0].inv().expect("trailing coefficient is nonzero");
        let mut out: Vec<Scalar> = Vec::with_capacity(count);
        for k in 0..count {
            let mut acc = n.get(k).cloned().unwrap_or_default();
            for j in 1..=k.min(d.len() - 1) {
                acc = &acc - &(&d[j] * &out[k - j]);
            }
            out.push(&acc * &d0inv);
        }
        (sn as i64 - sd as i64, out)
    }

    /// Evaluates at `v = 0`; fails if the element has a pole there.
    pub fn at_zero(&self, v: Var) -> Result<Scalar> {
        match self.ord(v) {
            Valuation::Infinity => Ok(Scalar::zero()),
            Valuation::Finite(o) if o > 0 => Ok(Scalar::zero()),
            Valuation::Finite(0) => Scalar::new(self.num.at_zero(v), self.den.at_zero(v)),
            Valuation::Finite(_) => Err(Error::DivisionByZero),
        }
    }

    /// Simultaneous substitution of polynomials for variables.
    pub fn substitute_poly(&self, subs: &[(Var, Poly)]) -> Result<Scalar> {
        let n = self.num.substitute(subs);
        let d = self.den.substitute(subs);
        Scalar::new(n, d)
    }

    /// Simultaneous substitution of rational functions for variables.
    pub fn substitute(&self, subs: &[(Var, Scalar)]) -> Result<Scalar> {
        if subs.iter().all(|(_, s)| s.den.is_one()) {
            let polys: Vec<(Var, Poly)> = subs.iter().map(|(v, s)| (*v, s.num.clone())).collect();
            return self.substitute_poly(&polys);
        }
        let n = homogenized_substitute(&self.num, subs);
        let d = homogenized_substitute(&self.den, subs);
        // n = (num ∘ σ)·N, d = (den ∘ σ)·D with N, D products of substituted denominators.
        let num = n.0.mul(&d.1);
        let den = d.0.mul(&n.1);
        Scalar::new(num, den)
    }

    /// Replaces `v` by `v^e`. The substitution is an injective ring map, so
    /// numerator and denominator stay coprime and no gcd is needed.
    pub fn ramify(&self, v: Var, e: u32) -> Scalar {
        if e == 1 || !self.contains(v) {
            return self.clone();
        }
        let ve = [(v, Poly::monomial(Monomial::var(v, e as u16), BigInt::one()))];
        Scalar::fix_content(self.num.substitute(&ve), self.den.substitute(&ve))
    }

    /// Swaps two variables.
    pub fn swap(&self, a: Var, b: Var) -> Scalar {
        let subs = [(a, Poly::var(b)), (b, Poly::var(a))];
        Scalar::fix_content(self.num.substitute(&subs), self.den.substitute(&subs))
    }

    /// Multiplicity of the polynomial factor `q` in this element (positive in
    /// the numerator, negative in the denominator).
    pub fn order_along(&self, q: &Poly) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinity;
        }
        let count = |p: &Poly| {
            let mut k = 0i64;
            let mut cur = p.clone();
            while let Some(next) = cur.div_exact(q) {
                cur = next;
                k += 1;
            }
            k
        };
        if q.is_constant() {
            return Valuation::Finite(0);
        }
        Valuation::Finite(count(&self.num) - count(&self.den))
    }
}

/// Evaluates `p ∘ σ` as `(P, D)` with `p ∘ σ = P / D`, all polynomial.
fn homogenized_substitute(p: &Poly, subs: &[(Var, Scalar)]) -> (Poly, Poly) {
    let degs: Vec<u32> = subs.iter().map(|(v, _)| p.degree(*v)).collect();
    let mut total = Poly::zero();
    for (m, c) in p.terms() {
        let mut rest = *m;
        let mut term = Poly::monomial(Monomial::ONE, c.clone());
        for (k, (v, s)) in subs.iter().enumerate() {
            let e = m.degree(*v) as u32;
            rest.0[v.index()] = 0;
            term = term.mul(&s.num.pow(e)).mul(&s.den.pow(degs[k] - e));
        }
        total = total.add(&term.mul_term(&rest, &BigInt::one()));
    }
    let mut den = Poly::one();
    for (k, (_, s)) in subs.iter().enumerate() {
        den = den.mul(&s.den.pow(degs[k]));
    }
    (total, den)
}

fn add_scalars(a: &Scalar, b: &Scalar, negate_b: bool) -> Scalar {
    let bn = if negate_b { b.num.neg() } else { b.num.clone() };
    if a.is_zero() {
        return Scalar {
            num: bn,
            den: b.den.clone(),
        };
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.den == b.den {
        let n = a.num.add(&bn);
        if a.den.is_constant() {
            return Scalar::fix_content(n, a.den.clone());
        }
        return Scalar::reduce(n, a.den.clone());
    }
    let g = gcd(&a.den, &b.den);
    if g.is_constant() {
        let n = a.num.mul(&b.den).add(&bn.mul(&a.den));
        let d = a.den.mul(&b.den);
        // Coprime denominators give a reduced result up to integer content.
        return Scalar::fix_content_checked(n, d);
    }
    let ad = a.den.div_exact(&g).expect("gcd divides");
    let bd = b.den.div_exact(&g).expect("gcd divides");
    let n = a.num.mul(&bd).add(&bn.mul(&ad));
    let d = a.den.mul(&bd);
    let g2 = gcd(&n, &g);
    if g2.is_constant() {
        Scalar::fix_content_checked(n, d)
    } else {
        Scalar::fix_content_checked(
            n.div_exact(&g2).expect("gcd divides"),
            d.div_exact(&g2).expect("gcd divides"),
        )
    }
}

impl Scalar {
    fn fix_content_checked(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            Scalar::zero()
        } else {
            Scalar::fix_content(num, den)
        }
    }
}

fn mul_scalars(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() || b.is_zero() {
        return Scalar::zero();
    }
    if a.den.is_constant() && b.den.is_constant() {
        return Scalar::fix_content(a.num.mul(&b.num), a.den.mul(&b.den));
    }
    let g1 = gcd(&a.num, &b.den);
    let g2 = gcd(&b.num, &a.den);
    let an = a.num.div_exact(&g1).expect("gcd divides");
    let bd = b.den.div_exact(&g1).expect("gcd divides");
    let bn = b.num.div_exact(&g2).expect("gcd divides");
    let ad = a.den.div_exact(&g2).expect("gcd divides");
    Scalar::fix_content(an.mul(&bn), ad.mul(&bd))
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        add_scalars(self, o, false)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        add_scalars(self, o, true)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        mul_scalars(self, o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(c: i64) -> Scalar {
        Scalar::from_int(c)
    }
}

impl From<Poly> for Scalar {
    fn from(p: Poly) -> Scalar {
        Scalar::from_poly(p)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = if self.num.len() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        // A bare denominator must be a single factor, or `/` would bind wrongly.
        let bare = self.den.is_constant()
            || (self.den.is_monomial() && self.den.lead_coefficient().is_one() && {
                let (m, _) = self.den.lead().unwrap();
                m.0.iter().filter(|&&e| e > 0).count() == 1
            });
        if bare {
            write!(f, "{n}/{}", self.den)
        } else {
            write!(f, "{n}/({})", self.den)
        }
    }
}

/// Total order used for deterministic reporting: rational constants compare
/// numerically and sort before symbolic values, which compare by printed form.
pub fn canonical_cmp(a: &Scalar, b: &Scalar) -> Ordering {
    match (a.as_rational(), b.as_rational()) {
        (Some(p), Some(q)) => p.cmp(&q),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => a.to_string().cmp(&b.to_string()),
    }
}

pub fn rational_floor_mod_one(q: &Rational) -> Rational {
    let fl = q.floor();
    q - fl
}

pub fn rational_is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}
