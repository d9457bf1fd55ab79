//! Roots of univariate polynomials that are affine-linear over `ℚ` in the
//! symbols occurring in the coefficients.
//!
//! Candidates come from specializing the symbols at a base point and at the
//! unit translates of it, collecting rational roots of each specialization
//! with the rational root theorem, and interpolating. Every candidate is
//! verified by exact evaluation before it is accepted.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Rational, Scalar};
use super::poly::{Poly, Var};
use super::upoly::UPoly;

/// Cap on interpolated candidate combinations per polynomial.
const MAX_COMBINATIONS: usize = 50_000;

/// Linear factors split off a polynomial.
#[derive(Clone, Debug)]
pub struct RootSplit {
    /// Distinct roots with multiplicities, in discovery order.
    pub roots: Vec<(Scalar, usize)>,
    /// Monic cofactor without roots of the supported shape.
    pub rest: UPoly,
}

impl RootSplit {
    pub fn is_complete(&self) -> bool {
        self.rest.degree() == 0
    }
}

pub fn split_linear_factors(p: &UPoly) -> RootSplit {
    assert!(!p.is_zero(), "root search on the zero polynomial");
    let mut cur = p.monic();
    let mut roots: Vec<(Scalar, usize)> = Vec::new();
    let z = cur.zero_root_multiplicity();
    if z > 0 {
        roots.push((Scalar::zero(), z));
        cur = cur.shift_down(z);
    }
    while cur.degree() > 0 {
        if cur.degree() == 1 {
            let r = -&cur.coeff(0);
            push_root(&mut roots, r, 1);
            cur = UPoly::one();
            break;
        }
        let mut progress = false;
        for cand in candidate_roots(&cur) {
            let mut k = 0;
            loop {
                let (q, rem) = cur.divide_linear(&cand);
                if !rem.is_zero() {
                    break;
                }
                cur = q;
                k += 1;
            }
            if k > 0 {
                push_root(&mut roots, cand, k);
                progress = true;
                if cur.degree() <= 1 {
                    break;
                }
            }
        }
        if !progress {
            break;
        }
    }
    RootSplit { roots, rest: cur }
}

fn push_root(roots: &mut Vec<(Scalar, usize)>, r: Scalar, k: usize) {
    match roots.iter_mut().find(|(s, _)| *s == r) {
        Some((_, m)) => *m += k,
        None => roots.push((r, k)),
    }
}

fn symbols(p: &UPoly) -> Vec<Var> {
    let mut out: Vec<Var> = Vec::new();
    for c in p.coeffs() {
        for v in c.vars() {
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out.sort();
    out
}

fn specialize(p: &UPoly, syms: &[Var], at: &[i64]) -> Option<Vec<Rational>> {
    let subs: Vec<(Var, Poly)> = syms
        .iter()
        .zip(at)
        .map(|(v, a)| (*v, Poly::from_i64(*a)))
        .collect();
    p.coeffs()
        .iter()
        .map(|c| c.substitute_poly(&subs).ok()?.as_rational())
        .collect()
}

fn candidate_roots(p: &UPoly) -> Vec<Scalar> {
    let syms = symbols(p);
    if syms.is_empty() {
        let coeffs: Vec<Rational> = p
            .coeffs()
            .iter()
            .map(|c| c.as_rational().expect("constant coefficient"))
            .collect();
        return rational_roots(&coeffs)
            .iter()
            .map(Scalar::from_rational)
            .collect();
    }
    // Base points whose specializations keep every coefficient defined.
    for shift in 0..6i64 {
        let base: Vec<i64> = syms
            .iter()
            .enumerate()
            .map(|(i, _)| if shift == 0 { 0 } else { shift + i as i64 })
            .collect();
        let Some(s0) = specialize(p, &syms, &base).map(|c| rational_roots(&c)) else {
            continue;
        };
        let mut per_symbol: Vec<Vec<Rational>> = Vec::with_capacity(syms.len());
        let mut ok = true;
        for i in 0..syms.len() {
            let mut pt = base.clone();
            pt[i] += 1;
            match specialize(p, &syms, &pt) {
                Some(c) => per_symbol.push(rational_roots(&c)),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let mut out = Vec::new();
        let mut count = 0usize;
        for r0 in &s0 {
            let mut partial: Vec<Vec<Rational>> = vec![Vec::new()];
            for cands in &per_symbol {
                let mut next = Vec::new();
                for pre in &partial {
                    for s in cands {
                        count += 1;
                        if count > MAX_COMBINATIONS {
                            return out;
                        }
                        let mut v = pre.clone();
                        v.push(s - r0);
                        next.push(v);
                    }
                }
                partial = next;
            }
            for slopes in partial {
                // root = r0 + Σ slope_i·(sym_i − base_i)
                let mut root = Scalar::from_rational(r0);
                for ((v, b), k) in syms.iter().zip(&base).zip(&slopes) {
                    if k.is_zero() {
                        continue;
                    }
                    let lin = &Scalar::var(*v) - &Scalar::from_int(*b);
                    root = &root + &(&lin * &Scalar::from_rational(k));
                }
                if !out.contains(&root) {
                    out.push(root);
                }
            }
        }
        return out;
    }
    Vec::new()
}

/// Distinct rational roots of a polynomial with rational coefficients, ascending.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let mut c: Vec<Rational> = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let lcm = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = c.iter().map(|q| (q * &lcm).to_integer()).collect();
    let mut out = Vec::new();
    let z = ints.iter().take_while(|a| a.is_zero()).count();
    if z > 0 {
        out.push(Rational::zero());
    }
    let ints = &ints[z..];
    if ints.len() <= 1 {
        return out;
    }
    let (Some(a0), Some(an)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return out;
    };
    for p in &a0 {
        for q in &an {
            for sign in [1i32, -1] {
                let r = Rational::new(p * BigInt::from(sign), q.clone());
                if !out.contains(&r) && eval_int(ints, &r).is_zero() {
                    out.push(r);
                }
            }
        }
    }
    out.sort();
    out
}

fn eval_int(c: &[BigInt], at: &Rational) -> Rational {
    c.iter().rev().fold(Rational::zero(), |acc, a| {
        acc * at + Rational::from_integer(a.clone())
    })
}

/// Positive divisors by trial division; `None` when the value is too large to factor.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1u64 << 40 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}
