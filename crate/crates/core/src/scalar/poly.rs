//! Sparse multivariate polynomials over the integers.
//!
//! Variables are the fixed set `x, y, c1..c9`. Exponent vectors are stored in
//! significance order (`x` first, then `y`, then `c1..c9`), so the derived
//! lexicographic order on exponent arrays is the term order used everywhere.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Number of variable slots: `x`, `y`, `c1..c9`.
pub const NVARS: usize = 11;

/// Highest symbolic-constant index accepted by the grammar.
pub const MAX_CONSTANTS: u8 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    /// Symbolic constant `c_i`, `1 <= i <= 9`.
    C(u8),
}

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::C(i) => 1 + i as usize,
        }
    }

    pub fn from_index(i: usize) -> Var {
        match i {
            0 => Var::X,
            1 => Var::Y,
            _ => Var::C((i - 1) as u8),
        }
    }

    pub fn name(self) -> String {
        match self {
            Var::X => "x".into(),
            Var::Y => "y".into(),
            Var::C(i) => format!("c{i}"),
        }
    }

    pub fn is_constant_symbol(self) -> bool {
        matches!(self, Var::C(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var, e: u16) -> Monomial {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn degree(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial(m)
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        let mut m = o.0;
        for (a, b) in m.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        Monomial(m)
    }

    pub fn meet(&self, o: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// A polynomial in `ℤ[x, y, c1..c9]`, terms sorted by decreasing monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::ONE, c)],
            }
        }
    }

    pub fn from_i64(c: i64) -> Poly {
        Poly::constant(BigInt::from(c))
    }

    pub fn var(v: Var) -> Poly {
        Poly::monomial(Monomial::var(v, 1), BigInt::one())
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(mut terms: Vec<(Monomial, BigInt)>) -> Poly {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, BigInt)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn lead_coefficient(&self) -> BigInt {
        self.terms
            .first()
            .map(|t| t.1.clone())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn contains(&self, v: Var) -> bool {
        let i = v.index();
        self.terms.iter().any(|(m, _)| m.0[i] > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        (0..NVARS)
            .filter(|&i| self.terms.iter().any(|(m, _)| m.0[i] > 0))
            .map(Var::from_index)
            .collect()
    }

    pub fn degree(&self, v: Var) -> u32 {
        let i = v.index();
        self.terms
            .iter()
            .map(|(m, _)| m.0[i] as u32)
            .max()
            .unwrap_or(0)
    }

    /// Lowest exponent of `v` among the terms (0 for the zero polynomial).
    pub fn min_degree(&self, v: Var) -> u32 {
        let i = v.index();
        self.terms
            .iter()
            .map(|(m, _)| m.0[i] as u32)
            .min()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*mb, cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((*ma, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&o.terms[j..]);
        Poly { terms: out }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                terms.push((ma.mul(mb), ca * cb));
            }
        }
        Poly::from_terms(terms)
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        // Multiplying by a monomial preserves the term order.
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        self.mul_term(&Monomial::ONE, c)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_integer(&self, c: &BigInt) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, cc)| {
                    debug_assert!((cc % c).is_zero());
                    (*m, cc / c)
                })
                .collect(),
        }
    }

    /// Nonnegative gcd of the integer coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((m0, _)) => it.fold(*m0, |acc, (m, _)| acc.meet(m)),
        }
    }

    fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, c)| (m.quotient_of(mm), c.clone()))
                .collect(),
        }
    }

    /// Sign-normalizes so the leading coefficient is positive.
    pub fn normalize_sign(&self) -> Poly {
        if self.lead_coefficient().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Coefficients with respect to `v`: entry `k` is the coefficient of `v^k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let i = v.index();
        let d = self.degree(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let k = m.0[i] as usize;
            let mut mm = *m;
            mm.0[i] = 0;
            buckets[k].push((mm, c.clone()));
        }
        // Removing one exponent keeps the relative order of the remaining terms.
        buckets.into_iter().map(|terms| Poly { terms }).collect()
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[Poly]) -> Poly {
        let i = v.index();
        let mut terms = Vec::new();
        for (k, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut mm = *m;
                mm.0[i] = k as u16;
                terms.push((mm, c.clone()));
            }
        }
        Poly::from_terms(terms)
    }

    pub fn lead_coeff_in(&self, v: Var) -> Poly {
        let d = self.degree(v);
        self.coeff_of(v, d)
    }

    pub fn coeff_of(&self, v: Var, k: u32) -> Poly {
        let i = v.index();
        let terms: Vec<_> = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] as u32 == k)
            .map(|(m, c)| {
                let mut mm = *m;
                mm.0[i] = 0;
                (mm, c.clone())
            })
            .collect();
        Poly { terms }
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let i = v.index();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] > 0)
            .map(|(m, c)| {
                let mut mm = *m;
                let e = mm.0[i];
                mm.0[i] = e - 1;
                (mm, c * BigInt::from(e))
            })
            .collect();
        Poly::from_terms(terms)
    }

    /// Sets `v = 0`.
    pub fn at_zero(&self, v: Var) -> Poly {
        self.coeff_of(v, 0)
    }

    /// Simultaneous substitution of polynomials for variables.
    pub fn substitute(&self, subs: &[(Var, Poly)]) -> Poly {
        if subs.is_empty() {
            return self.clone();
        }
        let mut cache: Vec<Vec<Poly>> = vec![vec![Poly::one()]; subs.len()];
        let mut acc: Vec<(Monomial, BigInt)> = Vec::new();
        let mut pieces: Vec<Poly> = Vec::new();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut factor = Poly::monomial(Monomial::ONE, c.clone());
            for (s, (v, p)) in subs.iter().enumerate() {
                let e = m.0[v.index()] as usize;
                rest.0[v.index()] = 0;
                if e == 0 {
                    continue;
                }
                while cache[s].len() <= e {
                    let next = cache[s].last().unwrap().mul(p);
                    cache[s].push(next);
                }
                factor = factor.mul(&cache[s][e]);
            }
            let piece = factor.mul_term(&rest, &BigInt::one());
            if piece.terms.len() == 1 {
                acc.push(piece.terms.into_iter().next().unwrap());
            } else {
                pieces.push(piece);
            }
        }
        let mut out = Poly::from_terms(acc);
        for p in pieces {
            out = out.add(&p);
        }
        out
    }

    /// Exact division; `None` when `d` does not divide `self` in `ℤ[vars]`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !dm.divides(m) || !(c % dc).is_zero() {
                    return None;
                }
                terms.push((dm.quotient_of(m), c / dc));
            }
            return Some(Poly { terms });
        }
        if d.total_degree() > self.total_degree() {
            return None;
        }
        let (dm, dc) = &d.terms[0];
        let mut rem: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut q: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((rm, rc)) = rem.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            if !dm.divides(&rm) {
                return None;
            }
            let (qc, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            let qm = dm.quotient_of(&rm);
            for (m, c) in &d.terms {
                let key = m.mul(&qm);
                let e = rem.entry(key).or_insert_with(BigInt::zero);
                *e -= c * &qc;
                if e.is_zero() {
                    rem.remove(&key);
                }
            }
            q.push((qm, qc));
        }
        Some(Poly { terms: q })
    }

    /// Largest absolute value of a coefficient.
    pub fn max_norm(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(_, c)| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Pseudo-remainder of `self` by `b` with respect to `v`.
    pub fn prem(&self, b: &Poly, v: Var) -> Poly {
        let db = b.degree(v);
        let lb = b.lead_coeff_in(v);
        let mut r = self.clone();
        let da = self.degree(v);
        if da < db {
            return r;
        }
        let mut e = da - db + 1;
        while !r.is_zero() && r.degree(v) >= db {
            let dr = r.degree(v);
            let lr = r.lead_coeff_in(v);
            let s = lr.mul_term(&Monomial::var(v, (dr - db) as u16), &BigInt::one());
            r = lb.mul(&r).sub(&s.mul(b));
            e -= 1;
        }
        r.mul(&lb.pow(e))
    }

    /// Content with respect to `v`: gcd of the coefficients in `v`.
    pub fn content_in(&self, v: Var) -> Poly {
        let mut g = Poly::zero();
        for c in self.coeffs_in(v).into_iter().filter(|c| !c.is_zero()) {
            g = gcd(&g, &c);
            if g.is_constant() {
                // Integer content still matters; finish with the integer gcd.
                let ic = self.content();
                return Poly::constant(ic);
            }
        }
        g
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
}

/// Greatest common divisor in `ℤ[vars]`, with positive leading coefficient.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.normalize_sign();
    }
    if b.is_zero() {
        return a.normalize_sign();
    }
    if a == b {
        return a.normalize_sign();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::constant(a.content().gcd(&b.content()));
    }
    if a.is_monomial() || b.is_monomial() {
        let m = a.monomial_content().meet(&b.monomial_content());
        return Poly::monomial(m, a.content().gcd(&b.content()));
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mono = ma.meet(&mb);
    let a1 = a.div_monomial(&ma);
    let b1 = b.div_monomial(&mb);
    let (ca, cb) = (a1.content(), b1.content());
    let g = match heuristic_gcd(&a1.div_integer(&ca), &b1.div_integer(&cb)) {
        Some(h) => h.scale(&ca.gcd(&cb)),
        None => gcd_no_monomial(&a1, &b1),
    };
    g.mul_term(&mono, &BigInt::one()).normalize_sign()
}

/// Heuristic gcd of primitive polynomials: evaluate one variable at a large
/// integer `ξ`, take the gcd of the images recursively, and rebuild the
/// candidate from its balanced `ξ`-adic digits. With `ξ > 2·min(|a|∞, |b|∞) + 1`
/// a primitive candidate dividing both inputs is the gcd. Returns `None` when
/// no candidate survives the trial divisions.
fn heuristic_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let v = *a.vars().first().or(b.vars().first())?;
    let mut xi = BigInt::from(2) * a.max_norm().min(b.max_norm()) + BigInt::from(3);
    for _ in 0..4 {
        let at = [(v, Poly::constant(xi.clone()))];
        let ea = a.substitute(&at);
        let eb = b.substitute(&at);
        if !ea.is_zero() && !eb.is_zero() {
            let gamma = gcd(&ea, &eb);
            let h = interpolate(&gamma, v, &xi);
            if !h.is_zero() {
                let h = h.div_integer(&h.content()).normalize_sign();
                if a.div_exact(&h).is_some() && b.div_exact(&h).is_some() {
                    return Some(h);
                }
            }
        }
        xi = xi * BigInt::from(7) / BigInt::from(3) + BigInt::from(1);
    }
    None
}

/// Rebuilds a polynomial in `v` from its image at `v = ξ` using balanced digits.
fn interpolate(image: &Poly, v: Var, xi: &BigInt) -> Poly {
    let half = xi / BigInt::from(2);
    let mut rest = image.clone();
    let mut digits: Vec<Poly> = Vec::new();
    while !rest.is_zero() {
        let digit = Poly::from_terms(
            rest.terms
                .iter()
                .map(|(m, c)| {
                    let mut r = c.mod_floor(xi);
                    if r > half {
                        r -= xi;
                    }
                    (*m, r)
                })
                .collect(),
        );
        rest = rest.sub(&digit).div_integer(xi);
        digits.push(digit);
        if digits.len() > u16::MAX as usize {
            break;
        }
    }
    Poly::from_coeffs_in(v, &digits)
}

fn gcd_no_monomial(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::constant(a.content().gcd(&b.content()));
    }
    let va = a.vars();
    let vb = b.vars();
    // Prefer a variable present in both.
    let shared: Vec<Var> = va.iter().copied().filter(|v| vb.contains(v)).collect();
    if shared.is_empty() {
        // No common variable: the gcd lies in ℤ, up to contents.
        let v = va[0];
        let ca = a.content_in(v);
        return gcd(&ca, b);
    }
    for &v in va.iter().chain(vb.iter()) {
        if !shared.contains(&v) {
            if a.contains(v) {
                let ca = a.content_in(v);
                return gcd(&ca, b);
            } else {
                let cb = b.content_in(v);
                return gcd(a, &cb);
            }
        }
    }
    let v = shared[0];
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = subresultant_gcd(&pa, &pb, v);
    c.mul(&g).normalize_sign()
}

/// Gcd of two polynomials primitive in `v`, via the subresultant PRS.
fn subresultant_gcd(pa: &Poly, pb: &Poly, v: Var) -> Poly {
    let (mut a, mut b) = if pa.degree(v) >= pb.degree(v) {
        (pa.clone(), pb.clone())
    } else {
        (pb.clone(), pa.clone())
    };
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let delta = a.degree(v) - b.degree(v);
        let r = a.prem(&b, v);
        if r.is_zero() {
            break;
        }
        if r.degree(v) == 0 {
            return Poly::one();
        }
        a = b;
        let denom = g.mul(&h.pow(delta));
        b = r.div_exact(&denom).expect("subresultant division is exact");
        g = a.lead_coeff_in(v);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant h update is exact"),
        };
    }
    let cb = b.content_in(v);
    b.div_exact(&cb).expect("content divides").normalize_sign()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mono = format_monomial(m);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Printing order is `c1..c9, y, x`.
fn format_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    let order: Vec<usize> = (2..NVARS).chain([1, 0]).collect();
    for i in order {
        let e = m.0[i];
        if e == 0 {
            continue;
        }
        let name = Var::from_index(i).name();
        if e == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(Var::X)
    }
    fn y() -> Poly {
        Poly::var(Var::Y)
    }
    fn k(c: i64) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn gcd_of_products() {
        let f = x().add(&y()).mul(&x().sub(&k(1)));
        let g = x().add(&y()).mul(&y().add(&k(2)));
        assert_eq!(gcd(&f, &g), x().add(&y()));
    }

    #[test]
    fn gcd_keeps_integer_content() {
        let f = x().scale(&BigInt::from(6));
        let g = x().mul(&y()).scale(&BigInt::from(4));
        assert_eq!(gcd(&f, &g), x().scale(&BigInt::from(2)));
    }

    #[test]
    fn gcd_coprime_univariate() {
        let f = x().pow(3).sub(&k(2));
        let g = x().pow(2).sub(&k(3));
        assert!(gcd(&f, &g).is_one());
    }

    #[test]
    fn exact_division_detects_remainder() {
        let f = y().pow(2).sub(&x().pow(3));
        assert!(f.div_exact(&y().sub(&x())).is_none());
        let g = x().pow(2).sub(&y().pow(2));
        assert_eq!(g.div_exact(&x().sub(&y())).unwrap(), x().add(&y()));
    }

    #[test]
    fn substitution_into_chart() {
        // y^2 - x^3 under (x, y) -> (x, x*y) is x^2*(y^2 - x)
        let f = y().pow(2).sub(&x().pow(3));
        let s = f.substitute(&[(Var::X, x()), (Var::Y, x().mul(&y()))]);
        let expected = x().pow(2).mul(&y().pow(2).sub(&x()));
        assert_eq!(s, expected);
    }

    #[test]
    fn display_orders_constants_first() {
        let c1 = Poly::var(Var::C(1));
        let p = c1.mul(&x()).sub(&y().pow(2).scale(&BigInt::from(3)));
        assert_eq!(p.to_string(), "c1*x - 3*y^2");
    }
}
