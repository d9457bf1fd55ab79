use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::Operator;
use crate::scalar::{Rational, Valuation, Var};

/// Slopes with their multiplicities, strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlopeData(pub Vec<(Rational, usize)>);

impl SlopeData {
    pub fn max_slope(&self) -> Rational {
        self.0
            .last()
            .map(|(s, _)| s.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn multiplicity(&self, slope: &Rational) -> usize {
        self.0
            .iter()
            .find(|(s, _)| s == slope)
            .map_or(0, |(_, m)| *m)
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|(_, m)| m).sum()
    }

    pub fn is_regular(&self) -> bool {
        self.max_slope().is_zero()
    }

    /// Multiset union, as for a direct sum.
    pub fn union(&self, o: &SlopeData) -> SlopeData {
        let mut all = self.0.clone();
        for (s, m) in &o.0 {
            match all.iter_mut().find(|(t, _)| t == s) {
                Some((_, k)) => *k += m,
                None => all.push((s.clone(), *m)),
            }
        }
        all.sort();
        SlopeData(all)
    }

    pub fn scaled(&self, e: u32) -> SlopeData {
        let f = Rational::from_integer(BigInt::from(e));
        SlopeData(self.0.iter().map(|(s, m)| (s * &f, *m)).collect())
    }
}

impl fmt::Display for SlopeData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(s, m)| format!("({s}, {m})")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Newton polygon of a monic `θ`-operator.
///
/// Everything left of the lowest point (rightmost among ties) counts as
/// slope 0; to its right the lower convex hull of `(i, ord_x a_i)` rises to
/// `(μ, 0)` and its segment slopes are the positive slopes.
pub fn newton_polygon(op: &Operator) -> SlopeData {
    let mu = op.order();
    let pts: Vec<(i64, i64)> = (0..=mu)
        .filter_map(|i| match op.coeff(i).ord(Var::X) {
            Valuation::Finite(o) => Some((i as i64, o)),
            Valuation::Infinity => None,
        })
        .collect();
    let lowest = pts
        .iter()
        .copied()
        .min_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .expect("the leading coefficient is 1");
    let mut out: Vec<(Rational, usize)> = Vec::new();
    if lowest.0 > 0 {
        out.push((Rational::zero(), lowest.0 as usize));
    }
    let mut cur = lowest;
    while cur.0 < mu as i64 {
        // Next hull vertex: smallest slope from `cur`, farthest point on ties.
        let mut best: Option<((i64, i64), Rational)> = None;
        for &p in pts.iter().filter(|p| p.0 > cur.0) {
            let s = Rational::new(BigInt::from(p.1 - cur.1), BigInt::from(p.0 - cur.0));
            match &best {
                Some((_, bs)) if *bs < s => {}
                Some((bp, bs)) if *bs == s && bp.0 > p.0 => {}
                _ => best = Some((p, s)),
            }
        }
        let (p, s) = best.expect("the endpoint (μ, 0) lies to the right");
        let s = if s.is_negative() { Rational::zero() } else { s };
        let w = (p.0 - cur.0) as usize;
        match out.last_mut() {
            Some((ls, lm)) if *ls == s => *lm += w,
            _ => out.push((s, w)),
        }
        cur = p;
    }
    SlopeData(out)
}
