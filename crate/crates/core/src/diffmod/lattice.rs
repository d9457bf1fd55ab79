//! `K[[x]]`-lattices in `K((x))^μ`, represented by echelon bases over the
//! discrete valuation ring `K[x]_(x)`.

use super::{is_regular, DiffModule, ExponentClass, ExponentSet};
use crate::error::{Error, Result};
use crate::scalar::roots::split_linear_factors;
use crate::scalar::{Matrix, Scalar, Valuation, Var};

/// A full-rank lattice with lower-triangular basis: column `r` is zero above
/// row `r`, equals `x^{d_r}` at row `r`, and below the diagonal holds Laurent
/// polynomials reduced modulo the later pivots. This basis is unique, so
/// equal lattices have equal bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    columns: Vec<Vec<Scalar>>,
    exponents: Vec<i64>,
}

impl Lattice {
    pub fn standard(mu: usize) -> Lattice {
        Lattice::span((0..mu).map(|i| unit(mu, i)).collect(), mu).expect("standard basis")
    }

    /// The lattice spanned by `gens`, which must contain `μ` independent vectors.
    pub fn span(mut gens: Vec<Vec<Scalar>>, mu: usize) -> Result<Lattice> {
        let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(mu);
        let mut exponents = Vec::with_capacity(mu);
        for r in 0..mu {
            gens.retain(|g| g.iter().any(|e| !e.is_zero()));
            let best = gens
                .iter()
                .enumerate()
                .filter(|(_, g)| !g[r].is_zero())
                .min_by_key(|(_, g)| g[r].ord(Var::X))
                .map(|(i, _)| i)
                .ok_or_else(|| Error::Internal("lattice generators are not of full rank".into()))?;
            let mut pivot = gens.swap_remove(best);
            let d = pivot[r].ord(Var::X).finite().expect("nonzero pivot");
            let xd = x_pow(d);
            let unit_inv = xd.checked_div(&pivot[r])?;
            for e in pivot.iter_mut() {
                *e = &*e * &unit_inv;
            }
            for g in gens.iter_mut() {
                if g[r].is_zero() {
                    continue;
                }
                let f = g[r].checked_div(&xd)?;
                for (ge, pe) in g.iter_mut().zip(&pivot) {
                    if !pe.is_zero() {
                        *ge = &*ge - &(&f * pe);
                    }
                }
            }
            columns.push(pivot);
            exponents.push(d);
        }
        let mut lat = Lattice { columns, exponents };
        lat.reduce();
        Ok(lat)
    }

    /// The lattice spanned by `gens` and the standard lattice.
    ///
    /// Modulo `K[[x]]^μ` only principal parts matter, so every generator is
    /// truncated to its negative powers of `x` after each step. This keeps the
    /// entries Laurent polynomials instead of rational functions whose
    /// denominators compound from one pivot to the next.
    fn span_over_standard(gens: Vec<Vec<Scalar>>, mu: usize) -> Result<Lattice> {
        let mut gens: Vec<Vec<Scalar>> = gens
            .iter()
            .map(|g| g.iter().map(principal_part).collect())
            .collect();
        let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(mu);
        let mut exponents = Vec::with_capacity(mu);
        for r in 0..mu {
            gens.retain(|g| g.iter().any(|e| !e.is_zero()));
            let best = gens
                .iter()
                .enumerate()
                .filter(|(_, g)| !g[r].is_zero())
                .min_by_key(|(_, g)| g[r].ord(Var::X))
                .map(|(i, _)| i);
            let Some(best) = best else {
                columns.push(unit(mu, r));
                exponents.push(0);
                continue;
            };
            let mut pivot = gens.swap_remove(best);
            let d = pivot[r].ord(Var::X).finite().expect("nonzero pivot");
            let xd = x_pow(d);
            let unit_inv = xd.checked_div(&pivot[r])?;
            for e in pivot.iter_mut() {
                *e = principal_part(&(&*e * &unit_inv));
            }
            for g in gens.iter_mut() {
                if g[r].is_zero() {
                    continue;
                }
                let f = g[r].checked_div(&xd)?;
                for (ge, pe) in g.iter_mut().zip(&pivot) {
                    if !pe.is_zero() {
                        *ge = principal_part(&(&*ge - &(&f * pe)));
                    }
                }
            }
            columns.push(pivot);
            exponents.push(d);
        }
        let mut lat = Lattice { columns, exponents };
        lat.reduce();
        Ok(lat)
    }

    /// Reduces each below-diagonal entry to its Laurent part below the pivot exponent.
    fn reduce(&mut self) {
        let mu = self.columns.len();
        for r in 0..mu {
            for s in r + 1..mu {
                let entry = self.columns[r][s].clone();
                if entry.is_zero() {
                    continue;
                }
                let ds = self.exponents[s];
                let o = entry.ord(Var::X).finite().expect("nonzero entry");
                let truncated = if o >= ds {
                    Scalar::zero()
                } else {
                    let (_, coeffs) = entry.laurent(Var::X, (ds - o) as usize);
                    coeffs
                        .iter()
                        .enumerate()
                        .fold(Scalar::zero(), |acc, (k, c)| {
                            &acc + &(c * &x_pow(o + k as i64))
                        })
                };
                let f = (&entry - &truncated)
                    .checked_div(&x_pow(ds))
                    .expect("x^d is nonzero");
                if f.is_zero() {
                    continue;
                }
                let pivot = self.columns[s].clone();
                for (ge, pe) in self.columns[r].iter_mut().zip(&pivot) {
                    if !pe.is_zero() {
                        *ge = &*ge - &(&f * pe);
                    }
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    /// `Σ d_r`: the lattice index relative to the standard lattice.
    pub fn index(&self) -> i64 {
        self.exponents.iter().sum()
    }

    pub fn basis(&self) -> Matrix {
        Matrix::from_columns(&self.columns)
    }

    pub fn columns(&self) -> &[Vec<Scalar>] {
        &self.columns
    }
}

fn unit(mu: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); mu];
    v[i] = Scalar::one();
    v
}

/// The terms of negative `x`-exponent.
fn principal_part(s: &Scalar) -> Scalar {
    match s.ord(Var::X) {
        Valuation::Finite(o) if o < 0 => {
            let (start, coeffs) = s.laurent(Var::X, (-o) as usize);
            coeffs
                .iter()
                .enumerate()
                .fold(Scalar::zero(), |acc, (k, c)| {
                    &acc + &(c * &x_pow(start + k as i64))
                })
        }
        _ => Scalar::zero(),
    }
}

fn x_pow(d: i64) -> Scalar {
    Scalar::var(Var::X).pow(d).expect("x is nonzero")
}

/// `μ·(q+1)+μ` with `q` the largest pole order.
pub fn default_saturation_cap(m: &DiffModule) -> usize {
    let mu = m.rank();
    mu * (m.pole_order() as usize + 1) + mu
}

fn minimum_cap(m: &DiffModule) -> usize {
    m.rank() * (1 + m.pole_order() as usize)
}

/// Iterates `Λ_{k+1} = Λ_k + ∇Λ_k` from the standard lattice. Returns the
/// first `Λ_k` with `Λ_{k+1} = Λ_k`, or `None` if none occurs within `cap` steps.
pub fn saturate(m: &DiffModule, cap: usize) -> Result<Option<Lattice>> {
    let required = minimum_cap(m);
    if cap < required {
        return Err(Error::CapTooSmall { cap, required });
    }
    let mu = m.rank();
    let mut lat = Lattice::standard(mu);
    for _ in 0..cap {
        let mut gens: Vec<Vec<Scalar>> = lat.columns.clone();
        gens.extend(lat.columns.iter().map(|c| m.apply(c)));
        // Every Λ_k contains the standard lattice Λ_0.
        let next = Lattice::span_over_standard(gens, mu)?;
        if next.index() == lat.index() {
            return Ok(Some(lat));
        }
        lat = next;
    }
    Ok(None)
}

/// Independent regularity test: does a `∇(θ_x)`-stable lattice appear
/// within `cap` saturation steps?
pub fn saturation_oracle(m: &DiffModule, cap: usize) -> Result<bool> {
    Ok(saturate(m, cap)?.is_some())
}

/// Exponents: eigenvalues of the residue at `x = 0` on a stable lattice, mod `ℤ`.
pub fn residue_exponents(m: &DiffModule) -> Result<ExponentSet> {
    if !is_regular(m)? {
        return Err(Error::NotRegular);
    }
    let cap = default_saturation_cap(m);
    let lat = saturate(m, cap)?.ok_or(Error::SaturationCapReached { cap })?;
    let b = lat.basis();
    let log = m.gauge(&b)?;
    let residue = log.theta_matrix().try_map(|a| {
        if a.ord(Var::X) < Valuation::Finite(0) {
            Err(Error::Internal(format!(
                "saturated lattice is not stable: entry {a}"
            )))
        } else {
            a.at_zero(Var::X)
        }
    })?;
    let split = split_linear_factors(&residue.charpoly());
    if !split.is_complete() {
        return Err(Error::IrrationalExponents(split.rest.display("L")));
    }
    let mut classes = Vec::with_capacity(m.rank());
    for (root, k) in &split.roots {
        let class = ExponentClass::from_scalar(root)?;
        classes.extend(std::iter::repeat(class).take(*k));
    }
    Ok(ExponentSet::new(classes))
}
