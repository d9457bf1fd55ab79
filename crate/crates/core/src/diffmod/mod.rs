//! Differential modules over the punctured formal disk `K((x))`, with
//! `K = ℚ(c1..c9)(y)`, given by the matrix of `∇(θ_x)` in a basis.

mod cyclic;
mod exponent;
mod katz;
mod lattice;
mod slopes;

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Matrix, Scalar, UPoly, Valuation, Var};

pub use cyclic::{candidate_schedule, cyclic_vector, to_operator, CyclicVector};
pub use exponent::{ExponentClass, ExponentSet};
pub use katz::{
    default_localization, is_regular, katz_rank, leading_divisor, KatzCertificate, LeadingDivisor,
};
pub use lattice::{
    default_saturation_cap, residue_exponents, saturate, saturation_oracle, Lattice,
};
pub use slopes::{newton_polygon, SlopeData};

/// Largest supported rank.
pub const MAX_RANK: usize = 8;

/// Largest total degree accepted in an input entry.
pub const MAX_ENTRY_DEGREE: u32 = 64;

/// Whether `y` is a free coefficient variable of the base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientProfile {
    GenericY,
    Specialized,
}

/// A differential module: `∇(θ_x) e_j = Σ_i M_ij e_i`, so that for a
/// coordinate vector `v` one has `∇v = θ_x(v) + M·v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffModule {
    theta: Matrix,
    profile: CoefficientProfile,
}

impl DiffModule {
    pub fn new(theta: Matrix) -> Result<DiffModule> {
        if !theta.is_square() {
            return Err(Error::InvalidInput("theta matrix must be square".into()));
        }
        if theta.rows() == 0 {
            return Err(Error::InvalidInput("rank must be at least 1".into()));
        }
        if theta.rows() > MAX_RANK {
            return Err(Error::SizeLimit(format!(
                "rank {} exceeds {MAX_RANK}",
                theta.rows()
            )));
        }
        if let Some(d) = theta.entries().iter().map(Scalar::total_degree).max() {
            if d > MAX_ENTRY_DEGREE {
                return Err(Error::SizeLimit(format!(
                    "entry degree {d} exceeds {MAX_ENTRY_DEGREE}"
                )));
            }
        }
        let profile = if theta.entries().iter().any(|e| e.contains(Var::Y)) {
            CoefficientProfile::GenericY
        } else {
            CoefficientProfile::Specialized
        };
        Ok(DiffModule { theta, profile })
    }

    pub fn rank1(f: Scalar) -> DiffModule {
        DiffModule::new(Matrix::diagonal(&[f])).expect("rank-1 module")
    }

    pub fn diagonal(entries: &[Scalar]) -> Result<DiffModule> {
        DiffModule::new(Matrix::diagonal(entries))
    }

    /// Companion module of `θ^μ + a_{μ−1}θ^{μ−1} + … + a_0`: the basis is
    /// `m, ∇m, …, ∇^{μ−1}m`.
    pub fn companion(op: &Operator) -> Result<DiffModule> {
        let mu = op.order();
        let mut m = Matrix::zeros(mu, mu);
        for k in 0..mu.saturating_sub(1) {
            m.set(k + 1, k, Scalar::one());
        }
        for i in 0..mu {
            m.set(i, mu - 1, -&op.coeff(i));
        }
        DiffModule::new(m)
    }

    pub fn rank(&self) -> usize {
        self.theta.rows()
    }

    pub fn theta_matrix(&self) -> &Matrix {
        &self.theta
    }

    pub fn profile(&self) -> CoefficientProfile {
        self.profile
    }

    /// `∇v = θ_x(v) + M·v`.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mv = self.theta.mul_vec(v);
        v.iter()
            .zip(mv)
            .map(|(a, b)| &a.theta(Var::X) + &b)
            .collect()
    }

    /// Change of basis to the columns of `g`: `M ↦ G⁻¹MG + G⁻¹θ_x(G)`.
    pub fn gauge(&self, g: &Matrix) -> Result<DiffModule> {
        if g.rows() != self.rank() || !g.is_square() {
            return Err(Error::InvalidInput(
                "gauge matrix has the wrong size".into(),
            ));
        }
        let rhs = self.theta.mul(g).add(&g.theta(Var::X));
        DiffModule::new(g.solve(&rhs)?)
    }

    pub fn direct_sum(&self, o: &DiffModule) -> Result<DiffModule> {
        DiffModule::new(Matrix::block_diagonal(&[
            self.theta.clone(),
            o.theta.clone(),
        ]))
    }

    /// Substitutes `x = x'^e`; the returned matrix is `e·M(x'^e)`, the action
    /// of `∇(θ_{x'})`, written again in the variable `x`.
    pub fn ramify(&self, e: u32) -> Result<DiffModule> {
        if e == 0 {
            return Err(Error::InvalidInput(
                "ramification index must be positive".into(),
            ));
        }
        if e == 1 {
            return Ok(self.clone());
        }
        let es = Scalar::from_int(e as i64);
        DiffModule::new(self.theta.map(|a| &a.ramify(Var::X, e) * &es))
    }

    /// Largest pole order in `x` among the entries, or 0.
    pub fn pole_order(&self) -> u64 {
        self.theta
            .entries()
            .iter()
            .filter_map(|e| match e.ord(Var::X) {
                Valuation::Finite(o) if o < 0 => Some((-o) as u64),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for DiffModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {} theta {}", self.rank(), self.theta)
    }
}

/// Monic operator `θ^μ + a_{μ−1}θ^{μ−1} + … + a_0` with coefficients in `K(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Operator {
    /// `a_0..a_{μ−1}`; the leading coefficient 1 is implicit.
    lower: Vec<Scalar>,
}

impl Operator {
    pub fn new(lower: Vec<Scalar>) -> Result<Operator> {
        if lower.is_empty() {
            return Err(Error::InvalidInput(
                "operator order must be at least 1".into(),
            ));
        }
        Ok(Operator { lower })
    }

    pub fn order(&self) -> usize {
        self.lower.len()
    }

    /// Coefficient of `θ^i`, with `a_μ = 1`.
    pub fn coeff(&self, i: usize) -> Scalar {
        if i == self.lower.len() {
            Scalar::one()
        } else {
            self.lower.get(i).cloned().unwrap_or_default()
        }
    }

    pub fn lower_coeffs(&self) -> &[Scalar] {
        &self.lower
    }

    /// The same operator in `x' = x^{1/e}`, made monic: `a'_i = e^{μ−i}·a_i(x'^e)`.
    pub fn ramify(&self, e: u32) -> Operator {
        if e == 1 {
            return self.clone();
        }
        let mu = self.order();
        let lower = self
            .lower
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let f = Scalar::from_int(e as i64)
                    .pow((mu - i) as i64)
                    .expect("nonzero");
                &a.ramify(Var::X, e) * &f
            })
            .collect();
        Operator { lower }
    }

    pub fn as_upoly(&self) -> UPoly {
        let mut c = self.lower.clone();
        c.push(Scalar::one());
        UPoly::new(c)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_upoly().display("theta"))
    }
}
