use num_traits::{ToPrimitive, Zero};

use super::{newton_polygon, to_operator, DiffModule, Operator, SlopeData};
use crate::error::{Error, Result};
use crate::scalar::{gcd, Matrix, Poly, Rational, Scalar, UPoly, Valuation, Var};

/// Poincaré–Katz rank with the leading data of the top slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KatzCertificate {
    pub rho: Rational,
    /// Denominator `e` of `ρ`; 1 when `ρ` is an integer.
    pub ramification: u32,
    pub slopes: SlopeData,
    pub operator: Operator,
    pub cyclic_vector: Vec<Scalar>,
    /// `H(0)` in the basis `m, x'^{ρe}∇m, …`; absent when `ρ = 0`.
    pub h0: Option<Matrix>,
    pub charpoly_h0: Option<UPoly>,
    /// Multiplicity `μ_(ρ)` of the top slope.
    pub mu_rho: usize,
    /// `φ(x)`, polynomial in the unramified `x` with coefficients in `K`.
    pub leading_poly: UPoly,
}

impl KatzCertificate {
    pub fn is_regular(&self) -> bool {
        self.rho.is_zero()
    }

    /// Nonzero eigenvalue polynomial `g` with `charpoly(H0) = λ^{μ−μ_(ρ)}·g(λ)`.
    pub fn eigen_poly(&self) -> UPoly {
        match &self.charpoly_h0 {
            Some(cp) => cp.shift_down(cp.zero_root_multiplicity()),
            None => UPoly::one(),
        }
    }
}

pub fn katz_rank(m: &DiffModule) -> Result<KatzCertificate> {
    let (op, cv) = to_operator(m)?;
    let slopes = newton_polygon(&op);
    let rho = slopes.max_slope();
    if rho.is_zero() {
        return Ok(KatzCertificate {
            rho,
            ramification: 1,
            mu_rho: slopes.multiplicity(&Rational::zero()),
            slopes,
            operator: op,
            cyclic_vector: cv.vector,
            h0: None,
            charpoly_h0: None,
            leading_poly: UPoly::one(),
        });
    }
    let e = rho
        .denom()
        .to_u32()
        .ok_or_else(|| Error::SizeLimit("ramification".into()))?;
    let p = rho
        .numer()
        .to_i64()
        .ok_or_else(|| Error::SizeLimit("slope".into()))?;
    let mu_rho = slopes.multiplicity(&rho);
    let h = leading_matrix(&op.ramify(e), p)?;
    let h0 = h.try_map(|a| a.at_zero(Var::X))?;
    let cp = h0.charpoly();
    let g = cp.shift_down(cp.zero_root_multiplicity());
    if g.degree() != mu_rho {
        return Err(Error::Internal(format!(
            "H(0) has {} nonzero eigenvalues but the top slope has multiplicity {mu_rho}",
            g.degree()
        )));
    }
    let leading_poly = descend(&g, p as usize, e as usize)?;
    debug_assert_eq!(leading_poly.degree() * e as usize, mu_rho * p as usize);
    Ok(KatzCertificate {
        rho,
        ramification: e,
        slopes,
        operator: op,
        cyclic_vector: cv.vector,
        h0: Some(h0),
        charpoly_h0: Some(cp),
        mu_rho,
        leading_poly,
    })
}

/// `H = x^p·(matrix of ∇(θ) in the basis b_k = x^{kp}∇^k m)` for a monic
/// operator whose slopes are at most the integer `p`.
///
/// `∇b_k = kp·b_k + x^{−p}b_{k+1}`, and `∇b_{μ−1}` closes up through the
/// operator relation.
pub(crate) fn leading_matrix(op: &Operator, p: i64) -> Result<Matrix> {
    let mu = op.order();
    let xp = Scalar::var(Var::X).pow(p)?;
    let mut h = Matrix::zeros(mu, mu);
    for k in 0..mu {
        h.set(k, k, &xp * &Scalar::from_int(k as i64 * p));
        if k + 1 < mu {
            h.set(k + 1, k, Scalar::one());
        }
    }
    for i in 0..mu {
        let shift = Scalar::var(Var::X).pow((mu - i) as i64 * p)?;
        let v = h.get(i, mu - 1) - &(&op.coeff(i) * &shift);
        h.set(i, mu - 1, v);
    }
    if let Some(bad) = h
        .entries()
        .iter()
        .find(|a| a.ord(Var::X) < Valuation::Finite(0))
    {
        return Err(Error::Internal(format!(
            "leading matrix has a pole ({bad}); slope bound violated"
        )));
    }
    Ok(h)
}

/// Rewrites `g(x'^p)` in `x = x'^e`; only powers `λ^k` with `e | k` may occur.
fn descend(g: &UPoly, p: usize, e: usize) -> Result<UPoly> {
    let mut out = vec![Scalar::zero(); g.degree() * p / e + 1];
    for (k, c) in g.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k % e != 0 {
            return Err(Error::NondescendableLeadingPoly(g.display("L")));
        }
        out[k * p / e] = c.clone();
    }
    Ok(UPoly::new(out))
}

pub fn is_regular(m: &DiffModule) -> Result<bool> {
    Ok(katz_rank(m)?.is_regular())
}

/// The leading divisor `D = (φ(x))` with coefficients checked to lie in `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingDivisor {
    pub phi: UPoly,
    /// `μ_(ρ)·ρ`, the degree over `Spec A`.
    pub degree: usize,
    pub rho: Rational,
    pub mu_rho: usize,
    pub certificate: KatzCertificate,
}

impl LeadingDivisor {
    pub fn is_zero(&self) -> bool {
        self.degree == 0
    }
}

/// Polynomials in `y` (and constants) that may be inverted in `A`: the
/// `x`-leading parts of the entry denominators.
pub fn default_localization(m: &DiffModule) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::new();
    for e in m.theta_matrix().entries() {
        if e.is_zero() {
            continue;
        }
        let d = e.denominator();
        let lead = d.coeff_of(Var::X, d.min_degree(Var::X)).normalize_sign();
        if lead.contains(Var::Y) && !out.contains(&lead) {
            out.push(lead);
        }
    }
    out
}

/// Whether every irreducible factor of `d` involving `y` divides a product of
/// the localization polynomials.
fn inverted_in_a(d: &Poly, localization: &[Poly]) -> bool {
    let mut rest = d.clone();
    let mut prod = Poly::one();
    for q in localization {
        prod = prod.mul(q);
    }
    loop {
        if !rest.contains(Var::Y) {
            return true;
        }
        let g = gcd(&rest, &prod);
        if !g.contains(Var::Y) {
            return false;
        }
        rest = rest.div_exact(&g).expect("gcd divides");
    }
}

pub fn leading_divisor(m: &DiffModule, localization: Option<&[Poly]>) -> Result<LeadingDivisor> {
    let cert = katz_rank(m)?;
    let owned;
    let loc = match localization {
        Some(l) => l,
        None => {
            owned = default_localization(m);
            &owned
        }
    };
    for c in cert.leading_poly.coeffs() {
        if c.contains(Var::X) {
            return Err(Error::Internal(format!(
                "leading coefficient {c} involves x"
            )));
        }
        if !inverted_in_a(c.denominator(), loc) {
            return Err(Error::CoefficientNotInA {
                denominator: c.denominator().to_string(),
            });
        }
    }
    let degree = cert.leading_poly.degree();
    let expected = &cert.rho * Rational::from_integer(cert.mu_rho.into());
    if Rational::from_integer(degree.into()) != expected {
        return Err(Error::Internal(format!(
            "leading divisor has degree {degree}, expected {expected}"
        )));
    }
    Ok(LeadingDivisor {
        phi: cert.leading_poly.clone(),
        degree,
        rho: cert.rho.clone(),
        mu_rho: cert.mu_rho,
        certificate: cert,
    })
}
