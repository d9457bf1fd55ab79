//! Integrable connections `∇ = d + A_x dx + A_y dy` on the punctured plane.
//!
//! Flatness convention: `∂_x A_y − ∂_y A_x + [A_x, A_y] = 0`.

use std::fmt;

use crate::diffmod::{DiffModule, MAX_RANK};
use crate::error::{Error, Result};
use crate::resolution::{involves_plane, strip_constant_content, Chart, ComponentId};
use crate::scalar::{gcd, Matrix, Poly, Scalar, Valuation, Var};

const X: Var = Var::X;
const Y: Var = Var::Y;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneConnection {
    ax: Matrix,
    ay: Matrix,
    /// Irreducible-or-not polynomials whose zero sets contain every pole.
    polar_locus: Vec<Poly>,
}

impl PlaneConnection {
    /// A flat connection whose entry denominators vanish only on `polar_locus`.
    pub fn new(ax: Matrix, ay: Matrix, polar_locus: Vec<Poly>) -> Result<PlaneConnection> {
        let c = PlaneConnection::unchecked(ax, ay, polar_locus)?;
        if !check_flatness(&c) {
            return Err(Error::NotFlat);
        }
        Ok(c)
    }

    /// Shape and polar-locus checks only; flatness is left to [`check_flatness`].
    pub fn unchecked(ax: Matrix, ay: Matrix, polar_locus: Vec<Poly>) -> Result<PlaneConnection> {
        if !ax.is_square() || !ay.is_square() || ax.rows() != ay.rows() || ax.rows() == 0 {
            return Err(Error::InvalidInput(
                "connection matrices must be square of equal positive size".into(),
            ));
        }
        if ax.rows() > MAX_RANK {
            return Err(Error::SizeLimit(format!(
                "rank {} exceeds {MAX_RANK}",
                ax.rows()
            )));
        }
        let polar_locus: Vec<Poly> = polar_locus
            .iter()
            .filter(|p| involves_plane(p))
            .map(strip_constant_content)
            .collect();
        for e in ax.entries().iter().chain(ay.entries()) {
            if !supported_on(e.denominator(), &polar_locus) {
                return Err(Error::InvalidInput(format!(
                    "entry {e} has a pole outside the declared polar locus"
                )));
            }
        }
        Ok(PlaneConnection {
            ax,
            ay,
            polar_locus,
        })
    }

    /// Polar locus read off the entry denominators.
    pub fn with_inferred_locus(ax: Matrix, ay: Matrix) -> Result<PlaneConnection> {
        let locus = PlaneConnection::inferred_locus(&ax, &ay);
        PlaneConnection::new(ax, ay, locus)
    }

    /// Distinct entry denominators, each kept unless an earlier one already covers it.
    pub fn inferred_locus(ax: &Matrix, ay: &Matrix) -> Vec<Poly> {
        let mut locus: Vec<Poly> = Vec::new();
        for e in ax.entries().iter().chain(ay.entries()) {
            let d = strip_constant_content(e.denominator());
            if involves_plane(&d)
                && !locus
                    .iter()
                    .any(|q| supported_on(&d, std::slice::from_ref(q)))
            {
                locus.push(d);
            }
        }
        locus
    }

    pub fn trivial(rank: usize) -> PlaneConnection {
        PlaneConnection {
            ax: Matrix::zeros(rank, rank),
            ay: Matrix::zeros(rank, rank),
            polar_locus: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.ax.rows()
    }

    pub fn ax(&self) -> &Matrix {
        &self.ax
    }

    pub fn ay(&self) -> &Matrix {
        &self.ay
    }

    pub fn polar_locus(&self) -> &[Poly] {
        &self.polar_locus
    }

    /// `∂_x A_y − ∂_y A_x + [A_x, A_y]`.
    pub fn curvature(&self) -> Matrix {
        self.ay
            .derivative(X)
            .sub(&self.ax.derivative(Y))
            .add(&self.ax.commutator(&self.ay))
    }

    /// New basis given by the columns of `g`: `A ↦ G⁻¹AG + G⁻¹∂G` in each direction.
    pub fn gauge(&self, g: &Matrix) -> Result<PlaneConnection> {
        if !g.is_square() || g.rows() != self.rank() {
            return Err(Error::InvalidInput(
                "gauge matrix has the wrong size".into(),
            ));
        }
        let ax = g.solve(&self.ax.mul(g).add(&g.derivative(X)))?;
        let ay = g.solve(&self.ay.mul(g).add(&g.derivative(Y)))?;
        let mut locus = self.polar_locus.clone();
        for e in g.entries() {
            let d = strip_constant_content(e.denominator());
            if involves_plane(&d) {
                locus.push(d);
            }
        }
        let det = g.det();
        let dn = strip_constant_content(det.numerator());
        if involves_plane(&dn) {
            locus.push(dn);
        }
        PlaneConnection::unchecked(ax, ay, locus)
    }

    pub fn direct_sum(&self, o: &PlaneConnection) -> Result<PlaneConnection> {
        let mut locus = self.polar_locus.clone();
        locus.extend(o.polar_locus.iter().cloned());
        PlaneConnection::unchecked(
            Matrix::block_diagonal(&[self.ax.clone(), o.ax.clone()]),
            Matrix::block_diagonal(&[self.ay.clone(), o.ay.clone()]),
            locus,
        )
    }
}

impl fmt::Display for PlaneConnection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {} A_x {} A_y {}", self.rank(), self.ax, self.ay)
    }
}

/// Whether every factor of `d` involving the plane variables divides a power
/// of the product of `locus`.
pub(crate) fn supported_on(d: &Poly, locus: &[Poly]) -> bool {
    let mut rest = strip_constant_content(d);
    let prod = locus.iter().fold(Poly::one(), |acc, q| acc.mul(q));
    while involves_plane(&rest) {
        let g = gcd(&rest, &prod);
        if !involves_plane(&g) {
            return false;
        }
        rest = rest.div_exact(&g).expect("gcd divides");
    }
    true
}

pub fn check_flatness(conn: &PlaneConnection) -> bool {
    conn.curvature().is_zero()
}

/// Pullback along `(x, y) = σ(u, v)`, with `u, v` written as `x, y`:
/// `A_u = A_x(σ)·∂σ_x/∂u + A_y(σ)·∂σ_y/∂u`, and likewise for `v`.
pub fn pull_through_map(conn: &PlaneConnection, map: &(Scalar, Scalar)) -> Result<PlaneConnection> {
    let (p, q) = map;
    if p == &Scalar::var(X) && q == &Scalar::var(Y) {
        return Ok(conn.clone());
    }
    let subs = [(X, p.clone()), (Y, q.clone())];
    let ax = conn.ax.try_map(|a| a.substitute(&subs))?;
    let ay = conn.ay.try_map(|a| a.substitute(&subs))?;
    let jac = |f: &Scalar, v: Var| f.derivative(v);
    let au = ax.scale(&jac(p, X)).add(&ay.scale(&jac(q, X)));
    let av = ax.scale(&jac(p, Y)).add(&ay.scale(&jac(q, Y)));
    let mut locus = Vec::new();
    for f in &conn.polar_locus {
        let s = Scalar::from_poly(f.clone()).substitute(&subs)?;
        if s.is_zero() {
            return Err(Error::InvalidInput(
                "map lands inside the polar locus".into(),
            ));
        }
        for part in [s.numerator(), s.denominator()] {
            let part = strip_constant_content(part);
            if involves_plane(&part) {
                locus.push(part);
            }
        }
    }
    for part in [p, q] {
        let d = strip_constant_content(part.denominator());
        if involves_plane(&d) {
            locus.push(d);
        }
    }
    let out = PlaneConnection::unchecked(au, av, locus)?;
    debug_assert!(
        !check_flatness(conn) || check_flatness(&out),
        "pullback broke flatness"
    );
    Ok(out)
}

/// Pullback to a blow-up chart through its composed map to the root plane.
pub fn pull_through_chart(conn: &PlaneConnection, chart: &Chart) -> Result<PlaneConnection> {
    pull_through_map(conn, &chart.map)
}

/// Which coordinate line of the chart is the component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// The component is `x = 0`; `y` runs along it.
    X,
    /// The component is `y = 0`; `x` runs along it.
    Y,
}

/// `∇(θ)` for the transverse coordinate, over `ℚ(c)(along)`. The result is a
/// module in `x` (transverse) with `y` as the along-component variable.
pub fn restrict_to_axis(conn: &PlaneConnection, axis: Axis) -> Result<DiffModule> {
    match axis {
        Axis::X => DiffModule::new(conn.ax.map(|a| a * &Scalar::var(X))),
        Axis::Y => {
            let m = conn.ay.map(|a| (a * &Scalar::var(Y)).swap(X, Y));
            DiffModule::new(m)
        }
    }
}

/// Coordinates `(s, t)` near a smooth component `e = 0` of a chart, with
/// `s = e` and `t` one of the chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    /// The chart coordinates `(u, v)` as functions of `(s, t)`, written in `x, y`.
    pub map: (Scalar, Scalar),
    /// The chart coordinate that `t` equals.
    pub along: Var,
}

impl Frame {
    /// `t` at a point of the chart.
    pub fn along_value(&self, point: &(Scalar, Scalar)) -> Scalar {
        if self.along == Y {
            point.1.clone()
        } else {
            point.0.clone()
        }
    }
}

/// A frame exists when `e` is linear in one coordinate with constant coefficient.
pub fn component_frame(e: &Poly) -> Result<Frame> {
    for (solve_for, along) in [(X, Y), (Y, X)] {
        if e.degree(solve_for) != 1 {
            continue;
        }
        let alpha = e.coeff_of(solve_for, 1);
        if involves_plane(&alpha) {
            continue;
        }
        let alpha = Scalar::from_poly(alpha);
        let rest = Scalar::from_poly(e.at_zero(solve_for));
        // rest depends only on `along`; t is stored in y.
        let rest_t = if along == Y { rest } else { rest.swap(X, Y) };
        let solved = (&Scalar::var(X) - &rest_t).checked_div(&alpha)?;
        let map = if solve_for == X {
            (solved, Scalar::var(Y))
        } else {
            (Scalar::var(Y), solved)
        };
        return Ok(Frame { map, along });
    }
    Err(Error::InvalidInput(format!(
        "component {e} is not a graph over a chart coordinate"
    )))
}

/// Restriction of a chart connection to a visible component, computed in the
/// component's frame.
pub fn restrict_to_component(
    conn_in_chart: &PlaneConnection,
    chart: &Chart,
    component: ComponentId,
) -> Result<(DiffModule, Frame)> {
    let e = chart
        .equation(component)
        .ok_or_else(|| Error::ComponentNotInChart(format!("{component:?} in {}", chart.name)))?;
    let frame = component_frame(e)?;
    let local = pull_through_map(conn_in_chart, &frame.map)?;
    Ok((restrict_to_axis(&local, Axis::X)?, frame))
}

/// `θ_t`-matrix of the pullback along `t ↦ (x(t), y(t))`, with `t` written as `x`.
pub fn pullback_curve(conn: &PlaneConnection, param: &(Scalar, Scalar)) -> Result<DiffModule> {
    let (p, q) = param;
    for f in [p, q] {
        if f.contains(Y) {
            return Err(Error::InvalidInput(format!(
                "curve coordinate {f} involves y"
            )));
        }
    }
    if !p.contains(X) && !q.contains(X) {
        return Err(Error::InvalidInput(
            "curve parametrization is constant".into(),
        ));
    }
    let subs = [(X, p.clone()), (Y, q.clone())];
    for f in &conn.polar_locus {
        if Scalar::from_poly(f.clone()).substitute(&subs)?.is_zero() {
            return Err(Error::CurveInsidePolarLocus);
        }
    }
    let sub = |a: &Scalar| {
        a.substitute(&subs).map_err(|e| match e {
            Error::DivisionByZero => Error::CurveInsidePolarLocus,
            other => other,
        })
    };
    let ax = conn.ax.try_map(sub)?;
    let ay = conn.ay.try_map(sub)?;
    let t = Scalar::var(X);
    let m = ax
        .scale(&(&t * &p.derivative(X)))
        .add(&ay.scale(&(&t * &q.derivative(X))));
    DiffModule::new(m)
}

/// Sum of the terms `c_i(y)·x^i` with `i < 0` in the `x`-Laurent expansion:
/// the component in `(1/x)·K[1/x]` of the splitting of `ℚ(c)[[x,y]][1/(xy)]`.
pub fn varpi_projection(f: &Scalar) -> Result<Scalar> {
    check_crossing_shape(f)?;
    let o = match f.ord(X) {
        Valuation::Infinity => return Ok(Scalar::zero()),
        Valuation::Finite(o) => o,
    };
    if o >= 0 {
        return Ok(Scalar::zero());
    }
    let (start, coeffs) = f.laurent(X, (-o) as usize);
    let mut out = Scalar::zero();
    for (k, c) in coeffs.iter().enumerate() {
        let e = start + k as i64;
        if e < 0 {
            out = &out + &(c * &Scalar::var(X).pow(e)?);
        }
    }
    Ok(out)
}

/// Poles only along `xy = 0`: the denominator is a monomial in `x, y` times a
/// factor that does not vanish at the origin.
fn check_crossing_shape(f: &Scalar) -> Result<()> {
    let d = f.denominator();
    let mono = d.monomial_content();
    let mut plane_mono = crate::scalar::Monomial::ONE;
    plane_mono.0[X.index()] = mono.degree(X);
    plane_mono.0[Y.index()] = mono.degree(Y);
    let unit = d
        .div_exact(&Poly::monomial(plane_mono, 1.into()))
        .expect("monomial content divides");
    if unit.at_zero(X).at_zero(Y).is_zero() {
        return Err(Error::NotSplittable(f.to_string()));
    }
    Ok(())
}

/// Whether `f` is regular at the crossing, i.e. in `ℚ(c)[[x, y]]`.
fn regular_at_origin(f: &Scalar) -> bool {
    f.ord(X) >= Valuation::Finite(0) && f.ord(Y) >= Valuation::Finite(0)
}

/// Block data of a nice formal structure at a crossing `xy = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceFormalModel {
    /// `(φ̃_k, ψ̃_k)`: the actions of `∇(θ_x)` and `∇(θ_y)` on the rank-1 block.
    pub blocks: Vec<(Scalar, Scalar)>,
    /// Actions of `θ_x` and `θ_y` on the regular part, regular at the origin.
    pub regular: Option<(Matrix, Matrix)>,
    /// Ramification index along `xy = 0`, already substituted into the data.
    pub ramification: u32,
    /// Optional scrambling gauge with determinant free of `x, y`.
    pub gauge: Option<Matrix>,
}

pub fn assemble_nice_model(model: &NiceFormalModel) -> Result<PlaneConnection> {
    let x = Scalar::var(X);
    let y = Scalar::var(Y);
    let mut ax_blocks = Vec::new();
    let mut ay_blocks = Vec::new();
    for (k, (phi, psi)) in model.blocks.iter().enumerate() {
        check_crossing_shape(phi)?;
        check_crossing_shape(psi)?;
        if phi.theta(Y) != psi.theta(X) {
            return Err(Error::IntegrabilityViolation(format!(
                "block {}: theta_x({psi}) != theta_y({phi})",
                k + 1
            )));
        }
        for (l, (phi2, psi2)) in model.blocks[..k].iter().enumerate() {
            if regular_at_origin(&(phi - phi2)) && regular_at_origin(&(psi - psi2)) {
                return Err(Error::InvalidInput(format!(
                    "blocks {} and {} agree modulo regular functions",
                    l + 1,
                    k + 1
                )));
            }
        }
        ax_blocks.push(Matrix::diagonal(&[phi.checked_div(&x)?]));
        ay_blocks.push(Matrix::diagonal(&[psi.checked_div(&y)?]));
    }
    if let Some((rx, ry)) = &model.regular {
        if !rx.is_square() || !ry.is_square() || rx.rows() != ry.rows() {
            return Err(Error::InvalidInput(
                "regular block matrices differ in shape".into(),
            ));
        }
        if let Some(bad) = rx
            .entries()
            .iter()
            .chain(ry.entries())
            .find(|e| !regular_at_origin(e))
        {
            return Err(Error::InvalidInput(format!(
                "regular block entry {bad} has a pole"
            )));
        }
        let defect = ry.theta(X).sub(&rx.theta(Y)).add(&rx.commutator(ry));
        if !defect.is_zero() {
            return Err(Error::IntegrabilityViolation("regular block".into()));
        }
        ax_blocks.push(rx.map(|a| a.checked_div(&x).expect("x is nonzero")));
        ay_blocks.push(ry.map(|a| a.checked_div(&y).expect("y is nonzero")));
    }
    if ax_blocks.is_empty() {
        return Err(Error::InvalidInput("model has no blocks".into()));
    }
    let locus = vec![Poly::var(X), Poly::var(Y)];
    let base = PlaneConnection::new(
        Matrix::block_diagonal(&ax_blocks),
        Matrix::block_diagonal(&ay_blocks),
        locus,
    )?;
    match &model.gauge {
        None => Ok(base),
        Some(g) => {
            let det = g.det();
            if det.is_zero() || det.contains(X) || det.contains(Y) {
                return Err(Error::InvalidInput(
                    "scrambling gauge must have a determinant free of x and y".into(),
                ));
            }
            base.gauge(g)
        }
    }
}
