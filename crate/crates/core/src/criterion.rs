//! The regularity argument: per-component Katz ranks and leading divisors on
//! the resolution, crossing bounds, the slope inequality against the negative
//! definite intersection matrix, and a direct pullback cross-check.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::connection::{
    check_flatness, pull_through_chart, pullback_curve, restrict_to_component, supported_on,
    PlaneConnection,
};
use crate::diffmod::{
    katz_rank, leading_divisor, residue_exponents, ExponentClass, ExponentSet, SlopeData,
};
use crate::error::{Error, Result};
use crate::resolution::{
    embedded_resolution, intersection_matrix, involves_plane, strip_constant_content, ComponentId,
    CrossingLocus, CurveGerm, ResolutionTree, TreeSummary,
};
use crate::scalar::{IntMatrix, Matrix, Poly, Rational, Scalar, UPoly, Valuation, Var};

const X: Var = Var::X;
const Y: Var = Var::Y;

/// One meeting point (or conjugate group of points) of a component with another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingRecord {
    pub other: ComponentId,
    pub other_label: String,
    pub chart: String,
    pub at: String,
    /// Number of geometric points described by this record.
    pub points: usize,
    /// Intersection multiplicity of the divisor closure with the section at
    /// infinity above each point.
    pub infinity_multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub component: ComponentId,
    pub label: String,
    pub rho: Rational,
    pub mu_rho: usize,
    pub ramification: u32,
    /// `φ(x)` with coefficients in the function field of the component,
    /// written in the along coordinate `y` of the component's birth chart.
    pub phi: UPoly,
    pub degree: usize,
    pub crossings: Vec<CrossingRecord>,
}

/// Per-component data on the resolution.
pub fn component_report(
    conn: &PlaneConnection,
    tree: &ResolutionTree,
    component: ComponentId,
) -> Result<ComponentReport> {
    let home = match component {
        ComponentId::Germ(_) => 0,
        ComponentId::Exceptional(k) => tree.exceptionals[k].birth_chart,
    };
    let chart = &tree.charts[home];
    let local = pull_through_chart(conn, chart)?;
    let (module, _) = restrict_to_component(&local, chart, component)?;
    let ld = leading_divisor(&module, None)?;

    let mut crossings = Vec::new();
    let mut pulled: BTreeMap<usize, PlaneConnection> = BTreeMap::new();
    for x in tree.crossings_of(component) {
        let other = x.other(component);
        let cchart = &tree.charts[x.chart];
        let infinity_multiplicity = if ld.rho.is_zero() {
            0
        } else {
            if !pulled.contains_key(&x.chart) {
                pulled.insert(x.chart, pull_through_chart(conn, cchart)?);
            }
            let (m, frame) = restrict_to_component(&pulled[&x.chart], cchart, component)?;
            let cert = katz_rank(&m)?;
            let c0 = cert.leading_poly.coeff(0);
            let ord = match &x.locus {
                CrossingLocus::Point(a, b) => {
                    let t0 = frame.along_value(&(a.clone(), b.clone()));
                    c0.substitute(&[(Y, &Scalar::var(Y) + &t0)])?.ord(Y)
                }
                CrossingLocus::Conjugates { q, .. } => c0.order_along(q),
            };
            match ord {
                Valuation::Finite(o) if o < 0 => (-o) as u64,
                _ => 0,
            }
        };
        crossings.push(CrossingRecord {
            other,
            other_label: tree.label(other).to_string(),
            chart: cchart.name.clone(),
            at: match &x.locus {
                CrossingLocus::Point(a, b) => format!("({a}, {b})"),
                CrossingLocus::Conjugates { q, count } => {
                    format!("{count} conjugate points, u = 0 and {q} = 0 with x as u, y as v")
                }
            },
            points: x.count(),
            infinity_multiplicity,
        });
    }
    Ok(ComponentReport {
        component,
        label: tree.label(component).to_string(),
        rho: ld.rho.clone(),
        mu_rho: ld.mu_rho,
        ramification: ld.certificate.ramification,
        degree: ld.degree,
        phi: ld.phi,
        crossings,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingBoundRow {
    pub other_label: String,
    pub at: String,
    pub multiplicity: u64,
    /// `μ_(ρ_i)·ρ_{i'}`; `None` when the crossing is excluded from the lemma.
    pub bound: Option<Rational>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingLedger {
    pub label: String,
    pub rows: Vec<CrossingBoundRow>,
    pub holds: bool,
}

impl CrossingLedger {
    /// Rows where the bound fails.
    pub fn failures(&self) -> Vec<&CrossingBoundRow> {
        self.rows.iter().filter(|r| !r.holds).collect()
    }
}

/// Checks multiplicity ≤ `μ_(ρ_i)·ρ_{i'}` at every crossing whose neighbor
/// has a rank in `neighbor_ranks`; other crossings are recorded as excluded.
pub fn crossing_bounds(
    report: &ComponentReport,
    neighbor_ranks: &BTreeMap<ComponentId, Rational>,
) -> CrossingLedger {
    let mu = Rational::from_integer(report.mu_rho.into());
    let rows: Vec<CrossingBoundRow> = report
        .crossings
        .iter()
        .map(|c| {
            let bound = neighbor_ranks.get(&c.other).map(|r| &mu * r);
            let holds = match &bound {
                Some(b) => Rational::from_integer(c.infinity_multiplicity.into()) <= *b,
                None => true,
            };
            CrossingBoundRow {
                other_label: c.other_label.clone(),
                at: c.at.clone(),
                multiplicity: c.infinity_multiplicity,
                bound,
                holds,
            }
        })
        .collect();
    CrossingLedger {
        label: report.label.clone(),
        holds: rows.iter().all(|r| r.holds),
        rows,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Regular,
    Irregular,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Regular => "regular",
            Verdict::Irregular => "irregular",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityRow {
    pub label: String,
    /// `Σ_j A_ij·ρ_j`.
    pub value: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityLedger {
    pub rows: Vec<InequalityRow>,
    pub rho: Vec<Rational>,
    /// Leading principal minors of `A`.
    pub minors: Vec<BigInt>,
    pub negative_definite: bool,
    /// `A·ρ ≥ 0` componentwise.
    pub hypotheses_met: bool,
    pub verdict: Verdict,
}

/// Evaluates `A·ρ` and draws the conclusion `ρ = 0` when `A` is negative
/// definite and `A·ρ ≥ 0`.
pub fn slope_inequality(a: &IntMatrix, reports: &[ComponentReport]) -> Result<InequalityLedger> {
    if a.dim() != reports.len() {
        return Err(Error::InvalidInput(format!(
            "{} reports for a {}×{} matrix",
            reports.len(),
            a.dim(),
            a.dim()
        )));
    }
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let rho: Vec<Rational> = reports.iter().map(|r| r.rho.clone()).collect();
    let av = a.mul_rational(&rho);
    let rows: Vec<InequalityRow> = reports
        .iter()
        .zip(&av)
        .map(|(r, v)| InequalityRow {
            label: r.label.clone(),
            value: v.clone(),
            holds: !v.is_negative(),
        })
        .collect();
    let hypotheses_met = rows.iter().all(|r| r.holds);
    let negative_definite = a.is_negative_definite()?;
    let verdict = if hypotheses_met && negative_definite {
        if !positivity_lemma(a, &rho)? {
            return Err(Error::Internal(
                "A·ρ ≥ 0 with ρ ≠ 0 against a negative definite matrix".into(),
            ));
        }
        Verdict::Regular
    } else {
        Verdict::Inconclusive
    };
    Ok(InequalityLedger {
        rows,
        rho,
        minors: a.leading_minors(),
        negative_definite,
        hypotheses_met,
        verdict,
    })
}

/// For negative definite `A` and `v ≥ 0`: true iff `A·v ≥ 0` forces `v = 0`
/// for this `v`, i.e. unless `A·v ≥ 0` while `v ≠ 0`.
pub fn positivity_lemma(a: &IntMatrix, v: &[Rational]) -> Result<bool> {
    if !a.is_negative_definite()? {
        return Err(Error::NotNegativeDefinite);
    }
    if v.len() != a.dim() || v.iter().any(Signed::is_negative) {
        return Err(Error::InvalidInput(
            "vector must be nonnegative of matching size".into(),
        ));
    }
    let av = a.mul_rational(v);
    let antecedent = av.iter().all(|x| !x.is_negative());
    Ok(!antecedent || v.iter().all(Zero::is_zero))
}

/// Exponent classes along the declared components and at the curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentLedger {
    pub components: Vec<(String, ExponentSet)>,
    pub pullback: ExponentSet,
    /// Membership of each pullback exponent in the span, filled by [`qspan_flags`].
    pub flags: Vec<bool>,
}

impl ExponentLedger {
    pub fn new(components: Vec<(String, ExponentSet)>, pullback: ExponentSet) -> ExponentLedger {
        let mut l = ExponentLedger {
            components,
            pullback,
            flags: Vec::new(),
        };
        l.flags = qspan_flags(&l);
        l
    }
}

/// Whether each pullback exponent lies in the `ℚ`-span of the component
/// exponents, modulo `ℚ`.
pub fn qspan_flags(ledger: &ExponentLedger) -> Vec<bool> {
    let gens: Vec<Vec<Scalar>> = ledger
        .components
        .iter()
        .flat_map(|(_, s)| s.0.iter())
        .map(symbolic_row)
        .collect();
    let base_rank = rank_of(&gens);
    ledger
        .pullback
        .0
        .iter()
        .map(|p| {
            let mut rows = gens.clone();
            rows.push(symbolic_row(p));
            rank_of(&rows) == base_rank
        })
        .collect()
}

pub fn qspan_check(ledger: &ExponentLedger) -> bool {
    qspan_flags(ledger).into_iter().all(|b| b)
}

fn symbolic_row(c: &ExponentClass) -> Vec<Scalar> {
    c.mod_q().iter().map(Scalar::from_rational).collect()
}

fn rank_of(rows: &[Vec<Scalar>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    Matrix::from_rows(rows.to_vec())
        .expect("rectangular")
        .rank()
}

/// Knobs for [`verify_theorem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max_steps: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_steps: crate::resolution::DEFAULT_MAX_STEPS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackRecord {
    pub parametrization: (Scalar, Scalar),
    pub slopes: SlopeData,
    pub rho: Rational,
    /// Exponents when regular; the error text when they are not rational.
    pub exponents: std::result::Result<ExponentSet, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityCertificate {
    pub curve_label: String,
    pub declared_regular: Vec<String>,
    pub resolution: TreeSummary,
    pub matrix: IntMatrix,
    pub reports: Vec<ComponentReport>,
    pub crossing_bounds: Vec<CrossingLedger>,
    pub inequalities: InequalityLedger,
    pub pullback: PullbackRecord,
    pub exponent_ledger: Option<ExponentLedger>,
    pub verdict: Verdict,
}

impl RegularityCertificate {
    pub fn rho(&self) -> Vec<Rational> {
        self.inequalities.rho.clone()
    }
}

/// Regularity of the pullback to a curve through the origin, by the
/// resolution argument and by direct computation.
pub fn verify_theorem(
    conn: &PlaneConnection,
    germs: Vec<CurveGerm>,
    param: &(Scalar, Scalar),
    declared_regular: &[String],
    options: &VerifyOptions,
) -> Result<RegularityCertificate> {
    if !check_flatness(conn) {
        return Err(Error::NotFlat);
    }
    let mut z_exponents = Vec::new();
    let root = ResolutionTree::new(germs.clone())?;
    for label in declared_regular {
        let id = root.component_by_label(label).ok_or_else(|| {
            Error::InvalidInput(format!("declared component {label} is not a germ"))
        })?;
        let (module, _) = restrict_to_component(conn, &root.charts[0], id)?;
        let k = katz_rank(&module)?;
        if !k.is_regular() {
            return Err(Error::PrerequisiteFailed(format!(
                "connection is irregular along {label} (rank {})",
                k.rho
            )));
        }
        let ex = residue_exponents(&module).ok();
        z_exponents.push((label.clone(), ex));
    }
    let declared_polys: Vec<Poly> = declared_regular
        .iter()
        .filter_map(|l| root.component_by_label(l))
        .map(|id| match id {
            ComponentId::Germ(i) => germs[i].f.clone(),
            ComponentId::Exceptional(_) => unreachable!("root tree has no exceptional curves"),
        })
        .collect();
    for q in conn.polar_locus() {
        let through_origin = q.at_zero(X).at_zero(Y).is_zero();
        if through_origin && !supported_on(q, &declared_polys) {
            return Err(Error::PrerequisiteFailed(format!(
                "polar component {q} is not among the declared regular components"
            )));
        }
    }

    let (p, q) = param;
    if !p.at_zero(X)?.is_zero() || !q.at_zero(X)?.is_zero() {
        return Err(Error::InvalidInput(
            "the curve must pass through the origin at t = 0".into(),
        ));
    }
    let (germs, curve_index) = with_curve_germ(germs, param)?;
    let curve = ComponentId::Germ(curve_index);
    let curve_label = germs[curve_index].label.clone();
    let tree = embedded_resolution(germs, options.max_steps)?;
    let a = intersection_matrix(&tree);

    let mut reports = Vec::new();
    for id in tree.exceptional_ids() {
        reports.push(component_report(conn, &tree, id)?);
    }
    let mut ranks: BTreeMap<ComponentId, Rational> = BTreeMap::new();
    for r in &reports {
        ranks.insert(r.component, r.rho.clone());
    }
    for (i, _) in tree.germs.iter().enumerate() {
        let id = ComponentId::Germ(i);
        if id != curve && declared_regular.iter().any(|l| l == tree.label(id)) {
            ranks.insert(id, Rational::zero());
        }
    }
    let bounds: Vec<CrossingLedger> = reports.iter().map(|r| crossing_bounds(r, &ranks)).collect();
    let mut inequalities = slope_inequality(&a, &reports)?;
    if bounds.iter().any(|l| !l.holds) && inequalities.verdict == Verdict::Regular {
        inequalities.verdict = Verdict::Inconclusive;
    }

    let pulled = pullback_curve(conn, param)?;
    let k = katz_rank(&pulled)?;
    let exponents = if k.is_regular() {
        residue_exponents(&pulled).map_err(|e| e.to_string())
    } else {
        Err("not regular".to_string())
    };
    let pullback = PullbackRecord {
        parametrization: param.clone(),
        slopes: k.slopes.clone(),
        rho: k.rho.clone(),
        exponents: exponents.clone(),
    };
    let exponent_ledger = match (&exponents, z_exponents.iter().all(|(_, e)| e.is_some())) {
        (Ok(pe), true) => Some(ExponentLedger::new(
            z_exponents
                .into_iter()
                .map(|(l, e)| (l, e.expect("checked above")))
                .collect(),
            pe.clone(),
        )),
        _ => None,
    };

    let direct_regular = k.is_regular();
    let verdict = match (inequalities.verdict, direct_regular) {
        (Verdict::Regular, true) => Verdict::Regular,
        (Verdict::Regular, false) => {
            return Err(Error::RoutesDisagree(format!(
                "the inequality route gives ρ = 0 but the pullback has rank {}",
                k.rho
            )))
        }
        (_, false) => Verdict::Irregular,
        (_, true) => Verdict::Inconclusive,
    };
    Ok(RegularityCertificate {
        curve_label,
        declared_regular: declared_regular.to_vec(),
        resolution: tree.summary(),
        matrix: a,
        reports,
        crossing_bounds: bounds,
        inequalities,
        pullback,
        exponent_ledger,
        verdict,
    })
}

/// Finds the germ containing the curve, adding its implicit equation if absent.
fn with_curve_germ(
    mut germs: Vec<CurveGerm>,
    param: &(Scalar, Scalar),
) -> Result<(Vec<CurveGerm>, usize)> {
    let subs = [(X, param.0.clone()), (Y, param.1.clone())];
    for (i, g) in germs.iter().enumerate() {
        if Scalar::from_poly(g.f.clone()).substitute(&subs)?.is_zero() {
            return Ok((germs, i));
        }
    }
    let f = implicit_equation(param)?;
    let mut label = "C".to_string();
    while germs.iter().any(|g| g.label == label) {
        label.push('\'');
    }
    germs.push(CurveGerm::new(label, f)?);
    let i = germs.len() - 1;
    Ok((germs, i))
}

/// Reduced equation of the image of `t ↦ (p(t), q(t))`, via the resultant of
/// `p(t) − x` and `q(t) − y` in `t`.
pub fn implicit_equation(param: &(Scalar, Scalar)) -> Result<Poly> {
    let coeffs = |f: &Scalar, v: Var| -> Result<Vec<Scalar>> {
        if !f.is_polynomial() || f.contains(Y) {
            return Err(Error::InvalidInput(format!("{f} is not a polynomial in t")));
        }
        let mut c: Vec<Scalar> = f
            .numerator()
            .coeffs_in(X)
            .into_iter()
            .map(|p| Scalar::from_poly(p).checked_div(&Scalar::from_poly(f.denominator().clone())))
            .collect::<Result<_>>()?;
        if c.is_empty() {
            c.push(Scalar::zero());
        }
        c[0] = &c[0] - &Scalar::var(v);
        Ok(c)
    };
    let a = coeffs(&param.0, X)?;
    let b = coeffs(&param.1, Y)?;
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m == 0 && n == 0 {
        return Err(Error::InvalidInput(
            "curve parametrization is constant".into(),
        ));
    }
    if m == 0 {
        return Ok(strip_constant_content(a[0].numerator()));
    }
    if n == 0 {
        return Ok(strip_constant_content(b[0].numerator()));
    }
    // Sylvester matrix, coefficients from the top degree down.
    let size = m + n;
    let mut rows = vec![vec![Scalar::zero(); size]; size];
    for i in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            rows[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            rows[n + i][i + k] = c.clone();
        }
    }
    let res = Matrix::from_rows(rows)?.det();
    let f = strip_constant_content(res.numerator());
    // Non-injective parametrizations give a power of the image equation.
    let g = crate::scalar::gcd(&f, &crate::scalar::gcd(&f.derivative(X), &f.derivative(Y)));
    let reduced = if involves_plane(&g) {
        f.div_exact(&g).expect("gcd divides")
    } else {
        f
    };
    Ok(strip_constant_content(&reduced))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingView {
    pub other: String,
    pub chart: String,
    pub at: String,
    pub points: usize,
    pub multiplicity: u64,
    /// `None` for crossings excluded from the bound.
    pub bound: Option<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentView {
    pub label: String,
    pub rho: String,
    pub mu_rho: usize,
    pub ramification: u32,
    pub phi: String,
    pub crossings: Vec<CrossingView>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityView {
    pub label: String,
    pub value: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalitiesView {
    pub rows: Vec<InequalityView>,
    pub hypotheses_met: bool,
    pub conclusion: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefinitenessView {
    pub leading_minors: Vec<String>,
    pub negative_definite: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullbackView {
    pub curve: String,
    pub parametrization: [String; 2],
    pub slopes: String,
    pub rho: String,
    pub exponents: Option<Vec<String>>,
    pub exponent_note: Option<String>,
    /// `None` when no exponent ledger could be formed.
    pub in_qspan: Option<bool>,
}

/// Serializable form of a [`RegularityCertificate`]; the text rendering
/// prints the same fields in the same order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateView {
    pub resolution: TreeSummary,
    pub components: Vec<ComponentView>,
    pub inequalities: InequalitiesView,
    pub definiteness: DefinitenessView,
    pub pullback: PullbackView,
    pub verdict: Verdict,
}

impl RegularityCertificate {
    pub fn view(&self) -> CertificateView {
        let components = self
            .reports
            .iter()
            .zip(&self.crossing_bounds)
            .map(|(r, l)| ComponentView {
                label: r.label.clone(),
                rho: r.rho.to_string(),
                mu_rho: r.mu_rho,
                ramification: r.ramification,
                phi: r.phi.to_string(),
                crossings: r
                    .crossings
                    .iter()
                    .zip(&l.rows)
                    .map(|(c, row)| CrossingView {
                        other: c.other_label.clone(),
                        chart: c.chart.clone(),
                        at: c.at.clone(),
                        points: c.points,
                        multiplicity: c.infinity_multiplicity,
                        bound: row.bound.as_ref().map(Rational::to_string),
                        holds: row.holds,
                    })
                    .collect(),
            })
            .collect();
        let ineq = &self.inequalities;
        let (exponents, exponent_note) = match &self.pullback.exponents {
            Ok(set) => (Some(set.0.iter().map(|e| e.to_string()).collect()), None),
            Err(e) => (None, Some(e.clone())),
        };
        CertificateView {
            resolution: self.resolution.clone(),
            components,
            inequalities: InequalitiesView {
                rows: ineq
                    .rows
                    .iter()
                    .map(|r| InequalityView {
                        label: r.label.clone(),
                        value: r.value.to_string(),
                        holds: r.holds,
                    })
                    .collect(),
                hypotheses_met: ineq.hypotheses_met,
                conclusion: ineq.verdict,
            },
            definiteness: DefinitenessView {
                leading_minors: ineq.minors.iter().map(BigInt::to_string).collect(),
                negative_definite: ineq.negative_definite,
            },
            pullback: PullbackView {
                curve: self.curve_label.clone(),
                // The curve parameter is stored as x and printed as t.
                parametrization: [
                    self.pullback
                        .parametrization
                        .0
                        .to_string()
                        .replace('x', "t"),
                    self.pullback
                        .parametrization
                        .1
                        .to_string()
                        .replace('x', "t"),
                ],
                slopes: self.pullback.slopes.to_string(),
                rho: self.pullback.rho.to_string(),
                exponents,
                exponent_note,
                in_qspan: self.exponent_ledger.as_ref().map(qspan_check),
            },
            verdict: self.verdict,
        }
    }
}

fn indent(f: &mut fmt::Formatter<'_>, text: &str) -> fmt::Result {
    for line in text.lines() {
        writeln!(f, "  {line}")?;
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for CertificateView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "resolution")?;
        indent(f, &self.resolution.to_string())?;
        writeln!(f, "components")?;
        for c in &self.components {
            writeln!(
                f,
                "  {}: rho {}, mu_rho {}, ramification {}, phi {}",
                c.label, c.rho, c.mu_rho, c.ramification, c.phi
            )?;
            for x in &c.crossings {
                let bound = x.bound.as_deref().unwrap_or("excluded");
                writeln!(
                    f,
                    "    meets {} in chart {} at {} ({} point(s)): multiplicity {}, bound {}, {}",
                    x.other,
                    x.chart,
                    x.at,
                    x.points,
                    x.multiplicity,
                    bound,
                    if x.holds { "ok" } else { "FAILS" }
                )?;
            }
        }
        writeln!(f, "inequalities")?;
        for r in &self.inequalities.rows {
            writeln!(
                f,
                "  {}: sum A_ij rho_j = {} {}",
                r.label,
                r.value,
                if r.holds { ">= 0" } else { "< 0" }
            )?;
        }
        writeln!(
            f,
            "  hypotheses met: {}",
            yes_no(self.inequalities.hypotheses_met)
        )?;
        writeln!(f, "  conclusion: {}", self.inequalities.conclusion)?;
        writeln!(f, "definiteness")?;
        writeln!(
            f,
            "  leading minors: [{}]",
            self.definiteness.leading_minors.join(", ")
        )?;
        writeln!(
            f,
            "  negative definite: {}",
            yes_no(self.definiteness.negative_definite)
        )?;
        writeln!(f, "pullback")?;
        let p = &self.pullback;
        writeln!(
            f,
            "  curve {}: t -> ({}, {})",
            p.curve, p.parametrization[0], p.parametrization[1]
        )?;
        writeln!(f, "  slopes: {}", p.slopes)?;
        writeln!(f, "  rho {}", p.rho)?;
        match (&p.exponents, &p.exponent_note) {
            (Some(e), _) => writeln!(f, "  exponents: [{}]", e.join(", "))?,
            (None, Some(n)) => writeln!(f, "  exponents: unavailable ({n})")?,
            (None, None) => writeln!(f, "  exponents: unavailable")?,
        }
        match p.in_qspan {
            Some(b) => writeln!(f, "  in span of component exponents mod Q: {}", yes_no(b))?,
            None => writeln!(f, "  in span of component exponents mod Q: not checked")?,
        }
        writeln!(f, "verdict")?;
        writeln!(f, "  {}", self.verdict)
    }
}

impl fmt::Display for RegularityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.view().fmt(f)
    }
}
