//! Embedded resolution of plane curve germs at the origin by point blow-ups.
//!
//! Every chart carries the polynomial map to the original plane and the local
//! equations of the components visible in it. Charts also own a *locus of
//! responsibility* so that every point over the origin is examined in exactly
//! one chart: the root owns the origin, the first chart of a blow-up owns the
//! new exceptional line `u = 0`, and the second chart owns only its origin
//! (the one point of that line the first chart misses). Points that were
//! blown up later are removed from the locus of the chart they lived in.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::roots::split_linear_factors;
use crate::scalar::{canonical_cmp, gcd, IntMatrix, Poly, Scalar, UPoly, Var};

/// Default guardrail on the number of blow-ups.
pub const DEFAULT_MAX_STEPS: usize = 64;

/// Chart coordinates reuse the plane variables: `u` is `x` and `v` is `y`.
const U: Var = Var::X;
const V: Var = Var::Y;

/// A reduced plane curve germ `f = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveGerm {
    pub label: String,
    pub f: Poly,
    /// True when the germ was explicitly declared not to pass through the origin.
    pub away_from_center: bool,
}

impl CurveGerm {
    /// A germ through the origin. `f` must be square-free and involve `x` or `y`.
    pub fn new(label: impl Into<String>, f: Poly) -> Result<CurveGerm> {
        let g = CurveGerm::checked(label.into(), f, false)?;
        if !eval_at_origin(&g.f).is_zero() {
            return Err(Error::InvalidInput(format!(
                "germ {} does not pass through the origin",
                g.label
            )));
        }
        Ok(g)
    }

    /// A curve not required to pass through the origin.
    pub fn away(label: impl Into<String>, f: Poly) -> Result<CurveGerm> {
        CurveGerm::checked(label.into(), f, true)
    }

    /// Reads the germ from a polynomial expression in `x`, `y` and the constants.
    pub fn parse(label: impl Into<String>, text: &str) -> Result<CurveGerm> {
        let s: Scalar = text.parse()?;
        if !s.denominator().is_constant() {
            return Err(Error::InvalidInput(format!(
                "germ {text} is not a polynomial"
            )));
        }
        let f = s.numerator().clone();
        if eval_at_origin(&f).is_zero() {
            CurveGerm::new(label, f)
        } else {
            CurveGerm::away(label, f)
        }
    }

    fn checked(label: String, f: Poly, away_from_center: bool) -> Result<CurveGerm> {
        if !involves_plane(&f) {
            return Err(Error::InvalidInput(format!(
                "germ {label} does not involve x or y"
            )));
        }
        let g = gcd(&f, &gcd(&f.derivative(U), &f.derivative(V)));
        if involves_plane(&g) {
            return Err(Error::InvalidInput(format!(
                "germ {label} is not square-free (repeated factor {g})"
            )));
        }
        Ok(CurveGerm {
            label,
            f: strip_constant_content(&f),
            away_from_center,
        })
    }
}

/// A component of the total transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentId {
    /// Strict transform of the input germ with this index.
    Germ(usize),
    /// Exceptional curve `E_{k+1}`.
    Exceptional(usize),
}

/// Which of the two standard charts of a blow-up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChartKind {
    /// `u = x`, `v = y/x`: the old point is `(u, u·v)`.
    X,
    /// `u = x/y`, `v = y`: the old point is `(u·v, v)`.
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartLink {
    pub parent: usize,
    /// Center in the parent's coordinates.
    pub center: (Scalar, Scalar),
    pub kind: ChartKind,
}

/// The part of a chart whose points this chart is responsible for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Locus {
    /// The root chart. Only the origin is searched for violations, but any
    /// point may be blown up by hand.
    Plane,
    /// The exceptional line `u = 0`.
    Line,
    /// The origin only.
    Origin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub name: String,
    pub link: Option<ChartLink>,
    /// `(x, y)` as functions of the chart coordinates.
    pub map: (Scalar, Scalar),
    pub locus: Locus,
    /// The component equal to `u = 0` in a [`Locus::Line`] chart.
    pub line: Option<ComponentId>,
    /// Points of the locus that were blown up afterwards.
    pub removed: Vec<(Scalar, Scalar)>,
    /// Local equations of the visible components.
    pub equations: Vec<(ComponentId, Poly)>,
}

impl Chart {
    pub fn equation(&self, c: ComponentId) -> Option<&Poly> {
        self.equations
            .iter()
            .find(|(id, _)| *id == c)
            .map(|(_, p)| p)
    }

    fn is_removed(&self, p: &(Scalar, Scalar)) -> bool {
        self.removed.iter().any(|q| q == p)
    }

    fn owns(&self, p: &(Scalar, Scalar)) -> bool {
        let ok = match self.locus {
            Locus::Plane => true,
            Locus::Line => p.0.is_zero(),
            Locus::Origin => p.0.is_zero() && p.1.is_zero(),
        };
        ok && !self.is_removed(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalComponent {
    pub label: String,
    /// Index of the blow-up event that created it.
    pub birth: usize,
    /// The chart where it is `u = 0`.
    pub birth_chart: usize,
    pub self_intersection: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupEvent {
    pub chart: usize,
    pub center: (Scalar, Scalar),
    pub exceptional: usize,
    /// The `X` and `Y` charts created by the event.
    pub children: (usize, usize),
    /// Exceptional components through the center, which lost one unit of
    /// self-intersection.
    pub decremented: Vec<usize>,
}

/// Where two components meet inside one chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrossingLocus {
    Point(Scalar, Scalar),
    /// The points `u = 0`, `q(v) = 0` for an irreducible `q` without rational roots.
    Conjugates {
        q: Poly,
        count: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub first: ComponentId,
    pub second: ComponentId,
    pub chart: usize,
    pub locus: CrossingLocus,
}

impl Crossing {
    pub fn count(&self) -> usize {
        match &self.locus {
            CrossingLocus::Point(..) => 1,
            CrossingLocus::Conjugates { count, .. } => *count,
        }
    }

    pub fn involves(&self, c: ComponentId) -> bool {
        self.first == c || self.second == c
    }

    pub fn other(&self, c: ComponentId) -> ComponentId {
        if self.first == c {
            self.second
        } else {
            self.first
        }
    }
}

/// A point where the reduced total transform is not a strict normal crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub chart: usize,
    pub point: (Scalar, Scalar),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionTree {
    pub germs: Vec<CurveGerm>,
    pub charts: Vec<Chart>,
    pub events: Vec<BlowupEvent>,
    pub exceptionals: Vec<ExceptionalComponent>,
}

impl ResolutionTree {
    /// The tree with no blow-ups. Germs must be pairwise without common components.
    pub fn new(germs: Vec<CurveGerm>) -> Result<ResolutionTree> {
        for (i, a) in germs.iter().enumerate() {
            for b in &germs[..i] {
                if a.label == b.label {
                    return Err(Error::InvalidInput(format!(
                        "duplicate germ label {}",
                        a.label
                    )));
                }
                if involves_plane(&gcd(&a.f, &b.f)) {
                    return Err(Error::InvalidInput(format!(
                        "germs {} and {} share a component",
                        b.label, a.label
                    )));
                }
            }
        }
        let root = Chart {
            name: "R".into(),
            link: None,
            map: (Scalar::var(U), Scalar::var(V)),
            locus: Locus::Plane,
            line: None,
            removed: Vec::new(),
            equations: germs
                .iter()
                .enumerate()
                .map(|(i, g)| (ComponentId::Germ(i), g.f.clone()))
                .collect(),
        };
        Ok(ResolutionTree {
            germs,
            charts: vec![root],
            events: Vec::new(),
            exceptionals: Vec::new(),
        })
    }

    pub fn label(&self, c: ComponentId) -> &str {
        match c {
            ComponentId::Germ(i) => &self.germs[i].label,
            ComponentId::Exceptional(k) => &self.exceptionals[k].label,
        }
    }

    pub fn component_by_label(&self, label: &str) -> Option<ComponentId> {
        if let Some(i) = self.germs.iter().position(|g| g.label == label) {
            return Some(ComponentId::Germ(i));
        }
        self.exceptionals
            .iter()
            .position(|e| e.label == label)
            .map(ComponentId::Exceptional)
    }

    pub fn exceptional_ids(&self) -> Vec<ComponentId> {
        (0..self.exceptionals.len())
            .map(ComponentId::Exceptional)
            .collect()
    }

    pub fn is_complete(&self) -> Result<bool> {
        Ok(snc_violations(self)?.is_empty())
    }

    /// All pairwise meetings of components, chart by chart.
    pub fn crossings(&self) -> Vec<Crossing> {
        let mut out = Vec::new();
        for (ci, chart) in self.charts.iter().enumerate() {
            match chart.locus {
                Locus::Plane | Locus::Origin => {
                    let origin = (Scalar::zero(), Scalar::zero());
                    if chart.is_removed(&origin) {
                        continue;
                    }
                    let through: Vec<ComponentId> = chart
                        .equations
                        .iter()
                        .filter(|(_, f)| eval_at_origin(f).is_zero())
                        .map(|(c, _)| *c)
                        .collect();
                    for (i, a) in through.iter().enumerate() {
                        for b in &through[i + 1..] {
                            out.push(Crossing {
                                first: *a,
                                second: *b,
                                chart: ci,
                                locus: CrossingLocus::Point(Scalar::zero(), Scalar::zero()),
                            });
                        }
                    }
                }
                Locus::Line => {
                    let line = chart.line.expect("line chart has its component");
                    let traces: Vec<(ComponentId, Poly)> = chart
                        .equations
                        .iter()
                        .filter(|(c, _)| *c != line)
                        .map(|(c, f)| (*c, f.at_zero(U)))
                        .collect();
                    for (i, (a, ha)) in traces.iter().enumerate() {
                        crossings_on_line(chart, ci, line, *a, &squarefree_in(ha, V), &mut out);
                        for (b, hb) in &traces[i + 1..] {
                            let common = gcd(ha, hb);
                            crossings_on_line(
                                chart,
                                ci,
                                *a,
                                *b,
                                &squarefree_in(&common, V),
                                &mut out,
                            );
                        }
                    }
                }
            }
        }
        out
    }

    /// Crossings involving `c`.
    pub fn crossings_of(&self, c: ComponentId) -> Vec<Crossing> {
        self.crossings()
            .into_iter()
            .filter(|x| x.involves(c))
            .collect()
    }

    /// Undirected edges of the dual graph over all components, with point counts.
    pub fn dual_graph(&self) -> Vec<(String, String, usize)> {
        let mut edges: Vec<(ComponentId, ComponentId, usize)> = Vec::new();
        for x in self.crossings() {
            let (a, b) = if x.first <= x.second {
                (x.first, x.second)
            } else {
                (x.second, x.first)
            };
            match edges.iter_mut().find(|(p, q, _)| *p == a && *q == b) {
                Some(e) => e.2 += x.count(),
                None => edges.push((a, b, x.count())),
            }
        }
        edges.sort_by_key(|e| (e.0, e.1));
        edges
            .into_iter()
            .map(|(a, b, n)| (self.label(a).to_string(), self.label(b).to_string(), n))
            .collect()
    }

    /// Serializable summary with exact values rendered as strings.
    pub fn summary(&self) -> TreeSummary {
        TreeSummary {
            events: self
                .events
                .iter()
                .map(|e| EventSummary {
                    chart: self.charts[e.chart].name.clone(),
                    center: [e.center.0.to_string(), e.center.1.to_string()],
                    exceptional: self.exceptionals[e.exceptional].label.clone(),
                })
                .collect(),
            components: self
                .exceptionals
                .iter()
                .map(|e| ComponentSummary {
                    label: e.label.clone(),
                    self_intersection: e.self_intersection,
                    birth: e.birth + 1,
                })
                .collect(),
            adjacency: self
                .crossings()
                .iter()
                .map(|x| AdjacencySummary {
                    first: self.label(x.first).to_string(),
                    second: self.label(x.second).to_string(),
                    chart: self.charts[x.chart].name.clone(),
                    at: match &x.locus {
                        CrossingLocus::Point(a, b) => format!("({a}, {b})"),
                        CrossingLocus::Conjugates { q, count } => {
                            format!("{count} points with u = 0, {}", rename_uv(q))
                        }
                    },
                })
                .collect(),
            intersection_matrix: intersection_matrix(self).rows(),
            dual_graph: self
                .dual_graph()
                .into_iter()
                .map(|(a, b, n)| [a, b, n.to_string()])
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EventSummary {
    pub chart: String,
    pub center: [String; 2],
    pub exceptional: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub label: String,
    pub self_intersection: i64,
    pub birth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjacencySummary {
    pub first: String,
    pub second: String,
    pub chart: String,
    pub at: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeSummary {
    pub events: Vec<EventSummary>,
    pub components: Vec<ComponentSummary>,
    pub adjacency: Vec<AdjacencySummary>,
    pub intersection_matrix: Vec<Vec<i64>>,
    /// `[first, second, number of points]`.
    pub dual_graph: Vec<[String; 3]>,
}

impl fmt::Display for TreeSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "events {}", self.events.len())?;
        for (i, e) in self.events.iter().enumerate() {
            writeln!(
                f,
                "  {}: blow up ({}, {}) in chart {} -> {}",
                i + 1,
                e.center[0],
                e.center[1],
                e.chart,
                e.exceptional
            )?;
        }
        writeln!(f, "components")?;
        for c in &self.components {
            writeln!(
                f,
                "  {}: self-intersection {}, born at event {}",
                c.label, c.self_intersection, c.birth
            )?;
        }
        writeln!(f, "adjacency")?;
        for a in &self.adjacency {
            writeln!(
                f,
                "  {} meets {} in chart {} at {}",
                a.first, a.second, a.chart, a.at
            )?;
        }
        writeln!(f, "intersection matrix")?;
        for row in &self.intersection_matrix {
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        writeln!(f, "dual graph")?;
        for e in &self.dual_graph {
            writeln!(f, "  {} -- {} ({})", e[0], e[1], e[2])?;
        }
        Ok(())
    }
}

/// Blows up `point` of `chart`.
pub fn blowup_point(
    tree: &ResolutionTree,
    chart: usize,
    point: (Scalar, Scalar),
) -> Result<ResolutionTree> {
    let parent = tree
        .charts
        .get(chart)
        .ok_or_else(|| Error::InvalidInput(format!("no chart with index {chart}")))?;
    for c in [&point.0, &point.1] {
        if c.contains(U) || c.contains(V) {
            return Err(Error::InvalidInput(format!(
                "center coordinate {c} is not a constant"
            )));
        }
    }
    if !parent.owns(&point) {
        return Err(Error::CenterNotOnLocus(format!(
            "({}, {}) in chart {}",
            point.0, point.1, parent.name
        )));
    }
    let mut out = tree.clone();
    let k = out.exceptionals.len();
    let event = out.events.len();
    let new_id = ComponentId::Exceptional(k);
    let (a, b) = point.clone();

    let translated: Vec<(ComponentId, Poly, u32)> = parent
        .equations
        .iter()
        .map(|(c, f)| {
            let g = translate(f, &a, &b);
            let m = xy_order(&g);
            (*c, g, m)
        })
        .collect();
    let mut decremented = Vec::new();
    for (c, _, m) in &translated {
        if let (ComponentId::Exceptional(i), true) = (c, *m > 0) {
            out.exceptionals[*i].self_intersection -= 1;
            decremented.push(*i);
        }
    }

    let shifted_map = |uu: Scalar, vv: Scalar| -> Result<(Scalar, Scalar)> {
        let subs = [(U, &a + &uu), (V, &b + &vv)];
        Ok((
            parent.map.0.substitute(&subs)?,
            parent.map.1.substitute(&subs)?,
        ))
    };
    let u = Scalar::var(U);
    let v = Scalar::var(V);
    let uv = &u * &v;

    let mut children = Vec::with_capacity(2);
    for kind in [ChartKind::X, ChartKind::Y] {
        let (map, subst, divisor, locus, own_eq) = match kind {
            ChartKind::X => (
                shifted_map(u.clone(), uv.clone())?,
                [(V, Poly::var(U).mul(&Poly::var(V)))],
                U,
                Locus::Line,
                Poly::var(U),
            ),
            ChartKind::Y => (
                shifted_map(uv.clone(), v.clone())?,
                [(U, Poly::var(U).mul(&Poly::var(V)))],
                V,
                Locus::Origin,
                Poly::var(V),
            ),
        };
        let mut equations = Vec::new();
        for (c, g, m) in &translated {
            let s = g.substitute(&subst);
            let d = Poly::var(divisor).pow(*m);
            let st = s
                .div_exact(&d)
                .ok_or_else(|| Error::Internal("strict transform division failed".into()))?;
            if involves_plane(&st) {
                equations.push((*c, strip_constant_content(&st)));
            }
        }
        equations.push((new_id, own_eq));
        let suffix = match kind {
            ChartKind::X => "x",
            ChartKind::Y => "y",
        };
        out.charts.push(Chart {
            name: format!("{}.{}{}", parent.name, suffix, k + 1),
            link: Some(ChartLink {
                parent: chart,
                center: point.clone(),
                kind,
            }),
            map,
            locus,
            line: (kind == ChartKind::X).then_some(new_id),
            removed: Vec::new(),
            equations,
        });
        children.push(out.charts.len() - 1);
    }
    out.charts[chart].removed.push(point.clone());
    out.exceptionals.push(ExceptionalComponent {
        label: format!("E{}", k + 1),
        birth: event,
        birth_chart: children[0],
        self_intersection: -1,
    });
    out.events.push(BlowupEvent {
        chart,
        center: point,
        exceptional: k,
        children: (children[0], children[1]),
        decremented,
    });
    Ok(out)
}

/// Points where the reduced total transform fails to be SNC, ordered by chart
/// creation and then by coordinates.
pub fn snc_violations(tree: &ResolutionTree) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    for (ci, chart) in tree.charts.iter().enumerate() {
        let mut points: Vec<(Scalar, Scalar)> = Vec::new();
        match chart.locus {
            Locus::Plane | Locus::Origin => {
                let origin = (Scalar::zero(), Scalar::zero());
                if !chart.is_removed(&origin) && origin_violates(chart) {
                    points.push(origin);
                }
            }
            Locus::Line => {
                let line = chart.line.expect("line chart has its component");
                let traces: Vec<Poly> = chart
                    .equations
                    .iter()
                    .filter(|(c, _)| *c != line)
                    .map(|(_, f)| f.at_zero(U))
                    .collect();
                let mut bad: Vec<Poly> = Vec::new();
                for (i, h) in traces.iter().enumerate() {
                    if h.is_zero() {
                        return Err(Error::Internal(format!(
                            "a component contains the exceptional line in chart {}",
                            chart.name
                        )));
                    }
                    // Roots of multiplicity ≥ 2: tangency to the line or a singular point.
                    bad.push(gcd(h, &h.derivative(V)));
                    for h2 in &traces[i + 1..] {
                        bad.push(gcd(h, h2));
                    }
                }
                for p in bad.into_iter().filter(|p| p.contains(V)) {
                    let split = split_linear_factors(&as_upoly(&p, V));
                    if !split.is_complete() {
                        return Err(Error::IrrationalCenter(format!(
                            "u = 0, {} = 0 in chart {}",
                            rename_uv(&p),
                            chart.name
                        )));
                    }
                    for (r, _) in split.roots {
                        let pt = (Scalar::zero(), r);
                        if !chart.is_removed(&pt) && !points.contains(&pt) {
                            points.push(pt);
                        }
                    }
                }
            }
        }
        points.sort_by(point_cmp);
        out.extend(
            points
                .into_iter()
                .map(|point| Violation { chart: ci, point }),
        );
    }
    Ok(out)
}

/// Blows up the first violation until none remain.
pub fn embedded_resolution(germs: Vec<CurveGerm>, max_steps: usize) -> Result<ResolutionTree> {
    let mut tree = ResolutionTree::new(germs)?;
    loop {
        let v = snc_violations(&tree)?;
        let Some(first) = v.into_iter().next() else {
            return Ok(tree);
        };
        if tree.events.len() >= max_steps {
            return Err(Error::StepLimitExceeded(max_steps));
        }
        tree = blowup_point(&tree, first.chart, first.point)?;
    }
}

/// `A_ii = (E_i, E_i)` and `A_ij` the number of points where `E_i` meets `E_j`.
pub fn intersection_matrix(tree: &ResolutionTree) -> IntMatrix {
    let s = tree.exceptionals.len();
    let mut a = IntMatrix::zeros(s);
    for (i, e) in tree.exceptionals.iter().enumerate() {
        a.set(i, i, e.self_intersection);
    }
    for x in tree.crossings() {
        if let (ComponentId::Exceptional(i), ComponentId::Exceptional(j)) = (x.first, x.second) {
            let n = x.count() as i64;
            a.set(i, j, a.get(i, j) + n);
            a.set(j, i, a.get(j, i) + n);
        }
    }
    a
}

fn crossings_on_line(
    chart: &Chart,
    ci: usize,
    a: ComponentId,
    b: ComponentId,
    roots_poly: &Poly,
    out: &mut Vec<Crossing>,
) {
    if !roots_poly.contains(V) {
        return;
    }
    let split = split_linear_factors(&as_upoly(roots_poly, V));
    let mut roots: Vec<Scalar> = split.roots.into_iter().map(|(r, _)| r).collect();
    roots.sort_by(canonical_cmp);
    for r in roots {
        let pt = (Scalar::zero(), r);
        if chart.is_removed(&pt) {
            continue;
        }
        out.push(Crossing {
            first: a,
            second: b,
            chart: ci,
            locus: CrossingLocus::Point(pt.0, pt.1),
        });
    }
    if split.rest.degree() > 0 {
        let q = upoly_to_poly(&split.rest, V);
        out.push(Crossing {
            first: a,
            second: b,
            chart: ci,
            locus: CrossingLocus::Conjugates {
                count: split.rest.degree(),
                q,
            },
        });
    }
}

fn origin_violates(chart: &Chart) -> bool {
    let mut tangents: Vec<(Poly, Poly)> = Vec::new();
    for (_, f) in &chart.equations {
        match xy_order(f) {
            0 => {}
            1 => tangents.push((f.coeff_of(U, 1).at_zero(V), f.coeff_of(V, 1).at_zero(U))),
            _ => return true,
        }
    }
    if tangents.len() >= 3 {
        return true;
    }
    if let [(a1, b1), (a2, b2)] = tangents.as_slice() {
        return a1.mul(b2).sub(&a2.mul(b1)).is_zero();
    }
    false
}

fn point_cmp(p: &(Scalar, Scalar), q: &(Scalar, Scalar)) -> Ordering {
    canonical_cmp(&p.0, &q.0).then_with(|| canonical_cmp(&p.1, &q.1))
}

pub(crate) fn involves_plane(p: &Poly) -> bool {
    p.contains(U) || p.contains(V)
}

/// Order of vanishing at `u = v = 0`, counting only the plane variables.
pub(crate) fn xy_order(p: &Poly) -> u32 {
    p.terms()
        .iter()
        .map(|(m, _)| m.degree(U) as u32 + m.degree(V) as u32)
        .min()
        .unwrap_or(u32::MAX)
}

fn eval_at_origin(p: &Poly) -> Poly {
    p.at_zero(U).at_zero(V)
}

/// `f(a + u, b + v)` with denominators in the constants cleared.
pub(crate) fn translate(f: &Poly, a: &Scalar, b: &Scalar) -> Poly {
    if a.is_zero() && b.is_zero() {
        return f.clone();
    }
    let s = Scalar::from_poly(f.clone())
        .substitute(&[(U, a + &Scalar::var(U)), (V, b + &Scalar::var(V))])
        .expect("translation of a polynomial");
    strip_constant_content(s.numerator())
}

/// Removes factors free of `u` and `v`, which are units on the chart.
pub(crate) fn strip_constant_content(p: &Poly) -> Poly {
    // Coefficients with respect to the plane monomials.
    let mut groups: Vec<(crate::scalar::Monomial, Poly)> = Vec::new();
    for (m, c) in p.terms() {
        let mut plane = crate::scalar::Monomial::ONE;
        plane.0[U.index()] = m.degree(U);
        plane.0[V.index()] = m.degree(V);
        let mut rest = *m;
        rest.0[U.index()] = 0;
        rest.0[V.index()] = 0;
        let term = Poly::monomial(rest, c.clone());
        match groups.iter_mut().find(|(q, _)| *q == plane) {
            Some(g) => g.1 = g.1.add(&term),
            None => groups.push((plane, term)),
        }
    }
    let mut content = Poly::zero();
    for (_, c) in &groups {
        content = if content.is_zero() {
            c.clone()
        } else {
            gcd(&content, c)
        };
        if content.is_one() {
            break;
        }
    }
    if content.is_zero() || content.is_constant() {
        let k = p.content();
        let q = if k.is_zero() {
            p.clone()
        } else {
            p.div_integer(&k)
        };
        return q.normalize_sign();
    }
    p.div_exact(&content)
        .expect("content divides")
        .normalize_sign()
}

fn squarefree_in(h: &Poly, v: Var) -> Poly {
    if !h.contains(v) {
        return Poly::one();
    }
    let g = gcd(h, &h.derivative(v));
    h.div_exact(&g).expect("gcd divides")
}

fn as_upoly(p: &Poly, v: Var) -> UPoly {
    UPoly::new(p.coeffs_in(v).into_iter().map(Scalar::from_poly).collect())
}

fn upoly_to_poly(p: &UPoly, v: Var) -> Poly {
    // Clear the denominators of the monic cofactor.
    let mut den = Poly::one();
    for c in p.coeffs() {
        let d = c.denominator();
        let g = gcd(&den, d);
        den = den.mul(&d.div_exact(&g).expect("gcd divides"));
    }
    let dens = Scalar::from_poly(den);
    let coeffs: Vec<Poly> = p
        .coeffs()
        .iter()
        .map(|c| (c * &dens).numerator().clone())
        .collect();
    Poly::from_coeffs_in(v, &coeffs)
}

/// Prints a polynomial in chart coordinates.
fn rename_uv(p: &Poly) -> String {
    p.to_string().replace('x', "u").replace('y', "v")
}
