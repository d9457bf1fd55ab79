use fuchsian_core::connection::{
    assemble_nice_model, check_flatness, pull_through_chart, pull_through_map, pullback_curve,
    restrict_to_axis, restrict_to_component, varpi_projection, Axis, NiceFormalModel,
    PlaneConnection,
};
use fuchsian_core::diffmod::{katz_rank, residue_exponents, ExponentClass, SlopeData};
use fuchsian_core::resolution::{embedded_resolution, ComponentId, CurveGerm, DEFAULT_MAX_STEPS};
use fuchsian_core::scalar::{Matrix, Poly, Rational, Scalar, Var};
use fuchsian_core::Error;
use proptest::prelude::*;

fn s(t: &str) -> Scalar {
    t.parse().unwrap()
}

fn m(rows: &[&[&str]]) -> Matrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|e| s(e)).collect())
            .collect(),
    )
    .unwrap()
}

fn rank1(ax: &str, ay: &str) -> PlaneConnection {
    PlaneConnection::with_inferred_locus(m(&[&[ax]]), m(&[&[ay]])).unwrap()
}

fn int(k: i64) -> Rational {
    Rational::from_integer(k.into())
}

#[test]
fn flatness_examples() {
    assert!(check_flatness(&PlaneConnection::trivial(2)));
    assert!(check_flatness(&rank1("c1/x", "c2/y")));
    let c = PlaneConnection::unchecked(
        m(&[&["0", "1"], &["0", "0"]]),
        m(&[&["0", "0"], &["1", "0"]]),
        vec![],
    )
    .unwrap();
    // [A_x, A_y] = diag(1, −1) by hand.
    assert_eq!(c.curvature(), m(&[&["1", "0"], &["0", "-1"]]));
    assert!(!check_flatness(&c));
    assert_eq!(
        PlaneConnection::new(c.ax().clone(), c.ay().clone(), vec![]),
        Err(Error::NotFlat)
    );
}

#[test]
fn polar_locus_is_enforced() {
    let r = PlaneConnection::new(m(&[&["1/x"]]), m(&[&["0"]]), vec![]);
    assert!(matches!(r, Err(Error::InvalidInput(_))));
    let ok = PlaneConnection::new(m(&[&["1/x^2"]]), m(&[&["0"]]), vec![Poly::var(Var::X)]);
    assert!(ok.is_ok());
}

#[test]
fn chart_pullback_examples() {
    let c = rank1("c1/x", "c2/y");
    let id = (Scalar::var(Var::X), Scalar::var(Var::Y));
    assert_eq!(pull_through_map(&c, &id).unwrap(), c);
    // d log x = du/u and d log y = du/u + dv/v.
    let p = pull_through_map(&c, &(s("x"), s("x*y"))).unwrap();
    assert_eq!(p.ax().get(0, 0), &s("(c1 + c2)/x"));
    assert_eq!(p.ay().get(0, 0), &s("c2/y"));
    assert!(check_flatness(&p));
}

#[test]
fn restriction_examples() {
    let t = restrict_to_axis(&PlaneConnection::trivial(1), Axis::X).unwrap();
    assert!(t.theta_matrix().is_zero());
    assert!(katz_rank(&t).unwrap().is_regular());

    let a = restrict_to_axis(&rank1("c1/x", "0"), Axis::X).unwrap();
    assert_eq!(a.theta_matrix().get(0, 0), &s("c1"));
    let ex = residue_exponents(&a).unwrap();
    assert_eq!(ex.0, vec![ExponentClass::from_scalar(&s("c1")).unwrap()]);

    // A_u = v/u^2 along u = 0: rank-1 law gives ρ = 1 and φ = u − v.
    let c =
        PlaneConnection::new(m(&[&["y/x^2"]]), m(&[&["-1/x"]]), vec![Poly::var(Var::X)]).unwrap();
    let r = restrict_to_axis(&c, Axis::X).unwrap();
    assert_eq!(r.theta_matrix().get(0, 0), &s("y/x"));
    let k = katz_rank(&r).unwrap();
    assert_eq!(k.rho, int(1));
    assert_eq!(k.leading_poly.coeffs(), &[s("-y"), s("1")]);

    // Along y = 0 the roles of the variables swap.
    let b = restrict_to_axis(&rank1("c1/x", "c2/y + 1"), Axis::Y).unwrap();
    assert_eq!(b.theta_matrix().get(0, 0), &s("c2 + x"));
}

#[test]
fn component_not_in_chart() {
    let tree = embedded_resolution(
        vec![CurveGerm::parse("C", "y^2 - x^3").unwrap()],
        DEFAULT_MAX_STEPS,
    )
    .unwrap();
    let conn = rank1("c1/x", "c2/y");
    // E3 is born after the X chart of the first blow-up, so it is not there.
    let chart = &tree.charts[tree.events[0].children.0];
    let p = pull_through_chart(&conn, chart).unwrap();
    let r = restrict_to_component(&p, chart, ComponentId::Exceptional(2));
    assert!(matches!(r, Err(Error::ComponentNotInChart(_))));
    let (e1, _) = restrict_to_component(&p, chart, ComponentId::Exceptional(0)).unwrap();
    assert_eq!(e1.theta_matrix().get(0, 0), &s("c1 + c2"));
}

#[test]
fn curve_pullback_examples() {
    let cusp = (s("x^2"), s("x^3"));
    let t = pullback_curve(&PlaneConnection::trivial(2), &cusp).unwrap();
    assert!(katz_rank(&t).unwrap().is_regular());

    // t·(c1·2t/t^2 + c2·3t^2/t^3) = 2c1 + 3c2.
    let r = pullback_curve(&rank1("c1/x", "c2/y"), &cusp).unwrap();
    assert_eq!(r.theta_matrix().get(0, 0), &s("2*c1 + 3*c2"));

    // t·t^(−2) = 1/t.
    let irr =
        PlaneConnection::new(m(&[&["1/x^2"]]), m(&[&["0"]]), vec![Poly::var(Var::X)]).unwrap();
    let p = pullback_curve(&irr, &(s("x"), s("1"))).unwrap();
    assert_eq!(p.theta_matrix().get(0, 0), &s("1/x"));
    let k = katz_rank(&p).unwrap();
    assert_eq!(k.rho, int(1));

    let inside = pullback_curve(&rank1("c1/x", "c2/y"), &(s("0"), s("x")));
    assert_eq!(inside, Err(Error::CurveInsidePolarLocus));
}

/// The cusp `(t^2, t^3)` lifts to `(u, v) = (t^2, t)` in the first X chart.
#[test]
fn pullback_factors_through_charts() {
    let tree = embedded_resolution(
        vec![CurveGerm::parse("C", "y^2 - x^3").unwrap()],
        DEFAULT_MAX_STEPS,
    )
    .unwrap();
    let x1 = &tree.charts[tree.events[0].children.0];
    for conn in [
        rank1("c1/x", "c2/y"),
        rank1("1/x^2", "0"),
        rank1("y/x^3", "-1/(2*x^2)"),
    ] {
        if !check_flatness(&conn) {
            continue;
        }
        let direct = pullback_curve(&conn, &(s("x^2"), s("x^3"))).unwrap();
        let via =
            pullback_curve(&pull_through_chart(&conn, x1).unwrap(), &(s("x^2"), s("x"))).unwrap();
        assert_eq!(direct, via);
        assert_eq!(
            katz_rank(&direct).unwrap().slopes,
            katz_rank(&via).unwrap().slopes
        );
    }
}

#[test]
fn varpi_examples() {
    assert_eq!(
        varpi_projection(&s("1/x + 1/(x*y) + 1/y")).unwrap(),
        s("1/x + 1/(x*y)")
    );
    assert_eq!(varpi_projection(&s("(1 + y)/(1 - x)")).unwrap(), s("0"));
    assert_eq!(varpi_projection(&s("y/x")).unwrap(), s("y/x"));
    // 1/(x·(1 − y)) = Σ y^j/x lies entirely in the first factor.
    assert_eq!(
        varpi_projection(&s("1/(x*(1-y))")).unwrap(),
        s("1/(x*(1-y))")
    );
    assert!(matches!(
        varpi_projection(&s("1/(x+y)")),
        Err(Error::NotSplittable(_))
    ));
}

#[test]
fn nice_model_examples() {
    let f = s("-1/(x*y)");
    let model = NiceFormalModel {
        blocks: vec![(f.clone(), f.clone())],
        regular: None,
        ramification: 1,
        gauge: None,
    };
    let conn = assemble_nice_model(&model).unwrap();
    assert!(check_flatness(&conn));
    let k = katz_rank(&restrict_to_axis(&conn, Axis::X).unwrap()).unwrap();
    assert_eq!(k.rho, int(1));

    let trivial = NiceFormalModel {
        blocks: vec![(s("0"), s("0"))],
        regular: Some((m(&[&["0"]]), m(&[&["0"]]))),
        ramification: 1,
        gauge: None,
    };
    let c = assemble_nice_model(&trivial).unwrap();
    assert!(c.ax().is_zero() && c.ay().is_zero());

    let bad = NiceFormalModel {
        blocks: vec![(s("1/(x*y)"), s("0"))],
        regular: None,
        ramification: 1,
        gauge: None,
    };
    assert!(matches!(
        assemble_nice_model(&bad),
        Err(Error::IntegrabilityViolation(_))
    ));

    let dup = NiceFormalModel {
        blocks: vec![(s("1/x"), s("0")), (s("1/x + 1"), s("y"))],
        regular: None,
        ramification: 1,
        gauge: None,
    };
    assert!(matches!(
        assemble_nice_model(&dup),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn scrambled_model_keeps_invariants() {
    let model = NiceFormalModel {
        blocks: vec![(s("-1/(x*y)"), s("-1/(x*y)")), (s("c1"), s("c2"))],
        regular: None,
        ramification: 1,
        gauge: Some(m(&[&["1", "x + y"], &["0", "1"]])),
    };
    let conn = assemble_nice_model(&model).unwrap();
    assert!(check_flatness(&conn));
    let k = katz_rank(&restrict_to_axis(&conn, Axis::X).unwrap()).unwrap();
    assert_eq!(k.rho, int(1));
    assert_eq!(k.slopes, SlopeData(vec![(int(0), 1), (int(1), 1)]));
}

fn small_rational() -> impl Strategy<Value = Scalar> {
    (
        prop::collection::vec((-3i64..=3, 0u32..3, 0u32..3), 1..4),
        -2i32..=0,
        -2i32..=0,
    )
        .prop_map(|(terms, a, b)| {
            let mut f = Scalar::zero();
            for (k, i, j) in terms {
                f = &f + &s(&format!("{k}*x^{i}*y^{j}"));
            }
            &f * &Scalar::var(Var::X).pow(a as i64).unwrap()
                * Scalar::var(Var::Y).pow(b as i64).unwrap()
        })
}

/// `A = dg` is flat in rank 1; gauges and direct sums keep flatness.
fn flat_strategy() -> impl Strategy<Value = PlaneConnection> {
    (small_rational(), small_rational(), -2i64..=2, any::<bool>()).prop_map(|(g, h, k, sum)| {
        let one = |f: &Scalar| {
            PlaneConnection::with_inferred_locus(
                Matrix::diagonal(&[f.derivative(Var::X)]),
                Matrix::diagonal(&[f.derivative(Var::Y)]),
            )
            .unwrap()
        };
        let a = one(&g);
        if !sum {
            return a;
        }
        let b = one(&(&h + &s("c1*x")));
        let g = m(&[&["1", &format!("{k}*x*y + y")], &["0", "1"]]);
        a.direct_sum(&b).unwrap().gauge(&g).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn flatness_survives_charts(conn in flat_strategy()) {
        prop_assert!(check_flatness(&conn));
        let tree = embedded_resolution(
            vec![CurveGerm::parse("C", "y^2 - x^3").unwrap()],
            DEFAULT_MAX_STEPS,
        )
        .unwrap();
        for chart in &tree.charts {
            match pull_through_chart(&conn, chart) {
                Ok(p) => prop_assert!(check_flatness(&p)),
                Err(Error::InvalidInput(_)) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }

    #[test]
    fn varpi_is_linear_projection(f in small_rational(), g in small_rational(), k in -3i64..=3) {
        let pf = varpi_projection(&f).unwrap();
        prop_assert_eq!(varpi_projection(&pf).unwrap(), pf.clone());
        let pg = varpi_projection(&g).unwrap();
        let kk = Scalar::from_int(k);
        let combo = &f + &(&kk * &g);
        prop_assert_eq!(varpi_projection(&combo).unwrap(), &pf + &(&kk * &pg));
        // Regular-along-x inputs land in the kernel.
        let reg = &f * &Scalar::var(Var::X).pow(3).unwrap();
        prop_assert!(varpi_projection(&reg).unwrap().is_zero());
    }

    #[test]
    fn model_block_rank_one_law(a in 1i64..=3, b in 0i64..=2, k in 1i64..=3) {
        // φ̃ = k/(x^a·y^b) and ψ̃ chosen so that θ_xψ̃ = θ_yφ̃.
        let phi = s(&format!("{k}/(x^{a}*y^{b})"));
        let psi = s(&format!("{}/({a}*x^{a}*y^{b})", k * b));
        let model = NiceFormalModel { blocks: vec![(phi, psi)], regular: None, ramification: 1, gauge: None };
        let conn = assemble_nice_model(&model).unwrap();
        let kr = katz_rank(&restrict_to_axis(&conn, Axis::X).unwrap()).unwrap();
        prop_assert_eq!(kr.rho, int(a));
    }
}
