use std::collections::BTreeMap;

use fuchsian_core::connection::PlaneConnection;
use fuchsian_core::criterion::{
    component_report, crossing_bounds, implicit_equation, positivity_lemma, qspan_check,
    slope_inequality, verify_theorem, ExponentLedger, Verdict, VerifyOptions,
};
use fuchsian_core::diffmod::{ExponentClass, ExponentSet};
use fuchsian_core::resolution::{
    blowup_point, embedded_resolution, intersection_matrix, ComponentId, CurveGerm, ResolutionTree,
    DEFAULT_MAX_STEPS,
};
use fuchsian_core::scalar::{IntMatrix, Matrix, Poly, Rational, Scalar};
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

fn axes() -> Vec<CurveGerm> {
    vec![
        CurveGerm::parse("x", "x").unwrap(),
        CurveGerm::parse("y", "y").unwrap(),
    ]
}

fn param(p: &str, q: &str) -> (Scalar, Scalar) {
    (s(&p.replace('t', "x")), s(&q.replace('t', "x")))
}

fn declared() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

/// `1/(xy)` on the blow-up of the origin, with `x`, `y` as germs.
fn exp_model() -> (PlaneConnection, ResolutionTree) {
    let conn = rank1("1/(x^2*y)", "1/(x*y^2)");
    let tree = ResolutionTree::new(axes()).unwrap();
    let tree = blowup_point(&tree, 0, (Scalar::zero(), Scalar::zero())).unwrap();
    (conn, tree)
}

#[test]
fn report_of_trivial_connection() {
    let tree = embedded_resolution(vec![CurveGerm::parse("C", "y^2 - x^3").unwrap()], 64).unwrap();
    let conn = PlaneConnection::trivial(2);
    for id in tree.exceptional_ids() {
        let r = component_report(&conn, &tree, id).unwrap();
        assert_eq!(r.rho, int(0));
        assert!(r.crossings.iter().all(|c| c.infinity_multiplicity == 0));
    }
}

#[test]
fn report_of_exponential_model() {
    let (conn, tree) = exp_model();
    let e = ComponentId::Exceptional(0);
    let r = component_report(&conn, &tree, e).unwrap();
    // In the chart x = u, y = uv the form is 1/(u²v): pole order 2 along E.
    assert_eq!(r.rho, int(2));
    assert_eq!(r.mu_rho, 1);
    let mults: BTreeMap<String, u64> = r
        .crossings
        .iter()
        .map(|c| (c.other_label.clone(), c.infinity_multiplicity))
        .collect();
    assert_eq!(mults["x"], 1);
    assert_eq!(mults["y"], 1);

    let gy = component_report(&conn, &tree, ComponentId::Germ(1)).unwrap();
    assert_eq!(gy.rho, int(1));
}

#[test]
fn crossing_bound_is_sharp_and_detects_a_bad_rank() {
    let (conn, tree) = exp_model();
    let e = ComponentId::Exceptional(0);
    let r = component_report(&conn, &tree, e).unwrap();
    let mut ranks = BTreeMap::new();
    ranks.insert(ComponentId::Germ(0), int(1));
    ranks.insert(ComponentId::Germ(1), int(1));
    let ok = crossing_bounds(&r, &ranks);
    assert!(ok.holds);
    assert!(ok
        .rows
        .iter()
        .all(|row| row.bound == Some(int(1)) && row.multiplicity == 1));

    ranks.insert(ComponentId::Germ(1), int(0));
    let bad = crossing_bounds(&r, &ranks);
    assert!(!bad.holds);
    let failures = bad.failures();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0].other_label, "y");

    // Unlisted neighbors are excluded rather than checked.
    let excluded = crossing_bounds(&r, &BTreeMap::new());
    assert!(excluded.holds && excluded.rows.iter().all(|row| row.bound.is_none()));
}

#[test]
fn slope_inequality_examples() {
    let (conn, tree) = exp_model();
    let a = intersection_matrix(&tree);
    assert_eq!(a.rows(), vec![vec![-1]]);
    let reports = vec![component_report(&conn, &tree, ComponentId::Exceptional(0)).unwrap()];
    let ledger = slope_inequality(&a, &reports).unwrap();
    // −1·2 < 0: the hypotheses fail and nothing is concluded.
    assert_eq!(ledger.rows[0].value, int(-2));
    assert!(!ledger.hypotheses_met);
    assert!(ledger.negative_definite);
    assert_eq!(ledger.verdict, Verdict::Inconclusive);

    let flat = PlaneConnection::trivial(1);
    let reports = vec![component_report(&flat, &tree, ComponentId::Exceptional(0)).unwrap()];
    let ledger = slope_inequality(&a, &reports).unwrap();
    assert!(ledger.hypotheses_met);
    assert_eq!(ledger.verdict, Verdict::Regular);

    assert!(matches!(
        slope_inequality(
            &IntMatrix::from_rows(&[vec![-1, 0], vec![0, -1]]).unwrap(),
            &reports
        ),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn positivity_lemma_examples() {
    let a = IntMatrix::from_rows(&[vec![-2, 1], vec![1, -2]]).unwrap();
    assert!(positivity_lemma(&a, &[int(0), int(0)]).unwrap());
    // A·(1,1) = (−1,−1): the antecedent fails, so the implication holds.
    assert!(positivity_lemma(&a, &[int(1), int(1)]).unwrap());
    let indefinite = IntMatrix::from_rows(&[vec![1, 0], vec![0, -1]]).unwrap();
    assert_eq!(
        positivity_lemma(&indefinite, &[int(0), int(0)]),
        Err(Error::NotNegativeDefinite)
    );
    assert!(matches!(
        positivity_lemma(&a, &[int(-1), int(0)]),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn implicit_equations() {
    let f = implicit_equation(&param("t^2", "t^3")).unwrap();
    let expected: Poly = s("y^2 - x^3").numerator().clone();
    assert!(f == expected || f == expected.neg());
    let line = implicit_equation(&param("t", "0")).unwrap();
    assert_eq!(line, s("y").numerator().clone());
    // t ↦ (t², t⁴) covers the parabola twice; the equation is reduced.
    let para = implicit_equation(&param("t^2", "t^4")).unwrap();
    let expected: Poly = s("y - x^2").numerator().clone();
    assert!(para == expected || para == expected.neg());
}

#[test]
fn log_connection_along_cusp() {
    let conn = rank1("c1/x", "c2/y");
    let cert = verify_theorem(
        &conn,
        axes(),
        &param("t^2", "t^3"),
        &declared(),
        &VerifyOptions::default(),
    )
    .unwrap();
    assert_eq!(cert.verdict, Verdict::Regular);
    assert!(cert.rho().iter().all(|r| *r == int(0)));
    assert_eq!(cert.curve_label, "C");
    let ex = cert.pullback.exponents.clone().unwrap();
    assert_eq!(
        ex.0,
        vec![ExponentClass::from_scalar(&s("2*c1 + 3*c2")).unwrap()]
    );
    assert!(qspan_check(cert.exponent_ledger.as_ref().unwrap()));

    let text = cert.to_string();
    let heads: Vec<&str> = text.lines().filter(|l| !l.starts_with(' ')).collect();
    assert_eq!(
        heads,
        [
            "resolution",
            "components",
            "inequalities",
            "definiteness",
            "pullback",
            "verdict"
        ]
    );
}

#[test]
fn curve_already_among_germs() {
    let conn = rank1("c1/x", "c2/y");
    let cert = verify_theorem(
        &conn,
        axes(),
        &param("t", "0"),
        &["x".to_string()],
        &VerifyOptions::default(),
    );
    // y = 0 lies in the polar locus.
    assert!(matches!(
        cert,
        Err(Error::CurveInsidePolarLocus) | Err(Error::PrerequisiteFailed(_))
    ));

    let cert = verify_theorem(
        &rank1("0", "0"),
        axes(),
        &param("t", "0"),
        &[],
        &VerifyOptions::default(),
    )
    .unwrap();
    assert_eq!(cert.curve_label, "y");
    assert_eq!(cert.verdict, Verdict::Regular);
}

#[test]
fn prerequisite_failure() {
    let conn = PlaneConnection::new(
        m(&[&["1/x^2"]]),
        m(&[&["0"]]),
        vec![s("x").numerator().clone()],
    )
    .unwrap();
    let r = verify_theorem(
        &conn,
        vec![CurveGerm::parse("x", "x").unwrap()],
        &param("t^2", "t^3"),
        &["x".to_string()],
        &VerifyOptions::default(),
    );
    assert!(matches!(r, Err(Error::PrerequisiteFailed(_))));

    // A pole along y = 0 that is not declared regular.
    let r = verify_theorem(
        &rank1("c1/x", "c2/y"),
        axes(),
        &param("t^2", "t^3"),
        &["x".to_string()],
        &VerifyOptions::default(),
    );
    assert!(matches!(r, Err(Error::PrerequisiteFailed(_))));
}

#[test]
fn step_limit_propagates() {
    let r = verify_theorem(
        &rank1("c1/x", "c2/y"),
        axes(),
        &param("t^2", "t^3"),
        &declared(),
        &VerifyOptions { max_steps: 1 },
    );
    assert_eq!(r.unwrap_err(), Error::StepLimitExceeded(1));
}

#[test]
fn certificate_json_matches_text_sections() {
    let cert = verify_theorem(
        &rank1("c1/x", "c2/y"),
        axes(),
        &param("t^3", "t^2"),
        &declared(),
        &VerifyOptions {
            max_steps: DEFAULT_MAX_STEPS,
        },
    )
    .unwrap();
    let json = toml::Value::try_from(cert.view()).unwrap();
    let table = json.as_table().unwrap();
    let keys: Vec<&String> = table.keys().collect();
    for k in [
        "resolution",
        "components",
        "inequalities",
        "definiteness",
        "pullback",
        "verdict",
    ] {
        assert!(keys.iter().any(|x| *x == k), "{k}");
    }
    assert_eq!(table["verdict"].as_str(), Some("regular"));
}

#[test]
fn qspan_examples() {
    let class = |t: &str| ExponentClass::from_scalar(&s(t)).unwrap();
    let comps = vec![
        ("x".to_string(), ExponentSet(vec![class("c1")])),
        ("y".to_string(), ExponentSet(vec![class("c2")])),
    ];
    let good = ExponentLedger::new(comps.clone(), ExponentSet(vec![class("2*c1 - c2/3 + 1/2")]));
    assert!(qspan_check(&good));
    let bad = ExponentLedger::new(comps, ExponentSet(vec![class("c3")]));
    assert!(!qspan_check(&bad));
    assert_eq!(bad.flags, vec![false]);
    // Rational exponents are zero modulo ℚ.
    let empty = ExponentLedger::new(vec![], ExponentSet(vec![class("5/7")]));
    assert!(qspan_check(&empty));
}

/// Independent check: for integer vectors, `v ≥ 0`, `Av ≥ 0` and `v ≠ 0`
/// never happen together when every leading minor alternates in sign.
fn brute_positivity(a: &[Vec<i64>], range: i64) -> bool {
    let n = a.len();
    let mut v = vec![0i64; n];
    loop {
        let nonzero = v.iter().any(|&x| x != 0);
        let av_ok = (0..n).all(|i| (0..n).map(|j| a[i][j] * v[j]).sum::<i64>() >= 0);
        if nonzero && av_ok {
            return false;
        }
        let mut k = 0;
        while k < n {
            v[k] += 1;
            if v[k] <= range {
                break;
            }
            v[k] = 0;
            k += 1;
        }
        if k == n {
            return true;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn positivity_agrees_with_brute_force(
        d in prop::collection::vec(1i64..4, 3),
        off in prop::collection::vec(0i64..2, 3),
        v in prop::collection::vec(0i64..4, 3),
    ) {
        // Symmetric tridiagonal-ish integer matrices with negative diagonal.
        let a = vec![
            vec![-d[0], off[0], off[1]],
            vec![off[0], -d[1], off[2]],
            vec![off[1], off[2], -d[2]],
        ];
        let im = IntMatrix::from_rows(&a).unwrap();
        let nd = im.is_negative_definite().unwrap();
        let vr: Vec<Rational> = v.iter().map(|&x| int(x)).collect();
        match positivity_lemma(&im, &vr) {
            Ok(b) => {
                prop_assert!(nd);
                prop_assert!(b);
                prop_assert!(brute_positivity(&a, 3));
            }
            Err(e) => {
                prop_assert!(!nd);
                prop_assert_eq!(e, Error::NotNegativeDefinite);
            }
        }
    }

    #[test]
    fn log_connections_give_zero_ranks(p in 1u32..5, q in 1u32..5) {
        prop_assume!(num_integer::gcd(p, q) == 1 && (p, q) != (1, 1));
        let cert = verify_theorem(
            &rank1("c1/x", "c2/y"),
            axes(),
            &param(&format!("t^{p}"), &format!("t^{q}")),
            &declared(),
            &VerifyOptions::default(),
        ).unwrap();
        prop_assert_eq!(cert.verdict, Verdict::Regular);
        let expected = ExponentClass::from_scalar(&s(&format!("{p}*c1 + {q}*c2"))).unwrap();
        prop_assert_eq!(cert.pullback.exponents.unwrap().0, vec![expected]);
    }
}
