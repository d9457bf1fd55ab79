use fuchsian_core::diffmod::{
    cyclic_vector, default_saturation_cap, is_regular, katz_rank, leading_divisor, newton_polygon,
    residue_exponents, saturate, saturation_oracle, to_operator, DiffModule, ExponentClass,
    Operator, SlopeData,
};
use fuchsian_core::scalar::{parse_scalar, Matrix, Rational, Scalar, UPoly, Var};
use fuchsian_core::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

fn s(src: &str) -> Scalar {
    parse_scalar(src).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn module(rows: &[&[&str]]) -> DiffModule {
    DiffModule::new(
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|e| s(e)).collect())
                .collect(),
        )
        .unwrap(),
    )
    .unwrap()
}

fn op(lower: &[&str]) -> Operator {
    Operator::new(lower.iter().map(|e| s(e)).collect()).unwrap()
}

fn slopes(pairs: &[(Rational, usize)]) -> SlopeData {
    SlopeData(pairs.to_vec())
}

/// `x^r − c` as a polynomial in `x`.
fn shifted_power(r: usize, c: &Scalar) -> UPoly {
    let mut v = vec![Scalar::zero(); r + 1];
    v[0] = -c;
    v[r] = Scalar::one();
    UPoly::new(v)
}

#[test]
fn construction_rejects_degenerate_input() {
    assert!(DiffModule::new(Matrix::zeros(0, 0)).is_err());
    assert!(matches!(
        DiffModule::new(Matrix::identity(9)),
        Err(Error::SizeLimit(_))
    ));
    assert!(matches!(
        DiffModule::new(Matrix::zeros(2, 3)),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn ramify_examples() {
    let m = DiffModule::rank1(s("1/x"));
    assert_eq!(m.ramify(1).unwrap(), m);
    assert_eq!(m.ramify(2).unwrap(), DiffModule::rank1(s("2/x^2")));
    let c = DiffModule::companion(&op(&["-1/x", "0"])).unwrap();
    assert_eq!(katz_rank(&c).unwrap().slopes, slopes(&[(q(1, 2), 2)]));
    let r = c.ramify(2).unwrap();
    assert_eq!(katz_rank(&r).unwrap().slopes, slopes(&[(q(1, 1), 2)]));
}

#[test]
fn cyclic_vector_examples() {
    let cv = cyclic_vector(&DiffModule::rank1(s("y/x"))).unwrap();
    assert_eq!(cv.vector, vec![Scalar::one()]);
    let comp = DiffModule::companion(&op(&["-1/x", "0"])).unwrap();
    let cv = cyclic_vector(&comp).unwrap();
    assert_eq!(cv.vector, vec![Scalar::one(), Scalar::zero()]);
    assert_eq!(cv.transition, Matrix::identity(2));
    // e1 and e2 are eigenvectors, so the schedule reaches e1 + e2.
    let diag = DiffModule::diagonal(&[s("1/x"), s("2/x")]).unwrap();
    let cv = cyclic_vector(&diag).unwrap();
    assert_eq!(cv.vector, vec![Scalar::one(), Scalar::one()]);
    assert_eq!(cv.attempt, 2);
    assert_eq!(cv.transition.det(), s("1/x"));
}

#[test]
fn to_operator_examples() {
    let (l, _) = to_operator(&DiffModule::rank1(s("c1 + 1/x"))).unwrap();
    assert_eq!(l, op(&["-c1 - 1/x"]));
    let l0 = op(&["-1/x", "0"]);
    let (l, _) = to_operator(&DiffModule::companion(&l0).unwrap()).unwrap();
    assert_eq!(l, l0);
    // diag(1/x, −1/x) with cyclic vector e1+e2 gives θ² + θ − x^{−2}.
    let (l, _) = to_operator(&DiffModule::diagonal(&[s("1/x"), s("-1/x")]).unwrap()).unwrap();
    assert_eq!(l.coeff(0), s("-1/x^2"));
    assert_eq!(l.coeff(1), s("1"));
    assert_eq!(newton_polygon(&l), slopes(&[(q(1, 1), 2)]));
}

#[test]
fn newton_polygon_examples() {
    assert_eq!(newton_polygon(&op(&["-1/x"])), slopes(&[(q(1, 1), 1)]));
    assert_eq!(newton_polygon(&op(&["-1/x", "0"])), slopes(&[(q(1, 2), 2)]));
    assert_eq!(newton_polygon(&op(&["0", "-1"])), slopes(&[(q(0, 1), 2)]));
    assert_eq!(
        newton_polygon(&op(&["x", "-1 + x^2"])),
        slopes(&[(q(0, 1), 2)])
    );
    // Lowest point at i = 1 hides the higher point at i = 0: slopes 0 and 3.
    assert_eq!(
        newton_polygon(&op(&["1/x", "1/x^3"])),
        slopes(&[(q(0, 1), 1), (q(3, 1), 1)])
    );
}

#[test]
fn katz_rank_examples() {
    let reg = katz_rank(&module(&[&["x", "1"], &["c1", "y"]])).unwrap();
    assert!(reg.is_regular());
    assert_eq!(reg.leading_poly, UPoly::one());

    let k = katz_rank(&DiffModule::rank1(s("1/x"))).unwrap();
    assert_eq!(k.rho, q(1, 1));
    assert_eq!(k.h0, Some(Matrix::identity(1)));
    assert_eq!(k.leading_poly, shifted_power(1, &Scalar::one()));

    let k = katz_rank(&DiffModule::rank1(s("y/x"))).unwrap();
    assert_eq!(k.leading_poly, shifted_power(1, &s("y")));
}

#[test]
fn katz_ramified_leading_poly_descends() {
    // θ² − y/x: slope 1/2, e = 2; φ(x) = x − 4y in the unramified variable
    // since θ_{x'} = 2θ_x turns the equation into θ'² − 4y·x'^{−2}.
    let k = katz_rank(&DiffModule::companion(&op(&["-y/x", "0"])).unwrap()).unwrap();
    assert_eq!(k.rho, q(1, 2));
    assert_eq!(k.ramification, 2);
    assert_eq!(k.mu_rho, 2);
    assert_eq!(k.leading_poly, shifted_power(1, &s("4*y")));
}

#[test]
fn leading_divisor_examples() {
    let d = leading_divisor(&module(&[&["x", "0"], &["0", "1"]]), None).unwrap();
    assert!(d.is_zero());
    assert_eq!(d.phi, UPoly::one());

    let d = leading_divisor(&DiffModule::rank1(s("y/x")), None).unwrap();
    assert_eq!(d.phi, shifted_power(1, &s("y")));
    assert_eq!(d.degree, 1);

    let d = leading_divisor(&DiffModule::diagonal(&[s("y/x"), s("-y/x")]).unwrap(), None).unwrap();
    assert_eq!(d.phi, shifted_power(2, &s("y^2")));
    assert_eq!(d.degree, 2);

    let d = leading_divisor(&DiffModule::rank1(s("1/(x*y)")), None).unwrap();
    assert_eq!(d.phi, shifted_power(1, &s("1/y")));
}

#[test]
fn turning_point_is_reported() {
    // The leading coefficient 1/(y−1) is not invertible in A = ℚ[y]_y.
    let m = DiffModule::rank1(s("1/(x*(y - 1)) + 1/(x^2*y)"));
    let loc = vec![fuchsian_core::scalar::Poly::var(Var::Y)];
    let ok = leading_divisor(&m, Some(&loc)).unwrap();
    assert_eq!(ok.phi, shifted_power(2, &s("1/y")));
    let m = DiffModule::rank1(s("1/(x^2*(y - 1))"));
    match leading_divisor(&m, Some(&loc)) {
        Err(Error::CoefficientNotInA { denominator }) => assert_eq!(denominator, "y - 1"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn is_regular_examples() {
    assert!(is_regular(&module(&[&["x", "y"], &["1", "x^2"]])).unwrap());
    assert!(!is_regular(&DiffModule::rank1(s("1/x"))).unwrap());
    assert!(!is_regular(&DiffModule::companion(&op(&["-1/x", "0"])).unwrap()).unwrap());
}

#[test]
fn saturation_examples() {
    let reg = module(&[&["x", "y"], &["1", "x^2"]]);
    let lat = saturate(&reg, default_saturation_cap(&reg))
        .unwrap()
        .unwrap();
    assert_eq!(lat.index(), 0);

    // Λ_k = x^{−k}Λ_0 never stabilizes.
    let irr = DiffModule::rank1(s("1/x"));
    assert_eq!(saturation_oracle(&irr, 10), Ok(false));
    assert_eq!(
        saturation_oracle(&irr, 1),
        Err(Error::CapTooSmall {
            cap: 1,
            required: 2
        })
    );

    // θ² − xθ − x²: slope 0.
    let comp = DiffModule::companion(&op(&["-x^2", "-x"])).unwrap();
    assert!(saturation_oracle(&comp, default_saturation_cap(&comp)).unwrap());

    // A pole in the matrix does not prevent regularity: Λ_1 = <e1/x, e2> is stable.
    let shifted = module(&[&["0", "1/x"], &["0", "0"]]);
    assert!(saturation_oracle(&shifted, default_saturation_cap(&shifted)).unwrap());
    assert!(is_regular(&shifted).unwrap());
}

#[test]
fn residue_exponent_examples() {
    let triv = residue_exponents(&module(&[&["0", "0"], &["0", "0"]])).unwrap();
    assert_eq!(triv.len(), 2);
    assert!(triv
        .0
        .iter()
        .all(|c| c.is_rational() && c.rational == q(0, 1)));

    let c1 = ExponentClass::from_scalar(&s("c1")).unwrap();
    assert_eq!(
        residue_exponents(&DiffModule::rank1(s("c1"))).unwrap().0,
        vec![c1.clone()]
    );
    assert_eq!(
        residue_exponents(&DiffModule::rank1(s("c1 + 5 + x")))
            .unwrap()
            .0,
        vec![c1]
    );

    let half = residue_exponents(&DiffModule::rank1(s("-1/2 + c2"))).unwrap();
    assert_eq!(half.to_string(), "{c2 + 1/2}");

    assert_eq!(
        residue_exponents(&DiffModule::rank1(s("1/x"))),
        Err(Error::NotRegular)
    );
    let irr = module(&[&["0", "2"], &["1", "0"]]);
    assert!(matches!(
        residue_exponents(&irr),
        Err(Error::IrrationalExponents(_))
    ));
}

#[test]
fn residue_on_saturated_lattice() {
    // ∇ has a pole in the matrix but is regular; residue of the log lattice
    // has eigenvalues c1 and c1 + 1, both c1 mod ℤ.
    let m = module(&[&["c1", "1/x"], &["0", "c1 + 1"]]);
    let ex = residue_exponents(&m).unwrap();
    assert_eq!(ex.to_string(), "{c1, c1}");
}

#[test]
fn leading_matrix_matches_recomputed_basis() {
    // Recompute H from the ramified module and the basis x'^{kp}∇'^k m.
    let m = DiffModule::companion(&op(&["-1/x^3 + c1/x", "1/x"])).unwrap();
    let k = katz_rank(&m).unwrap();
    let e = k.ramification;
    let p = (k.rho.clone() * Rational::from_integer(e.into())).to_integer();
    let p: i64 = p.try_into().unwrap();
    let mr = m.ramify(e).unwrap();
    let mut cols = Vec::new();
    let mut cur = k
        .cyclic_vector
        .iter()
        .map(|c| c.ramify(Var::X, e))
        .collect::<Vec<_>>();
    for j in 0..m.rank() {
        let scale = Scalar::var(Var::X).pow(j as i64 * p).unwrap();
        cols.push(cur.iter().map(|c| c * &scale).collect());
        cur = mr.apply(&cur);
    }
    let b = Matrix::from_columns(&cols);
    let xp = Scalar::var(Var::X).pow(p).unwrap();
    let h = mr.gauge(&b).unwrap().theta_matrix().scale(&xp);
    let h0 = h.try_map(|a| a.at_zero(Var::X)).unwrap();
    assert_eq!(Some(h0), k.h0);
}

fn small_poly() -> impl Strategy<Value = String> {
    let term = (-3i64..=3, 0u32..=2, 0u32..=1).prop_map(|(k, a, b)| format!("{k}*x^{a}*y^{b}"));
    prop::collection::vec(term, 1..3).prop_map(|t| t.join(" + "))
}

/// Entry with pole order at most `r` along `x = 0`.
fn entry(r: u32) -> impl Strategy<Value = Scalar> {
    (small_poly(), 0..=r).prop_map(|(p, k)| &s(&p) * &Scalar::var(Var::X).pow(-(k as i64)).unwrap())
}

fn module_strategy() -> impl Strategy<Value = DiffModule> {
    (1usize..=3)
        .prop_flat_map(|n| prop::collection::vec(entry(2), n * n).prop_map(move |es| (n, es)))
        .prop_map(|(n, es)| DiffModule::new(Matrix::square_from_flat(n, es).unwrap()).unwrap())
}

/// Polynomial gauge with `det G(0) ≠ 0`: unipotent times a diagonal of units.
fn module_and_gauge() -> impl Strategy<Value = (DiffModule, Matrix)> {
    module_strategy().prop_flat_map(|m| {
        let n = m.rank();
        (Just(m), gauge_strategy(n))
    })
}

fn gauge_strategy(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(small_poly(), n * n).prop_map(move |es| {
        let mut g = Matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                if i < j {
                    g.set(i, j, s(&es[i * n + j]));
                } else if i > j {
                    g.set(i, j, &s(&es[i * n + j]) * &Scalar::var(Var::X));
                }
            }
        }
        g
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rank_one_law(p in small_poly(), lead in -4i64..=4, r in 1u32..=4) {
        prop_assume!(lead != 0);
        let f = s(&format!("{lead}/x^{r} + ({p})/x^{}", r - 1));
        let k = katz_rank(&DiffModule::rank1(f.clone())).unwrap();
        prop_assert_eq!(k.rho, q(r as i64, 1));
        let (_, coeffs) = f.laurent(Var::X, 1);
        prop_assert_eq!(k.leading_poly, shifted_power(r as usize, &coeffs[0]));
    }

    #[test]
    fn gauge_invariance((m, g) in module_and_gauge()) {
        let mg = m.gauge(&g).unwrap();
        let a = katz_rank(&m).unwrap();
        let b = katz_rank(&mg).unwrap();
        prop_assert_eq!(&a.slopes, &b.slopes);
        prop_assert_eq!(&a.rho, &b.rho);
        prop_assert_eq!(&a.eigen_poly().monic(), &b.eigen_poly().monic());
    }

    #[test]
    fn direct_sum_unions_slopes(a in module_strategy(), b in module_strategy()) {
        prop_assume!(a.rank() + b.rank() <= 4);
        let ka = katz_rank(&a).unwrap();
        let kb = katz_rank(&b).unwrap();
        let ks = katz_rank(&a.direct_sum(&b).unwrap()).unwrap();
        prop_assert_eq!(ks.slopes, ka.slopes.union(&kb.slopes));
        prop_assert_eq!(ks.rho, ka.rho.max(kb.rho));
    }

    #[test]
    fn ramification_scales_slopes(m in module_strategy(), e in 1u32..=3) {
        let k = katz_rank(&m).unwrap();
        let kr = katz_rank(&m.ramify(e).unwrap()).unwrap();
        prop_assert_eq!(kr.slopes, k.slopes.scaled(e));
    }

    #[test]
    fn newton_agrees_with_saturation(m in module_strategy()) {
        let cap = default_saturation_cap(&m);
        prop_assert_eq!(is_regular(&m).unwrap(), saturation_oracle(&m, cap).unwrap());
    }

    #[test]
    fn exponents_invariant_under_x_power_gauge(a in -3i64..=3, b in -3i64..=3, k in 0i64..=3) {
        let m = DiffModule::diagonal(&[s(&format!("c1 + {a}")), s(&format!("c2 + {b} + x"))]).unwrap();
        let g = Matrix::diagonal(&[Scalar::var(Var::X).pow(k).unwrap(), Scalar::var(Var::X).pow(-k).unwrap()]);
        let before = residue_exponents(&m).unwrap();
        let after = residue_exponents(&m.gauge(&g).unwrap()).unwrap();
        prop_assert_eq!(before, after);
    }
}
