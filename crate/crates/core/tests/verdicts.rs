use kstab_core::invariants::{delta_p1, lambda_fixed};
use kstab_core::ratpoly::{int, rat, Rational, Scalar};
use kstab_core::reproduce::{run, symmetric_line, Fixtures, DEFAULT_SEED};
use kstab_core::series::{builtin_series, conic_p2, BoundaryDivisor};
use kstab_core::verdict::{complexity_one_three_points, weighted_verdict, Level};
use kstab_core::weights::{solve_soliton, weight_family, WeightSpec};
use kstab_core::Error;

fn orbifold(ms: &[i64]) -> BoundaryDivisor {
    BoundaryDivisor::new(ms.iter().enumerate().map(|(i, &m)| {
        (
            format!("q{i}"),
            Rational::from_integer(1.into()) - rat(1, m),
        )
    }))
}

#[test]
fn three_half_points() {
    let s = symmetric_line("orbifold-222", rat(3, 4), orbifold(&[2, 2, 2]));
    let one = WeightSpec::constant(int(1));
    assert_eq!(
        lambda_fixed(&s, &one).unwrap().lambda,
        Scalar::Exact(rat(1, 2))
    );
    let v = complexity_one_three_points(&s, &one).unwrap();
    assert_eq!(v.level, Level::KPolystable);
    let json = serde_json::to_value(&v).unwrap();
    assert_eq!(json["certificate"]["kind"], "three-points");
    assert_eq!(
        json["certificate"]["recomputed"]["certificate"]["model_level"],
        "KStable"
    );
}

#[test]
fn three_point_preconditions() {
    let one = WeightSpec::constant(int(1));
    // 1/2 + 2/3 + 6/7 exceeds 2
    let s = symmetric_line("orbifold-237", rat(3, 4), orbifold(&[2, 3, 7]));
    assert!(matches!(
        complexity_one_three_points(&s, &one),
        Err(Error::PreconditionFailed(_))
    ));
    let s = symmetric_line("four", rat(3, 4), orbifold(&[2, 2, 2, 2]));
    assert!(matches!(
        complexity_one_three_points(&s, &one),
        Err(Error::PreconditionFailed(_))
    ));
    let s = symmetric_line(
        "not-orbifold",
        rat(3, 4),
        BoundaryDivisor::new([
            ("a".into(), rat(2, 5)),
            ("b".into(), rat(1, 2)),
            ("c".into(), rat(1, 2)),
        ]),
    );
    assert!(matches!(
        complexity_one_three_points(&s, &one),
        Err(Error::PreconditionFailed(_))
    ));
    let surface = builtin_series("MM2.28").unwrap();
    assert!(matches!(
        complexity_one_three_points(&surface, &one),
        Err(Error::PreconditionFailed(_))
    ));
}

#[test]
fn line_verdict_ignores_weight_scale() {
    for c in [rat(1, 10), rat(1, 2), rat(3, 4), rat(4, 5)] {
        let s = conic_p2(&c);
        let base = WeightSpec::constant(int(1));
        let scaled = WeightSpec::constant(rat(7, 3));
        let a = weighted_verdict(&s, &base).unwrap();
        let b = weighted_verdict(&s, &scaled).unwrap();
        assert_eq!(a, b, "c = {c}");
        assert_eq!(delta_p1(&s, &base).unwrap(), delta_p1(&s, &scaled).unwrap());
    }
    let s = symmetric_line("sym", int(1), orbifold(&[2, 2, 3]));
    let g = WeightSpec::exponential(0.0);
    let a = lambda_fixed(&s, &g).unwrap().lambda.to_f64();
    let b = lambda_fixed(&s, &g.scaled(&rat(5, 2)))
        .unwrap()
        .lambda
        .to_f64();
    assert!((a - b).abs() < 1e-12);
}

#[test]
fn conic_surface_bridge() {
    let s = builtin_series("MM2.23b").unwrap();
    let eta0 = solve_soliton(&s, 1e-12).unwrap().eta0;
    let v = weighted_verdict(&s, &WeightSpec::exponential(eta0)).unwrap();
    assert_eq!(v.level, Level::KPolystable);
    let json = serde_json::to_value(&v).unwrap();
    assert_eq!(json["level"], "KPolystable");
    assert_eq!(json["certificate"]["kind"], "conic");
    assert_eq!(json["certificate"]["threshold"], "3/4");
    assert!(json["certificate"]["mu"]["value"].as_f64().unwrap() < 0.739237);
}

#[test]
fn cubic_git_classes() {
    let s = builtin_series("MM3.14").unwrap();
    let g = weight_family(&s, &int(2)).unwrap();
    let v = weighted_verdict(&s, &g).unwrap();
    assert_eq!(v.level, Level::KPolystable);
    let json = serde_json::to_value(&v).unwrap();
    assert_eq!(json["certificate"]["kind"], "curve-git");
    assert_eq!(json["certificate"]["git_class"], "stable");
}

#[test]
fn exact_certificates_serialize_as_fractions() {
    let v = weighted_verdict(&conic_p2(&rat(1, 2)), &WeightSpec::constant(int(1))).unwrap();
    let json = serde_json::to_value(&v).unwrap();
    assert_eq!(json["certificate"]["lambda"]["exact"], "2/3");
    assert_eq!(json["certificate"]["li"]["delta"]["exact"], "3/2");
}

#[test]
fn perturbed_catalog_fails_its_criterion() {
    let mut fixtures = Fixtures::builtin();
    let mut wrong = builtin_series("MM3.14").unwrap();
    wrong.name = "MM2.28".into();
    fixtures.replace_series(wrong);
    let outcomes = run(&fixtures, DEFAULT_SEED, Some("moments"));
    assert_eq!(outcomes.len(), 1);
    assert!(!outcomes[0].passed);

    let clean = run(&Fixtures::builtin(), DEFAULT_SEED, Some("conic"));
    assert_eq!(
        clean.iter().map(|o| o.id).collect::<Vec<_>>(),
        vec![1, 2, 3]
    );
    assert!(clean.iter().all(|o| o.passed));
}
