//! Acceptance suite: every criterion runs through the same checks as
//! `kstab reproduce`, prints one line, and is additionally pinned against
//! values computed independently at 40 significant digits.

use kstab_core::invariants::lambda_fixed;
use kstab_core::ratpoly::{rat, Scalar};
use kstab_core::reproduce::{criteria, render_line, Fixtures, DEFAULT_SEED};
use kstab_core::series::builtin_series;
use kstab_core::weights::{solve_soliton, weight_family, weighted_moment, WeightSpec};

fn check(id: u8) {
    let fixtures = Fixtures::builtin();
    let criterion = criteria()
        .into_iter()
        .find(|c| c.id == id)
        .expect("criterion id");
    let outcome = criterion.run(&fixtures, DEFAULT_SEED);
    println!("{}", render_line(&outcome));
    assert!(outcome.passed, "{}", outcome.detail);
}

/// `(η₀, μ)` of the soliton weight.
const SOLITON_ORACLE: [(&str, f64, f64); 4] = [
    (
        "MM2.23b",
        0.154_642_823_836_606_27,
        0.739_236_466_110_101_93,
    ),
    ("MM2.28", 0.937_781_559_542_535_80, 0.226_097_714_036_860_76),
    ("MM3.14", 0.526_525_555_064_059_34, 0.193_662_318_254_385_63),
    (
        "MM2.23a0",
        0.273_791_848_876_688_64,
        0.217_934_438_435_373_56,
    ),
];

fn assert_soliton(name: &str) {
    let (_, eta_ref, mu_ref) = SOLITON_ORACLE
        .iter()
        .find(|o| o.0 == name)
        .copied()
        .expect("oracle row");
    let s = builtin_series(name).unwrap();
    let sol = solve_soliton(&s, 1e-12).unwrap();
    assert!(
        (sol.eta0 - eta_ref).abs() < 1e-12,
        "{name}: η₀ = {} vs {eta_ref}",
        sol.eta0
    );
    let mu = lambda_fixed(&s, &WeightSpec::exponential(sol.eta0))
        .unwrap()
        .mus[0]
        .value
        .to_f64();
    assert!(
        ((mu - mu_ref) / mu_ref).abs() < 1e-10,
        "{name}: μ = {mu} vs {mu_ref}"
    );
}

#[test]
fn criterion_01_conic_s_invariant() {
    check(1);
}

#[test]
fn criterion_02_conic_point_s_values() {
    check(2);
}

#[test]
fn criterion_03_conic_delta() {
    check(3);
}

#[test]
fn criterion_04_mm2_23b_soliton() {
    check(4);
    assert_soliton("MM2.23b");
}

#[test]
fn criterion_05_mm2_28_unweighted_moments() {
    check(5);
    // ∫_{-1}^0 (3+2α)² = [(3+2α)³/6] = 13/3 and ∫_0^3 (3−α)² = 9;
    // ∫_{-1}^0 α(3+2α)² = −3/2 and ∫_0^3 α(3−α)² = 27/4.
    let s = builtin_series("MM2.28").unwrap();
    let one = WeightSpec::constant(rat(1, 1));
    let volume = rat(13, 3) + rat(9, 1);
    let first = rat(-3, 2) + rat(27, 4);
    assert_eq!(
        weighted_moment(&s, &one, 0).unwrap(),
        Scalar::Exact(volume.clone())
    );
    assert_eq!(
        weighted_moment(&s, &one, 1).unwrap(),
        Scalar::Exact(first.clone())
    );
    assert_eq!(-first / volume, rat(-63, 160));
}

#[test]
fn criterion_06_cubic_weight_sweep() {
    check(6);
    assert_soliton("MM2.28");
    assert_soliton("MM3.14");
    let s = builtin_series("MM2.28").unwrap();
    let g = weight_family(&s, &rat(0, 1)).unwrap();
    assert!((g.eta().unwrap() - SOLITON_ORACLE[1].1).abs() < 1e-12);
}

#[test]
fn criterion_07_lambda_identity() {
    check(7);
    assert_soliton("MM2.23a0");
}

#[test]
fn criterion_08_dh_normalization() {
    check(8);
}

#[test]
fn criterion_09_kernel_oracles() {
    check(9);
}

#[test]
fn criterion_10_li_criterion() {
    check(10);
}

#[test]
fn criterion_11_solver_properties() {
    check(11);
}
