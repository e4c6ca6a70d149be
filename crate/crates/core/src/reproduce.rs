//! The acceptance checks, runnable against the built-in catalog or a
//! modified copy of it.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Error;
use crate::invariants::{
    delta_p1, dh, lambda_fixed, lambda_identity_residual, s_from_zariski, s_point_p1, GENERIC,
};
use crate::ratpoly::quadrature::gauss_kronrod;
use crate::ratpoly::{
    exp_moment, int, rat, to_f64, Interval, PiecewisePoly, Poly, Rational, Scalar,
};
use crate::series::{
    builtin, set_conic_parameter, BoundaryDivisor, CatalogEntry, GitClass, RefinedSeries,
    TargetKind, TargetModel, ZariskiVolProfile, BUILTIN_NAMES,
};
use crate::verdict::{li_p1, weighted_verdict, Level};
use crate::weights::{
    futaki_g, is_weight, soliton_phi, solve_soliton, weight_family, weighted_moment, WeightSpec,
};

pub const DEFAULT_SEED: u64 = 0x6b73_7461_6221;

/// Upper bound on `μ` for the 2.23(b) soliton.
pub const MM2_23B_MU_BOUND: f64 = 0.739237;

/// Parameters of the weight family used by the sweeps.
pub fn sweep_parameters() -> Vec<Rational> {
    vec![int(0), rat(1, 2), int(1), int(2), int(4)]
}

/// Conic parameters checked against the closed-form δ.
pub fn conic_parameters() -> Vec<Rational> {
    vec![rat(1, 10), rat(1, 4), rat(1, 2), rat(2, 3), rat(3, 4)]
}

/// The data the checks run on, keyed by catalog name.
#[derive(Clone, Debug)]
pub struct Fixtures {
    pub series: BTreeMap<String, RefinedSeries>,
    pub profiles: BTreeMap<String, ZariskiVolProfile>,
}

impl Fixtures {
    pub fn builtin() -> Self {
        let mut series = BTreeMap::new();
        let mut profiles = BTreeMap::new();
        for name in BUILTIN_NAMES {
            match builtin(name).expect("catalog name") {
                CatalogEntry::Series(s) => {
                    series.insert(name.to_string(), s);
                }
                CatalogEntry::Profile(z) => {
                    profiles.insert(name.to_string(), z);
                }
            }
        }
        Fixtures { series, profiles }
    }

    pub fn replace_series(&mut self, s: RefinedSeries) {
        self.series.insert(s.name.clone(), s);
    }

    fn series(&self, name: &str) -> Result<&RefinedSeries, String> {
        self.series
            .get(name)
            .ok_or_else(|| format!("missing series {name}"))
    }

    fn profile(&self, name: &str) -> Result<&ZariskiVolProfile, String> {
        self.profiles
            .get(name)
            .ok_or_else(|| format!("missing profile {name}"))
    }
}

impl Default for Fixtures {
    fn default() -> Self {
        Fixtures::builtin()
    }
}

/// `vol = h·(1 − |α|)` on `[−1, 1]` over P¹ with the given boundary.
pub fn symmetric_line(name: &str, height: Rational, boundary: BoundaryDivisor) -> RefinedSeries {
    let f = PiecewisePoly::from_segments(vec![
        (
            int(-1),
            int(0),
            Poly::linear(height.clone(), height.clone()),
        ),
        (int(0), int(1), Poly::linear(height.clone(), -height)),
    ])
    .expect("two adjacent pieces");
    RefinedSeries::from_parts(
        name,
        Interval::new(int(-1), int(1)).expect("unit interval"),
        f,
        vec![],
        TargetModel::proj_line(boundary),
    )
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub id: u8,
    pub group: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type CheckFn = fn(&Fixtures, &mut ChaCha8Rng) -> Result<String, String>;

#[derive(Clone, Copy)]
pub struct Criterion {
    pub id: u8,
    pub group: &'static str,
    pub name: &'static str,
    check: CheckFn,
}

impl Criterion {
    pub fn matches(&self, filter: &str) -> bool {
        filter.split(',').map(str::trim).any(|f| {
            f.eq_ignore_ascii_case(self.group) || f.parse::<u8>().is_ok_and(|id| id == self.id)
        })
    }

    pub fn run(&self, fixtures: &Fixtures, seed: u64) -> CheckOutcome {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(self.id as u64));
        let (passed, detail) = match (self.check)(fixtures, &mut rng) {
            Ok(detail) => (true, detail),
            Err(detail) => (false, detail),
        };
        CheckOutcome {
            id: self.id,
            group: self.group,
            name: self.name,
            passed,
            detail,
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            group: "conic",
            name: "S-invariant of the weighted blowup divisor",
            check: conic_s_invariant,
        },
        Criterion {
            id: 2,
            group: "conic",
            name: "point S-values on the conic model",
            check: conic_point_values,
        },
        Criterion {
            id: 3,
            group: "conic",
            name: "δ of (P², cQ) against the closed form",
            check: conic_delta,
        },
        Criterion {
            id: 4,
            group: "soliton",
            name: "2.23(b) soliton μ below 3/4",
            check: mm2_23b_soliton,
        },
        Criterion {
            id: 5,
            group: "moments",
            name: "2.28 unweighted moments",
            check: mm2_28_moments,
        },
        Criterion {
            id: 6,
            group: "sweep",
            name: "2.28/3.14 weight sweep",
            check: cubic_sweep,
        },
        Criterion {
            id: 7,
            group: "identity",
            name: "λ-identity",
            check: lambda_identity,
        },
        Criterion {
            id: 8,
            group: "dh",
            name: "DH normalization and barycenter",
            check: dh_normalization,
        },
        Criterion {
            id: 9,
            group: "kernel",
            name: "exact kernels against quadrature",
            check: kernel_oracles,
        },
        Criterion {
            id: 10,
            group: "li",
            name: "Li criterion properties",
            check: li_properties,
        },
        Criterion {
            id: 11,
            group: "solver",
            name: "soliton solver properties",
            check: solver_properties,
        },
    ]
}

/// Runs every criterion selected by `only` (a comma-separated list of group
/// names or ids), in order.
pub fn run(fixtures: &Fixtures, seed: u64, only: Option<&str>) -> Vec<CheckOutcome> {
    criteria()
        .iter()
        .filter(|c| only.is_none_or(|f| c.matches(f)))
        .map(|c| c.run(fixtures, seed))
        .collect()
}

fn e(err: Error) -> String {
    err.to_string()
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn one() -> WeightSpec {
    WeightSpec::constant(Rational::one())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn conic_s_invariant(fx: &Fixtures, _: &mut ChaCha8Rng) -> Result<String, String> {
    let s = s_from_zariski(fx.profile("p2-wt21-profile")?).map_err(e)?;
    ensure!(s == int(1), "S = {s}, expected 1");
    Ok("S = 1".into())
}

fn conic_point_values(fx: &Fixtures, _: &mut ChaCha8Rng) -> Result<String, String> {
    let s = fx.series("conic-P2")?;
    let generic = s_point_p1(s, &one(), GENERIC).map_err(e)?;
    let p1 = s_point_p1(s, &one(), "p1").map_err(e)?;
    ensure!(
        generic == Scalar::Exact(rat(1, 6)),
        "S(generic) = {generic}, expected 1/6"
    );
    ensure!(p1 == Scalar::Exact(rat(1, 3)), "S(p1) = {p1}, expected 1/3");
    Ok("S(generic) = 1/6, S(p1) = 1/3".into())
}

fn conic_delta(fx: &Fixtures, _: &mut ChaCha8Rng) -> Result<String, String> {
    let base = fx.series("conic-P2")?;
    let mut detail = String::new();
    for c in conic_parameters() {
        let s = set_conic_parameter(base, &c).map_err(e)?;
        let report = delta_p1(&s, &one()).map_err(e)?;
        let denom = int(3) - &c * int(2);
        let expected = (int(3) / &denom).min((int(6) - &c * int(6)) / &denom);
        ensure!(
            report.delta == Scalar::Exact(expected.clone()),
            "c = {c}: δ = {}, expected {expected}",
            report.delta
        );
        let above_one = report.delta.compare(&Scalar::Exact(int(1))).is_gt();
        ensure!(
            above_one == (c < rat(3, 4)),
            "c = {c}: δ = {} on the wrong side of 1",
            report.delta
        );
        if c == rat(3, 4) {
            ensure!(
                report.argmin == "p2",
                "c = 3/4: argmin {}, expected p2",
                report.argmin
            );
        }
        let _ = write!(detail, "c={c}: δ={} ", report.delta);
    }
    Ok(detail.trim_end().to_string())
}

/// `∫ k vol e^{−ηα} / ∫ vol e^{−ηα}` by adaptive quadrature.
fn quadrature_mu(s: &RefinedSeries, eta: f64) -> f64 {
    let vol = s.vol_alpha();
    let k = s.fixed_alpha(&s.fixed_parts[0]);
    let product = k.mul(&vol).expect("same domain");
    let integrate = |h: &PiecewisePoly| -> f64 {
        h.segments()
            .map(|(a, b, p)| {
                let p = p.to_float();
                gauss_kronrod(
                    |x| p.eval(x) * (-eta * x).exp(),
                    to_f64(a),
                    to_f64(b),
                    0.0,
                    1e-12,
                )
                .value
            })
            .sum()
    };
    to_f64(&s.scale) * integrate(&product) / integrate(&vol)
}

fn mm2_23b_soliton(fx: &Fixtures, _: &mut ChaCha8Rng) -> Result<String, String> {
    let s = fx.series("MM2.23b")?;
    ensure!(!s.fixed_parts.is_empty(), "MM2.23b has no fixed part");
    let sol = solve_soliton(s, 1e-12).map_err(e)?;
    ensure!(
        sol.residual.abs() < 1e-12 * sol.scale,
        "residual {} ≥ 1e-12·{}",
        sol.residual,
        sol.scale
    );
    let g = WeightSpec::exponential(sol.eta0);
    let lf = lambda_fixed(s, &g).map_err(e)?;
    let mu = lf.mus[0].value.to_f64();
    let mu_quad = quadrature_mu(s, sol.eta0);
    ensure!(
        rel(mu, mu_quad) < 1e-9,
        "μ closed form {mu} vs quadrature {mu_quad}"
    );
    ensure!(
        mu < MM2_23B_MU_BOUND,
        "μ = {mu} not below {MM2_23B_MU_BOUND}"
    );
    let v = weighted_verdict(s, &g).map_err(e)?;
    ensure!(v.level == Level::KPolystable, "verdict {}", v.level);
    Ok(format!(
        "η₀ = {:.15}, μ = {mu:.15}, verdict {}",
        sol.eta0, v.level
    ))
}

fn mm2_28_moments(fx: &Fixtures, _: &mut ChaCha8Rng) -> Result<String, String> {
    let s = fx.series("MM2.28")?;
    let v = weighted_moment(s, &one(), 0).map_err(e)?;
    let fut = futaki_g(s, &one()).map_err(e)?;
    ensure!(v == Scalar::Exact(rat(40, 3)), "V = {v}, expected 40/3");
    ensure!(
        fut == Scalar::Exact(rat(-63, 160)),
        "Fut = {fut}, expected -63/160"
    );
    match weighted_verdict(s, &one()) {
        Err(Error::NotAWeight { .. }) => {}
        other => {
            return Err(format!(
                "constant weight gave {other:?}, expected NotAWeight"
            ))
        }
    }
    Ok("V = 40/3, Fut = -63/160, constant weight refused".into())
}

fn with_git(s: &RefinedSeries, class: GitClass) -> RefinedSeries {
    let mut out = s.clone();
    match &mut out.target.kind {
        TargetKind::ProjPlane { curve } | TargetKind::QuadricSurface { curve } => {
            *curve = curve.with_git_class(class);
        }
        TargetKind::ProjLine { .. } => {}
    }
    out
}

fn cubic_sweep(fx: &Fixtures, _: &mut ChaCha8Rng) -> Result<String, String> {
    let mut mus = Vec::new();
    for name in ["MM2.28", "MM3.14"] {
        let s = fx.series(name)?;
        for c in sweep_parameters() {
            let g = weight_family(s, &c).map_err(e)?;
            ensure!(
                is_weight(s, &g, 1e-9),
                "{name}, c = {c}: not a weight at 1e-9"
            );
            let lf = lambda_fixed(s, &g).map_err(e)?;
            let mu = lf.mus[0].value.to_f64();
            ensure!(
                mu > 0.0 && mu < 1.0,
                "{name}, c = {c}: μ = {mu} outside (0, 1)"
            );
            let stable = weighted_verdict(&with_git(s, GitClass::Stable), &g).map_err(e)?;
            ensure!(
                stable.level == Level::KPolystable,
                "{name}, c = {c}: stable cubic gave {}",
                stable.level
            );
            let unstable = weighted_verdict(&with_git(s, GitClass::Unstable), &g).map_err(e)?;
            ensure!(
                unstable.level == Level::KUnstable,
                "{name}, c = {c}: unstable cubic gave {}",
                unstable.level
            );
            mus.push(mu);
        }
    }
    let (lo, hi) = mus
        .iter()
        .fold((f64::MAX, f64::MIN), |(lo, hi), &m| (lo.min(m), hi.max(m)));
    Ok(format!("{} weights, μ ∈ [{lo:.6}, {hi:.6}]", mus.len()))
}

fn lambda_identity(fx: &Fixtures, _: &mut ChaCha8Rng) -> Result<String, String> {
    let mut count = 0;
    let mut worst: f64 = 0.0;
    for s in fx.series.values() {
        let symmetric = s
            .vol_alpha()
            .moment(1, &s.moment_alpha())
            .map_err(e)?
            .is_zero();
        for c in sweep_parameters() {
            let g = match weight_family(s, &c) {
                Ok(g) => g,
                Err(Error::NoRoot(_)) => continue,
                Err(err) => return Err(format!("{}: {err}", s.name)),
            };
            if !is_weight(s, &g, 1e-9) {
                continue;
            }
            let r = lambda_identity_residual(s, &g).map_err(e)?;
            ensure!(r.to_f64().abs() < 1e-9, "{}, c = {c}: residual {r}", s.name);
            if symmetric && matches!(g, WeightSpec::Constant { .. }) {
                ensure!(
                    r == Scalar::Exact(Rational::zero()),
                    "{}, c = {c}: residual {r} not exactly 0",
                    s.name
                );
            }
            worst = worst.max(r.to_f64().abs());
            count += 1;
        }
    }
    ensure!(count > 0, "no weights checked");
    Ok(format!(
        "{count} (series, weight) pairs, max residual {worst:.2e}"
    ))
}

fn random_weight(rng: &mut ChaCha8Rng) -> WeightSpec {
    match rng.gen_range(0..3) {
        0 => WeightSpec::constant(rat(rng.gen_range(1..20), rng.gen_range(1..7))),
        1 => WeightSpec::exponential(rng.gen_range(-1.5..1.5)),
        _ => {
            // 1 + bα + cα² with c > b²/4 has no real root
            let b = rat(rng.gen_range(-3..4), 4);
            let c = &b * &b / int(4) + rat(rng.gen_range(1..5), 8);
            WeightSpec::PolyExp {
                p: Poly::new(vec![int(1), b, c]),
                eta: rng.gen_range(-1.0..1.0),
            }
        }
    }
}

fn dh_normalization(fx: &Fixtures, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let names: Vec<&String> = fx.series.keys().collect();
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let s = &fx.series[*names.choose(rng).expect("catalog non-empty")];
        let g = random_weight(rng);
        let d = dh(s, &g).map_err(e)?;
        ensure!(
            (d.total - 1.0).abs() < 1e-12,
            "{} with {g}: ∫ dDH = {}",
            s.name,
            d.total
        );
        let mut quad = 0.0;
        for (a, b, _) in s.vol_alpha().segments() {
            quad += gauss_kronrod(|x| x * d.density(x), to_f64(a), to_f64(b), 1e-16, 1e-13).value;
        }
        let fut = futaki_g(s, &g).map_err(e)?.to_f64();
        ensure!(
            (quad + fut).abs() < 1e-12,
            "{} with {g}: barycenter {quad} vs -Fut {}",
            s.name,
            -fut
        );
        worst = worst.max((d.total - 1.0).abs()).max((quad + fut).abs());
    }
    Ok(format!("20 pairs, max deviation {worst:.2e}"))
}

fn random_rational(rng: &mut ChaCha8Rng, range: i64, denom: i64) -> Rational {
    rat(
        rng.gen_range(-range * denom..=range * denom),
        rng.gen_range(1..=denom),
    )
}

fn random_piecewise(rng: &mut ChaCha8Rng) -> PiecewisePoly {
    let pieces = rng.gen_range(1..=4);
    let mut cuts: Vec<Rational> = Vec::new();
    while cuts.len() < pieces + 1 {
        let x = random_rational(rng, 3, 6);
        if !cuts.contains(&x) {
            cuts.push(x);
        }
    }
    cuts.sort();
    let segments = cuts
        .windows(2)
        .map(|w| {
            let degree = rng.gen_range(0..=4);
            let coeffs = (0..=degree).map(|_| random_rational(rng, 4, 5)).collect();
            (w[0].clone(), w[1].clone(), Poly::new(coeffs))
        })
        .collect();
    PiecewisePoly::from_segments(segments).expect("sorted distinct cuts")
}

fn quad_pieces(f: &PiecewisePoly, k: i32, eta: f64) -> (f64, f64) {
    let mut value = 0.0;
    let mut magnitude = 0.0;
    for (a, b, p) in f.segments() {
        let p = p.to_float();
        let (a, b) = (to_f64(a), to_f64(b));
        let integrand = |x: f64| p.eval(x) * x.powi(k) * (-eta * x).exp();
        value += gauss_kronrod(integrand, a, b, 0.0, 1e-13).value;
        magnitude += gauss_kronrod(|x| integrand(x).abs(), a, b, 0.0, 1e-8).value;
    }
    (value, magnitude)
}

fn kernel_oracles(_: &Fixtures, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let f = random_piecewise(rng);
        let domain = f.domain();
        for k in 0..=3 {
            let exact = to_f64(&f.moment(k, &domain).map_err(e)?);
            let (quad, magnitude) = quad_pieces(&f, k as i32, 0.0);
            let err = (exact - quad).abs() / magnitude.max(f64::MIN_POSITIVE);
            ensure!(
                err < 1e-10,
                "polynomial {i}, moment {k}: exact {exact} vs quadrature {quad}"
            );
            worst = worst.max(err);
        }
        let eta = rng.gen_range(-3.0..3.0);
        let closed = exp_moment(&f, eta, &domain).map_err(e)?;
        let (quad, magnitude) = quad_pieces(&f, 0, eta);
        let err = (closed - quad).abs() / magnitude.max(f64::MIN_POSITIVE);
        ensure!(
            err < 1e-10,
            "polynomial {i}, η = {eta}: closed form {closed} vs quadrature {quad}"
        );
        worst = worst.max(err);
    }
    Ok(format!(
        "100 piecewise polynomials, max relative error {worst:.2e}"
    ))
}

fn random_boundary(rng: &mut ChaCha8Rng) -> BoundaryDivisor {
    loop {
        let n = rng.gen_range(0..=5);
        let points: Vec<(String, Rational)> = (0..n)
            .map(|i| {
                let coeff = if rng.gen_bool(0.1) {
                    Rational::zero()
                } else {
                    let d = rng.gen_range(2..=12);
                    rat(rng.gen_range(1..d), d)
                };
                (format!("q{i}"), coeff)
            })
            .collect();
        let b = BoundaryDivisor::new(points);
        if b.total() < int(2) {
            return b;
        }
    }
}

fn li_properties(_: &Fixtures, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let half = rat(1, 2);
    let fixed = [
        (
            vec![half.clone(), half.clone(), half.clone()],
            Level::KStable,
        ),
        (vec![rat(1, 3)], Level::KUnstable),
        (vec![], Level::KPolystable),
    ];
    for (coeffs, expected) in fixed {
        let b = BoundaryDivisor::new(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (format!("q{i}"), c.clone())),
        );
        let got = li_p1(&b).map_err(e)?.level;
        ensure!(got == expected, "{coeffs:?}: {got}, expected {expected}");
    }
    let mut counts = [0usize; 4];
    for i in 0..200 {
        let b = random_boundary(rng);
        let v = li_p1(&b).map_err(e)?;
        let mut shuffled = b.clone();
        shuffled.points.shuffle(rng);
        for (j, p) in shuffled.points.iter_mut().enumerate() {
            p.label = format!("r{j}");
        }
        let w = li_p1(&shuffled).map_err(e)?;
        ensure!(
            v.level == w.level,
            "boundary {i}: {} vs {} after permutation",
            v.level,
            w.level
        );

        if !b.points.is_empty() {
            let total = b.total();
            let min_gap = b
                .points
                .iter()
                .map(|p| Rational::one() - &p.coeff)
                .min()
                .expect("non-empty");
            let delta = int(2) * min_gap / (int(2) - total);
            ensure!(
                (v.level == Level::KStable) == (delta > int(1)),
                "boundary {i}: level {} but δ = {delta}",
                v.level
            );
            ensure!(
                v.level.is_semistable() == (delta >= int(1)),
                "boundary {i}: level {} but δ = {delta}",
                v.level
            );
        }
        counts[match v.level {
            Level::KStable => 0,
            Level::KPolystable => 1,
            Level::KSemistableNotPolystable => 2,
            Level::KUnstable => 3,
        }] += 1;
    }
    Ok(format!(
        "200 boundaries: {} stable, {} polystable, {} semistable, {} unstable",
        counts[0], counts[1], counts[2], counts[3]
    ))
}

fn solver_properties(fx: &Fixtures, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut checked = 0;
    for s in fx.series.values() {
        let phi = soliton_phi(s);
        let second = s.vol_alpha().mul_poly(&Poly::monomial(2));
        let domain = second.domain();
        for _ in 0..3 {
            let eta: f64 = rng.gen_range(-2.0..2.0);
            let h = 1e-5 * eta.abs().max(1.0);
            let (below, at, above) = (
                phi(eta - h).map_err(e)?,
                phi(eta).map_err(e)?,
                phi(eta + h).map_err(e)?,
            );
            ensure!(
                below > at && at > above,
                "{}: φ not decreasing at η = {eta}",
                s.name
            );
            let slope = (above - below) / (2.0 * h);
            let derivative = -exp_moment(&second, eta, &domain).map_err(e)?;
            ensure!(
                rel(slope, derivative) < 1e-6,
                "{}: finite difference {slope} vs φ' = {derivative} at η = {eta}",
                s.name
            );
            checked += 1;
        }
    }
    let symmetric = symmetric_line("symmetric", int(1), BoundaryDivisor::default());
    for s in [&symmetric, fx.series("conic-P2")?] {
        let eta0 = solve_soliton(s, 1e-12).map_err(e)?.eta0;
        ensure!(eta0.abs() < 1e-12, "{}: η₀ = {eta0}, expected 0", s.name);
    }
    Ok(format!(
        "{checked} finite-difference checks, symmetric η₀ = 0"
    ))
}

/// One line per outcome: `[PASS] 3 conic: ... | detail`.
pub fn render_line(o: &CheckOutcome) -> String {
    format!(
        "[{}] {:>2} {:<8} {}: {}",
        if o.passed { "PASS" } else { "FAIL" },
        o.id,
        o.group,
        o.name,
        o.detail
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_by_group_and_id() {
        let all = criteria();
        assert_eq!(all.len(), 11);
        let conic: Vec<u8> = all
            .iter()
            .filter(|c| c.matches("conic"))
            .map(|c| c.id)
            .collect();
        assert_eq!(conic, vec![1, 2, 3]);
        let mixed: Vec<u8> = all
            .iter()
            .filter(|c| c.matches("li, 5"))
            .map(|c| c.id)
            .collect();
        assert_eq!(mixed, vec![5, 10]);
    }

    #[test]
    fn symmetric_fixture_is_valid() {
        let s = symmetric_line("sym", rat(3, 4), BoundaryDivisor::default());
        assert!(crate::series::validate(&s).is_empty());
    }
}
