use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use kstab_core::invariants::{
    delta_p1, dh, lambda_fixed, s_from_zariski, DeltaReport, LabeledValue,
};
use kstab_core::ratpoly::{format_rational, parse_rational, to_f64, Rational, Scalar};
use kstab_core::reproduce::{render_line, run as run_checks, Fixtures};
use kstab_core::series::{RefinedSeries, TargetKind, ZariskiVolProfile};
use kstab_core::verdict::{weighted_verdict, Certificate, Verdict, WEIGHT_TOL};
use kstab_core::weights::{
    futaki_g, solve_soliton, weight_condition, weight_family, weighted_moment, WeightSpec,
};
use kstab_core::{Error, Result};

use crate::input::{self, Input};
use crate::{Args, Command, Format};

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

pub fn run(args: &Args) -> Result<Output> {
    match args.command {
        Command::Info => info(args),
        Command::Soliton => soliton(args),
        Command::Invariants => invariants(args),
        Command::Verdict => verdict(args),
        Command::Reproduce => reproduce(args),
        Command::Sweep => sweep(args),
        Command::ExportDh => export_dh(args),
    }
}

fn json_text(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable output");
    text.push('\n');
    text
}

fn rational_json(q: &Rational) -> serde_json::Value {
    json!({ "exact": format_rational(q), "value": to_f64(q) })
}

fn info(args: &Args) -> Result<Output> {
    let format = args.format.unwrap_or(Format::Table);
    match input::load(args)? {
        Input::Series(s) => {
            let one = WeightSpec::constant(Rational::from_integer(1.into()));
            let volume = weighted_moment(&s, &one, 0)?;
            let first = weighted_moment(&s, &one, 1)?;
            if format == Format::Json {
                return Ok(Output::ok(json_text(&series_json(&s, &volume, &first))));
            }
            let mut text = s.to_string();
            let _ = writeln!(text, "  moment (α): {}", s.moment_alpha());
            let _ = writeln!(text, "  ∫ vol: {volume}");
            let _ = writeln!(text, "  ∫ α vol: {first}");
            Ok(Output::ok(text))
        }
        Input::Profile(z) => {
            let s = s_from_zariski(&z)?;
            if format == Format::Json {
                return Ok(Output::ok(json_text(&json!({
                    "name": z.name,
                    "vol_of_L": rational_json(&z.vol_of_l),
                    "threshold": rational_json(&z.threshold),
                    "profile": z.profile.to_string(),
                    "S": rational_json(&s),
                }))));
            }
            Ok(Output::ok(profile_table(&z, &s)))
        }
    }
}

fn profile_table(z: &ZariskiVolProfile, s: &Rational) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "profile {}", z.name);
    let _ = writeln!(text, "  vol(L): {}", format_rational(&z.vol_of_l));
    let _ = writeln!(text, "  τ: {}", format_rational(&z.threshold));
    let _ = writeln!(text, "  vol(L − tE): {}", z.profile);
    let _ = writeln!(text, "  S: {}", Scalar::Exact(s.clone()));
    text
}

fn series_json(s: &RefinedSeries, volume: &Scalar, first: &Scalar) -> serde_json::Value {
    let moment = s.moment_alpha();
    let fixed: Vec<_> = s
        .fixed_parts
        .iter()
        .map(|p| json!({ "label": p.label, "degree": format_rational(&p.degree), "k": p.k.to_string() }))
        .collect();
    let boundary: Option<Vec<_>> = s.target.boundary().map(|b| {
        b.points
            .iter()
            .map(|p| json!({ "label": p.label, "coeff": format_rational(&p.coeff) }))
            .collect()
    });
    let curve = s
        .target
        .curve()
        .map(|c| json!({ "kind": c.name(), "git": c.git_class().map(|g| g.as_str()) }));
    json!({
        "name": s.name,
        "target": s.target.name(),
        "moment": [format_rational(moment.lo()), format_rational(moment.hi())],
        "mobile_f": s.mobile_f.to_string(),
        "vol": s.vol.to_string(),
        "fixed": fixed,
        "boundary": boundary,
        "curve": curve,
        "origin": format_rational(&s.alpha_origin),
        "scale": format_rational(&s.scale),
        "volume": volume,
        "first_moment": first,
    })
}

fn soliton(args: &Args) -> Result<Output> {
    let s = input::load_series_only(args)?;
    let sol = solve_soliton(&s, args.tol)?;
    let text = match args.format.unwrap_or(Format::Table) {
        Format::Json => json_text(&json!({
            "eta0": sol.eta0,
            "residual": sol.residual,
            "iterations": sol.iterations,
            "scale": sol.scale,
        })),
        Format::Csv => format!(
            "eta0,residual,iterations\n{},{},{}\n",
            sol.eta0, sol.residual, sol.iterations
        ),
        Format::Table => format!(
            "eta0        {:.17}\nresidual    {:e}\niterations  {}\nscale       {:.12}\n",
            sol.eta0, sol.residual, sol.iterations, sol.scale
        ),
    };
    Ok(Output::ok(text))
}

#[derive(Serialize)]
struct Bridge {
    condition: &'static str,
    passed: bool,
}

#[derive(Serialize)]
struct InvariantsReport {
    series: String,
    weight: String,
    volume: Scalar,
    futaki: Scalar,
    weight_relative: f64,
    is_weight: bool,
    lambda: Scalar,
    mus: Vec<LabeledValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bridge: Option<Bridge>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<DeltaReport>,
}

fn bridge(s: &RefinedSeries, mus: &[LabeledValue]) -> Option<Bridge> {
    let mu = mus.first()?.value.to_f64();
    let curve = s.target.curve()?;
    Some(match curve.git_class() {
        None => Bridge {
            condition: "μ < 3/4",
            passed: mu < 0.75,
        },
        Some(_) => Bridge {
            condition: "0 < μ < 1",
            passed: mu > 0.0 && mu < 1.0,
        },
    })
}

fn invariants(args: &Args) -> Result<Output> {
    let s = match input::load(args)? {
        Input::Series(s) => s,
        Input::Profile(z) => {
            let s = s_from_zariski(&z)?;
            let text = match args.format.unwrap_or(Format::Table) {
                Format::Json => json_text(&json!({ "name": z.name, "S": rational_json(&s) })),
                _ => profile_table(&z, &s),
            };
            return Ok(Output::ok(text));
        }
    };
    let g = input::weight(&args.weight, &s, args.tol)?;
    g.check_positive(&s.moment_alpha())?;
    let wc = weight_condition(&s, &g)?;
    let lf = lambda_fixed(&s, &g)?;
    let delta = match s.target.kind {
        TargetKind::ProjLine { .. } => Some(delta_p1(&s, &g)?),
        _ => None,
    };
    let report = InvariantsReport {
        series: s.name.clone(),
        weight: g.to_string(),
        volume: weighted_moment(&s, &g, 0)?,
        futaki: futaki_g(&s, &g)?,
        weight_relative: wc.relative,
        is_weight: wc.first_moment.is_zero()
            || (!wc.first_moment.is_exact() && wc.relative <= WEIGHT_TOL),
        bridge: bridge(&s, &lf.mus),
        lambda: lf.lambda,
        mus: lf.mus,
        delta,
    };
    let text = match args.format.unwrap_or(Format::Table) {
        Format::Json => json_text(&report),
        Format::Csv => invariants_csv(&report),
        Format::Table => invariants_table(&report),
    };
    Ok(Output::ok(text))
}

fn mu_key(label: &str) -> String {
    format!("{:<12}", format!("μ[{label}]"))
}

fn invariants_table(r: &InvariantsReport) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "series      {}", r.series);
    let _ = writeln!(t, "weight      {}", r.weight);
    let _ = writeln!(t, "V^g         {}", r.volume);
    let _ = writeln!(t, "Fut_g       {}", r.futaki);
    let flag = if r.is_weight {
        "weight"
    } else {
        "not a weight"
    };
    let _ = writeln!(
        t,
        "condition   {flag} (relative first moment {:.3e})",
        r.weight_relative
    );
    let _ = writeln!(t, "λ           {}", r.lambda);
    for m in &r.mus {
        let _ = writeln!(t, "{}{}", mu_key(&m.label), m.value);
    }
    if let Some(b) = &r.bridge {
        let _ = writeln!(
            t,
            "bridge      {}: {}",
            b.condition,
            if b.passed { "pass" } else { "fail" }
        );
    }
    if let Some(d) = &r.delta {
        let _ = writeln!(t, "point       A           S                          A/S");
        for row in &d.per_point {
            let _ = writeln!(
                t,
                "{:<11} {:<11} {:<26} {}",
                row.label,
                format_rational(&row.a),
                row.s.to_string(),
                row.ratio
            );
        }
        let _ = writeln!(t, "δ           {} at {}", d.delta, d.argmin);
    }
    t
}

fn scalar_csv(x: &Scalar) -> String {
    match x {
        Scalar::Exact(q) => format_rational(q),
        Scalar::Approx(v) => format!("{v}"),
    }
}

fn invariants_csv(r: &InvariantsReport) -> String {
    let mut t = String::from("quantity,value\n");
    let _ = writeln!(t, "V^g,{}", scalar_csv(&r.volume));
    let _ = writeln!(t, "Fut_g,{}", scalar_csv(&r.futaki));
    let _ = writeln!(t, "lambda,{}", scalar_csv(&r.lambda));
    for m in &r.mus {
        let _ = writeln!(t, "mu[{}],{}", m.label, scalar_csv(&m.value));
    }
    if let Some(d) = &r.delta {
        for row in &d.per_point {
            let _ = writeln!(t, "S[{}],{}", row.label, scalar_csv(&row.s));
        }
        let _ = writeln!(t, "delta,{}", scalar_csv(&d.delta));
    }
    t
}

fn verdict_table(v: &Verdict) -> String {
    let mut t = format!("level       {}\n", v.level);
    match &v.certificate {
        Certificate::Li(li) => {
            let _ = writeln!(t, "δ           {}", li.delta);
        }
        Certificate::WeightedLine {
            lambda,
            mus,
            model_level,
            li,
        } => {
            let _ = writeln!(t, "λ           {lambda}");
            for m in mus {
                let _ = writeln!(t, "{}{}", mu_key(&m.label), m.value);
            }
            let _ = writeln!(t, "model       {model_level}");
            if let Some(slack) = &li.slack {
                let _ = writeln!(
                    t,
                    "slack       {slack} at {}",
                    li.tight_point.as_deref().unwrap_or("-")
                );
            }
            let _ = writeln!(t, "δ           {}", li.delta);
        }
        Certificate::Conic {
            lambda,
            mu,
            threshold,
        } => {
            let _ = writeln!(t, "λ           {lambda}");
            let _ = writeln!(
                t,
                "μ           {mu} (threshold {})",
                format_rational(threshold)
            );
        }
        Certificate::CurveGit {
            lambda,
            mu,
            curve,
            git_class,
        } => {
            let _ = writeln!(t, "λ           {lambda}");
            let _ = writeln!(t, "μ           {mu} ∈ (0, 1)");
            let _ = writeln!(t, "curve       {curve}, GIT {}", git_class.as_str());
        }
        Certificate::ThreePoints {
            multiplicities,
            recomputed,
        } => {
            let _ = writeln!(t, "orbifold    {multiplicities:?}");
            let _ = writeln!(t, "recomputed  {}", recomputed.level);
        }
    }
    t
}

fn verdict(args: &Args) -> Result<Output> {
    let s = input::load_series_only(args)?;
    let g = input::weight(&args.weight, &s, args.tol)?;
    let v = weighted_verdict(&s, &g)?;
    let text = match args.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&v),
        Format::Csv => format!("level\n{}\n", v.level),
        Format::Table => verdict_table(&v),
    };
    Ok(Output {
        text,
        code: v.level.exit_code() as u8,
    })
}

fn reproduce(args: &Args) -> Result<Output> {
    let outcomes = run_checks(&Fixtures::builtin(), args.seed, args.only.as_deref());
    if outcomes.is_empty() {
        return Err(Error::Parse(format!(
            "no criterion matches `{}`",
            args.only.as_deref().unwrap_or("")
        )));
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let text = match args.format.unwrap_or(Format::Table) {
        Format::Json => json_text(&outcomes),
        Format::Csv => {
            let mut t = String::from("id,group,passed\n");
            for o in &outcomes {
                let _ = writeln!(t, "{},{},{}", o.id, o.group, o.passed);
            }
            t
        }
        Format::Table => {
            let mut t: String = outcomes.iter().map(|o| render_line(o) + "\n").collect();
            let _ = writeln!(t, "{passed}/{} criteria passed", outcomes.len());
            t
        }
    };
    Ok(Output {
        text,
        code: if passed == outcomes.len() { 0 } else { 1 },
    })
}

struct SweepRow {
    c: Rational,
    eta: Option<f64>,
    mu: Option<Scalar>,
    verdict: String,
}

fn family_eta(g: &WeightSpec) -> Option<f64> {
    match g {
        WeightSpec::Constant { .. } => Some(0.0),
        other => other.eta(),
    }
}

fn sweep_row(s: &RefinedSeries, c: Rational) -> Result<SweepRow> {
    let g = match weight_family(s, &c) {
        Ok(g) => g,
        Err(Error::NoRoot(_)) => {
            return Ok(SweepRow {
                c,
                eta: None,
                mu: None,
                verdict: "no-exp-weight".into(),
            })
        }
        Err(e) => return Err(e),
    };
    let mu = lambda_fixed(s, &g)?.mus.into_iter().next().map(|m| m.value);
    let verdict = match weighted_verdict(s, &g) {
        Ok(v) => v.level.to_string(),
        Err(e) if e.class() != kstab_core::ErrorClass::Internal => e.kind().to_string(),
        Err(e) => return Err(e),
    };
    Ok(SweepRow {
        c,
        eta: family_eta(&g),
        mu,
        verdict,
    })
}

fn sweep(args: &Args) -> Result<Output> {
    let s = input::load_series_only(args)?;
    let params = args
        .family
        .split(',')
        .map(|c| parse_rational(c.trim()))
        .collect::<Result<Vec<_>>>()?;
    let rows = std::thread::scope(|scope| {
        let handles: Vec<_> = params
            .into_iter()
            .map(|c| {
                let s = &s;
                scope.spawn(move || sweep_row(s, c))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker"))
            .collect::<Result<Vec<_>>>()
    })?;
    let text = match args.format.unwrap_or(Format::Csv) {
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| json!({ "c": format_rational(&r.c), "eta": r.eta, "mu": r.mu, "verdict": r.verdict }))
                .collect();
            json_text(&rows)
        }
        Format::Csv | Format::Table => {
            let mut t = String::from("c,eta,mu,verdict\n");
            for r in &rows {
                let _ = writeln!(
                    t,
                    "{},{},{},{}",
                    format_rational(&r.c),
                    r.eta.map(|e| e.to_string()).unwrap_or_default(),
                    r.mu.as_ref()
                        .map(|m| m.to_f64().to_string())
                        .unwrap_or_default(),
                    r.verdict
                );
            }
            t
        }
    };
    Ok(Output::ok(text))
}

fn export_dh(args: &Args) -> Result<Output> {
    let s = input::load_series_only(args)?;
    if args.samples < 2 {
        return Err(Error::Parse(format!(
            "--samples must be at least 2, got {}",
            args.samples
        )));
    }
    let g = input::weight(&args.weight, &s, args.tol)?;
    g.check_positive(&s.moment_alpha())?;
    let d = dh(&s, &g)?;
    let support = d.support();
    let (lo, hi) = (to_f64(support.lo()), to_f64(support.hi()));
    let n = args.samples;
    let points: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let alpha = if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            };
            (alpha, d.density(alpha))
        })
        .collect();
    let text = match args.format.unwrap_or(Format::Csv) {
        Format::Json => json_text(
            &points
                .iter()
                .map(|(a, v)| json!({ "alpha": a, "density": v }))
                .collect::<Vec<_>>(),
        ),
        Format::Csv | Format::Table => {
            let mut t = String::from("alpha,density\n");
            for (a, v) in points {
                let _ = writeln!(t, "{a},{v}");
            }
            t
        }
    };
    Ok(Output::ok(text))
}
