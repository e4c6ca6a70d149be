use std::path::Path;

use kstab_core::ratpoly::parse_rational;
use kstab_core::series::{
    builtin, load_series, set_conic_parameter, CatalogEntry, GitClass, RefinedSeries, TargetKind,
};
use kstab_core::weights::{solve_soliton, weight_family, WeightSpec};
use kstab_core::{Error, Result};

use crate::Args;

pub enum Input {
    Series(RefinedSeries),
    Profile(kstab_core::series::ZariskiVolProfile),
}

/// Resolves the positional input: a catalog name first, then a file path.
pub fn load(args: &Args) -> Result<Input> {
    let name = args
        .input
        .as_deref()
        .ok_or_else(|| Error::Parse("missing input: a built-in name or a series file".into()))?;
    let entry = match builtin(name) {
        Ok(CatalogEntry::Series(s)) => Input::Series(s),
        Ok(CatalogEntry::Profile(z)) => Input::Profile(z),
        Err(Error::UnknownName(_)) if Path::new(name).is_file() => {
            Input::Series(load_series(name)?)
        }
        Err(e) => return Err(e),
    };
    match entry {
        Input::Series(s) => Ok(Input::Series(adjust(s, args)?)),
        profile => Ok(profile),
    }
}

pub fn load_series_only(args: &Args) -> Result<RefinedSeries> {
    match load(args)? {
        Input::Series(s) => Ok(s),
        Input::Profile(z) => Err(Error::PreconditionFailed(format!(
            "{} is a volume profile; this command needs a refined series",
            z.name
        ))),
    }
}

fn adjust(mut s: RefinedSeries, args: &Args) -> Result<RefinedSeries> {
    if let Some(c) = &args.c {
        s = set_conic_parameter(&s, &parse_rational(c)?)?;
    }
    if let Some(git) = &args.git {
        let class = GitClass::parse(git)?;
        match &mut s.target.kind {
            TargetKind::ProjPlane { curve } | TargetKind::QuadricSurface { curve }
                if curve.git_class().is_some() =>
            {
                *curve = curve.with_git_class(class);
            }
            _ => {
                return Err(Error::PreconditionFailed(format!(
                    "{} carries no curve with a GIT class",
                    s.name
                )))
            }
        }
    }
    Ok(s)
}

/// Parses `--weight`.
pub fn weight(spec: &str, s: &RefinedSeries, tol: f64) -> Result<WeightSpec> {
    let spec = spec.trim();
    if spec == "soliton" {
        return Ok(WeightSpec::exponential(solve_soliton(s, tol)?.eta0));
    }
    if let Some(c) = spec.strip_prefix("constant:") {
        return Ok(WeightSpec::constant(parse_rational(c)?));
    }
    if let Some(eta) = spec.strip_prefix("exp:") {
        let eta: f64 = eta
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("`{eta}` is not a number")))?;
        return Ok(WeightSpec::exponential(eta));
    }
    if let Some(c) = spec.strip_prefix("family:") {
        return weight_family(s, &parse_rational(c)?);
    }
    if Path::new(spec).is_file() {
        let text =
            std::fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
        return WeightSpec::from_toml(&text);
    }
    Err(Error::Parse(format!(
        "unknown weight `{spec}`; expected constant:R, exp:F, soliton, family:C or a weight file"
    )))
}
