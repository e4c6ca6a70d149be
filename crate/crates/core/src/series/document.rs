//! TOML documents for refined series.
//!
//! ```toml
//! [series]
//! name = "MM2.28"
//! target = "proj-plane"        # proj-line | proj-plane | quadric
//! vol_of_L = "1"
//! moment = ["-1", "3"]
//!
//! [[piece]]                    # mobile part f, linear on each piece
//! from = "-1"
//! to = "0"
//! f = ["3", "2"]
//!
//! [[fixed]]
//! label = "C"
//! degree = "3"
//! pieces = [{ from = "-1", to = "0", k = [] }, { from = "0", to = "3", k = ["0", "1"] }]
//!
//! [curve]
//! kind = "plane-cubic"         # conic | plane-cubic | biconic
//! git = "stable"
//! ```
//!
//! The volume is reconstructed as `vol_of_L · f^{dim}` unless `[[vol]]` pieces
//! are given explicitly, in which case validation cross-checks them.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{
    BoundaryDivisor, CurveKind, FixedPart, GitClass, RefinedSeries, TargetKind, TargetModel,
};
use crate::error::{Error, Result};
use crate::ratpoly::{format_rational, parse_rational, Interval, PiecewisePoly, Poly};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    series: Header,
    #[serde(rename = "piece")]
    pieces: Vec<MobilePiece>,
    #[serde(default, rename = "fixed", skip_serializing_if = "Vec::is_empty")]
    fixed: Vec<FixedDoc>,
    #[serde(default, rename = "vol", skip_serializing_if = "Vec::is_empty")]
    vol: Vec<VolPiece>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    boundary: Option<BoundaryDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    curve: Option<CurveDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    name: String,
    target: String,
    #[serde(rename = "vol_of_L")]
    vol_of_l: String,
    moment: [String; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    origin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scale: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    shifts: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MobilePiece {
    from: String,
    to: String,
    f: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VolPiece {
    from: String,
    to: String,
    v: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FixedDoc {
    label: String,
    degree: String,
    pieces: Vec<FixedPiece>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FixedPiece {
    from: String,
    to: String,
    k: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundaryDoc {
    points: Vec<PointDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointDoc {
    label: String,
    coeff: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveDoc {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    git: Option<String>,
}

fn poly_from(coeffs: &[String]) -> Result<Poly> {
    Ok(Poly::new(
        coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<_>>()?,
    ))
}

fn poly_to(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

fn piecewise<'a>(
    parts: impl Iterator<Item = (&'a String, &'a String, Poly)>,
) -> Result<PiecewisePoly> {
    let segments = parts
        .map(|(from, to, p)| Ok((parse_rational(from)?, parse_rational(to)?, p)))
        .collect::<Result<Vec<_>>>()?;
    PiecewisePoly::from_segments(segments)
}

/// Parses a series document; the result is not yet validated.
pub fn parse_series_document(text: &str) -> Result<RefinedSeries> {
    let doc: Document = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let header = &doc.series;
    let moment = Interval::new(
        parse_rational(&header.moment[0])?,
        parse_rational(&header.moment[1])?,
    )?;
    let vol_of_l = parse_rational(&header.vol_of_l)?;

    if doc.pieces.iter().any(|p| p.f.len() > 2) {
        return Err(Error::Parse(
            "mobile part f must be linear on each piece".into(),
        ));
    }
    let mobile_f = piecewise(
        doc.pieces
            .iter()
            .map(|p| Ok((&p.from, &p.to, poly_from(&p.f)?)))
            .collect::<Result<Vec<_>>>()?
            .into_iter(),
    )?;

    let mut fixed_parts = Vec::with_capacity(doc.fixed.len());
    for fx in &doc.fixed {
        let k = piecewise(
            fx.pieces
                .iter()
                .map(|p| Ok((&p.from, &p.to, poly_from(&p.k)?)))
                .collect::<Result<Vec<_>>>()?
                .into_iter(),
        )?;
        fixed_parts.push(FixedPart {
            label: fx.label.clone(),
            k,
            degree: parse_rational(&fx.degree)?,
        });
    }

    let curve = doc.curve.as_ref().map(parse_curve).transpose()?;
    let kind = match header.target.as_str() {
        "proj-line" => {
            if curve.is_some() {
                return Err(Error::Parse(
                    "[curve] is not allowed on a proj-line target".into(),
                ));
            }
            let points = doc
                .boundary
                .as_ref()
                .map(|b| {
                    b.points
                        .iter()
                        .map(|p| Ok((p.label.clone(), parse_rational(&p.coeff)?)))
                        .collect::<Result<Vec<_>>>()
                })
                .transpose()?
                .unwrap_or_default();
            TargetKind::ProjLine {
                boundary: BoundaryDivisor::new(points),
            }
        }
        "proj-plane" | "quadric" => {
            if doc.boundary.is_some() {
                return Err(Error::Parse(
                    "[boundary] is only allowed on a proj-line target".into(),
                ));
            }
            let curve =
                curve.ok_or_else(|| Error::Parse("surface targets need a [curve] table".into()))?;
            if header.target == "quadric" {
                TargetKind::QuadricSurface { curve }
            } else {
                TargetKind::ProjPlane { curve }
            }
        }
        other => return Err(Error::Parse(format!("unknown target `{other}`"))),
    };
    let target = TargetModel {
        kind,
        base_degree: vol_of_l,
    };

    let mut series =
        RefinedSeries::from_parts(header.name.clone(), moment, mobile_f, fixed_parts, target);
    if !doc.vol.is_empty() {
        series.vol = piecewise(
            doc.vol
                .iter()
                .map(|p| Ok((&p.from, &p.to, poly_from(&p.v)?)))
                .collect::<Result<Vec<_>>>()?
                .into_iter(),
        )?;
    }
    if let Some(origin) = &header.origin {
        series.alpha_origin = parse_rational(origin)?;
    }
    if let Some(scale) = &header.scale {
        series.scale = parse_rational(scale)?;
    }
    series.normalization_shifts = header
        .shifts
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<_>>()?;
    Ok(series)
}

fn parse_curve(doc: &CurveDoc) -> Result<CurveKind> {
    let git = doc.git.as_deref().map(GitClass::parse).transpose()?;
    match (doc.kind.as_str(), git) {
        ("conic", None) => Ok(CurveKind::Conic),
        ("conic", Some(_)) => Err(Error::Parse("a conic carries no GIT class".into())),
        ("plane-cubic", Some(g)) => Ok(CurveKind::PlaneCubic { git_class: g }),
        ("biconic", Some(g)) => Ok(CurveKind::Biconic { git_class: g }),
        ("plane-cubic" | "biconic", None) => {
            Err(Error::Parse(format!("a {} needs a `git` class", doc.kind)))
        }
        (other, _) => Err(Error::Parse(format!("unknown curve kind `{other}`"))),
    }
}

/// Serializes a series to its document form. The stored volume is omitted
/// when it equals the reconstruction from `f`.
pub fn to_document(s: &RefinedSeries) -> String {
    let reconstructed = s.mobile_f.pow(s.target.dim()).scale(&s.target.base_degree);
    let doc = Document {
        series: Header {
            name: s.name.clone(),
            target: s.target.name().to_string(),
            vol_of_l: format_rational(&s.target.base_degree),
            moment: [
                format_rational(s.moment.lo()),
                format_rational(s.moment.hi()),
            ],
            origin: (!s.alpha_origin.is_zero()).then(|| format_rational(&s.alpha_origin)),
            scale: (!s.scale.is_one()).then(|| format_rational(&s.scale)),
            shifts: s.normalization_shifts.iter().map(format_rational).collect(),
        },
        pieces: s
            .mobile_f
            .segments()
            .map(|(a, b, p)| MobilePiece {
                from: format_rational(a),
                to: format_rational(b),
                f: poly_to(p),
            })
            .collect(),
        fixed: s
            .fixed_parts
            .iter()
            .map(|fx| FixedDoc {
                label: fx.label.clone(),
                degree: format_rational(&fx.degree),
                pieces: fx
                    .k
                    .segments()
                    .map(|(a, b, p)| FixedPiece {
                        from: format_rational(a),
                        to: format_rational(b),
                        k: poly_to(p),
                    })
                    .collect(),
            })
            .collect(),
        vol: if reconstructed == s.vol {
            Vec::new()
        } else {
            s.vol
                .segments()
                .map(|(a, b, p)| VolPiece {
                    from: format_rational(a),
                    to: format_rational(b),
                    v: poly_to(p),
                })
                .collect()
        },
        boundary: s.target.boundary().map(|b| BoundaryDoc {
            points: b
                .points
                .iter()
                .map(|p| PointDoc {
                    label: p.label.clone(),
                    coeff: format_rational(&p.coeff),
                })
                .collect(),
        }),
        curve: s.target.curve().map(|c| CurveDoc {
            kind: c.name().to_string(),
            git: c.git_class().map(|g| g.as_str().to_string()),
        }),
    };
    toml::to_string(&doc).expect("series documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::catalog::{builtin_series, BUILTIN_NAMES};
    use crate::series::validate::validate;

    #[test]
    fn catalog_round_trips() {
        for name in BUILTIN_NAMES.iter().filter(|n| !n.ends_with("profile")) {
            let s = builtin_series(name).unwrap();
            let text = to_document(&s);
            let back = parse_series_document(&text).unwrap();
            assert_eq!(back, s, "{name}\n{text}");
        }
    }

    #[test]
    fn explicit_vol_is_cross_checked() {
        let text = r#"
[series]
name = "bad"
target = "proj-plane"
vol_of_L = "1"
moment = ["-1", "3"]

[[piece]]
from = "-1"
to = "0"
f = ["3", "2"]

[[piece]]
from = "0"
to = "3"
f = ["3", "-1"]

[[vol]]
from = "-1"
to = "0"
v = ["9", "12", "4"]

[[vol]]
from = "0"
to = "3"
v = ["10", "-6", "1"]

[curve]
kind = "plane-cubic"
git = "stable"
"#;
        let s = parse_series_document(text).unwrap();
        let v: Vec<_> = validate(&s).into_iter().map(|v| v.clause).collect();
        assert_eq!(v, vec!["vol = vol(L)·f^{n−r}"]);
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(
            parse_series_document("nonsense = ["),
            Err(Error::Parse(_))
        ));
        let quadratic_f = r#"
[series]
name = "x"
target = "proj-line"
vol_of_L = "1"
moment = ["0", "1"]
[[piece]]
from = "0"
to = "1"
f = ["0", "0", "1"]
"#;
        assert!(matches!(
            parse_series_document(quadratic_f),
            Err(Error::Parse(_))
        ));
        let conic_with_git = r#"
[series]
name = "x"
target = "proj-plane"
vol_of_L = "1"
moment = ["0", "1"]
[[piece]]
from = "0"
to = "1"
f = ["1"]
[curve]
kind = "conic"
git = "stable"
"#;
        assert!(matches!(
            parse_series_document(conic_with_git),
            Err(Error::Parse(_))
        ));
    }
}
