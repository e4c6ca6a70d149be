//! Normalized rank-one refined linear series, Zariski volume profiles, their
//! document format, validation, and the built-in catalog.

mod catalog;
mod document;
mod validate;

use std::fmt;
use std::path::Path;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratpoly::{int, Interval, PiecewisePoly, Rational};

pub use catalog::{
    builtin, builtin_profile, builtin_series, conic_p2, set_conic_parameter, CatalogEntry,
    BUILTIN_NAMES,
};
pub use document::{parse_series_document, to_document};
pub use validate::{validate, validate_profile, Violation};

/// GIT stability class of a plane cubic or biconic curve (declared input).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GitClass {
    Stable,
    Polystable,
    StrictlySemistable,
    Unstable,
}

impl GitClass {
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim().to_ascii_lowercase().as_str() {
            "stable" => Ok(GitClass::Stable),
            "polystable" => Ok(GitClass::Polystable),
            "strictly-semistable" | "semistable" => Ok(GitClass::StrictlySemistable),
            "unstable" => Ok(GitClass::Unstable),
            other => Err(Error::Parse(format!("unknown GIT class `{other}`"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GitClass::Stable => "stable",
            GitClass::Polystable => "polystable",
            GitClass::StrictlySemistable => "strictly-semistable",
            GitClass::Unstable => "unstable",
        }
    }
}

/// The curve carried by the fixed part on a surface target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveKind {
    Conic,
    PlaneCubic { git_class: GitClass },
    Biconic { git_class: GitClass },
}

impl CurveKind {
    pub fn git_class(&self) -> Option<GitClass> {
        match self {
            CurveKind::Conic => None,
            CurveKind::PlaneCubic { git_class } | CurveKind::Biconic { git_class } => {
                Some(*git_class)
            }
        }
    }

    pub fn with_git_class(&self, class: GitClass) -> CurveKind {
        match self {
            CurveKind::Conic => CurveKind::Conic,
            CurveKind::PlaneCubic { .. } => CurveKind::PlaneCubic { git_class: class },
            CurveKind::Biconic { .. } => CurveKind::Biconic { git_class: class },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CurveKind::Conic => "conic",
            CurveKind::PlaneCubic { .. } => "plane-cubic",
            CurveKind::Biconic { .. } => "biconic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryPoint {
    pub label: String,
    pub coeff: Rational,
}

/// `Σ coeff_i · p_i` on the projective line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BoundaryDivisor {
    pub points: Vec<BoundaryPoint>,
}

impl BoundaryDivisor {
    pub fn new(points: impl IntoIterator<Item = (String, Rational)>) -> Self {
        BoundaryDivisor {
            points: points
                .into_iter()
                .map(|(label, coeff)| BoundaryPoint { label, coeff })
                .collect(),
        }
    }

    pub fn total(&self) -> Rational {
        self.points.iter().map(|p| &p.coeff).sum()
    }

    pub fn coeff(&self, label: &str) -> Option<&Rational> {
        self.points
            .iter()
            .find(|p| p.label == label)
            .map(|p| &p.coeff)
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TargetKind {
    ProjLine { boundary: BoundaryDivisor },
    ProjPlane { curve: CurveKind },
    QuadricSurface { curve: CurveKind },
}

/// The model `X_r` the series lives on, with `L` its ample generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TargetModel {
    pub kind: TargetKind,
    /// `vol(L)`: 1 for `O(1)` on P¹ or P², 2 for `O(1,1)` on P¹×P¹.
    pub base_degree: Rational,
}

impl TargetModel {
    pub fn proj_line(boundary: BoundaryDivisor) -> Self {
        TargetModel {
            kind: TargetKind::ProjLine { boundary },
            base_degree: Rational::one(),
        }
    }

    pub fn proj_plane(curve: CurveKind) -> Self {
        TargetModel {
            kind: TargetKind::ProjPlane { curve },
            base_degree: Rational::one(),
        }
    }

    pub fn quadric(curve: CurveKind) -> Self {
        TargetModel {
            kind: TargetKind::QuadricSurface { curve },
            base_degree: int(2),
        }
    }

    pub fn dim(&self) -> u32 {
        match self.kind {
            TargetKind::ProjLine { .. } => 1,
            _ => 2,
        }
    }

    /// `vol(L)` of the generator for this model.
    pub fn generator_volume(&self) -> Rational {
        match self.kind {
            TargetKind::QuadricSurface { .. } => int(2),
            _ => Rational::one(),
        }
    }

    /// `(−K)·L^{dim−1}`: 2 on P¹, 3 on P², 4 on P¹×P¹.
    pub fn anticanonical_degree(&self) -> Rational {
        match self.kind {
            TargetKind::ProjLine { .. } => int(2),
            TargetKind::ProjPlane { .. } => int(3),
            TargetKind::QuadricSurface { .. } => int(4),
        }
    }

    /// `Δ_r·L^{dim−1}`; the surface targets carry no boundary.
    pub fn boundary_degree(&self) -> Rational {
        match &self.kind {
            TargetKind::ProjLine { boundary } => boundary.total(),
            _ => Rational::zero(),
        }
    }

    pub fn boundary(&self) -> Option<&BoundaryDivisor> {
        match &self.kind {
            TargetKind::ProjLine { boundary } => Some(boundary),
            _ => None,
        }
    }

    pub fn curve(&self) -> Option<&CurveKind> {
        match &self.kind {
            TargetKind::ProjLine { .. } => None,
            TargetKind::ProjPlane { curve } | TargetKind::QuadricSurface { curve } => Some(curve),
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            TargetKind::ProjLine { .. } => "proj-line",
            TargetKind::ProjPlane { .. } => "proj-plane",
            TargetKind::QuadricSurface { .. } => "quadric",
        }
    }
}

/// One fixed divisor `F_j` with coefficient function `k_j(α)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedPart {
    pub label: String,
    pub k: PiecewisePoly,
    /// `F_j·L^{dim−1}`.
    pub degree: Rational,
}

/// Almost-complete refined series `W_{(1,α)} = R(f(α)L) + Σ k_j(α)F_j` over
/// a moment interval.
///
/// `alpha_origin` is the parameter value at which the normalized moment
/// coordinate `α` vanishes (0 for normalized data). `scale` multiplies the
/// mobile and fixed parts when the stored data refines a submultiple of the
/// anticanonical class; it leaves the DH measure unchanged.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RefinedSeries {
    pub name: String,
    pub moment: Interval,
    pub vol: PiecewisePoly,
    pub mobile_f: PiecewisePoly,
    pub fixed_parts: Vec<FixedPart>,
    pub target: TargetModel,
    pub normalization_shifts: Vec<Rational>,
    pub alpha_origin: Rational,
    pub scale: Rational,
}

impl RefinedSeries {
    /// Builds a series whose volume is reconstructed as `vol(L)·f^{dim}`.
    pub fn from_parts(
        name: impl Into<String>,
        moment: Interval,
        mobile_f: PiecewisePoly,
        fixed_parts: Vec<FixedPart>,
        target: TargetModel,
    ) -> Self {
        let vol = mobile_f.pow(target.dim()).scale(&target.base_degree);
        RefinedSeries {
            name: name.into(),
            moment,
            vol,
            mobile_f,
            fixed_parts,
            target,
            normalization_shifts: Vec::new(),
            alpha_origin: Rational::zero(),
            scale: Rational::one(),
        }
    }

    pub fn with_shifts(mut self, shifts: Vec<Rational>) -> Self {
        self.normalization_shifts = shifts;
        self
    }

    pub fn with_origin(mut self, origin: Rational) -> Self {
        self.alpha_origin = origin;
        self
    }

    pub fn with_scale(mut self, scale: Rational) -> Self {
        self.scale = scale;
        self
    }

    /// Moment interval in the normalized coordinate `α`.
    pub fn moment_alpha(&self) -> Interval {
        self.moment.shift(&-&self.alpha_origin)
    }

    /// `α ↦ vol(W_{(1,α)})` in the normalized coordinate.
    pub fn vol_alpha(&self) -> PiecewisePoly {
        self.vol.shift(&self.alpha_origin)
    }

    pub fn mobile_alpha(&self) -> PiecewisePoly {
        self.mobile_f.shift(&self.alpha_origin)
    }

    pub fn fixed_alpha(&self, part: &FixedPart) -> PiecewisePoly {
        part.k.shift(&self.alpha_origin)
    }

    pub fn fixed_part(&self, label: &str) -> Option<&FixedPart> {
        self.fixed_parts.iter().find(|p| p.label == label)
    }

    /// Parses, reconstructs and validates a series document on disk.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        load_series(path)
    }
}

impl fmt::Display for RefinedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "series {}", self.name)?;
        writeln!(f, "  target: {}", self.target.name())?;
        writeln!(f, "  moment: {}", self.moment)?;
        writeln!(f, "  mobile f: {}", self.mobile_f)?;
        writeln!(f, "  vol: {}", self.vol)?;
        for part in &self.fixed_parts {
            writeln!(
                f,
                "  fixed {} (degree {}): {}",
                part.label,
                crate::ratpoly::format_rational(&part.degree),
                part.k
            )?;
        }
        if let Some(b) = self.target.boundary() {
            let pts: Vec<String> = b
                .points
                .iter()
                .map(|p| format!("{}·{}", crate::ratpoly::format_rational(&p.coeff), p.label))
                .collect();
            writeln!(
                f,
                "  boundary: {}",
                if pts.is_empty() {
                    "0".into()
                } else {
                    pts.join(" + ")
                }
            )?;
        }
        if let Some(c) = self.target.curve() {
            match c.git_class() {
                Some(g) => writeln!(f, "  curve: {} (GIT {})", c.name(), g.as_str())?,
                None => writeln!(f, "  curve: {}", c.name())?,
            }
        }
        if !self.alpha_origin.is_zero() {
            writeln!(
                f,
                "  alpha origin: {}",
                crate::ratpoly::format_rational(&self.alpha_origin)
            )?;
        }
        if !self.scale.is_one() {
            writeln!(
                f,
                "  scale: {}",
                crate::ratpoly::format_rational(&self.scale)
            )?;
        }
        Ok(())
    }
}

/// `t ↦ vol(L − tE)` on `[0, τ]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZariskiVolProfile {
    pub name: String,
    pub vol_of_l: Rational,
    pub profile: PiecewisePoly,
    pub threshold: Rational,
}

/// Loads and validates a series document.
pub fn load_series(path: impl AsRef<Path>) -> Result<RefinedSeries> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let series = parse_series_document(&text)?;
    let violations = validate(&series);
    if violations.is_empty() {
        Ok(series)
    } else {
        Err(Error::Validation(
            violations
                .into_iter()
                .map(|v| v.clause.to_string())
                .collect(),
        ))
    }
}
