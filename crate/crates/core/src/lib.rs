//! Weighted K-stability invariants for log Fano pairs whose torus action has
//! a rank-one refinement.
//!
//! The crate is layered bottom-up:
//!
//! * [`ratpoly`]: exact rationals, piecewise polynomials, closed-form
//!   exponential moments and a monotone root finder;
//! * [`series`]: refined linear series and Zariski volume profiles, their
//!   TOML documents, validation and the built-in catalog;
//! * [`weights`]: weight functions on the moment interval, the modified
//!   Futaki invariant and the soliton solver;
//! * [`invariants`]: weighted volume, DH measure, S-invariants, λ and the
//!   fixed-part coefficients, δ on the projective line;
//! * [`verdict`]: stability decisions with re-checkable certificates;
//! * [`reproduce`]: the end-to-end check suite used by `kstab reproduce`.

pub mod error;
pub mod invariants;
pub mod ratpoly;
pub mod reproduce;
pub mod series;
pub mod verdict;
pub mod weights;

pub use error::{Error, ErrorClass, Result};
