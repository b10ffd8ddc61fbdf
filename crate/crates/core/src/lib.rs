//! Null curves in 3-dimensional Minkowski space (metric dx² + dy² − dz²).
//!
//! Every non-degenerate null curve parametrized by pseudo-arc length can be
//! built from a scalar generator f through
//!
//! ```text
//! α′ = (ε / 2f′) (2f, f² − 1, f² + 1),
//! ```
//!
//! and its torsion is then the Schwarzian derivative S(f). This crate
//! synthesizes such curves by adaptive quadrature, evaluates their Cartan
//! frames in closed form, and checks the torsion identity and related
//! invariants against a catalog of curves with known closed forms.
//!
//! ```
//! use nullcurve::{make_generator, synthesize, CurveSpec, GeneratorKind, Orientation, Vec3};
//!
//! let gen = make_generator(GeneratorKind::Identity).unwrap();
//! let spec = CurveSpec::new(gen, Orientation::Positive, 0.0, Vec3::ZERO).unwrap();
//! let curve = synthesize(&spec, &[0.0, 1.0], 1e-10).unwrap();
//! let p = curve.samples[1].pos;
//! assert!((p - Vec3::new(0.5, -1.0 / 3.0, 2.0 / 3.0)).max_abs() < 1e-12);
//! ```

// Tabulated constants keep all published digits; NaN-rejecting checks are
// written as negated comparisons on purpose.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod airy;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod fd;
pub mod frenet;
pub mod generator;
pub mod io;
pub mod minkowski;
pub mod quadrature;
pub mod schwarzian;
pub mod special;
pub mod synthesis;

pub use airy::{airy_eval, airy_generator, AiryEval, AirySpec};
pub use catalog::{
    catalog_entries, check_torsion_identity, default_catalog, slant_axis, verify_entry, CatalogEntry, EntryKind,
    VerificationReport,
};
pub use error::{Error, Result};
pub use frenet::{
    frame_at, frenet_residuals, torsion_from_acceleration, torsion_schwarzian, FrameDiagnostics, FrenetFrame,
};
pub use generator::{
    make_generator, validate_generator, CustomGenerator, Generator, GeneratorKind, Interval, ValidationReport,
};
pub use minkowski::{causal_class, det3, mink_inner, CausalClass, Vec3};
pub use schwarzian::{mobius_apply, mobius_jet, schwarzian_fd, schwarzian_of_jet, Jet3, MobiusMap};
pub use synthesis::{integrand, linspace, synthesize, CurveSpec, Orientation, Sample, SampledCurve};
