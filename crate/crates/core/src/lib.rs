//! Exact lattice arithmetic for bidouble covers of rational surfaces.
//!
//! The crate enumerates numerical curve classes on blowups of the plane,
//! classifies the numerical invariants of `Z2^2`-actions on surfaces of
//! general type with `p_g = 0` and `K^2 = 7`, verifies the building data of
//! explicit covers and emits the results as certificates.

pub mod certificate;
pub mod classify;
pub mod cohomology;
pub mod cover;
pub mod curves;
pub mod error;
pub mod expr;
pub mod lattice;
pub mod surface_file;

pub use certificate::{Certificate, Row, RowStatus};
pub use classify::{classify, CaseStatus, Classification, NumericalCase};
pub use cover::{fixture, verify_fixture, CoverData, Fixture};
pub use curves::{CurveConfiguration, NamedCurve, Role};
pub use error::{Error, Result};
pub use lattice::{DivisorClass, SurfaceLattice};
