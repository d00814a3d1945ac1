//! Numerical workbench for left-invariant foliations on Lie groups.
//!
//! A Lie algebra is represented by its structure constants in a fixed basis.
//! On top of that the crate provides semi-Riemannian metrics with adapted
//! orthonormal frames, codimension-two foliation setups with their second
//! fundamental forms and classification (conformal / semi-Riemannian /
//! minimal / totally geodesic), sectional curvature of left-invariant
//! Riemannian metrics with two independent evaluation routes, and the
//! leaf-space curvature of Riemannian foliations.

pub mod catalog;
pub mod curvature;
pub mod error;
pub mod foliation;
pub mod lie;
pub mod metric;
pub mod suite;

pub use error::{Error, Result};
pub use lie::{BracketEntry, KillingForm, LieAlgebra, SemisimplicityCheck, ValidationReport};
pub use metric::{CartanInvolution, MetricTensor, OrthonormalFrame};

pub use nalgebra::{DMatrix, DVector};

/// Default tolerance used by checkers when the caller has no better choice.
pub const DEFAULT_TOL: f64 = 1e-9;
