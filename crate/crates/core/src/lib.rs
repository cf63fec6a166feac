//! Orthogonal-order-preserving layout adjustment for rectangles.
//!
//! Given rectangles and an initial placement of their centers, find a placement in
//! which no two rectangles overlap, the horizontal and vertical order of the centers
//! is unchanged, and the bounding box is small. The crate provides:
//!
//! - [`model`]: layouts, overlap and order predicates, bounding boxes;
//! - [`lp`]: the per-cell layout LP and an exact phase-1 simplex;
//! - [`approx`]: the grid search with 2x rounding (area and perimeter), width
//!   compression and a solution verifier;
//! - [`hitting`]: axis-parallel line hitting sets for point-induced segments,
//!   exact small-instance solvers, and conversions between line sets and layouts;
//! - [`gadgets`]: point-set gadgets built from 3-CNF formulas.
//!
//! Geometry and LP code is generic over [`Scalar`]; the aliases below fix the exact
//! rational instantiation used by the algorithms.

pub mod approx;
pub mod error;
pub mod gadgets;
pub mod hitting;
pub mod lp;
pub mod model;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact rational scalar used throughout the algorithms.
pub type Rational = num_rational::BigRational;

pub type ExactLayout = model::Layout<Rational>;
pub type ExactInstance = model::Instance<Rational>;
pub type ExactBBox = model::BBox<Rational>;
pub type ExactPoint = model::Point<Rational>;
pub type ExactLpModel = lp::LpModel<Rational>;
pub type ExactPointSet = hitting::PointSet<Rational>;
pub type ExactLineSet = hitting::LineSet<Rational>;

pub type FloatLayout = model::Layout<f64>;
pub type FloatInstance = model::Instance<f64>;
pub type FloatLpModel = lp::LpModel<f64>;
