//! Exact verification of sensitivity properties for two counterexample
//! dynamical systems:
//!
//! * the monoid G = ℕ₀ ∪ {∞} acting on `[0, 1]` through the tent map, with
//!   ∞ collapsing everything to 0;
//! * a cascade `F` on `Z = (X × {0}) ∪ ({0} × Y)` built from two
//!   piecewise-linear maps that alternately stretch and shrink a base
//!   interval along a super-exponential growth schedule.
//!
//! The interval and piecewise-linear layers are generic over [`Scalar`];
//! everything that certifies a claim runs on [`Rational`].

pub mod error;
pub mod exact;
pub mod monoid;
pub mod plmaps;
pub mod schedule;
pub mod sensitivity;

pub use error::{Error, Result};
pub use exact::{Affine, Interval, IntervalSet, Rational, Scalar};

/// Closed interval with exact rational endpoints.
pub type ClosedInterval = Interval<Rational>;
/// Finite union of closed rational intervals.
pub type IntervalUnion = IntervalSet<Rational>;
/// Rational affine map `x ↦ slope·x + offset`.
pub type AffineMap = Affine<Rational>;
/// Continuous piecewise-linear map with rational breakpoints.
pub type PlMap = plmaps::PiecewiseLinear<Rational>;
