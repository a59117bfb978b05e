//! Exact-arithmetic substrate: rationals, closed intervals, interval unions
//! and affine maps.

mod interval;
mod rational;
mod scalar;

pub use interval::{Affine, Interval, IntervalSet};
pub use rational::{ParseRationalError, Rational};
pub use scalar::Scalar;
