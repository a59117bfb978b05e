use std::fmt::Debug;

use num_traits::{Num, NumRef, Signed};

/// Ordered field scalar accepted by the interval and piecewise-linear layers.
///
/// `Rational` is the instantiation used for every verified claim; `f64` and
/// `num_rational::Ratio<i64>`-style types satisfy the bound as well and are
/// handy for quick numerical exploration.
pub trait Scalar: Num + NumRef + Signed + Clone + PartialOrd + Debug {
    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::one() / Self::two()
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

impl<T: Num + NumRef + Signed + Clone + PartialOrd + Debug> Scalar for T {}
