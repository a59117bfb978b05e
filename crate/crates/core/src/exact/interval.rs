use std::fmt;

use serde::{Deserialize, Serialize};

use super::Scalar;
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

// serialized through the `[a, b]` text form
impl<T: fmt::Display> Serialize for Interval<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de, T> Deserialize<'de> for Interval<T>
where
    T: Scalar + fmt::Display + std::str::FromStr,
    <T as std::str::FromStr>::Err: fmt::Display,
{
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self>
    where
        T: fmt::Display,
    {
        if lo > hi {
            return Err(Error::InvertedInterval { lo: lo.to_string(), hi: hi.to_string() });
        }
        Ok(Self { lo, hi })
    }

    /// Caller guarantees `lo <= hi`.
    pub(crate) fn new_unchecked(lo: T, hi: T) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn point(x: T) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn length(&self) -> T {
        self.hi.clone() - &self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &T) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Whether the open interiors overlap on a set of positive length.
    pub fn interiors_intersect(&self, other: &Self) -> Result<bool> {
        if self.is_degenerate() || other.is_degenerate() {
            return Err(Error::EmptyInterior);
        }
        let lo = if self.lo >= other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi <= other.hi { &self.hi } else { &other.hi };
        Ok(lo < hi)
    }

    pub fn into_bounds(self) -> (T, T) {
        (self.lo, self.hi)
    }
}

impl<T: fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl<T: fmt::Debug> fmt::Debug for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

impl<T: Scalar + fmt::Display> std::str::FromStr for Interval<T>
where
    T: std::str::FromStr,
    <T as std::str::FromStr>::Err: fmt::Display,
{
    type Err = Error;

    /// Parses the `[a, b]` text form.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("interval {s:?} must look like [a, b]")))?;
        let (a, b) =
            inner.split_once(',').ok_or_else(|| Error::Parse(format!("interval {s:?} must look like [a, b]")))?;
        let p = |t: &str| t.trim().parse::<T>().map_err(|e| Error::Parse(e.to_string()));
        Self::new(p(a)?, p(b)?)
    }
}

/// Finite union of closed intervals, kept sorted, disjoint and with touching
/// parts merged.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(bound(serialize = "T: fmt::Display"))]
pub struct IntervalSet<T> {
    parts: Vec<Interval<T>>,
}

impl<T: Scalar> IntervalSet<T> {
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// Sorts and coalesces overlapping or touching parts.
    pub fn normalize(mut parts: Vec<Interval<T>>) -> Self {
        parts.sort_by(|a, b| a.lo.partial_cmp(&b.lo).expect("scalar comparison is total on interval endpoints"));
        let mut merged: Vec<Interval<T>> = Vec::with_capacity(parts.len());
        for p in parts {
            match merged.last_mut() {
                Some(last) if p.lo <= last.hi => {
                    if p.hi > last.hi {
                        last.hi = p.hi;
                    }
                }
                _ => merged.push(p),
            }
        }
        Self { parts: merged }
    }

    pub fn parts(&self) -> &[Interval<T>] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `max(hi) - min(lo)` over the parts.
    pub fn diameter(&self) -> Result<T> {
        match (self.parts.first(), self.parts.last()) {
            (Some(first), Some(last)) => Ok(last.hi.clone() - &first.lo),
            _ => Err(Error::EmptyDiameter),
        }
    }

    /// The convex hull, if non-empty.
    pub fn hull(&self) -> Option<Interval<T>> {
        Some(Interval::new_unchecked(self.parts.first()?.lo.clone(), self.parts.last()?.hi.clone()))
    }

    pub fn contains(&self, x: &T) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }
}

impl<T: Scalar> From<Interval<T>> for IntervalSet<T> {
    fn from(i: Interval<T>) -> Self {
        Self { parts: vec![i] }
    }
}

impl<T: fmt::Display> fmt::Display for IntervalSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("{}");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∪ ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for IntervalSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.parts).finish()
    }
}

/// `x ↦ slope·x + offset` with nonzero slope.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Affine<T> {
    slope: T,
    offset: T,
}

impl<T: Scalar> Affine<T> {
    pub fn new(slope: T, offset: T) -> Result<Self> {
        if slope.is_zero() {
            return Err(Error::ZeroSlope);
        }
        Ok(Self { slope, offset })
    }

    pub fn identity() -> Self {
        Self { slope: T::one(), offset: T::zero() }
    }

    /// The unique increasing affine bijection carrying `from` onto `to`.
    pub fn between(from: &Interval<T>, to: &Interval<T>) -> Result<Self> {
        if from.is_degenerate() || to.is_degenerate() {
            return Err(Error::EmptyInterior);
        }
        let slope = to.length() / from.length();
        let offset = if slope.is_one() { to.lo.clone() - &from.lo } else { to.lo.clone() - slope.clone() * &from.lo };
        Ok(Self { slope, offset })
    }

    pub fn slope(&self) -> &T {
        &self.slope
    }

    pub fn offset(&self) -> &T {
        &self.offset
    }

    pub fn apply(&self, x: &T) -> T {
        if self.slope.is_one() {
            x.clone() + &self.offset
        } else {
            self.slope.clone() * x + &self.offset
        }
    }

    /// `{m(x) : x ∈ j}`, endpoints ordered by the sign of the slope.
    pub fn image(&self, j: &Interval<T>) -> Interval<T> {
        let a = self.apply(&j.lo);
        let b = self.apply(&j.hi);
        if self.slope.is_positive() {
            Interval::new_unchecked(a, b)
        } else {
            Interval::new_unchecked(b, a)
        }
    }

    pub fn inverse(&self) -> Self {
        let slope = T::one() / self.slope.clone();
        let offset = -(slope.clone() * &self.offset);
        Self { slope, offset }
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &Self) -> Self {
        Self { slope: other.slope.clone() * &self.slope, offset: other.slope.clone() * &self.offset + &other.offset }
    }
}
