//! Piecewise-linear dynamics: the tent map, and the maps f, g realized as
//! the increasing affine bijections `I_n → I_{n+1}` and `J_n → J_{n+1}`.

use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::GElement;
use crate::schedule::{Flavor, GrowthSchedule, OrbitInterval, Space, Window};
use crate::{Affine, ClosedInterval, Interval, IntervalSet, IntervalUnion, Rational, Scalar};

/// Continuous piecewise-linear map on `[breakpoints[0], breakpoints[last]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear<T> {
    breakpoints: Vec<T>,
    pieces: Vec<Affine<T>>,
}

impl<T: Scalar> PiecewiseLinear<T> {
    pub fn new(breakpoints: Vec<T>, pieces: Vec<Affine<T>>) -> Result<Self> {
        if pieces.is_empty() || breakpoints.len() != pieces.len() + 1 {
            return Err(Error::Domain("need one more breakpoint than pieces".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("breakpoints must be strictly increasing".into()));
        }
        for (i, w) in pieces.windows(2).enumerate() {
            let x = &breakpoints[i + 1];
            if w[0].apply(x) != w[1].apply(x) {
                return Err(Error::Domain(format!("pieces {i} and {} disagree at a breakpoint", i + 1)));
            }
        }
        Ok(Self { breakpoints, pieces })
    }

    /// `x ↦ 1 − |1 − 2x|` on `[0, 1]`.
    pub fn tent() -> Self {
        let two = T::two();
        let pieces = vec![
            Affine::new(two.clone(), T::zero()).expect("nonzero slope"),
            Affine::new(-two.clone(), two).expect("nonzero slope"),
        ];
        Self::new(vec![T::zero(), T::half(), T::one()], pieces).expect("tent map is continuous")
    }

    pub fn domain(&self) -> Interval<T> {
        Interval::new_unchecked(self.breakpoints[0].clone(), self.breakpoints[self.breakpoints.len() - 1].clone())
    }

    pub fn eval(&self, x: &T) -> Result<T> {
        if !self.domain().contains(x) {
            return Err(Error::Domain(format!("{x:?} outside the map's domain")));
        }
        let i = self.breakpoints[1..self.pieces.len()].iter().take_while(|b| *b < x).count();
        Ok(self.pieces[i].apply(x))
    }

    /// Image of a closed interval; each lap it meets contributes one affine
    /// image and continuity makes their union an interval.
    pub fn image(&self, j: &Interval<T>) -> Result<Interval<T>> {
        let dom = self.domain();
        if !dom.contains_interval(j) {
            return Err(Error::Domain(format!("{j:?} not inside the map's domain")));
        }
        let mut out: Option<(T, T)> = None;
        for (i, piece) in self.pieces.iter().enumerate() {
            let lo = T::max_of(j.lo().clone(), self.breakpoints[i].clone());
            let hi = T::min_of(j.hi().clone(), self.breakpoints[i + 1].clone());
            if lo > hi {
                continue;
            }
            let img = piece.image(&Interval::new_unchecked(lo, hi));
            let (a, b) = img.into_bounds();
            out = Some(match out {
                None => (a, b),
                Some((x, y)) => (T::min_of(x, a), T::max_of(y, b)),
            });
        }
        let (lo, hi) = out.expect("nonempty interval meets some lap");
        Ok(Interval::new_unchecked(lo, hi))
    }

    pub fn image_union(&self, u: &IntervalSet<T>) -> Result<IntervalSet<T>> {
        let parts = u.parts().iter().map(|p| self.image(p)).collect::<Result<Vec<_>>>()?;
        Ok(IntervalSet::normalize(parts))
    }
}

pub fn tent<T: Scalar>(x: &T) -> T {
    if *x <= T::half() {
        T::two() * x
    } else {
        T::two() - T::two() * x
    }
}

/// Exact image of a union inside `[0, 1]` under the tent map.
pub fn tent_image<T: Scalar>(u: &IntervalSet<T>) -> Result<IntervalSet<T>> {
    PiecewiseLinear::tent().image_union(u)
}

/// `π(n, x) = tentⁿ(x)`, `π(∞, x) = 0`.
pub fn pi<T: Scalar>(g: GElement, x: &T) -> Result<T> {
    if *x < T::zero() || *x > T::one() {
        return Err(Error::Domain(format!("{x:?} outside [0, 1]")));
    }
    Ok(match g {
        GElement::Infinity => T::zero(),
        GElement::Finite(n) => (0..n).fold(x.clone(), |y, _| tent(&y)),
    })
}

/// Image of `sub ⊆ I_n` (or `J_n`) under the bijection onto the next interval.
pub fn step_image(s: &GrowthSchedule, space: Space, n: u64, sub: &ClosedInterval) -> Result<ClosedInterval> {
    let from = s.block_locate(space, n)?;
    let to = s.block_locate(space, n + 1)?;
    step_between(&from.interval, &to.interval, sub)
}

fn step_between(from: &ClosedInterval, to: &ClosedInterval, sub: &ClosedInterval) -> Result<ClosedInterval> {
    if !from.contains_interval(sub) {
        return Err(Error::OutsideCore);
    }
    Ok(Affine::between(from, to)?.image(sub))
}

fn base_interval() -> ClosedInterval {
    Interval::new_unchecked(Rational::ratio(1, 2), Rational::ratio(3, 2))
}

/// Walks the enumeration `I_0, I_1, …` (or `J_n`) one interval at a time,
/// carrying the image of a seed along.
pub struct BaseOrbit<'a> {
    schedule: &'a GrowthSchedule,
    space: Space,
    current: OrbitInterval,
    block_count: Option<u64>,
    stride: Rational,
    piece_length: Rational,
    image: ClosedInterval,
}

impl<'a> BaseOrbit<'a> {
    /// Starts at `I_0` with the image equal to `seed ⊆ [1/2, 3/2]`.
    pub fn new(schedule: &'a GrowthSchedule, space: Space, seed: ClosedInterval) -> Result<Self> {
        let start = schedule.block_locate(space, 0)?;
        if !start.interval.contains_interval(&seed) {
            return Err(Error::OutsideCore);
        }
        Self::resume(schedule, start, seed)
    }

    /// Resumes at a known `I_m` with a known image inside it.
    pub fn resume(schedule: &'a GrowthSchedule, at: OrbitInterval, image: ClosedInterval) -> Result<Self> {
        let count = schedule.block_count(at.block).ok().and_then(|c| c.to_u64());
        let (piece_length, stride) = GrowthSchedule::block_shape(at.space, at.block);
        Ok(Self { schedule, space: at.space, current: at, block_count: count, stride, piece_length, image })
    }

    pub fn index(&self) -> u64 {
        self.current.global_index
    }

    pub fn interval(&self) -> &OrbitInterval {
        &self.current
    }

    pub fn image(&self) -> &ClosedInterval {
        &self.image
    }

    /// Advances to index `n + 1`.
    pub fn advance(&mut self) -> Result<()> {
        let n = self.current.global_index + 1;
        if n > self.schedule.index_cap() {
            return Err(Error::CapExceeded(format!("index {n} exceeds cap {}", self.schedule.index_cap())));
        }
        let within = self.block_count.is_none_or(|c| self.current.offset + 1 < c);
        if within {
            // same block: f is the translation by the stride
            let lo = self.current.interval.lo() + &self.stride;
            let hi = &lo + &self.piece_length;
            let (a, b) = (self.image.lo() + &self.stride, self.image.hi() + &self.stride);
            self.current = OrbitInterval {
                global_index: n,
                space: self.space,
                block: self.current.block,
                offset: self.current.offset + 1,
                interval: Interval::new_unchecked(lo, hi),
            };
            self.image = Interval::new_unchecked(a, b);
        } else {
            let next = self.schedule.block_locate(self.space, n)?;
            self.image = step_between(&self.current.interval, &next.interval, &self.image)?;
            let count = self.schedule.block_count(next.block).ok().and_then(|c| c.to_u64());
            let (len, stride) = GrowthSchedule::block_shape(self.space, next.block);
            self.block_count = count;
            self.piece_length = len;
            self.stride = stride;
            self.current = next;
        }
        Ok(())
    }
}

/// `n`-fold image of `sub ⊆ [1/2, 3/2]`.
pub fn iterate_base_interval(s: &GrowthSchedule, space: Space, sub: &ClosedInterval, n: u64) -> Result<ClosedInterval> {
    if n > s.index_cap() {
        return Err(Error::CapExceeded(format!("index {n} exceeds cap {}", s.index_cap())));
    }
    let mut orbit = BaseOrbit::new(s, space, sub.clone())?;
    for _ in 0..n {
        orbit.advance()?;
    }
    Ok(orbit.image)
}

/// `I_n` / `J_n` from the window formulas; the head `n < a_1` is enumerated.
pub fn orbit_interval_closed_form(s: &GrowthSchedule, space: Space, n: u64) -> Result<ClosedInterval> {
    if s.flavor() != Flavor::Paper {
        return Err(Error::ClosedFormCustom);
    }
    if n > s.index_cap() {
        return Err(Error::CapExceeded(format!("index {n} exceeds cap {}", s.index_cap())));
    }
    let int = |v: u64| Rational::from(v);
    let (lo, len) = match s.window_of(n)? {
        Window::EnumeratedHead => return Ok(s.block_locate(space, n)?.interval),
        Window::XSlow { k, anchor } => {
            let base = Rational::from(s.script_l(2 * k as usize + 1)?.clone());
            let d = n - anchor;
            match space {
                Space::X => (base + int(d), Rational::ratio(1, 2 * k as i64 + 2)),
                Space::Y => (base + int(2 * (k + 1) * d), int(2 * k + 1)),
            }
        }
        Window::XFast { k, anchor } => {
            let base = Rational::from(s.script_l(2 * k as usize + 2)?.clone());
            let d = n - anchor;
            match space {
                Space::X => (base + int(d * (2 * k + 3)), int(2 * k + 2)),
                Space::Y => (base + int(d), Rational::ratio(1, 2 * k as i64 + 3)),
            }
        }
    };
    let hi = &lo + &len;
    Ok(Interval::new_unchecked(lo, hi))
}

/// Image of `seed ⊆ I_0` after `n` steps, computed in one affine map from the
/// closed form of `I_n`.
pub fn seeded_image(s: &GrowthSchedule, space: Space, seed: &ClosedInterval, n: u64) -> Result<ClosedInterval> {
    let base = base_interval();
    if !base.contains_interval(seed) {
        return Err(Error::OutsideCore);
    }
    let target = orbit_interval_closed_form(s, space, n)?;
    Ok(Affine::between(&base, &target)?.image(seed))
}

/// A subset of `Z = (X × {0}) ∪ ({0} × Y)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZSet {
    pub x_part: IntervalUnion,
    pub y_part: IntervalUnion,
}

impl ZSet {
    pub fn new(x_part: IntervalUnion, y_part: IntervalUnion) -> Result<Self> {
        if x_part.is_empty() && y_part.is_empty() {
            return Err(Error::Domain("a Z-set needs at least one nonempty part".into()));
        }
        Ok(Self { x_part, y_part })
    }

    /// Diameter of a set living on one axis. Sets on both axes are rejected:
    /// their cross distances are square roots.
    pub fn diameter(&self) -> Result<Rational> {
        match (self.x_part.is_empty(), self.y_part.is_empty()) {
            (false, true) => self.x_part.diameter(),
            (true, false) => self.y_part.diameter(),
            _ => Err(Error::Domain("diameter is only computed for sets on a single axis".into())),
        }
    }
}

impl fmt::Display for ZSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})ₓ, ({})ᵧ", self.x_part, self.y_part)
    }
}

/// One step of F: the X part advances from `I_{n_from.0}`, the Y part from
/// `J_{n_from.1}`.
pub fn z_step(s: &GrowthSchedule, zs: &ZSet, n_from: (u64, u64)) -> Result<ZSet> {
    let advance = |space: Space, n: u64, part: &IntervalUnion| -> Result<IntervalUnion> {
        if part.is_empty() {
            return Ok(IntervalSet::empty());
        }
        let parts = part.parts().iter().map(|p| step_image(s, space, n, p)).collect::<Result<Vec<_>>>()?;
        Ok(IntervalSet::normalize(parts))
    };
    Ok(ZSet { x_part: advance(Space::X, n_from.0, &zs.x_part)?, y_part: advance(Space::Y, n_from.1, &zs.y_part)? })
}
