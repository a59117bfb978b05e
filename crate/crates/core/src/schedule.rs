//! Growth schedule `L_n`, its prefix sums `𝓛_n`, the block geometry of the
//! spaces X and Y, and the global interval enumerations `I_n` / `J_n`.
//!
//! Blocks are described by `(base, count, piece_length, stride)` and
//! individual intervals are produced on demand. Block `b >= 1` has
//! `2^{𝓛_{b-1}} + 1` intervals, so block 4 already has more intervals than a
//! `u64` can count; global indices are `u64` and every index beyond the start
//! of block 4 falls inside it.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{ClosedInterval, Rational};

/// Largest exponent `e` for which `2^e` is materialized (the built-in schedule
/// needs `2^{𝓛_3}`, about 1.57 million bits).
const POW2_BIT_LIMIT: u64 = 1 << 22;

/// Upper limit for raised index caps; block-4 intervals carry ~1.5M-bit
/// endpoints, so iterating far past this is impractical.
pub const HARD_INDEX_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    X,
    Y,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::X => "X",
            Space::Y => "Y",
        })
    }
}

impl std::str::FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(Space::X),
            "Y" | "y" => Ok(Space::Y),
            _ => Err(Error::Parse(format!("space must be X or Y, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Paper,
    Custom,
}

/// Geometry of one block of X or Y.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDescriptor {
    pub space: Space,
    pub block: usize,
    #[serde(serialize_with = "serialize_biguint")]
    pub count: BigUint,
    pub piece_length: Rational,
    pub stride: Rational,
    pub base: Rational,
}

fn serialize_biguint<S: serde::Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(n)
}

/// `I_n` (space X) or `J_n` (space Y) with its block coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitInterval {
    pub global_index: u64,
    pub space: Space,
    pub block: usize,
    pub offset: u64,
    pub interval: ClosedInterval,
}

/// Which window of the base-interval orbit an index falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "phase", rename_all = "kebab-case")]
pub enum Window {
    /// Before `a_1`; handled by direct enumeration.
    EnumeratedHead,
    /// `n ∈ [a_k, a_k + 2^{𝓛_{2k}}]`: f contracts, g expands.
    XSlow { k: u64, anchor: u64 },
    /// `n ∈ [b_k, b_k + 2^{𝓛_{2k+1}}]`: f expands, g contracts.
    XFast { k: u64, anchor: u64 },
}

/// Outcome of [`GrowthSchedule::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScheduleCheck {
    pub valid: bool,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct GrowthSchedule {
    flavor: Flavor,
    big_l: Vec<BigUint>,
    script_l: Vec<BigUint>,
    bases: Vec<Rational>,
    /// Global index of the first interval of each block, when materializable.
    starts: Vec<Option<BigUint>>,
    index_cap: u64,
}

fn pow2(e: &BigUint) -> Option<BigUint> {
    let e = e.to_u64().filter(|&e| e <= POW2_BIT_LIMIT)?;
    Some(BigUint::one() << e)
}

impl GrowthSchedule {
    /// `L_0 = 0`, `L_1 = 2`, `L_n = 2^{𝓛_{n-1}}·2n`, materialized through
    /// `n = 4`.
    pub fn paper() -> Self {
        let mut big_l = vec![BigUint::zero(), BigUint::from(2u32)];
        let mut script_l = vec![BigUint::zero(), BigUint::from(2u32)];
        for n in 2..=4u32 {
            let prev = &script_l[n as usize - 1];
            let ln = pow2(prev).expect("built-in schedule exponents through 𝓛_3 are materializable") * (2 * n);
            let sn = prev + &ln;
            big_l.push(ln);
            script_l.push(sn);
        }
        Self::assemble(Flavor::Paper, big_l, script_l)
    }

    /// A schedule with caller-chosen `L_0..L_m` (`L_0` must be 0); the block
    /// geometry rules are the same as for the built-in schedule.
    pub fn custom(big_l: Vec<BigUint>) -> Result<Self> {
        if big_l.len() < 2 {
            return Err(Error::InvalidSchedule("need at least L_0 and L_1".into()));
        }
        if !big_l[0].is_zero() {
            return Err(Error::InvalidSchedule("L_0 must be 0".into()));
        }
        let mut script_l = Vec::with_capacity(big_l.len());
        let mut acc = BigUint::zero();
        for l in &big_l {
            acc += l;
            script_l.push(acc.clone());
        }
        Ok(Self::assemble(Flavor::Custom, big_l, script_l))
    }

    fn assemble(flavor: Flavor, big_l: Vec<BigUint>, script_l: Vec<BigUint>) -> Self {
        let blocks = script_l.len();
        let bases = (0..blocks)
            .map(|b| if b == 0 { Rational::ratio(1, 2) } else { Rational::from(script_l[b].clone()) })
            .collect();
        let mut starts = Vec::with_capacity(blocks + 1);
        starts.push(Some(BigUint::zero()));
        let mut acc = Some(BigUint::zero());
        for b in 0..blocks {
            let count = if b == 0 { Some(BigUint::one()) } else { pow2(&script_l[b - 1]).map(|p| p + 1u32) };
            acc = match (acc, count) {
                (Some(a), Some(c)) => Some(a + c),
                _ => None,
            };
            starts.push(acc.clone());
        }
        let mut s = Self { flavor, big_l, script_l, bases, starts, index_cap: 0 };
        s.index_cap = s.default_cap();
        s
    }

    /// Last index of block 3 (or of the last block, for shorter schedules).
    fn default_cap(&self) -> u64 {
        let last = self.script_l.len().min(4);
        self.starts[last].as_ref().and_then(|s| s.to_u64()).map_or(u64::MAX, |s| s - 1).min(HARD_INDEX_CAP)
    }

    /// Raises (or lowers) the highest global index that may be located.
    pub fn with_index_cap(mut self, cap: u64) -> Result<Self> {
        if cap > HARD_INDEX_CAP {
            return Err(Error::CapExceeded(format!("requested index cap {cap} exceeds hard limit {HARD_INDEX_CAP}")));
        }
        let last = self.script_l.len();
        if let Some(end) = self.starts[last].as_ref().and_then(|s| s.to_u64()) {
            if cap >= end {
                return Err(Error::CapExceeded(format!("index {cap} lies past the last block")));
            }
        }
        self.index_cap = cap;
        Ok(self)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn index_cap(&self) -> u64 {
        self.index_cap
    }

    /// Highest block index with a known base `𝓛_b`.
    pub fn max_block(&self) -> usize {
        self.script_l.len() - 1
    }

    /// `(L_n, 𝓛_n)`.
    pub fn growth_values(&self, n: usize) -> Result<(BigUint, BigUint)> {
        match (self.big_l.get(n), self.script_l.get(n)) {
            (Some(l), Some(s)) => Ok((l.clone(), s.clone())),
            _ => Err(Error::CapExceeded(format!("schedule index {n} exceeds feasibility cap {}", self.max_block()))),
        }
    }

    pub fn script_l(&self, n: usize) -> Result<&BigUint> {
        self.script_l.get(n).ok_or_else(|| {
            Error::CapExceeded(format!("schedule index {n} exceeds feasibility cap {}", self.max_block()))
        })
    }

    /// `(piece_length, stride)` of block `b` in `space`.
    pub fn block_shape(space: Space, b: usize) -> (Rational, Rational) {
        if b == 0 {
            return (Rational::one(), Rational::one());
        }
        let b = b as i64;
        match (space, b % 2 == 1) {
            // odd block 2n-1 = b, so 2n = b + 1
            (Space::X, true) => (Rational::ratio(1, b + 1), Rational::one()),
            (Space::Y, true) => (Rational::from(b), Rational::from(b + 1)),
            // even block 2n = b
            (Space::X, false) => (Rational::from(b), Rational::from(b + 1)),
            (Space::Y, false) => (Rational::ratio(1, b + 1), Rational::one()),
        }
    }

    /// `2^{𝓛_{b-1}} + 1` for `b >= 1`, 1 for block 0.
    pub fn block_count(&self, b: usize) -> Result<BigUint> {
        if b == 0 {
            return Ok(BigUint::one());
        }
        let e = self.script_l(b - 1)?;
        pow2(e)
            .map(|p| p + 1u32)
            .ok_or_else(|| Error::CapExceeded(format!("block {b} count 2^{e}+1 is not materializable")))
    }

    pub fn block_descriptor(&self, space: Space, b: usize) -> Result<BlockDescriptor> {
        let base = self
            .bases
            .get(b)
            .cloned()
            .ok_or_else(|| Error::CapExceeded(format!("block {b} exceeds feasibility cap {}", self.max_block())))?;
        let (piece_length, stride) = Self::block_shape(space, b);
        Ok(BlockDescriptor { space, block: b, count: self.block_count(b)?, piece_length, stride, base })
    }

    /// Global index of the first interval of block `b`.
    pub fn block_start(&self, b: usize) -> Option<&BigUint> {
        self.starts.get(b)?.as_ref()
    }

    /// The `offset`-th interval of block `b`.
    pub fn interval_at(&self, space: Space, b: usize, offset: &BigUint) -> Result<ClosedInterval> {
        let base = self
            .bases
            .get(b)
            .ok_or_else(|| Error::CapExceeded(format!("block {b} exceeds feasibility cap {}", self.max_block())))?;
        if let Ok(count) = self.block_count(b) {
            if offset >= &count {
                return Err(Error::Domain(format!("offset {offset} outside block {b} of {count} intervals")));
            }
        }
        let (len, stride) = Self::block_shape(space, b);
        let lo = if offset.is_zero() {
            base.clone()
        } else {
            base + &(stride * &Rational::from(BigInt::from(offset.clone())))
        };
        let hi = &lo + &len;
        ClosedInterval::new(lo, hi)
    }

    /// `(block, offset)` of global index `n`, without building the interval.
    pub fn locate_block(&self, n: u64) -> Result<(usize, u64)> {
        let nb = BigUint::from(n);
        for b in 0..=self.max_block() {
            let start = self.starts[b].as_ref().and_then(|s| s.to_u64());
            let Some(start) = start else { break };
            match &self.starts[b + 1] {
                Some(end) if &nb >= end => continue,
                _ => return Ok((b, n - start)),
            }
        }
        Err(Error::CapExceeded(format!("index {n} lies beyond the materializable blocks")))
    }

    /// `I_n` or `J_n`.
    pub fn block_locate(&self, space: Space, n: u64) -> Result<OrbitInterval> {
        if n > self.index_cap {
            return Err(Error::CapExceeded(format!("index {n} exceeds cap {}", self.index_cap)));
        }
        let (block, offset) = self.locate_block(n)?;
        let interval = self.interval_at(space, block, &BigUint::from(offset))?;
        Ok(OrbitInterval { global_index: n, space, block, offset, interval })
    }

    /// `2^{𝓛_1} + ⋯ + 2^{𝓛_top}`; `None` when some term is too large to
    /// materialize (then the sum exceeds every representable index).
    fn pow2_sum(&self, top: usize) -> Result<Option<BigUint>> {
        let mut acc = BigUint::zero();
        for j in 1..=top {
            match pow2(self.script_l(j)?) {
                Some(p) => acc += p,
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }

    /// `a_k = 2^{𝓛_1}+⋯+2^{𝓛_{2k-1}} + 2k + 2`.
    pub fn a_k(&self, k: u64) -> Result<Option<BigUint>> {
        Ok(self.pow2_sum(2 * k as usize - 1)?.map(|s| s + (2 * k + 2)))
    }

    /// `b_k = 2^{𝓛_1}+⋯+2^{𝓛_{2k}} + 2k + 3`.
    pub fn b_k(&self, k: u64) -> Result<Option<BigUint>> {
        Ok(self.pow2_sum(2 * k as usize)?.map(|s| s + (2 * k + 3)))
    }

    /// Classifies `n` by the window ranges of the base-interval orbit.
    pub fn window_of(&self, n: u64) -> Result<Window> {
        let nb = BigUint::from(n);
        let a1 = self.a_k(1)?.expect("a_1 is small");
        if nb < a1 {
            return Ok(Window::EnumeratedHead);
        }
        for k in 1u64.. {
            let a = self.a_k(k)?;
            let slow_end = self.pow2_sum(2 * k as usize)?.map(|s| s + (2 * k + 2));
            let b = self.b_k(k)?;
            let fast_end = self.pow2_sum(2 * k as usize + 1)?.map(|s| s + (2 * k + 3));
            let within = |end: &Option<BigUint>| end.as_ref().is_none_or(|e| &nb <= e);
            if within(&slow_end) {
                let anchor = a.and_then(|a| a.to_u64()).expect("n >= a_k, so a_k fits in u64");
                return Ok(Window::XSlow { k, anchor });
            }
            if within(&fast_end) {
                let anchor = b.and_then(|b| b.to_u64()).expect("n >= b_k, so b_k fits in u64");
                return Ok(Window::XFast { k, anchor });
            }
        }
        unreachable!("window search is bounded by the u64 range")
    }

    /// Structural validity of the block layout.
    pub fn validate(&self) -> ScheduleCheck {
        let fail = |reason: String| ScheduleCheck { valid: false, reason };
        for (n, l) in self.big_l.iter().enumerate().skip(1) {
            if l.is_zero() {
                return fail(format!("L_{n} = 0 gives a degenerate block"));
            }
        }
        if self.script_l[1] < BigUint::from(2u32) {
            return fail("𝓛_1 must be at least 2 so block 1 clears [1/2, 3/2]".into());
        }
        for space in [Space::X, Space::Y] {
            for b in 1..=self.max_block() {
                let (len, stride) = Self::block_shape(space, b);
                if stride <= len {
                    return fail(format!("{space} block {b}: stride {stride} does not clear piece length {len}"));
                }
                if b == self.max_block() {
                    continue;
                }
                let count = match self.block_count(b) {
                    Ok(c) => c,
                    Err(_) => return fail(format!("{space} block {b}: count is not materializable")),
                };
                let last = match self.interval_at(space, b, &(count - 1u32)) {
                    Ok(i) => i,
                    Err(e) => return fail(e.to_string()),
                };
                if last.hi() >= &self.bases[b + 1] {
                    return fail(format!(
                        "{space} block {b} ends at {} which reaches block {} at 𝓛_{} = {}",
                        last.hi(),
                        b + 1,
                        b + 1,
                        self.bases[b + 1]
                    ));
                }
            }
        }
        ScheduleCheck {
            valid: true,
            reason: format!("blocks 0..={} are pairwise disjoint in X and Y", self.max_block()),
        }
    }
}
