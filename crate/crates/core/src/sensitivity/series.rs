use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::exceeds;
use crate::error::{Error, Result};
use crate::monoid::{Ambient, SubsetDesc};
use crate::plmaps::{orbit_interval_closed_form, seeded_image, tent_image, BaseOrbit};
use crate::schedule::{GrowthSchedule, Space};
use crate::{ClosedInterval, Interval, IntervalSet, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum System {
    #[serde(rename = "example1")]
    Example1,
    #[serde(rename = "example2-X")]
    Example2X,
    #[serde(rename = "example2-Y")]
    Example2Y,
}

impl System {
    pub fn space(self) -> Option<Space> {
        match self {
            System::Example1 => None,
            System::Example2X => Some(Space::X),
            System::Example2Y => Some(Space::Y),
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::Example1 => "example1",
            System::Example2X => "example2-X",
            System::Example2Y => "example2-Y",
        })
    }
}

impl FromStr for System {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "example1" => Ok(System::Example1),
            "example2-X" | "example2-x" => Ok(System::Example2X),
            "example2-Y" | "example2-y" => Ok(System::Example2Y),
            _ => Err(Error::Parse(format!("unknown system {s:?}; expected example1, example2-X or example2-Y"))),
        }
    }
}

/// Exact diameters of the images of a seed over a contiguous index range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiamSeries {
    pub system: System,
    pub seed: ClosedInterval,
    pub entries: Vec<(u64, Rational)>,
    /// Example 1 only: diameter of `∞·U = {0}`.
    pub infinity_diam: Option<Rational>,
    /// Example 1 only: least n with `tentⁿ(U) = [0, 1]`, if reached.
    pub covering_time: Option<u64>,
}

impl DiamSeries {
    pub fn range(&self) -> Option<(u64, u64)> {
        Some((self.entries.first()?.0, self.entries.last()?.0))
    }
}

fn unit() -> ClosedInterval {
    Interval::new(Rational::zero(), Rational::one()).expect("ordered")
}

fn example1_series(seed: &ClosedInterval, range: RangeInclusive<u64>) -> Result<DiamSeries> {
    let full = unit();
    if !full.contains_interval(seed) {
        return Err(Error::Domain(format!("seed {seed} not inside [0, 1]")));
    }
    let (start, end) = range.into_inner();
    let mut entries = Vec::with_capacity(end.saturating_sub(start) as usize + 1);
    let mut cur = IntervalSet::from(seed.clone());
    let mut covering_time = None;
    let mut n = 0u64;
    loop {
        let here = cur.hull().expect("image of a nonempty set");
        if here == full {
            covering_time = Some(n);
            // [0, 1] is mapped onto itself from here on
            entries.extend((n.max(start)..=end).map(|m| (m, Rational::one())));
            break;
        }
        if n >= start {
            entries.push((n, here.length()));
        }
        if n == end {
            break;
        }
        cur = tent_image(&cur)?;
        n += 1;
    }
    Ok(DiamSeries {
        system: System::Example1,
        seed: seed.clone(),
        entries,
        infinity_diam: Some(Rational::zero()),
        covering_time,
    })
}

fn check_cap(s: &GrowthSchedule, end: u64) -> Result<()> {
    if end > s.index_cap() {
        return Err(Error::CapExceeded(format!("index {end} exceeds cap {}", s.index_cap())));
    }
    Ok(())
}

/// Diameters by exact step-by-step iteration from index 0.
pub fn diam_series(
    s: &GrowthSchedule,
    system: System,
    seed: &ClosedInterval,
    range: RangeInclusive<u64>,
) -> Result<DiamSeries> {
    let Some(space) = system.space() else {
        return example1_series(seed, range);
    };
    let (start, end) = range.into_inner();
    check_cap(s, end)?;
    let mut orbit = BaseOrbit::new(s, space, seed.clone())?;
    let mut entries = Vec::with_capacity(end.saturating_sub(start) as usize + 1);
    loop {
        let n = orbit.index();
        if n >= start {
            entries.push((n, orbit.image().length()));
        }
        if n >= end {
            break;
        }
        orbit.advance()?;
    }
    Ok(DiamSeries { system, seed: seed.clone(), entries, infinity_diam: None, covering_time: None })
}

/// Same values as [`diam_series`], with the range split over `workers`
/// threads; each chunk is seeded from the closed form of its first interval.
pub fn diam_series_parallel(
    s: &GrowthSchedule,
    system: System,
    seed: &ClosedInterval,
    range: RangeInclusive<u64>,
    workers: usize,
) -> Result<DiamSeries> {
    let Some(space) = system.space() else {
        return example1_series(seed, range);
    };
    let (start, end) = range.into_inner();
    check_cap(s, end)?;
    if start > end {
        return Ok(DiamSeries {
            system,
            seed: seed.clone(),
            entries: vec![],
            infinity_diam: None,
            covering_time: None,
        });
    }
    let total = end - start + 1;
    let workers = workers.clamp(1, total as usize) as u64;
    let chunk = total.div_ceil(workers);
    let bounds: Vec<(u64, u64)> = (0..workers)
        .map(|w| (start + w * chunk, (start + (w + 1) * chunk - 1).min(end)))
        .filter(|(a, b)| a <= b)
        .collect();
    let parts: Vec<Result<Vec<(u64, Rational)>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = bounds
            .iter()
            .map(|&(a, b)| {
                scope.spawn(move || -> Result<Vec<(u64, Rational)>> {
                    let image = seeded_image(s, space, seed, a)?;
                    let mut orbit = BaseOrbit::resume(s, s.block_locate(space, a)?, image)?;
                    let mut out = Vec::with_capacity((b - a + 1) as usize);
                    loop {
                        out.push((orbit.index(), orbit.image().length()));
                        if orbit.index() >= b {
                            break;
                        }
                        orbit.advance()?;
                    }
                    Ok(out)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("series worker panicked")).collect()
    });
    let mut entries = Vec::with_capacity(total as usize);
    for p in parts {
        entries.extend(p?);
    }
    Ok(DiamSeries { system, seed: seed.clone(), entries, infinity_diam: None, covering_time: None })
}

/// Diameters from the window formulas: `(β − α)·diam(I_n)`.
pub fn diam_series_closed_form(
    s: &GrowthSchedule,
    system: System,
    seed: &ClosedInterval,
    range: RangeInclusive<u64>,
) -> Result<DiamSeries> {
    let Some(space) = system.space() else {
        return Err(Error::Domain("closed-form series exist for Example 2 only".into()));
    };
    let delta = seed.length();
    let entries = range
        .map(|n| Ok((n, &delta * &orbit_interval_closed_form(s, space, n)?.length())))
        .collect::<Result<Vec<_>>>()?;
    Ok(DiamSeries { system, seed: seed.clone(), entries, infinity_diam: None, covering_time: None })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TailStatus {
    /// `members` is exact on the whole ambient monoid.
    Certified { reason: String },
    /// `members` is exact only on the computed range.
    Bounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DSetResult {
    pub epsilon: Rational,
    pub strict: bool,
    pub range: (u64, u64),
    pub horizon: u64,
    pub members: SubsetDesc,
    pub tail: TailStatus,
    pub certificate: String,
}

impl DSetResult {
    pub fn contains(&self, n: u64) -> bool {
        self.members.contains_n(n)
    }

    /// Maximal runs `[a, b]` of members inside the computed range.
    pub fn member_runs(&self) -> Vec<(u64, u64)> {
        let mut runs = Vec::new();
        let mut open: Option<u64> = None;
        for n in self.range.0..=self.range.1 {
            match (self.contains(n), open) {
                (true, None) => open = Some(n),
                (false, Some(a)) => {
                    runs.push((a, n - 1));
                    open = None;
                }
                _ => {}
            }
        }
        if let Some(a) = open {
            runs.push((a, self.range.1));
        }
        runs
    }
}

/// `D(U, ε) = {n : diam(nU) > ε}` (or `≥ ε` when not strict) over the series.
pub fn d_set(series: &DiamSeries, epsilon: &Rational, strict: bool) -> Result<DSetResult> {
    if !epsilon.is_positive() {
        return Err(Error::Domain(format!("epsilon must be positive, got {epsilon}")));
    }
    let (lo, hi) = series.range().ok_or_else(|| Error::Domain("empty series".into()))?;
    let ambient = if series.system == System::Example1 { Ambient::Extended } else { Ambient::Naturals };
    let inf = series.infinity_diam.as_ref().is_some_and(|d| exceeds(d, epsilon, strict));
    let rel = if strict { ">" } else { "≥" };

    if let (Some(c), 0) = (series.covering_time, lo) {
        if c <= hi {
            let finite = series.entries.iter().filter(|(n, d)| *n < c && exceeds(d, epsilon, strict)).map(|(n, _)| *n);
            let residues = if exceeds(&Rational::one(), epsilon, strict) { [0].into() } else { Default::default() };
            let members = SubsetDesc::new(ambient, finite.collect(), c, 1, residues, inf)?;
            return Ok(DSetResult {
                epsilon: epsilon.clone(),
                strict,
                range: (lo, hi),
                horizon: hi,
                members,
                tail: TailStatus::Certified {
                    reason: format!("tentⁿ(U) = [0, 1] for every n ≥ {c}, so diam is 1 there; ∞·U = {{0}} has diam 0"),
                },
                certificate: format!(
                    "members decided pointwise below the covering time {c}; tail diam 1 {rel} {epsilon}"
                ),
            });
        }
    }

    let finite = series.entries.iter().filter(|(_, d)| exceeds(d, epsilon, strict)).map(|(n, _)| *n);
    let members = SubsetDesc::new(ambient, finite.collect(), hi + 1, 1, Default::default(), inf)?;
    Ok(DSetResult {
        epsilon: epsilon.clone(),
        strict,
        range: (lo, hi),
        horizon: hi,
        members,
        tail: TailStatus::Bounded,
        certificate: format!("exact for n ∈ [{lo}, {hi}] with diam {rel} {epsilon}; nothing asserted beyond n = {hi}"),
    })
}
