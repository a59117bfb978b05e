use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Ambient, GElement};
use crate::error::{Error, Result};

/// Eventually periodic subset of ℕ₀ (or of G, with an ∞ flag).
///
/// `n < threshold` is a member iff `n ∈ finite_part`; `n >= threshold` is a
/// member iff `n mod period ∈ residues`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubsetDesc {
    ambient: Ambient,
    finite_part: BTreeSet<u64>,
    threshold: u64,
    period: u64,
    residues: BTreeSet<u64>,
    contains_infinity: bool,
}

impl SubsetDesc {
    pub fn new(
        ambient: Ambient,
        finite_part: BTreeSet<u64>,
        threshold: u64,
        period: u64,
        residues: BTreeSet<u64>,
        contains_infinity: bool,
    ) -> Result<Self> {
        if period == 0 {
            return Err(Error::InvalidSubset("period must be at least 1".into()));
        }
        if let Some(&x) = finite_part.iter().find(|&&x| x >= threshold) {
            return Err(Error::InvalidSubset(format!("finite part element {x} is not below T={threshold}")));
        }
        if let Some(&r) = residues.iter().find(|&&r| r >= period) {
            return Err(Error::InvalidSubset(format!("residue {r} is not below p={period}")));
        }
        if contains_infinity && ambient == Ambient::Naturals {
            return Err(Error::InvalidSubset("∞ is not an element of ℕ₀".into()));
        }
        Ok(Self { ambient, finite_part, threshold, period, residues, contains_infinity })
    }

    /// The whole ambient monoid.
    pub fn full(ambient: Ambient) -> Self {
        Self::new(ambient, BTreeSet::new(), 0, 1, BTreeSet::from([0]), ambient == Ambient::Extended)
            .expect("well-formed")
    }

    pub fn empty(ambient: Ambient) -> Self {
        Self::new(ambient, BTreeSet::new(), 0, 1, BTreeSet::new(), false).expect("well-formed")
    }

    /// A finite set of naturals, optionally with ∞.
    pub fn finite<I: IntoIterator<Item = u64>>(ambient: Ambient, elems: I, with_infinity: bool) -> Result<Self> {
        let finite_part: BTreeSet<u64> = elems.into_iter().collect();
        let threshold = finite_part.iter().next_back().map_or(0, |m| m + 1);
        Self::new(ambient, finite_part, threshold, 1, BTreeSet::new(), with_infinity)
    }

    /// `{n : n >= start}` (plus ∞ when requested).
    pub fn tail_from(ambient: Ambient, start: u64, with_infinity: bool) -> Result<Self> {
        Self::new(ambient, BTreeSet::new(), start, 1, BTreeSet::from([0]), with_infinity)
    }

    /// `{n >= threshold : n mod period ∈ residues}`.
    pub fn residue_class<I: IntoIterator<Item = u64>>(
        ambient: Ambient,
        threshold: u64,
        period: u64,
        residues: I,
    ) -> Result<Self> {
        Self::new(ambient, BTreeSet::new(), threshold, period, residues.into_iter().collect(), false)
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }
    pub fn finite_part(&self) -> &BTreeSet<u64> {
        &self.finite_part
    }
    pub fn threshold(&self) -> u64 {
        self.threshold
    }
    pub fn period(&self) -> u64 {
        self.period
    }
    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }
    pub fn contains_infinity(&self) -> bool {
        self.contains_infinity
    }

    pub fn contains_n(&self, n: u64) -> bool {
        if n < self.threshold {
            self.finite_part.contains(&n)
        } else {
            self.residues.contains(&(n % self.period))
        }
    }

    /// Membership; ∞ is never a member of a subset of ℕ₀.
    pub fn contains(&self, g: GElement) -> bool {
        match g {
            GElement::Finite(n) => self.contains_n(n),
            GElement::Infinity => self.contains_infinity,
        }
    }

    /// True iff the set has finitely many elements.
    pub fn is_finite(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty() && self.finite_part.is_empty() && !self.contains_infinity
    }

    /// Exact complement within the ambient monoid.
    pub fn complement(&self) -> Self {
        let finite_part = (0..self.threshold).filter(|n| !self.finite_part.contains(n)).collect();
        let residues = (0..self.period).filter(|r| !self.residues.contains(r)).collect();
        Self {
            ambient: self.ambient,
            finite_part,
            threshold: self.threshold,
            period: self.period,
            residues,
            contains_infinity: self.ambient == Ambient::Extended && !self.contains_infinity,
        }
    }

    /// `{t + x : x ∈ self}`.
    pub fn translate(&self, t: GElement) -> Result<Self> {
        match t {
            GElement::Infinity => {
                if self.ambient == Ambient::Naturals {
                    return Err(Error::InvalidSubset("cannot translate a subset of ℕ₀ by ∞".into()));
                }
                if self.is_empty() {
                    Ok(self.clone())
                } else {
                    Self::finite(Ambient::Extended, [], true)
                }
            }
            GElement::Finite(t) => {
                let p = self.period;
                Ok(Self {
                    ambient: self.ambient,
                    finite_part: self.finite_part.iter().map(|x| x + t).collect(),
                    threshold: self.threshold + t,
                    period: p,
                    residues: self.residues.iter().map(|r| (r + t) % p).collect(),
                    contains_infinity: self.contains_infinity,
                })
            }
        }
    }

    /// Length of one full period past every threshold involved; membership
    /// of two descriptions agrees everywhere iff it agrees below this bound.
    fn comparison_horizon(&self, other: &Self) -> u64 {
        let l = num_integer::lcm(self.period, other.period);
        self.threshold.max(other.threshold) + l
    }

    /// Set equality, independent of representation.
    pub fn same_set(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.contains_infinity == other.contains_infinity
            && (0..self.comparison_horizon(other)).all(|n| self.contains_n(n) == other.contains_n(n))
    }

    /// Smallest `m >= start` that is a member, if any.
    pub fn next_member(&self, start: u64) -> Option<u64> {
        if start < self.threshold {
            if let Some(&x) = self.finite_part.range(start..).next() {
                return Some(x);
            }
        }
        let from = start.max(self.threshold);
        (from..from + self.period).find(|&n| self.contains_n(n))
    }
}

/// Random description for property tests and oracle cross-checks.
pub fn random_subset<R: Rng>(rng: &mut R, ambient: Ambient, max_threshold: u64, max_period: u64) -> SubsetDesc {
    let threshold = rng.gen_range(0..=max_threshold);
    let period = rng.gen_range(1..=max_period);
    let finite_part = (0..threshold).filter(|_| rng.gen_bool(0.5)).collect();
    // bias toward the extreme residue sets, which carry the interesting verdicts
    let residues = match rng.gen_range(0..4) {
        0 => BTreeSet::new(),
        1 => (0..period).collect(),
        _ => (0..period).filter(|_| rng.gen_bool(0.5)).collect(),
    };
    let contains_infinity = ambient == Ambient::Extended && rng.gen_bool(0.5);
    SubsetDesc::new(ambient, finite_part, threshold, period, residues, contains_infinity).expect("well-formed")
}

fn fmt_set(f: &mut fmt::Formatter<'_>, s: &BTreeSet<u64>) -> fmt::Result {
    f.write_str("{")?;
    for (i, x) in s.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("}")
}

/// Text form `ambient=G|N; finite={a,b}; T=<n>; p=<n>; R={r,...}; inf=yes|no`.
impl fmt::Display for SubsetDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ambient={}; finite=", self.ambient)?;
        fmt_set(f, &self.finite_part)?;
        write!(f, "; T={}; p={}; R=", self.threshold, self.period)?;
        fmt_set(f, &self.residues)?;
        write!(f, "; inf={}", if self.contains_infinity { "yes" } else { "no" })
    }
}

fn parse_set(key: &str, v: &str) -> Result<BTreeSet<u64>> {
    let inner = v
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("{key} must be a braced list like {{1,2}}, got {v:?}")))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|_| Error::Parse(format!("{key}: {t:?} is not a natural number"))))
        .collect()
}

fn parse_nat(key: &str, v: &str) -> Result<u64> {
    v.parse().map_err(|_| Error::Parse(format!("{key}: {v:?} is not a natural number")))
}

impl FromStr for SubsetDesc {
    type Err = Error;

    /// Missing keys default to `finite={}; T=0; p=1; R={}; inf=no`;
    /// `ambient` is required.
    fn from_str(s: &str) -> Result<Self> {
        let mut ambient = None;
        let (mut finite, mut t, mut p, mut r, mut inf) = (BTreeSet::new(), 0, 1, BTreeSet::new(), false);
        let mut seen = BTreeSet::new();
        for clause in s.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let (k, v) =
                clause.split_once('=').ok_or_else(|| Error::Parse(format!("clause {clause:?} is not key=value")))?;
            let (k, v) = (k.trim(), v.trim());
            if !seen.insert(k.to_string()) {
                return Err(Error::Parse(format!("duplicate key {k:?}")));
            }
            match k {
                "ambient" => {
                    ambient = Some(match v {
                        "G" => Ambient::Extended,
                        "N" => Ambient::Naturals,
                        _ => return Err(Error::Parse(format!("ambient must be G or N, got {v:?}"))),
                    })
                }
                "finite" => finite = parse_set(k, v)?,
                "T" => t = parse_nat(k, v)?,
                "p" => p = parse_nat(k, v)?,
                "R" => r = parse_set(k, v)?,
                "inf" => {
                    inf = match v {
                        "yes" => true,
                        "no" => false,
                        _ => return Err(Error::Parse(format!("inf must be yes or no, got {v:?}"))),
                    }
                }
                _ => return Err(Error::Parse(format!("unknown key {k:?}"))),
            }
        }
        let ambient = ambient.ok_or_else(|| Error::Parse("missing ambient=G|N".into()))?;
        SubsetDesc::new(ambient, finite, t, p, r, inf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GElement::*;

    fn evens() -> SubsetDesc {
        SubsetDesc::residue_class(Ambient::Naturals, 0, 2, [0]).unwrap()
    }

    #[test]
    fn complement_examples() {
        let inf_only = SubsetDesc::finite(Ambient::Extended, [], true).unwrap();
        let c = inf_only.complement();
        assert!(!c.contains(Infinity));
        assert!((0..100).all(|n| c.contains_n(n)));
        assert!(c.same_set(&SubsetDesc::tail_from(Ambient::Extended, 0, false).unwrap()));

        let odds = SubsetDesc::residue_class(Ambient::Naturals, 0, 2, [1]).unwrap();
        assert!(evens().complement().same_set(&odds));

        let b = SubsetDesc::new(Ambient::Naturals, BTreeSet::from([1]), 5, 3, BTreeSet::from([0]), false).unwrap();
        let c = b.complement();
        for n in 0..=20 {
            assert_ne!(b.contains_n(n), c.contains_n(n), "n={n}");
        }
    }

    #[test]
    fn translate_examples() {
        assert_eq!(evens().translate(Finite(0)).unwrap(), evens());
        let shifted = evens().translate(Finite(3)).unwrap();
        for n in 0..=20 {
            assert_eq!(shifted.contains_n(n), n >= 3 && (n - 3) % 2 == 0, "n={n}");
        }
        let b = SubsetDesc::finite(Ambient::Extended, [2, 4], true).unwrap();
        let t = b.translate(Infinity).unwrap();
        assert!(t.same_set(&SubsetDesc::finite(Ambient::Extended, [], true).unwrap()));
        assert!(evens().translate(Infinity).is_err());
    }

    #[test]
    fn rejects_malformed() {
        assert!(SubsetDesc::new(Ambient::Naturals, BTreeSet::new(), 0, 0, BTreeSet::new(), false).is_err());
        assert!(SubsetDesc::new(Ambient::Naturals, BTreeSet::from([5]), 5, 1, BTreeSet::new(), false).is_err());
        assert!(SubsetDesc::new(Ambient::Naturals, BTreeSet::new(), 0, 2, BTreeSet::from([2]), false).is_err());
        assert!(SubsetDesc::new(Ambient::Naturals, BTreeSet::new(), 0, 1, BTreeSet::new(), true).is_err());
    }

    #[test]
    fn grammar_round_trip() {
        let s = "ambient=G; finite={}; T=0; p=1; R={0}; inf=no";
        let b: SubsetDesc = s.parse().unwrap();
        assert_eq!(b.to_string(), s);
        assert!(!b.contains(Infinity) && b.contains_n(17));
        let b: SubsetDesc = "ambient=N; finite={1, 3}; T=5; p=3; R={0,2}".parse().unwrap();
        assert_eq!(b.to_string(), "ambient=N; finite={1,3}; T=5; p=3; R={0,2}; inf=no");
        assert!("finite={}".parse::<SubsetDesc>().is_err());
        assert!("ambient=Z".parse::<SubsetDesc>().is_err());
        assert!("ambient=N; inf=yes".parse::<SubsetDesc>().is_err());
        assert!("ambient=N; T=1; T=2".parse::<SubsetDesc>().is_err());
        assert!("ambient=N; q=1".parse::<SubsetDesc>().is_err());
    }

    #[test]
    fn next_member_scans_head_then_tail() {
        let b = SubsetDesc::new(Ambient::Naturals, BTreeSet::from([2]), 6, 4, BTreeSet::from([3]), false).unwrap();
        assert_eq!(b.next_member(0), Some(2));
        assert_eq!(b.next_member(3), Some(7));
        assert_eq!(b.next_member(8), Some(11));
        assert_eq!(SubsetDesc::finite(Ambient::Naturals, [1], false).unwrap().next_member(2), None);
    }
}
