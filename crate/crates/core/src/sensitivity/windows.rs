//! Window certificates: the index range of each window and the block the
//! orbit traverses there, derived from the block counts without ever
//! materializing `2^{𝓛_j}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::schedule::{GrowthSchedule, Space};
use crate::Rational;

/// `Σ c_j·2^{𝓛_j} + constant` over `j >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymIndex {
    terms: BTreeMap<usize, u64>,
    constant: u64,
}

impl SymIndex {
    pub fn constant(c: u64) -> Self {
        Self { terms: BTreeMap::new(), constant: c }
    }

    /// `2^{𝓛_j}`; `𝓛_0 = 0` makes `j = 0` the constant 1.
    pub fn power(j: usize) -> Self {
        if j == 0 {
            return Self::constant(1);
        }
        Self { terms: [(j, 1)].into(), constant: 0 }
    }

    /// `2^{𝓛_1} + ⋯ + 2^{𝓛_top} + c`, empty when `top = 0`.
    pub fn power_sum(top: usize, c: u64) -> Self {
        Self { terms: (1..=top).map(|j| (j, 1)).collect(), constant: c }
    }

    pub fn plus(mut self, other: &Self) -> Self {
        for (&j, &c) in &other.terms {
            *self.terms.entry(j).or_default() += c;
        }
        self.constant += other.constant;
        self
    }

    pub fn minus_const(mut self, c: u64) -> Option<Self> {
        self.constant = self.constant.checked_sub(c)?;
        Some(self)
    }

    /// Numeric value, when every power is materializable.
    pub fn eval(&self, s: &GrowthSchedule) -> Option<BigUint> {
        let mut acc = BigUint::from(self.constant);
        for (&j, &c) in &self.terms {
            let e = u64::try_from(s.script_l(j).ok()?.clone()).ok().filter(|&e| e <= 1 << 22)?;
            acc += (BigUint::one() << e) * c;
        }
        Some(acc)
    }
}

impl fmt::Display for SymIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&j, &c) in &self.terms {
            if c != 1 {
                write!(f, "{c}·")?;
            }
            write!(f, "2^𝓛_{j} + ")?;
        }
        write!(f, "{}", self.constant)
    }
}

impl Serialize for SymIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Global index of the first interval of block `b`, summed from the count
/// rule (block 0 has one interval, block `j >= 1` has `2^{𝓛_{j-1}} + 1`).
pub fn symbolic_block_start(b: usize) -> SymIndex {
    (0..b).fold(SymIndex::constant(0), |acc, j| {
        let count = if j == 0 { SymIndex::constant(1) } else { SymIndex::power(j - 1).plus(&SymIndex::constant(1)) };
        acc.plus(&count)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    /// f contracts and g stretches; the orbit runs through block `2k+1`.
    XSlow,
    /// f stretches and g contracts; the orbit runs through block `2k+2`.
    XFast,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::XSlow => "x-slow",
            Phase::XFast => "x-fast",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowCertificate {
    pub k: u64,
    pub phase: Phase,
    pub block: usize,
    pub start: SymIndex,
    pub end: SymIndex,
    /// `diam(I_n)` and `diam(J_n)` for every n in the window.
    pub x_diam: Rational,
    pub y_diam: Rational,
    pub checks: Vec<String>,
    pub holds: bool,
}

impl WindowCertificate {
    pub fn diam(&self, space: Space) -> &Rational {
        match space {
            Space::X => &self.x_diam,
            Space::Y => &self.y_diam,
        }
    }
}

/// Derives the k-th window from the block layout and compares it with the
/// window formulas: start and end index, piece lengths, and per-step
/// translation.
pub fn window_certificate(k: u64, phase: Phase) -> Result<WindowCertificate> {
    if k == 0 {
        return Err(Error::Domain("windows are indexed from k = 1".into()));
    }
    let ku = k as usize;
    let ki = k as i64;
    let (block, start_f, end_f, x_len, y_len, x_step, y_step) = match phase {
        Phase::XSlow => (
            2 * ku + 1,
            SymIndex::power_sum(2 * ku - 1, 2 * k + 2),
            SymIndex::power_sum(2 * ku, 2 * k + 2),
            Rational::ratio(1, 2 * ki + 2),
            Rational::from(2 * ki + 1),
            Rational::one(),
            Rational::from(2 * ki + 2),
        ),
        Phase::XFast => (
            2 * ku + 2,
            SymIndex::power_sum(2 * ku, 2 * k + 3),
            SymIndex::power_sum(2 * ku + 1, 2 * k + 3),
            Rational::from(2 * ki + 2),
            Rational::ratio(1, 2 * ki + 3),
            Rational::from(2 * ki + 3),
            Rational::one(),
        ),
    };
    let start = symbolic_block_start(block);
    let end = symbolic_block_start(block + 1).minus_const(1).expect("block counts are positive");
    let (xl, xs) = GrowthSchedule::block_shape(Space::X, block);
    let (yl, ys) = GrowthSchedule::block_shape(Space::Y, block);

    let mut checks = Vec::new();
    let mut holds = true;
    let mut check = |ok: bool, what: String| {
        holds &= ok;
        checks.push(format!("{} {what}", if ok { "ok" } else { "FAILED" }));
    };
    check(start == start_f, format!("block {block} starts at {start}; window formula gives {start_f}"));
    check(end == end_f, format!("block {block} ends at {end}; window formula gives {end_f}"));
    check(xl == x_len, format!("X piece length {xl} vs formula {x_len}"));
    check(yl == y_len, format!("Y piece length {yl} vs formula {y_len}"));
    check(xs == x_step, format!("X stride {xs} vs formula step {x_step}"));
    check(ys == y_step, format!("Y stride {ys} vs formula step {y_step}"));

    Ok(WindowCertificate { k, phase, block, start, end, x_diam: xl, y_diam: yl, checks, holds })
}

/// `c0 + c1·k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Lin(i64, i64);

impl Lin {
    fn at(self, k: Lin) -> Lin {
        // substitute k ↦ k.0 + k.1·k
        Lin(self.0 + self.1 * k.0, self.1 * k.1)
    }

    fn shift(self, c: i64) -> Lin {
        Lin(self.0 + c, self.1)
    }
}

/// Identities in k showing that the windows tile `[a_1, ∞)`: `b_k` follows
/// the slow window's end and `a_{k+1}` follows the fast window's end, and
/// that the block starts obtained from the count rule are `a_k` and `b_k`.
/// Each index is `2^{𝓛_1}+⋯+2^{𝓛_top} + c` with `top` and `c` linear in k.
pub fn tiling_holds_for_all_k() -> (bool, Vec<String>) {
    let a = (Lin(-1, 2), Lin(2, 2));
    let slow_end = (Lin(0, 2), Lin(2, 2));
    let b = (Lin(0, 2), Lin(3, 2));
    let fast_end = (Lin(1, 2), Lin(3, 2));
    let next = Lin(1, 1);
    // block b' >= 2 starts at 2^{𝓛_1}+⋯+2^{𝓛_{b'-2}} + b' + 1: base case b' = 2,
    // and the step adds the count 2^{𝓛_{b'-1}} + 1 of block b'
    let start = (Lin(-2, 1), Lin(1, 1));
    let step_top_ok = start.0.shift(1) == start.0.at(next) && start.0.shift(1) == Lin(-1, 1);
    let step_const_ok = start.1.shift(1) == start.1.at(next);
    let base_ok = symbolic_block_start(2) == SymIndex::constant(3) && start.1.at(Lin(2, 0)) == Lin(3, 0);
    let slow_block = Lin(1, 2);
    let fast_block = Lin(2, 2);

    let mut notes = Vec::new();
    let mut ok = true;
    let mut check = |cond: bool, what: &str| {
        ok &= cond;
        notes.push(format!("{} {what}", if cond { "ok" } else { "FAILED" }));
    };
    check(base_ok && step_top_ok && step_const_ok, "block b starts at 2^𝓛_1+⋯+2^𝓛_{b-2} + b + 1 (induction on b ≥ 2)");
    check(start.0.at(slow_block) == a.0 && start.1.at(slow_block) == a.1, "block 2k+1 starts at a_k");
    check(start.0.at(fast_block) == b.0 && start.1.at(fast_block) == b.1, "block 2k+2 starts at b_k");
    check(b.0 == slow_end.0 && b.1 == slow_end.1.shift(1), "b_k = (end of k-th slow window) + 1");
    check(a.0.at(next) == fast_end.0 && a.1.at(next) == fast_end.1.shift(1), "a_{k+1} = (end of k-th fast window) + 1");
    check(
        a.0.at(Lin(1, 0)) == Lin(1, 0) && a.1.at(Lin(1, 0)) == Lin(4, 0),
        "a_1 = 2^𝓛_1 + 4 = 8, so the head is n ≤ 7",
    );
    (ok, notes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_starts_match_schedule() {
        let s = GrowthSchedule::paper();
        for b in 0..=5 {
            let sym = symbolic_block_start(b);
            assert_eq!(sym.eval(&s).as_ref(), s.block_start(b), "block {b}");
        }
        assert_eq!(symbolic_block_start(3).to_string(), "2^𝓛_1 + 4");
    }

    #[test]
    fn windows_certify_for_small_k() {
        for k in 1..=6 {
            for phase in [Phase::XSlow, Phase::XFast] {
                let c = window_certificate(k, phase).unwrap();
                assert!(c.holds, "{k} {phase}: {:?}", c.checks);
            }
        }
        let c = window_certificate(1, Phase::XSlow).unwrap();
        let s = GrowthSchedule::paper();
        assert_eq!(c.start.eval(&s), Some(8u32.into()));
        assert_eq!(c.end.eval(&s), Some(262152u32.into()));
        assert_eq!((c.x_diam.to_string(), c.y_diam.to_string()), ("1/4".into(), "3".into()));
        let f = window_certificate(1, Phase::XFast).unwrap();
        assert_eq!(f.start.eval(&s), Some(262153u32.into()));
        assert!(f.end.eval(&s).is_some());
        assert!(window_certificate(0, Phase::XFast).is_err());
    }

    #[test]
    fn tiling() {
        let (ok, notes) = tiling_holds_for_all_k();
        assert!(ok, "{notes:?}");
    }
}
