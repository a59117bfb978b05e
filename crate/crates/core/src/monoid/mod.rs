//! The monoids ℕ₀ and G = ℕ₀ ∪ {∞}, finitely described subsets of them, and
//! decision procedures for syndetic, thick, thickly syndetic, periodic and
//! thickly periodic sets.
//!
//! Both monoids carry the discrete topology, so "compact" means "finite"
//! throughout.

mod classify;
mod oracle;
mod subset;

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

pub use classify::{classify, dsp_property, sp_property, ClassificationVerdict, Evidence, PropertyVerdict};
pub use oracle::brute_force_classify;
pub use subset::{random_subset, SubsetDesc};

/// Element of G = ℕ₀ ∪ {∞}; `Infinity` is absorbing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GElement {
    Finite(u64),
    Infinity,
}

impl GElement {
    pub const ZERO: GElement = GElement::Finite(0);

    pub fn is_infinite(self) -> bool {
        matches!(self, GElement::Infinity)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            GElement::Finite(n) => Some(n),
            GElement::Infinity => None,
        }
    }
}

/// Monoid addition: natural sum on ℕ₀, ∞ whenever either operand is ∞.
pub fn monoid_add(a: GElement, b: GElement) -> GElement {
    match (a, b) {
        (GElement::Finite(x), GElement::Finite(y)) => {
            GElement::Finite(x.checked_add(y).expect("monoid addition overflowed u64"))
        }
        _ => GElement::Infinity,
    }
}

impl Add for GElement {
    type Output = GElement;
    fn add(self, rhs: GElement) -> GElement {
        monoid_add(self, rhs)
    }
}

impl From<u64> for GElement {
    fn from(n: u64) -> Self {
        GElement::Finite(n)
    }
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GElement::Finite(n) => write!(f, "{n}"),
            GElement::Infinity => f.write_str("∞"),
        }
    }
}

/// Which monoid a subset lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ambient {
    /// ℕ₀
    #[serde(rename = "N")]
    Naturals,
    /// ℕ₀ ∪ {∞}
    #[serde(rename = "G")]
    Extended,
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ambient::Naturals => "N",
            Ambient::Extended => "G",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GElement::*;

    #[test]
    fn addition_table() {
        assert_eq!(Finite(0) + Finite(7), Finite(7));
        assert_eq!(Finite(3) + Finite(4), Finite(7));
        assert_eq!(Finite(5) + Infinity, Infinity);
        assert_eq!(Infinity + Finite(0), Infinity);
        assert_eq!(Infinity + Infinity, Infinity);
    }

    #[test]
    fn monoid_laws_exhaustive_small() {
        let elems: Vec<GElement> = (0..=50).map(Finite).chain(std::iter::once(Infinity)).collect();
        for &a in &elems {
            assert_eq!(a + GElement::ZERO, a);
            assert_eq!(GElement::ZERO + a, a);
            for &b in &elems {
                assert_eq!(a + b, b + a);
                for &c in &elems {
                    assert_eq!((a + b) + c, a + (b + c));
                }
            }
        }
    }
}
