use serde::{Deserialize, Serialize};

use super::{Ambient, SubsetDesc};

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Evidence {
    /// Exact decision procedure for the eventually periodic class.
    Decided,
    /// Quantifiers truncated to `K ⊆ {0..=k_bound}` (plus ∞) and
    /// `t ∈ {0..=t_bound}` (plus ∞).
    BoundedEvidence { k_bound: u64, t_bound: u64 },
}

/// Verdicts for the five subset classes plus compactness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationVerdict {
    pub compact: bool,
    pub syndetic: bool,
    pub thick: bool,
    pub thickly_syndetic: bool,
    pub periodic: bool,
    pub thickly_periodic: bool,
    pub witness: String,
    pub evidence: Evidence,
}

impl ClassificationVerdict {
    /// The six booleans in declaration order, for cross-checking.
    pub fn flags(&self) -> [bool; 6] {
        [self.compact, self.syndetic, self.thick, self.thickly_syndetic, self.periodic, self.thickly_periodic]
    }
}

/// Decision procedure for the eventually periodic class.
pub fn classify(b: &SubsetDesc) -> ClassificationVerdict {
    match b.ambient() {
        Ambient::Extended => classify_extended(b),
        Ambient::Naturals => classify_naturals(b),
    }
}

fn compact_witness(b: &SubsetDesc) -> String {
    if b.is_finite() {
        let max = b.finite_part().iter().next_back();
        match (max, b.contains_infinity()) {
            (None, false) => "compact: empty".to_string(),
            (None, true) => "compact: B={∞}".to_string(),
            (Some(m), inf) => format!("compact: finite, max finite element {m}{}", if inf { " plus ∞" } else { "" }),
        }
    } else {
        format!("not compact: infinite residue tail mod {}", b.period())
    }
}

// Every nonempty K has ∞+K = {∞}, and t = ∞ is always available, so each
// class reduces to ∞-membership.
fn classify_extended(b: &SubsetDesc) -> ClassificationVerdict {
    let inf = b.contains_infinity();
    let reason = if inf {
        "∞ ∈ B: syndetic via K={∞}; thick via t=∞; thickly syndetic via S={∞}; periodic via S={0,∞}, t=∞; \
         thickly periodic via P={∞}"
    } else {
        "∞ ∉ B: t=∞ gives t+K={∞} ⊄ B for every nonempty K, and K={∞} defeats every translate"
    };
    ClassificationVerdict {
        compact: b.is_finite(),
        syndetic: inf,
        thick: inf,
        thickly_syndetic: inf,
        periodic: inf,
        thickly_periodic: inf,
        witness: format!("{}; {reason}", compact_witness(b)),
        evidence: Evidence::Decided,
    }
}

fn classify_naturals(b: &SubsetDesc) -> ClassificationVerdict {
    let t = b.threshold();
    let p = b.period();
    let mut notes = vec![compact_witness(b)];

    let syndetic = !b.residues().is_empty();
    if syndetic {
        // widest gap: every window {t..=t+m} meets B
        let m = (0..t + p).map(|s| b.next_member(s).expect("nonempty residues") - s).max().unwrap_or(0);
        notes.push(format!("syndetic: K={{0,…,{m}}} meets every translate"));
    } else {
        notes.push("not syndetic: no residues, B is finite".to_string());
    }

    let thick = b.residues().len() as u64 == p;
    if thick {
        let mut start = t;
        while start > 0 && b.contains_n(start - 1) {
            start -= 1;
        }
        notes.push(format!("thick: [{start},∞) ⊆ B, t={start} absorbs every finite K; S=P=[{start},∞)"));
    } else {
        notes.push(format!("not thick: runs past T={t} are shorter than p={p}"));
    }

    let periodic = find_progression(b);
    match periodic {
        Some((d, s)) => notes.push(format!("periodic: {s}+{d}ℕ₀ ⊆ B")),
        None => notes.push("not periodic: no arithmetic progression inside B".to_string()),
    }

    ClassificationVerdict {
        compact: b.is_finite(),
        syndetic,
        thick,
        thickly_syndetic: thick,
        periodic: periodic.is_some(),
        thickly_periodic: thick,
        witness: notes.join("; "),
        evidence: Evidence::Decided,
    }
}

/// Smallest `(d, t)` (d first) with `t + dℕ₀ ⊆ B`, scanning `d <= p` and
/// `t < T + p`.
fn find_progression(b: &SubsetDesc) -> Option<(u64, u64)> {
    let (thr, p) = (b.threshold(), b.period());
    (1..=p).find_map(|d| {
        (0..thr + p)
            .find(|&s| {
                // beyond max(T, s) + d·p the residues of s + jd mod p repeat
                let end = thr.max(s) + d * p;
                (s..end).step_by(d as usize).all(|n| b.contains_n(n))
            })
            .map(|s| (d, s))
    })
}

/// Verdict for the sp / dsp properties of an ambient monoid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyVerdict {
    pub holds: bool,
    pub witness: String,
}

/// sp: every syndetic subset is non-compact.
pub fn sp_property(ambient: Ambient) -> PropertyVerdict {
    match ambient {
        Ambient::Extended => {
            let k = SubsetDesc::finite(Ambient::Extended, [], true).expect("well-formed");
            let v = classify(&k);
            PropertyVerdict {
                holds: !(v.compact && v.syndetic),
                witness: format!("B={{∞}} is compact={} and syndetic={} (K={{∞}})", v.compact, v.syndetic),
            }
        }
        Ambient::Naturals => PropertyVerdict {
            holds: true,
            witness: "a syndetic description has a nonempty residue set, hence is infinite".to_string(),
        },
    }
}

/// dsp: the complement of every compact subset is syndetic.
pub fn dsp_property(ambient: Ambient) -> PropertyVerdict {
    match ambient {
        Ambient::Extended => {
            let k = SubsetDesc::finite(Ambient::Extended, [], true).expect("well-formed");
            let v = classify(&k.complement());
            PropertyVerdict {
                holds: v.syndetic,
                witness: format!(
                    "K={{∞}}: G∖K syndetic={}; for any nonempty finite K₁, (∞+K₁) ∩ (G∖K) = {{∞}} ∩ (G∖{{∞}}) = ∅",
                    v.syndetic
                ),
            }
        }
        Ambient::Naturals => PropertyVerdict {
            holds: true,
            witness: "the complement of a finite K contains [max K + 1, ∞), whose residue set is full".to_string(),
        },
    }
}
