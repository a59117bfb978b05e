//! Bounded brute-force evaluation of the subset-class definitions.
//!
//! Every quantifier over compact K is restricted to subsets of the candidate
//! set `C = {0..=k_bound}` (plus ∞ in G) and every quantifier over t to
//! `{0..=t_bound}` (plus ∞). Because `C` is itself one of the admissible K,
//! "∃K ∀t" is decided by `K = C` and "∀K ∃t" by `K = C` as well, so no
//! subset enumeration is needed. Nothing here consults the residue structure
//! of a description; only pointwise membership and monoid addition.

use super::classify::{ClassificationVerdict, Evidence};
use super::{monoid_add, Ambient, GElement, SubsetDesc};

type Member = Box<dyn Fn(GElement) -> bool>;

struct Bounds {
    ambient: Ambient,
    k_bound: u64,
    t_bound: u64,
}

impl Bounds {
    fn candidates(&self) -> Vec<GElement> {
        let mut c: Vec<GElement> = (0..=self.k_bound).map(GElement::Finite).collect();
        if self.ambient == Ambient::Extended {
            c.push(GElement::Infinity);
        }
        c
    }

    fn translations(&self) -> Vec<GElement> {
        let mut t: Vec<GElement> = (0..=self.t_bound).map(GElement::Finite).collect();
        if self.ambient == Ambient::Extended {
            t.push(GElement::Infinity);
        }
        t
    }

    /// Points far enough out that every check below stays inside them.
    fn horizon(&self) -> u64 {
        self.t_bound + 2 * self.k_bound
    }

    fn syndetic(&self, member: &dyn Fn(GElement) -> bool) -> bool {
        let c = self.candidates();
        self.translations().into_iter().all(|t| c.iter().any(|&k| member(monoid_add(t, k))))
    }

    fn thick(&self, member: &dyn Fn(GElement) -> bool) -> bool {
        let c = self.candidates();
        self.translations().into_iter().any(|t| c.iter().all(|&k| member(monoid_add(t, k))))
    }

    /// Closed sub-monoids of the shape dℕ₀ (optionally with ∞) and {0, ∞},
    /// kept only when they pass the bounded syndetic test.
    fn syndetic_submonoids(&self) -> Vec<(String, Member)> {
        let mut out: Vec<(String, Member)> = Vec::new();
        let with_inf: &[bool] = match self.ambient {
            Ambient::Naturals => &[false],
            Ambient::Extended => &[false, true],
        };
        for d in 1..=self.k_bound.max(1) {
            for &inf in with_inf {
                let m = move |g: GElement| match g {
                    GElement::Finite(n) => n % d == 0,
                    GElement::Infinity => inf,
                };
                out.push((format!("{d}ℕ₀{}", if inf { "∪{∞}" } else { "" }), Box::new(m)));
            }
        }
        if self.ambient == Ambient::Extended {
            out.push(("{0,∞}".to_string(), Box::new(|g| g == GElement::ZERO || g.is_infinite())));
        }
        out.retain(|(_, m)| self.syndetic(m.as_ref()));
        out
    }

    /// ∃ syndetic sub-monoid S, ∃ t: t + S ⊆ B, checked on S ∩ {0..=horizon} ∪ {∞}.
    fn periodic(&self, member: &dyn Fn(GElement) -> bool) -> Option<String> {
        let h = self.horizon();
        for (name, s) in self.syndetic_submonoids() {
            let mut elems: Vec<GElement> = (0..=h).map(GElement::Finite).filter(|&g| s(g)).collect();
            if s(GElement::Infinity) {
                elems.push(GElement::Infinity);
            }
            for t in self.translations() {
                let fits = elems.iter().all(|&e| match monoid_add(t, e) {
                    GElement::Finite(n) if n > h => true,
                    x => member(x),
                });
                if fits {
                    return Some(format!("{t}+{name}"));
                }
            }
        }
        None
    }
}

/// Bounded-quantifier classification; used only as an independent check on
/// [`super::classify`].
pub fn brute_force_classify(b: &SubsetDesc, k_bound: u64, t_bound: u64) -> ClassificationVerdict {
    assert!(k_bound >= 1 && t_bound >= 1, "oracle bounds must be positive");
    let bounds = Bounds { ambient: b.ambient(), k_bound, t_bound };
    let member = |g: GElement| b.contains(g);
    let c = bounds.candidates();
    // largest S with S + C ⊆ B; any S' with S' + K ⊆ B for K ⊇ C lies inside it
    let absorbed = |s: GElement| c.iter().all(|&k| b.contains(monoid_add(s, k)));

    let compact = (t_bound.saturating_sub(k_bound)..=t_bound).all(|n| !b.contains_n(n));
    let syndetic = bounds.syndetic(&member);
    let thick = bounds.thick(&member);
    let thickly_syndetic = bounds.syndetic(&absorbed);
    let periodic = bounds.periodic(&member);
    let thickly_periodic = bounds.periodic(&absorbed);

    ClassificationVerdict {
        compact,
        syndetic,
        thick,
        thickly_syndetic,
        periodic: periodic.is_some(),
        thickly_periodic: thickly_periodic.is_some(),
        witness: format!(
            "bounded evidence over K ⊆ {{0..={k_bound}}}, t ≤ {t_bound}{}; periodic witness: {}",
            if b.ambient() == Ambient::Extended { " plus ∞" } else { "" },
            periodic.as_deref().unwrap_or("none")
        ),
        evidence: Evidence::BoundedEvidence { k_bound, t_bound },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_minus_infinity_not_syndetic() {
        let b = SubsetDesc::tail_from(Ambient::Extended, 0, false).unwrap();
        let v = brute_force_classify(&b, 5, 50);
        assert!(!v.syndetic);
        assert!(matches!(v.evidence, Evidence::BoundedEvidence { .. }));
    }

    #[test]
    fn cofinite_is_thick() {
        let b = SubsetDesc::tail_from(Ambient::Naturals, 10, false).unwrap();
        let v = brute_force_classify(&b, 12, 100);
        assert!(v.thick);
    }

    #[test]
    fn full_set_everything_true() {
        for ambient in [Ambient::Naturals, Ambient::Extended] {
            let v = brute_force_classify(&SubsetDesc::full(ambient), 3, 7);
            assert!(v.syndetic && v.thick && v.thickly_syndetic && v.periodic && v.thickly_periodic);
            assert!(!v.compact);
        }
    }

    #[test]
    fn infinity_singleton() {
        let b = SubsetDesc::finite(Ambient::Extended, [], true).unwrap();
        let v = brute_force_classify(&b, 20, 50);
        assert!(v.thick && v.syndetic && v.thickly_syndetic && v.periodic && v.thickly_periodic && v.compact);
    }

    #[test]
    fn evens_bounded() {
        let b = SubsetDesc::residue_class(Ambient::Naturals, 0, 2, [0]).unwrap();
        let v = brute_force_classify(&b, 100, 200);
        assert!(v.syndetic && !v.thick && v.periodic && !v.thickly_periodic);
        assert!(v.witness.contains("0+2ℕ₀"), "{}", v.witness);
    }
}
