//! The tent-map action of G = ℕ₀ ∪ {∞} on `[0, 1]`.

use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::exceeds;
use super::report::{ClaimReport, SensitivityReport, Verdict};
use super::series::{d_set, diam_series, System, TailStatus};
use crate::error::{Error, Result};
use crate::monoid::{
    brute_force_classify, classify, dsp_property, monoid_add, random_subset, sp_property, Ambient, GElement, SubsetDesc,
};
use crate::plmaps::{pi, tent_image};
use crate::schedule::GrowthSchedule;
use crate::{ClosedInterval, Interval, IntervalSet, Rational};

#[derive(Debug, Clone)]
pub struct Example1Config {
    pub epsilon: Rational,
    pub horizon: u64,
    pub strict: bool,
    pub mixing_samples: Vec<(ClosedInterval, ClosedInterval)>,
    /// Random subsets of G checked against the brute-force oracle.
    pub collapse_subsets: usize,
    pub rng_seed: u64,
}

impl Default for Example1Config {
    fn default() -> Self {
        Self {
            epsilon: Rational::ratio(1, 2),
            horizon: 272153,
            strict: true,
            mixing_samples: default_mixing_samples(),
            collapse_subsets: 200,
            rng_seed: 0x7e47,
        }
    }
}

fn iv(a: i64, b: i64, c: i64, d: i64) -> ClosedInterval {
    Interval::new(Rational::ratio(a, b), Rational::ratio(c, d)).expect("ordered sample")
}

/// Twelve `(U, V)` pairs of nondegenerate subintervals of `[0, 1]`.
pub fn default_mixing_samples() -> Vec<(ClosedInterval, ClosedInterval)> {
    vec![
        (iv(1, 3, 2, 3), iv(0, 1, 1, 8)),
        (iv(0, 1, 1, 1), iv(1, 2, 3, 4)),
        (iv(0, 1, 1, 4), iv(1, 2, 3, 4)),
        (iv(1, 5, 1, 4), iv(7, 8, 1, 1)),
        (iv(3, 7, 4, 7), iv(1, 3, 1, 2)),
        (iv(0, 1, 1, 1000), iv(999, 1000, 1, 1)),
        (iv(9, 10, 1, 1), iv(0, 1, 1, 100)),
        (iv(32, 64, 33, 64), iv(256, 1024, 257, 1024)),
        (iv(2, 3, 3, 4), iv(1, 10, 1, 9)),
        (iv(1, 100, 1, 50), iv(1, 2, 101, 200)),
        (iv(5, 8, 11, 16), iv(0, 1, 1, 1)),
        (iv(1, 7, 2, 7), iv(3, 7, 4, 7)),
    ]
}

fn unit() -> ClosedInterval {
    iv(0, 1, 1, 1)
}

/// Least n with `tentⁿ(u) = [0, 1]`.
pub fn covering_time(u: &ClosedInterval) -> Result<u64> {
    if u.is_degenerate() {
        return Err(Error::DegenerateSeed(format!("{u} has no covering time")));
    }
    if !unit().contains_interval(u) {
        return Err(Error::Domain(format!("{u} not inside [0, 1]")));
    }
    // lengths at least double until the image reaches an endpoint of [0, 1]
    let limit = 4 * (u.length().denom().bits() + 8);
    let mut cur = IntervalSet::from(u.clone());
    for n in 0..=limit {
        if cur.hull().as_ref() == Some(&unit()) {
            return Ok(n);
        }
        cur = tent_image(&cur)?;
    }
    Err(Error::Domain(format!("{u} did not cover [0, 1] within {limit} steps")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixingWitness {
    pub u: ClosedInterval,
    pub v: ClosedInterval,
    pub covering_time: u64,
    /// `G ∖ D(U, V)`, which is finite.
    pub complement: Vec<GElement>,
    pub infinity_in_d: bool,
    pub verdict: String,
}

/// `D(U, V) = {g : gU ∩ V ≠ ∅}` contains every `n >= n*`; below `n*` it is
/// decided pointwise by interior overlap, and ∞ belongs iff `0 ∈ V`.
pub fn strong_mixing_witness(u: &ClosedInterval, v: &ClosedInterval) -> Result<MixingWitness> {
    if v.is_degenerate() {
        return Err(Error::DegenerateSeed(format!("{v} has empty interior")));
    }
    let n_star = covering_time(u)?;
    let mut complement = Vec::new();
    let mut cur = IntervalSet::from(u.clone());
    for n in 0..n_star {
        let img = cur.hull().expect("nonempty image");
        if !img.interiors_intersect(v)? {
            complement.push(GElement::Finite(n));
        }
        cur = tent_image(&cur)?;
    }
    let infinity_in_d = v.contains(&Rational::zero());
    if !infinity_in_d {
        complement.push(GElement::Infinity);
    }
    Ok(MixingWitness {
        u: u.clone(),
        v: v.clone(),
        covering_time: n_star,
        verdict: "strongly mixing evidence: complement compact".into(),
        complement,
        infinity_in_d,
    })
}

struct Builder<'a> {
    cfg: &'a Example1Config,
    claims: Vec<ClaimReport>,
}

impl Builder<'_> {
    fn push(&mut self, claim: &str, verdict: Verdict, witnesses: Vec<String>) {
        self.claims.push(ClaimReport {
            claim: claim.into(),
            verdict,
            epsilon: self.cfg.epsilon.clone(),
            strict: self.cfg.strict,
            horizon: self.cfg.horizon,
            k_max: None,
            witnesses,
        });
    }
}

fn verdict_of(ok: bool) -> Verdict {
    if ok {
        Verdict::Verified
    } else {
        Verdict::Refuted
    }
}

fn g_elements(max: u64) -> Vec<GElement> {
    (0..=max).map(GElement::Finite).chain([GElement::Infinity]).collect()
}

fn list(v: &[GElement]) -> String {
    let items: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(","))
}

pub fn verify_example1(cfg: &Example1Config) -> Result<SensitivityReport> {
    let mut out = Builder { cfg, claims: Vec::new() };
    let eps = &cfg.epsilon;
    let eps_ok = eps.is_positive() && *eps < Rational::one();
    let unmet = || vec![format!("requires 0 < ε < 1, got ε = {eps}")];

    // (1) monoid laws, exhaustively on {0..=50} ∪ {∞}
    let elems = g_elements(50);
    let mut laws = true;
    for &a in &elems {
        laws &= monoid_add(a, GElement::ZERO) == a;
        for &b in &elems {
            laws &= monoid_add(a, b) == monoid_add(b, a);
            for &c in &elems {
                laws &= monoid_add(monoid_add(a, b), c) == monoid_add(a, monoid_add(b, c));
            }
        }
    }
    out.push(
        "item-1-monoid",
        verdict_of(laws),
        vec![format!("associativity, commutativity and identity 0 checked on all triples from {{0..=50}} ∪ {{∞}}")],
    );

    // (2) sp and dsp fail in G
    let sp = sp_property(Ambient::Extended);
    let dsp = dsp_property(Ambient::Extended);
    out.push(
        "item-2-sp-dsp",
        verdict_of(!sp.holds && !dsp.holds),
        vec![format!("sp fails: {}", sp.witness), format!("dsp fails: {}", dsp.witness)],
    );

    // (2′)–(2‴) collapse to ∞-membership, against the oracle
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut subsets = vec![
        SubsetDesc::finite(Ambient::Extended, [], true)?,
        SubsetDesc::tail_from(Ambient::Extended, 0, false)?,
        SubsetDesc::full(Ambient::Extended),
        SubsetDesc::empty(Ambient::Extended),
    ];
    subsets.extend((0..cfg.collapse_subsets).map(|_| random_subset(&mut rng, Ambient::Extended, 8, 4)));
    let (k_bound, t_bound) = (20, 60);
    let mut bad = Vec::new();
    for b in &subsets {
        let v = classify(b);
        let o = brute_force_classify(b, k_bound, t_bound);
        let collapse = v.flags()[1..].iter().all(|&f| f == b.contains_infinity());
        if !collapse || v.flags() != o.flags() {
            bad.push(b.to_string());
        }
    }
    let mut w = vec![format!(
        "{} subsets of G (4 fixed, {} from ChaCha8 seed {}); each class ⇔ ∞ ∈ B, agreeing with the oracle over K ⊆ {{0..={k_bound}}}∪{{∞}}, t ≤ {t_bound} or t = ∞",
        subsets.len(),
        cfg.collapse_subsets,
        cfg.rng_seed
    )];
    w.extend(bad.iter().take(5).map(|b| format!("mismatch: {b}")));
    out.push("items-2'-2'''-collapse", verdict_of(bad.is_empty()), w);

    // (3)–(5) the action law, pointwise and exact
    let points: Vec<Rational> =
        (0..=24).map(|i| Rational::ratio(i, 24)).chain([Rational::ratio(1, 3), Rational::ratio(5, 7)]).collect();
    let mut action = true;
    for &s in &g_elements(12) {
        for &t in &g_elements(12) {
            for x in &points {
                action &= pi(s, &pi(t, x)?)? == pi(monoid_add(s, t), x)?;
            }
        }
    }
    out.push(
        "item-5-semiflow",
        verdict_of(action),
        vec![format!("π(s, π(t, x)) = π(s+t, x) for s, t ∈ {{0..=12}} ∪ {{∞}} and {} rational x", points.len())],
    );

    // (6) strong mixing
    let mut w = Vec::new();
    let mut mixing = !cfg.mixing_samples.is_empty();
    for (u, v) in &cfg.mixing_samples {
        match strong_mixing_witness(u, v) {
            Ok(m) => w.push(format!(
                "U={u}, V={v}: n*={}, G∖D(U,V) = {} (finite), {}",
                m.covering_time,
                list(&m.complement),
                m.verdict
            )),
            Err(e) => {
                mixing = false;
                w.push(format!("U={u}, V={v}: {e}"));
            }
        }
    }
    out.push("item-6-strong-mixing", verdict_of(mixing), w);

    let schedule = GrowthSchedule::paper();
    if !eps_ok {
        for id in [
            "item-7-strong-sensitivity",
            "item-8-not-thickly-sensitive",
            "item-9-not-syndetically-sensitive",
            "item-10-not-thickly-periodically-sensitive",
            "item-11-not-thickly-syndetically-sensitive",
        ] {
            out.push(id, Verdict::PreconditionUnmet, unmet());
        }
    } else {
        // (7) D(U, ε) has finite complement for the sampled seeds
        let mut seeds: Vec<ClosedInterval> = vec![unit()];
        for (u, _) in &cfg.mixing_samples {
            if !seeds.contains(u) {
                seeds.push(u.clone());
            }
        }
        let mut w = Vec::new();
        let mut verdict = Verdict::Verified;
        for u in &seeds {
            let n_star = covering_time(u)?;
            let hi = cfg.horizon.min(n_star.saturating_add(1));
            let d = d_set(&diam_series(&schedule, System::Example1, u, 0..=hi)?, eps, cfg.strict)?;
            let comp = d.members.complement();
            let certified = matches!(d.tail, TailStatus::Certified { .. });
            if !certified {
                verdict = verdict.max(Verdict::BoundedEvidence);
            }
            if !comp.is_finite() {
                verdict = Verdict::Refuted;
            }
            let missing: Vec<GElement> = comp
                .finite_part()
                .iter()
                .map(|&n| GElement::Finite(n))
                .chain(comp.contains_infinity().then_some(GElement::Infinity))
                .collect();
            w.push(format!(
                "U={u}: n*={n_star}, G∖D(U,ε) = {}{}",
                list(&missing),
                if certified { "" } else { " (within horizon only)" }
            ));
        }
        out.push("item-7-strong-sensitivity", verdict, w);

        // (8)–(11) D(I, ε) = G ∖ {∞}
        let d = d_set(&diam_series(&schedule, System::Example1, &unit(), 0..=cfg.horizon)?, eps, cfg.strict)?;
        let expected = SubsetDesc::tail_from(Ambient::Extended, 0, false)?;
        let exact = d.members.same_set(&expected) && matches!(d.tail, TailStatus::Certified { .. });
        let v = classify(&d.members);
        let o = brute_force_classify(&d.members, k_bound, t_bound);
        let base = format!("D([0,1], ε) = {} ({})", d.members, if exact { "= G∖{∞}" } else { "≠ G∖{∞}" });
        let items: [(&str, bool, bool, &str); 4] = [
            ("item-8-not-thickly-sensitive", v.thick, o.thick, "thick"),
            ("item-9-not-syndetically-sensitive", v.syndetic, o.syndetic, "syndetic"),
            ("item-10-not-thickly-periodically-sensitive", v.thickly_periodic, o.thickly_periodic, "thickly periodic"),
            ("item-11-not-thickly-syndetically-sensitive", v.thickly_syndetic, o.thickly_syndetic, "thickly syndetic"),
        ];
        for (id, decided, oracle, name) in items {
            out.push(
                id,
                verdict_of(exact && !decided && !oracle),
                vec![base.clone(), format!("{name}: {decided} (oracle: {oracle}); {}", v.witness)],
            );
        }
    }

    // Remark: the restriction to G₁ = {0, ∞} is not sensitive
    if eps.is_positive() {
        let half = eps / &Rational::from(2);
        let hi = if half < Rational::one() { half } else { Rational::ratio(1, 2) };
        let u = Interval::new(Rational::zero(), hi)?;
        let d0 = exceeds(&u.length(), eps, cfg.strict);
        let dinf = exceeds(&Rational::zero(), eps, cfg.strict);
        let g1 = SubsetDesc::finite(Ambient::Extended, [0], true)?;
        let g1_syndetic = classify(&g1).syndetic;
        out.push(
            "remark-g1-not-sensitive",
            verdict_of(!d0 && !dinf && g1_syndetic),
            vec![format!(
                "seed U={u} has diam {} < ε and ∞·U = {{0}}, so D_G₁(U, ε) = ∅; G₁ = {{0,∞}} is syndetic: {g1_syndetic}",
                u.length()
            )],
        );
    } else {
        out.push("remark-g1-not-sensitive", Verdict::PreconditionUnmet, vec![format!("requires ε > 0, got ε = {eps}")]);
    }

    Ok(SensitivityReport { system: "example1".into(), claims: out.claims })
}
