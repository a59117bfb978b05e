//! The two-branch cascade `(Z, F)`: Claim 1 (thickly sensitive) and Claim 2
//! (not multi-sensitive).

use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::exceeds;
use super::report::{ClaimReport, SensitivityReport, Verdict};
use super::series::{d_set, diam_series_parallel, DiamSeries, System};
use super::windows::{tiling_holds_for_all_k, window_certificate, Phase, WindowCertificate};
use crate::error::{Error, Result};
use crate::plmaps::iterate_base_interval;
use crate::schedule::{GrowthSchedule, Space, HARD_INDEX_CAP};
use crate::{Affine, ClosedInterval, Interval, Rational};

/// Fast-window indices checked by exact iteration for Claim 1.
const PREFIX_LEN: u64 = 10_000;

#[derive(Debug, Clone)]
pub struct Example2Config {
    pub epsilon: Rational,
    pub horizon: u64,
    pub k_max: u64,
    pub strict: bool,
    pub workers: usize,
}

impl Default for Example2Config {
    fn default() -> Self {
        Self {
            epsilon: Rational::ratio(1, 2),
            horizon: 272153,
            k_max: 3,
            strict: true,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()).min(8),
        }
    }
}

/// A Claim 1 seed: `U ⊆ I_p` (or `J_p`) together with `[α, β] ⊆ I_0` and
/// `f^p([α, β]) = U`, and the exact series of `[α, β]`.
#[derive(Debug, Clone, Serialize)]
pub struct SeedEvidence {
    pub space: Space,
    pub u: ClosedInterval,
    pub p: u64,
    pub base_seed: ClosedInterval,
    pub reduction_exact: bool,
    pub series: DiamSeries,
}

impl SeedEvidence {
    fn delta(&self) -> Rational {
        self.base_seed.length()
    }
}

/// Everything that does not depend on the strictness of the D-set test.
#[derive(Debug, Clone)]
pub struct Example2Evidence {
    pub epsilon: Rational,
    pub horizon: u64,
    pub k_max: u64,
    schedule: GrowthSchedule,
    claim1: Vec<SeedEvidence>,
    claim2: Option<(DiamSeries, DiamSeries)>,
    certificates: Vec<WindowCertificate>,
}

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn base() -> ClosedInterval {
    Interval::new(q(1, 2), q(3, 2)).expect("ordered")
}

impl Example2Evidence {
    pub fn compute(cfg: &Example2Config) -> Result<Self> {
        if cfg.horizon > HARD_INDEX_CAP {
            return Err(Error::CapExceeded(format!("horizon {} exceeds hard limit {HARD_INDEX_CAP}", cfg.horizon)));
        }
        let mut schedule = GrowthSchedule::paper();
        if cfg.horizon > schedule.index_cap() {
            schedule = schedule.with_index_cap(cfg.horizon)?;
        }
        let b1 = schedule.b_k(1)?.and_then(|b| b.to_u64()).expect("b_1 is small");
        let slow_end = b1 - 1;
        let x_end = cfg.horizon.min(b1 + PREFIX_LEN - 1);
        let y_end = cfg.horizon.min(slow_end);

        let mut claim1 = Vec::new();
        // whole base interval, a shorter base seed, and a seed pulled back from
        // the left half of a later interval
        let plans = [
            (Space::X, x_end, vec![(base(), 0u64), (Interval::new(q(1, 2), q(5, 6))?, 0)], 5u64),
            (Space::Y, y_end, vec![(base(), 0), (Interval::new(q(1, 2), q(1, 1))?, 0)], 3),
        ];
        for (space, end, direct, p) in plans {
            let mut seeds: Vec<(ClosedInterval, ClosedInterval, u64)> =
                direct.into_iter().map(|(s, p)| (s.clone(), s, p)).collect();
            let ip = schedule.block_locate(space, p)?.interval;
            let mid = (ip.lo() + ip.hi()) / Rational::from(2);
            let u = Interval::new(ip.lo().clone(), mid)?;
            let pull = Affine::between(&base(), &ip)?.inverse().image(&u);
            seeds.push((u, pull, p));
            for (u, seed, p) in seeds {
                let series = diam_series_parallel(&schedule, system_of(space), &seed, 0..=end, cfg.workers)?;
                let reduction_exact = iterate_base_interval(&schedule, space, &seed, p)? == u;
                claim1.push(SeedEvidence { space, u, p, base_seed: seed, reduction_exact, series });
            }
        }

        let eps = &cfg.epsilon;
        let claim2 = if eps.is_positive() && *eps < Rational::one() {
            let u = Interval::new(q(1, 2), q(1, 2) + eps / &Rational::from(2))?;
            let u1 = diam_series_parallel(&schedule, System::Example2X, &u, 0..=cfg.horizon, cfg.workers)?;
            let u2 = diam_series_parallel(&schedule, System::Example2Y, &u, 0..=cfg.horizon, cfg.workers)?;
            Some((u1, u2))
        } else {
            None
        };

        let mut certificates = Vec::new();
        for k in 1..=cfg.k_max {
            certificates.push(window_certificate(k, Phase::XSlow)?);
            certificates.push(window_certificate(k, Phase::XFast)?);
        }
        Ok(Self {
            epsilon: eps.clone(),
            horizon: cfg.horizon,
            k_max: cfg.k_max,
            schedule,
            claim1,
            claim2,
            certificates,
        })
    }

    fn cert(&self, k: u64, phase: Phase) -> &WindowCertificate {
        self.certificates.iter().find(|c| c.k == k && c.phase == phase).expect("computed for k ≤ k_max")
    }

    pub fn report(&self, strict: bool) -> Result<SensitivityReport> {
        let mut claims = Vec::new();
        let one = Rational::one();
        let mut push = |claim: &str, verdict: Verdict, epsilon: &Rational, witnesses: Vec<String>| {
            claims.push(ClaimReport {
                claim: claim.into(),
                verdict,
                epsilon: epsilon.clone(),
                strict,
                horizon: self.horizon,
                k_max: Some(self.k_max),
                witnesses,
            })
        };
        let b1 = self.schedule.b_k(1)?.and_then(|b| b.to_u64()).expect("b_1 is small");
        let a1 = self.schedule.a_k(1)?.and_then(|a| a.to_u64()).expect("a_1 is small");
        let rel = if strict { ">" } else { "≥" };

        // Claim 1, exact prefix: X seeds over the first fast window, Y seeds
        // over the first slow window (where g stretches)
        let mut verdict = Verdict::Verified;
        let mut w = Vec::new();
        for ev in &self.claim1 {
            let d = d_set(&ev.series, &one, strict)?;
            let (phase, lo) = match ev.space {
                Space::X => (Phase::XFast, b1),
                Space::Y => (Phase::XSlow, a1),
            };
            let hi = d.range.1;
            if hi < lo {
                verdict = verdict.max(Verdict::BoundedEvidence);
                w.push(format!("{} U={}: horizon {} ends before the window at {lo}", ev.space, ev.u, self.horizon));
                continue;
            }
            let expected = exceeds(&(ev.delta() * self.cert(1, phase).diam(ev.space)), &one, strict);
            let inside = (lo..=hi).filter(|&n| d.contains(n)).count() as u64;
            let consistent = ev.reduction_exact && inside == if expected { hi - lo + 1 } else { 0 };
            let full_base = ev.p == 0 && ev.delta() == one;
            if !consistent || (full_base && !expected) {
                verdict = Verdict::Refuted;
            }
            w.push(format!(
                "{} U={} (p={}, [α,β]={}, f^p exact: {}): {inside} of {} indices n ∈ [{}, {}] lie in D(U,1); δ·diam = {} {rel} 1: {expected}",
                ev.space,
                ev.u,
                ev.p,
                ev.base_seed,
                ev.reduction_exact,
                hi - lo + 1,
                lo - ev.p,
                hi - ev.p,
                ev.delta() * self.cert(1, phase).diam(ev.space),
            ));
        }
        push("claim1-exact-prefix", verdict, &one, w);

        // Claim 1, windows k ≤ k_max by certificate
        let mut verdict = Verdict::Verified;
        let mut w = Vec::new();
        for c in &self.certificates {
            if !c.holds {
                verdict = Verdict::Refuted;
                w.push(format!("k={} {}: certificate failed: {:?}", c.k, c.phase, c.checks));
            }
        }
        for ev in &self.claim1 {
            let phase = if ev.space == Space::X { Phase::XFast } else { Phase::XSlow };
            let mut first = None;
            for k in 1..=self.k_max {
                let c = self.cert(k, phase);
                let diam = ev.delta() * c.diam(ev.space);
                if exceeds(&diam, &one, strict) {
                    first.get_or_insert(k);
                    let shift = if ev.p == 0 { String::new() } else { format!(" − {}", ev.p) };
                    w.push(format!(
                        "{} U={}: k={k} {} window n ∈ [{}{shift}, {}{shift}] ⊆ D(U,1), diam = {diam} {rel} 1",
                        ev.space, ev.u, c.phase, c.start, c.end,
                    ));
                } else if ev.p == 0 && ev.delta() == one {
                    verdict = Verdict::Refuted;
                }
            }
            if first.is_none() && self.k_max > 0 {
                w.push(format!("{} U={}: no window with k ≤ {} reaches diam {rel} 1", ev.space, ev.u, self.k_max));
            }
        }
        push("claim1-window-certificates", verdict, &one, w);

        let thick_verdict =
            if self.certificates.iter().all(|c| c.holds) { Verdict::BoundedEvidence } else { Verdict::Refuted };
        push(
            "claim1-thick",
            thick_verdict,
            &one,
            vec![
                format!("windows of length 2^𝓛_(2k+1) + 1 lie in D(U,1) for certified k ≤ {}", self.k_max),
                "thickness needs arbitrarily long runs, i.e. every k; not checked beyond k_max".into(),
            ],
        );

        let eps = &self.epsilon;
        let Some((u1, u2)) = &self.claim2 else {
            let unmet = vec![format!("requires 0 < ε < 1, got ε = {eps}")];
            for id in
                ["claim2-exact", "claim2-window-certificates", "claim2-not-multi-sensitive", "claim2-u1-thickness"]
            {
                push(id, Verdict::PreconditionUnmet, eps, unmet.clone());
            }
            return Ok(SensitivityReport { system: "example2".into(), claims });
        };

        // Claim 2, exact up to the horizon
        let d1 = d_set(u1, eps, strict)?;
        let d2 = d_set(u2, eps, strict)?;
        let both: Vec<u64> = (0..=self.horizon).filter(|&n| d1.contains(n) && d2.contains(n)).collect();
        let half = eps / &Rational::from(2);
        let mut scaling = true;
        for (series, space) in [(u1, Space::X), (u2, Space::Y)] {
            for (n, diam) in &series.entries {
                let (block, _) = self.schedule.locate_block(*n)?;
                scaling &= *diam == &half * &GrowthSchedule::block_shape(space, block).0;
            }
        }
        let fmt_runs = |runs: Vec<(u64, u64)>| -> String {
            let parts: Vec<String> = runs.iter().map(|(a, b)| format!("[{a}, {b}]")).collect();
            if parts.is_empty() {
                "∅".into()
            } else {
                parts.join(" ∪ ")
            }
        };
        let mut w = vec![
            format!("U₁ = [1/2, {}] × {{0}}, U₂ = {{0}} × [1/2, {}]", u1.seed.hi(), u2.seed.hi()),
            format!("D(U₁,ε) ∩ [0,{}] = {}", self.horizon, fmt_runs(d1.member_runs())),
            format!("D(U₂,ε) ∩ [0,{}] = {}", self.horizon, fmt_runs(d2.member_runs())),
            format!("diam(Fⁿ(Uᵢ)) = (ε/2)·diam(Iₙ or Jₙ) for every n ≤ {}: {scaling}", self.horizon),
        ];
        if !both.is_empty() {
            w.push(format!("common members: {:?}", &both[..both.len().min(10)]));
        }
        push("claim2-exact", if both.is_empty() && scaling { Verdict::Verified } else { Verdict::Refuted }, eps, w);

        // Claim 2, windows k ≤ k_max
        let mut ok = true;
        let mut w = Vec::new();
        for k in 1..=self.k_max {
            let ki = k as i64;
            let slow = &half * self.cert(k, Phase::XSlow).diam(Space::X);
            let fast = &half * self.cert(k, Phase::XFast).diam(Space::Y);
            let slow_bound = eps / &Rational::from(4 * (ki + 1));
            let fast_bound = eps / &Rational::from(2 * (2 * ki + 3));
            let good = slow == slow_bound
                && fast == fast_bound
                && !exceeds(&slow, eps, strict)
                && !exceeds(&fast, eps, strict)
                && self.cert(k, Phase::XSlow).holds
                && self.cert(k, Phase::XFast).holds;
            ok &= good;
            w.push(format!(
                "k={k}: x-slow diam(Fⁿ(U₁)) = ε/(4(k+1)) = {slow} < ε; x-fast diam(Fⁿ(U₂)) = ε/(2(2k+3)) = {fast} < ε"
            ));
        }
        push("claim2-window-certificates", if ok { Verdict::Verified } else { Verdict::Refuted }, eps, w);

        // Claim 2 for every n: head exact, windows tile [a_1, ∞) and both
        // bounds shrink with k
        let (tiles, mut notes) = tiling_holds_for_all_k();
        let head_ok = self.horizon >= a1 - 1 && (0..a1).all(|n| !(d1.contains(n) && d2.contains(n)));
        let slow1 = &half * &Rational::ratio(1, 4);
        let fast1 = &half * &Rational::ratio(1, 5);
        let bounds_ok = !exceeds(&slow1, eps, strict) && !exceeds(&fast1, eps, strict);
        notes.push(format!("head n ∈ [0, {}] decided exactly: {head_ok}", a1 - 1));
        notes.push(format!("ε/(4(k+1)) ≤ {slow1} and ε/(2(2k+3)) ≤ {fast1} for all k ≥ 1, both below ε: {bounds_ok}"));
        notes.push("so n ∉ D(U₁,ε) on every slow window and n ∉ D(U₂,ε) on every fast window".into());
        let all = tiles && head_ok && bounds_ok && both.is_empty();
        push("claim2-not-multi-sensitive", if all { Verdict::Verified } else { Verdict::Refuted }, eps, notes);

        // thickness of D(U₁, ε) alone
        let longest = d1.member_runs().into_iter().map(|(a, b)| b - a + 1).max().unwrap_or(0);
        let windows_in: Vec<u64> = (1..=self.k_max)
            .filter(|&k| exceeds(&(&half * self.cert(k, Phase::XFast).diam(Space::X)), eps, strict))
            .collect();
        push(
            "claim2-u1-thickness",
            Verdict::BoundedEvidence,
            eps,
            vec![
                format!("longest run of D(U₁,ε) within [0, {}]: {longest}", self.horizon),
                format!("fast windows in D(U₁,ε) by certificate: k ∈ {windows_in:?}"),
                "thickness over ℕ₀ needs every k; not checked beyond k_max".into(),
            ],
        );

        Ok(SensitivityReport { system: "example2".into(), claims })
    }
}

fn system_of(space: Space) -> System {
    match space {
        Space::X => System::Example2X,
        Space::Y => System::Example2Y,
    }
}

pub fn verify_example2(cfg: &Example2Config) -> Result<SensitivityReport> {
    Example2Evidence::compute(cfg)?.report(cfg.strict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_horizon_report() {
        let cfg = Example2Config { horizon: 2000, k_max: 2, ..Default::default() };
        let r = verify_example2(&cfg).unwrap();
        assert_eq!(r.claim("claim2-exact").unwrap().verdict, Verdict::Verified);
        assert_eq!(r.claim("claim2-not-multi-sensitive").unwrap().verdict, Verdict::Verified);
        assert_eq!(r.claim("claim2-window-certificates").unwrap().verdict, Verdict::Verified);
        assert_eq!(r.claim("claim1-window-certificates").unwrap().verdict, Verdict::Verified);
        assert_eq!(r.claim("claim1-thick").unwrap().verdict, Verdict::BoundedEvidence);
        // the fast window starts past this horizon
        assert_eq!(r.claim("claim1-exact-prefix").unwrap().verdict, Verdict::BoundedEvidence);
    }

    #[test]
    fn epsilon_one_unmet() {
        let cfg = Example2Config { horizon: 100, k_max: 1, epsilon: Rational::one(), ..Default::default() };
        let r = verify_example2(&cfg).unwrap();
        assert_eq!(r.claim("claim2-exact").unwrap().verdict, Verdict::PreconditionUnmet);
    }
}
