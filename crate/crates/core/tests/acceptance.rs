//! One PASS/FAIL line per acceptance criterion; exits non-zero on any FAIL.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semiflow::monoid::{classify, monoid_add, random_subset, Ambient, GElement, SubsetDesc};
use semiflow::plmaps::{orbit_interval_closed_form, tent, BaseOrbit, PiecewiseLinear};
use semiflow::schedule::{GrowthSchedule, Space};
use semiflow::sensitivity::{
    covering_time, d_set, diam_series, verify_example1, window_certificate, Example1Config, Example2Config,
    Example2Evidence, Phase, SensitivityReport, System, Verdict,
};
use semiflow::{ClosedInterval, Interval, Rational};

type Outcome = Result<String, String>;

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn iv(a: Rational, b: Rational) -> ClosedInterval {
    Interval::new(a, b).expect("ordered")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: semiflow::Error) -> String {
    e.to_string()
}

struct Harness {
    failures: usize,
}

impl Harness {
    fn record(&mut self, id: &str, name: &str, limit: Option<Duration>, elapsed: Duration, outcome: Outcome) {
        let over = limit.is_some_and(|l| elapsed >= l);
        let limit_txt = limit.map_or(String::new(), |l| format!(" < {}s", l.as_secs()));
        let (tag, detail) = match outcome {
            Ok(d) if !over => ("PASS", d),
            Ok(d) => ("FAIL", format!("too slow; {d}")),
            Err(e) => ("FAIL", e),
        };
        if tag == "FAIL" {
            self.failures += 1;
        }
        println!("{tag} [{id}] {name} ({:.2}s{limit_txt}): {detail}", elapsed.as_secs_f64());
    }

    fn run(&mut self, id: &str, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) {
        let t = Instant::now();
        let outcome = f();
        self.record(id, name, limit, t.elapsed(), outcome);
    }
}

fn schedule_values() -> Outcome {
    let s = GrowthSchedule::paper();
    let expected = [(1, 2u64, 2u64), (2, 16, 18), (3, 1572864, 1572882)];
    for (n, l, sl) in expected {
        let (gl, gsl) = s.growth_values(n).map_err(err)?;
        ensure(gl == l.into() && gsl == sl.into(), || format!("n={n}: got ({gl}, {gsl})"))?;
    }
    Ok("(L_n, 𝓛_n) = (2,2), (16,18), (1572864,1572882)".into())
}

fn diameter_sweep() -> Outcome {
    let s = GrowthSchedule::paper();
    let (quarter, three) = (q(1, 4), Rational::from(3u64));
    for n in 8..=262152u64 {
        let x = s.block_locate(Space::X, n).map_err(err)?.interval.length();
        let y = s.block_locate(Space::Y, n).map_err(err)?.interval.length();
        ensure(x == quarter && y == three, || format!("n={n}: diam I = {x}, diam J = {y}"))?;
    }
    Ok("diam I_n = 1/4 and diam J_n = 3 for all 262145 n ∈ [8, 262152]".into())
}

fn oracle_equivalence() -> Outcome {
    let s = GrowthSchedule::paper();
    for space in [Space::X, Space::Y] {
        let mut orbit = BaseOrbit::new(&s, space, iv(q(1, 2), q(3, 2))).map_err(err)?;
        for n in 0..=20000u64 {
            let blocks = s.block_locate(space, n).map_err(err)?.interval;
            let closed = orbit_interval_closed_form(&s, space, n).map_err(err)?;
            ensure(orbit.image() == &blocks && blocks == closed, || {
                format!("{space} n={n}: iterate {}, blocks {blocks}, closed form {closed}", orbit.image())
            })?;
            if n < 20000 {
                orbit.advance().map_err(err)?;
            }
        }
    }
    Ok("iteration = block enumeration = closed form for n ≤ 20000 in X and Y".into())
}

const EX1_CLAIMS: [&str; 10] = [
    "item-1-monoid",
    "item-2-sp-dsp",
    "items-2'-2'''-collapse",
    "item-5-semiflow",
    "item-6-strong-mixing",
    "item-7-strong-sensitivity",
    "item-8-not-thickly-sensitive",
    "item-9-not-syndetically-sensitive",
    "item-10-not-thickly-periodically-sensitive",
    "item-11-not-thickly-syndetically-sensitive",
];

fn example1(report: &SensitivityReport, cfg: &Example1Config) -> Outcome {
    for id in EX1_CLAIMS {
        let c = report.claim(id).ok_or_else(|| format!("missing claim {id}"))?;
        ensure(c.verdict == Verdict::Verified, || format!("{id}: {} {:?}", c.verdict, c.witnesses))?;
    }
    ensure(cfg.collapse_subsets >= 200, || "fewer than 200 collapse subsets".into())?;
    ensure(cfg.mixing_samples.len() >= 10, || "fewer than 10 mixing samples".into())?;
    for (u, _) in &cfg.mixing_samples {
        covering_time(u).map_err(err)?;
    }
    let n_star = covering_time(&iv(q(1, 3), q(2, 3))).map_err(err)?;
    ensure(n_star == 3, || format!("n* for [1/3, 2/3] is {n_star}"))?;

    let series = diam_series(&GrowthSchedule::paper(), System::Example1, &iv(q(0, 1), q(1, 1)), 0..=64).map_err(err)?;
    let d = d_set(&series, &q(1, 2), cfg.strict).map_err(err)?;
    let g_minus_inf = SubsetDesc::tail_from(Ambient::Extended, 0, false).map_err(err)?;
    ensure(d.members.same_set(&g_minus_inf), || format!("D([0,1], 1/2) = {}", d.members))?;
    let v = classify(&d.members);
    ensure(!v.thick && !v.syndetic && !v.thickly_syndetic && !v.thickly_periodic, || format!("{v:?}"))?;
    Ok(format!(
        "{} claims verified; {} collapse subsets, {} mixing pairs (n*([1/3,2/3]) = 3); D([0,1],1/2) = G∖{{∞}} fails all four",
        EX1_CLAIMS.len(),
        cfg.collapse_subsets + 4,
        cfg.mixing_samples.len()
    ))
}

fn verdict_of(r: &SensitivityReport, id: &str) -> Result<Verdict, String> {
    r.claim(id).map(|c| c.verdict).ok_or_else(|| format!("missing claim {id}"))
}

fn claim2(r: &SensitivityReport, eps: &Rational, k_max: u64) -> Outcome {
    for id in ["claim2-exact", "claim2-window-certificates", "claim2-not-multi-sensitive"] {
        let v = verdict_of(r, id)?;
        ensure(v == Verdict::Verified, || format!("{id}: {v}"))?;
    }
    let half_eps = eps / &Rational::from(2u64);
    for k in 1..=k_max {
        let slow = window_certificate(k, Phase::XSlow).map_err(err)?;
        let fast = window_certificate(k, Phase::XFast).map_err(err)?;
        let x_bound = eps / &Rational::from(4 * (k + 1));
        let y_bound = eps / &Rational::from(2 * (2 * k + 3));
        ensure(slow.holds && fast.holds, || format!("k={k}: certificate failed"))?;
        ensure(&half_eps * &slow.x_diam == x_bound && x_bound < *eps, || format!("k={k}: slow X bound"))?;
        ensure(&half_eps * &fast.y_diam == y_bound && y_bound < *eps, || format!("k={k}: fast Y bound"))?;
    }
    Ok(format!(
        "D(U₁,1/2) ∩ D(U₂,1/2) ∩ [0, {}] = ∅; bounds ε/(4(k+1)), ε/(2(2k+3)) < ε certified for k ≤ {k_max}",
        r.claims[0].horizon
    ))
}

fn claim1(r: &SensitivityReport, k_max: u64) -> Outcome {
    for id in ["claim1-exact-prefix", "claim1-window-certificates"] {
        let v = verdict_of(r, id)?;
        ensure(v == Verdict::Verified, || format!("{id}: {v}"))?;
    }
    let thick = verdict_of(r, "claim1-thick")?;
    ensure(thick == Verdict::BoundedEvidence, || format!("claim1-thick: {thick}"))?;

    // independent recomputation of the exact prefix
    let s = GrowthSchedule::paper().with_index_cap(272152).map_err(err)?;
    let b1: u64 = s.b_k(1).map_err(err)?.and_then(|b| u64::try_from(b).ok()).ok_or("b_1")?;
    let series = diam_series(&s, System::Example2X, &iv(q(1, 2), q(3, 2)), b1..=b1 + 9999).map_err(err)?;
    let one = Rational::one();
    ensure(series.entries.len() == 10_000 && series.entries.iter().all(|(_, d)| *d > one), || {
        "some n in the first 10⁴ fast-window indices has diam ≤ 1".into()
    })?;
    for k in 1..=k_max {
        let c = window_certificate(k, Phase::XFast).map_err(err)?;
        ensure(c.holds && c.x_diam > one, || format!("k={k}: fast window X diam {}", c.x_diam))?;
    }
    Ok(format!(
        "n ∈ [{b1}, {}] ⊆ D([1/2,3/2], 1) exactly; fast windows k ≤ {k_max} by certificate; thickness reported as bounded evidence (worst of claim 1 = {thick}, exit 2 unless --allow-bounded)",
        b1 + 9999
    ))
}

fn prop_monoid(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let pick = |rng: &mut ChaCha8Rng| {
        if rng.gen_ratio(1, 8) {
            GElement::Infinity
        } else {
            GElement::Finite(rng.gen_range(0..1_000_000))
        }
    };
    for _ in 0..1000 {
        let (a, b, c) = (pick(rng), pick(rng), pick(rng));
        ensure(monoid_add(monoid_add(a, b), c) == monoid_add(a, monoid_add(b, c)), || format!("assoc {a} {b} {c}"))?;
        ensure(monoid_add(a, b) == monoid_add(b, a), || format!("comm {a} {b}"))?;
        ensure(monoid_add(a, GElement::ZERO) == a, || format!("identity {a}"))?;
    }
    Ok(())
}

fn prop_duality(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for ambient in [Ambient::Naturals, Ambient::Extended] {
        for _ in 0..200 {
            let b = random_subset(rng, ambient, 30, 8);
            let lhs = classify(&b).syndetic;
            let rhs = !classify(&b.complement()).thick;
            ensure(lhs == rhs, || format!("duality fails for {b}"))?;
        }
    }
    Ok(())
}

fn random_sub(rng: &mut ChaCha8Rng) -> ClosedInterval {
    let den = rng.gen_range(1..=60i64);
    let a = rng.gen_range(0..den);
    let b = rng.gen_range(a + 1..=den);
    let lift = |v: i64| q(1, 2) + q(v, den);
    iv(lift(a), lift(b))
}

fn prop_scaling(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let s = GrowthSchedule::paper();
    for i in 0..50 {
        let space = if i % 2 == 0 { Space::X } else { Space::Y };
        let sub = random_sub(rng);
        let width = sub.length();
        let mut orbit = BaseOrbit::new(&s, space, sub.clone()).map_err(err)?;
        for n in 0..=2000u64 {
            let base = s.block_locate(space, n).map_err(err)?.interval.length();
            ensure(orbit.image().length() == &width * &base, || format!("{space} {sub} at n={n}"))?;
            if n < 2000 {
                orbit.advance().map_err(err)?;
            }
        }
    }
    Ok(())
}

fn prop_monotone(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let s = GrowthSchedule::paper();
    for i in 0..20 {
        let system = [System::Example2X, System::Example2Y][i % 2];
        let series = diam_series(&s, system, &random_sub(rng), 0..=600).map_err(err)?;
        let e1 = q(rng.gen_range(1..=40), 8);
        let e2 = &e1 + &q(rng.gen_range(1..=16), 8);
        for strict in [true, false] {
            let (d1, d2) = (d_set(&series, &e1, strict).map_err(err)?, d_set(&series, &e2, strict).map_err(err)?);
            ensure((0..=600).all(|n| !d2.contains(n) || d1.contains(n)), || format!("D(ε={e2}) ⊄ D(ε={e1})"))?;
        }
    }
    Ok(())
}

fn prop_tent(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let t = PiecewiseLinear::<Rational>::tent();
    for _ in 0..200 {
        let den = rng.gen_range(1..=500i64);
        let a = rng.gen_range(0..=den);
        let b = rng.gen_range(a..=den);
        let (x, y) = (q(a, 2 * den), q(b, 2 * den));
        ensure(tent(&x) == &x * &Rational::from(2u64), || format!("tent({x})"))?;
        let img = t.image(&iv(x.clone(), y.clone())).map_err(err)?;
        ensure(img.length() == (&y - &x) * Rational::from(2u64), || format!("tent image of [{x}, {y}]"))?;
    }
    ensure(tent(&Rational::zero()).is_zero(), || "tent(0)".into())
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    prop_monoid(&mut rng)?;
    prop_duality(&mut rng)?;
    prop_scaling(&mut rng)?;
    prop_monotone(&mut rng)?;
    prop_tent(&mut rng)?;
    Ok("monoid laws 1000 triples; duality 200 subsets per ambient; scaling 50 subintervals to n = 2000; ε-monotonicity; tent doubling: 0 failures".into())
}

fn strictness(pairs: &[(&str, &SensitivityReport, &SensitivityReport)]) -> Outcome {
    let mut total = 0;
    for (name, a, b) in pairs {
        ensure(a.verdicts() == b.verdicts(), || format!("{name}: {:?} vs {:?}", a.verdicts(), b.verdicts()))?;
        total += a.claims.len();
    }
    Ok(format!("{total} verdicts identical under > and ≥"))
}

fn main() {
    let mut h = Harness { failures: 0 };
    let secs = Duration::from_secs;

    h.run("1", "schedule values", Some(secs(1)), schedule_values);
    h.run("2", "diameter formula at k=1", Some(secs(10)), diameter_sweep);
    h.run("3", "oracle equivalence", Some(secs(30)), oracle_equivalence);

    let cfg1 = Example1Config::default();
    let t = Instant::now();
    let ex1 = verify_example1(&cfg1);
    let outcome = ex1.as_ref().map_err(|e| e.to_string()).and_then(|r| example1(r, &cfg1));
    h.record("4", "Example 1 report", Some(secs(10)), t.elapsed(), outcome);

    let cfg2 = Example2Config::default();
    let t = Instant::now();
    let evidence = Example2Evidence::compute(&cfg2);
    let shared = t.elapsed();
    let reports = evidence
        .as_ref()
        .map_err(|e| e.to_string())
        .and_then(|ev| Ok((ev.report(true).map_err(err)?, ev.report(false).map_err(err)?)));

    let t = Instant::now();
    let outcome = reports.as_ref().map_err(Clone::clone).and_then(|(r, _)| claim2(r, &cfg2.epsilon, cfg2.k_max));
    h.record("5", "Example 2 Claim 2", Some(secs(60)), shared + t.elapsed(), outcome);

    let t = Instant::now();
    let outcome = reports.as_ref().map_err(Clone::clone).and_then(|(r, _)| claim1(r, cfg2.k_max));
    h.record("6", "Example 2 Claim 1 (bounded form)", Some(secs(60)), shared + t.elapsed(), outcome);

    h.run("7", "property suites", None, properties);

    h.run("8", "strictness insensitivity", None, || {
        let ex1 = ex1.as_ref().map_err(|e| e.to_string())?;
        let loose = verify_example1(&Example1Config { strict: false, ..Example1Config::default() }).map_err(err)?;
        let (s2, l2) = reports.as_ref().map_err(Clone::clone)?;
        strictness(&[("example1", ex1, &loose), ("example2", s2, l2)])
    });

    if h.failures > 0 {
        println!("{} criteria failed", h.failures);
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
