use num_traits::One;
use proptest::prelude::*;

use semiflow::plmaps::{iterate_base_interval, tent, BaseOrbit, PiecewiseLinear};
use semiflow::schedule::{GrowthSchedule, Space};
use semiflow::sensitivity::{
    d_set, diam_series, diam_series_closed_form, diam_series_parallel, verify_example1, verify_example2,
    Example1Config, Example2Config, SensitivityReport, System,
};
use semiflow::{ClosedInterval, Interval, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

/// Non-degenerate `[α, β] ⊆ [1/2, 3/2]`.
fn base_sub() -> impl Strategy<Value = ClosedInterval> {
    (1i64..200)
        .prop_flat_map(|den| (Just(den), 0..den))
        .prop_flat_map(|(den, a)| (Just(den), Just(a), a + 1..=den))
        .prop_map(|(den, a, b)| Interval::new(q(1, 2) + q(a, den), q(1, 2) + q(b, den)).unwrap())
}

fn space() -> impl Strategy<Value = Space> {
    prop_oneof![Just(Space::X), Just(Space::Y)]
}

fn system_of(space: Space) -> System {
    match space {
        Space::X => System::Example2X,
        Space::Y => System::Example2Y,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scaling_law(space in space(), sub in base_sub(), n in 0u64..=2000) {
        let s = GrowthSchedule::paper();
        let img = iterate_base_interval(&s, space, &sub, n).unwrap();
        let base = s.block_locate(space, n).unwrap().interval;
        prop_assert_eq!(img.length(), &sub.length() * &base.length());
        prop_assert!(base.contains_interval(&img));
    }

    #[test]
    fn d_set_shrinks_as_epsilon_grows(space in space(), sub in base_sub(), e in 1i64..40, de in 1i64..16, strict in any::<bool>()) {
        let s = GrowthSchedule::paper();
        let series = diam_series(&s, system_of(space), &sub, 0..=400).unwrap();
        let (e1, e2) = (q(e, 8), q(e + de, 8));
        let (small, large) = (d_set(&series, &e1, strict).unwrap(), d_set(&series, &e2, strict).unwrap());
        for n in 0..=400 {
            prop_assert!(!large.contains(n) || small.contains(n), "n={} in D(ε={}) but not D(ε={})", n, e2, e1);
        }
        // non-strict never has fewer members
        let loose = d_set(&series, &e1, false).unwrap();
        let tight = d_set(&series, &e1, true).unwrap();
        prop_assert!((0..=400).all(|n| !tight.contains(n) || loose.contains(n)));
    }

    #[test]
    fn iterated_and_closed_form_d_sets_agree(space in space(), sub in base_sub(), from in 0u64..5000, e in 1i64..64) {
        let s = GrowthSchedule::paper();
        let range = from..=from + 300;
        let it = diam_series(&s, system_of(space), &sub, range.clone()).unwrap();
        let cf = diam_series_closed_form(&s, system_of(space), &sub, range).unwrap();
        prop_assert_eq!(&it.entries, &cf.entries);
        let eps = q(e, 16);
        prop_assert_eq!(d_set(&it, &eps, true).unwrap(), d_set(&cf, &eps, true).unwrap());
    }

    #[test]
    fn parallel_series_is_bit_identical(space in space(), sub in base_sub(), from in 0u64..3000, len in 0u64..600, workers in 1usize..6) {
        let s = GrowthSchedule::paper();
        let serial = diam_series(&s, system_of(space), &sub, from..=from + len).unwrap();
        let parallel = diam_series_parallel(&s, system_of(space), &sub, from..=from + len, workers).unwrap();
        prop_assert_eq!(serial, parallel);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn tent_doubles_on_left_half(a in 0i64..=1000, b in 0i64..=1000) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (x, y) = (q(lo, 2000), q(hi, 2000));
        prop_assert_eq!(tent(&x), &x * &Rational::from(2u64));
        let img = PiecewiseLinear::<Rational>::tent().image(&Interval::new(x.clone(), y.clone()).unwrap()).unwrap();
        prop_assert_eq!(img.length(), (&y - &x) * Rational::from(2u64));
    }

    #[test]
    fn tent_image_stays_in_unit_interval(a in 0i64..=1000, b in 0i64..=1000) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let j = Interval::new(q(lo, 1000), q(hi, 1000)).unwrap();
        let img = PiecewiseLinear::<Rational>::tent().image(&j).unwrap();
        prop_assert!(Interval::new(q(0, 1), Rational::one()).unwrap().contains_interval(&img));
    }
}

#[test]
fn orbit_image_tracks_base_interval() {
    let s = GrowthSchedule::paper();
    for space in [Space::X, Space::Y] {
        let mut o = BaseOrbit::new(&s, space, Interval::new(q(1, 2), q(3, 2)).unwrap()).unwrap();
        while o.index() < 300 {
            assert_eq!(o.image(), &o.interval().interval);
            o.advance().unwrap();
        }
    }
}

fn roundtrip(r: &SensitivityReport) {
    let text = serde_json::to_string(r).unwrap();
    let back: SensitivityReport = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, r);
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
}

#[test]
fn reports_are_deterministic_and_roundtrip() {
    let cfg1 = Example1Config::default();
    let a = verify_example1(&cfg1).unwrap();
    assert_eq!(a, verify_example1(&cfg1).unwrap());
    roundtrip(&a);

    let cfg2 = Example2Config { horizon: 3000, k_max: 2, ..Default::default() };
    let b = verify_example2(&cfg2).unwrap();
    assert_eq!(b, verify_example2(&Example2Config { workers: 1, ..cfg2.clone() }).unwrap());
    roundtrip(&b);
}

#[test]
fn d_sets_agree_through_first_fast_window_prefix() {
    let s = GrowthSchedule::paper().with_index_cap(272152).unwrap();
    let seed = Interval::new(q(1, 2), q(3, 4)).unwrap();
    for space in [Space::X, Space::Y] {
        let it = diam_series(&s, system_of(space), &seed, 0..=272152).unwrap();
        let cf = diam_series_closed_form(&s, system_of(space), &seed, 0..=272152).unwrap();
        for eps in [q(1, 2), q(1, 1), q(3, 4)] {
            for strict in [true, false] {
                assert_eq!(d_set(&it, &eps, strict).unwrap(), d_set(&cf, &eps, strict).unwrap(), "{space} ε={eps}");
            }
        }
    }
}
