mod common;

use emopal::sampler::{color_histogram, sample_positions};
use emopal::sampstats::*;
use emopal::{PixelColor, Regime, SampleSpec};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use common::{exact_hypergeom, feasible_outcomes, image_from_runs, MomentTracker};

fn populations_up_to_12() -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    // every composition of N <= 12 into 1..=3 categories, plus a few wider ones
    for total in 1..=12u64 {
        for a in 0..=total {
            out.push(vec![a, total - a]);
            for b in 0..=(total - a) {
                out.push(vec![a, b, total - a - b]);
            }
        }
        out.push(vec![total]);
    }
    out.push(vec![1, 2, 3, 4, 2]);
    out.push(vec![3, 0, 3, 0, 3, 3]);
    out.retain(|m| m.iter().sum::<u64>() > 0);
    out
}

#[test]
fn pmf_sums_to_one_for_small_populations() {
    for m in populations_up_to_12() {
        let pop = PopulationSpec::new(m.clone()).unwrap();
        for n in 0..=pop.total() {
            let outcomes = feasible_outcomes(&m, n);
            let total: f64 = outcomes.iter().map(|k| hypergeom_pmf(&pop, k, n).unwrap()).sum();
            assert!((total - 1.0).abs() <= 1e-9, "m={m:?} n={n}: {total}");
            // the exact rationals sum to exactly one
            let exact: BigRational = outcomes.iter().map(|k| exact_hypergeom(&m, k)).sum();
            assert_eq!(exact, BigRational::from_integer(1.into()));
        }
    }
}

#[test]
fn pmf_matches_exact_rationals() {
    for m in populations_up_to_12() {
        let pop = PopulationSpec::new(m.clone()).unwrap();
        let n = pop.total() / 2;
        for k in feasible_outcomes(&m, n) {
            let want = exact_hypergeom(&m, &k).to_f64().unwrap();
            let got = hypergeom_pmf(&pop, &k, n).unwrap();
            assert!((got - want).abs() <= 1e-12 * want.max(1e-300) + 1e-15, "m={m:?} k={k:?}");
        }
    }
    let want = exact_hypergeom(&[13, 39], &[2, 3]).to_f64().unwrap();
    assert!((want - 0.27428).abs() < 1e-5);
}

proptest! {
    #[test]
    fn expected_counts_do_not_depend_on_mode(m in prop::collection::vec(0u64..500, 1..8), frac in 0.0..=1.0f64) {
        prop_assume!(m.iter().sum::<u64>() > 0);
        let pop = PopulationSpec::new(m).unwrap();
        let n = (frac * pop.total() as f64) as u64;
        let h = count_moments(&pop, n, Mode::Hypergeometric).unwrap();
        let mm = count_moments(&pop, n, Mode::Multinomial).unwrap();
        prop_assert_eq!(&h.expected, &mm.expected);
        prop_assert_eq!(&h.expected, &expected_counts(&pop, n));
        for (i, row) in h.covariance.iter().enumerate() {
            prop_assert!(row.iter().sum::<f64>().abs() < 1e-9 * (n as f64 + 1.0));
            prop_assert!((h.variance[i] - mm.variance[i] * h.c).abs() < 1e-9 * (n as f64 + 1.0));
        }
    }
}

fn category_image(m: &[u64]) -> emopal::ImagePixels {
    let runs: Vec<(PixelColor, usize)> =
        m.iter().enumerate().map(|(i, &c)| (PixelColor::new(i as u8, 0, 0), c as usize)).collect();
    let total: usize = m.iter().sum::<u64>() as usize;
    image_from_runs(&runs, total)
}

fn track(m: &[u64], n: usize, regime: Regime, trials: u64) -> MomentTracker {
    let img = category_image(m);
    let mut t = MomentTracker::new();
    for seed in 0..trials {
        let pos = sample_positions(img.len(), &SampleSpec::new(n, regime, seed)).unwrap();
        let mut counts = vec![0.0; m.len()];
        for p in pos {
            counts[img.pixels()[p].r as usize] += 1.0;
        }
        t.push(counts);
    }
    t
}

#[test]
fn empirical_means_converge_to_expected_counts() {
    let m = [500u64, 300, 150, 50];
    let pop = PopulationSpec::new(m.to_vec()).unwrap();
    for regime in [Regime::WithReplacement, Regime::WithoutReplacement] {
        let t = track(&m, 100, regime, 10_000);
        for (i, e) in expected_counts(&pop, 100).iter().enumerate() {
            assert!((t.mean(i) - e).abs() <= 3.0 * t.mean_se(i), "{regime}: {} vs {e}", t.mean(i));
        }
    }
}

#[test]
fn variance_ratio_tracks_correction_factor() {
    let m = [5000u64, 3000, 2000];
    let n = 200;
    let with = track(&m, n, Regime::WithReplacement, 10_000);
    let without = track(&m, n, Regime::WithoutReplacement, 10_000);
    let c = finite_population_correction(10_000, n as u64);
    for i in 0..m.len() {
        let ratio = without.cov(i, i) / with.cov(i, i);
        assert!((ratio - c).abs() / c <= 0.10, "category {i}: ratio {ratio}, c {c}");
    }
}

#[test]
fn histogram_feeds_population() {
    let m = [7u64, 0, 3, 12];
    let img = category_image(&m);
    let hist = color_histogram(&img);
    let counts: Vec<u64> = hist.values().copied().collect();
    assert_eq!(counts, vec![7, 3, 12]);
    assert_eq!(PopulationSpec::new(counts).unwrap().total(), img.len() as u64);
}
