//! Count statistics for drawing n pixels from an N-pixel image with category
//! counts m_i: the multivariate hypergeometric law (without replacement) and
//! its multinomial counterpart (with replacement).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_binomial;

use crate::annotator::{report_from_entry_counts, AnnotationReport, SampleMeta};
use crate::color::srgb_to_lab;
use crate::error::{Error, Result};
use crate::palette::Palette;
use crate::sampler::{derive_seed, sample_positions, ImagePixels, Regime, SampleSpec, RNG_ALGORITHM};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PopulationSpec {
    total: u64,
    counts: Vec<u64>,
}

impl PopulationSpec {
    pub fn new(counts: Vec<u64>) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::InvalidArgument("population must contain at least one item".into()));
        }
        Ok(PopulationSpec { total, counts })
    }

    /// N.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// m_i.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Hypergeometric,
    Multinomial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub mode: Mode,
    pub n: u64,
    pub expected: Vec<f64>,
    pub variance: Vec<f64>,
    /// Full I x I matrix; the diagonal repeats `variance`.
    pub covariance: Vec<Vec<f64>>,
    pub c: f64,
}

/// Finite-population correction (N - n)/(N - 1); 1 for a single-item population.
pub fn finite_population_correction(total: u64, n: u64) -> f64 {
    if total <= 1 {
        1.0
    } else {
        (total as f64 - n as f64) / (total as f64 - 1.0)
    }
}

/// Variance scaling for a sampling regime: 1 with replacement, the finite
/// population correction without, and 0 for a full scan (a census).
pub fn correction_factor(regime: Regime, total: usize, n: usize) -> f64 {
    match regime {
        Regime::WithReplacement => 1.0,
        Regime::WithoutReplacement => finite_population_correction(total as u64, n as u64),
        Regime::FullScan if total <= 1 => 1.0,
        Regime::FullScan => 0.0,
    }
}

/// Probability of drawing exactly `k_i` of each category in `n` draws without replacement.
pub fn hypergeom_pmf(pop: &PopulationSpec, k: &[u64], n: u64) -> Result<f64> {
    if k.len() != pop.counts.len() {
        return Err(Error::InvalidOutcome(format!("{} counts for {} categories", k.len(), pop.counts.len())));
    }
    if n > pop.total {
        return Err(Error::InvalidOutcome(format!("n = {n} exceeds N = {}", pop.total)));
    }
    let sum: u64 = k.iter().sum();
    if sum != n {
        return Err(Error::InvalidOutcome(format!("counts sum to {sum}, expected n = {n}")));
    }
    let mut log_p = -ln_binomial(pop.total, n);
    for (i, (&ki, &mi)) in k.iter().zip(&pop.counts).enumerate() {
        if ki > mi {
            return Err(Error::InvalidOutcome(format!("k[{i}] = {ki} exceeds m[{i}] = {mi}")));
        }
        log_p += ln_binomial(mi, ki);
    }
    Ok(log_p.exp())
}

/// E(X_i) = n m_i / N, shared by both regimes.
pub fn expected_counts(pop: &PopulationSpec, n: u64) -> Vec<f64> {
    let (n, total) = (n as f64, pop.total as f64);
    pop.counts.iter().map(|&m| n * m as f64 / total).collect()
}

pub fn count_moments(pop: &PopulationSpec, n: u64, mode: Mode) -> Result<MomentReport> {
    let c = match mode {
        Mode::Multinomial => 1.0,
        Mode::Hypergeometric => {
            if n > pop.total {
                return Err(Error::SampleTooLarge { n: n as usize, total: pop.total as usize });
            }
            finite_population_correction(pop.total, n)
        }
    };
    let total = pop.total as f64;
    let nf = n as f64;
    let shares: Vec<f64> = pop.counts.iter().map(|&m| m as f64 / total).collect();
    let covariance: Vec<Vec<f64>> = shares
        .iter()
        .enumerate()
        .map(|(i, &pi)| {
            shares
                .iter()
                .enumerate()
                .map(|(j, &pj)| if i == j { nf * pi * (1.0 - pi) * c } else { -nf * pi * pj * c })
                .collect()
        })
        .collect();
    let variance = (0..shares.len()).map(|i| covariance[i][i]).collect();
    Ok(MomentReport { mode, n, expected: expected_counts(pop, n), variance, covariance, c })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeAgreement {
    pub regime: Regime,
    /// Fraction of trials whose top-k word set equals the full-scan top-k set.
    pub agreement_rate: f64,
    /// Per palette entry, mean matched count over trials.
    pub empirical_mean: Vec<f64>,
    /// Per palette entry, unbiased sample variance of the matched count.
    pub empirical_variance: Vec<f64>,
    pub closed_form: MomentReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementStats {
    pub total: usize,
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub rng: String,
    /// Full-scan matched count per palette entry (the m_i).
    pub population: Vec<u64>,
    pub full_scan_top: Vec<String>,
    pub with_replacement: RegimeAgreement,
    pub without_replacement: RegimeAgreement,
}

impl AgreementStats {
    pub fn rate_difference(&self) -> f64 {
        (self.with_replacement.agreement_rate - self.without_replacement.agreement_rate).abs()
    }
}

/// Repeated sampled annotation under both regimes, compared to the full scan.
///
/// Trial `t` of regime `r` uses seed `derive_seed(seed, r, t)`, so the result
/// does not depend on how trials are scheduled across threads.
pub fn regime_agreement(
    img: &ImagePixels,
    p: &Palette,
    n: usize,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<AgreementStats> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let total = img.len();
    SampleSpec::new(n, Regime::WithoutReplacement, seed).validate(total)?;

    // Each pixel's palette match is fixed, so match once and sample indices.
    let matched: Vec<usize> = img.pixels().iter().map(|&px| p.nearest_entry(srgb_to_lab(px))).collect();
    let mut population = vec![0u64; p.len()];
    for &e in &matched {
        population[e] += 1;
    }
    let meta = |regime, seed, n| SampleMeta {
        regime,
        seed,
        total,
        n,
        k,
        palette_id: p.id().to_string(),
        rng: RNG_ALGORITHM.to_string(),
    };
    let full = report_from_entry_counts(p, &population, k, meta(Regime::FullScan, 0, total))?;
    let full_top: Vec<String> = full.top_word_set().into_iter().map(String::from).collect();
    let pop = PopulationSpec::new(population.clone())?;

    let run = |regime: Regime, stream: u64| -> Result<RegimeAgreement> {
        let outcomes: Vec<(Vec<u64>, bool)> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let spec = SampleSpec::new(n, regime, derive_seed(seed, stream, t as u64));
                let mut counts = vec![0u64; p.len()];
                for pos in sample_positions(total, &spec)? {
                    counts[matched[pos]] += 1;
                }
                let report: AnnotationReport = report_from_entry_counts(p, &counts, k, meta(regime, spec.seed, n))?;
                let agrees = report.top_word_set() == full_top.iter().map(String::as_str).collect::<Vec<_>>();
                Ok((counts, agrees))
            })
            .collect::<Result<_>>()?;

        let agreement_rate = outcomes.iter().filter(|(_, a)| *a).count() as f64 / trials as f64;
        let (empirical_mean, empirical_variance) = column_moments(outcomes.iter().map(|(c, _)| c.as_slice()), p.len());
        let mode = match regime {
            Regime::WithoutReplacement => Mode::Hypergeometric,
            _ => Mode::Multinomial,
        };
        Ok(RegimeAgreement {
            regime,
            agreement_rate,
            empirical_mean,
            empirical_variance,
            closed_form: count_moments(&pop, n as u64, mode)?,
        })
    };

    Ok(AgreementStats {
        total,
        n,
        k,
        trials,
        seed,
        rng: RNG_ALGORITHM.to_string(),
        population,
        full_scan_top: full_top.clone(),
        with_replacement: run(Regime::WithReplacement, 1)?,
        without_replacement: run(Regime::WithoutReplacement, 2)?,
    })
}

fn column_moments<'a>(rows: impl Iterator<Item = &'a [u64]> + Clone, width: usize) -> (Vec<f64>, Vec<f64>) {
    let mut mean = vec![0.0; width];
    let mut count = 0usize;
    for row in rows.clone() {
        count += 1;
        for (m, &x) in mean.iter_mut().zip(row) {
            *m += x as f64;
        }
    }
    mean.iter_mut().for_each(|m| *m /= count as f64);
    let mut var = vec![0.0; width];
    if count > 1 {
        for row in rows {
            for ((v, &x), m) in var.iter_mut().zip(row).zip(&mean) {
                *v += (x as f64 - m).powi(2);
            }
        }
        var.iter_mut().for_each(|v| *v /= (count - 1) as f64);
    }
    (mean, var)
}
