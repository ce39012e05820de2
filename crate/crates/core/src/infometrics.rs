//! Entropy, MAP decision error, the Fano bound and the coupling model
//! p(x, y) = k_x p(x)^2 relating color proportions to emotion coding cost.
//!
//! All logarithms are base 2. Zero-probability symbols contribute nothing to
//! any sum.

use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::annotator::AnnotationReport;
use crate::color::srgb_to_lab;
use crate::error::{Error, Result};
use crate::palette::Palette;
use crate::sampler::{color_histogram, ImagePixels};
use crate::sampstats::correction_factor;

const SUM_TOLERANCE: f64 = 1e-9;

/// Number of distinct 8-bit RGB colors.
pub const RGB_COLOR_SPACE: u64 = 256 * 256 * 256;

fn xlog2x(p: f64) -> f64 {
    if p > 0.0 {
        p * p.log2()
    } else {
        0.0
    }
}

fn check_probs<'a>(probs: impl Iterator<Item = &'a f64>) -> Result<()> {
    let mut sum = 0.0;
    for &p in probs {
        if !p.is_finite() || p < 0.0 {
            return Err(Error::InvalidDistribution(format!("probability {p} is not a finite nonnegative number")));
        }
        sum += p;
    }
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(Error::InvalidDistribution(format!("probabilities sum to {sum}")));
    }
    Ok(())
}

fn normalize_counts<K: Ord>(counts: impl IntoIterator<Item = (K, u64)>) -> Result<BTreeMap<K, f64>> {
    let counts: BTreeMap<K, u64> = counts.into_iter().fold(BTreeMap::new(), |mut m, (k, c)| {
        *m.entry(k).or_insert(0) += c;
        m
    });
    let total: u64 = counts.values().sum();
    if total == 0 {
        return Err(Error::InvalidDistribution("no observations".into()));
    }
    Ok(counts.into_iter().map(|(k, c)| (k, c as f64 / total as f64)).collect())
}

/// A probability mass function over symbols of type `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution<S: Ord> {
    probs: BTreeMap<S, f64>,
}

impl<S: Ord> Distribution<S> {
    pub fn new(probs: BTreeMap<S, f64>) -> Result<Self> {
        check_probs(probs.values())?;
        Ok(Distribution { probs })
    }

    pub fn from_counts(counts: impl IntoIterator<Item = (S, u64)>) -> Result<Self> {
        Ok(Distribution { probs: normalize_counts(counts)? })
    }

    pub fn uniform(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::from_counts(symbols.into_iter().map(|s| (s, 1)))
    }

    pub fn probs(&self) -> &BTreeMap<S, f64> {
        &self.probs
    }

    pub fn get(&self, s: &S) -> f64 {
        self.probs.get(s).copied().unwrap_or(0.0)
    }

    pub fn support(&self) -> impl Iterator<Item = (&S, f64)> {
        self.probs.iter().filter(|(_, &p)| p > 0.0).map(|(s, &p)| (s, p))
    }
}

/// A joint probability mass function p(x, y).
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution<X: Ord, Y: Ord> {
    probs: BTreeMap<(X, Y), f64>,
}

impl<X: Ord + Clone, Y: Ord + Clone> JointDistribution<X, Y> {
    pub fn new(probs: BTreeMap<(X, Y), f64>) -> Result<Self> {
        check_probs(probs.values())?;
        Ok(JointDistribution { probs })
    }

    pub fn from_counts(counts: impl IntoIterator<Item = ((X, Y), u64)>) -> Result<Self> {
        Ok(JointDistribution { probs: normalize_counts(counts)? })
    }

    pub fn probs(&self) -> &BTreeMap<(X, Y), f64> {
        &self.probs
    }

    pub fn marginal_x(&self) -> BTreeMap<X, f64> {
        let mut m = BTreeMap::new();
        for ((x, _), &p) in &self.probs {
            *m.entry(x.clone()).or_insert(0.0) += p;
        }
        m
    }

    pub fn marginal_y(&self) -> BTreeMap<Y, f64> {
        let mut m = BTreeMap::new();
        for ((_, y), &p) in &self.probs {
            *m.entry(y.clone()).or_insert(0.0) += p;
        }
        m
    }

    /// The equivocation H(Y|X) = -Σ p(x,y) log p(x,y)/p(x).
    pub fn conditional_entropy(&self) -> f64 {
        let px = self.marginal_x();
        let mut h = 0.0;
        for ((x, _), &p) in &self.probs {
            if p > 0.0 {
                h -= p * (p / px[x]).log2();
            }
        }
        h
    }
}

/// Per-color coupling coefficients k_x in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingCoefficients<S: Ord> {
    k: BTreeMap<S, f64>,
}

impl<S: Ord + Debug> CouplingCoefficients<S> {
    pub fn new(k: BTreeMap<S, f64>) -> Result<Self> {
        for (s, &v) in &k {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidArgument(format!("coupling for {s:?} is {v}, outside [0, 1]")));
            }
        }
        Ok(CouplingCoefficients { k })
    }

    pub fn constant(symbols: impl IntoIterator<Item = S>, value: f64) -> Result<Self> {
        Self::new(symbols.into_iter().map(|s| (s, value)).collect())
    }

    pub fn get(&self, s: &S) -> Option<f64> {
        self.k.get(s).copied()
    }

    fn require(&self, s: &S) -> Result<f64> {
        self.get(s).ok_or_else(|| Error::MissingCoupling(format!("{s:?}")))
    }

    fn require_positive(&self, s: &S) -> Result<f64> {
        let k = self.require(s)?;
        if k == 0.0 {
            return Err(Error::ZeroCoupling(format!("{s:?}")));
        }
        Ok(k)
    }
}

/// Shannon entropy in bits.
pub fn entropy<S: Ord>(d: &Distribution<S>) -> f64 {
    -d.probs.values().map(|&p| xlog2x(p)).sum::<f64>()
}

/// h(x) = -x log x - (1-x) log(1-x), with h(0) = h(1) = 0.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidArgument(format!("binary entropy argument {x} outside [0, 1]")));
    }
    Ok(-xlog2x(x) - xlog2x(1.0 - x))
}

/// Upper bound on H(Y|X) for a decoder with error probability `eps` over an
/// alphabet of `alphabet_size` labels: eps log(|Y| - 1) + h(eps).
pub fn fano_bound(eps: f64, alphabet_size: usize) -> Result<f64> {
    if alphabet_size < 2 {
        return Err(Error::InvalidArgument(format!("alphabet size {alphabet_size} < 2")));
    }
    Ok(eps * ((alphabet_size - 1) as f64).log2() + binary_entropy(eps)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapError {
    /// Error of the MAP decision rule, the minimum over all rules.
    pub eps: f64,
    /// 1 - max_y p(y): the error of always guessing the most common label.
    pub upper: f64,
}

pub fn map_error<X: Ord + Clone, Y: Ord + Clone>(j: &JointDistribution<X, Y>) -> MapError {
    // Σ_x p(x)(1 - max_y p(y|x)) = Σ_x (p(x) - max_y p(x,y)); empty rows add 0.
    let mut best: BTreeMap<&X, (f64, f64)> = BTreeMap::new();
    for ((x, _), &p) in &j.probs {
        let slot = best.entry(x).or_insert((0.0, 0.0));
        slot.0 += p;
        slot.1 = slot.1.max(p);
    }
    let eps = best.values().map(|&(px, pmax)| px - pmax).sum::<f64>().max(0.0);
    let upper = 1.0 - j.marginal_y().values().copied().fold(0.0, f64::max);
    MapError { eps, upper }
}

/// Unnormalized joint weight k_x p(x)^2 per supported color.
pub fn model_joint<S: Ord + Clone + Debug>(
    px: &Distribution<S>,
    k: &CouplingCoefficients<S>,
) -> Result<BTreeMap<S, f64>> {
    px.support().map(|(x, p)| Ok((x.clone(), k.require(x)? * p * p))).collect()
}

/// Closed form H(X) - Σ p(x) log k_x for the coupling model.
pub fn model_equivocation<S: Ord + Debug>(px: &Distribution<S>, k: &CouplingCoefficients<S>) -> Result<f64> {
    let mut log_k = 0.0;
    for (x, p) in px.support() {
        log_k += p * k.require_positive(x)?.log2();
    }
    Ok(entropy(px) - log_k)
}

/// H(X) - E[log k_x]: how the minimum decoding error grows with the coupling.
pub fn error_proxy<S: Ord + Debug>(px: &Distribution<S>, k: &CouplingCoefficients<S>) -> Result<f64> {
    let logs: Vec<(f64, f64)> =
        px.support().map(|(x, p)| Ok((p, k.require_positive(x)?.log2()))).collect::<Result<_>>()?;
    let expected_log_k: f64 = logs.iter().map(|(p, l)| p * l).sum();
    Ok(entropy(px) - expected_log_k)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CodingOverhead {
    pub k_uniform: f64,
    pub overhead_bits: f64,
}

/// Coupling when every color gets an equal share of the vocabulary, and its cost -log2 k.
pub fn coding_overhead(vocabulary_size: u64, color_space_size: u64) -> Result<CodingOverhead> {
    if vocabulary_size == 0 || color_space_size == 0 {
        return Err(Error::InvalidArgument("vocabulary and color space sizes must be positive".into()));
    }
    let k_uniform = vocabulary_size as f64 / color_space_size as f64;
    Ok(CodingOverhead { k_uniform, overhead_bits: (color_space_size as f64).log2() - (vocabulary_size as f64).log2() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfoDiagnostics {
    /// Entropy of the image's RGB histogram.
    pub h_x_bits: f64,
    /// Entropy of the sample's matched-entry distribution.
    pub entry_entropy_bits: f64,
    pub k_uniform: f64,
    pub coding_overhead_bits: f64,
    /// Total variation distance between the sampled and full-scan entry distributions.
    pub disagreement: f64,
    pub fano_bound_bits: f64,
    pub c: f64,
}

/// Full-scan matched-entry counts, matching each distinct color once.
pub fn full_scan_entry_counts(img: &ImagePixels, p: &Palette) -> Vec<u64> {
    let mut counts = vec![0u64; p.len()];
    for (color, n) in color_histogram(img) {
        counts[p.nearest_entry(srgb_to_lab(color))] += n;
    }
    counts
}

pub fn image_diagnostics(img: &ImagePixels, report: &AnnotationReport, p: &Palette) -> Result<InfoDiagnostics> {
    if report.meta.total != img.len() || report.meta.palette_id != p.id() {
        return Err(Error::InvalidArgument("report was not produced from this image and palette".into()));
    }
    let px = Distribution::from_counts(color_histogram(img))?;
    let h_x_bits = entropy(&px);

    let sampled = Distribution::from_counts(report.entry_counts.iter().map(|(&i, &c)| (i, c)))?;
    let entry_entropy_bits = entropy(&sampled);

    let full = full_scan_entry_counts(img, p);
    let full = Distribution::from_counts(full.iter().enumerate().map(|(i, &c)| (i, c)))?;
    let disagreement = 0.5
        * (0..p.len()).map(|i| (sampled.get(&i) - full.get(&i)).abs()).sum::<f64>();
    let disagreement = disagreement.clamp(0.0, 1.0);

    let vocab = p.vocabulary().len();
    let fano_bound_bits = if vocab >= 2 { fano_bound(disagreement, vocab)? } else { 0.0 };

    let overhead = coding_overhead(vocab as u64, RGB_COLOR_SPACE)?;
    let c = correction_factor(report.meta.regime, img.len(), report.meta.n);

    Ok(InfoDiagnostics {
        h_x_bits,
        entry_entropy_bits,
        k_uniform: overhead.k_uniform,
        coding_overhead_bits: overhead.overhead_bits,
        disagreement,
        fano_bound_bits,
        c,
    })
}
