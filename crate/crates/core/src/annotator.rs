//! Sample pixels, match each to its nearest palette color, count the emotion
//! words of the matched colors, and keep the k most frequent.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::color::srgb_to_lab;
use crate::error::{Error, Result};
use crate::palette::Palette;
use crate::sampler::{sample_pixels, ImagePixels, Regime, SampleSpec, RNG_ALGORITHM};

pub const DEFAULT_TOP_K: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordCount {
    pub word: String,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleMeta {
    pub regime: Regime,
    pub seed: u64,
    /// Pixels in the image.
    pub total: usize,
    /// Pixels actually drawn (equals `total` for a full scan).
    pub n: usize,
    pub k: usize,
    pub palette_id: String,
    pub rng: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationReport {
    /// Matched-pixel count per palette entry index; entries never matched are absent.
    pub entry_counts: BTreeMap<usize, u64>,
    pub word_counts: BTreeMap<String, u64>,
    pub top_words: Vec<WordCount>,
    pub meta: SampleMeta,
}

impl AnnotationReport {
    pub fn n(&self) -> usize {
        self.meta.n
    }

    pub fn top_word_set(&self) -> Vec<&str> {
        let mut s: Vec<&str> = self.top_words.iter().map(|w| w.word.as_str()).collect();
        s.sort_unstable();
        s
    }
}

/// Operation counts and wall time per phase of one [`annotate_with_stats`] call.
#[derive(Debug, Clone, Copy, Default)]
pub struct PhaseStats {
    pub nearest_matches: u64,
    pub sample: Duration,
    pub matching: Duration,
    pub ranking: Duration,
}

pub fn annotate(img: &ImagePixels, p: &Palette, spec: &SampleSpec, k: usize) -> Result<AnnotationReport> {
    annotate_with_stats(img, p, spec, k).map(|(r, _)| r)
}

pub fn annotate_with_stats(
    img: &ImagePixels,
    p: &Palette,
    spec: &SampleSpec,
    k: usize,
) -> Result<(AnnotationReport, PhaseStats)> {
    if k == 0 {
        return Err(Error::InvalidArgument("top-k must be at least 1".into()));
    }
    let mut stats = PhaseStats::default();

    let t = Instant::now();
    let sample = sample_pixels(img, spec)?;
    stats.sample = t.elapsed();

    let t = Instant::now();
    let mut counts = vec![0u64; p.len()];
    for px in &sample {
        counts[p.nearest_entry(srgb_to_lab(*px))] += 1;
        stats.nearest_matches += 1;
    }
    stats.matching = t.elapsed();

    let t = Instant::now();
    let meta = SampleMeta {
        regime: spec.regime,
        seed: spec.seed,
        total: img.len(),
        n: sample.len(),
        k,
        palette_id: p.id().to_string(),
        rng: RNG_ALGORITHM.to_string(),
    };
    let report = report_from_entry_counts(p, &counts, k, meta)?;
    stats.ranking = t.elapsed();

    Ok((report, stats))
}

/// Assemble a report from dense per-entry counts.
pub fn report_from_entry_counts(p: &Palette, counts: &[u64], k: usize, meta: SampleMeta) -> Result<AnnotationReport> {
    if counts.len() != p.len() {
        return Err(Error::Invariant(format!("{} entry counts for a {}-entry palette", counts.len(), p.len())));
    }
    let word_counts = word_counts(p, counts);
    let top_words = top_k(&word_counts, k);
    let entry_counts = counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, &c)| (i, c)).collect();
    let report = AnnotationReport { entry_counts, word_counts, top_words, meta };
    check_conservation(&report)?;
    Ok(report)
}

/// Each matched pixel adds one to every word of its entry.
pub fn word_counts(p: &Palette, counts: &[u64]) -> BTreeMap<String, u64> {
    let mut words = BTreeMap::new();
    for (entry, &c) in p.entries().iter().zip(counts) {
        if c == 0 {
            continue;
        }
        for w in &entry.words {
            *words.entry(w.clone()).or_insert(0) += c;
        }
    }
    words
}

/// Count descending, then word ascending.
pub fn rank_words(word_counts: &BTreeMap<String, u64>) -> Vec<WordCount> {
    let mut ranked: Vec<WordCount> =
        word_counts.iter().map(|(w, &c)| WordCount { word: w.clone(), count: c }).collect();
    ranked.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.word.cmp(&b.word)));
    ranked
}

pub fn top_k(word_counts: &BTreeMap<String, u64>, k: usize) -> Vec<WordCount> {
    let mut ranked = rank_words(word_counts);
    ranked.truncate(k);
    ranked
}

fn check_conservation(r: &AnnotationReport) -> Result<()> {
    let total: u64 = r.entry_counts.values().sum();
    if total != r.meta.n as u64 {
        return Err(Error::Invariant(format!("entry counts sum to {total}, expected {}", r.meta.n)));
    }
    Ok(())
}
