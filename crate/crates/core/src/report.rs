//! The per-image report written by `emopal annotate`.
//!
//! Field names are a stable external contract.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::annotator::{annotate_with_stats, AnnotationReport, PhaseStats, WordCount};
use crate::error::Result;
use crate::infometrics::{image_diagnostics, InfoDiagnostics};
use crate::palette::Palette;
use crate::sampler::{Regime, SampleSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryCount {
    pub index: usize,
    pub name: String,
    pub count: u64,
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportPayload {
    pub palette_id: String,
    pub image: String,
    pub image_hash: String,
    pub N: usize,
    pub n: usize,
    pub regime: Regime,
    pub seed: u64,
    pub rng: String,
    pub k: usize,
    pub entry_counts: Vec<EntryCount>,
    pub word_counts: BTreeMap<String, u64>,
    pub top_words: Vec<WordCount>,
    pub H_X_bits: f64,
    pub entry_entropy_bits: f64,
    pub coding_overhead_bits: f64,
    pub k_uniform: f64,
    pub disagreement: f64,
    pub fano_bound_bits: f64,
    pub c: f64,
}

impl ReportPayload {
    pub fn new(image: &str, image_hash: &str, palette: &Palette, r: &AnnotationReport, d: &InfoDiagnostics) -> Self {
        let entry_counts = r
            .entry_counts
            .iter()
            .map(|(&index, &count)| EntryCount { index, name: palette.entries()[index].name.clone(), count })
            .collect();
        ReportPayload {
            palette_id: r.meta.palette_id.clone(),
            image: image.to_string(),
            image_hash: image_hash.to_string(),
            N: r.meta.total,
            n: r.meta.n,
            regime: r.meta.regime,
            seed: r.meta.seed,
            rng: r.meta.rng.clone(),
            k: r.meta.k,
            entry_counts,
            word_counts: r.word_counts.clone(),
            top_words: r.top_words.clone(),
            H_X_bits: d.h_x_bits,
            entry_entropy_bits: d.entry_entropy_bits,
            coding_overhead_bits: d.coding_overhead_bits,
            k_uniform: d.k_uniform,
            disagreement: d.disagreement,
            fano_bound_bits: d.fano_bound_bits,
            c: d.c,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "image {} ({} pixels, {} drawn, {}, seed {})\n",
            self.image, self.N, self.n, self.regime, self.seed
        );
        for (i, w) in self.top_words.iter().enumerate() {
            s.push_str(&format!("{:>3}. {:<20} {}\n", i + 1, w.word, w.count));
        }
        s.push_str(&format!(
            "H(X) {:.4} bits, entry entropy {:.4} bits, coding overhead {:.4} bits, fano bound {:.4} bits, c {:.6}\n",
            self.H_X_bits, self.entry_entropy_bits, self.coding_overhead_bits, self.fano_bound_bits, self.c
        ));
        s
    }
}

pub struct AnnotatedImage {
    pub report: AnnotationReport,
    pub diagnostics: InfoDiagnostics,
    pub stats: PhaseStats,
}

pub fn annotate_image(
    img: &crate::sampler::ImagePixels,
    palette: &Palette,
    spec: &SampleSpec,
    k: usize,
) -> Result<AnnotatedImage> {
    let (report, stats) = annotate_with_stats(img, palette, spec, k)?;
    let diagnostics = image_diagnostics(img, &report, palette)?;
    Ok(AnnotatedImage { report, diagnostics, stats })
}
