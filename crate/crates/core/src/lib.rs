//! Emotion-word annotation of images.
//!
//! Pixels are drawn at random from an image, each is matched to the closest
//! color of a color-emotion palette under the CIE76 difference, and the
//! emotion words of the matched colors are tallied. Companion modules measure
//! what the reduction costs: entropy and Fano diagnostics in [`infometrics`],
//! and with/without replacement count statistics in [`sampstats`].

pub mod annotator;
pub mod color;
pub mod error;
pub mod index;
pub mod infometrics;
pub mod ingest;
pub mod palette;
pub mod report;
pub mod sampler;
pub mod sampstats;
pub mod svg;

pub use annotator::{annotate, rank_words, AnnotationReport, WordCount};
pub use color::{delta_e, srgb_to_lab, LabColor, PixelColor};
pub use error::{Error, Result};
pub use palette::{load_palette, nearest_entry, words_for, Palette, PaletteEntry};
pub use sampler::{color_histogram, sample_pixels, ImagePixels, Regime, SampleSpec};
