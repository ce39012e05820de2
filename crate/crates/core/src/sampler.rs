//! Random pixel subsets: with replacement, without replacement (partial
//! Fisher-Yates over positions) or a full row-major scan.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::color::PixelColor;
use crate::error::{Error, Result};

/// Identifies the generator behind every seeded draw; recorded in reports.
pub const RNG_ALGORITHM: &str = "chacha8-rand_chacha-0.9-seed_from_u64";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImagePixels {
    width: usize,
    height: usize,
    pixels: Vec<PixelColor>,
}

impl ImagePixels {
    pub fn new(width: usize, height: usize, pixels: Vec<PixelColor>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage(format!("{width}x{height} image has no pixels")));
        }
        if width.checked_mul(height) != Some(pixels.len()) {
            return Err(Error::InvalidImage(format!(
                "{width}x{height} image needs {} pixels, got {}",
                width.saturating_mul(height),
                pixels.len()
            )));
        }
        Ok(ImagePixels { width, height, pixels })
    }

    pub fn uniform(width: usize, height: usize, c: PixelColor) -> Result<Self> {
        Self::new(width, height, vec![c; width.saturating_mul(height)])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// N, the pixel count.
    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[PixelColor] {
        &self.pixels
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    WithReplacement,
    WithoutReplacement,
    FullScan,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::WithReplacement => "with_replacement",
            Regime::WithoutReplacement => "without_replacement",
            Regime::FullScan => "full_scan",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub n: usize,
    pub regime: Regime,
    pub seed: u64,
}

impl SampleSpec {
    pub fn new(n: usize, regime: Regime, seed: u64) -> Self {
        SampleSpec { n, regime, seed }
    }

    pub fn full_scan() -> Self {
        SampleSpec { n: 0, regime: Regime::FullScan, seed: 0 }
    }

    pub fn validate(&self, total: usize) -> Result<()> {
        match self.regime {
            Regime::FullScan => Ok(()),
            _ if self.n == 0 => Err(Error::EmptySample),
            Regime::WithoutReplacement if self.n > total => Err(Error::SampleTooLarge { n: self.n, total }),
            _ => Ok(()),
        }
    }

    /// Number of pixels this spec draws from an image of `total` pixels.
    pub fn draws(&self, total: usize) -> usize {
        match self.regime {
            Regime::FullScan => total,
            _ => self.n,
        }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed for trial `index` of stream `stream`, derived from a master seed with
/// the splitmix64 finalizer. Independent of execution order.
pub fn derive_seed(master: u64, stream: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(stream.wrapping_mul(0xD1B5_4A32_D192_ED03))
        .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Positions in `0..total` selected by `spec`.
pub fn sample_positions(total: usize, spec: &SampleSpec) -> Result<Vec<usize>> {
    spec.validate(total)?;
    let n = spec.n;
    match spec.regime {
        Regime::FullScan => Ok((0..total).collect()),
        Regime::WithReplacement => {
            let mut rng = rng_from_seed(spec.seed);
            Ok((0..n).map(|_| rng.random_range(0..total)).collect())
        }
        Regime::WithoutReplacement => {
            // Partial Fisher-Yates on a virtual identity permutation; only
            // displaced slots are stored.
            let mut rng = rng_from_seed(spec.seed);
            let mut displaced: HashMap<usize, usize> = HashMap::with_capacity(2 * n);
            let mut out = Vec::with_capacity(n);
            for i in 0..n {
                let j = rng.random_range(i..total);
                let at_j = displaced.get(&j).copied().unwrap_or(j);
                let at_i = displaced.get(&i).copied().unwrap_or(i);
                displaced.insert(j, at_i);
                out.push(at_j);
            }
            Ok(out)
        }
    }
}

pub fn sample_pixels(img: &ImagePixels, spec: &SampleSpec) -> Result<Vec<PixelColor>> {
    if spec.regime == Regime::FullScan {
        return Ok(img.pixels.clone());
    }
    let positions = sample_positions(img.len(), spec)?;
    Ok(positions.into_iter().map(|i| img.pixels[i]).collect())
}

/// Pixel count per distinct color.
pub fn color_histogram(img: &ImagePixels) -> BTreeMap<PixelColor, u64> {
    let mut counts = BTreeMap::new();
    for &p in &img.pixels {
        *counts.entry(p).or_insert(0) += 1;
    }
    counts
}
