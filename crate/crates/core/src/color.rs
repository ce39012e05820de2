//! 8-bit sRGB pixels, CIELAB coordinates and the CIE76 color difference.
//!
//! Conversion assumes gamma-encoded sRGB input, D65 reference white and the
//! 2° standard observer.

use serde::{Deserialize, Serialize};

/// An 8-bit sRGB pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PixelColor {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl PixelColor {
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        PixelColor { r, g, b }
    }

    pub fn to_lab(self) -> LabColor {
        srgb_to_lab(self)
    }
}

impl From<[u8; 3]> for PixelColor {
    fn from([r, g, b]: [u8; 3]) -> Self {
        PixelColor { r, g, b }
    }
}

impl std::fmt::Display for PixelColor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "#{:02x}{:02x}{:02x}", self.r, self.g, self.b)
    }
}

/// A CIELAB coordinate. `l` is in [0, 100] for anything produced by [`srgb_to_lab`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabColor {
    pub l: f64,
    pub a: f64,
    pub b: f64,
}

impl LabColor {
    pub const fn new(l: f64, a: f64, b: f64) -> Self {
        LabColor { l, a, b }
    }

    pub fn delta_e(&self, other: &LabColor) -> f64 {
        delta_e(*self, *other)
    }
}

// D65 white, 2° observer, normalized so that Y = 1.
const WHITE_X: f64 = 0.950_47;
const WHITE_Y: f64 = 1.0;
const WHITE_Z: f64 = 1.088_83;

const EPSILON: f64 = 216.0 / 24389.0;
const KAPPA: f64 = 24389.0 / 27.0;

fn srgb_channel_to_linear(v: u8) -> f64 {
    let c = f64::from(v) / 255.0;
    if c <= 0.040_45 {
        c / 12.92
    } else {
        ((c + 0.055) / 1.055).powf(2.4)
    }
}

fn lab_f(t: f64) -> f64 {
    if t > EPSILON {
        t.cbrt()
    } else {
        (KAPPA * t + 16.0) / 116.0
    }
}

/// Convert an sRGB pixel to CIELAB (D65, 2°).
pub fn srgb_to_lab(c: PixelColor) -> LabColor {
    let r = srgb_channel_to_linear(c.r);
    let g = srgb_channel_to_linear(c.g);
    let b = srgb_channel_to_linear(c.b);

    let x = 0.412_456_4 * r + 0.357_576_1 * g + 0.180_437_5 * b;
    let y = 0.212_672_9 * r + 0.715_152_2 * g + 0.072_175_0 * b;
    let z = 0.019_333_9 * r + 0.119_192_0 * g + 0.950_304_1 * b;

    let fx = lab_f(x / WHITE_X);
    let fy = lab_f(y / WHITE_Y);
    let fz = lab_f(z / WHITE_Z);

    LabColor {
        l: (116.0 * fy - 16.0).clamp(0.0, 100.0),
        a: 500.0 * (fx - fy),
        b: 200.0 * (fy - fz),
    }
}

/// CIE76 color difference: Euclidean distance in L*a*b*.
pub fn delta_e(p: LabColor, q: LabColor) -> f64 {
    let dl = q.l - p.l;
    let da = q.a - p.a;
    let db = q.b - p.b;
    (dl * dl + da * da + db * db).sqrt()
}
