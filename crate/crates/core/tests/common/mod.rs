#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::Path;

use emopal::infometrics::JointDistribution;
use emopal::{ImagePixels, Palette, PixelColor};
use image::{ImageBuffer, Rgb};
use num_bigint::BigUint;
use num_rational::BigRational;
use rand::Rng;

/// Row-major image made of runs of colors, `width` pixels wide.
pub fn image_from_runs(runs: &[(PixelColor, usize)], width: usize) -> ImagePixels {
    let px: Vec<PixelColor> = runs.iter().flat_map(|&(c, n)| std::iter::repeat_n(c, n)).collect();
    assert_eq!(px.len() % width, 0);
    let height = px.len() / width;
    ImagePixels::new(width, height, px).unwrap()
}

pub fn write_png(img: &ImagePixels, path: &Path) {
    let buf = ImageBuffer::from_fn(img.width() as u32, img.height() as u32, |x, y| {
        let p = img.pixels()[y as usize * img.width() + x as usize];
        Rgb([p.r, p.g, p.b])
    });
    buf.save(path).unwrap();
}

pub const WARM: PixelColor = PixelColor::new(200, 60, 30);
pub const COOL: PixelColor = PixelColor::new(30, 90, 200);

pub fn warm_cool_palette() -> Palette {
    emopal::palette::parse_palette("Warm ; 200,60,30 ; warm\nCool ; 30,90,200 ; cool\n").unwrap()
}

/// 75% warm / 25% cool, 100 x 100.
pub fn benchmark_split() -> ImagePixels {
    image_from_runs(&[(WARM, 7500), (COOL, 2500)], 100)
}

/// A random joint over `nx` x `ny` symbols; roughly a quarter of the cells are zero.
pub fn random_joint(rng: &mut impl Rng, nx: usize, ny: usize) -> JointDistribution<usize, usize> {
    loop {
        let mut w = BTreeMap::new();
        for x in 0..nx {
            for y in 0..ny {
                let v: f64 = if rng.random_bool(0.25) { 0.0 } else { rng.random::<f64>() };
                w.insert((x, y), v);
            }
        }
        let total: f64 = w.values().sum();
        if total <= 0.0 {
            continue;
        }
        let mut probs: BTreeMap<(usize, usize), f64> = w.into_iter().map(|(k, v)| (k, v / total)).collect();
        // put the rounding residue on the largest cell so the sum is 1 to within an ulp or two
        let residue = 1.0 - probs.values().sum::<f64>();
        let (&key, _) = probs.iter().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        *probs.get_mut(&key).unwrap() += residue;
        return JointDistribution::new(probs).unwrap();
    }
}

/// min over all |Y|^|X| decision rules f of P[Y != f(X)].
pub fn brute_force_min_error(j: &JointDistribution<usize, usize>, nx: usize, ny: usize) -> f64 {
    let rules = ny.pow(nx as u32);
    let mut best = f64::INFINITY;
    for code in 0..rules {
        let mut c = code;
        let mut correct = 0.0;
        for x in 0..nx {
            let y = c % ny;
            c /= ny;
            correct += j.probs().get(&(x, y)).copied().unwrap_or(0.0);
        }
        best = best.min(1.0 - correct);
    }
    best
}

fn binom(n: u64, k: u64) -> BigUint {
    let mut r = BigUint::from(1u32);
    for i in 0..k {
        r = r * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    r
}

/// Exact multivariate hypergeometric probability as a rational.
pub fn exact_hypergeom(m: &[u64], k: &[u64]) -> BigRational {
    let total: u64 = m.iter().sum();
    let n: u64 = k.iter().sum();
    let num = m.iter().zip(k).fold(BigUint::from(1u32), |acc, (&mi, &ki)| acc * binom(mi, ki));
    BigRational::new(num.into(), binom(total, n).into())
}

/// All count vectors k with Σk = n and 0 ≤ k_i ≤ m_i.
pub fn feasible_outcomes(m: &[u64], n: u64) -> Vec<Vec<u64>> {
    fn go(m: &[u64], left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if m.is_empty() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=m[0].min(left) {
            cur.push(k);
            go(&m[1..], left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, n, &mut Vec::new(), &mut out);
    out
}

/// Running mean and unbiased second moments of a stream of count vectors,
/// with standard errors for mean, variance and covariance estimates.
pub struct MomentTracker {
    rows: Vec<Vec<f64>>,
}

impl MomentTracker {
    pub fn new() -> Self {
        MomentTracker { rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        self.rows.push(row);
    }

    fn t(&self) -> f64 {
        self.rows.len() as f64
    }

    pub fn mean(&self, i: usize) -> f64 {
        self.rows.iter().map(|r| r[i]).sum::<f64>() / self.t()
    }

    pub fn cov(&self, i: usize, j: usize) -> f64 {
        let (mi, mj) = (self.mean(i), self.mean(j));
        self.rows.iter().map(|r| (r[i] - mi) * (r[j] - mj)).sum::<f64>() / (self.t() - 1.0)
    }

    pub fn mean_se(&self, i: usize) -> f64 {
        (self.cov(i, i) / self.t()).sqrt()
    }

    /// Standard error of the covariance estimate, from the spread of the
    /// centered products.
    pub fn cov_se(&self, i: usize, j: usize) -> f64 {
        let (mi, mj) = (self.mean(i), self.mean(j));
        let prods: Vec<f64> = self.rows.iter().map(|r| (r[i] - mi) * (r[j] - mj)).collect();
        let pm = prods.iter().sum::<f64>() / self.t();
        let pv = prods.iter().map(|p| (p - pm).powi(2)).sum::<f64>() / (self.t() - 1.0);
        (pv / self.t()).sqrt()
    }
}
