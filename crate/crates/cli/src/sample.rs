//! Seeded samplers for Monte Carlo validation, plus summary statistics.
//! Streams are fully determined by the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform samples on the closed unit disk by rejection from the square.
pub fn disk_samples(n: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x: f64 = rng.gen_range(-1.0..=1.0);
        let y: f64 = rng.gen_range(-1.0..=1.0);
        if x * x + y * y <= 1.0 {
            out.push((x, y));
        }
    }
    out
}

/// Samples the ratio/product pushforward pair: draw a base pair with
/// density 4·x₁·x₂ on the unit square via the square-root transform, then
/// map to (x₁/x₂, x₁·x₂). The first coordinate is unbounded.
pub fn ratio_product_samples(n: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> f64 {
        // sqrt of a positive uniform has density 2x on (0, 1]; zero draws
        // would put the ratio at infinity, so skip them.
        loop {
            let u: f64 = rng.gen::<f64>();
            if u > 0.0 {
                return u.sqrt();
            }
        }
    };
    (0..n)
        .map(|_| {
            let x1 = draw(&mut rng);
            let x2 = draw(&mut rng);
            (x1 / x2, x1 * x2)
        })
        .collect()
}

/// Sample Pearson correlation with the n−1 normalization.
pub fn pearson_corr(samples: &[(f64, f64)]) -> f64 {
    let n = samples.len() as f64;
    assert!(n >= 2.0, "correlation needs at least two samples");
    let (mut mx, mut my) = (0.0, 0.0);
    for &(x, y) in samples {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for &(x, y) in samples {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    sxy / (sxx.sqrt() * syy.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_samples_stay_on_the_disk_and_fill_both_halves() {
        let pts = disk_samples(20_000, 1);
        assert!(pts.iter().all(|&(x, y)| x * x + y * y <= 1.0));
        let right = pts.iter().filter(|&&(x, _)| x > 0.0).count();
        assert!((right as f64 / 20_000.0 - 0.5).abs() < 0.02);
    }

    #[test]
    fn sampling_is_reproducible_per_seed() {
        assert_eq!(disk_samples(100, 9), disk_samples(100, 9));
        assert_ne!(disk_samples(100, 9), disk_samples(100, 10));
        assert_eq!(ratio_product_samples(100, 9), ratio_product_samples(100, 9));
    }

    #[test]
    fn pushforward_samples_satisfy_the_region_inequalities() {
        let pts = ratio_product_samples(50_000, 3);
        for &(y1, y2) in &pts {
            assert!(y1 > 0.0 && y2 > 0.0);
            // y2 ≤ min(y1, 1/y1) with slack for the boundary itself
            assert!(y2 <= y1.min(1.0 / y1) + 1e-12, "({y1}, {y2})");
        }
        // product mean is E[X1 X2] = 4/9
        let mean2: f64 = pts.iter().map(|p| p.1).sum::<f64>() / 50_000.0;
        assert!((mean2 - 4.0 / 9.0).abs() < 0.01, "{mean2}");
    }

    #[test]
    fn correlation_is_exact_on_a_known_linear_pair() {
        let pts: Vec<(f64, f64)> = (0..100).map(|i| (i as f64, -2.0 * i as f64 + 3.0)).collect();
        assert!((pearson_corr(&pts) + 1.0).abs() <= 1e-12);
    }
}
