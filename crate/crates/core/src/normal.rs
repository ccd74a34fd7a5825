//! Standard normal distribution helpers built on `erfc`.

use std::f64::consts::FRAC_1_SQRT_2;

/// `Φ(x)`, the standard normal CDF.
pub fn cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

/// Two-sided tail mass `1 - [Φ(k) - Φ(-k)]`.
pub fn two_sided_tail(k: f64) -> f64 {
    libm::erfc(k.abs() * FRAC_1_SQRT_2)
}

/// Central mass `Φ(k) - Φ(-k)`.
pub fn central_mass(k: f64) -> f64 {
    1.0 - two_sided_tail(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(cdf(0.0), 0.5);
        assert!((cdf(1.0) - 0.841_344_746_068_542_9).abs() < 1e-15);
        assert!((cdf(-1.96) - 0.024_997_895_148_220_435).abs() < 1e-15);
        assert!((central_mass(1.0) - 0.682_689_492_137_085_9).abs() < 1e-15);
        assert!((central_mass(3.0) - 0.997_300_203_936_739_8).abs() < 1e-15);
    }

    #[test]
    fn symmetry() {
        for i in 0..100 {
            let x = i as f64 * 0.1;
            assert!((cdf(x) + cdf(-x) - 1.0).abs() < 1e-15);
        }
    }
}
