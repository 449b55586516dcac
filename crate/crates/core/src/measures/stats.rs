//! The statistical contract for empirical comparisons: 3σ per key, Bonferroni-corrected
//! across the keys compared.

use statrs::distribution::{ContinuousCDF, Normal};

fn standard_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("valid parameters")
}

/// Two-sided tail mass beyond 3σ, about 0.0027.
pub fn three_sigma_alpha() -> f64 {
    2.0 * (1.0 - standard_normal().cdf(3.0))
}

/// Critical value for `m` simultaneous two-sided tests at family level `three_sigma_alpha()`.
/// Equals 3 for a single test.
pub fn bonferroni_z(m: usize) -> f64 {
    let m = m.max(1) as f64;
    standard_normal().inverse_cdf(1.0 - three_sigma_alpha() / (2.0 * m))
}

/// Whether an observed difference is within `z` standard errors. A zero standard error
/// demands exact agreement.
pub fn within(diff: f64, se: f64, z: f64) -> bool {
    if se == 0.0 {
        diff == 0.0
    } else {
        diff.abs() <= z * se
    }
}
