//! Binomial acceptance bands for statistical tests.
//!
//! Seeded Monte Carlo assertions in this crate use a three-sigma normal
//! approximation of the binomial: an observed count of successes out of `n`
//! trials at probability `p` must lie within `3 * sqrt(n * p * (1 - p))` of
//! `n * p`.

/// Standard deviation of a binomial count with `n` trials at probability `p`.
pub fn binomial_sigma(n: u64, p: f64) -> f64 {
    (n as f64 * p * (1.0 - p)).sqrt()
}

/// Inclusive three-sigma band `(lo, hi)` around the expected count `n * p`.
pub fn three_sigma_count_band(n: u64, p: f64) -> (f64, f64) {
    let mean = n as f64 * p;
    let margin = 3.0 * binomial_sigma(n, p);
    (mean - margin, mean + margin)
}

/// True when `count` successes out of `n` trials sit inside the three-sigma
/// band for probability `p`.
pub fn within_three_sigma(count: u64, n: u64, p: f64) -> bool {
    let (lo, hi) = three_sigma_count_band(n, p);
    let c = count as f64;
    lo <= c && c <= hi
}

/// Three-sigma margin on an observed fraction out of `n` trials.
pub fn three_sigma_fraction_margin(n: u64, p: f64) -> f64 {
    3.0 * binomial_sigma(n, p) / n as f64
}
