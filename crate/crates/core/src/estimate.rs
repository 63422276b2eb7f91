//! Monte Carlo result records.

/// A Monte Carlo estimate with its sampling uncertainty and provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    /// Standard error; zero only when the quantity is deterministic.
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
}

impl Estimate {
    /// Estimate of a probability from a binomial hit count.
    pub fn from_binomial(hits: u64, trials: u64, seed: u64) -> Self {
        let p = hits as f64 / trials as f64;
        Self {
            value: p,
            std_error: (p * (1.0 - p) / trials as f64).sqrt(),
            trials,
            seed,
        }
    }
}
