//! Statistical verification of Born-rule frequencies at desk scale.
//!
//! The crate samples pure states under the unitarily invariant measure,
//! measures the volume of phase-equivalence classes (closed form and
//! Monte Carlo), locates maximum-likelihood amplitude configurations under
//! conservation constraints, models winner selection with Gumbel
//! extreme-value statistics, and combines the pieces into an end-to-end
//! simulated measurement whose outcome frequencies reproduce the squared
//! amplitudes.
//!
//! Every Monte Carlo estimator draws one independent random substream per
//! trial index from a master seed, so results are bit-identical across
//! worker counts. The `parallel` feature (default) runs trials on rayon;
//! disabling it falls back to a sequential driver with identical output.

pub mod error;
pub mod estimate;
pub mod grid;
pub mod likelihood;
pub mod mc;
pub mod partition;
pub mod pipeline;
pub mod rng;
pub mod selectivity;
pub mod state;
pub mod stats;
pub mod verify;
pub mod volume;

pub use error::{Error, Result};
pub use estimate::Estimate;
