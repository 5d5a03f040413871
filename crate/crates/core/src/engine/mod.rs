//! Statevector simulation on an index space of arbitrary dimension `M`.
//!
//! States never leave `C^M`: the walk is applied through the arbitrary-size DFT, phases
//! are diagonal multiplications. [`embedding`] checks this reduction against an explicit
//! object space at small sizes.

pub mod embedding;
mod dump;
mod fourier;
mod phase;
mod state;
mod walk;

pub use dump::{distribution_rows, format_real, DistributionRow, DISTRIBUTION_HEADER};
pub use embedding::{embed_object_space, EmbeddingReport};
pub use fourier::{dft, DftPlan, Direction};
pub use phase::{apply_phase, DiagonalPhase, Sign};
pub use state::{expectation, probabilities, StateVector};
pub use walk::{ctqw, Walk};

/// Practical cap on materialised dimension (amplitudes plus qualities stay within a few GiB).
pub const DEFAULT_MAX_DIMENSION: usize = 1 << 26;
