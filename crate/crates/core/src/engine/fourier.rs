use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use super::state::StateVector;
use crate::error::{Error, Result};

/// Direction of the unitary DFT of size `M`.
///
/// `Forward` has kernel `w^{jk} / sqrt(M)` with `w = exp(2 pi i / M)`; `Inverse` is its
/// adjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// A planned DFT of one fixed size, valid for any `M >= 1`.
///
/// The plan itself is immutable and shareable across threads; scratch space is
/// allocated per call.
#[derive(Clone)]
pub struct DftPlan {
    size: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    scale: f64,
}

impl fmt::Debug for DftPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DftPlan").field("size", &self.size).finish()
    }
}

impl DftPlan {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::param("DFT size must be at least 1"));
        }
        let mut planner = FftPlanner::new();
        // rustfft's forward transform uses exp(-2 pi i jk / M)
        let forward = planner.plan_fft(size, FftDirection::Inverse);
        let inverse = planner.plan_fft(size, FftDirection::Forward);
        Ok(DftPlan {
            size,
            forward,
            inverse,
            scale: 1.0 / (size as f64).sqrt(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Unnormalised transform: `out_j = sum_k w^{+-jk} in_k`.
    pub fn transform_unscaled(&self, buffer: &mut [Complex64], direction: Direction) -> Result<()> {
        if buffer.len() != self.size {
            return Err(Error::Dimension {
                expected: self.size,
                found: buffer.len(),
            });
        }
        let fft = match direction {
            Direction::Forward => &self.forward,
            Direction::Inverse => &self.inverse,
        };
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        fft.process_with_scratch(buffer, &mut scratch);
        Ok(())
    }

    /// Unitary transform of a raw amplitude buffer.
    pub fn transform(&self, buffer: &mut [Complex64], direction: Direction) -> Result<()> {
        self.transform_unscaled(buffer, direction)?;
        for a in buffer.iter_mut() {
            *a *= self.scale;
        }
        Ok(())
    }

    pub fn apply(&self, state: &mut StateVector, direction: Direction) -> Result<()> {
        self.transform(state.amplitudes_mut(), direction)
    }
}

/// Unitary DFT of `state`, planning a transform of the matching size.
pub fn dft(state: &StateVector, direction: Direction) -> StateVector {
    let mut out = state.clone();
    DftPlan::new(state.dim())
        .and_then(|plan| plan.apply(&mut out, direction))
        .expect("state dimension is at least 1");
    out
}
