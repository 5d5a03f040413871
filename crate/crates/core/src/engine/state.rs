use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Pure state on an index space of arbitrary dimension `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::param("state dimension must be at least 1"));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::param("amplitudes must be finite"));
        }
        Ok(StateVector { amplitudes })
    }

    /// Equal superposition `1/sqrt(M) sum_x |x>`.
    pub fn uniform(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::param("state dimension must be at least 1"));
        }
        let a = Complex64::new(1.0 / (m as f64).sqrt(), 0.0);
        Ok(StateVector {
            amplitudes: vec![a; m],
        })
    }

    pub fn basis(m: usize, index: usize) -> Result<Self> {
        if index >= m {
            return Err(Error::Range {
                index: index.to_string(),
                size: m.to_string(),
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); m];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { amplitudes })
    }

    /// Haar-like random state: independent complex Gaussians, normalised.
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Result<Self> {
        if m == 0 {
            return Err(Error::param("state dimension must be at least 1"));
        }
        let amplitudes: Vec<Complex64> = (0..m)
            .map(|_| {
                Complex64::new(
                    StandardNormal.sample(&mut *rng),
                    StandardNormal.sample(&mut *rng),
                )
            })
            .collect();
        let mut s = StateVector { amplitudes };
        s.normalize();
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            for a in &mut self.amplitudes {
                *a /= n;
            }
        }
    }

    /// Measurement distribution `|a_x|^2`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `sum_x |a_x|^2 q_x`.
    pub fn expectation(&self, values: &[f64]) -> Result<f64> {
        if values.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: values.len(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(values)
            .map(|(a, q)| a.norm_sqr() * q)
            .sum())
    }

    /// Total probability on the indices where `mask` is set.
    pub fn probability_of(&self, mask: &[bool]) -> Result<f64> {
        if mask.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: mask.len(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(mask)
            .filter(|(_, &m)| m)
            .map(|(a, _)| a.norm_sqr())
            .sum())
    }

    /// Largest amplitude difference to another state of the same dimension.
    pub fn max_deviation(&self, other: &StateVector) -> Result<f64> {
        if other.dim() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

pub fn probabilities(state: &StateVector) -> Vec<f64> {
    state.probabilities()
}

pub fn expectation(state: &StateVector, values: &[f64]) -> Result<f64> {
    state.expectation(values)
}
