use num_complex::Complex64;

use super::fourier::{DftPlan, Direction};
use super::phase::Sign;
use super::state::StateVector;
use crate::circulant::CirculantGraph;
use crate::error::{Error, Result};

/// Continuous-time quantum walk `exp(sign * i t C)` over a circulant graph, applied as
/// `F diag(exp(sign * i t lambda)) F^dagger`.
///
/// The default sign is `Minus`, i.e. the propagator `exp(-i t C)`.
#[derive(Debug, Clone)]
pub struct Walk {
    plan: DftPlan,
    eigenvalues: Vec<f64>,
    sign: Sign,
}

impl Walk {
    pub fn new(graph: &CirculantGraph) -> Result<Self> {
        Self::with_sign(graph, Sign::Minus)
    }

    pub fn with_sign(graph: &CirculantGraph, sign: Sign) -> Result<Self> {
        Ok(Walk {
            plan: DftPlan::new(graph.size())?,
            eigenvalues: graph.eigenvalues().eigenvalues,
            sign,
        })
    }

    /// Reuses an existing plan of the right size.
    pub fn with_plan(graph: &CirculantGraph, plan: DftPlan, sign: Sign) -> Result<Self> {
        if plan.size() != graph.size() {
            return Err(Error::Dimension {
                expected: graph.size(),
                found: plan.size(),
            });
        }
        Ok(Walk {
            plan,
            eigenvalues: graph.eigenvalues().eigenvalues,
            sign,
        })
    }

    pub fn size(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Evolves `state` for time `t`. A zero time leaves the state bit-for-bit unchanged.
    pub fn apply(&self, state: &mut StateVector, t: f64) -> Result<()> {
        if state.dim() != self.size() {
            return Err(Error::Dimension {
                expected: self.size(),
                found: state.dim(),
            });
        }
        if !t.is_finite() {
            return Err(Error::param("walk time must be finite"));
        }
        if t == 0.0 {
            return Ok(());
        }
        let theta = self.sign.factor() * t;
        self.plan.apply(state, Direction::Inverse)?;
        for (a, &lambda) in state.amplitudes_mut().iter_mut().zip(&self.eigenvalues) {
            *a *= Complex64::from_polar(1.0, theta * lambda);
        }
        self.plan.apply(state, Direction::Forward)
    }
}

/// One-shot walk with the default `exp(-i t C)` convention.
pub fn ctqw(state: &StateVector, graph: &CirculantGraph, t: f64) -> Result<StateVector> {
    let mut out = state.clone();
    Walk::new(graph)?.apply(&mut out, t)?;
    Ok(out)
}
