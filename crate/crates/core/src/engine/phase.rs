use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::StateVector;
use crate::error::{Error, Result};

/// Sign of the exponent in `exp(+- i angle value)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Diagonal unitary `exp(i angle diag(values))`, up to the sign chosen at application.
#[derive(Debug, Clone, Copy)]
pub struct DiagonalPhase<'a> {
    pub values: &'a [f64],
    pub angle: f64,
}

impl<'a> DiagonalPhase<'a> {
    pub fn new(values: &'a [f64], angle: f64) -> Result<Self> {
        if !angle.is_finite() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::param("phase values and angle must be finite"));
        }
        Ok(DiagonalPhase { values, angle })
    }
}

/// `a_x <- exp(i sign angle value_x) a_x`.
pub fn apply_phase(state: &mut StateVector, phase: &DiagonalPhase<'_>, sign: Sign) -> Result<()> {
    if phase.values.len() != state.dim() {
        return Err(Error::Dimension {
            expected: state.dim(),
            found: phase.values.len(),
        });
    }
    let theta = sign.factor() * phase.angle;
    if theta == 0.0 {
        return Ok(());
    }
    for (a, &v) in state.amplitudes_mut().iter_mut().zip(phase.values) {
        *a *= Complex64::from_polar(1.0, theta * v);
    }
    Ok(())
}
