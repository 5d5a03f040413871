use super::state::StateVector;
use crate::combinadics::DomainCodec;
use crate::error::{Error, Result};

/// One line of a distribution dump: index, un-ranked object, probability, quality.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionRow {
    pub index: usize,
    pub object: String,
    pub probability: f64,
    pub quality: f64,
}

/// Column names of the distribution CSV.
pub const DISTRIBUTION_HEADER: [&str; 4] = ["index", "object", "probability", "quality"];

/// Decimal rendering with 17 significant digits, enough to round-trip any `f64`.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn distribution_rows(
    state: &StateVector,
    codec: &DomainCodec,
    qualities: &[f64],
) -> Result<Vec<DistributionRow>> {
    if qualities.len() != state.dim() {
        return Err(Error::Dimension {
            expected: state.dim(),
            found: qualities.len(),
        });
    }
    if codec.size_usize() != Some(state.dim()) {
        return Err(Error::Dimension {
            expected: state.dim(),
            found: codec.size_usize().unwrap_or(usize::MAX),
        });
    }
    state
        .probabilities()
        .into_iter()
        .zip(qualities)
        .enumerate()
        .map(|(index, (probability, &quality))| {
            Ok(DistributionRow {
                index,
                object: codec.unrank_index(index)?.to_string(),
                probability,
                quality,
            })
        })
        .collect()
}

impl DistributionRow {
    pub fn to_record(&self) -> [String; 4] {
        [
            self.index.to_string(),
            self.object.clone(),
            format_real(self.probability),
            format_real(self.quality),
        ]
    }
}
