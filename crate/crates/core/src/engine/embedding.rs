//! Validation of the index-space reduction against an explicit `2^n`-dimensional object
//! space.
//!
//! Objects are stored as `n`-bit strings scattered through `{0,1}^n`. The indexing
//! permutation sends the bitstring of the object with rank `r` to slot `r` and the
//! remaining (invalid) bitstrings to slots `M..2^n` in ascending order. Conjugating the
//! object-space adjacency by this permutation must give the `M x M` circulant in the
//! leading block and nothing elsewhere; the dense object-space walk must then agree
//! with the Fourier-diagonalised walk in index space.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::state::StateVector;
use super::walk::Walk;
use crate::circulant::CirculantGraph;
use crate::combinadics::DomainCodec;
use crate::error::{Error, Result};
use crate::rng::seeded;

/// Largest register materialised densely.
pub const MAX_EMBEDDING_QUBITS: usize = 12;

/// Slot of every `n`-bit string under the indexing permutation.
pub fn indexing_permutation(codec: &DomainCodec, qubits: usize) -> Result<Vec<usize>> {
    if qubits > MAX_EMBEDDING_QUBITS {
        return Err(Error::Capacity {
            requested: format!("{qubits} qubits"),
            limit: format!("{MAX_EMBEDDING_QUBITS} qubits"),
        });
    }
    let full = 1usize << qubits;
    let m = match codec.size_usize() {
        Some(m) if m <= full => m,
        _ => {
            return Err(Error::Capacity {
                requested: codec.size().to_string(),
                limit: format!("2^{qubits} = {full}"),
            })
        }
    };
    if codec.bit_width() > qubits {
        return Err(Error::Capacity {
            requested: format!("{} bits per object", codec.bit_width()),
            limit: format!("{qubits} qubits"),
        });
    }
    let mut slots = vec![usize::MAX; full];
    for r in 0..m {
        let bits = codec.encode_bits(&codec.unrank_index(r)?)? as usize;
        if slots[bits] != usize::MAX {
            return Err(Error::invalid(format!(
                "objects with ranks {} and {r} share bitstring {bits:b}",
                slots[bits]
            )));
        }
        slots[bits] = r;
    }
    let mut next = m;
    for s in slots.iter_mut().filter(|s| **s == usize::MAX) {
        *s = next;
        next += 1;
    }
    Ok(slots)
}

/// Adjacency of the walk written in the object basis: bitstrings `x, y` are joined when
/// both encode objects and their ranks are neighbours on the circulant graph.
pub fn object_space_adjacency(
    codec: &DomainCodec,
    graph: &CirculantGraph,
    qubits: usize,
) -> Result<DMatrix<f64>> {
    let slots = indexing_permutation(codec, qubits)?;
    let m = graph.size();
    if codec.size_usize() != Some(m) {
        return Err(Error::Dimension {
            expected: codec.size_usize().unwrap_or(usize::MAX),
            found: m,
        });
    }
    let row = graph.adjacency_row();
    let full = slots.len();
    Ok(DMatrix::from_fn(full, full, |x, y| {
        let (a, b) = (slots[x], slots[y]);
        if a < m && b < m {
            f64::from(row[(b + m - a) % m])
        } else {
            0.0
        }
    }))
}

/// `P A P^T` with `P |x> = |slot(x)>`.
pub fn conjugate_by_indexing(adjacency: &DMatrix<f64>, slots: &[usize]) -> DMatrix<f64> {
    let full = slots.len();
    let mut out = DMatrix::zeros(full, full);
    for x in 0..full {
        for y in 0..full {
            out[(slots[x], slots[y])] = adjacency[(x, y)];
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct EmbeddingReport {
    pub qubits: usize,
    pub domain_size: usize,
    /// Largest entry of `|P A P^T - C|` over the leading `M x M` block.
    pub block_deviation: f64,
    /// Largest magnitude in any row or column belonging to an invalid bitstring.
    pub invalid_coupling: f64,
    /// Largest amplitude difference between the dense object-space walk and the
    /// index-space walk mapped back to bitstrings.
    pub walk_deviation: f64,
    /// Largest change the dense walk makes to amplitudes on invalid bitstrings.
    pub invalid_block_drift: f64,
}

impl EmbeddingReport {
    pub fn passed(&self, tolerance: f64) -> bool {
        self.block_deviation == 0.0
            && self.invalid_coupling == 0.0
            && self.walk_deviation <= tolerance
            && self.invalid_block_drift <= tolerance
    }
}

/// Builds the object-space walk for `codec` on `qubits` qubits and checks it against the
/// index-space reduction for a random probe state (seeded) evolved for `time`.
pub fn embed_object_space(
    codec: &DomainCodec,
    graph: &CirculantGraph,
    qubits: usize,
    time: f64,
    probe_seed: u64,
) -> Result<EmbeddingReport> {
    let slots = indexing_permutation(codec, qubits)?;
    let full = slots.len();
    let m = graph.size();
    let object_adj = object_space_adjacency(codec, graph, qubits)?;
    let indexed = conjugate_by_indexing(&object_adj, &slots);

    let row = graph.adjacency_row();
    let mut block_deviation = 0.0f64;
    let mut invalid_coupling = 0.0f64;
    for a in 0..full {
        for b in 0..full {
            let v = indexed[(a, b)];
            if a < m && b < m {
                block_deviation = block_deviation.max((v - f64::from(row[(b + m - a) % m])).abs());
            } else {
                invalid_coupling = invalid_coupling.max(v.abs());
            }
        }
    }

    // dense route: exp(-i t A) = V exp(-i t Lambda) V^T in the object basis
    let mut rng = seeded(probe_seed);
    let probe = StateVector::random(full, &mut rng)?;
    let eigen = SymmetricEigen::new(object_adj);
    let psi = DVector::from_iterator(full, probe.amplitudes().iter().copied());
    let vectors = eigen.eigenvectors.map(|v| Complex64::new(v, 0.0));
    let mut coeffs = vectors.transpose() * &psi;
    for (c, &lambda) in coeffs.iter_mut().zip(eigen.eigenvalues.iter()) {
        *c *= Complex64::from_polar(1.0, -time * lambda);
    }
    let dense = &vectors * coeffs;

    // reduced route: gather valid amplitudes into index order, walk, scatter back
    let mut index_amps = vec![Complex64::new(0.0, 0.0); m];
    for (x, &s) in slots.iter().enumerate() {
        if s < m {
            index_amps[s] = probe.amplitudes()[x];
        }
    }
    let mut index_state = StateVector::from_amplitudes(index_amps)?;
    Walk::new(graph)?.apply(&mut index_state, time)?;

    let mut walk_deviation = 0.0f64;
    let mut invalid_block_drift = 0.0f64;
    for (x, &s) in slots.iter().enumerate() {
        let reduced = if s < m {
            index_state.amplitudes()[s]
        } else {
            probe.amplitudes()[x]
        };
        walk_deviation = walk_deviation.max((dense[x] - reduced).norm());
        if s >= m {
            invalid_block_drift = invalid_block_drift.max((dense[x] - probe.amplitudes()[x]).norm());
        }
    }

    Ok(EmbeddingReport {
        qubits,
        domain_size: m,
        block_deviation,
        invalid_coupling,
        walk_deviation,
        invalid_block_drift,
    })
}
