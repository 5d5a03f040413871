//! Undirected circulant graphs on `M` vertices and their spectra.
//!
//! Vertex `a` is adjacent to `a +- g (mod M)` for every generator `g`. The adjacency
//! matrix is diagonalised by the Fourier basis, so the spectrum is the DFT of its first
//! row; the complete graph, the cycle and the Möbius ladder have closed forms.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::engine::{DftPlan, Direction};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFamily {
    Complete,
    Cycle,
    MobiusLadder,
    Custom,
}

/// Circulant connectivity with generators normalised into `1..=M/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantGraph {
    size: usize,
    generators: Vec<usize>,
    family: GraphFamily,
}

/// Adjacency eigenvalues in Fourier order: entry `j` belongs to the eigenvector
/// `(w^{jx})_x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
}

impl CirculantGraph {
    /// Graph with an arbitrary generating set. Each `g` is folded onto `min(g mod M, M - g mod M)`;
    /// a generator congruent to zero is a self-loop and is rejected.
    pub fn from_generators(size: usize, generators: impl IntoIterator<Item = usize>) -> Result<Self> {
        if size == 0 {
            return Err(Error::param("a circulant graph needs at least one vertex"));
        }
        let mut folded = Vec::new();
        for g in generators {
            let r = g % size;
            if r == 0 {
                return Err(Error::param(format!(
                    "generator {g} is a self-loop on {size} vertices"
                )));
            }
            folded.push(r.min(size - r));
        }
        folded.sort_unstable();
        folded.dedup();
        Ok(CirculantGraph {
            size,
            generators: folded,
            family: GraphFamily::Custom,
        })
    }

    pub fn complete(size: usize) -> Result<Self> {
        if size < 2 {
            return Err(Error::param("complete graph needs M >= 2"));
        }
        Ok(CirculantGraph {
            size,
            generators: (1..=size / 2).collect(),
            family: GraphFamily::Complete,
        })
    }

    pub fn cycle(size: usize) -> Result<Self> {
        if size < 2 {
            return Err(Error::param("cycle graph needs M >= 2"));
        }
        Ok(CirculantGraph {
            size,
            generators: vec![1],
            family: GraphFamily::Cycle,
        })
    }

    pub fn mobius_ladder(size: usize) -> Result<Self> {
        if size < 4 || size % 2 != 0 {
            return Err(Error::param(format!(
                "Möbius ladder needs an even M >= 4, got {size}"
            )));
        }
        Ok(CirculantGraph {
            size,
            generators: vec![1, size / 2],
            family: GraphFamily::MobiusLadder,
        })
    }

    pub fn of_family(family: GraphFamily, size: usize, generators: &[usize]) -> Result<Self> {
        match family {
            GraphFamily::Complete => Self::complete(size),
            GraphFamily::Cycle => Self::cycle(size),
            GraphFamily::MobiusLadder => Self::mobius_ladder(size),
            GraphFamily::Custom => Self::from_generators(size, generators.iter().copied()),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn family(&self) -> GraphFamily {
        self.family
    }

    /// Number of distinct neighbour offsets `{g, M - g}`.
    pub fn degree(&self) -> usize {
        self.generators
            .iter()
            .map(|&g| if 2 * g == self.size { 1 } else { 2 })
            .sum()
    }

    /// First row of the adjacency matrix.
    pub fn adjacency_row(&self) -> Vec<u8> {
        let mut row = vec![0u8; self.size];
        for &g in &self.generators {
            row[g] = 1;
            row[self.size - g] = 1;
        }
        row
    }

    /// Spectrum from the family's closed form, or from the DFT of the first row for
    /// custom generating sets.
    pub fn eigenvalues(&self) -> Spectrum {
        let m = self.size;
        let angle = |j: usize| 2.0 * PI * j as f64 / m as f64;
        let eigenvalues = match self.family {
            GraphFamily::Complete => (0..m)
                .map(|j| if j == 0 { (m - 1) as f64 } else { -1.0 })
                .collect(),
            GraphFamily::Cycle if m == 2 => vec![1.0, -1.0],
            GraphFamily::Cycle => (0..m).map(|j| 2.0 * angle(j).cos()).collect(),
            GraphFamily::MobiusLadder => (0..m)
                .map(|j| 2.0 * angle(j).cos() + if j % 2 == 0 { 1.0 } else { -1.0 })
                .collect(),
            GraphFamily::Custom => return self.eigenvalues_dft(),
        };
        Spectrum { eigenvalues }
    }

    /// `lambda_j = sum_k row_k w^{jk}` evaluated with the arbitrary-size DFT.
    ///
    /// Rounding error grows with the weight of the transformed row, so a row that is more
    /// than half ones is transformed through its complement `1 - row`, whose transform is
    /// `M [j = 0] - lambda_j`. The `j = 0` term is the exact integer row sum.
    pub fn eigenvalues_dft(&self) -> Spectrum {
        let row = self.adjacency_row();
        let dense = 2 * self.degree() > self.size;
        let mut buffer: Vec<Complex64> = row
            .iter()
            .map(|&v| Complex64::new(f64::from(if dense { 1 - v } else { v }), 0.0))
            .collect();
        DftPlan::new(self.size)
            .and_then(|plan| plan.transform_unscaled(&mut buffer, Direction::Forward))
            .expect("plan matches row length");
        let mut eigenvalues: Vec<f64> = buffer
            .into_iter()
            .map(|z| if dense { -z.re } else { z.re })
            .collect();
        eigenvalues[0] = f64::from(row.iter().map(|&v| u32::from(v)).sum::<u32>());
        Spectrum { eigenvalues }
    }
}

pub fn complete_graph(size: usize) -> Result<CirculantGraph> {
    CirculantGraph::complete(size)
}

pub fn cycle_graph(size: usize) -> Result<CirculantGraph> {
    CirculantGraph::cycle(size)
}

pub fn mobius_ladder(size: usize) -> Result<CirculantGraph> {
    CirculantGraph::mobius_ladder(size)
}

pub fn eigenvalues(graph: &CirculantGraph) -> Spectrum {
    graph.eigenvalues()
}

pub fn adjacency_row(graph: &CirculantGraph) -> Vec<u8> {
    graph.adjacency_row()
}
