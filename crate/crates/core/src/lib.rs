//! Classical simulation of quantum-walk-based optimisation over indexed combinatorial
//! domains.
//!
//! Objects of a combinatorial family are identified with indices `0..M` by an exact
//! ranking bijection ([`combinadics`]). Simulation then happens entirely in the
//! `M`-dimensional index space: walks over circulant graphs ([`circulant`]) are applied
//! through an arbitrary-size Fourier transform ([`engine`]), interleaved with
//! quality-dependent phases ([`problems`], [`qwoa`]). The same index space hosts an
//! amplitude-amplification search ([`grover`]). [`resources`] estimates gate counts of
//! reversible indexing circuits.

pub mod circulant;
pub mod combinadics;
pub mod engine;
pub mod error;
pub mod grover;
pub mod problems;
pub mod qwoa;
pub mod resources;
pub mod rng;

pub use error::{Error, Result};
