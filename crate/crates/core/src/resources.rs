//! Dominant-term gate counts for the indexing circuits.
//!
//! Every count keeps only its leading term with unit constant, so the numbers are
//! order-of-magnitude estimates for comparing representations, not hardware costs.
//! `L = max(1, ceil(log2 n))` is the width of a register holding one element of `[n]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Circuit {
    /// Ranking a combination stored as an `n`-bit occupation string.
    CombinationBitstring,
    /// Ranking a combination stored as a list of `k` element registers.
    CombinationList,
    /// Lehmer-code ranking of a permutation of `[n]`.
    PermutationLehmer,
    /// Binomial coefficient `C(x, k)` for fixed `k`.
    BinomFixedK,
    /// Binomial coefficient `C(n, x)` for fixed `n`.
    BinomFixedN,
    Adder,
    Comparator,
}

impl Circuit {
    pub const ALL: [Circuit; 7] = [
        Circuit::CombinationBitstring,
        Circuit::CombinationList,
        Circuit::PermutationLehmer,
        Circuit::BinomFixedK,
        Circuit::BinomFixedN,
        Circuit::Adder,
        Circuit::Comparator,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Circuit::CombinationBitstring => "combination-bitstring",
            Circuit::CombinationList => "combination-list",
            Circuit::PermutationLehmer => "permutation-lehmer",
            Circuit::BinomFixedK => "binom-fixed-k",
            Circuit::BinomFixedN => "binom-fixed-n",
            Circuit::Adder => "adder",
            Circuit::Comparator => "comparator",
        }
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Circuit::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::param(format!("unknown circuit id '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitCostModel {
    pub circuit: Circuit,
    pub n: u64,
    pub k: u64,
}

impl CircuitCostModel {
    pub fn new(circuit: Circuit, n: u64, k: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("n must be at least 1"));
        }
        if k > n {
            return Err(Error::param(format!("k = {k} exceeds n = {n}")));
        }
        Ok(CircuitCostModel { circuit, n, k })
    }

    pub fn parse(id: &str, n: u64, k: u64) -> Result<Self> {
        Self::new(id.parse()?, n, k)
    }
}

/// `max(1, ceil(log2 n))`.
pub fn register_width(n: u64) -> u64 {
    let ceil_log = if n <= 1 { 0 } else { u64::from(64 - (n - 1).leading_zeros()) };
    ceil_log.max(1)
}

fn overflow(model: &CircuitCostModel) -> Error {
    Error::Capacity {
        requested: format!("{} with n = {}, k = {}", model.circuit, model.n, model.k),
        limit: "u64 gate count".into(),
    }
}

/// Leading term of the gate count.
pub fn gate_count(model: &CircuitCostModel) -> Result<u64> {
    let (n, k, l) = (model.n, model.k, register_width(model.n));
    let product = |factors: &[u64]| {
        factors
            .iter()
            .try_fold(1u64, |acc, &f| acc.checked_mul(f))
            .ok_or_else(|| overflow(model))
    };
    match model.circuit {
        Circuit::CombinationBitstring => product(&[n, k, l]),
        Circuit::CombinationList => product(&[k, k, l]),
        Circuit::PermutationLehmer => product(&[n, n, l]),
        Circuit::BinomFixedK => product(&[k, l]),
        Circuit::BinomFixedN => product(&[n, l]),
        Circuit::Adder | Circuit::Comparator => Ok(l),
    }
}

/// Qubits in the register the circuit acts on.
pub fn qubit_count(model: &CircuitCostModel) -> Result<u64> {
    let (n, k, l) = (model.n, model.k, register_width(model.n));
    match model.circuit {
        Circuit::CombinationBitstring => Ok(n),
        Circuit::CombinationList => k.checked_mul(l).ok_or_else(|| overflow(model)),
        Circuit::PermutationLehmer => n.checked_mul(l).ok_or_else(|| overflow(model)),
        Circuit::BinomFixedK | Circuit::BinomFixedN | Circuit::Adder | Circuit::Comparator => Ok(l),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Representation {
    Bitstring,
    List,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RepresentationComparison {
    pub recommended: Representation,
    pub bitstring_gates: u64,
    pub list_gates: u64,
    pub bitstring_qubits: u64,
    pub list_qubits: u64,
}

pub const DEFAULT_CROSSOVER: f64 = 1.0;

/// Bitstring when `k >= crossover * n`, list otherwise; an empty combination always uses
/// the (empty) list register.
pub fn compare_representations_with(n: u64, k: u64, crossover: f64) -> Result<RepresentationComparison> {
    let bit = CircuitCostModel::new(Circuit::CombinationBitstring, n, k)?;
    let list = CircuitCostModel::new(Circuit::CombinationList, n, k)?;
    let recommended = if k > 0 && k as f64 >= crossover * n as f64 {
        Representation::Bitstring
    } else {
        Representation::List
    };
    Ok(RepresentationComparison {
        recommended,
        bitstring_gates: gate_count(&bit)?,
        list_gates: gate_count(&list)?,
        bitstring_qubits: qubit_count(&bit)?,
        list_qubits: qubit_count(&list)?,
    })
}

pub fn compare_representations(n: u64, k: u64) -> Result<RepresentationComparison> {
    compare_representations_with(n, k, DEFAULT_CROSSOVER)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CostRow {
    pub circuit: String,
    pub n: u64,
    pub k: u64,
    pub gates: u64,
    pub qubits: u64,
}

pub const COST_HEADER: [&str; 5] = ["circuit", "n", "k", "gates", "qubits"];

pub fn cost_row(model: &CircuitCostModel) -> Result<CostRow> {
    Ok(CostRow {
        circuit: model.circuit.id().to_string(),
        n: model.n,
        k: model.k,
        gates: gate_count(model)?,
        qubits: qubit_count(model)?,
    })
}
