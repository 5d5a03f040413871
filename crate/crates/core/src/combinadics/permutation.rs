use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::binomial::factorial;
use crate::error::{Error, Result};

/// A bijection on `[0, n)` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &v in &mapping {
            if v >= n {
                return Err(Error::invalid(format!(
                    "permutation value {v} outside [0, {n})"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::invalid(format!("permutation repeats value {v}")));
            }
        }
        Ok(Permutation { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            mapping: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.mapping
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.mapping.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { mapping: inv }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.mapping.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

fn check_range(rank: &BigUint, n: usize) -> Result<()> {
    let size = factorial(n);
    if rank >= &size {
        return Err(Error::Range {
            index: rank.to_string(),
            size: size.to_string(),
        });
    }
    Ok(())
}

fn small_rem(value: &mut BigUint, radix: usize) -> usize {
    let rem = (&*value % radix).to_usize().expect("remainder below radix");
    *value /= radix;
    rem
}

/// Myrvold–Ruskey linear-time rank.
///
/// Iterative form of the recursion `s + n * rank(n - 1)` where `s = pi[n-1]` and the
/// element `n-1` is swapped into the last position before recursing.
pub fn rank_permutation_mr(pi: &Permutation) -> BigUint {
    let mut perm = pi.mapping.clone();
    let mut inv = pi.inverse().mapping;
    let mut rank = BigUint::zero();
    let mut weight = BigUint::from(1u32);
    for m in (2..=perm.len()).rev() {
        let s = perm[m - 1];
        perm.swap(m - 1, inv[m - 1]);
        inv.swap(s, m - 1);
        rank += &weight * s;
        weight *= m;
    }
    rank
}

/// Exact inverse of [`rank_permutation_mr`].
pub fn unrank_permutation_mr(rank: &BigUint, n: usize) -> Result<Permutation> {
    check_range(rank, n)?;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut r = rank.clone();
    for m in (1..=n).rev() {
        let s = small_rem(&mut r, m);
        perm.swap(m - 1, s);
    }
    Ok(Permutation { mapping: perm })
}

/// Lehmer digits `d_i = |{j > i : pi_j < pi_i}|`.
pub fn lehmer_code(pi: &Permutation) -> Vec<usize> {
    let p = &pi.mapping;
    (0..p.len())
        .map(|i| p[i + 1..].iter().filter(|&&v| v < p[i]).count())
        .collect()
}

/// Lexicographic rank by Horner evaluation of the Lehmer digits:
/// `(..(d_0 (n-1) + d_1)(n-2) + .. + d_{n-2}) * 1`.
pub fn rank_permutation_lehmer(pi: &Permutation) -> BigUint {
    let n = pi.len();
    let digits = lehmer_code(pi);
    let mut rank = BigUint::zero();
    for (i, &d) in digits.iter().enumerate().take(n.saturating_sub(1)) {
        rank *= n - i;
        rank += d;
    }
    rank
}

pub fn unrank_permutation_lehmer(rank: &BigUint, n: usize) -> Result<Permutation> {
    check_range(rank, n)?;
    let mut digits = vec![0usize; n];
    let mut r = rank.clone();
    for i in (0..n.saturating_sub(1)).rev() {
        digits[i] = small_rem(&mut r, n - i);
    }
    let mut available: Vec<usize> = (0..n).collect();
    let mapping = digits.into_iter().map(|d| available.remove(d)).collect();
    Ok(Permutation { mapping })
}
