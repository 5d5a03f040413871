use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use super::binomial::BinomialTable;
use crate::error::{Error, Result};

/// A `k`-subset of `[0, n)` stored as a strictly ascending element list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Combination {
    n: usize,
    elements: Vec<usize>,
}

impl Combination {
    pub fn new(n: usize, elements: Vec<usize>) -> Result<Self> {
        if let Some(w) = elements.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!(
                "combination elements must be strictly ascending, found {} before {}",
                w[0], w[1]
            )));
        }
        if let Some(&last) = elements.last() {
            if last >= n {
                return Err(Error::invalid(format!(
                    "combination element {last} outside universe [0, {n})"
                )));
            }
        }
        Ok(Combination { n, elements })
    }

    /// Sorts and deduplicates-checks an arbitrary element list before validating it.
    pub fn from_unsorted(n: usize, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        Self::new(n, elements)
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// The complementary subset `[0, n) \ self`.
    pub fn complement(&self) -> Combination {
        let elements = (0..self.n).filter(|&x| !self.contains(x)).collect();
        Combination { n: self.n, elements }
    }

    /// Indicator bits `x_0 .. x_{n-1}` with `x_j` set iff `j` is selected.
    pub fn to_bits(&self) -> Vec<bool> {
        let mut bits = vec![false; self.n];
        for &e in &self.elements {
            bits[e] = true;
        }
        bits
    }

    /// Indicator packed into an integer with `x_j` at bit `j`.
    pub fn to_mask(&self) -> u64 {
        self.elements.iter().fold(0u64, |m, &e| m | (1u64 << e))
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Reads the set bits of `x_0 .. x_{n-1}` as a combination. When `k` is given the
/// popcount must match it.
pub fn bits_to_combination(bits: &[bool], k: Option<usize>) -> Result<Combination> {
    let elements: Vec<usize> = bits
        .iter()
        .enumerate()
        .filter_map(|(j, &b)| b.then_some(j))
        .collect();
    if let Some(k) = k {
        if elements.len() != k {
            return Err(Error::invalid(format!(
                "bitstring has {} bits set, expected {k}",
                elements.len()
            )));
        }
    }
    Combination::new(bits.len(), elements)
}

pub fn combination_to_bits(c: &Combination) -> Vec<bool> {
    c.to_bits()
}

/// Colexicographic rank `sum_{j=1..k} C(c_j, j)` of an ascending combination.
pub fn rank_combination_with(table: &BinomialTable, c: &Combination) -> BigUint {
    c.elements
        .iter()
        .enumerate()
        .fold(BigUint::zero(), |acc, (i, &e)| acc + table.get(e, i + 1))
}

pub fn rank_combination(c: &Combination) -> BigUint {
    let table = BinomialTable::new(c.n, c.len());
    rank_combination_with(&table, c)
}

/// Inverse of [`rank_combination_with`]: greedy largest-binomial decomposition of `rank`.
pub fn unrank_combination_with(
    table: &BinomialTable,
    rank: &BigUint,
    n: usize,
    k: usize,
) -> Result<Combination> {
    if k > n {
        return Err(Error::param(format!("k = {k} exceeds n = {n}")));
    }
    let size = table.get(n, k);
    if rank >= size {
        return Err(Error::Range {
            index: rank.to_string(),
            size: size.to_string(),
        });
    }
    let mut remaining = rank.clone();
    let mut elements = vec![0usize; k];
    let mut upper = n;
    for j in (1..=k).rev() {
        // largest c in [j-1, upper) with C(c, j) <= remaining
        let mut c = upper - 1;
        while table.get(c, j) > &remaining {
            c -= 1;
        }
        remaining -= table.get(c, j);
        elements[j - 1] = c;
        upper = c;
    }
    debug_assert!(remaining.is_zero());
    Ok(Combination { n, elements })
}

pub fn unrank_combination(rank: &BigUint, n: usize, k: usize) -> Result<Combination> {
    if k > n {
        return Err(Error::param(format!("k = {k} exceeds n = {n}")));
    }
    let table = BinomialTable::new(n, k);
    unrank_combination_with(&table, rank, n, k)
}

/// Combinations of `[0, n)` whose size lies in a fixed set of allowed orders, ordered by
/// size first and colexicographically within each size.
///
/// `orders = {0, .., K}` gives "all combinations of at most `K` elements".
#[derive(Debug, Clone)]
pub struct OrderedCombinations {
    n: usize,
    orders: Vec<usize>,
    offsets: Vec<BigUint>,
    size: BigUint,
    table: BinomialTable,
}

impl OrderedCombinations {
    pub fn new(n: usize, orders: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut orders: Vec<usize> = orders.into_iter().collect();
        orders.sort_unstable();
        orders.dedup();
        if orders.is_empty() {
            return Err(Error::param("at least one combination order is required"));
        }
        if let Some(&k) = orders.iter().find(|&&k| k > n) {
            return Err(Error::param(format!("order {k} exceeds n = {n}")));
        }
        let kmax = *orders.last().unwrap();
        let table = BinomialTable::new(n, kmax);
        let mut offsets = Vec::with_capacity(orders.len());
        let mut acc = BigUint::zero();
        for &k in &orders {
            offsets.push(acc.clone());
            acc += table.get(n, k);
        }
        Ok(OrderedCombinations {
            n,
            orders,
            offsets,
            size: acc,
            table,
        })
    }

    pub fn bounded(n: usize, max_order: usize) -> Result<Self> {
        if max_order > n {
            return Err(Error::param(format!("K = {max_order} exceeds n = {n}")));
        }
        Self::new(n, 0..=max_order)
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn size(&self) -> &BigUint {
        &self.size
    }

    pub fn table(&self) -> &BinomialTable {
        &self.table
    }

    pub fn rank(&self, c: &Combination) -> Result<BigUint> {
        if c.n != self.n {
            return Err(Error::invalid(format!(
                "combination over [0, {}) passed to a codec over [0, {})",
                c.n, self.n
            )));
        }
        let slot = self.orders.binary_search(&c.len()).map_err(|_| {
            Error::invalid(format!(
                "combination of order {} not in allowed orders {:?}",
                c.len(),
                self.orders
            ))
        })?;
        Ok(rank_combination_with(&self.table, c) + &self.offsets[slot])
    }

    pub fn unrank(&self, rank: &BigUint) -> Result<Combination> {
        if rank >= &self.size {
            return Err(Error::Range {
                index: rank.to_string(),
                size: self.size.to_string(),
            });
        }
        // last offset not exceeding rank
        let slot = self.offsets.partition_point(|o| o <= rank) - 1;
        let local = rank - &self.offsets[slot];
        unrank_combination_with(&self.table, &local, self.n, self.orders[slot])
    }
}

/// Rank among all combinations of `[0, n)` with at most `max_order` elements.
pub fn rank_bounded_combination(c: &Combination, max_order: usize) -> Result<BigUint> {
    if c.len() > max_order {
        return Err(Error::invalid(format!(
            "combination of order {} exceeds K = {max_order}",
            c.len()
        )));
    }
    OrderedCombinations::bounded(c.n, max_order)?.rank(c)
}

pub fn unrank_bounded_combination(rank: &BigUint, n: usize, max_order: usize) -> Result<Combination> {
    OrderedCombinations::bounded(n, max_order)?.unrank(rank)
}
