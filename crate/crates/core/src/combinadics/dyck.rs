use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::binomial::{binomial, catalan};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    East,
    North,
}

/// Monotone lattice path from `(0,0)` to `(n,n)` that never rises above `y = x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        if steps.len() % 2 != 0 {
            return Err(Error::invalid(format!(
                "Dyck path needs an even number of steps, found {}",
                steps.len()
            )));
        }
        let (mut east, mut north) = (0usize, 0usize);
        for (t, s) in steps.iter().enumerate() {
            match s {
                Step::East => east += 1,
                Step::North => north += 1,
            }
            if north > east {
                return Err(Error::invalid(format!(
                    "path rises above the diagonal after step {}",
                    t + 1
                )));
            }
        }
        if east != north {
            return Err(Error::invalid(format!(
                "path ends at ({east},{north}), not on the diagonal"
            )));
        }
        Ok(DyckPath { steps })
    }

    /// Half-length: the path ends at `(n, n)`.
    pub fn order(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Height of the path along each East step: entry `i` is the `y` coordinate of the
    /// step from `x = i` to `x = i + 1`.
    pub fn column_heights(&self) -> Vec<usize> {
        let mut heights = Vec::with_capacity(self.order());
        let mut y = 0;
        for s in &self.steps {
            match s {
                Step::East => heights.push(y),
                Step::North => y += 1,
            }
        }
        heights
    }

    /// Steps packed into an integer, first step most significant, `North = 1`.
    pub fn to_mask(&self) -> u64 {
        self.steps
            .iter()
            .fold(0u64, |m, s| (m << 1) | u64::from(*s == Step::North))
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::East => "E",
                Step::North => "N",
            })?;
        }
        Ok(())
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'E' => Ok(Step::East),
                'N' => Ok(Step::North),
                other => Err(Error::invalid(format!("unknown lattice step '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(steps)
    }
}

/// Number of sub-diagonal monotone paths from `(0,0)` to `(i,j)` (a ballot number).
/// Zero when `j > i`.
pub fn num_dyck(i: usize, j: usize) -> BigUint {
    if j > i {
        return BigUint::zero();
    }
    binomial(i + j, j) * (i - j + 1) / (i + 1)
}

/// Ballot numbers `N(i, j)` for `0 <= j <= i <= n`, filled by `N(i,j) = N(i-1,j) + N(i,j-1)`.
#[derive(Debug, Clone)]
pub struct BallotTable {
    rows: Vec<Vec<BigUint>>,
}

impl BallotTable {
    pub fn new(n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut row = vec![BigUint::zero(); i + 1];
            for j in 0..=i {
                row[j] = if i == 0 {
                    BigUint::one()
                } else {
                    let left = if j < i { rows[i - 1][j].clone() } else { BigUint::zero() };
                    let below = if j > 0 { row[j - 1].clone() } else { BigUint::zero() };
                    left + below
                };
            }
            rows.push(row);
        }
        BallotTable { rows }
    }

    pub fn get(&self, i: usize, j: usize) -> BigUint {
        if j > i {
            BigUint::zero()
        } else {
            self.rows[i][j].clone()
        }
    }

    fn order(&self) -> usize {
        self.rows.len() - 1
    }

    /// Completions from `(x, y)` to `(n, n)`: reversing and reflecting the remainder
    /// turns it into a sub-diagonal path from the origin to `(n - y, n - x)`.
    fn completions(&self, x: usize, y: usize) -> BigUint {
        let n = self.order();
        self.get(n - y, n - x)
    }
}

/// Rank of `path` among all Dyck paths of the same order, in lexicographic order with
/// `East < North`. Each `North` step adds the count of paths that instead step East there.
pub fn rank_dyck_with(table: &BallotTable, path: &DyckPath) -> Result<BigUint> {
    let n = path.order();
    if table.order() != n {
        return Err(Error::invalid(format!(
            "path of order {n} ranked against table of order {}",
            table.order()
        )));
    }
    let (mut x, mut y) = (0usize, 0usize);
    let mut rank = BigUint::zero();
    for s in &path.steps {
        match s {
            Step::East => x += 1,
            Step::North => {
                if x < n {
                    rank += table.completions(x + 1, y);
                }
                y += 1;
            }
        }
    }
    Ok(rank)
}

pub fn rank_dyck(path: &DyckPath) -> BigUint {
    let table = BallotTable::new(path.order());
    rank_dyck_with(&table, path).expect("table built for this order")
}

pub fn unrank_dyck_with(table: &BallotTable, rank: &BigUint) -> Result<DyckPath> {
    let n = table.order();
    let size = table.get(n, n);
    if rank >= &size {
        return Err(Error::Range {
            index: rank.to_string(),
            size: size.to_string(),
        });
    }
    let mut r = rank.clone();
    let (mut x, mut y) = (0usize, 0usize);
    let mut steps = Vec::with_capacity(2 * n);
    while x < n || y < n {
        let take_east = x < n && {
            let c = table.completions(x + 1, y);
            if r < c {
                true
            } else {
                r -= c;
                false
            }
        };
        if take_east {
            steps.push(Step::East);
            x += 1;
        } else {
            steps.push(Step::North);
            y += 1;
        }
    }
    DyckPath::new(steps)
}

pub fn unrank_dyck(rank: &BigUint, n: usize) -> Result<DyckPath> {
    unrank_dyck_with(&BallotTable::new(n), rank)
}

pub fn dyck_count(n: usize) -> BigUint {
    catalan(n)
}
