use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Pascal triangle of exact binomial coefficients `C(i, j)` for `i <= max_n`, `j <= max_k`.
///
/// Entries with `j > i` are zero.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    max_n: usize,
    max_k: usize,
    rows: Vec<Vec<BigUint>>,
}

impl BinomialTable {
    pub fn new(max_n: usize, max_k: usize) -> Self {
        let max_k = max_k.min(max_n);
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
        for i in 0..=max_n {
            let mut row = vec![BigUint::zero(); max_k + 1];
            row[0] = BigUint::one();
            if i > 0 {
                let prev = &rows[i - 1];
                for j in 1..=max_k.min(i) {
                    row[j] = &prev[j - 1] + &prev[j];
                }
            }
            rows.push(row);
        }
        BinomialTable { max_n, max_k, rows }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn max_k(&self) -> usize {
        self.max_k
    }

    /// `C(n, k)`; panics if the entry lies outside the table (other than `k > n`, which is zero).
    pub fn get(&self, n: usize, k: usize) -> &BigUint {
        static ZERO: std::sync::OnceLock<BigUint> = std::sync::OnceLock::new();
        if k > n {
            return ZERO.get_or_init(BigUint::zero);
        }
        &self.rows[n][k]
    }
}

/// Exact `C(n, k)` by the multiplicative formula.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn catalan(n: usize) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}
