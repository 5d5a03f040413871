//! Quality functions `q(x)` for the supported application domains.
//!
//! Every oracle is maximised: cost-type problems return their negated cost, so the
//! argmax of `q` is the optimum regardless of the problem.

use rand::Rng;
use rayon::prelude::*;

use crate::combinadics::{Combination, DomainCodec, DyckPath, Family, Object, Permutation};
use crate::error::{Error, Result};

/// Absolute tolerance for symmetry and positive-semidefiniteness checks.
pub const MATRIX_TOLERANCE: f64 = 1e-9;

/// A pure function from objects to solution quality.
pub trait QualityOracle: Sync {
    fn quality(&self, object: &Object) -> Result<f64>;
}

impl<F> QualityOracle for F
where
    F: Fn(&Object) -> Result<f64> + Sync,
{
    fn quality(&self, object: &Object) -> Result<f64> {
        self(object)
    }
}

/// The same quality for every object.
#[derive(Debug, Clone, Copy)]
pub struct ConstantOracle(pub f64);

impl QualityOracle for ConstantOracle {
    fn quality(&self, _: &Object) -> Result<f64> {
        Ok(self.0)
    }
}

fn check_square(name: &str, m: &[Vec<f64>], n: usize) -> Result<()> {
    if m.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(Error::param(format!("{name} must be a {n}x{n} matrix")));
    }
    if m.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::param(format!("{name} has non-finite entries")));
    }
    Ok(())
}

fn check_symmetric(name: &str, m: &[Vec<f64>]) -> Result<()> {
    let n = m.len();
    for i in 0..n {
        for j in 0..i {
            if (m[i][j] - m[j][i]).abs() > MATRIX_TOLERANCE {
                return Err(Error::param(format!(
                    "{name} is not symmetric at ({i},{j})"
                )));
            }
        }
    }
    Ok(())
}

fn check_zero_diagonal(name: &str, m: &[Vec<f64>]) -> Result<()> {
    if let Some(i) = (0..m.len()).find(|&i| m[i][i] != 0.0) {
        return Err(Error::param(format!("{name} has nonzero diagonal at {i}")));
    }
    Ok(())
}

fn expect_combination<'a>(object: &'a Object, problem: &str) -> Result<&'a Combination> {
    object
        .as_combination()
        .ok_or_else(|| Error::invalid(format!("{problem} expects a combination, got {object}")))
}

// ---------------------------------------------------------------------------------------

/// Symmetric travelling-salesman instance on `k` cities.
#[derive(Debug, Clone, PartialEq)]
pub struct TspInstance {
    dist: Vec<Vec<f64>>,
}

impl TspInstance {
    pub fn new(dist: Vec<Vec<f64>>) -> Result<Self> {
        let k = dist.len();
        if k == 0 {
            return Err(Error::param("TSP instance needs at least one city"));
        }
        check_square("distance matrix", &dist, k)?;
        check_symmetric("distance matrix", &dist)?;
        check_zero_diagonal("distance matrix", &dist)?;
        if dist.iter().flatten().any(|&d| d < 0.0) {
            return Err(Error::param("distances must be nonnegative"));
        }
        Ok(TspInstance { dist })
    }

    /// Euclidean distances between points in the plane.
    pub fn from_points(points: &[(f64, f64)]) -> Result<Self> {
        let dist = points
            .iter()
            .map(|a| {
                points
                    .iter()
                    .map(|b| ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt())
                    .collect()
            })
            .collect();
        Self::new(dist)
    }

    /// `k` cities uniform in the unit square.
    pub fn random<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Result<Self> {
        let points: Vec<(f64, f64)> = (0..k).map(|_| (rng.random(), rng.random())).collect();
        Self::from_points(&points)
    }

    pub fn cities(&self) -> usize {
        self.dist.len()
    }

    pub fn distances(&self) -> &[Vec<f64>] {
        &self.dist
    }

    pub fn tour_length(&self, tour: &Permutation) -> Result<f64> {
        let k = self.cities();
        if tour.len() != k {
            return Err(Error::Dimension {
                expected: k,
                found: tour.len(),
            });
        }
        let p = tour.as_slice();
        Ok((0..k).map(|i| self.dist[p[i]][p[(i + 1) % k]]).sum())
    }

    pub fn family(&self) -> Family {
        Family::Permutations {
            n: self.cities(),
            ordering: Default::default(),
        }
    }
}

/// Negated closed-tour length.
pub fn tsp_quality(inst: &TspInstance, tour: &Permutation) -> Result<f64> {
    Ok(-inst.tour_length(tour)?)
}

impl QualityOracle for TspInstance {
    fn quality(&self, object: &Object) -> Result<f64> {
        let tour = object
            .as_permutation()
            .ok_or_else(|| Error::invalid(format!("TSP expects a permutation, got {object}")))?;
        tsp_quality(self, tour)
    }
}

// ---------------------------------------------------------------------------------------

/// Balanced graph bisection on an even number of vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionInstance {
    weights: Vec<Vec<f64>>,
}

impl PartitionInstance {
    pub fn new(weights: Vec<Vec<f64>>) -> Result<Self> {
        let n = weights.len();
        if n == 0 || n % 2 != 0 {
            return Err(Error::param(format!(
                "graph partitioning needs an even, positive vertex count, got {n}"
            )));
        }
        check_square("edge weights", &weights, n)?;
        check_symmetric("edge weights", &weights)?;
        check_zero_diagonal("edge weights", &weights)?;
        Ok(PartitionInstance { weights })
    }

    /// Independent uniform `[0, 1)` edge weights.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        let mut w = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..i {
                let v: f64 = rng.random();
                w[i][j] = v;
                w[j][i] = v;
            }
        }
        Self::new(w)
    }

    pub fn vertices(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn cut_weight(&self, side: &Combination) -> Result<f64> {
        let n = self.vertices();
        if side.universe() != n || side.len() != n / 2 {
            return Err(Error::invalid(format!(
                "bisection of {n} vertices needs {} chosen, got {side}",
                n / 2
            )));
        }
        let inside = side.to_bits();
        let mut cut = 0.0;
        for &i in side.elements() {
            for (j, _) in inside.iter().enumerate().filter(|(_, &b)| !b) {
                cut += self.weights[i][j];
            }
        }
        Ok(cut)
    }

    pub fn family(&self) -> Family {
        Family::Combinations {
            n: self.vertices(),
            k: self.vertices() / 2,
        }
    }
}

/// Negated cut weight of the bisection `(c, [n] \ c)`.
pub fn partition_quality(inst: &PartitionInstance, side: &Combination) -> Result<f64> {
    Ok(-inst.cut_weight(side)?)
}

impl QualityOracle for PartitionInstance {
    fn quality(&self, object: &Object) -> Result<f64> {
        partition_quality(self, expect_combination(object, "graph partitioning")?)
    }
}

// ---------------------------------------------------------------------------------------

/// Cardinality-constrained mean-variance portfolio selection.
#[derive(Debug, Clone, PartialEq)]
pub struct PortfolioInstance {
    returns: Vec<f64>,
    covariance: Vec<Vec<f64>>,
    risk_aversion: f64,
    max_assets: usize,
}

/// Cholesky factorisation that tolerates zero pivots within `MATRIX_TOLERANCE`.
fn is_positive_semidefinite(a: &[Vec<f64>]) -> bool {
    let n = a.len();
    let scale = (0..n).map(|i| a[i][i].abs()).fold(1.0, f64::max);
    let tol = MATRIX_TOLERANCE * scale;
    let mut l = vec![vec![0.0; n]; n];
    for j in 0..n {
        let pivot = a[j][j] - (0..j).map(|k| l[j][k] * l[j][k]).sum::<f64>();
        if pivot < -tol {
            return false;
        }
        if pivot <= tol {
            // zero pivot: the rest of the column must vanish too
            for i in j + 1..n {
                let r = a[i][j] - (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>();
                if r.abs() > tol {
                    return false;
                }
            }
            continue;
        }
        let d = pivot.sqrt();
        l[j][j] = d;
        for i in j + 1..n {
            let r = a[i][j] - (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>();
            l[i][j] = r / d;
        }
    }
    true
}

impl PortfolioInstance {
    pub fn new(
        returns: Vec<f64>,
        covariance: Vec<Vec<f64>>,
        risk_aversion: f64,
        max_assets: usize,
    ) -> Result<Self> {
        let n = returns.len();
        if n == 0 {
            return Err(Error::param("portfolio needs at least one asset"));
        }
        if returns.iter().any(|r| !r.is_finite()) {
            return Err(Error::param("expected returns must be finite"));
        }
        check_square("covariance", &covariance, n)?;
        check_symmetric("covariance", &covariance)?;
        if !is_positive_semidefinite(&covariance) {
            return Err(Error::param("covariance is not positive semidefinite"));
        }
        if !(risk_aversion >= 0.0 && risk_aversion.is_finite()) {
            return Err(Error::param("risk aversion must be finite and nonnegative"));
        }
        if max_assets > n {
            return Err(Error::param(format!(
                "K = {max_assets} exceeds asset count {n}"
            )));
        }
        Ok(PortfolioInstance {
            returns,
            covariance,
            risk_aversion,
            max_assets,
        })
    }

    /// Returns uniform in `[0, 1)`, covariance `B B^T / n` for a uniform `[-1, 1)` factor
    /// matrix `B`.
    pub fn random<R: Rng + ?Sized>(
        n: usize,
        max_assets: usize,
        risk_aversion: f64,
        rng: &mut R,
    ) -> Result<Self> {
        let returns: Vec<f64> = (0..n).map(|_| rng.random()).collect();
        let b: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let mut cov = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..=i {
                let v = (0..n).map(|k| b[i][k] * b[j][k]).sum::<f64>() / n as f64;
                cov[i][j] = v;
                cov[j][i] = v;
            }
        }
        Self::new(returns, cov, risk_aversion, max_assets)
    }

    pub fn assets(&self) -> usize {
        self.returns.len()
    }

    pub fn max_assets(&self) -> usize {
        self.max_assets
    }

    pub fn family(&self) -> Family {
        Family::BoundedCombinations {
            n: self.assets(),
            min_order: 0,
            max_order: self.max_assets,
        }
    }
}

/// `mu . x - theta x^T Sigma x` for the indicator `x` of the chosen assets.
pub fn portfolio_quality(inst: &PortfolioInstance, chosen: &Combination) -> Result<f64> {
    if chosen.universe() != inst.assets() {
        return Err(Error::invalid(format!(
            "portfolio over {} assets given selection {chosen}",
            inst.assets()
        )));
    }
    if chosen.len() > inst.max_assets {
        return Err(Error::invalid(format!(
            "selection of {} assets exceeds K = {}",
            chosen.len(),
            inst.max_assets
        )));
    }
    let e = chosen.elements();
    let ret: f64 = e.iter().map(|&i| inst.returns[i]).sum();
    let risk: f64 = e
        .iter()
        .flat_map(|&i| e.iter().map(move |&j| (i, j)))
        .map(|(i, j)| inst.covariance[i][j])
        .sum();
    Ok(ret - inst.risk_aversion * risk)
}

impl QualityOracle for PortfolioInstance {
    fn quality(&self, object: &Object) -> Result<f64> {
        portfolio_quality(self, expect_combination(object, "portfolio selection")?)
    }
}

// ---------------------------------------------------------------------------------------

/// Weighted `n x n` grid for Dyck-path optimisation. `weights[i][j]` belongs to the unit
/// cell `[i, i+1] x [j, j+1]` (column `i`, row `j`).
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeCostInstance {
    weights: Vec<Vec<f64>>,
}

impl LatticeCostInstance {
    pub fn new(weights: Vec<Vec<f64>>) -> Result<Self> {
        let n = weights.len();
        check_square("cell weights", &weights, n)?;
        Ok(LatticeCostInstance { weights })
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        Self::new(
            (0..n)
                .map(|_| (0..n).map(|_| rng.random()).collect())
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.weights.len()
    }

    /// Total weight of the cells lying under the path.
    pub fn collected_weight(&self, path: &DyckPath) -> Result<f64> {
        if path.order() != self.order() {
            return Err(Error::invalid(format!(
                "path of order {} on a {}x{} grid",
                path.order(),
                self.order(),
                self.order()
            )));
        }
        Ok(path
            .column_heights()
            .iter()
            .enumerate()
            .map(|(i, &h)| self.weights[i][..h].iter().sum::<f64>())
            .sum())
    }

    pub fn family(&self) -> Family {
        Family::Dyck { n: self.order() }
    }
}

/// Negated weight of the cells below the path.
pub fn dyck_quality(inst: &LatticeCostInstance, path: &DyckPath) -> Result<f64> {
    Ok(-inst.collected_weight(path)?)
}

impl QualityOracle for LatticeCostInstance {
    fn quality(&self, object: &Object) -> Result<f64> {
        let path = object
            .as_dyck()
            .ok_or_else(|| Error::invalid(format!("lattice cost expects a Dyck path, got {object}")))?;
        dyck_quality(self, path)
    }
}

// ---------------------------------------------------------------------------------------

/// Materialises `q(unrank(r))` for every `r` in `[0, M)`.
pub fn quality_vector<O: QualityOracle + ?Sized>(
    codec: &DomainCodec,
    oracle: &O,
    max_dimension: usize,
) -> Result<Vec<f64>> {
    let m = codec.materialisable_size(max_dimension)?;
    (0..m)
        .into_par_iter()
        .map(|r| {
            let q = oracle.quality(&codec.unrank_index(r)?)?;
            if q.is_finite() {
                Ok(q)
            } else {
                Err(Error::invalid(format!("non-finite quality at index {r}")))
            }
        })
        .collect()
}
