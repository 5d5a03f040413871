//! Amplitude amplification over an indexed domain.
//!
//! The oracle flips the sign of every index whose object satisfies the predicate, and
//! the diffusion operator reflects about the uniform state, which the Fourier transform
//! maps to index `0`. Everything happens in the `M`-dimensional index space.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinadics::{DomainCodec, Object};
use crate::engine::{DftPlan, Direction, StateVector, DEFAULT_MAX_DIMENSION};
use crate::error::{Error, Result};
use crate::rng::seeded;

/// Domain, marked set and a reusable Fourier plan.
#[derive(Debug, Clone)]
pub struct SearchSpec {
    codec: DomainCodec,
    marked: Vec<bool>,
    count: usize,
    plan: DftPlan,
}

impl SearchSpec {
    /// Marks every object satisfying `predicate`, evaluated once per index.
    pub fn new<P>(codec: DomainCodec, predicate: P) -> Result<Self>
    where
        P: Fn(&Object) -> bool + Sync,
    {
        Self::with_limit(codec, predicate, DEFAULT_MAX_DIMENSION)
    }

    pub fn with_limit<P>(codec: DomainCodec, predicate: P, max_dimension: usize) -> Result<Self>
    where
        P: Fn(&Object) -> bool + Sync,
    {
        let m = codec.materialisable_size(max_dimension)?;
        let marked = (0..m)
            .into_par_iter()
            .map(|i| codec.unrank_index(i).map(|o| predicate(&o)))
            .collect::<Result<Vec<bool>>>()?;
        Self::from_marked(codec, marked)
    }

    /// Uses an explicit marked mask in rank order.
    pub fn from_marked(codec: DomainCodec, marked: Vec<bool>) -> Result<Self> {
        let m = codec.materialisable_size(DEFAULT_MAX_DIMENSION)?;
        if marked.len() != m {
            return Err(Error::Dimension {
                expected: m,
                found: marked.len(),
            });
        }
        let count = marked.iter().filter(|&&b| b).count();
        Ok(SearchSpec {
            plan: DftPlan::new(m)?,
            codec,
            marked,
            count,
        })
    }

    pub fn codec(&self) -> &DomainCodec {
        &self.codec
    }

    pub fn size(&self) -> usize {
        self.marked.len()
    }

    /// Number of marked objects.
    pub fn marked_count(&self) -> usize {
        self.count
    }

    pub fn marked(&self) -> &[bool] {
        &self.marked
    }

    pub fn is_marked(&self, index: usize) -> bool {
        self.marked.get(index).copied().unwrap_or(false)
    }
}

/// Applies `-F S_0 F^dagger S_f` in place.
pub fn apply_grover_iteration(state: &mut StateVector, spec: &SearchSpec) -> Result<()> {
    if state.dim() != spec.size() {
        return Err(Error::Dimension {
            expected: spec.size(),
            found: state.dim(),
        });
    }
    for (a, &hit) in state.amplitudes_mut().iter_mut().zip(&spec.marked) {
        if hit {
            *a = -*a;
        }
    }
    spec.plan.apply(state, Direction::Inverse)?;
    let amps = state.amplitudes_mut();
    amps[0] = -amps[0];
    spec.plan.apply(state, Direction::Forward)?;
    for a in state.amplitudes_mut() {
        *a = -*a;
    }
    Ok(())
}

pub fn grover_iteration(state: &StateVector, spec: &SearchSpec) -> Result<StateVector> {
    let mut out = state.clone();
    apply_grover_iteration(&mut out, spec)?;
    Ok(out)
}

fn rotation_angle(m: usize, k: usize) -> f64 {
    (k as f64 / m as f64).sqrt().asin()
}

/// `round(pi / (4 theta) - 1/2)` with `sin theta = sqrt(k / M)`, never negative.
pub fn optimal_iterations(m: usize, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::NoSolution);
    }
    if k > m {
        return Err(Error::param(format!("{k} marked objects exceed domain size {m}")));
    }
    let theta = rotation_angle(m, k);
    Ok((std::f64::consts::PI / (4.0 * theta) - 0.5).round().max(0.0) as usize)
}

/// Marked probability `sin^2((2j + 1) theta)` after `j` iterations.
pub fn predicted_success(m: usize, k: usize, iterations: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let theta = rotation_angle(m, k.min(m));
    ((2 * iterations + 1) as f64 * theta).sin().powi(2)
}

#[derive(Debug, Clone, Serialize)]
pub struct GroverOutcome {
    pub domain_size: usize,
    pub marked: usize,
    pub iterations: usize,
    pub predicted_success: f64,
    /// Marked probability after `0..=iterations` iterations.
    pub trajectory: Vec<f64>,
    pub sampled_index: usize,
    pub sampled_object: String,
    /// Whether the sampled object is marked.
    pub success: bool,
}

/// Index `i` with `cdf(i - 1) <= u < cdf(i)`, skipping zero-probability indices.
pub fn sample_index(probabilities: &[f64], u: f64) -> usize {
    let mut cumulative = 0.0;
    let mut last = 0;
    for (i, &p) in probabilities.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        cumulative += p;
        last = i;
        if u < cumulative {
            return i;
        }
    }
    last
}

/// Runs the optimal number of iterations from the uniform state and measures once.
pub fn grover_search(spec: &SearchSpec, seed: u64) -> Result<GroverOutcome> {
    let m = spec.size();
    let k = spec.marked_count();
    let r = optimal_iterations(m, k)?;
    let mut state = StateVector::uniform(m)?;
    let mut trajectory = Vec::with_capacity(r + 1);
    trajectory.push(state.probability_of(spec.marked())?);
    for _ in 0..r {
        apply_grover_iteration(&mut state, spec)?;
        trajectory.push(state.probability_of(spec.marked())?);
    }
    let mut rng = seeded(seed);
    let index = sample_index(&state.probabilities(), rng.random::<f64>());
    Ok(GroverOutcome {
        domain_size: m,
        marked: k,
        iterations: r,
        predicted_success: predicted_success(m, k, r),
        trajectory,
        sampled_index: index,
        sampled_object: spec.codec().unrank_index(index)?.to_string(),
        success: spec.is_marked(index),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinadics::Family;

    fn comb(n: usize, k: usize) -> DomainCodec {
        DomainCodec::new(Family::Combinations { n, k }).unwrap()
    }

    #[test]
    fn iteration_counts() {
        assert_eq!(optimal_iterations(4, 1).unwrap(), 1);
        assert!((predicted_success(4, 1, 1) - 1.0).abs() < 1e-12);
        assert_eq!(optimal_iterations(120, 1).unwrap(), 8);
        assert!(predicted_success(120, 1, 8) > 0.99);
        assert_eq!(optimal_iterations(7, 7).unwrap(), 0);
        assert_eq!(optimal_iterations(1, 1).unwrap(), 0);
        assert_eq!(optimal_iterations(10, 0), Err(Error::NoSolution));
    }

    #[test]
    fn one_iteration_of_six() {
        let spec = SearchSpec::new(comb(4, 2), |o| {
            o.as_combination().unwrap().elements() == [2, 3]
        })
        .unwrap();
        assert_eq!(spec.marked_count(), 1);
        let s = grover_iteration(&StateVector::uniform(6).unwrap(), &spec).unwrap();
        let expected = (3.0 * (1.0f64 / 6.0).sqrt().asin()).sin().powi(2);
        assert!((s.probability_of(spec.marked()).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn nothing_or_everything_marked() {
        let uniform = StateVector::uniform(10).unwrap();
        let none = SearchSpec::from_marked(comb(5, 2), vec![false; 10]).unwrap();
        let out = grover_iteration(&uniform, &none).unwrap();
        assert!(out.max_deviation(&uniform).unwrap() < 1e-14);
        let all = SearchSpec::from_marked(comb(5, 2), vec![true; 10]).unwrap();
        let out = grover_iteration(&uniform, &all).unwrap();
        for p in out.probabilities() {
            assert!((p - 0.1).abs() < 1e-14);
        }
        let mut rng = seeded(3);
        let s = StateVector::random(10, &mut rng).unwrap();
        let moved = grover_iteration(&s, &none).unwrap();
        assert!((moved.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn search_contains_zero() {
        let spec = SearchSpec::new(comb(6, 3), |o| o.as_combination().unwrap().contains(0)).unwrap();
        assert_eq!(spec.marked_count(), 10);
        let out = grover_search(&spec, 1).unwrap();
        for (j, p) in out.trajectory.iter().enumerate() {
            assert!((p - predicted_success(20, 10, j)).abs() < 1e-9);
        }
        assert!((out.trajectory[out.iterations] - out.predicted_success).abs() < 1e-9);
    }

    #[test]
    fn single_object_domain() {
        let spec = SearchSpec::new(comb(3, 3), |_| true).unwrap();
        let out = grover_search(&spec, 0).unwrap();
        assert_eq!(out.iterations, 0);
        assert!(out.success);
        assert_eq!(out.sampled_object, "{0,1,2}");
    }

    #[test]
    fn no_solution() {
        let spec = SearchSpec::new(comb(4, 2), |_| false).unwrap();
        assert_eq!(grover_search(&spec, 0).unwrap_err(), Error::NoSolution);
    }

    #[test]
    fn inverse_cdf() {
        let p = [0.0, 0.25, 0.0, 0.75];
        assert_eq!(sample_index(&p, 0.0), 1);
        assert_eq!(sample_index(&p, 0.2499), 1);
        assert_eq!(sample_index(&p, 0.25), 3);
        assert_eq!(sample_index(&p, 0.999_999_9), 3);
        assert_eq!(sample_index(&[0.5, 0.4999999], 0.9999999999), 1);
    }

    #[test]
    fn dimension_mismatch() {
        let spec = SearchSpec::new(comb(4, 2), |_| true).unwrap();
        assert!(grover_iteration(&StateVector::uniform(5).unwrap(), &spec).is_err());
    }
}
