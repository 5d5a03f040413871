//! Checks against brute-force reference computations.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_bigint::BigUint;
use num_complex::Complex64;

use qwoa_core::circulant::CirculantGraph;
use qwoa_core::combinadics::{DomainCodec, Family, Object, PermutationOrdering};
use qwoa_core::engine::{ctqw, dft, Direction, StateVector};
use qwoa_core::problems::{quality_vector, TspInstance};
use qwoa_core::rng::seeded;

fn dense_adjacency(g: &CirculantGraph) -> DMatrix<f64> {
    let row = g.adjacency_row();
    let m = g.size();
    DMatrix::from_fn(m, m, |a, b| f64::from(row[(b + m - a) % m]))
}

fn dense_walk(g: &CirculantGraph, s: &StateVector, t: f64) -> Vec<Complex64> {
    let eig = SymmetricEigen::new(dense_adjacency(g));
    let v = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
    let psi = DVector::from_column_slice(s.amplitudes());
    let mut c = v.transpose() * psi;
    for (ci, &l) in c.iter_mut().zip(eig.eigenvalues.iter()) {
        *ci *= Complex64::from_polar(1.0, -t * l);
    }
    (v * c).iter().copied().collect()
}

#[test]
fn walk_matches_dense_exponential() {
    let mut rng = seeded(17);
    for &m in &[2usize, 3, 6, 11, 37, 64] {
        let mut graphs = vec![CirculantGraph::complete(m).unwrap(), CirculantGraph::cycle(m).unwrap()];
        if m % 2 == 0 && m >= 4 {
            graphs.push(CirculantGraph::mobius_ladder(m).unwrap());
        }
        for g in graphs {
            let s = StateVector::random(m, &mut rng).unwrap();
            for &t in &[0.1, 1.0, 7.5] {
                let fast = ctqw(&s, &g, t).unwrap();
                let slow = dense_walk(&g, &s, t);
                let dev = fast
                    .amplitudes()
                    .iter()
                    .zip(&slow)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                assert!(dev < 1e-10, "M = {m}, {:?}, t = {t}: {dev}", g.family());
            }
        }
    }
}

#[test]
fn spectrum_matches_dense_eigenvalues() {
    for &m in &[4usize, 9, 30, 50] {
        let g = CirculantGraph::from_generators(m, [1, 3]).unwrap();
        let mut fast = g.eigenvalues().eigenvalues;
        let mut slow: Vec<f64> = SymmetricEigen::new(dense_adjacency(&g)).eigenvalues.iter().copied().collect();
        fast.sort_by(f64::total_cmp);
        slow.sort_by(f64::total_cmp);
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn dft_matches_naive_kernel() {
    let mut rng = seeded(2);
    for m in [1usize, 7, 20, 128, 210] {
        let s = StateVector::random(m, &mut rng).unwrap();
        let fast = dft(&s, Direction::Forward);
        let scale = 1.0 / (m as f64).sqrt();
        for j in 0..m {
            let naive: Complex64 = (0..m)
                .map(|k| {
                    let angle = 2.0 * std::f64::consts::PI * ((j * k) % m) as f64 / m as f64;
                    s.amplitudes()[k] * Complex64::from_polar(scale, angle)
                })
                .sum();
            assert!((fast.amplitudes()[j] - naive).norm() < 1e-12);
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[test]
fn lehmer_order_is_lexicographic() {
    for n in 0..=6 {
        let codec = DomainCodec::new(Family::Permutations {
            n,
            ordering: PermutationOrdering::Lehmer,
        })
        .unwrap();
        let mut v: Vec<usize> = (0..n).collect();
        let mut r = 0usize;
        loop {
            let obj = codec.unrank_index(r).unwrap();
            assert_eq!(obj.as_permutation().unwrap().as_slice(), v.as_slice());
            r += 1;
            if !next_permutation(&mut v) {
                break;
            }
        }
        assert_eq!(BigUint::from(r), *codec.size());
    }
}

#[test]
fn combination_order_is_colex() {
    // colex order of k-subsets is increasing order of their bitmasks
    for n in 0..=10 {
        for k in 0..=n {
            let codec = DomainCodec::new(Family::Combinations { n, k }).unwrap();
            let masks: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() as usize == k).collect();
            assert_eq!(BigUint::from(masks.len()), *codec.size());
            for (r, &mask) in masks.iter().enumerate() {
                let obj = Object::Combination(
                    qwoa_core::combinadics::Combination::new(
                        n,
                        (0..n).filter(|i| mask >> i & 1 == 1).collect(),
                    )
                    .unwrap(),
                );
                assert_eq!(codec.rank_index(&obj).unwrap(), r);
            }
        }
    }
}

#[test]
fn tsp_qualities_match_direct_tour_sums() {
    let mut rng = seeded(5);
    let inst = TspInstance::random(5, &mut rng).unwrap();
    let codec = DomainCodec::new(inst.family()).unwrap();
    let q = quality_vector(
        &codec,
        &|o: &Object| qwoa_core::problems::tsp_quality(&inst, o.as_permutation().unwrap()),
        1 << 20,
    )
    .unwrap();
    for (i, &qi) in q.iter().enumerate() {
        let obj = codec.unrank_index(i).unwrap();
        let p = obj.as_permutation().unwrap().as_slice();
        let d = inst.distances();
        let length: f64 = (0..5).map(|j| d[p[j]][p[(j + 1) % 5]]).sum();
        assert!((qi + length).abs() < 1e-12);
    }
}
