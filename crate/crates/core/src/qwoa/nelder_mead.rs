//! Budgeted Nelder–Mead minimiser.

/// Reflection, expansion, contraction and shrink coefficients.
const ALPHA: f64 = 1.0;
const GAMMA: f64 = 2.0;
const RHO: f64 = 0.5;
const SIGMA: f64 = 0.5;

#[derive(Debug, Clone)]
pub struct NelderMeadOutcome {
    pub best_point: Vec<f64>,
    pub best_value: f64,
    pub evaluations: usize,
}

/// Minimises `f` starting from `x0` with an axis-aligned initial simplex of the given
/// per-coordinate `steps`. Stops after `budget` evaluations of `f`, or earlier once the
/// simplex values agree to `f_tol` and its vertices to `x_tol`.
pub fn minimize<F>(
    mut f: F,
    x0: &[f64],
    steps: &[f64],
    budget: usize,
    f_tol: f64,
    x_tol: f64,
) -> NelderMeadOutcome
where
    F: FnMut(&[f64]) -> f64,
{
    assert_eq!(x0.len(), steps.len());
    let dim = x0.len();
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64], count: &mut usize| {
        *count += 1;
        f(x)
    };

    let mut best_point = x0.to_vec();
    if budget == 0 {
        return NelderMeadOutcome {
            best_point,
            best_value: f64::INFINITY,
            evaluations,
        };
    }
    let mut best_value = eval(x0, &mut evaluations);
    let mut simplex: Vec<(Vec<f64>, f64)> = vec![(x0.to_vec(), best_value)];
    for i in 0..dim {
        if evaluations >= budget {
            break;
        }
        let mut x = x0.to_vec();
        x[i] += steps[i];
        let v = eval(&x, &mut evaluations);
        if v < best_value {
            best_value = v;
            best_point = x.clone();
        }
        simplex.push((x, v));
    }
    if dim == 0 || simplex.len() < dim + 1 {
        return NelderMeadOutcome {
            best_point,
            best_value,
            evaluations,
        };
    }

    while evaluations < budget {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (lo, hi) = (simplex[0].1, simplex[dim].1);
        let spread = simplex
            .iter()
            .skip(1)
            .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if (hi - lo).abs() <= f_tol && spread <= x_tol {
            break;
        }

        let centroid: Vec<f64> = (0..dim)
            .map(|i| simplex[..dim].iter().map(|(x, _)| x[i]).sum::<f64>() / dim as f64)
            .collect();
        let worst = simplex[dim].0.clone();
        let along = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst)
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };

        let xr = along(ALPHA);
        let fr = eval(&xr, &mut evaluations);
        let mut accepted = None;
        if fr < simplex[0].1 {
            if evaluations < budget {
                let xe = along(GAMMA);
                let fe = eval(&xe, &mut evaluations);
                accepted = Some(if fe < fr { (xe, fe) } else { (xr, fr) });
            } else {
                accepted = Some((xr, fr));
            }
        } else if fr < simplex[dim - 1].1 {
            accepted = Some((xr, fr));
        } else if evaluations < budget {
            let (xc, fc) = if fr < simplex[dim].1 {
                let xc = along(ALPHA * RHO);
                let fc = eval(&xc, &mut evaluations);
                (xc, fc)
            } else {
                let xc = along(-RHO);
                let fc = eval(&xc, &mut evaluations);
                (xc, fc)
            };
            if fc < fr.min(simplex[dim].1) {
                accepted = Some((xc, fc));
            }
        }

        match accepted {
            Some((x, v)) => {
                if v < best_value {
                    best_value = v;
                    best_point = x.clone();
                }
                simplex[dim] = (x, v);
            }
            None => {
                let anchor = simplex[0].0.clone();
                for vertex in simplex.iter_mut().skip(1) {
                    if evaluations >= budget {
                        break;
                    }
                    let x: Vec<f64> = anchor
                        .iter()
                        .zip(&vertex.0)
                        .map(|(a, b)| a + SIGMA * (b - a))
                        .collect();
                    let v = eval(&x, &mut evaluations);
                    if v < best_value {
                        best_value = v;
                        best_point = x.clone();
                    }
                    *vertex = (x, v);
                }
            }
        }
    }

    NelderMeadOutcome {
        best_point,
        best_value,
        evaluations,
    }
}
