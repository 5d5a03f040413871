//! The variational driver.
//!
//! A `p`-layer evolution starts from the uniform superposition and alternates
//! quality-dependent phases with circulant walks:
//!
//! ```text
//! |gamma, t> = W(t_p) Q(gamma_p) ... W(t_1) Q(gamma_1) |s>
//! ```
//!
//! with `Q(gamma) = exp(i gamma diag(q))` and `W(t) = exp(-i t C)`. The `2p` angles are
//! chosen by a multi-start Nelder–Mead search maximising `<q>`.

mod nelder_mead;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circulant::CirculantGraph;
use crate::combinadics::DomainCodec;
use crate::engine::{apply_phase, DftPlan, DiagonalPhase, Sign, StateVector, Walk};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, seeded};

pub use nelder_mead::{minimize, NelderMeadOutcome};

/// Phase angles and walk times of a `p`-layer evolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QwoaParams {
    pub gammas: Vec<f64>,
    pub times: Vec<f64>,
}

impl QwoaParams {
    pub fn new(gammas: Vec<f64>, times: Vec<f64>) -> Result<Self> {
        if gammas.len() != times.len() {
            return Err(Error::param(format!(
                "{} phase angles but {} walk times",
                gammas.len(),
                times.len()
            )));
        }
        if gammas.iter().chain(&times).any(|v| !v.is_finite()) {
            return Err(Error::param("angles and times must be finite"));
        }
        Ok(QwoaParams { gammas, times })
    }

    pub fn empty() -> Self {
        QwoaParams {
            gammas: Vec::new(),
            times: Vec::new(),
        }
    }

    pub fn layers(&self) -> usize {
        self.gammas.len()
    }

    /// `[gamma_1..gamma_p, t_1..t_p]`.
    pub fn to_vector(&self) -> Vec<f64> {
        self.gammas.iter().chain(&self.times).copied().collect()
    }

    pub fn from_vector(v: &[f64]) -> Result<Self> {
        if v.len() % 2 != 0 {
            return Err(Error::param("parameter vector must have even length"));
        }
        let p = v.len() / 2;
        Self::new(v[..p].to_vec(), v[p..].to_vec())
    }

    /// The same evolution followed by one more layer `(gamma, t) = (0, 0)`.
    pub fn with_idle_layer(&self) -> Self {
        let mut out = self.clone();
        out.gammas.push(0.0);
        out.times.push(0.0);
        out
    }
}

/// Sign conventions of the two exponentials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignConvention {
    pub phase: Sign,
    pub walk: Sign,
}

impl Default for SignConvention {
    fn default() -> Self {
        SignConvention {
            phase: Sign::Plus,
            walk: Sign::Minus,
        }
    }
}

/// Graph used by each layer.
#[derive(Debug, Clone)]
pub enum GraphSchedule {
    Fixed(CirculantGraph),
    PerLayer(Vec<CirculantGraph>),
}

/// Prepared evolution for one quality vector and graph schedule.
#[derive(Debug, Clone)]
pub struct Qwoa {
    qualities: Vec<f64>,
    walks: Vec<Walk>,
    per_layer: bool,
    signs: SignConvention,
}

impl Qwoa {
    pub fn new(qualities: Vec<f64>, graph: &CirculantGraph) -> Result<Self> {
        Self::with_schedule(qualities, GraphSchedule::Fixed(graph.clone()), SignConvention::default())
    }

    pub fn with_schedule(
        qualities: Vec<f64>,
        schedule: GraphSchedule,
        signs: SignConvention,
    ) -> Result<Self> {
        let m = qualities.len();
        if m == 0 {
            return Err(Error::param("quality vector is empty"));
        }
        if qualities.iter().any(|q| !q.is_finite()) {
            return Err(Error::param("qualities must be finite"));
        }
        let plan = DftPlan::new(m)?;
        let (graphs, per_layer) = match schedule {
            GraphSchedule::Fixed(g) => (vec![g], false),
            GraphSchedule::PerLayer(gs) if gs.is_empty() => {
                return Err(Error::param("per-layer schedule lists no graphs"))
            }
            GraphSchedule::PerLayer(gs) => (gs, true),
        };
        let walks = graphs
            .iter()
            .map(|g| Walk::with_plan(g, plan.clone(), signs.walk))
            .collect::<Result<Vec<_>>>()?;
        Ok(Qwoa {
            qualities,
            walks,
            per_layer,
            signs,
        })
    }

    pub fn dim(&self) -> usize {
        self.qualities.len()
    }

    pub fn qualities(&self) -> &[f64] {
        &self.qualities
    }

    /// Largest `p` the schedule supports.
    pub fn max_layers(&self) -> Option<usize> {
        self.per_layer.then_some(self.walks.len())
    }

    fn walk_for(&self, layer: usize) -> &Walk {
        if self.per_layer {
            &self.walks[layer]
        } else {
            &self.walks[0]
        }
    }

    fn check_layers(&self, p: usize) -> Result<()> {
        match self.max_layers() {
            Some(max) if p > max => Err(Error::param(format!(
                "{p} layers requested but the schedule lists {max} graphs"
            ))),
            _ => Ok(()),
        }
    }

    /// State after all layers. Zero angles or times are skipped exactly, so an appended
    /// `(0, 0)` layer reproduces the previous state bit for bit.
    pub fn evolve(&self, params: &QwoaParams) -> Result<StateVector> {
        self.check_layers(params.layers())?;
        let mut state = StateVector::uniform(self.dim())?;
        for (layer, (&gamma, &t)) in params.gammas.iter().zip(&params.times).enumerate() {
            apply_phase(
                &mut state,
                &DiagonalPhase::new(&self.qualities, gamma)?,
                self.signs.phase,
            )?;
            self.walk_for(layer).apply(&mut state, t)?;
        }
        Ok(state)
    }

    /// `<gamma, t| Q |gamma, t>`.
    pub fn objective(&self, params: &QwoaParams) -> Result<f64> {
        self.evolve(params)?.expectation(&self.qualities)
    }

    pub fn mean_quality(&self) -> f64 {
        self.qualities.iter().sum::<f64>() / self.dim() as f64
    }
}

pub fn evolve(
    params: &QwoaParams,
    qualities: &[f64],
    graph: &CirculantGraph,
) -> Result<StateVector> {
    if qualities.len() != graph.size() {
        return Err(Error::Dimension {
            expected: graph.size(),
            found: qualities.len(),
        });
    }
    Qwoa::new(qualities.to_vec(), graph)?.evolve(params)
}

pub fn objective(params: &QwoaParams, qualities: &[f64], graph: &CirculantGraph) -> Result<f64> {
    evolve(params, qualities, graph)?.expectation(qualities)
}

// ---------------------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[default]
    NelderMead,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerSettings {
    /// Total objective evaluations across all starts.
    pub budget: usize,
    pub starts: usize,
    pub seed: u64,
    pub method: Method,
    /// Sampling range of the random starting angles.
    pub gamma_range: (f64, f64),
    /// Sampling range of the random starting times.
    pub time_range: (f64, f64),
    /// Initial simplex edge as a fraction of each range.
    pub simplex_scale: f64,
    /// Start 0 begins here instead of at a random point.
    pub initial: Option<QwoaParams>,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        OptimizerSettings {
            budget: 1000,
            starts: 4,
            seed: 0,
            method: Method::NelderMead,
            gamma_range: (0.0, 2.0 * PI),
            time_range: (0.0, PI),
            simplex_scale: 0.1,
            initial: None,
        }
    }
}

/// One objective evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub eval_id: usize,
    pub start_id: usize,
    pub params: QwoaParams,
    pub expectation: f64,
}

#[derive(Debug, Clone)]
pub struct QwoaRun {
    pub layers: usize,
    pub best_params: QwoaParams,
    pub best_expectation: f64,
    pub trace: Vec<Evaluation>,
    /// Measurement distribution at the best parameters.
    pub probabilities: Vec<f64>,
}

impl QwoaRun {
    pub fn evaluations(&self) -> usize {
        self.trace.len()
    }
}

fn start_budgets(budget: usize, starts: usize) -> Vec<usize> {
    (0..starts)
        .map(|s| budget / starts + usize::from(s < budget % starts))
        .collect()
}

/// Multi-start maximisation of the `p`-layer objective. Starts run in parallel; the
/// trace is merged by start index, so results depend only on the settings.
pub fn optimize(qwoa: &Qwoa, p: usize, settings: &OptimizerSettings) -> Result<QwoaRun> {
    if settings.budget == 0 {
        return Err(Error::param("optimizer budget must be at least one evaluation"));
    }
    if settings.starts == 0 {
        return Err(Error::param("optimizer needs at least one start"));
    }
    qwoa.check_layers(p)?;
    if let Some(init) = &settings.initial {
        if init.layers() != p {
            return Err(Error::param(format!(
                "initial point has {} layers, expected {p}",
                init.layers()
            )));
        }
    }
    let Method::NelderMead = settings.method;

    let (g0, g1) = settings.gamma_range;
    let (t0, t1) = settings.time_range;
    let steps: Vec<f64> = std::iter::repeat_n(settings.simplex_scale * (g1 - g0), p)
        .chain(std::iter::repeat_n(settings.simplex_scale * (t1 - t0), p))
        .collect();

    let per_start: Vec<(usize, usize)> = start_budgets(settings.budget, settings.starts)
        .into_iter()
        .enumerate()
        .filter(|(_, b)| *b > 0)
        .collect();

    let traces: Vec<Result<Vec<(QwoaParams, f64)>>> = per_start
        .par_iter()
        .map(|&(start, budget)| {
            let x0 = match (&settings.initial, start) {
                (Some(init), 0) => init.to_vector(),
                _ => {
                    use rand::Rng;
                    let mut rng = seeded(derive_seed(settings.seed, &format!("start-{start}")));
                    let gammas: Vec<f64> = (0..p).map(|_| g0 + (g1 - g0) * rng.random::<f64>()).collect();
                    let times: Vec<f64> = (0..p).map(|_| t0 + (t1 - t0) * rng.random::<f64>()).collect();
                    gammas.into_iter().chain(times).collect()
                }
            };
            let mut trace = Vec::with_capacity(budget);
            let mut failure = None;
            minimize(
                |x| {
                    let params = QwoaParams::from_vector(x).expect("even-length vector");
                    match qwoa.objective(&params) {
                        Ok(v) => {
                            trace.push((params, v));
                            -v
                        }
                        Err(e) => {
                            failure.get_or_insert(e);
                            f64::INFINITY
                        }
                    }
                },
                &x0,
                &steps,
                budget,
                1e-13,
                1e-10,
            );
            match failure {
                Some(e) => Err(e),
                None => Ok(trace),
            }
        })
        .collect();

    let mut trace = Vec::new();
    for ((start, _), result) in per_start.iter().zip(traces) {
        for (params, expectation) in result? {
            trace.push(Evaluation {
                eval_id: trace.len(),
                start_id: *start,
                params,
                expectation,
            });
        }
    }
    let best = trace
        .iter()
        .fold(None::<&Evaluation>, |best, e| match best {
            Some(b) if b.expectation >= e.expectation => Some(b),
            _ => Some(e),
        })
        .expect("budget >= 1 gives at least one evaluation");
    let best_params = best.params.clone();
    let best_expectation = best.expectation;
    let probabilities = qwoa.evolve(&best_params)?.probabilities();
    Ok(QwoaRun {
        layers: p,
        best_params,
        best_expectation,
        trace,
        probabilities,
    })
}

/// Optimises `p = 1..=max_layers` in turn, seeding each depth from the previous optimum
/// extended by an idle `(0, 0)` layer, so the best objective never decreases with `p`.
/// Each depth gets the full `settings.budget`.
pub fn optimize_nested(
    qwoa: &Qwoa,
    max_layers: usize,
    settings: &OptimizerSettings,
) -> Result<Vec<QwoaRun>> {
    let mut runs: Vec<QwoaRun> = Vec::with_capacity(max_layers);
    let mut previous = QwoaParams::empty();
    for p in 1..=max_layers {
        let stage = OptimizerSettings {
            seed: derive_seed(settings.seed, &format!("layer-{p}")),
            initial: Some(previous.with_idle_layer()),
            ..settings.clone()
        };
        let run = optimize(qwoa, p, &stage)?;
        previous = run.best_params.clone();
        runs.push(run);
    }
    Ok(runs)
}

// ---------------------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportEntry {
    pub index: usize,
    pub object: String,
    pub probability: f64,
    pub quality: f64,
    pub cumulative: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimumSummary {
    pub quality: f64,
    /// Number of indices attaining the optimum.
    pub count: usize,
    /// Total probability of measuring an optimal object.
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub entries: Vec<ReportEntry>,
    pub cumulative_probability: f64,
    pub optimum: OptimumSummary,
}

/// Indices whose quality is within a relative `1e-9` of the maximum.
pub fn optimal_indices(qualities: &[f64]) -> Vec<usize> {
    let best = qualities.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tol = 1e-9 * best.abs().max(1.0);
    (0..qualities.len())
        .filter(|&i| qualities[i] >= best - tol)
        .collect()
}

/// Top-`n` objects by probability (ties broken by index), un-ranked through `codec`.
pub fn report(run: &QwoaRun, codec: &DomainCodec, qualities: &[f64], top_n: usize) -> Result<Report> {
    let m = run.probabilities.len();
    if qualities.len() != m || codec.size_usize() != Some(m) {
        return Err(Error::Dimension {
            expected: m,
            found: qualities.len(),
        });
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        run.probabilities[b]
            .total_cmp(&run.probabilities[a])
            .then(a.cmp(&b))
    });
    let mut cumulative = 0.0;
    let entries = order
        .into_iter()
        .take(top_n)
        .map(|index| {
            cumulative += run.probabilities[index];
            Ok(ReportEntry {
                index,
                object: codec.unrank_index(index)?.to_string(),
                probability: run.probabilities[index],
                quality: qualities[index],
                cumulative,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let optimal = optimal_indices(qualities);
    let optimum = OptimumSummary {
        quality: qualities[optimal[0]],
        count: optimal.len(),
        probability: optimal.iter().map(|&i| run.probabilities[i]).sum(),
    };
    Ok(Report {
        entries,
        cumulative_probability: cumulative,
        optimum,
    })
}
