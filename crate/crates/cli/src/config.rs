//! JSON experiment and search configurations.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Deserialize;

use qwoa_core::circulant::{CirculantGraph, GraphFamily};
use qwoa_core::combinadics::{DomainCodec, Family, Object};
use qwoa_core::engine::{Sign, DEFAULT_MAX_DIMENSION};
use qwoa_core::problems::{
    quality_vector, LatticeCostInstance, PartitionInstance, PortfolioInstance, QualityOracle,
    TspInstance,
};
use qwoa_core::qwoa::{GraphSchedule, SignConvention};
use qwoa_core::rng::component_rng;

use crate::failure::{Failure, Outcome};

pub const OUTPUT_DIR_ENV: &str = "QWOA_OUTPUT_DIR";

/// Reads and deserialises a JSON file. Errors name the offending field with its line and
/// column.
pub fn load<T: DeserializeOwned>(path: &Path) -> Outcome<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Outcome<T> {
    serde_json::from_str(text).map_err(|e| Failure::input(e.to_string()))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProblemConfig {
    /// Tours of `cities` random points, or of the given points or distance matrix.
    Tsp {
        cities: Option<usize>,
        points: Option<Vec<(f64, f64)>>,
        distances: Option<Vec<Vec<f64>>>,
    },
    /// Balanced bisection of a weighted graph.
    Partition {
        vertices: Option<usize>,
        weights: Option<Vec<Vec<f64>>>,
    },
    /// Cardinality-constrained mean-variance selection.
    Portfolio {
        assets: Option<usize>,
        returns: Option<Vec<f64>>,
        covariance: Option<Vec<Vec<f64>>>,
        risk_aversion: f64,
        max_assets: usize,
    },
    /// Dyck paths collecting weighted grid cells.
    Lattice {
        order: Option<usize>,
        weights: Option<Vec<Vec<f64>>>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub family: GraphFamily,
    #[serde(default)]
    pub generators: Vec<usize>,
}

impl GraphSpec {
    pub fn build(&self, size: usize) -> Outcome<CirculantGraph> {
        if self.family != GraphFamily::Custom && !self.generators.is_empty() {
            return Err(Failure::input(format!(
                "generators are only accepted for the custom family, not {:?}",
                self.family
            )));
        }
        Ok(CirculantGraph::of_family(self.family, size, &self.generators)?)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphConfig {
    pub family: Option<GraphFamily>,
    #[serde(default)]
    pub generators: Vec<usize>,
    /// One graph per layer instead of a fixed graph.
    pub schedule: Option<Vec<GraphSpec>>,
}

impl Default for GraphConfig {
    fn default() -> Self {
        GraphConfig {
            family: Some(GraphFamily::Complete),
            generators: Vec::new(),
            schedule: None,
        }
    }
}

fn default_budget() -> usize {
    2000
}

fn default_starts() -> usize {
    4
}

fn default_top() -> usize {
    10
}

fn default_p() -> usize {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QwoaConfig {
    #[serde(default = "default_p")]
    pub p: usize,
    /// Evaluations per depth.
    #[serde(default = "default_budget")]
    pub budget: usize,
    #[serde(default = "default_starts")]
    pub starts: usize,
    /// Optimise every depth up to `p`, each seeded from the previous optimum.
    #[serde(default)]
    pub nested: bool,
    #[serde(default)]
    pub optimizer: qwoa_core::qwoa::Method,
    #[serde(default = "default_top")]
    pub top: usize,
    pub phase_sign: Option<Sign>,
    pub walk_sign: Option<Sign>,
    pub max_dimension: Option<usize>,
}

impl Default for QwoaConfig {
    fn default() -> Self {
        parse("{}").expect("all fields have defaults")
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: Option<PathBuf>,
    pub trace: Option<String>,
    pub summary: Option<String>,
    pub distribution: Option<String>,
    pub statistics: Option<String>,
}

/// Output directory: command-line flag, then config, then environment, then `.`.
pub fn output_dir(flag: Option<&Path>, config: &OutputConfig) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| config.dir.clone())
        .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub problem: ProblemConfig,
    /// Defaults to the natural family of the problem; must agree with it when given.
    pub domain: Option<Family>,
    #[serde(default)]
    pub graph: GraphConfig,
    #[serde(default)]
    pub qwoa: QwoaConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

pub enum Problem {
    Tsp(TspInstance),
    Partition(PartitionInstance),
    Portfolio(PortfolioInstance),
    Lattice(LatticeCostInstance),
}

impl Problem {
    pub fn family(&self) -> Family {
        match self {
            Problem::Tsp(p) => p.family(),
            Problem::Partition(p) => p.family(),
            Problem::Portfolio(p) => p.family(),
            Problem::Lattice(p) => p.family(),
        }
    }

    pub fn oracle(&self) -> &dyn QualityOracle {
        match self {
            Problem::Tsp(p) => p,
            Problem::Partition(p) => p,
            Problem::Portfolio(p) => p,
            Problem::Lattice(p) => p,
        }
    }
}

fn exactly_one<T>(name: &str, generated: Option<usize>, given: Option<T>) -> Outcome<Result<usize, T>> {
    match (generated, given) {
        (Some(n), None) => Ok(Ok(n)),
        (None, Some(v)) => Ok(Err(v)),
        _ => Err(Failure::input(format!(
            "{name} problem needs exactly one of a size to generate or explicit data"
        ))),
    }
}

impl ProblemConfig {
    /// Builds the instance; random instances draw from the `problem` stream of `seed`.
    pub fn build(&self, seed: u64) -> Outcome<Problem> {
        let mut rng = component_rng(seed, "problem");
        Ok(match self {
            ProblemConfig::Tsp {
                cities,
                points,
                distances,
            } => {
                let explicit = match (points, distances) {
                    (Some(_), Some(_)) => {
                        return Err(Failure::input("give either points or distances, not both"))
                    }
                    (Some(p), None) => Some(TspInstance::from_points(p)),
                    (None, Some(d)) => Some(TspInstance::new(d.clone())),
                    (None, None) => None,
                };
                match exactly_one("tsp", *cities, explicit)? {
                    Ok(k) => Problem::Tsp(TspInstance::random(k, &mut rng)?),
                    Err(inst) => Problem::Tsp(inst?),
                }
            }
            ProblemConfig::Partition { vertices, weights } => {
                match exactly_one("partition", *vertices, weights.clone())? {
                    Ok(n) => Problem::Partition(PartitionInstance::random(n, &mut rng)?),
                    Err(w) => Problem::Partition(PartitionInstance::new(w)?),
                }
            }
            ProblemConfig::Portfolio {
                assets,
                returns,
                covariance,
                risk_aversion,
                max_assets,
            } => {
                let explicit = match (returns, covariance) {
                    (Some(r), Some(c)) => Some((r.clone(), c.clone())),
                    (None, None) => None,
                    _ => return Err(Failure::input("portfolio needs both returns and covariance")),
                };
                match exactly_one("portfolio", *assets, explicit)? {
                    Ok(n) => Problem::Portfolio(PortfolioInstance::random(
                        n,
                        *max_assets,
                        *risk_aversion,
                        &mut rng,
                    )?),
                    Err((r, c)) => {
                        Problem::Portfolio(PortfolioInstance::new(r, c, *risk_aversion, *max_assets)?)
                    }
                }
            }
            ProblemConfig::Lattice { order, weights } => {
                match exactly_one("lattice", *order, weights.clone())? {
                    Ok(n) => Problem::Lattice(LatticeCostInstance::random(n, &mut rng)?),
                    Err(w) => Problem::Lattice(LatticeCostInstance::new(w)?),
                }
            }
        })
    }
}

/// Everything a run needs, validated before any output is written.
pub struct PreparedExperiment {
    pub codec: DomainCodec,
    pub qualities: Vec<f64>,
    pub schedule: GraphSchedule,
    pub signs: SignConvention,
}

impl ExperimentConfig {
    pub fn prepare(&self) -> Outcome<PreparedExperiment> {
        let q = &self.qwoa;
        if q.p == 0 {
            return Err(Failure::input("qwoa.p must be at least 1"));
        }
        if q.budget == 0 || q.starts == 0 {
            return Err(Failure::input("qwoa.budget and qwoa.starts must be positive"));
        }
        let problem = self.problem.build(self.seed)?;
        let natural = problem.family();
        let family = match &self.domain {
            Some(f) if !compatible(f, &natural) => {
                return Err(Failure::input(format!(
                    "domain {f} does not match the problem, which needs {natural}"
                )))
            }
            Some(f) => f.clone(),
            None => natural,
        };
        let codec = DomainCodec::new(family)?;
        let cap = q.max_dimension.unwrap_or(DEFAULT_MAX_DIMENSION);
        let m = codec.materialisable_size(cap)?;
        let schedule = self.graph_schedule(m)?;
        if let GraphSchedule::PerLayer(gs) = &schedule {
            if gs.len() < q.p {
                return Err(Failure::input(format!(
                    "graph schedule lists {} graphs but p = {}",
                    gs.len(),
                    q.p
                )));
            }
        }
        let qualities = quality_vector(&codec, problem.oracle(), cap)?;
        let defaults = SignConvention::default();
        Ok(PreparedExperiment {
            codec,
            qualities,
            schedule,
            signs: SignConvention {
                phase: q.phase_sign.unwrap_or(defaults.phase),
                walk: q.walk_sign.unwrap_or(defaults.walk),
            },
        })
    }

    fn graph_schedule(&self, m: usize) -> Outcome<GraphSchedule> {
        let g = &self.graph;
        match (&g.schedule, g.family) {
            (Some(_), Some(_)) => Err(Failure::input("graph takes either family or schedule, not both")),
            (Some(specs), None) => Ok(GraphSchedule::PerLayer(
                specs.iter().map(|s| s.build(m)).collect::<Outcome<_>>()?,
            )),
            (None, family) => {
                let spec = GraphSpec {
                    family: family.unwrap_or(GraphFamily::Complete),
                    generators: g.generators.clone(),
                };
                Ok(GraphSchedule::Fixed(spec.build(m)?))
            }
        }
    }
}

/// Same objects; permutation ordering may differ.
fn compatible(given: &Family, natural: &Family) -> bool {
    match (given, natural) {
        (Family::Permutations { n: a, .. }, Family::Permutations { n: b, .. }) => a == b,
        _ => given == natural,
    }
}

// ---------------------------------------------------------------------------------------

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PredicateConfig {
    /// Combinations containing `element`.
    Contains { element: usize },
    /// The listed objects, written as on the command line.
    Objects { objects: Vec<String> },
    /// The objects at the listed ranks.
    Ranks { ranks: Vec<usize> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    pub seed: u64,
    pub domain: Family,
    pub predicate: PredicateConfig,
    pub max_dimension: Option<usize>,
    #[serde(default)]
    pub output: OutputConfig,
}

impl SearchConfig {
    /// Marked mask in rank order.
    pub fn marked(&self, codec: &DomainCodec) -> Outcome<Vec<bool>> {
        let m = codec.materialisable_size(self.max_dimension.unwrap_or(DEFAULT_MAX_DIMENSION))?;
        let mut marked = vec![false; m];
        match &self.predicate {
            PredicateConfig::Contains { element } => {
                let n = match codec.family() {
                    Family::Combinations { n, .. }
                    | Family::BoundedCombinations { n, .. }
                    | Family::OrderedCombinations { n, .. } => *n,
                    other => {
                        return Err(Failure::input(format!(
                            "the contains predicate needs a combination family, not {other}"
                        )))
                    }
                };
                if *element >= n {
                    return Err(Failure::input(format!("element {element} is outside [0, {n})")));
                }
                for (i, slot) in marked.iter_mut().enumerate() {
                    if let Object::Combination(c) = codec.unrank_index(i)? {
                        *slot = c.contains(*element);
                    }
                }
            }
            PredicateConfig::Objects { objects } => {
                for text in objects {
                    marked[codec.rank_index(&codec.parse_object(text)?)?] = true;
                }
            }
            PredicateConfig::Ranks { ranks } => {
                for &r in ranks {
                    if r >= m {
                        return Err(Failure::input(format!("rank {r} is outside [0, {m})")));
                    }
                    marked[r] = true;
                }
            }
        }
        Ok(marked)
    }
}
