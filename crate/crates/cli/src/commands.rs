use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use num_bigint::BigUint;
use serde::Serialize;

use qwoa_core::combinadics::{DomainCodec, Family};
use qwoa_core::engine::{
    ctqw, distribution_rows, embed_object_space, format_real, StateVector, DISTRIBUTION_HEADER,
};
use qwoa_core::grover::{grover_search, SearchSpec};
use qwoa_core::qwoa::{
    optimal_indices, optimize, optimize_nested, report, OptimizerSettings, Qwoa, QwoaParams,
    QwoaRun, ReportEntry,
};
use qwoa_core::resources::{
    compare_representations, cost_row, Circuit, CircuitCostModel, COST_HEADER,
};
use qwoa_core::rng::derive_seed;

use crate::config::{self, load, output_dir, ExperimentConfig, GraphSpec, SearchConfig};
use crate::failure::{Failure, Outcome};
use crate::output::{commit, render_csv, Artifact};

pub fn rank(family: Family, object: &str) -> Outcome<String> {
    let codec = DomainCodec::new(family)?;
    let rank = codec.rank(&codec.parse_object(object)?)?;
    Ok(format!("{rank}\n"))
}

pub fn unrank(family: Family, rank: &str) -> Outcome<String> {
    let codec = DomainCodec::new(family)?;
    let r: BigUint = rank
        .trim()
        .parse()
        .map_err(|_| Failure::input(format!("'{rank}' is not a nonnegative integer")))?;
    Ok(format!("{}\n", codec.unrank(&r)?))
}

pub fn size(family: Family) -> Outcome<String> {
    Ok(format!("{}\n", DomainCodec::new(family)?.size()))
}

fn utf8(bytes: Vec<u8>) -> String {
    String::from_utf8(bytes).expect("CSV output is UTF-8")
}

pub fn spectrum(spec: &GraphSpec, size: usize, use_dft: bool) -> Outcome<String> {
    let graph = spec.build(size)?;
    let spectrum = if use_dft {
        graph.eigenvalues_dft()
    } else {
        graph.eigenvalues()
    };
    let rows = spectrum
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(j, &l)| [j.to_string(), format_real(l)]);
    Ok(utf8(render_csv(&["j", "eigenvalue"], rows)?))
}

pub fn walk(spec: &GraphSpec, size: usize, time: f64, start: Option<usize>) -> Outcome<String> {
    let graph = spec.build(size)?;
    let state = match start {
        Some(i) => StateVector::basis(size, i)?,
        None => StateVector::uniform(size)?,
    };
    let out = ctqw(&state, &graph, time)?;
    let rows = out
        .probabilities()
        .into_iter()
        .enumerate()
        .map(|(i, p)| [i.to_string(), format_real(p)]);
    Ok(utf8(render_csv(&["index", "probability"], rows)?))
}

#[derive(Serialize)]
struct DepthSummary {
    p: usize,
    params: QwoaParams,
    best_expectation: f64,
    optimal_probability: f64,
    evaluations: usize,
}

#[derive(Serialize)]
struct RunSummary {
    domain: String,
    domain_size: usize,
    seed: u64,
    p: usize,
    best_params: QwoaParams,
    best_expectation: f64,
    uniform_mean: f64,
    optimal_quality: f64,
    optimal_count: usize,
    optimal_probability: f64,
    /// Probability of measuring an optimum from the uniform state.
    baseline_probability: f64,
    evaluations: usize,
    depths: Vec<DepthSummary>,
    top: Vec<ReportEntry>,
    wall_time_seconds: f64,
}

fn optimal_probability(run: &QwoaRun, optimal: &[usize]) -> f64 {
    optimal.iter().map(|&i| run.probabilities[i]).sum()
}

/// Trace rows across all depths, padded with idle layers to `p` columns.
fn trace_rows(runs: &[QwoaRun], p: usize) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for run in runs {
        for e in &run.trace {
            let mut row = vec![rows.len().to_string(), e.start_id.to_string()];
            let pad = p - e.params.layers();
            for series in [&e.params.gammas, &e.params.times] {
                row.extend(series.iter().map(|&x| format_real(x)));
                row.extend(std::iter::repeat_n(format_real(0.0), pad));
            }
            row.push(format_real(e.expectation));
            rows.push(row);
        }
    }
    rows
}

fn trace_header(p: usize) -> Vec<String> {
    let mut h = vec!["eval_id".to_string(), "start_id".to_string()];
    h.extend((1..=p).map(|i| format!("gamma_{i}")));
    h.extend((1..=p).map(|i| format!("t_{i}")));
    h.push("expectation".to_string());
    h
}

pub fn qwoa(path: &Path, dir_flag: Option<&Path>) -> Outcome<String> {
    let clock = Instant::now();
    let cfg: ExperimentConfig = load(path)?;
    let prepared = cfg.prepare()?;
    let q = &cfg.qwoa;
    let engine = Qwoa::with_schedule(prepared.qualities.clone(), prepared.schedule, prepared.signs)?;
    let settings = OptimizerSettings {
        budget: q.budget,
        starts: q.starts,
        seed: derive_seed(cfg.seed, "optimizer"),
        method: q.optimizer,
        ..OptimizerSettings::default()
    };
    let runs = if q.nested {
        optimize_nested(&engine, q.p, &settings)?
    } else {
        vec![optimize(&engine, q.p, &settings)?]
    };
    let last = runs.last().expect("at least one depth");
    let codec = &prepared.codec;
    let qualities = &prepared.qualities;
    let rep = report(last, codec, qualities, q.top)?;
    let optimal = optimal_indices(qualities);
    let m = qualities.len();

    let depths: Vec<DepthSummary> = runs
        .iter()
        .map(|r| DepthSummary {
            p: r.layers,
            params: r.best_params.clone(),
            best_expectation: r.best_expectation,
            optimal_probability: optimal_probability(r, &optimal),
            evaluations: r.evaluations(),
        })
        .collect();
    let final_state = engine.evolve(&last.best_params)?;
    let distribution = distribution_rows(&final_state, codec, qualities)?;
    let trace = trace_rows(&runs, q.p);

    let dir = output_dir(dir_flag, &cfg.output);
    let name = |given: &Option<String>, default: &str| dir.join(given.as_deref().unwrap_or(default));
    let summary = RunSummary {
        domain: codec.family().to_string(),
        domain_size: m,
        seed: cfg.seed,
        p: q.p,
        best_params: last.best_params.clone(),
        best_expectation: last.best_expectation,
        uniform_mean: engine.mean_quality(),
        optimal_quality: rep.optimum.quality,
        optimal_count: rep.optimum.count,
        optimal_probability: rep.optimum.probability,
        baseline_probability: rep.optimum.count as f64 / m as f64,
        evaluations: runs.iter().map(QwoaRun::evaluations).sum(),
        depths,
        top: rep.entries,
        wall_time_seconds: clock.elapsed().as_secs_f64(),
    };
    let header = trace_header(q.p);
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let artifacts = [
        Artifact::csv(name(&cfg.output.trace, "trace.csv"), &header, trace)?,
        Artifact::json(name(&cfg.output.summary, "summary.json"), &summary)?,
        Artifact::csv(
            name(&cfg.output.distribution, "distribution.csv"),
            &DISTRIBUTION_HEADER,
            distribution.iter().map(|r| r.to_record()),
        )?,
    ];
    commit(&artifacts)?;

    let mut text = String::new();
    writeln!(
        text,
        "best expectation {} (uniform mean {}), optimum probability {}",
        summary.best_expectation, summary.uniform_mean, summary.optimal_probability
    )
    .unwrap();
    for a in &artifacts {
        writeln!(text, "wrote {}", a.path.display()).unwrap();
    }
    Ok(text)
}

#[derive(Serialize)]
struct Sample {
    index: usize,
    object: String,
    marked: bool,
}

#[derive(Serialize)]
struct SearchStatistics {
    domain: String,
    domain_size: usize,
    marked: usize,
    iterations: usize,
    predicted_success: f64,
    sample: Sample,
    /// Marked probability after 0, 1, ..., iterations rounds.
    marked_probability: Vec<f64>,
}

pub fn grover(path: &Path, dir_flag: Option<&Path>) -> Outcome<String> {
    let cfg: SearchConfig = load(path)?;
    let codec = DomainCodec::new(cfg.domain.clone())?;
    let marked = cfg.marked(&codec)?;
    let spec = SearchSpec::from_marked(codec, marked)?;
    let outcome = grover_search(&spec, derive_seed(cfg.seed, "measurement"))?;
    let stats = SearchStatistics {
        domain: spec.codec().family().to_string(),
        domain_size: outcome.domain_size,
        marked: outcome.marked,
        iterations: outcome.iterations,
        predicted_success: outcome.predicted_success,
        sample: Sample {
            index: outcome.sampled_index,
            object: outcome.sampled_object.clone(),
            marked: outcome.success,
        },
        marked_probability: outcome.trajectory,
    };
    let dir = output_dir(dir_flag, &cfg.output);
    let file = dir.join(cfg.output.statistics.as_deref().unwrap_or("grover.json"));
    let artifact = Artifact::json(file, &stats)?;
    commit(std::slice::from_ref(&artifact))?;
    Ok(format!(
        "M = {}, k = {}, r = {}, predicted success {}, sampled {} ({})\nwrote {}\n",
        stats.domain_size,
        stats.marked,
        stats.iterations,
        stats.predicted_success,
        stats.sample.object,
        if stats.sample.marked { "marked" } else { "unmarked" },
        artifact.path.display()
    ))
}

pub fn resources(circuit: &str, n: u64, k: u64, compare: bool) -> Outcome<String> {
    if compare {
        let c = compare_representations(n, k)?;
        let mut bytes = serde_json::to_vec_pretty(&c).expect("plain struct");
        bytes.push(b'\n');
        return Ok(utf8(bytes));
    }
    let circuits: Vec<Circuit> = if circuit == "all" {
        Circuit::ALL.to_vec()
    } else {
        vec![circuit.parse()?]
    };
    let rows = circuits
        .into_iter()
        .map(|c| {
            let r = cost_row(&CircuitCostModel::new(c, n, k)?)?;
            Ok([r.circuit, r.n.to_string(), r.k.to_string(), r.gates.to_string(), r.qubits.to_string()])
        })
        .collect::<Outcome<Vec<_>>>()?;
    Ok(utf8(render_csv(&COST_HEADER, rows)?))
}

pub fn validate_config(path: &Path) -> Outcome<String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = config::parse(&text)?;
    if value.get("problem").is_some() {
        let cfg: ExperimentConfig = load(path)?;
        let prepared = cfg.prepare()?;
        Ok(format!(
            "ok: experiment over {} (M = {})\n",
            prepared.codec.family(),
            prepared.qualities.len()
        ))
    } else {
        let cfg: SearchConfig = load(path)?;
        let codec = DomainCodec::new(cfg.domain.clone())?;
        let marked = cfg.marked(&codec)?;
        let k = marked.iter().filter(|&&b| b).count();
        if k == 0 {
            return Err(qwoa_core::Error::NoSolution.into());
        }
        Ok(format!("ok: search over {} (M = {}, k = {k})\n", codec.family(), marked.len()))
    }
}

pub fn validate_embedding(
    family: Family,
    graph: &GraphSpec,
    qubits: usize,
    time: f64,
    seed: u64,
    tolerance: f64,
) -> Outcome<String> {
    let codec = DomainCodec::new(family)?;
    let m = codec
        .size_usize()
        .ok_or_else(|| Failure::Capacity(format!("domain size {} does not fit in memory", codec.size())))?;
    let graph = graph.build(m)?;
    let r = embed_object_space(&codec, &graph, qubits, time, seed)?;
    let text = format!(
        "qubits {}, M = {}, block deviation {}, invalid coupling {}, walk deviation {}, invalid drift {}\n",
        r.qubits, r.domain_size, r.block_deviation, r.invalid_coupling, r.walk_deviation, r.invalid_block_drift
    );
    if r.passed(tolerance) {
        Ok(text)
    } else {
        Err(Failure::Numerical(text.trim_end().to_string()))
    }
}
