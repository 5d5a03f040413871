//! Command-line front end: ranking utilities, spectra, walks, optimisation runs,
//! amplitude-amplification searches and gate-count tables.

mod commands;
mod config;
mod failure;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qwoa_core::circulant::GraphFamily;
use qwoa_core::combinadics::{Family, PermutationOrdering};

use crate::failure::{Failure, Outcome};

#[derive(Parser)]
#[command(name = "qwoa", version, about = "Quantum walk optimisation over indexed combinatorial domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the rank of an object.
    Rank {
        #[command(flatten)]
        domain: DomainArgs,
        /// Object such as `2,3`, `{2,3}`, `[1,0,2]`, `ENEN` or `(1,0,1)`.
        #[arg(long, allow_hyphen_values = true)]
        object: String,
    },
    /// Print the object with a given rank.
    Unrank {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long)]
        rank: String,
    },
    /// Print the exact number of objects.
    Size {
        #[command(flatten)]
        domain: DomainArgs,
    },
    /// Print circulant eigenvalues as CSV.
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
        /// Evaluate the DFT of the first row instead of the closed form.
        #[arg(long)]
        dft: bool,
    },
    /// Evolve a basis state under a circulant walk and print probabilities as CSV.
    Walk {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        time: f64,
        /// Index of the initial basis state; the uniform state when omitted.
        #[arg(long)]
        start: Option<usize>,
    },
    /// Optimise a problem from a JSON experiment config.
    Qwoa {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config and the QWOA_OUTPUT_DIR environment variable.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Amplitude-amplification search from a JSON search config.
    Grover {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Gate-count table as CSV.
    Resources {
        /// Circuit id, or `all`.
        #[arg(long, default_value = "all")]
        circuit: String,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        k: u64,
        /// Also print the representation recommendation for k-combinations of [n].
        #[arg(long)]
        compare: bool,
    },
    /// Check a config without running it, or check the object-space embedding of a walk.
    Validate {
        /// Experiment or search config.
        #[arg(long, conflicts_with = "qubits")]
        config: Option<PathBuf>,
        #[command(flatten)]
        domain: OptionalDomainArgs,
        /// Register width for the embedding check.
        #[arg(long, requires = "family")]
        qubits: Option<usize>,
        #[arg(long, value_enum, default_value = "complete")]
        graph: GraphKind,
        #[arg(long, value_delimiter = ',')]
        generators: Vec<usize>,
        #[arg(long, default_value_t = 1.0)]
        time: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    #[value(alias = "combinations")]
    Comb,
    #[value(alias = "bounded-combinations")]
    Bounded,
    #[value(alias = "ordered-combinations")]
    Ordered,
    #[value(alias = "permutations")]
    Perm,
    Dyck,
    #[value(alias = "word")]
    Words,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderingKind {
    Lehmer,
    #[value(alias = "myrvold-ruskey")]
    Mr,
}

#[derive(Args)]
struct DomainArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[command(flatten)]
    params: DomainParams,
}

#[derive(Args)]
struct OptionalDomainArgs {
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    #[command(flatten)]
    params: DomainParams,
}

#[derive(Args)]
struct DomainParams {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    min_order: Option<usize>,
    #[arg(long)]
    max_order: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    orders: Vec<usize>,
    #[arg(long, value_enum, default_value = "lehmer")]
    ordering: OrderingKind,
    #[arg(long)]
    alphabet: Option<usize>,
    #[arg(long)]
    length: Option<usize>,
}

fn required(value: Option<usize>, flag: &str, family: &str) -> Outcome<usize> {
    value.ok_or_else(|| Failure::input(format!("--{flag} is required for the {family} family")))
}

impl DomainParams {
    fn family(&self, kind: FamilyKind) -> Outcome<Family> {
        Ok(match kind {
            FamilyKind::Comb => Family::Combinations {
                n: required(self.n, "n", "comb")?,
                k: required(self.k, "k", "comb")?,
            },
            FamilyKind::Bounded => Family::BoundedCombinations {
                n: required(self.n, "n", "bounded")?,
                min_order: self.min_order.unwrap_or(0),
                max_order: required(self.max_order.or(self.k), "max-order", "bounded")?,
            },
            FamilyKind::Ordered => Family::OrderedCombinations {
                n: required(self.n, "n", "ordered")?,
                orders: self.orders.clone(),
            },
            FamilyKind::Perm => Family::Permutations {
                n: required(self.n, "n", "perm")?,
                ordering: match self.ordering {
                    OrderingKind::Lehmer => PermutationOrdering::Lehmer,
                    OrderingKind::Mr => PermutationOrdering::MyrvoldRuskey,
                },
            },
            FamilyKind::Dyck => Family::Dyck {
                n: required(self.n, "n", "dyck")?,
            },
            FamilyKind::Words => Family::Words {
                alphabet: required(self.alphabet, "alphabet", "words")?,
                length: required(self.length, "length", "words")?,
            },
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Complete,
    Cycle,
    #[value(alias = "mobius")]
    MobiusLadder,
    Custom,
}

impl From<GraphKind> for GraphFamily {
    fn from(g: GraphKind) -> Self {
        match g {
            GraphKind::Complete => GraphFamily::Complete,
            GraphKind::Cycle => GraphFamily::Cycle,
            GraphKind::MobiusLadder => GraphFamily::MobiusLadder,
            GraphKind::Custom => GraphFamily::Custom,
        }
    }
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long, value_enum)]
    graph: GraphKind,
    /// Number of vertices M.
    #[arg(long)]
    size: usize,
    #[arg(long, value_delimiter = ',')]
    generators: Vec<usize>,
}

impl GraphArgs {
    fn spec(&self) -> config::GraphSpec {
        config::GraphSpec {
            family: self.graph.into(),
            generators: self.generators.clone(),
        }
    }
}

fn run(cli: Cli) -> Outcome<String> {
    match cli.command {
        Command::Rank { domain, object } => {
            commands::rank(domain.params.family(domain.family)?, &object)
        }
        Command::Unrank { domain, rank } => {
            commands::unrank(domain.params.family(domain.family)?, &rank)
        }
        Command::Size { domain } => commands::size(domain.params.family(domain.family)?),
        Command::Spectrum { graph, dft } => commands::spectrum(&graph.spec(), graph.size, dft),
        Command::Walk { graph, time, start } => {
            commands::walk(&graph.spec(), graph.size, time, start)
        }
        Command::Qwoa { config, output_dir } => commands::qwoa(&config, output_dir.as_deref()),
        Command::Grover { config, output_dir } => {
            commands::grover(&config, output_dir.as_deref())
        }
        Command::Resources {
            circuit,
            n,
            k,
            compare,
        } => commands::resources(&circuit, n, k, compare),
        Command::Validate {
            config,
            domain,
            qubits,
            graph,
            generators,
            time,
            seed,
            tolerance,
        } => match (config, qubits, domain.family) {
            (Some(path), None, _) => commands::validate_config(&path),
            (None, Some(qubits), Some(kind)) => commands::validate_embedding(
                domain.params.family(kind)?,
                &config::GraphSpec {
                    family: graph.into(),
                    generators,
                },
                qubits,
                time,
                seed,
                tolerance,
            ),
            _ => Err(Failure::input(
                "validate needs either --config or --family with --qubits",
            )),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.exit_code()
        }
    }
}
