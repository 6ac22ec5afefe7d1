//! qgw: build, validate, and analyze quantum graphs on M_n.

mod commands;
mod formats;
mod jcanon;

use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::{
    build_abc_from_file, build_canonical, build_classical, build_hyp, build_hyp_enumeration,
    build_random, build_reflexive, cmd_analyze, cmd_strange, cmd_table, cmd_validate,
    cmd_witness_check, cmd_witness_construct, emit, finish_build, ConstructArgs,
};
use formats::Failure;
use jcanon::JVal;
use qgw_core::abcgraphs::{CanonicalKind, HypParams};
use qgw_core::numlin::Tolerance;
use qgw_core::witness::SearchBudget;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "qgw",
    about = "Quantum graphs on the matrix algebra M_n: parametric families, parameters, witnesses",
    version
)]
struct Cli {
    /// Numerical tolerance; falls back to the QGW_TOL environment variable,
    /// then to 1e-8.
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct an instance file.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Check the quantum graph axioms of an instance file.
    Validate { file: PathBuf },
    /// Compute or bound connected components, chromatic, independence, and
    /// clique numbers, attaching witnesses to exact claims.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Budget for exhaustive classical and coordinate searches.
        #[arg(long, default_value_t = 12)]
        exact_max_n: usize,
        /// Directory to write one witness file per exact claim.
        #[arg(long)]
        emit_witnesses: Option<PathBuf>,
    },
    /// Render the strange graph of an undirected parametric instance.
    Strange {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = StrangeFormatArg::Dot)]
        format: StrangeFormatArg,
    },
    /// Construct or check parameter witnesses.
    Witness {
        #[command(subcommand)]
        action: WitnessAction,
    },
    /// Reproduce the canonical summary table at dimension n.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = TableFormatArg::Markdown)]
        format: TableFormatArg,
    },
}

#[derive(Args)]
struct OutArg {
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BuildKind {
    /// Edgeless graph on M_n.
    Empty {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Complete graph on M_n.
    Complete {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Symmetric graph on M_n.
    Sym {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Antisymmetric graph on M_n.
    Asym {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Hyperoctahedral instance from (a, a', b, c), or the full enumeration.
    Hyp {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = false)]
        enumerate: bool,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        a_prime: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<f64>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Canonicalize a parametric instance file into ABC form.
    Abc {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Classical graph instance from an edge list like "0-1,1-2".
    Classical {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "")]
        edges: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Pure subspace instance X_{., I - J/n}.
    Subspace {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Reflexive variant X_{A + diag(1-1/n), I - J/n} of a classical graph.
    Reflexive {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Seeded random undirected instance.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.3)]
        classical_prob: f64,
        #[arg(long, default_value_t = 0.3)]
        strange_prob: f64,
        #[arg(long, default_value_t = 1)]
        b_rank: usize,
        /// Allow the subspace to meet the all-ones vector (graph gains loops).
        #[arg(long, default_value_t = false)]
        with_loops: bool,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum WitnessAction {
    /// Construct a witness for a graph instance.
    Construct {
        /// One of: icpovm, bipartite, complete-minus-one, symasym,
        /// classical-clique, reflexive-clique, components,
        /// strange-components, gasym2, pi-matching-lift, colouring,
        /// fourier-colouring, independent, random-clique.
        kind: String,
        #[arg(long)]
        graph: PathBuf,
        /// Vertex partition "0,1|2,3" (components).
        #[arg(long)]
        parts: Option<String>,
        /// Colour classes "0,1|2,3" (colouring).
        #[arg(long)]
        classes: Option<String>,
        /// Vertex subset "0,2" (independent).
        #[arg(long)]
        subset: Option<String>,
        /// Classical clique "0,1,2" (classical-clique, reflexive-clique).
        #[arg(long)]
        clique: Option<String>,
        /// Clique size (random-clique).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Check a witness file against a graph instance.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrangeFormatArg {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormatArg {
    Markdown,
    Json,
}

fn resolve_tol(flag: Option<f64>) -> Result<Tolerance, Failure> {
    let eps = match flag {
        Some(x) => x,
        None => match std::env::var("QGW_TOL") {
            Ok(s) => s
                .parse::<f64>()
                .map_err(|_| Failure::input(format!("QGW_TOL = '{s}' is not a number")))?,
            Err(_) => return Ok(Tolerance::default()),
        },
    };
    Tolerance::new(eps).map_err(Failure::from)
}

fn run(cli: Cli) -> Result<i32, Failure> {
    let tol = resolve_tol(cli.tol)?;
    match cli.command {
        Command::Build { kind } => match kind {
            BuildKind::Empty { n, out } => {
                finish_build(build_canonical(CanonicalKind::Empty, n), out.out.as_deref())
            }
            BuildKind::Complete { n, out } => {
                finish_build(build_canonical(CanonicalKind::Complete, n), out.out.as_deref())
            }
            BuildKind::Sym { n, out } => {
                finish_build(build_canonical(CanonicalKind::Sym, n), out.out.as_deref())
            }
            BuildKind::Asym { n, out } => {
                finish_build(build_canonical(CanonicalKind::Asym, n), out.out.as_deref())
            }
            BuildKind::Hyp { n, enumerate, a, a_prime, b, c, out } => {
                if enumerate {
                    finish_build(build_hyp_enumeration(n), out.out.as_deref())
                } else {
                    let (a, a_prime, b, c) = match (a, a_prime, b, c) {
                        (Some(a), Some(a_prime), Some(b), Some(c)) => (a, a_prime, b, c),
                        _ => {
                            return Err(Failure::input(
                                "hyp needs --a --a-prime --b --c (or --enumerate)",
                            ))
                        }
                    };
                    finish_build(
                        build_hyp(HypParams { n, a, a_prime, b, c }),
                        out.out.as_deref(),
                    )
                }
            }
            BuildKind::Abc { file, out } => {
                finish_build(build_abc_from_file(&file), out.out.as_deref())
            }
            BuildKind::Classical { n, edges, out } => {
                finish_build(build_classical(n, &edges), out.out.as_deref())
            }
            BuildKind::Subspace { n, out } => {
                finish_build(commands::build_subspace(n), out.out.as_deref())
            }
            BuildKind::Reflexive { file, out } => {
                finish_build(build_reflexive(&file, tol), out.out.as_deref())
            }
            BuildKind::Random { n, seed, classical_prob, strange_prob, b_rank, with_loops, out } => {
                finish_build(
                    build_random(n, seed, classical_prob, strange_prob, b_rank, !with_loops),
                    out.out.as_deref(),
                )
            }
        },
        Command::Validate { file } => emit(&cmd_validate(&file, tol)?, None),
        Command::Analyze { file, seed, trials, exact_max_n, emit_witnesses } => {
            let budget = SearchBudget { seed, trials, exact_max_n };
            emit(&cmd_analyze(&file, tol, &budget, emit_witnesses.as_deref())?, None)
        }
        Command::Strange { file, format } => {
            let fmt = match format {
                StrangeFormatArg::Dot => commands::StrangeFormat::Dot,
                StrangeFormatArg::Json => commands::StrangeFormat::Json,
            };
            emit(&cmd_strange(&file, fmt, tol)?, None)
        }
        Command::Witness { action } => match action {
            WitnessAction::Construct {
                kind,
                graph,
                parts,
                classes,
                subset,
                clique,
                k,
                seed,
                trials,
                out,
            } => {
                let args = ConstructArgs {
                    kind: &kind,
                    parts: parts.as_deref(),
                    classes: classes.as_deref(),
                    subset: subset.as_deref(),
                    clique: clique.as_deref(),
                    k,
                    seed,
                    trials,
                };
                let outcome = cmd_witness_construct(&graph, &args, tol)?;
                emit(&outcome, out.out.as_deref())
            }
            WitnessAction::Check { graph, witness } => {
                emit(&cmd_witness_check(&graph, &witness, tol)?, None)
            }
        },
        Command::Table { n, format } => {
            let fmt = match format {
                TableFormatArg::Markdown => commands::TableFormat::Markdown,
                TableFormatArg::Json => commands::TableFormat::Json,
            };
            emit(&cmd_table(n, fmt, tol)?, None)
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            if e.use_stderr() {
                eprintln!("{e}");
                std::process::exit(1);
            }
            print!("{e}");
            std::process::exit(0);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(f) => {
            println!("{}", JVal::obj(vec![("error", JVal::Str(f.message.clone()))]).render());
            std::process::exit(f.code);
        }
    }
}
