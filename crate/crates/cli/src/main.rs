mod report;

use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use max2sat_core::oracle::{brute_force, MAX_ORACLE_VARS};
use max2sat_core::{dimacs, generator, reduce, Error, Formula, Model, SolverConfig, WeightVariant};
use report::StatsReport;

/// Exact Max-2-SAT solver: branch and reduce over clause multisets.
#[derive(Parser)]
#[command(name = "max2sat", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a DIMACS instance and print the optimum as an `o` line
    Solve(SolveArgs),
    /// Solve, then re-score the assignment (and cross-check small inputs)
    Verify(SolveArgs),
    /// Solve and print the run report as JSON
    Stats(SolveArgs),
    /// Generate a random instance and print it as DIMACS
    Gen(GenArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// DIMACS input file, or - for stdin
    #[arg(value_name = "FILE")]
    input: String,
    /// Measure weights used for branching instrumentation
    #[arg(long, value_enum, default_value_t = WeightsArg::Simple)]
    weights: WeightsArg,
    /// Record every branch and check it against the branch-vector table
    #[arg(long)]
    instrument: bool,
    /// Write the trace of the initial reduction to this file
    #[arg(long, value_name = "PATH")]
    emit_trace: Option<PathBuf>,
    /// Abort after this many branch nodes
    #[arg(long, value_name = "N")]
    node_cap: Option<u64>,
    /// Print the optimal assignment as a `v` line
    #[arg(long)]
    model: bool,
    /// Print the run report as JSON instead of `o`/`v` lines
    #[arg(long)]
    json: bool,
    /// Cross-check the optimum by exhaustive enumeration (at most 26 variables)
    #[arg(long)]
    oracle: bool,
    /// Explore shallow branches on separate threads
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Number of variables
    #[arg(short = 'n', long = "vars", value_name = "N")]
    n: u32,
    /// Number of clauses; defaults to 3n/2 (cubic) or 2n (four-regular)
    #[arg(short = 'k', long = "clauses", value_name = "K")]
    k: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightsArg {
    Simple,
    Combined,
}

impl From<WeightsArg> for WeightVariant {
    fn from(w: WeightsArg) -> WeightVariant {
        match w {
            WeightsArg::Simple => WeightVariant::Simple,
            WeightsArg::Combined => WeightVariant::Combined,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Uniform,
    Cubic,
    FourRegular,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Uniform => Model::Uniform,
            ModelArg::Cubic => Model::Cubic,
            ModelArg::FourRegular => Model::FourRegular,
        }
    }
}

/// Exit codes: 1 usage or invalid parameters, 2 unreadable or malformed
/// input, 3 failed verification, 4 node cap exceeded.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Parse { .. } => 2,
            Error::NodeCapExceeded(_) => 4,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Solve(args) => run_solve(&args, false, false),
        Command::Verify(args) => run_solve(&args, true, false),
        Command::Stats(args) => run_solve(&args, false, true),
        Command::Gen(args) => run_gen(&args),
    };
    if let Err(failure) = result {
        eprintln!("error: {}", failure.message);
        std::process::exit(failure.code);
    }
}

fn read_input(path: &str) -> Result<Formula, Failure> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| Failure {
            code: 2,
            message: format!("cannot read stdin: {e}"),
        })?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure {
            code: 2,
            message: format!("cannot read {path}: {e}"),
        })?
    };
    dimacs::parse(&text).map_err(Failure::from)
}

fn run_solve(args: &SolveArgs, verify: bool, force_json: bool) -> Result<(), Failure> {
    let f = read_input(&args.input)?;

    if let Some(path) = &args.emit_trace {
        let red = reduce(&f)?;
        std::fs::write(path, red.trace.to_text()).map_err(|e| Failure {
            code: 2,
            message: format!("cannot write {}: {e}", path.display()),
        })?;
    }

    let mut config = SolverConfig::default();
    config.weights = args.weights.into();
    config.instrument = args.instrument;
    config.parallel = args.parallel;
    if let Some(cap) = args.node_cap {
        config.node_cap = cap;
    }

    let start = Instant::now();
    let sol = max2sat_core::solve(&f, &config)?;
    let wall_time_ms = start.elapsed().as_millis() as u64;

    if verify {
        let scored = f.satisfied_count(&sol.assignment)?;
        if scored != sol.optimum {
            return Err(Failure {
                code: 3,
                message: format!(
                    "assignment satisfies {scored} clauses but the solver reported {}",
                    sol.optimum
                ),
            });
        }
    }
    if args.oracle || (verify && f.n_vars() <= MAX_ORACLE_VARS) {
        let (best, _) = brute_force(&f)?;
        if best != sol.optimum {
            return Err(Failure {
                code: 3,
                message: format!(
                    "exhaustive enumeration finds {best} but the solver reported {}",
                    sol.optimum
                ),
            });
        }
    }

    if force_json || args.json {
        let report = StatsReport::new(&f, &sol, &config, wall_time_ms);
        println!("{}", report.to_json());
        return Ok(());
    }

    if verify {
        println!("c verified");
    }
    println!("o {}", sol.optimum);
    if args.model {
        let lits: Vec<String> = f
            .vars()
            .into_iter()
            .map(|v| {
                let value = sol.assignment.get(v).unwrap_or(true);
                if value {
                    v.id().to_string()
                } else {
                    format!("-{}", v.id())
                }
            })
            .collect();
        println!("v {}", lits.join(" "));
    }
    Ok(())
}

fn run_gen(args: &GenArgs) -> Result<(), Failure> {
    let k = match args.k {
        Some(k) => k,
        None => match args.model {
            ModelArg::Uniform => {
                return Err(Failure {
                    code: 1,
                    message: "the uniform model needs an explicit --clauses count".into(),
                })
            }
            ModelArg::Cubic => 3 * args.n as u64 / 2,
            ModelArg::FourRegular => 2 * args.n as u64,
        },
    };
    let f = generator::generate(args.model.into(), args.n, k, args.seed)?;
    print!("{}", dimacs::serialize(&f));
    Ok(())
}
