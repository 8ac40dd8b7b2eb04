//! `montyhall`: payoff matrix, solvers, simulator and HTTP service.

mod render;
mod specs;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use montyhall_core::matrix::{eliminate_dominated, PayoffMatrix};
use montyhall_core::rational;
use montyhall_core::report::{self, FamilyReport, NashProfileReport, NashReport, ReductionReport, ZeroSumReport};
use montyhall_core::simulation::simulate;
use montyhall_core::solvers::{
    enumerate_nash_supports, fully_supported_equilibria, solve_zero_sum, BehavioralHost, HostPayoffMatrix,
};
use montyhall_core::Error;

#[derive(Parser)]
#[command(name = "montyhall", version, about = "Exact analysis of the Monty Hall game")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Table,
    /// JSON with exact `a/b` rationals.
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Print Conie's 12×6 payoff matrix.
    Matrix {
        /// Also eliminate dominated rows and duplicate columns.
        #[arg(long)]
        reduce: bool,
        /// Read the matrix from a file (JSON or text table) instead of building it.
        #[arg(long, value_name = "PATH")]
        import: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Same as `matrix --reduce`.
    Dominance {
        #[arg(long, value_name = "PATH")]
        import: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    #[command(subcommand)]
    Solve(Solve),
    /// Play many rounds with seeded randomness.
    Simulate {
        /// `crawl`, a Monte code, `mixed:w,…` or `π₁,π₂,π₃;λ₁,λ₂,λ₃`.
        #[arg(long)]
        host: String,
        /// `uniform`, a Conie code, `mixed:w,…` or `p₁,p₂,p₃;s₁,…,s₆`.
        #[arg(long)]
        conie: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        rounds: u64,
        #[arg(long, env = "MONTYHALL_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080, value_parser = clap::value_parser!(u16).range(1..))]
        port: u16,
        #[arg(long, value_name = "DIR")]
        static_dir: Option<PathBuf>,
        /// Seconds before an untouched session is dropped.
        #[arg(long, default_value_t = 1800)]
        idle_timeout: u64,
    },
}

#[derive(Subcommand)]
enum Solve {
    /// Value and minimax strategies of the zero-sum game.
    Zerosum {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Conie's best responses to a known host.
    Bayes {
        /// Prior over the prize door, e.g. `1/3,1/3,1/3`.
        #[arg(long, requires = "lambda", conflicts_with = "host")]
        pi: Option<String>,
        /// Probability of offering the smaller unpicked door on a match.
        #[arg(long, requires = "pi")]
        lambda: Option<String>,
        /// Any host spec accepted by `simulate`.
        #[arg(long, required_unless_present = "pi")]
        host: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Equilibria of the general-sum game for Monte's payoff matrix.
    Nash {
        /// JSON or text table with 12 rows of 6 rationals.
        #[arg(long, value_name = "PATH", conflicts_with = "h", required_unless_present = "h")]
        h_file: Option<PathBuf>,
        /// `antagonistic`, `sympathetic` or `indifferent`.
        #[arg(long, allow_hyphen_values = true)]
        h: Option<String>,
        #[arg(long)]
        fully_supported_only: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Singular(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn structured<T: Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Internal(e.to_string()))
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_matrix(import: Option<&PathBuf>) -> Result<PayoffMatrix, Failure> {
    let Some(path) = import else {
        return Ok(PayoffMatrix::build());
    };
    let text = read(path)?;
    Ok(if text.trim_start().starts_with('{') {
        PayoffMatrix::from_json(&text)?
    } else {
        PayoffMatrix::from_table(&text)?
    })
}

fn matrix(import: Option<&PathBuf>, reduce: bool, format: Format) -> Result<String, Failure> {
    let m = load_matrix(import)?;
    if !reduce {
        return match format {
            Format::Table => Ok(m.to_table()),
            Format::Structured => structured(&m.to_document()),
        };
    }
    let trace = eliminate_dominated(&m);
    match format {
        Format::Table => Ok(render::reduction(&trace)),
        Format::Structured => structured(&ReductionReport::from(&trace)),
    }
}

fn bayes_host(pi: Option<String>, lambda: Option<String>, host: Option<String>) -> Result<BehavioralHost, Failure> {
    match (pi, lambda, host) {
        (Some(pi), Some(lambda), _) => Ok(BehavioralHost::from_vecs(
            rational::parse_list(&pi)?,
            rational::parse_list(&lambda)?,
        )?),
        (_, _, Some(host)) => Ok(specs::host(&host)?),
        _ => Err(Failure::Usage("give --pi and --lambda, or --host".into())),
    }
}

fn nash(h: &HostPayoffMatrix, fully_supported_only: bool, format: Format) -> Result<String, Failure> {
    let equilibria = (!fully_supported_only).then(|| enumerate_nash_supports(h));
    let families = fully_supported_equilibria(h);
    match format {
        Format::Table => Ok(render::nash(equilibria.as_deref(), &families)),
        Format::Structured => structured(&NashReport {
            equilibria: equilibria.map(|found| found.iter().map(NashProfileReport::from).collect()),
            fully_supported: families.iter().map(FamilyReport::from).collect(),
        }),
    }
}

fn serve(port: u16, static_dir: Option<PathBuf>, idle_timeout: u64) -> Result<String, Failure> {
    let config = montyhall_service::Config {
        idle_timeout: Duration::from_secs(idle_timeout),
        static_dir,
    };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Internal(e.to_string()))?;
    runtime
        .block_on(async {
            let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
            eprintln!("listening on http://{}", listener.local_addr()?);
            let shutdown = async {
                let _ = tokio::signal::ctrl_c().await;
            };
            montyhall_service::serve(listener, config, shutdown).await
        })
        .map_err(|e| Failure::Internal(format!("cannot serve on port {port}: {e}")))?;
    Ok(String::new())
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Matrix { reduce, import, format } => matrix(import.as_ref(), reduce, format),
        Command::Dominance { import, format } => matrix(import.as_ref(), true, format),
        Command::Solve(Solve::Zerosum { format }) => {
            let result = solve_zero_sum(&PayoffMatrix::build())?;
            match format {
                Format::Table => Ok(render::zerosum(&result)),
                Format::Structured => structured(&ZeroSumReport::from(&result)),
            }
        }
        Command::Solve(Solve::Bayes { pi, lambda, host, format }) => {
            let report = report::bayes_report(&bayes_host(pi, lambda, host)?)?;
            match format {
                Format::Table => Ok(render::bayes(&report)),
                Format::Structured => structured(&report),
            }
        }
        Command::Solve(Solve::Nash { h_file, h, fully_supported_only, format }) => {
            let h = match (h_file, h) {
                (Some(path), _) => HostPayoffMatrix::parse(&read(&path)?)?,
                (None, Some(name)) => specs::preset(&name)
                    .ok_or_else(|| Failure::Usage(format!("unknown matrix preset {name:?}")))?,
                (None, None) => return Err(Failure::Usage("give --h-file or --h".into())),
            };
            nash(&h, fully_supported_only, format)
        }
        Command::Simulate { host, conie, rounds, seed, format } => {
            let h = specs::host(&host)?;
            let b = specs::conie(&conie)?;
            let stats = simulate(&h, &b, rounds, seed)?;
            let report = report::simulation_report(&h, &b, &stats);
            match format {
                Format::Table => Ok(render::simulation(&report)),
                Format::Structured => structured(&report),
            }
        }
        Command::Serve { port, static_dir, idle_timeout } => serve(port, static_dir, idle_timeout),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
