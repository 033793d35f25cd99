use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sfast_core::format::{parse_instance, parse_witness, serialize_instance, serialize_witness};
use sfast_core::generate::{generate, GenParams, Model};
use sfast_core::reduce::{kernelize, replay, write_trace, KernelStatus};
use sfast_core::solve::{exact_branch, exact_order, exact_subset, ProviderKind};
use sfast_core::xcheck::{xcheck, XcheckParams};
use sfast_core::{verify_solution, Error, Instance};

const USAGE: u8 = 1;
const INVARIANT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "sfast",
    version,
    about = "Kernelize and solve Subset Feedback Arc Set in Tournaments"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a random instance.
    Gen {
        #[arg(long, value_parser = parse_model)]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Fraction of vertices that are terminals.
        #[arg(long, default_value_t = 0.5)]
        tfrac: f64,
        /// Arc reversals for the planted model.
        #[arg(long, default_value_t = 0)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce an instance and record the rules applied.
    Kernelize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "heuristic", value_parser = parse_provider)]
        provider: ProviderKind,
        /// JSON-lines trace file.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Output instance; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the optimum and a witness.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "branch", value_parser = ["subset", "branch", "order"])]
        method: String,
    },
    /// Check a witness file against an instance and its budget.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Randomized safety check of every rule against the subset oracle.
    Xcheck {
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        #[arg(long, default_value_t = 300)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_provider(s: &str) -> Result<ProviderKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failed command: message plus exit status.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::MalformedTournament(_)
            | Error::VertexOutOfRange { .. }
            | Error::BadParameters(_)
            | Error::TooLarge { .. } => USAGE,
            _ => INVARIANT,
        };
        Failure(code, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure(USAGE, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))
}

fn run(cmd: Cmd) -> Result<u8, Failure> {
    match cmd {
        Cmd::Gen {
            model,
            n,
            k,
            tfrac,
            s,
            seed,
            out,
        } => {
            let inst = generate(&GenParams {
                model,
                n,
                k,
                tfrac,
                s,
                seed,
            })?;
            write(out.as_deref(), &serialize_instance(&inst))?;
            Ok(0)
        }
        Cmd::Kernelize {
            input,
            provider,
            trace,
            out,
        } => {
            let inst = load(&input)?;
            let res = kernelize(&inst, provider.provider().as_ref())?;
            let text = serialize_instance(&res.status.output_instance());
            // the trace must reproduce the output before anything is written
            let replayed = replay(&inst, &res.trace)?;
            if serialize_instance(&replayed.output_instance()) != text {
                return Err(Failure(
                    INVARIANT,
                    "trace replay does not reproduce the output".into(),
                ));
            }
            if let Some(t) = &trace {
                write(Some(t), &write_trace(&res.trace)?)?;
            }
            write(out.as_deref(), &text)?;
            let summary = match (&res.status, res.bounds) {
                (KernelStatus::Reduced(red), Some(b)) => {
                    if red.n() > b.n_max {
                        return Err(Failure(
                            INVARIANT,
                            format!("reduced n = {} exceeds n_max = {}", red.n(), b.n_max),
                        ));
                    }
                    format!(
                        "reduced n {} k {} B {} n_max {}",
                        red.n(),
                        red.budget(),
                        b.b,
                        b.n_max
                    )
                }
                (KernelStatus::TrivialYes, _) => "trivial yes".into(),
                _ => "trivial no".into(),
            };
            eprintln!("{summary} rules {}", res.trace.len());
            Ok(0)
        }
        Cmd::Solve { input, method } => {
            let inst = load(&input)?;
            let outcome = match method.as_str() {
                "subset" => exact_subset(&inst, inst.tournament().arc_count())?,
                "order" => exact_order(&inst)?,
                _ => exact_branch(&inst),
            };
            let verdict = if outcome.optimum <= inst.budget() {
                "yes"
            } else {
                "no"
            };
            println!(
                "c optimum {} k {} answer {verdict}",
                outcome.optimum,
                inst.budget()
            );
            println!("c nodes {}", outcome.nodes_explored);
            print!("{}", serialize_witness(&outcome.witness));
            Ok(0)
        }
        Cmd::Verify { input, witness } => {
            let inst = load(&input)?;
            let s = parse_witness(&read(&witness)?, inst.n())
                .map_err(|e| Failure(USAGE, format!("{}: {e}", witness.display())))?;
            if verify_solution(&inst, &s) {
                println!("accept {} arcs, k {}", s.len(), inst.budget());
                Ok(0)
            } else {
                println!("reject {} arcs, k {}", s.len(), inst.budget());
                Ok(INVARIANT)
            }
        }
        Cmd::Xcheck {
            n_max,
            k_max,
            trials,
            seed,
        } => {
            let report = xcheck(&XcheckParams {
                n_max,
                k_max,
                trials,
                seed,
            })?;
            print!("{report}");
            Ok(report.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
