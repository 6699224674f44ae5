mod error;
mod pipeline;
mod sweep;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use topecycle::catalogue::{generate, FamilySpec};
use topecycle::hamilton::verify_certificate;
use topecycle::io::{
    parse_arrangement, parse_certificate, parse_graph, write_arrangement, write_certificate, write_graph,
};
use topecycle::lattice::{build_lattice, decompose_lattice, DEFAULT_FLAT_LIMIT};
use topecycle::{Arrangement, BuildOptions};

use error::{CliError, CliResult};
use pipeline::{cycle_of_arrangement, cycle_of_graph, tope_graph, GraphAlgo, Method, Settings};

const SEED_VAR: &str = "TOPECYCLE_SEED";

#[derive(Parser)]
#[command(
    name = "topecycle",
    version,
    about = "Tope graphs and Hamiltonian cycles of hyperplane arrangements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a catalogue arrangement.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the tope graph of an arrangement.
    Graph {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "walk")]
        algo: GraphAlgo,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Print flat counts per rank and a supersolvable chain, if any.
    Lattice {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct a Hamiltonian cycle from an arrangement or graph file.
    Cycle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Check a certificate against a graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        cycle: PathBuf,
    },
    /// Run graph, cycle and verify over every file of a directory.
    Sweep {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Args, Clone, Copy)]
struct Limits {
    /// Node budget of the backtracking search.
    #[arg(long, default_value_t = 50_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 10_000_000)]
    max_topes: usize,
}

impl Limits {
    fn settings(self) -> CliResult<Settings> {
        let seed = match std::env::var(SEED_VAR) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{SEED_VAR} must be an unsigned integer, got `{v}`")))?,
            Err(_) => 0,
        };
        Ok(Settings {
            build: BuildOptions {
                seed,
                max_topes: self.max_topes,
                ..BuildOptions::default()
            },
            search_budget: self.budget,
        })
    }
}

pub(crate) fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

pub(crate) fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_arrangement(path: &Path) -> CliResult<Arrangement> {
    Ok(parse_arrangement(&read(path)?)?)
}

fn is_graph_file(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("topes "))
}

fn lattice_report(a: &Arrangement) -> CliResult<String> {
    let l = build_lattice(a, DEFAULT_FLAT_LIMIT)?;
    let mut out = String::new();
    for (rank, count) in l.rank_counts().iter().enumerate() {
        out.push_str(&format!("rank {rank} flats {count}\n"));
    }
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    match decompose_lattice(&l) {
        Some(d) => {
            out.push_str(&format!("supersolvable yes levels {}\n", d.levels.len()));
            for level in &d.levels {
                out.push_str(&format!("level a0 {} | a1 {}\n", join(&level.a0), join(&level.a1)));
            }
        }
        None => out.push_str("supersolvable no\n"),
    }
    Ok(out)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Gen { family, n, s, m, out } => {
            let spec = FamilySpec::from_parts(&family, n, s, m)?;
            emit(out.as_deref(), &write_arrangement(&generate(spec)?))
        }
        Command::Graph {
            input,
            algo,
            out,
            limits,
        } => {
            let a = read_arrangement(&input)?;
            let g = tope_graph(&a, algo, &limits.settings()?.build)?;
            emit(out.as_deref(), &write_graph(&g))
        }
        Command::Lattice { input, out } => emit(out.as_deref(), &lattice_report(&read_arrangement(&input)?)?),
        Command::Cycle {
            input,
            method,
            out,
            limits,
        } => {
            let settings = limits.settings()?;
            let text = read(&input)?;
            let cycle = if is_graph_file(&text) {
                cycle_of_graph(&parse_graph(&text)?, method, &settings)?
            } else {
                cycle_of_arrangement(&parse_arrangement(&text)?, method, &settings)?
            };
            eprintln!("method\t{}", cycle.method);
            emit(out.as_deref(), &write_certificate(&cycle.certificate))
        }
        Command::Verify { graph, cycle } => {
            let g = parse_graph(&read(&graph)?)?;
            let c = parse_certificate(&read(&cycle)?)?;
            verify_certificate(&g, &c).map_err(CliError::Violation)?;
            println!("ok\t{} topes", g.len());
            Ok(())
        }
        Command::Sweep { dir, out, limits } => sweep::sweep(&dir, &out, &limits.settings()?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or_default().trim_start_matches("error: ");
            eprintln!("error\tUsage\t{first}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error\t{}\t{}", e.kind(), e.to_string().replace(['\n', '\t'], " "));
            ExitCode::FAILURE
        }
    }
}
