use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use slidewin_cli::{
    builtin_scenarios, read_manifest, read_records, run, selftest, summarize, GenSpec,
    GenericEstimator, RunConfig, StreamFile,
};
use slidewin_core::oracles::{
    e_star_exact, max_matching_exact, min_vertex_cover_exact, window_at, GraphSnapshot,
};
use slidewin_core::AlgorithmKind;

#[derive(Parser)]
#[command(
    name = "slidewin",
    version,
    about = "Sliding-window graph stream experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a stream file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replay a stream file and print one JSON record per query.
    Run {
        /// Stream file, `-` for stdin.
        input: PathBuf,
        #[arg(long, value_parser = parse_kind)]
        alg: AlgorithmKind,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long)]
        window: usize,
        /// Fill in truth and ratio from the exact oracles.
        #[arg(long)]
        oracle: bool,
        /// Report every k-th query only.
        #[arg(long, default_value_t = 1)]
        every: usize,
        /// Wrap the algorithm in the restart-every-w-items wrapper.
        #[arg(long)]
        doubling: bool,
        /// Bucket estimator for `--alg generic`.
        #[arg(long, default_value = "exact-m")]
        estimator: GenericEstimator,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact value of a graph quantity on a stream or one of its windows.
    Oracle {
        input: PathBuf,
        #[arg(long, value_enum)]
        problem: OracleProblem,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        /// Restrict to the window of this length ending at `--at`.
        #[arg(long, requires = "at")]
        window: Option<usize>,
        #[arg(long, requires = "window")]
        at: Option<usize>,
    },
    /// Summarize records; exit 1 if any bound is violated.
    Eval {
        /// Records file, `-` for stdin.
        input: PathBuf,
    },
    /// Run scenarios with the oracle enabled, in parallel.
    Selftest {
        /// Scenario manifest (JSON); built-in scenarios when omitted.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Disjoint three-edge paths, first edges, then middle, then last.
    ThreePaths {
        #[arg(long)]
        copies: usize,
    },
    Forest {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Union of `alpha` random spanning trees, sampled to `edges` edges.
    AlphaUnion {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleProblem {
    Matching,
    VertexCover,
    EStar,
}

fn parse_kind(s: &str) -> Result<AlgorithmKind, String> {
    s.parse().map_err(|e: slidewin_core::Error| e.to_string())
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .context("reading stdin")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn execute(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { kind, output } => {
            let spec = match kind {
                GenKind::ThreePaths { copies } => GenSpec::ThreePaths { copies },
                GenKind::Forest { n, edges, seed } => GenSpec::Forest { n, edges, seed },
                GenKind::AlphaUnion {
                    n,
                    alpha,
                    edges,
                    seed,
                } => GenSpec::AlphaUnion {
                    n,
                    alpha,
                    edges,
                    seed,
                },
                GenKind::Gnp { n, p, seed } => GenSpec::Gnp { n, p, seed },
            };
            let mut out = open_output(output.as_deref())?;
            out.write_all(spec.generate()?.emit().as_bytes())?;
            out.flush()?;
        }
        Command::Run {
            input,
            alg,
            alpha,
            epsilon,
            window,
            oracle,
            every,
            doubling,
            estimator,
            output,
        } => {
            let config = RunConfig {
                algorithm: alg,
                estimator,
                alpha,
                epsilon,
                window,
                every,
                oracle,
                doubling,
            };
            config.validate()?;
            let stream = StreamFile::parse(&read_input(&input)?)
                .with_context(|| format!("parsing {}", input.display()))?;
            let mut out = open_output(output.as_deref())?;
            run(&config, &stream.edges, &mut out)?;
            out.flush()?;
        }
        Command::Oracle {
            input,
            problem,
            alpha,
            window,
            at,
        } => {
            let stream = StreamFile::parse(&read_input(&input)?)?;
            let edges = match (window, at) {
                (Some(w), Some(t)) => window_at(&stream.edges, w, t)?,
                _ => &stream.edges[..],
            };
            let snapshot = GraphSnapshot::from_stream(edges);
            let report = match problem {
                OracleProblem::Matching => {
                    let (size, witness) = max_matching_exact(&snapshot)?;
                    let witness: Vec<[u32; 2]> = witness.iter().map(|e| [e.u(), e.v()]).collect();
                    json!({"problem": "matching", "value": size, "witness": witness})
                }
                OracleProblem::VertexCover => {
                    let (size, cover) = min_vertex_cover_exact(&snapshot)?;
                    json!({"problem": "vertex_cover", "value": size, "witness": cover})
                }
                OracleProblem::EStar => {
                    json!({"problem": "e_star", "alpha": alpha, "value": e_star_exact(edges, alpha)?})
                }
            };
            println!("{report}");
        }
        Command::Eval { input } => {
            let reader: Box<dyn BufRead> = if input == Path::new("-") {
                Box::new(BufReader::new(io::stdin().lock()))
            } else {
                Box::new(BufReader::new(
                    File::open(&input).with_context(|| format!("opening {}", input.display()))?,
                ))
            };
            let summary = summarize(&read_records(reader)?)?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
            if !summary.ok() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Selftest { manifest } => {
            let (scenarios, base) = match &manifest {
                Some(path) => (
                    read_manifest(path)?,
                    path.parent().map(Path::to_path_buf).unwrap_or_default(),
                ),
                None => (builtin_scenarios(), PathBuf::from(".")),
            };
            let outcomes = selftest(&scenarios, &base)?;
            let mut failed = false;
            for o in &outcomes {
                let s = &o.summary;
                let status = if s.ok() { "ok" } else { "FAILED" };
                failed |= !s.ok();
                println!(
                    "{status:>6}  {:<28} queries {:>5}  max ratio {:>7.3}  violations {}  errors {}",
                    o.name,
                    s.records,
                    s.max_ratio.unwrap_or(f64::NAN),
                    s.violations,
                    s.errors
                );
            }
            if failed {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
