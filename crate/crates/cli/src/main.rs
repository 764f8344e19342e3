use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use cayley_core::analysis::{analyze, AnalyzeOptions};
use cayley_core::bench::{bench, bench_family, fit_exponent, to_csv};
use cayley_core::generators::{Family, GeneratorSpec};
use cayley_core::io::parse_graph;
use cayley_core::verify::verify_theorems;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "cayley",
    version,
    about = "Cayley complexity of 1-dof tree-decomposable graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a graph file.
    Analyze {
        path: PathBuf,
        /// Also run the extreme-graph oracle.
        #[arg(long)]
        brute: bool,
        /// Check the verdict on every base non-edge.
        #[arg(long)]
        all_base_non_edges: bool,
        #[arg(long)]
        json: bool,
        /// Include per-phase timings (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Print a generated graph file.
    Generate {
        family: String,
        /// Spoke count, clique size or random step count.
        size: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        triangle_free: bool,
        #[arg(long)]
        one_path: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time the recognizer against the oracle and print CSV.
    Bench {
        #[arg(long, default_value_t = 2000)]
        max_n: usize,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        /// `fan`, `random` or both when omitted.
        #[arg(long)]
        family: Option<String>,
    },
    /// Check the structural theorems on a random corpus.
    Verify {
        #[arg(long, default_value_t = 100)]
        budget: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn default_size(family: Family) -> usize {
    match family {
        Family::Random => 10,
        _ => 5,
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let mut stdout = std::io::stdout().lock();
    let mut emit = |s: &str| stdout.write_all(s.as_bytes()).map_err(|e| e.to_string());
    match cli.command {
        Command::Analyze {
            path,
            brute,
            all_base_non_edges,
            json,
            timings,
        } => {
            let text = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            let file = parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            let opts = AnalyzeOptions {
                brute,
                all_base_non_edges,
                timings,
            };
            let report = analyze(&file, opts).map_err(|e| e.to_string())?;
            if json {
                let s = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
                emit(&(s + "\n"))?;
            } else {
                emit(&report.to_text())?;
            }
            Ok(if report.consistent() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Generate {
            family,
            size,
            seed,
            triangle_free,
            one_path,
            output,
        } => {
            let family: Family = family
                .parse()
                .map_err(|e: cayley_core::Error| e.to_string())?;
            let spec = GeneratorSpec {
                family,
                size: size.unwrap_or_else(|| default_size(family)),
                seed,
                triangle_free,
                one_path_bias: one_path,
            };
            let g = spec.generate().map_err(|e| e.to_string())?;
            let text = g.to_text(&spec.comments());
            match output {
                Some(p) => fs::write(&p, text).map_err(|e| format!("{}: {e}", p.display()))?,
                None => emit(&text)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            max_n,
            repeats,
            family,
        } => {
            let rows = match family.as_deref() {
                Some(f) => bench_family(f, max_n, repeats),
                None => bench(max_n, repeats),
            }
            .map_err(|e| e.to_string())?;
            emit(&to_csv(&rows))?;
            for fam in ["fan", "random"] {
                for algo in ["fast", "brute"] {
                    if let Some(k) = fit_exponent(&rows, fam, algo) {
                        eprintln!("exponent {fam} {algo} {k:.3}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { budget, seed, json } => {
            if budget == 0 {
                return Err("budget must be at least 1".into());
            }
            let summary = verify_theorems(budget, seed).map_err(|e| e.to_string())?;
            if json {
                let s = serde_json::to_string_pretty(&summary).map_err(|e| e.to_string())?;
                emit(&(s + "\n"))?;
            } else {
                emit(&summary.to_text())?;
            }
            Ok(if summary.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
