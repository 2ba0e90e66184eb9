use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wheelsub::cutsets::{find_cutset, CutsetKind};
use wheelsub::harness::{run_suite, Suite, SuiteConfig};
use wheelsub::io::{parse_graph, to_graph6, Format};
use wheelsub::oracle::{contains_wheel, Budget};
use wheelsub::reductions::{apply_reduction, find_reduction};
use wheelsub::solver::{decide_w7, Options, DEFAULT_ORACLE_CEILING};
use wheelsub::Graph;

#[derive(Parser)]
#[command(name = "wheelsub", version, about = "Decide whether a graph contains a subdivision of the 7-spoke wheel")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum InputFormat {
    /// graph6 unless the first line is a bare vertex count
    Auto,
    Graph6,
    EdgeList,
}

#[derive(clap::Args)]
struct Input {
    /// Graph file, or `-` for stdin
    #[arg(default_value = "-")]
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    format: InputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Run the decision procedure: CONTAINS_W7 (exit 0) or NO_W7 (exit 1)
    Decide {
        #[command(flatten)]
        input: Input,
        /// Print the recursion trace after the verdict
        #[arg(long)]
        trace: bool,
        /// Print a witness when exhaustive search decided the input itself
        #[arg(long)]
        witness: bool,
    },
    /// Exhaustive search for a W_k subdivision: YES (exit 0) or NO (exit 1)
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 7)]
        k: usize,
        /// Require the hub on this vertex
        #[arg(long)]
        centre: Option<usize>,
    },
    /// Find the first cutset of one kind, or NONE (exit 1)
    Cutsets {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        kind: CutsetKind,
    },
    /// Find and apply the first reduction, or NONE (exit 1)
    Reduce {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 7)]
        k: usize,
    },
    /// Run a randomized check suite; exit 0 iff every instance passes
    Difftest {
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest graph given to exhaustive search
        #[arg(long, default_value_t = DEFAULT_ORACLE_CEILING)]
        ceiling: usize,
    },
}

fn read_graph(input: &Input) -> Result<Graph, String> {
    let text = if input.graph.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).map_err(|e| format!("reading stdin: {e}"))?;
        buf
    } else {
        fs::read(&input.graph).map_err(|e| format!("reading {}: {e}", input.graph.display()))?
    };
    let format = match input.format {
        InputFormat::Graph6 => Format::Graph6,
        InputFormat::EdgeList => Format::EdgeList,
        InputFormat::Auto => detect(&text),
    };
    parse_graph(&text, format).map_err(|e| e.to_string())
}

/// graph6 never uses digits, and an edge list starts with its vertex count.
fn detect(text: &[u8]) -> Format {
    let first = String::from_utf8_lossy(text)
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_owned);
    match first {
        Some(l) if l.bytes().all(|b| b.is_ascii_digit()) => Format::EdgeList,
        _ => Format::Graph6,
    }
}

/// Verdict and exit status.
fn verdict(out: &mut impl Write, yes: bool, tokens: (&str, &str)) -> io::Result<ExitCode> {
    writeln!(out, "{}", if yes { tokens.0 } else { tokens.1 })?;
    Ok(ExitCode::from(if yes { 0 } else { 1 }))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let io_err = |e: io::Error| e.to_string();
    match cli.command {
        Command::Decide { input, trace, witness } => {
            let g = read_graph(&input)?;
            let d = decide_w7(&g, &Options { trace, want_witness: witness, ..Options::default() });
            let code = verdict(&mut out, d.contains, ("CONTAINS_W7", "NO_W7")).map_err(io_err)?;
            if let Some(w) = &d.witness {
                write!(out, "{w}").map_err(io_err)?;
            } else if witness && d.contains {
                eprintln!("no witness: the decision was reached through a split or reduction");
            }
            if let Some(t) = &d.trace {
                write!(out, "{t}").map_err(io_err)?;
            }
            Ok(code)
        }
        Command::Oracle { input, k, centre } => {
            let g = read_graph(&input)?;
            if k < 3 {
                return Err(format!("--k must be at least 3, got {k}"));
            }
            if let Some(c) = centre {
                if c >= g.n() {
                    return Err(format!("--centre {c} is not a vertex of a graph on {} vertices", g.n()));
                }
            }
            let found = contains_wheel(&g, k, centre, Budget::Unlimited).map_err(|_| "search budget exhausted")?;
            let code = verdict(&mut out, found.is_some(), ("YES", "NO")).map_err(io_err)?;
            if let Some(w) = found {
                write!(out, "{w}").map_err(io_err)?;
            }
            Ok(code)
        }
        Command::Cutsets { input, kind } => {
            let g = read_graph(&input)?;
            match find_cutset(&g, kind) {
                Some(f) => {
                    writeln!(out, "{f}").map_err(io_err)?;
                    Ok(ExitCode::SUCCESS)
                }
                None => verdict(&mut out, false, ("", "NONE")).map_err(io_err),
            }
        }
        Command::Reduce { input, k } => {
            let g = read_graph(&input)?;
            match find_reduction(&g, k) {
                Some(f) => {
                    let h = apply_reduction(&g, &f).map_err(|e| e.to_string())?;
                    writeln!(out, "{f}").map_err(io_err)?;
                    writeln!(out, "{}", to_graph6(&h)).map_err(io_err)?;
                    Ok(ExitCode::SUCCESS)
                }
                None => verdict(&mut out, false, ("", "NONE")).map_err(io_err),
            }
        }
        Command::Difftest { suite, count, seed, ceiling } => {
            let report = run_suite(suite, &SuiteConfig { count, seed, ceiling }).map_err(|e| e.to_string())?;
            write!(out, "{report}").map_err(io_err)?;
            Ok(ExitCode::from(if report.passed() { 0 } else { 1 }))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
