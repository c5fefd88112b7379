use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fareymap::arith::{fibonacci_semiperiod, is_prime, statistics, Level};
use fareymap::error::Error;
use fareymap::export::{export_graph, ExportFormat};
use fareymap::map::{build_map, star};
use fareymap::metrics::{
    bfs_distance, classify_distance_prime, pole_count, poles, star_decomposition,
    DEFAULT_BFS_LEVEL_CAP,
};
use fareymap::petrie::petrie_path_from;
use fareymap::projective::{enumerate_vertices, FareyFraction, FractionLiteral};
use fareymap::render::{parse_viewport, render_universal_farey, RenderSpec};
use fareymap::verify::verify_range;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TOO_LARGE: u8 = 3;

/// Farey maps modulo n.
#[derive(Parser)]
#[command(name = "fareymap", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Darts, edges, faces, vertices, valency and genus of M3(N)
    Stats { n: Level },
    /// List the vertices of M3(N)
    Vertices { n: Level },
    /// Neighbours of a vertex in rotation order
    Star {
        n: Level,
        #[arg(allow_hyphen_values = true)]
        vertex: FractionLiteral,
    },
    /// Graph distance between two vertices
    Distance {
        n: Level,
        #[arg(allow_hyphen_values = true)]
        u: FractionLiteral,
        #[arg(allow_hyphen_values = true)]
        v: FractionLiteral,
    },
    /// The Petrie polygon through a dart (default 1/0,0/1)
    Petrie {
        n: Level,
        /// Start dart as `a/c,b/d`
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
    },
    /// The poles a/0
    Poles { n: Level },
    /// Decompose M3(P) into the stars of its poles, P an odd prime
    Decompose { p: Level },
    /// Write the graph of M3(N)
    Export {
        n: Level,
        #[arg(long)]
        format: ExportFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw the universal Farey map as SVG
    Render {
        #[arg(long = "max-den")]
        max_den: u64,
        /// Real interval `X0:X1`
        #[arg(long, allow_hyphen_values = true, value_parser = parse_viewport)]
        viewport: (f64, f64),
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 450)]
        height: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check every identity for levels N through M (default N)
    Verify { n: Level, m: Option<Level> },
}

enum Failure {
    Lib(Error),
    Io(io::Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(EXIT_VERIFY_FAILED),
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::TooLarge { .. } => ExitCode::from(EXIT_TOO_LARGE),
                Error::Inconsistent(_) | Error::NonIntegral(_) => ExitCode::FAILURE,
                _ => ExitCode::from(EXIT_USAGE),
            }
        }
    }
}

fn emit(text: &str, output: Option<PathBuf>) -> io::Result<()> {
    match output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn join(vs: &[FareyFraction]) -> String {
    vs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Stats { n } => {
            let s = statistics(n)?;
            println!("level     {n}");
            println!("darts     {}", s.darts);
            println!("edges     {}", s.edges);
            println!("faces     {}", s.faces);
            println!("vertices  {}", s.vertices);
            println!("valency   {}", s.valency);
            println!("genus     {}", s.genus);
            println!("petrie    {}", fibonacci_semiperiod(n)?);
            println!("poles     {}", pole_count(n));
        }
        Command::Vertices { n } => {
            for v in enumerate_vertices(n) {
                println!("{v}");
            }
        }
        Command::Star { n, vertex } => {
            println!("{}", join(&star(&vertex.at_level(n)?)));
        }
        Command::Distance { n, u, v } => {
            let (u, v) = (u.at_level(n)?, v.at_level(n)?);
            // past the BFS cap only primes have an arithmetic answer
            let d = if n.get() > DEFAULT_BFS_LEVEL_CAP && is_prime(n.get()) {
                classify_distance_prime(n, &u, &v)?.value()
            } else {
                bfs_distance(n, &u, &v)?
            };
            println!("{d}");
        }
        Command::Petrie { n, start } => {
            let map = build_map(n)?;
            let dart = match start {
                None => map.base_dart(),
                Some(text) => {
                    let (a, b) = text.split_once(',').ok_or_else(|| {
                        Error::Parse(format!("start dart `{text}` is not of the form a/c,b/d"))
                    })?;
                    let a = a.parse::<FractionLiteral>()?.at_level(n)?;
                    let b = b.parse::<FractionLiteral>()?.at_level(n)?;
                    map.dart_between(&a, &b).ok_or_else(|| {
                        Error::PreconditionViolated(format!("{a} and {b} are not adjacent"))
                    })?
                }
            };
            let path = petrie_path_from(&map, dart);
            println!("length {}", path.length);
            println!("{}", join(&path.vertices));
        }
        Command::Poles { n } => {
            println!("{}", join(&poles(n).poles));
        }
        Command::Decompose { p } => {
            for (pole, around) in star_decomposition(p)? {
                println!("{pole}: {}", join(&around));
            }
        }
        Command::Export { n, format, output } => {
            emit(&export_graph(n, format)?, output)?;
        }
        Command::Render {
            max_den,
            viewport: (x0, x1),
            width,
            height,
            output,
        } => {
            let spec = RenderSpec::new(max_den, x0, x1, width, height)?;
            emit(&render_universal_farey(&spec), output)?;
        }
        Command::Verify { n, m } => {
            let hi = m.unwrap_or(n);
            if hi.get() < n.get() {
                return Err(Error::PreconditionViolated(format!("empty range {n}..={hi}")).into());
            }
            let reports = verify_range(n.get(), hi.get())?;
            let mut out = io::stdout().lock();
            for r in &reports {
                write!(out, "{r}")?;
            }
            let failed = reports
                .iter()
                .filter(|r| r.skipped.is_none() && !r.passed())
                .count();
            let skipped = reports.iter().filter(|r| r.skipped.is_some()).count();
            writeln!(
                out,
                "{} levels: {} passed, {failed} failed, {skipped} skipped",
                reports.len(),
                reports.len() - failed - skipped
            )?;
            if failed > 0 {
                return Err(Failure::Verify);
            }
            if skipped > 0 {
                return Err(Error::TooLarge {
                    what: "largest level in the verification range",
                    size: hi.get(),
                    cap: DEFAULT_BFS_LEVEL_CAP,
                }
                .into());
            }
        }
    }
    Ok(())
}
