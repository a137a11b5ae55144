use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use conley_cli::commands::{self, parse_coeff, CliError, Outcome};
use conley_cli::Problem;

#[derive(Parser)]
#[command(name = "conley", version, about = "Conley index computations for multivalued maps on finite spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Problem file.
    file: PathBuf,
    /// Coefficients: q, zp:<p>, or z (homology only).
    #[arg(long, default_value = "q")]
    coeff: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check admissibility of the maps.
    Validate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        map: Option<String>,
    },
    /// Homology of a set or a pair.
    Homology {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        pair: Option<String>,
    },
    /// Finest Morse decomposition and Morse graph.
    Morse {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        map: String,
        /// Write the Morse graph in DOT format; `-` for stdout.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Compute the index of every Morse set.
        #[arg(long)]
        with_index: bool,
    },
    /// Check that a set is isolated.
    Isolate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        map: String,
        #[arg(long)]
        set: String,
        /// Isolating set; defaults to the smallest candidate.
        #[arg(long)]
        iso: Option<String>,
    },
    /// Standard index pair and its extension.
    Stdpair {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        map: String,
        #[arg(long)]
        set: String,
        #[arg(long)]
        iso: Option<String>,
    },
    /// Conley index of an isolated invariant set.
    Conley {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        map: String,
        #[arg(long)]
        set: String,
        #[arg(long)]
        iso: Option<String>,
        #[arg(long)]
        pair: Option<String>,
    },
    /// Index of a pair satisfying the exit condition, and its invariant part.
    Wazewski {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        map: String,
        #[arg(long)]
        pair: String,
    },
    /// Verify continuation along a fence of maps.
    Continue {
        #[command(flatten)]
        common: Common,
        /// Comma-separated map names.
        #[arg(long, value_delimiter = ',')]
        maps: Vec<String>,
        /// Semicolon-separated sets, one per map.
        #[arg(long, value_delimiter = ';')]
        sets: Vec<String>,
        /// Semicolon-separated pairs, one per fence edge; searched when absent.
        #[arg(long, value_delimiter = ';')]
        pairs: Option<Vec<String>>,
        #[arg(long, default_value_t = 10_000)]
        bound: usize,
    },
}

fn load(c: &Common) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(&c.file).map_err(|e| CliError::Usage(format!("{}: {e}", c.file.display())))?;
    Ok(Problem::parse(&text)?)
}

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn run(cli: Cli) -> Result<(Outcome, Option<PathBuf>), CliError> {
    Ok(match &cli.command {
        Command::Validate { common, map } => (commands::cmd_validate(&load(common)?, map.as_deref())?, None),
        Command::Homology { common, set, pair } => {
            let ring = parse_coeff(&common.coeff)?;
            (commands::cmd_homology(&load(common)?, set.as_deref(), pair.as_deref(), ring)?, None)
        }
        Command::Morse { common, map, dot, with_index } => {
            let ring = parse_coeff(&common.coeff)?;
            (commands::cmd_morse(&load(common)?, map, *with_index, ring)?, dot.clone())
        }
        Command::Isolate { common, map, set, iso } => (commands::cmd_isolate(&load(common)?, map, set, iso.as_deref())?, None),
        Command::Stdpair { common, map, set, iso } => (commands::cmd_stdpair(&load(common)?, map, set, iso.as_deref())?, None),
        Command::Conley { common, map, set, iso, pair } => {
            let ring = parse_coeff(&common.coeff)?;
            (commands::cmd_conley(&load(common)?, map, set, iso.as_deref(), pair.as_deref(), ring)?, None)
        }
        Command::Wazewski { common, map, pair } => {
            let ring = parse_coeff(&common.coeff)?;
            (commands::cmd_wazewski(&load(common)?, map, pair, ring)?, None)
        }
        Command::Continue { common, maps, sets, pairs, bound } => {
            let ring = parse_coeff(&common.coeff)?;
            let pairs = pairs.as_deref().map(strs);
            (commands::cmd_continue(&load(common)?, &strs(maps), &strs(sets), pairs.as_deref(), *bound, ring)?, None)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, dot_path)) => {
            print!("{}", outcome.report);
            if let (Some(path), Some(dot)) = (dot_path, &outcome.dot) {
                if path.as_os_str() == "-" {
                    print!("{dot}");
                } else if let Err(e) = std::fs::write(&path, dot) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(outcome.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
