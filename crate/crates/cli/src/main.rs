use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ttg_core::io::{run, Command, Options};
use ttg_core::presentation::DEFAULT_MAX_OBJECTS;
use ttg_core::Exec;

/// Thick submodules, closure operators of finite type and the spectral
/// spaces of their fixed points, checked exhaustively on finite
/// presentations.
#[derive(Parser)]
#[command(name = "ttg", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// Presentation file (JSON).
    #[arg(long)]
    model: PathBuf,
    /// Named operator from the model's operator section, or `identity`.
    #[arg(long)]
    operator: Option<String>,
    /// Write the structured report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write a Graphviz rendering of the computed space or monoid table.
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_OBJECTS)]
    max_objects: usize,
    /// Print the structured report instead of the summary.
    #[arg(long)]
    json: bool,
    /// Add wall-clock time to the report (breaks byte-identical output).
    #[arg(long)]
    timing: bool,
    /// Run every check on the calling thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct Seed {
    /// Comma-separated module object names; an empty value seeds nothing.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    seed: Vec<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the presentation axioms.
    Validate(Common),
    /// Generate the thick submodule of a seed set, with stages.
    Generate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        seed: Seed,
    },
    /// Extract the seed objects a generated member depends on.
    Witness {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        seed: Seed,
        #[arg(long)]
        target: String,
    },
    /// Enumerate every thick submodule and check the basis identities.
    Smod(Common),
    /// Classify operators (all of them unless --operator is given).
    Operators(Common),
    /// Check that the fixed-point space of an operator is spectral.
    Spectral(Common),
    /// Check the principal ultrafilter limits on the fixed-point space.
    Ultrafilter(Common),
    /// Check the monoid axioms and continuity on the fixed-point space.
    Monoid(Common),
    /// Run every check for every operator of the model.
    Report(Common),
}

fn options(common: Common, seed: Option<Seed>, target: Option<String>) -> (Options, bool) {
    let mut o = Options::new(common.model);
    o.operator = common.operator;
    o.out = common.out;
    o.dot = common.dot;
    o.max_objects = common.max_objects;
    o.seed = seed.map(|s| s.seed);
    o.target = target;
    o.timing = common.timing;
    if common.sequential {
        o.exec = Exec::Sequential;
    }
    (o, common.json)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, (opts, json)) = match cli.command {
        Cmd::Validate(c) => (Command::Validate, options(c, None, None)),
        Cmd::Generate { common, seed } => (Command::Generate, options(common, Some(seed), None)),
        Cmd::Witness {
            common,
            seed,
            target,
        } => (Command::Witness, options(common, Some(seed), Some(target))),
        Cmd::Smod(c) => (Command::Smod, options(c, None, None)),
        Cmd::Operators(c) => (Command::Operators, options(c, None, None)),
        Cmd::Spectral(c) => (Command::Spectral, options(c, None, None)),
        Cmd::Ultrafilter(c) => (Command::Ultrafilter, options(c, None, None)),
        Cmd::Monoid(c) => (Command::Monoid, options(c, None, None)),
        Cmd::Report(c) => (Command::Report, options(c, None, None)),
    };
    match run(command, &opts) {
        Ok(report) => {
            if json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.human());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
