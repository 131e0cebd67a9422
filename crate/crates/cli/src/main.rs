mod commands;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spreadability::Error;

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "spreadability", version, about = "Exact partition, cumulant and CBH computations")]
struct Cli {
    /// Output format
    #[arg(long, global = true, env = "SPREADABILITY_FORMAT", default_value = "text")]
    format: Format,

    /// Run past the safety caps
    #[arg(long, global = true)]
    force: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List ordered set partitions of a class
    Enumerate {
        #[arg(short)]
        n: usize,
        #[arg(long, default_value = "all")]
        class: String,
        #[arg(long)]
        count_only: bool,
    },
    /// Weisner or Goldberg coefficient of a pair (or triple with --pi)
    Coeff {
        kind: Kind,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        eta: String,
        #[arg(long)]
        pi: Option<String>,
    },
    /// Moment/cumulant table of an engine
    Cumulants {
        #[arg(long)]
        system: String,
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value = "m2c")]
        direction: Direction,
    },
    /// log(e^a e^b ...) up to a degree
    Cbh {
        #[arg(long)]
        letters: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "direct")]
        route: String,
    },
    /// Central limit moment of order n
    Clt {
        #[arg(long)]
        system: String,
        #[arg(short)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Weisner,
    Goldberg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    M2c,
    C2m,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input; exit 2.
    Invalid(String),
    /// Safety cap; exit 3.
    Cap(String),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Bound { .. } => CliError::Cap(e.to_string()),
            e => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Refuses `value > limit` unless forced, in which case it warns.
pub fn check_cap(what: &str, value: usize, limit: usize, force: bool) -> Result<(), CliError> {
    if value <= limit {
        return Ok(());
    }
    if force {
        eprintln!("warning: {what} = {value} exceeds the cap {limit}; continuing because of --force");
        return Ok(());
    }
    Err(CliError::Cap(format!("{what} = {value} exceeds the cap {limit} (pass --force to override)")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let doc = match cli.command {
        Command::Enumerate { n, class, count_only } => {
            return commands::enumerate(n, &class, count_only, cli.format, cli.force, &mut out);
        }
        Command::Coeff { kind, tau, eta, pi } => commands::coeff(kind, &tau, &eta, pi.as_deref())?,
        Command::Cumulants { system, n, direction } => commands::cumulants(&system, n, direction, cli.force)?,
        Command::Cbh { letters, degree, route } => commands::cbh(&letters, degree, &route, cli.force)?,
        Command::Clt { system, n } => commands::clt(&system, n, cli.force)?,
    };
    doc.write(cli.format, &mut out)?;
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Cap(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
