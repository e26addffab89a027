//! The `alea` command: exact analysis, seeded sampling, type checking and
//! an interactive session.

pub mod render;
pub mod repl;

use std::io::{BufRead, Write};
use std::path::PathBuf;

use alea::engine::DEFAULT_SEED;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SEMANTIC: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "alea", version, about = "Analyze and simulate Alea programs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the exact distribution of a program's result.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run a program repeatedly with a seeded pseudo-random generator.
    Sample {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Parse and type-check a program and print its type.
    Check {
        #[command(flatten)]
        input: Input,
    },
    /// Interactive session reading bindings and queries from standard input.
    Repl,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Program file.
    pub file: Option<PathBuf>,
    /// Inline program text.
    #[arg(short = 'e', long = "expr")]
    pub expr: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Records,
}

/// Decimal or `0x`-prefixed hexadecimal.
fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => s.replace('_', "").parse(),
    };
    parsed.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

impl Input {
    fn read(&self) -> Result<String, String> {
        match (&self.file, &self.expr) {
            (_, Some(e)) => Ok(e.clone()),
            (Some(path), None) => std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display())),
            (None, None) => Err("no program given".to_string()),
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// status.
pub fn run(
    args: &[String],
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Repl => return repl::run(input, out),
        Command::Analyze { input, format } => input.read().map(|src| analyze(&src, *format)),
        Command::Sample {
            input,
            seed,
            trials,
            format,
        } => input
            .read()
            .map(|src| sample(&src, *seed, *trials, *format)),
        Command::Check { input } => input.read().map(|src| check(&src)),
    };
    match result {
        Err(usage) => {
            let _ = writeln!(err, "error: {usage}");
            EXIT_USAGE
        }
        Ok(Err(e)) => {
            let _ = writeln!(err, "{e}");
            EXIT_SEMANTIC
        }
        Ok(Ok(text)) => {
            let _ = write!(out, "{text}");
            EXIT_OK
        }
    }
}

pub fn analyze(src: &str, format: Format) -> Result<String, alea::Error> {
    let p = alea::compile(src)?;
    let d = p.analyze()?;
    Ok(match format {
        Format::Table => render::analysis(&d, &p.ty),
        Format::Records => render::analysis_records(&d),
    })
}

pub fn sample(src: &str, seed: u64, trials: u64, format: Format) -> Result<String, alea::Error> {
    let p = alea::compile(src)?;
    let samples = p.sample_many(seed, trials as usize)?;
    Ok(match format {
        Format::Table => render::frequencies(&samples, &p.ty),
        Format::Records => render::trial_records(&samples),
    })
}

pub fn check(src: &str) -> Result<String, alea::Error> {
    let p = alea::compile(src)?;
    Ok(format!("{}\n", p.ty))
}
