//! `x0plus`: canonical models, rational points, CM labels and incidence
//! reports for the genus 3 and 4 quotients X0+(N).

mod pipeline;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use x0plus_core::LabelConfig;

use pipeline::{Settings, StageError};

#[derive(Parser)]
#[command(name = "x0plus", version, about = "Canonical models and rational-point incidences of X0+(N)")]
struct Cli {
    /// Directory holding the `x0plus_<N>.json` fixtures.
    #[arg(long, global = true, env = "X0PLUS_DATA_DIR", default_value = "data")]
    data_dir: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// Largest absolute coordinate in the point search.
    #[arg(long, default_value_t = 100)]
    height: u64,
}

#[derive(Args, Clone)]
struct LabelArgs {
    /// Initial number of q-expansion coefficients; doubled as needed.
    #[arg(long, default_value_t = 400)]
    terms: usize,
    /// Distance below which a Heegner image matches a rational point.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Prime levels whose quotient has the given genus.
    Levels {
        #[arg(long)]
        genus: u64,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
    /// Canonical model built from the fixture.
    Model { level: u64 },
    /// Rational points of bounded height.
    Points {
        level: u64,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// CM and cusp labels of the rational points.
    Heegner {
        level: u64,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        label: LabelArgs,
    },
    /// Lines or planes spanned by the rational points and their divisors.
    Incidence {
        level: u64,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        label: LabelArgs,
        /// Also test every plane whose normal has entries in [-B, B].
        #[arg(long, value_name = "B")]
        sweep: Option<i64>,
    },
    /// Every stage for one level.
    Report {
        level: u64,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        label: LabelArgs,
        #[arg(long, value_name = "B")]
        sweep: Option<i64>,
    },
    /// Check the published statements about the level-137 model.
    Verify {
        #[arg(long = "paper-137", required = true)]
        paper_137: bool,
        #[arg(long, default_value_t = 25)]
        height: u64,
    },
}

fn settings(search: &SearchArgs, label: &LabelArgs, sweep: Option<i64>) -> Settings {
    let label = LabelConfig { terms: label.terms, tol: label.tol, ..LabelConfig::default() };
    Settings { height: search.height, label, sweep }
}

/// Rendered output plus whether every checked statement held.
struct Outcome {
    text: String,
    json: String,
    ok: bool,
}

fn outcome<T: Serialize>(doc: &T, text: String, ok: bool) -> Result<Outcome, StageError> {
    let json = serde_json::to_string_pretty(doc).expect("documents serialize") + "\n";
    Ok(Outcome { text, json, ok })
}

fn run(cli: &Cli) -> Result<Outcome, StageError> {
    let dir = &cli.data_dir;
    match &cli.command {
        Command::Levels { genus, bound } => {
            let d = pipeline::levels(*genus, *bound)?;
            outcome(&d, render::levels(&d), true)
        }
        Command::Model { level } => {
            let d = pipeline::model(dir, *level)?;
            outcome(&d, render::model(&d), true)
        }
        Command::Points { level, search } => {
            let d = pipeline::points(dir, *level, search.height)?;
            outcome(&d, render::points(&d), true)
        }
        Command::Heegner { level, search, label } => {
            let d = pipeline::heegner(dir, *level, &settings(search, label, None))?;
            outcome(&d, render::heegner(&d), true)
        }
        Command::Incidence { level, search, label, sweep } => {
            let d = pipeline::incidence(dir, *level, &settings(search, label, *sweep))?;
            outcome(&d, render::incidence(&d), true)
        }
        Command::Report { level, search, label, sweep } => {
            let d = pipeline::report(dir, *level, &settings(search, label, *sweep))?;
            outcome(&d, render::report(&d), true)
        }
        Command::Verify { height, .. } => {
            let d = pipeline::verify(*height)?;
            outcome(&d, render::verify(&d), d.passed)
        }
    }
}

fn emit(cli: &Cli, o: &Outcome) -> std::io::Result<()> {
    let body = match cli.format {
        Format::Text => &o.text,
        Format::Json => &o.json,
    };
    match &cli.output {
        Some(path) => std::fs::write(path, body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            if let Err(e) = emit(&cli, &o) {
                eprintln!("error [output]: {e}");
                return ExitCode::from(2);
            }
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error [{}/{}]: {}", e.source.module(), e.op, e.source);
            eprintln!("hint: {}", e.source.hint());
            ExitCode::from(2)
        }
    }
}
