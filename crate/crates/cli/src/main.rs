use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use divlift_cli::output::{render, Format};
use divlift_cli::run::{run_text, Options};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

/// Runs a divlift session script.
#[derive(Debug, Parser)]
#[command(name = "divlift", version)]
struct Args {
    /// Script file; read from stdin when absent.
    #[arg(long)]
    script: Option<PathBuf>,
    /// Default truncation cap for the jets estimators.
    #[arg(long, default_value_t = 4)]
    cap: u32,
    /// Buchberger step budget.
    #[arg(long = "gb-budget", default_value_t = 100_000)]
    gb_budget: usize,
    /// Largest weight tried by the toric search.
    #[arg(long = "weight-bound", default_value_t = 8)]
    weight_bound: u32,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match &args.script {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read script: {e}");
            return ExitCode::from(2);
        }
    };
    let opts = Options { cap: args.cap, gb_budget: args.gb_budget, weight_bound: args.weight_bound };
    let format = match args.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    let (blocks, err) = run_text(&text, &opts);
    let msg = err.as_ref().map(|e| e.to_string());
    print!("{}", render(&blocks, format, msg.as_deref()));
    match err {
        None => ExitCode::SUCCESS,
        Some(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
