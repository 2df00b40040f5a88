use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use relaus_cli::{markdown, run, Command, Mode, Options, Status};
use serde_json::json;

/// Relative Auslander algebras, intermediate extensions and tilting
/// certificates for algebras given by quivers with relations.
#[derive(Parser, Debug)]
#[command(name = "relaus", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Algebra presentation (JSON).
    #[arg(long)]
    algebra: PathBuf,
    /// Second algebra, for morita-compare.
    #[arg(long)]
    algebra2: Option<PathBuf>,
    /// Module file (JSON), for zeta.
    #[arg(long)]
    module: Option<PathBuf>,
    /// `auto`, or a catalog file written by `indecomposables --export`.
    #[arg(long, default_value = "auto")]
    catalog: String,
    #[arg(long, value_enum, default_value = "knitting")]
    mode: Mode,
    #[arg(long, default_value_t = 8)]
    max_dim: usize,
    #[arg(long, default_value_t = 10_000)]
    max_steps: usize,
    #[arg(long, default_value_t = 6)]
    ext_bound: usize,
    /// Minimum number of samples for ttf-audit.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Write the catalog found by `indecomposables` here.
    #[arg(long)]
    export: Option<PathBuf>,
    /// Write the certificate here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print a human summary instead of JSON.
    #[arg(long)]
    markdown: bool,
    /// Run on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        command: cli.command,
        algebra: cli.algebra,
        algebra2: cli.algebra2,
        module: cli.module,
        catalog: (cli.catalog != "auto").then(|| PathBuf::from(&cli.catalog)),
        mode: cli.mode,
        max_dim: cli.max_dim,
        max_steps: cli.max_steps,
        ext_bound: cli.ext_bound,
        samples: cli.samples,
        export: cli.export,
        sequential: cli.sequential,
    };
    let start = Instant::now();
    let (mut cert, status) = match run(&opts) {
        Ok(outcome) => (outcome.certificate(&opts), outcome.status),
        Err(e) => {
            let status = Status::of_error(&e);
            eprintln!("relaus: {e}");
            let cert = json!({
                "tool": { "name": "relaus", "version": env!("CARGO_PKG_VERSION") },
                "command": opts.command,
                "error": e.to_string(),
                "exit_code": status.code(),
            });
            (cert, status)
        }
    };
    cert["timing"] = json!({ "elapsed_ms": start.elapsed().as_millis() as u64 });
    let text = if cli.markdown {
        markdown::render(&cert)
    } else {
        serde_json::to_string_pretty(&cert).expect("certificates serialize") + "\n"
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("relaus: {}: {e}", path.display());
                return ExitCode::from(Status::InputError.code() as u8);
            }
        }
        None => print!("{text}"),
    }
    if status == Status::Critical {
        eprintln!("relaus: CRITICAL: a guaranteed conclusion failed under verified hypotheses");
    }
    ExitCode::from(status.code() as u8)
}
