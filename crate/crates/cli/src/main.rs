use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use fockalg_cli::config::{OutputFormat, SuiteConfig};
use fockalg_cli::render::render_table;
use fockalg_cli::suites::{run_suite, SuiteName};

#[derive(Parser)]
#[command(name = "fockalg", version, about = "Verification suites for truncated Fock-space operator algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write its report.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name: toeplitz | reps | flow | ualg | weyl | all.
    suite: String,

    /// Flat key-value config file with [all] and per-suite sections.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Dimensions, comma separated.
    #[arg(long, value_delimiter = ',')]
    d: Option<Vec<usize>>,

    /// Truncation degree.
    #[arg(long)]
    nmax: Option<usize>,

    /// Flow times, comma separated.
    #[arg(long = "t", value_delimiter = ',', allow_hyphen_values = true)]
    t_grid: Option<Vec<f64>>,

    /// Positive, strictly decreasing λ grid, comma separated.
    #[arg(long = "lambda-grid", value_delimiter = ',')]
    lambda_grid: Option<Vec<f64>>,

    /// Tail cutoffs, comma separated.
    #[arg(long, value_delimiter = ',')]
    cutoffs: Option<Vec<usize>>,

    /// Output format: json | csv | text.
    #[arg(long)]
    format: Option<OutputFormat>,

    /// Output path; stdout when omitted. FOCKALG_OUT overrides.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Random seed; a fixed seed makes the report bytes reproducible.
    #[arg(long)]
    seed: Option<u64>,

    /// Columns for the text format.
    #[arg(long, value_delimiter = ',')]
    columns: Option<Vec<String>>,
}

fn main() -> ExitCode {
    match run() {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> anyhow::Result<bool> {
    // Parallelism degree is the only other environment override.
    if let Ok(par) = std::env::var("FOCKALG_PARALLELISM") {
        if let Ok(threads) = par.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }

    let cli = Cli::parse();
    let Command::Verify(args) = cli.command;
    let suite: SuiteName = args.suite.parse()?;

    let mut cfg = SuiteConfig::default();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        cfg.apply_file(&text, suite.as_str())?;
    }
    if let Some(d) = args.d {
        cfg.d_list = d;
    }
    if let Some(n) = args.nmax {
        cfg.n_max = n;
    }
    if let Some(t) = args.t_grid {
        cfg.t_grid = t;
    }
    if let Some(grid) = args.lambda_grid {
        cfg.lambda_grid = grid;
    }
    if let Some(cutoffs) = args.cutoffs {
        cfg.cutoffs = cutoffs;
    }
    if let Some(format) = args.format {
        cfg.format = format;
    }
    if let Some(out) = args.out {
        cfg.out = Some(out);
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    cfg.apply_env();

    let report = run_suite(suite, &cfg)?;
    let body = match cfg.format {
        OutputFormat::Json => report.to_json()?,
        OutputFormat::Csv => report.to_csv()?,
        OutputFormat::Text => {
            let default_cols = ["id", "params", "value", "bound", "cmp", "pass"];
            let columns: Vec<&str> = match &args.columns {
                Some(cols) => cols.iter().map(String::as_str).collect(),
                None => default_cols.to_vec(),
            };
            render_table(&report, &columns)?
        }
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, body)
            .with_context(|| format!("writing report to {}", path.display()))?,
        None => print!("{body}"),
    }
    Ok(report.all_pass())
}
