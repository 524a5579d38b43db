use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;
use torelli_cli::{
    cycle, decompose, dims, run_suite, CliError, ConfigDocument, Pipeline, Suite, SuiteOptions,
};
use torelli_core::DEFAULT_TERM_CAP;

/// Exact symplectic representation theory and Johnson images of abelian
/// cycles in the Torelli group.
#[derive(Debug, Parser)]
#[command(name = "torelli", version)]
struct Cli {
    /// Genus.
    #[arg(long, global = true)]
    g: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled configurations.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for verification suites.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Abort operations estimated to produce more sparse terms than this.
    #[arg(long = "term-cap", global = true, default_value_t = DEFAULT_TERM_CAP)]
    term_cap: u64,
    /// Also write the JSON output to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Random configurations per size in the sampled suites.
    #[arg(long, global = true, default_value_t = 20)]
    samples: usize,
    /// Record per-check wall time (makes reports run-dependent).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension of the irreducible V_λ, e.g. `dims 2,2,1,1 --g 6`.
    Dims {
        /// Partition: `2,2,1,1`, `2^2,1^2`, or `""` for the trivial one.
        partition: String,
    },
    /// Decompose a shape into irreducibles, e.g. `decompose 'wedge(2,w3)' --g 6`.
    Decompose {
        /// `H`, `w3`, `wedge(n, S)` or `tensor(S, ...)`.
        shape: String,
        /// Only print irreducibles whose partition has this weight.
        #[arg(long)]
        weight: Option<u32>,
    },
    /// Summarise the image of a bounding-pair configuration.
    Cycle {
        /// JSON configuration document.
        path: PathBuf,
        #[arg(long, value_enum, default_value = "none")]
        pipeline: Pipeline,
        /// Print every term of the result.
        #[arg(long)]
        terms: bool,
    },
    /// Run a verification suite; exits 0 iff every check passes.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

fn need_genus(g: Option<usize>) -> Result<usize, CliError> {
    g.ok_or_else(|| CliError::Usage("this command needs --g".into()))
}

fn write_out(path: Option<&Path>, json: &Value) -> Result<(), CliError> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(json).expect("values serialize") + "\n";
        std::fs::write(p, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn emit(cli: &Cli, text: String, json: Value) -> Result<(), CliError> {
    write_out(cli.out.as_deref(), &json)?;
    let body = if cli.json {
        serde_json::to_string_pretty(&json).expect("values serialize") + "\n"
    } else {
        text
    };
    // a closed reader (`| head`) is not an error
    match std::io::stdout().lock().write_all(body.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(CliError::Usage(format!("cannot write to stdout: {e}")))
        }
        _ => Ok(()),
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    match &cli.command {
        Command::Dims { partition } => {
            let g = need_genus(cli.g)?;
            let d = dims(partition, g)?;
            emit(cli, format!("{d}\n"), Value::String(d.to_string()))?;
        }
        Command::Decompose { shape, weight } => {
            let g = need_genus(cli.g)?;
            let d = decompose(shape, g, *weight, cli.term_cap)?;
            emit(cli, d.to_text(), d.to_json())?;
        }
        Command::Cycle {
            path,
            pipeline,
            terms,
        } => {
            let mut config = ConfigDocument::read(path)?.to_configuration()?;
            if let Some(g) = cli.g {
                config = config.padded(g)?;
            }
            let s = cycle(&config, *pipeline, *terms)?;
            emit(cli, s.to_text(), s.to_json())?;
        }
        Command::Verify { suite } => {
            let opts = SuiteOptions {
                seed: cli.seed,
                samples: cli.samples,
                jobs: cli.jobs.map(|j| j as usize),
                term_cap: cli.term_cap,
                timings: cli.timings,
            };
            let report = run_suite(*suite, &opts);
            let json = serde_json::to_value(&report).expect("reports serialize");
            emit(cli, report.to_text(), json)?;
            if !report.passes() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
