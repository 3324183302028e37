use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hypcone::PointQ;
use hypcone_cli::{parse_point, run, CliError, Command, RunArgs};

/// Hyperbolicity checks, cone components and plane-curve orientations.
#[derive(Parser)]
#[command(name = "hyp", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Is `h` hyperbolic with respect to `--e`?
    Check(Flags),
    /// Cone membership of `--x` relative to `--e`, with eigenvalue enclosures.
    Cone(Flags),
    /// Sample directions and group the hyperbolic ones into cones.
    Components(Flags),
    /// Compare orientations induced by `--e` and `--x` on a plane curve.
    Orient(Flags),
    /// Count cones on random planes through two directions.
    Section(Flags),
    /// At most one pair of cones for an irreducible polynomial?
    Verify(Flags),
}

#[derive(Args)]
struct Flags {
    /// Corpus id or a file holding polynomial text.
    #[arg(long)]
    poly: String,
    /// Direction, e.g. `1,0,1/2`.
    #[arg(long, value_parser = point)]
    e: Option<PointQ>,
    /// Second direction.
    #[arg(long, value_parser = point)]
    x: Option<PointQ>,
    /// Sphere samples, or curve points for `orient`.
    #[arg(long)]
    samples: Option<usize>,
    /// Random lines per hyperbolicity check.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write a figure here (plane curves only).
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Corpus JSON; defaults to $HYP_CORPUS, then the bundled corpus.
    #[arg(long)]
    corpus: Option<PathBuf>,
}

fn point(s: &str) -> Result<PointQ, String> {
    parse_point(s).map_err(|e| e.to_string())
}

fn execute(cmd: Command, flags: Flags) -> Result<i32, CliError> {
    let args = RunArgs {
        poly: flags.poly,
        e: flags.e,
        x: flags.x,
        samples: flags.samples,
        trials: flags.trials,
        seed: flags.seed,
        svg: flags.svg,
        corpus: flags.corpus,
    };
    let out = run(cmd, &args)?;
    if let (Some(path), Some(svg)) = (&args.svg, &out.svg) {
        std::fs::write(path, svg).map_err(|source| CliError::Output {
            path: path.clone(),
            source,
        })?;
    }
    let mut stdout = std::io::stdout().lock();
    // a closed pipe (e.g. `| head`) is not an error of the run
    let _ = writeln!(stdout, "{}", out.report.to_pretty());
    Ok(out.status.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (cmd, flags) = match cli.command {
        Sub::Check(f) => (Command::Check, f),
        Sub::Cone(f) => (Command::Cone, f),
        Sub::Components(f) => (Command::Components, f),
        Sub::Orient(f) => (Command::Orient, f),
        Sub::Section(f) => (Command::Section, f),
        Sub::Verify(f) => (Command::Verify, f),
    };
    match execute(cmd, flags) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            let body = serde_json::json!({ "error": { "code": e.code(), "message": e.to_string() } });
            eprintln!("{body}");
            ExitCode::from(1)
        }
    }
}
