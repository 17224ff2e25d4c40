use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sbc_core::flow::Precision;
use sbc_lab::artifacts::write_all;
use sbc_lab::config::ExperimentConfig;
use sbc_lab::presets::list_presets;
use sbc_lab::run::{run, Status};
use sbc_lab::{CliError, EXIT_CONFIG};

#[derive(Parser)]
#[command(name = "sbc-lab", version, about = "Experiments near the planar four-body simultaneous binary collision")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one trajectory and record energy and angular momentum.
    Simulate(RunArgs),
    /// Run the block map for given directions and epsilons.
    Blockmap(RunArgs),
    /// Sweep epsilon and fit the exit exponents.
    Exponent(RunArgs),
    /// Conservation drifts and lemma residuals.
    Invariants(RunArgs),
    /// Drift of the integrals on the collision manifold and its normal spectrum.
    CollisionManifold(RunArgs),
    /// List the built-in configs, or write them as JSON files with --out.
    ListPresets {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PrecisionArg {
    Standard,
    Extended,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Artifact directory; defaults to `output.dir` of the config, then `sbc-out`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the precision of the config.
    #[arg(long, value_enum)]
    precision: Option<PrecisionArg>,
    /// Worker threads; the output does not depend on this.
    #[arg(long)]
    threads: Option<usize>,
}

fn execute(kind: &str, args: &RunArgs) -> Result<(), CliError> {
    let mut cfg = ExperimentConfig::load(&args.config)?;
    if cfg.experiment.kind() != kind {
        return Err(CliError::Config {
            path: "experiment".into(),
            message: format!("config describes a `{}` experiment, not `{kind}`", cfg.experiment.kind()),
        });
    }
    if let Some(p) = args.precision {
        cfg.precision = match p {
            PrecisionArg::Standard => Precision::Standard,
            PrecisionArg::Extended => Precision::Extended,
        };
    }
    cfg.integrator.precision = cfg.precision;
    if let Some(n) = args.threads {
        if n == 0 {
            return Err(CliError::Config { path: "--threads".into(), message: "must be at least 1".into() });
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config { path: "--threads".into(), message: e.to_string() })?;
    }
    let dir = args.out.clone().or_else(|| cfg.output.dir.clone()).unwrap_or_else(|| PathBuf::from("sbc-out"));
    let out = run(&cfg);
    let written = write_all(&dir, &cfg.name, &out.tables, &out.summary)?;
    for p in &written {
        println!("{}", p.display());
    }
    match out.status {
        Status::Failed(msg) => Err(CliError::Failed(msg)),
        Status::Partial { failed, total } => {
            eprintln!("warning: {failed} of {total} parts failed; see the summary");
            Ok(())
        }
        Status::Complete => Ok(()),
    }
}

fn presets(out: Option<&Path>) -> Result<(), CliError> {
    for p in list_presets() {
        match out {
            Some(dir) => {
                std::fs::create_dir_all(dir)
                    .map_err(|e| CliError::Write { path: dir.to_path_buf(), message: e.to_string() })?;
                let path = dir.join(format!("{}.json", p.name));
                std::fs::write(&path, p.config.to_json() + "\n")
                    .map_err(|e| CliError::Write { path: path.clone(), message: e.to_string() })?;
                println!("{}", path.display());
            }
            None => println!("{:<20} {:<20} {}", p.name, p.config.experiment.kind(), p.description),
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let r = match &cli.command {
        Command::Simulate(a) => execute("simulate", a),
        Command::Blockmap(a) => execute("blockmap", a),
        Command::Exponent(a) => execute("exponent", a),
        Command::Invariants(a) => execute("invariants", a),
        Command::CollisionManifold(a) => execute("collision-manifold", a),
        Command::ListPresets { out } => presets(out.as_deref()),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
