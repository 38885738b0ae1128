use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use tcaco::engine::Protocol;
use tcaco::experiment::{load_experiment, run_experiment, EmitSet, ExperimentError, Overrides};

/// Run protocol × replicate lifetime sweeps and write CSV/JSON results.
#[derive(Debug, Parser)]
#[command(name = "tcaco", version)]
struct Args {
    /// JSON config file; absent keys take their defaults.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Comma-separated protocols: tc_aco, dist_aco, trust_greedy, naive_minhop.
    #[arg(long, value_name = "NAME[,NAME...]", value_delimiter = ',')]
    protocol: Option<Vec<Protocol>>,
    #[arg(long, value_name = "N")]
    replicates: Option<usize>,
    /// Base seed; replicate k uses seed + k.
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    #[arg(long, value_name = "N")]
    max_cycles: Option<u64>,
    #[arg(long, value_name = "DIR", env = "TCACO_OUT")]
    out: Option<PathBuf>,
    /// Comma-separated outputs: per-cycle, summary, trust, routes.
    #[arg(long, value_name = "KINDS", default_value = "per-cycle,summary")]
    emit: EmitSet,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let overrides = Overrides {
        protocols: args.protocol,
        replicates: args.replicates,
        seed: args.seed,
        max_cycles: args.max_cycles,
        out_dir: args.out,
        emit: Some(args.emit),
    };
    let result = load_experiment(args.config.as_deref(), overrides)
        .map_err(ExperimentError::from)
        .and_then(|spec| run_experiment(&spec));
    match result {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
