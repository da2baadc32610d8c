use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use jsmimo_cli::{parse_config, run_scenario, write_csv, Preset, RunOptions, Scenario};

#[derive(Parser)]
#[command(
    name = "jsmimo",
    version,
    about = "Spectral-efficiency sweeps for jammed massive MIMO uplinks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write CSV.
    Run {
        /// Scenario file (`key = value` lines).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Built-in scenario; with --config it is the base the file overrides,
        /// unless the file names its own preset.
        #[arg(long)]
        preset: Option<Preset>,
        #[arg(long)]
        trials_outer: Option<usize>,
        #[arg(long)]
        trials_inner: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Leave out the timestamp line so repeated runs are byte-identical.
        #[arg(long)]
        reproducible: bool,
        /// Evaluate jammer draws on a single thread.
        #[arg(long)]
        serial: bool,
    },
}

fn main() -> anyhow::Result<()> {
    let Command::Run {
        config,
        preset,
        trials_outer,
        trials_inner,
        seed,
        out,
        reproducible,
        serial,
    } = Cli::parse().command;

    let mut sc: Scenario = match (&config, preset) {
        (Some(path), p) => parse_config(path, p).with_context(|| format!("reading {}", path.display()))?,
        (None, Some(p)) => Scenario::preset(p),
        (None, None) => bail!("pass --config or --preset"),
    };
    if let Some(n) = trials_outer {
        sc.n_outer = n;
    }
    if let Some(n) = trials_inner {
        sc.n_inner = n;
    }
    if let Some(s) = seed {
        sc.base.seed = s;
    }
    if out.is_some() {
        sc.out_path = out;
    }
    sc.validate()?;

    let opts = RunOptions {
        reproducible,
        parallel: !serial,
    };
    let rows = run_scenario(&sc, opts)?;
    match &sc.out_path {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            write_csv(&mut w, &rows, &sc, opts)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write_csv(&mut w, &rows, &sc, opts)?;
        }
    }
    Ok(())
}
