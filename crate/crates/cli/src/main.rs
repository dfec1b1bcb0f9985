use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use sqfluor_cli::commands::{aeff_table, comments, describe, emit, schmidt_table, sweep, RunOptions};
use sqfluor_cli::{load_config, selftest};

#[derive(Parser)]
#[command(name = "sqfluor", version, about = "Two-photon fluorescence with classical and squeezed light")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path; defaults to `output.csv` from the config, else stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for sweep rows (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Leave the timestamp out so identical configs give identical files.
    #[arg(long)]
    reproducible: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Effective beam-cloud area for each Rayleigh-range choice.
    Aeff(Common),
    /// CW squeezed vs classical rates over bandwidth columns and gain.
    CwSweep(Common),
    /// Pulsed squeezed vs classical probabilities over panels and photon number.
    PulsedSweep(Common),
    /// Schmidt weights of every pulsed panel.
    Schmidt(Common),
    /// Load a config and print what it resolves to.
    ValidateConfig(Common),
    /// Run the built-in oracle checks.
    SelfTest {
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn pool(jobs: Option<usize>) -> Result<()> {
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .context("configuring the thread pool")?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let (name, common) = match &cli.command {
        Command::SelfTest { jobs } => {
            pool(*jobs)?;
            let checks = selftest::run()?;
            let mut ok = true;
            for c in &checks {
                let pass = c.pass();
                ok &= pass;
                println!(
                    "{} {:<44} value={:.6e} target={:.6e} rel_tol={:e}",
                    if pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.value,
                    c.target,
                    c.rel_tol
                );
            }
            return Ok(ok);
        }
        Command::Aeff(c) => ("aeff", c),
        Command::CwSweep(c) => ("cw-sweep", c),
        Command::PulsedSweep(c) => ("pulsed-sweep", c),
        Command::Schmidt(c) => ("schmidt", c),
        Command::ValidateConfig(c) => ("validate-config", c),
    };
    pool(common.jobs)?;
    let cfg = load_config(&common.config).with_context(|| format!("loading {}", common.config.display()))?;
    let opts = RunOptions {
        out: common.out.clone(),
        reproducible: common.reproducible,
    };
    match &cli.command {
        Command::ValidateConfig(_) => {
            for line in describe(&cfg)? {
                println!("{line}");
            }
        }
        Command::Aeff(_) => {
            let t = aeff_table(&cfg)?;
            emit(&t, &comments(&cfg, name, &opts, None), &cfg, &opts)?;
        }
        Command::Schmidt(_) => {
            let path = opts.out.clone().or_else(|| cfg.output.csv.clone());
            let stem = path.as_ref().map(|p| p.with_extension(""));
            let t = schmidt_table(&cfg, stem.as_deref())?;
            emit(&t, &comments(&cfg, name, &opts, None), &cfg, &opts)?;
        }
        Command::CwSweep(_) | Command::PulsedSweep(_) => {
            let (out, a_eff) = sweep(&cfg, matches!(cli.command, Command::CwSweep(_)))?;
            for e in &out.errors {
                eprintln!("row {}: {}", e.row, e.message);
            }
            emit(&out.table, &comments(&cfg, name, &opts, Some(a_eff)), &cfg, &opts)?;
        }
        Command::SelfTest { .. } => unreachable!(),
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
