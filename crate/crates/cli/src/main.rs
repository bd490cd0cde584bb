use anyhow::{bail, Result};
use clap::{Parser, Subcommand};
use spinelim_cli::{commands, Config};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "spinelim",
    version,
    about = "Attractor and rotation-set experiments for fattened 1-D map families"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Experiment configuration (key = value lines)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Override the configured rng seed
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Size of the worker thread pool
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample an attractor cloud (and optional box cover)
    Attractor,
    /// Rasterize an Arnold tongue
    Tongues,
    /// Orbit rotation numbers against the envelope interval
    Rotation,
    /// Hausdorff continuity scan over a tent-parameter grid
    Continuity,
    /// Match fattened periodic points against the exact tent enumeration
    Periodic,
    /// Periodic-orbit entropy estimates for the tent family
    Entropy,
    /// Run the invariant and acceptance check suite
    Verify,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .ok();
    }
    if let Cmd::Verify = cli.cmd {
        let ok = commands::cmd_verify()?;
        if !ok {
            std::process::exit(1);
        }
        return Ok(());
    }
    let Some(path) = cli.config.as_deref() else {
        bail!("--config is required for this command");
    };
    let config = Config::from_file(path)?;
    let written = match cli.cmd {
        Cmd::Attractor => commands::cmd_attractor(&config, &cli.out, cli.seed)?,
        Cmd::Tongues => commands::cmd_tongues(&config, &cli.out, cli.seed)?,
        Cmd::Rotation => commands::cmd_rotation(&config, &cli.out, cli.seed)?,
        Cmd::Continuity => commands::cmd_continuity(&config, &cli.out, cli.seed)?,
        Cmd::Periodic => commands::cmd_periodic(&config, &cli.out, cli.seed)?,
        Cmd::Entropy => commands::cmd_entropy(&config, &cli.out, cli.seed)?,
        Cmd::Verify => unreachable!(),
    };
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}
