use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pals::campaign::{cmd_generate, cmd_stats, effective_jobs, run_campaign, CampaignConfig};
use pals::tsp::InstanceKind;

#[derive(Parser)]
#[command(name = "pals-bench", version, about = "Bounded-archive policy benchmarks on the bi-objective TSP")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a bi-objective instance file.
    Generate {
        #[arg(long)]
        kind: InstanceKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed_a: u64,
        #[arg(long)]
        seed_b: u64,
        /// Output file, or an existing directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a campaign described by a key: value config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Worker threads; PA_JOBS takes precedence.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Summaries and rank tables from a metrics CSV.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate { kind, n, seed_a, seed_b, out } => {
            cmd_generate(kind, n, seed_a, seed_b, &out).map(|p| println!("{}", p.display()))
        }
        Command::Run { config, jobs } => CampaignConfig::load(&config).and_then(|cfg| {
            let jobs = effective_jobs(jobs)?;
            let out = run_campaign(&cfg, jobs)?;
            println!(
                "{} runs on {} workers, metrics in {}",
                out.records.len(),
                jobs,
                cfg.output.join("metrics.csv").display()
            );
            Ok(())
        }),
        Command::Stats { input, out } => cmd_stats(&input, &out).map(|r| {
            println!("{} summary rows, {} rank rows in {}", r.summary.len(), r.ranks.len(), out.display())
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
