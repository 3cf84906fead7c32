use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ergm_core::experiments::{analyze, parse_spec, replay, run_dataset, DatasetSpec, RunManifest, RunOptions};
use ergm_core::landscape::classify_regime;
use ergm_core::oracle::oracle_check;
use ergm_core::par::threads_from_env;
use ergm_core::Error;

#[derive(Debug, Parser)]
#[command(name = "ergm", version, about = "Sample ERGMs inside metastable wells and analyse the runs.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the stationary points of the landscape as CSV; the regime goes to stderr.
    Landscape {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run a dataset and write raw histograms, summaries and fits.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        force: bool,
    },
    /// Like `simulate`, with every chain coupled to an Erdős–Rényi chain.
    Couple {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        force: bool,
    },
    /// Recompute summaries and fits from an existing run directory.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the sampler against exact enumeration on a tiny vertex set.
    OracleCheck {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Re-run the dataset recorded in a manifest.
    Replay {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        force: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::MissingInputs(paths) = &e {
                for p in paths {
                    eprintln!("  missing: {}", p.display());
                }
            }
            ExitCode::from(if e.is_config() { 1 } else { 2 })
        }
    }
}

fn options(force: bool) -> RunOptions {
    RunOptions { force, threads: threads_from_env(), skip_analysis: false }
}

fn read_text(path: &Path) -> ergm_core::Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })
}

fn run(command: Command) -> ergm_core::Result<()> {
    match command {
        Command::Landscape { config } => {
            let spec = parse_spec(&read_text(&config)?)?;
            let report = classify_regime(&spec)?;
            let mut out = std::io::stdout().lock();
            let mut emit = || -> std::io::Result<()> {
                writeln!(out, "p,L,L2,kind,global")?;
                for pt in &report.stationary_points {
                    writeln!(out, "{},{},{},{},{}", pt.p, pt.value, pt.d2, pt.kind.name(), report.is_global(pt))?;
                }
                Ok(())
            };
            emit().map_err(|source| Error::Io { path: "<stdout>".into(), source })?;
            eprintln!("regime: {}", report.regime.name());
        }
        Command::Simulate { config, out, force } => {
            let ds = DatasetSpec::from_file(&config)?;
            summarise(&run_dataset(&ds, &out, &options(force))?, &out);
        }
        Command::Couple { config, out, force } => {
            let ds = DatasetSpec::from_file(&config)?.coupled();
            summarise(&run_dataset(&ds, &out, &options(force))?, &out);
        }
        Command::Stats { input, out } => {
            let report = analyze(&input, &out)?;
            println!("label,slope,intercept,residual");
            for f in &report.fits {
                println!("{},{},{},{}", f.label, f.slope, f.intercept, f.residual);
            }
            for (what, why) in &report.skipped {
                eprintln!("skipped {what}: {why}");
            }
        }
        Command::OracleCheck { config, n } => {
            let spec = parse_spec(&read_text(&config)?)?;
            let r = oracle_check(&spec, n)?;
            println!("n = {}, states = {}", r.n, r.states);
            println!("normalization_error = {:e}", r.normalization_error);
            println!("balance_max_abs = {:e}", r.balance.max_abs);
            println!("balance_max_rel = {:e}", r.balance.max_rel);
            println!("edge_marginal = {}", r.edge_marginal);
            println!("marginal_spread = {:e}", r.marginal_spread);
        }
        Command::Replay { manifest, out, force } => {
            summarise(&replay(&manifest, &out, &options(force))?, &out);
        }
    }
    Ok(())
}

fn summarise(m: &RunManifest, out: &Path) {
    eprintln!(
        "{}: p* = {}, n = {:?}, {} files in {}",
        m.dataset,
        m.p_star,
        m.n_values,
        m.files.len(),
        out.display()
    );
}
