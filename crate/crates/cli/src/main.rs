use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wiretap_cli::run::{self, BscOptions};
use wiretap_cli::{parse_config, CliError, ScenarioConfig};
use wiretap_secrecy::metrics::Axis;
use wiretap_secrecy::scenarios::BobSummary;

#[derive(Parser)]
#[command(
    name = "wiretap",
    version,
    about = "Short-blocklength secrecy metric experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Overrides `run.seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides `run.trials`.
    #[arg(long)]
    trials: Option<u64>,
    /// Overrides `run.out_dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; changes speed only.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form curves.
    Analytic(Common),
    /// Monte Carlo sweep of the configured scenario.
    Sweep(Common),
    /// LLR divergence sweep of the keyed scenario.
    Kl(Common),
    /// Security gap between two curve files.
    Gap {
        #[arg(long)]
        main: PathBuf,
        #[arg(long)]
        bob_target: f64,
        #[arg(long)]
        eve: PathBuf,
        #[arg(long)]
        eve_target: f64,
        #[arg(long, value_parser = parse_axis, default_value = "snr_db")]
        axis: Axis,
        /// Also write the JSON result here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Effective binary symmetric channel report for Eve.
    ReduceBsc {
        #[command(flatten)]
        common: Common,
        /// Eve's BER-CDF^ac curve; simulated from the config when omitted.
        #[arg(long)]
        curve: Option<PathBuf>,
        /// Bob's block-failure rate at his operating point.
        #[arg(long, requires = "bob_ber")]
        bob_failure: Option<f64>,
        /// Bob's post-decoder BER at his operating point.
        #[arg(long, requires = "bob_failure")]
        bob_ber: Option<f64>,
    },
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    match s {
        "snr_db" => Ok(Axis::SnrDb),
        "ebno_db" => Ok(Axis::EbN0Db),
        _ => Err(format!("unknown axis `{s}` (snr_db or ebno_db)")),
    }
}

fn load(c: &Common) -> Result<ScenarioConfig, CliError> {
    let mut cfg = parse_config(&c.config)?;
    if let Some(s) = c.seed {
        cfg.run.seed = s;
    }
    if let Some(t) = c.trials {
        cfg.run.trials = t;
    }
    if let Some(o) = &c.out {
        cfg.run.out_dir = o.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn with_pool<T>(
    workers: Option<usize>,
    f: impl FnOnce() -> Result<T, CliError> + Send,
) -> Result<T, CliError>
where
    T: Send,
{
    match workers {
        None => f(),
        Some(0) => Err(CliError::Config("--workers must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(CliError::runtime)?
            .install(f),
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let report = |m: wiretap_cli::RunManifest| {
        for f in &m.outputs {
            println!("{}", f.path);
        }
    };
    match cli.command {
        Command::Analytic(c) => {
            let cfg = load(&c)?;
            report(with_pool(c.workers, || run::analytic(&cfg))?);
        }
        Command::Sweep(c) => {
            let cfg = load(&c)?;
            report(with_pool(c.workers, || run::sweep(&cfg))?);
        }
        Command::Kl(c) => {
            let cfg = load(&c)?;
            report(with_pool(c.workers, || run::kl(&cfg))?);
        }
        Command::Gap {
            main,
            bob_target,
            eve,
            eve_target,
            axis,
            out,
        } => {
            let v = run::gap(&main, bob_target, &eve, eve_target, axis)?;
            let text = serde_json::to_string_pretty(&v).map_err(CliError::runtime)? + "\n";
            if let Some(p) = out {
                std::fs::write(&p, &text)
                    .map_err(|e| CliError::runtime(format!("{}: {e}", p.display())))?;
            }
            print!("{text}");
        }
        Command::ReduceBsc {
            common,
            curve,
            bob_failure,
            bob_ber,
        } => {
            let cfg = load(&common)?;
            let bob = match (bob_failure, bob_ber) {
                (Some(block_failure_rate), Some(ber)) => Some(BobSummary {
                    block_failure_rate,
                    ber,
                }),
                _ => None,
            };
            let opts = BscOptions { curve, bob };
            report(with_pool(common.workers, || run::reduce_bsc(&cfg, &opts))?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wiretap: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
