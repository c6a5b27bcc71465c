use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nsk_cli::sweep::{member_dir, parse_vary, with_override};
use nsk_cli::{load_config, run_scenario, RunOutcome};

#[derive(Parser)]
#[command(name = "nsk", version, about = "Navier-Stokes-Korteweg wave stability runs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured scenario.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides `output.dir`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse and validate a configuration without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run the scenario once per value of one key, in parallel.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// `KEY=v1,v2,...` with a dotted key such as `perturbation.phi`.
        #[arg(long)]
        vary: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn report(dir: &std::path::Path, outcome: &RunOutcome) {
    match &outcome.reason {
        None => println!("{}: ok", dir.display()),
        Some(r) => println!("{}: {r}", dir.display()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { config } => match load_config(&config) {
            Ok(_) => {
                println!("{}: valid", config.display());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("{}: {e}", config.display());
                ExitCode::from(2)
            }
        },
        Command::Run { config, out } => {
            let cfg = match load_config(&config) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("{}: {e}", config.display());
                    return ExitCode::from(2);
                }
            };
            let dir = out.unwrap_or_else(|| cfg.output.dir.clone());
            match run_scenario(&cfg, &dir) {
                Ok(o) => {
                    report(&dir, &o);
                    if o.success {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::FAILURE
                    }
                }
                Err(e) => {
                    eprintln!("{}: {e}", dir.display());
                    ExitCode::FAILURE
                }
            }
        }
        Command::Sweep { config, vary, out } => {
            let text = match std::fs::read_to_string(&config) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("{}: {e}", config.display());
                    return ExitCode::from(2);
                }
            };
            let (key, values) = match parse_vary(&vary) {
                Ok(kv) => kv,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let mut members = Vec::new();
            for raw in &values {
                match with_override(&text, &key, raw) {
                    Ok(cfg) => {
                        let base = out.clone().unwrap_or_else(|| cfg.output.dir.clone());
                        members.push((member_dir(&base, &key, raw), cfg));
                    }
                    Err(e) => {
                        eprintln!("{key}={raw}: {e}");
                        return ExitCode::from(2);
                    }
                }
            }
            let ok = std::thread::scope(|s| {
                let handles: Vec<_> = members
                    .iter()
                    .map(|(dir, cfg)| s.spawn(move || (dir, run_scenario(cfg, dir))))
                    .collect();
                let mut ok = true;
                for h in handles {
                    let (dir, res) = h.join().expect("sweep member panicked");
                    match res {
                        Ok(o) => {
                            report(dir, &o);
                            ok &= o.success;
                        }
                        Err(e) => {
                            eprintln!("{}: {e}", dir.display());
                            ok = false;
                        }
                    }
                }
                ok
            });
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
