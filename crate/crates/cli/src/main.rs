use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use sharedcache::placement::place;
use sharedcache_cli::instance::InstanceFile;
use sharedcache_cli::simulate::{placement_json, simulate, SimulateOptions};
use sharedcache_cli::sweep::{parse_profiles, render, Format, SweepSpec};
use sharedcache_cli::verify::{run_verify, VerifyCaps};

/// Shared-cache coded caching: simulation, memory-delay curves and converse checks.
#[derive(Parser)]
#[command(name = "scl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run placement and delivery on an instance file and write the transcript.
    Simulate {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Bytes per file; must be a multiple of the subpacketization.
        #[arg(long)]
        file_len: Option<usize>,
    },
    /// Optimal delay curves for a list of profiles.
    Sweep {
        #[arg(long = "k")]
        num_users: usize,
        #[arg(long = "caches")]
        num_caches: usize,
        /// `a,b,c;d,e` or `all`.
        #[arg(long)]
        profiles: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Cross-check scheme, formulas and converse on every small instance.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_users: usize,
        #[arg(long, default_value_t = 4)]
        max_caches: usize,
        #[arg(long, default_value_t = 6)]
        max_files: usize,
        #[arg(long, default_value_t = 100_000)]
        class_cap: u128,
        /// Only these profiles, zero-padded to their cache count.
        #[arg(long)]
        profiles: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the cache contents of an instance.
    Placement {
        #[arg(long)]
        instance: PathBuf,
    },
}

fn seed() -> Result<u64> {
    match std::env::var("SCL_SEED") {
        Ok(v) => v.parse().with_context(|| format!("SCL_SEED={v:?} is not an integer")),
        Err(_) => Ok(0),
    }
}

/// `a,b;c` with each profile padded to its own length; verify filters by shape.
fn parse_verify_profiles(text: &str) -> Result<Vec<sharedcache::model::Profile>> {
    let mut out = Vec::new();
    for chunk in text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        let counts: Vec<usize> = chunk.split(',').map(|v| v.trim().parse()).collect::<Result<_, _>>()?;
        out.push(sharedcache::model::Profile::new(counts).with_context(|| format!("profile {chunk:?}"))?);
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Simulate {
            instance,
            out,
            file_len,
        } => {
            let problem = InstanceFile::load(&instance)?.into_problem()?;
            let outcome = simulate(
                &problem,
                SimulateOptions {
                    file_len,
                    seed: seed()?,
                },
            )?;
            fs::write(&out, serde_json::to_string_pretty(&outcome.file)?)
                .with_context(|| format!("writing {}", out.display()))?;
            for d in &outcome.diagnostics {
                eprintln!("{d}");
            }
            Ok(outcome.passed)
        }
        Command::Sweep {
            num_users,
            num_caches,
            profiles,
            out,
            format,
        } => {
            let spec = SweepSpec {
                num_users,
                num_caches,
                profiles: parse_profiles(&profiles, num_users, num_caches)?,
                gammas: None,
            };
            let format = match format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            };
            fs::write(&out, render(&spec.run()?, format)).with_context(|| format!("writing {}", out.display()))?;
            Ok(true)
        }
        Command::Verify {
            max_users,
            max_caches,
            max_files,
            class_cap,
            profiles,
            out,
        } => {
            let profiles = profiles.as_deref().map(parse_verify_profiles).transpose()?;
            let report = run_verify(&VerifyCaps {
                max_users,
                max_caches,
                max_files,
                class_cap,
                profiles,
            })?;
            fs::write(&out, serde_json::to_string_pretty(&report)?)
                .with_context(|| format!("writing {}", out.display()))?;
            for s in &report.skipped {
                eprintln!("warning: skipped {}: {}", s.instance, s.reason);
            }
            if let Some(f) = report.failures.first() {
                eprintln!("first failure: {} on {}: {}", f.check, f.instance, f.detail);
            }
            Ok(report.passed)
        }
        Command::Placement { instance } => {
            let problem = InstanceFile::load(&instance)?.into_problem()?;
            let placement = place(&problem.instance)?;
            println!("{}", serde_json::to_string_pretty(&placement_json(&placement))?);
            Ok(true)
        }
    }
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
