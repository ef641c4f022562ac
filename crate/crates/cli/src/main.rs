use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eitprop_cli::config::{self, parse_methods, Overrides};
use eitprop_cli::{output, presets, run, CliError, WORKERS_ENV};

/// Probe pulse propagation, storage and retrieval in EIT media.
#[derive(Parser)]
#[command(name = "eitprop", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a scenario and write CSV fields plus a JSON report.
    Run {
        /// TOML config; optional when --preset is given.
        config: Option<PathBuf>,
        /// Base preset; keys in the config override it.
        #[arg(long)]
        preset: Option<String>,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Comma-separated methods, replacing the configured list.
        #[arg(long)]
        methods: Option<String>,
    },
    /// List the built-in presets.
    ListPresets,
    /// Check a config without solving.
    Validate {
        config: PathBuf,
        #[arg(long)]
        preset: Option<String>,
    },
    /// Print a preset as a complete config file.
    DumpPreset { name: String },
}

fn configure_workers() -> Result<(), CliError> {
    let Ok(value) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("{WORKERS_ENV}={value:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run {
            config,
            preset,
            out,
            methods,
        } => {
            configure_workers()?;
            let overrides = Overrides {
                preset: preset.clone(),
                out,
                methods: methods.as_deref().map(parse_methods).transpose()?,
            };
            let cfg = match (&config, &preset) {
                (Some(path), _) => config::load(path, &overrides)?,
                (None, Some(name)) => config::from_preset(name, &overrides)?,
                (None, None) => {
                    return Err(CliError::Config("give a config file or --preset".into()));
                }
            };
            let summary = run(&cfg)?;
            for c in &summary.computed {
                print!("{}", output::summary(c));
                for f in &c.fields {
                    for w in &f.warnings {
                        eprintln!("warning: {}: {}: {w}", c.config.name, f.method);
                    }
                }
            }
            println!("wrote {} files", summary.files.len());
        }
        Command::ListPresets => {
            for p in presets::PRESETS {
                println!("{:<12} {}", p.name, p.description);
                println!("{:<12}   {}", "", p.parameters);
            }
        }
        Command::Validate { config, preset } => {
            let overrides = Overrides {
                preset,
                ..Default::default()
            };
            let cfg = config::load(&config, &overrides)?;
            let variants = cfg.variants()?.len();
            println!(
                "{}: ok ({} methods, {} depths, {variants} scenario(s))",
                config.display(),
                cfg.run.methods.len(),
                cfg.run.z.len()
            );
        }
        Command::DumpPreset { name } => {
            let cfg = presets::preset(&name)
                .ok_or_else(|| CliError::Config(format!("unknown preset {name:?}")))?;
            print!("{}", cfg.to_toml()?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
