use std::fs;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use tridot_cli::commands::{cmd_fig2, cmd_run, cmd_verify, CliError};
use tridot_cli::config::{units_help, RunConfig};

/// Controlled-phase gate on three coupled quantum dots.
#[derive(Debug, Parser)]
#[command(name = "tridot", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate one configuration and write a fidelity CSV per temperature.
    Run(Common),
    /// Write the fifteen preset trajectories and a gnuplot script.
    Fig2(Common),
    /// Check the model against its oracles; exit status 0 only if all pass.
    Verify(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// key = value configuration file.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output file (run) or directory (fig2).
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// none, spontaneous or full.
    #[arg(long)]
    noise: Option<String>,
    /// ring or line.
    #[arg(long)]
    configuration: Option<String>,
    /// low or high.
    #[arg(long)]
    transition: Option<String>,
    /// Bath temperature in K; repeat for several runs.
    #[arg(long = "temperature", value_name = "K")]
    temperatures: Vec<f64>,
    /// Simulated span in ps.
    #[arg(long, value_name = "PS")]
    t_max: Option<f64>,
    /// RK4 step in ps.
    #[arg(long, value_name = "PS")]
    dt: Option<f64>,
}

impl Common {
    fn load(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                RunConfig::parse(&text)?
            }
            None => RunConfig::default(),
        };
        let pairs = [
            ("noise", self.noise.clone()),
            ("configuration", self.configuration.clone()),
            ("transition", self.transition.clone()),
            ("t_max", self.t_max.map(|x| x.to_string())),
            ("dt", self.dt.map(|x| x.to_string())),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                cfg.set(key, &v)?;
            }
        }
        if !self.temperatures.is_empty() {
            let list: Vec<String> = self.temperatures.iter().map(|t| t.to_string()).collect();
            cfg.set("temperatures", &list.join(","))?;
        }
        if let Some(out) = &self.output {
            cfg.output = Some(out.clone());
        }
        Ok(cfg)
    }
}

fn execute(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Run(common) => {
            let cfg = common.load()?;
            for path in cmd_run(&cfg)? {
                println!("wrote {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fig2(common) => {
            let cfg = common.load()?;
            let dir = cfg.output.clone().unwrap_or_else(|| PathBuf::from("fig2"));
            let files = cmd_fig2(&cfg, &dir)?;
            println!("wrote {} files to {}", files.len(), dir.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(common) => {
            let single = common.configuration.is_some() || common.transition.is_some();
            let cfg = common.load()?;
            let ok = cmd_verify(&cfg, single, io::stdout().lock())?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    let help = units_help();
    let mut command = Cli::command().after_help(help.clone());
    for name in ["run", "fig2", "verify"] {
        command = command.mut_subcommand(name, |c| c.after_help(help.clone()));
    }
    let cli = match Cli::from_arg_matches(&command.get_matches()) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
