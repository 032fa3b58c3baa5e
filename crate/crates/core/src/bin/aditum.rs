use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use aditum::error::{AditumError, Result};
use aditum::experiment::{self, RawConfig};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "aditum", version, about = "Diversity-aware targeted influence maximization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Select seed sets over the k and alpha grids
    Select(Settings),
    /// Monte Carlo capital of seed lists or selection records
    Simulate(Settings),
    /// Deg-D greedy baseline
    Baseline(Settings),
    /// Collect metric rows of selection records into one CSV
    Metrics(Settings),
    /// Synthetic profiles or graphs
    Synth(Settings),
}

/// Any configuration key may be given as `--set key=value`; the common ones also
/// have their own flags. Flags override the config file.
#[derive(Args)]
struct Settings {
    /// Flat `key = value` configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Extra `key=value` setting, repeatable
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    weight_mode: Option<String>,
    #[arg(long)]
    node_weights: Option<String>,
    #[arg(long)]
    profiles: Option<String>,
    #[arg(long)]
    schema: Option<String>,
    #[arg(long)]
    classes: Option<String>,
    #[arg(long)]
    preferences: Option<String>,
    #[arg(long)]
    diversity: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    xi: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    ell: Option<String>,
    #[arg(long)]
    theta_override: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    output: Option<String>,
    #[arg(long)]
    normalize: bool,
    #[arg(long)]
    jobs: Option<String>,
    #[arg(long)]
    runs: Option<String>,
    #[arg(long)]
    seeds: Option<String>,
    #[arg(long)]
    results: Option<String>,
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    g_mode: Option<String>,
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    nodes: Option<String>,
    #[arg(long)]
    distribution: Option<String>,
}

impl Settings {
    fn into_config(self) -> Result<experiment::ExperimentConfig> {
        let mut raw = match &self.config {
            Some(p) => RawConfig::load(p).map_err(|e| match e {
                AditumError::Io(io) => AditumError::usage(format!("{}: {io}", p.display())),
                other => other,
            })?,
            None => RawConfig::default(),
        };
        let flags = [
            ("graph", self.graph),
            ("weight_mode", self.weight_mode),
            ("node_weights", self.node_weights),
            ("profiles", self.profiles),
            ("schema", self.schema),
            ("classes", self.classes),
            ("preferences", self.preferences),
            ("diversity", self.diversity),
            ("lambda", self.lambda),
            ("xi", self.xi),
            ("k", self.k),
            ("alpha", self.alpha),
            ("target", self.target),
            ("model", self.model),
            ("epsilon", self.epsilon),
            ("ell", self.ell),
            ("theta_override", self.theta_override),
            ("seed", self.seed),
            ("output", self.output),
            ("jobs", self.jobs),
            ("runs", self.runs),
            ("seeds", self.seeds),
            ("results", self.results),
            ("gamma", self.gamma),
            ("g_mode", self.g_mode),
            ("kind", self.kind),
            ("nodes", self.nodes),
            ("distribution", self.distribution),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                raw.set(key, v);
            }
        }
        if self.normalize {
            raw.set("normalize", "true");
        }
        for pair in &self.set {
            raw.set_pair(pair)?;
        }
        raw.resolve()
    }
}

fn run(cli: Cli) -> Result<()> {
    let (settings, command): (Settings, fn(&experiment::ExperimentConfig) -> Result<()>) = match cli.command {
        Command::Select(s) => (s, |c| experiment::cmd_select(c, io::stdout().lock()).map(drop)),
        Command::Simulate(s) => (s, |c| experiment::cmd_simulate(c, io::stdout().lock()).map(drop)),
        Command::Baseline(s) => (s, |c| experiment::cmd_baseline(c, io::stdout().lock()).map(drop)),
        Command::Metrics(s) => (s, |c| experiment::cmd_metrics(c, io::stdout().lock()).map(drop)),
        Command::Synth(s) => (s, |c| experiment::cmd_synth(c, io::stdout().lock())),
    };
    let cfg = settings.into_config()?;
    if cfg.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build_global()
            .map_err(|e| AditumError::config(e.to_string()))?;
    }
    command(&cfg)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
