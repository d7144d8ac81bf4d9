use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use supfact_cli::config::{self, RunConfig};
use supfact_cli::error::{input_err, Result};
use supfact_cli::pipeline::{cmd_check, cmd_example, cmd_support, InputSel, OracleSel};

#[derive(Parser)]
#[command(
    name = "supfact",
    version,
    about = "Support-set computation and factorization screening for bivariate distributions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the support of a distribution and export it
    Support {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Screen the support factorization condition, then consult an oracle
    Check {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        common: CommonOpts,
        /// Oracle to consult: auto, exact, probe, cdf, none
        #[arg(long, default_value = "auto")]
        oracle: String,
    },
    /// Reproduce a registered example end to end
    Example {
        /// Registered example name
        name: String,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputOpts {
    /// Built-in distribution, optionally parameterized as name:args
    #[arg(long)]
    builtin: Option<String>,
    /// Joint PMF table, CSV rows x,y,p or a JSON atom list
    #[arg(long)]
    table: Option<PathBuf>,
    /// Raw sample pairs, CSV rows x,y
    #[arg(long)]
    samples: Option<PathBuf>,
}

impl InputOpts {
    fn resolve(self) -> Result<InputSel> {
        match (self.builtin, self.table, self.samples) {
            (Some(name), None, None) => Ok(InputSel::Builtin(name)),
            (None, Some(path), None) => Ok(InputSel::Table(path)),
            (None, None, Some(path)) => Ok(InputSel::Samples(path)),
            _ => Err(input_err("pass exactly one of --builtin, --table, --samples")),
        }
    }
}

#[derive(Args)]
struct CommonOpts {
    /// Evaluation grid: N for square, or NXxNY
    #[arg(long)]
    grid: Option<String>,
    /// Seed for probe scatter and Monte Carlo draws
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (default: $SUPFACT_OUT_DIR, else ./supfact-out)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Clip window for the first coordinate, as lo,hi
    #[arg(long, value_name = "LO,HI")]
    clip: Option<String>,
    /// Clip window for the second coordinate, as lo,hi
    #[arg(long, value_name = "LO,HI")]
    clip_y: Option<String>,
    /// Hits needed before an empirical cell counts as occupied
    #[arg(long)]
    min_count: Option<usize>,
    /// Symmetric-difference measure tolerance for the screen
    #[arg(long)]
    tol_measure: Option<f64>,
    /// Hausdorff distance tolerance for the screen
    #[arg(long)]
    tol_dist: Option<f64>,
    /// Pointwise tolerance for factorization probes
    #[arg(long)]
    probe_tol: Option<f64>,
    /// Residual tolerance for the exact discrete oracle
    #[arg(long)]
    oracle_tol: Option<f64>,
    /// Monte Carlo sample count for example validation
    #[arg(long)]
    mc_samples: Option<usize>,
    /// Rescale an input table whose total mass is off
    #[arg(long)]
    renormalize: bool,
}

impl CommonOpts {
    fn build(self) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(g) = &self.grid {
            cfg.grid = config::parse_grid(g)?;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(out) = self.out {
            cfg.out_dir = out;
        }
        if let Some(c) = &self.clip {
            cfg.clip = Some(config::parse_clip(c)?);
        }
        if let Some(c) = &self.clip_y {
            cfg.clip_y = Some(config::parse_clip(c)?);
        }
        if let Some(m) = self.min_count {
            cfg.min_count = m;
        }
        if let Some(t) = self.tol_measure {
            cfg.tol_measure = t;
        }
        if let Some(t) = self.tol_dist {
            cfg.tol_dist = t;
        }
        if let Some(t) = self.probe_tol {
            cfg.probe_tol = t;
        }
        if let Some(t) = self.oracle_tol {
            cfg.oracle_tol = t;
        }
        if let Some(n) = self.mc_samples {
            cfg.mc_samples = n;
        }
        cfg.renormalize = self.renormalize;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<String> {
    let outcome = match cli.cmd {
        Cmd::Support { input, common } => {
            let sel = input.resolve()?;
            let cfg = common.build()?;
            cmd_support(&sel, &cfg)?
        }
        Cmd::Check { input, common, oracle } => {
            let sel = input.resolve()?;
            let cfg = common.build()?;
            let oracle = OracleSel::parse(&oracle)?;
            cmd_check(&sel, &cfg, oracle)?
        }
        Cmd::Example { name, common } => {
            let cfg = common.build()?;
            cmd_example(&name, &cfg)?
        }
    };
    Ok(outcome.summary)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(summary) => {
            print!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
