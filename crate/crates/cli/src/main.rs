//! `bhqnm`: tables of potentials, QNM symbols, lattices, counts, direct
//! eigenvalues and the rotated-oscillator demo.

mod commands;
mod config;
mod error;
mod output;

use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use config::{Command, Format, RunConfig};
use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "bhqnm", version, about = "Black-hole quasinormal modes from the semiclassical normal form", allow_negative_numbers = true)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// JSON file with a (partial) RunConfig, or an earlier output whose
    /// embedded config is reused; flags override it.
    #[arg(long)]
    config: Option<String>,
    #[arg(long, short)]
    output: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    m: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    ell_min: Option<u32>,
    #[arg(long)]
    ell_max: Option<u32>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    t: Option<f64>,
    /// Comma-separated radii.
    #[arg(long, value_delimiter = ',')]
    r_list: Option<Vec<f64>>,
    #[arg(long)]
    series_degree: Option<usize>,
    #[arg(long)]
    h_order: Option<usize>,
    #[arg(long)]
    basis_size: Option<usize>,
    #[arg(long)]
    x_min: Option<f64>,
    #[arg(long)]
    x_max: Option<f64>,
    #[arg(long)]
    x_points: Option<usize>,
    #[arg(long)]
    pseudo_h: Option<f64>,
    /// Worker threads; 0 or unset uses all cores.
    #[arg(long, env = "BHQNM_THREADS")]
    threads: Option<usize>,
}

impl Cli {
    fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{path}: {e}")))?;
                RunConfig::from_json(&text).or_else(|e| output::embedded_config(&text).map_err(|_| e))?
            }
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($flag:ident => $($field:tt)+) => {
                if let Some(v) = self.$flag.clone() {
                    cfg.$($field)+ = v;
                }
            };
        }
        set!(m => m);
        set!(lambda => lambda);
        set!(theta => theta);
        set!(ell_min => ell_range[0]);
        set!(ell_max => ell_range[1]);
        set!(n_max => n_max);
        set!(t => t);
        set!(r_list => r_list);
        set!(series_degree => series_degree);
        set!(h_order => h_order);
        set!(basis_size => basis_size);
        set!(format => format);
        set!(x_min => grid.x_min);
        set!(x_max => grid.x_max);
        set!(x_points => grid.points);
        set!(pseudo_h => pseudo_h);
        if let Some(o) = &self.output {
            cfg.output_path = Some(o.clone());
        }
        cfg.validate(self.command)?;
        Ok(cfg)
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = cli.resolve()?;
    if let Some(n) = cli.threads.filter(|&n| n > 0) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    }
    let report = commands::run(cli.command, &cfg)?;
    let text = output::render(cli.command, &cfg, &report);
    match &cfg.output_path {
        Some(p) => output::write_atomic(Path::new(p), &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bhqnm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
