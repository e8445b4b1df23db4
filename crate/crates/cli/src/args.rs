use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "pctlab", version, about = "Closed-form PDM spectra and their grid verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form energies for n_r up to --nr-max
    Spectrum(RunArgs),
    /// Normalized R(r) on a logarithmic grid
    Wavefunction(RunArgs),
    /// Target potential V(r) and effective potential W(q)
    Potential(RunArgs),
    /// Closed forms against the grid eigenvalues and the radial equation
    Verify(RunArgs),
    /// Energies along the interdimensional ladder (ell - k, d + 2k)
    Degeneracy(RunArgs),
    /// The nine cases and their parameter schemas
    Cases(OutputArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Every option is optional so a `--config` file can supply it.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub case: Option<String>,
    /// Power-law mass exponent
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Mass scale (default 1)
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Case parameter as key=value; repeatable
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    /// Dimension (default 3)
    #[arg(long)]
    pub d: Option<u32>,
    /// Angular momentum (default 0)
    #[arg(long)]
    pub ell: Option<u32>,
    /// even|odd, required when d = 1
    #[arg(long)]
    pub parity: Option<String>,
    /// Highest radial quantum number
    #[arg(long)]
    pub nr_max: Option<u32>,
    /// Interior grid points (default 4000)
    #[arg(long)]
    pub grid_n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub q_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub q_max: Option<f64>,
    #[arg(long)]
    pub tol_energy: Option<f64>,
    #[arg(long)]
    pub tol_norm: Option<f64>,
    #[arg(long)]
    pub tol_residual: Option<f64>,
    /// as-printed|re-derived|both (default both)
    #[arg(long)]
    pub flag: Option<String>,
    /// Sample points for wavefunction and potential (default 200)
    #[arg(long)]
    pub points: Option<usize>,
    /// Worker threads for verify (default 1)
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Flat key=value file; flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl RunArgs {
    /// Fills unset fields from `base`; parameters merge per key.
    pub fn or(self, base: RunArgs) -> RunArgs {
        let mut params = base.params;
        params.extend(self.params);
        RunArgs {
            case: self.case.or(base.case),
            gamma: self.gamma.or(base.gamma),
            alpha: self.alpha.or(base.alpha),
            params,
            d: self.d.or(base.d),
            ell: self.ell.or(base.ell),
            parity: self.parity.or(base.parity),
            nr_max: self.nr_max.or(base.nr_max),
            grid_n: self.grid_n.or(base.grid_n),
            q_min: self.q_min.or(base.q_min),
            q_max: self.q_max.or(base.q_max),
            tol_energy: self.tol_energy.or(base.tol_energy),
            tol_norm: self.tol_norm.or(base.tol_norm),
            tol_residual: self.tol_residual.or(base.tol_residual),
            flag: self.flag.or(base.flag),
            points: self.points.or(base.points),
            jobs: self.jobs.or(base.jobs),
            config: self.config,
            output: OutputArgs {
                out: self.output.out.or(base.output.out),
                format: self.output.format.or(base.output.format),
            },
        }
    }
}
