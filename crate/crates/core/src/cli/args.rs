use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

use crate::potentials::Family;
use crate::spectra::Parity;

#[derive(Debug, Parser)]
#[command(
    name = "besselwell",
    version,
    about = "Bound states, special scattering states and scattering amplitudes of exponential potentials",
    args_override_self = true
)]
pub struct Cli {
    /// flat key=value file; command-line flags override its entries
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// write results here instead of stdout
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// version, parameters and timings on stderr
    #[arg(long, short, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    V1,
    V2,
    V3,
    V4,
    V5,
    V6,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::V1 => Family::V1,
            FamilyArg::V2 => Family::V2,
            FamilyArg::V3 => Family::V3,
            FamilyArg::V4 => Family::V4,
            FamilyArg::V5 => Family::V5,
            FamilyArg::V6 => Family::V6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScatterFamily {
    V4,
    V2,
}

impl From<ScatterFamily> for Family {
    fn from(f: ScatterFamily) -> Self {
        match f {
            ScatterFamily::V4 => Family::V4,
            ScatterFamily::V2 => Family::V2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObservableArg {
    X,
    P,
}

#[derive(Debug, Clone, Args)]
pub struct PotentialArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub v0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
}

#[derive(Debug, Clone, Args)]
pub struct LevelSelect {
    /// restrict to one parity class
    #[arg(long, value_enum)]
    pub parity: Option<ParityArg>,
    /// negative-order roots (V4/V5/V6 only)
    #[arg(long)]
    pub nonphysical: bool,
    /// valley-family energy ceiling (default V0 (1 + 20/(qa)^2) + 50/a^2)
    #[arg(long)]
    pub ceiling: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// special scattering states, bound states and non-physical roots
    #[command(allow_negative_numbers = true)]
    Spectrum {
        #[command(flatten)]
        potential: PotentialArgs,
        #[command(flatten)]
        select: LevelSelect,
        /// number of levels (default: every root in the search range)
        #[arg(long)]
        n: Option<usize>,
    },
    /// A, B, R, T on an energy sweep
    #[command(allow_negative_numbers = true)]
    Scatter {
        #[arg(long, value_enum)]
        family: ScatterFamily,
        #[arg(long)]
        v0: f64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long)]
        emin: f64,
        #[arg(long)]
        emax: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// V2 only: use the quoted closed form instead of the unitary one
        #[arg(long)]
        as_printed: bool,
    },
    /// sampled wavefunction of one level
    #[command(allow_negative_numbers = true)]
    Wavefunction {
        #[command(flatten)]
        potential: PotentialArgs,
        #[command(flatten)]
        select: LevelSelect,
        /// index into the sorted level list
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long, default_value_t = -4.0)]
        xmin: f64,
        #[arg(long, default_value_t = 4.0)]
        xmax: f64,
        #[arg(long, default_value_t = 2001)]
        points: usize,
        /// negate x < 0 for odd states of symmetric potentials
        #[arg(long)]
        cosmetic_flip: bool,
    },
    /// transfer matrix of V4 at one energy or at a special energy
    #[command(allow_negative_numbers = true)]
    Transfer {
        #[arg(long)]
        v0: f64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, conflicts_with = "level")]
        energy: Option<f64>,
        /// index of a special energy (sorted, both parities)
        #[arg(long)]
        level: Option<usize>,
    },
    /// poles of A after V0 -> -V0
    #[command(allow_negative_numbers = true)]
    Poles {
        #[arg(long, value_enum)]
        family: ScatterFamily,
        #[arg(long)]
        v0: f64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long)]
        flip_sign: bool,
        #[arg(long)]
        emin: Option<f64>,
        #[arg(long)]
        emax: Option<f64>,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// hybrid levels of V = x^3
    #[command(allow_negative_numbers = true)]
    Cubic {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        x_right: Option<f64>,
        #[arg(long, default_value_t = -8.0)]
        x_left: f64,
        #[arg(long, default_value_t = 5e-4)]
        step: f64,
        /// dump the wavefunction of this level instead of the level list
        #[arg(long)]
        wavefunction: Option<usize>,
    },
    /// <x^n> or <p^n> of one level on |x| <= cutoff
    #[command(allow_negative_numbers = true)]
    Moments {
        #[command(flatten)]
        potential: PotentialArgs,
        #[command(flatten)]
        select: LevelSelect,
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long, value_enum)]
        observable: ObservableArg,
        #[arg(long)]
        power: u32,
        #[arg(long)]
        cutoff: f64,
        /// grid step (default: 40 points per local wavelength at the cutoff)
        #[arg(long)]
        step: Option<f64>,
    },
    /// run the invariant suite
    Validate,
}
