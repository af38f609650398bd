mod commands;
mod output;
mod selftest;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use geoinv::lattice2d::PointGroup;
use geoinv::numcore::Exponent;
use geoinv::seq1p::{Equivalence, Group};
use geoinv::simplexwise::Comparison;

use output::Format;

/// Continuous isometry invariants and exact metrics for point clouds, lattices,
/// periodic crystals, periodic sequences and protein backbones.
#[derive(Parser, Debug)]
#[command(name = "geoinv", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Number of neighbours or the density order.
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Minkowski exponent, a real number at least 1 or `inf`.
    #[arg(long, global = true, default_value = "inf")]
    pub q: Exponent,
    /// Tolerance for collapsing equal rows and comparing values.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite point clouds from XYZ files.
    #[command(subcommand)]
    Cloud(CloudCmd),
    /// Simplexwise distributions of finite clouds.
    #[command(subcommand)]
    Simplex(SimplexCmd),
    /// Two-dimensional lattices.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Periodic point sets from P1 CIF files.
    #[command(subcommand)]
    Periodic(PeriodicCmd),
    /// Density functions of periodic sequences in the line.
    #[command(subcommand)]
    Density(DensityCmd),
    /// Finite ordered and 1-periodic sequences.
    #[command(subcommand)]
    Seq1(SeqCmd),
    /// Protein backbone invariants.
    #[command(subcommand)]
    Backbone(BackboneCmd),
    /// Runs randomized property checks of the library.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum CloudCmd {
    /// Sorted radial distances from the centre of mass.
    Srd { file: PathBuf },
    /// Sorted pairwise distances.
    Spd { file: PathBuf },
    /// Pointwise distance distribution: weight, then k distances per row.
    Pdd { file: PathBuf },
    /// EMD between the PDDs of two clouds.
    Compare { first: PathBuf, second: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum SimplexCmd {
    /// Simplexwise distance distribution.
    Sdd {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        h: usize,
    },
    /// Simplexwise centred distribution with orientation signs.
    Scd { file: PathBuf },
    /// Distances between the distributions of two clouds.
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 2)]
        h: usize,
        #[arg(long, default_value = "emd")]
        mode: Comparison,
    },
}

#[derive(Args, Debug, Clone)]
pub struct LatticeInput {
    /// Basis vectors as `x1 y1 x2 y2`.
    #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["X1", "Y1", "X2", "Y2"])]
    pub basis: Option<Vec<f64>>,
    /// Cell as `a b gamma` with gamma in degrees.
    #[arg(long, num_args = 3, value_names = ["A", "B", "GAMMA"], conflicts_with = "basis")]
    pub cell: Option<Vec<f64>>,
}

#[derive(Args, Debug, Clone)]
pub struct SecondLattice {
    #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["X1", "Y1", "X2", "Y2"])]
    pub basis2: Option<Vec<f64>>,
    #[arg(long, num_args = 3, value_names = ["A", "B", "GAMMA"], conflicts_with = "basis2")]
    pub cell2: Option<Vec<f64>>,
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    /// Obtuse superbase of the lattice.
    Reduce(LatticeInput),
    /// Root and projected invariants with the sign and spherical coordinates.
    Invariant(LatticeInput),
    /// Root and projected metrics to a second lattice.
    Metric {
        #[command(flatten)]
        first: LatticeInput,
        #[command(flatten)]
        second: SecondLattice,
    },
    /// Chiral distances to the higher-symmetry classes.
    Chiral {
        #[command(flatten)]
        lattice: LatticeInput,
        #[arg(long)]
        group: Option<PointGroup>,
    },
    /// Latitude and longitude on the sphere of lattices up to dilation.
    Map(LatticeInput),
    /// Basis with the given projected invariant, size and sign.
    Design {
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        #[arg(long, default_value_t = 1.0)]
        size: f64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        sign: i8,
    },
}

#[derive(Subcommand, Debug)]
pub enum PeriodicCmd {
    Pdd { file: PathBuf },
    Amd { file: PathBuf },
    /// Point packing coefficient.
    Ppc { file: PathBuf },
    Ada { file: PathBuf },
    /// ADA, AMD and PDA distances between two structures.
    Compare { first: PathBuf, second: PathBuf },
    /// Near-duplicate pairs among the CIF files of a directory.
    Dedup {
        dir: PathBuf,
        #[arg(long, default_value_t = 0.01)]
        threshold: f64,
    },
    /// Distance from a structure to its nearest neighbour among the CIF files of a directory.
    Novelty { file: PathBuf, dir: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum DensityCmd {
    /// Corners of the density function of order k.
    Psi {
        file: PathBuf,
        /// Also emit this many equally spaced samples.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Integral of the squared density differences of order k.
    Rho { file: PathBuf },
    /// Maximum differences of density functions of orders 0 through k.
    Compare { first: PathBuf, second: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum SeqCmd {
    /// Cyclic distance matrix of an ordered sequence in XYZ format.
    Cdm {
        file: PathBuf,
        /// Append the orientation signs and strengths.
        #[arg(long)]
        signs: bool,
    },
    /// Distance between two 1-periodic sequences.
    Metric {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value = "cyclic")]
        group: Group,
        #[arg(long, default_value = "isometry")]
        equivalence: Equivalence,
    },
}

#[derive(Subcommand, Debug)]
pub enum BackboneCmd {
    /// Backbone rigid invariant, one row per residue.
    Bri {
        file: PathBuf,
        /// Also write a PPM barcode image.
        #[arg(long)]
        barcode: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        bar_height: usize,
    },
    /// Column averages of the invariant.
    Brain { file: PathBuf },
    /// Invariant distance and averaged lower bound for two chains of equal length.
    Compare { first: PathBuf, second: PathBuf },
    /// Atoms of a chain from an invariant written by `backbone bri`.
    Reconstruct { file: PathBuf },
}

/// Errors caused by how the command was invoked rather than by its data.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(value) = std::env::var("GEOINV_THREADS") else { return Ok(()) };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| usage(format!("GEOINV_THREADS must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| usage(format!("cannot configure {n} threads: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = configure_threads().and_then(|()| commands::run(&cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
