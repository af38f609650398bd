//! Continuous isometry invariants of finite clouds, 2D lattices, periodic point sets,
//! periodic sequences and protein backbones, with exact metric solvers for comparing them.

pub mod backbone;
pub mod clouds;
pub mod density1d;
pub mod error;
pub mod io;
pub mod lattice2d;
pub mod numcore;
pub mod periodic;
pub mod rows;
pub mod seq1p;
pub mod simplexwise;

mod util;

pub use clouds::PointCloud;
pub use error::{GeoError, Result};
pub use numcore::{CostMatrix, Exponent};
pub use periodic::PeriodicSet;
pub use rows::{RowMetric, WeightedRow, WeightedRowMatrix};
