//! Norms and exact solvers for bottleneck matching, linear assignment and optimal transport.

mod assignment;
mod cost;
mod matching;
mod norm;
mod transport;

pub use assignment::{lac, min_assignment};
pub use cost::CostMatrix;
pub use matching::{bottleneck, bottleneck_cost, hausdorff, Bottleneck};
pub use norm::{minkowski, Exponent};
pub use transport::{emd, emd_cost, normalize_weights, Transport, REDUCED_COST_TOL, WEIGHT_SUM_TOL};

pub(crate) use norm::{euclid, minkowski_unchecked};
