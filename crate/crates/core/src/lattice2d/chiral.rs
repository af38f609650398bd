use std::f64::consts::SQRT_2;
use std::str::FromStr;

use super::{ProjectedInvariant2D, RootInvariant2D};
use crate::error::{GeoError, Result};
use crate::numcore::Exponent;

/// Higher-symmetry classes measured by chiral distances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointGroup {
    /// Rectangular and centred rectangular lattices.
    D2,
    /// Square lattices.
    D4,
    /// Hexagonal lattices.
    D6,
}

impl FromStr for PointGroup {
    type Err = GeoError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "D2" => Ok(PointGroup::D2),
            "D4" => Ok(PointGroup::D4),
            "D6" => Ok(PointGroup::D6),
            other => Err(GeoError::OutOfRange(format!("unknown point group '{other}'"))),
        }
    }
}

fn unsupported(group: PointGroup, q: Exponent) -> GeoError {
    GeoError::Unsupported(format!("chiral distance for {group:?} with q={q}"))
}

/// Root chiral distance from a lattice to the closest lattice with the point group.
pub fn rc(ri: &RootInvariant2D, group: PointGroup, q: Exponent) -> Result<f64> {
    let [r12, r01, r02] = ri.triple();
    match (q.validate()?, group) {
        (Exponent::Finite(v), PointGroup::D2) if v == 2.0 => Ok(r12.min((r01 - r12) / SQRT_2).min((r02 - r01) / SQRT_2)),
        (Exponent::Finite(v), PointGroup::D4) if v == 2.0 => Ok((r12 * r12 + 0.25 * (r02 - r01).powi(2)).sqrt()),
        (Exponent::Finite(v), PointGroup::D6) if v == 2.0 => {
            let s = r12 * r12 + r01 * r01 + r02 * r02 - r12 * r01 - r12 * r02 - r01 * r02;
            Ok((2.0 / 3.0 * s.max(0.0)).sqrt())
        }
        (Exponent::Infinity, PointGroup::D2) => Ok(r12.min((r01 - r12) / 2.0).min((r02 - r01) / 2.0)),
        (Exponent::Infinity, PointGroup::D4) => Ok(r12.min((r02 - r01) / 2.0)),
        (Exponent::Infinity, PointGroup::D6) => Ok((r02 - r12) / 2.0),
        (q, g) => Err(unsupported(g, q)),
    }
}

/// Projected chiral distance from a lattice to the closest lattice with the point group, up to scaling.
pub fn pc(pi: &ProjectedInvariant2D, group: PointGroup, q: Exponent) -> Result<f64> {
    let (x, y) = (pi.x, pi.y);
    match (q.validate()?, group) {
        (Exponent::Finite(v), PointGroup::D2) if v == 2.0 => Ok(x.min(y).min((1.0 - x - y) / SQRT_2)),
        (Exponent::Infinity, PointGroup::D2) => Ok(x.min(y).min((1.0 - x - y) / 2.0)),
        (Exponent::Infinity, PointGroup::D4) => Ok(x),
        (Exponent::Infinity, PointGroup::D6) => Ok(1.0 - y),
        (q @ Exponent::Finite(_), PointGroup::D4) => Ok(q.norm([x, y])),
        (q @ Exponent::Finite(_), PointGroup::D6) => Ok(q.norm([x, 1.0 - y])),
        (q, g) => Err(unsupported(g, q)),
    }
}
