//! Two-dimensional lattices: obtuse superbase reduction, root and projected invariants,
//! metrics on their spaces, chiral distances, the spherical map and inverse design.

mod chiral;
mod metrics;
mod sphere;

pub use chiral::{pc, rc, PointGroup};
pub use metrics::{pm, rm};
pub use sphere::{slm, Longitude, SphericalPosition};

use crate::error::{GeoError, Result};

/// Relative tolerance for deciding that a lattice is mirror-symmetric.
pub const SIGN_TOL: f64 = 1e-9;

/// `1 - 1/sqrt(2)`: both coordinates of the incentre of the quotient triangle.
pub const INCENTRE: f64 = 1.0 - std::f64::consts::FRAC_1_SQRT_2;

const QT_TOL: f64 = 1e-12;

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// A basis of a lattice in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Basis2D {
    pub v1: [f64; 2],
    pub v2: [f64; 2],
}

impl Basis2D {
    pub fn new(v1: [f64; 2], v2: [f64; 2]) -> Result<Self> {
        if v1.iter().chain(&v2).any(|x| !x.is_finite()) {
            return Err(GeoError::NonFinite);
        }
        let scale = dot(v1, v1).sqrt() * dot(v2, v2).sqrt();
        let area = cross(v1, v2);
        if area.abs() <= 1e-12 * scale || scale == 0.0 {
            return Err(GeoError::Degenerate(format!("basis vectors {v1:?} and {v2:?} are dependent")));
        }
        Ok(Basis2D { v1, v2 })
    }

    /// Basis from cell lengths `a`, `b` and the angle `gamma` between them in degrees.
    pub fn from_cell(a: f64, b: f64, gamma_deg: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return Err(GeoError::OutOfRange(format!("cell lengths must be positive, got {a}, {b}")));
        }
        let g = gamma_deg.to_radians();
        Basis2D::new([a, 0.0], [b * g.cos(), b * g.sin()])
    }

    /// Signed area of the cell.
    pub fn area(&self) -> f64 {
        cross(self.v1, self.v2)
    }
}

/// Three vectors summing to zero whose pairwise scalar products are non-positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ObtuseSuperbase2D {
    /// `v0`, `v1`, `v2` in this order.
    pub vectors: [[f64; 2]; 3],
}

impl ObtuseSuperbase2D {
    /// Conorms `(p12, p01, p02)` with tiny negative values clamped to zero.
    pub fn conorms(&self) -> [f64; 3] {
        let [v0, v1, v2] = self.vectors;
        let scale = self.vectors.iter().map(|v| dot(*v, *v)).fold(0.0, f64::max);
        let clamp = |p: f64| if p < 0.0 && p >= -1e-12 * scale { 0.0 } else { p };
        [clamp(-dot(v1, v2)), clamp(-dot(v0, v1)), clamp(-dot(v0, v2))]
    }

    /// Squared lengths `(v0^2, v1^2, v2^2)`.
    pub fn vonorms(&self) -> [f64; 3] {
        self.vectors.map(|v| dot(v, v))
    }

    pub fn basis(&self) -> Basis2D {
        Basis2D { v1: self.vectors[1], v2: self.vectors[2] }
    }
}

/// Reduces any basis to an obtuse superbase of the same lattice.
pub fn reduce(basis: &Basis2D) -> Result<ObtuseSuperbase2D> {
    let Basis2D { mut v1, mut v2 } = Basis2D::new(basis.v1, basis.v2)?;
    for _ in 0..10_000 {
        if dot(v2, v2) < dot(v1, v1) {
            std::mem::swap(&mut v1, &mut v2);
        }
        let ratio = dot(v1, v2) / dot(v1, v1);
        if ratio.abs() <= 0.5 + 1e-12 {
            if dot(v1, v2) > 0.0 {
                v2 = [-v2[0], -v2[1]];
            }
            let v0 = [-v1[0] - v2[0], -v1[1] - v2[1]];
            return Ok(ObtuseSuperbase2D { vectors: [v0, v1, v2] });
        }
        let mu = ratio.round();
        v2 = [v2[0] - mu * v1[0], v2[1] - mu * v1[1]];
    }
    Err(GeoError::NoConvergence(10_000))
}

/// Ordered root products `r12 <= r01 <= r02` with the orientation sign.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootInvariant2D {
    r12: f64,
    r01: f64,
    r02: f64,
    sign: i8,
}

fn mirror_symmetric(r12: f64, r01: f64, r02: f64) -> bool {
    r12 <= SIGN_TOL * r02 || (r01 - r12).abs() <= SIGN_TOL * r01 || (r02 - r01).abs() <= SIGN_TOL * r02
}

impl RootInvariant2D {
    /// Validates the ordering; the sign is forced to zero for mirror-symmetric triples.
    pub fn new(r12: f64, r01: f64, r02: f64, sign: i8) -> Result<Self> {
        if ![r12, r01, r02].iter().all(|x| x.is_finite()) {
            return Err(GeoError::NonFinite);
        }
        let slack = QT_TOL * r02.abs();
        if r12 < 0.0 || r12 > r01 + slack || r01 > r02 + slack || r01 <= 0.0 {
            return Err(GeoError::OutOfRange(format!("root products ({r12}, {r01}, {r02}) must satisfy 0 <= r12 <= r01 <= r02, r01 > 0")));
        }
        if !(-1..=1).contains(&sign) {
            return Err(GeoError::OutOfRange(format!("sign {sign}")));
        }
        let sign = if mirror_symmetric(r12, r01, r02) { 0 } else { sign };
        Ok(RootInvariant2D { r12, r01, r02, sign })
    }

    pub fn triple(&self) -> [f64; 3] {
        [self.r12, self.r01, self.r02]
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// `r12 + r01 + r02`.
    pub fn size(&self) -> f64 {
        self.r12 + self.r01 + self.r02
    }

    /// The invariant of the mirror image.
    pub fn mirrored(&self) -> Self {
        RootInvariant2D { sign: -self.sign, ..*self }
    }
}

/// Root invariant of the lattice generated by an obtuse superbase.
pub fn root_invariant(sb: &ObtuseSuperbase2D) -> RootInvariant2D {
    let mut r = sb.conorms().map(|p| p.max(0.0).sqrt());
    r.sort_by(f64::total_cmp);
    let [r12, r01, r02] = r;
    let sign = if mirror_symmetric(r12, r01, r02) {
        0
    } else {
        let mut order: Vec<[f64; 2]> = sb.vectors.to_vec();
        order.sort_by(|a, b| dot(*a, *a).total_cmp(&dot(*b, *b)));
        crate::util::sign_of(cross(order[0], order[1]))
    };
    RootInvariant2D { r12, r01, r02, sign }
}

/// Root invariant straight from a basis.
pub fn basis_invariant(basis: &Basis2D) -> Result<RootInvariant2D> {
    Ok(root_invariant(&reduce(basis)?))
}

/// Scale-free coordinates `(x, y)` in the quotient triangle with the orientation sign.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectedInvariant2D {
    pub x: f64,
    pub y: f64,
    pub sign: i8,
}

impl ProjectedInvariant2D {
    pub fn new(x: f64, y: f64, sign: i8) -> Result<Self> {
        in_quotient_triangle(x, y)?;
        if !(-1..=1).contains(&sign) {
            return Err(GeoError::OutOfRange(format!("sign {sign}")));
        }
        Ok(ProjectedInvariant2D { x, y, sign })
    }

    pub fn mirrored(&self) -> Self {
        ProjectedInvariant2D { sign: -self.sign, ..*self }
    }
}

fn in_quotient_triangle(x: f64, y: f64) -> Result<()> {
    if !(x.is_finite() && y.is_finite()) {
        return Err(GeoError::NonFinite);
    }
    if x < -QT_TOL || x >= 1.0 || y < -QT_TOL || y > 1.0 + QT_TOL || x + y > 1.0 + QT_TOL {
        return Err(GeoError::OutOfRange(format!("({x}, {y}) lies outside the quotient triangle")));
    }
    Ok(())
}

/// Projects a root invariant to the quotient triangle.
pub fn projected_invariant(ri: &RootInvariant2D) -> Result<ProjectedInvariant2D> {
    let s = ri.size();
    if ri.r01 <= 0.0 || s <= 0.0 {
        return Err(GeoError::Degenerate("zero-size root invariant".into()));
    }
    let x = ((ri.r02 - ri.r01) / s).max(0.0);
    let y = (3.0 * ri.r12 / s).clamp(0.0, 1.0);
    Ok(ProjectedInvariant2D { x, y, sign: ri.sign })
}

/// Root invariant of the lattice with projected invariant `(x, y)` and the given size.
pub fn root_from_projected(x: f64, y: f64, size: f64, sign: i8) -> Result<RootInvariant2D> {
    in_quotient_triangle(x, y)?;
    if !(size > 0.0 && size.is_finite()) {
        return Err(GeoError::OutOfRange(format!("size must be positive, got {size}")));
    }
    let (x, y) = (x.max(0.0), y.clamp(0.0, 1.0));
    let r12 = size / 3.0 * y;
    let r01 = (size / 6.0 * (3.0 - 3.0 * x - y)).max(r12);
    let r02 = size / 6.0 * (3.0 + 3.0 * x - y);
    RootInvariant2D::new(r12, r01, r02, sign)
}

/// Reduced basis of the lattice with projected invariant `(x, y)`, size and sign.
pub fn inverse_design(x: f64, y: f64, size: f64, sign: i8) -> Result<Basis2D> {
    let ri = root_from_projected(x, y, size, sign)?;
    superbase_from_root(&ri, sign).map(|sb| sb.basis())
}

/// Obtuse superbase realising a root invariant; `orientation` picks the mirror image when the sign is zero.
pub fn superbase_from_root(ri: &RootInvariant2D, orientation: i8) -> Result<ObtuseSuperbase2D> {
    let [r12, r01, r02] = ri.triple();
    let l1 = (r12 * r12 + r01 * r01).sqrt();
    let l2 = (r12 * r12 + r02 * r02).sqrt();
    let cos = (-r12 * r12 / (l1 * l2)).clamp(-1.0, 1.0);
    let sin = (1.0 - cos * cos).sqrt();
    let up = if ri.sign() != 0 { ri.sign() } else if orientation < 0 { -1 } else { 1 };
    let v1 = [l1, 0.0];
    let v2 = [l2 * cos, up as f64 * l2 * sin];
    let v0 = [-v1[0] - v2[0], -v1[1] - v2[1]];
    Ok(ObtuseSuperbase2D { vectors: [v0, v1, v2] })
}
