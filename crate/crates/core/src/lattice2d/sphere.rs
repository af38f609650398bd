use super::{ProjectedInvariant2D, INCENTRE};

/// Longitude in degrees, undefined at the two poles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Longitude {
    Degrees(f64),
    Undefined,
}

impl Longitude {
    pub fn degrees(self) -> Option<f64> {
        match self {
            Longitude::Degrees(d) => Some(d),
            Longitude::Undefined => None,
        }
    }
}

/// Latitude and longitude of a lattice on the sphere of lattices up to dilation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphericalPosition {
    pub latitude: f64,
    pub longitude: Longitude,
}

const POLE_TOL: f64 = 1e-12;
const CUT_TOL: f64 = 1e-9;

/// Spherical lattice map of a projected invariant.
pub fn slm(pi: &ProjectedInvariant2D) -> SphericalPosition {
    let t = INCENTRE;
    let (x, y) = (pi.x, pi.y);
    let sign = pi.sign as f64;
    if (x - t).abs() <= POLE_TOL && (y - t).abs() <= POLE_TOL {
        return SphericalPosition { latitude: sign * 90.0, longitude: Longitude::Undefined };
    }
    let psi = if x != t { ((y - t) / (x - t)).atan().to_degrees() } else { (y - t).signum() * 90.0 };
    let mu = if x < t {
        psi + 22.5
    } else if psi > -22.5 + CUT_TOL {
        psi - 157.5
    } else {
        psi + 202.5
    };
    let scale = 90.0 / (std::f64::consts::SQRT_2 - 1.0);
    let magnitude = if (-45.0..=67.5).contains(&mu) {
        x * std::f64::consts::SQRT_2 * scale
    } else if mu >= 67.5 {
        y * std::f64::consts::SQRT_2 * scale
    } else {
        (1.0 - x - y) * scale
    };
    SphericalPosition { latitude: sign * magnitude, longitude: Longitude::Degrees(mu) }
}
