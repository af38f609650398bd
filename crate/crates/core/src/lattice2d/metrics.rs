use super::{ProjectedInvariant2D, RootInvariant2D};
use crate::error::{GeoError, Result};
use crate::numcore::Exponent;

fn l2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn half_gap(a: f64, b: f64, c: f64, d: f64) -> f64 {
    (a - b).abs().max((c - d).abs()).max(0.5 * (a + b - c - d).abs())
}

enum Oriented {
    Two,
    Chebyshev,
}

fn oriented_exponent(q: Exponent) -> Result<Oriented> {
    match q.validate()? {
        Exponent::Finite(v) if v == 2.0 => Ok(Oriented::Two),
        Exponent::Infinity => Ok(Oriented::Chebyshev),
        Exponent::Finite(v) => {
            Err(GeoError::Unsupported(format!("oriented lattice metrics are available for q=2 and q=inf, not q={v}")))
        }
    }
}

/// Root metric between lattices; the oriented variant separates mirror images.
pub fn rm(a: &RootInvariant2D, b: &RootInvariant2D, q: Exponent, oriented: bool) -> Result<f64> {
    let q = q.validate()?;
    let (r, s) = (a.triple(), b.triple());
    let plain = q.norm(r.iter().zip(&s).map(|(x, y)| x - y));
    if !oriented {
        return Ok(plain);
    }
    let kind = oriented_exponent(q)?;
    if a.sign() * b.sign() >= 0 {
        return Ok(plain);
    }
    let [r12, r01, r02] = r;
    let [s12, s01, s02] = s;
    Ok(match kind {
        Oriented::Two => [[-s12, s01, s02], [s01, s12, s02], [s12, s02, s01]]
            .iter()
            .map(|t| l2(&r, t))
            .fold(f64::INFINITY, f64::min),
        Oriented::Chebyshev => {
            let d0 = (r12 + s12).max((r01 - s01).abs()).max((r02 - s02).abs());
            let d1 = half_gap(r12, r01, s12, s01).max((r02 - s02).abs());
            let d2 = (r12 - s12).abs().max(half_gap(r01, r02, s01, s02));
            d0.min(d1).min(d2)
        }
    })
}

/// Projected metric between lattices up to scaling; the oriented variant separates mirror images.
pub fn pm(a: &ProjectedInvariant2D, b: &ProjectedInvariant2D, q: Exponent, oriented: bool) -> Result<f64> {
    let q = q.validate()?;
    let plain = q.norm([a.x - b.x, a.y - b.y]);
    if !oriented {
        return Ok(plain);
    }
    let kind = oriented_exponent(q)?;
    if a.sign * b.sign >= 0 {
        return Ok(plain);
    }
    Ok(match kind {
        Oriented::Two => {
            let p = [a.x, a.y];
            [[-b.x, b.y], [b.x, -b.y], [1.0 - b.y, 1.0 - b.x]]
                .iter()
                .map(|t| l2(&p, t))
                .fold(f64::INFINITY, f64::min)
        }
        Oriented::Chebyshev => {
            let (p1, p2) = if a.x <= b.x { (a, b) } else { (b, a) };
            let (x1, y1, x2, y2) = (p1.x, p1.y, p2.x, p2.y);
            let dx = (x2 - x1).max(y2 + y1);
            let dy = (x2 + x1).max((y2 - y1).abs());
            let dxy = (x2 - x1).max(1.0 - x2 - y2 + (1.0 - y1 - x2).abs());
            dx.min(dy).min(dxy)
        }
    })
}
