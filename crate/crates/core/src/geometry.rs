//! Ambient carriers, collar coordinates, the spine retraction, and the
//! collar-collapse map with its homeomorphic blends.
//!
//! Two carriers are modeled. The disk is the rectangle `[0,1] x [-1,1]`
//! with spine `E = {y = 0}`; the boundary coordinate runs over the top and
//! bottom edges, and the vertical edges `{0,1} x [-1,1]` are degenerate
//! collar fibers over the spine endpoints. The annulus is
//! `(R/Z) x [-1,1]` with the core circle `{r = 0}` as spine. In both
//! models a collar fiber is the vertical segment through a boundary point,
//! so collar arithmetic is affine and branch-free.

use crate::{Error, Result};

/// Ambient surface carrying the spine dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ManifoldModel {
    /// Rectangle `[0,1] x [-1,1]`, spine `{y = 0}`.
    Disk,
    /// Strip `(R/Z) x [-1,1]`, spine `{r = 0}`.
    Annulus,
}

/// Which boundary component a collar coordinate is anchored at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundarySide {
    /// `y = +1` (resp. `r = +1`).
    Plus,
    /// `y = -1` (resp. `r = -1`).
    Minus,
}

/// A point of the carrier. `x` is the interval coordinate on the disk and
/// the angle (stored reduced into `[0,1)`) on the annulus; `y` is the
/// transverse coordinate in `[-1,1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbientPoint {
    pub x: f64,
    pub y: f64,
}

impl AmbientPoint {
    pub fn new(x: f64, y: f64) -> Self {
        AmbientPoint { x, y }
    }
}

/// Collar coordinate `(eta, s)`: `eta` on the boundary component given by
/// `side`, `s in [0,1]` along the fiber, `s = 0` on the boundary and
/// `s = 1` on the spine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollarCoord {
    pub side: BoundarySide,
    pub eta: f64,
    pub s: f64,
}

impl CollarCoord {
    pub fn new(side: BoundarySide, eta: f64, s: f64) -> Self {
        CollarCoord { side, eta, s }
    }
}

/// Arc distance on R/Z.
pub fn circle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Reduce an angle into `[0,1)`.
pub fn reduce_angle(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r == 1.0 {
        0.0
    } else {
        r
    }
}

/// The fiber-collapse profile: `phi(s) = min(2s, 1)`.
pub fn phi(s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::domain("collar parameter s", s, "[0, 1]"));
    }
    Ok((2.0 * s).min(1.0))
}

/// Strictly increasing blend `(1 - delta) * phi(s) + delta * s`.
///
/// A homeomorphism of `[0,1]` within `delta / 2` of `phi` in sup norm.
pub fn phi_delta(s: f64, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::domain("blend delta", delta, "(0, 1]"));
    }
    let base = phi(s)?;
    Ok((1.0 - delta) * base + delta * s)
}

impl ManifoldModel {
    /// Validating constructor for carrier points; reduces the angle on the
    /// annulus.
    pub fn point(&self, x: f64, y: f64) -> Result<AmbientPoint> {
        if !(-1.0..=1.0).contains(&y) {
            return Err(Error::domain("transverse coordinate", y, "[-1, 1]"));
        }
        match self {
            ManifoldModel::Disk => {
                if !(0.0..=1.0).contains(&x) {
                    return Err(Error::domain("disk coordinate x", x, "[0, 1]"));
                }
                Ok(AmbientPoint::new(x, y))
            }
            ManifoldModel::Annulus => Ok(AmbientPoint::new(reduce_angle(x), y)),
        }
    }

    pub fn contains(&self, p: AmbientPoint) -> bool {
        let x_ok = match self {
            ManifoldModel::Disk => (0.0..=1.0).contains(&p.x),
            ManifoldModel::Annulus => p.x.is_finite(),
        };
        x_ok && (-1.0..=1.0).contains(&p.y)
    }

    /// Strict interior of the carrier (the annulus has no lateral boundary).
    pub fn strictly_inside(&self, p: AmbientPoint) -> bool {
        let x_ok = match self {
            ManifoldModel::Disk => p.x > 0.0 && p.x < 1.0,
            ManifoldModel::Annulus => p.x.is_finite(),
        };
        x_ok && p.y > -1.0 && p.y < 1.0
    }

    /// Carrier metric: Euclidean on the disk, product of arc and Euclidean
    /// on the annulus.
    pub fn dist(&self, a: AmbientPoint, b: AmbientPoint) -> f64 {
        let dx = match self {
            ManifoldModel::Disk => a.x - b.x,
            ManifoldModel::Annulus => circle_dist(a.x, b.x),
        };
        let dy = a.y - b.y;
        (dx * dx + dy * dy).sqrt()
    }

    /// Metric on the spine coordinate alone.
    pub fn spine_dist(&self, a: f64, b: f64) -> f64 {
        match self {
            ManifoldModel::Disk => (a - b).abs(),
            ManifoldModel::Annulus => circle_dist(a, b),
        }
    }

    pub fn on_spine(&self, p: AmbientPoint) -> bool {
        p.y == 0.0
    }

    /// `Psi(eta, s)`: the collar parameterization. `s = 0` is the boundary
    /// point `eta` itself, `s = 1` its spine endpoint.
    pub fn collar_to_ambient(&self, c: CollarCoord) -> Result<AmbientPoint> {
        if !(0.0..=1.0).contains(&c.s) {
            return Err(Error::domain("collar parameter s", c.s, "[0, 1]"));
        }
        let x = match self {
            ManifoldModel::Disk => {
                if !(0.0..=1.0).contains(&c.eta) {
                    return Err(Error::domain("boundary coordinate eta", c.eta, "[0, 1]"));
                }
                c.eta
            }
            ManifoldModel::Annulus => reduce_angle(c.eta),
        };
        let y = match c.side {
            BoundarySide::Plus => 1.0 - c.s,
            BoundarySide::Minus => c.s - 1.0,
        };
        Ok(AmbientPoint::new(x, y))
    }

    /// Inverse of [`collar_to_ambient`](Self::collar_to_ambient) off the
    /// spine. Spine points report `s = 1` on the `Plus` side (deterministic
    /// tie-break).
    pub fn ambient_to_collar(&self, p: AmbientPoint) -> Result<CollarCoord> {
        if !(-1.0..=1.0).contains(&p.y) {
            return Err(Error::domain("transverse coordinate", p.y, "[-1, 1]"));
        }
        if !self.contains(p) {
            return Err(Error::domain("disk coordinate x", p.x, "[0, 1]"));
        }
        let eta = match self {
            ManifoldModel::Disk => p.x,
            ManifoldModel::Annulus => reduce_angle(p.x),
        };
        Ok(if p.y > 0.0 {
            CollarCoord::new(BoundarySide::Plus, eta, 1.0 - p.y)
        } else if p.y < 0.0 {
            CollarCoord::new(BoundarySide::Minus, eta, 1.0 + p.y)
        } else {
            CollarCoord::new(BoundarySide::Plus, eta, 1.0)
        })
    }

    /// Collapse the collar fiber through `p` to its spine endpoint.
    /// Idempotent; fixes the spine.
    pub fn retraction(&self, p: AmbientPoint) -> AmbientPoint {
        AmbientPoint::new(
            match self {
                ManifoldModel::Disk => p.x,
                ManifoldModel::Annulus => reduce_angle(p.x),
            },
            0.0,
        )
    }

    /// Apply `phi` (or its `phi_delta` blend when `delta` is given) to the
    /// collar coordinate of `p`.
    ///
    /// Without `delta` this collapses the inner half of every fiber onto the
    /// spine, so the preimage of the spine is the neighborhood `s >= 1/2`;
    /// with `delta > 0` it is injective.
    pub fn upsilon(&self, p: AmbientPoint, delta: Option<f64>) -> Result<AmbientPoint> {
        if self.on_spine(p) {
            return Ok(self.retraction(p));
        }
        let c = self.ambient_to_collar(p)?;
        let s = match delta {
            None => phi(c.s.clamp(0.0, 1.0))?,
            Some(d) => phi_delta(c.s.clamp(0.0, 1.0), d)?,
        };
        self.collar_to_ambient(CollarCoord::new(c.side, c.eta, s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collar_examples() {
        let m = ManifoldModel::Disk;
        let p = m
            .collar_to_ambient(CollarCoord::new(BoundarySide::Plus, 0.3, 0.0))
            .unwrap();
        assert_eq!(p, AmbientPoint::new(0.3, 1.0));
        let p = m
            .collar_to_ambient(CollarCoord::new(BoundarySide::Plus, 0.3, 1.0))
            .unwrap();
        assert_eq!(p, AmbientPoint::new(0.3, 0.0));
        let p = ManifoldModel::Annulus
            .collar_to_ambient(CollarCoord::new(BoundarySide::Minus, 0.25, 0.5))
            .unwrap();
        assert_eq!(p, AmbientPoint::new(0.25, -0.5));
    }

    #[test]
    fn collar_rejects_bad_s() {
        assert!(ManifoldModel::Disk
            .collar_to_ambient(CollarCoord::new(BoundarySide::Plus, 0.3, 1.5))
            .is_err());
        assert!(phi(-0.1).is_err());
        assert!(phi_delta(0.5, 0.0).is_err());
    }

    #[test]
    fn ambient_to_collar_examples() {
        let m = ManifoldModel::Disk;
        let c = m.ambient_to_collar(AmbientPoint::new(0.3, 1.0)).unwrap();
        assert_eq!(c, CollarCoord::new(BoundarySide::Plus, 0.3, 0.0));
        let c = m.ambient_to_collar(AmbientPoint::new(0.7, -0.25)).unwrap();
        assert_eq!(c.side, BoundarySide::Minus);
        assert!((c.s - 0.75).abs() < 1e-15);
        // spine tie-break
        let c = ManifoldModel::Annulus
            .ambient_to_collar(AmbientPoint::new(0.0, 0.0))
            .unwrap();
        assert_eq!(c, CollarCoord::new(BoundarySide::Plus, 0.0, 1.0));
    }

    #[test]
    fn retraction_examples() {
        let m = ManifoldModel::Disk;
        assert_eq!(
            m.retraction(AmbientPoint::new(0.3, 0.8)),
            AmbientPoint::new(0.3, 0.0)
        );
        assert_eq!(
            m.retraction(AmbientPoint::new(0.3, 0.0)),
            AmbientPoint::new(0.3, 0.0)
        );
        assert_eq!(
            ManifoldModel::Annulus.retraction(AmbientPoint::new(0.6, -1.0)),
            AmbientPoint::new(0.6, 0.0)
        );
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(0.25).unwrap(), 0.5);
        assert_eq!(phi(0.75).unwrap(), 1.0);
        assert!((phi_delta(0.75, 0.1).unwrap() - 0.975).abs() < 1e-15);
    }

    #[test]
    fn upsilon_examples() {
        let m = ManifoldModel::Disk;
        // s = 0.75 -> phi = 1 -> spine
        let p = m.upsilon(AmbientPoint::new(0.3, 0.25), None).unwrap();
        assert!((p.x - 0.3).abs() < 1e-15 && p.y.abs() < 1e-15);
        // boundary fixed
        let p = m.upsilon(AmbientPoint::new(0.3, 1.0), None).unwrap();
        assert_eq!(p, AmbientPoint::new(0.3, 1.0));
        // blended: phi_delta(0.5, 0.1) = 0.95 -> y = 0.05
        let p = m.upsilon(AmbientPoint::new(0.3, 0.5), Some(0.1)).unwrap();
        assert!((p.y - 0.05).abs() < 1e-12);
    }

    #[test]
    fn vertical_edges_behave_continuously() {
        // The disk's vertical edges are degenerate fibers; approaching them
        // horizontally the collar operations converge to the edge values.
        let m = ManifoldModel::Disk;
        for y in [0.9, 0.4, -0.7] {
            let edge = m.upsilon(AmbientPoint::new(0.0, y), None).unwrap();
            let near = m.upsilon(AmbientPoint::new(1e-9, y), None).unwrap();
            assert!(m.dist(edge, near) < 1e-8);
        }
    }
}
