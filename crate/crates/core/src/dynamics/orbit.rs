use serde::{Deserialize, Serialize};

use crate::automorphisms::PointMap;
use crate::dynamics::Tolerances;
use crate::error::{Error, Result};
use crate::point::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// A step moved less than the convergence threshold.
    Converged,
    /// The margin dropped below the boundary threshold.
    BoundaryReached,
    /// The next iterate left the domain by rounding while the orbit was
    /// already within the numerical band of the boundary; it is not recorded.
    NumericalBoundary,
    MaxSteps,
}

/// `points[k]` is the `(k+1)`-th iterate of `start`; `displacements[k]` is
/// its distance to the previous point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub start: Point,
    pub start_margin: f64,
    pub points: Vec<Point>,
    pub margins: Vec<f64>,
    pub displacements: Vec<f64>,
    pub stop: StopReason,
    /// Computed margin of the iterate rejected at a numerical-boundary stop.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rejected_margin: Option<f64>,
}

impl OrbitRecord {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The last point, or the start for an empty record.
    pub fn last(&self) -> &Point {
        self.points.last().unwrap_or(&self.start)
    }

    pub fn final_margin(&self) -> f64 {
        self.margins.last().copied().unwrap_or(self.start_margin)
    }

    pub fn final_displacement(&self) -> f64 {
        self.displacements.last().copied().unwrap_or(f64::INFINITY)
    }

    /// Point `k` of the orbit counting the start as point 0.
    pub fn point(&self, k: usize) -> &Point {
        if k == 0 { &self.start } else { &self.points[k - 1] }
    }
}

fn near_boundary_stop(current_margin: f64, rejected_margin: f64, tol: &Tolerances) -> bool {
    current_margin < tol.numerical_band || rejected_margin >= -tol.margin_noise
}

/// Iterates `f` from `z0` for at most `n_max` steps.
pub fn iterate<M: PointMap + ?Sized>(f: &M, z0: &Point, n_max: usize, tol: &Tolerances) -> Result<OrbitRecord> {
    let domain = f.domain();
    domain.check_dim(z0)?;
    let start_margin = domain.margin(z0)?;
    if !(start_margin > 0.0) {
        return Err(Error::PointOutsideDomain { domain: domain.name(), margin: start_margin });
    }
    let mut rec = OrbitRecord {
        start: *z0,
        start_margin,
        points: Vec::new(),
        margins: Vec::new(),
        displacements: Vec::new(),
        stop: StopReason::MaxSteps,
        rejected_margin: None,
    };
    let mut z = *z0;
    let mut margin = start_margin;
    for _ in 0..n_max {
        let (next, next_margin) = match f.map_point(&z) {
            Ok(next) => {
                let m = domain.margin(&next)?;
                (next, m)
            }
            Err(Error::AtomRangeViolation { margin: m, .. } | Error::PointOutsideDomain { margin: m, .. })
                if near_boundary_stop(margin, m, tol) =>
            {
                rec.stop = StopReason::NumericalBoundary;
                rec.rejected_margin = Some(m);
                return Ok(rec);
            }
            Err(e) => return Err(e),
        };
        if !(next_margin > 0.0) {
            if near_boundary_stop(margin, next_margin, tol) {
                rec.stop = StopReason::NumericalBoundary;
                rec.rejected_margin = Some(next_margin);
                return Ok(rec);
            }
            return Err(Error::AtomRangeViolation { index: 0, margin: next_margin });
        }
        let step = next.dist(&z);
        rec.points.push(next);
        rec.margins.push(next_margin);
        rec.displacements.push(step);
        z = next;
        margin = next_margin;
        if step < tol.converge_step {
            rec.stop = StopReason::Converged;
            break;
        }
        if margin < tol.boundary_stop {
            rec.stop = StopReason::BoundaryReached;
            break;
        }
    }
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::{Automorphism, GnAut, PentaAut};
    use crate::disc::MobiusTransform;
    use crate::dynamics::SelfMap;
    use crate::point::Domain;
    use num_complex::Complex64 as C64;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn half_shift() -> MobiusTransform {
        MobiusTransform::new(0.0, c(-0.5, 0.0)).unwrap()
    }

    #[test]
    fn hyperbolic_lift_tends_to_royal_point() {
        let h = half_shift();
        let f = Automorphism::Gn(GnAut::new(2, h).unwrap());
        let tol = Tolerances::default();
        let rec = iterate(&f, &Domain::G2.origin(), 5000, &tol).unwrap();
        assert_ne!(rec.stop, StopReason::MaxSteps);
        // Oracle: (2hⁿ(0), hⁿ(0)²) computed in the disc.
        let mut w = c(0.0, 0.0);
        for (k, x) in rec.points.iter().enumerate().take(12) {
            w = h.apply(w);
            assert!(x.dist(&Point::pair(2.0 * w, w * w)) < 1e-12, "step {k}");
        }
        assert!(rec.last().dist(&Point::pair(c(2.0, 0.0), c(1.0, 0.0))) < 1e-5);
        assert!(rec.margins.iter().all(|m| *m > 0.0));
    }

    #[test]
    fn identity_stops_at_first_step() {
        let f = SelfMap::identity(Domain::G2);
        let z0 = Point::pair(c(0.3, 0.0), c(0.01, 0.0));
        let rec = iterate(&f, &z0, 5000, &Tolerances::default()).unwrap();
        assert_eq!(rec.len(), 1);
        assert_eq!(rec.stop, StopReason::Converged);
        assert_eq!(rec.points[0], z0);
    }

    #[test]
    fn pentablock_orbit_of_origin() {
        let g = half_shift();
        let f = Automorphism::Penta(PentaAut::new(c(1.0, 0.0), g).unwrap());
        let rec = iterate(&f, &Domain::Penta.origin(), 30, &Tolerances::default()).unwrap();
        let mut w = c(0.0, 0.0);
        for x in &rec.points {
            w = g.apply(w);
            assert!(x.dist(&Point::triple(c(0.0, 0.0), 2.0 * w, w * w)) < 1e-12);
        }
    }

    #[test]
    fn reproducible_and_rejects_outside_start() {
        let f = Automorphism::Gn(GnAut::new(2, MobiusTransform::new(2.0, c(0.3, 0.4)).unwrap()).unwrap());
        let z0 = Point::pair(c(0.1, 0.2), c(0.0, -0.3));
        let tol = Tolerances::default();
        assert_eq!(iterate(&f, &z0, 500, &tol).unwrap(), iterate(&f, &z0, 500, &tol).unwrap());
        let out = Point::pair(c(3.0, 0.0), c(0.0, 0.0));
        assert!(matches!(iterate(&f, &out, 10, &tol), Err(Error::PointOutsideDomain { .. })));
    }
}
