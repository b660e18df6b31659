use serde::{Deserialize, Serialize};

use crate::automorphisms::PointMap;
use crate::dynamics::newton::newton_fixed_point;
use crate::dynamics::orbit::{OrbitRecord, StopReason};
use crate::dynamics::target::greedy_clusters;
use crate::dynamics::Tolerances;
use crate::point::{Domain, Point};
use num_complex::Complex64 as C64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum VerdictKind {
    ConvergedFixedPoint { point: Point },
    Periodic { period: usize, cycle: Vec<Point> },
    BoundaryDivergent { tail: Vec<Point> },
    /// The orbit neither settled nor diverged, and Newton located an interior
    /// fixed point (irrational rotations, slow contractions).
    Recurrent { fixed_point: Point },
    Undecided,
}

impl VerdictKind {
    pub fn tag(&self) -> &'static str {
        match self {
            VerdictKind::ConvergedFixedPoint { .. } => "converged_fixed_point",
            VerdictKind::Periodic { .. } => "periodic",
            VerdictKind::BoundaryDivergent { .. } => "boundary_divergent",
            VerdictKind::Recurrent { .. } => "recurrent",
            VerdictKind::Undecided => "undecided",
        }
    }

    /// Verdicts that exhibit bounded behaviour tied to an interior fixed point
    /// or a cycle.
    pub fn is_fixed_side(&self) -> bool {
        matches!(
            self,
            VerdictKind::ConvergedFixedPoint { .. } | VerdictKind::Periodic { .. } | VerdictKind::Recurrent { .. }
        )
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, VerdictKind::BoundaryDivergent { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitVerdict {
    pub kind: VerdictKind,
    pub final_margin: f64,
    pub final_displacement: f64,
    pub steps: usize,
    pub stop: StopReason,
}

fn converged<M: PointMap + ?Sized>(rec: &OrbitRecord, f: &M, tol: &Tolerances) -> Option<Point> {
    if !(rec.final_displacement() < tol.fixed_displacement && rec.final_margin() > tol.fixed_margin) {
        return None;
    }
    let last = *rec.last();
    let polished = newton_fixed_point(f, &last, 5, tol);
    if let Some(z) = polished.point {
        if z.dist(&last) < 1e-8 && f.domain().margin(&z).is_ok_and(|m| m > tol.fixed_margin) {
            return Some(z);
        }
    }
    let residual = f.map_point(&last).ok()?.dist(&last);
    (residual < tol.fixed_residual).then_some(last)
}

fn periodic(rec: &OrbitRecord, tol: &Tolerances) -> Option<(usize, Vec<Point>)> {
    // Orbits collapsing onto a boundary point return arbitrarily close to
    // themselves without being cycles.
    if !(rec.final_margin() > tol.fixed_margin) {
        return None;
    }
    let n = rec.len();
    let returns = tol.period_returns.max(1);
    (2..=tol.period_max).find_map(|p| {
        if n < returns * p {
            return None;
        }
        let sustained =
            (0..returns).all(|r| rec.point(n - r * p).dist(rec.point(n - (r + 1) * p)) < tol.period_residual);
        if !sustained {
            return None;
        }
        let cycle: Vec<Point> = ((n - p + 1)..=n).map(|k| *rec.point(k)).collect();
        let spread = cycle.iter().map(|x| x.dist(&cycle[0])).fold(0.0, f64::max);
        (spread > 1e3 * tol.period_residual).then_some((p, cycle))
    })
}

fn boundary_tail(rec: &OrbitRecord, tol: &Tolerances) -> Option<Vec<Point>> {
    let m = &rec.margins;
    // At a numerical-boundary stop the rejected iterate sits on the boundary
    // up to rounding.
    let last = match (rec.stop, rec.rejected_margin) {
        (StopReason::NumericalBoundary, Some(r)) if r.abs() <= tol.margin_noise => r.abs().min(rec.final_margin()),
        _ => rec.final_margin(),
    };
    if m.is_empty() || !(last < tol.boundary_margin) {
        return None;
    }
    // Elliptic orbits can skim the boundary; a divergent one ends well below
    // everything it visited in its first half.
    let early = m[..m.len() / 2].iter().fold(rec.start_margin, |a, &b| a.min(b));
    if !(last < 0.5 * early) {
        return None;
    }
    let run = m.iter().rev().take_while(|&&x| x < tol.boundary_margin).count();
    let reached = matches!(rec.stop, StopReason::BoundaryReached | StopReason::NumericalBoundary);
    if run < tol.boundary_window && !reached {
        return None;
    }
    let w = run.min(tol.boundary_window);
    if w >= 2 {
        let window = &m[m.len() - w..];
        let k = tol.moving_average.clamp(1, w);
        let averages: Vec<f64> = window.windows(k).map(|s| s.iter().sum::<f64>() / k as f64).collect();
        // Root-based margins are noisy at the 1e−8 (bidisc) to 1e−5
        // (tridisc) level near repeated roots.
        let slack = 0.1 * tol.boundary_margin;
        if !averages.windows(2).all(|a| a[1] <= a[0] + slack) {
            return None;
        }
    }
    let from = m.len() - w.max(1);
    let tail: Vec<(usize, Point, f64)> = (from..m.len()).map(|i| (i, rec.points[i], m[i])).collect();
    Some(greedy_clusters(&tail, tol.cluster_eps).into_iter().map(|c| c.representative).collect())
}

// A point on the diagonal of the symmetrized domain (or the triangular set)
// built from coordinate averages along the tail.
fn diagonal_centroid(domain: Domain, tail: &[Point]) -> Option<Point> {
    let k = tail.len() as f64;
    let mean = |i: usize| tail.iter().map(|x| x.coords()[i]).sum::<C64>() / k;
    let zero = C64::new(0.0, 0.0);
    let x = match domain {
        Domain::G2 => {
            let c = mean(0) / 2.0;
            Point::pair(2.0 * c, c * c)
        }
        Domain::G3 => {
            let c = mean(0) / 3.0;
            Point::triple(3.0 * c, 3.0 * c * c, c * c * c)
        }
        Domain::Tetra => {
            let (a, b) = (mean(0), mean(1));
            Point::triple(a, b, a * b)
        }
        Domain::Penta => {
            let c = mean(1) / 2.0;
            Point::triple(zero, 2.0 * c, c * c)
        }
    };
    domain.margin(&x).is_ok_and(|m| m > 0.0).then_some(x)
}

/// Newton from a spread of orbit-derived starts; accepts the first interior
/// point whose residual is below the fixed-point threshold.
pub(crate) fn locate_fixed_point<M: PointMap + ?Sized>(f: &M, rec: &OrbitRecord, tol: &Tolerances) -> Option<Point> {
    let n = rec.len();
    let domain = f.domain();
    let half = &rec.points[n / 2..];
    let mut centroid = Point::zeros(domain.dim());
    for x in half {
        centroid = centroid.add_scaled(x, 1.0 / half.len() as f64);
    }
    let deepest = (0..n).max_by(|&a, &b| rec.margins[a].total_cmp(&rec.margins[b])).map(|i| rec.points[i]);
    let mut candidates: Vec<Point> = vec![centroid];
    candidates.extend(diagonal_centroid(domain, half));
    candidates.extend([*rec.last(), rec.points[n / 2], rec.start, domain.origin()]);
    candidates.extend(deepest);
    candidates.extend((1..8).map(|k| rec.points[n / 2 + k * (n - n / 2 - 1) / 8]));
    candidates.iter().filter(|z| domain.margin(z).is_ok_and(|m| m > 0.0)).find_map(|z0| {
        let out = newton_fixed_point(f, z0, tol.newton_max_iter, tol);
        let z = out.point.unwrap_or(out.best);
        let ok = out.residual < tol.fixed_residual && domain.margin(&z).is_ok_and(|m| m > tol.fixed_margin);
        ok.then_some(z)
    })
}

fn recurrent<M: PointMap + ?Sized>(rec: &OrbitRecord, f: &M, tol: &Tolerances) -> Option<Point> {
    // A genuine interior fixed point keeps every orbit in a compact set, so
    // finding one settles the orbit's side of the dichotomy.
    if rec.is_empty() || rec.stop == StopReason::Converged {
        return None;
    }
    locate_fixed_point(f, rec, tol)
}

/// Converged, periodic, boundary-divergent, recurrent, in that order;
/// undecided otherwise.
pub fn classify_orbit<M: PointMap + ?Sized>(rec: &OrbitRecord, f: &M, tol: &Tolerances) -> OrbitVerdict {
    let kind = if let Some(point) = converged(rec, f, tol) {
        VerdictKind::ConvergedFixedPoint { point }
    } else if let Some((period, cycle)) = periodic(rec, tol) {
        VerdictKind::Periodic { period, cycle }
    } else if let Some(tail) = boundary_tail(rec, tol) {
        VerdictKind::BoundaryDivergent { tail }
    } else if let Some(fixed_point) = recurrent(rec, f, tol) {
        VerdictKind::Recurrent { fixed_point }
    } else {
        VerdictKind::Undecided
    };
    OrbitVerdict {
        kind,
        final_margin: rec.final_margin(),
        final_displacement: rec.final_displacement(),
        steps: rec.len(),
        stop: rec.stop,
    }
}
