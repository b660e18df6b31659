use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::automorphisms::PointMap;
use crate::disc::angle_distance;
use crate::domains::{boundary_param_royal, desymmetrize2};
use crate::dynamics::classify::{classify_orbit, VerdictKind};
use crate::dynamics::orbit::iterate;
use crate::dynamics::Tolerances;
use crate::error::{Error, Result};
use crate::point::{Domain, Point};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointCluster {
    /// Member of smallest margin.
    pub representative: Point,
    pub margin: f64,
    pub multiplicity: usize,
    /// Largest orbit index among the members.
    pub last_visit: usize,
}

/// Greedy clustering in max-norm: each point joins the first cluster whose
/// seed lies within `eps`, else it seeds a new one.
pub fn greedy_clusters(points: &[(usize, Point, f64)], eps: f64) -> Vec<PointCluster> {
    let mut seeds: Vec<Point> = Vec::new();
    let mut clusters: Vec<PointCluster> = Vec::new();
    for &(index, x, margin) in points {
        match seeds.iter().position(|s| s.dist(&x) < eps) {
            Some(k) => {
                let c = &mut clusters[k];
                c.multiplicity += 1;
                c.last_visit = c.last_visit.max(index);
                if margin < c.margin {
                    c.margin = margin;
                    c.representative = x;
                }
            }
            None => {
                seeds.push(x);
                clusters.push(PointCluster { representative: x, margin, multiplicity: 1, last_visit: index });
            }
        }
    }
    clusters
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetCluster {
    pub representative: Point,
    pub margin: f64,
    pub multiplicity: usize,
    pub factors: [C64; 2],
    /// Max-norm distance to `(2e^{iθ}, e^{2iθ})` at `θ = arg s`.
    pub royal_circle_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetClass {
    RoyalCircle { thetas: Vec<f64> },
    MixedFace { theta: f64, unimodular_factor: usize },
    Other,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetSetEstimate {
    pub start: Point,
    pub steps: usize,
    pub tail_points: usize,
    pub clusters: Vec<TargetCluster>,
    pub classification: TargetClass,
}

fn classify_clusters(clusters: &[TargetCluster], tol: &Tolerances) -> TargetClass {
    if clusters.is_empty() {
        return TargetClass::Other;
    }
    let unimodular = |z: C64| (z.norm() - 1.0).abs() < tol.unimodular;
    let royal = clusters.iter().all(|c| {
        let [a, b] = c.factors;
        unimodular(a) && unimodular(b) && (a - b).norm() < tol.unimodular
    });
    if royal {
        let thetas = clusters.iter().map(|c| (0.5 * (c.factors[0] + c.factors[1])).arg()).collect();
        return TargetClass::RoyalCircle { thetas };
    }
    let mut face: Option<(f64, usize)> = None;
    for c in clusters {
        let flags = [unimodular(c.factors[0]), unimodular(c.factors[1])];
        let which = match flags {
            [true, false] => 0,
            [false, true] => 1,
            _ => return TargetClass::Other,
        };
        let theta = c.factors[which].arg();
        match face {
            None => face = Some((theta, which)),
            Some((t0, _)) if angle_distance(t0, theta) < tol.angle => {}
            Some(_) => return TargetClass::Other,
        }
    }
    let (theta, unimodular_factor) = face.expect("nonempty clusters");
    TargetClass::MixedFace { theta, unimodular_factor }
}

/// Boundary accumulation points of the orbit of `z0` under a self-map of
/// the symmetrized bidisc.
pub fn target_set_estimate<M: PointMap + ?Sized>(
    f: &M,
    z0: &Point,
    n_max: usize,
    burn_in: usize,
    tol: &Tolerances,
) -> Result<TargetSetEstimate> {
    if f.domain() != Domain::G2 {
        return Err(Error::DomainMismatch { expected: "g2", found: f.domain().name() });
    }
    let rec = iterate(f, z0, n_max, tol)?;
    let verdict = classify_orbit(&rec, f, tol);
    if !matches!(verdict.kind, VerdictKind::BoundaryDivergent { .. }) {
        return Err(Error::NotDivergent);
    }
    // Fast orbits reach the numerical boundary in a few dozen steps; never
    // burn more than half of the record.
    let skip = burn_in.min(rec.len() / 2);
    let tail: Vec<(usize, Point, f64)> = (skip..rec.len())
        .filter(|&i| rec.margins[i] < tol.tail_margin)
        .map(|i| (i, rec.points[i], rec.margins[i]))
        .collect();
    let recent = tail.len() - tail.len() / 4;
    let recent_index = tail.get(recent.min(tail.len().saturating_sub(1))).map_or(0, |t| t.0);
    let clusters = greedy_clusters(&tail, tol.cluster_eps)
        .into_iter()
        .filter(|c| c.last_visit >= recent_index && c.margin <= tol.boundary_margin)
        .map(|c| {
            let factors = desymmetrize2(c.representative.sym2())?;
            let theta = c.representative.coords()[0].arg();
            let royal_circle_distance = c.representative.dist(&boundary_param_royal(theta).into());
            Ok(TargetCluster {
                representative: c.representative,
                margin: c.margin,
                multiplicity: c.multiplicity,
                factors,
                royal_circle_distance,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let classification = classify_clusters(&clusters, tol);
    Ok(TargetSetEstimate { start: *z0, steps: rec.len(), tail_points: tail.len(), clusters, classification })
}
