use num_complex::Complex64 as C64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::automorphisms::PointMap;
use crate::disc::{angle_distance, MobiusTransform};
use crate::dynamics::{
    run_orbit, target_set_estimate, Atom, DiscAtom, DiscWord, Inbound, Outbound, SelfMap, TargetClass,
    TargetSetEstimate, Tolerances,
};
use crate::error::{Error, Result};
use crate::point::{sample_disc, Point};

/// Largest distance from a royal-circle cluster to `(2e^{iθ}, e^{2iθ})`.
pub const ROYAL_TOL: f64 = 1e-6;

/// Greedy max-norm clustering; returns one seed per cluster.
pub fn greedy_points(points: &[Point], eps: f64) -> Vec<Point> {
    let mut seeds: Vec<Point> = Vec::new();
    for x in points {
        if !seeds.iter().any(|s| s.dist(x) < eps) {
            seeds.push(*x);
        }
    }
    seeds
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetProperty {
    RoyalCircle { theta: f64 },
    MixedFace { theta: f64 },
    Unstructured,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetReport {
    pub starts: Vec<Point>,
    pub estimates: Vec<TargetSetEstimate>,
    /// Starts whose orbits were not boundary-divergent.
    pub non_divergent_starts: usize,
    pub property: TargetProperty,
    pub max_royal_distance: f64,
    pub max_angle_deviation: f64,
    pub passed: bool,
}

/// Target sets from every start, and whether the structure found at the
/// first start holds at all of them.
pub fn verify_target_structure<M: PointMap + ?Sized>(
    f: &M,
    starts: &[Point],
    n_max: usize,
    burn_in: usize,
    tol: &Tolerances,
) -> Result<TargetReport> {
    let first = starts.first().ok_or_else(|| Error::InvalidArgument("no starts".into()))?;
    let (_, verdict) = run_orbit(f, first, tol)?;
    if !verdict.kind.is_divergent() {
        return Err(Error::NotDivergent);
    }
    let mut estimates = Vec::new();
    let mut non_divergent_starts = 0;
    for z0 in starts {
        match target_set_estimate(f, z0, n_max, burn_in, tol) {
            Ok(e) => estimates.push(e),
            Err(Error::NotDivergent) => non_divergent_starts += 1,
            Err(e) => return Err(e),
        }
    }
    let property = match &estimates[0].classification {
        TargetClass::RoyalCircle { thetas } => TargetProperty::RoyalCircle { theta: thetas[0] },
        TargetClass::MixedFace { theta, .. } => TargetProperty::MixedFace { theta: *theta },
        TargetClass::Other => TargetProperty::Unstructured,
    };
    let clusters = || estimates.iter().flat_map(|e| &e.clusters);
    let max_royal_distance = clusters().map(|c| c.royal_circle_distance).fold(0.0, f64::max);
    let unimodular = |z: C64| (z.norm() - 1.0).abs() < tol.unimodular;
    let (max_angle_deviation, structured) = match property {
        TargetProperty::RoyalCircle { theta } => {
            let dev = clusters()
                .map(|c| angle_distance((0.5 * (c.factors[0] + c.factors[1])).arg(), theta))
                .fold(0.0, f64::max);
            let all_royal = estimates.iter().all(|e| matches!(e.classification, TargetClass::RoyalCircle { .. }));
            (dev, all_royal && max_royal_distance < ROYAL_TOL)
        }
        TargetProperty::MixedFace { theta } => {
            // Every cluster needs a unimodular factor at the common angle.
            let dev = clusters()
                .map(|c| {
                    c.factors
                        .iter()
                        .filter(|a| unimodular(**a))
                        .map(|a| angle_distance(a.arg(), theta))
                        .fold(f64::INFINITY, f64::min)
                })
                .fold(0.0, f64::max);
            (dev, true)
        }
        TargetProperty::Unstructured => (f64::INFINITY, false),
    };
    let passed = structured
        && non_divergent_starts == 0
        && estimates.iter().all(|e| !e.clusters.is_empty())
        && max_angle_deviation < tol.angle;
    Ok(TargetReport {
        starts: starts.to_vec(),
        estimates,
        non_divergent_starts,
        property,
        max_royal_distance,
        max_angle_deviation,
        passed,
    })
}

/// A bidisc self-map whose orbits accumulate on `π₂(c, e^{iθ₀})`: the
/// functional `Φ_ω` with `ω = e^{−iθ₀}` restricted to the slice `π₂(c, ·)`
/// fixes `e^{iθ₀}` up to a rotation; the route corrects the rotation and
/// contracts towards `e^{iθ₀}` with boundary derivative `contraction < 1/2`.
pub fn mixed_face_map(theta0: f64, c: C64, contraction: f64) -> Result<SelfMap> {
    if !(c.norm() < 1.0) || !(contraction > 0.0 && contraction < 0.5) {
        return Err(Error::InvalidArgument(format!("mixed face parameters c = {c}, d = {contraction}")));
    }
    let target = C64::from_polar(1.0, theta0);
    let omega = target.conj();
    // Image of e^{iθ₀} under λ ↦ Φ_ω(π₂(c, λ)).
    let u0 = (c - target) / (1.0 - omega * c);
    // z ↦ (z + r)/(1 + rz) fixes 1 with derivative (1 − r)/(1 + r).
    let r = (1.0 - contraction) / (1.0 + contraction);
    let push = MobiusTransform::new(0.0, C64::new(-r, 0.0))?;
    let via = DiscWord::new(vec![
        DiscAtom::Mobius(MobiusTransform::rotation_by(theta0)),
        DiscAtom::Mobius(push),
        DiscAtom::Mobius(MobiusTransform::rotation_by(-u0.arg())),
    ]);
    SelfMap::new(
        crate::point::Domain::G2,
        vec![Atom::DiscRoute { outbound: Outbound::Magic { omega }, via, inbound: Inbound::Pinned { c } }],
    )
}

/// A mixed-face map with random angle, pinned factor `|c| ≤ 0.8` and
/// contraction in `[0.1, 0.4]`; returns the map and its angle.
pub fn random_mixed_face<R: Rng + ?Sized>(rng: &mut R) -> Result<(SelfMap, f64)> {
    let theta0 = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    let c = sample_disc(rng, 0.8);
    let d = rng.random_range(0.1..0.4);
    Ok((mixed_face_map(theta0, c, d)?, theta0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::{Automorphism, GnAut};
    use crate::lab::fixset::halton_points;
    use crate::lab::sampler::trial_rng;
    use crate::point::Domain;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn starts() -> Vec<Point> {
        let mut s = vec![Domain::G2.origin()];
        s.extend(halton_points(Domain::G2, 9, 100));
        s
    }

    #[test]
    fn hyperbolic_lift_targets_denjoy_wolff_angle() {
        let h = MobiusTransform::new(0.7, c(0.4, -0.6)).unwrap();
        assert!(!h.has_interior_fixed_point());
        let f = Automorphism::Gn(GnAut::new(2, h).unwrap());
        let r = verify_target_structure(&f, &starts(), 5000, 100, &Tolerances::default()).unwrap();
        let TargetProperty::RoyalCircle { theta } = r.property else { panic!("{r:?}") };
        assert!(angle_distance(theta, h.denjoy_wolff_point().unwrap().arg()) < 1e-3);
        assert!(r.passed, "{r:#?}");
    }

    #[test]
    fn parabolic_lift_targets_royal_circle() {
        let theta = 2.0_f64;
        let h = MobiusTransform::new(theta, C64::from_polar((theta / 2.0).sin(), -0.3)).unwrap();
        let f = Automorphism::Gn(GnAut::new(2, h).unwrap());
        let r = verify_target_structure(&f, &starts()[..4], 5000, 100, &Tolerances::default()).unwrap();
        let TargetProperty::RoyalCircle { theta: t } = r.property else { panic!("{r:?}") };
        assert!(angle_distance(t, h.denjoy_wolff_point().unwrap().arg()) < 1e-3, "{r:#?}");
    }

    #[test]
    fn mixed_face_maps_keep_their_angle() {
        let mut rng = trial_rng(17, 0);
        for _ in 0..5 {
            let (f, theta0) = random_mixed_face(&mut rng).unwrap();
            let r = verify_target_structure(&f, &starts(), 5000, 100, &Tolerances::default()).unwrap();
            let TargetProperty::MixedFace { theta } = r.property else { panic!("{r:#?}") };
            assert!(angle_distance(theta, theta0) < 1e-3);
            assert!(r.passed, "{r:#?}");
        }
    }

    #[test]
    fn fixed_point_map_is_rejected() {
        let f = Automorphism::Gn(GnAut::new(2, MobiusTransform::new(1.0, c(0.1, 0.1)).unwrap()).unwrap());
        assert_eq!(verify_target_structure(&f, &starts(), 2000, 10, &Tolerances::default()), Err(Error::NotDivergent));
    }
}
