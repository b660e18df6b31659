use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::automorphisms::{Automorphism, PointMap};
use crate::disc::MobiusTransform;
use crate::domains::{self, symmetrize2, PentaPoint, TetraPoint};
use crate::dynamics::selfmap::{axis_projection, zero_trace_retraction};
use crate::dynamics::{iterate, newton_fixed_point, Atom, SelfMap, StopReason, Tolerances};
use crate::error::{Error, Result};
use crate::lab::target::greedy_points;
use crate::point::{Domain, Point};

/// Residual below which two maps are taken to agree on the samples.
pub const AGREEMENT: f64 = 1e-9;
/// Idempotency threshold for retractions.
pub const RETRACTION_TOL: f64 = 1e-10;
/// Curve points of an involution must be fixed to this.
pub const CURVE_TOL: f64 = 1e-10;
/// Newton fixed points must lie this close to the involution curve.
pub const CURVE_MODEL_TOL: f64 = 1e-8;
/// Distance beyond which a fixed point is a stray from the predicted model.
pub const MODEL_TOL: f64 = 1e-6;
/// Samples used for the `f² ≡ I` and `f⁴ ≡ f²` tests.
pub const IDENTITY_SAMPLES: usize = 1000;

/// `index`-th element of the van der Corput sequence in `base`.
pub fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

const PRIMES: [u64; 7] = [2, 3, 5, 7, 11, 13, 17];

fn halton_disc(index: u64, dim: usize, radius: f64) -> C64 {
    let u = halton(index, PRIMES[2 * dim]);
    let v = halton(index, PRIMES[2 * dim + 1]);
    C64::from_polar(radius * u.sqrt(), TAU * v)
}

/// Deterministic interior points from a Halton sequence starting at
/// `offset + 1`. Roots (and tetrablock coordinates) stay within radius 0.95.
pub fn halton_points(domain: Domain, count: usize, offset: u64) -> Vec<Point> {
    let mut out = Vec::with_capacity(count);
    let mut index = offset;
    while out.len() < count {
        index += 1;
        let x: Point = match domain {
            Domain::G2 => symmetrize2(halton_disc(index, 0, 0.95), halton_disc(index, 1, 0.95)).into(),
            Domain::G3 => {
                let r: Vec<C64> = (0..3).map(|k| halton_disc(index, k, 0.95)).collect();
                domains::symmetrize3(r[0], r[1], r[2]).into()
            }
            Domain::Tetra => {
                let r: Vec<C64> = (0..3).map(|k| halton_disc(index, k, 0.95)).collect();
                TetraPoint::new(r[0], r[1], r[2]).into()
            }
            Domain::Penta => {
                let base = symmetrize2(halton_disc(index, 0, 0.95), halton_disc(index, 1, 0.95));
                let Ok(rhs) = domains::penta_rhs(base, domains::BetaVariant::Literature) else { continue };
                PentaPoint::new(halton_disc(index, 2, 0.95 * rhs), base.s, base.p).into()
            }
        };
        if domain.margin(&x).is_ok_and(|m| m > 0.0) {
            out.push(x);
        }
    }
    out
}

fn compose_n<M: PointMap + ?Sized>(f: &M, x: &Point, n: usize) -> Result<Point> {
    (0..n).try_fold(*x, |y, _| f.map_point(&y))
}

/// `max |fᵃ(x) − fᵇ(x)|` over the samples.
pub fn power_residual<M: PointMap + ?Sized>(f: &M, a: usize, b: usize, samples: &[Point]) -> Result<f64> {
    samples.iter().try_fold(0.0_f64, |acc, x| Ok(acc.max(compose_n(f, x, a)?.dist(&compose_n(f, x, b)?))))
}

/// `max |ρ(ρ(x)) − ρ(x)|` over the samples.
pub fn retraction_residual<M: PointMap + ?Sized>(rho: &M, samples: &[Point]) -> Result<f64> {
    power_residual(rho, 2, 1, samples)
}

/// Whether `ρ ∘ ρ = ρ` on the samples to 1e−10.
pub fn retraction_check<M: PointMap + ?Sized>(rho: &M, samples: &[Point]) -> bool {
    retraction_residual(rho, samples).is_ok_and(|r| r < RETRACTION_TOL)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FixClass {
    MinusI,
    InvolutionCurve { h: MobiusTransform },
    Singleton { point: Point },
    FullDomain,
    RetractGeneric,
    TriangularContained,
    AxisZ3,
    Other,
}

impl FixClass {
    pub fn tag(&self) -> &'static str {
        match self {
            FixClass::MinusI => "minus_i",
            FixClass::InvolutionCurve { .. } => "involution_curve",
            FixClass::Singleton { .. } => "singleton",
            FixClass::FullDomain => "full_domain",
            FixClass::RetractGeneric => "retract_generic",
            FixClass::TriangularContained => "triangular_contained",
            FixClass::AxisZ3 => "axis_z3",
            FixClass::Other => "other",
        }
    }
}

/// An explicit retraction onto the fixed set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RetractionWitness {
    Identity,
    Constant { point: Point },
    /// `(s, p) ↦ (0, p)`.
    ZeroTrace,
    AxisProjection { index: usize },
    /// `x ↦ lim fⁿ(x)`.
    IterateLimit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixSetReport {
    pub domain: Domain,
    pub classification: FixClass,
    /// Classification read off from the map's algebraic data, when known.
    pub predicted: Option<FixClass>,
    pub fixed_points: Vec<Point>,
    pub max_fixed_residual: f64,
    /// Largest distance from a collected fixed point to the model set.
    pub model_distance: f64,
    pub curve_samples: usize,
    pub curve_residual: Option<f64>,
    pub identity: bool,
    pub involutive: bool,
    pub f4_equals_f2: Option<bool>,
    /// Whether the fixed set is a retract according to the criterion for
    /// the domain.
    pub criterion_retract: bool,
    pub retract: bool,
    pub witness: Option<RetractionWitness>,
    /// Idempotency and image-fixed residual of the witness.
    pub witness_residual: Option<f64>,
    pub passed: bool,
}

fn collect_fixed_points<M: PointMap + ?Sized>(f: &M, grid: usize, tol: &Tolerances) -> Result<(Vec<Point>, f64)> {
    let domain = f.domain();
    let mut points = Vec::new();
    let mut worst = 0.0_f64;
    for z0 in halton_points(domain, grid, 0) {
        let out = newton_fixed_point(f, &z0, tol.newton_max_iter, tol);
        let z = out.point.unwrap_or(out.best);
        if out.residual < tol.fixed_residual && domain.margin(&z).is_ok_and(|m| m > 0.0) {
            worst = worst.max(f.map_point(&z)?.dist(&z));
            points.push(z);
        }
    }
    if points.is_empty() {
        return Err(Error::NoFixedPointFound);
    }
    Ok((points, worst))
}

fn witness_map(domain: Domain, w: &RetractionWitness) -> Option<SelfMap> {
    match w {
        RetractionWitness::Identity => Some(SelfMap::identity(domain)),
        RetractionWitness::Constant { point } => SelfMap::new(domain, vec![Atom::Constant { point: *point }]).ok(),
        RetractionWitness::ZeroTrace => Some(zero_trace_retraction()),
        RetractionWitness::AxisProjection { index } => Some(axis_projection(*index)),
        RetractionWitness::IterateLimit => None,
    }
}

struct IterateLimit<'a, M: ?Sized> {
    f: &'a M,
    tol: Tolerances,
}

impl<M: PointMap + ?Sized> PointMap for IterateLimit<'_, M> {
    fn domain(&self) -> Domain {
        self.f.domain()
    }

    fn map_point(&self, x: &Point) -> Result<Point> {
        let rec = iterate(self.f, x, self.tol.n_max, &self.tol)?;
        if rec.stop != StopReason::Converged {
            return Err(Error::DidNotConverge { sweeps: rec.len() });
        }
        Ok(*rec.last())
    }
}

/// Idempotency of the witness plus `max |f(ρ(x)) − ρ(x)|`, the larger of
/// the two.
fn witness_residual<M: PointMap + ?Sized>(f: &M, w: &RetractionWitness, samples: &[Point], tol: &Tolerances) -> Option<f64> {
    let check = |rho: &dyn PointMap| -> Result<f64> {
        let idem = retraction_residual(rho, samples)?;
        let fixed = samples.iter().try_fold(0.0_f64, |acc, x| {
            let y = rho.map_point(x)?;
            Ok::<f64, Error>(acc.max(f.map_point(&y)?.dist(&y)))
        })?;
        Ok(idem.max(fixed))
    };
    match witness_map(f.domain(), w) {
        Some(rho) => check(&rho).ok(),
        None => check(&IterateLimit { f, tol: *tol }).ok(),
    }
}

fn max_dist(points: &[Point], model: impl Fn(&Point) -> f64) -> f64 {
    points.iter().map(model).fold(0.0, f64::max)
}

fn is_minus_identity(h: &MobiusTransform) -> bool {
    h.pole().norm() < 1e-14 && (h.unimodular() + 1.0).norm() < 1e-12
}

/// Fixed-set structure of a self-map of the symmetrized bidisc. `grid` is
/// the number of Newton starts.
pub fn verify_fix_structure_g2(f: &SelfMap, grid: usize, tol: &Tolerances) -> Result<FixSetReport> {
    if f.domain() != Domain::G2 {
        return Err(Error::DomainMismatch { expected: "g2", found: f.domain().name() });
    }
    let (points, max_fixed_residual) = collect_fixed_points(f, grid, tol)?;
    let samples = halton_points(Domain::G2, IDENTITY_SAMPLES, 7919);
    let identity = power_residual(f, 1, 0, &samples)? < AGREEMENT;
    let involutive = power_residual(f, 2, 0, &samples)? < AGREEMENT;
    let witness_samples = &samples[..100];

    let mut curve_samples = 0;
    let mut curve_residual = None;
    let (classification, predicted, model_distance, witness) = match f.as_automorphism() {
        Some(Automorphism::Gn(g)) if g.n() == 2 => {
            let h = *g.h();
            if h.is_identity(1e-12) {
                (FixClass::FullDomain, Some(FixClass::FullDomain), 0.0, Some(RetractionWitness::Identity))
            } else if is_minus_identity(&h) {
                let d = max_dist(&points, |x| x.coords()[0].norm());
                (FixClass::MinusI, Some(FixClass::MinusI), d, Some(RetractionWitness::ZeroTrace))
            } else if h.compose(&h).is_identity(1e-12) {
                let curve = |z: C64| -> Point { symmetrize2(z, h.apply(z)).into() };
                let d = max_dist(&points, |x| {
                    domains::desymmetrize2(x.sym2())
                        .map(|[a, b]| curve(a).dist(x).min(curve(b).dist(x)))
                        .unwrap_or(f64::INFINITY)
                });
                let pts: Vec<Point> = (1..=100).map(|k| curve(halton_disc(k, 0, 0.95))).collect();
                curve_samples = pts.len();
                curve_residual = Some(power_residual(f, 1, 0, &pts)?);
                let class = FixClass::InvolutionCurve { h };
                (class.clone(), Some(class), d, None)
            } else {
                let point = Automorphism::Gn(*g).predicted_fixed_point_location().ok_or(Error::NoFixedPointFound)?;
                let d = max_dist(&points, |x| x.dist(&point));
                let class = FixClass::Singleton { point };
                (class.clone(), Some(class), d, Some(RetractionWitness::Constant { point }))
            }
        }
        _ => classify_generic_g2(f, &points, identity, witness_samples, tol)?,
    };
    let witness_residual = witness.as_ref().and_then(|w| witness_residual(f, w, witness_samples, tol));
    let retract = witness_residual.is_some_and(|r| r < RETRACTION_TOL);
    let criterion_retract = !involutive || identity || classification == FixClass::MinusI;
    let model_tol = if curve_residual.is_some() { CURVE_MODEL_TOL } else { MODEL_TOL };
    let passed = max_fixed_residual < tol.fixed_residual
        && model_distance <= model_tol
        && curve_residual.is_none_or(|r| r < CURVE_TOL)
        && predicted.as_ref().is_none_or(|p| p.tag() == classification.tag())
        && (classification == FixClass::Other || retract == criterion_retract);
    Ok(FixSetReport {
        domain: Domain::G2,
        classification,
        predicted,
        fixed_points: points,
        max_fixed_residual,
        model_distance,
        curve_samples,
        curve_residual,
        identity,
        involutive,
        f4_equals_f2: None,
        criterion_retract,
        retract,
        witness,
        witness_residual,
        passed,
    })
}

type Classified = (FixClass, Option<FixClass>, f64, Option<RetractionWitness>);

fn classify_generic_g2(
    f: &SelfMap,
    points: &[Point],
    identity: bool,
    samples: &[Point],
    tol: &Tolerances,
) -> Result<Classified> {
    if identity {
        return Ok((FixClass::FullDomain, None, 0.0, Some(RetractionWitness::Identity)));
    }
    let clusters = greedy_points(points, MODEL_TOL);
    if let [point] = clusters.as_slice() {
        let d = max_dist(points, |x| x.dist(point));
        return Ok((FixClass::Singleton { point: *point }, None, d, Some(RetractionWitness::Constant { point: *point })));
    }
    let zero_trace = RetractionWitness::ZeroTrace;
    if max_dist(points, |x| x.coords()[0].norm()) <= MODEL_TOL
        && witness_residual(f, &zero_trace, samples, tol).is_some_and(|r| r < RETRACTION_TOL)
    {
        let d = max_dist(points, |x| x.coords()[0].norm());
        return Ok((FixClass::RetractGeneric, None, d, Some(zero_trace)));
    }
    let limit = RetractionWitness::IterateLimit;
    if witness_residual(f, &limit, samples, tol).is_some_and(|r| r < RETRACTION_TOL) {
        return Ok((FixClass::RetractGeneric, None, 0.0, Some(limit)));
    }
    Ok((FixClass::Other, None, 0.0, None))
}

/// Multipliers `(m₁, m₂, m₃)` when `f(x) = (m₁x₁, m₂x₂, m₃x₃)` on the
/// tetrablock.
pub fn diagonal_multipliers<M: PointMap + ?Sized>(f: &M, samples: &[Point]) -> Option<[C64; 3]> {
    let t = C64::new(0.5, 0.0);
    let zero = C64::new(0.0, 0.0);
    let mut m = [zero; 3];
    for (k, slot) in m.iter_mut().enumerate() {
        let mut e = [zero; 3];
        e[k] = t;
        *slot = f.map_point(&Point::triple(e[0], e[1], e[2])).ok()?.coords()[k] / t;
    }
    let ok = samples.iter().all(|x| {
        let c = x.coords();
        let want = Point::triple(m[0] * c[0], m[1] * c[1], m[2] * c[2]);
        f.map_point(x).is_ok_and(|y| y.dist(&want) < 1e-12)
    });
    ok.then_some(m)
}

/// The normal form `(x₁, x₂, x₃) ↦ (−ωx₁, −σx₂, σωx₃)`.
pub fn tetra_reduced_form(omega: C64, sigma: C64) -> Result<SelfMap> {
    use crate::automorphisms::{TetraAtom, TetraAut};
    let zero = C64::new(0.0, 0.0);
    let left = MobiusTransform::from_negated_form(omega, zero)?;
    let right = MobiusTransform::from_negated_form(sigma, zero)?;
    Ok(SelfMap::automorphism(Automorphism::Tetra(TetraAut::new(vec![TetraAtom::L(left), TetraAtom::R(right)]))))
}

/// Fixed-set class of the normal form, from `ω` and `σ` alone.
pub fn predicted_reduced_class(omega: C64, sigma: C64) -> FixClass {
    let one = |z: C64| (z - 1.0).norm() < 1e-12;
    if one(-omega) && one(-sigma) {
        FixClass::FullDomain
    } else if one(sigma * omega) {
        FixClass::AxisZ3
    } else {
        FixClass::TriangularContained
    }
}

/// Fixed-set structure of a self-map of the tetrablock.
pub fn verify_fix_structure_tetra(f: &SelfMap, grid: usize, tol: &Tolerances) -> Result<FixSetReport> {
    if f.domain() != Domain::Tetra {
        return Err(Error::DomainMismatch { expected: "tetra", found: f.domain().name() });
    }
    let (points, max_fixed_residual) = collect_fixed_points(f, grid, tol)?;
    let samples = halton_points(Domain::Tetra, IDENTITY_SAMPLES, 7919);
    let witness_samples = &samples[..100];
    let identity = power_residual(f, 1, 0, &samples)? < AGREEMENT;
    let involutive = power_residual(f, 2, 0, &samples)? < AGREEMENT;
    let f4_equals_f2 = power_residual(f, 4, 2, &samples)? < AGREEMENT;
    let predicted = diagonal_multipliers(f, &samples[..50]).map(|m| predicted_reduced_class(-m[0], -m[1]));

    let axis: Vec<Point> =
        (1..=20).map(|k| Point::triple(C64::new(0.0, 0.0), C64::new(0.0, 0.0), halton_disc(k, 0, 0.95))).collect();
    let axis_fixed = power_residual(f, 1, 0, &axis)? < CURVE_TOL;
    let off_axis = max_dist(&points, |x| x.coords()[0].norm().max(x.coords()[1].norm()));
    let off_triangle = max_dist(&points, |x| {
        let c = x.coords();
        (c[2] - c[0] * c[1]).norm()
    });
    let (classification, model_distance, witness) = if identity {
        (FixClass::FullDomain, 0.0, Some(RetractionWitness::Identity))
    } else if axis_fixed && off_axis <= 1e-8 {
        (FixClass::AxisZ3, off_axis, Some(RetractionWitness::AxisProjection { index: 2 }))
    } else if off_triangle <= 1e-8 {
        let clusters = greedy_points(&points, MODEL_TOL);
        let witness = match clusters.as_slice() {
            [point] => Some(RetractionWitness::Constant { point: *point }),
            _ => [0, 1]
                .into_iter()
                .map(|index| RetractionWitness::AxisProjection { index })
                .chain([RetractionWitness::IterateLimit])
                .find(|w| witness_residual(f, w, witness_samples, tol).is_some_and(|r| r < RETRACTION_TOL)),
        };
        (FixClass::TriangularContained, off_triangle, witness)
    } else {
        (FixClass::Other, 0.0, None)
    };
    let witness_residual = witness.as_ref().and_then(|w| witness_residual(f, w, witness_samples, tol));
    let retract = witness_residual.is_some_and(|r| r < RETRACTION_TOL);
    // Retract whenever f⁴ ≢ f²; the identity and the reduced forms are
    // retracts as well.
    let criterion_retract = !f4_equals_f2 || identity || predicted.is_some();
    let passed = max_fixed_residual < tol.fixed_residual
        && model_distance <= MODEL_TOL
        && predicted.as_ref().is_none_or(|p| p.tag() == classification.tag())
        && (classification == FixClass::Other || !criterion_retract || retract);
    Ok(FixSetReport {
        domain: Domain::Tetra,
        classification,
        predicted,
        fixed_points: points,
        max_fixed_residual,
        model_distance,
        curve_samples: 0,
        curve_residual: None,
        identity,
        involutive,
        f4_equals_f2: Some(f4_equals_f2),
        criterion_retract,
        retract,
        witness,
        witness_residual,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::{GnAut, TetraAtom, TetraAut};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn gn2(h: MobiusTransform) -> SelfMap {
        SelfMap::automorphism(Automorphism::Gn(GnAut::new(2, h).unwrap()))
    }

    #[test]
    fn halton_prefix() {
        let v: Vec<f64> = (1..=4).map(|i| halton(i, 2)).collect();
        assert_eq!(v, vec![0.5, 0.25, 0.75, 0.125]);
        assert_eq!(halton(1, 3), 1.0 / 3.0);
        for d in Domain::ALL {
            let pts = halton_points(d, 50, 0);
            assert_eq!(pts.len(), 50);
            assert_eq!(pts, halton_points(d, 50, 0));
        }
    }

    #[test]
    fn minus_identity_has_zero_trace_retraction() {
        let r = verify_fix_structure_g2(&gn2(MobiusTransform::negation()), 16, &Tolerances::default()).unwrap();
        assert_eq!(r.classification, FixClass::MinusI);
        assert!(r.retract && r.criterion_retract && r.passed, "{r:#?}");
        assert!(r.fixed_points.iter().all(|x| x.coords()[0].norm() < 1e-12));
    }

    #[test]
    fn involution_curve_is_not_a_retract() {
        // (1/2 − z)/(1 − z/2) in canonical form: rotation π, pole 1/2.
        let h = MobiusTransform::new(PI, c(0.5, 0.0)).unwrap();
        assert!((h.apply(c(0.0, 0.0)) - c(0.5, 0.0)).norm() < 1e-15);
        let r = verify_fix_structure_g2(&gn2(h), 16, &Tolerances::default()).unwrap();
        assert!(matches!(r.classification, FixClass::InvolutionCurve { .. }));
        assert!(!r.retract && !r.criterion_retract && r.passed, "{r:#?}");
        assert!(r.curve_residual.unwrap() < 1e-10);
        // The curve point at z = 0 is (1/2, 0).
        let f = gn2(h);
        let x = Point::pair(c(0.5, 0.0), c(0.0, 0.0));
        assert!(f.apply(&x).unwrap().dist(&x) < 1e-15);
    }

    #[test]
    fn identity_is_full_domain() {
        let r = verify_fix_structure_g2(&SelfMap::identity(Domain::G2), 4, &Tolerances::default()).unwrap();
        assert_eq!(r.classification, FixClass::FullDomain);
        assert!(r.retract && r.passed);
    }

    #[test]
    fn elliptic_lift_is_singleton() {
        let h = MobiusTransform::new(1.0, c(0.2, 0.3)).unwrap();
        let r = verify_fix_structure_g2(&gn2(h), 16, &Tolerances::default()).unwrap();
        assert!(matches!(r.classification, FixClass::Singleton { .. }));
        assert!(r.retract && r.passed && r.model_distance < 1e-8, "{r:#?}");
    }

    #[test]
    fn hyperbolic_lift_has_no_fixed_point() {
        let h = MobiusTransform::new(0.0, c(-0.5, 0.0)).unwrap();
        assert_eq!(verify_fix_structure_g2(&gn2(h), 8, &Tolerances::default()), Err(Error::NoFixedPointFound));
    }

    #[test]
    fn reduced_tetra_forms() {
        let i = c(0.0, 1.0);
        let cases = [
            (i, -i, FixClass::AxisZ3),
            (c(-1.0, 0.0), c(-1.0, 0.0), FixClass::FullDomain),
            (i, i, FixClass::TriangularContained),
            (c(-1.0, 0.0), i, FixClass::TriangularContained),
        ];
        for (omega, sigma, want) in cases {
            let f = tetra_reduced_form(omega, sigma).unwrap();
            let y = f.apply(&Point::triple(c(0.1, 0.0), c(0.2, 0.0), c(0.3, 0.0))).unwrap();
            let want_y = Point::triple(-omega * 0.1, -sigma * 0.2, sigma * omega * 0.3);
            assert!(y.dist(&want_y) < 1e-15);
            let r = verify_fix_structure_tetra(&f, 16, &Tolerances::default()).unwrap();
            assert_eq!(r.classification, want, "{omega} {sigma}");
            assert_eq!(r.predicted, Some(want));
            assert!(r.passed, "{r:#?}");
        }
    }

    #[test]
    fn swap_fixes_the_diagonal() {
        let f = SelfMap::automorphism(Automorphism::Tetra(TetraAut::new(vec![TetraAtom::F])));
        let r = verify_fix_structure_tetra(&f, 16, &Tolerances::default()).unwrap();
        assert_eq!(r.classification, FixClass::Other);
        assert!(r.fixed_points.iter().all(|x| (x.coords()[0] - x.coords()[1]).norm() < 1e-9));
        assert!(r.involutive && r.f4_equals_f2 == Some(true));
    }

    #[test]
    fn retraction_examples() {
        let samples = halton_points(Domain::G2, 200, 0);
        assert!(retraction_check(&zero_trace_retraction(), &samples));
        assert!(!retraction_check(&gn2(MobiusTransform::negation()), &samples));
        assert!(retraction_check(&axis_projection(2), &halton_points(Domain::Tetra, 200, 0)));
    }
}
