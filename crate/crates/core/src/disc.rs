//! Automorphisms and simple self-maps of the unit disc.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

/// Distance from 1 within which a number counts as unimodular.
pub const UNIMODULAR_TOL: f64 = 1e-12;
/// Below this discriminant modulus a Möbius map is treated as parabolic.
pub const PARABOLIC_TOL: f64 = 1e-10;
const IDENTITY_TOL: f64 = 1e-14;

/// `z ↦ e^{iθ}(z − a)/(1 − āz)` with `|a| < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MobiusRepr", into = "MobiusRepr")]
pub struct MobiusTransform {
    rotation: f64,
    pole: C64,
}

#[derive(Serialize, Deserialize)]
struct MobiusRepr {
    rotation: f64,
    pole: [f64; 2],
}

impl TryFrom<MobiusRepr> for MobiusTransform {
    type Error = Error;
    fn try_from(r: MobiusRepr) -> Result<Self> {
        MobiusTransform::new(r.rotation, C64::new(r.pole[0], r.pole[1]))
    }
}

impl From<MobiusTransform> for MobiusRepr {
    fn from(m: MobiusTransform) -> Self {
        MobiusRepr { rotation: m.rotation, pole: [m.pole.re, m.pole.im] }
    }
}

/// Fixed-point type of a disc automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MobiusClass {
    Identity,
    Elliptic { fixed_point: C64 },
    Parabolic { boundary_point: C64 },
    Hyperbolic { attracting: C64, repelling: C64 },
}

impl MobiusClass {
    /// Identity and elliptic maps fix a point of the open disc.
    pub fn has_interior_fixed_point(&self) -> bool {
        matches!(self, MobiusClass::Identity | MobiusClass::Elliptic { .. })
    }
}

fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU { 0.0 } else { t }
}

pub(crate) fn check_unimodular(w: C64) -> Result<()> {
    if !w.is_finite() || (w.norm() - 1.0).abs() > UNIMODULAR_TOL {
        return Err(Error::NotUnimodular(w));
    }
    Ok(())
}

impl MobiusTransform {
    pub fn new(rotation: f64, pole: C64) -> Result<Self> {
        if !pole.is_finite() || pole.norm() >= 1.0 {
            return Err(Error::PoleOnBoundary(pole));
        }
        if !rotation.is_finite() {
            return Err(Error::InvalidArgument(format!("rotation angle {rotation}")));
        }
        Ok(Self { rotation: normalize_angle(rotation), pole })
    }

    pub fn identity() -> Self {
        Self { rotation: 0.0, pole: C64::new(0.0, 0.0) }
    }

    /// `z ↦ e^{iθ} z`.
    pub fn rotation_by(theta: f64) -> Self {
        Self { rotation: normalize_angle(theta), pole: C64::new(0.0, 0.0) }
    }

    /// `z ↦ −z`.
    pub fn negation() -> Self {
        Self::rotation_by(PI)
    }

    /// Builds `z ↦ ω(z − α)/(ᾱz − 1)`.
    pub fn from_negated_form(omega: C64, alpha: C64) -> Result<Self> {
        check_unimodular(omega)?;
        Self::new((-omega).arg(), alpha)
    }

    /// The `(ω, α)` pair with `self(z) = ω(z − α)/(ᾱz − 1)`.
    pub fn negated_form(&self) -> (C64, C64) {
        (-self.unimodular(), self.pole)
    }

    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn pole(&self) -> C64 {
        self.pole
    }

    /// `e^{iθ}`.
    pub fn unimodular(&self) -> C64 {
        C64::from_polar(1.0, self.rotation)
    }

    pub fn apply(&self, z: C64) -> C64 {
        self.unimodular() * (z - self.pole) / (1.0 - self.pole.conj() * z)
    }

    pub fn derivative(&self, z: C64) -> C64 {
        let d = 1.0 - self.pole.conj() * z;
        self.unimodular() * (1.0 - self.pole.norm_sqr()) / (d * d)
    }

    /// `[[e^{iθ}, −e^{iθ}a], [−ā, 1]]`.
    pub fn matrix(&self) -> [[C64; 2]; 2] {
        let u = self.unimodular();
        [[u, -u * self.pole], [-self.pole.conj(), C64::new(1.0, 0.0)]]
    }

    fn from_matrix(m: [[C64; 2]; 2]) -> Self {
        let [[a, b], [_, d]] = m;
        let pole = -b / a;
        // Products of disc automorphisms keep |pole| < 1; rounding cannot
        // push it out by more than an ulp, so clamp rather than fail.
        let pole = if pole.norm() >= 1.0 { pole / pole.norm() * (1.0 - f64::EPSILON) } else { pole };
        Self { rotation: normalize_angle((a / d).arg()), pole }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MobiusTransform) -> Self {
        let x = self.matrix();
        let y = inner.matrix();
        let mut m = [[C64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
            }
        }
        Self::from_matrix(m)
    }

    pub fn inverse(&self) -> Self {
        Self { rotation: normalize_angle(-self.rotation), pole: -self.unimodular() * self.pole }
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.pole.norm() <= tol && angle_distance(self.rotation, 0.0) <= tol
    }

    /// `selfⁿ` from the determinant-one matrix `N` with real half-trace `τ`:
    /// `Nⁿ = U_{n−1}(τ)N − U_{n−2}(τ)I` with Chebyshev polynomials of the
    /// second kind in closed form. Unlike repeated composition, the error does
    /// not grow with the distance the orbit travels.
    pub fn power(&self, n: u32) -> Self {
        if n == 0 {
            return Self::identity();
        }
        let m = self.matrix();
        let root_det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).sqrt();
        let unit = m.map(|row| row.map(|x| x / root_det));
        let tau = (0.5 * (unit[0][0] + unit[1][1])).re;
        let k = n as f64;
        // (U_{n−1}, U_{n−2}) up to a common positive factor.
        let (u1, u2) = if tau.abs() < 1.0 {
            let alpha = tau.acos();
            ((k * alpha).sin(), ((k - 1.0) * alpha).sin())
        } else {
            let d = tau.abs().acosh();
            let sign = tau.signum();
            let (a, b) = if d == 0.0 {
                (k, k - 1.0)
            } else if k * d < 600.0 {
                ((k * d).sinh(), ((k - 1.0) * d).sinh())
            } else {
                (1.0, (-d).exp())
            };
            (a * sign.powi(n as i32 - 1), b * sign.powi(n as i32 - 2))
        };
        let mut p = unit.map(|row| row.map(|x| x * u1));
        p[0][0] -= u2;
        p[1][1] -= u2;
        Self::from_matrix(p)
    }

    /// `self` composed with itself `n` times, applied to `z`.
    pub fn iterate(&self, z: C64, n: usize) -> C64 {
        (0..n).fold(z, |w, _| self.apply(w))
    }

    pub fn classify(&self) -> MobiusClass {
        let u = self.unimodular();
        let a = self.pole;
        if a.norm() <= IDENTITY_TOL && (u - 1.0).norm() <= IDENTITY_TOL {
            return MobiusClass::Identity;
        }
        let half_sin = (self.rotation / 2.0).sin();
        let gap = a.norm_sqr() - half_sin * half_sin;
        if 4.0 * gap.abs() < PARABOLIC_TOL {
            // Double root −(u − 1)/(2ā); near the identity ā is tiny and the
            // quotient ill-conditioned, but it stays on the circle.
            let z = if a.norm() > 0.0 { -(u - 1.0) / (2.0 * a.conj()) } else { C64::new(1.0, 0.0) };
            return MobiusClass::Parabolic { boundary_point: z / z.norm() };
        }
        if a.norm() == 0.0 {
            return MobiusClass::Elliptic { fixed_point: C64::new(0.0, 0.0) };
        }
        let (r1, r2) = poly::quadratic_roots(a.conj(), u - 1.0, -u * a);
        if gap < 0.0 {
            let fixed_point = if r1.norm() <= r2.norm() { r1 } else { r2 };
            MobiusClass::Elliptic { fixed_point }
        } else {
            let (r1, r2) = (r1 / r1.norm(), r2 / r2.norm());
            if self.derivative(r1).norm() < self.derivative(r2).norm() {
                MobiusClass::Hyperbolic { attracting: r1, repelling: r2 }
            } else {
                MobiusClass::Hyperbolic { attracting: r2, repelling: r1 }
            }
        }
    }

    pub fn has_interior_fixed_point(&self) -> bool {
        self.classify().has_interior_fixed_point()
    }

    /// Boundary point that all orbits of a fixed-point-free map converge to.
    pub fn denjoy_wolff_point(&self) -> Result<C64> {
        match self.classify() {
            MobiusClass::Parabolic { boundary_point } => Ok(boundary_point),
            MobiusClass::Hyperbolic { attracting, .. } => Ok(attracting),
            _ => Err(Error::HasInteriorFixedPoint),
        }
    }

    /// Order of an elliptic map, read from its rotation multiplier at the
    /// fixed point; `Some(1)` for the identity.
    pub fn algebraic_period(&self, p_max: usize) -> Option<usize> {
        let multiplier = match self.classify() {
            MobiusClass::Identity => return Some(1),
            MobiusClass::Elliptic { fixed_point } => self.derivative(fixed_point),
            _ => return None,
        };
        let mut power = multiplier;
        for p in 1..=p_max {
            if (power - 1.0).norm() < 1e-9 {
                return Some(p);
            }
            power *= multiplier;
        }
        None
    }
}

/// Distance between two angles on the circle.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// `z ↦ ω z ∏ (z − b)/(1 − b̄z)` over the nonzero zeros `b`; degree 1 or 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BlaschkeRepr", into = "BlaschkeRepr")]
pub struct BlaschkeProduct {
    omega: C64,
    zeros: Vec<C64>,
}

#[derive(Serialize, Deserialize)]
struct BlaschkeRepr {
    omega: [f64; 2],
    zeros: Vec<[f64; 2]>,
}

impl TryFrom<BlaschkeRepr> for BlaschkeProduct {
    type Error = Error;
    fn try_from(r: BlaschkeRepr) -> Result<Self> {
        let zeros: Vec<C64> = r.zeros.iter().map(|z| C64::new(z[0], z[1])).collect();
        BlaschkeProduct::new(C64::new(r.omega[0], r.omega[1]), &zeros)
    }
}

impl From<BlaschkeProduct> for BlaschkeRepr {
    fn from(b: BlaschkeProduct) -> Self {
        BlaschkeRepr {
            omega: [b.omega.re, b.omega.im],
            zeros: b.zeros.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl BlaschkeProduct {
    /// `zeros` lists every zero with multiplicity; the first must be 0.
    pub fn new(omega: C64, zeros: &[C64]) -> Result<Self> {
        check_unimodular(omega)?;
        if zeros.is_empty() || zeros.len() > 2 {
            return Err(Error::InvalidArgument(format!(
                "Blaschke degree must be 1 or 2, got {}",
                zeros.len()
            )));
        }
        if zeros[0] != C64::new(0.0, 0.0) {
            return Err(Error::InvalidArgument("first Blaschke zero must be 0".into()));
        }
        if let Some(z) = zeros.iter().find(|z| !z.is_finite() || z.norm() >= 1.0) {
            return Err(Error::PoleOnBoundary(*z));
        }
        Ok(Self { omega, zeros: zeros.to_vec() })
    }

    /// `z ↦ ωz`.
    pub fn degree_one(omega: C64) -> Result<Self> {
        Self::new(omega, &[C64::new(0.0, 0.0)])
    }

    /// `z ↦ ωz(z − b)/(1 − b̄z)`.
    pub fn degree_two(omega: C64, b: C64) -> Result<Self> {
        Self::new(omega, &[C64::new(0.0, 0.0), b])
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn omega(&self) -> C64 {
        self.omega
    }

    pub fn zeros(&self) -> &[C64] {
        &self.zeros
    }

    pub fn apply(&self, z: C64) -> C64 {
        self.zeros[1..]
            .iter()
            .fold(self.omega * z, |acc, b| acc * (z - b) / (1.0 - b.conj() * z))
    }
}

/// `(1 + ω̄z)/2`: equals 1 at `ω` and has modulus below 1 elsewhere on the
/// closed disc.
pub fn peak_function(omega: C64, z: C64) -> C64 {
    (1.0 + omega.conj() * z) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    // z ↦ (z + 1/2)/(1 + z/2): rotation 0, pole −1/2.
    fn half_shift() -> MobiusTransform {
        MobiusTransform::new(0.0, c(-0.5, 0.0)).unwrap()
    }

    #[test]
    fn apply_examples() {
        let z = c(0.3, 0.4);
        assert_eq!(MobiusTransform::identity().apply(z), z);
        let neg = MobiusTransform::from_negated_form(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(close(neg.apply(c(0.5, 0.0)), c(-0.5, 0.0), 1e-15));
        let m = MobiusTransform::new(0.0, c(0.5, 0.0)).unwrap();
        assert!(close(m.apply(c(0.0, 0.0)), c(-0.5, 0.0), 1e-15));
    }

    #[test]
    fn rejects_bad_pole() {
        assert!(matches!(MobiusTransform::new(0.0, c(1.0, 0.0)), Err(Error::PoleOnBoundary(_))));
        assert!(MobiusTransform::new(0.0, c(0.6, 0.8)).is_err());
        let bad = serde_json::json!({"rotation": 0.0, "pole": [1.5, 0.0]});
        assert!(serde_json::from_value::<MobiusTransform>(bad).is_err());
    }

    #[test]
    fn negated_form_round_trip() {
        let w = C64::from_polar(1.0, 0.7);
        let alpha = c(0.2, -0.3);
        let m = MobiusTransform::from_negated_form(w, alpha).unwrap();
        let z = c(0.1, 0.25);
        let direct = w * (z - alpha) / (alpha.conj() * z - 1.0);
        assert!(close(m.apply(z), direct, 1e-15));
        let (w2, a2) = m.negated_form();
        assert!(close(w2, w, 1e-15) && a2 == alpha);
    }

    #[test]
    fn compose_and_inverse_examples() {
        let m = MobiusTransform::new(1.1, c(0.3, 0.2)).unwrap();
        let id = MobiusTransform::identity();
        let cm = id.compose(&m);
        assert!((cm.rotation() - m.rotation()).abs() < 1e-15 && close(cm.pole(), m.pole(), 1e-15));
        let neg = MobiusTransform::negation();
        assert!(neg.inverse().compose(&neg).is_identity(1e-15));
        assert!(close(neg.inverse().apply(c(0.3, 0.1)), c(-0.3, -0.1), 1e-15));
        // h(z) = (1/2 − z)/(1 − z/2): rotation π, pole 1/2.
        let h = MobiusTransform::new(PI, c(0.5, 0.0)).unwrap();
        assert!(close(h.apply(c(0.0, 0.0)), c(0.5, 0.0), 1e-15));
        assert!(h.compose(&h).is_identity(1e-12));
    }

    #[test]
    fn classify_examples() {
        match MobiusTransform::negation().classify() {
            MobiusClass::Elliptic { fixed_point } => assert!(fixed_point.norm() < 1e-15),
            other => panic!("{other:?}"),
        }
        match half_shift().classify() {
            MobiusClass::Hyperbolic { attracting, repelling } => {
                assert!(close(attracting, c(1.0, 0.0), 1e-12));
                assert!(close(repelling, c(-1.0, 0.0), 1e-12));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(MobiusTransform::identity().classify(), MobiusClass::Identity);
        // z ↦ (z + i·t)/(1 − i·t·z)-style parabolic: |a| = |sin(θ/2)|.
        let theta = 0.8_f64;
        let p = MobiusTransform::new(theta, C64::from_polar((theta / 2.0).sin(), 0.3)).unwrap();
        match p.classify() {
            MobiusClass::Parabolic { boundary_point } => {
                assert!(close(p.apply(boundary_point), boundary_point, 1e-7));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn denjoy_wolff_examples() {
        assert!(close(half_shift().denjoy_wolff_point().unwrap(), c(1.0, 0.0), 1e-12));
        let mirrored = MobiusTransform::new(0.0, c(0.5, 0.0)).unwrap();
        assert!(close(mirrored.denjoy_wolff_point().unwrap(), c(-1.0, 0.0), 1e-12));
        assert_eq!(
            MobiusTransform::rotation_by(0.3).denjoy_wolff_point(),
            Err(Error::HasInteriorFixedPoint)
        );
        // Independent check: plain iteration from 0.
        let z = half_shift().iterate(c(0.0, 0.0), 200);
        assert!(close(z, c(1.0, 0.0), 1e-12));
    }

    #[test]
    fn algebraic_periods() {
        assert_eq!(MobiusTransform::negation().algebraic_period(64), Some(2));
        assert_eq!(MobiusTransform::rotation_by(TAU / 5.0).algebraic_period(64), Some(5));
        assert_eq!(MobiusTransform::identity().algebraic_period(64), Some(1));
        assert_eq!(half_shift().algebraic_period(64), None);
        let g = MobiusTransform::new(0.4, c(0.3, -0.5)).unwrap();
        let conj = g.inverse().compose(&MobiusTransform::rotation_by(TAU / 7.0)).compose(&g);
        assert_eq!(conj.algebraic_period(64), Some(7));
    }

    #[test]
    fn blaschke_and_peak() {
        let b = BlaschkeProduct::degree_two(c(1.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!(b.apply(c(0.5, 0.0)).norm() < 1e-16);
        assert_eq!(b.apply(c(0.0, 0.0)), c(0.0, 0.0));
        assert!(BlaschkeProduct::new(c(1.0, 0.0), &[c(0.1, 0.0)]).is_err());
        assert_eq!(peak_function(c(1.0, 0.0), c(1.0, 0.0)), c(1.0, 0.0));
        assert_eq!(peak_function(c(1.0, 0.0), c(-1.0, 0.0)), c(0.0, 0.0));
    }

    fn arb_mobius() -> impl Strategy<Value = MobiusTransform> {
        (0.0..TAU, 0.0..0.95f64, 0.0..TAU)
            .prop_map(|(t, r, phi)| MobiusTransform::new(t, C64::from_polar(r, phi)).unwrap())
    }

    fn arb_disc() -> impl Strategy<Value = C64> {
        (0.0..0.999f64, 0.0..TAU).prop_map(|(r, phi)| C64::from_polar(r, phi))
    }

    #[test]
    fn power_of_parabolic_and_periodic_maps() {
        // |a| = sin(θ/2) is parabolic.
        let p = MobiusTransform::new(1.0, C64::from_polar((0.5f64).sin(), 0.4)).unwrap();
        assert!(matches!(p.classify(), MobiusClass::Parabolic { .. }));
        let z = C64::new(0.2, -0.1);
        assert!(close(p.power(40).apply(z), p.iterate(z, 40), 1e-12));
        let q = MobiusTransform::new(0.0, C64::new(0.3, 0.1)).unwrap().inverse();
        let r = q.inverse().compose(&MobiusTransform::rotation_by(TAU / 5.0)).compose(&q);
        assert!(r.power(5).is_identity(1e-12));
        assert!(MobiusTransform::new(2.0, C64::new(-0.9, 0.3)).unwrap().power(1000).pole().norm() < 1.0);
    }

    proptest! {
        #[test]
        fn inverse_round_trip(m in arb_mobius(), z in arb_disc()) {
            prop_assert!(close(m.inverse().apply(m.apply(z)), z, 1e-10));
            prop_assert!(m.compose(&m.inverse()).is_identity(1e-12));
        }

        #[test]
        fn compose_matches_application(a in arb_mobius(), b in arb_mobius(), c3 in arb_mobius(), z in arb_disc()) {
            prop_assert!(close(a.compose(&b).apply(z), a.apply(b.apply(z)), 1e-10));
            let left = a.compose(&b).compose(&c3);
            let right = a.compose(&b.compose(&c3));
            prop_assert!(close(left.apply(z), right.apply(z), 1e-10));
        }

        #[test]
        fn power_matches_iteration(m in arb_mobius(), z in arb_disc(), n in 0u32..12) {
            prop_assert!(close(m.power(n).apply(z), m.iterate(z, n as usize), 1e-9));
        }

        #[test]
        fn preserves_circle(m in arb_mobius(), phi in 0.0..TAU) {
            let w = m.apply(C64::from_polar(1.0, phi));
            prop_assert!((w.norm() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn fixed_points_are_fixed(m in arb_mobius()) {
            match m.classify() {
                MobiusClass::Elliptic { fixed_point } => {
                    prop_assert!(fixed_point.norm() < 1.0);
                    prop_assert!(close(m.apply(fixed_point), fixed_point, 1e-10));
                }
                MobiusClass::Hyperbolic { attracting, repelling } => {
                    prop_assert!(close(m.apply(attracting), attracting, 1e-10));
                    prop_assert!(close(m.apply(repelling), repelling, 1e-10));
                }
                MobiusClass::Parabolic { .. } | MobiusClass::Identity => {}
            }
        }

        // Elliptic maps have bounded orbits; the others drift to the circle.
        #[test]
        fn classifier_matches_orbit_behaviour(m in arb_mobius()) {
            let mut z = C64::new(0.0, 0.0);
            let mut max_mod = 0.0f64;
            for _ in 0..1000 {
                z = m.apply(z);
                max_mod = max_mod.max(z.norm());
            }
            let bounded = max_mod < 1.0 - 1e-6;
            match m.classify() {
                MobiusClass::Identity => prop_assert!(bounded),
                MobiusClass::Elliptic { fixed_point } => {
                    if fixed_point.norm() < 0.99 {
                        prop_assert!(bounded);
                    }
                }
                MobiusClass::Hyperbolic { attracting, .. } => {
                    if m.derivative(attracting).norm() < 0.98 {
                        prop_assert!(!bounded);
                    }
                }
                MobiusClass::Parabolic { .. } => {}
            }
        }
    }
}
