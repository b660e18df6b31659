//! Automorphism groups of the symmetrized polydiscs, the tetrablock and the
//! pentablock.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::disc::{self, MobiusClass, MobiusTransform};
use crate::domains::{PentaPoint, SymPoint2, SymPoint3, TetraPoint};
use crate::error::{Error, Result};
use crate::point::{Domain, Point};

/// Points whose margin is above `-DOMAIN_GUARD` are accepted as inside.
/// Root-based margins carry rounding noise of order √ε near repeated roots.
pub const DOMAIN_GUARD: f64 = 1e-7;
const SINGULAR: f64 = 1e-14;

/// A holomorphic map of one domain into itself, evaluated pointwise.
pub trait PointMap {
    fn domain(&self) -> Domain;
    fn map_point(&self, x: &Point) -> Result<Point>;
}

fn mat_mul(x: [[C64; 2]; 2], y: [[C64; 2]; 2]) -> [[C64; 2]; 2] {
    let mut m = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    m
}

// Ascending-order polynomial product.
fn poly_mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_pow(a: &[C64], k: usize) -> Vec<C64> {
    (0..k).fold(vec![C64::new(1.0, 0.0)], |acc, _| poly_mul(&acc, a))
}

/// Elementary symmetric values `e₁..eₙ` of `h(z₁), …, h(zₙ)` given those of
/// `z₁, …, zₙ`, without computing the roots.
fn symmetric_image(e: &[C64], h: &MobiusTransform) -> Result<Vec<C64>> {
    let n = e.len();
    let [[a, b], [c, d]] = h.matrix();
    let lin1 = [-a, c];
    let lin2 = [-b, d];
    let mut num = vec![C64::new(0.0, 0.0); n + 1];
    let one = C64::new(1.0, 0.0);
    for k in 0..=n {
        let ek = if k == 0 { one } else { e[k - 1] };
        let term = poly_mul(&poly_pow(&lin1, k), &poly_pow(&lin2, n - k));
        for (slot, t) in num.iter_mut().zip(term) {
            *slot += ek * t;
        }
    }
    let lead = num[n];
    if !(lead.norm() > SINGULAR) {
        return Err(Error::DenominatorSingular(lead.norm()));
    }
    Ok((1..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * num[n - j] / lead
        })
        .collect())
}

/// `π_n(z₁, …, zₙ) ↦ π_n(h(z₁), …, h(zₙ))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GnAut {
    n: usize,
    h: MobiusTransform,
}

impl GnAut {
    pub fn new(n: usize, h: MobiusTransform) -> Result<Self> {
        if n != 2 && n != 3 {
            return Err(Error::InvalidArgument(format!("symmetrized degree must be 2 or 3, got {n}")));
        }
        Ok(Self { n, h })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> &MobiusTransform {
        &self.h
    }

    pub fn inverse(&self) -> Self {
        Self { n: self.n, h: self.h.inverse() }
    }

    pub fn domain(&self) -> Domain {
        if self.n == 2 { Domain::G2 } else { Domain::G3 }
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        let domain = self.domain();
        domain.check_dim(x)?;
        domain.require_inside(x, DOMAIN_GUARD)?;
        Point::new(&symmetric_image(x.coords(), &self.h)?)
    }

    pub fn apply2(&self, x: SymPoint2) -> Result<SymPoint2> {
        Ok(self.apply(&x.into())?.sym2())
    }

    pub fn apply3(&self, x: SymPoint3) -> Result<SymPoint3> {
        Ok(self.apply(&x.into())?.sym3())
    }
}

/// Generators of the tetrablock automorphism group.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "atom", content = "map")]
pub enum TetraAtom {
    L(MobiusTransform),
    R(MobiusTransform),
    F,
}

impl TetraAtom {
    pub fn inverse(&self) -> Self {
        match self {
            TetraAtom::L(m) => TetraAtom::L(m.inverse()),
            TetraAtom::R(m) => TetraAtom::R(m.inverse()),
            TetraAtom::F => TetraAtom::F,
        }
    }

    fn apply(&self, x: TetraPoint) -> Result<TetraPoint> {
        match self {
            TetraAtom::L(m) => tetra_l(m, x),
            TetraAtom::R(m) => tetra_r(m, x),
            TetraAtom::F => Ok(tetra_f(x)),
        }
    }
}

// The matrix of `z ↦ ω(z − α)/(ᾱz − 1)`.
fn negated_form_matrix(m: &MobiusTransform) -> [[C64; 2]; 2] {
    let (w, a) = m.negated_form();
    [[w, -w * a], [a.conj(), C64::new(-1.0, 0.0)]]
}

fn read_normalized(prod: [[C64; 2]; 2]) -> Result<TetraPoint> {
    let corner = prod[1][1];
    if !(corner.norm() >= SINGULAR) {
        return Err(Error::NormalizationSingular(corner.norm()));
    }
    let lambda = -1.0 / corner;
    Ok(TetraPoint::new(-lambda * prod[0][1], lambda * prod[1][0], lambda * prod[0][0]))
}

fn tetra_matrix(x: TetraPoint) -> [[C64; 2]; 2] {
    [[x.x3, -x.x1], [x.x2, C64::new(-1.0, 0.0)]]
}

/// Left generator: multiply the matrix of `ν` on the left.
pub fn tetra_l(nu: &MobiusTransform, x: TetraPoint) -> Result<TetraPoint> {
    read_normalized(mat_mul(negated_form_matrix(nu), tetra_matrix(x)))
}

/// Right generator: multiply the matrix of `χ` on the right.
pub fn tetra_r(chi: &MobiusTransform, x: TetraPoint) -> Result<TetraPoint> {
    read_normalized(mat_mul(tetra_matrix(x), negated_form_matrix(chi)))
}

pub fn tetra_f(x: TetraPoint) -> TetraPoint {
    TetraPoint::new(x.x2, x.x1, x.x3)
}

/// A word in the generators, read as a composition: `[A, B, C]` is
/// `A ∘ B ∘ C`, so the last atom acts first.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TetraAut {
    pub word: Vec<TetraAtom>,
}

/// Action of a tetrablock automorphism on the triangular set, written in
/// bidisc coordinates `(a, b) ↔ (a, b, ab)`: `(a, b) ↦ (first(a), second(b))`,
/// or `(first(b), second(a))` when `swapped`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangularAction {
    pub first: MobiusTransform,
    pub second: MobiusTransform,
    pub swapped: bool,
}

impl TriangularAction {
    /// Whether the action on the bidisc has a fixed point; the automorphism
    /// has one iff its restriction to the triangular set does.
    pub fn has_fixed_point(&self) -> bool {
        if self.swapped {
            self.first.compose(&self.second).has_interior_fixed_point()
        } else {
            self.first.has_interior_fixed_point() && self.second.has_interior_fixed_point()
        }
    }
}

impl TetraAut {
    pub fn new(word: Vec<TetraAtom>) -> Self {
        Self { word }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        Domain::Tetra.check_dim(x)?;
        Domain::Tetra.require_inside(x, DOMAIN_GUARD)?;
        let mut t = x.tetra();
        for atom in self.word.iter().rev() {
            t = atom.apply(t)?;
        }
        Ok(t.into())
    }

    pub fn invert(&self) -> Self {
        Self { word: self.word.iter().rev().map(TetraAtom::inverse).collect() }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &TetraAut) -> Self {
        Self { word: self.word.iter().chain(&inner.word).copied().collect() }
    }

    pub fn triangular_action(&self) -> TriangularAction {
        let mut act = TriangularAction {
            first: MobiusTransform::identity(),
            second: MobiusTransform::identity(),
            swapped: false,
        };
        for atom in self.word.iter().rev() {
            match atom {
                TetraAtom::L(nu) => act.first = nu.compose(&act.first),
                TetraAtom::R(chi) => act.second = right_factor(chi).compose(&act.second),
                TetraAtom::F => {
                    std::mem::swap(&mut act.first, &mut act.second);
                    act.swapped = !act.swapped;
                }
            }
        }
        act
    }
}

// R(χ) acts on the second triangular coordinate by b ↦ (β̄ − σb)/(1 − σβb).
fn right_factor(chi: &MobiusTransform) -> MobiusTransform {
    let (sigma, beta) = chi.negated_form();
    MobiusTransform::new((-sigma).arg(), beta.conj() * sigma.conj()).expect("|β| < 1")
}

/// Phase of `1/(1 − ᾱw)²`.
fn chain_phase(alpha: C64, w: C64) -> C64 {
    let d = (1.0 - alpha.conj() * w).conj();
    d * d / d.norm_sqr()
}

/// `(a, s, p) ↦ (ω(1 − |α|²)a/(1 − ᾱs + ᾱ²p), γ-image of (s, p))` with
/// `α = γ⁻¹(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PentaAut {
    omega: C64,
    gamma: MobiusTransform,
}

impl PentaAut {
    pub fn new(omega: C64, gamma: MobiusTransform) -> Result<Self> {
        disc::check_unimodular(omega)?;
        Ok(Self { omega, gamma })
    }

    pub fn omega(&self) -> C64 {
        self.omega
    }

    pub fn gamma(&self) -> &MobiusTransform {
        &self.gamma
    }

    /// `γ⁻¹(0)`.
    pub fn alpha(&self) -> C64 {
        self.gamma.pole()
    }

    pub fn inverse(&self) -> Self {
        Self { omega: self.omega.conj(), gamma: self.gamma.inverse() }
    }

    /// `self ∘ inner`. The first-coordinate factors multiply along the chain
    /// rule, so the composite is again of this form; its `ω` is read off at
    /// the origin, where the positive factors cancel.
    pub fn compose(&self, inner: &PentaAut) -> Result<Self> {
        let w = inner.gamma.apply(C64::new(0.0, 0.0));
        Self::new(self.omega * inner.omega * chain_phase(self.alpha(), w), self.gamma.compose(&inner.gamma))
    }

    /// `fⁿ` as a single automorphism.
    pub fn power(&self, n: u32) -> Result<Self> {
        let alpha = self.alpha();
        let mut omega = C64::new(1.0, 0.0);
        for k in 0..n {
            let w = self.gamma.power(k).apply(C64::new(0.0, 0.0));
            omega *= self.omega * chain_phase(alpha, w);
        }
        Self::new(omega / omega.norm(), self.gamma.power(n))
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        Domain::Penta.check_dim(x)?;
        Domain::Penta.require_inside(x, DOMAIN_GUARD)?;
        let pt = x.penta();
        let alpha = self.alpha();
        let den = 1.0 - alpha.conj() * pt.s + alpha.conj() * alpha.conj() * pt.p;
        if !(den.norm() >= SINGULAR) {
            return Err(Error::DenominatorSingular(den.norm()));
        }
        let a = self.omega * (1.0 - alpha.norm_sqr()) * pt.a / den;
        let base = symmetric_image(&[pt.s, pt.p], &self.gamma)?;
        Ok(PentaPoint::new(a, base[0], base[1]).into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "group", rename_all = "lowercase")]
pub enum Automorphism {
    Gn(GnAut),
    Tetra(TetraAut),
    Penta(PentaAut),
}

impl Automorphism {
    pub fn domain(&self) -> Domain {
        match self {
            Automorphism::Gn(f) => f.domain(),
            Automorphism::Tetra(_) => Domain::Tetra,
            Automorphism::Penta(_) => Domain::Penta,
        }
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        match self {
            Automorphism::Gn(f) => f.apply(x),
            Automorphism::Tetra(f) => f.apply(x),
            Automorphism::Penta(f) => f.apply(x),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Automorphism::Gn(f) => Automorphism::Gn(f.inverse()),
            Automorphism::Tetra(f) => Automorphism::Tetra(f.invert()),
            Automorphism::Penta(f) => Automorphism::Penta(f.inverse()),
        }
    }

    /// Whether the automorphism fixes an interior point, decided from the
    /// underlying disc maps.
    pub fn predicted_fixed_point(&self) -> bool {
        match self {
            Automorphism::Gn(f) => f.h.has_interior_fixed_point(),
            Automorphism::Tetra(f) => f.triangular_action().has_fixed_point(),
            Automorphism::Penta(f) => f.gamma.has_interior_fixed_point(),
        }
    }

    /// A fixed point read off from the disc data, when one exists.
    pub fn predicted_fixed_point_location(&self) -> Option<Point> {
        let disc_fixed = |m: &MobiusTransform| match m.classify() {
            MobiusClass::Identity => Some(C64::new(0.0, 0.0)),
            MobiusClass::Elliptic { fixed_point } => Some(fixed_point),
            _ => None,
        };
        match self {
            Automorphism::Gn(f) => {
                let z = disc_fixed(&f.h)?;
                Some(if f.n == 2 {
                    crate::domains::symmetrize2(z, z).into()
                } else {
                    crate::domains::symmetrize3(z, z, z).into()
                })
            }
            Automorphism::Penta(f) => {
                let z = disc_fixed(&f.gamma)?;
                Some(Point::triple(C64::new(0.0, 0.0), 2.0 * z, z * z))
            }
            Automorphism::Tetra(f) => {
                let act = f.triangular_action();
                let (a, b) = if act.swapped {
                    let a = disc_fixed(&act.first.compose(&act.second))?;
                    (a, act.second.apply(a))
                } else {
                    (disc_fixed(&act.first)?, disc_fixed(&act.second)?)
                };
                Some(Point::triple(a, b, a * b))
            }
        }
    }
}

impl PointMap for Automorphism {
    fn domain(&self) -> Domain {
        Automorphism::domain(self)
    }

    fn map_point(&self, x: &Point) -> Result<Point> {
        self.apply(x)
    }
}

pub const PERIOD_RESIDUAL: f64 = 1e-9;

/// Smallest `p ≤ p_max` with `fᵖ(x) = x` on every probe to 1e−9.
pub fn periodicity_detect<M: PointMap + ?Sized>(f: &M, p_max: usize, probes: &[Point]) -> Option<usize> {
    if probes.is_empty() {
        return None;
    }
    let mut current: Vec<Point> = probes.to_vec();
    for p in 1..=p_max {
        for x in current.iter_mut() {
            *x = f.map_point(x).ok()?;
        }
        let worst = current.iter().zip(probes).map(|(a, b)| a.dist(b)).fold(0.0, f64::max);
        if worst < PERIOD_RESIDUAL {
            return Some(p);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{self, symmetrize2, symmetrize3};
    use crate::point::sample_disc;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{PI, TAU};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_mobius(rng: &mut ChaCha8Rng) -> MobiusTransform {
        MobiusTransform::new(rng.random::<f64>() * TAU, sample_disc(rng, 0.95)).unwrap()
    }

    fn random_word(rng: &mut ChaCha8Rng) -> TetraAut {
        let len = rng.random_range(1..6);
        TetraAut::new(
            (0..len)
                .map(|_| match rng.random_range(0..3) {
                    0 => TetraAtom::L(random_mobius(rng)),
                    1 => TetraAtom::R(random_mobius(rng)),
                    _ => TetraAtom::F,
                })
                .collect(),
        )
    }

    // Oracle for the symmetrized action: go through the roots.
    fn root_route(f: &GnAut, x: &Point) -> Point {
        if f.n == 2 {
            let [a, b] = domains::desymmetrize2(x.sym2()).unwrap();
            symmetrize2(f.h.apply(a), f.h.apply(b)).into()
        } else {
            let [a, b, d] = domains::desymmetrize3(x.sym3()).unwrap();
            symmetrize3(f.h.apply(a), f.h.apply(b), f.h.apply(d)).into()
        }
    }

    fn half_shift() -> MobiusTransform {
        MobiusTransform::new(0.0, c(-0.5, 0.0)).unwrap()
    }

    #[test]
    fn gn_examples() {
        let neg = GnAut::new(2, MobiusTransform::negation()).unwrap();
        let y = neg.apply2(SymPoint2::new(c(0.5, 0.0), c(0.1, 0.0))).unwrap();
        assert!((y.s - c(-0.5, 0.0)).norm() < 1e-15 && (y.p - c(0.1, 0.0)).norm() < 1e-15);
        let id = GnAut::new(2, MobiusTransform::identity()).unwrap();
        let x = SymPoint2::new(c(0.2, 0.3), c(-0.1, 0.05));
        assert_eq!(id.apply2(x).unwrap(), x);
        let f = GnAut::new(3, half_shift()).unwrap();
        let y = f.apply3(SymPoint3::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0))).unwrap();
        assert!((y.s1 - c(1.5, 0.0)).norm() < 1e-15);
        assert!((y.s2 - c(0.75, 0.0)).norm() < 1e-15);
        assert!((y.s3 - c(0.125, 0.0)).norm() < 1e-15);
        assert!(GnAut::new(4, half_shift()).is_err());
        let far = Point::pair(c(3.0, 0.0), c(0.0, 0.0));
        assert!(matches!(f.inverse().apply(&Point::triple(c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0))), Err(Error::PointOutsideDomain { .. })));
        assert!(GnAut::new(2, half_shift()).unwrap().apply(&far).is_err());
    }

    #[test]
    fn tetra_examples() {
        let x = TetraPoint::new(c(0.1, 0.0), c(0.2, 0.0), c(0.3, 0.0));
        assert_eq!(tetra_f(x), TetraPoint::new(c(0.2, 0.0), c(0.1, 0.0), c(0.3, 0.0)));
        let w = C64::from_polar(1.0, 0.9);
        let sigma = C64::from_polar(1.0, -2.1);
        let nu = MobiusTransform::from_negated_form(w, c(0.0, 0.0)).unwrap();
        let chi = MobiusTransform::from_negated_form(sigma, c(0.0, 0.0)).unwrap();
        let x = TetraPoint::new(c(0.1, 0.2), c(-0.3, 0.1), c(0.05, -0.1));
        let y = tetra_l(&nu, x).unwrap();
        assert!((y.x1 + w * x.x1).norm() < 1e-15 && (y.x2 - x.x2).norm() < 1e-15 && (y.x3 + w * x.x3).norm() < 1e-15);
        let f = TetraAut::new(vec![TetraAtom::L(nu), TetraAtom::R(chi)]);
        let y = f.apply(&x.into()).unwrap().tetra();
        assert!((y.x1 + w * x.x1).norm() < 1e-15);
        assert!((y.x2 + sigma * x.x2).norm() < 1e-15);
        assert!((y.x3 - sigma * w * x.x3).norm() < 1e-15);
        let p: Point = x.into();
        assert_eq!(TetraAut::identity().apply(&p).unwrap(), p);
        assert_eq!(TetraAut::new(vec![TetraAtom::F, TetraAtom::F]).apply(&p).unwrap(), p);
        let minus = MobiusTransform::from_negated_form(c(-1.0, 0.0), c(0.0, 0.0)).unwrap();
        let id = TetraAut::new(vec![TetraAtom::L(minus), TetraAtom::R(minus)]);
        assert!(id.apply(&p).unwrap().dist(&p) < 1e-15);
    }

    #[test]
    fn penta_examples() {
        let zero = c(0.0, 0.0);
        let f = PentaAut::new(c(1.0, 0.0), half_shift()).unwrap();
        let y = f.apply(&Point::triple(zero, zero, zero)).unwrap();
        assert!(y.dist(&Point::triple(zero, c(1.0, 0.0), c(0.25, 0.0))) < 1e-15);
        let g = MobiusTransform::new(1.0, c(0.3, 0.2)).unwrap();
        let MobiusClass::Elliptic { fixed_point: z0 } = g.classify() else { panic!() };
        let f = PentaAut::new(C64::from_polar(1.0, 0.4), g).unwrap();
        let fixed = Point::triple(zero, 2.0 * z0, z0 * z0);
        assert!(f.apply(&fixed).unwrap().dist(&fixed) < 1e-12);
        let id = PentaAut::new(c(1.0, 0.0), MobiusTransform::identity()).unwrap();
        let x = Point::triple(c(0.1, 0.1), c(0.2, 0.0), c(0.0, 0.05));
        assert!(id.apply(&x).unwrap().dist(&x) < 1e-15);
        assert!(PentaAut::new(c(1.1, 0.0), g).is_err());
    }

    #[test]
    fn periodicity_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g2_probes: Vec<Point> = (0..4).map(|_| Domain::G2.sample_interior(&mut rng)).collect();
        let neg = Automorphism::Gn(GnAut::new(2, MobiusTransform::negation()).unwrap());
        assert_eq!(periodicity_detect(&neg, 64, &g2_probes), Some(2));
        let tetra_probes: Vec<Point> = (0..4).map(|_| Domain::Tetra.sample_interior(&mut rng)).collect();
        let flip = Automorphism::Tetra(TetraAut::new(vec![TetraAtom::F]));
        assert_eq!(periodicity_detect(&flip, 64, &tetra_probes), Some(2));
        let hyp = Automorphism::Gn(GnAut::new(2, half_shift()).unwrap());
        assert_eq!(periodicity_detect(&hyp, 64, &g2_probes), None);
    }

    #[test]
    fn period_matches_algebraic_period() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let probes: Vec<Point> = (0..4).map(|_| Domain::G2.sample_interior(&mut rng)).collect();
        for q in 1..=12usize {
            let conj = random_mobius(&mut rng);
            let turn = rng.random_range(1..=q.max(1)) as f64;
            let h = conj.inverse().compose(&MobiusTransform::rotation_by(TAU * turn / q as f64)).compose(&conj);
            let f = Automorphism::Gn(GnAut::new(2, h).unwrap());
            assert_eq!(periodicity_detect(&f, 64, &probes), h.algebraic_period(64), "q = {q}");
        }
    }

    #[test]
    fn symmetric_image_matches_root_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5_000 {
            let n = rng.random_range(2..=3);
            let f = GnAut::new(n, random_mobius(&mut rng)).unwrap();
            let x = f.domain().sample_interior(&mut rng);
            let y = f.apply(&x).unwrap();
            assert!(y.dist(&root_route(&f, &x)) < 1e-10);
        }
    }

    #[test]
    fn triangular_action_matches_pointwise_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..2_000 {
            let f = random_word(&mut rng);
            let (a, b) = (sample_disc(&mut rng, 0.9), sample_disc(&mut rng, 0.9));
            let y = f.apply(&Point::triple(a, b, a * b)).unwrap();
            let act = f.triangular_action();
            let (a2, b2) = if act.swapped {
                (act.first.apply(b), act.second.apply(a))
            } else {
                (act.first.apply(a), act.second.apply(b))
            };
            assert!(y.dist(&Point::triple(a2, b2, a2 * b2)) < 1e-9);
        }
    }

    #[test]
    fn penta_composition_matches_sequential_application() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..500 {
            let mut draw = || PentaAut::new(C64::from_polar(1.0, rng.random::<f64>() * TAU), random_mobius(&mut rng)).unwrap();
            let (f, g) = (draw(), draw());
            let fg = f.compose(&g).unwrap();
            let x = Domain::Penta.sample_interior(&mut rng);
            let want = f.apply(&g.apply(&x).unwrap()).unwrap();
            assert!(fg.apply(&x).unwrap().dist(&want) < 1e-10);
        }
        let f = PentaAut::new(c(0.0, 1.0), MobiusTransform::new(0.4, c(0.3, 0.5)).unwrap()).unwrap();
        let x = Point::triple(c(0.1, 0.2), c(0.3, -0.1), c(0.05, 0.0));
        let mut y = x;
        for _ in 0..7 {
            y = f.apply(&y).unwrap();
        }
        assert!(f.power(7).unwrap().apply(&x).unwrap().dist(&y) < 1e-12);
        assert_eq!(f.power(0).unwrap().apply(&x).unwrap(), x);
    }

    #[test]
    fn predicted_fixed_points_are_fixed() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut seen = 0;
        while seen < 300 {
            let f = match rng.random_range(0..3) {
                0 => Automorphism::Gn(GnAut::new(rng.random_range(2..=3), random_mobius(&mut rng)).unwrap()),
                1 => Automorphism::Tetra(random_word(&mut rng)),
                _ => Automorphism::Penta(
                    PentaAut::new(C64::from_polar(1.0, rng.random::<f64>() * TAU), random_mobius(&mut rng)).unwrap(),
                ),
            };
            assert_eq!(f.predicted_fixed_point(), f.predicted_fixed_point_location().is_some());
            if let Some(z) = f.predicted_fixed_point_location() {
                if f.domain().margin(&z).unwrap() > 1e-3 {
                    assert!(f.apply(&z).unwrap().dist(&z) < 1e-9, "{f:?}");
                    seen += 1;
                }
            }
        }
    }

    fn arb_mobius() -> impl Strategy<Value = MobiusTransform> {
        (0.0..TAU, 0.0..0.95f64, 0.0..TAU)
            .prop_map(|(t, r, phi)| MobiusTransform::new(t, C64::from_polar(r, phi)).unwrap())
    }

    proptest! {
        #[test]
        fn gn_inverse_and_preservation(h in arb_mobius(), seed in any::<u64>(), n in 2usize..=3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = GnAut::new(n, h).unwrap();
            let x = f.domain().sample_interior(&mut rng);
            let y = f.apply(&x).unwrap();
            prop_assert!(f.domain().margin(&y).unwrap() > 0.0);
            prop_assert!(f.inverse().apply(&y).unwrap().dist(&x) < 1e-10);
        }

        #[test]
        fn royal_points_stay_royal(h in arb_mobius(), r in 0.0..0.99f64, t in 0.0..TAU) {
            let z = C64::from_polar(r, t);
            let y = GnAut::new(2, h).unwrap().apply2(symmetrize2(z, z)).unwrap();
            prop_assert!((y.s * y.s - 4.0 * y.p).norm() < 1e-10);
        }

        #[test]
        fn tetra_inverse_and_triangular_invariance(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_word(&mut rng);
            let x = Domain::Tetra.sample_interior(&mut rng);
            let y = f.apply(&x).unwrap();
            prop_assert!(Domain::Tetra.margin(&y).unwrap() > 0.0);
            prop_assert!(f.invert().apply(&y).unwrap().dist(&x) < 1e-10);
            let (a, b) = (sample_disc(&mut rng, 1.0), sample_disc(&mut rng, 1.0));
            let t = f.apply(&Point::triple(a, b, a * b)).unwrap().tetra();
            prop_assert!((t.x3 - t.x1 * t.x2).norm() < 1e-10);
            let g = random_word(&mut rng);
            let composed = f.compose(&g).apply(&x).unwrap();
            prop_assert!(composed.dist(&f.apply(&g.apply(&x).unwrap()).unwrap()) < 1e-10);
        }

        #[test]
        fn penta_inverse_and_consistency(g in arb_mobius(), phi in 0.0..TAU, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = PentaAut::new(C64::from_polar(1.0, phi), g).unwrap();
            let x = Domain::Penta.sample_interior(&mut rng);
            let y = f.apply(&x).unwrap();
            prop_assert!(Domain::Penta.margin(&y).unwrap() > 0.0);
            prop_assert!(f.inverse().apply(&y).unwrap().dist(&x) < 1e-10);
            let base = GnAut::new(2, g).unwrap().apply(&Point::pair(x.coords()[1], x.coords()[2])).unwrap();
            prop_assert!((y.coords()[1] - base.coords()[0]).norm() < 1e-12);
            prop_assert!((y.coords()[2] - base.coords()[1]).norm() < 1e-12);
        }
    }

    #[test]
    fn tetra_generators_compose_like_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..500 {
            let (n1, n2) = (random_mobius(&mut rng), random_mobius(&mut rng));
            let x = Domain::Tetra.sample_interior(&mut rng).tetra();
            let lhs = tetra_l(&n1, tetra_l(&n2, x).unwrap()).unwrap();
            let rhs = tetra_l(&n1.compose(&n2), x).unwrap();
            assert!(Point::from(lhs).dist(&rhs.into()) < 1e-10);
            let lhs = tetra_r(&n1, tetra_r(&n2, x).unwrap()).unwrap();
            let rhs = tetra_r(&n2.compose(&n1), x).unwrap();
            assert!(Point::from(lhs).dist(&rhs.into()) < 1e-10);
        }
        let _ = PI;
    }
}
