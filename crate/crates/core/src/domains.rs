//! Points of the four domains, symmetrization, membership with signed
//! margins, magic functions and complex geodesics of the symmetrized bidisc.

use std::f64::consts::TAU;
use std::sync::OnceLock;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::disc::{BlaschkeProduct, MobiusTransform};
use crate::error::{Error, Result};
use crate::poly;

/// Margins within this band report [`MembershipStatus::Boundary`].
pub const BOUNDARY_BAND: f64 = 1e-9;
const MAGIC_SINGULAR: f64 = 1e-14;
const BETA_SLACK: f64 = 1e-12;
const VARIETY_TOL: f64 = 1e-10;

/// `(s, p) = (z₁ + z₂, z₁z₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymPoint2 {
    pub s: C64,
    pub p: C64,
}

/// Elementary symmetric values of a triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymPoint3 {
    pub s1: C64,
    pub s2: C64,
    pub s3: C64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TetraPoint {
    pub x1: C64,
    pub x2: C64,
    pub x3: C64,
}

/// A point `(a, s, p)` fibred over `(s, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PentaPoint {
    pub a: C64,
    pub s: C64,
    pub p: C64,
}

impl SymPoint2 {
    pub fn new(s: C64, p: C64) -> Self {
        Self { s, p }
    }
}

impl SymPoint3 {
    pub fn new(s1: C64, s2: C64, s3: C64) -> Self {
        Self { s1, s2, s3 }
    }
}

impl TetraPoint {
    pub fn new(x1: C64, x2: C64, x3: C64) -> Self {
        Self { x1, x2, x3 }
    }
}

impl PentaPoint {
    pub fn new(a: C64, s: C64, p: C64) -> Self {
        Self { a, s, p }
    }

    pub fn base(&self) -> SymPoint2 {
        SymPoint2::new(self.s, self.p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipStatus {
    Inside,
    Boundary,
    Outside,
}

impl MembershipStatus {
    pub fn from_margin(margin: f64) -> Self {
        if margin.abs() <= BOUNDARY_BAND {
            MembershipStatus::Boundary
        } else if margin > 0.0 {
            MembershipStatus::Inside
        } else {
            MembershipStatus::Outside
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The ω maximizing `|Φ_ω|`, with the maximum.
    SupOmega { omega: C64, sup: f64 },
    /// The root of largest modulus.
    LargestRoot { root: C64 },
    /// The pentablock β and the right-hand side of the fibre inequality.
    Beta { beta: C64, rhs: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub status: MembershipStatus,
    pub margin: f64,
    pub witness: Option<Witness>,
}

impl MembershipVerdict {
    pub fn new(margin: f64, witness: Option<Witness>) -> Self {
        Self { status: MembershipStatus::from_margin(margin), margin, witness }
    }

    pub fn is_inside(&self) -> bool {
        self.status == MembershipStatus::Inside
    }
}

pub fn symmetrize2(z1: C64, z2: C64) -> SymPoint2 {
    SymPoint2::new(z1 + z2, z1 * z2)
}

pub fn symmetrize3(z1: C64, z2: C64, z3: C64) -> SymPoint3 {
    SymPoint3::new(z1 + z2 + z3, z1 * z2 + z1 * z3 + z2 * z3, z1 * z2 * z3)
}

/// Roots of `z² − sz + p`.
pub fn desymmetrize2(pt: SymPoint2) -> Result<[C64; 2]> {
    let r = poly::poly_roots(&[C64::new(1.0, 0.0), -pt.s, pt.p])?.roots;
    Ok([r[0], r[1]])
}

/// Roots of `z³ − s₁z² + s₂z − s₃`.
pub fn desymmetrize3(pt: SymPoint3) -> Result<[C64; 3]> {
    let r = poly::poly_roots(&[C64::new(1.0, 0.0), -pt.s1, pt.s2, -pt.s3])?.roots;
    Ok([r[0], r[1], r[2]])
}

/// `(2ωp − s)/(2 − ωs)`.
pub fn magic_phi(omega: C64, pt: SymPoint2) -> Result<C64> {
    let den = 2.0 - omega * pt.s;
    if den.norm() <= MAGIC_SINGULAR {
        return Err(Error::Singular(den.norm()));
    }
    Ok((2.0 * omega * pt.p - pt.s) / den)
}

/// Resolution of the sup of `|Φ_ω|` over the circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupSearch {
    pub grid: usize,
    pub tol: f64,
}

impl Default for SupSearch {
    fn default() -> Self {
        Self { grid: 4096, tol: 1e-12 }
    }
}

fn circle_grid(n: usize) -> std::borrow::Cow<'static, [C64]> {
    static DEFAULT: OnceLock<Vec<C64>> = OnceLock::new();
    let build = |n: usize| (0..n).map(|k| C64::from_polar(1.0, TAU * k as f64 / n as f64)).collect::<Vec<_>>();
    if n == SupSearch::default().grid {
        std::borrow::Cow::Borrowed(DEFAULT.get_or_init(|| build(n)).as_slice())
    } else {
        std::borrow::Cow::Owned(build(n))
    }
}

fn magic_abs_at(t: f64, pt: SymPoint2) -> f64 {
    magic_phi(C64::from_polar(1.0, t), pt).map_or(f64::INFINITY, |v| v.norm())
}

/// `(sup_ω |Φ_ω(s,p)|, argmax ω)`. Along the circle `ω ↦ Φ_ω` traces a
/// circle, so `|Φ_ω|` has a single local maximum and golden-section search
/// around the grid argmax converges to it.
pub fn magic_sup(pt: SymPoint2, search: &SupSearch) -> (f64, C64) {
    let n = search.grid.max(8);
    let grid = circle_grid(n);
    let mut best_k = 0;
    let mut best = f64::NEG_INFINITY;
    for (k, w) in grid.iter().enumerate() {
        let den = 2.0 - w * pt.s;
        if den.norm() <= MAGIC_SINGULAR {
            continue;
        }
        let v = ((2.0 * w * pt.p - pt.s) / den).norm();
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let h = TAU / n as f64;
    let (mut lo, mut hi) = ((best_k as f64 - 1.0) * h, (best_k as f64 + 1.0) * h);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = magic_abs_at(x1, pt);
    let mut f2 = magic_abs_at(x2, pt);
    while hi - lo > search.tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = magic_abs_at(x1, pt);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = magic_abs_at(x2, pt);
        }
    }
    let t = 0.5 * (lo + hi);
    let refined = magic_abs_at(t, pt);
    if refined.is_finite() && refined >= best {
        (refined, C64::from_polar(1.0, t))
    } else {
        (best, grid[best_k])
    }
}

/// Membership in the symmetrized bidisc through the magic functions.
pub fn g2_membership(pt: SymPoint2) -> MembershipVerdict {
    g2_membership_with(pt, &SupSearch::default())
}

pub fn g2_membership_with(pt: SymPoint2, search: &SupSearch) -> MembershipVerdict {
    let trace_slack = 2.0 - pt.s.norm();
    if !(trace_slack > 0.0) || !pt.p.is_finite() {
        let m = if trace_slack.is_nan() || !pt.p.is_finite() { f64::NEG_INFINITY } else { trace_slack };
        return MembershipVerdict::new(m, None);
    }
    let (sup, omega) = magic_sup(pt, search);
    MembershipVerdict::new(trace_slack.min(1.0 - sup), Some(Witness::SupOmega { omega, sup }))
}

fn root_verdict(roots: &[C64]) -> MembershipVerdict {
    let root = *roots
        .iter()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("nonempty roots");
    MembershipVerdict::new(1.0 - root.norm(), Some(Witness::LargestRoot { root }))
}

/// Membership in the symmetrized bidisc through the roots of `z² − sz + p`.
pub fn g2_membership_oracle(pt: SymPoint2) -> Result<MembershipVerdict> {
    Ok(root_verdict(&desymmetrize2(pt)?))
}

pub(crate) fn g2_root_margin(pt: SymPoint2) -> Result<f64> {
    let [a, b] = desymmetrize2(pt)?;
    Ok(1.0 - a.norm().max(b.norm()))
}

pub fn g3_membership(pt: SymPoint3) -> Result<MembershipVerdict> {
    Ok(root_verdict(&desymmetrize3(pt)?))
}

pub(crate) fn tetra_margin(x: TetraPoint) -> f64 {
    (1.0 - x.x1.norm_sqr()) - (x.x2 - x.x1.conj() * x.x3).norm() - (x.x1 * x.x2 - x.x3).norm()
}

pub fn tetra_membership(x: TetraPoint) -> MembershipVerdict {
    MembershipVerdict::new(tetra_margin(x), None)
}

/// Denominator convention for the pentablock β.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BetaVariant {
    /// `(s − s̄p)/(1 − |p|)²`.
    #[default]
    Paper,
    /// `(s − s̄p)/(1 − |p|²)`.
    Literature,
}

impl std::str::FromStr for BetaVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(BetaVariant::Paper),
            "literature" => Ok(BetaVariant::Literature),
            other => Err(Error::InvalidArgument(format!("unknown β variant `{other}`"))),
        }
    }
}

pub fn penta_beta(base: SymPoint2, variant: BetaVariant) -> C64 {
    let num = base.s - base.s.conj() * base.p;
    let den = match variant {
        BetaVariant::Paper => (1.0 - base.p.norm()).powi(2),
        BetaVariant::Literature => 1.0 - base.p.norm_sqr(),
    };
    num / den
}

fn penta_rhs_with_beta(base: SymPoint2, variant: BetaVariant) -> Result<(f64, C64)> {
    let mut beta = penta_beta(base, variant);
    let m = beta.norm();
    if !(m <= 1.0 + BETA_SLACK) {
        return Err(Error::BetaOutOfRange { beta });
    }
    if m > 1.0 {
        beta /= m;
    }
    let root = (1.0 - beta.norm_sqr()).max(0.0).sqrt();
    let rhs = (1.0 - 0.5 * base.s * beta.conj() / (1.0 + root)).norm();
    Ok((rhs, beta))
}

/// `|1 − (s β̄/2)/(1 + √(1 − |β|²))|` for a base point of the bidisc.
pub fn penta_rhs(base: SymPoint2, variant: BetaVariant) -> Result<f64> {
    penta_rhs_with_beta(base, variant).map(|(r, _)| r)
}

/// Pentablock membership with the β convention of `variant`. When `(s, p)`
/// is not inside the bidisc the bidisc verdict is returned and β is not
/// evaluated.
pub fn penta_membership(pt: PentaPoint, variant: BetaVariant) -> Result<MembershipVerdict> {
    let base = g2_membership(pt.base());
    if !base.is_inside() {
        return Ok(MembershipVerdict::new(base.margin, base.witness));
    }
    let (rhs, beta) = penta_rhs_with_beta(pt.base(), variant)?;
    let margin = base.margin.min(rhs - pt.a.norm());
    Ok(MembershipVerdict::new(margin, Some(Witness::Beta { beta, rhs })))
}

pub(crate) fn penta_fast_margin(pt: PentaPoint) -> Result<f64> {
    let base = g2_root_margin(pt.base())?;
    if base <= 0.0 {
        return Ok(base);
    }
    // Inside the bidisc the literature β lies in the open disc; near the
    // royal boundary rounding can push it just past 1.
    let mut beta = penta_beta(pt.base(), BetaVariant::Literature);
    if !beta.is_finite() {
        return Err(Error::BetaOutOfRange { beta });
    }
    if beta.norm() > 1.0 {
        beta /= beta.norm();
    }
    let root = (1.0 - beta.norm_sqr()).max(0.0).sqrt();
    let rhs = (1.0 - 0.5 * pt.s * beta.conj() / (1.0 + root)).norm();
    Ok(base.min(rhs - pt.a.norm()))
}

/// On the royal variety `s² = 4p` and inside the bidisc.
pub fn royal_membership(pt: SymPoint2) -> bool {
    (pt.s * pt.s - 4.0 * pt.p).norm() < VARIETY_TOL
        && g2_membership_oracle(pt).is_ok_and(|v| v.is_inside())
}

/// On the triangular set `x₃ = x₁x₂` and inside the tetrablock.
pub fn triangular_membership(x: TetraPoint) -> bool {
    (x.x3 - x.x1 * x.x2).norm() < VARIETY_TOL && tetra_membership(x).is_inside()
}

fn check_geodesic_arg(lambda: C64) -> Result<()> {
    if !lambda.is_finite() || lambda.norm() >= 1.0 {
        return Err(Error::GeodesicArgOutOfDisc(lambda));
    }
    Ok(())
}

/// `λ ↦ π₂(B(√λ), B(−√λ))`.
pub fn geodesic_form1(b: &BlaschkeProduct, lambda: C64) -> Result<SymPoint2> {
    check_geodesic_arg(lambda)?;
    let r = lambda.sqrt();
    Ok(symmetrize2(b.apply(r), b.apply(-r)))
}

/// `λ ↦ π₂(λ, a(λ))` for a fixed-point-free disc automorphism `a`.
pub fn geodesic_form2(a: &MobiusTransform, lambda: C64) -> Result<SymPoint2> {
    if a.has_interior_fixed_point() {
        return Err(Error::NotFixedPointFree);
    }
    check_geodesic_arg(lambda)?;
    Ok(symmetrize2(lambda, a.apply(lambda)))
}

/// `(2e^{iθ}, e^{2iθ})` on the distinguished boundary.
pub fn boundary_param_royal(theta: f64) -> SymPoint2 {
    let z = C64::from_polar(1.0, theta);
    symmetrize2(z, z)
}
