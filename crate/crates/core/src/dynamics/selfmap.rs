//! Holomorphic self-maps assembled from library atoms.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::automorphisms::{Automorphism, PointMap};
use crate::disc::{BlaschkeProduct, MobiusTransform};
use crate::domains::{self, magic_phi};
use crate::error::{Error, Result};
use crate::point::{sample_disc, Domain, Point};

/// Samples drawn when validating a new map.
pub const VALIDATION_SAMPLES: usize = 1000;
const VALIDATION_SEED: u64 = 0x005e_ed0f_ba11;

/// A holomorphic self-map of the unit disc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DiscAtom {
    Mobius(MobiusTransform),
    Blaschke(BlaschkeProduct),
    /// `z ↦ cz` with `|c| ≤ 1`.
    Scale { factor: C64 },
}

// `(C − bI)(I − b̄C)⁻¹`.
fn matrix_factor(m: &DMatrix<C64>, b: C64) -> Result<DMatrix<C64>> {
    let id = DMatrix::<C64>::identity(m.nrows(), m.ncols());
    let den = (&id - m * b.conj()).try_inverse().ok_or(Error::Singular(0.0))?;
    Ok((m - &id * b) * den)
}

impl DiscAtom {
    pub fn apply(&self, z: C64) -> C64 {
        match self {
            DiscAtom::Mobius(m) => m.apply(z),
            DiscAtom::Blaschke(b) => b.apply(z),
            DiscAtom::Scale { factor } => factor * z,
        }
    }

    /// The same rational function evaluated at a matrix with spectrum in
    /// the disc.
    fn apply_matrix(&self, m: &DMatrix<C64>) -> Result<DMatrix<C64>> {
        match self {
            DiscAtom::Mobius(h) => Ok(matrix_factor(m, h.pole())? * h.unimodular()),
            DiscAtom::Blaschke(b) => b.zeros()[1..]
                .iter()
                .try_fold(m * b.omega(), |acc, z| Ok(acc * matrix_factor(m, *z)?)),
            DiscAtom::Scale { factor } => Ok(m * *factor),
        }
    }
}

// Companion matrix of `zⁿ − e₁zⁿ⁻¹ + e₂zⁿ⁻² − …`.
fn companion(e: &[C64]) -> DMatrix<C64> {
    let n = e.len();
    let mut c = DMatrix::<C64>::zeros(n, n);
    for i in 1..n {
        c[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for i in 0..n {
        let k = n - i;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        c[(i, n - 1)] = e[k - 1] * sign;
    }
    c
}

/// Elementary symmetric functions of `g` at the roots of the polynomial with
/// elementary symmetric functions `e`, computed as the characteristic
/// polynomial of `g(C)` for the companion matrix `C`. Unlike mapping the
/// roots one by one this stays accurate near repeated roots.
pub fn lift_symmetric(g: &DiscWord, e: &[C64]) -> Result<Vec<C64>> {
    let m = g.0.iter().rev().try_fold(companion(e), |acc, a| a.apply_matrix(&acc))?;
    let tr = m.trace();
    Ok(match e.len() {
        2 => vec![tr, m.determinant()],
        3 => vec![tr, 0.5 * (tr * tr - (&m * &m).trace()), m.determinant()],
        n => return Err(Error::InvalidArgument(format!("symmetric lift of degree {n}"))),
    })
}

/// A composition of disc atoms; the last atom acts first.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DiscWord(pub Vec<DiscAtom>);

impl DiscWord {
    pub fn new(atoms: Vec<DiscAtom>) -> Self {
        Self(atoms)
    }

    pub fn apply(&self, z: C64) -> C64 {
        self.0.iter().rev().fold(z, |w, a| a.apply(w))
    }

    fn validate(&self) -> Result<()> {
        for atom in &self.0 {
            if let DiscAtom::Scale { factor } = atom {
                if !factor.is_finite() || factor.norm() > 1.0 {
                    return Err(Error::InvalidArgument(format!("scale factor {factor} exceeds 1")));
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED);
        for _ in 0..VALIDATION_SAMPLES {
            let z = sample_disc(&mut rng, 1.0);
            let w = self.apply(z);
            if !(w.norm() < 1.0) {
                return Err(Error::InvalidArgument(format!("disc word maps {z} to {w}")));
            }
        }
        Ok(())
    }
}

/// Holomorphic functional from a domain to the disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outbound {
    /// Mean of the roots: `s/2` on the bidisc and pentablock, `s₁/3` on the
    /// tridisc.
    HalfTrace,
    /// `Φ_ω(s, p)`.
    Magic { omega: C64 },
    /// A single coordinate bounded by one on the domain.
    Coordinate { index: usize },
}

impl Outbound {
    fn supports(&self, domain: Domain) -> bool {
        match (self, domain) {
            (Outbound::HalfTrace, d) => d != Domain::Tetra,
            (Outbound::Magic { .. }, d) => matches!(d, Domain::G2 | Domain::Penta),
            (Outbound::Coordinate { index }, Domain::G2) => *index == 1,
            (Outbound::Coordinate { index }, Domain::G3) => *index == 2,
            (Outbound::Coordinate { index }, Domain::Tetra) => *index < 3,
            (Outbound::Coordinate { index }, Domain::Penta) => *index == 0 || *index == 2,
        }
    }

    pub fn apply(&self, domain: Domain, x: &Point) -> Result<C64> {
        let c = x.coords();
        match self {
            Outbound::HalfTrace => Ok(match domain {
                Domain::G2 => c[0] / 2.0,
                Domain::G3 => c[0] / 3.0,
                _ => c[1] / 2.0,
            }),
            Outbound::Magic { omega } => {
                let base = if domain == Domain::Penta { Point::pair(c[1], c[2]) } else { *x };
                magic_phi(*omega, base.sym2())
            }
            Outbound::Coordinate { index } => Ok(c[*index]),
        }
    }
}

/// Holomorphic map from the disc into a domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Inbound {
    /// `λ ↦ π₂(B(√λ), B(−√λ))`.
    Form1 { b: BlaschkeProduct },
    /// `λ ↦ π₂(λ, a(λ))` with `a` fixed-point free.
    Form2 { a: MobiusTransform },
    /// `λ ↦ π₂(c, λ)`.
    Pinned { c: C64 },
    /// `λ` placed in one coordinate, zeros elsewhere.
    Axis { index: usize },
    /// Symmetrization of `(λ, …, λ)`; `(λ, λ, λ²)` on the tetrablock.
    Diagonal,
}

impl Inbound {
    fn supports(&self, domain: Domain) -> bool {
        match self {
            Inbound::Form1 { .. } | Inbound::Form2 { .. } | Inbound::Pinned { .. } => {
                matches!(domain, Domain::G2 | Domain::Penta)
            }
            Inbound::Axis { index } => *index < domain.dim(),
            Inbound::Diagonal => true,
        }
    }

    fn check(&self) -> Result<()> {
        match self {
            Inbound::Form2 { a } if a.has_interior_fixed_point() => Err(Error::NotFixedPointFree),
            Inbound::Pinned { c } if !(c.norm() < 1.0) => {
                Err(Error::InvalidArgument(format!("pinned value {c} must lie in the disc")))
            }
            _ => Ok(()),
        }
    }

    pub fn apply(&self, domain: Domain, lambda: C64) -> Result<Point> {
        let zero = C64::new(0.0, 0.0);
        let base = match self {
            Inbound::Form1 { b } => domains::geodesic_form1(b, lambda)?,
            Inbound::Form2 { a } => domains::geodesic_form2(a, lambda)?,
            Inbound::Pinned { c } => domains::symmetrize2(*c, lambda),
            Inbound::Axis { index } => {
                let mut out = Point::zeros(domain.dim());
                out.coords_mut()[*index] = lambda;
                return Ok(out);
            }
            Inbound::Diagonal => {
                return Ok(match domain {
                    Domain::G2 => domains::symmetrize2(lambda, lambda).into(),
                    Domain::G3 => domains::symmetrize3(lambda, lambda, lambda).into(),
                    Domain::Tetra => Point::triple(lambda, lambda, lambda * lambda),
                    Domain::Penta => Point::triple(zero, 2.0 * lambda, lambda * lambda),
                })
            }
        };
        Ok(match domain {
            Domain::Penta => Point::triple(zero, base.s, base.p),
            _ => base.into(),
        })
    }
}

/// One factor of a [`SelfMap`] chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "atom", rename_all = "snake_case")]
pub enum Atom {
    Automorphism { map: Automorphism },
    /// `π(z₁, …) ↦ π(g(z₁), …)`; on the pentablock `(a, s, p) ↦ (0, lift of (s, p))`.
    SymLift { g: DiscWord },
    /// `x ↦ (g₁(x₁), g₂(x₂), g₁(x₁)g₂(x₂))` on the tetrablock.
    TriangularLift { first: DiscWord, second: DiscWord },
    /// `inbound ∘ via ∘ outbound`.
    DiscRoute { outbound: Outbound, via: DiscWord, inbound: Inbound },
    Constant { point: Point },
}

impl Atom {
    fn check_static(&self, domain: Domain) -> Result<()> {
        let unsupported = || Error::InvalidArgument(format!("atom not available on {domain}: {self:?}"));
        match self {
            Atom::Automorphism { map } => {
                if map.domain() != domain {
                    return Err(Error::DomainMismatch { expected: domain.name(), found: map.domain().name() });
                }
            }
            Atom::SymLift { g } => {
                if domain == Domain::Tetra {
                    return Err(unsupported());
                }
                g.validate()?;
            }
            Atom::TriangularLift { first, second } => {
                if domain != Domain::Tetra {
                    return Err(unsupported());
                }
                first.validate()?;
                second.validate()?;
            }
            Atom::DiscRoute { outbound, via, inbound } => {
                if !outbound.supports(domain) || !inbound.supports(domain) {
                    return Err(unsupported());
                }
                inbound.check()?;
                via.validate()?;
            }
            Atom::Constant { point } => {
                domain.check_dim(point)?;
                let m = domain.margin(point)?;
                if !(m > 0.0) {
                    return Err(Error::PointOutsideDomain { domain: domain.name(), margin: m });
                }
            }
        }
        Ok(())
    }

    /// Samples the atom on interior points and checks the image is interior.
    fn check_sampled(&self, domain: Domain) -> Result<()> {
        if matches!(self, Atom::Automorphism { .. } | Atom::Constant { .. }) {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED ^ 1);
        for _ in 0..VALIDATION_SAMPLES {
            let x = domain.sample_interior(&mut rng);
            if let Atom::DiscRoute { outbound, .. } = self {
                let l = outbound.apply(domain, &x)?;
                if !(l.norm() < 1.0) {
                    return Err(Error::InvalidArgument(format!("outbound functional reached {l}")));
                }
            }
            let y = self.apply(domain, &x)?;
            let m = domain.margin(&y)?;
            if !(m > 0.0) {
                return Err(Error::InvalidArgument(format!("atom leaves the domain (margin {m:e})")));
            }
        }
        Ok(())
    }

    pub fn apply(&self, domain: Domain, x: &Point) -> Result<Point> {
        match self {
            Atom::Automorphism { map } => map.apply(x),
            Atom::SymLift { g } => match domain {
                Domain::G2 | Domain::G3 => Point::new(&lift_symmetric(g, x.coords())?),
                Domain::Penta => {
                    let base = lift_symmetric(g, &x.coords()[1..])?;
                    Ok(Point::triple(C64::new(0.0, 0.0), base[0], base[1]))
                }
                Domain::Tetra => Err(Error::DomainMismatch { expected: "g2|g3|penta", found: "tetra" }),
            },
            Atom::TriangularLift { first, second } => {
                let c = x.coords();
                let (a, b) = (first.apply(c[0]), second.apply(c[1]));
                Ok(Point::triple(a, b, a * b))
            }
            Atom::DiscRoute { outbound, via, inbound } => {
                let l = via.apply(outbound.apply(domain, x)?);
                inbound.apply(domain, l)
            }
            Atom::Constant { point } => Ok(*point),
        }
    }
}

/// A chain of atoms read as a composition: the last atom acts first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SelfMapRepr", into = "SelfMapRepr")]
pub struct SelfMap {
    domain: Domain,
    atoms: Vec<Atom>,
}

#[derive(Serialize, Deserialize)]
struct SelfMapRepr {
    domain: Domain,
    atoms: Vec<Atom>,
}

impl TryFrom<SelfMapRepr> for SelfMap {
    type Error = Error;
    fn try_from(r: SelfMapRepr) -> Result<Self> {
        SelfMap::new(r.domain, r.atoms)
    }
}

impl From<SelfMap> for SelfMapRepr {
    fn from(m: SelfMap) -> Self {
        SelfMapRepr { domain: m.domain, atoms: m.atoms }
    }
}

impl SelfMap {
    /// Validates every atom statically and on sampled interior points.
    pub fn new(domain: Domain, atoms: Vec<Atom>) -> Result<Self> {
        for atom in &atoms {
            atom.check_static(domain)?;
            atom.check_sampled(domain)?;
        }
        Ok(Self { domain, atoms })
    }

    pub fn identity(domain: Domain) -> Self {
        Self { domain, atoms: Vec::new() }
    }

    pub fn automorphism(map: Automorphism) -> Self {
        Self { domain: map.domain(), atoms: vec![Atom::Automorphism { map }] }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SelfMap) -> Result<Self> {
        if self.domain != inner.domain {
            return Err(Error::DomainMismatch { expected: self.domain.name(), found: inner.domain.name() });
        }
        Ok(Self { domain: self.domain, atoms: self.atoms.iter().chain(&inner.atoms).cloned().collect() })
    }

    /// The single automorphism this map consists of, if any.
    pub fn as_automorphism(&self) -> Option<&Automorphism> {
        match self.atoms.as_slice() {
            [Atom::Automorphism { map }] => Some(map),
            _ => None,
        }
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        self.domain.check_dim(x)?;
        let mut y = *x;
        for (index, atom) in self.atoms.iter().enumerate().rev() {
            y = atom.apply(self.domain, &y)?;
            let margin = self.domain.margin(&y)?;
            if !(margin > 0.0) {
                return Err(Error::AtomRangeViolation { index, margin });
            }
        }
        Ok(y)
    }
}

impl PointMap for SelfMap {
    fn domain(&self) -> Domain {
        self.domain
    }

    fn map_point(&self, x: &Point) -> Result<Point> {
        self.apply(x)
    }
}

/// `(s, p) ↦ (0, p)` on the bidisc.
pub fn zero_trace_retraction() -> SelfMap {
    SelfMap {
        domain: Domain::G2,
        atoms: vec![Atom::DiscRoute {
            outbound: Outbound::Coordinate { index: 1 },
            via: DiscWord::default(),
            inbound: Inbound::Axis { index: 1 },
        }],
    }
}

/// Projection of a tetrablock point onto one coordinate axis; index 2 is
/// `(x₁, x₂, x₃) ↦ (0, 0, x₃)`.
pub fn axis_projection(index: usize) -> SelfMap {
    SelfMap {
        domain: Domain::Tetra,
        atoms: vec![Atom::DiscRoute {
            outbound: Outbound::Coordinate { index },
            via: DiscWord::default(),
            inbound: Inbound::Axis { index },
        }],
    }
}
