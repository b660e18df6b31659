//! Domain tags and a coordinate-generic point used by the dynamics layer.

use std::fmt;

use num_complex::Complex64 as C64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::domains::{self, PentaPoint, SymPoint2, SymPoint3, TetraPoint};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// Symmetrized bidisc.
    G2,
    /// Symmetrized tridisc.
    G3,
    /// Tetrablock.
    Tetra,
    /// Pentablock.
    Penta,
}

impl Domain {
    pub const ALL: [Domain; 4] = [Domain::G2, Domain::G3, Domain::Tetra, Domain::Penta];

    pub fn name(self) -> &'static str {
        match self {
            Domain::G2 => "g2",
            Domain::G3 => "g3",
            Domain::Tetra => "tetra",
            Domain::Penta => "penta",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Domain::G2 => 2,
            _ => 3,
        }
    }

    pub fn origin(self) -> Point {
        Point::zeros(self.dim())
    }

    pub fn check_dim(self, x: &Point) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::InvalidArgument(format!(
                "{} point needs {} coordinates, got {}",
                self.name(),
                self.dim(),
                x.dim()
            )));
        }
        Ok(())
    }

    /// Cheap signed margin used along orbits: root moduli for the symmetrized
    /// domains, the defining inequality for the tetrablock, and the
    /// literature-β fibre inequality for the pentablock.
    pub fn margin(self, x: &Point) -> Result<f64> {
        self.check_dim(x)?;
        if !x.is_finite() {
            return Err(Error::InvalidArgument("non-finite point".into()));
        }
        let c = x.coords();
        Ok(match self {
            Domain::G2 => domains::g2_root_margin(SymPoint2::new(c[0], c[1]))?,
            Domain::G3 => domains::g3_membership(SymPoint3::new(c[0], c[1], c[2]))?.margin,
            Domain::Tetra => domains::tetra_margin(TetraPoint::new(c[0], c[1], c[2])),
            Domain::Penta => domains::penta_fast_margin(PentaPoint::new(c[0], c[1], c[2]))?,
        })
    }

    /// Fails with `PointOutsideDomain` unless the margin exceeds `-guard`.
    pub fn require_inside(self, x: &Point, guard: f64) -> Result<f64> {
        let margin = self.margin(x)?;
        if margin > -guard {
            Ok(margin)
        } else {
            Err(Error::PointOutsideDomain { domain: self.name(), margin })
        }
    }

    /// A random interior point. The symmetrized domains and the pentablock
    /// base use roots uniform in the disc; the tetrablock uses rejection from
    /// the polydisc.
    pub fn sample_interior<R: Rng + ?Sized>(self, rng: &mut R) -> Point {
        match self {
            Domain::G2 => {
                let (a, b) = (sample_disc(rng, 1.0), sample_disc(rng, 1.0));
                domains::symmetrize2(a, b).into()
            }
            Domain::G3 => {
                let (a, b, c) = (sample_disc(rng, 1.0), sample_disc(rng, 1.0), sample_disc(rng, 1.0));
                domains::symmetrize3(a, b, c).into()
            }
            Domain::Tetra => loop {
                let x = TetraPoint::new(sample_disc(rng, 1.0), sample_disc(rng, 1.0), sample_disc(rng, 1.0));
                if domains::tetra_margin(x) > 0.0 {
                    break x.into();
                }
            },
            Domain::Penta => loop {
                let base = domains::symmetrize2(sample_disc(rng, 1.0), sample_disc(rng, 1.0));
                let Ok(rhs) = domains::penta_rhs(base, domains::BetaVariant::Literature) else {
                    continue;
                };
                let pt = PentaPoint::new(sample_disc(rng, rhs), base.s, base.p);
                if Domain::Penta.margin(&pt.into()).is_ok_and(|m| m > 0.0) {
                    break pt.into();
                }
            },
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Domain {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "g2" => Ok(Domain::G2),
            "g3" => Ok(Domain::G3),
            "tetra" | "e" => Ok(Domain::Tetra),
            "penta" | "p" => Ok(Domain::Penta),
            other => Err(Error::InvalidArgument(format!("unknown domain `{other}`"))),
        }
    }
}

/// Uniform sample from the open disc of the given radius.
pub fn sample_disc<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> C64 {
    let r = radius * rng.random::<f64>().sqrt();
    C64::from_polar(r, rng.random::<f64>() * std::f64::consts::TAU)
}

/// A point with two or three complex coordinates.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<C64>", into = "Vec<C64>")]
pub struct Point {
    coords: [C64; 3],
    dim: usize,
}

impl Point {
    pub fn new(coords: &[C64]) -> Result<Self> {
        if !(2..=3).contains(&coords.len()) {
            return Err(Error::InvalidArgument(format!(
                "points have 2 or 3 coordinates, got {}",
                coords.len()
            )));
        }
        let mut c = [C64::new(0.0, 0.0); 3];
        c[..coords.len()].copy_from_slice(coords);
        Ok(Self { coords: c, dim: coords.len() })
    }

    pub fn pair(a: C64, b: C64) -> Self {
        Self { coords: [a, b, C64::new(0.0, 0.0)], dim: 2 }
    }

    pub fn triple(a: C64, b: C64, c: C64) -> Self {
        Self { coords: [a, b, c], dim: 3 }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { coords: [C64::new(0.0, 0.0); 3], dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords[..self.dim]
    }

    pub fn coords_mut(&mut self) -> &mut [C64] {
        &mut self.coords[..self.dim]
    }

    pub fn is_finite(&self) -> bool {
        self.coords().iter().all(|c| c.is_finite())
    }

    /// Max-norm distance.
    pub fn dist(&self, other: &Point) -> f64 {
        self.coords().iter().zip(other.coords()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn norm(&self) -> f64 {
        self.coords().iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn sym2(&self) -> SymPoint2 {
        SymPoint2::new(self.coords[0], self.coords[1])
    }

    pub fn sym3(&self) -> SymPoint3 {
        SymPoint3::new(self.coords[0], self.coords[1], self.coords[2])
    }

    pub fn tetra(&self) -> TetraPoint {
        TetraPoint::new(self.coords[0], self.coords[1], self.coords[2])
    }

    pub fn penta(&self) -> PentaPoint {
        PentaPoint::new(self.coords[0], self.coords[1], self.coords[2])
    }

    /// Coordinate-wise `self + t·dir`.
    pub fn add_scaled(&self, dir: &Point, t: f64) -> Point {
        let mut out = *self;
        for (o, d) in out.coords_mut().iter_mut().zip(dir.coords()) {
            *o += t * d;
        }
        out
    }

    pub fn sub(&self, other: &Point) -> Point {
        self.add_scaled(other, -1.0)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coords()).finish()
    }
}

impl TryFrom<Vec<C64>> for Point {
    type Error = Error;
    fn try_from(v: Vec<C64>) -> Result<Self> {
        Point::new(&v)
    }
}

impl From<Point> for Vec<C64> {
    fn from(p: Point) -> Self {
        p.coords().to_vec()
    }
}

impl From<SymPoint2> for Point {
    fn from(x: SymPoint2) -> Self {
        Point::pair(x.s, x.p)
    }
}

impl From<SymPoint3> for Point {
    fn from(x: SymPoint3) -> Self {
        Point::triple(x.s1, x.s2, x.s3)
    }
}

impl From<TetraPoint> for Point {
    fn from(x: TetraPoint) -> Self {
        Point::triple(x.x1, x.x2, x.x3)
    }
}

impl From<PentaPoint> for Point {
    fn from(x: PentaPoint) -> Self {
        Point::triple(x.a, x.s, x.p)
    }
}
