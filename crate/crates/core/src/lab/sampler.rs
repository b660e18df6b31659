use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::automorphisms::{Automorphism, GnAut, PentaAut, TetraAtom, TetraAut};
use crate::disc::{BlaschkeProduct, MobiusTransform};
use crate::dynamics::{Atom, DiscAtom, DiscWord, Inbound, Outbound, SelfMap};
use crate::error::{Error, Result};
use crate::point::{sample_disc, Domain};

/// Largest pole modulus drawn for disc automorphisms.
pub const POLE_RADIUS: f64 = 0.95;
/// Attempts per trial before a trial is given up as malformed.
pub const MAX_ATTEMPTS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    RandomAutomorphism,
    RandomSymLift,
    RandomDiscRoute,
    MixedChain { depth: usize },
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::RandomAutomorphism => f.write_str("random-aut"),
            Recipe::RandomSymLift => f.write_str("random-symlift"),
            Recipe::RandomDiscRoute => f.write_str("random-route"),
            Recipe::MixedChain { depth } => write!(f, "mixed-chain:{depth}"),
        }
    }
}

impl FromStr for Recipe {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let recipe = match s {
            "random-aut" | "aut" => Recipe::RandomAutomorphism,
            "random-symlift" | "symlift" => Recipe::RandomSymLift,
            "random-route" | "route" => Recipe::RandomDiscRoute,
            "mixed-chain" | "mixed" => Recipe::MixedChain { depth: 3 },
            other => {
                let depth = other
                    .strip_prefix("mixed-chain:")
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown recipe `{other}`")))?;
                Recipe::MixedChain { depth }
            }
        };
        recipe.check()?;
        Ok(recipe)
    }
}

impl Recipe {
    pub const ALL: [Recipe; 4] = [
        Recipe::RandomAutomorphism,
        Recipe::RandomSymLift,
        Recipe::RandomDiscRoute,
        Recipe::MixedChain { depth: 3 },
    ];

    fn check(&self) -> Result<()> {
        match self {
            Recipe::MixedChain { depth } if !(1..=4).contains(depth) => {
                Err(Error::InvalidArgument(format!("chain depth {depth} outside 1..=4")))
            }
            _ => Ok(()),
        }
    }
}

/// A sampled map together with the disc-level prediction of whether it has
/// an interior fixed point, when one is available.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledMap {
    pub map: SelfMap,
    pub predicted_fixed_point: Option<bool>,
    /// Construction attempts rejected before this map was accepted.
    pub rejected: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSampler {
    pub domain: Domain,
    pub recipe: Recipe,
    pub seed: u64,
}

impl MapSampler {
    pub fn new(domain: Domain, recipe: Recipe, seed: u64) -> Result<Self> {
        recipe.check()?;
        Ok(Self { domain, recipe, seed })
    }

    /// The random stream owned by one trial.
    pub fn trial_rng(&self, trial: u64) -> ChaCha8Rng {
        trial_rng(self.seed, trial)
    }

    pub fn sample(&self, trial: u64) -> Result<SampledMap> {
        let mut rng = self.trial_rng(trial);
        self.sample_with(&mut rng)
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<SampledMap> {
        let mut last = None;
        for rejected in 0..MAX_ATTEMPTS {
            let drawn = match self.recipe {
                Recipe::RandomAutomorphism => {
                    let aut = random_automorphism(self.domain, rng);
                    let predicted = aut.predicted_fixed_point();
                    return Ok(SampledMap { map: SelfMap::automorphism(aut), predicted_fixed_point: Some(predicted), rejected });
                }
                Recipe::RandomSymLift => SelfMap::new(self.domain, vec![random_lift(self.domain, rng)]),
                Recipe::RandomDiscRoute => SelfMap::new(self.domain, vec![random_route(self.domain, rng)]),
                Recipe::MixedChain { depth } => {
                    let atoms = (0..depth).map(|_| random_atom(self.domain, rng)).collect();
                    SelfMap::new(self.domain, atoms)
                }
            };
            match drawn {
                Ok(map) => return Ok(SampledMap { map, predicted_fixed_point: None, rejected }),
                Err(e) => last = Some(e),
            }
        }
        Err(last.unwrap_or(Error::InvalidArgument("sampler exhausted".into())))
    }
}

/// ChaCha8 seeded with the master seed, on the stream numbered by the trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::from_polar(1.0, rng.random_range(0.0..TAU))
}

/// `θ` uniform, pole `√u e^{iφ}` with `u` uniform on `[0, 0.95²]`.
pub fn random_mobius<R: Rng + ?Sized>(rng: &mut R) -> MobiusTransform {
    let theta = rng.random_range(0.0..TAU);
    let r = rng.random_range(0.0..POLE_RADIUS * POLE_RADIUS).sqrt();
    let pole = C64::from_polar(r, rng.random_range(0.0..TAU));
    MobiusTransform::new(theta, pole).expect("pole inside the disc")
}

pub fn random_fixed_point_free<R: Rng + ?Sized>(rng: &mut R) -> MobiusTransform {
    loop {
        let m = random_mobius(rng);
        if !m.has_interior_fixed_point() {
            return m;
        }
    }
}

/// Conjugate of `z ↦ e^{iθ}z` by the automorphism moving `center` to 0.
pub fn conjugated_rotation(theta: f64, center: C64) -> MobiusTransform {
    let to_origin = MobiusTransform::new(0.0, center).expect("center inside the disc");
    to_origin.inverse().compose(&MobiusTransform::rotation_by(theta)).compose(&to_origin)
}

/// An involution `h ≠ ±id`: the conjugate of `z ↦ −z` about a point at
/// distance `[0.1, 0.9]` from 0.
pub fn random_involution<R: Rng + ?Sized>(rng: &mut R) -> MobiusTransform {
    let center = C64::from_polar(rng.random_range(0.1..0.9), rng.random_range(0.0..TAU));
    conjugated_rotation(PI, center)
}

/// An elliptic map of exact order `q`, together with `q`.
pub fn random_periodic_mobius<R: Rng + ?Sized>(rng: &mut R, orders: &[usize]) -> (MobiusTransform, usize) {
    let q = orders[rng.random_range(0..orders.len())];
    let k = loop {
        let k = rng.random_range(1..q);
        if gcd(k, q) == 1 {
            break k;
        }
    };
    // Centers near the circle make q-fold returns drift past 1e−9.
    let center = sample_disc(rng, 0.6);
    (conjugated_rotation(TAU * k as f64 / q as f64, center), q)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn random_tetra_atom<R: Rng + ?Sized>(rng: &mut R) -> TetraAtom {
    match rng.random_range(0..5) {
        0 | 1 => TetraAtom::L(random_mobius(rng)),
        2 | 3 => TetraAtom::R(random_mobius(rng)),
        _ => TetraAtom::F,
    }
}

pub fn random_automorphism<R: Rng + ?Sized>(domain: Domain, rng: &mut R) -> Automorphism {
    match domain {
        Domain::G2 | Domain::G3 => Automorphism::Gn(GnAut::new(domain.dim(), random_mobius(rng)).expect("n is 2 or 3")),
        Domain::Tetra => {
            let len = rng.random_range(1..=3);
            Automorphism::Tetra(TetraAut::new((0..len).map(|_| random_tetra_atom(rng)).collect()))
        }
        Domain::Penta => {
            let omega = random_unimodular(rng);
            Automorphism::Penta(PentaAut::new(omega, random_mobius(rng)).expect("unimodular"))
        }
    }
}

/// A periodic automorphism of order at most 12 and an upper bound for its
/// period.
pub fn random_periodic_automorphism<R: Rng + ?Sized>(domain: Domain, rng: &mut R) -> (Automorphism, usize) {
    const ORDERS: [usize; 6] = [2, 3, 4, 5, 6, 12];
    match domain {
        Domain::G2 | Domain::G3 => {
            let (h, q) = random_periodic_mobius(rng, &ORDERS);
            (Automorphism::Gn(GnAut::new(domain.dim(), h).expect("n is 2 or 3")), q)
        }
        Domain::Tetra => {
            let (a, p) = random_periodic_mobius(rng, &[2, 3, 4]);
            let (b, q) = random_periodic_mobius(rng, &[2, 3, 4]);
            let core = TetraAut::new(vec![TetraAtom::L(a), TetraAtom::R(b)]);
            let conj = TetraAut::new((0..rng.random_range(0..=2)).map(|_| random_tetra_atom(rng)).collect());
            let f = conj.invert().compose(&core).compose(&conj);
            (Automorphism::Tetra(f), p * q / gcd(p, q))
        }
        Domain::Penta => {
            let (g, q) = random_periodic_mobius(rng, &ORDERS);
            // With ω = 1 the q-th iterate rotates the first coordinate by a
            // constant phase; pick ω so that ω^q cancels it.
            let untwisted = PentaAut::new(C64::new(1.0, 0.0), g).expect("unimodular");
            let probe = C64::new(0.25, 0.0);
            let mut x = crate::point::Point::triple(probe, C64::new(0.0, 0.0), C64::new(0.0, 0.0));
            for _ in 0..q {
                x = untwisted.apply(&x).expect("automorphisms preserve the domain");
            }
            let phase = (x.coords()[0] / probe).arg();
            let k = rng.random_range(0..q) as f64;
            let omega = C64::from_polar(1.0, (TAU * k - phase) / q as f64);
            (Automorphism::Penta(PentaAut::new(omega, g).expect("unimodular")), q)
        }
    }
}

/// One to three factors drawn from Möbius maps, degree-two Blaschke
/// products and contracting scalings.
pub fn random_disc_word<R: Rng + ?Sized>(rng: &mut R) -> DiscWord {
    let len = rng.random_range(1..=3);
    DiscWord::new(
        (0..len)
            .map(|_| match rng.random_range(0..3) {
                0 => DiscAtom::Mobius(random_mobius(rng)),
                1 => DiscAtom::Blaschke(random_blaschke(rng)),
                _ => DiscAtom::Scale { factor: C64::from_polar(rng.random_range(0.2..1.0), rng.random_range(0.0..TAU)) },
            })
            .collect(),
    )
}

pub fn random_blaschke<R: Rng + ?Sized>(rng: &mut R) -> BlaschkeProduct {
    let omega = random_unimodular(rng);
    if rng.random_bool(0.3) {
        BlaschkeProduct::degree_one(omega).expect("unimodular")
    } else {
        BlaschkeProduct::degree_two(omega, sample_disc(rng, 0.9)).expect("zero inside the disc")
    }
}

pub fn random_lift<R: Rng + ?Sized>(domain: Domain, rng: &mut R) -> Atom {
    match domain {
        Domain::Tetra => Atom::TriangularLift { first: random_disc_word(rng), second: random_disc_word(rng) },
        _ => Atom::SymLift { g: random_disc_word(rng) },
    }
}

fn random_outbound<R: Rng + ?Sized>(domain: Domain, rng: &mut R) -> Outbound {
    let choices: Vec<Outbound> = match domain {
        Domain::G2 => vec![
            Outbound::HalfTrace,
            Outbound::Magic { omega: random_unimodular(rng) },
            Outbound::Coordinate { index: 1 },
        ],
        Domain::G3 => vec![Outbound::HalfTrace, Outbound::Coordinate { index: 2 }],
        Domain::Tetra => (0..3).map(|index| Outbound::Coordinate { index }).collect(),
        Domain::Penta => vec![
            Outbound::HalfTrace,
            Outbound::Magic { omega: random_unimodular(rng) },
            Outbound::Coordinate { index: 0 },
            Outbound::Coordinate { index: 2 },
        ],
    };
    choices[rng.random_range(0..choices.len())]
}

fn random_inbound<R: Rng + ?Sized>(domain: Domain, rng: &mut R) -> Inbound {
    let geodesic = matches!(domain, Domain::G2 | Domain::Penta);
    let n = if geodesic { 5 } else { 2 };
    match rng.random_range(0..n) {
        0 => Inbound::Diagonal,
        1 => Inbound::Axis { index: rng.random_range(0..domain.dim()) },
        2 => Inbound::Pinned { c: sample_disc(rng, 0.9) },
        3 => Inbound::Form1 { b: random_blaschke(rng) },
        _ => Inbound::Form2 { a: random_fixed_point_free(rng) },
    }
}

pub fn random_route<R: Rng + ?Sized>(domain: Domain, rng: &mut R) -> Atom {
    Atom::DiscRoute { outbound: random_outbound(domain, rng), via: random_disc_word(rng), inbound: random_inbound(domain, rng) }
}

fn random_atom<R: Rng + ?Sized>(domain: Domain, rng: &mut R) -> Atom {
    match rng.random_range(0..3) {
        0 => Atom::Automorphism { map: random_automorphism(domain, rng) },
        1 => random_lift(domain, rng),
        _ => random_route(domain, rng),
    }
}
