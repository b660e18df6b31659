//! Self-maps, orbits and the fixed-point / boundary-divergence dichotomy.

mod classify;
mod config;
mod newton;
mod orbit;
pub mod selfmap;
mod target;

pub use classify::{classify_orbit, OrbitVerdict, VerdictKind};
pub use config::Tolerances;
pub use newton::{newton_fixed_point, NewtonFailure, NewtonOutcome};
pub use orbit::{iterate, OrbitRecord, StopReason};
pub use selfmap::{lift_symmetric, Atom, DiscAtom, DiscWord, Inbound, Outbound, SelfMap};
pub use target::{greedy_clusters, target_set_estimate, PointCluster, TargetClass, TargetCluster, TargetSetEstimate};

use crate::automorphisms::PointMap;
use crate::error::Result;
use crate::point::Point;

/// Iterates from `z0` and classifies the orbit.
pub fn run_orbit<M: PointMap + ?Sized>(f: &M, z0: &Point, tol: &Tolerances) -> Result<(OrbitRecord, OrbitVerdict)> {
    let rec = iterate(f, z0, tol.n_max, tol)?;
    let verdict = classify_orbit(&rec, f, tol);
    Ok((rec, verdict))
}
