//! Special domains of μ-synthesis (the symmetrized bidisc and tridisc, the
//! tetrablock and the pentablock), their automorphism groups, and a small
//! laboratory for iterating holomorphic self-maps on them.
//!
//! The crate is organised bottom-up:
//!
//! * [`disc`] and [`poly`]: unit-disc automorphisms, Blaschke products and
//!   polynomial roots.
//! * [`domains`] and [`point`]: points, symmetrization maps and membership
//!   tests with signed margins.
//! * [`automorphisms`]: executable automorphism groups of all four domains.
//! * [`dynamics`]: self-maps, orbits, orbit classification, Newton fixed-point
//!   search and target-set estimation.
//! * [`lab`]: seeded experiment harnesses built on top of the above.
//! * [`report`]: stable JSON serialization for reports.

// `!(x < y)` deliberately rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod automorphisms;
pub mod disc;
pub mod domains;
pub mod dynamics;
mod error;
pub mod lab;
pub mod point;
pub mod poly;
pub mod report;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use point::{Domain, Point};
