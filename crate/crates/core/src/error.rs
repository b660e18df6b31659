use num_complex::Complex64 as C64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Möbius pole {0} is not inside the unit disc")]
    PoleOnBoundary(C64),
    #[error("expected a unimodular number, got {0}")]
    NotUnimodular(C64),
    #[error("map has an interior fixed point, no Denjoy-Wolff point exists")]
    HasInteriorFixedPoint,
    #[error("leading polynomial coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("root finder did not converge after {sweeps} sweeps")]
    DidNotConverge { sweeps: usize },
    #[error("magic function is singular: |2 - ωs| = {0:e}")]
    Singular(f64),
    #[error("pentablock β = {beta} has modulus above one")]
    BetaOutOfRange { beta: C64 },
    #[error("geodesic argument {0} is not inside the unit disc")]
    GeodesicArgOutOfDisc(C64),
    #[error("disc automorphism has an interior fixed point")]
    NotFixedPointFree,
    #[error("point is outside the {domain} domain (margin {margin:e})")]
    PointOutsideDomain { domain: &'static str, margin: f64 },
    #[error("tetrablock normalization entry vanished (|entry| = {0:e})")]
    NormalizationSingular(f64),
    #[error("pentablock automorphism denominator vanished (|den| = {0:e})")]
    DenominatorSingular(f64),
    #[error("atom {index} left the domain (margin {margin:e})")]
    AtomRangeViolation { index: usize, margin: f64 },
    #[error("domain mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: &'static str, found: &'static str },
    #[error("orbit is not boundary-divergent")]
    NotDivergent,
    #[error("no fixed point found from the start grid")]
    NoFixedPointFound,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
