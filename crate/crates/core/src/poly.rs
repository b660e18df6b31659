//! Roots of complex polynomials.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ABERTH_TOL: f64 = 1e-12;
const ABERTH_MAX_SWEEPS: usize = 200;

/// A polynomial (coefficients in descending order) with its roots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyRoots {
    pub coefficients: Vec<C64>,
    pub roots: Vec<C64>,
}

impl PolyRoots {
    pub fn max_residual(&self) -> f64 {
        self.roots.iter().map(|&z| horner(&self.coefficients, z).norm()).fold(0.0, f64::max)
    }
}

pub fn horner(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn horner_with_derivative(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for &c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Roots of `a z² + b z + c` (a ≠ 0), avoiding cancellation.
pub fn quadratic_roots(a: C64, b: C64, c: C64) -> (C64, C64) {
    let sq = (b * b - 4.0 * a * c).sqrt();
    let sign = if (b.conj() * sq).re >= 0.0 { 1.0 } else { -1.0 };
    let q = -0.5 * (b + sign * sq);
    if q == C64::new(0.0, 0.0) {
        return (q, q);
    }
    (q / a, c / q)
}

fn newton_polish(coeffs: &[C64], z: C64) -> C64 {
    let mut best = z;
    let mut best_res = horner(coeffs, z).norm();
    let mut w = z;
    for _ in 0..4 {
        let (p, dp) = horner_with_derivative(coeffs, w);
        if dp == C64::new(0.0, 0.0) {
            break;
        }
        w -= p / dp;
        let r = horner(coeffs, w).norm();
        if r < best_res {
            best = w;
            best_res = r;
        } else {
            break;
        }
    }
    best
}

/// Roots of monic `z³ + a z² + b z + c` by Cardano's formula, polished.
fn cubic_roots(monic: &[C64]) -> Vec<C64> {
    let (a, b, c) = (monic[1], monic[2], monic[3]);
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let u1 = -q / 2.0 + disc;
    let u2 = -q / 2.0 - disc;
    let cube = if u1.norm() >= u2.norm() { u1 } else { u2 };
    let shift = a / 3.0;
    let zero = C64::new(0.0, 0.0);
    let roots: Vec<C64> = if cube == zero {
        vec![-shift; 3]
    } else {
        let base = cube.powf(1.0 / 3.0);
        let w = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let mut k = C64::new(1.0, 0.0);
        (0..3)
            .map(|_| {
                let t = k * base;
                k *= w;
                t - p / (3.0 * t) - shift
            })
            .collect()
    };
    roots.into_iter().map(|z| newton_polish(monic, z)).collect()
}

fn aberth(monic: &[C64]) -> Result<Vec<C64>> {
    let n = monic.len() - 1;
    // Initial guesses on a circle of the Fujiwara radius.
    let radius = monic[1..]
        .iter()
        .enumerate()
        .map(|(k, c)| 2.0 * c.norm().powf(1.0 / (k as f64 + 1.0)))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    for _ in 0..ABERTH_MAX_SWEEPS {
        let mut worst = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner_with_derivative(monic, z[i]);
            if p == C64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let repulsion: C64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                worst = worst.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if worst < ABERTH_TOL {
            return Ok(z);
        }
    }
    Err(Error::DidNotConverge { sweeps: ABERTH_MAX_SWEEPS })
}

fn sort_key(z: &C64) -> (f64, f64) {
    ((z.re * 1e12).round(), (z.im * 1e12).round())
}

/// Roots of the polynomial with coefficients `coeffs`, leading coefficient
/// first. Closed forms up to degree 3, Aberth–Ehrlich above.
pub fn poly_roots(coeffs: &[C64]) -> Result<PolyRoots> {
    let lead = *coeffs.first().ok_or(Error::ZeroLeadingCoefficient)?;
    if lead == C64::new(0.0, 0.0) {
        return Err(Error::ZeroLeadingCoefficient);
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidArgument("non-finite polynomial coefficient".into()));
    }
    let monic: Vec<C64> = coeffs.iter().map(|c| c / lead).collect();
    let mut roots = match monic.len() - 1 {
        0 => Vec::new(),
        1 => vec![-monic[1]],
        2 => {
            let (r1, r2) = quadratic_roots(C64::new(1.0, 0.0), monic[1], monic[2]);
            vec![r1, r2]
        }
        3 => cubic_roots(&monic),
        _ => aberth(&monic)?,
    };
    roots.sort_by(|x, y| sort_key(x).partial_cmp(&sort_key(y)).unwrap_or(std::cmp::Ordering::Equal));
    Ok(PolyRoots { coefficients: coeffs.to_vec(), roots })
}

/// Monic coefficients (descending) of `∏ (z − r)`.
pub fn expand_roots(roots: &[C64]) -> Vec<C64> {
    let mut c = vec![C64::new(1.0, 0.0)];
    for &r in roots {
        c.push(C64::new(0.0, 0.0));
        for k in (1..c.len()).rev() {
            let prev = c[k - 1];
            c[k] -= r * prev;
        }
    }
    c
}
