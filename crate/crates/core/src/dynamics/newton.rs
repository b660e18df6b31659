use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::automorphisms::PointMap;
use crate::dynamics::Tolerances;
use crate::point::Point;

// Singular values below this are treated as zero; finite differences with
// step 1e−6 carry errors of about 1e−10.
const RANK_FLOOR: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NewtonFailure {
    StartOutside,
    Diverged,
    SingularJacobian,
    StepOutsideDomain,
    MapError,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NewtonOutcome {
    pub point: Option<Point>,
    /// The last accepted iterate, whose residual is `residual`.
    pub best: Point,
    pub residual: f64,
    pub iterations: usize,
    /// Condition number of the last Jacobian of `f − id`.
    pub condition: f64,
    pub failure: Option<NewtonFailure>,
}

fn displacement<M: PointMap + ?Sized>(f: &M, z: &Point) -> Option<Point> {
    f.map_point(z).ok().map(|y| y.sub(z))
}

fn inside<M: PointMap + ?Sized>(f: &M, z: &Point) -> bool {
    f.domain().margin(z).is_ok_and(|m| m > 0.0)
}

fn unit(dim: usize, k: usize, h: f64) -> Point {
    let mut e = Point::zeros(dim);
    e.coords_mut()[k] = C64::new(h, 0.0);
    e
}

/// Central differences along real directions; `f` is holomorphic, so these
/// are the complex partial derivatives.
fn jacobian<M: PointMap + ?Sized>(f: &M, z: &Point, fz: &Point, step: f64) -> Option<DMatrix<C64>> {
    let d = z.dim();
    let mut j = DMatrix::<C64>::zeros(d, d);
    for k in 0..d {
        let e = unit(d, k, 1.0);
        let plus = z.add_scaled(&e, step);
        let minus = z.add_scaled(&e, -step);
        let fp = if inside(f, &plus) { displacement(f, &plus) } else { None };
        let fm = if inside(f, &minus) { displacement(f, &minus) } else { None };
        let col: Vec<C64> = match (fp, fm) {
            (Some(p), Some(m)) => p.coords().iter().zip(m.coords()).map(|(a, b)| (a - b) / (2.0 * step)).collect(),
            (Some(p), None) => p.coords().iter().zip(fz.coords()).map(|(a, b)| (a - b) / step).collect(),
            (None, Some(m)) => fz.coords().iter().zip(m.coords()).map(|(a, b)| (a - b) / step).collect(),
            (None, None) => return None,
        };
        for (i, v) in col.into_iter().enumerate() {
            j[(i, k)] = v;
        }
    }
    Some(j)
}

/// Damped Newton iteration for `f(z) = z` with a minimum-norm step, so that
/// non-isolated fixed sets are reached along the normal direction.
pub fn newton_fixed_point<M: PointMap + ?Sized>(
    f: &M,
    z_start: &Point,
    max_iter: usize,
    tol: &Tolerances,
) -> NewtonOutcome {
    let mut out = NewtonOutcome {
        point: None,
        best: *z_start,
        residual: f64::INFINITY,
        iterations: 0,
        condition: f64::NAN,
        failure: None,
    };
    if z_start.dim() != f.domain().dim() || !inside(f, z_start) {
        out.failure = Some(NewtonFailure::StartOutside);
        return out;
    }
    let mut z = *z_start;
    let Some(mut fz) = displacement(f, &z) else {
        out.failure = Some(NewtonFailure::MapError);
        return out;
    };
    let mut residual = fz.norm();
    for it in 0..=max_iter {
        out.iterations = it;
        out.residual = residual;
        out.best = z;
        if residual < tol.newton_residual {
            out.point = Some(z);
            return out;
        }
        if it == max_iter {
            break;
        }
        let Some(j) = jacobian(f, &z, &fz, tol.newton_step) else {
            out.failure = Some(NewtonFailure::MapError);
            return out;
        };
        let svd = j.svd(true, true);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        out.condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
        let cutoff = (smax / tol.newton_condition).max(RANK_FLOOR);
        if smax <= cutoff {
            out.failure = Some(NewtonFailure::SingularJacobian);
            return out;
        }
        let rhs = DVector::from_iterator(z.dim(), fz.coords().iter().map(|c| -c));
        let (Some(u), Some(v_t)) = (svd.u.as_ref(), svd.v_t.as_ref()) else {
            out.failure = Some(NewtonFailure::SingularJacobian);
            return out;
        };
        let mut coeffs = u.adjoint() * rhs;
        for (c, s) in coeffs.iter_mut().zip(svd.singular_values.iter()) {
            *c = if *s > cutoff { *c / *s } else { C64::new(0.0, 0.0) };
        }
        let delta = v_t.adjoint() * coeffs;
        let dir = Point::new(delta.as_slice()).expect("dimension 2 or 3");
        let mut t = 1.0;
        let mut accepted = None;
        let mut any_inside = false;
        for _ in 0..=tol.newton_max_halvings {
            let cand = z.add_scaled(&dir, t);
            if inside(f, &cand) {
                any_inside = true;
                if let Some(fc) = displacement(f, &cand) {
                    let r = fc.norm();
                    if r < residual || r < tol.newton_residual {
                        accepted = Some((cand, fc, r));
                        break;
                    }
                }
            }
            t *= 0.5;
        }
        match accepted {
            Some((cand, fc, r)) => {
                z = cand;
                fz = fc;
                residual = r;
            }
            None => {
                out.failure =
                    Some(if any_inside { NewtonFailure::Diverged } else { NewtonFailure::StepOutsideDomain });
                return out;
            }
        }
    }
    out.failure = Some(NewtonFailure::Diverged);
    out
}
