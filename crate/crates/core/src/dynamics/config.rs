use serde::{Deserialize, Serialize};

/// Every threshold used by iteration, classification, Newton and target-set
/// estimation. Reports echo the full record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Iteration stops once a step moves less than this.
    pub converge_step: f64,
    /// Iteration stops once the margin drops below this.
    pub boundary_stop: f64,
    /// Below this margin an atom leaving the domain is read as the orbit
    /// reaching the boundary numerically.
    pub numerical_band: f64,
    /// Computed margins down to minus this are read as rounding of a point on
    /// the boundary (tridisc roots near a triple root are only accurate to
    /// about ε^{1/3}).
    pub margin_noise: f64,
    pub fixed_displacement: f64,
    pub fixed_residual: f64,
    pub fixed_margin: f64,
    pub period_residual: f64,
    pub period_max: usize,
    pub period_returns: usize,
    pub boundary_margin: f64,
    pub boundary_window: usize,
    pub moving_average: usize,
    pub newton_residual: f64,
    pub newton_step: f64,
    pub newton_max_iter: usize,
    pub newton_max_halvings: usize,
    pub newton_condition: f64,
    pub tail_margin: f64,
    pub cluster_eps: f64,
    pub unimodular: f64,
    pub angle: f64,
    pub n_max: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            converge_step: 1e-13,
            boundary_stop: 1e-12,
            numerical_band: 1e-4,
            margin_noise: 1e-5,
            fixed_displacement: 1e-11,
            fixed_residual: 1e-9,
            fixed_margin: 1e-6,
            period_residual: 1e-9,
            period_max: 64,
            period_returns: 3,
            boundary_margin: 1e-4,
            boundary_window: 50,
            moving_average: 10,
            newton_residual: 1e-12,
            newton_step: 1e-6,
            newton_max_iter: 60,
            newton_max_halvings: 30,
            newton_condition: 1e12,
            tail_margin: 1e-3,
            cluster_eps: 1e-2,
            unimodular: 1e-4,
            angle: 1e-3,
            n_max: 5000,
        }
    }
}

impl Tolerances {
    /// Field names accepted by [`Tolerances::set`].
    pub const NAMES: [&'static str; 23] = [
        "converge_step",
        "boundary_stop",
        "numerical_band",
        "margin_noise",
        "fixed_displacement",
        "fixed_residual",
        "fixed_margin",
        "period_residual",
        "period_max",
        "period_returns",
        "boundary_margin",
        "boundary_window",
        "moving_average",
        "newton_residual",
        "newton_step",
        "newton_max_iter",
        "newton_max_halvings",
        "newton_condition",
        "tail_margin",
        "cluster_eps",
        "unimodular",
        "angle",
        "n_max",
    ];

    /// Overrides one field by name; integer fields truncate.
    pub fn set(&mut self, name: &str, value: f64) -> Result<(), String> {
        if !value.is_finite() || value < 0.0 {
            return Err(format!("tolerance {name} must be finite and non-negative"));
        }
        let n = value as usize;
        match name.replace('-', "_").as_str() {
            "converge_step" => self.converge_step = value,
            "boundary_stop" => self.boundary_stop = value,
            "numerical_band" => self.numerical_band = value,
            "margin_noise" => self.margin_noise = value,
            "fixed_displacement" => self.fixed_displacement = value,
            "fixed_residual" => self.fixed_residual = value,
            "fixed_margin" => self.fixed_margin = value,
            "period_residual" => self.period_residual = value,
            "period_max" => self.period_max = n,
            "period_returns" => self.period_returns = n,
            "boundary_margin" => self.boundary_margin = value,
            "boundary_window" => self.boundary_window = n,
            "moving_average" => self.moving_average = n,
            "newton_residual" => self.newton_residual = value,
            "newton_step" => self.newton_step = value,
            "newton_max_iter" => self.newton_max_iter = n,
            "newton_max_halvings" => self.newton_max_halvings = n,
            "newton_condition" => self.newton_condition = value,
            "tail_margin" => self.tail_margin = value,
            "cluster_eps" => self.cluster_eps = value,
            "unimodular" => self.unimodular = value,
            "angle" => self.angle = value,
            "n_max" => self.n_max = n,
            other => return Err(format!("unknown tolerance `{other}`")),
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_is_settable() {
        let mut t = Tolerances::default();
        for name in Tolerances::NAMES {
            t.set(name, 7.0).unwrap();
        }
        assert_eq!(t.n_max, 7);
        assert!(t.set("nope", 1.0).is_err());
        assert!(t.set("angle", f64::NAN).is_err());
    }

    #[test]
    fn partial_json_fills_defaults() {
        let t: Tolerances = serde_json::from_str(r#"{"angle": 0.01}"#).unwrap();
        assert_eq!(t.angle, 0.01);
        assert_eq!(t.n_max, 5000);
    }
}
