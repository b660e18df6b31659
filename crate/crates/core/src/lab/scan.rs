use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{newton_fixed_point, run_orbit, SelfMap, Tolerances, VerdictKind};
use crate::error::{Error, Result};
use crate::lab::sampler::{MapSampler, Recipe};
use crate::point::{Domain, Point};

/// Scan parameters; everything here is echoed into the summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub domain: Domain,
    pub recipe: Recipe,
    pub trials: usize,
    pub starts: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl ScanConfig {
    pub fn new(domain: Domain, recipe: Recipe, trials: usize, seed: u64) -> Self {
        Self { domain, recipe, trials, starts: 3, seed, tolerances: Tolerances::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub verdicts: Vec<String>,
    pub predicted_fixed_point: Option<bool>,
    /// Newton from the orbit midpoint agreed with a converged orbit to 1e−8;
    /// `None` when no start converged.
    pub newton_agrees: Option<bool>,
    pub rejected: usize,
}

impl TrialOutcome {
    fn fixed_side(&self) -> bool {
        self.verdicts.iter().any(|v| matches!(v.as_str(), "converged_fixed_point" | "periodic" | "recurrent"))
    }

    fn divergent(&self) -> bool {
        self.verdicts.iter().any(|v| v == "boundary_divergent")
    }

    fn undecided(&self) -> usize {
        self.verdicts.iter().filter(|v| *v == "undecided").count()
    }

    pub fn is_violation(&self) -> bool {
        self.fixed_side() && self.divergent()
    }

    /// Automorphism trials only: every start must be decided and on the
    /// side the disc data predicts.
    pub fn oracle_mismatch(&self) -> Option<bool> {
        let predicted = self.predicted_fixed_point?;
        let agrees = self.undecided() == 0 && !self.is_violation() && predicted == self.fixed_side();
        Some(!agrees)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: usize,
    pub map: SelfMap,
    pub verdicts: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub config: ScanConfig,
    pub trials: usize,
    /// Trials for which no valid map could be drawn.
    pub skipped: usize,
    /// Draws rejected by map validation across all trials.
    pub rejected_draws: usize,
    pub histogram: BTreeMap<String, usize>,
    pub undecided_fraction: f64,
    pub violations: Vec<Violation>,
    pub oracle_checked: usize,
    pub oracle_mismatches: Vec<Violation>,
    pub newton_checked: usize,
    pub newton_agreed: usize,
    pub passed: bool,
}

/// Undecided share above which a scan fails.
pub const MAX_UNDECIDED: f64 = 0.05;

fn run_trial(sampler: &MapSampler, cfg: &ScanConfig, trial: usize) -> Result<(TrialOutcome, SelfMap)> {
    let tol = &cfg.tolerances;
    let mut rng = sampler.trial_rng(trial as u64);
    let sampled = sampler.sample_with(&mut rng)?;
    let f = sampled.map;
    let mut starts: Vec<Point> = vec![cfg.domain.origin()];
    starts.extend((1..cfg.starts).map(|_| cfg.domain.sample_interior(&mut rng)));
    let mut verdicts = Vec::with_capacity(starts.len());
    let mut newton_agrees = None;
    for z0 in &starts {
        let (rec, verdict) = match run_orbit(&f, z0, tol) {
            Ok(out) => out,
            Err(Error::AtomRangeViolation { .. } | Error::PointOutsideDomain { .. }) => {
                verdicts.push("undecided".to_string());
                continue;
            }
            Err(e) => return Err(e),
        };
        if let VerdictKind::ConvergedFixedPoint { point } = &verdict.kind {
            let mid = rec.points[rec.len() / 2];
            let ok = newton_fixed_point(&f, &mid, tol.newton_max_iter, tol).point.is_some_and(|z| z.dist(point) < 1e-8);
            newton_agrees = Some(newton_agrees.unwrap_or(true) && ok);
        }
        verdicts.push(verdict.kind.tag().to_string());
    }
    let outcome = TrialOutcome {
        trial,
        verdicts,
        predicted_fixed_point: sampled.predicted_fixed_point,
        newton_agrees,
        rejected: sampled.rejected,
    };
    Ok((outcome, f))
}

/// Runs `cfg.trials` seeded trials on `workers` threads. The summary does
/// not depend on the worker count.
pub fn scan_weak_wolff_denjoy(cfg: &ScanConfig, workers: usize) -> Result<ScanSummary> {
    let sampler = MapSampler::new(cfg.domain, cfg.recipe, cfg.seed)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let results: Vec<Option<(TrialOutcome, SelfMap)>> =
        pool.install(|| (0..cfg.trials).into_par_iter().map(|t| run_trial(&sampler, cfg, t).ok()).collect());
    Ok(summarize(cfg, results))
}

fn summarize(cfg: &ScanConfig, results: Vec<Option<(TrialOutcome, SelfMap)>>) -> ScanSummary {
    let mut s = ScanSummary {
        config: cfg.clone(),
        trials: cfg.trials,
        skipped: 0,
        rejected_draws: 0,
        histogram: BTreeMap::new(),
        undecided_fraction: 0.0,
        violations: Vec::new(),
        oracle_checked: 0,
        oracle_mismatches: Vec::new(),
        newton_checked: 0,
        newton_agreed: 0,
        passed: false,
    };
    let mut runs = 0usize;
    for r in results {
        let Some((outcome, map)) = r else {
            s.skipped += 1;
            continue;
        };
        s.rejected_draws += outcome.rejected;
        for v in &outcome.verdicts {
            *s.histogram.entry(v.clone()).or_default() += 1;
            runs += 1;
        }
        if let Some(ok) = outcome.newton_agrees {
            s.newton_checked += 1;
            s.newton_agreed += ok as usize;
        }
        let record = || Violation { trial: outcome.trial, map: map.clone(), verdicts: outcome.verdicts.clone() };
        if outcome.is_violation() {
            s.violations.push(record());
        }
        if let Some(mismatch) = outcome.oracle_mismatch() {
            s.oracle_checked += 1;
            if mismatch {
                s.oracle_mismatches.push(record());
            }
        }
    }
    let undecided = s.histogram.get("undecided").copied().unwrap_or(0);
    s.undecided_fraction = if runs == 0 { 0.0 } else { undecided as f64 / runs as f64 };
    s.passed = s.violations.is_empty() && s.oracle_mismatches.is_empty() && s.undecided_fraction < MAX_UNDECIDED;
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_pass_empty() {
        let cfg = ScanConfig::new(Domain::G2, Recipe::RandomAutomorphism, 0, 1);
        let s = scan_weak_wolff_denjoy(&cfg, 2).unwrap();
        assert!(s.passed);
        assert!(s.histogram.is_empty() && s.violations.is_empty());
    }

    #[test]
    fn g2_automorphisms_match_oracle() {
        let cfg = ScanConfig::new(Domain::G2, Recipe::RandomAutomorphism, 60, 42);
        let s = scan_weak_wolff_denjoy(&cfg, 4).unwrap();
        assert!(s.passed, "{s:#?}");
        assert_eq!(s.oracle_checked, 60);
    }

    #[test]
    fn worker_count_does_not_matter() {
        let cfg = ScanConfig::new(Domain::Tetra, Recipe::MixedChain { depth: 2 }, 24, 7);
        let a = scan_weak_wolff_denjoy(&cfg, 1).unwrap();
        let b = scan_weak_wolff_denjoy(&cfg, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn violation_requires_both_sides() {
        let mut t = TrialOutcome {
            trial: 0,
            verdicts: vec!["recurrent".into(), "undecided".into()],
            predicted_fixed_point: Some(true),
            newton_agrees: None,
            rejected: 0,
        };
        assert!(!t.is_violation());
        assert_eq!(t.oracle_mismatch(), Some(true));
        t.verdicts.push("boundary_divergent".into());
        assert!(t.is_violation());
    }
}
