use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::automorphisms::{periodicity_detect, Automorphism, GnAut, PentaAut};
use crate::disc::MobiusTransform;
use crate::domains::{self, triangular_membership, MembershipStatus, SymPoint2, TetraPoint};
use crate::dynamics::selfmap::{axis_projection, zero_trace_retraction};
use crate::dynamics::{newton_fixed_point, SelfMap, Tolerances};
use crate::error::{Error, Result};
use crate::lab::fixset::{
    halton_points, predicted_reduced_class, retraction_check, retraction_residual, tetra_reduced_form,
    verify_fix_structure_g2, verify_fix_structure_tetra, FixClass,
};
use crate::lab::sampler::{
    random_automorphism, random_fixed_point_free, random_involution, random_mobius, random_periodic_automorphism,
    random_unimodular, trial_rng,
};
use crate::lab::scan::{scan_weak_wolff_denjoy, ScanConfig, ScanSummary};
use crate::lab::target::{random_mixed_face, verify_target_structure, TargetProperty};
use crate::lab::Recipe;
use crate::point::{sample_disc, Domain, Point};
use crate::report::to_json_string;

/// One named property with its pass flag and the numbers behind it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub metrics: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Check {
    fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), passed: false, metrics: BTreeMap::new(), notes: Vec::new() }
    }

    fn metric(&mut self, key: &str, value: impl Into<f64>) -> &mut Self {
        self.metrics.insert(key.into(), value.into());
        self
    }

    fn note(&mut self, note: String) {
        const MAX_NOTES: usize = 20;
        if self.notes.len() < MAX_NOTES {
            self.notes.push(note);
        }
    }

    fn finish(mut self, passed: bool) -> Self {
        self.passed = passed;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scans: Vec<ScanSummary>,
    pub passed: bool,
}

/// Problem sizes for the suites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteSizes {
    pub membership_points: usize,
    pub group_samples: usize,
    pub triangular_pairs: usize,
    /// Trials per recipe; every domain runs all four recipes.
    pub scan_trials_per_recipe: usize,
    pub penta_maps: usize,
    pub penta_steps: usize,
    pub involutions: usize,
    pub tetra_grid_side: usize,
    pub target_lifts: usize,
    pub mixed_face_maps: usize,
    pub periodic_trials: usize,
    pub reproducibility_trials: usize,
}

impl Default for SuiteSizes {
    fn default() -> Self {
        Self {
            membership_points: 100_000,
            group_samples: 10_000,
            triangular_pairs: 1000,
            scan_trials_per_recipe: 250,
            penta_maps: 100,
            penta_steps: 100,
            involutions: 100,
            tetra_grid_side: 10,
            target_lifts: 50,
            mixed_face_maps: 10,
            periodic_trials: 500,
            reproducibility_trials: 100,
        }
    }
}

pub const SUITES: [&str; 12] = [
    "membership",
    "groups",
    "wwd-all",
    "wwd-g2",
    "wwd-g3",
    "wwd-tetra",
    "wwd-penta",
    "penta-orbit",
    "fixset",
    "target",
    "periodic",
    "reproducibility",
];

/// Runs a suite by name; `"all"` runs every suite plus the reproducibility
/// check.
pub fn run_suite(name: &str, seed: u64, sizes: &SuiteSizes, workers: usize) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let mut scans = Vec::new();
    let mut wwd = |domains: &[Domain], checks: &mut Vec<Check>| -> Result<()> {
        for &d in domains {
            let (c, s) = wwd_check(d, sizes.scan_trials_per_recipe, seed, workers)?;
            checks.push(c);
            scans.extend(s);
        }
        Ok(())
    };
    match name {
        "membership" => checks.push(membership_check(sizes.membership_points, seed)),
        "groups" => checks.extend(group_law_checks(sizes.group_samples, sizes.triangular_pairs, seed)),
        "wwd-all" => wwd(&Domain::ALL, &mut checks)?,
        "wwd-g2" => wwd(&[Domain::G2], &mut checks)?,
        "wwd-g3" => wwd(&[Domain::G3], &mut checks)?,
        "wwd-tetra" => wwd(&[Domain::Tetra], &mut checks)?,
        "wwd-penta" => wwd(&[Domain::Penta], &mut checks)?,
        "penta-orbit" => checks.push(penta_orbit_check(sizes.penta_maps, sizes.penta_steps, seed)),
        "fixset" => {
            checks.push(involution_fixset_check(sizes.involutions, seed));
            checks.push(minus_identity_check());
            checks.push(tetra_reduced_check(sizes.tetra_grid_side));
        }
        "target" => {
            checks.push(royal_target_check(sizes.target_lifts, seed));
            checks.push(mixed_face_target_check(sizes.mixed_face_maps, seed));
        }
        "periodic" => checks.push(periodic_fixed_point_check(sizes.periodic_trials, seed)),
        "reproducibility" => checks.push(reproducibility_check(sizes.reproducibility_trials, seed)?),
        "all" => {
            for suite in SUITES.iter().filter(|s| !s.starts_with("wwd-") || **s == "wwd-all") {
                let r = run_suite(suite, seed, sizes, workers)?;
                checks.extend(r.checks);
                scans.extend(r.scans);
            }
        }
        other => return Err(Error::InvalidArgument(format!("unknown suite `{other}`"))),
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(SuiteReport { suite: name.to_string(), seed, checks, scans, passed })
}

/// Magic-function membership against the root test on the symmetrized
/// bidisc, skipping points within 1e−9 of the boundary.
pub fn membership_check(points: usize, seed: u64) -> Check {
    let mut c = Check::new("membership g2 magic vs roots");
    let mut rng = trial_rng(seed, 0);
    let (mut compared, mut skipped, mut disagreements) = (0usize, 0usize, 0usize);
    for i in 0..points {
        // Half from the root picture (boundary-heavy), half from a box.
        let pt = if i % 2 == 0 {
            let a = sample_disc(&mut rng, 1.3);
            let b = sample_disc(&mut rng, 1.3);
            domains::symmetrize2(a, b)
        } else {
            SymPoint2::new(sample_disc(&mut rng, 2.2), sample_disc(&mut rng, 1.2))
        };
        let Ok(oracle) = domains::g2_membership_oracle(pt) else {
            skipped += 1;
            continue;
        };
        if oracle.margin.abs() <= 1e-9 {
            skipped += 1;
            continue;
        }
        compared += 1;
        let fast = domains::g2_membership(pt);
        let inside = |s: MembershipStatus| s == MembershipStatus::Inside;
        if inside(fast.status) != inside(oracle.status) {
            disagreements += 1;
            c.note(format!("s = {}, p = {}: margin {:e} vs oracle {:e}", pt.s, pt.p, fast.margin, oracle.margin));
        }
    }
    c.metric("compared", compared as f64).metric("skipped", skipped as f64).metric("disagreements", disagreements as f64);
    c.finish(disagreements == 0 && compared > 0)
}

fn group_law(domain: Domain, samples: usize, seed: u64) -> Check {
    let mut c = Check::new(format!("group laws {}", domain.name()));
    let mut rng = trial_rng(seed, 1 + domain as u64);
    let (mut worst_inverse, mut worst_margin, mut failures) = (0.0_f64, f64::INFINITY, 0usize);
    for _ in 0..samples {
        let f = random_automorphism(domain, &mut rng);
        let x = domain.sample_interior(&mut rng);
        let result = f.apply(&x).and_then(|y| Ok((domain.margin(&y)?, f.inverse().apply(&y)?)));
        match result {
            Ok((m, back)) => {
                worst_inverse = worst_inverse.max(back.dist(&x));
                worst_margin = worst_margin.min(m);
            }
            Err(e) => {
                failures += 1;
                c.note(format!("{e}"));
            }
        }
    }
    c.metric("samples", samples as f64)
        .metric("max_inverse_residual", worst_inverse)
        .metric("min_image_margin", worst_margin)
        .metric("failures", failures as f64);
    c.finish(failures == 0 && worst_inverse < 1e-10 && worst_margin > 0.0)
}

/// Inverse round trips and domain preservation for every group, and
/// invariance of the triangular set under tetrablock words.
pub fn group_law_checks(samples: usize, triangular_pairs: usize, seed: u64) -> Vec<Check> {
    let mut checks: Vec<Check> = Domain::ALL.iter().map(|&d| group_law(d, samples, seed)).collect();
    let mut c = Check::new("triangular invariance tetra");
    let mut rng = trial_rng(seed, 10);
    let (mut worst, mut failures) = (0.0_f64, 0usize);
    for _ in 0..triangular_pairs {
        let Automorphism::Tetra(word) = random_automorphism(Domain::Tetra, &mut rng) else { unreachable!() };
        let (a, b) = (sample_disc(&mut rng, 0.95), sample_disc(&mut rng, 0.95));
        let x = TetraPoint::new(a, b, a * b);
        debug_assert!(triangular_membership(x));
        match word.apply(&x.into()) {
            Ok(y) => {
                let y = y.tetra();
                worst = worst.max((y.x3 - y.x1 * y.x2).norm());
            }
            Err(_) => failures += 1,
        }
    }
    c.metric("pairs", triangular_pairs as f64).metric("max_residual", worst).metric("failures", failures as f64);
    checks.push(c.finish(failures == 0 && worst < 1e-10));
    checks
}

/// Scans one domain with every recipe.
pub fn wwd_check(domain: Domain, trials_per_recipe: usize, seed: u64, workers: usize) -> Result<(Check, Vec<ScanSummary>)> {
    let mut c = Check::new(format!("weak wolff-denjoy {}", domain.name()));
    let mut summaries = Vec::new();
    for recipe in Recipe::ALL {
        summaries.push(scan_weak_wolff_denjoy(&ScanConfig::new(domain, recipe, trials_per_recipe, seed), workers)?);
    }
    let sum = |f: fn(&ScanSummary) -> usize| summaries.iter().map(f).sum::<usize>() as f64;
    let runs = summaries.iter().flat_map(|s| s.histogram.values()).sum::<usize>() as f64;
    let undecided = summaries.iter().filter_map(|s| s.histogram.get("undecided")).sum::<usize>() as f64;
    let undecided_fraction = if runs > 0.0 { undecided / runs } else { 0.0 };
    let violations = sum(|s| s.violations.len());
    let mismatches = sum(|s| s.oracle_mismatches.len());
    let oracle_checked = sum(|s| s.oracle_checked);
    c.metric("maps", sum(|s| s.trials - s.skipped))
        .metric("skipped", sum(|s| s.skipped))
        .metric("violations", violations)
        .metric("undecided_fraction", undecided_fraction)
        .metric("oracle_checked", oracle_checked)
        .metric("oracle_agreement", if oracle_checked > 0.0 { 1.0 - mismatches / oracle_checked } else { 1.0 });
    for s in &summaries {
        for v in s.violations.iter().chain(&s.oracle_mismatches) {
            c.note(format!("{} trial {}: {:?}", s.config.recipe, v.trial, v.verdicts));
        }
    }
    let passed = violations == 0.0 && mismatches == 0.0 && undecided_fraction < crate::lab::scan::MAX_UNDECIDED;
    Ok((c.finish(passed), summaries))
}

#[derive(Clone, Copy)]
struct DdComplex {
    re: TwoFloat,
    im: TwoFloat,
}

impl DdComplex {
    fn new(z: C64) -> Self {
        Self { re: TwoFloat::from(z.re), im: TwoFloat::from(z.im) }
    }

    fn sub(self, o: Self) -> Self {
        Self { re: self.re - o.re, im: self.im - o.im }
    }

    fn mul(self, o: Self) -> Self {
        Self { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }

    fn div(self, o: Self) -> Self {
        let den = o.re * o.re + o.im * o.im;
        Self { re: (self.re * o.re + self.im * o.im) / den, im: (self.im * o.re - self.re * o.im) / den }
    }

    fn to_c64(self) -> C64 {
        C64::new(f64::from(self.re), f64::from(self.im))
    }
}

/// `γ(0), …, γⁿ(0)` in double-double arithmetic.
fn orbit_of_origin_dd(gamma: &MobiusTransform, steps: usize) -> Vec<C64> {
    let u = DdComplex::new(gamma.unimodular());
    let a = DdComplex::new(gamma.pole());
    let a_bar = DdComplex::new(gamma.pole().conj());
    let one = DdComplex::new(C64::new(1.0, 0.0));
    let mut z = DdComplex::new(C64::new(0.0, 0.0));
    (0..steps)
        .map(|_| {
            z = u.mul(z.sub(a)).div(one.sub(a_bar.mul(z)));
            z.to_c64()
        })
        .collect()
}

/// `fⁿ(0, 0, 0) = (0, 2γⁿ(0), γⁿ(0)²)` for pentablock automorphisms, with
/// `γⁿ(0)` iterated on the disc in double-double arithmetic. `fⁿ` is
/// evaluated as one automorphism; stepwise iteration in double precision
/// amplifies rounding transversally to the double-root locus by up to
/// `(1 − |z|²)⁻²` and is reported separately.
pub fn penta_orbit_check(maps: usize, steps: usize, seed: u64) -> Check {
    let mut c = Check::new("pentablock orbit of the origin");
    let mut rng = trial_rng(seed, 20);
    let (mut worst, mut worst_stepwise, mut failures) = (0.0_f64, 0.0_f64, 0usize);
    let zero = C64::new(0.0, 0.0);
    let origin = Domain::Penta.origin();
    for i in 0..maps {
        let omega = random_unimodular(&mut rng);
        let gamma = random_mobius(&mut rng);
        let f = PentaAut::new(omega, gamma).expect("unimodular");
        let mut x = origin;
        for (n, z) in (1..=steps).zip(orbit_of_origin_dd(&gamma, steps)) {
            let want = Point::triple(zero, 2.0 * z, z * z);
            let step = f.apply(&x).inspect(|y| x = *y);
            let power = f.power(n as u32).and_then(|g| g.apply(&origin));
            match (step, power) {
                (Ok(_), Ok(y)) => {
                    worst = worst.max(y.dist(&want));
                    worst_stepwise = worst_stepwise.max(x.dist(&want));
                }
                (Err(e), _) | (_, Err(e)) => {
                    failures += 1;
                    c.note(format!("map {i}, step {n}: {e}"));
                    break;
                }
            }
        }
    }
    c.metric("maps", maps as f64)
        .metric("steps", steps as f64)
        .metric("max_residual", worst)
        .metric("max_stepwise_residual", worst_stepwise)
        .metric("failures", failures as f64);
    c.finish(failures == 0 && worst < 1e-12)
}

/// Involution lifts `h ≠ ±id`: curve points fixed, Newton points on the
/// curve, not a retract.
pub fn involution_fixset_check(involutions: usize, seed: u64) -> Check {
    let mut c = Check::new("involution fixed curves g2");
    let mut rng = trial_rng(seed, 30);
    let tol = Tolerances::default();
    let (mut curve, mut model, mut bad) = (0.0_f64, 0.0_f64, 0usize);
    for i in 0..involutions {
        let h = random_involution(&mut rng);
        let f = SelfMap::automorphism(Automorphism::Gn(GnAut::new(2, h).expect("n = 2")));
        match verify_fix_structure_g2(&f, 16, &tol) {
            Ok(r) => {
                curve = curve.max(r.curve_residual.unwrap_or(f64::INFINITY));
                model = model.max(r.model_distance);
                let ok = matches!(r.classification, FixClass::InvolutionCurve { .. })
                    && r.curve_samples == 100
                    && !r.retract
                    && r.passed;
                if !ok {
                    bad += 1;
                    c.note(format!("involution {i}: {} retract={} passed={}", r.classification.tag(), r.retract, r.passed));
                }
            }
            Err(e) => {
                bad += 1;
                c.note(format!("involution {i}: {e}"));
            }
        }
    }
    c.metric("involutions", involutions as f64)
        .metric("max_curve_residual", curve)
        .metric("max_curve_distance", model)
        .metric("failures", bad as f64);
    c.finish(bad == 0 && curve < 1e-10 && model <= 1e-8)
}

/// `−I` on the symmetrized bidisc: `(s, p) ↦ (0, p)` is idempotent and its
/// image is fixed.
pub fn minus_identity_check() -> Check {
    let mut c = Check::new("minus identity retraction g2");
    let f = SelfMap::automorphism(Automorphism::Gn(GnAut::new(2, MobiusTransform::negation()).expect("n = 2")));
    let rho = zero_trace_retraction();
    let samples = halton_points(Domain::G2, 1000, 0);
    let idem = retraction_residual(&rho, &samples).unwrap_or(f64::INFINITY);
    let image = samples
        .iter()
        .map(|x| rho.apply(x).and_then(|y| Ok(f.apply(&y)?.dist(&y))).unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max);
    let report = verify_fix_structure_g2(&f, 16, &Tolerances::default());
    let class_ok = report.as_ref().is_ok_and(|r| r.classification == FixClass::MinusI && r.retract && r.passed);
    c.metric("idempotency_residual", idem).metric("image_fixed_residual", image);
    c.finish(idem < 1e-14 && image < 1e-14 && class_ok)
}

/// Reduced tetrablock forms over an angle grid of `(ω, σ)`.
pub fn tetra_reduced_check(side: usize) -> Check {
    let mut c = Check::new("tetrablock reduced forms");
    let tol = Tolerances::default();
    let (mut cases, mut bad) = (0usize, 0usize);
    let mut tally: BTreeMap<&'static str, usize> = BTreeMap::new();
    for j in 0..side {
        for k in 0..side {
            cases += 1;
            let omega = C64::from_polar(1.0, TAU * j as f64 / side as f64);
            let sigma = C64::from_polar(1.0, TAU * k as f64 / side as f64);
            let want = predicted_reduced_class(omega, sigma);
            let got = tetra_reduced_form(omega, sigma).and_then(|f| verify_fix_structure_tetra(&f, 16, &tol));
            match got {
                Ok(r) if r.classification == want && r.passed => *tally.entry(want.tag()).or_default() += 1,
                Ok(r) => {
                    bad += 1;
                    c.note(format!("ω = {omega:.3}, σ = {sigma:.3}: want {}, got {}", want.tag(), r.classification.tag()));
                }
                Err(e) => {
                    bad += 1;
                    c.note(format!("ω = {omega:.3}, σ = {sigma:.3}: {e}"));
                }
            }
        }
    }
    let p3 = retraction_check(&axis_projection(2), &halton_points(Domain::Tetra, 1000, 0));
    c.metric("cases", cases as f64).metric("mismatches", bad as f64).metric("p3_retraction", p3 as u8 as f64);
    for (k, v) in tally {
        c.metric(k, v as f64);
    }
    c.finish(bad == 0 && p3)
}

fn target_starts() -> Vec<Point> {
    let mut s = vec![Domain::G2.origin()];
    s.extend(halton_points(Domain::G2, 4, 100));
    s
}

/// Fixed-point-free lifts: every cluster on the royal circle at one angle.
pub fn royal_target_check(lifts: usize, seed: u64) -> Check {
    let mut c = Check::new("royal circle targets g2");
    let mut rng = trial_rng(seed, 40);
    let tol = Tolerances::default();
    let (mut royal, mut angle, mut bad) = (0.0_f64, 0.0_f64, 0usize);
    for i in 0..lifts {
        let h = random_fixed_point_free(&mut rng);
        let f = Automorphism::Gn(GnAut::new(2, h).expect("n = 2"));
        match verify_target_structure(&f, &target_starts(), tol.n_max, 100, &tol) {
            Ok(r) => {
                royal = royal.max(r.max_royal_distance);
                angle = angle.max(r.max_angle_deviation);
                if !(r.passed && matches!(r.property, TargetProperty::RoyalCircle { .. })) {
                    bad += 1;
                    c.note(format!("lift {i} ({:?}): {:?}", h.classify(), r.property));
                }
            }
            Err(e) => {
                bad += 1;
                c.note(format!("lift {i}: {e}"));
            }
        }
    }
    c.metric("lifts", lifts as f64)
        .metric("max_royal_distance", royal)
        .metric("max_angle_deviation", angle)
        .metric("failures", bad as f64);
    c.finish(bad == 0)
}

/// Constructed mixed-face maps: every cluster has a unimodular factor at
/// the built-in angle.
pub fn mixed_face_target_check(maps: usize, seed: u64) -> Check {
    let mut c = Check::new("mixed face targets g2");
    let mut rng = trial_rng(seed, 50);
    let tol = Tolerances::default();
    let (mut angle, mut bad) = (0.0_f64, 0usize);
    for i in 0..maps {
        let result = random_mixed_face(&mut rng)
            .and_then(|(f, theta0)| Ok((verify_target_structure(&f, &target_starts(), tol.n_max, 100, &tol)?, theta0)));
        match result {
            Ok((r, theta0)) => {
                let dev = match r.property {
                    TargetProperty::MixedFace { theta } => {
                        crate::disc::angle_distance(theta, theta0).max(r.max_angle_deviation)
                    }
                    _ => f64::INFINITY,
                };
                angle = angle.max(dev);
                if !(r.passed && dev < tol.angle) {
                    bad += 1;
                    c.note(format!("map {i}: {:?}, deviation {dev:e}", r.property));
                }
            }
            Err(e) => {
                bad += 1;
                c.note(format!("map {i}: {e}"));
            }
        }
    }
    c.metric("maps", maps as f64).metric("max_angle_deviation", angle).metric("failures", bad as f64);
    c.finish(bad == 0 && maps > 0)
}

/// Every sampled automorphism with a detected period up to 64 has a Newton
/// fixed point with residual below 1e−12. Half of the draws come from the
/// periodic sampler, half from the generic one.
pub fn periodic_fixed_point_check(trials: usize, seed: u64) -> Check {
    let mut c = Check::new("periodic automorphisms have fixed points");
    let tol = Tolerances::default();
    let (mut detected, mut exceptions, mut worst) = (0usize, 0usize, 0.0_f64);
    for t in 0..trials {
        let mut rng = trial_rng(seed ^ 0x9e37_79b9, t as u64);
        let domain = Domain::ALL[t % 4];
        let f = if (t / 4) % 2 == 0 {
            random_periodic_automorphism(domain, &mut rng).0
        } else {
            random_automorphism(domain, &mut rng)
        };
        let probes = halton_points(domain, 3, 500 + t as u64);
        let Some(period) = periodicity_detect(&f, 64, &probes) else { continue };
        detected += 1;
        let mut starts = vec![domain.origin()];
        starts.extend(halton_points(domain, 8, 0));
        let found = starts.iter().find_map(|z0| {
            let out = newton_fixed_point(&f, z0, tol.newton_max_iter, &tol);
            out.point.map(|z| (z, out.residual))
        });
        match found {
            Some((_, r)) if r < 1e-12 => worst = worst.max(r),
            _ => {
                exceptions += 1;
                c.note(format!("trial {t} ({}): period {period}, no fixed point", domain.name()));
            }
        }
    }
    c.metric("trials", trials as f64)
        .metric("periodic", detected as f64)
        .metric("exceptions", exceptions as f64)
        .metric("max_residual", worst);
    c.finish(exceptions == 0 && detected > 0)
}

/// Byte-identical scan summaries for repeated runs on 1, 4 and 8 workers.
pub fn reproducibility_check(trials: usize, seed: u64) -> Result<Check> {
    let mut c = Check::new("reproducible scan summaries");
    let configs = [
        ScanConfig::new(Domain::G2, Recipe::RandomAutomorphism, trials, seed),
        ScanConfig::new(Domain::G3, Recipe::MixedChain { depth: 3 }, trials, seed),
    ];
    let mut identical = true;
    for cfg in &configs {
        let mut outputs = Vec::new();
        for workers in [1, 4, 8, 1, 4, 8] {
            outputs.push(to_json_string(&scan_weak_wolff_denjoy(cfg, workers)?)?);
        }
        if outputs.iter().any(|o| o != &outputs[0]) {
            identical = false;
            c.note(format!("{} {} differs across runs", cfg.domain.name(), cfg.recipe));
        }
    }
    c.metric("configurations", configs.len() as f64).metric("runs_per_configuration", 6.0);
    Ok(c.finish(identical))
}
