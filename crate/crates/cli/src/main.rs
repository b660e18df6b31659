//! `mu-domains` command-line front end.
//!
//! Exit codes: 0 success (member: inside), 1 property failed (member:
//! outside), 2 member: boundary, 3 library error, 64 usage or parse error,
//! 70 a map left its domain, 74 I/O error.

mod output;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mu_domains::automorphisms::PointMap;
use mu_domains::domains::{self, BetaVariant, MembershipStatus, MembershipVerdict, PentaPoint, SymPoint2, SymPoint3, TetraPoint};
use mu_domains::dynamics::{classify_orbit, iterate, Tolerances};
use mu_domains::lab::fixset::{halton_points, verify_fix_structure_g2, verify_fix_structure_tetra};
use mu_domains::lab::verify::{run_suite, SuiteSizes};
use mu_domains::lab::{scan_weak_wolff_denjoy, verify_target_structure, Recipe, ScanConfig};
use mu_domains::lab::target::TargetProperty;
use mu_domains::report::{orbit_csv, to_json_string};
use mu_domains::{Domain, Error, Point, C64};
use serde::Serialize;
use serde_json::json;

use crate::output::{emit, Envelope};
use crate::spec::{parse_map, SpecError};

const EXIT_OUTSIDE: u8 = 1;
const EXIT_FAILED: u8 = 1;
const EXIT_BOUNDARY: u8 = 2;
const EXIT_LIBRARY: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_SOFTWARE: u8 = 70;
const EXIT_IO: u8 = 74;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum BetaArg {
    Paper,
    Literature,
}

impl From<BetaArg> for BetaVariant {
    fn from(b: BetaArg) -> Self {
        match b {
            BetaArg::Paper => BetaVariant::Paper,
            BetaArg::Literature => BetaVariant::Literature,
        }
    }
}

/// Special domains of μ-synthesis: membership, orbits and verification
/// suites.
///
/// Tolerances are overridden with `--tol-<name> <value>`, e.g.
/// `--tol-fixed-residual 1e-10`.
#[derive(Debug, Parser)]
#[command(name = "mu-domains", version, after_help = tolerance_help())]
struct Cli {
    /// Master seed.
    #[arg(long, global = true, env = "MU_DOMAINS_SEED", default_value_t = 1)]
    seed: u64,
    /// Orbit length cap.
    #[arg(long, global = true)]
    n_max: Option<usize>,
    /// Pentablock β denominator.
    #[arg(long, global = true, value_enum, default_value_t = BetaArg::Paper)]
    beta_variant: BetaArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file, written atomically; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
enum Command {
    /// Membership of a point given as re/im pairs.
    Member {
        domain: Domain,
        #[arg(allow_negative_numbers = true, required = true)]
        coords: Vec<f64>,
    },
    /// Iterates a map and classifies the orbit.
    Orbit {
        map: String,
        /// Start point as re/im pairs; the origin when absent.
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        start: Vec<f64>,
    },
    /// Weak Wolff-Denjoy scan over sampled self-maps.
    Scan {
        domain: Domain,
        recipe: Recipe,
        trials: usize,
        /// Starts per map, the origin first.
        #[arg(long, default_value_t = 3)]
        starts: usize,
        /// Worker threads; results do not depend on it.
        #[arg(long)]
        #[serde(skip)]
        workers: Option<usize>,
    },
    /// Fixed-point set structure of a bidisc or tetrablock map.
    Fixset {
        map: String,
        /// Newton starts.
        #[arg(long, default_value_t = 25)]
        grid: usize,
    },
    /// Target-set structure of a divergent bidisc map.
    Target {
        map: String,
        /// Starts, the origin first, then Halton points.
        #[arg(long, default_value_t = 5)]
        starts: usize,
        /// Orbit points discarded before clustering.
        #[arg(long, default_value_t = 100)]
        burn_in: usize,
    },
    /// Runs a named verification suite (or `all`).
    Verify {
        suite: String,
        /// Reduced problem sizes for a fast smoke run.
        #[arg(long)]
        quick: bool,
        #[arg(long)]
        #[serde(skip)]
        workers: Option<usize>,
    },
}

fn tolerance_help() -> String {
    format!("Tolerance names: {}", Tolerances::NAMES.map(|n| n.replace('_', "-")).join(", "))
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Library(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Library(Error::AtomRangeViolation { .. }) => EXIT_SOFTWARE,
            Failure::Library(Error::InvalidArgument(_)) => EXIT_USAGE,
            Failure::Library(_) => EXIT_LIBRARY,
            Failure::Io(_) => EXIT_IO,
        }
    }
}

/// Configuration echoed into every envelope.
#[derive(Debug, Serialize)]
struct RunConfig<'a> {
    #[serde(flatten)]
    command: &'a Command,
    seed: u64,
    n_max: usize,
    beta_variant: BetaArg,
    format: Format,
    out: Option<&'a PathBuf>,
    tolerances: &'a Tolerances,
}

struct Run<'a> {
    cli: &'a Cli,
    tol: Tolerances,
}

impl Run<'_> {
    fn config(&self) -> RunConfig<'_> {
        RunConfig {
            command: &self.cli.command,
            seed: self.cli.seed,
            n_max: self.tol.n_max,
            beta_variant: self.cli.beta_variant,
            format: self.cli.format,
            out: self.cli.out.as_ref(),
            tolerances: &self.tol,
        }
    }

    fn emit_json<P: Serialize>(&self, payload: &P) -> Result<(), Failure> {
        if self.cli.format == Format::Csv {
            return Err(Failure::Usage("csv output is only available for orbit".into()));
        }
        let config = self.config();
        let text = to_json_string(&Envelope::new(&config, payload))?;
        Ok(emit(self.cli.out.as_deref(), &text)?)
    }
}

fn point_from_reals(domain: Domain, reals: &[f64]) -> Result<Point, Failure> {
    if reals.len() != 2 * domain.dim() {
        return Err(Failure::Usage(format!(
            "{domain} points take {} reals (re/im pairs), got {}",
            2 * domain.dim(),
            reals.len()
        )));
    }
    let coords: Vec<C64> = reals.chunks(2).map(|c| C64::new(c[0], c[1])).collect();
    Ok(Point::new(&coords)?)
}

fn membership(domain: Domain, x: &Point, beta: BetaVariant) -> Result<MembershipVerdict, Error> {
    let c = x.coords();
    match domain {
        Domain::G2 => Ok(domains::g2_membership(SymPoint2::new(c[0], c[1]))),
        Domain::G3 => domains::g3_membership(SymPoint3::new(c[0], c[1], c[2])),
        Domain::Tetra => Ok(domains::tetra_membership(TetraPoint::new(c[0], c[1], c[2]))),
        Domain::Penta => domains::penta_membership(PentaPoint::new(c[0], c[1], c[2]), beta),
    }
}

fn status_name(s: MembershipStatus) -> &'static str {
    match s {
        MembershipStatus::Inside => "inside",
        MembershipStatus::Boundary => "boundary",
        MembershipStatus::Outside => "outside",
    }
}

fn pass_code(passed: bool) -> u8 {
    if passed { 0 } else { EXIT_FAILED }
}

fn run(cli: &Cli, tol: Tolerances) -> Result<u8, Failure> {
    let r = Run { cli, tol };
    let tol = &r.tol;
    let workers = |w: &Option<usize>| w.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    match &cli.command {
        Command::Member { domain, coords } => {
            let x = point_from_reals(*domain, coords)?;
            let verdict = membership(*domain, &x, cli.beta_variant.into())?;
            eprintln!("{} margin {:e}", status_name(verdict.status), verdict.margin);
            r.emit_json(&json!({ "domain": domain, "point": x, "verdict": verdict }))?;
            Ok(match verdict.status {
                MembershipStatus::Inside => 0,
                MembershipStatus::Outside => EXIT_OUTSIDE,
                MembershipStatus::Boundary => EXIT_BOUNDARY,
            })
        }
        Command::Orbit { map, start } => {
            let f = parse_map(map)?;
            let domain = f.domain();
            let z0 = if start.is_empty() { domain.origin() } else { point_from_reals(domain, start)? };
            let rec = iterate(&f, &z0, tol.n_max, tol)?;
            let verdict = classify_orbit(&rec, &f, tol);
            eprintln!("{} after {} steps, final margin {:e}", verdict.kind.tag(), verdict.steps, verdict.final_margin);
            match cli.format {
                Format::Csv => emit(cli.out.as_deref(), &orbit_csv(&rec))?,
                Format::Json => r.emit_json(&json!({ "map": f, "verdict": verdict, "orbit": rec }))?,
            }
            Ok(0)
        }
        Command::Scan { domain, recipe, trials, starts, workers: w } => {
            let mut cfg = ScanConfig::new(*domain, *recipe, *trials, cli.seed);
            cfg.starts = (*starts).max(1);
            cfg.tolerances = *tol;
            let summary = scan_weak_wolff_denjoy(&cfg, workers(w))?;
            eprintln!(
                "{} trials, {} violations, {} oracle mismatches, undecided {:.2}%: {}",
                summary.trials,
                summary.violations.len(),
                summary.oracle_mismatches.len(),
                100.0 * summary.undecided_fraction,
                if summary.passed { "pass" } else { "FAIL" }
            );
            r.emit_json(&summary)?;
            Ok(pass_code(summary.passed))
        }
        Command::Fixset { map, grid } => {
            let f = parse_map(map)?;
            let report = match f.domain() {
                Domain::G2 => verify_fix_structure_g2(&f, *grid, tol)?,
                Domain::Tetra => verify_fix_structure_tetra(&f, *grid, tol)?,
                other => return Err(Failure::Usage(format!("fixset supports g2 and tetra maps, not {other}"))),
            };
            eprintln!(
                "{}, {} fixed points, retract {}: {}",
                report.classification.tag(),
                report.fixed_points.len(),
                report.retract,
                if report.passed { "pass" } else { "FAIL" }
            );
            r.emit_json(&report)?;
            Ok(pass_code(report.passed))
        }
        Command::Target { map, starts, burn_in } => {
            let f = parse_map(map)?;
            if f.domain() != Domain::G2 {
                return Err(Failure::Usage("target supports g2 maps".into()));
            }
            let mut points = vec![Domain::G2.origin()];
            points.extend(halton_points(Domain::G2, starts.saturating_sub(1), 100));
            let report = verify_target_structure(&f, &points, tol.n_max, *burn_in, tol)?;
            let property = match report.property {
                TargetProperty::RoyalCircle { theta } => format!("royal circle, angle {theta:.6}"),
                TargetProperty::MixedFace { theta } => format!("mixed face, angle {theta:.6}"),
                TargetProperty::Unstructured => "unstructured".into(),
            };
            eprintln!("{property}: {}", if report.passed { "pass" } else { "FAIL" });
            r.emit_json(&report)?;
            Ok(pass_code(report.passed))
        }
        Command::Verify { suite, quick, workers: w } => {
            let sizes = if *quick { quick_sizes() } else { SuiteSizes::default() };
            let report = run_suite(suite, cli.seed, &sizes, workers(w))?;
            for c in &report.checks {
                eprintln!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
            }
            r.emit_json(&report)?;
            Ok(pass_code(report.passed))
        }
    }
}

fn quick_sizes() -> SuiteSizes {
    SuiteSizes {
        membership_points: 5000,
        group_samples: 500,
        triangular_pairs: 100,
        scan_trials_per_recipe: 10,
        penta_maps: 10,
        penta_steps: 100,
        involutions: 10,
        tetra_grid_side: 4,
        target_lifts: 5,
        mixed_face_maps: 2,
        periodic_trials: 50,
        reproducibility_trials: 10,
    }
}

/// Pulls `--tol-<name> <value>` and `--tol-<name>=<value>` out of the
/// arguments.
fn split_tolerances(args: Vec<String>) -> Result<(Vec<String>, Tolerances), String> {
    let mut tol = Tolerances::default();
    let mut rest = Vec::with_capacity(args.len());
    let mut it = args.into_iter();
    while let Some(arg) = it.next() {
        let Some(spec) = arg.strip_prefix("--tol-") else {
            rest.push(arg);
            continue;
        };
        let (name, value) = match spec.split_once('=') {
            Some((n, v)) => (n.to_string(), v.to_string()),
            None => (spec.to_string(), it.next().ok_or_else(|| format!("--tol-{spec} needs a value"))?),
        };
        let key = name.replace('-', "_");
        if !Tolerances::NAMES.contains(&key.as_str()) {
            return Err(format!("unknown tolerance `{name}`; {}", tolerance_help()));
        }
        let v: f64 = value.parse().map_err(|_| format!("--tol-{name}: `{value}` is not a number"))?;
        tol.set(&key, v)?;
    }
    Ok((rest, tol))
}

fn main() -> ExitCode {
    let (args, mut tol) = match split_tolerances(std::env::args().collect()) {
        Ok(x) => x,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(n) = cli.n_max {
        tol.n_max = n;
    }
    match run(&cli, tol) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Library(e) => eprintln!("error: {e}"),
                Failure::Io(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn tolerance_flags() {
        let (rest, tol) = split_tolerances(args("mu member --tol-fixed-residual 1e-10 g2 --tol-n-max=7 0 0")).unwrap();
        assert_eq!(rest, args("mu member g2 0 0"));
        assert_eq!(tol.fixed_residual, 1e-10);
        assert_eq!(tol.n_max, 7);
        assert!(split_tolerances(args("mu --tol-nope 1")).is_err());
        assert!(split_tolerances(args("mu --tol-angle")).is_err());
        assert!(split_tolerances(args("mu --tol-angle x")).is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
