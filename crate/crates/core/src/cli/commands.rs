use std::f64::consts::PI;
use std::fs::File;
use std::io::BufWriter;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classical::{
    boundary_term, family_curvature, family_factor, family_gauss_bonnet, family_volume, gauss_bonnet_quadrature,
    scalar_curvature_radial, ClassicalFactorParams,
};
use crate::error::Error;
use crate::perturbative::FactorTable;
use crate::real::Precision;
use crate::recurrence::{
    exponent_slope, find_fs_seed_with, fs_series, gauss_bonnet_estimate, precision_check, solve as solve_problem,
    solve_prefix, telescoping_check, write_solution_csv, ExponentEstimate, PrecisionCheck, RecurrenceProblem,
    SeedSearch, Variant, VolumeDiagnostic, CENTRAL_INDEX, UPPER_INDEX,
};

use super::scan::{log_grid, run_scan, ScanRow};
use super::{
    output::read_sidecar, CheckArgs, ClassicalArgs, CliError, Format, FsArgs, Outcome, Output, PerturbArgs, ScanArgs,
    SolveArgs, Table,
};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn check_grid(lo: f64, hi: f64, points: usize, positive: bool) -> Result<(), CliError> {
    let lo_ok = if positive { lo > 0.0 } else { lo >= 0.0 };
    if !(lo.is_finite() && hi.is_finite() && lo_ok && hi > lo) {
        return Err(usage(format!("radial grid [{lo}, {hi}] is empty or out of range")));
    }
    if points < 2 {
        return Err(usage("a grid needs at least 2 points"));
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassicalSummary {
    #[serde(rename = "R")]
    curvature: f64,
    #[serde(rename = "V")]
    volume: f64,
    #[serde(rename = "GB")]
    gauss_bonnet: f64,
    gauss_bonnet_quadrature: Option<f64>,
}

pub fn classical(args: &ClassicalArgs, precision: Precision, out: &Output) -> Result<Outcome, CliError> {
    let p = ClassicalFactorParams::new(args.scale, args.exponent, args.shape)?;
    check_grid(args.r_min, args.r_max, args.points, true)?;

    let mut table = Table::new(["r", "k", "R", "boundary_term"]);
    for r in log_grid(args.r_min, args.r_max, args.points) {
        table.push_values(&[
            r,
            family_factor(&p, r)?,
            scalar_curvature_radial(&p, r)?,
            boundary_term(&p, r)?,
        ]);
    }
    let summary = ClassicalSummary {
        curvature: family_curvature(&p),
        volume: family_volume(&p),
        gauss_bonnet: family_gauss_bonnet(&p),
        gauss_bonnet_quadrature: if args.quadrature {
            Some(gauss_bonnet_quadrature(&p, args.r_cut)?)
        } else {
            None
        },
    };
    let mut o = Outcome::default();
    o.files.push(out.write_table("classical", &table)?);
    o.files.push(out.write_json("classical.summary.json", &summary)?);
    o.files
        .push(out.write_sidecar("classical", "classical", args, precision)?);
    o.lines.push(format!(
        "R={} V={} GB={}",
        summary.curvature, summary.volume, summary.gauss_bonnet
    ));
    if let Some(q) = summary.gauss_bonnet_quadrature {
        o.lines.push(format!("GB quadrature={q} (r_max={})", args.r_cut));
    }
    Ok(o)
}

#[derive(Serialize)]
struct SolveSummary {
    exponent: Option<ExponentEstimate>,
    /// Log-log slope between the bar indices.
    exponent_slope: Option<f64>,
    gauss_bonnet_index: Option<usize>,
    gauss_bonnet: Option<f64>,
    monotone: bool,
    max_residual: f64,
    residual_bound: f64,
    volume: VolumeDiagnostic,
    precision_check: Option<PrecisionCheck>,
}

fn problem_of(args: &SolveArgs, precision: Precision) -> RecurrenceProblem {
    match args.variant {
        Variant::Frame => RecurrenceProblem::frame(args.curvature, args.phi0, args.len),
        Variant::Rosenberg => RecurrenceProblem::rosenberg(args.c, args.phi0, args.len),
    }
    .with_precision(precision)
}

pub fn solve(args: &SolveArgs, precision: Precision, out: &Output) -> Result<Outcome, CliError> {
    let problem = problem_of(args, precision);
    problem.validate()?;
    if !(args.recheck_tol > 0.0) {
        return Err(usage("--recheck-tol must be positive"));
    }
    let sol = match solve_problem(&problem) {
        Ok(sol) => sol,
        Err(e @ Error::NonFinite { .. }) => return Err(write_prefix(args, &problem, precision, out, e)),
        Err(e) => return Err(e.into()),
    };

    let gb_index = match sol.phi.len() {
        n if n > CENTRAL_INDEX + 1 => Some(CENTRAL_INDEX),
        n if n >= 2 => Some(n - 2),
        _ => None,
    };
    let gauss_bonnet = gb_index.map(|n| gauss_bonnet_estimate(&sol.phi, n)).transpose()?;
    let check = if args.no_recheck || sol.phi.len() < 2 {
        None
    } else {
        Some(precision_check(&problem, CENTRAL_INDEX.min(sol.phi.len() - 1))?)
    };
    let summary = SolveSummary {
        exponent: sol.exponent,
        exponent_slope: sol.exponent.and_then(|_| exponent_slope(&sol.phi).ok()),
        gauss_bonnet_index: gb_index,
        gauss_bonnet,
        monotone: sol.monotone,
        max_residual: sol.max_residual(),
        residual_bound: sol.residual_bound,
        volume: sol.volume,
        precision_check: check,
    };

    let mut o = Outcome::default();
    let data = out.data_path("solve");
    match out.format {
        Format::Csv => write_solution_csv(&sol, BufWriter::new(File::create(&data)?))?,
        Format::Json => {
            out.write_json("solve.json", &sol)?;
        }
    }
    o.files.push(data);
    o.files.push(out.write_json("solve.summary.json", &summary)?);
    o.files.push(out.write_sidecar("solve", "solve", args, precision)?);

    match sol.exponent {
        Some(e) => o.lines.push(format!(
            "a_hat={} bars=[{}, {}] 8*pi*a_hat={} slope={}",
            e.a_hat,
            e.bar_low,
            e.bar_high,
            8.0 * PI * e.a_hat,
            summary.exponent_slope.unwrap_or(f64::NAN)
        )),
        None => o.lines.push(format!("a_hat unavailable (needs N > {UPPER_INDEX})")),
    }
    if let (Some(n), Some(gb)) = (gb_index, gauss_bonnet) {
        o.lines.push(format!("GB(N={n})={gb}"));
    }
    o.lines.push(format!(
        "monotone={} max_residual={:e} (bound {:e}) sum phi^-2={} tail exponent={}",
        sol.monotone,
        summary.max_residual,
        sol.residual_bound,
        sol.volume.inverse_square_sum,
        sol.volume.tail_growth_exponent
    ));
    if let Some(c) = check {
        let relative = c.relative_difference();
        o.lines.push(format!(
            "precision check n={}: relative difference {relative:e}",
            c.index
        ));
        if !(relative <= args.recheck_tol) {
            return Err(CliError::Precision {
                index: c.index,
                standard: c.standard,
                extended: c.extended,
                relative,
                tolerance: args.recheck_tol,
            });
        }
    }
    Ok(o)
}

#[derive(Serialize)]
struct FailedSolveSummary {
    computed_terms: usize,
    failure: String,
    monotone: bool,
    last_phi: Option<f64>,
}

/// Writes what a collapsing solve produced before failing and returns the
/// error to report.
fn write_prefix(
    args: &SolveArgs,
    problem: &RecurrenceProblem,
    precision: Precision,
    out: &Output,
    error: Error,
) -> CliError {
    let written = (|| -> Result<(), CliError> {
        let (phi, _) = solve_prefix(problem)?;
        let mut table = Table::new(["n", "phi_n", "gb_partial_n", "residual_n"]).with_integer_column(0);
        for (n, v) in phi.iter().enumerate() {
            let gb = phi.get(n + 1).map(|w| 4.0 * PI * (n + 1) as f64 * (w / v - v / w));
            table.push(vec![Some(n as f64), Some(*v), gb, None]);
        }
        out.write_table("solve", &table)?;
        let summary = FailedSolveSummary {
            computed_terms: phi.len(),
            failure: error.to_string(),
            monotone: phi.windows(2).all(|w| w[1] > w[0]),
            last_phi: phi.last().copied(),
        };
        out.write_json("solve.summary.json", &summary)?;
        out.write_sidecar("solve", "solve", args, precision)?;
        Ok(())
    })();
    match written {
        Ok(()) => error.into(),
        Err(io) => io,
    }
}

impl ScanArgs {
    fn grid(&self) -> Result<Vec<f64>, CliError> {
        if !(self.curvature.is_finite() && self.curvature > 0.0) {
            return Err(usage(format!("--R must be positive, got {}", self.curvature)));
        }
        if self.len <= UPPER_INDEX {
            return Err(usage(format!("the scan estimator needs --N > {UPPER_INDEX}")));
        }
        let root = self.curvature.sqrt();
        let lo = self.phi0_min.unwrap_or(0.2 * root);
        let hi = self.phi0_max.unwrap_or(10.0 * root);
        check_grid(lo, hi, self.points, true)?;
        Ok(log_grid(lo, hi, self.points))
    }
}

/// Direction of a sequence: `1` increasing, `-1` decreasing, `0` neither.
fn trend(values: &[f64]) -> i8 {
    if values.windows(2).all(|w| w[1] > w[0]) {
        1
    } else if values.windows(2).all(|w| w[1] < w[0]) {
        -1
    } else {
        0
    }
}

pub fn scan(args: &ScanArgs, precision: Precision, out: &Output) -> Result<Outcome, CliError> {
    let seeds = args.grid()?;
    let path = out.path("scan.csv");
    let sidecar = out.sidecar_path("scan");
    // Reuse rows only when the previous run had the same parameters.
    let resume = !args.no_resume
        && read_sidecar(&sidecar)
            .is_some_and(|s| s.precision == precision && s.params == serde_json::to_value(args).unwrap_or_default());
    out.write_sidecar("scan", "scan", args, precision)?;
    let rows = run_scan(&seeds, &path, resume, |phi0| {
        let p = RecurrenceProblem::frame(args.curvature, phi0, args.len).with_precision(precision);
        solve_problem(&p).map(|s| s.phi)
    })?;

    let mut o = Outcome::default();
    o.files.push(path);
    if out.format == Format::Json {
        o.files.push(out.write_json("scan.json", &rows)?);
    }
    o.files.push(out.write_sidecar("scan", "scan", args, precision)?);
    o.lines.extend(rows.iter().map(scan_line));
    let a: Vec<f64> = rows.iter().filter_map(|r| r.estimate.map(|e| e.a_hat)).collect();
    let failed = rows.iter().filter(|r| !r.is_ok()).count();
    o.lines.push(format!(
        "{} points, {failed} failed, a_hat {}",
        rows.len(),
        match trend(&a) {
            1 => "increasing",
            -1 => "decreasing",
            _ => "not monotone",
        }
    ));
    Ok(o)
}

fn scan_line(r: &ScanRow) -> String {
    match (r.estimate, r.gauss_bonnet) {
        (Some(e), Some(gb)) => format!(
            "phi0={} a_hat={} bars=[{}, {}] GB/(8 pi)={}",
            r.phi0,
            e.a_hat,
            e.bar_low,
            e.bar_high,
            gb / (8.0 * PI)
        ),
        _ => format!("phi0={} failed: {}", r.phi0, r.status),
    }
}

#[derive(Serialize)]
struct FsSummary {
    seed: f64,
    exponent: ExponentEstimate,
    bisections: usize,
    /// `max |phi_n - series_n|` over `n` in `[1000, min(5000, N-1)]`.
    max_series_difference: Option<f64>,
}

pub fn fs(args: &FsArgs, precision: Precision, out: &Output) -> Result<Outcome, CliError> {
    if args.len <= UPPER_INDEX {
        return Err(usage(format!("--N must exceed {UPPER_INDEX}")));
    }
    let search = SeedSearch {
        precision,
        ..SeedSearch::default().with_tolerance(args.tol)
    };
    let found = find_fs_seed_with(args.curvature, &search)?;
    let sol = solve_problem(&RecurrenceProblem::frame(args.curvature, found.seed, args.len).with_precision(precision))?;

    let mut table = Table::new(["n", "phi_n", "series_n", "difference_n"]).with_integer_column(0);
    let mut max_diff: Option<f64> = None;
    for (n, &phi) in sol.phi.iter().enumerate().skip(1) {
        let s = fs_series(n, args.curvature)?;
        table.push_values(&[n as f64, phi, s, phi - s]);
        if (1000..=CENTRAL_INDEX).contains(&n) {
            max_diff = Some(max_diff.unwrap_or(0.0).max((phi - s).abs()));
        }
    }
    let summary = FsSummary {
        seed: found.seed,
        exponent: found.exponent,
        bisections: found.bisections,
        max_series_difference: max_diff,
    };
    let mut o = Outcome::default();
    o.files.push(out.write_table("fs", &table)?);
    o.files.push(out.write_json("fs.summary.json", &summary)?);
    o.files.push(out.write_sidecar("fs", "fs", args, precision)?);
    let e = found.exponent;
    o.lines.push(format!(
        "seed={} a_hat={} bars=[{}, {}] bisections={}",
        found.seed, e.a_hat, e.bar_low, e.bar_high, found.bisections
    ));
    if let Some(d) = max_diff {
        o.lines.push(format!("max |phi_n - series_n| on [1000, 5000]: {d}"));
    }
    Ok(o)
}

pub fn perturb(args: &PerturbArgs, precision: Precision, out: &Output) -> Result<Outcome, CliError> {
    check_grid(0.0, args.r_max, args.points, false)?;
    if args.theta.is_empty() {
        return Err(usage("at least one --theta is required"));
    }
    let radii = FactorTable::uniform_radii(args.r_max, args.points);
    let table = FactorTable::compute(args.eta, args.c1, &args.theta, &radii)?;

    let mut o = Outcome::default();
    let data = out.data_path("perturb");
    match out.format {
        Format::Csv => table.write_csv(BufWriter::new(File::create(&data)?))?,
        Format::Json => {
            out.write_json("perturb.json", &table)?;
        }
    }
    o.files.push(data);
    o.files.push(out.write_sidecar("perturb", "perturb", args, precision)?);
    for (theta, col) in table.thetas.iter().zip(&table.columns) {
        o.lines.push(format!(
            "theta={theta}: factor(0)={} decreasing={}",
            col[0],
            FactorTable::is_decreasing(col)
        ));
    }
    Ok(o)
}

#[derive(Serialize)]
struct CheckReport {
    seed: u64,
    cases: usize,
    failures: Vec<String>,
}

fn relative(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Random classical parameters, telescoping sequences and rescaled
/// recurrence problems, drawn from a ChaCha stream seeded by `--seed`.
pub fn check(args: &CheckArgs, precision: Precision, out: &Output) -> Result<Outcome, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut failures = Vec::new();
    for case in 0..args.cases {
        let p = ClassicalFactorParams::new(
            rng.gen_range(0.2..5.0),
            rng.gen_range(1.0..4.0),
            rng.gen_range(0.2..5.0),
        )?;
        let r = rng.gen_range(0.05..5.0);
        let err = relative(scalar_curvature_radial(&p, r)?, family_curvature(&p));
        if !(err <= 1e-6) {
            failures.push(format!("case {case}: classical curvature off by {err:e} at r={r}"));
        }

        let mut v = 1.0;
        let phi: Vec<f64> = (0..2000)
            .map(|_| {
                v *= rng.gen_range(0.9..1.3);
                v
            })
            .collect();
        let t = telescoping_check(&phi, 1998)?.relative();
        if !(t <= 1e-9) {
            failures.push(format!("case {case}: telescoping identity off by {t:e}"));
        }

        let base =
            RecurrenceProblem::frame(rng.gen_range(0.5..2.0), rng.gen_range(0.5..3.0), 500).with_precision(precision);
        let lambda = rng.gen_range(0.5..10.0);
        let a = solve_problem(&base)?;
        let b = solve_problem(&base.scaled(lambda))?;
        let worst = a
            .phi
            .iter()
            .zip(&b.phi)
            .map(|(x, y)| relative(*y, lambda * x))
            .fold(0.0, f64::max);
        if !(worst <= 1e-12) {
            failures.push(format!("case {case}: scaling covariance off by {worst:e}"));
        }
    }
    let report = CheckReport {
        seed: args.seed,
        cases: args.cases,
        failures,
    };
    out.write_json("check.json", &report)?;
    out.write_sidecar("check", "check", args, precision)?;
    if report.failures.is_empty() {
        Ok(Outcome {
            lines: vec![format!("{} cases passed (seed {})", args.cases, args.seed)],
            files: vec![out.path("check.json"), out.sidecar_path("check")],
        })
    } else {
        Err(CliError::CheckFailed(report.failures.join("\n")))
    }
}
