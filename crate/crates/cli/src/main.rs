//! Command-line front end for the surface pipeline: construct datasets,
//! run verification suites, export meshes, and exercise the built-in
//! golden cases.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input/parse error,
//! 3 construction with a majority of failed samples.

mod dataset;
mod mesh;
mod report;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use isowill_core::golden::{
    default_grid, golden_residual, isotropy_suite, lambda_isometry_suite, middle_term_suite,
    pipeline_for, reality_twist_suite, CheckLine, GoldenCase, MINIMAL_CASE, SPHERE_CASE,
};
use isowill_core::grid::GridSpec;
use isowill_core::mat::C64;
use isowill_core::pipeline::{describe_error, BranchPolicy, Mode, Pipeline};
use isowill_core::specfile::{parse_grid, parse_lambdas, parse_spec};
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "isowill",
    version,
    about = "Totally isotropic Willmore surfaces in S^6 from loop-group potentials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipeline over a grid and write a surface dataset (CSV).
    Construct(ConstructArgs),
    /// Run the verification suites and write a report.
    Verify(VerifyArgs),
    /// Triangulate a dataset layer and write an ASCII mesh.
    ExportMesh(ExportMeshArgs),
    /// Run a built-in golden case and print its residual summary.
    Golden(GoldenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    Exact,
    Numeric,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Auto => Mode::Auto,
            ModeArg::Exact => Mode::Exact,
            ModeArg::Numeric => Mode::Numeric,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Primal,
    Dual,
    Both,
}

impl From<BranchArg> for BranchPolicy {
    fn from(b: BranchArg) -> BranchPolicy {
        match b {
            BranchArg::Primal => BranchPolicy::Primal,
            BranchArg::Dual => BranchPolicy::Dual,
            BranchArg::Both => BranchPolicy::Both,
        }
    }
}

#[derive(Args)]
struct ConstructArgs {
    /// Potential spec file.
    #[arg(long)]
    spec: PathBuf,
    /// Grid override, e.g. "polar 0.2:1.95:5 0:6.2832:4" or "rect -1:1:9 -1:1:9".
    #[arg(long)]
    grid: Option<String>,
    /// Circle points override, e.g. "1, 1i".
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = BranchArg::Both)]
    branch: BranchArg,
    /// Relative step for derivative-based diagnostics.
    #[arg(long, default_value_t = 1e-4)]
    fd_step: f64,
    /// Relative step for the metric density column.
    #[arg(long, default_value_t = 1e-5)]
    metric_step: f64,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Built-in case name (sphere-s6, minimal-r4, all).
    #[arg(long, default_value = "all")]
    case: String,
    /// Verify a user potential instead of a built-in case.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    /// Golden-residual tolerance (built-in cases).
    #[arg(long, default_value_t = 1e-8)]
    tol_golden: f64,
    /// Frame reality/twist/membership tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol_frame: f64,
    /// Factorization-equation tolerance.
    #[arg(long, default_value_t = 1e-11)]
    tol_middle: f64,
    /// Isotropy tolerance at the default step.
    #[arg(long, default_value_t = 1e-5)]
    tol_isotropy: f64,
    /// Circle-family isometry tolerance.
    #[arg(long, default_value_t = 1e-8)]
    tol_isometry: f64,
    #[arg(long, default_value_t = 1e-4)]
    fd_step: f64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct ExportMeshArgs {
    /// Dataset CSV produced by `construct`.
    #[arg(long)]
    dataset: PathBuf,
    /// Grid description matching the dataset, e.g. "polar 0.2:1.95:5 0:6.2832:4".
    #[arg(long)]
    grid: String,
    /// Which distinct circle point to mesh (0-based, dataset order).
    #[arg(long, default_value_t = 0)]
    lambda_index: usize,
    /// Branch layer: primal (also matches unique), dual.
    #[arg(long, default_value = "primal")]
    branch: String,
    /// "pca" or three 1-based coordinates like "1,2,3".
    #[arg(long, default_value = "1,2,3")]
    projection: String,
    /// obj or off.
    #[arg(long, default_value = "obj")]
    format: String,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct GoldenArgs {
    /// Case name: sphere-s6 or minimal-r4.
    case: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Construct(args) => cmd_construct(args),
        Command::Verify(args) => cmd_verify(args),
        Command::ExportMesh(args) => cmd_export_mesh(args),
        Command::Golden(args) => cmd_golden(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_spec(path: &Path) -> Result<(isowill_core::specfile::SpecFile, u64)> {
    let bytes = std::fs::read(path)
        .with_context(|| format!("cannot read spec file {}", path.display()))?;
    let text = String::from_utf8(bytes.clone()).context("spec file is not UTF-8")?;
    let spec = parse_spec(&text).map_err(|e| anyhow!("{e}"))?;
    Ok((spec, dataset::content_hash(&bytes)))
}

fn resolve_grid(flag: &Option<String>, from_file: Option<GridSpec>) -> Result<GridSpec> {
    if let Some(s) = flag {
        return parse_grid(s, 0).map_err(|e| anyhow!("{e}"));
    }
    Ok(from_file.unwrap_or_else(GridSpec::default_polar))
}

fn resolve_lambdas(flag: &Option<String>, from_file: Option<Vec<C64>>) -> Result<Vec<C64>> {
    if let Some(s) = flag {
        return parse_lambdas(s, 0).map_err(|e| anyhow!("{e}"));
    }
    Ok(from_file.unwrap_or_else(|| vec![C64::new(1.0, 0.0)]))
}

fn cmd_construct(args: ConstructArgs) -> Result<ExitCode> {
    let (spec, hash) = read_spec(&args.spec)?;
    let grid = resolve_grid(&args.grid, spec.grid.clone())?;
    let lambdas = resolve_lambdas(&args.lambda, spec.lambdas.clone())?;
    let fcheck = isowill_core::potential::b1_to_fcheck(&spec.potential);
    let fc = isowill_core::potential::integrate_potential(&fcheck, &spec.potential.base_point)
        .map_err(|e| anyhow!("{e}"))?;
    let mut pipeline = Pipeline::new(fc, args.mode.into()).map_err(|e| anyhow!("{e}"))?;
    pipeline.fd_step = args.fd_step;
    let policy: BranchPolicy = args.branch.into();

    let points = grid.points();
    // Deterministic order: circle parameter outer, grid row-major inner,
    // branches innermost. Work is parallel per z; rayon's collect preserves
    // input order.
    let mut rows: Vec<dataset::Row> = vec![];
    for &lam in &lambdas {
        let chunk: Vec<Vec<dataset::Row>> = points
            .par_iter()
            .map(|&z| match pipeline.samples(z, lam, policy) {
                Ok(samples) => samples
                    .iter()
                    .map(|s| {
                        let metric = pipeline
                            .metric_density(z, lam, branch_policy_for(s.branch), args.metric_step)
                            .unwrap_or(f64::NAN);
                        dataset::Row::from_sample(s, metric)
                    })
                    .collect(),
                Err(e) => vec![dataset::Row::failed(z, lam, describe_error(&e))],
            })
            .collect();
        rows.extend(chunk.into_iter().flatten());
    }

    let failed = rows.iter().filter(|r| r.is_failed()).count();
    let grid_desc = args
        .grid
        .clone()
        .unwrap_or_else(|| "default-polar".to_string());
    let text = dataset::render(&rows, hash, &grid_desc, lambdas.len());
    std::fs::create_dir_all(&args.out)?;
    let path = args.out.join("dataset.csv");
    std::fs::write(&path, text)?;
    println!(
        "wrote {} ({} rows, {} failed)",
        path.display(),
        rows.len(),
        failed
    );
    if failed * 2 > rows.len() {
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn branch_policy_for(branch: isowill_core::surface::RhoBranch) -> BranchPolicy {
    match branch {
        isowill_core::surface::RhoBranch::Rank1Dual => BranchPolicy::Dual,
        _ => BranchPolicy::Primal,
    }
}

fn builtin_case(name: &str) -> Option<&'static GoldenCase> {
    match name {
        "sphere-s6" => Some(&SPHERE_CASE),
        "minimal-r4" => Some(&MINIMAL_CASE),
        _ => None,
    }
}

fn verify_builtin(case: &'static GoldenCase, args: &VerifyArgs) -> Result<report::CaseReport> {
    let pipeline = pipeline_for(case, args.mode.into()).map_err(|e| anyhow!("{e}"))?;
    let grid = match &args.grid {
        Some(s) => parse_grid(s, 0).map_err(|e| anyhow!("{e}"))?.points(),
        None => default_grid(),
    };
    let lambdas =
        resolve_lambdas(&args.lambda, Some(vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0)]))?;
    let mut checks: Vec<CheckLine> =
        golden_residual(&pipeline, case, &grid, &lambdas).map_err(|e| anyhow!("{e}"))?;
    for c in &mut checks {
        c.tolerance = args.tol_golden;
    }
    checks.extend(
        reality_twist_suite(&pipeline, &grid, &lambdas, args.tol_frame)
            .map_err(|e| anyhow!("{e}"))?,
    );
    checks.extend(
        middle_term_suite(&pipeline, &grid, args.tol_middle).map_err(|e| anyhow!("{e}"))?,
    );
    checks.extend(
        isotropy_suite(&pipeline, &grid, lambdas[0], args.fd_step, args.tol_isotropy)
            .map_err(|e| anyhow!("{e}"))?,
    );
    if lambdas.len() > 1 {
        checks.extend(
            lambda_isometry_suite(&pipeline, &grid, &lambdas, args.fd_step, args.tol_isometry)
                .map_err(|e| anyhow!("{e}"))?,
        );
    }
    Ok(report::CaseReport {
        case: case.name.to_string(),
        checks,
    })
}

fn verify_spec(path: &Path, args: &VerifyArgs) -> Result<report::CaseReport> {
    let (spec, _) = read_spec(path)?;
    let grid = resolve_grid(&args.grid, spec.grid.clone())?;
    let lambdas = resolve_lambdas(&args.lambda, spec.lambdas.clone())?;
    let fcheck = isowill_core::potential::b1_to_fcheck(&spec.potential);
    let fc = isowill_core::potential::integrate_potential(&fcheck, &spec.potential.base_point)
        .map_err(|e| anyhow!("{e}"))?;
    let pipeline = Pipeline::new(fc, args.mode.into()).map_err(|e| anyhow!("{e}"))?;
    // Grid points on poles are skipped rather than failed: partial-pass
    // policy for user potentials.
    let points: Vec<C64> = grid
        .points()
        .into_iter()
        .filter(|z| pipeline.fc().check_pole(*z).is_ok())
        .collect();
    if points.is_empty() {
        bail!("every grid point sits on a pole of the potential");
    }
    let mut checks = reality_twist_suite(&pipeline, &points, &lambdas, args.tol_frame)
        .map_err(|e| anyhow!("{e}"))?;
    checks.extend(
        middle_term_suite(&pipeline, &points, args.tol_middle).map_err(|e| anyhow!("{e}"))?,
    );
    checks.extend(
        isotropy_suite(&pipeline, &points, lambdas[0], args.fd_step, args.tol_isotropy)
            .map_err(|e| anyhow!("{e}"))?,
    );
    Ok(report::CaseReport {
        case: path.display().to_string(),
        checks,
    })
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let mut reports = vec![];
    if let Some(path) = &args.spec {
        reports.push(verify_spec(path, &args)?);
    } else if args.case == "all" {
        reports.push(verify_builtin(&SPHERE_CASE, &args)?);
        reports.push(verify_builtin(&MINIMAL_CASE, &args)?);
    } else {
        let case = builtin_case(&args.case).ok_or_else(|| {
            anyhow!(
                "unknown case '{}'; expected sphere-s6, minimal-r4 or all",
                args.case
            )
        })?;
        reports.push(verify_builtin(case, &args)?);
    }
    let text = report::render(&reports);
    std::fs::create_dir_all(&args.out)?;
    let path = args.out.join("report.txt");
    std::fs::write(&path, &text)?;
    let failures: usize = reports.iter().map(|r| r.failures()).sum();
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    println!(
        "wrote {} ({} checks, {} failures)",
        path.display(),
        checks,
        failures
    );
    if failures > 0 {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_export_mesh(args: ExportMeshArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&args.dataset)
        .with_context(|| format!("cannot read dataset {}", args.dataset.display()))?;
    let data = dataset::parse(&text)?;
    let grid = parse_grid(&args.grid, 0).map_err(|e| anyhow!("{e}"))?;
    let format = match args.format.as_str() {
        "obj" => mesh::MeshFormat::Obj,
        "off" => mesh::MeshFormat::Off,
        other => bail!("unsupported format: {other}"),
    };
    let projection = if args.projection == "pca" {
        mesh::Projection::Pca
    } else {
        let parts: Vec<usize> = args
            .projection
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .context("projection must be 'pca' or three indices like 1,2,3")?;
        if parts.len() != 3 || parts.iter().any(|k| *k < 1 || *k > 7) {
            bail!("projection indices must be three values in 1..=7");
        }
        mesh::Projection::Coords(parts[0], parts[1], parts[2])
    };
    let layer = mesh::select_layer(&data, args.lambda_index, &args.branch)?;
    let text = mesh::render(&layer, &grid, &projection, format, data.spec_hash)?;
    std::fs::write(&args.output, text)?;
    println!(
        "wrote {} ({} vertices, {} triangles)",
        args.output.display(),
        layer.len(),
        grid.triangles().len()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_golden(args: GoldenArgs) -> Result<ExitCode> {
    let case = builtin_case(&args.case).ok_or_else(|| {
        anyhow!(
            "unknown case '{}'; expected sphere-s6 or minimal-r4",
            args.case
        )
    })?;
    let pipeline = pipeline_for(case, Mode::Auto).map_err(|e| anyhow!("{e}"))?;
    let grid = default_grid();
    let lambdas = [C64::new(1.0, 0.0), C64::new(0.0, 1.0)];
    let checks = golden_residual(&pipeline, case, &grid, &lambdas).map_err(|e| anyhow!("{e}"))?;
    let worst = checks.iter().map(|c| c.value).fold(0.0, f64::max);
    let failures = checks.iter().filter(|c| !c.pass()).count();
    println!(
        "{}: {} samples, worst projective distance {:.3e} (tolerance {:.1e}), {} failures",
        case.name,
        checks.len(),
        worst,
        case.tolerance,
        failures
    );
    if failures > 0 {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}
