//! Batch verification runs for wavelet-frame constructions: extension
//! principle checks, dilation-domain fiber analysis, frame bounds and
//! perfect-reconstruction demonstrations, driven by declarative TOML configs.
//!
//! Exit codes: 0 pass, 1 failed verdict, 2 config error, 3 numeric warning
//! escalated.

mod config;
mod report;

use clap::{Args, Parser, Subcommand};
use config::{effective, ConfigError, Effective, Overrides, ReconstructMethodConfig, RunConfig};
use framelets::dilation::{fiber_frame_bounds, tight_residual, FiberSymbol, OnbConfig};
use framelets::extension::{
    dual_oep_verify, dual_pair_identity_check, oep_verify, uep_verify,
    VerificationReport,
};
use framelets::fiber::{fiber_vector, support_sigma, SpectralSupport};
use framelets::frame_engine::{
    default_probes, frame_bounds, quasi_affine, reconstruct, ReconstructMethod, SystemFlavor,
    WaveletSystemSpec,
};
use framelets::grid::Grid;
use framelets::signals::{apply_dyadic, bspline, CompactPiecewisePoly};
use report::{write_csv, Report};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "framelets", version, about = "wavelet frame construction and verification runs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Unitary extension principle check for a mask family.
    VerifyUep(RunArgs),
    /// Oblique extension principle (single-system version with Θ).
    VerifyOep(RunArgs),
    /// Dual-pair oblique extension principle (right-hand side 2Θ).
    DualOep(RunArgs),
    /// Function-space dual-pair telescoping and completeness probes.
    DualPair(RunArgs),
    /// Dilation-domain fiber matrices, tight residual and fiber bounds.
    Fiber(RunArgs),
    /// Frame-operator bounds on a truncated system.
    Bounds(RunArgs),
    /// Reconstruction through the frame operator.
    Reconstruct(RunArgs),
    /// Affine vs quasi-affine frame bounds and shift commutation.
    QuasiAffineCompare(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Declarative run configuration (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Directory for report.txt and CSV side files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override params.grid.
    #[arg(long)]
    grid: Option<usize>,
    /// Override params.trunc (bracket/fiber truncation K).
    #[arg(long)]
    trunc: Option<usize>,
    /// Override params.convention (unit|paper).
    #[arg(long)]
    convention: Option<String>,
    /// Override params.tol.
    #[arg(long)]
    tol: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args) = match &cli.command {
        Command::VerifyUep(a) => ("verify-uep", a),
        Command::VerifyOep(a) => ("verify-oep", a),
        Command::DualOep(a) => ("dual-oep", a),
        Command::DualPair(a) => ("dual-pair", a),
        Command::Fiber(a) => ("fiber", a),
        Command::Bounds(a) => ("bounds", a),
        Command::Reconstruct(a) => ("reconstruct", a),
        Command::QuasiAffineCompare(a) => ("quasi-affine-compare", a),
    };
    match run(name, args) {
        Ok(report) => {
            if report.emit(args.out.as_deref()).is_err() {
                eprintln!("error: cannot write report");
                return ExitCode::from(2);
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}

fn run(name: &str, args: &RunArgs) -> Result<Report, ConfigError> {
    let config = RunConfig::load(&args.config)?;
    let over = Overrides {
        grid: args.grid,
        trunc: args.trunc,
        tol: args.tol,
        convention: args.convention.clone(),
    };
    let eff = effective(&config, &over)?;
    match name {
        "verify-uep" => run_verify_uep(&config, &eff),
        "verify-oep" => run_verify_oep(&config, &eff),
        "dual-oep" => run_dual_oep(&config, &eff),
        "dual-pair" => run_dual_pair(&config, &eff),
        "fiber" => run_fiber(&config, &eff, args.out.as_deref()),
        "bounds" => run_bounds(&config, &eff),
        "reconstruct" => run_reconstruct(&config, &eff, args.out.as_deref()),
        "quasi-affine-compare" => run_quasi_affine(&config, &eff),
        _ => unreachable!(),
    }
}

fn base_report(name: &str, eff: &Effective) -> Result<(Report, Grid), ConfigError> {
    let mut rep = Report::new(name);
    rep.put("schema_config", 1);
    rep.put("convention", eff.convention);
    rep.put("grid", eff.grid);
    rep.put("trunc", eff.trunc);
    rep.put_f64("tol", eff.tol);
    let grid = Grid::new(eff.grid).map_err(|e| ConfigError(format!("{e}")))?;
    Ok((rep, grid))
}

/// σ(φ) for the verification: from the configured refinable function when
/// present, otherwise the full circle (box generator).
fn sigma_for(
    config: &RunConfig,
    grid: &Grid,
    trunc: usize,
    rep: &mut Report,
) -> Result<SpectralSupport, ConfigError> {
    let phi = match config.refinable_fn()? {
        Some(phi) => {
            rep.put("sigma.source", "refinable");
            phi
        }
        None => {
            rep.put("sigma.source", "full-circle");
            bspline(1).expect("order 1")
        }
    };
    support_sigma(&phi, grid, trunc, 1e-9).map_err(|e| ConfigError(format!("{e}")))
}

fn put_verification(rep: &mut Report, v: &VerificationReport) {
    rep.put_f64("residual.identity", v.max_residual_identity);
    rep.put_f64("residual.offdiag", v.max_residual_offdiag);
    rep.put("restricted_to_sigma", v.restricted_to_sigma);
    if let Some(d) = v.theta_limit_deviation {
        rep.put_f64("theta.limit_deviation", d);
    }
    if let Some(q) = v.integrability {
        rep.put_f64("theta.integrability", q);
    }
    if let Some(b) = v.bracket_form_residual {
        rep.put_f64("residual.bracket_form", b);
    }
    for w in &v.warnings {
        rep.warn(w.clone());
    }
    rep.set_verdict(v.verdict);
}

fn run_verify_uep(config: &RunConfig, eff: &Effective) -> Result<Report, ConfigError> {
    let (mut rep, grid) = base_report("verify-uep", eff)?;
    let family = config.mask_family(&grid, eff.trunc, eff.convention)?;
    rep.put("masks.wavelets", family.wavelets.len());
    let sigma = sigma_for(config, &grid, eff.trunc, &mut rep)?;
    let v = uep_verify(&family, &sigma, eff.tol).map_err(|e| ConfigError(format!("{e}")))?;
    put_verification(&mut rep, &v);
    Ok(rep)
}

fn run_verify_oep(config: &RunConfig, eff: &Effective) -> Result<Report, ConfigError> {
    let (mut rep, grid) = base_report("verify-oep", eff)?;
    let family = config.mask_family(&grid, eff.trunc, eff.convention)?;
    rep.put("masks.wavelets", family.wavelets.len());
    let phi = config
        .refinable_fn()?
        .ok_or_else(|| ConfigError("missing field: refinable (required for OEP)".into()))?;
    let theta = config.theta_symbol(&grid)?;
    let sigma = support_sigma(&phi, &grid, eff.trunc, 1e-9)
        .map_err(|e| ConfigError(format!("{e}")))?;
    let v = oep_verify(&family, &theta, &phi, &sigma, eff.trunc, eff.tol)
        .map_err(|e| ConfigError(format!("{e}")))?;
    put_verification(&mut rep, &v);
    Ok(rep)
}

fn run_dual_oep(config: &RunConfig, eff: &Effective) -> Result<Report, ConfigError> {
    let (mut rep, grid) = base_report("dual-oep", eff)?;
    let family = config.mask_family(&grid, eff.trunc, eff.convention)?;
    let dual = config.dual_mask_family(&grid, eff.convention)?;
    let theta = config.theta_symbol(&grid)?;
    let sigma = sigma_for(config, &grid, eff.trunc, &mut rep)?;
    // boundedness hypothesis pairs from functions when both sides are given
    let pairs: Vec<(CompactPiecewisePoly, CompactPiecewisePoly)> = Vec::new();
    let v = dual_oep_verify(
        &family,
        &dual,
        &theta,
        &sigma,
        &sigma,
        &pairs,
        eff.trunc,
        eff.bound_ceiling,
        eff.tol,
    )
    .map_err(|e| ConfigError(format!("{e}")))?;
    put_verification(&mut rep, &v);
    Ok(rep)
}

fn run_dual_pair(config: &RunConfig, eff: &Effective) -> Result<Report, ConfigError> {
    let (mut rep, _) = base_report("dual-pair", eff)?;
    let phi_list = if config.phis.is_empty() {
        vec![config
            .refinable_fn()?
            .ok_or_else(|| ConfigError("missing field: phis or refinable".into()))?]
    } else {
        let r = config.refinable_fn()?;
        config
            .phis
            .iter()
            .enumerate()
            .map(|(i, d)| d.build(r.as_ref(), &format!("phis[{i}]")))
            .collect::<Result<Vec<_>, _>>()?
    };
    let psi_list = config.wavelet_fns()?;
    if psi_list.is_empty() {
        return Err(ConfigError("missing field: wavelets".into()));
    }
    let r = config.refinable_fn()?;
    let phi_dual = if config.phis_dual.is_empty() {
        phi_list.clone()
    } else {
        config
            .phis_dual
            .iter()
            .enumerate()
            .map(|(i, d)| d.build(r.as_ref(), &format!("phis_dual[{i}]")))
            .collect::<Result<Vec<_>, _>>()?
    };
    let psi_dual = if config.wavelets_dual.is_empty() {
        psi_list.clone()
    } else {
        config
            .wavelets_dual
            .iter()
            .enumerate()
            .map(|(i, d)| d.build(r.as_ref(), &format!("wavelets_dual[{i}]")))
            .collect::<Result<Vec<_>, _>>()?
    };
    let tests = if config.test_functions.is_empty() {
        vec![bspline(2).expect("order 2")]
    } else {
        config
            .test_functions
            .iter()
            .enumerate()
            .map(|(i, d)| d.build(r.as_ref(), &format!("test_functions[{i}]")))
            .collect::<Result<Vec<_>, _>>()?
    };
    rep.put("level", eff.level);
    rep.put("test_functions", tests.len());
    let out = dual_pair_identity_check(
        &phi_list,
        &psi_list,
        &phi_dual,
        &psi_dual,
        &tests,
        eff.level,
        &eff.completeness_levels,
    )
    .map_err(|e| ConfigError(format!("{e}")))?;
    rep.put_f64("residual.telescoping", out.telescoping_residual);
    for (j, v) in &out.completeness {
        rep.put_f64(&format!("completeness.J{j}"), *v);
    }
    rep.set_verdict(out.telescoping_residual <= eff.tol);
    Ok(rep)
}

fn run_fiber(
    config: &RunConfig,
    eff: &Effective,
    out_dir: Option<&std::path::Path>,
) -> Result<Report, ConfigError> {
    let (mut rep, grid) = base_report("fiber", eff)?;
    let psis = config.wavelet_fns()?;
    if psis.is_empty() {
        return Err(ConfigError("missing field: wavelets".into()));
    }
    let onb = OnbConfig::radius(eff.radius);
    rep.put("radius", eff.radius);
    rep.put("omega_grid", eff.omega_grid);
    rep.put("translation_sum_radius", onb.translation_sum_radius);
    let symbol = FiberSymbol::assemble(&psis, &onb).map_err(|e| ConfigError(format!("{e}")))?;
    rep.put_f64("tail_estimate", symbol.tail_estimate);
    rep.put_f64("residual.hermitian", symbol.hermitian_residual());
    let mut verdict = true;
    if let Some(bound) = eff.bound {
        let tr = tight_residual(&psis, bound, eff.omega_grid, &onb)
            .map_err(|e| ConfigError(format!("{e}")))?;
        rep.put_f64("bound", bound);
        rep.put_f64("residual.tight", tr.max_abs);
        rep.put_f64("residual.sigma_coefficients", tr.sigma_residual);
        for w in &tr.warnings {
            rep.warn(w.clone());
        }
        verdict = tr.max_abs <= eff.tol.max(0.05);
    }
    let fb = fiber_frame_bounds(&psis, eff.omega_grid, &onb, (eff.radius / 2).max(1) as i64)
        .map_err(|e| ConfigError(format!("{e}")))?;
    rep.put_f64("bounds.upper", fb.upper);
    rep.put_f64("bounds.lower", fb.lower);
    rep.put("bounds.well_resolved_radius", fb.well_resolved_radius);
    if let Some(dir) = out_dir {
        let labels = symbol.labels().to_vec();
        let mut rows = Vec::new();
        for &(s, l) in &labels {
            for &(s2, l2) in &labels {
                for sigma in -onb.sigma_radius..=onb.sigma_radius {
                    let c = symbol.sigma_coefficient((s, l), (s2, l2), sigma);
                    if c.norm() > 1e-14 {
                        rows.push(format!("{s},{l},{s2},{l2},{sigma},{},{}", c.re, c.im));
                    }
                }
            }
        }
        write_csv(dir, "sigma_coefficients.csv", "s,l,s2,l2,sigma,re,im", rows.into_iter())
            .map_err(|e| ConfigError(format!("cannot write CSV: {e}")))?;
        // fiber dump of the refinable function when present: (θ, k, re, im)
        if let Some(phi) = config.refinable_fn()? {
            let mut rows = Vec::new();
            for t in grid.points() {
                let v = fiber_vector(&phi, t, eff.trunc).map_err(|e| ConfigError(format!("{e}")))?;
                for k in -(eff.trunc as i64)..=(eff.trunc as i64) {
                    let e = v.entry(k);
                    rows.push(format!("{t},{k},{},{}", e.re, e.im));
                }
            }
            write_csv(dir, "fiber_dump.csv", "theta,k,re,im", rows.into_iter())
                .map_err(|e| ConfigError(format!("cannot write CSV: {e}")))?;
        }
    }
    rep.set_verdict(verdict);
    Ok(rep)
}

fn system_from_config(config: &RunConfig, eff: &Effective) -> Result<WaveletSystemSpec, ConfigError> {
    let psis = config.wavelet_fns()?;
    if psis.is_empty() {
        return Err(ConfigError("missing field: wavelets".into()));
    }
    let coarse = match config.refinable_fn()? {
        Some(phi) => vec![phi],
        None => Vec::new(),
    };
    Ok(WaveletSystemSpec {
        generators: psis,
        coarse_generators: coarse,
        scale_min: -eff.scale_radius,
        scale_max: eff.scale_radius,
        window: config.window()?,
        flavor: SystemFlavor::Affine,
    })
}

fn put_bounds(rep: &mut Report, prefix: &str, fb: &framelets::frame_engine::FrameBounds) {
    rep.put_f64(&format!("{prefix}.lower"), fb.lower);
    rep.put_f64(&format!("{prefix}.upper"), fb.upper);
    rep.put(&format!("{prefix}.probes"), fb.probe_count);
    rep.put(&format!("{prefix}.converged"), fb.converged);
    for w in &fb.warnings {
        rep.warn(w.clone());
    }
}

fn run_bounds(config: &RunConfig, eff: &Effective) -> Result<Report, ConfigError> {
    let (mut rep, _) = base_report("bounds", eff)?;
    let spec = system_from_config(config, eff)?;
    rep.put("scale_radius", eff.scale_radius);
    rep.put("window", format!("[{}, {}]", spec.window.0, spec.window.1));
    rep.put("probes", eff.probes);
    rep.put("probe_seed", eff.probe_seed);
    let probes = default_probes(&spec, eff.probes, eff.probe_seed);
    // the compressed operator often has near-continuous spectrum; 1e−6
    // resolves bounds far below the tolerances compared against
    let fb = frame_bounds(&spec, &probes, eff.max_iter, eff.tol.max(1e-6))
        .map_err(|e| ConfigError(format!("{e}")))?;
    put_bounds(&mut rep, "bounds", &fb);
    rep.set_verdict(fb.lower > 0.0 && fb.upper.is_finite());
    Ok(rep)
}

fn run_reconstruct(
    config: &RunConfig,
    eff: &Effective,
    out_dir: Option<&std::path::Path>,
) -> Result<Report, ConfigError> {
    let (mut rep, _) = base_report("reconstruct", eff)?;
    let spec = system_from_config(config, eff)?;
    let rc = config
        .reconstruct
        .as_ref()
        .ok_or_else(|| ConfigError("missing field: reconstruct".into()))?;
    let r = config.refinable_fn()?;
    let input = rc.input.build(r.as_ref(), "reconstruct.input")?;
    let method = match rc.method {
        ReconstructMethodConfig::Tight => {
            let bound = eff.bound.ok_or_else(|| {
                ConfigError("missing field: params.bound (required for method = \"tight\")".into())
            })?;
            ReconstructMethod::TightFrame { bound }
        }
        ReconstructMethodConfig::CanonicalDual => {
            ReconstructMethod::CanonicalDual { max_iter: eff.max_iter }
        }
    };
    let out = reconstruct(&input, &spec, method, eff.tol)
        .map_err(|e| ConfigError(format!("{e}")))?;
    rep.put_f64("relative_error", out.relative_error);
    rep.put("iterations", out.iterations);
    for w in &out.warnings {
        rep.warn(w.clone());
    }
    if let Some(dir) = out_dir {
        let (a, b) = input.support_f64().unwrap_or((0.0, 1.0));
        let n = 512usize;
        let rows = (0..=n).map(|i| {
            let x = a + (b - a) * i as f64 / n as f64;
            format!("{x},{},{}", input.eval(x), out.result.eval(x))
        });
        write_csv(dir, "reconstruction.csv", "x,input,reconstruction", rows)
            .map_err(|e| ConfigError(format!("cannot write CSV: {e}")))?;
    }
    rep.set_verdict(out.relative_error <= eff.tol);
    Ok(rep)
}

fn run_quasi_affine(config: &RunConfig, eff: &Effective) -> Result<Report, ConfigError> {
    let (mut rep, _) = base_report("quasi-affine-compare", eff)?;
    let spec = system_from_config(config, eff)?;
    let quasi = quasi_affine(&spec).map_err(|e| ConfigError(format!("{e}")))?;
    // mean-balanced probes p = q − Tq: the omitted coarse tails of the two
    // systems weigh the constant direction differently, which is a
    // truncation artifact rather than a property of the systems
    let probes: Vec<CompactPiecewisePoly> = default_probes(&spec, eff.probes, eff.probe_seed)
        .into_iter()
        .map(|q| q.sub(&apply_dyadic(&q, 0, 1)))
        .collect();
    let affine_b = frame_bounds(&spec, &probes, eff.max_iter, eff.tol.max(1e-6))
        .map_err(|e| ConfigError(format!("{e}")))?;
    let quasi_b = frame_bounds(&quasi, &probes, eff.max_iter, eff.tol.max(1e-6))
        .map_err(|e| ConfigError(format!("{e}")))?;
    put_bounds(&mut rep, "bounds.affine", &affine_b);
    put_bounds(&mut rep, "bounds.quasi", &quasi_b);
    let gap = (affine_b.lower - quasi_b.lower)
        .abs()
        .max((affine_b.upper - quasi_b.upper).abs());
    rep.put_f64("bounds.gap", gap);
    // shift commutation of the quasi-affine frame operator on an interior probe
    let p = &probes[0];
    let shifted = apply_dyadic(p, 0, 1);
    let mut commutation = f64::NAN;
    if shifted.support().map_or(false, |(_, b)| b <= quasi.window.1) {
        let left = framelets::frame_engine::frame_apply(&shifted, &quasi)
            .map_err(|e| ConfigError(format!("{e}")))?;
        let right = apply_dyadic(
            &framelets::frame_engine::frame_apply(p, &quasi)
                .map_err(|e| ConfigError(format!("{e}")))?,
            0,
            1,
        );
        commutation = left.sub(&right).norm() / p.norm();
        rep.put_f64("residual.shift_commutation", commutation);
    } else {
        rep.warn("first probe too close to the window edge for the commutation check");
    }
    rep.set_verdict(gap <= 0.05 && (commutation.is_nan() || commutation <= eff.tol.max(1e-8)));
    Ok(rep)
}
