//! Experiment orchestration: phantom -> sampled data (optionally noisy) ->
//! solver -> plot-ready display files, report, and manifest.
//!
//! Display protocol: both truth and estimate are resampled onto the even
//! display grid through their CGL-grid coefficients and the polynomial
//! recurrences, never by per-point closed-form evaluation, so a full-mask
//! run reproduces its truth columns to rounding.

use crate::config::{ExperimentConfig, SolverKind};
use crate::formats;
use crate::logging;
use anyhow::{anyhow, Context, Result};
use std::path::PathBuf;
use tht_core::phantoms;
use tht_core::series::{
    analyze_source, analyze_transform, synth_source, synth_transform, ChebCoeffs, Grid,
    SampledFunction,
};
use tht_core::solvers::{
    chebyshev_points_in, extrapolate, lagrange_invert_exterior, lagrange_invert_interior,
    minimize_cost, DataCondition, ExtrapolateOptions, KnownMask, LagrangeOptions, SolverReport,
};

/// What a run produced, for callers that want the numbers as well as files.
#[derive(Debug)]
pub struct RunSummary {
    pub report: SolverReport,
    pub final_truth_error_abs: f64,
    pub final_truth_error_rel: f64,
    pub manifest_path: PathBuf,
    pub out_dir: PathBuf,
}

struct DisplayColumns {
    source_truth: SampledFunction,
    source_estimate: SampledFunction,
    transform_truth: SampledFunction,
    transform_estimate: SampledFunction,
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<RunSummary> {
    config.validate()?;
    let pair = phantoms::make_pair(&config.phantom_spec()?)
        .map_err(|e| anyhow!("building phantom: {e}"))?;
    let n = config.n;

    let node_grid = Grid::cgl_nodes(n).map_err(|e| anyhow!("{e}"))?;
    let mid_grid = Grid::cgl_midpoints(n).map_err(|e| anyhow!("{e}"))?;
    let f_truth = pair.sample_source(&node_grid).map_err(|e| anyhow!("{e}"))?;
    let transform_truth = pair
        .sample_transform(&mid_grid)
        .map_err(|e| anyhow!("{e}"))?;

    // Known data: the truth samples, perturbed when noise is requested. The
    // two sides draw from distinct streams (seed and seed + 1).
    let f_known =
        phantoms::add_noise(&f_truth, config.sigma, config.seed).map_err(|e| anyhow!("{e}"))?;
    let transform_known =
        phantoms::add_noise(&transform_truth, config.sigma, config.seed.wrapping_add(1))
            .map_err(|e| anyhow!("{e}"))?;

    let truth_coeffs = analyze_source(&f_truth).map_err(|e| anyhow!("{e}"))?;
    let transform_truth_coeffs = analyze_transform(&transform_truth).map_err(|e| anyhow!("{e}"))?;

    let (estimate_source_coeffs, estimate_transform_coeffs, report) = match config.solver {
        SolverKind::Extrapolate => {
            let mask = KnownMask::new(
                n,
                config.f_start..config.f_end,
                config.transform_start..config.transform_end,
                DataCondition::OverlappingInterior,
            )
            .map_err(|e| anyhow!("{e}"))?;
            let opts = ExtrapolateOptions {
                max_iters: config.iters,
                guess: config.guess,
                ..Default::default()
            };
            let truth_values = f_truth.values().to_vec();
            let out = extrapolate(
                &f_known,
                &transform_known,
                &mask,
                Some(&truth_values),
                &opts,
            )
            .map_err(|e| anyhow!("extrapolate: {e}"))?;
            logging::info(&format!(
                "extrapolate: {} iterations, termination {}",
                out.report.iterations,
                out.report.termination.label()
            ));
            let src = analyze_source(&out.source).map_err(|e| anyhow!("{e}"))?;
            let tr = analyze_transform(&out.transform).map_err(|e| anyhow!("{e}"))?;
            (src, tr, out.report)
        }
        SolverKind::Minimize => {
            let mask = KnownMask::new(
                n,
                config.f_start..config.f_end,
                config.transform_start..config.transform_end,
                DataCondition::OverlappingInterior,
            )
            .map_err(|e| anyhow!("{e}"))?;
            let (coeffs, report) = minimize_cost(
                Some(&f_known),
                Some(&transform_known),
                &mask,
                config.order,
                config.ridge,
            )
            .map_err(|e| anyhow!("minimize: {e}"))?;
            logging::info(&format!(
                "minimize: cost {:.3e}, condition estimate {:.3e}",
                report.data_residual[0],
                report.condition_estimate.unwrap_or(f64::NAN)
            ));
            (coeffs.clone(), coeffs, report)
        }
        SolverKind::Lagrange => {
            let points = chebyshev_points_in(config.sample_lo, config.sample_hi, config.order + 1);
            let noise = phantoms::gaussian_perturbations(
                points.len(),
                config.sigma,
                config.seed.wrapping_add(1),
            )
            .map_err(|e| anyhow!("{e}"))?;
            let samples: Vec<(f64, f64)> = points
                .iter()
                .zip(&noise)
                .map(|(&s, &dv)| (s, pair.eval_transform(s) + dv))
                .collect();
            let opts = LagrangeOptions {
                order_cap: config.order_cap,
            };
            let interior = config.sample_lo > -1.0 && config.sample_hi < 1.0;
            let (coeffs, report) = if interior {
                lagrange_invert_interior(&samples, config.order, &opts)
            } else {
                lagrange_invert_exterior(&samples, config.order, &opts)
            }
            .map_err(|e| anyhow!("lagrange: {e}"))?;
            logging::info(&format!(
                "lagrange: constant-term residual {:.3e}, condition estimate {:.3e}",
                report.data_residual[0],
                report.condition_estimate.unwrap_or(f64::NAN)
            ));
            (coeffs.clone(), coeffs, report)
        }
    };

    let columns = display_columns(
        config,
        &truth_coeffs,
        &transform_truth_coeffs,
        &estimate_source_coeffs,
        &estimate_transform_coeffs,
    )?;

    // Final error on the display grid, relative to the truth norm.
    let (abs_err, rel_err) = display_error(&columns);

    std::fs::create_dir_all(&config.out_dir)
        .with_context(|| format!("creating output directory {}", config.out_dir.display()))?;
    let file = |name: &str| config.out_dir.join(name);
    formats::write_samples(&file("source_truth.txt"), &columns.source_truth)?;
    formats::write_samples(&file("source_estimate.txt"), &columns.source_estimate)?;
    formats::write_samples(&file("transform_truth.txt"), &columns.transform_truth)?;
    formats::write_samples(&file("transform_estimate.txt"), &columns.transform_estimate)?;
    formats::write_report(&file("report.txt"), &report)?;

    let manifest_path = file("manifest.txt");
    let manifest = render_manifest(config, &report, abs_err, rel_err);
    std::fs::write(&manifest_path, manifest)
        .with_context(|| format!("writing manifest {}", manifest_path.display()))?;
    logging::debug(&format!("manifest at {}", manifest_path.display()));

    Ok(RunSummary {
        report,
        final_truth_error_abs: abs_err,
        final_truth_error_rel: rel_err,
        manifest_path,
        out_dir: config.out_dir.clone(),
    })
}

fn display_columns(
    config: &ExperimentConfig,
    truth_src: &ChebCoeffs,
    truth_tr: &ChebCoeffs,
    est_src: &ChebCoeffs,
    est_tr: &ChebCoeffs,
) -> Result<DisplayColumns> {
    let display = Grid::uniform(config.n).map_err(|e| anyhow!("{e}"))?;
    Ok(DisplayColumns {
        source_truth: synth_source(truth_src, &display).map_err(|e| anyhow!("{e}"))?,
        source_estimate: synth_source(est_src, &display).map_err(|e| anyhow!("{e}"))?,
        transform_truth: synth_transform(truth_tr, &display).map_err(|e| anyhow!("{e}"))?,
        transform_estimate: synth_transform(est_tr, &display).map_err(|e| anyhow!("{e}"))?,
    })
}

fn display_error(columns: &DisplayColumns) -> (f64, f64) {
    let mut diff_sq = 0.0;
    let mut norm_sq = 0.0;
    for (est, truth) in columns
        .source_estimate
        .values()
        .iter()
        .zip(columns.source_truth.values())
    {
        diff_sq += (est - truth) * (est - truth);
        norm_sq += truth * truth;
    }
    let abs = diff_sq.sqrt();
    let rel = if norm_sq > 0.0 {
        abs / norm_sq.sqrt()
    } else {
        abs
    };
    (abs, rel)
}

fn render_manifest(
    config: &ExperimentConfig,
    report: &SolverReport,
    abs_err: f64,
    rel_err: f64,
) -> String {
    use std::fmt::Write as _;
    let mut out = config.render();
    let _ = writeln!(out, "\n[result]");
    let _ = writeln!(out, "iterations = {}", report.iterations);
    let _ = writeln!(out, "termination = {}", report.termination.label());
    let _ = writeln!(
        out,
        "final_data_residual = {:.16e}",
        report.data_residual.last().copied().unwrap_or(f64::NAN)
    );
    if let Some(first) = report.truth_error.first() {
        let _ = writeln!(out, "initial_truth_error_abs = {first:.16e}");
    }
    if let Some(last) = report.truth_error.last() {
        let _ = writeln!(out, "final_truth_error_node_grid = {last:.16e}");
    }
    let _ = writeln!(out, "final_truth_error_abs = {abs_err:.16e}");
    let _ = writeln!(out, "final_truth_error_rel = {rel_err:.16e}");
    if let Some(cond) = report.condition_estimate {
        let _ = writeln!(out, "condition_estimate = {cond:.16e}");
    }
    out
}
