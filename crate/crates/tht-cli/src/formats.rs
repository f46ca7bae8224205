//! Text serialisation of sample vectors and solver reports.
//!
//! Sample files carry one header line
//!
//! ```text
//! # kind=<CGL_NODE|CGL_MID|UNIFORM> N=<points> role=<f_SIDE|F_SIDE>
//! ```
//!
//! followed by one `index,abscissa,value` row per point, 17 significant
//! digits (f64 round-trips exactly). Report files carry
//! `iteration,ground_truth_error,data_residual` rows and a trailing
//! `key=value` block with the termination metadata.

use anyhow::{anyhow, bail, Context, Result};
use std::fmt::Write as _;
use std::path::Path;
use tht_core::series::{Grid, GridKind, Role, SampledFunction};
use tht_core::solvers::SolverReport;

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn render_samples(samples: &SampledFunction) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# kind={} N={} role={}",
        samples.grid().kind().label(),
        samples.len(),
        samples.role().label()
    );
    for (i, (&x, &v)) in samples
        .grid()
        .points()
        .iter()
        .zip(samples.values())
        .enumerate()
    {
        let _ = writeln!(out, "{},{},{}", i, fmt_f64(x), fmt_f64(v));
    }
    out
}

pub fn write_samples(path: &Path, samples: &SampledFunction) -> Result<()> {
    std::fs::write(path, render_samples(samples))
        .with_context(|| format!("writing samples file {}", path.display()))
}

fn parse_kind(label: &str) -> Result<GridKind> {
    match label {
        "CGL_NODE" => Ok(GridKind::CglNodes),
        "CGL_MID" => Ok(GridKind::CglMidpoints),
        "UNIFORM" => Ok(GridKind::Uniform),
        other => bail!("unknown grid kind `{other}`"),
    }
}

fn parse_role(label: &str) -> Result<Role> {
    match label {
        "f_SIDE" => Ok(Role::Source),
        "F_SIDE" => Ok(Role::Transform),
        other => bail!("unknown role `{other}`"),
    }
}

pub fn parse_samples(text: &str, origin: &str) -> Result<SampledFunction> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| anyhow!("{origin}: empty file"))?;
    let header = header
        .strip_prefix('#')
        .ok_or_else(|| anyhow!("{origin}:1: header must start with `#`"))?
        .trim();
    let mut kind = None;
    let mut n = None;
    let mut role = None;
    for field in header.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| anyhow!("{origin}:1: malformed header field `{field}`"))?;
        match key {
            "kind" => kind = Some(parse_kind(value).with_context(|| format!("{origin}:1"))?),
            "N" => {
                n = Some(
                    value
                        .parse::<usize>()
                        .with_context(|| format!("{origin}:1: bad N `{value}`"))?,
                )
            }
            "role" => role = Some(parse_role(value).with_context(|| format!("{origin}:1"))?),
            other => bail!("{origin}:1: unknown header key `{other}`"),
        }
    }
    let kind = kind.ok_or_else(|| anyhow!("{origin}:1: header missing `kind`"))?;
    let n = n.ok_or_else(|| anyhow!("{origin}:1: header missing `N`"))?;
    let role = role.ok_or_else(|| anyhow!("{origin}:1: header missing `role`"))?;

    let mut points = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let (i, x, v) = (fields.next(), fields.next(), fields.next());
        if fields.next().is_some() {
            bail!("{origin}:{line_no}: expected `index,abscissa,value`");
        }
        let (i, x, v) = match (i, x, v) {
            (Some(i), Some(x), Some(v)) => (i, x, v),
            _ => bail!("{origin}:{line_no}: expected `index,abscissa,value`"),
        };
        let i: usize = i
            .trim()
            .parse()
            .with_context(|| format!("{origin}:{line_no}: bad index `{i}`"))?;
        if i != points.len() {
            bail!(
                "{origin}:{line_no}: indices must be consecutive from 0 (got {i}, expected {})",
                points.len()
            );
        }
        points.push(
            x.trim()
                .parse::<f64>()
                .with_context(|| format!("{origin}:{line_no}: bad abscissa `{x}`"))?,
        );
        values.push(
            v.trim()
                .parse::<f64>()
                .with_context(|| format!("{origin}:{line_no}: bad value `{v}`"))?,
        );
    }
    if points.len() != n {
        bail!(
            "{origin}: header says N={n} but {} rows were found",
            points.len()
        );
    }
    let grid =
        Grid::from_parts(kind, points).map_err(|e| anyhow!("{origin}: invalid grid: {e}"))?;
    SampledFunction::new(grid, values, role).map_err(|e| anyhow!("{origin}: {e}"))
}

pub fn read_samples(path: &Path) -> Result<SampledFunction> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading samples file {}", path.display()))?;
    parse_samples(&text, &path.display().to_string())
}

pub fn render_report(report: &SolverReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "iteration,ground_truth_error,data_residual");
    let rows = report.truth_error.len().max(report.data_residual.len() + 1);
    for k in 0..rows {
        let truth = report
            .truth_error
            .get(k)
            .map(|&v| fmt_f64(v))
            .unwrap_or_else(|| "nan".into());
        let residual = if k == 0 {
            "nan".into()
        } else {
            report
                .data_residual
                .get(k - 1)
                .map(|&v| fmt_f64(v))
                .unwrap_or_else(|| "nan".into())
        };
        let _ = writeln!(out, "{k},{truth},{residual}");
    }
    let _ = writeln!(out, "iterations={}", report.iterations);
    let _ = writeln!(out, "termination={}", report.termination.label());
    let _ = writeln!(
        out,
        "condition_estimate={}",
        report
            .condition_estimate
            .map(fmt_f64)
            .unwrap_or_else(|| "nan".into())
    );
    out
}

pub fn write_report(path: &Path, report: &SolverReport) -> Result<()> {
    std::fs::write(path, render_report(report))
        .with_context(|| format!("writing report file {}", path.display()))
}
