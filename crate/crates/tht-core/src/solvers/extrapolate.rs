//! Alternating data-enforcement extrapolation for the overlapping-interior
//! geometry.
//!
//! With trusted values of `F` on midpoints `m1..m2` and of `f` on nodes
//! `m3..m4`, the iteration alternates the discrete operator pair with
//! re-imposition of the known data:
//!
//! ```text
//! F(0)   = known F on its range, an initial guess elsewhere
//! f(0)   = known f on its range, inverse of F(0) elsewhere
//! F(k+1) = known F on its range, forward of f(k) elsewhere
//! f(k+1) = known f on its range, inverse of F(k+1) elsewhere
//! ```
//!
//! Each half-step is a projection in the discrete Plancherel geometry, so
//! the full-grid distance to any consistent completion never increases;
//! with ground truth supplied the report records that distance per
//! iteration. Known samples are copied back verbatim every iteration, never
//! recomputed.

use super::{DataCondition, KnownMask, SolverReport, Termination};
use crate::hilbert::{discrete_forward_with, discrete_inverse_with};
use crate::math;
use crate::series::{GridKind, Role, SampledFunction, TransformPlan};
use crate::{Error, Result};
use alloc::vec::Vec;

/// Fill for the transform samples outside the known range at iteration 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitialGuess {
    /// Zero everywhere outside the known range (the minimal-assumption
    /// default).
    #[default]
    Zero,
    /// Linear ramp from the known-edge value down to zero at the grid ends.
    LinearTaper,
}

/// Iteration controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtrapolateOptions {
    pub max_iters: usize,
    pub guess: InitialGuess,
    /// Stop once the data residual reaches this value (0 disables).
    pub residual_tol: f64,
    /// Declare a stall when the relative residual change stays below this
    /// over `stall_window` consecutive iterations.
    pub stall_rel_tol: f64,
    pub stall_window: usize,
}

impl Default for ExtrapolateOptions {
    fn default() -> Self {
        ExtrapolateOptions {
            max_iters: 30,
            guess: InitialGuess::default(),
            residual_tol: 0.0,
            stall_rel_tol: 1e-12,
            stall_window: 3,
        }
    }
}

/// Completed sample vectors plus diagnostics.
#[derive(Debug, Clone)]
pub struct Extrapolated {
    pub source: SampledFunction,
    pub transform: SampledFunction,
    pub report: SolverReport,
}

/// Runs the alternating completion.
///
/// `f_known` and `transform_known` are full-length vectors on the companion
/// CGL grids; only the entries inside the mask ranges are read. `truth`,
/// when given, holds exact source values on the full node grid and enables
/// the ground-truth error trace. The mask must be the overlapping-interior
/// condition with genuinely overlapping ranges; disjoint data is refused
/// because infinitely many pairs complete it consistently.
pub fn extrapolate(
    f_known: &SampledFunction,
    transform_known: &SampledFunction,
    mask: &KnownMask,
    truth: Option<&[f64]>,
    opts: &ExtrapolateOptions,
) -> Result<Extrapolated> {
    let n = mask.grid_len();
    check_input(f_known, Role::Source, GridKind::CglNodes, n)?;
    check_input(transform_known, Role::Transform, GridKind::CglMidpoints, n)?;
    if mask.condition() != DataCondition::OverlappingInterior {
        return Err(Error::InvalidMask {
            reason: "extrapolation requires the overlapping-interior condition",
        });
    }
    if !mask.ranges_overlap() {
        let (fr, tr) = (mask.source_range(), mask.transform_range());
        return Err(Error::NonOverlappingMask {
            f_start: fr.start,
            f_end: fr.end,
            transform_start: tr.start,
            transform_end: tr.end,
        });
    }
    if let Some(t) = truth {
        if t.len() != n {
            return Err(Error::SizeMismatch {
                context: "extrapolate truth vector",
                expected: n,
                got: t.len(),
            });
        }
    }

    let plan = TransformPlan::new(n)?;
    let f_range = mask.source_range();
    let t_range = mask.transform_range();
    let f_data = &f_known.values()[f_range.clone()];
    let t_data = &transform_known.values()[t_range.clone()];

    // Initialisation: guess-filled F, then inverse with f data enforced.
    let mut transform_vals = initial_transform(transform_known, &t_range, opts.guess, n);
    let mut f_vals = {
        let t_fn = transform_known.with_values(transform_vals.clone())?;
        let mut f = discrete_inverse_with(&plan, &t_fn)?.values().to_vec();
        f[f_range.clone()].copy_from_slice(f_data);
        f
    };

    let mut truth_error = Vec::new();
    let mut data_residual = Vec::new();
    if let Some(t) = truth {
        truth_error.push(distance(&f_vals, t));
    }

    let mut termination = Termination::MaxIters;
    let mut iterations = 0;
    let mut flat_count = 0usize;

    for _ in 0..opts.max_iters {
        let f_prev = f_vals.clone();

        // Forward, record the data mismatch, enforce known F.
        let f_fn = f_known.with_values(f_vals)?;
        let mut forward = discrete_forward_with(&plan, &f_fn)?.values().to_vec();
        let residual = masked_distance(&forward, t_data, t_range.start);
        forward[t_range.clone()].copy_from_slice(t_data);
        transform_vals = forward;

        // Inverse, enforce known f.
        let t_fn = transform_known.with_values(transform_vals.clone())?;
        let mut inverse = discrete_inverse_with(&plan, &t_fn)?.values().to_vec();
        inverse[f_range.clone()].copy_from_slice(f_data);
        f_vals = inverse;

        iterations += 1;
        data_residual.push(residual);
        if let Some(t) = truth {
            truth_error.push(distance(&f_vals, t));
        }

        if opts.residual_tol > 0.0 && residual <= opts.residual_tol {
            termination = Termination::Tolerance;
            break;
        }
        if f_vals == f_prev {
            // Exact fixed point; further iterations cannot move.
            termination = Termination::Stalled;
            break;
        }
        if data_residual.len() >= 2 {
            let prev = data_residual[data_residual.len() - 2];
            let change = math::abs(residual - prev) / prev.max(f64::MIN_POSITIVE);
            if change < opts.stall_rel_tol {
                flat_count += 1;
                if flat_count >= opts.stall_window {
                    termination = Termination::Stalled;
                    break;
                }
            } else {
                flat_count = 0;
            }
        }
    }

    let report = SolverReport {
        iterations,
        truth_error,
        data_residual,
        termination,
        condition_estimate: None,
    };
    Ok(Extrapolated {
        source: f_known.with_values(f_vals)?,
        transform: transform_known.with_values(transform_vals)?,
        report,
    })
}

fn check_input(s: &SampledFunction, role: Role, kind: GridKind, n: usize) -> Result<()> {
    if s.role() != role || s.grid().kind() != kind {
        return Err(Error::UnsupportedGrid {
            operation: "extrapolate",
            expected: kind.label(),
            got: s.grid().kind().label(),
        });
    }
    if s.len() != n {
        return Err(Error::SizeMismatch {
            context: "extrapolate grid size",
            expected: n,
            got: s.len(),
        });
    }
    Ok(())
}

fn initial_transform(
    known: &SampledFunction,
    range: &core::ops::Range<usize>,
    guess: InitialGuess,
    n: usize,
) -> Vec<f64> {
    let mut vals = alloc::vec![0.0; n];
    vals[range.clone()].copy_from_slice(&known.values()[range.clone()]);
    if guess == InitialGuess::LinearTaper {
        let left_edge = known.values()[range.start];
        for (m, value) in vals.iter_mut().enumerate().take(range.start) {
            *value = left_edge * (m + 1) as f64 / (range.start + 1) as f64;
        }
        let right_edge = known.values()[range.end - 1];
        let tail = n - range.end;
        for (k, value) in vals[range.end..].iter_mut().enumerate() {
            *value = right_edge * (tail - k) as f64 / (tail + 1) as f64;
        }
    }
    vals
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    math::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

fn masked_distance(full: &[f64], data: &[f64], offset: usize) -> f64 {
    math::sqrt(
        data.iter()
            .enumerate()
            .map(|(i, &d)| {
                let diff = full[offset + i] - d;
                diff * diff
            })
            .sum(),
    )
}
