//! Weighted least-squares coefficient estimation.
//!
//! Minimises the discrete cost
//!
//! ```text
//! M(c) = SUM_k w_k |f(t_k) - sqrt(1 - t_k^2) SUM c_n U_{n-1}(t_k)|^2     (source data)
//!      + SUM_i w_i |F(s_i) - SUM c_n T_n(s_i)|^2                        (|s_i| < 1)
//!      + SUM_j d   |F(s_j) - SUM c_n u_j^n|^2                           (|s_j| > 1)
//! ```
//!
//! with arc-length weights `w = |acos(x + d/2) - acos(x - d/2)|` inside the
//! interval and the plain spacing outside; the exterior term uses the mapped
//! coordinate `u_j`, whose powers contract instead of exploding. Assembled
//! as a row-weighted linear system and solved by QR, never through the
//! normal equations.

use super::{CostWeights, KnownMask, SolverReport, Termination};
use crate::linalg::{solve_least_squares, DenseMatrix};
use crate::series::{ChebCoeffs, SampledFunction};
use crate::{math, Error, Result};
use alloc::vec::Vec;

struct CostRow {
    design: Vec<f64>,
    target: f64,
    weight: f64,
}

/// One assembled design row per trusted sample: weighted-U basis for source
/// samples, T basis for interior transform samples, contracted powers for
/// exterior ones.
fn design_row(order: usize, abscissa: f64, is_source: bool) -> Vec<f64> {
    let mut row = Vec::with_capacity(order);
    if is_source {
        let t = abscissa;
        if math::abs(t) >= 1.0 {
            row.resize(order, 0.0);
            return row;
        }
        let w = math::sqrt(1.0 - t * t);
        let mut u_prev = 0.0;
        let mut u_cur = 1.0;
        for _ in 0..order {
            row.push(w * u_cur);
            let next = 2.0 * t * u_cur - u_prev;
            u_prev = u_cur;
            u_cur = next;
        }
    } else if math::abs(abscissa) <= 1.0 {
        let s = abscissa;
        let mut t_prev = 1.0;
        let mut t_cur = s;
        for _ in 0..order {
            row.push(t_cur);
            let next = 2.0 * s * t_cur - t_prev;
            t_prev = t_cur;
            t_cur = next;
        }
    } else {
        let s = abscissa;
        let sign = if s < 0.0 { -1.0 } else { 1.0 };
        let u = 1.0 / (s + sign * math::sqrt(s * s - 1.0));
        let mut power = 1.0;
        for _ in 0..order {
            power *= u;
            row.push(power);
        }
    }
    row
}

/// Minimises the cost over the trusted samples selected by `mask`.
///
/// `f_known` supplies source samples (its grid indices inside
/// `mask.source_range()` are trusted) and `transform_known` transform
/// samples likewise; either may be `None` when the corresponding mask range
/// is empty. With `ridge > 0` the system is Tikhonov-regularised; with
/// `ridge = 0` a rank-deficient system is refused with the undetermined
/// modes named.
pub fn minimize_cost(
    f_known: Option<&SampledFunction>,
    transform_known: Option<&SampledFunction>,
    mask: &KnownMask,
    order: usize,
    ridge: f64,
) -> Result<(ChebCoeffs, SolverReport)> {
    if order == 0 {
        return Err(Error::SizeMismatch {
            context: "minimize_cost order",
            expected: 1,
            got: 0,
        });
    }
    if !(ridge.is_finite() && ridge >= 0.0) {
        return Err(Error::Domain {
            name: "ridge",
            value: ridge,
            requirement: "ridge >= 0",
        });
    }

    let mut rows: Vec<CostRow> = Vec::new();
    collect_rows(
        &mut rows,
        f_known,
        mask.source_range(),
        true,
        order,
        "f_known",
    )?;
    collect_rows(
        &mut rows,
        transform_known,
        mask.transform_range(),
        false,
        order,
        "transform_known",
    )?;

    let ridge_rows = if ridge > 0.0 { order } else { 0 };
    let mut a = DenseMatrix::zeros(rows.len() + ridge_rows, order);
    let mut b = alloc::vec![0.0; rows.len() + ridge_rows];
    for (r, row) in rows.iter().enumerate() {
        let scale = math::sqrt(row.weight);
        for (c, &v) in row.design.iter().enumerate() {
            a.set(r, c, scale * v);
        }
        b[r] = scale * row.target;
    }
    if ridge > 0.0 {
        let scale = math::sqrt(ridge);
        for k in 0..order {
            a.set(rows.len() + k, k, scale);
        }
    }

    let out = solve_least_squares(&mut a, &mut b);
    if !out.deficient_columns.is_empty() {
        return Err(Error::RankDeficient {
            modes: out.deficient_columns.iter().map(|&c| c + 1).collect(),
        });
    }

    // Cost at the minimiser, evaluated from the original (unscaled) terms.
    let cost: f64 = rows
        .iter()
        .map(|row| {
            let fit: f64 = row
                .design
                .iter()
                .zip(&out.solution)
                .map(|(d, c)| d * c)
                .sum();
            row.weight * (row.target - fit) * (row.target - fit)
        })
        .sum();

    let coeffs = ChebCoeffs::new(out.solution)?;
    let report = SolverReport {
        iterations: 0,
        truth_error: Vec::new(),
        data_residual: alloc::vec![cost],
        termination: Termination::Tolerance,
        condition_estimate: Some(out.condition_estimate),
    };
    Ok((coeffs, report))
}

fn collect_rows(
    rows: &mut Vec<CostRow>,
    data: Option<&SampledFunction>,
    range: core::ops::Range<usize>,
    is_source: bool,
    order: usize,
    which: &'static str,
) -> Result<()> {
    if range.is_empty() {
        return Ok(());
    }
    let data = data.ok_or(Error::InvalidMask {
        reason: "mask selects samples from a side that was not supplied",
    })?;
    if range.end > data.len() {
        return Err(Error::SizeMismatch {
            context: which,
            expected: range.end,
            got: data.len(),
        });
    }
    let weights = CostWeights::for_grid(data.grid());
    for i in range {
        let x = data.grid().point(i);
        rows.push(CostRow {
            design: design_row(order, x, is_source),
            target: data.values()[i],
            weight: weights.as_slice()[i],
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::HilbertPair;
    use crate::series::{synth_source, synth_transform, Grid, Role};
    use crate::solvers::{
        chebyshev_points_in, lagrange_invert_exterior, DataCondition, LagrangeOptions,
    };

    fn series_from(seed: u64, order: usize) -> ChebCoeffs {
        let mut state = seed;
        let coeffs: Vec<f64> = (0..order)
            .map(|_| crate::hilbert::next_unit(&mut state) - 0.5)
            .collect();
        ChebCoeffs::new(coeffs).unwrap()
    }

    #[test]
    fn full_data_recovers_the_pair() {
        let order = 8;
        let truth = ChebCoeffs::single(order, 1, 1.0).unwrap(); // unit semicircle
        let f_grid = Grid::uniform(128).unwrap();
        let s_grid = Grid::uniform(128).unwrap();
        let f = synth_source(&truth, &f_grid).unwrap();
        let transform = synth_transform(&truth, &s_grid).unwrap();
        let mask = KnownMask::new(128, 0..128, 0..128, DataCondition::OverlappingInterior).unwrap();
        let (c, report) = minimize_cost(Some(&f), Some(&transform), &mask, order, 0.0).unwrap();
        assert!((c.coeff(1) - 1.0).abs() < 1e-8);
        for n in 2..=order {
            assert!(c.coeff(n).abs() < 1e-8);
        }
        assert!(report.data_residual[0] < 1e-16);
    }

    #[test]
    fn exterior_only_data_matches_the_interpolation_solver() {
        let order = 4;
        let truth = series_from(5, order);
        let grid = Grid::uniform_on(32, 1.2, 2.8).unwrap();
        let pair = HilbertPair::from_series(truth.clone()).unwrap();
        let transform = pair.sample_transform(&grid).unwrap();
        let mask = KnownMask::new(32, 0..0, 0..32, DataCondition::ExteriorOnly).unwrap();
        let (c, _) = minimize_cost(None, Some(&transform), &mask, order, 0.0).unwrap();

        let points = chebyshev_points_in(1.2, 2.8, order + 1);
        let samples: Vec<(f64, f64)> = points
            .iter()
            .map(|&s| (s, truth.eval_transform(s)))
            .collect();
        let (c_lagrange, _) =
            lagrange_invert_exterior(&samples, order, &LagrangeOptions::default()).unwrap();

        for n in 1..=order {
            assert!((c.coeff(n) - truth.coeff(n)).abs() < 1e-8);
            assert!((c.coeff(n) - c_lagrange.coeff(n)).abs() < 1e-7);
        }
    }

    #[test]
    fn full_cgl_data_recovers_high_order_series() {
        // Complete untruncated data on the CGL grid pair: the stacked
        // sine/cosine design is orthogonal, so recovery holds at high order.
        let n = 256;
        let order = 255;
        let mut state = 21u64;
        let coeffs: Vec<f64> = (0..order)
            .map(|_| crate::hilbert::next_unit(&mut state) - 0.5)
            .collect();
        let truth = ChebCoeffs::new(coeffs).unwrap();
        let f = synth_source(&truth, &Grid::cgl_nodes(n).unwrap()).unwrap();
        let transform = synth_transform(&truth, &Grid::cgl_midpoints(n).unwrap()).unwrap();
        let mask = KnownMask::new(n, 0..n, 0..n, DataCondition::OverlappingInterior).unwrap();
        let (c, report) = minimize_cost(Some(&f), Some(&transform), &mask, order, 0.0).unwrap();
        for k in 1..=order {
            assert!(
                (c.coeff(k) - truth.coeff(k)).abs() < 1e-6,
                "mode {k}: {} vs {}",
                c.coeff(k),
                truth.coeff(k)
            );
        }
        assert!(report.condition_estimate.unwrap() < 1e3);
    }

    #[test]
    fn all_zero_data_gives_zero_cost_and_coefficients() {
        let n = 64;
        let f = SampledFunction::new(Grid::uniform(n).unwrap(), alloc::vec![0.0; n], Role::Source)
            .unwrap();
        let transform = SampledFunction::new(
            Grid::uniform(n).unwrap(),
            alloc::vec![0.0; n],
            Role::Transform,
        )
        .unwrap();
        let mask = KnownMask::new(n, 0..n, 0..n, DataCondition::OverlappingInterior).unwrap();
        let (c, report) = minimize_cost(Some(&f), Some(&transform), &mask, 6, 0.0).unwrap();
        assert!(c.as_slice().iter().all(|&v| v == 0.0));
        assert_eq!(report.data_residual[0], 0.0);
    }

    #[test]
    fn one_sided_data_mixes_interior_and_exterior_terms() {
        // f trusted near t = 1 (low node indices), F trusted on an interval
        // reaching past s = 1: the rows straddle the basis switch at |s| = 1
        // and the mapped-power term takes over outside.
        let order = 6;
        let truth = series_from(31, order);
        let n_nodes = 48;
        let f = synth_source(&truth, &Grid::cgl_nodes(n_nodes).unwrap()).unwrap();
        let pair = HilbertPair::from_series(truth.clone()).unwrap();
        let transform_grid = Grid::uniform_on(40, 0.5, 1.5).unwrap();
        let transform = pair.sample_transform(&transform_grid).unwrap();
        assert!(transform_grid.points().iter().any(|&s| s > 1.0));
        let mask = KnownMask::new(48, 0..12, 0..40, DataCondition::OneSided).unwrap();
        let (c, _) = minimize_cost(Some(&f), Some(&transform), &mask, order, 0.0).unwrap();
        for k in 1..=order {
            assert!(
                (c.coeff(k) - truth.coeff(k)).abs() < 1e-7,
                "mode {k}: {} vs {}",
                c.coeff(k),
                truth.coeff(k)
            );
        }
    }

    #[test]
    fn deficiency_names_the_missing_modes() {
        // One source sample cannot determine 4 modes.
        let n = 8;
        let truth = series_from(9, 4);
        let f = synth_source(&truth, &Grid::uniform(n).unwrap()).unwrap();
        let transform = synth_transform(&truth, &Grid::uniform(n).unwrap()).unwrap();
        let mask = KnownMask::new(n, 3..4, 4..5, DataCondition::OverlappingInterior).unwrap();
        let err = minimize_cost(Some(&f), Some(&transform), &mask, 4, 0.0);
        match err {
            Err(Error::RankDeficient { modes }) => assert!(!modes.is_empty()),
            other => panic!("expected rank deficiency, got {other:?}"),
        }
        // Ridge regularisation makes the same system solvable.
        assert!(minimize_cost(Some(&f), Some(&transform), &mask, 4, 1e-8).is_ok());
    }

    #[test]
    fn missing_side_is_reported() {
        let n = 8;
        let transform = synth_transform(&series_from(2, 3), &Grid::uniform(n).unwrap()).unwrap();
        let mask = KnownMask::new(n, 1..3, 0..n, DataCondition::OverlappingInterior).unwrap();
        assert!(matches!(
            minimize_cost(None, Some(&transform), &mask, 3, 0.0),
            Err(Error::InvalidMask { .. })
        ));
    }
}
