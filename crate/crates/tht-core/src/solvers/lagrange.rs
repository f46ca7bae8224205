//! Explicit coefficient recovery by polynomial interpolation.
//!
//! Where the transform data lives strictly inside `(-1, 1)`, a finite series
//! of order `N` makes `F` a degree-`N` polynomial there: interpolate it at
//! `N + 1` points, read off monomial coefficients, convert to the T basis.
//! Where the data lives strictly outside, `F(s) = SUM c_n u^n` in the mapped
//! coordinate `u = s - sign(s) sqrt(s^2 - 1)`, so the mapped interpolation
//! yields the `c_n` directly.
//!
//! High-order polynomial interpolation is severely ill-conditioned; the
//! default order cap is deliberately small and the report carries a
//! condition estimate of the underlying Vandermonde system.

use super::{SolverReport, Termination};
use crate::linalg::{solve_least_squares, DenseMatrix};
use crate::series::ChebCoeffs;
use crate::{cheb, math, Error, Result};
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Guard rails for the interpolation solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LagrangeOptions {
    /// Largest accepted series order; raise explicitly to override the
    /// ill-posedness guard.
    pub order_cap: usize,
}

impl Default for LagrangeOptions {
    fn default() -> Self {
        LagrangeOptions { order_cap: 16 }
    }
}

/// `count` Chebyshev-distributed points inside `(lo, hi)`, increasing.
/// Preferred placement for the interpolation solvers (equispaced points
/// invite the Runge phenomenon).
pub fn chebyshev_points_in(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    (0..count)
        .rev()
        .map(|j| mid + half * math::cos((j as f64 + 0.5) * PI / count as f64))
        .collect()
}

/// Recovers order-`order` coefficients from `order + 1` transform samples
/// `(s_i, F(s_i))` taken strictly inside `(-1, 1)`.
///
/// Returns the coefficients together with a report whose `data_residual`
/// holds the interpolant's constant term `|b_0|` (zero for consistent data:
/// the expansion has no mode 0) and whose condition estimate reflects the
/// Vandermonde solve.
pub fn lagrange_invert_interior(
    samples: &[(f64, f64)],
    order: usize,
    opts: &LagrangeOptions,
) -> Result<(ChebCoeffs, SolverReport)> {
    check_common(samples, order, opts)?;
    for (i, &(s, _)) in samples.iter().enumerate() {
        if !(s.is_finite() && math::abs(s) < 1.0) {
            return Err(Error::Domain {
                name: "sample abscissa",
                value: s,
                requirement: "strictly inside (-1, 1) for the interior solver",
            });
        }
        check_distinct(samples, i, s)?;
    }

    let (monomial, condition) = interpolate_monomial(samples, order)?;
    let t_basis = cheb::monomial_to_cheb_t(&monomial);
    let residual = math::abs(t_basis[0]);
    let coeffs = ChebCoeffs::new(pad_to_order(&t_basis[1..], order))?;
    Ok((coeffs, direct_report(residual, condition)))
}

/// Recovers order-`order` coefficients from `order + 1` transform samples
/// taken strictly outside `[-1, 1]` (either side, or mixed), through the
/// conformal map to `u`.
pub fn lagrange_invert_exterior(
    samples: &[(f64, f64)],
    order: usize,
    opts: &LagrangeOptions,
) -> Result<(ChebCoeffs, SolverReport)> {
    check_common(samples, order, opts)?;
    let mut mapped = Vec::with_capacity(samples.len());
    for &(s, value) in samples {
        if !(s.is_finite() && math::abs(s) > 1.0) {
            return Err(Error::Domain {
                name: "sample abscissa",
                value: s,
                requirement: "strictly outside [-1, 1] for the exterior solver",
            });
        }
        let sign = if s < 0.0 { -1.0 } else { 1.0 };
        let u = 1.0 / (s + sign * math::sqrt(s * s - 1.0));
        mapped.push((u, value));
    }
    for (i, &(u, _)) in mapped.iter().enumerate() {
        check_distinct(&mapped, i, u)?;
    }

    // In u the series is already a monomial expansion with zero constant term.
    let (monomial, condition) = interpolate_monomial(&mapped, order)?;
    let residual = math::abs(monomial[0]);
    let coeffs = ChebCoeffs::new(pad_to_order(&monomial[1..], order))?;
    Ok((coeffs, direct_report(residual, condition)))
}

fn check_common(samples: &[(f64, f64)], order: usize, opts: &LagrangeOptions) -> Result<()> {
    if order == 0 || samples.len() != order + 1 {
        return Err(Error::SizeMismatch {
            context: "interpolation sample count (need order + 1 points)",
            expected: order + 1,
            got: samples.len(),
        });
    }
    if order > opts.order_cap {
        return Err(Error::OrderAboveCap {
            order,
            cap: opts.order_cap,
        });
    }
    if samples.iter().any(|&(_, v)| !v.is_finite()) {
        return Err(Error::NonFinite {
            context: "interpolation sample values",
        });
    }
    Ok(())
}

fn check_distinct(samples: &[(f64, f64)], i: usize, x: f64) -> Result<()> {
    for (j, &(other, _)) in samples.iter().enumerate().take(i) {
        if math::abs(other - x) < 1e2 * f64::EPSILON * math::abs(x).max(1.0) {
            return Err(Error::DuplicateAbscissae {
                first: j,
                second: i,
            });
        }
    }
    Ok(())
}

/// Interpolating polynomial through the samples, as monomial coefficients
/// `a_0..a_order`, via a QR-solved Vandermonde system.
fn interpolate_monomial(samples: &[(f64, f64)], order: usize) -> Result<(Vec<f64>, f64)> {
    let rows = samples.len();
    let cols = order + 1;
    let mut a = DenseMatrix::zeros(rows, cols);
    let mut b = Vec::with_capacity(rows);
    for (r, &(x, value)) in samples.iter().enumerate() {
        let mut power = 1.0;
        for c in 0..cols {
            a.set(r, c, power);
            power *= x;
        }
        b.push(value);
    }
    let out = solve_least_squares(&mut a, &mut b);
    if !out.deficient_columns.is_empty() {
        return Err(Error::RankDeficient {
            modes: out.deficient_columns.iter().map(|&c| c + 1).collect(),
        });
    }
    Ok((out.solution, out.condition_estimate))
}

fn pad_to_order(coeffs: &[f64], order: usize) -> Vec<f64> {
    let mut out = alloc::vec![0.0; order];
    out[..coeffs.len().min(order)].copy_from_slice(&coeffs[..coeffs.len().min(order)]);
    out
}

fn direct_report(residual: f64, condition: f64) -> SolverReport {
    SolverReport {
        iterations: 0,
        truth_error: Vec::new(),
        data_residual: alloc::vec![residual],
        termination: Termination::Tolerance,
        condition_estimate: Some(condition),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ChebCoeffs;

    #[test]
    fn linear_transform_interior() {
        // F(s) = s is the transform of the unit semicircle: c_1 = 1.
        let samples = [(0.2, 0.2), (0.3, 0.3)];
        let (c, report) =
            lagrange_invert_interior(&samples, 1, &LagrangeOptions::default()).unwrap();
        assert!((c.coeff(1) - 1.0).abs() < 1e-12);
        assert!(report.data_residual[0] < 1e-12);
        assert!(report.condition_estimate.unwrap() >= 1.0);
    }

    #[test]
    fn recovers_synthesized_coefficients_interior() {
        let truth = ChebCoeffs::new(alloc::vec![0.5, 0.0, 0.25]).unwrap();
        let points = chebyshev_points_in(0.1, 0.4, 4);
        let samples: Vec<(f64, f64)> = points
            .iter()
            .map(|&s| (s, truth.eval_transform(s)))
            .collect();
        let (c, _) = lagrange_invert_interior(&samples, 3, &LagrangeOptions::default()).unwrap();
        for n in 1..=3 {
            assert!(
                (c.coeff(n) - truth.coeff(n)).abs() < 1e-6,
                "mode {n}: {} vs {}",
                c.coeff(n),
                truth.coeff(n)
            );
        }
    }

    #[test]
    fn recovers_at_the_default_order_cap() {
        // Complete exact data on a wide window keeps the Vandermonde
        // solvable right up to the cap.
        let order = 16;
        let coeffs: Vec<f64> = (0..order).map(|i| 0.4 / (i + 1) as f64).collect();
        let truth = ChebCoeffs::new(coeffs).unwrap();
        let points = chebyshev_points_in(-0.85, 0.85, order + 1);
        let samples: Vec<(f64, f64)> = points
            .iter()
            .map(|&s| (s, truth.eval_transform(s)))
            .collect();
        let (c, _) =
            lagrange_invert_interior(&samples, order, &LagrangeOptions::default()).unwrap();
        for n in 1..=order {
            assert!(
                (c.coeff(n) - truth.coeff(n)).abs() < 1e-6,
                "mode {n}: {} vs {}",
                c.coeff(n),
                truth.coeff(n)
            );
        }
    }

    #[test]
    fn zero_data_gives_zero_coefficients() {
        let points = chebyshev_points_in(-0.4, 0.1, 5);
        let samples: Vec<(f64, f64)> = points.iter().map(|&s| (s, 0.0)).collect();
        let (c, _) = lagrange_invert_interior(&samples, 4, &LagrangeOptions::default()).unwrap();
        assert!(c.as_slice().iter().all(|&v| v.abs() < 1e-12));
        let ext: Vec<(f64, f64)> = chebyshev_points_in(1.5, 2.5, 5)
            .iter()
            .map(|&s| (s, 0.0))
            .collect();
        let (c, _) = lagrange_invert_exterior(&ext, 4, &LagrangeOptions::default()).unwrap();
        assert!(c.as_slice().iter().all(|&v| v.abs() < 1e-12));
    }

    #[test]
    fn exterior_decaying_branch() {
        // F(s) = s - sqrt(s^2 - 1) on (2, 3) is the unit pair outside.
        let points = chebyshev_points_in(2.0, 3.0, 2);
        let samples: Vec<(f64, f64)> = points
            .iter()
            .map(|&s| (s, s - (s * s - 1.0).sqrt()))
            .collect();
        let (c, report) =
            lagrange_invert_exterior(&samples, 1, &LagrangeOptions::default()).unwrap();
        assert!((c.coeff(1) - 1.0).abs() < 1e-10);
        assert!(report.data_residual[0] < 1e-10);
    }

    #[test]
    fn recovers_synthesized_coefficients_exterior() {
        let truth = ChebCoeffs::new(alloc::vec![1.0, -0.5]).unwrap();
        let points = chebyshev_points_in(1.5, 2.5, 3);
        let samples: Vec<(f64, f64)> = points
            .iter()
            .map(|&s| (s, truth.eval_transform(s)))
            .collect();
        let (c, _) = lagrange_invert_exterior(&samples, 2, &LagrangeOptions::default()).unwrap();
        assert!((c.coeff(1) - 1.0).abs() < 1e-8);
        assert!((c.coeff(2) + 0.5).abs() < 1e-8);
    }

    #[test]
    fn guards_fire() {
        let dup = [(0.2, 0.1), (0.2, 0.1)];
        assert!(matches!(
            lagrange_invert_interior(&dup, 1, &LagrangeOptions::default()),
            Err(Error::DuplicateAbscissae { .. })
        ));

        let points = chebyshev_points_in(-0.8, 0.8, 18);
        let samples: Vec<(f64, f64)> = points.iter().map(|&s| (s, s)).collect();
        assert!(matches!(
            lagrange_invert_interior(&samples, 17, &LagrangeOptions::default()),
            Err(Error::OrderAboveCap { .. })
        ));
        // explicit override
        assert!(lagrange_invert_interior(&samples, 17, &LagrangeOptions { order_cap: 32 }).is_ok());

        let outside = [(1.5, 0.0), (0.5, 0.0)];
        assert!(lagrange_invert_exterior(&outside, 1, &LagrangeOptions::default()).is_err());
        let inside = [(0.5, 0.0), (1.5, 0.0)];
        assert!(lagrange_invert_interior(&inside, 1, &LagrangeOptions::default()).is_err());
    }

    #[test]
    fn condition_estimate_grows_with_order() {
        let truth = ChebCoeffs::new(alloc::vec![0.3; 8]).unwrap();
        let mut last = 0.0;
        for order in 1..=8 {
            let points = chebyshev_points_in(0.1, 0.4, order + 1);
            let samples: Vec<(f64, f64)> = points
                .iter()
                .map(|&s| (s, truth.eval_transform(s)))
                .collect();
            let (_, report) =
                lagrange_invert_interior(&samples, order, &LagrangeOptions::default()).unwrap();
            let cond = report.condition_estimate.unwrap();
            assert!(cond > last, "order {order}: {cond} <= {last}");
            last = cond;
        }
    }
}
