//! Coefficient recovery from truncated data.
//!
//! Three strategies, in increasing tolerance of imperfect data:
//!
//! * [`lagrange_invert_interior`] / [`lagrange_invert_exterior`] - exact
//!   polynomial interpolation of transform samples, the explicit (and
//!   severely ill-conditioned) route; gated behind an order cap.
//! * [`minimize_cost`] - weighted least squares over all trusted samples of
//!   both sides, with arc-length weights inside the interval and optional
//!   ridge regularisation.
//! * [`extrapolate`] - alternating enforcement of the known data under the
//!   discrete forward/inverse operator pair, completing both sample vectors.

use crate::series::{Grid, GridKind};
use crate::{math, Error, Result};
use alloc::vec::Vec;
use core::ops::Range;

mod extrapolate;
mod lagrange;
mod minimize;

pub use extrapolate::{extrapolate, ExtrapolateOptions, Extrapolated, InitialGuess};
pub use lagrange::{
    chebyshev_points_in, lagrange_invert_exterior, lagrange_invert_interior, LagrangeOptions,
};
pub use minimize::minimize_cost;

/// The truncation geometry of a problem instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataCondition {
    /// f known on an interior interval, F known on an interior interval
    /// containing it.
    OverlappingInterior,
    /// F known only outside `[-1, 1]`.
    ExteriorOnly,
    /// f known on a one-sided interval, F known on an interval reaching past
    /// an endpoint.
    OneSided,
}

/// Index ranges, on the two companion CGL grids, where data is trusted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnownMask {
    n: usize,
    source_range: Range<usize>,
    transform_range: Range<usize>,
    condition: DataCondition,
}

impl KnownMask {
    /// `source_range` indexes the node grid (values of f), `transform_range`
    /// the midpoint grid (values of F); both must fit in `0..n`. Emptiness
    /// rules follow the condition: the overlapping-interior and one-sided
    /// geometries need data on both sides, exterior-only needs transform
    /// data only.
    pub fn new(
        n: usize,
        source_range: Range<usize>,
        transform_range: Range<usize>,
        condition: DataCondition,
    ) -> Result<KnownMask> {
        if source_range.end > n || transform_range.end > n {
            return Err(Error::InvalidMask {
                reason: "range extends past the grid",
            });
        }
        if source_range.start > source_range.end || transform_range.start > transform_range.end {
            return Err(Error::InvalidMask {
                reason: "range start exceeds its end",
            });
        }
        if transform_range.is_empty() {
            return Err(Error::InvalidMask {
                reason: "transform-side data range is empty",
            });
        }
        if source_range.is_empty() && condition != DataCondition::ExteriorOnly {
            return Err(Error::InvalidMask {
                reason: "source-side data range is empty for an interior condition",
            });
        }
        Ok(KnownMask {
            n,
            source_range,
            transform_range,
            condition,
        })
    }

    pub fn grid_len(&self) -> usize {
        self.n
    }

    pub fn source_range(&self) -> Range<usize> {
        self.source_range.clone()
    }

    pub fn transform_range(&self) -> Range<usize> {
        self.transform_range.clone()
    }

    pub fn condition(&self) -> DataCondition {
        self.condition
    }

    /// Whether the two index ranges intersect (as intervals on `0..n`).
    pub fn ranges_overlap(&self) -> bool {
        self.source_range.start < self.transform_range.end
            && self.transform_range.start < self.source_range.end
    }
}

/// Why a solver stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Iteration budget exhausted.
    MaxIters,
    /// Data residual stopped changing (relative change below the stall
    /// tolerance over the stall window, or an exact fixed point).
    Stalled,
    /// Residual reached the requested tolerance (direct solvers report this).
    Tolerance,
}

impl Termination {
    pub fn label(self) -> &'static str {
        match self {
            Termination::MaxIters => "max_iters",
            Termination::Stalled => "stalled",
            Termination::Tolerance => "tolerance",
        }
    }
}

/// Diagnostics common to every solver.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverReport {
    /// Iterations executed (0 for the direct solvers).
    pub iterations: usize,
    /// Full-grid l2 distance to ground truth per iteration, when truth was
    /// supplied; entry 0 is the state after initialisation.
    pub truth_error: Vec<f64>,
    /// Data-consistency residual per iteration (always recorded; a single
    /// entry for the direct solvers).
    pub data_residual: Vec<f64>,
    pub termination: Termination,
    /// Conditioning estimate of the solved linear system (interpolation and
    /// least-squares solvers only).
    pub condition_estimate: Option<f64>,
}

/// Quadrature weights for the least-squares cost: the arc length
/// `|acos(x + d/2) - acos(x - d/2)|` for samples inside `(-1, 1)` (endpoints
/// clamped, which keeps the weight finite at the interval ends) and the
/// plain spacing `d` outside.
#[derive(Debug, Clone, PartialEq)]
pub struct CostWeights {
    weights: Vec<f64>,
}

impl CostWeights {
    /// Weights for equally spaced abscissae with spacing `delta`.
    pub fn for_uniform_points(points: &[f64], delta: f64) -> CostWeights {
        let weights = points
            .iter()
            .map(|&x| {
                if math::abs(x) < 1.0 {
                    let hi = (x + 0.5 * delta).clamp(-1.0, 1.0);
                    let lo = (x - 0.5 * delta).clamp(-1.0, 1.0);
                    math::abs(math::acos(hi) - math::acos(lo))
                } else {
                    delta
                }
            })
            .collect();
        CostWeights { weights }
    }

    /// Weights matched to a grid: CGL grids are uniform in `theta`, so every
    /// sample carries exactly `pi / n`; uniform grids use the arc-length
    /// formula with the grid spacing.
    pub fn for_grid(grid: &Grid) -> CostWeights {
        match grid.kind() {
            GridKind::CglNodes | GridKind::CglMidpoints => CostWeights {
                weights: alloc::vec![
                    core::f64::consts::PI / grid.len() as f64;
                    grid.len()
                ],
            },
            GridKind::Uniform => {
                let delta = grid.uniform_spacing().unwrap_or(2.0 / grid.len() as f64);
                CostWeights::for_uniform_points(grid.points(), delta)
            }
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Grid;

    #[test]
    fn mask_validation() {
        assert!(KnownMask::new(16, 2..8, 1..12, DataCondition::OverlappingInterior).is_ok());
        assert!(KnownMask::new(16, 2..8, 1..20, DataCondition::OverlappingInterior).is_err());
        assert!(KnownMask::new(16, 2..2, 1..12, DataCondition::OverlappingInterior).is_err());
        assert!(KnownMask::new(16, 2..2, 1..12, DataCondition::ExteriorOnly).is_ok());
        assert!(KnownMask::new(16, 2..8, 4..4, DataCondition::OverlappingInterior).is_err());
    }

    #[test]
    fn overlap_detection() {
        let m = KnownMask::new(256, 64..192, 32..224, DataCondition::OverlappingInterior).unwrap();
        assert!(m.ranges_overlap());
        let disjoint =
            KnownMask::new(256, 0..75, 112..144, DataCondition::OverlappingInterior).unwrap();
        assert!(!disjoint.ranges_overlap());
    }

    #[test]
    fn cost_weights_positive_and_finite_at_ends() {
        let grid = Grid::uniform(64).unwrap();
        let w = CostWeights::for_grid(&grid);
        assert!(w.as_slice().iter().all(|&v| v.is_finite() && v > 0.0));
        // CGL grids carry the exact arc length.
        let cgl = CostWeights::for_grid(&Grid::cgl_nodes(32).unwrap());
        for &v in cgl.as_slice() {
            assert!((v - core::f64::consts::PI / 32.0).abs() < 1e-15);
        }
        // Outside the interval the weight is the plain spacing.
        let w = CostWeights::for_uniform_points(&[1.5, 2.5], 0.1);
        assert_eq!(w.as_slice(), &[0.1, 0.1]);
    }

    #[test]
    fn uniform_weights_sum_to_the_arc() {
        // Covering (-1, 1) evenly, the arc weights add up to pi.
        let grid = Grid::uniform(256).unwrap();
        let total: f64 = CostWeights::for_grid(&grid).as_slice().iter().sum();
        assert!((total - core::f64::consts::PI).abs() < 1e-12);
    }
}
