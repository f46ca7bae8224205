//! Chebyshev coefficient sequences, Chebyshev-Gauss-Lobatto grids, the
//! analysis/synthesis transforms between them, and weighted quadrature.
//!
//! Coefficients are indexed from `n = 1`: order-`N` data represents
//!
//! ```text
//! f(t) = sqrt(1 - t^2) SUM_{n=1..N} c_n U_{n-1}(t)      (the source side)
//! F(s) = SUM_{n=1..N} c_n Tt_n(s)                       (the transform side)
//! ```
//!
//! On the CGL node grid `t_m = cos(m pi / N)` the source side collapses to a
//! sine sum `f(t_m) = SUM c_n sin(m n pi / N)` and on the midpoint grid
//! `s_m = cos((m + 0.5) pi / N)` the transform side to a cosine sum
//! `F(s_m) = SUM c_n cos(n (m + 0.5) pi / N)`.
//!
//! Both discrete systems are blind to the top mode: `sin(m N pi / N)` and
//! `cos(N (m + 0.5) pi / N)` vanish identically, so analysis on an `N`-point
//! grid determines modes `1..N-1` and pins `c_N = 0`. The sine system
//! additionally ignores the `m = 0` row (the node at `t = 1`, where the
//! weighted basis vanishes), and the cosine system discards any constant
//! offset of the samples (a mode-0 component no transform of an
//! integrable-pair function can carry). Analysis followed by synthesis is
//! therefore the identity on that representable subspace, which is the
//! normalisation contract fixing the `2/N` factors below.

use crate::math;
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Default point count for the theta-midpoint quadrature rule.
pub const DEFAULT_QUAD_POINTS: usize = 2048;

/// Finite Chebyshev coefficient sequence `{c_n, 1 <= n <= N}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebCoeffs {
    // c[i] holds c_{i+1}.
    c: Vec<f64>,
}

impl ChebCoeffs {
    /// Wraps a coefficient vector whose element `i` is `c_{i+1}`.
    pub fn new(coeffs_from_c1: Vec<f64>) -> Result<Self> {
        if coeffs_from_c1.is_empty() {
            return Err(Error::SizeMismatch {
                context: "ChebCoeffs::new (order must be >= 1)",
                expected: 1,
                got: 0,
            });
        }
        if coeffs_from_c1.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "ChebCoeffs::new",
            });
        }
        Ok(ChebCoeffs { c: coeffs_from_c1 })
    }

    /// All-zero sequence of the given order.
    pub fn zeros(order: usize) -> Result<Self> {
        ChebCoeffs::new(vec![0.0; order.max(1)])
    }

    /// Sequence with a single non-zero entry `c_n = value` (`n` is 1-based).
    pub fn single(order: usize, n: usize, value: f64) -> Result<Self> {
        let mut c = ChebCoeffs::zeros(order)?;
        if n == 0 || n > c.order() {
            return Err(Error::SizeMismatch {
                context: "ChebCoeffs::single (mode index out of range)",
                expected: order,
                got: n,
            });
        }
        c.c[n - 1] = value;
        Ok(c)
    }

    /// Series order `N`.
    pub fn order(&self) -> usize {
        self.c.len()
    }

    /// `c_n` for 1-based `n`; zero beyond the stored order.
    pub fn coeff(&self, n: usize) -> f64 {
        debug_assert!(n >= 1, "coefficient indices start at n = 1");
        if n == 0 || n > self.c.len() {
            0.0
        } else {
            self.c[n - 1]
        }
    }

    /// Raw storage; element `i` is `c_{i+1}`.
    pub fn as_slice(&self) -> &[f64] {
        &self.c
    }

    /// Evaluates the source side `sqrt(1 - t^2) SUM c_n U_{n-1}(t)` by the
    /// forward recurrence; zero outside `[-1, 1]` (compact support).
    pub fn eval_source(&self, t: f64) -> f64 {
        if math::abs(t) >= 1.0 {
            return 0.0;
        }
        let mut acc = 0.0;
        let mut u_prev = 0.0; // U_{-1}
        let mut u_cur = 1.0; // U_0
        for &cn in &self.c {
            acc += cn * u_cur;
            let next = 2.0 * t * u_cur - u_prev;
            u_prev = u_cur;
            u_cur = next;
        }
        math::sqrt(1.0 - t * t) * acc
    }

    /// Evaluates the transform side `SUM c_n Tt_n(s)` anywhere on the line:
    /// the `T_n` recurrence inside `[-1, 1]`, accumulated powers of the
    /// decaying root outside.
    pub fn eval_transform(&self, s: f64) -> f64 {
        if math::abs(s) <= 1.0 {
            let mut acc = 0.0;
            let mut t_prev = 1.0; // T_0
            let mut t_cur = s; // T_1
            for &cn in &self.c {
                acc += cn * t_cur;
                let next = 2.0 * s * t_cur - t_prev;
                t_prev = t_cur;
                t_cur = next;
            }
            acc
        } else {
            let sign = if s < 0.0 { -1.0 } else { 1.0 };
            let root = 1.0 / (s + sign * math::sqrt(s * s - 1.0));
            let mut acc = 0.0;
            let mut power = 1.0;
            for &cn in &self.c {
                power *= root;
                acc += cn * power;
            }
            acc
        }
    }
}

/// Which abscissae a grid carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    /// CGL nodes `t_m = cos(m pi / N)`, m = 0..N-1 (decreasing).
    CglNodes,
    /// CGL midpoints `s_m = cos((m + 0.5) pi / N)`, m = 0..N-1 (decreasing).
    CglMidpoints,
    /// Cell midpoints of an even partition, `x_k = lo + (k + 0.5)(hi - lo)/N`
    /// (increasing); the default span `(-1, 1)` gives `x_k = (2k + 1 - N)/N`.
    Uniform,
}

impl GridKind {
    pub fn label(self) -> &'static str {
        match self {
            GridKind::CglNodes => "CGL_NODE",
            GridKind::CglMidpoints => "CGL_MID",
            GridKind::Uniform => "UNIFORM",
        }
    }
}

/// A named sampling grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    kind: GridKind,
    points: Vec<f64>,
}

impl Grid {
    pub fn cgl_nodes(n: usize) -> Result<Grid> {
        Grid::check_count(n)?;
        let points = (0..n)
            .map(|m| math::cos(m as f64 * PI / n as f64))
            .collect();
        Ok(Grid {
            kind: GridKind::CglNodes,
            points,
        })
    }

    pub fn cgl_midpoints(n: usize) -> Result<Grid> {
        Grid::check_count(n)?;
        let points = (0..n)
            .map(|m| math::cos((m as f64 + 0.5) * PI / n as f64))
            .collect();
        Ok(Grid {
            kind: GridKind::CglMidpoints,
            points,
        })
    }

    /// The display grid `x_k = (2k + 1 - N) / N` on `(-1, 1)`.
    pub fn uniform(n: usize) -> Result<Grid> {
        Grid::uniform_on(n, -1.0, 1.0)
    }

    /// Evenly spaced cell midpoints of `(lo, hi)`; the span may extend past
    /// `[-1, 1]` (transform-side data outside the interval lives on such
    /// grids).
    pub fn uniform_on(n: usize, lo: f64, hi: f64) -> Result<Grid> {
        Grid::check_count(n)?;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Domain {
                name: "lo..hi",
                value: lo,
                requirement: "finite interval with lo < hi",
            });
        }
        let step = (hi - lo) / n as f64;
        let points = (0..n).map(|k| lo + (k as f64 + 0.5) * step).collect();
        Ok(Grid {
            kind: GridKind::Uniform,
            points,
        })
    }

    /// Rebuilds a grid from stored abscissae (deserialisation path).
    /// Validates finiteness and strict monotonicity.
    pub fn from_parts(kind: GridKind, points: Vec<f64>) -> Result<Grid> {
        Grid::check_count(points.len())?;
        if points.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "Grid::from_parts",
            });
        }
        let increasing = points.windows(2).all(|w| w[0] < w[1]);
        let decreasing = points.windows(2).all(|w| w[0] > w[1]);
        if points.len() > 1 && !increasing && !decreasing {
            return Err(Error::Domain {
                name: "points",
                value: f64::NAN,
                requirement: "strictly monotone abscissae",
            });
        }
        Ok(Grid { kind, points })
    }

    fn check_count(n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::SizeMismatch {
                context: "grid size",
                expected: 1,
                got: 0,
            });
        }
        Ok(())
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn point(&self, i: usize) -> f64 {
        self.points[i]
    }

    /// Spacing between consecutive uniform points, if this is a uniform grid.
    pub fn uniform_spacing(&self) -> Option<f64> {
        match self.kind {
            GridKind::Uniform if self.points.len() >= 2 => Some(self.points[1] - self.points[0]),
            GridKind::Uniform => Some(2.0 / self.points.len() as f64),
            _ => None,
        }
    }
}

/// Which member of the pair a sample vector holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// Values of `f(t)` (the function being reconstructed).
    Source,
    /// Values of `F(s)` (its finite Hilbert transform).
    Transform,
}

impl Role {
    pub fn label(self) -> &'static str {
        match self {
            Role::Source => "f_SIDE",
            Role::Transform => "F_SIDE",
        }
    }
}

/// Values of one side of a pair on a named grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<f64>,
    role: Role,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<f64>, role: Role) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::SizeMismatch {
                context: "SampledFunction::new",
                expected: grid.len(),
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "SampledFunction::new",
            });
        }
        Ok(SampledFunction { grid, values, role })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Replaces the stored values, keeping grid and role.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        SampledFunction::new(self.grid.clone(), values, self.role)
    }
}

/// Precomputed sine/cosine tables for the discrete transforms on an
/// `N`-point CGL grid pair. Immutable once built and shareable across
/// threads; the solvers reuse one plan across iterations.
#[derive(Debug, Clone)]
pub struct TransformPlan {
    n: usize,
    /// sine[m * n + (k-1)] = sin(m k pi / N), modes k = 1..N-1.
    sine: Vec<f64>,
    /// cosine[m * n + (k-1)] = cos(k (m + 0.5) pi / N), modes k = 1..N-1.
    cosine: Vec<f64>,
}

impl TransformPlan {
    pub fn new(n: usize) -> Result<TransformPlan> {
        Grid::check_count(n)?;
        let modes = n.saturating_sub(1);
        let mut sine = vec![0.0; n * modes];
        let mut cosine = vec![0.0; n * modes];
        for m in 0..n {
            for k in 1..n {
                sine[m * modes + (k - 1)] = math::sin((m * k) as f64 * PI / n as f64);
                cosine[m * modes + (k - 1)] =
                    math::cos(k as f64 * (m as f64 + 0.5) * PI / n as f64);
            }
        }
        Ok(TransformPlan { n, sine, cosine })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn modes(&self) -> usize {
        self.n - 1
    }

    /// Sine synthesis onto the node grid: `out_m = SUM_k c_k sin(m k pi/N)`.
    pub fn synth_source_values(&self, c: &ChebCoeffs) -> Vec<f64> {
        let modes = self.modes();
        let take = c.order().min(modes);
        let mut out = vec![0.0; self.n];
        for (m, slot) in out.iter_mut().enumerate() {
            let row = &self.sine[m * modes..m * modes + take];
            *slot = row
                .iter()
                .zip(&c.as_slice()[..take])
                .map(|(s, c)| s * c)
                .sum();
        }
        out
    }

    /// Cosine synthesis onto the midpoint grid.
    pub fn synth_transform_values(&self, c: &ChebCoeffs) -> Vec<f64> {
        let modes = self.modes();
        let take = c.order().min(modes);
        let mut out = vec![0.0; self.n];
        for (m, slot) in out.iter_mut().enumerate() {
            let row = &self.cosine[m * modes..m * modes + take];
            *slot = row
                .iter()
                .zip(&c.as_slice()[..take])
                .map(|(s, c)| s * c)
                .sum();
        }
        out
    }

    /// Sine analysis from node samples: `c_k = (2/N) SUM_m f_m sin(m k pi/N)`
    /// for `k = 1..N-1`, `c_N = 0`.
    pub fn analyze_source_values(&self, f: &[f64]) -> Vec<f64> {
        let modes = self.modes();
        let mut c = vec![0.0; self.n];
        let scale = 2.0 / self.n as f64;
        for (k, slot) in c.iter_mut().take(modes).enumerate() {
            let mut acc = 0.0;
            for (m, &fm) in f.iter().enumerate() {
                acc += fm * self.sine[m * modes + k];
            }
            *slot = scale * acc;
        }
        c
    }

    /// Cosine analysis from midpoint samples; the sample mean (mode 0) is
    /// discarded, matching the `n >= 1` expansion.
    pub fn analyze_transform_values(&self, transform: &[f64]) -> Vec<f64> {
        let modes = self.modes();
        let mut c = vec![0.0; self.n];
        let scale = 2.0 / self.n as f64;
        for (k, slot) in c.iter_mut().take(modes).enumerate() {
            let mut acc = 0.0;
            for (m, &fm) in transform.iter().enumerate() {
                acc += fm * self.cosine[m * modes + k];
            }
            *slot = scale * acc;
        }
        c
    }
}

/// Evaluates the source series on a grid.
///
/// CGL node grids take the sine-sum route (exact for orders up to the grid
/// size); uniform grids are evaluated point by point with the `U`
/// recurrence. Midpoint grids are rejected: the source side lives on nodes.
pub fn synth_source(c: &ChebCoeffs, grid: &Grid) -> Result<SampledFunction> {
    let values = match grid.kind() {
        GridKind::CglMidpoints => {
            return Err(Error::UnsupportedGrid {
                operation: "synth_source",
                expected: "CGL_NODE or UNIFORM",
                got: "CGL_MID",
            });
        }
        GridKind::CglNodes if grid.len() >= c.order() => {
            TransformPlan::new(grid.len())?.synth_source_values(c)
        }
        _ => grid.points().iter().map(|&t| c.eval_source(t)).collect(),
    };
    SampledFunction::new(grid.clone(), values, Role::Source)
}

/// Evaluates the transform series on a grid; any kind is accepted and
/// abscissae may lie outside `[-1, 1]` (the extended branch applies there).
pub fn synth_transform(c: &ChebCoeffs, grid: &Grid) -> Result<SampledFunction> {
    let values = match grid.kind() {
        GridKind::CglMidpoints if grid.len() >= c.order() => {
            TransformPlan::new(grid.len())?.synth_transform_values(c)
        }
        _ => grid.points().iter().map(|&s| c.eval_transform(s)).collect(),
    };
    SampledFunction::new(grid.clone(), values, Role::Transform)
}

/// Recovers coefficients from complete source samples on CGL nodes.
/// Modes `1..N-1` are determined; `c_N` is pinned to zero.
pub fn analyze_source(samples: &SampledFunction) -> Result<ChebCoeffs> {
    if samples.role() != Role::Source {
        return Err(Error::UnsupportedGrid {
            operation: "analyze_source",
            expected: "f_SIDE samples",
            got: samples.role().label(),
        });
    }
    if samples.grid().kind() != GridKind::CglNodes {
        return Err(Error::UnsupportedGrid {
            operation: "analyze_source",
            expected: "CGL_NODE",
            got: samples.grid().kind().label(),
        });
    }
    let plan = TransformPlan::new(samples.len())?;
    ChebCoeffs::new(plan.analyze_source_values(samples.values()))
}

/// Recovers coefficients from complete transform samples on CGL midpoints.
/// Modes `1..N-1` are determined; `c_N` is pinned to zero.
pub fn analyze_transform(samples: &SampledFunction) -> Result<ChebCoeffs> {
    if samples.role() != Role::Transform {
        return Err(Error::UnsupportedGrid {
            operation: "analyze_transform",
            expected: "F_SIDE samples",
            got: samples.role().label(),
        });
    }
    if samples.grid().kind() != GridKind::CglMidpoints {
        return Err(Error::UnsupportedGrid {
            operation: "analyze_transform",
            expected: "CGL_MID",
            got: samples.grid().kind().label(),
        });
    }
    let plan = TransformPlan::new(samples.len())?;
    ChebCoeffs::new(plan.analyze_transform_values(samples.values()))
}

/// `INT_{-1}^{1} g(t) / sqrt(1 - t^2) dt` by the midpoint rule in
/// `theta = acos t`, which absorbs the weight exactly.
pub fn integrate_weighted<G: Fn(f64) -> f64>(g: G, points: usize) -> f64 {
    let h = PI / points as f64;
    let mut acc = 0.0;
    for j in 0..points {
        let theta = (j as f64 + 0.5) * h;
        acc += g(math::cos(theta));
    }
    acc * h
}

/// `INT_{-1}^{1} g(t) dt` by the same theta-midpoint rule.
pub fn integrate_plain<G: Fn(f64) -> f64>(g: G, points: usize) -> f64 {
    let h = PI / points as f64;
    let mut acc = 0.0;
    for j in 0..points {
        let theta = (j as f64 + 0.5) * h;
        acc += g(math::cos(theta)) * math::sin(theta);
    }
    acc * h
}

/// Plain and weighted L2 norms over `(-1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionNorms {
    /// `|| g ||_{L^2(-1,1)}`
    pub l2: f64,
    /// `|| g ||` against the weight `1 / sqrt(1 - t^2)`
    pub l2_weighted: f64,
}

/// Norms of an arbitrary evaluator over `(-1, 1)`.
pub fn norms_of<G: Fn(f64) -> f64>(g: G, points: usize) -> FunctionNorms {
    let l2sq = integrate_plain(|t| g(t) * g(t), points);
    let wsq = integrate_weighted(|t| g(t) * g(t), points);
    FunctionNorms {
        l2: math::sqrt(l2sq.max(0.0)),
        l2_weighted: math::sqrt(wsq.max(0.0)),
    }
}

/// Norms of the source series.
pub fn norms_of_source(c: &ChebCoeffs, points: usize) -> FunctionNorms {
    norms_of(|t| c.eval_source(t), points)
}

/// Norms of the transform series restricted to `(-1, 1)`.
pub fn norms_of_transform(c: &ChebCoeffs, points: usize) -> FunctionNorms {
    norms_of(|s| c.eval_transform(s), points)
}
