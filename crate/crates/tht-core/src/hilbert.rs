//! The finite Hilbert transform and its inversion.
//!
//! On the series representation the forward transform costs nothing: the
//! transform of `sqrt(1 - t^2) U_{n-1}(t)` is `Tt_n(s)` on the whole line,
//! so a coefficient sequence is reinterpreted from the weighted-U basis to
//! the extended-T basis. The discrete operator pair moves complete sample
//! vectors between the two CGL grids through that identity:
//!
//! ```text
//! forward:  f on nodes     -> analyze_source    -> synth_transform on midpoints
//! inverse:  F on midpoints -> analyze_transform -> synth_source on nodes
//! ```
//!
//! `pv_oracle` is the independent ground truth: direct principal-value
//! quadrature of the defining integral, used to certify everything else.

use crate::math;
use crate::series::{ChebCoeffs, Grid, GridKind, Role, SampledFunction, TransformPlan};
use crate::{Error, Result};
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Default point count of the oracle's theta-midpoint quadrature.
pub const DEFAULT_ORACLE_POINTS: usize = 4096;

/// Largest accepted cosh weight; `cosh(300)` is within an order of magnitude
/// of the f64 overflow threshold, leaving headroom for the products formed
/// inside the transform.
pub const MAX_COSH_MU: f64 = 300.0;

/// Direct principal-value quadrature of `(1/pi) PV INT f(t)/(s - t) dt`
/// with the default resolution.
pub fn pv_oracle<F: Fn(f64) -> f64>(f: F, s: f64) -> Result<f64> {
    pv_oracle_with(f, s, DEFAULT_ORACLE_POINTS)
}

/// Direct principal-value quadrature with an explicit point count.
///
/// Interior points use singularity subtraction,
///
/// ```text
/// (1/pi) INT (f(t) - f(s))/(s - t) dt + (f(s)/pi) ln((1+s)/(1-s)),
/// ```
///
/// with the remaining integral evaluated by the midpoint rule in
/// `theta = acos t`; exterior points need no subtraction. The endpoints
/// `s = +-1` are rejected (logarithmic singularity).
pub fn pv_oracle_with<F: Fn(f64) -> f64>(f: F, s: f64, points: usize) -> Result<f64> {
    if !s.is_finite() || math::abs(s) == 1.0 {
        return Err(Error::Domain {
            name: "s",
            value: s,
            requirement: "finite and not exactly +-1",
        });
    }
    let h = PI / points as f64;
    if math::abs(s) < 1.0 {
        let fs = f(s);
        let mut acc = 0.0;
        for j in 0..points {
            let theta = (j as f64 + 0.5) * h;
            let t = math::cos(theta);
            acc += (f(t) - fs) / (s - t) * math::sin(theta);
        }
        Ok(acc * h / PI + fs / PI * math::ln((1.0 + s) / (1.0 - s)))
    } else {
        let mut acc = 0.0;
        for j in 0..points {
            let theta = (j as f64 + 0.5) * h;
            let t = math::cos(theta);
            acc += f(t) / (s - t) * math::sin(theta);
        }
        Ok(acc * h / PI)
    }
}

/// Forward finite Hilbert transform on coefficients.
///
/// The same numbers serve both sides; this re-tags them so the result is
/// evaluated through the extended-T basis (`synth_transform`,
/// `eval_transform`).
pub fn fht_forward(c: &ChebCoeffs) -> ChebCoeffs {
    c.clone()
}

/// Discrete forward operator: complete source samples on CGL nodes to
/// transform samples on the companion midpoint grid.
pub fn discrete_forward(f: &SampledFunction) -> Result<SampledFunction> {
    let plan = TransformPlan::new(f.len())?;
    discrete_forward_with(&plan, f)
}

/// Discrete inverse operator: complete transform samples on CGL midpoints to
/// source samples on the companion node grid. This is the spectral
/// realisation of the explicit inversion integral
/// `f(t) = (1/pi) PV INT F(s) sqrt((1-t^2)/(1-s^2)) / (s-t) ds`.
pub fn discrete_inverse(transform: &SampledFunction) -> Result<SampledFunction> {
    let plan = TransformPlan::new(transform.len())?;
    discrete_inverse_with(&plan, transform)
}

/// Inversion-formula entry point; identical to [`discrete_inverse`].
pub fn fht_inverse_formula(transform: &SampledFunction) -> Result<SampledFunction> {
    discrete_inverse(transform)
}

/// Forward operator reusing a prebuilt plan (the iteration workhorse).
pub fn discrete_forward_with(plan: &TransformPlan, f: &SampledFunction) -> Result<SampledFunction> {
    check_samples(
        f,
        Role::Source,
        GridKind::CglNodes,
        plan.len(),
        "discrete_forward",
    )?;
    let coeffs = plan.analyze_source_values(f.values());
    let c = ChebCoeffs::new(coeffs)?;
    let grid = Grid::cgl_midpoints(plan.len())?;
    SampledFunction::new(grid, plan.synth_transform_values(&c), Role::Transform)
}

/// Inverse operator reusing a prebuilt plan.
pub fn discrete_inverse_with(
    plan: &TransformPlan,
    transform: &SampledFunction,
) -> Result<SampledFunction> {
    check_samples(
        transform,
        Role::Transform,
        GridKind::CglMidpoints,
        plan.len(),
        "discrete_inverse",
    )?;
    let coeffs = plan.analyze_transform_values(transform.values());
    let c = ChebCoeffs::new(coeffs)?;
    let grid = Grid::cgl_nodes(plan.len())?;
    SampledFunction::new(grid, plan.synth_source_values(&c), Role::Source)
}

fn check_samples(
    s: &SampledFunction,
    role: Role,
    kind: GridKind,
    n: usize,
    operation: &'static str,
) -> Result<()> {
    if s.role() != role {
        return Err(Error::UnsupportedGrid {
            operation,
            expected: role.label(),
            got: s.role().label(),
        });
    }
    if s.grid().kind() != kind {
        return Err(Error::UnsupportedGrid {
            operation,
            expected: kind.label(),
            got: s.grid().kind().label(),
        });
    }
    if s.len() != n {
        return Err(Error::SizeMismatch {
            context: "discrete operator grid size",
            expected: n,
            got: s.len(),
        });
    }
    Ok(())
}

/// How a pair came to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Closed-form phantom with analytically known transform.
    AnalyticPhantom,
    /// Built from a finite coefficient sequence.
    Synthesized,
}

#[derive(Debug, Clone)]
enum PairForm {
    /// `f(t) = sqrt(h^2 - (t - c)^2)` on its support, with transform
    /// `(s - c)` inside the support and the decaying branch outside.
    Semicircle {
        center: f64,
        halfwidth: f64,
    },
    Series(ChebCoeffs),
}

/// A matched `(f, F)` pair, evaluable anywhere, certified against the
/// quadrature oracle on construction.
#[derive(Debug, Clone)]
pub struct HilbertPair {
    form: PairForm,
    provenance: Provenance,
}

/// Certification parameters: spot-check points stay this far away from the
/// support edges (the oracle's midpoint rule converges slowly across an
/// interior sqrt-cusp) and use a finer-than-default quadrature so the
/// oracle's own error sits well under the certification tolerance.
const CERT_TOLERANCE: f64 = 1e-6;
const CERT_EDGE_MARGIN: f64 = 0.05;
const CERT_QUAD_POINTS: usize = 65536;

impl HilbertPair {
    /// Pair built from closed-form semicircle geometry; used by `phantoms`.
    pub(crate) fn semicircle(center: f64, halfwidth: f64) -> Result<HilbertPair> {
        if !(halfwidth > 0.0 && halfwidth.is_finite() && center.is_finite()) {
            return Err(Error::PhantomGeometry {
                reason: "halfwidth must be positive and finite",
            });
        }
        if math::abs(center) + halfwidth > 1.0 {
            return Err(Error::PhantomGeometry {
                reason: "support must be contained in [-1, 1]",
            });
        }
        let pair = HilbertPair {
            form: PairForm::Semicircle { center, halfwidth },
            provenance: Provenance::AnalyticPhantom,
        };
        pair.certify()?;
        Ok(pair)
    }

    /// Pair synthesized from a finite coefficient sequence.
    pub fn from_series(c: ChebCoeffs) -> Result<HilbertPair> {
        let pair = HilbertPair {
            form: PairForm::Series(c),
            provenance: Provenance::Synthesized,
        };
        pair.certify()?;
        Ok(pair)
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// `f(t)`; zero outside the support.
    pub fn eval_source(&self, t: f64) -> f64 {
        match &self.form {
            PairForm::Semicircle { center, halfwidth } => {
                let x = t - center;
                let inside = math::abs(x) <= *halfwidth;
                if inside {
                    math::sqrt((halfwidth * halfwidth - x * x).max(0.0))
                } else {
                    0.0
                }
            }
            PairForm::Series(c) => c.eval_source(t),
        }
    }

    /// `F(s)` anywhere on the line.
    pub fn eval_transform(&self, s: f64) -> f64 {
        match &self.form {
            PairForm::Semicircle { center, halfwidth } => {
                let x = s - center;
                if math::abs(x) <= *halfwidth {
                    x
                } else {
                    let sign = if x < 0.0 { -1.0 } else { 1.0 };
                    // x - sign sqrt(x^2 - h^2), cancellation-free.
                    sign * halfwidth * halfwidth
                        / (math::abs(x) + math::sqrt(x * x - halfwidth * halfwidth))
                }
            }
            PairForm::Series(c) => c.eval_transform(s),
        }
    }

    pub fn sample_source(&self, grid: &Grid) -> Result<SampledFunction> {
        let values = grid.points().iter().map(|&t| self.eval_source(t)).collect();
        SampledFunction::new(grid.clone(), values, Role::Source)
    }

    pub fn sample_transform(&self, grid: &Grid) -> Result<SampledFunction> {
        let values = grid
            .points()
            .iter()
            .map(|&s| self.eval_transform(s))
            .collect();
        SampledFunction::new(grid.clone(), values, Role::Transform)
    }

    /// Abscissae of the source's support-edge cusps inside `(-1, 1)`, if any.
    fn interior_cusps(&self) -> Vec<f64> {
        match &self.form {
            PairForm::Semicircle { center, halfwidth } => {
                let mut cusps = Vec::new();
                for edge in [center - halfwidth, center + halfwidth] {
                    if math::abs(edge) < 1.0 {
                        cusps.push(edge);
                    }
                }
                cusps
            }
            PairForm::Series(_) => Vec::new(),
        }
    }

    /// Spot-checks `F = H f` against the quadrature oracle at ten
    /// deterministic pseudo-random points (seven interior, three exterior).
    fn certify(&self) -> Result<()> {
        let cusps = self.interior_cusps();
        let mut state = 0x5851F42D4C957F2Du64;
        let mut worst = (0.0f64, 0.0f64);
        let mut checked = 0usize;
        while checked < 10 {
            let u = next_unit(&mut state);
            let s = if checked < 7 {
                // interior draw, away from the endpoints
                -0.95 + 1.9 * u
            } else {
                // exterior draw on either side
                let mag = 1.3 + 1.4 * u;
                if checked.is_multiple_of(2) {
                    mag
                } else {
                    -mag
                }
            };
            if cusps.iter().any(|&e| math::abs(s - e) < CERT_EDGE_MARGIN) {
                continue;
            }
            let oracle = pv_oracle_with(|t| self.eval_source(t), s, CERT_QUAD_POINTS)?;
            let dev = math::abs(oracle - self.eval_transform(s));
            if dev > worst.0 {
                worst = (dev, s);
            }
            checked += 1;
        }
        if worst.0 > CERT_TOLERANCE {
            return Err(Error::PairCertification {
                max_deviation: worst.0,
                at: worst.1,
                tolerance: CERT_TOLERANCE,
            });
        }
        Ok(())
    }
}

/// SplitMix64 step mapped to (0, 1); the crate's deterministic uniform source.
pub(crate) fn next_unit(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^= z >> 31;
    ((z >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
}

/// Real weight for the cosh-kernel transform; rejects magnitudes that would
/// overflow `cosh` in f64.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoshWeight(f64);

impl CoshWeight {
    pub fn new(mu: f64) -> Result<CoshWeight> {
        if !mu.is_finite() || math::abs(mu) > MAX_COSH_MU {
            return Err(Error::Domain {
                name: "mu",
                value: mu,
                requirement: "finite with |mu| <= 300 (cosh overflow guard)",
            });
        }
        Ok(CoshWeight(mu))
    }

    pub fn mu(self) -> f64 {
        self.0
    }
}

/// Projections of `cosh(mu t) f(t)` and `sinh(mu t) f(t)` onto the weighted-U
/// basis, at an order widened to absorb the spectral broadening the
/// multiplication causes. The widening (`4N` plus a `mu`-dependent pad,
/// floored at 24 extra modes) was sized empirically against the quadrature
/// oracle.
struct CoshParts {
    even: ChebCoeffs,
    odd: ChebCoeffs,
    mu: f64,
}

impl CoshParts {
    fn build(c: &ChebCoeffs, w: CoshWeight) -> Result<CoshParts> {
        let mu = w.mu();
        let pad = 24 + (1.2 * math::abs(mu)) as usize;
        let inner = (4 * c.order()).max(c.order() + pad);
        let plan = TransformPlan::new(inner)?;
        let grid = Grid::cgl_nodes(inner)?;
        let mut even = Vec::with_capacity(inner);
        let mut odd = Vec::with_capacity(inner);
        for &t in grid.points() {
            let f = c.eval_source(t);
            even.push(math::cosh(mu * t) * f);
            odd.push(math::sinh(mu * t) * f);
        }
        Ok(CoshParts {
            even: ChebCoeffs::new(plan.analyze_source_values(&even))?,
            odd: ChebCoeffs::new(plan.analyze_source_values(&odd))?,
            mu,
        })
    }

    fn eval(&self, s: f64) -> f64 {
        math::cosh(self.mu * s) * self.even.eval_transform(s)
            - math::sinh(self.mu * s) * self.odd.eval_transform(s)
    }
}

/// Cosh-weighted finite Hilbert transform
/// `(1/pi) PV INT cosh(mu (s - t)) f(t) / (s - t) dt` of a series-represented
/// `f`, evaluated on a grid. `mu = 0` reduces to the plain forward transform.
pub fn cosh_fht(c: &ChebCoeffs, w: CoshWeight, grid: &Grid) -> Result<SampledFunction> {
    let parts = CoshParts::build(c, w)?;
    let values = grid.points().iter().map(|&s| parts.eval(s)).collect();
    SampledFunction::new(grid.clone(), values, Role::Transform)
}

/// Cosh-weighted transform at a single point.
pub fn cosh_fht_at(c: &ChebCoeffs, w: CoshWeight, s: f64) -> Result<f64> {
    Ok(CoshParts::build(c, w)?.eval(s))
}

/// Cosh-weighted transform of complete source samples on CGL nodes.
pub fn cosh_fht_samples(
    f: &SampledFunction,
    w: CoshWeight,
    grid: &Grid,
) -> Result<SampledFunction> {
    if f.grid().kind() != GridKind::CglNodes || f.role() != Role::Source {
        return Err(Error::UnsupportedGrid {
            operation: "cosh_fht_samples",
            expected: "f_SIDE on CGL_NODE",
            got: f.grid().kind().label(),
        });
    }
    let plan = TransformPlan::new(f.len())?;
    let c = ChebCoeffs::new(plan.analyze_source_values(f.values()))?;
    cosh_fht(&c, w, grid)
}
