//! Analytic ground-truth pairs and deterministic noise injection.
//!
//! All three phantom families are semicircle bumps
//! `f(t) = sqrt(h^2 - (t - c)^2)` with transform `(s - c)` over the support
//! and the decaying branch outside. The epsilon family doubles as the
//! non-uniqueness witness: every member's transform equals `s` on any
//! interval strictly inside its support, so transform data confined to such
//! an interval cannot distinguish the members.

use crate::hilbert::{next_unit, HilbertPair};
use crate::math;
use crate::series::SampledFunction;
use crate::{Error, Result};
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Noise to apply to sampled data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    /// Standard deviation of the added Gaussian perturbation (absolute
    /// units; the phantom amplitudes are O(1)).
    pub sigma: f64,
    pub seed: u64,
}

/// The supported closed-form families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhantomFamily {
    /// `f(t) = sqrt(1 - t^2)`.
    SemicircleUnit,
    /// `f(t) = sqrt(eps^2 - t^2)` on `|t| <= eps`, `0 < eps < 1`.
    SemicircleEps { eps: f64 },
    /// `f(t) = sqrt(h^2 - (t - c)^2)` with `|c| + h <= 1`.
    SemicircleShifted { center: f64, halfwidth: f64 },
}

/// A phantom plus optional measurement noise for the sampled data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhantomSpec {
    pub family: PhantomFamily,
    pub noise: Option<NoiseSpec>,
}

impl PhantomSpec {
    pub fn noiseless(family: PhantomFamily) -> PhantomSpec {
        PhantomSpec {
            family,
            noise: None,
        }
    }
}

/// Builds the analytic pair for a spec. The pair is certified against the
/// principal-value quadrature oracle on construction; noise in the spec is
/// not applied here (ground truth stays exact), callers add it to samples
/// via [`add_noise`].
pub fn make_pair(spec: &PhantomSpec) -> Result<HilbertPair> {
    match spec.family {
        PhantomFamily::SemicircleUnit => HilbertPair::semicircle(0.0, 1.0),
        PhantomFamily::SemicircleEps { eps } => {
            if !(eps > 0.0 && eps < 1.0) {
                return Err(Error::PhantomGeometry {
                    reason: "eps must lie in (0, 1)",
                });
            }
            HilbertPair::semicircle(0.0, eps)
        }
        PhantomFamily::SemicircleShifted { center, halfwidth } => {
            HilbertPair::semicircle(center, halfwidth)
        }
    }
}

/// The non-uniqueness witness family: pairs whose transforms all equal `s`
/// on `(-eps0, eps0)` while the sources differ outside. Requires
/// `0 < eps0 < eps < 1` for every listed `eps`.
pub fn counterexample_family(eps0: f64, eps_list: &[f64]) -> Result<Vec<HilbertPair>> {
    if !(eps0 > 0.0 && eps0 < 1.0) {
        return Err(Error::PhantomGeometry {
            reason: "eps0 must lie in (0, 1)",
        });
    }
    let mut pairs = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        if !(eps > eps0 && eps < 1.0) {
            return Err(Error::PhantomGeometry {
                reason: "every eps must satisfy eps0 < eps < 1",
            });
        }
        pairs.push(HilbertPair::semicircle(0.0, eps)?);
    }
    Ok(pairs)
}

/// `count` independent draws from N(0, sigma^2).
///
/// Deterministic for a fixed `(count, sigma, seed)`: the generator is a
/// SplitMix64 stream seeded with `seed`; each draw consumes two outputs
/// `u1, u2` mapped to (0, 1) and returns
/// `sigma * sqrt(-2 ln u1) * cos(2 pi u2)`. Determinism across runs of the
/// same build is part of the contract; bit-equality across different math
/// libraries is not.
pub fn gaussian_perturbations(count: usize, sigma: f64, seed: u64) -> Result<Vec<f64>> {
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(Error::Domain {
            name: "sigma",
            value: sigma,
            requirement: "sigma >= 0",
        });
    }
    let mut state = seed;
    Ok((0..count)
        .map(|_| {
            let u1 = next_unit(&mut state);
            let u2 = next_unit(&mut state);
            sigma * math::sqrt(-2.0 * math::ln(u1)) * math::cos(2.0 * PI * u2)
        })
        .collect())
}

/// Adds independent zero-mean Gaussian perturbations of standard deviation
/// `sigma` to each sample; see [`gaussian_perturbations`] for the
/// determinism contract.
pub fn add_noise(samples: &SampledFunction, sigma: f64, seed: u64) -> Result<SampledFunction> {
    if sigma == 0.0 {
        // still validates sigma through the shared path
        gaussian_perturbations(0, sigma, seed)?;
        return Ok(samples.clone());
    }
    let noise = gaussian_perturbations(samples.len(), sigma, seed)?;
    let noisy = samples
        .values()
        .iter()
        .zip(&noise)
        .map(|(&v, &dv)| v + dv)
        .collect();
    samples.with_values(noisy)
}
