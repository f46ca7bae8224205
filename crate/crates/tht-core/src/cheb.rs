//! Chebyshev polynomials of the first and second kind, their weighted and
//! extended variants, and the conformal coordinate map for exterior data.
//!
//! `T_n(t) = cos(n acos t)` and `U_n(t) = sin((n+1) acos t) / sin(acos t)`
//! on `[-1, 1]`; both satisfy the three-term recurrence
//! `p_{n+1} = 2 x p_n - p_{n-1}` on all of the real line. The extended
//! first-kind polynomial
//!
//! ```text
//! Tt_n(s) = T_n(s)                                   |s| <= 1
//!         = T_n(s) - U_{n-1}(s) sign(s) sqrt(s^2-1)  |s| >  1
//! ```
//!
//! coincides with `(s - sign(s) sqrt(s^2 - 1))^n` outside the interval,
//! which is the numerically stable branch used here: the difference form
//! cancels catastrophically once `n acosh|s|` is large.

use crate::math;
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// Crossover between the trigonometric and recurrence evaluation routes.
///
/// The trig forms are uniformly stable strictly inside the interval; the
/// recurrence is exact in structure at and beyond the endpoints (it yields
/// the integer endpoint values `T_n(+-1)` and `U_n(+-1)` exactly).
const TRIG_ROUTE_BOUND: f64 = 1.0 - 1e-12;

/// First-kind Chebyshev polynomial `T_n(x)`, valid for all finite `x`.
pub fn eval_t(n: usize, x: f64) -> f64 {
    if math::abs(x) <= TRIG_ROUTE_BOUND {
        math::cos(n as f64 * math::acos(x))
    } else {
        if n == 0 {
            return 1.0;
        }
        let mut prev = 1.0;
        let mut cur = x;
        for _ in 1..n {
            let next = 2.0 * x * cur - prev;
            prev = cur;
            cur = next;
        }
        cur
    }
}

/// Second-kind Chebyshev polynomial `U_n(x)`; `n = -1` is the conventional
/// zero term. At `x = +-1` the recurrence route realises the analytic limit
/// `U_n(+-1) = (+-1)^n (n + 1)` exactly.
pub fn eval_u(n: i32, x: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    let n = n as usize;
    if math::abs(x) <= TRIG_ROUTE_BOUND {
        let theta = math::acos(x);
        math::sin((n as f64 + 1.0) * theta) / math::sin(theta)
    } else {
        if n == 0 {
            return 1.0;
        }
        let mut prev = 1.0;
        let mut cur = 2.0 * x;
        for _ in 1..n {
            let next = 2.0 * x * cur - prev;
            prev = cur;
            cur = next;
        }
        cur
    }
}

/// Weighted second-kind polynomial `Ut_n(t) = sqrt(1 - t^2) U_n(t)`,
/// defined on `[-1, 1]` only; exactly zero at the endpoints.
pub fn eval_u_weighted(n: usize, t: f64) -> Result<f64> {
    if !(t.is_finite() && math::abs(t) <= 1.0) {
        return Err(Error::Domain {
            name: "t",
            value: t,
            requirement: "|t| <= 1 for the weighted basis",
        });
    }
    if math::abs(t) == 1.0 {
        return Ok(0.0);
    }
    Ok(math::sqrt(1.0 - t * t) * eval_u(n as i32, t))
}

/// The decaying root of `z^2 - 2sz + 1`, i.e. `s - sign(s) sqrt(s^2 - 1)`
/// for `|s| >= 1`, evaluated without cancellation.
fn decaying_root(s: f64) -> f64 {
    let sign = if s < 0.0 { -1.0 } else { 1.0 };
    1.0 / (s + sign * math::sqrt(s * s - 1.0))
}

/// Extended first-kind polynomial `Tt_n(s)`: `T_n` inside `[-1, 1]`, the
/// decaying power `(s - sign(s) sqrt(s^2 - 1))^n` outside. Continuous across
/// `s = +-1` and bounded by 1 in magnitude for `|s| > 1`.
pub fn eval_t_extended(n: usize, s: f64) -> f64 {
    if math::abs(s) <= 1.0 {
        eval_t(n, s)
    } else {
        math::powi(decaying_root(s), n)
    }
}

/// Forward conformal map `u = v - sqrt(v^2 - 1)` taking `[1, inf)` to
/// `(0, 1]`, strictly decreasing.
pub fn map_v_to_u(v: f64) -> Result<f64> {
    if !(v.is_finite() && v >= 1.0) {
        return Err(Error::Domain {
            name: "v",
            value: v,
            requirement: "v >= 1",
        });
    }
    Ok(1.0 / (v + math::sqrt(v * v - 1.0)))
}

/// Inverse conformal map `v = (u^2 + 1) / (2u)` taking `(0, 1]` back to
/// `[1, inf)`.
pub fn map_u_to_v(u: f64) -> Result<f64> {
    if !(u.is_finite() && u > 0.0 && u <= 1.0) {
        return Err(Error::Domain {
            name: "u",
            value: u,
            requirement: "0 < u <= 1",
        });
    }
    Ok((u * u + 1.0) / (2.0 * u))
}

/// Re-expresses `SUM a_n x^n` as `SUM b_n T_n(x)`.
///
/// Horner's scheme carried out in the T basis, using `x T_0 = T_1` and
/// `x T_n = (T_{n+1} + T_{n-1}) / 2`. The conversion is exact in structure;
/// in floating point the intermediate magnitudes can grow roughly like `2^n`
/// relative to the inputs, which is inherent to the basis change and simply
/// accepted here (orders in this crate stay small on this path).
pub fn monomial_to_cheb_t(monomial: &[f64]) -> Vec<f64> {
    if monomial.is_empty() {
        return Vec::new();
    }
    let degree = monomial.len() - 1;
    let mut b = vec![0.0; monomial.len()];
    b[0] = monomial[degree];
    for (len, k) in (1..).zip((0..degree).rev()) {
        // b <- x * b  (in the T basis), then add the monomial coefficient.
        let mut shifted = vec![0.0; len + 1];
        shifted[1] += b[0];
        for (i, &bi) in b.iter().enumerate().take(len).skip(1) {
            shifted[i + 1] += 0.5 * bi;
            shifted[i - 1] += 0.5 * bi;
        }
        shifted[0] += monomial[k];
        b[..=len].copy_from_slice(&shifted);
    }
    b
}
