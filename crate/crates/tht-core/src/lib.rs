//! Numerics for the finite Hilbert transform on (-1, 1) and its inversion
//! from truncated data, built on Chebyshev series expansions.
//!
//! The library works with the pair of a function `f(t)` supported on
//! `[-1, 1]` and its finite Hilbert transform
//!
//! ```text
//! F(s) = (1/pi) PV INT_{-1}^{1} f(t) / (s - t) dt,      s in R
//! ```
//!
//! expanded as `f(t) = sqrt(1 - t^2) SUM c_n U_{n-1}(t)` and
//! `F(s) = SUM c_n Tt_n(s)`, where `U_n` are Chebyshev polynomials of the
//! second kind and `Tt_n` is the first-kind polynomial `T_n` extended past
//! `[-1, 1]` by its decaying branch. In that basis the forward transform is
//! the identity on coefficients, which the solvers exploit.
//!
//! Module map:
//!
//! * [`cheb`] - pointwise Chebyshev evaluation, the weighted and extended
//!   variants, and the conformal map used for exterior data.
//! * [`series`] - coefficient sequences, Chebyshev-Gauss-Lobatto grids,
//!   analysis/synthesis transforms, quadrature and norms.
//! * [`hilbert`] - forward/inverse discrete operators, a principal-value
//!   quadrature oracle, ground-truth pairs, and the cosh-weighted transform.
//! * [`phantoms`] - analytic test pairs, the non-uniqueness counterexample
//!   family, and deterministic noise injection.
//! * [`solvers`] - coefficient recovery from truncated data: Lagrange
//!   interpolation, weighted least squares, and alternating extrapolation.
//!
//! The crate is `no_std`-compatible (requires `alloc`); enable the `libm`
//! feature instead of `std` for that configuration.

#![cfg_attr(not(feature = "std"), no_std)]

#[cfg(not(any(feature = "std", feature = "libm")))]
compile_error!("tht-core requires either the `std` or the `libm` feature");

extern crate alloc;

mod error;
mod linalg;
mod math;

pub mod cheb;
pub mod hilbert;
pub mod phantoms;
pub mod series;
pub mod solvers;

pub use error::{Error, Result};
