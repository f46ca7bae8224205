use alloc::vec::Vec;
use thiserror::Error;

/// Errors surfaced by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("{name} = {value} is outside its domain: {requirement}")]
    Domain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// A non-finite value was encountered where finite data is required.
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    /// An operation received samples on a grid kind it does not accept.
    #[error("{operation} does not accept {got} samples (expected {expected})")]
    UnsupportedGrid {
        operation: &'static str,
        expected: &'static str,
        got: &'static str,
    },

    /// Sample vector and grid lengths, or two paired grids, disagree.
    #[error("size mismatch in {context}: expected {expected}, got {got}")]
    SizeMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    /// Interpolation abscissae collide (directly or after mapping).
    #[error("duplicate interpolation abscissae at positions {first} and {second}")]
    DuplicateAbscissae { first: usize, second: usize },

    /// Requested polynomial order exceeds the ill-posedness guard.
    #[error(
        "interpolation order {order} exceeds the cap {cap}; high-order polynomial \
         interpolation of transform data is severely ill-conditioned, raise the cap \
         explicitly to proceed"
    )]
    OrderAboveCap { order: usize, cap: usize },

    /// The least-squares system cannot determine the listed modes.
    #[error(
        "rank-deficient system with ridge = 0: coefficient modes {modes:?} are not \
         determined by the supplied data"
    )]
    RankDeficient { modes: Vec<usize> },

    /// A mask has ranges outside the grid or empty where data is required.
    #[error("invalid known-data mask: {reason}")]
    InvalidMask { reason: &'static str },

    /// The known ranges of f and F do not overlap, so the completion problem
    /// is degenerate.
    #[error(
        "known ranges of f (nodes {f_start}..{f_end}) and F (midpoints {transform_start}..\
         {transform_end}) do not overlap; without overlapping data infinitely many \
         pairs are consistent with the inputs (scaled semicircles witness this), so \
         the extrapolation is refused"
    )]
    NonOverlappingMask {
        f_start: usize,
        f_end: usize,
        transform_start: usize,
        transform_end: usize,
    },

    /// A constructed pair failed its quadrature-oracle certification.
    #[error(
        "pair certification failed: |F - H f| = {max_deviation:e} at s = {at} \
         exceeds {tolerance:e}"
    )]
    PairCertification {
        max_deviation: f64,
        at: f64,
        tolerance: f64,
    },

    /// Phantom geometry violates its invariants.
    #[error("invalid phantom geometry: {reason}")]
    PhantomGeometry { reason: &'static str },
}

pub type Result<T> = core::result::Result<T, Error>;
