//! Scalar math routed through `std` or `libm` depending on the build.
//!
//! `powi` is implemented by binary exponentiation in both configurations so
//! the two builds produce identical results.

#[cfg(feature = "std")]
mod imp {
    pub fn cos(x: f64) -> f64 {
        x.cos()
    }
    pub fn sin(x: f64) -> f64 {
        x.sin()
    }
    pub fn acos(x: f64) -> f64 {
        x.acos()
    }
    pub fn sqrt(x: f64) -> f64 {
        x.sqrt()
    }
    pub fn ln(x: f64) -> f64 {
        x.ln()
    }
    pub fn cosh(x: f64) -> f64 {
        x.cosh()
    }
    pub fn sinh(x: f64) -> f64 {
        x.sinh()
    }
    pub fn abs(x: f64) -> f64 {
        x.abs()
    }
}

#[cfg(not(feature = "std"))]
mod imp {
    pub fn cos(x: f64) -> f64 {
        libm::cos(x)
    }
    pub fn sin(x: f64) -> f64 {
        libm::sin(x)
    }
    pub fn acos(x: f64) -> f64 {
        libm::acos(x)
    }
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }
    pub fn ln(x: f64) -> f64 {
        libm::log(x)
    }
    pub fn cosh(x: f64) -> f64 {
        libm::cosh(x)
    }
    pub fn sinh(x: f64) -> f64 {
        libm::sinh(x)
    }
    pub fn abs(x: f64) -> f64 {
        libm::fabs(x)
    }
}

pub(crate) use imp::{abs, acos, cos, cosh, ln, sin, sinh, sqrt};

/// `x^n` by binary exponentiation.
pub(crate) fn powi(x: f64, n: usize) -> f64 {
    let mut base = x;
    let mut exp = n;
    let mut acc = 1.0;
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= base;
        }
        base *= base;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powi_matches_repeated_multiplication() {
        let mut direct = 1.0;
        for n in 0..20 {
            assert!((powi(0.7, n) - direct).abs() < 1e-15 * direct.abs().max(1.0));
            direct *= 0.7;
        }
        assert_eq!(powi(3.0, 0), 1.0);
        assert_eq!(powi(-2.0, 3), -8.0);
    }
}
