//! Ramp membership functions mapping a raw covariate onto `[0, 1]`.

use crate::error::{Error, Result};

/// Piecewise-linear ramp membership function.
///
/// Degrees rise linearly from 0 at `lower` to 1 at `upper` and saturate
/// outside that interval:
///
/// ```text
/// mu(x) = clamp((x - lower) / (upper - lower), 0, 1)
/// ```
///
/// The default ramp spans `[0, 16]`, matching a covariate measured in
/// half-year steps over an eight-year range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RampMembership {
    lower: f64,
    upper: f64,
}

impl RampMembership {
    /// Builds a ramp over `[lower, upper]`.
    ///
    /// # Errors
    ///
    /// Returns [`Error::InvalidMembershipBounds`] unless both bounds are
    /// finite and `lower < upper`.
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite() && lower < upper) {
            return Err(Error::InvalidMembershipBounds { lower, upper });
        }
        Ok(Self { lower, upper })
    }

    /// Lower saturation bound (degree 0 at and below it).
    pub fn lower(&self) -> f64 {
        self.lower
    }

    /// Upper saturation bound (degree 1 at and above it).
    pub fn upper(&self) -> f64 {
        self.upper
    }

    /// Width of the linear segment, `upper - lower`.
    pub fn span(&self) -> f64 {
        self.upper - self.lower
    }

    /// Membership degree of `x`, always in `[0, 1]`.
    pub fn eval(&self, x: f64) -> f64 {
        ((x - self.lower) / self.span()).clamp(0.0, 1.0)
    }

    /// Covariate value whose membership degree is `mu`, i.e. the
    /// preimage of `mu` under the linear segment of the ramp.
    ///
    /// # Errors
    ///
    /// Returns [`Error::DegreeOutOfRange`] when `mu` is NaN or outside
    /// `[0, 1]`; saturated degrees (0 and 1) map to the bounds.
    pub fn invert(&self, mu: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&mu) {
            return Err(Error::DegreeOutOfRange { value: mu });
        }
        Ok(self.lower + mu * self.span())
    }
}

impl Default for RampMembership {
    fn default() -> Self {
        Self {
            lower: 0.0,
            upper: 16.0,
        }
    }
}
