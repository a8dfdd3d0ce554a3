//! Arithmetic on `[0, ∞]`.
//!
//! Values are either a finite nonnegative `f64` or the symbol `∞`. Besides
//! ordinary addition (`x + ∞ = ∞`), the type provides the ω-sum: the value of
//! a countably infinite sum of one constant, which is `0` for the constant `0`
//! and `∞` for any positive constant. Empty sums are `0`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

/// A value in `[0, ∞]`.
#[derive(Clone, Copy, Debug)]
pub enum ExtReal {
    /// A finite nonnegative real.
    Finite(f64),
    /// The point at infinity.
    Infinity,
}

/// Error returned when parsing or constructing an [`ExtReal`] from an
/// out-of-domain float (negative, NaN, or unparseable text).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a value in [0, inf]: {0}")]
pub struct ExtRealDomainError(pub String);

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal::Finite(0.0);
    pub const INFINITY: ExtReal = ExtReal::Infinity;

    /// Wraps a finite nonnegative float.
    ///
    /// Panics if `x` is negative, NaN, or infinite; use [`ExtReal::try_finite`]
    /// for untrusted input. `f64::INFINITY` is rejected here so that the
    /// infinite value is always the explicit `Infinity` variant.
    pub fn finite(x: f64) -> ExtReal {
        assert!(
            x.is_finite() && x >= 0.0,
            "ExtReal::finite requires a finite nonnegative value, got {x}"
        );
        ExtReal::Finite(x)
    }

    /// Fallible constructor mapping `f64::INFINITY` to `Infinity` and
    /// rejecting negatives and NaN.
    pub fn try_finite(x: f64) -> Result<ExtReal, ExtRealDomainError> {
        if x.is_nan() || x < 0.0 {
            return Err(ExtRealDomainError(format!("{x}")));
        }
        if x.is_infinite() {
            return Ok(ExtReal::Infinity);
        }
        Ok(ExtReal::Finite(x))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtReal::Infinity)
    }

    pub fn is_zero(self) -> bool {
        matches!(self, ExtReal::Finite(x) if x == 0.0)
    }

    /// The underlying float, with `∞` mapped to `f64::INFINITY`.
    pub fn as_f64(self) -> f64 {
        match self {
            ExtReal::Finite(x) => x,
            ExtReal::Infinity => f64::INFINITY,
        }
    }

    /// The value of a countably infinite sum of copies of `per_copy`:
    /// `0` if `per_copy = 0`, otherwise `∞`.
    pub fn omega_sum(per_copy: ExtReal) -> ExtReal {
        if per_copy.is_zero() {
            ExtReal::ZERO
        } else {
            ExtReal::Infinity
        }
    }

    /// Multiplies by a positive finite scale factor.
    pub fn scale(self, factor: f64) -> ExtReal {
        assert!(
            factor.is_finite() && factor > 0.0,
            "scale factor must be positive and finite, got {factor}"
        );
        match self {
            ExtReal::Finite(x) => ExtReal::Finite(x * factor),
            ExtReal::Infinity => ExtReal::Infinity,
        }
    }

    /// Total order on `[0, ∞]`. NaN cannot occur by construction.
    pub fn cmp_total(self, other: ExtReal) -> Ordering {
        match (self, other) {
            (ExtReal::Infinity, ExtReal::Infinity) => Ordering::Equal,
            (ExtReal::Infinity, ExtReal::Finite(_)) => Ordering::Greater,
            (ExtReal::Finite(_), ExtReal::Infinity) => Ordering::Less,
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.partial_cmp(&b).unwrap(),
        }
    }

    /// Equality up to an absolute tolerance on finite parts; `∞` only equals `∞`.
    pub fn approx_eq(self, other: ExtReal, tol: f64) -> bool {
        match (self, other) {
            (ExtReal::Infinity, ExtReal::Infinity) => true,
            (ExtReal::Finite(a), ExtReal::Finite(b)) => (a - b).abs() <= tol,
            _ => false,
        }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
            _ => ExtReal::Infinity,
        }
    }
}

impl AddAssign for ExtReal {
    fn add_assign(&mut self, rhs: ExtReal) {
        *self = *self + rhs;
    }
}

impl Sum for ExtReal {
    fn sum<I: Iterator<Item = ExtReal>>(iter: I) -> ExtReal {
        iter.fold(ExtReal::ZERO, |acc, x| acc + x)
    }
}

impl PartialEq for ExtReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_total(*other) == Ordering::Equal
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_total(*other)
    }
}

impl fmt::Display for ExtReal {
    /// Formats as `inf` or the shortest decimal that parses back to the exact
    /// same float, so reports round-trip losslessly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(x) => write!(f, "{x}"),
            ExtReal::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtReal {
    type Err = ExtRealDomainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "inf" {
            return Ok(ExtReal::Infinity);
        }
        let x: f64 = s.parse().map_err(|_| ExtRealDomainError(s.to_string()))?;
        ExtReal::try_finite(x)
    }
}
