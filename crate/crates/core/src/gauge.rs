//! Gauge functions for the Carathéodory construction: the gamma function, the
//! normalizing constant `alpha(m) = Γ(1/2)^m / Γ(1 + m/2)`, and the gauge
//! `ζ` in its three variants.
//!
//! The variants differ only on degenerate sets:
//!
//! * `Standard` applies `(alpha(m)/2^m) · (diam S)^m` to every set, so the
//!   empty set and singletons at `m = 0` hit `0^0`, whose value is an explicit
//!   policy choice (default `1`).
//! * `Modified` spells those cases out: `0` on the empty set for every `m`,
//!   `1` on singletons at `m = 0`, `0` on singletons at `m > 0`, and the
//!   normalized diameter power on sets with at least two points.
//! * `RawDiameterPower` is the bare `(diam S)^m`, valid only for `m > 0`,
//!   where no `0^0` case can arise (`diam ∅ = 0` is the only convention used).

use crate::extreal::ExtReal;
use crate::space::{diameter, FiniteMetricSpace, PointSet};
use thiserror::Error;

/// Inclusive domain of [`gamma`].
pub const GAMMA_DOMAIN: (f64, f64) = (0.25, 50.0);

/// Inclusive domain of [`alpha`]; `alpha(96)` needs `gamma(49)`.
pub const ALPHA_MAX_M: f64 = 96.0;

/// The value assigned to `∞^0`. It only matters when a covering element of
/// infinite diameter meets `m = 0`, which the weak diameter bound permits at
/// `δ = ∞`; `1` keeps `m = 0` counting point contributions.
pub const INF_POW_ZERO: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaugeError {
    #[error("gamma argument {t} outside [{lo}, {hi}]", lo = GAMMA_DOMAIN.0, hi = GAMMA_DOMAIN.1)]
    GammaOutOfRange { t: f64 },
    #[error("alpha exponent {m} outside [0, {max}]", max = ALPHA_MAX_M)]
    AlphaOutOfRange { m: f64 },
    #[error("raw diameter-power gauge requires m > 0, got m = {m}")]
    PolicyMismatch { m: f64 },
}

/// The two supported values of `0^0` for the `Standard` gauge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroPowZero {
    One,
    Zero,
}

impl ZeroPowZero {
    pub fn value(self) -> f64 {
        match self {
            ZeroPowZero::One => 1.0,
            ZeroPowZero::Zero => 0.0,
        }
    }
}

/// Which formula the gauge uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaugeVariant {
    Standard,
    Modified,
    RawDiameterPower,
}

/// A gauge variant plus its `0^0` policy. The policy is consulted only by
/// `Standard`; `Modified` has explicit singleton and empty-set cases and
/// `RawDiameterPower` never evaluates `0^0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaugePolicy {
    pub variant: GaugeVariant,
    pub zero_pow_zero: ZeroPowZero,
}

impl GaugePolicy {
    pub fn standard(zero_pow_zero: ZeroPowZero) -> GaugePolicy {
        GaugePolicy {
            variant: GaugeVariant::Standard,
            zero_pow_zero,
        }
    }

    pub fn modified() -> GaugePolicy {
        GaugePolicy {
            variant: GaugeVariant::Modified,
            zero_pow_zero: ZeroPowZero::One,
        }
    }

    pub fn raw_diameter_power() -> GaugePolicy {
        GaugePolicy {
            variant: GaugeVariant::RawDiameterPower,
            zero_pow_zero: ZeroPowZero::One,
        }
    }
}

// Lanczos approximation, g = 7, 9 coefficients (the GSL set). Relative error
// below 1e-13 across the supported domain; verified against a quadrature
// oracle in the tests.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)] // published constants, kept verbatim
const LANCZOS_COEFFS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

fn lanczos_gamma(t: f64) -> f64 {
    if t < 0.5 {
        // reflection: Γ(t) Γ(1-t) = π / sin(πt)
        return std::f64::consts::PI / ((std::f64::consts::PI * t).sin() * lanczos_gamma(1.0 - t));
    }
    let x = t - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let w = x + LANCZOS_G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * w.powf(x + 0.5) * (-w).exp() * acc
}

/// `Γ(t)` for `t ∈ [0.25, 50]`, relative error at most `1e-12`.
pub fn gamma(t: f64) -> Result<f64, GaugeError> {
    if !(GAMMA_DOMAIN.0..=GAMMA_DOMAIN.1).contains(&t) {
        return Err(GaugeError::GammaOutOfRange { t });
    }
    Ok(lanczos_gamma(t))
}

/// `alpha(m) = Γ(1/2)^m / Γ(1 + m/2)` for `m ∈ [0, 96]`, relative error at
/// most `1e-10`. `alpha(0) = 1`, `alpha(1) = 2`, `alpha(2) = π`.
pub fn alpha(m: f64) -> Result<f64, GaugeError> {
    if !(0.0..=ALPHA_MAX_M).contains(&m) || m.is_nan() {
        return Err(GaugeError::AlphaOutOfRange { m });
    }
    if m == 0.0 {
        // Γ(1/2)^0 / Γ(1) = 1; kept exact so m = 0 counts points exactly.
        return Ok(1.0);
    }
    let sqrt_pi = lanczos_gamma(0.5);
    Ok(sqrt_pi.powf(m) / lanczos_gamma(1.0 + m / 2.0))
}

/// `alpha(m) / 2^m`, the factor normalizing a diameter power.
pub fn normalization(m: f64) -> Result<f64, GaugeError> {
    Ok(alpha(m)? / 2f64.powf(m))
}

/// `base^m` on `[0, ∞]` with the configured `0^0` and the fixed `∞^0 = 1`.
fn ext_pow(base: ExtReal, m: f64, zero_pow_zero: ZeroPowZero) -> ExtReal {
    match base {
        ExtReal::Infinity => {
            if m == 0.0 {
                ExtReal::finite(INF_POW_ZERO)
            } else {
                ExtReal::Infinity
            }
        }
        ExtReal::Finite(0.0) => {
            if m == 0.0 {
                ExtReal::finite(zero_pow_zero.value())
            } else {
                ExtReal::ZERO
            }
        }
        ExtReal::Finite(b) => ExtReal::finite(b.powf(m)),
    }
}

/// Evaluates the gauge `ζ(s, m)` of a subset of `space` under `policy`.
pub fn zeta(
    space: &FiniteMetricSpace,
    s: &PointSet,
    m: f64,
    policy: GaugePolicy,
) -> Result<ExtReal, GaugeError> {
    assert!(
        m >= 0.0 && !m.is_nan(),
        "gauge exponent must be nonnegative, got {m}"
    );
    let diam = diameter(space, s);
    zeta_of_diameter(s.len(), diam, m, policy)
}

/// Gauge value from a set's cardinality and diameter, the data `ζ` actually
/// depends on. Exposed so covering pipelines can reuse precomputed diameters.
pub fn zeta_of_diameter(
    cardinality: usize,
    diam: ExtReal,
    m: f64,
    policy: GaugePolicy,
) -> Result<ExtReal, GaugeError> {
    match policy.variant {
        GaugeVariant::Standard => {
            Ok(ext_pow(diam, m, policy.zero_pow_zero).scale(normalization(m)?))
        }
        GaugeVariant::Modified => match cardinality {
            0 => Ok(ExtReal::ZERO),
            1 => Ok(if m == 0.0 {
                ExtReal::finite(1.0)
            } else {
                ExtReal::ZERO
            }),
            _ => Ok(ext_pow(diam, m, policy.zero_pow_zero).scale(normalization(m)?)),
        },
        GaugeVariant::RawDiameterPower => {
            if m == 0.0 {
                return Err(GaugeError::PolicyMismatch { m });
            }
            Ok(ext_pow(diam, m, policy.zero_pow_zero))
        }
    }
}
