//! Scale experiments on the middle-thirds Cantor construction: exact
//! endpoint spaces for small depths, closed-form natural-cover sums for large
//! ones, and a log-log covering-number regression for the dimension.
//!
//! Construction arithmetic is exact: level-`k` interval endpoints are
//! rationals with denominator `3^k`, kept as integer numerators (`3^40` still
//! fits in a `u64`). Floats enter only when distances and gauge values are
//! evaluated.

use crate::extreal::ExtReal;
use crate::measure::{h_m_delta, CoveringConvention, MeasureError, SolverChoice};
use crate::space::FiniteMetricSpace;
use thiserror::Error;

/// Deepest construction level; beyond this `3^k` leaves `u64`.
pub const MAX_LEVEL: u32 = 40;

/// Deepest level whose endpoint space (with `2^(k+1)` points) is materialized.
pub const MAX_ENDPOINT_LEVEL: u32 = 6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FractalError {
    #[error("level {k} out of range, maximum is {max}")]
    LevelOutOfRange { k: u32, max: u32 },
    #[error("need at least 2 distinct scales, got {distinct}")]
    DegenerateInput { distinct: usize },
    #[error("scale {delta} outside (0, 1)")]
    InvalidScale { delta: f64 },
    #[error("covering counts must be at least 1")]
    InvalidCount,
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// A rational `numerator / 3^depth` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TernaryRational {
    pub numerator: u64,
    pub depth: u32,
}

impl TernaryRational {
    pub fn to_f64(self) -> f64 {
        self.numerator as f64 / pow3(self.depth) as f64
    }

    /// Reduced-fraction display: `0`, `1`, `1/3`, `2/9`, ...
    pub fn label(self) -> String {
        let mut num = self.numerator;
        let mut den = pow3(self.depth);
        while num != 0 && num.is_multiple_of(3) && den.is_multiple_of(3) {
            num /= 3;
            den /= 3;
        }
        if num == 0 {
            "0".to_string()
        } else if num == den {
            "1".to_string()
        } else {
            format!("{num}/{den}")
        }
    }
}

/// One closed interval of the construction, of exact length `3^-k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CantorInterval {
    pub left: TernaryRational,
    pub right: TernaryRational,
}

/// Depth-`k` stage of the middle-thirds construction: `2^k` disjoint sorted
/// intervals, each the first or last third of a parent interval. Intervals
/// are computed on demand; depth 40 has a trillion of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CantorLevel {
    k: u32,
}

fn pow3(k: u32) -> u64 {
    3u64.pow(k)
}

/// The construction at depth `k ≤ 40`.
pub fn cantor_level(k: u32) -> Result<CantorLevel, FractalError> {
    if k > MAX_LEVEL {
        return Err(FractalError::LevelOutOfRange { k, max: MAX_LEVEL });
    }
    Ok(CantorLevel { k })
}

impl CantorLevel {
    pub fn depth(self) -> u32 {
        self.k
    }

    pub fn interval_count(self) -> u64 {
        1u64 << self.k
    }

    /// The `i`-th interval in left-to-right order. Binary digits of `i` map
    /// to ternary digits of the left endpoint: each `1` bit picks the last
    /// third (digit 2), each `0` bit the first third.
    pub fn interval(self, i: u64) -> CantorInterval {
        assert!(i < self.interval_count(), "interval index out of range");
        let mut numerator = 0u64;
        for bit in (0..self.k).rev() {
            numerator = numerator * 3 + 2 * ((i >> bit) & 1);
        }
        CantorInterval {
            left: TernaryRational {
                numerator,
                depth: self.k,
            },
            right: TernaryRational {
                numerator: numerator + 1,
                depth: self.k,
            },
        }
    }

    pub fn intervals(self) -> impl Iterator<Item = CantorInterval> {
        (0..self.interval_count()).map(move |i| self.interval(i))
    }
}

/// The raw gauge sum of the natural level-`k` cover: `2^k · 3^(-k·m)`,
/// unnormalized. Multiply by `alpha(m) / 2^m` for the normalized gauge. At
/// the similarity exponent `ln 2 / ln 3` this is exactly `1` for every depth.
pub fn natural_cover_sum(k: u32, m: f64) -> f64 {
    assert!(k <= MAX_LEVEL, "level {k} out of range");
    assert!(m >= 0.0 && !m.is_nan(), "exponent must be nonnegative");
    2f64.powi(k as i32) * 3f64.powf(-(k as f64) * m)
}

/// The finite metric space of all `2^(k+1)` interval endpoints at depth
/// `k ≤ 6`, with the line distance. Distances are single roundings of exact
/// rationals with denominator `3^k`.
pub fn endpoints_space(level: CantorLevel) -> Result<FiniteMetricSpace, FractalError> {
    if level.k > MAX_ENDPOINT_LEVEL {
        return Err(FractalError::LevelOutOfRange {
            k: level.k,
            max: MAX_ENDPOINT_LEVEL,
        });
    }
    let mut numerators: Vec<u64> = Vec::with_capacity(2 * level.interval_count() as usize);
    for interval in level.intervals() {
        numerators.push(interval.left.numerator);
        numerators.push(interval.right.numerator);
    }
    numerators.sort_unstable();
    let den = pow3(level.k) as f64;
    let n = numerators.len();
    let mut dist = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = numerators[i].abs_diff(numerators[j]) as f64 / den;
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }
    let labels = numerators
        .iter()
        .map(|&numerator| {
            TernaryRational {
                numerator,
                depth: level.k,
            }
            .label()
        })
        .collect();
    Ok(FiniteMetricSpace::build(labels, dist).expect("endpoint distances form a metric"))
}

/// Scale choice for sweep rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepDeltaPolicy {
    /// `δ_k = 3^-k · (1 + 1e-9)`: just above the level scale, so level-`k`
    /// interval endpoint pairs are admissible under the strict bound.
    JustAboveLevelScale,
    /// `δ_k = 3^-k / 2`: below every gap, so only singletons are admissible
    /// and the value at `m = 0` is the endpoint count.
    BelowMinimumGap,
}

impl SweepDeltaPolicy {
    pub fn delta(self, k: u32) -> f64 {
        let scale = 3f64.powi(-(k as i32));
        match self {
            SweepDeltaPolicy::JustAboveLevelScale => scale * (1.0 + 1e-9),
            SweepDeltaPolicy::BelowMinimumGap => scale * 0.5,
        }
    }
}

/// How a sweep row's value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepFlag {
    /// Proven infimum (complete candidates, exact solver).
    Exact,
    /// Upper bound from the greedy solver over heuristic candidates.
    Greedy,
    /// Closed-form normalized natural-cover sum; no endpoint space built.
    Bound,
}

impl SweepFlag {
    pub fn name(self) -> &'static str {
        match self {
            SweepFlag::Exact => "exact",
            SweepFlag::Greedy => "greedy",
            SweepFlag::Bound => "bound",
        }
    }
}

/// One row of a scale sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub k: u32,
    pub delta: f64,
    /// Number of sets in the natural level-`k` cover.
    pub count: u64,
    /// Raw (unnormalized) natural-cover gauge sum `2^k · 3^(-k·m)`.
    pub raw_sum: f64,
    /// `H^m_δ` of the endpoint space where one is built, otherwise the
    /// normalized natural-cover sum as an upper bound.
    pub value: ExtReal,
    pub flag: SweepFlag,
}

/// Scale sweep: deltas strictly decreasing, counts nondecreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleSweep {
    pub m: f64,
    pub rows: Vec<SweepRow>,
}

/// Sweeps depths `0..=level_max`: exact or greedy `H^m_δ` of the endpoint
/// space for `k ≤ 6`, the closed-form normalized bound beyond.
pub fn sweep(
    level_max: u32,
    m: f64,
    conv: CoveringConvention,
    policy: SweepDeltaPolicy,
    choice: SolverChoice,
) -> Result<ScaleSweep, FractalError> {
    if level_max > MAX_LEVEL {
        return Err(FractalError::LevelOutOfRange {
            k: level_max,
            max: MAX_LEVEL,
        });
    }
    let normalization = crate::gauge::normalization(m).map_err(MeasureError::from)?;
    let mut rows = Vec::with_capacity(level_max as usize + 1);
    for k in 0..=level_max {
        let delta = policy.delta(k);
        let count = 1u64 << k;
        let raw_sum = natural_cover_sum(k, m);
        let (value, flag) = if k <= MAX_ENDPOINT_LEVEL {
            let space = endpoints_space(cantor_level(k)?)?;
            let result = h_m_delta(
                &space,
                &space.all_points(),
                m,
                ExtReal::finite(delta),
                conv,
                choice,
            )?;
            let flag = if result.exact {
                SweepFlag::Exact
            } else {
                SweepFlag::Greedy
            };
            (result.value, flag)
        } else {
            (ExtReal::finite(raw_sum * normalization), SweepFlag::Bound)
        };
        rows.push(SweepRow {
            k,
            delta,
            count,
            raw_sum,
            value,
            flag,
        });
    }
    Ok(ScaleSweep { m, rows })
}

/// Ordinary least-squares slope of `log(count)` against `log(1/delta)`: the
/// box-counting estimate of dimension. Needs at least two distinct scales,
/// all in `(0, 1)`, with counts of at least one.
pub fn dimension_estimate(scales: &[(f64, u64)]) -> Result<f64, FractalError> {
    for &(delta, count) in scales {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(FractalError::InvalidScale { delta });
        }
        if count == 0 {
            return Err(FractalError::InvalidCount);
        }
    }
    let mut distinct: Vec<f64> = scales.iter().map(|&(d, _)| d).collect();
    distinct.sort_by(|a, b| a.partial_cmp(b).unwrap());
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(FractalError::DegenerateInput {
            distinct: distinct.len(),
        });
    }
    let points: Vec<(f64, f64)> = scales
        .iter()
        .map(|&(delta, count)| ((1.0 / delta).ln(), (count as f64).ln()))
        .collect();
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.0 - mean_x)).sum();
    Ok(sxy / sxx)
}
