//! `H^m_δ` and `H^m` on finite metric spaces under every covering convention,
//! with side-by-side comparison of the named presets.
//!
//! A [`CoveringConvention`] bundles the choices the definition of Hausdorff
//! measure quietly depends on: whether the covering family is at most
//! countable or must be infinite countable, whether the empty set may be an
//! element, which gauge weighs an element (and what `0^0` is), and whether the
//! diameter bound is strict. The named presets pin the combinations worth
//! comparing: the textbook convention, the counting-by-definition variant, the
//! repaired gauge that tolerates infinite coverings, and the two broken
//! conventions whose `H^0` collapses to `0`/`∞` — kept because running them is
//! the point of the comparison table.
//!
//! Coverings are multisets. Over a finite candidate pool, an infinite
//! countable covering must repeat some element infinitely often, so its cost
//! decomposes into a finite repetition-free support plus ω copies of one
//! padding element, and the infimum is attained by the best such pair: the
//! set-cover optimum plus the ω-sum of the cheapest admissible element. That
//! decomposition is what [`h_m_delta`] computes for the strictly-infinite
//! conventions; the tests check it against a direct enumeration of multiset
//! coverings on small spaces.

use crate::cover::{self, CoverError, CoverInstance, CoverSolution, SolverError, SolverKind};
use crate::extreal::ExtReal;
use crate::gauge::{zeta_of_diameter, GaugeError, GaugePolicy, ZeroPowZero};
use crate::space::{
    admissible_masks_with_diameters, diameter, heuristic_candidates, mask_to_set, DiameterBound,
    FiniteMetricSpace, PointSet,
};
use std::time::Duration;
use thiserror::Error;

/// May a covering family be finite, or must it be infinite countable?
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cardinality {
    AtMostCountable,
    StrictlyInfinite,
}

/// May the empty set appear as a covering element?
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementPolicy {
    NonemptyOnly,
    EmptyAllowed,
}

/// Whether `H^0` is computed from coverings or declared to be the counting
/// measure outright.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H0Override {
    None,
    CountingByDefinition,
}

/// The full policy lattice a measure evaluation runs under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoveringConvention {
    pub cardinality: Cardinality,
    pub elements: ElementPolicy,
    pub gauge: GaugePolicy,
    pub bound: DiameterBound,
    pub h0_override: H0Override,
}

/// The named conventions, in the fixed order used by comparison tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Federer,
    Halmos,
    PaperModified,
    ContraNonempty(ZeroPowZero),
    ContraEmpty,
}

impl Preset {
    /// Table rows in their fixed order.
    pub const TABLE: [Preset; 6] = [
        Preset::Federer,
        Preset::Halmos,
        Preset::PaperModified,
        Preset::ContraNonempty(ZeroPowZero::One),
        Preset::ContraNonempty(ZeroPowZero::Zero),
        Preset::ContraEmpty,
    ];

    pub fn convention(self) -> CoveringConvention {
        match self {
            Preset::Federer => CoveringConvention {
                cardinality: Cardinality::AtMostCountable,
                elements: ElementPolicy::NonemptyOnly,
                gauge: GaugePolicy::standard(ZeroPowZero::One),
                bound: DiameterBound::Strict,
                h0_override: H0Override::None,
            },
            Preset::Halmos => CoveringConvention {
                cardinality: Cardinality::AtMostCountable,
                elements: ElementPolicy::NonemptyOnly,
                gauge: GaugePolicy::standard(ZeroPowZero::One),
                bound: DiameterBound::Strict,
                h0_override: H0Override::CountingByDefinition,
            },
            Preset::PaperModified => CoveringConvention {
                cardinality: Cardinality::StrictlyInfinite,
                elements: ElementPolicy::EmptyAllowed,
                gauge: GaugePolicy::modified(),
                bound: DiameterBound::Strict,
                h0_override: H0Override::None,
            },
            Preset::ContraNonempty(zpz) => CoveringConvention {
                cardinality: Cardinality::StrictlyInfinite,
                elements: ElementPolicy::NonemptyOnly,
                gauge: GaugePolicy::standard(zpz),
                bound: DiameterBound::Strict,
                h0_override: H0Override::None,
            },
            Preset::ContraEmpty => CoveringConvention {
                cardinality: Cardinality::StrictlyInfinite,
                elements: ElementPolicy::EmptyAllowed,
                gauge: GaugePolicy::standard(ZeroPowZero::One),
                bound: DiameterBound::Strict,
                h0_override: H0Override::None,
            },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Federer => "federer",
            Preset::Halmos => "halmos",
            Preset::PaperModified => "paper-modified",
            Preset::ContraNonempty(ZeroPowZero::One) => "contra-nonempty(0^0=1)",
            Preset::ContraNonempty(ZeroPowZero::Zero) => "contra-nonempty(0^0=0)",
            Preset::ContraEmpty => "contra-empty",
        }
    }
}

impl CoveringConvention {
    /// The at-most-countable counterpart of a convention: same policies, but
    /// finite coverings allowed. Removing zero-gauge elements turns any
    /// infinite covering into a finite one of the same cost, which is why the
    /// repaired gauge gives the same values under both cardinalities.
    pub fn at_most_countable(mut self) -> CoveringConvention {
        self.cardinality = Cardinality::AtMostCountable;
        self
    }

    /// Same convention with the gauge swapped.
    pub fn with_gauge(mut self, gauge: GaugePolicy) -> CoveringConvention {
        self.gauge = gauge;
        self
    }
}

/// The element repeated countably often to stretch a finite covering into an
/// infinite one, with its per-copy gauge cost; `Unavailable` when no
/// admissible element exists at all, so no infinite covering exists either.
#[derive(Debug, Clone, PartialEq)]
pub enum Padding {
    None,
    EmptySet { per_copy: ExtReal },
    Set { set: PointSet, per_copy: ExtReal },
    Unavailable,
}

impl Padding {
    /// What the padding contributes to the total: the ω-sum of its per-copy
    /// cost, `0` when no padding is needed, `∞` when none exists.
    pub fn omega_contribution(&self) -> ExtReal {
        match self {
            Padding::None => ExtReal::ZERO,
            Padding::EmptySet { per_copy } | Padding::Set { per_copy, .. } => {
                ExtReal::omega_sum(*per_copy)
            }
            Padding::Unavailable => ExtReal::Infinity,
        }
    }
}

/// Which algorithm produced the finite support, if a solver ran at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportProvenance {
    /// No solver needed: the target was empty or the value is by definition.
    Direct,
    Solver(SolverKind),
}

/// An `H^m_δ` value with the covering certificate witnessing it.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureResult {
    pub value: ExtReal,
    pub finite_support: CoverSolution,
    pub padding: Padding,
    pub convention: CoveringConvention,
    pub delta: ExtReal,
    pub m: f64,
    /// How the finite support was obtained.
    pub provenance: SupportProvenance,
    /// True when the value is the proven infimum: complete candidate
    /// enumeration and an exact solver. Heuristic candidates or a greedy /
    /// timed-out solve make it an upper bound instead.
    pub exact: bool,
}

impl MeasureResult {
    /// Re-derives the value from the certificate fields.
    pub fn rederived_value(&self) -> ExtReal {
        self.finite_support.cost + self.padding.omega_contribution()
    }
}

/// Solver selection plus the wall-clock budget branch and bound may spend.
#[derive(Debug, Clone, Copy)]
pub struct SolverChoice {
    pub kind: SolverKind,
    pub timeout: Duration,
}

impl Default for SolverChoice {
    fn default() -> Self {
        SolverChoice {
            kind: SolverKind::Auto,
            timeout: cover::DEFAULT_TIMEOUT,
        }
    }
}

impl From<SolverKind> for SolverChoice {
    fn from(kind: SolverKind) -> Self {
        SolverChoice {
            kind,
            ..SolverChoice::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("subset contains indices outside the space")]
    SubsetNotInSpace,
    #[error("dimension parameter must be a finite nonnegative real, got {m}")]
    BadM { m: f64 },
    #[error("delta must be positive")]
    BadDelta,
    #[error(transparent)]
    Gauge(#[from] GaugeError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

fn validate(
    space: &FiniteMetricSpace,
    a: &PointSet,
    m: f64,
    delta: ExtReal,
) -> Result<(), MeasureError> {
    if !a.belongs_to(space) {
        return Err(MeasureError::SubsetNotInSpace);
    }
    if m.is_nan() || m < 0.0 || m.is_infinite() {
        return Err(MeasureError::BadM { m });
    }
    if delta <= ExtReal::ZERO {
        return Err(MeasureError::BadDelta);
    }
    Ok(())
}

/// `H^0(A) = |A|` outright, for the counting-by-definition override. The
/// certificate is the singleton cover, whose cost re-sums to the cardinality.
fn counting_result(a: &PointSet, conv: CoveringConvention, delta: ExtReal) -> MeasureResult {
    let chosen: Vec<PointSet> = a
        .indices()
        .iter()
        .map(|&i| PointSet::singleton(i))
        .collect();
    let cost: ExtReal = chosen.iter().map(|_| ExtReal::finite(1.0)).sum();
    MeasureResult {
        value: cost,
        finite_support: CoverSolution {
            chosen_indices: (0..a.len()).collect(),
            chosen,
            cost,
            optimal: true,
        },
        padding: Padding::None,
        convention: conv,
        delta,
        m: 0.0,
        provenance: SupportProvenance::Direct,
        exact: true,
    }
}

/// The admissible covering candidates inside `a`, their gauge weights, and
/// whether the family is the complete enumeration (false when `a` is over the
/// enumeration cap and only singletons plus maximal cliques are generated).
fn build_instance(
    space: &FiniteMetricSpace,
    a: &PointSet,
    m: f64,
    delta: ExtReal,
    conv: CoveringConvention,
) -> Result<(CoverInstance, bool), MeasureError> {
    match admissible_masks_with_diameters(space, a, delta, conv.bound) {
        Ok(masks) => {
            let mut candidates = Vec::with_capacity(masks.len());
            let mut weights = Vec::with_capacity(masks.len());
            for (mask, diam) in masks {
                candidates.push(mask_to_set(a, mask));
                weights.push(zeta_of_diameter(
                    mask.count_ones() as usize,
                    ExtReal::finite(diam),
                    m,
                    conv.gauge,
                )?);
            }
            Ok((CoverInstance::new(a.clone(), candidates, weights)?, true))
        }
        Err(_) => {
            let candidates = heuristic_candidates(space, a, delta, conv.bound);
            let mut weights = Vec::with_capacity(candidates.len());
            for c in &candidates {
                weights.push(zeta_of_diameter(
                    c.len(),
                    diameter(space, c),
                    m,
                    conv.gauge,
                )?);
            }
            Ok((CoverInstance::new(a.clone(), candidates, weights)?, false))
        }
    }
}

/// The cheapest element an infinite covering can repeat: the empty set when
/// the convention admits it, else the cheapest admissible nonempty set, which
/// by gauge monotonicity is a singleton. Ties prefer the empty set.
fn best_padding(
    space: &FiniteMetricSpace,
    a: &PointSet,
    m: f64,
    conv: CoveringConvention,
) -> Result<Padding, MeasureError> {
    let mut best: Option<Padding> = None;
    if conv.elements == ElementPolicy::EmptyAllowed {
        let per_copy = zeta_of_diameter(0, ExtReal::ZERO, m, conv.gauge)?;
        best = Some(Padding::EmptySet { per_copy });
    }
    // Singletons are admissible at every positive scale (diam = 0), and no
    // nonempty element is cheaper; all singletons cost the same, so the
    // witness is the first point of `a`, or of the space when `a` is empty.
    let witness = a
        .indices()
        .first()
        .copied()
        .or(if space.is_empty() { None } else { Some(0) });
    if let Some(i) = witness {
        let per_copy = zeta_of_diameter(1, ExtReal::ZERO, m, conv.gauge)?;
        let candidate = Padding::Set {
            set: PointSet::singleton(i),
            per_copy,
        };
        best = match best {
            None => Some(candidate),
            Some(current) => {
                let current_cost = match &current {
                    Padding::EmptySet { per_copy } | Padding::Set { per_copy, .. } => *per_copy,
                    _ => unreachable!(),
                };
                if per_copy < current_cost {
                    Some(candidate)
                } else {
                    Some(current)
                }
            }
        };
    }
    Ok(best.unwrap_or(Padding::Unavailable))
}

/// `H^m_δ(a)`: the infimum of gauge sums over δ-coverings of `a` drawn under
/// `conv`. For at-most-countable conventions this is the weighted set-cover
/// optimum (the empty covering handles `a = ∅`); strictly-infinite conventions
/// add the ω-sum of the cheapest admissible padding element, and are `∞` when
/// no admissible element exists at all.
pub fn h_m_delta(
    space: &FiniteMetricSpace,
    a: &PointSet,
    m: f64,
    delta: ExtReal,
    conv: CoveringConvention,
    choice: SolverChoice,
) -> Result<MeasureResult, MeasureError> {
    validate(space, a, m, delta)?;
    if conv.h0_override == H0Override::CountingByDefinition && m == 0.0 {
        return Ok(counting_result(a, conv, delta));
    }

    let (finite_support, provenance, complete) = if a.is_empty() {
        let empty = CoverSolution {
            chosen: Vec::new(),
            chosen_indices: Vec::new(),
            cost: ExtReal::ZERO,
            optimal: true,
        };
        (empty, SupportProvenance::Direct, true)
    } else {
        let (instance, complete) = build_instance(space, a, m, delta, conv)?;
        let resolved = choice.kind.resolve(a.len());
        let solution = cover::solve(&instance, resolved, choice.timeout)?;
        debug_assert!(instance.verify(&solution).is_ok());
        (solution, SupportProvenance::Solver(resolved), complete)
    };

    let padding = match conv.cardinality {
        Cardinality::AtMostCountable => Padding::None,
        Cardinality::StrictlyInfinite => best_padding(space, a, m, conv)?,
    };
    let value = finite_support.cost + padding.omega_contribution();
    let exact = complete && finite_support.optimal;
    Ok(MeasureResult {
        value,
        finite_support,
        padding,
        convention: conv,
        delta,
        m,
        provenance,
        exact,
    })
}

/// The scale below which nothing changes: with only singletons admissible the
/// infimum is already the `δ → 0` limit. Strict bounds stabilize at the least
/// positive distance itself, weak bounds strictly below it.
pub fn stabilization_delta(
    space: &FiniteMetricSpace,
    a: &PointSet,
    bound: DiameterBound,
) -> ExtReal {
    if a.is_empty() || space.len() <= 1 {
        return ExtReal::finite(1.0);
    }
    let d_min = space
        .min_positive_distance()
        .expect("two or more distinct points have a positive distance");
    match bound {
        DiameterBound::Strict => ExtReal::finite(d_min),
        DiameterBound::Weak => ExtReal::finite(d_min / 2.0),
    }
}

/// `H^m(a) = sup_{δ>0} H^m_δ(a)`. On a finite space the supremum stabilizes
/// once δ is at (strict) or below (weak) the least positive distance, so it is
/// evaluated there exactly rather than by numeric limiting.
pub fn h_m(
    space: &FiniteMetricSpace,
    a: &PointSet,
    m: f64,
    conv: CoveringConvention,
    choice: SolverChoice,
) -> Result<MeasureResult, MeasureError> {
    let delta = stabilization_delta(space, a, conv.bound);
    h_m_delta(space, a, m, delta, conv, choice)
}

/// One comparison row: a preset and the value it assigns.
#[derive(Debug, Clone, PartialEq)]
pub struct ConventionRow {
    pub preset: Preset,
    pub value: ExtReal,
}

/// Evaluates `H^m_δ(a)` under every named preset, in the fixed table order.
pub fn compare_conventions(
    space: &FiniteMetricSpace,
    a: &PointSet,
    m: f64,
    delta: ExtReal,
    choice: SolverChoice,
) -> Result<Vec<ConventionRow>, MeasureError> {
    Preset::TABLE
        .iter()
        .map(|&preset| {
            let result = h_m_delta(space, a, m, delta, preset.convention(), choice)?;
            Ok(ConventionRow {
                preset,
                value: result.value,
            })
        })
        .collect()
}
