//! Exact Hausdorff measures on finite metric spaces.
//!
//! The crate computes `H^m_δ` and `H^m` on finite metric spaces under a
//! configurable covering convention — how large a covering family may be,
//! whether the empty set may appear in it, which gauge weighs an element, the
//! value of `0^0`, and whether the diameter bound is strict — and estimates
//! Hausdorff dimension on discretized self-similar sets.
//!
//! Pipeline: [`space`] validates metric spaces and enumerates the covering
//! candidates admissible at a scale; [`gauge`] weighs candidates; [`cover`]
//! takes the covering infimum as a weighted minimum set cover; [`measure`]
//! assembles those into the measure values, including the infinite-covering
//! semantics where the cheapest endlessly repeatable element decides between
//! `0` and `∞`; [`fractal`] runs scale sweeps on middle-thirds Cantor
//! discretizations. Everything is a pure function over immutable values and
//! safe to call concurrently.
//!
//! ```
//! use hausdorff_core::measure::{h_m, Preset, SolverChoice};
//! use hausdorff_core::{ExtReal, FiniteMetricSpace};
//!
//! let space = FiniteMetricSpace::from_points_euclidean(&[
//!     vec![0.0, 0.0],
//!     vec![1.0, 0.0],
//!     vec![0.0, 1.0],
//! ])
//! .unwrap();
//! let counted = h_m(
//!     &space,
//!     &space.all_points(),
//!     0.0,
//!     Preset::Federer.convention(),
//!     SolverChoice::default(),
//! )
//! .unwrap();
//! assert_eq!(counted.value, ExtReal::finite(3.0));
//! ```

pub mod cover;
pub mod extreal;
pub mod fractal;
pub mod gauge;
pub mod measure;
pub mod sampling;
pub mod space;

pub use cover::{CoverInstance, CoverSolution, SolverKind};
pub use extreal::ExtReal;
pub use gauge::{alpha, gamma, zeta, GaugePolicy, GaugeVariant, ZeroPowZero};
pub use measure::{
    compare_conventions, h_m, h_m_delta, CoveringConvention, MeasureResult, Padding, Preset,
    SolverChoice,
};
pub use space::{admissible_sets, diameter, DiameterBound, FiniteMetricSpace, PointSet};
