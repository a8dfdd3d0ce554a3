//! Finite metric spaces, point subsets, diameters, and enumeration of the
//! covering candidates admissible at a given scale.
//!
//! A [`FiniteMetricSpace`] is a list of labeled points with a validated
//! distance matrix: symmetric, zero diagonal, strictly positive off-diagonal
//! (points are distinct, pseudo-metrics are rejected), and triangle inequality
//! within an absolute tolerance of `1e-12`. A [`PointSet`] is a canonical
//! (sorted, deduplicated, possibly empty) set of indices into a space.

use crate::extreal::ExtReal;
use thiserror::Error;

/// Absolute tolerance for the triangle-inequality check; inputs typically come
/// from floating-point coordinates.
pub const TRIANGLE_TOLERANCE: f64 = 1e-12;

/// Cap on the subset count for full admissible-set enumeration (`2^n` sets).
/// Larger targets must use heuristic candidate generation (maximal cliques).
pub const ENUMERATION_CAP: usize = 20;

/// Ways a candidate distance matrix can fail to be a metric on distinct points.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricViolation {
    #[error("distance matrix is {rows}x{cols} but there are {labels} labels")]
    Shape {
        rows: usize,
        cols: usize,
        labels: usize,
    },
    #[error("duplicate label {label:?}")]
    DuplicateLabel { label: String },
    #[error("dist[{i}][{i}] = {value} but the diagonal must be 0")]
    NonzeroDiagonal { i: usize, value: f64 },
    #[error("dist[{i}][{j}] = {value} is negative or not a number")]
    Negative { i: usize, j: usize, value: f64 },
    #[error("asymmetric: dist[{i}][{j}] = {ij} but dist[{j}][{i}] = {ji}")]
    Asymmetry {
        i: usize,
        j: usize,
        ij: f64,
        ji: f64,
    },
    #[error("points {i} and {j} coincide (distance 0); points must be distinct")]
    Distinctness { i: usize, j: usize },
    #[error(
        "triangle inequality fails: dist[{i}][{k}] = {ik} > dist[{i}][{j}] + dist[{j}][{k}] = {sum}"
    )]
    Triangle {
        i: usize,
        j: usize,
        k: usize,
        ik: f64,
        sum: f64,
    },
}

/// Errors from building a space out of Euclidean coordinates.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EuclideanError {
    #[error("point {index} has dimension {got}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("points {i} and {j} are identical")]
    DuplicatePoint { i: usize, j: usize },
    #[error(transparent)]
    Metric(#[from] MetricViolation),
}

/// Error from asking for full subset enumeration over too many points.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("subset enumeration over {size} points exceeds the cap of {cap}; use heuristic candidates")]
pub struct TooManyPoints {
    pub size: usize,
    pub cap: usize,
}

/// Whether an admissible covering element must have diameter strictly below
/// the scale (`< δ`) or may reach it (`≤ δ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiameterBound {
    Strict,
    Weak,
}

impl DiameterBound {
    /// Tests `diam` against `delta` under this policy.
    pub fn admits(self, diam: ExtReal, delta: ExtReal) -> bool {
        match self {
            DiameterBound::Strict => diam < delta,
            DiameterBound::Weak => diam <= delta,
        }
    }
}

/// A finite metric space: labeled points plus a validated distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<Vec<f64>>,
}

impl FiniteMetricSpace {
    /// Validates a full distance matrix and returns the space.
    pub fn build(labels: Vec<String>, dist: Vec<Vec<f64>>) -> Result<Self, MetricViolation> {
        let n = labels.len();
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            let rows = dist.len();
            let cols = dist.iter().map(|r| r.len()).max().unwrap_or(0);
            return Err(MetricViolation::Shape {
                rows,
                cols,
                labels: n,
            });
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if labels[i] == labels[j] {
                    return Err(MetricViolation::DuplicateLabel {
                        label: labels[i].clone(),
                    });
                }
            }
        }
        #[allow(clippy::needless_range_loop)] // index math mirrors the reported coordinates
        for i in 0..n {
            if dist[i][i] != 0.0 {
                return Err(MetricViolation::NonzeroDiagonal {
                    i,
                    value: dist[i][i],
                });
            }
            for j in 0..n {
                let d = dist[i][j];
                if d.is_nan() || d < 0.0 {
                    return Err(MetricViolation::Negative { i, j, value: d });
                }
                if dist[i][j] != dist[j][i] {
                    return Err(MetricViolation::Asymmetry {
                        i,
                        j,
                        ij: dist[i][j],
                        ji: dist[j][i],
                    });
                }
                if i != j && d == 0.0 {
                    return Err(MetricViolation::Distinctness {
                        i: i.min(j),
                        j: i.max(j),
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let sum = dist[i][j] + dist[j][k];
                    if dist[i][k] > sum + TRIANGLE_TOLERANCE {
                        return Err(MetricViolation::Triangle {
                            i,
                            j,
                            k,
                            ik: dist[i][k],
                            sum,
                        });
                    }
                }
            }
        }
        Ok(FiniteMetricSpace { labels, dist })
    }

    /// Builds the space of the given coordinate vectors under the Euclidean
    /// distance. All vectors must share one dimension and be pairwise distinct.
    pub fn from_points_euclidean(coords: &[Vec<f64>]) -> Result<Self, EuclideanError> {
        let n = coords.len();
        let dim = coords.first().map_or(0, |c| c.len());
        for (index, c) in coords.iter().enumerate() {
            if c.len() != dim {
                return Err(EuclideanError::DimensionMismatch {
                    index,
                    expected: dim,
                    got: c.len(),
                });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if coords[i] == coords[j] {
                    return Err(EuclideanError::DuplicatePoint { i, j });
                }
            }
        }
        let mut dist = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = coords[i]
                    .iter()
                    .zip(&coords[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                dist[i][j] = d;
                dist[j][i] = d;
            }
        }
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        Ok(FiniteMetricSpace::build(labels, dist)?)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Distance between points `i` and `j`.
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }

    /// The least distance between different points, or `None` for spaces with
    /// fewer than two points.
    pub fn min_positive_distance(&self) -> Option<f64> {
        let n = self.len();
        let mut best: Option<f64> = None;
        for i in 0..n {
            for j in (i + 1)..n {
                let d = self.dist[i][j];
                best = Some(match best {
                    Some(b) => b.min(d),
                    None => d,
                });
            }
        }
        best
    }

    /// The full point set `X`.
    pub fn all_points(&self) -> PointSet {
        PointSet::new((0..self.len()).collect())
    }
}

/// A canonical subset of a space's points. The empty set is a legal value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointSet {
    indices: Vec<usize>,
}

impl PointSet {
    /// Canonicalizes (sorts and deduplicates) the given indices.
    pub fn new(mut indices: Vec<usize>) -> PointSet {
        indices.sort_unstable();
        indices.dedup();
        PointSet { indices }
    }

    pub fn empty() -> PointSet {
        PointSet {
            indices: Vec::new(),
        }
    }

    pub fn singleton(i: usize) -> PointSet {
        PointSet { indices: vec![i] }
    }

    /// Looks up labels in `space` and returns their set.
    pub fn from_labels<S: AsRef<str>>(
        space: &FiniteMetricSpace,
        labels: &[S],
    ) -> Result<PointSet, UnknownLabel> {
        let mut indices = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            match space.index_of(l) {
                Some(i) => indices.push(i),
                None => {
                    return Err(UnknownLabel {
                        label: l.to_string(),
                    })
                }
            }
        }
        Ok(PointSet::new(indices))
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        self.indices.iter().all(|i| other.contains(*i))
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut v = self.indices.clone();
        v.extend_from_slice(&other.indices);
        PointSet::new(v)
    }

    /// True when every index is a valid point of `space`.
    pub fn belongs_to(&self, space: &FiniteMetricSpace) -> bool {
        self.indices.last().is_none_or(|&m| m < space.len())
    }
}

/// Error for a subset label that does not name a point of the space.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("unknown point label {label:?}")]
pub struct UnknownLabel {
    pub label: String,
}

/// `sup` of the pairwise distances of `s`, which is `0` for the empty set
/// (`sup ∅ = 0`) and for singletons.
pub fn diameter(space: &FiniteMetricSpace, s: &PointSet) -> ExtReal {
    assert!(
        s.belongs_to(space),
        "point set does not belong to the space"
    );
    let idx = s.indices();
    let mut best = 0.0f64;
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            best = best.max(space.dist(i, j));
        }
    }
    ExtReal::finite(best)
}

/// Diameters of every subset of `points`, indexed by bitmask over positions in
/// `points`. `points.len()` must be at most [`ENUMERATION_CAP`].
fn subset_diameters(space: &FiniteMetricSpace, points: &[usize]) -> Vec<f64> {
    let n = points.len();
    let mut diam = vec![0.0f64; 1 << n];
    for mask in 1..(1usize << n) {
        let top = (usize::BITS - 1 - mask.leading_zeros()) as usize;
        let rest = mask & !(1 << top);
        if rest == 0 {
            continue; // singleton
        }
        let mut reach = 0.0f64;
        let mut bits = rest;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            reach = reach.max(space.dist(points[top], points[b]));
            bits &= bits - 1;
        }
        diam[mask] = diam[rest].max(reach);
    }
    diam
}

/// All nonempty subsets `S ⊆ a` admissible at scale `delta` under `bound`,
/// i.e. with `diam S < δ` (strict) or `≤ δ` (weak). Equivalently, all cliques
/// of the graph on `a` whose edges are the point pairs within the scale.
///
/// Restricting candidates to subsets of `a` loses nothing: intersecting a
/// covering element with `a` preserves coverage and never increases its
/// diameter, hence never increases its gauge cost.
pub fn admissible_sets(
    space: &FiniteMetricSpace,
    a: &PointSet,
    delta: ExtReal,
    bound: DiameterBound,
) -> Result<Vec<PointSet>, TooManyPoints> {
    Ok(admissible_masks(space, a, delta, bound)?
        .into_iter()
        .map(|mask| mask_to_set(a, mask))
        .collect())
}

/// Bitmask form of [`admissible_sets`]: masks are over positions in
/// `a.indices()`, in increasing numeric order.
pub fn admissible_masks(
    space: &FiniteMetricSpace,
    a: &PointSet,
    delta: ExtReal,
    bound: DiameterBound,
) -> Result<Vec<u32>, TooManyPoints> {
    Ok(admissible_masks_with_diameters(space, a, delta, bound)?
        .into_iter()
        .map(|(mask, _)| mask)
        .collect())
}

/// [`admissible_masks`] paired with each subset's diameter, so gauge
/// evaluation can skip the pairwise scan.
pub fn admissible_masks_with_diameters(
    space: &FiniteMetricSpace,
    a: &PointSet,
    delta: ExtReal,
    bound: DiameterBound,
) -> Result<Vec<(u32, f64)>, TooManyPoints> {
    assert!(
        a.belongs_to(space),
        "point set does not belong to the space"
    );
    assert!(
        delta > ExtReal::ZERO,
        "admissibility scale must be positive"
    );
    let n = a.len();
    if n > ENUMERATION_CAP {
        return Err(TooManyPoints {
            size: n,
            cap: ENUMERATION_CAP,
        });
    }
    let diam = subset_diameters(space, a.indices());
    let mut out = Vec::new();
    for (mask, &d) in diam.iter().enumerate().skip(1) {
        if bound.admits(ExtReal::finite(d), delta) {
            out.push((mask as u32, d));
        }
    }
    Ok(out)
}

/// Converts a position bitmask over `a.indices()` back into a set of space
/// indices.
pub fn mask_to_set(a: &PointSet, mask: u32) -> PointSet {
    let idx = a.indices();
    let mut v = Vec::with_capacity(mask.count_ones() as usize);
    let mut bits = mask;
    while bits != 0 {
        let b = bits.trailing_zeros() as usize;
        v.push(idx[b]);
        bits &= bits - 1;
    }
    PointSet { indices: v }
}

/// Heuristic candidate family for targets too large to enumerate: every
/// singleton of `a` plus every maximal clique of the admissibility graph on
/// `a`. For the supported gauges this family still contains an optimal cover
/// (singletons realize the zero-cost covers at `m > 0`; at `m = 0` every
/// admissible set with at least one point costs the same, so maximal cliques
/// dominate), but solvers run on it are flagged heuristic unless exact.
pub fn heuristic_candidates(
    space: &FiniteMetricSpace,
    a: &PointSet,
    delta: ExtReal,
    bound: DiameterBound,
) -> Vec<PointSet> {
    assert!(
        a.belongs_to(space),
        "point set does not belong to the space"
    );
    let idx = a.indices();
    let n = idx.len();
    // adjacency over positions in `a`
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|p| {
            (0..n)
                .filter(|&q| {
                    q != p && bound.admits(ExtReal::finite(space.dist(idx[p], idx[q])), delta)
                })
                .collect()
        })
        .collect();
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    bron_kerbosch(
        &adj,
        &mut Vec::new(),
        (0..n).collect(),
        Vec::new(),
        space,
        idx,
        delta,
        bound,
        &mut cliques,
    );
    let mut out: Vec<PointSet> = idx.iter().map(|&i| PointSet::singleton(i)).collect();
    for c in &mut cliques {
        c.sort_unstable();
    }
    cliques.sort();
    cliques.dedup();
    for c in cliques {
        if c.len() > 1 {
            out.push(PointSet::new(c.iter().map(|&p| idx[p]).collect()));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Bron–Kerbosch with pivoting, plus a diameter filter: a clique in the
/// pairwise graph may still exceed the scale only under floating-point
/// asymmetries, but the filter keeps the contract airtight regardless.
#[allow(clippy::too_many_arguments)]
fn bron_kerbosch(
    adj: &[Vec<usize>],
    r: &mut Vec<usize>,
    p: Vec<usize>,
    x: Vec<usize>,
    space: &FiniteMetricSpace,
    idx: &[usize],
    delta: ExtReal,
    bound: DiameterBound,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        if !r.is_empty() {
            let set = PointSet::new(r.iter().map(|&q| idx[q]).collect());
            if bound.admits(diameter(space, &set), delta) {
                out.push(r.clone());
            }
        }
        return;
    }
    // pivot: vertex of P ∪ X with the most neighbors in P
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| adj[u].iter().filter(|v| p.contains(v)).count())
        .unwrap();
    let candidates: Vec<usize> = p
        .iter()
        .copied()
        .filter(|v| !adj[pivot].contains(v))
        .collect();
    let mut p = p;
    let mut x = x;
    for v in candidates {
        let pv: Vec<usize> = p.iter().copied().filter(|u| adj[v].contains(u)).collect();
        let xv: Vec<usize> = x.iter().copied().filter(|u| adj[v].contains(u)).collect();
        r.push(v);
        bron_kerbosch(adj, r, pv, xv, space, idx, delta, bound, out);
        r.pop();
        p.retain(|&u| u != v);
        x.push(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space_2pt(d: f64) -> FiniteMetricSpace {
        FiniteMetricSpace::build(
            vec!["p".into(), "q".into()],
            vec![vec![0.0, d], vec![d, 0.0]],
        )
        .unwrap()
    }

    /// Three points pairwise at distance 1.
    fn triangle_space() -> FiniteMetricSpace {
        FiniteMetricSpace::build(
            vec!["p".into(), "q".into(), "r".into()],
            vec![
                vec![0.0, 1.0, 1.0],
                vec![1.0, 0.0, 1.0],
                vec![1.0, 1.0, 0.0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn builds_minimal_two_point_space() {
        let s = space_2pt(3.0);
        assert_eq!(s.len(), 2);
        assert_eq!(s.dist(0, 1), 3.0);
    }

    #[test]
    fn rejects_triangle_violation_with_indices() {
        let err = FiniteMetricSpace::build(
            vec!["p".into(), "q".into(), "r".into()],
            vec![
                vec![0.0, 1.0, 5.0],
                vec![1.0, 0.0, 1.0],
                vec![5.0, 1.0, 0.0],
            ],
        )
        .unwrap_err();
        match err {
            MetricViolation::Triangle { i, j, k, ik, sum } => {
                assert_eq!((i, j, k), (0, 1, 2));
                assert_eq!(ik, 5.0);
                assert_eq!(sum, 2.0);
            }
            other => panic!("expected triangle violation, got {other:?}"),
        }
    }

    #[test]
    fn rejects_coincident_points() {
        let err = FiniteMetricSpace::build(
            vec!["p".into(), "q".into()],
            vec![vec![0.0, 0.0], vec![0.0, 0.0]],
        )
        .unwrap_err();
        assert!(matches!(err, MetricViolation::Distinctness { i: 0, j: 1 }));
    }

    #[test]
    fn rejects_asymmetry_and_negative_and_diagonal() {
        let asym = FiniteMetricSpace::build(
            vec!["p".into(), "q".into()],
            vec![vec![0.0, 1.0], vec![2.0, 0.0]],
        )
        .unwrap_err();
        assert!(matches!(asym, MetricViolation::Asymmetry { .. }));

        let neg = FiniteMetricSpace::build(
            vec!["p".into(), "q".into()],
            vec![vec![0.0, -1.0], vec![-1.0, 0.0]],
        )
        .unwrap_err();
        assert!(matches!(neg, MetricViolation::Negative { .. }));

        let diag = FiniteMetricSpace::build(
            vec!["p".into(), "q".into()],
            vec![vec![0.5, 1.0], vec![1.0, 0.0]],
        )
        .unwrap_err();
        assert!(matches!(
            diag,
            MetricViolation::NonzeroDiagonal { i: 0, .. }
        ));
    }

    #[test]
    fn euclidean_line_distances() {
        let s =
            FiniteMetricSpace::from_points_euclidean(&[vec![0.0], vec![1.0], vec![3.0]]).unwrap();
        assert_eq!(s.dist(0, 1), 1.0);
        assert_eq!(s.dist(1, 2), 2.0);
        assert_eq!(s.dist(0, 2), 3.0);
    }

    #[test]
    fn euclidean_3_4_5() {
        let s =
            FiniteMetricSpace::from_points_euclidean(&[vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(s.dist(0, 1), 5.0);
    }

    #[test]
    fn euclidean_rejects_duplicates_and_mixed_dimension() {
        let dup = FiniteMetricSpace::from_points_euclidean(&[vec![0.0, 0.0], vec![0.0, 0.0]]);
        assert!(matches!(
            dup,
            Err(EuclideanError::DuplicatePoint { i: 0, j: 1 })
        ));
        let mixed = FiniteMetricSpace::from_points_euclidean(&[vec![0.0], vec![0.0, 1.0]]);
        assert!(matches!(
            mixed,
            Err(EuclideanError::DimensionMismatch { index: 1, .. })
        ));
    }

    #[test]
    fn diameter_of_empty_set_is_zero() {
        let s = triangle_space();
        assert_eq!(diameter(&s, &PointSet::empty()), ExtReal::ZERO);
    }

    #[test]
    fn diameter_of_singleton_is_zero() {
        let s = triangle_space();
        assert_eq!(diameter(&s, &PointSet::singleton(0)), ExtReal::ZERO);
    }

    #[test]
    fn diameter_of_pair_is_their_distance() {
        let s = space_2pt(3.0);
        assert_eq!(
            diameter(&s, &PointSet::new(vec![0, 1])),
            ExtReal::finite(3.0)
        );
    }

    #[test]
    fn admissible_small_delta_gives_singletons() {
        let s = triangle_space();
        let sets = admissible_sets(
            &s,
            &s.all_points(),
            ExtReal::finite(0.5),
            DiameterBound::Strict,
        )
        .unwrap();
        assert_eq!(sets.len(), 3);
        assert!(sets.iter().all(|s| s.len() == 1));
    }

    #[test]
    fn admissible_large_delta_gives_all_nonempty_subsets() {
        let s = triangle_space();
        let sets = admissible_sets(
            &s,
            &s.all_points(),
            ExtReal::finite(2.0),
            DiameterBound::Strict,
        )
        .unwrap();
        assert_eq!(sets.len(), 7);
    }

    #[test]
    fn boundary_delta_strict_vs_weak() {
        let s = space_2pt(3.0);
        let strict = admissible_sets(
            &s,
            &s.all_points(),
            ExtReal::finite(3.0),
            DiameterBound::Strict,
        )
        .unwrap();
        assert_eq!(strict.len(), 2);
        let weak = admissible_sets(
            &s,
            &s.all_points(),
            ExtReal::finite(3.0),
            DiameterBound::Weak,
        )
        .unwrap();
        assert_eq!(weak.len(), 3);
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let coords: Vec<Vec<f64>> = (0..21).map(|i| vec![i as f64]).collect();
        let s = FiniteMetricSpace::from_points_euclidean(&coords).unwrap();
        let err = admissible_sets(
            &s,
            &s.all_points(),
            ExtReal::finite(0.5),
            DiameterBound::Strict,
        )
        .unwrap_err();
        assert_eq!(err.cap, ENUMERATION_CAP);
        assert_eq!(err.size, 21);
    }

    #[test]
    fn admissible_sets_downward_closed_and_monotone_in_delta() {
        let coords = vec![vec![0.0], vec![0.4], vec![1.0], vec![2.3]];
        let s = FiniteMetricSpace::from_points_euclidean(&coords).unwrap();
        let all = s.all_points();
        for (d1, d2) in [(0.5, 1.1), (1.1, 2.5), (0.7, 0.9)] {
            let small =
                admissible_masks(&s, &all, ExtReal::finite(d1), DiameterBound::Strict).unwrap();
            let large =
                admissible_masks(&s, &all, ExtReal::finite(d2), DiameterBound::Strict).unwrap();
            for m in &small {
                assert!(
                    large.contains(m),
                    "delta-monotonicity failed at {d1} vs {d2}"
                );
            }
        }
        let masks =
            admissible_masks(&s, &all, ExtReal::finite(1.1), DiameterBound::Strict).unwrap();
        for &m in &masks {
            let mut sub = (m.wrapping_sub(1)) & m;
            while sub != 0 {
                assert!(
                    masks.contains(&sub),
                    "subset {sub:b} of admissible {m:b} missing"
                );
                sub = (sub - 1) & m;
            }
        }
    }

    #[test]
    fn heuristic_candidates_contain_singletons_and_cliques() {
        let coords = vec![vec![0.0], vec![0.1], vec![0.2], vec![5.0]];
        let s = FiniteMetricSpace::from_points_euclidean(&coords).unwrap();
        let cands = heuristic_candidates(
            &s,
            &s.all_points(),
            ExtReal::finite(0.25),
            DiameterBound::Strict,
        );
        // singletons 0..3 plus the clique {0,1,2} and no pair dominated by it
        assert!(cands.contains(&PointSet::new(vec![0, 1, 2])));
        for i in 0..4 {
            assert!(cands.contains(&PointSet::singleton(i)));
        }
        assert!(!cands.contains(&PointSet::new(vec![2, 3])));
    }

    #[test]
    fn heuristic_cliques_match_enumeration_maximals() {
        let coords = vec![vec![0.0], vec![0.3], vec![0.5], vec![0.9], vec![1.4]];
        let s = FiniteMetricSpace::from_points_euclidean(&coords).unwrap();
        let all = s.all_points();
        let delta = ExtReal::finite(0.6);
        let masks = admissible_masks(&s, &all, delta, DiameterBound::Strict).unwrap();
        let maximal: Vec<PointSet> = masks
            .iter()
            .filter(|&&m| !masks.iter().any(|&other| other != m && (other & m) == m))
            .map(|&m| mask_to_set(&all, m))
            .collect();
        let cands = heuristic_candidates(&s, &all, delta, DiameterBound::Strict);
        for ms in &maximal {
            assert!(
                cands.contains(ms),
                "maximal clique {ms:?} missing from heuristic family"
            );
        }
    }

    #[test]
    fn point_set_canonicalization() {
        let s = PointSet::new(vec![3, 1, 1, 2]);
        assert_eq!(s.indices(), &[1, 2, 3]);
        assert!(PointSet::empty().is_empty());
    }

    #[test]
    fn from_labels_resolves_and_rejects() {
        let s = triangle_space();
        let set = PointSet::from_labels(&s, &["r", "p"]).unwrap();
        assert_eq!(set.indices(), &[0, 2]);
        assert!(PointSet::from_labels(&s, &["z"]).is_err());
    }
}
