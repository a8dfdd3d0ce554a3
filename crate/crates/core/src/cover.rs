//! Weighted minimum set cover over a family of admissible sets: the finite
//! core of the covering infimum.
//!
//! Three solvers plus an independent brute-force oracle:
//!
//! * [`solve_exact_dp`] — subset dynamic programming, exact, targets of at
//!   most [`DP_CAP`] points;
//! * [`solve_branch_and_bound`] — exact with a greedy incumbent and a
//!   per-point cheapest-fraction lower bound; falls back to the incumbent
//!   (flagged non-optimal) when the wall-clock budget runs out;
//! * [`solve_greedy`] — the classical ratio heuristic, never below the
//!   optimum, no size limits;
//! * [`oracle_brute_force`] — enumerates every subfamily of at most
//!   [`ORACLE_CANDIDATE_CAP`] candidates; ground truth for the others.
//!
//! Covers are repetition-free: weights are nonnegative, so dropping a
//! duplicate never increases cost. All solvers are deterministic.

use crate::extreal::ExtReal;
use crate::space::PointSet;
use std::time::{Duration, Instant};
use thiserror::Error;

/// Largest target for subset DP (`2^n` states).
pub const DP_CAP: usize = 15;

/// Hard mask width for branch and bound; 25 points is the practical limit.
pub const BNB_CAP: usize = 64;

/// Largest candidate family the brute-force oracle enumerates (`2^c` subfamilies).
pub const ORACLE_CANDIDATE_CAP: usize = 20;

/// Default wall-clock budget for branch and bound.
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoverError {
    #[error("cover target must be nonempty")]
    EmptyTarget,
    #[error("candidate {index} is empty; covering candidates must be nonempty")]
    EmptyCandidate { index: usize },
    #[error("candidate {index} is not a subset of the target")]
    CandidateNotInTarget { index: usize },
    #[error("got {weights} weights for {candidates} candidates")]
    WeightCountMismatch { candidates: usize, weights: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("target has {size} points, above the exact-DP cap of {cap}")]
    TooLargeForDp { size: usize, cap: usize },
    #[error("target has {size} points, above the branch-and-bound cap of {cap}")]
    TooLargeForBranchAndBound { size: usize, cap: usize },
    #[error("{count} candidates exceed the brute-force oracle cap of {cap}")]
    TooLargeForOracle { count: usize, cap: usize },
}

/// Growable bitmask over target positions.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn zero(len: usize) -> Bits {
        Bits {
            words: vec![0; len.div_ceil(64).max(1)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn union_with(&mut self, other: &Bits) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    fn contains_all(&self, other: &Bits) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(w, o)| o & !w == 0)
    }

    fn count_new(&self, covered: &Bits) -> usize {
        self.words
            .iter()
            .zip(&covered.words)
            .map(|(w, c)| (w & !c).count_ones() as usize)
            .sum()
    }
}

/// A weighted set-cover instance: nonempty target, nonempty candidate sets
/// that are subsets of the target, and one weight per candidate. The union of
/// the candidates need not reach the target; such instances are infeasible and
/// every solver reports cost `∞` for them.
#[derive(Debug, Clone)]
pub struct CoverInstance {
    target: PointSet,
    candidates: Vec<PointSet>,
    weights: Vec<ExtReal>,
    masks: Vec<Bits>,
}

impl CoverInstance {
    pub fn new(
        target: PointSet,
        candidates: Vec<PointSet>,
        weights: Vec<ExtReal>,
    ) -> Result<CoverInstance, CoverError> {
        if target.is_empty() {
            return Err(CoverError::EmptyTarget);
        }
        if weights.len() != candidates.len() {
            return Err(CoverError::WeightCountMismatch {
                candidates: candidates.len(),
                weights: weights.len(),
            });
        }
        let mut masks = Vec::with_capacity(candidates.len());
        for (index, c) in candidates.iter().enumerate() {
            if c.is_empty() {
                return Err(CoverError::EmptyCandidate { index });
            }
            if !c.is_subset_of(&target) {
                return Err(CoverError::CandidateNotInTarget { index });
            }
            let mut bits = Bits::zero(target.len());
            for &i in c.indices() {
                bits.set(target.indices().binary_search(&i).unwrap());
            }
            masks.push(bits);
        }
        Ok(CoverInstance {
            target,
            candidates,
            weights,
            masks,
        })
    }

    pub fn target(&self) -> &PointSet {
        &self.target
    }

    pub fn candidates(&self) -> &[PointSet] {
        &self.candidates
    }

    pub fn weights(&self) -> &[ExtReal] {
        &self.weights
    }

    fn full(&self) -> Bits {
        let mut b = Bits::zero(self.target.len());
        for i in 0..self.target.len() {
            b.set(i);
        }
        b
    }

    /// True when the candidate union reaches the whole target.
    pub fn is_feasible(&self) -> bool {
        let mut covered = Bits::zero(self.target.len());
        for m in &self.masks {
            covered.union_with(m);
        }
        covered.contains_all(&self.full())
    }

    /// Checks a finite-cost certificate: the chosen sets cover the target and
    /// their weights re-sum (in index order) to the reported cost exactly.
    pub fn verify(&self, solution: &CoverSolution) -> Result<(), String> {
        if solution.cost.is_infinite() {
            return if solution.chosen_indices.is_empty() {
                Ok(())
            } else {
                Err("infinite-cost solution must carry an empty certificate".into())
            };
        }
        let mut covered = Bits::zero(self.target.len());
        for &c in &solution.chosen_indices {
            covered.union_with(&self.masks[c]);
        }
        if !covered.contains_all(&self.full()) {
            return Err("chosen sets do not cover the target".into());
        }
        let resum: ExtReal = solution
            .chosen_indices
            .iter()
            .map(|&c| self.weights[c])
            .sum();
        if resum != solution.cost {
            return Err(format!("cost {} does not re-sum ({resum})", solution.cost));
        }
        for (set, &idx) in solution.chosen.iter().zip(&solution.chosen_indices) {
            if set != &self.candidates[idx] {
                return Err("certificate sets disagree with candidate indices".into());
            }
        }
        Ok(())
    }
}

/// A covering certificate: the chosen candidate sets (with their indices into
/// the instance), the summed cost, and whether the cost is proven optimal.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverSolution {
    pub chosen: Vec<PointSet>,
    pub chosen_indices: Vec<usize>,
    pub cost: ExtReal,
    pub optimal: bool,
}

impl CoverSolution {
    fn infeasible(optimal: bool) -> CoverSolution {
        CoverSolution {
            chosen: Vec::new(),
            chosen_indices: Vec::new(),
            cost: ExtReal::Infinity,
            optimal,
        }
    }

    /// Builds the canonical certificate from candidate indices: sorted,
    /// cost re-summed in index order.
    fn from_indices(
        instance: &CoverInstance,
        mut indices: Vec<usize>,
        optimal: bool,
    ) -> CoverSolution {
        indices.sort_unstable();
        let cost = indices.iter().map(|&c| instance.weights[c]).sum();
        CoverSolution {
            chosen: indices
                .iter()
                .map(|&c| instance.candidates[c].clone())
                .collect(),
            chosen_indices: indices,
            cost,
            optimal,
        }
    }
}

/// Which algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    Auto,
    Dp,
    BranchAndBound,
    Greedy,
    Oracle,
}

impl SolverKind {
    /// Resolves `Auto` from the target size: DP while it fits, then branch
    /// and bound, then greedy.
    pub fn resolve(self, target_size: usize) -> SolverKind {
        match self {
            SolverKind::Auto => {
                if target_size <= DP_CAP {
                    SolverKind::Dp
                } else if target_size <= 25 {
                    SolverKind::BranchAndBound
                } else {
                    SolverKind::Greedy
                }
            }
            k => k,
        }
    }
}

/// Runs the resolved solver.
pub fn solve(
    instance: &CoverInstance,
    solver: SolverKind,
    timeout: Duration,
) -> Result<CoverSolution, SolverError> {
    match solver.resolve(instance.target.len()) {
        SolverKind::Dp => solve_exact_dp(instance),
        SolverKind::BranchAndBound => solve_branch_and_bound(instance, timeout),
        SolverKind::Greedy => Ok(solve_greedy(instance)),
        SolverKind::Oracle => oracle_brute_force(instance),
        SolverKind::Auto => unreachable!("resolve never returns Auto"),
    }
}

/// Exact minimum by dynamic programming over covered subsets of the target:
/// each step covers the lowest-index uncovered point with some candidate
/// containing it.
pub fn solve_exact_dp(instance: &CoverInstance) -> Result<CoverSolution, SolverError> {
    let t = instance.target.len();
    if t > DP_CAP {
        return Err(SolverError::TooLargeForDp {
            size: t,
            cap: DP_CAP,
        });
    }
    let full: u32 = (1u32 << t) - 1;
    let cand_mask: Vec<u32> = instance.masks.iter().map(|b| b.words[0] as u32).collect();
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); t];
    for (c, &m) in cand_mask.iter().enumerate() {
        let mut bits = m;
        while bits != 0 {
            containing[bits.trailing_zeros() as usize].push(c);
            bits &= bits - 1;
        }
    }
    let states = 1usize << t;
    let mut cost = vec![ExtReal::Infinity; states];
    let mut step: Vec<Option<(u32, usize)>> = vec![None; states];
    cost[0] = ExtReal::ZERO;
    for mask in 0..states as u32 {
        if mask == full || cost[mask as usize].is_infinite() {
            continue;
        }
        let p = (!mask).trailing_zeros() as usize;
        for &c in &containing[p] {
            let next = mask | cand_mask[c];
            let total = cost[mask as usize] + instance.weights[c];
            if total < cost[next as usize] {
                cost[next as usize] = total;
                step[next as usize] = Some((mask, c));
            }
        }
    }
    if cost[full as usize].is_infinite() {
        return Ok(CoverSolution::infeasible(true));
    }
    let mut chosen = Vec::new();
    let mut at = full;
    while at != 0 {
        let (prev, c) = step[at as usize].expect("finite state must have a predecessor");
        chosen.push(c);
        at = prev;
    }
    Ok(CoverSolution::from_indices(instance, chosen, true))
}

/// Exact minimum by depth-first branch and bound. The greedy cover seeds the
/// incumbent; nodes are pruned when the accumulated cost plus the sum of each
/// uncovered point's cheapest covering fraction (`weight / |candidate|`)
/// cannot beat it. Candidates are tried in order of decreasing coverage per
/// cost. On timeout the best incumbent is returned with `optimal = false`.
pub fn solve_branch_and_bound(
    instance: &CoverInstance,
    timeout: Duration,
) -> Result<CoverSolution, SolverError> {
    let t = instance.target.len();
    if t > BNB_CAP {
        return Err(SolverError::TooLargeForBranchAndBound {
            size: t,
            cap: BNB_CAP,
        });
    }
    let full: u64 = if t == 64 { u64::MAX } else { (1u64 << t) - 1 };
    let cand_mask: Vec<u64> = instance.masks.iter().map(|b| b.words[0]).collect();

    // usable candidates sorted by cost per covered point, cheapest first
    let mut order: Vec<usize> = (0..instance.candidates.len())
        .filter(|&c| !instance.weights[c].is_infinite())
        .collect();
    let frac = |c: usize| instance.weights[c].as_f64() / cand_mask[c].count_ones() as f64;
    order.sort_by(|&a, &b| frac(a).partial_cmp(&frac(b)).unwrap().then(a.cmp(&b)));

    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); t];
    for &c in &order {
        let mut bits = cand_mask[c];
        while bits != 0 {
            containing[bits.trailing_zeros() as usize].push(c);
            bits &= bits - 1;
        }
    }
    // cheapest covering fraction per point; infinity when a point is uncoverable
    let min_frac: Vec<f64> = (0..t)
        .map(|p| {
            containing[p]
                .iter()
                .map(|&c| frac(c))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();

    let greedy = solve_greedy(instance);
    let mut best_cost = greedy.cost;
    let mut best_chosen = greedy.chosen_indices.clone();

    struct Search<'a> {
        instance: &'a CoverInstance,
        cand_mask: &'a [u64],
        containing: &'a [Vec<usize>],
        min_frac: &'a [f64],
        full: u64,
        deadline: Instant,
        nodes: u64,
        timed_out: bool,
    }

    impl Search<'_> {
        fn dfs(
            &mut self,
            covered: u64,
            cost: ExtReal,
            stack: &mut Vec<usize>,
            best_cost: &mut ExtReal,
            best_chosen: &mut Vec<usize>,
        ) {
            if self.timed_out {
                return;
            }
            self.nodes += 1;
            if self.nodes.is_multiple_of(64) && Instant::now() >= self.deadline {
                self.timed_out = true;
                return;
            }
            if covered == self.full {
                if cost < *best_cost {
                    *best_cost = cost;
                    *best_chosen = stack.clone();
                }
                return;
            }
            let mut bound = cost.as_f64();
            let mut rest = self.full & !covered;
            while rest != 0 {
                let p = rest.trailing_zeros() as usize;
                bound += self.min_frac[p];
                rest &= rest - 1;
            }
            if bound >= best_cost.as_f64() {
                return;
            }
            let p = (!covered & self.full).trailing_zeros() as usize;
            for &c in &self.containing[p] {
                stack.push(c);
                self.dfs(
                    covered | self.cand_mask[c],
                    cost + self.instance.weights[c],
                    stack,
                    best_cost,
                    best_chosen,
                );
                stack.pop();
                if self.timed_out {
                    return;
                }
            }
        }
    }

    let mut search = Search {
        instance,
        cand_mask: &cand_mask,
        containing: &containing,
        min_frac: &min_frac,
        full,
        deadline: Instant::now() + timeout,
        nodes: 0,
        timed_out: false,
    };
    search.dfs(
        0,
        ExtReal::ZERO,
        &mut Vec::new(),
        &mut best_cost,
        &mut best_chosen,
    );

    let proven = !search.timed_out;
    if best_cost.is_infinite() {
        return Ok(CoverSolution::infeasible(proven));
    }
    Ok(CoverSolution::from_indices(instance, best_chosen, proven))
}

/// The ratio heuristic: repeatedly pick the candidate minimizing
/// `weight / newly covered`, breaking ties toward the larger set and then the
/// lexicographically smaller one. Never claims optimality; its cost is an
/// upper bound on the exact minimum.
pub fn solve_greedy(instance: &CoverInstance) -> CoverSolution {
    let t = instance.target.len();
    let mut covered = Bits::zero(t);
    let full = instance.full();
    let mut chosen: Vec<usize> = Vec::new();
    while !covered.contains_all(&full) {
        let mut best: Option<(f64, usize, usize)> = None; // ratio, |candidate|, index
        for (c, mask) in instance.masks.iter().enumerate() {
            if instance.weights[c].is_infinite() {
                continue; // an infinite pick could never improve on infeasibility
            }
            let new = mask.count_new(&covered);
            if new == 0 {
                continue;
            }
            let ratio = instance.weights[c].as_f64() / new as f64;
            let size = instance.candidates[c].len();
            let better = match best {
                None => true,
                Some((r, s, i)) => {
                    ratio < r
                        || (ratio == r
                            && (size > s
                                || (size == s
                                    && instance.candidates[c].indices()
                                        < instance.candidates[i].indices())))
                }
            };
            if better {
                best = Some((ratio, size, c));
            }
        }
        match best {
            Some((_, _, c)) => {
                covered.union_with(&instance.masks[c]);
                chosen.push(c);
            }
            None => return CoverSolution::infeasible(false),
        }
    }
    let mut solution = CoverSolution::from_indices(instance, chosen, false);
    solution.optimal = false;
    solution
}

/// Ground truth by exhaustive enumeration of all `2^c` candidate subfamilies,
/// cheapest covering one wins; first such subfamily in numeric order on ties.
pub fn oracle_brute_force(instance: &CoverInstance) -> Result<CoverSolution, SolverError> {
    let c = instance.candidates.len();
    if c > ORACLE_CANDIDATE_CAP {
        return Err(SolverError::TooLargeForOracle {
            count: c,
            cap: ORACLE_CANDIDATE_CAP,
        });
    }
    let full = instance.full();
    let mut best_cost = ExtReal::Infinity;
    let mut best_sub: Option<u32> = None;
    for sub in 0..(1u32 << c) {
        let mut covered = Bits::zero(instance.target.len());
        let mut cost = ExtReal::ZERO;
        let mut bits = sub;
        let mut dominated = false;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            covered.union_with(&instance.masks[i]);
            cost += instance.weights[i];
            if cost >= best_cost {
                dominated = true;
                break;
            }
            bits &= bits - 1;
        }
        if dominated || !covered.contains_all(&full) {
            continue;
        }
        if cost < best_cost {
            best_cost = cost;
            best_sub = Some(sub);
        }
    }
    match best_sub {
        None => Ok(CoverSolution::infeasible(true)),
        Some(sub) => {
            let indices = (0..c).filter(|&i| sub & (1 << i) != 0).collect();
            Ok(CoverSolution::from_indices(instance, indices, true))
        }
    }
}
