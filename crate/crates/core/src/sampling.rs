//! Seeded, platform-independent generation of random spaces, subsets, and
//! cover instances for cross-validation harnesses.
//!
//! The generator is SplitMix64 (Steele, Lea, Flood 2014): the state advances
//! by the 64-bit odd constant `0x9E3779B97F4A7C15` and each output is the
//! mixed state `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
//! z *= 0x94D049BB133111EB; z ^= z >> 31`. It is free of wraparound hazards,
//! accepts any seed including zero, and produces identical streams on every
//! platform, which keeps seeded reports reproducible bit for bit.

use crate::extreal::ExtReal;
use crate::space::{FiniteMetricSpace, PointSet};

/// SplitMix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..bound` (`bound > 0`) by rejection-free multiply-shift.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }
}

/// A space of `n` labeled points drawn uniformly from the unit square.
/// Retries on the (practically impossible) duplicate draw.
pub fn random_unit_square_space(n: usize, rng: &mut SplitMix64) -> FiniteMetricSpace {
    loop {
        let coords: Vec<Vec<f64>> = (0..n)
            .map(|_| vec![rng.next_f64(), rng.next_f64()])
            .collect();
        if let Ok(space) = FiniteMetricSpace::from_points_euclidean(&coords) {
            return space;
        }
    }
}

/// A uniformly random subset of the space's points (possibly empty).
pub fn random_subset(space: &FiniteMetricSpace, rng: &mut SplitMix64) -> PointSet {
    let picked = (0..space.len())
        .filter(|_| rng.next_u64() & 1 == 1)
        .collect();
    PointSet::new(picked)
}

/// A random cover instance over `target_size` abstract points: two to
/// `max_candidates` candidate sets with weights in `[0, 2)` (one in eight
/// exactly zero), where candidate membership is an independent coin per
/// point. Instances may be infeasible. Points live in a synthetic space on a
/// line so that the candidates are honest [`PointSet`] values.
pub fn random_cover_instance(
    target_size: usize,
    max_candidates: usize,
    rng: &mut SplitMix64,
) -> (FiniteMetricSpace, PointSet, Vec<PointSet>, Vec<ExtReal>) {
    let coords: Vec<Vec<f64>> = (0..target_size).map(|i| vec![i as f64]).collect();
    let space = FiniteMetricSpace::from_points_euclidean(&coords).unwrap();
    let target = space.all_points();
    let n_cands = 1 + (rng.next_below(max_candidates as u64) as usize).max(1);
    let mut candidates = Vec::with_capacity(n_cands);
    let mut weights = Vec::with_capacity(n_cands);
    while candidates.len() < n_cands {
        let members: Vec<usize> = (0..target_size)
            .filter(|_| rng.next_u64() & 3 != 0)
            .collect();
        if members.is_empty() {
            continue;
        }
        candidates.push(PointSet::new(members));
        // one weight in 8 is exactly zero to exercise free covers
        let w = if rng.next_below(8) == 0 {
            0.0
        } else {
            2.0 * rng.next_f64()
        };
        weights.push(ExtReal::finite(w));
    }
    (space, target, candidates, weights)
}
