//! Acceptance suite: every release criterion as one test, each printing a
//! `criterion NN PASS` line (run with `--nocapture` to see them on success).
//!
//! Criteria 1-5 and 7-10 drive the library directly on seeded inputs;
//! criteria 6 and 11 drive the installed binary end to end.

use hausdorff_core::fractal::{
    cantor_level, dimension_estimate, endpoints_space, natural_cover_sum,
};
use hausdorff_core::gauge::{alpha, gamma, normalization, GaugePolicy, ZeroPowZero};
use hausdorff_core::measure::{
    h_m, h_m_delta, Cardinality, CoveringConvention, ElementPolicy, H0Override, Preset,
    SolverChoice,
};
use hausdorff_core::sampling::{random_unit_square_space, SplitMix64};
use hausdorff_core::space::DiameterBound;
use hausdorff_core::{ExtReal, FiniteMetricSpace, PointSet};
use std::sync::OnceLock;
use std::time::Instant;

fn fin(x: f64) -> ExtReal {
    ExtReal::finite(x)
}

fn choice() -> SolverChoice {
    SolverChoice::default()
}

fn critical_m() -> f64 {
    2f64.ln() / 3f64.ln()
}

/// The 100 seeded spaces with 1 to 12 points used by criteria 1-3.
fn counting_spaces() -> Vec<FiniteMetricSpace> {
    let mut rng = SplitMix64::new(0xACCE97);
    (0..100)
        .map(|_| {
            let n = 1 + rng.next_below(12) as usize;
            random_unit_square_space(n, &mut rng)
        })
        .collect()
}

/// Subsets tested per space: every subset up to 6 points, 50 seeded random
/// subsets beyond that.
fn test_subsets(space: &FiniteMetricSpace, rng: &mut SplitMix64) -> Vec<PointSet> {
    let n = space.len();
    if n <= 6 {
        (0u32..(1 << n))
            .map(|mask| PointSet::new((0..n).filter(|i| mask & (1 << i) != 0).collect()))
            .collect()
    } else {
        (0..50)
            .map(|_| PointSet::new((0..n).filter(|_| rng.next_u64() & 1 == 1).collect()))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// shared instance grid for criteria 4, 5, and 7

const GRID_M: [f64; 4] = [0.0, 0.5, 1.0, 2.0];

struct GridCell {
    m: f64,
    /// three ascending scales
    deltas: Vec<f64>,
    /// modified-gauge strictly-infinite value per scale
    pm: Vec<ExtReal>,
    /// its at-most-countable counterpart per scale
    pm_finite: Vec<ExtReal>,
    /// bare diameter-power counterpart per scale, for m > 0
    raw: Option<Vec<ExtReal>>,
    /// all six presets per scale, in table order
    presets: Vec<[ExtReal; 6]>,
}

fn pm_finite_convention() -> CoveringConvention {
    CoveringConvention {
        cardinality: Cardinality::AtMostCountable,
        elements: ElementPolicy::EmptyAllowed,
        gauge: GaugePolicy::modified(),
        bound: DiameterBound::Strict,
        h0_override: H0Override::None,
    }
}

fn raw_convention() -> CoveringConvention {
    CoveringConvention {
        cardinality: Cardinality::AtMostCountable,
        elements: ElementPolicy::EmptyAllowed,
        gauge: GaugePolicy::raw_diameter_power(),
        bound: DiameterBound::Strict,
        h0_override: H0Override::None,
    }
}

fn build_grid() -> Vec<GridCell> {
    let mut rng = SplitMix64::new(0x9121D);
    let mut cells = Vec::new();
    for _ in 0..50 {
        let n = 1 + rng.next_below(10) as usize;
        let space = random_unit_square_space(n, &mut rng);
        let mut distances: Vec<f64> = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                distances.push(space.dist(i, j));
            }
        }
        distances.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let deltas: Vec<f64> = if distances.is_empty() {
            vec![0.5, 1.0, 2.0]
        } else {
            let lo = distances[0] * 0.75;
            let mid = distances[distances.len() / 2] * 1.01;
            let hi = distances[distances.len() - 1] * 1.1;
            vec![lo, mid, hi]
        };
        let mut subsets = vec![PointSet::empty(), space.all_points()];
        for _ in 0..3 {
            subsets.push(PointSet::new(
                (0..n).filter(|_| rng.next_u64() & 1 == 1).collect(),
            ));
        }
        for subset in subsets {
            for &m in &GRID_M {
                let eval = |conv: CoveringConvention, delta: f64| {
                    h_m_delta(&space, &subset, m, fin(delta), conv, choice())
                        .expect("grid evaluation succeeds")
                        .value
                };
                let pm: Vec<ExtReal> = deltas
                    .iter()
                    .map(|&d| eval(Preset::PaperModified.convention(), d))
                    .collect();
                let pm_finite: Vec<ExtReal> = deltas
                    .iter()
                    .map(|&d| eval(pm_finite_convention(), d))
                    .collect();
                let raw = (m > 0.0).then(|| {
                    deltas
                        .iter()
                        .map(|&d| eval(raw_convention(), d))
                        .collect::<Vec<_>>()
                });
                let presets: Vec<[ExtReal; 6]> = deltas
                    .iter()
                    .map(|&d| {
                        let mut row = [ExtReal::ZERO; 6];
                        for (slot, preset) in row.iter_mut().zip(Preset::TABLE) {
                            *slot = eval(preset.convention(), d);
                        }
                        row
                    })
                    .collect();
                cells.push(GridCell {
                    m,
                    deltas: deltas.clone(),
                    pm,
                    pm_finite,
                    raw,
                    presets,
                });
            }
        }
    }
    cells
}

fn grid() -> &'static [GridCell] {
    static GRID: OnceLock<Vec<GridCell>> = OnceLock::new();
    GRID.get_or_init(build_grid)
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    if a == b {
        return true;
    }
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_01_h0_is_the_counting_measure() {
    let start = Instant::now();
    let mut rng = SplitMix64::new(0x5B5E7);
    let conventions =
        [Preset::Federer, Preset::PaperModified, Preset::Halmos].map(Preset::convention);
    let mut checks = 0u64;
    for space in counting_spaces() {
        for subset in test_subsets(&space, &mut rng) {
            let want = fin(subset.len() as f64);
            for conv in conventions {
                let got = h_m(&space, &subset, 0.0, conv, choice()).unwrap().value;
                assert_eq!(got, want, "H^0 must count {} points exactly", subset.len());
                checks += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "must finish within 60s, took {elapsed:?}"
    );
    println!(
        "criterion 01 PASS — H^0(A) = |A| exactly on {checks} evaluations across 100 seeded spaces ({:.1}s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_02_strictly_infinite_nonempty_collapses_h0() {
    for space in counting_spaces() {
        let x = space.all_points();
        let inf = h_m(
            &space,
            &x,
            0.0,
            Preset::ContraNonempty(ZeroPowZero::One).convention(),
            choice(),
        )
        .unwrap()
        .value;
        assert_eq!(inf, ExtReal::Infinity);
        let zero = h_m(
            &space,
            &x,
            0.0,
            Preset::ContraNonempty(ZeroPowZero::Zero).convention(),
            choice(),
        )
        .unwrap()
        .value;
        assert_eq!(zero, ExtReal::ZERO);
    }
    println!(
        "criterion 02 PASS — under strictly-infinite nonempty coverings H^0(X) is inf with 0^0=1 and 0 with 0^0=0 on all 100 spaces"
    );
}

#[test]
fn criterion_03_empty_set_coverings_break_h0_of_the_empty_set() {
    for space in counting_spaces() {
        let empty = PointSet::empty();
        let broken = h_m(
            &space,
            &empty,
            0.0,
            Preset::ContraEmpty.convention(),
            choice(),
        )
        .unwrap()
        .value;
        assert_eq!(broken, ExtReal::Infinity);
        for m in [0.0, 1.0] {
            for preset in [Preset::Federer, Preset::PaperModified] {
                let ok = h_m(&space, &empty, m, preset.convention(), choice())
                    .unwrap()
                    .value;
                assert_eq!(ok, ExtReal::ZERO, "{} at m = {m}", preset.name());
            }
        }
    }
    println!(
        "criterion 03 PASS — H^0(empty) is inf under strictly-infinite empty-allowed coverings, 0 under the sound conventions, on all 100 spaces"
    );
}

#[test]
fn criterion_04_modified_gauge_handles_both_covering_cardinalities() {
    let mut checks = 0u64;
    for cell in grid() {
        for (a, b) in cell.pm.iter().zip(&cell.pm_finite) {
            assert_eq!(
                a, b,
                "strictly-infinite and at-most-countable values must agree exactly"
            );
            checks += 1;
        }
    }
    println!(
        "criterion 04 PASS — modified-gauge values agree exactly between covering cardinalities on {checks} grid points"
    );
}

#[test]
fn criterion_05_modified_gauge_reduces_to_normalized_diameter_powers() {
    let mut checks = 0u64;
    for cell in grid() {
        let Some(raw) = &cell.raw else { continue };
        let norm = normalization(cell.m).unwrap();
        for (pm, raw) in cell.pm.iter().zip(raw) {
            match (pm, raw) {
                (ExtReal::Finite(p), ExtReal::Finite(r)) => {
                    assert!(
                        rel_close(*p, norm * r, 1e-10),
                        "m = {}: {p} vs {norm} * {r}",
                        cell.m
                    );
                }
                (a, b) => assert_eq!(
                    a.is_infinite(),
                    b.is_infinite(),
                    "infinite values must coincide"
                ),
            }
            checks += 1;
        }
    }
    println!(
        "criterion 05 PASS — modified-gauge values equal alpha(m)/2^m times bare diameter-power values (rel 1e-10) on {checks} grid points"
    );
}

#[test]
fn criterion_06_oracle_check_finds_no_solver_disagreements() {
    let start = Instant::now();
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_hausdorff"))
        .args(["oracle-check", "--n", "5", "--trials", "200"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    assert_eq!(out.status.code(), Some(0), "oracle-check must exit 0");
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let results = &report["results"];
    assert_eq!(results["mismatches"], 0);
    assert!(results["comparisons"].as_u64().unwrap() > 10_000);
    assert!(results["oracle_comparisons"].as_u64().unwrap() > 5_000);
    assert!(
        elapsed.as_secs() < 120,
        "must finish within 120s, took {elapsed:?}"
    );
    println!(
        "criterion 06 PASS — oracle-check --n 5 --trials 200: {} DP/B&B comparisons, {} brute-force confirmations, 0 mismatches ({:.1}s)",
        results["comparisons"], results["oracle_comparisons"], elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_07_values_never_grow_as_delta_shrinks() {
    let tol = 1e-12;
    let mut checks = 0u64;
    for cell in grid() {
        let columns: Vec<Vec<ExtReal>> = {
            let mut cols = vec![cell.pm.clone(), cell.pm_finite.clone()];
            if let Some(raw) = &cell.raw {
                cols.push(raw.clone());
            }
            for p in 0..6 {
                cols.push(cell.presets.iter().map(|row| row[p]).collect());
            }
            cols
        };
        for col in columns {
            for (pair, deltas) in col.windows(2).zip(cell.deltas.windows(2)) {
                // deltas ascend, so the earlier value may not be smaller
                let ok = match (pair[0], pair[1]) {
                    (ExtReal::Finite(small), ExtReal::Finite(large)) => small >= large - tol,
                    (ExtReal::Infinity, _) => true,
                    (ExtReal::Finite(_), ExtReal::Infinity) => false,
                };
                assert!(
                    ok,
                    "monotonicity violated: {} at delta {} then {} at delta {} (m = {})",
                    pair[0], deltas[0], pair[1], deltas[1], cell.m
                );
                checks += 1;
            }
        }
    }
    println!(
        "criterion 07 PASS — delta-monotonicity holds on {checks} ordered scale pairs across every convention"
    );
}

#[test]
fn criterion_08_gauge_constants() {
    let pi = std::f64::consts::PI;
    let a1 = alpha(1.0).unwrap();
    let a2 = alpha(2.0).unwrap();
    let a3 = alpha(3.0).unwrap();
    assert!(((a1 - 2.0) / 2.0).abs() < 1e-10, "alpha(1) = {a1}");
    assert!(((a2 - pi) / pi).abs() < 1e-10, "alpha(2) = {a2}");
    assert!(
        ((a3 - 4.0 * pi / 3.0) / (4.0 * pi / 3.0)).abs() < 1e-10,
        "alpha(3) = {a3}"
    );
    let g = gamma(0.5).unwrap();
    assert!(
        ((g * g - pi) / pi).abs() < 1e-12,
        "gamma(0.5)^2 = {}",
        g * g
    );
    println!(
        "criterion 08 PASS — alpha(1) = 2, alpha(2) = pi, alpha(3) = 4pi/3 within 1e-10; gamma(1/2)^2 = pi within 1e-12"
    );
}

#[test]
fn criterion_09_cantor_critical_sum_and_dimension() {
    let m = critical_m();
    for k in 0..=40u32 {
        let sum = natural_cover_sum(k, m);
        assert!(
            (sum - 1.0).abs() <= 1e-12,
            "natural cover sum at the critical exponent: k = {k}, sum = {sum}"
        );
    }
    let scales: Vec<(f64, u64)> = (1..=10u32)
        .map(|k| (3f64.powi(-(k as i32)), 1u64 << k))
        .collect();
    let slope = dimension_estimate(&scales).unwrap();
    assert!(
        (slope - m).abs() < 1e-9,
        "dimension estimate {slope} vs {m}"
    );
    println!(
        "criterion 09 PASS — natural cover sums equal 1 within 1e-12 for k <= 40; dimension of exact scale data is ln2/ln3 within 1e-9"
    );
}

#[test]
fn criterion_10_endpoint_spaces_count_and_bound() {
    let federer = Preset::Federer.convention();
    for k in 0..=3u32 {
        let space = endpoints_space(cantor_level(k).unwrap()).unwrap();
        let below_gap = fin(3f64.powi(-(k as i32)) * 0.5);
        let h0 = h_m_delta(
            &space,
            &space.all_points(),
            0.0,
            below_gap,
            federer,
            choice(),
        )
        .unwrap();
        assert!(h0.exact, "k = {k} endpoint count must be solved exactly");
        assert_eq!(h0.value, fin((2u64 << k) as f64), "k = {k}");

        let at_level = fin(3f64.powi(-(k as i32)) * (1.0 + 1e-9));
        let h1 = h_m_delta(
            &space,
            &space.all_points(),
            1.0,
            at_level,
            federer,
            choice(),
        )
        .unwrap();
        assert!(h1.exact);
        let bound = normalization(1.0).unwrap() * natural_cover_sum(k, 1.0);
        assert!(
            h1.value <= fin(bound + 1e-12),
            "k = {k}: H^1 value {} above the natural-cover bound {bound}",
            h1.value
        );
    }
    println!(
        "criterion 10 PASS — exact H^0 of level-k endpoint spaces is 2^(k+1) below the gap scale and exact H^1 stays within the natural-cover bound, k <= 3"
    );
}

#[test]
fn criterion_11_exact_dp_on_twelve_points_is_fast() {
    let mut rng = SplitMix64::new(0xD0D0);
    let space = random_unit_square_space(12, &mut rng);
    let coords_doc = serde_json::json!({
        "labels": space.labels(),
        "dist": (0..12).map(|i| (0..12).map(|j| space.dist(i, j)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    let path = std::env::temp_dir().join("hausdorff-acceptance-n12.json");
    std::fs::write(&path, coords_doc.to_string()).unwrap();
    let start = Instant::now();
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_hausdorff"))
        .args([
            "measure",
            path.to_str().unwrap(),
            "--m",
            "0",
            "--delta",
            "10",
            "--solver",
            "dp",
        ])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        report["results"]["value"], "1",
        "whole space is one admissible element"
    );
    assert_eq!(report["results"]["exact"], serde_json::Value::Bool(true));
    assert!(
        elapsed.as_secs() < 10,
        "must finish within 10s, took {elapsed:?}"
    );
    println!(
        "criterion 11 PASS — exact DP measure over all 4095 covering candidates of a 12-point space in {:.2}s",
        elapsed.as_secs_f64()
    );
}
