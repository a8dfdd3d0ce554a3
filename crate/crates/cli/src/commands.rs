//! Subcommand implementations.
//!
//! Exit-code contract, stable across releases: 0 success, 1 usage / I-O /
//! parse errors, 2 metric violation, 3 solver timeout (the report still
//! carries the incumbent), 4 oracle mismatch.

use crate::report::{ext_str, f64_str, set_labels, ConventionEcho, InputEcho, PaddingEcho, Report};
use crate::spacefile::{self, LoadError};
use hausdorff_core::cover::{SolverKind, DEFAULT_TIMEOUT};
use hausdorff_core::fractal::{
    dimension_estimate, sweep, FractalError, SweepDeltaPolicy, MAX_LEVEL,
};
use hausdorff_core::gauge::{GaugePolicy, GaugeVariant, ZeroPowZero};
use hausdorff_core::measure::{
    compare_conventions, h_m, h_m_delta, stabilization_delta, Cardinality, CoveringConvention,
    ElementPolicy, H0Override, MeasureError, MeasureResult, Preset, SolverChoice,
    SupportProvenance,
};
use hausdorff_core::sampling::{random_unit_square_space, SplitMix64};
use hausdorff_core::space::{admissible_masks, DiameterBound};
use hausdorff_core::{ExtReal, FiniteMetricSpace, PointSet};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_METRIC: i32 = 2;
pub const EXIT_TIMEOUT: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

/// A usage / I-O / data error carrying the exit code it maps to.
pub struct CommandError {
    pub exit: i32,
    pub message: String,
}

impl CommandError {
    fn usage(message: impl Into<String>) -> CommandError {
        CommandError {
            exit: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<LoadError> for CommandError {
    fn from(e: LoadError) -> CommandError {
        let exit = match e {
            LoadError::Metric(_) => EXIT_METRIC,
            _ => EXIT_USAGE,
        };
        CommandError {
            exit,
            message: e.to_string(),
        }
    }
}

impl From<MeasureError> for CommandError {
    fn from(e: MeasureError) -> CommandError {
        CommandError {
            exit: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

impl From<FractalError> for CommandError {
    fn from(e: FractalError) -> CommandError {
        CommandError {
            exit: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

type CommandResult = Result<i32, CommandError>;

/// Wall-clock budget for branch and bound; `HAUSDORFF_TIMEOUT_SECS` overrides
/// the 30-second default.
fn solver_timeout() -> Result<Duration, CommandError> {
    match std::env::var("HAUSDORFF_TIMEOUT_SECS") {
        Err(_) => Ok(DEFAULT_TIMEOUT),
        Ok(raw) => raw.parse::<u64>().map(Duration::from_secs).map_err(|_| {
            CommandError::usage(format!(
                "HAUSDORFF_TIMEOUT_SECS={raw} is not a whole number of seconds"
            ))
        }),
    }
}

/// Convention flags as they arrive from the command line; the preset expands
/// first and each explicit flag then overrides one field.
pub struct ConventionFlags {
    pub preset: String,
    pub cardinality: Option<String>,
    pub elements: Option<String>,
    pub gauge: Option<String>,
    pub zero_pow_zero: Option<u8>,
    pub bound: Option<String>,
    pub h0_override: Option<String>,
}

fn parse_preset(name: &str, zero_pow_zero: Option<u8>) -> Result<Preset, CommandError> {
    Ok(match name {
        "federer" => Preset::Federer,
        "halmos" => Preset::Halmos,
        "paper-modified" => Preset::PaperModified,
        "contra-nonempty" => match zero_pow_zero.unwrap_or(1) {
            1 => Preset::ContraNonempty(ZeroPowZero::One),
            0 => Preset::ContraNonempty(ZeroPowZero::Zero),
            other => return Err(CommandError::usage(format!("--zero-pow-zero must be 0 or 1, got {other}"))),
        },
        "contra-empty" => Preset::ContraEmpty,
        other => {
            return Err(CommandError::usage(format!(
                "unknown convention {other:?}; presets: federer, halmos, paper-modified, contra-nonempty, contra-empty"
            )))
        }
    })
}

fn resolve_convention(
    flags: &ConventionFlags,
) -> Result<(Option<String>, CoveringConvention), CommandError> {
    let preset = parse_preset(&flags.preset, flags.zero_pow_zero)?;
    let mut conv = preset.convention();
    let mut overridden = false;
    if let Some(c) = &flags.cardinality {
        conv.cardinality = match c.as_str() {
            "at-most-countable" => Cardinality::AtMostCountable,
            "strictly-infinite" => Cardinality::StrictlyInfinite,
            other => {
                return Err(CommandError::usage(format!(
                    "unknown --cardinality {other:?}"
                )))
            }
        };
        overridden = true;
    }
    if let Some(e) = &flags.elements {
        conv.elements = match e.as_str() {
            "nonempty-only" => ElementPolicy::NonemptyOnly,
            "empty-allowed" => ElementPolicy::EmptyAllowed,
            other => return Err(CommandError::usage(format!("unknown --elements {other:?}"))),
        };
        overridden = true;
    }
    if let Some(g) = &flags.gauge {
        let variant = match g.as_str() {
            "standard" => GaugeVariant::Standard,
            "modified" => GaugeVariant::Modified,
            "raw-diameter-power" => GaugeVariant::RawDiameterPower,
            other => return Err(CommandError::usage(format!("unknown --gauge {other:?}"))),
        };
        conv.gauge = GaugePolicy {
            variant,
            ..conv.gauge
        };
        overridden = true;
    }
    if let Some(z) = flags.zero_pow_zero {
        conv.gauge.zero_pow_zero = match z {
            1 => ZeroPowZero::One,
            0 => ZeroPowZero::Zero,
            other => {
                return Err(CommandError::usage(format!(
                    "--zero-pow-zero must be 0 or 1, got {other}"
                )))
            }
        };
        // part of the contra-nonempty preset itself, not an override
        overridden = overridden || !matches!(preset, Preset::ContraNonempty(_));
    }
    if let Some(b) = &flags.bound {
        conv.bound = match b.as_str() {
            "strict" => DiameterBound::Strict,
            "weak" => DiameterBound::Weak,
            other => return Err(CommandError::usage(format!("unknown --bound {other:?}"))),
        };
        overridden = true;
    }
    if let Some(h) = &flags.h0_override {
        conv.h0_override = match h.as_str() {
            "none" => H0Override::None,
            "counting-by-definition" => H0Override::CountingByDefinition,
            other => {
                return Err(CommandError::usage(format!(
                    "unknown --h0-override {other:?}"
                )))
            }
        };
        overridden = true;
    }
    let preset_echo = if overridden {
        None
    } else {
        Some(flags.preset.clone())
    };
    Ok((preset_echo, conv))
}

fn parse_subset(space: &FiniteMetricSpace, subset: &str) -> Result<PointSet, CommandError> {
    match subset {
        "all" => Ok(space.all_points()),
        "empty" => Ok(PointSet::empty()),
        labels => {
            let parts: Vec<&str> = labels.split(',').map(str::trim).collect();
            PointSet::from_labels(space, &parts).map_err(|e| CommandError::usage(e.to_string()))
        }
    }
}

fn parse_solver(s: &str) -> Result<SolverKind, CommandError> {
    Ok(match s {
        "auto" => SolverKind::Auto,
        "dp" => SolverKind::Dp,
        "bnb" => SolverKind::BranchAndBound,
        "greedy" => SolverKind::Greedy,
        "oracle" => SolverKind::Oracle,
        other => return Err(CommandError::usage(format!("unknown --solver {other:?}"))),
    })
}

fn solver_name(p: SupportProvenance) -> &'static str {
    match p {
        SupportProvenance::Direct => "none",
        SupportProvenance::Solver(SolverKind::Dp) => "dp",
        SupportProvenance::Solver(SolverKind::BranchAndBound) => "bnb",
        SupportProvenance::Solver(SolverKind::Greedy) => "greedy",
        SupportProvenance::Solver(SolverKind::Oracle) => "oracle",
        SupportProvenance::Solver(SolverKind::Auto) => "auto",
    }
}

fn timed_out(result: &MeasureResult) -> bool {
    matches!(
        result.provenance,
        SupportProvenance::Solver(SolverKind::BranchAndBound)
    ) && !result.finite_support.optimal
}

// ---------------------------------------------------------------------------
// validate

#[derive(Serialize)]
struct ValidateResults {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<String>,
}

pub fn cmd_validate(command: Vec<String>, input: &Path) -> CommandResult {
    let start = Instant::now();
    let (parsed, digest) = spacefile::read_and_parse(input)?;
    let input_echo = Some(InputEcho {
        path: input.display().to_string(),
        digest,
    });
    match spacefile::build(parsed) {
        Ok(space) => {
            let results = ValidateResults {
                valid: true,
                points: Some(space.len()),
                labels: Some(space.labels().to_vec()),
                violation: None,
            };
            Report::new(
                command,
                input_echo,
                None,
                results,
                start.elapsed().as_millis(),
            )
            .print();
            Ok(EXIT_OK)
        }
        Err(e) => {
            let results = ValidateResults {
                valid: false,
                points: None,
                labels: None,
                violation: Some(e.to_string()),
            };
            Report::new(
                command,
                input_echo,
                None,
                results,
                start.elapsed().as_millis(),
            )
            .print();
            Ok(EXIT_METRIC)
        }
    }
}

// ---------------------------------------------------------------------------
// measure

#[derive(Serialize)]
struct CertificateEcho {
    cost: String,
    optimal: bool,
    chosen: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct MeasureResults {
    m: String,
    delta_requested: String,
    delta_effective: String,
    subset: Vec<String>,
    value: String,
    exact: bool,
    solver: &'static str,
    certificate: CertificateEcho,
    padding: PaddingEcho,
}

fn measure_results(
    space: &FiniteMetricSpace,
    requested_delta: &str,
    subset: Vec<String>,
    result: &MeasureResult,
) -> MeasureResults {
    MeasureResults {
        m: f64_str(result.m),
        delta_requested: requested_delta.to_string(),
        delta_effective: ext_str(result.delta),
        subset,
        value: ext_str(result.value),
        exact: result.exact,
        solver: solver_name(result.provenance),
        certificate: CertificateEcho {
            cost: ext_str(result.finite_support.cost),
            optimal: result.finite_support.optimal,
            chosen: result
                .finite_support
                .chosen
                .iter()
                .map(|s| set_labels(space, s))
                .collect(),
        },
        padding: PaddingEcho::new(space, &result.padding),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_measure(
    command: Vec<String>,
    input: &Path,
    m: f64,
    delta: &str,
    convention: &ConventionFlags,
    subset: &str,
    solver: &str,
) -> CommandResult {
    let start = Instant::now();
    let (space, digest) = spacefile::load(input)?;
    let input_echo = Some(InputEcho {
        path: input.display().to_string(),
        digest,
    });
    let (preset_echo, conv) = resolve_convention(convention)?;
    let a = parse_subset(&space, subset)?;
    let choice = SolverChoice {
        kind: parse_solver(solver)?,
        timeout: solver_timeout()?,
    };
    let result = if delta == "auto" {
        h_m(&space, &a, m, conv, choice)?
    } else {
        let d: ExtReal = delta.parse().map_err(|_| {
            CommandError::usage(format!(
                "--delta must be \"auto\", \"inf\", or a positive number, got {delta:?}"
            ))
        })?;
        h_m_delta(&space, &a, m, d, conv, choice)?
    };
    let results = measure_results(&space, delta, set_labels(&space, &a), &result);
    let exit = if timed_out(&result) {
        EXIT_TIMEOUT
    } else {
        EXIT_OK
    };
    Report::new(
        command,
        input_echo,
        Some(ConventionEcho::new(preset_echo, conv)),
        results,
        start.elapsed().as_millis(),
    )
    .print();
    Ok(exit)
}

// ---------------------------------------------------------------------------
// compare

#[derive(Serialize)]
struct CompareRow {
    preset: &'static str,
    value: String,
}

#[derive(Serialize)]
struct CompareResults {
    m: String,
    delta_requested: String,
    delta_effective: String,
    subset: Vec<String>,
    rows: Vec<CompareRow>,
}

pub fn cmd_compare(
    command: Vec<String>,
    input: &Path,
    m: f64,
    delta: &str,
    subset: &str,
) -> CommandResult {
    let start = Instant::now();
    let (space, digest) = spacefile::load(input)?;
    let input_echo = Some(InputEcho {
        path: input.display().to_string(),
        digest,
    });
    let a = parse_subset(&space, subset)?;
    let choice = SolverChoice {
        kind: SolverKind::Auto,
        timeout: solver_timeout()?,
    };
    let effective = if delta == "auto" {
        stabilization_delta(&space, &a, DiameterBound::Strict)
    } else {
        delta.parse().map_err(|_| {
            CommandError::usage(format!(
                "--delta must be \"auto\", \"inf\", or a positive number, got {delta:?}"
            ))
        })?
    };
    let rows = compare_conventions(&space, &a, m, effective, choice)?;
    let results = CompareResults {
        m: f64_str(m),
        delta_requested: delta.to_string(),
        delta_effective: ext_str(effective),
        subset: set_labels(&space, &a),
        rows: rows
            .iter()
            .map(|r| CompareRow {
                preset: r.preset.name(),
                value: ext_str(r.value),
            })
            .collect(),
    };
    Report::new(
        command,
        input_echo,
        None,
        results,
        start.elapsed().as_millis(),
    )
    .print();
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// fractal

#[derive(Serialize)]
struct SweepRowEcho {
    k: u32,
    delta: String,
    count: u64,
    raw_sum: String,
    value: String,
    flag: &'static str,
}

#[derive(Serialize)]
struct FractalResults {
    m_requested: String,
    m: String,
    levels: u32,
    delta_policy: &'static str,
    rows: Vec<SweepRowEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dimension: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dimension_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    csv: Option<String>,
}

pub fn cmd_fractal(
    command: Vec<String>,
    levels: u32,
    m_flag: &str,
    convention: &ConventionFlags,
    delta_policy: &str,
    csv: Option<&PathBuf>,
) -> CommandResult {
    let start = Instant::now();
    if levels > MAX_LEVEL {
        return Err(CommandError::usage(format!(
            "--levels must be at most {MAX_LEVEL}, got {levels}"
        )));
    }
    let m = match m_flag {
        "critical" => 2f64.ln() / 3f64.ln(),
        other => other
            .parse::<f64>()
            .ok()
            .filter(|v| *v >= 0.0 && v.is_finite())
            .ok_or_else(|| {
                CommandError::usage(format!(
                    "--m must be \"critical\" or a nonnegative number, got {other:?}"
                ))
            })?,
    };
    let (preset_echo, conv) = resolve_convention(convention)?;
    let policy = match delta_policy {
        "level" => SweepDeltaPolicy::JustAboveLevelScale,
        "below-gap" => SweepDeltaPolicy::BelowMinimumGap,
        other => {
            return Err(CommandError::usage(format!(
                "--delta-policy must be \"level\" or \"below-gap\", got {other:?}"
            )))
        }
    };
    let choice = SolverChoice {
        kind: SolverKind::Auto,
        timeout: solver_timeout()?,
    };
    let swept = sweep(levels, m, conv, policy, choice)?;

    let scales: Vec<(f64, u64)> = swept
        .rows
        .iter()
        .filter(|r| r.delta > 0.0 && r.delta < 1.0)
        .map(|r| (r.delta, r.count))
        .collect();
    let (dimension, dimension_note) = match dimension_estimate(&scales) {
        Ok(d) => (Some(f64_str(d)), None),
        Err(e) => (None, Some(e.to_string())),
    };

    let rows: Vec<SweepRowEcho> = swept
        .rows
        .iter()
        .map(|r| SweepRowEcho {
            k: r.k,
            delta: f64_str(r.delta),
            count: r.count,
            raw_sum: f64_str(r.raw_sum),
            value: ext_str(r.value),
            flag: r.flag.name(),
        })
        .collect();

    let csv_echo = match csv {
        None => None,
        Some(path) => {
            let mut text = String::from("k,delta,count,raw_sum,normalized_value,solver_flag\n");
            for r in &rows {
                text.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.k, r.delta, r.count, r.raw_sum, r.value, r.flag
                ));
            }
            std::fs::write(path, text).map_err(|e| {
                CommandError::usage(format!("cannot write {}: {e}", path.display()))
            })?;
            Some(path.display().to_string())
        }
    };

    let results = FractalResults {
        m_requested: m_flag.to_string(),
        m: f64_str(m),
        levels,
        delta_policy: match policy {
            SweepDeltaPolicy::JustAboveLevelScale => "level",
            SweepDeltaPolicy::BelowMinimumGap => "below-gap",
        },
        rows,
        dimension,
        dimension_note,
        csv: csv_echo,
    };
    Report::new(
        command,
        None,
        Some(ConventionEcho::new(preset_echo, conv)),
        results,
        start.elapsed().as_millis(),
    )
    .print();
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// oracle-check

#[derive(Serialize)]
struct MismatchEcho {
    trial: u32,
    delta: String,
    m: String,
    preset: &'static str,
    dp: String,
    bnb: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<String>,
}

#[derive(Serialize)]
struct OracleCheckResults {
    n: usize,
    trials: u32,
    seed: u64,
    m_grid: Vec<String>,
    comparisons: u64,
    oracle_comparisons: u64,
    skipped_oracle: u64,
    mismatches: u64,
    mismatch_details: Vec<MismatchEcho>,
}

/// Candidate-family size above which the brute-force oracle is skipped for a
/// given scale; `2^16` subfamilies keep the harness inside its time budget.
const ORACLE_FAMILY_LIMIT: usize = 16;

pub fn cmd_oracle_check(command: Vec<String>, n: usize, trials: u32, seed: u64) -> CommandResult {
    let start = Instant::now();
    if n == 0 || n > 6 {
        return Err(CommandError::usage(format!(
            "--n must be between 1 and 6 (brute-force oracle scale), got {n}"
        )));
    }
    let timeout = solver_timeout()?;
    let m_grid = [0.0, 0.5, 1.0, 2.0];
    let mut rng = SplitMix64::new(seed);
    let mut comparisons = 0u64;
    let mut oracle_comparisons = 0u64;
    let mut skipped_oracle = 0u64;
    let mut mismatches = 0u64;
    let mut details: Vec<MismatchEcho> = Vec::new();

    for trial in 0..trials {
        let space = random_unit_square_space(n, &mut rng);
        let all = space.all_points();
        let mut distances: Vec<f64> = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                distances.push(space.dist(i, j));
            }
        }
        distances.sort_by(|a, b| a.partial_cmp(b).unwrap());
        distances.dedup();
        let mut deltas: Vec<f64> = Vec::new();
        if distances.is_empty() {
            deltas.push(1.0);
        } else {
            deltas.push(distances[0] * 0.5);
            for w in distances.windows(2) {
                deltas.push((w[0] + w[1]) / 2.0);
            }
            deltas.push(distances.last().unwrap() * 1.1);
        }
        for &delta in &deltas {
            let ext_delta = ExtReal::finite(delta);
            let family = admissible_masks(&space, &all, ext_delta, DiameterBound::Strict)
                .expect("n is at most 6")
                .len();
            for &m in &m_grid {
                for preset in Preset::TABLE {
                    let conv = preset.convention();
                    let run = |kind: SolverKind| {
                        h_m_delta(
                            &space,
                            &all,
                            m,
                            ext_delta,
                            conv,
                            SolverChoice { kind, timeout },
                        )
                        .map(|r| r.value)
                    };
                    let dp = run(SolverKind::Dp).map_err(CommandError::from)?;
                    let bnb = run(SolverKind::BranchAndBound).map_err(CommandError::from)?;
                    comparisons += 1;
                    let oracle = if family <= ORACLE_FAMILY_LIMIT {
                        oracle_comparisons += 1;
                        Some(run(SolverKind::Oracle).map_err(CommandError::from)?)
                    } else {
                        skipped_oracle += 1;
                        None
                    };
                    let agree =
                        dp.approx_eq(bnb, 1e-12) && oracle.is_none_or(|o| dp.approx_eq(o, 1e-12));
                    if !agree {
                        mismatches += 1;
                        if details.len() < 25 {
                            details.push(MismatchEcho {
                                trial,
                                delta: f64_str(delta),
                                m: f64_str(m),
                                preset: preset.name(),
                                dp: ext_str(dp),
                                bnb: ext_str(bnb),
                                oracle: oracle.map(ext_str),
                            });
                        }
                    }
                }
            }
        }
    }

    let results = OracleCheckResults {
        n,
        trials,
        seed,
        m_grid: m_grid.iter().map(|&m| f64_str(m)).collect(),
        comparisons,
        oracle_comparisons,
        skipped_oracle,
        mismatches,
        mismatch_details: details,
    };
    let exit = if mismatches > 0 {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    };
    Report::new(command, None, None, results, start.elapsed().as_millis()).print();
    Ok(exit)
}
