//! Space input files.
//!
//! A space is a JSON document in one of two forms:
//!
//! ```json
//! {"labels": ["p", "q"], "dist": [[0.0, 3.0], [3.0, 0.0]]}
//! ```
//!
//! an explicit distance matrix, or
//!
//! ```json
//! {"points": [[0.0, 0.0], [3.0, 4.0]], "metric": "euclidean"}
//! ```
//!
//! coordinate vectors under the Euclidean metric, with an optional `"labels"`
//! array (defaults to `p0`, `p1`, ...). Either way the result must be a valid
//! metric on distinct points: symmetric, zero diagonal, positive off-diagonal,
//! triangle inequality within 1e-12.

use hausdorff_core::FiniteMetricSpace;
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub dist: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub points: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub metric: Option<String>,
}

#[derive(Debug)]
pub enum LoadError {
    Io(String),
    Parse(String),
    Metric(String),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Io(e) => write!(f, "cannot read input: {e}"),
            LoadError::Parse(e) => write!(f, "cannot parse input: {e}"),
            LoadError::Metric(e) => write!(f, "metric violation: {e}"),
        }
    }
}

/// Reads and parses a space file without validating the metric, returning the
/// parsed document and the FNV-1a 64 digest of the raw bytes.
pub fn read_and_parse(path: &Path) -> Result<(SpaceFile, String), LoadError> {
    let bytes =
        std::fs::read(path).map_err(|e| LoadError::Io(format!("{}: {e}", path.display())))?;
    let digest = format!("fnv1a64:{:016x}", fnv1a64(&bytes));
    let parsed: SpaceFile =
        serde_json::from_slice(&bytes).map_err(|e| LoadError::Parse(e.to_string()))?;
    Ok((parsed, digest))
}

/// Reads and validates a space file, returning the space together with the
/// digest for the report header.
pub fn load(path: &Path) -> Result<(FiniteMetricSpace, String), LoadError> {
    let (parsed, digest) = read_and_parse(path)?;
    let space = build(parsed)?;
    Ok((space, digest))
}

/// Validates the parsed document into a space.
pub fn build(file: SpaceFile) -> Result<FiniteMetricSpace, LoadError> {
    match (file.dist, file.points) {
        (Some(dist), None) => {
            let labels = file
                .labels
                .ok_or_else(|| LoadError::Parse("\"dist\" form requires \"labels\"".into()))?;
            FiniteMetricSpace::build(labels, dist).map_err(|e| LoadError::Metric(e.to_string()))
        }
        (None, Some(points)) => {
            match file.metric.as_deref() {
                Some("euclidean") => {}
                Some(other) => {
                    return Err(LoadError::Parse(format!(
                        "unsupported metric {other:?}, only \"euclidean\""
                    )))
                }
                None => {
                    return Err(LoadError::Parse(
                        "\"points\" form requires \"metric\": \"euclidean\"".into(),
                    ))
                }
            }
            let space = FiniteMetricSpace::from_points_euclidean(&points)
                .map_err(|e| LoadError::Metric(e.to_string()))?;
            match file.labels {
                None => Ok(space),
                Some(labels) => {
                    // relabel: rebuild with the same distances
                    let n = space.len();
                    if labels.len() != n {
                        return Err(LoadError::Parse(format!(
                            "{} labels for {n} points",
                            labels.len()
                        )));
                    }
                    let dist: Vec<Vec<f64>> = (0..n)
                        .map(|i| (0..n).map(|j| space.dist(i, j)).collect())
                        .collect();
                    FiniteMetricSpace::build(labels, dist)
                        .map_err(|e| LoadError::Metric(e.to_string()))
                }
            }
        }
        _ => Err(LoadError::Parse(
            "expected either {\"labels\", \"dist\"} or {\"points\", \"metric\"}".into(),
        )),
    }
}

/// FNV-1a, 64-bit: offset basis `0xcbf29ce484222325`, prime `0x100000001b3`.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}
