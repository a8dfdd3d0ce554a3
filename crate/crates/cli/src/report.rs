//! Machine-readable reports.
//!
//! Every command emits one JSON report to stdout: tool version, the exact
//! command line, the input digest when a file was read, the fully expanded
//! convention when one applies, a command-specific `results` block, and
//! timing. Numeric values travel as decimal strings in shortest round-trip
//! form (they parse back to the exact same float) with `"inf"` for the
//! infinite value, so the `results` block is byte-identical across reruns.

use hausdorff_core::gauge::{GaugeVariant, ZeroPowZero};
use hausdorff_core::measure::{
    Cardinality, CoveringConvention, ElementPolicy, H0Override, Padding,
};
use hausdorff_core::space::DiameterBound;
use hausdorff_core::{ExtReal, FiniteMetricSpace, PointSet};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Report<R: Serialize> {
    pub tool: Tool,
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<ConventionEcho>,
    pub results: R,
    pub timing: Timing,
}

#[derive(Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Serialize)]
pub struct InputEcho {
    pub path: String,
    pub digest: String,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

/// Full expansion of a convention, echoed so a report pins the exact policy
/// lattice it was produced under.
#[derive(Debug, Serialize)]
pub struct ConventionEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    pub cardinality: &'static str,
    pub elements: &'static str,
    pub gauge: &'static str,
    pub zero_pow_zero: u8,
    pub bound: &'static str,
    pub h0_override: &'static str,
}

impl ConventionEcho {
    pub fn new(preset: Option<String>, conv: CoveringConvention) -> ConventionEcho {
        ConventionEcho {
            preset,
            cardinality: match conv.cardinality {
                Cardinality::AtMostCountable => "at-most-countable",
                Cardinality::StrictlyInfinite => "strictly-infinite",
            },
            elements: match conv.elements {
                ElementPolicy::NonemptyOnly => "nonempty-only",
                ElementPolicy::EmptyAllowed => "empty-allowed",
            },
            gauge: match conv.gauge.variant {
                GaugeVariant::Standard => "standard",
                GaugeVariant::Modified => "modified",
                GaugeVariant::RawDiameterPower => "raw-diameter-power",
            },
            zero_pow_zero: match conv.gauge.zero_pow_zero {
                ZeroPowZero::One => 1,
                ZeroPowZero::Zero => 0,
            },
            bound: match conv.bound {
                DiameterBound::Strict => "strict",
                DiameterBound::Weak => "weak",
            },
            h0_override: match conv.h0_override {
                H0Override::None => "none",
                H0Override::CountingByDefinition => "counting-by-definition",
            },
        }
    }
}

/// `ExtReal` as a report string: `"inf"` or the shortest lossless decimal.
pub fn ext_str(x: ExtReal) -> String {
    x.to_string()
}

/// A float as a report string in shortest lossless form.
pub fn f64_str(x: f64) -> String {
    format!("{x}")
}

/// A point set as its sorted labels.
pub fn set_labels(space: &FiniteMetricSpace, set: &PointSet) -> Vec<String> {
    set.indices()
        .iter()
        .map(|&i| space.label(i).to_string())
        .collect()
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PaddingEcho {
    None,
    EmptySet {
        per_copy: String,
    },
    Set {
        members: Vec<String>,
        per_copy: String,
    },
    Unavailable,
}

impl PaddingEcho {
    pub fn new(space: &FiniteMetricSpace, padding: &Padding) -> PaddingEcho {
        match padding {
            Padding::None => PaddingEcho::None,
            Padding::EmptySet { per_copy } => PaddingEcho::EmptySet {
                per_copy: ext_str(*per_copy),
            },
            Padding::Set { set, per_copy } => PaddingEcho::Set {
                members: set_labels(space, set),
                per_copy: ext_str(*per_copy),
            },
            Padding::Unavailable => PaddingEcho::Unavailable,
        }
    }
}

impl<R: Serialize> Report<R> {
    pub fn new(
        command: Vec<String>,
        input: Option<InputEcho>,
        convention: Option<ConventionEcho>,
        results: R,
        elapsed_ms: u128,
    ) -> Report<R> {
        Report {
            tool: Tool {
                name: "hausdorff",
                version: env!("CARGO_PKG_VERSION"),
            },
            command,
            input,
            convention,
            results,
            timing: Timing { elapsed_ms },
        }
    }

    pub fn print(&self) {
        println!(
            "{}",
            serde_json::to_string_pretty(self).expect("report serialization cannot fail")
        );
    }
}
