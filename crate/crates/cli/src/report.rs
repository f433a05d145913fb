//! Report schemas. Field order is fixed by the struct declarations and all
//! maps are ordered, so identical configs serialize to identical bytes.

use std::collections::BTreeMap;

use serde::Serialize;

use bloch_topo::chern::ChernResult;
use bloch_topo::stability::{CWShape, SymmetryClass, ThresholdPair, Triviality};
use bloch_topo::symmetry::{InvolutionCheck, KramersCheck, SymmetryCheck};

/// The configuration echoed into every report.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub model: String,
    pub params: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bands: Option<usize>,
    pub grid_n: usize,
    pub ribbon_width: usize,
    pub parallel_points: usize,
    pub gap_tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct StableSummary {
    pub verdict: bloch_topo::StableVerdict,
    pub necessary_only: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct VerdictSummary {
    pub verdict: Triviality,
    pub statement: String,
    pub necessary_only: bool,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub config: ConfigEcho,
    pub spectral_gap: f64,
    pub projector_rank: usize,
    pub symmetry_class: SymmetryClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetry_note: Option<String>,
    pub chern: Vec<ChernResult>,
    pub stable_triviality: StableSummary,
    pub shape: CWShape,
    pub thresholds: ThresholdPair,
    pub verdict: VerdictSummary,
}

#[derive(Debug, Serialize)]
pub struct EdgeReport {
    pub config: ConfigEcho,
    pub bulk_gap: f64,
    pub chern: ChernResult,
    pub flow_left: i64,
    pub flow_right: i64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SweepEntry {
    pub plane: [usize; 2],
    pub transverse: Vec<usize>,
    pub value: i64,
    pub residual: f64,
}

#[derive(Debug, Serialize)]
pub struct ChernReport {
    pub config: ConfigEcho,
    pub results: Vec<ChernResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<SweepEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slice_independent: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct SymmetryReport {
    pub config: ConfigEcho,
    pub class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model_symmetry: Option<SymmetryCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bundle_involution: Option<InvolutionCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kramers: Option<KramersCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chern_total: Option<i64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ThresholdReport {
    pub class: SymmetryClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<CWShape>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torus_dim: Option<u32>,
    pub thresholds: ThresholdPair,
}

/// Serializes a report and writes it to the output path or stdout.
pub fn emit<T: Serialize>(report: &T, output: Option<&str>) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
