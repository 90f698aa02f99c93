//! JSONL record shapes. Field order is the serialisation order; timing lives
//! under "perf" and is dropped entirely under --stable.

use domk_core::models::DominatingModel;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Serialize)]
pub struct Perf {
    pub ms: f64,
}

#[derive(Serialize)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
pub struct FindModelRecord {
    pub graph: String,
    pub t: usize,
    pub kind: &'static str,
    pub model: Option<DominatingModel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perf: Option<Perf>,
}

#[derive(Serialize)]
pub struct ExtractionRecord {
    pub pattern: String,
    pub branch_map: BTreeMap<String, usize>,
    pub paths: Vec<Vec<usize>>,
    pub connector_path_len: usize,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ExtractionRecord {
    pub fn error(message: String) -> ExtractionRecord {
        ExtractionRecord {
            pattern: String::new(),
            branch_map: BTreeMap::new(),
            paths: Vec::new(),
            connector_path_len: 0,
            verified: false,
            error: Some(message),
        }
    }
}

#[derive(Serialize)]
pub struct TheoremRecord {
    pub graph: String,
    pub n: usize,
    pub four_colourable: bool,
    pub has_dominating_k5_model: bool,
    pub failure: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extraction: Option<ExtractionRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perf: Option<Perf>,
}

#[derive(Serialize)]
pub struct SummaryRecord {
    pub summary: bool,
    pub graphs: usize,
    pub five_chromatic: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extracted: Option<usize>,
}

#[derive(Serialize)]
pub struct ChromaticRecord {
    pub graph: String,
    pub chromatic_number: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perf: Option<Perf>,
}
