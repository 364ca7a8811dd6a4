//! Structured JSON report emitted by decode runs. Field contents are fully
//! determined by (config, seed); timings live in their own section so the
//! rest of the body is byte-reproducible.

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct DecompositionEntry {
    pub alpha: [usize; 2],
    pub p: usize,
    pub residual: f64,
    pub certified_exact: bool,
    pub p_max_hit: bool,
}

#[derive(Debug, Serialize)]
pub struct TheoremPreconditions {
    pub lambda_over_d: f64,
    pub threshold: f64,
    pub within_regime: bool,
}

#[derive(Debug, Serialize)]
pub struct OracleSection {
    pub oracle_list_size: usize,
    pub missing: Vec<Vec<u32>>,
    pub spurious: Vec<Vec<u32>>,
}

#[derive(Debug, Serialize)]
pub struct Timings {
    pub setup_ms: f64,
    pub decode_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct DecodeJson {
    pub kind: String,
    pub n: usize,
    pub d: usize,
    pub lambda: f64,
    pub delta_local: f64,
    pub design_distance: f64,
    pub epsilon: f64,
    pub ell: usize,
    pub gamma: f64,
    pub seed: u64,
    pub oracle_mode: String,
    pub errors_applied: usize,
    pub transmitted: Vec<u32>,
    pub received: Vec<u32>,
    pub decoded: Vec<Vec<u32>>,
    pub outer_codewords: Vec<Vec<u32>>,
    pub decompositions: Vec<DecompositionEntry>,
    pub atom_count: usize,
    pub enumeration_size: u128,
    pub enumeration_truncated: bool,
    pub p_max_hit_any: bool,
    pub theorem_preconditions: TheoremPreconditions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_check: Option<OracleSection>,
    pub timings: Timings,
}
