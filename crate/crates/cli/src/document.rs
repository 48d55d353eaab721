//! On-disk formats: the result document and cover files.

use groupcover::{Certificate, OptimalCount, SearchStats, SigmaResult, SigmaValue};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct ResultDocument {
    pub group: String,
    pub order: u128,
    pub degree: usize,
    pub sigma: Option<SigmaValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<[u64; 2]>,
    pub cover: Vec<Vec<String>>,
    pub certificates: Vec<Certificate>,
    pub unique: Option<bool>,
    pub optimal_count: Option<OptimalCount>,
    pub stats: SearchStats,
}

impl ResultDocument {
    pub fn new(group: String, degree: usize, r: SigmaResult) -> Self {
        ResultDocument {
            group,
            order: r.order,
            degree,
            sigma: r.sigma,
            interval: r.interval.map(|(lo, hi)| [lo, hi]),
            cover: r.cover.into_iter().map(|m| m.generators).collect(),
            certificates: r.certificates,
            unique: r.unique,
            optimal_count: r.optimal_count,
            stats: r.stats,
        }
    }
}

/// Reads a cover: either a bare array of generator lists or any JSON
/// object with such an array under `cover`.
pub fn parse_cover(text: &str) -> Result<Vec<Vec<String>>, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| format!("cover file: {e}"))?;
    let array = match &value {
        Value::Object(map) => map.get("cover").ok_or("cover file: no `cover` field")?,
        other => other,
    };
    serde_json::from_value(array.clone())
        .map_err(|e| format!("cover file: `cover` must be an array of string arrays: {e}"))
}
