//! Machine-readable report types. All reports serialize to JSON with stable
//! field order; timing fields are optional so byte-identical output can be
//! requested.

use serde::{Deserialize, Serialize};

use crate::codim::SpanningReport;
use crate::tideal::{VerifyGeneratorsReport, VerifyRow};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimReport {
    pub algebra: String,
    pub n: u32,
    pub codim: u64,
    pub closed_form: Option<u64>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReportRow {
    pub n: u32,
    pub dim_consequences: u64,
    pub dim_identities: u64,
    pub sound: bool,
    pub complete: bool,
}

impl From<&VerifyRow> for VerifyReportRow {
    fn from(r: &VerifyRow) -> Self {
        Self {
            n: r.n,
            dim_consequences: r.dim_consequences as u64,
            dim_identities: r.dim_identities as u64,
            sound: r.sound,
            complete: r.complete,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub algebra: String,
    pub generators: Vec<String>,
    pub max_n: u32,
    pub commutative_mode: bool,
    pub rows: Vec<VerifyReportRow>,
    pub pass: bool,
}

impl From<&VerifyGeneratorsReport> for VerifyReport {
    fn from(r: &VerifyGeneratorsReport) -> Self {
        Self {
            algebra: r.algebra.clone(),
            generators: r.generators.clone(),
            max_n: r.max_n,
            commutative_mode: r.commutative_mode,
            rows: r.rows.iter().map(VerifyReportRow::from).collect(),
            pass: r.pass(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub algebra: String,
    pub family: String,
    pub n: u32,
    pub family_size: u64,
    pub codim: u64,
    pub rank: u64,
    pub pass: bool,
}

impl BasisReport {
    pub fn new(algebra: String, family: String, n: u32, r: &SpanningReport) -> Self {
        Self {
            algebra,
            family,
            n,
            family_size: r.family_size as u64,
            codim: r.codim as u64,
            rank: r.rank as u64,
            pass: r.pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareRow {
    pub n: u32,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareReport {
    pub a: String,
    pub b: String,
    pub mode: String,
    pub max_n: u32,
    pub rows: Vec<CompareRow>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub poly: String,
    pub algebra: String,
    pub identity: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub n: u32,
    pub k: u32,
    pub count: u64,
    pub stirling: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: String,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub criteria: Vec<CriterionResult>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let report = CodimReport {
            algebra: "D2^t_{1,0}".into(),
            n: 3,
            codim: 8,
            closed_form: Some(8),
            matches: Some(true),
            mode: "commutative".into(),
            elapsed_ms: None,
        };
        let text = serde_json::to_string(&report).unwrap();
        assert!(text.contains("\"match\":true"));
        assert!(!text.contains("elapsed_ms"));
        let back: CodimReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);

        let suite = SuiteReport {
            criteria: vec![CriterionResult {
                id: "1".into(),
                name: "codim tables".into(),
                pass: true,
                detail: "2^n".into(),
            }],
            pass: true,
            elapsed_ms: Some(12),
        };
        let text = serde_json::to_string_pretty(&suite).unwrap();
        let back: SuiteReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, suite);
    }
}
