//! Machine-readable report records emitted by `--json` (and `--out`).
//!
//! Every record embeds the tool name, version, and tolerance scale so a
//! report is interpretable on its own, and every struct derives both serde
//! directions so written reports read back identically.

use std::collections::BTreeMap;

use ghzlu::classify::{ClassificationReport, Subfamily, UniquenessModality};
use ghzlu::{AsdState64, GhzInvariants64, LocalUnitary64, LocalUnitaryTriple64, OracleVerdict64};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
    pub tolerance_scale: f64,
}

impl ToolInfo {
    pub fn current(tolerance_scale: f64) -> Self {
        ToolInfo {
            name: "ghzlu".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            tolerance_scale,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsdRecord {
    pub lambda: [f64; 5],
    pub phi: f64,
}

impl From<&AsdState64> for AsdRecord {
    fn from(a: &AsdState64) -> Self {
        AsdRecord {
            lambda: *a.lambda(),
            phi: a.phi(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantsRecord {
    /// Complex numbers as [re, im].
    pub gamma: [f64; 2],
    pub j1: f64,
    pub j4: f64,
    pub rho: f64,
    pub iota: [f64; 2],
    pub ln_rho_abs: f64,
    pub measure: f64,
}

impl From<&GhzInvariants64> for InvariantsRecord {
    fn from(v: &GhzInvariants64) -> Self {
        InvariantsRecord {
            gamma: [v.gamma.re, v.gamma.im],
            j1: v.j1,
            j4: v.j4,
            rho: v.rho,
            iota: [v.iota.re, v.iota.im],
            ln_rho_abs: v.ln_rho_abs,
            measure: v.measure,
        }
    }
}

/// One 2×2 unitary as rows of [re, im] entries.
pub type MatrixRecord = [[[f64; 2]; 2]; 2];

fn matrix_record(u: &LocalUnitary64) -> MatrixRecord {
    let m = u.matrix();
    [
        [[m[0][0].re, m[0][0].im], [m[0][1].re, m[0][1].im]],
        [[m[1][0].re, m[1][0].im], [m[1][1].re, m[1][1].im]],
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleRecord {
    pub a: MatrixRecord,
    pub b: MatrixRecord,
    pub c: MatrixRecord,
}

impl From<&LocalUnitaryTriple64> for TripleRecord {
    fn from(t: &LocalUnitaryTriple64) -> Self {
        TripleRecord {
            a: matrix_record(&t.a),
            b: matrix_record(&t.b),
            c: matrix_record(&t.c),
        }
    }
}

pub fn subfamily_str(s: Subfamily) -> &'static str {
    match s {
        Subfamily::Prime => "prime",
        Subfamily::DoublePrime => "double_prime",
    }
}

pub fn modality_str(m: UniquenessModality) -> &'static str {
    match m {
        UniquenessModality::Strict => "strict",
        UniquenessModality::UpToPhase => "up_to_phase",
        UniquenessModality::UpToConjugate => "up_to_conjugate",
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub tool: ToolInfo,
    pub ghz_class: bool,
    pub asd: AsdRecord,
    pub lbps: usize,
    pub three_tangle: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subfamily: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unique_asd: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniqueness_modality: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margins: Option<BTreeMap<String, f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_asd: Option<AsdRecord>,
}

impl ClassifyReport {
    pub fn ghz(
        tool: ToolInfo,
        asd: &AsdState64,
        report: &ClassificationReport<f64>,
        tangle: f64,
        canonical: &AsdState64,
    ) -> Self {
        ClassifyReport {
            tool,
            ghz_class: true,
            asd: asd.into(),
            lbps: report.lbps,
            three_tangle: tangle,
            note: None,
            label: Some(report.label.to_string()),
            family: Some(report.label.family.to_string()),
            subfamily: Some(subfamily_str(report.label.subfamily).into()),
            invariants: Some((&report.invariants).into()),
            unique_asd: Some(report.unique_asd),
            uniqueness_modality: Some(modality_str(report.uniqueness_modality).into()),
            margins: Some(report.margins.clone()),
            canonical_asd: Some(canonical.into()),
        }
    }

    pub fn non_ghz(tool: ToolInfo, asd: &AsdState64, lbps: usize, tangle: f64) -> Self {
        ClassifyReport {
            tool,
            ghz_class: false,
            asd: asd.into(),
            lbps,
            three_tangle: tangle,
            note: Some(format!(
                "not GHZ class: lambda0 = {}, lambda4 = {}; the family atlas and invariants are defined only when both are nonzero",
                asd.lambda()[0],
                asd.lambda()[4]
            )),
            label: None,
            family: None,
            subfamily: None,
            invariants: None,
            unique_asd: None,
            uniqueness_modality: None,
            margins: None,
            canonical_asd: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub equivalent: bool,
    pub best_fidelity: f64,
    pub restarts_used: usize,
    pub witness: TripleRecord,
}

impl From<&OracleVerdict64> for OracleRecord {
    fn from(v: &OracleVerdict64) -> Self {
        OracleRecord {
            equivalent: v.equivalent,
            best_fidelity: v.best_fidelity,
            restarts_used: v.restarts_used,
            witness: (&v.witness).into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivReport {
    pub tool: ToolInfo,
    pub equivalent: bool,
    pub reason: String,
    pub labels: [String; 2],
    pub ln_rho_abs: [f64; 2],
    pub witness_via_oracle: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<TripleRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsdReport {
    pub tool: ToolInfo,
    pub asd: AsdRecord,
    pub witness: TripleRecord,
    /// Largest amplitude error of witness(input) against the reconstructed
    /// canonical form.
    pub witness_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub tool: ToolInfo,
    pub asd: AsdRecord,
    pub invariants: InvariantsRecord,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformReport {
    pub tool: ToolInfo,
    pub input: AsdRecord,
    pub transformed: AsdRecord,
    pub rho: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub tool: ToolInfo,
    pub label: String,
    pub base_seed: u64,
    pub states: Vec<AsdRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionRecord {
    pub index: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub tool: ToolInfo,
    pub mode: String,
    pub passed: bool,
    pub criteria: Vec<CriterionRecord>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use ghzlu::classify::classify;
    use ghzlu::Tolerances64;

    #[test]
    fn classify_report_round_trips_exactly() {
        let tol = Tolerances64::default();
        let asd = AsdState64::new([0.5, 0.0, 0.5, 0.5, 0.5], 0.0, &tol).unwrap();
        let report = classify(&asd, &tol).unwrap();
        let canonical = ghzlu::classify::canonical_asd(&asd, &tol).unwrap();
        let rec = ClassifyReport::ghz(
            ToolInfo::current(1.0),
            &asd,
            &report,
            ghzlu::qstate::three_tangle(&asd.reconstruct()),
            &canonical,
        );
        let text = serde_json::to_string_pretty(&rec).unwrap();
        let back: ClassifyReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rec);
    }

    #[test]
    fn non_ghz_report_round_trips() {
        let tol = Tolerances64::default();
        let asd = AsdState64::new([1.0, 0.0, 0.0, 0.0, 0.0], 0.0, &tol).unwrap();
        let rec = ClassifyReport::non_ghz(ToolInfo::current(2.0), &asd, 1, 0.0);
        let text = serde_json::to_string(&rec).unwrap();
        let back: ClassifyReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rec);
        assert!(!text.contains("canonical_asd"));
    }
}
