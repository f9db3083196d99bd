//! The JSON report document. Field order and collection order are fixed so
//! identical invocations serialize byte-for-byte identically.

use crate::cohomology::CohomologyTable;
use crate::conditions::{ConditionReport, Obstruction};
use crate::formality::FormalityReport;
use crate::massey::MasseyCertificate;
use crate::structure::ValidationReport;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl Default for ToolInfo {
    fn default() -> Self {
        ToolInfo {
            name: "nilforms".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct InputEcho {
    /// "catalog:<name>" or "file:<path>".
    pub source: String,
    /// Parameter assignments, sorted by name.
    pub params: Vec<(String, String)>,
    pub dim: usize,
    /// Structure equations in the file syntax.
    pub structure: Vec<String>,
    /// Metric rows in scalar syntax, when one is in play.
    pub metric: Option<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(tag = "task", rename_all = "kebab-case")]
pub enum TaskResult {
    Check {
        jacobi_ok: bool,
        jacobi_failures: Vec<usize>,
        integrable: bool,
        salamon_filtration_ok: bool,
        filtration_order: Option<Vec<usize>>,
        nilpotent: bool,
    },
    Cohomology {
        kind: String,
        /// ("p,q" or total degree "k", dimension), in ascending key order.
        dims: Vec<(String, usize)>,
    },
    Harmonic {
        kind: String,
        p: usize,
        q: usize,
        dimension: usize,
        basis: Vec<String>,
    },
    MetricCheck {
        conditions: Vec<ConditionOutcome>,
    },
    Obstruction {
        p: usize,
        alpha: String,
        obstructed: bool,
        /// (psi index set, sigma-normalized coefficient, positive ratio).
        terms: Vec<(String, String, String)>,
        reason: Option<String>,
        projection: String,
    },
    Formality {
        formal: bool,
        checked_pairs: usize,
        failure_left: Option<String>,
        failure_right: Option<String>,
        failure_residual: Option<String>,
    },
    Massey {
        verdict: String,
    },
    Verify {
        valid: bool,
        failures: Vec<String>,
    },
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ConditionOutcome {
    pub condition: String,
    pub holds: bool,
    pub residual: String,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct Report {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub input: InputEcho,
    pub results: Vec<TaskResult>,
    /// Inline certificate for massey runs so reports stay self-contained.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<MasseyCertificate>,
}

impl Report {
    pub fn new(input: InputEcho) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            tool: ToolInfo::default(),
            input,
            results: Vec::new(),
            certificate: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

pub fn validation_result(v: &ValidationReport) -> TaskResult {
    TaskResult::Check {
        jacobi_ok: v.jacobi_ok,
        jacobi_failures: v.jacobi_failures.clone(),
        integrable: v.integrable,
        salamon_filtration_ok: v.salamon_filtration_ok,
        filtration_order: v.filtration_order.clone(),
        nilpotent: v.nilpotent,
    }
}

pub fn cohomology_result(t: &CohomologyTable) -> TaskResult {
    let dims = t
        .dims
        .iter()
        .map(|(&(p, q), &d)| {
            let key = if t.kind == crate::cohomology::Kind::DeRham {
                format!("{p}")
            } else {
                format!("{p},{q}")
            };
            (key, d)
        })
        .collect();
    TaskResult::Cohomology { kind: t.kind.name().to_string(), dims }
}

pub fn conditions_result(reports: &[ConditionReport]) -> TaskResult {
    TaskResult::MetricCheck {
        conditions: reports
            .iter()
            .map(|r| ConditionOutcome {
                condition: r.condition.clone(),
                holds: r.holds,
                residual: r.residual.to_string(),
            })
            .collect(),
    }
}

pub fn obstruction_result(p: usize, alpha: &crate::form::Form, o: &Obstruction) -> TaskResult {
    match o {
        Obstruction::Obstructed { terms, projection, .. } => TaskResult::Obstruction {
            p,
            alpha: alpha.to_string(),
            obstructed: true,
            terms: terms
                .iter()
                .map(|(m, c, l)| (m.to_string(), c.to_string(), l.to_string()))
                .collect(),
            reason: None,
            projection: projection.to_string(),
        },
        Obstruction::Inconclusive { reason, projection } => TaskResult::Obstruction {
            p,
            alpha: alpha.to_string(),
            obstructed: false,
            terms: Vec::new(),
            reason: Some(reason.clone()),
            projection: projection.to_string(),
        },
    }
}

pub fn formality_result(r: &FormalityReport) -> TaskResult {
    let (l, rr, res) = match &r.first_failure {
        None => (None, None, None),
        Some((a, b, residual)) => (
            Some(a.to_string()),
            Some(b.to_string()),
            Some(residual.to_string()),
        ),
    };
    TaskResult::Formality {
        formal: r.formal,
        checked_pairs: r.checked_pairs,
        failure_left: l,
        failure_right: rr,
        failure_residual: res,
    }
}
