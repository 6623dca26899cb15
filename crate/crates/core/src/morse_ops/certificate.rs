//! Certificates: an initial graph, a list of moves and the final graph they must reach.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::step::OpStep;
use crate::complex::DEFAULT_FACE_BUDGET;
use crate::error::{Error, Result};
use crate::euler::chi_recursive;
use crate::graph::Graph;
use crate::homology::{graph_betti, BettiMethod, BettiProfile};
use crate::io::GraphSource;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub initial: GraphSource,
    pub steps: Vec<OpStep>,
    pub expected_final: GraphSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Certificate {
    pub fn new(
        name: impl Into<String>,
        initial: &Graph,
        steps: Vec<OpStep>,
        expected_final: &Graph,
    ) -> Self {
        Certificate {
            name: name.into(),
            initial: initial.into(),
            steps,
            expected_final: expected_final.into(),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates always serialize")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }
}

/// Which invariants replay re-checks after every move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckLevel {
    None,
    #[default]
    Chi,
    /// χ̃ and the GF(2) Betti profile.
    Betti,
}

impl FromStr for CheckLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(CheckLevel::None),
            "chi" => Ok(CheckLevel::Chi),
            "betti" | "chi+betti" => Ok(CheckLevel::Betti),
            other => Err(Error::Parse(format!("unknown check level `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub index: usize,
    pub step: OpStep,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_after: Option<i128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti_after: Option<String>,
}

/// How a replay ended.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ReplayOutcome {
    Pass,
    /// The move at `step` (0-based) is not applicable.
    PreconditionFailed {
        step: usize,
        reason: String,
    },
    /// A move changed an invariant that every move preserves.
    InvariantViolated {
        step: usize,
        reason: String,
    },
    FinalMismatch,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReplayReport {
    pub name: String,
    pub check: CheckLevel,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_initial: Option<i128>,
    pub steps: Vec<StepRecord>,
    pub outcome: ReplayOutcome,
    #[serde(skip)]
    pub final_graph: Option<Graph>,
}

impl ReplayReport {
    pub fn passed(&self) -> bool {
        self.outcome == ReplayOutcome::Pass
    }
}

impl ReplayReport {
    /// Everything after the name and verdict: the step count or the failure, then χ̃.
    pub fn summary(&self) -> String {
        let mut out = match &self.outcome {
            ReplayOutcome::Pass => format!("steps={}", self.steps.len()),
            ReplayOutcome::PreconditionFailed { step, reason } => {
                format!("precondition at step {}: {reason}", step + 1)
            }
            ReplayOutcome::InvariantViolated { step, reason } => {
                format!("invariant at step {}: {reason}", step + 1)
            }
            ReplayOutcome::FinalMismatch => "final graph differs".to_string(),
        };
        if let Some(chi) = self.chi_initial {
            out.push_str(&format!(" chi={chi}"));
        }
        out
    }
}

impl fmt::Display for ReplayReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{} {verdict} {}", self.name, self.summary())
    }
}

fn betti2(g: &Graph) -> Result<BettiProfile> {
    graph_betti(g, 2, DEFAULT_FACE_BUDGET, BettiMethod::Auto)
}

/// Applies every move in order, re-checking invariants as requested, and
/// compares the result with the expected final graph by labeled equality.
pub fn replay(cert: &Certificate, check: CheckLevel) -> Result<ReplayReport> {
    let mut g = cert.initial.resolve()?;
    let expected = cert.expected_final.resolve()?;
    let with_chi = check != CheckLevel::None;
    let with_betti = check == CheckLevel::Betti;
    let chi0 = if with_chi {
        Some(chi_recursive(&g)?)
    } else {
        None
    };
    let betti0 = if with_betti { Some(betti2(&g)?) } else { None };
    let mut report = ReplayReport {
        name: cert.name.clone(),
        check,
        chi_initial: chi0,
        steps: Vec::with_capacity(cert.steps.len()),
        outcome: ReplayOutcome::Pass,
        final_graph: None,
    };
    for (index, step) in cert.steps.iter().enumerate() {
        g = match step.apply(&g) {
            Ok(next) => next,
            Err(e) => {
                report.outcome = ReplayOutcome::PreconditionFailed {
                    step: index,
                    reason: format!("{step}: {e}"),
                };
                return Ok(report);
            }
        };
        let chi_after = if with_chi {
            Some(chi_recursive(&g)?)
        } else {
            None
        };
        let betti_after = if with_betti { Some(betti2(&g)?) } else { None };
        report.steps.push(StepRecord {
            index,
            step: step.clone(),
            chi_after,
            betti_after: betti_after.as_ref().map(ToString::to_string),
        });
        if chi_after != chi0 {
            report.outcome = ReplayOutcome::InvariantViolated {
                step: index,
                reason: format!(
                    "chi changed from {} to {}",
                    chi0.unwrap_or(0),
                    chi_after.unwrap_or(0)
                ),
            };
            return Ok(report);
        }
        if betti_after != betti0 {
            report.outcome = ReplayOutcome::InvariantViolated {
                step: index,
                reason: format!(
                    "GF(2) Betti changed from {} to {}",
                    betti0.as_ref().map(ToString::to_string).unwrap_or_default(),
                    betti_after
                        .as_ref()
                        .map(ToString::to_string)
                        .unwrap_or_default()
                ),
            };
            return Ok(report);
        }
    }
    if g != expected {
        report.outcome = ReplayOutcome::FinalMismatch;
    }
    report.final_graph = Some(g);
    Ok(report)
}
