//! The three elementary moves and their preconditions.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::Graph;

/// One move of a certificate. `witness` is the vertex that must be isolated
/// once the relevant closed neighbourhood is removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum OpStep {
    DelVertex {
        target: String,
        witness: String,
    },
    DelEdge {
        target: [String; 2],
        witness: String,
    },
    AddEdge {
        target: [String; 2],
        witness: String,
    },
}

/// Why a move may not be applied.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StepError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edge `{0}`-`{1}` is not in the graph")]
    MissingEdge(String, String),
    #[error("edge `{0}`-`{1}` is already in the graph")]
    EdgeExists(String, String),
    #[error("edge endpoints coincide at `{0}`")]
    SelfEdge(String),
    #[error("witness `{witness}` is removed together with the neighbourhood")]
    WitnessRemoved { witness: String },
    #[error("witness `{witness}` carries a loop")]
    WitnessLooped { witness: String },
    #[error("witness `{witness}` keeps neighbours {remaining:?}")]
    WitnessNotIsolated {
        witness: String,
        remaining: Vec<String>,
    },
}

impl OpStep {
    pub fn del_vertex(target: &str, witness: &str) -> Self {
        OpStep::DelVertex {
            target: target.into(),
            witness: witness.into(),
        }
    }

    pub fn del_edge(a: &str, b: &str, witness: &str) -> Self {
        OpStep::DelEdge {
            target: [a.into(), b.into()],
            witness: witness.into(),
        }
    }

    pub fn add_edge(a: &str, b: &str, witness: &str) -> Self {
        OpStep::AddEdge {
            target: [a.into(), b.into()],
            witness: witness.into(),
        }
    }

    pub fn witness(&self) -> &str {
        match self {
            OpStep::DelVertex { witness, .. }
            | OpStep::DelEdge { witness, .. }
            | OpStep::AddEdge { witness, .. } => witness,
        }
    }

    /// The vertex set whose removal must leave the witness isolated.
    fn removed_set(&self, g: &Graph) -> Result<BTreeSet<String>, StepError> {
        let known = |v: &str| {
            if g.has_vertex(v) {
                Ok(())
            } else {
                Err(StepError::UnknownVertex(v.to_string()))
            }
        };
        known(self.witness())?;
        match self {
            OpStep::DelVertex { target, .. } => {
                known(target)?;
                Ok(g.closed_neighborhood(target).expect("checked"))
            }
            OpStep::DelEdge { target: [a, b], .. } => {
                known(a)?;
                known(b)?;
                if !g.has_edge(a, b) {
                    return Err(StepError::MissingEdge(a.clone(), b.clone()));
                }
                Ok(g.pair_neighborhood(a, b).expect("checked"))
            }
            OpStep::AddEdge { target: [a, b], .. } => {
                known(a)?;
                known(b)?;
                if a == b {
                    return Err(StepError::SelfEdge(a.clone()));
                }
                if g.has_edge(a, b) {
                    return Err(StepError::EdgeExists(a.clone(), b.clone()));
                }
                Ok(g.pair_neighborhood(a, b).expect("checked"))
            }
        }
    }

    /// Checks the precondition of the move on `g`.
    pub fn check(&self, g: &Graph) -> Result<(), StepError> {
        let removed = self.removed_set(g)?;
        let u = self.witness();
        if removed.contains(u) {
            return Err(StepError::WitnessRemoved { witness: u.into() });
        }
        if g.has_loop(u) {
            return Err(StepError::WitnessLooped { witness: u.into() });
        }
        let remaining: Vec<String> = g
            .neighbors(u)
            .expect("checked")
            .iter()
            .filter(|n| !removed.contains(*n))
            .cloned()
            .collect();
        if !remaining.is_empty() {
            return Err(StepError::WitnessNotIsolated {
                witness: u.into(),
                remaining,
            });
        }
        Ok(())
    }

    /// Applies the edit without checking the precondition.
    pub fn apply_unchecked(&self, g: &Graph) -> Result<Graph> {
        match self {
            OpStep::DelVertex { target, .. } => g.delete_vertices(&[target]),
            OpStep::DelEdge { target: [a, b], .. } => g.delete_edge(a, b),
            OpStep::AddEdge { target: [a, b], .. } => g.add_edge(a, b),
        }
    }

    /// Checks and applies the move.
    pub fn apply(&self, g: &Graph) -> Result<Graph, StepError> {
        self.check(g)?;
        Ok(self
            .apply_unchecked(g)
            .expect("precondition implies the edit is valid"))
    }

    /// Renames every vertex mentioned by the move.
    pub fn relabel(&self, name: impl Fn(&str) -> String) -> OpStep {
        match self {
            OpStep::DelVertex { target, witness } => OpStep::DelVertex {
                target: name(target),
                witness: name(witness),
            },
            OpStep::DelEdge {
                target: [a, b],
                witness,
            } => OpStep::DelEdge {
                target: [name(a), name(b)],
                witness: name(witness),
            },
            OpStep::AddEdge {
                target: [a, b],
                witness,
            } => OpStep::AddEdge {
                target: [name(a), name(b)],
                witness: name(witness),
            },
        }
    }
}

impl fmt::Display for OpStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpStep::DelVertex { target, witness } => write!(f, "Del({target}, {witness})"),
            OpStep::DelEdge {
                target: [a, b],
                witness,
            } => write!(f, "Del({a}{{-}}{b}, {witness})"),
            OpStep::AddEdge {
                target: [a, b],
                witness,
            } => write!(f, "Add({a}{{-}}{b}, {witness})"),
        }
    }
}
