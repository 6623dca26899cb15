//! JSON documents shared by the CLI, certificates and the browser demo.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::family::{FamilyDoc, FamilySpec};
use crate::graph::{Graph, GraphDoc};

/// Either an inline graph document or a family reference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphSource {
    Family(FamilyDoc),
    Inline(GraphDoc),
}

impl GraphSource {
    pub fn resolve(&self) -> Result<Graph> {
        match self {
            GraphSource::Family(doc) => FamilySpec::try_from(doc)?.generate(),
            GraphSource::Inline(doc) => Graph::try_from(doc.clone()),
        }
    }
}

impl From<&Graph> for GraphSource {
    fn from(g: &Graph) -> Self {
        GraphSource::Inline(g.to_doc())
    }
}

impl From<FamilySpec> for GraphSource {
    fn from(spec: FamilySpec) -> Self {
        GraphSource::Family(spec.into())
    }
}

/// Parses a graph document or a family reference.
pub fn parse_graph(json: &str) -> Result<Graph> {
    let source: GraphSource = serde_json::from_str(json)?;
    source.resolve()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_reference_resolves() {
        let g = parse_graph(r#"{"family":"C","m":1,"n":3}"#).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
    }

    #[test]
    fn inline_graph_resolves() {
        let g = parse_graph(r#"{"vertices":["a","b"],"edges":[["b","a"]]}"#).unwrap();
        assert!(g.has_edge("a", "b"));
        assert!(parse_graph(r#"{"vertices":["a"],"edges":[["a","z"]]}"#).is_err());
        assert!(parse_graph("[1,2]").is_err());
    }
}
