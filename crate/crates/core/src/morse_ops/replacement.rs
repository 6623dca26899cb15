//! The three replacement constructions and the certificates that undo them.
//!
//! Interior steps are written in grid shorthand over a "proof grid" whose
//! columns are the patch and interior columns of `H` (see
//! [`super::library::parse_shorthand`]); each construction supplies the map
//! from proof-grid positions to the actual labels of `H`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::certificate::Certificate;
use super::library::parse_shorthand;
use crate::error::{Error, Result};
use crate::graph::{Graph, UnionLabels};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReplacementKind {
    Thm1,
    Thm2,
    Thm3,
}

impl ReplacementKind {
    /// Number of patch vertices.
    pub fn arity(self) -> usize {
        match self {
            ReplacementKind::Thm1 => 2,
            ReplacementKind::Thm2 => 4,
            ReplacementKind::Thm3 => 6,
        }
    }

    /// How many suspensions the replacement contributes.
    pub fn suspensions(self) -> usize {
        match self {
            ReplacementKind::Thm1 | ReplacementKind::Thm2 => 1,
            ReplacementKind::Thm3 => 3,
        }
    }
}

impl fmt::Display for ReplacementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReplacementKind::Thm1 => "thm1",
            ReplacementKind::Thm2 => "thm2",
            ReplacementKind::Thm3 => "thm3",
        })
    }
}

impl FromStr for ReplacementKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm1" => Ok(ReplacementKind::Thm1),
            "thm2" => Ok(ReplacementKind::Thm2),
            "thm3" => Ok(ReplacementKind::Thm3),
            other => Err(Error::Parse(format!("unknown replacement `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PatchMode {
    #[default]
    Strict,
    /// Thm 2 only: the vertical edge `a–ā` may be missing.
    Relaxed,
}

/// The patch of `G` that gets replaced.
///
/// Vertex order: Thm 1 `[u, v]`; Thm 2 `[a, ā, b, b̄]` with verticals
/// `a–ā`, `b–b̄` and horizontals `a–b`, `ā–b̄`; Thm 3
/// `[a1, a2, a3, b1, b2, b3]` with verticals along each column and
/// horizontals `a_r–b_r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedPatch {
    pub kind: ReplacementKind,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub mode: PatchMode,
}

impl MarkedPatch {
    pub fn new<S: Into<String>>(
        kind: ReplacementKind,
        vertices: impl IntoIterator<Item = S>,
    ) -> Self {
        MarkedPatch {
            kind,
            vertices: vertices.into_iter().map(Into::into).collect(),
            mode: PatchMode::Strict,
        }
    }

    pub fn relaxed(mut self) -> Self {
        self.mode = PatchMode::Relaxed;
        self
    }

    fn v(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    /// Edges the patch must induce, and edges it may optionally contain.
    fn required_edges(&self) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
        match self.kind {
            ReplacementKind::Thm1 => (vec![(0, 1)], vec![]),
            ReplacementKind::Thm2 => {
                let mut required = vec![(2, 3), (0, 2), (1, 3)];
                let optional = if self.mode == PatchMode::Relaxed {
                    vec![(0, 1)]
                } else {
                    required.push((0, 1));
                    vec![]
                };
                (required, optional)
            }
            ReplacementKind::Thm3 => (
                vec![(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)],
                vec![],
            ),
        }
    }

    /// Checks that the patch occurs in `g` as a full subgraph of the right shape.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidPatch(msg));
        if self.vertices.len() != self.kind.arity() {
            return bad(format!(
                "{} needs {} patch vertices, got {}",
                self.kind,
                self.kind.arity(),
                self.vertices.len()
            ));
        }
        if self.mode == PatchMode::Relaxed && self.kind != ReplacementKind::Thm2 {
            return bad(format!("{} has no relaxed form", self.kind));
        }
        let distinct: BTreeSet<&String> = self.vertices.iter().collect();
        if distinct.len() != self.vertices.len() {
            return bad("patch vertices must be distinct".into());
        }
        for v in &self.vertices {
            if !g.has_vertex(v) {
                return bad(format!("`{v}` is not a vertex"));
            }
            if g.has_loop(v) {
                return bad(format!("`{v}` carries a loop"));
            }
        }
        let (required, optional) = self.required_edges();
        let n = self.vertices.len();
        for i in 0..n {
            for j in i + 1..n {
                let present = g.has_edge(self.v(i), self.v(j));
                let wanted = required.contains(&(i, j));
                let allowed = wanted || optional.contains(&(i, j));
                if wanted && !present {
                    return bad(format!("missing edge `{}`-`{}`", self.v(i), self.v(j)));
                }
                if present && !allowed {
                    return bad(format!(
                        "extra edge `{}`-`{}` (the patch must be a full subgraph)",
                        self.v(i),
                        self.v(j)
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Output of [`make_replacement`].
#[derive(Clone, Debug)]
pub struct Replacement {
    pub h: Graph,
    pub certificate: Certificate,
    /// Labels of the new interior vertices.
    pub interior: Vec<String>,
}

/// Picks a suffix so that none of the interior labels exist in `g`.
fn fresh(g: &Graph, base: &[String]) -> Vec<String> {
    let mut suffix = String::new();
    while base.iter().any(|b| g.has_vertex(&format!("{b}{suffix}"))) {
        suffix.push('\'');
    }
    base.iter().map(|b| format!("{b}{suffix}")).collect()
}

fn with_edges(g: &Graph, vertices: &[String], edges: &[(&str, &str)]) -> Result<Graph> {
    let extra = Graph::new(
        vertices.to_vec(),
        Vec::<(String, String)>::new(),
        Vec::<String>::new(),
    )?;
    let mut h = g.disjoint_union(&extra, UnionLabels::Strict)?;
    for (a, b) in edges {
        h = h.add_edge(a, b)?;
    }
    Ok(h)
}

const THM1_STEPS: &str = "Add(1 5, 3), Del(1 2, 4), Del(4, 2)";

const THM2_STEPS: &str =
    "Add(1 4b, 3), Add(1b 4, 3b), Del(1 2, 3b), Del(1b 2b, 3), Del(3, 2b), Del(3b, 2)";

const THM3_STEPS: &str = "\
    Add(1b 4h, 2h), Add(1b 6b, 5h), Del(1b 4h, 2h), Add(1 3h, 2b), Add(1 4b, 3), \
    Add(1 6h, 4h), Del(1 4b, 3), Del(1 3h, 2b), Add(1h 3, 2b), Add(1h 4b, 3h), \
    Add(1h 6, 4), Del(1h 4b, 3h), Del(1h 3, 2b), \
    Add(2 4h, 3b), Add(2 5b, 4), Del(1 2, 5h), Del(2 4h, 3b), Add(2h 4, 3b), \
    Add(2h 5b, 4h), Del(1h 2h, 5), Del(2h 4, 3b), Add(2b 5h, 3h), Add(2b 4b, 3), \
    Add(2b 5, 3), Del(1b 2b, 5b), \
    Del(2b 4b, 3), Add(3b 5b, 4), Del(5b, 2b), Add(3h 5, 4b), Del(5, 2h), \
    Add(3 5h, 4b), Del(5h, 2), \
    Del(3b, 2)";

/// Builds `H` from `G` and the certificate reducing `H` to `G ⊔ K`, where
/// `K` is an edge (Thm 1 and 2) or an 8-cycle (Thm 3) on interior vertices.
pub fn make_replacement(g: &Graph, patch: &MarkedPatch) -> Result<Replacement> {
    patch.validate(g)?;
    let p = |i: usize| patch.vertices[i].clone();
    match patch.kind {
        ReplacementKind::Thm1 => {
            let inner = fresh(g, &["x".into(), "y".into(), "z".into()]);
            let (u, v) = (p(0), p(1));
            let (x, y, z) = (&inner[0], &inner[1], &inner[2]);
            let h = with_edges(
                &g.delete_edge(&u, &v)?,
                &inner,
                &[(&u, x), (x, y), (y, z), (z, &v)],
            )?;
            // Proof grid: one row u, x, y, z, v.
            let cols = [&u, x, y, z, &v];
            let steps = parse_shorthand(THM1_STEPS, |c, _| cols[c - 1].to_string())?;
            let fin = g.disjoint_union(&Graph::from_edge_list(&[(x, y)])?, UnionLabels::Strict)?;
            let cert = Certificate::new("thm1", &h, steps, &fin)
                .with_note("edge replaced by a path of length four");
            Ok(Replacement {
                h,
                certificate: cert,
                interior: inner,
            })
        }
        ReplacementKind::Thm2 => {
            let inner = fresh(g, &["x1".into(), "x1b".into(), "x2".into(), "x2b".into()]);
            let (a, abar, b, bbar) = (p(0), p(1), p(2), p(3));
            let (x1, x1b, x2, x2b) = (&inner[0], &inner[1], &inner[2], &inner[3]);
            let base = g.delete_edge(&a, &b)?.delete_edge(&abar, &bbar)?;
            let h = with_edges(
                &base,
                &inner,
                &[
                    (x1, x1b),
                    (x2, x2b),
                    (&a, x1),
                    (x1, x2b),
                    (x2b, &bbar),
                    (&abar, x1b),
                    (x1b, x2),
                    (x2, &b),
                ],
            )?;
            // Proof grid columns: (a, ā), (x1, x1b), (x2b, x2), (b̄, b).
            let grid = [[&a, &abar], [x1, x1b], [x2b, x2], [&bbar, &b]];
            let steps = parse_shorthand(THM2_STEPS, |c, r| grid[c - 1][r - 1].to_string())?;
            let fin =
                g.disjoint_union(&Graph::from_edge_list(&[(x1, x1b)])?, UnionLabels::Strict)?;
            let cert = Certificate::new("thm2", &h, steps, &fin)
                .with_note("P(2,2) replaced by the crossed P(2,4)");
            Ok(Replacement {
                h,
                certificate: cert,
                interior: inner,
            })
        }
        ReplacementKind::Thm3 => {
            let base: Vec<String> = (1..=4)
                .flat_map(|c| (1..=3).map(move |r| format!("w{c}_{r}")))
                .collect();
            let inner = fresh(g, &base);
            let w = |c: usize, r: usize| inner[(c - 1) * 3 + (r - 1)].clone();
            let a = |r: usize| p(r - 1);
            let b = |r: usize| p(r + 2);
            let mut h = g.clone();
            for r in 1..=3 {
                h = h.delete_edge(&a(r), &b(r))?;
            }
            let mut edges: Vec<(String, String)> = Vec::new();
            for c in 1..=4 {
                edges.push((w(c, 1), w(c, 2)));
                edges.push((w(c, 2), w(c, 3)));
            }
            edges.extend([
                (a(2), w(1, 2)),
                (w(1, 2), w(2, 2)),
                (w(2, 2), w(3, 2)),
                (w(3, 2), w(4, 2)),
                (w(4, 2), b(2)),
                (a(1), w(1, 1)),
                (w(1, 1), w(2, 1)),
                (w(2, 1), w(3, 3)),
                (w(3, 3), w(4, 3)),
                (w(4, 3), b(3)),
                (a(3), w(1, 3)),
                (w(1, 3), w(2, 3)),
                (w(2, 3), w(3, 1)),
                (w(3, 1), w(4, 1)),
                (w(4, 1), b(1)),
            ]);
            let edge_refs: Vec<(&str, &str)> = edges
                .iter()
                .map(|(x, y)| (x.as_str(), y.as_str()))
                .collect();
            h = with_edges(&h, &inner, &edge_refs)?;
            // Proof grid: columns a, w1, w2 keep their rows; w3, w4, b are read upside down.
            let at = |c: usize, r: usize| match c {
                1 => a(r),
                2 | 3 => w(c - 1, r),
                4 | 5 => w(c - 1, 4 - r),
                _ => b(4 - r),
            };
            let steps = parse_shorthand(THM3_STEPS, at)?;
            let ring = [
                w(1, 1),
                w(1, 2),
                w(1, 3),
                w(2, 3),
                w(3, 1),
                w(3, 2),
                w(3, 3),
                w(2, 1),
            ];
            let cycle: Vec<(&str, &str)> = (0..8)
                .map(|i| (ring[i].as_str(), ring[(i + 1) % 8].as_str()))
                .collect();
            let fin = g.disjoint_union(&Graph::from_edge_list(&cycle)?, UnionLabels::Strict)?;
            let cert = Certificate::new("thm3", &h, steps, &fin)
                .with_note("P(3,2) replaced by the crossed P(3,6)");
            Ok(Replacement {
                h,
                certificate: cert,
                interior: inner,
            })
        }
    }
}
