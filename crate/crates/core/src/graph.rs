//! Finite labeled undirected graphs with loop support.
//!
//! A [`Graph`] is an immutable value: every edit returns a new graph. Loops
//! are kept apart from ordinary edges, so an edge never pairs a vertex with
//! itself. A looped vertex is adjacent to itself and therefore never lies in
//! an independent set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on vertex count for the bit-mask based routines.
pub const MASK_BITS: usize = 128;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: BTreeMap<String, BTreeSet<String>>,
    loops: BTreeSet<String>,
}

/// How [`Graph::disjoint_union`] treats labels that occur in both operands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnionLabels {
    /// Fail on the first shared label.
    Strict,
    /// Append primes to every label of the right operand until no label is shared.
    Suffix,
}

impl Graph {
    pub fn new<V, E, L>(vertices: V, edges: E, loops: L) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator,
        E::Item: Into<(String, String)>,
        L: IntoIterator,
        L::Item: Into<String>,
    {
        let mut adj = BTreeMap::new();
        for v in vertices {
            let v: String = v.into();
            if v.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if adj.insert(v.clone(), BTreeSet::new()).is_some() {
                return Err(Error::DuplicateVertex(v));
            }
        }
        let mut g = Graph {
            adj,
            loops: BTreeSet::new(),
        };
        for e in edges {
            let (a, b) = e.into();
            g.check_vertex(&a)?;
            g.check_vertex(&b)?;
            if a == b {
                return Err(Error::SelfEdge(a));
            }
            g.insert_edge(&a, &b);
        }
        for l in loops {
            let l: String = l.into();
            g.check_vertex(&l)?;
            g.loops.insert(l);
        }
        Ok(g)
    }

    /// Convenience constructor for string-slice literals.
    pub fn from_str_edges(
        vertices: &[&str],
        edges: &[(&str, &str)],
        loops: &[&str],
    ) -> Result<Self> {
        Graph::new(
            vertices.iter().copied(),
            edges.iter().map(|&(a, b)| (a.to_string(), b.to_string())),
            loops.iter().copied(),
        )
    }

    /// Graph on the given edges whose vertex set is exactly their endpoints.
    pub fn from_edge_list(edges: &[(&str, &str)]) -> Result<Self> {
        let vertices: BTreeSet<&str> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        Graph::from_str_edges(&vertices.into_iter().collect::<Vec<_>>(), edges, &[])
    }

    fn check_vertex(&self, v: &str) -> Result<()> {
        if self.adj.contains_key(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    fn insert_edge(&mut self, a: &str, b: &str) {
        self.adj.get_mut(a).expect("checked").insert(b.to_string());
        self.adj.get_mut(b).expect("checked").insert(a.to_string());
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Vertices in lexicographic label order.
    pub fn vertices(&self) -> impl Iterator<Item = &str> + '_ {
        self.adj.keys().map(String::as_str)
    }

    /// Edges as `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.adj.iter().flat_map(|(a, ns)| {
            ns.range::<String, _>((std::ops::Bound::Excluded(a), std::ops::Bound::Unbounded))
                .map(move |b| (a.as_str(), b.as_str()))
        })
    }

    pub fn loops(&self) -> impl Iterator<Item = &str> + '_ {
        self.loops.iter().map(String::as_str)
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.adj.contains_key(v)
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        self.adj.get(a).is_some_and(|ns| ns.contains(b))
    }

    pub fn has_loop(&self, v: &str) -> bool {
        self.loops.contains(v)
    }

    pub fn neighbors(&self, v: &str) -> Result<&BTreeSet<String>> {
        self.adj
            .get(v)
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub fn degree(&self, v: &str) -> Result<usize> {
        self.neighbors(v).map(BTreeSet::len)
    }

    /// `N[v]`: the vertex together with its neighbors. A loop adds nothing.
    pub fn closed_neighborhood(&self, v: &str) -> Result<BTreeSet<String>> {
        let mut out = self.neighbors(v)?.clone();
        out.insert(v.to_string());
        Ok(out)
    }

    /// `N[ab] = N[a] ∪ N[b]` for an edge `ab` of the graph.
    pub fn edge_neighborhood(&self, a: &str, b: &str) -> Result<BTreeSet<String>> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if !self.has_edge(a, b) {
            return Err(Error::MissingEdge(a.to_string(), b.to_string()));
        }
        self.pair_neighborhood(a, b)
    }

    /// `N[a] ∪ N[b]` for any two vertices, adjacent or not.
    pub fn pair_neighborhood(&self, a: &str, b: &str) -> Result<BTreeSet<String>> {
        let mut out = self.closed_neighborhood(a)?;
        out.extend(self.closed_neighborhood(b)?);
        Ok(out)
    }

    /// True iff `u` survives deleting `removed` and is isolated (no edge, no loop) there.
    pub fn is_isolated_without(&self, u: &str, removed: &BTreeSet<String>) -> bool {
        match self.adj.get(u) {
            None => false,
            Some(ns) => {
                !removed.contains(u)
                    && !self.loops.contains(u)
                    && ns.iter().all(|n| removed.contains(n))
            }
        }
    }

    /// The full (induced) subgraph on `V ∖ removed`.
    pub fn delete_vertices<S: AsRef<str>>(&self, removed: &[S]) -> Result<Graph> {
        let removed: BTreeSet<&str> = removed.iter().map(AsRef::as_ref).collect();
        for v in &removed {
            self.check_vertex(v)?;
        }
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| !removed.contains(v.as_str()))
            .map(|(v, ns)| {
                let ns = ns
                    .iter()
                    .filter(|n| !removed.contains(n.as_str()))
                    .cloned()
                    .collect();
                (v.clone(), ns)
            })
            .collect();
        let loops = self
            .loops
            .iter()
            .filter(|l| !removed.contains(l.as_str()))
            .cloned()
            .collect();
        Ok(Graph { adj, loops })
    }

    /// The full subgraph on the given vertices.
    pub fn induced<S: AsRef<str>>(&self, keep: &[S]) -> Result<Graph> {
        let keep: BTreeSet<&str> = keep.iter().map(AsRef::as_ref).collect();
        for v in &keep {
            self.check_vertex(v)?;
        }
        let removed: Vec<&str> = self.vertices().filter(|v| !keep.contains(v)).collect();
        self.delete_vertices(&removed)
    }

    pub fn delete_edge(&self, a: &str, b: &str) -> Result<Graph> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if !self.has_edge(a, b) {
            return Err(Error::MissingEdge(a.to_string(), b.to_string()));
        }
        let mut g = self.clone();
        g.adj.get_mut(a).expect("checked").remove(b);
        g.adj.get_mut(b).expect("checked").remove(a);
        Ok(g)
    }

    pub fn add_edge(&self, a: &str, b: &str) -> Result<Graph> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(Error::SelfEdge(a.to_string()));
        }
        if self.has_edge(a, b) {
            return Err(Error::EdgeExists(a.to_string(), b.to_string()));
        }
        let mut g = self.clone();
        g.insert_edge(a, b);
        Ok(g)
    }

    pub fn disjoint_union(&self, other: &Graph, labels: UnionLabels) -> Result<Graph> {
        let clash = other.vertices().find(|v| self.has_vertex(v));
        let other = match (clash, labels) {
            (None, _) => other.clone(),
            (Some(v), UnionLabels::Strict) => return Err(Error::LabelClash(v.to_string())),
            (Some(_), UnionLabels::Suffix) => {
                let mut suffix = String::from("'");
                while other
                    .vertices()
                    .any(|v| self.has_vertex(&format!("{v}{suffix}")))
                {
                    suffix.push('\'');
                }
                let map = other
                    .vertices()
                    .map(|v| (v.to_string(), format!("{v}{suffix}")))
                    .collect();
                other.relabel(&map)?
            }
        };
        let mut g = self.clone();
        g.adj.extend(other.adj);
        g.loops.extend(other.loops);
        Ok(g)
    }

    /// Renames vertices; labels missing from `map` are kept. The map must stay injective.
    pub fn relabel(&self, map: &BTreeMap<String, String>) -> Result<Graph> {
        let name = |v: &str| map.get(v).cloned().unwrap_or_else(|| v.to_string());
        let vertices: Vec<String> = self.vertices().map(name).collect();
        let edges: Vec<(String, String)> = self.edges().map(|(a, b)| (name(a), name(b))).collect();
        let loops: Vec<String> = self.loops().map(name).collect();
        Graph::new(vertices, edges, loops)
    }

    /// Dense bit-mask view, vertices indexed in label order.
    pub fn indexed(&self) -> Result<IndexedGraph> {
        IndexedGraph::new(self)
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            vertices: self.vertices().map(str::to_string).collect(),
            edges: self
                .edges()
                .map(|(a, b)| [a.to_string(), b.to_string()])
                .collect(),
            loops: self.loops().map(str::to_string).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("graph documents always serialize")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph{{V={:?}, E=[", self.vertices().collect::<Vec<_>>())?;
        for (i, (a, b)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        write!(f, "], loops={:?}}}", self.loops)
    }
}

/// The graph JSON document. Arrays are sorted on output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
    #[serde(default)]
    pub loops: Vec<String>,
}

impl TryFrom<GraphDoc> for Graph {
    type Error = Error;

    fn try_from(doc: GraphDoc) -> Result<Graph> {
        Graph::new(
            doc.vertices,
            doc.edges.into_iter().map(|[a, b]| (a, b)),
            doc.loops,
        )
    }
}

/// Graph with vertices `0..n` (label order) and adjacency stored as bit masks.
#[derive(Clone, Debug)]
pub struct IndexedGraph {
    pub labels: Vec<String>,
    pub adj: Vec<u128>,
    pub loops: u128,
}

impl IndexedGraph {
    fn new(g: &Graph) -> Result<Self> {
        let n = g.vertex_count();
        if n > MASK_BITS {
            return Err(Error::TooManyVertices {
                count: n,
                limit: MASK_BITS,
            });
        }
        let labels: Vec<String> = g.vertices().map(str::to_string).collect();
        let index: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut adj = vec![0u128; n];
        for (a, b) in g.edges() {
            let (i, j) = (index[a], index[b]);
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        let loops = g.loops().fold(0u128, |m, l| m | 1 << index[l]);
        Ok(IndexedGraph { labels, adj, loops })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn all(&self) -> u128 {
        low_bits(self.len())
    }

    /// Vertices that can appear in an independent set.
    pub fn usable(&self) -> u128 {
        self.all() & !self.loops
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn is_independent(&self, set: u128) -> bool {
        if set & self.loops != 0 {
            return false;
        }
        bits(set).all(|i| self.adj[i] & set == 0)
    }
}

pub(crate) fn low_bits(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Iterates the set bit positions of a mask in increasing order.
pub(crate) fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Search for a label-preserving-structure bijection `G → H` by backtracking.
///
/// Candidates are pruned by degree and loop status; vertices of `G` are
/// matched in order of decreasing degree so that constraints bite early.
pub fn find_isomorphism(
    g: &Graph,
    h: &Graph,
    max_vertices: usize,
) -> Result<Option<BTreeMap<String, String>>> {
    let n = g.vertex_count();
    if n > max_vertices || h.vertex_count() > max_vertices {
        return Err(Error::TooManyVertices {
            count: n.max(h.vertex_count()),
            limit: max_vertices,
        });
    }
    if n != h.vertex_count() || g.edge_count() != h.edge_count() || g.loops.len() != h.loops.len() {
        return Ok(None);
    }
    let gi = g.indexed()?;
    let hi = h.indexed()?;
    let sig = |ig: &IndexedGraph, v: usize| (ig.adj[v].count_ones(), ig.loops >> v & 1);
    let mut g_sigs: Vec<_> = (0..n).map(|v| sig(&gi, v)).collect();
    let mut h_sigs: Vec<_> = (0..n).map(|v| sig(&hi, v)).collect();
    let g_order = {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(g_sigs[v].0));
        order
    };
    g_sigs.sort_unstable();
    h_sigs.sort_unstable();
    if g_sigs != h_sigs {
        return Ok(None);
    }

    struct Search<'a> {
        g: &'a IndexedGraph,
        h: &'a IndexedGraph,
        order: &'a [usize],
        map: Vec<usize>,
        used: u128,
    }

    impl Search<'_> {
        fn extend(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return true;
            }
            let v = self.order[depth];
            let deg = self.g.adj[v].count_ones();
            let looped = self.g.loops >> v & 1;
            for w in 0..self.h.len() {
                if self.used >> w & 1 == 1
                    || self.h.adj[w].count_ones() != deg
                    || self.h.loops >> w & 1 != looped
                {
                    continue;
                }
                // Every already-mapped vertex must agree on adjacency with v.
                let consistent = self.order[..depth].iter().all(|&u| {
                    let gu = self.g.adj[v] >> u & 1;
                    let hu = self.h.adj[w] >> self.map[u] & 1;
                    gu == hu
                });
                if !consistent {
                    continue;
                }
                self.map[v] = w;
                self.used |= 1 << w;
                if self.extend(depth + 1) {
                    return true;
                }
                self.used &= !(1 << w);
            }
            false
        }
    }

    let mut search = Search {
        g: &gi,
        h: &hi,
        order: &g_order,
        map: vec![usize::MAX; n],
        used: 0,
    };
    if !search.extend(0) {
        return Ok(None);
    }
    Ok(Some(
        (0..n)
            .map(|v| (gi.labels[v].clone(), hi.labels[search.map[v]].clone()))
            .collect(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Labeled,
    Isomorphic,
}

/// Outcome of [`same_graph`]; the witness is present for a successful isomorphic comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SameGraph {
    pub equal: bool,
    pub witness: Option<BTreeMap<String, String>>,
}

/// Default vertex bound for isomorphism search.
pub const ISOMORPHISM_LIMIT: usize = 64;

pub fn same_graph(g: &Graph, h: &Graph, mode: Comparison) -> Result<SameGraph> {
    match mode {
        Comparison::Labeled => Ok(SameGraph {
            equal: g == h,
            witness: None,
        }),
        Comparison::Isomorphic => {
            let witness = find_isomorphism(g, h, ISOMORPHISM_LIMIT)?;
            Ok(SameGraph {
                equal: witness.is_some(),
                witness,
            })
        }
    }
}
