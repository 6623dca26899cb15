//! Generators for the grid graph families.
//!
//! Grid vertices are labeled `r<row>c<col>`. Quotient families (`C`, `M`)
//! glue column `n + 1` of `P_{m,n+1}` back onto column 1; the glued vertex
//! keeps its column-1 label. Parallel edges created by the gluing collapse to
//! one edge and an edge whose endpoints get glued together becomes a loop.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn grid_label(row: usize, col: usize) -> String {
    format!("r{row}c{col}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    P,
    C,
    M,
    CH,
    MH1,
    X4,
    Y4,
}

impl FamilyTag {
    pub fn takes_rows(self) -> bool {
        matches!(
            self,
            FamilyTag::P | FamilyTag::C | FamilyTag::M | FamilyTag::CH
        )
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyTag::P => "P",
            FamilyTag::C => "C",
            FamilyTag::M => "M",
            FamilyTag::CH => "CH",
            FamilyTag::MH1 => "MH1",
            FamilyTag::X4 => "X4",
            FamilyTag::Y4 => "Y4",
        };
        f.write_str(s)
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "P" => FamilyTag::P,
            "C" => FamilyTag::C,
            "M" => FamilyTag::M,
            "CH" => FamilyTag::CH,
            "MH1" => FamilyTag::MH1,
            "X4" => FamilyTag::X4,
            "Y4" => FamilyTag::Y4,
            other => {
                return Err(Error::InvalidFamily(format!(
                    "unknown family tag `{other}`"
                )))
            }
        })
    }
}

/// A named graph family member, e.g. `C_{3,4}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub tag: FamilyTag,
    /// Row count; ignored (and reported as 1) for the single-parameter families.
    pub m: usize,
    pub n: usize,
}

impl FamilySpec {
    pub fn new(tag: FamilyTag, m: usize, n: usize) -> Result<Self> {
        let spec = FamilySpec {
            tag,
            m: if tag.takes_rows() { m } else { 1 },
            n,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn single(tag: FamilyTag, n: usize) -> Result<Self> {
        FamilySpec::new(tag, 1, n)
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::InvalidFamily(format!(
                "{self}: dimensions must be at least 1"
            )));
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        let (m, n) = (self.m, self.n);
        match self.tag {
            FamilyTag::P => Ok(planar(m, n, 0)),
            FamilyTag::C => Ok(glued(m, n, |i| i)),
            FamilyTag::M => Ok(glued(m, n, |i| m - i + 1)),
            FamilyTag::CH => {
                let base = glued(m + 1, 2 * n, |i| i);
                let mut g = base.clone();
                for i in 2..=m + 1 {
                    for j in 1..=2 * n {
                        if (i + j) % 2 == 0 {
                            let (a, b) = (grid_label(i, j), grid_label(i - 1, j));
                            if g.has_edge(&a, &b) {
                                g = g.delete_edge(&a, &b)?;
                            }
                        }
                    }
                }
                Ok(g)
            }
            FamilyTag::MH1 => {
                let mut g = glued(2, 2 * n, |i| 3 - i);
                for j in (1..2 * n).step_by(2) {
                    g = g.delete_edge(&grid_label(1, j), &grid_label(2, j))?;
                }
                Ok(g)
            }
            FamilyTag::X4 => planar(4, n, 0).add_edge(&grid_label(1, 1), &grid_label(4, 1)),
            FamilyTag::Y4 => planar(4, n, 0).delete_vertices(&[grid_label(1, 1), grid_label(4, 1)]),
        }
    }
}

/// Accepts `C:3:4`, `C(3,4)`, `MH1:5` and `MH1(5)`.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFamily(format!("cannot read family reference `{s}`"));
        let s = s.trim();
        let (tag, rest) = match s.find([':', '(']) {
            Some(i) => (&s[..i], &s[i..]),
            None => return Err(bad()),
        };
        let tag: FamilyTag = tag.parse()?;
        let rest = if rest.starts_with('(') {
            rest.strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(bad)?
        } else {
            &rest[1..]
        };
        let nums: Vec<usize> = rest
            .split([':', ','])
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (tag.takes_rows(), nums.as_slice()) {
            (true, [m, n]) => FamilySpec::new(tag, *m, *n),
            (false, [n]) => FamilySpec::single(tag, *n),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tag.takes_rows() {
            write!(f, "{}({},{})", self.tag, self.m, self.n)
        } else {
            write!(f, "{}({})", self.tag, self.n)
        }
    }
}

/// `P_{m,n}` with column labels shifted by `col_offset`.
pub fn planar(m: usize, n: usize, col_offset: usize) -> Graph {
    let label = |i: usize, j: usize| grid_label(i, j + col_offset);
    let mut vertices = Vec::with_capacity(m * n);
    let mut edges = Vec::new();
    for i in 1..=m {
        for j in 1..=n {
            vertices.push(label(i, j));
            if j < n {
                edges.push((label(i, j), label(i, j + 1)));
            }
            if i < m {
                edges.push((label(i, j), label(i + 1, j)));
            }
        }
    }
    Graph::new(vertices, edges, Vec::<String>::new()).expect("grid construction is well-formed")
}

/// Quotient of `P_{m,n+1}` gluing `(i, n+1)` onto `(partner(i), 1)`.
fn glued(m: usize, n: usize, partner: impl Fn(usize) -> usize) -> Graph {
    let canon = |i: usize, j: usize| {
        if j == n + 1 {
            grid_label(partner(i), 1)
        } else {
            grid_label(i, j)
        }
    };
    let mut vertices = Vec::with_capacity(m * n);
    let mut edges = BTreeSet::new();
    let mut loops = BTreeSet::new();
    for i in 1..=m {
        for j in 1..=n + 1 {
            if j <= n {
                vertices.push(grid_label(i, j));
            }
            let mut link = |a: String, b: String| {
                if a == b {
                    loops.insert(a);
                } else if a < b {
                    edges.insert((a, b));
                } else {
                    edges.insert((b, a));
                }
            };
            if j <= n {
                link(canon(i, j), canon(i, j + 1));
            }
            if i < m {
                link(canon(i, j), canon(i + 1, j));
            }
        }
    }
    Graph::new(vertices, edges, loops).expect("quotient construction is well-formed")
}

/// JSON reference to a family member: `{"family":"C","m":3,"n":4}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub n: usize,
}

impl TryFrom<&FamilyDoc> for FamilySpec {
    type Error = Error;

    fn try_from(doc: &FamilyDoc) -> Result<FamilySpec> {
        let tag: FamilyTag = doc.family.parse()?;
        match (tag.takes_rows(), doc.m) {
            (true, Some(m)) => FamilySpec::new(tag, m, doc.n),
            (true, None) => Err(Error::InvalidFamily(format!("family {tag} needs `m`"))),
            (false, _) => FamilySpec::single(tag, doc.n),
        }
    }
}

impl From<FamilySpec> for FamilyDoc {
    fn from(spec: FamilySpec) -> Self {
        FamilyDoc {
            family: spec.tag.to_string(),
            m: spec.tag.takes_rows().then_some(spec.m),
            n: spec.n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{find_isomorphism, same_graph, Comparison};

    fn gen(tag: FamilyTag, m: usize, n: usize) -> Graph {
        FamilySpec::new(tag, m, n).unwrap().generate().unwrap()
    }

    #[test]
    fn planar_counts() {
        let g = gen(FamilyTag::P, 3, 4);
        assert_eq!((g.vertex_count(), g.edge_count()), (12, 17));
        for m in 1..5 {
            for n in 1..6 {
                let g = gen(FamilyTag::P, m, n);
                assert_eq!(g.vertex_count(), m * n);
                assert_eq!(g.edge_count(), m * (n - 1) + (m - 1) * n);
            }
        }
    }

    #[test]
    fn degenerate_quotients() {
        let c11 = gen(FamilyTag::C, 1, 1);
        assert_eq!(c11.vertex_count(), 1);
        assert!(c11.has_loop("r1c1"));

        let m22 = gen(FamilyTag::M, 2, 2);
        assert_eq!((m22.vertex_count(), m22.edge_count()), (4, 6));
        assert_eq!(m22.loops().count(), 0);

        let m21 = gen(FamilyTag::M, 2, 1);
        assert_eq!(
            (m21.vertex_count(), m21.edge_count(), m21.loops().count()),
            (2, 1, 0)
        );

        let c12 = gen(FamilyTag::C, 1, 2);
        assert_eq!(
            (c12.vertex_count(), c12.edge_count(), c12.loops().count()),
            (2, 1, 0)
        );

        let m31 = gen(FamilyTag::M, 3, 1);
        assert_eq!(m31.loops().collect::<Vec<_>>(), vec!["r2c1"]);
        assert_eq!(m31.edge_count(), 3);
    }

    #[test]
    fn cycles_and_mobius_match_counts() {
        for m in 1..5 {
            for n in 3..8 {
                let c = gen(FamilyTag::C, m, n);
                let mb = gen(FamilyTag::M, m, n);
                assert_eq!(c.loops().count(), 0);
                assert_eq!(c.vertex_count(), m * n);
                assert_eq!(c.edge_count(), m * n + (m - 1) * n);
                assert_eq!(
                    (mb.vertex_count(), mb.edge_count()),
                    (c.vertex_count(), c.edge_count())
                );
            }
        }
        let c13 = gen(FamilyTag::C, 1, 3);
        let tri =
            Graph::from_str_edges(&["x", "y", "z"], &[("x", "y"), ("y", "z"), ("x", "z")], &[])
                .unwrap();
        assert!(
            same_graph(&c13, &tri, Comparison::Isomorphic)
                .unwrap()
                .equal
        );
    }

    #[test]
    fn mobius_seam_is_twisted() {
        let g = gen(FamilyTag::M, 3, 4);
        assert!(g.has_edge("r1c4", "r3c1"));
        assert!(g.has_edge("r2c4", "r2c1"));
        assert!(g.has_edge("r3c4", "r1c1"));
        assert!(!g.has_edge("r1c4", "r1c1"));
    }

    #[test]
    fn hexagonal_families() {
        // C^H_{1,n}: verticals survive at odd columns only.
        let g = gen(FamilyTag::CH, 1, 3);
        for j in 1..=6 {
            assert_eq!(
                g.has_edge(&grid_label(1, j), &grid_label(2, j)),
                j % 2 == 1,
                "column {j}"
            );
        }
        let g = FamilySpec::single(FamilyTag::MH1, 3)
            .unwrap()
            .generate()
            .unwrap();
        for j in 1..=6 {
            assert_eq!(
                g.has_edge(&grid_label(1, j), &grid_label(2, j)),
                j % 2 == 0,
                "column {j}"
            );
        }
        // C^H_{1,1} is a path on four vertices.
        let g = gen(FamilyTag::CH, 1, 1);
        let p4 = Graph::from_str_edges(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d")],
            &[],
        )
        .unwrap();
        assert!(find_isomorphism(&g, &p4, 10).unwrap().is_some());
    }

    #[test]
    fn x4_y4_families() {
        let x = FamilySpec::single(FamilyTag::X4, 3)
            .unwrap()
            .generate()
            .unwrap();
        assert!(x.has_edge("r1c1", "r4c1"));
        assert_eq!(x.edge_count(), 17 + 1);
        let y = FamilySpec::single(FamilyTag::Y4, 3)
            .unwrap()
            .generate()
            .unwrap();
        assert_eq!(y.vertex_count(), 10);
        assert!(!y.has_vertex("r1c1") && !y.has_vertex("r4c1"));
    }

    #[test]
    fn generation_is_deterministic() {
        for tag in [FamilyTag::C, FamilyTag::M, FamilyTag::CH] {
            assert_eq!(gen(tag, 3, 4), gen(tag, 3, 4));
        }
    }

    #[test]
    fn invalid_dimensions() {
        assert!(FamilySpec::new(FamilyTag::P, 0, 3).is_err());
        assert!(FamilySpec::single(FamilyTag::X4, 0).is_err());
    }

    #[test]
    fn family_doc_round_trip() {
        let doc: FamilyDoc = serde_json::from_str(r#"{"family":"C","m":3,"n":4}"#).unwrap();
        let spec = FamilySpec::try_from(&doc).unwrap();
        assert_eq!(spec, FamilySpec::new(FamilyTag::C, 3, 4).unwrap());
        let doc: FamilyDoc = serde_json::from_str(r#"{"family":"Y4","n":5}"#).unwrap();
        assert_eq!(FamilySpec::try_from(&doc).unwrap().tag, FamilyTag::Y4);
        let doc: FamilyDoc = serde_json::from_str(r#"{"family":"M","n":5}"#).unwrap();
        assert!(FamilySpec::try_from(&doc).is_err());
    }

    #[test]
    fn references_parse() {
        let spec: FamilySpec = "C:3:4".parse().unwrap();
        assert_eq!(spec, FamilySpec::new(FamilyTag::C, 3, 4).unwrap());
        assert_eq!("C(3,4)".parse::<FamilySpec>().unwrap(), spec);
        assert_eq!(
            "MH1:5".parse::<FamilySpec>().unwrap(),
            FamilySpec::single(FamilyTag::MH1, 5).unwrap()
        );
        assert_eq!(spec.to_string().parse::<FamilySpec>().unwrap(), spec);
        for bad in ["C:3", "MH1:2:3", "Q:1:1", "C", "C(3,4", "C:0:3"] {
            assert!(bad.parse::<FamilySpec>().is_err(), "{bad}");
        }
    }
}
