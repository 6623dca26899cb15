//! Built-in certificates and the grid shorthand they are written in.
//!
//! Shorthand: `Add(1 4b, 3)` adds the edge between column 1 row 1 and
//! column 4 row 2 with witness column 3 row 1; `Del(2h, 1t)` deletes the
//! vertex at column 2 row 3 with witness column 1 row 4. A bare column
//! number means row 1 and the suffixes `b`, `h`, `t` mean rows 2, 3, 4.

use super::certificate::Certificate;
use super::replacement::{make_replacement, MarkedPatch, ReplacementKind};
use super::step::OpStep;
use crate::error::{Error, Result};
use crate::family::{grid_label, planar, FamilySpec, FamilyTag};
use crate::graph::{Graph, UnionLabels};
use crate::io::GraphSource;

fn position(token: &str) -> Result<(usize, usize)> {
    let split = token
        .find(|c: char| !c.is_ascii_digit())
        .unwrap_or(token.len());
    let (digits, suffix) = token.split_at(split);
    let col: usize = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad shorthand vertex `{token}`")))?;
    let row = match suffix {
        "" => 1,
        "b" => 2,
        "h" => 3,
        "t" => 4,
        _ => return Err(Error::Parse(format!("bad shorthand vertex `{token}`"))),
    };
    if col == 0 {
        return Err(Error::Parse(format!("bad shorthand vertex `{token}`")));
    }
    Ok((col, row))
}

/// Parses a comma separated list of `Add(..)` / `Del(..)` moves, naming
/// vertices through `at(column, row)`.
pub fn parse_shorthand(text: &str, at: impl Fn(usize, usize) -> String) -> Result<Vec<OpStep>> {
    let mut steps = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| Error::Parse(format!("expected `(` in `{rest}`")))?;
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("expected `)` in `{rest}`")))?;
        let name = rest[..open].trim();
        let body = &rest[open + 1..close];
        let (target, witness) = body
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected `target, witness` in `{body}`")))?;
        let name_of = |tok: &str| -> Result<String> {
            let (c, r) = position(tok)?;
            Ok(at(c, r))
        };
        let witness = name_of(witness.trim())?;
        let target: Vec<String> = target
            .split_whitespace()
            .map(name_of)
            .collect::<Result<_>>()?;
        let step = match (name, target.as_slice()) {
            ("Del", [v]) => OpStep::DelVertex {
                target: v.clone(),
                witness,
            },
            ("Del", [a, b]) => OpStep::DelEdge {
                target: [a.clone(), b.clone()],
                witness,
            },
            ("Add", [a, b]) => OpStep::AddEdge {
                target: [a.clone(), b.clone()],
                witness,
            },
            _ => return Err(Error::Parse(format!("bad shorthand step `{name}({body})`"))),
        };
        steps.push(step);
        rest = rest[close + 1..]
            .trim_start()
            .trim_start_matches(',')
            .trim_start();
    }
    Ok(steps)
}

/// Shorthand on family labels `r<row>c<col>`.
fn grid_steps(text: &str) -> Vec<OpStep> {
    parse_shorthand(text, |c, r| grid_label(r, c)).expect("built-in shorthand is well-formed")
}

fn edges(list: &[(&str, &str)]) -> Graph {
    Graph::from_edge_list(list).expect("built-in edge list is well-formed")
}

fn family_cert(
    name: &str,
    spec: FamilySpec,
    steps: Vec<OpStep>,
    fin: &Graph,
    note: &str,
) -> Certificate {
    Certificate {
        name: name.to_string(),
        initial: GraphSource::from(spec),
        steps,
        expected_final: fin.into(),
        note: Some(note.to_string()),
    }
}

const PARAMETERIZED: [&str; 3] = ["ch1", "p4n-to-x", "y-recursion"];

/// Ids of the built-in certificates; parameterized ones are listed at their
/// smallest parameter.
pub fn builtin_ids() -> Vec<String> {
    [
        "thm1-generic",
        "thm2-generic",
        "thm3-generic",
        "p42",
        "c32",
        "m32",
        "c33",
        "c34",
        "m33",
        "m34",
        "ch1(1)",
        "p4n-to-x(3)",
        "y-recursion(4)",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

fn split_id(id: &str) -> Result<(&str, Option<usize>)> {
    let bad = || Error::UnknownCertificate(id.to_string());
    if let Some(open) = id.find('(') {
        let inner = id[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        Ok((&id[..open], Some(inner.trim().parse().map_err(|_| bad())?)))
    } else if let Some((name, n)) = id.split_once(':') {
        Ok((name, Some(n.trim().parse().map_err(|_| bad())?)))
    } else {
        Ok((id, None))
    }
}

/// Looks up a built-in certificate, e.g. `c33`, `ch1(3)` or `y-recursion:7`.
pub fn builtin_certificate(id: &str) -> Result<Certificate> {
    let (name, n) = split_id(id)?;
    let out_of_range =
        |min: usize| Error::UnknownCertificate(format!("{id}: parameter must be at least {min}"));
    if PARAMETERIZED.contains(&name) != n.is_some() {
        return Err(Error::UnknownCertificate(id.to_string()));
    }
    let mut cert = match (name, n) {
        ("thm1-generic", _) => generic(ReplacementKind::Thm1, &["r1c2", "r1c3"])?,
        ("thm2-generic", _) => generic(ReplacementKind::Thm2, &["r1c2", "r2c2", "r1c3", "r2c3"])?,
        ("thm3-generic", _) => generic(
            ReplacementKind::Thm3,
            &["r1c2", "r2c2", "r3c2", "r1c3", "r2c3", "r3c3"],
        )?,
        ("p42", _) => family_cert(
            "p42",
            FamilySpec::new(FamilyTag::P, 4, 2)?,
            grid_steps("Del(1b, 2), Del(2b, 1), Del(1h, 2t), Del(2h, 1t)"),
            &edges(&[("r1c1", "r1c2"), ("r4c1", "r4c2")]),
            "P(4,2) reduced to two disjoint edges",
        ),
        ("c32", _) => family_cert(
            "c32",
            FamilySpec::new(FamilyTag::C, 3, 2)?,
            grid_steps("Del(1b, 2), Del(2b, 1)"),
            &edges(&[("r1c1", "r1c2"), ("r3c1", "r3c2")]),
            "C(3,2) reduced to two disjoint edges",
        ),
        ("m32", _) => family_cert(
            "m32",
            FamilySpec::new(FamilyTag::M, 3, 2)?,
            grid_steps("Del(1h, 1), Del(2h, 2), Del(1b, 2), Del(2b, 1)"),
            &edges(&[("r1c1", "r1c2")]),
            "M(3,2) reduced to one edge",
        ),
        ("c33", _) => family_cert(
            "c33",
            FamilySpec::new(FamilyTag::C, 3, 3)?,
            grid_steps("Add(1 2h, 3b), Add(1 3h, 2b), Del(1, 1h), Del(2b, 3), Del(3b, 2), Del(3h, 1b), Del(1b, 2h)"),
            &c33_final(),
            "C(3,3) reduced to two disjoint edges",
        ),
        ("c34", _) => family_cert(
            "c34",
            FamilySpec::new(FamilyTag::C, 3, 4)?,
            grid_steps(
                "Add(1 3h, 2b), Del(1 1b, 2h), Del(3 3b, 1), Add(2b 4b, 3), Del(2 2b, 4), \
                 Del(4, 2), Del(1, 3), Del(2b 4b, 3h)",
            ),
            &c34_final(),
            "C(3,4) reduced to C(2,4) plus an edge",
        ),
        ("m33", _) => family_cert(
            "m33",
            FamilySpec::new(FamilyTag::M, 3, 3)?,
            grid_steps("Del(1 3h, 2b), Del(1h 3, 2b), Del(1b 3b, 2), Del(2b, 1)"),
            &m33_final(),
            "M(3,3) reduced to an 8-cycle",
        ),
        ("m34", _) => family_cert(
            "m34",
            FamilySpec::new(FamilyTag::M, 3, 4)?,
            grid_steps(
                "Add(1b 3b, 2), Add(2b 4b, 3), Add(1 2b, 3h), Add(1b 2, 4), Add(3 4b, 1), \
                 Add(3b 4, 2h), Del(1b 1h, 3), Del(2b 2h, 4h), Del(3b 3h, 1h), Add(4 4h, 2h), \
                 Del(1h 4, 3h), Del(3h, 1h), Del(2 3, 4h), Add(3b 4h, 2), Del(4h, 3)",
            ),
            &m34_final(),
            "M(3,4) reduced to the auxiliary graph plus an edge",
        ),
        ("ch1", Some(n)) => {
            if n < 1 {
                return Err(out_of_range(1));
            }
            ch1(n)
        }
        ("p4n-to-x", Some(n)) => {
            if n < 3 {
                return Err(out_of_range(3));
            }
            p4n_to_x(n)
        }
        ("y-recursion", Some(n)) => {
            if n < 4 {
                return Err(out_of_range(4));
            }
            y_recursion(n)
        }
        _ => return Err(Error::UnknownCertificate(id.to_string())),
    };
    cert.name = id.to_string();
    Ok(cert)
}

fn generic(kind: ReplacementKind, patch: &[&str]) -> Result<Certificate> {
    let host = match kind {
        ReplacementKind::Thm1 | ReplacementKind::Thm2 => planar(2, 3, 0),
        ReplacementKind::Thm3 => planar(3, 3, 0),
    };
    let r = make_replacement(&host, &MarkedPatch::new(kind, patch.iter().copied()))?;
    Ok(r.certificate)
}

fn c33_final() -> Graph {
    edges(&[("r1c2", "r1c3"), ("r3c1", "r3c2")])
}

/// `C_{2,4}` on rows 2 and 3 plus the edge `r1c2–r1c3`.
fn c34_final() -> Graph {
    let mut list = vec![("r1c2".to_string(), "r1c3".to_string())];
    for r in 2..=3 {
        for c in 1..=4 {
            list.push((grid_label(r, c), grid_label(r, c % 4 + 1)));
        }
    }
    for c in 1..=4 {
        list.push((grid_label(2, c), grid_label(3, c)));
    }
    let refs: Vec<(&str, &str)> = list.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    edges(&refs)
}

fn m33_final() -> Graph {
    edges(&[
        ("r1c1", "r1c2"),
        ("r1c2", "r1c3"),
        ("r1c3", "r2c3"),
        ("r2c3", "r3c3"),
        ("r3c3", "r3c2"),
        ("r3c2", "r3c1"),
        ("r3c1", "r2c1"),
        ("r2c1", "r1c1"),
    ])
}

/// Two `K_4`s on `{r1c1, r1c2, r2c1, r2c2}` and `{r1c3, r1c4, r2c3, r2c4}`
/// joined through `r2c1, r2c2` to `r2c3, r2c4`, plus the edge `r3c1–r3c2`.
fn m34_final() -> Graph {
    edges(&[
        ("r1c1", "r1c2"),
        ("r1c1", "r2c1"),
        ("r1c1", "r2c2"),
        ("r1c2", "r2c1"),
        ("r1c2", "r2c2"),
        ("r2c1", "r2c2"),
        ("r1c3", "r1c4"),
        ("r1c3", "r2c3"),
        ("r1c3", "r2c4"),
        ("r1c4", "r2c3"),
        ("r1c4", "r2c4"),
        ("r2c3", "r2c4"),
        ("r2c1", "r2c3"),
        ("r2c1", "r2c4"),
        ("r2c2", "r2c3"),
        ("r2c2", "r2c4"),
        ("r3c1", "r3c2"),
    ])
}

/// The hexagonal cycle step: three moves adding the closing vertical edge.
fn ch1(n: usize) -> Certificate {
    let last = 2 * n + 2;
    let text = format!("Add({last} 3b, 2), Add({last} {last}b, 2b), Del({last} 3b, 2)");
    let spec = FamilySpec::new(FamilyTag::CH, 1, n + 1).expect("n >= 1");
    let fin = spec
        .generate()
        .and_then(|g| g.add_edge(&grid_label(1, last), &grid_label(2, last)))
        .expect("closing edge is absent");
    family_cert(
        "ch1",
        spec,
        grid_steps(&text),
        &fin,
        "hexagonal cycle with the closing vertical added",
    )
}

fn p4n_to_x(n: usize) -> Certificate {
    let fin = planar(4, n - 2, 2)
        .add_edge(&grid_label(1, 3), &grid_label(4, 3))
        .and_then(|x| {
            x.disjoint_union(
                &edges(&[("r1c1", "r1c2"), ("r4c1", "r4c2")]),
                UnionLabels::Strict,
            )
        })
        .expect("disjoint labels");
    family_cert(
        "p4n-to-x",
        FamilySpec::new(FamilyTag::P, 4, n).expect("n >= 3"),
        grid_steps("Del(2b, 1), Del(2h, 1t), Add(1h 3, 1), Del(2 3, 1b), Del(1b, 2), Add(3 3t, 1t), Del(2t 3t, 1h), Del(1h, 2t)"),
        &fin,
        "P(4,n) reduced to X(n-2) plus two edges",
    )
}

fn y_recursion(n: usize) -> Certificate {
    let fin = planar(4, n - 3, 3)
        .delete_vertices(&[grid_label(1, 4), grid_label(4, 4)])
        .and_then(|y| {
            y.disjoint_union(
                &edges(&[("r2c1", "r3c1"), ("r1c2", "r1c3"), ("r4c2", "r4c3")]),
                UnionLabels::Strict,
            )
        })
        .expect("disjoint labels");
    family_cert(
        "y-recursion",
        FamilySpec::single(FamilyTag::Y4, n).expect("n >= 4"),
        grid_steps("Del(2b, 1h), Del(2h, 1b), Del(3b, 2), Del(3h, 2t), Del(4, 2), Del(4t, 2t)"),
        &fin,
        "Y(n) reduced to Y(n-3) plus three edges",
    )
}
