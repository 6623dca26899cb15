//! Seeded random instances for the property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::par_map;

use crate::complex::collapse_oracle;
use crate::error::Result;
use crate::euler::{chi_enumerate, chi_recursive};
use crate::graph::{Graph, UnionLabels};
use crate::homology::{graph_betti, BettiMethod};
use crate::morse_ops::{
    make_replacement, replay, CheckLevel, MarkedPatch, OpStep, ReplacementKind,
};

/// The generator for instance `index` of a suite; independent of scheduling.
pub fn instance_rng(seed: u64, suite: u32, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((suite as u64) << 32) | index as u64);
    rng
}

/// A graph on `v0..v{n-1}` with independent edge and loop probabilities.
pub fn random_graph(rng: &mut impl Rng, n: usize, p_edge: f64, p_loop: f64) -> Graph {
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p_edge) {
                edges.push((vertices[i].clone(), vertices[j].clone()));
            }
        }
    }
    let loops: Vec<String> = vertices
        .iter()
        .filter(|_| rng.gen_bool(p_loop))
        .cloned()
        .collect();
    Graph::new(vertices, edges, loops).expect("distinct generated labels")
}

/// Outcome of one property suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub instances: usize,
    /// How many instances also had their Betti numbers compared.
    pub betti_checked: usize,
    pub failures: Vec<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.instances > 0
    }

    fn collect(name: &str, outcomes: Vec<Result<(bool, Option<String>)>>) -> Self {
        let mut failures = Vec::new();
        let mut betti_checked = 0;
        for (i, o) in outcomes.iter().enumerate() {
            match o {
                Ok((betti, None)) => betti_checked += *betti as usize,
                Ok((_, Some(msg))) => failures.push(format!("instance {i}: {msg}")),
                Err(e) => failures.push(format!("instance {i}: {e}")),
            }
        }
        PropertyResult {
            name: name.to_string(),
            instances: outcomes.len(),
            betti_checked,
            failures,
        }
    }
}

impl PropertyResult {
    /// Counts and the first failure, without the name and verdict.
    pub fn summary(&self) -> String {
        let mut out = format!("instances={} betti={}", self.instances, self.betti_checked);
        if let Some(first) = self.failures.first() {
            out.push_str(&format!(" first failure: {first}"));
        }
        out
    }
}

impl std::fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{} {verdict} {}", self.name, self.summary())
    }
}

/// A host graph containing the patch as a full subgraph, with up to
/// `max_extra` further vertices attached to the patch and to each other.
pub fn random_host(
    rng: &mut impl Rng,
    kind: ReplacementKind,
    relaxed: bool,
    max_extra: usize,
) -> (Graph, MarkedPatch) {
    let names: Vec<String> = match kind {
        ReplacementKind::Thm1 => vec!["u".into(), "v".into()],
        ReplacementKind::Thm2 => vec!["a".into(), "abar".into(), "b".into(), "bbar".into()],
        ReplacementKind::Thm3 => ["a1", "a2", "a3", "b1", "b2", "b3"]
            .map(String::from)
            .to_vec(),
    };
    let mut core: Vec<(usize, usize)> = match kind {
        ReplacementKind::Thm1 => vec![(0, 1)],
        ReplacementKind::Thm2 => vec![(0, 1), (2, 3), (0, 2), (1, 3)],
        ReplacementKind::Thm3 => vec![(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)],
    };
    if relaxed {
        core.retain(|&e| e != (0, 1));
    }
    let extra = rng.gen_range(0..=max_extra);
    let ext: Vec<String> = (0..extra).map(|i| format!("h{i}")).collect();
    let mut edges: Vec<(String, String)> = core
        .iter()
        .map(|&(i, j)| (names[i].clone(), names[j].clone()))
        .collect();
    for (i, h) in ext.iter().enumerate() {
        for p in &names {
            if rng.gen_bool(0.3) {
                edges.push((h.clone(), p.clone()));
            }
        }
        for h2 in &ext[i + 1..] {
            if rng.gen_bool(0.3) {
                edges.push((h.clone(), h2.clone()));
            }
        }
    }
    let loops: Vec<String> = ext.iter().filter(|_| rng.gen_bool(0.05)).cloned().collect();
    let vertices: Vec<String> = names.iter().chain(&ext).cloned().collect();
    let g = Graph::new(vertices, edges, loops).expect("generated host is well-formed");
    let mut patch = MarkedPatch::new(kind, names);
    if relaxed {
        patch = patch.relaxed();
    }
    (g, patch)
}

/// Replacement on random hosts: the certificate replays, χ̃ flips sign and
/// GF(2) Betti numbers shift by the number of suspensions.
pub fn theorem_suite(
    kind: ReplacementKind,
    count: usize,
    seed: u64,
    max_extra: usize,
    budget: usize,
) -> PropertyResult {
    let outcomes = par_map(
        (0..count).collect(),
        |i| -> Result<(bool, Option<String>)> {
            let mut rng = instance_rng(seed, 1 + kind as u32, i);
            let relaxed = kind == ReplacementKind::Thm2 && i % 2 == 1;
            let (g, patch) = random_host(&mut rng, kind, relaxed, max_extra);
            let r = make_replacement(&g, &patch)?;
            let report = replay(&r.certificate, CheckLevel::Chi)?;
            if !report.passed() {
                return Ok((false, Some(report.to_string())));
            }
            let (cg, ch) = (chi_recursive(&g)?, chi_recursive(&r.h)?);
            if ch != -cg {
                return Ok((false, Some(format!("chi(H)={ch} chi(G)={cg}"))));
            }
            let bg = graph_betti(&g, 2, budget, BettiMethod::Auto)?;
            let bh = graph_betti(&r.h, 2, budget, BettiMethod::Auto)?;
            if bh != bg.shifted(kind.suspensions()) {
                return Ok((true, Some(format!("betti(H)={bh} betti(G)={bg}"))));
            }
            Ok((true, None))
        },
    );
    PropertyResult::collect(&format!("{kind}-random-hosts"), outcomes)
}

/// Every move applicable to `g`.
pub fn valid_steps(g: &Graph) -> Vec<OpStep> {
    let vs: Vec<&str> = g.vertices().collect();
    let mut out = Vec::new();
    for &u in &vs {
        for &v in &vs {
            if u != v {
                let s = OpStep::del_vertex(v, u);
                if s.check(g).is_ok() {
                    out.push(s);
                }
            }
        }
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                let s = if g.has_edge(a, b) {
                    OpStep::del_edge(a, b, u)
                } else {
                    OpStep::add_edge(a, b, u)
                };
                if s.check(g).is_ok() {
                    out.push(s);
                }
            }
        }
    }
    out
}

fn kind_index(s: &OpStep) -> usize {
    match s {
        OpStep::DelVertex { .. } => 0,
        OpStep::DelEdge { .. } => 1,
        OpStep::AddEdge { .. } => 2,
    }
}

/// Random graphs with at most nine vertices and a random valid move; the
/// collapse oracle must execute and land on the other end of the move.
/// Instances cycle through the three kinds of move.
pub fn oracle_suite(count: usize, seed: u64, budget: usize) -> PropertyResult {
    let outcomes = par_map(
        (0..count).collect(),
        |i| -> Result<(bool, Option<String>)> {
            let mut rng = instance_rng(seed, 10, i);
            let want = i % 3;
            loop {
                let n = rng.gen_range(2..=9);
                let density = rng.gen_range(0.15..0.6);
                let g = random_graph(&mut rng, n, density, 0.05);
                let steps: Vec<OpStep> = valid_steps(&g)
                    .into_iter()
                    .filter(|s| kind_index(s) == want)
                    .collect();
                let Some(step) = steps.choose(&mut rng) else {
                    continue;
                };
                let report = collapse_oracle(&g, step, budget)?;
                if !report.residual_matches {
                    return Ok((false, Some(format!("{step} on {g:?}: residual differs"))));
                }
                return Ok((false, None));
            }
        },
    );
    PropertyResult::collect("collapse-oracle", outcomes)
}

/// `χ̃(I(G ⊔ H)) = −χ̃(I(G))·χ̃(I(H))`, computed by enumeration.
pub fn join_identity_suite(count: usize, seed: u64, budget: usize) -> PropertyResult {
    let outcomes = par_map(
        (0..count).collect(),
        |i| -> Result<(bool, Option<String>)> {
            let mut rng = instance_rng(seed, 11, i);
            let (n1, n2) = (rng.gen_range(0..=7), rng.gen_range(0..=7));
            let g = random_graph(&mut rng, n1, 0.4, 0.05);
            let h = random_graph(&mut rng, n2, 0.4, 0.05);
            let u = g.disjoint_union(&h, UnionLabels::Suffix)?;
            let (cu, cg, ch) = (
                chi_enumerate(&u, budget)?,
                chi_enumerate(&g, budget)?,
                chi_enumerate(&h, budget)?,
            );
            if cu != -cg * ch {
                return Ok((false, Some(format!("{cu} != -({cg})({ch})"))));
            }
            Ok((false, None))
        },
    );
    PropertyResult::collect("join-identity", outcomes)
}

/// `χ̃(I(G−e)) = χ̃(I(G)) + χ̃(I(G∖N[e]))`, computed by enumeration; the
/// last term drops out when an endpoint is looped.
pub fn edge_identity_suite(count: usize, seed: u64, budget: usize) -> PropertyResult {
    let outcomes = par_map(
        (0..count).collect(),
        |i| -> Result<(bool, Option<String>)> {
            let mut rng = instance_rng(seed, 12, i);
            let g = loop {
                let n = rng.gen_range(2..=9);
                let g = random_graph(&mut rng, n, 0.4, 0.05);
                if g.edge_count() > 0 {
                    break g;
                }
            };
            let edges: Vec<(String, String)> = g
                .edges()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect();
            let (a, b) = edges.choose(&mut rng).expect("nonempty");
            let closed: Vec<String> = g.edge_neighborhood(a, b)?.into_iter().collect();
            let minus = chi_enumerate(&g.delete_edge(a, b)?, budget)?;
            let with = chi_enumerate(&g, budget)?;
            let link = if g.has_loop(a) || g.has_loop(b) {
                0
            } else {
                chi_enumerate(&g.delete_vertices(&closed)?, budget)?
            };
            if minus != with + link {
                return Ok((
                    false,
                    Some(format!(
                        "{minus} != {with} + {link} for edge {a}-{b} of {g:?}"
                    )),
                ));
            }
            Ok((false, None))
        },
    );
    PropertyResult::collect("edge-identity", outcomes)
}

/// Enumeration and the recursion agree on graphs with at most `max_vertices` vertices.
pub fn agreement_suite(
    count: usize,
    seed: u64,
    max_vertices: usize,
    budget: usize,
) -> PropertyResult {
    let outcomes = par_map(
        (0..count).collect(),
        |i| -> Result<(bool, Option<String>)> {
            let mut rng = instance_rng(seed, 13, i);
            let n = rng.gen_range(0..=max_vertices);
            let density = rng.gen_range(0.1..0.7);
            let g = random_graph(&mut rng, n, density, 0.05);
            let (e, r) = (chi_enumerate(&g, budget)?, chi_recursive(&g)?);
            if e != r {
                return Ok((false, Some(format!("enumerate {e} recursive {r} on {g:?}"))));
            }
            Ok((false, None))
        },
    );
    PropertyResult::collect("chi-agreement", outcomes)
}
