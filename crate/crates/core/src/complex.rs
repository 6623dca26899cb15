//! Explicit simplicial complexes and the face-level collapse oracle.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{bits, Graph, UnionLabels};
use crate::morse_ops::OpStep;

pub const DEFAULT_FACE_BUDGET: usize = 200_000;

/// A face: sorted indices into the parent complex's vertex universe.
pub type Face = Vec<u32>;

/// A finite simplicial complex stored as an explicit face set.
///
/// The universe is kept in label order. The complex `{∅}` (the (−1)-sphere)
/// has an empty universe and the single empty face.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    universe: Vec<String>,
    faces: HashSet<Face>,
}

impl SimplicialComplex {
    /// Builds a complex from labeled faces; the universe is the union of the
    /// faces plus `extra_vertices`. Downward closure is not enforced here.
    pub fn from_label_faces<I, F, S>(faces: I, extra_vertices: &[&str]) -> Self
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labeled: Vec<BTreeSet<String>> = faces
            .into_iter()
            .map(|f| f.into_iter().map(Into::into).collect())
            .collect();
        let mut universe: BTreeSet<String> = labeled.iter().flatten().cloned().collect();
        universe.extend(extra_vertices.iter().map(|s| s.to_string()));
        let universe: Vec<String> = universe.into_iter().collect();
        let index: BTreeMap<&str, u32> = universe
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i as u32))
            .collect();
        let mut face_set: HashSet<Face> = labeled
            .iter()
            .map(|f| f.iter().map(|l| index[l.as_str()]).collect())
            .collect();
        face_set.insert(Vec::new());
        SimplicialComplex {
            universe,
            faces: face_set,
        }
    }

    /// The complex `{∅}`.
    pub fn void() -> Self {
        SimplicialComplex {
            universe: Vec::new(),
            faces: HashSet::from([Vec::new()]),
        }
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> impl Iterator<Item = &Face> + '_ {
        self.faces.iter()
    }

    pub fn contains(&self, face: &[u32]) -> bool {
        self.faces.contains(face)
    }

    pub fn contains_labels(&self, labels: &[&str]) -> bool {
        let mut face = Vec::with_capacity(labels.len());
        for l in labels {
            match self.universe.binary_search_by(|u| u.as_str().cmp(l)) {
                Ok(i) => face.push(i as u32),
                Err(_) => return false,
            }
        }
        face.sort_unstable();
        face.dedup();
        face.len() == labels.len() && self.faces.contains(&face)
    }

    pub fn labels_of(&self, face: &[u32]) -> Vec<&str> {
        face.iter()
            .map(|&i| self.universe[i as usize].as_str())
            .collect()
    }

    /// Faces as label sets; the canonical form used for equality.
    pub fn label_faces(&self) -> BTreeSet<Vec<&str>> {
        self.faces.iter().map(|f| self.labels_of(f)).collect()
    }

    /// Highest face dimension; −1 for `{∅}`.
    pub fn dim(&self) -> isize {
        self.faces
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    /// Face counts by dimension, starting at dimension −1.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0usize; (self.dim() + 2) as usize];
        for face in &self.faces {
            f[face.len()] += 1;
        }
        f
    }

    /// Faces of dimension `d` in lexicographic order.
    pub fn faces_of_dim(&self, d: isize) -> Vec<Face> {
        let size = d + 1;
        if size < 0 {
            return Vec::new();
        }
        let mut out: Vec<Face> = self
            .faces
            .iter()
            .filter(|f| f.len() as isize == size)
            .cloned()
            .collect();
        out.sort_unstable();
        out
    }

    /// Every codimension-1 subset of every face is again a face.
    pub fn is_downward_closed(&self) -> bool {
        self.faces.iter().all(|f| {
            (0..f.len()).all(|skip| {
                let sub: Face = f
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                self.faces.contains(&sub)
            })
        })
    }

    /// One face per line, labels comma separated, `()` for the empty face;
    /// ordered by dimension, then lexicographically.
    pub fn dump(&self) -> String {
        let mut faces: Vec<Vec<&str>> = self.label_faces().into_iter().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let mut out = String::new();
        for f in faces {
            if f.is_empty() {
                out.push_str("()\n");
            } else {
                let _ = writeln!(out, "{}", f.join(","));
            }
        }
        out
    }

    /// Re-indexes the complex onto a larger universe containing its own.
    fn reindexed(&self, universe: &[String]) -> HashSet<Face> {
        let map: Vec<u32> = self
            .universe
            .iter()
            .map(|l| universe.binary_search(l).expect("superset universe") as u32)
            .collect();
        self.faces
            .iter()
            .map(|f| {
                let mut g: Face = f.iter().map(|&i| map[i as usize]).collect();
                g.sort_unstable();
                g
            })
            .collect()
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        if self.faces.len() != other.faces.len() {
            return false;
        }
        if self.universe == other.universe {
            return self.faces == other.faces;
        }
        self.label_faces() == other.label_faces()
    }
}

impl Eq for SimplicialComplex {}

pub fn complexes_equal(k: &SimplicialComplex, l: &SimplicialComplex) -> bool {
    k == l
}

/// Calls `visit` with every independent set of `g` (as a bit mask over
/// `g.indexed()`), the empty set first. Stops with an error once more than
/// `budget` sets have been produced.
pub(crate) fn for_each_independent_set(
    adj: &[u128],
    usable: u128,
    budget: usize,
    mut visit: impl FnMut(u128),
) -> Result<usize> {
    fn extend(
        adj: &[u128],
        set: u128,
        candidates: u128,
        count: &mut usize,
        budget: usize,
        visit: &mut dyn FnMut(u128),
    ) -> Result<()> {
        for i in bits(candidates) {
            *count += 1;
            if *count > budget {
                return Err(Error::FaceBudget { budget });
            }
            let next = set | 1 << i;
            visit(next);
            let later = candidates & !crate::graph::low_bits(i + 1) & !adj[i];
            extend(adj, next, later, count, budget, visit)?;
        }
        Ok(())
    }
    let mut count = 1usize;
    if budget == 0 {
        return Err(Error::FaceBudget { budget });
    }
    visit(0);
    extend(adj, 0, usable, &mut count, budget, &mut visit)?;
    Ok(count)
}

/// `I(G)`: all independent sets of `G`. Looped vertices are not in the universe.
pub fn independence_complex(g: &Graph, budget: usize) -> Result<SimplicialComplex> {
    let ig = g.indexed()?;
    let usable = ig.usable();
    let universe: Vec<String> = bits(usable).map(|i| ig.labels[i].clone()).collect();
    // Position of each usable vertex in the universe.
    let mut pos = vec![u32::MAX; ig.len()];
    for (k, i) in bits(usable).enumerate() {
        pos[i] = k as u32;
    }
    let mut faces = HashSet::new();
    for_each_independent_set(&ig.adj, usable, budget, |set| {
        faces.insert(bits(set).map(|i| pos[i]).collect::<Face>());
    })?;
    Ok(SimplicialComplex { universe, faces })
}

/// `K * L` with `{σ ∪ τ}`. Universes must be disjoint unless suffixing is requested.
pub fn join(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    labels: UnionLabels,
) -> Result<SimplicialComplex> {
    let clash = l
        .universe
        .iter()
        .find(|v| k.universe.binary_search(v).is_ok());
    let renamed;
    let l = match (clash, labels) {
        (None, _) => l,
        (Some(v), UnionLabels::Strict) => return Err(Error::LabelClash(v.clone())),
        (Some(_), UnionLabels::Suffix) => {
            let mut suffix = String::from("'");
            while l
                .universe
                .iter()
                .any(|v| k.universe.binary_search(&format!("{v}{suffix}")).is_ok())
            {
                suffix.push('\'');
            }
            let faces: Vec<Vec<String>> = l
                .faces
                .iter()
                .map(|f| {
                    f.iter()
                        .map(|&i| format!("{}{suffix}", l.universe[i as usize]))
                        .collect()
                })
                .collect();
            let extra: Vec<String> = l.universe.iter().map(|v| format!("{v}{suffix}")).collect();
            let extra: Vec<&str> = extra.iter().map(String::as_str).collect();
            renamed = SimplicialComplex::from_label_faces(faces, &extra);
            &renamed
        }
    };
    let mut universe: Vec<String> = k.universe.iter().chain(&l.universe).cloned().collect();
    universe.sort();
    let kf = k.reindexed(&universe);
    let lf = l.reindexed(&universe);
    let mut faces = HashSet::with_capacity(kf.len() * lf.len());
    for a in &kf {
        for b in &lf {
            let mut f: Face = a.iter().chain(b).copied().collect();
            f.sort_unstable();
            faces.insert(f);
        }
    }
    Ok(SimplicialComplex { universe, faces })
}

/// `⋄^n`: the join of `n + 1` copies of the two-point complex. Vertices are `s<i>+` / `s<i>-`.
pub fn diamond(n: isize) -> Result<SimplicialComplex> {
    if n < -1 {
        return Err(Error::InvalidShape(format!(
            "diamond dimension {n} is below -1"
        )));
    }
    let mut k = SimplicialComplex::void();
    for i in 0..=n {
        let plus = format!("s{i}+");
        let minus = format!("s{i}-");
        let s0 =
            SimplicialComplex::from_label_faces([vec![plus.clone()], vec![minus.clone()]], &[]);
        k = join(&k, &s0, UnionLabels::Strict)?;
    }
    Ok(k)
}

/// Which complex the oracle collapsed and onto what.
#[derive(Clone, Debug)]
pub struct CollapseReport {
    /// True when the collapse runs from the edited graph's complex back onto
    /// the original one (edge deletions are expansions of `I(G)`).
    pub reversed: bool,
    /// Faces of the complex the collapse started from.
    pub start_faces: usize,
    /// Number of elementary collapses executed.
    pub pairs: usize,
    pub residual: SimplicialComplex,
    /// Residual equals the complex of the other end of the step.
    pub residual_matches: bool,
}

/// Makes the collapsing argument behind a move executable on explicit faces.
///
/// Builds the larger of the two complexes, pairs every face `σ` that has to
/// disappear and misses the witness `u` with `σ ∪ {u}`, checks that this is
/// a perfect matching of exactly the disappearing faces, removes the pairs
/// one elementary collapse at a time (highest dimension first, freeness
/// checked at each removal) and compares the residual with the complex of
/// the other graph.
pub fn collapse_oracle(g: &Graph, step: &OpStep, budget: usize) -> Result<CollapseReport> {
    step.check(g).map_err(|e| Error::Oracle(e.to_string()))?;
    let edited = step.apply(g).map_err(|e| Error::Oracle(e.to_string()))?;
    let (start, end, reversed) = match step {
        OpStep::DelEdge { .. } => (&edited, g, true),
        _ => (g, &edited, false),
    };
    let k = independence_complex(start, budget)?;
    let target = independence_complex(end, budget)?;
    // Looped targets are not in the universe; no face contains them.
    let idx = |label: &str| {
        k.universe
            .binary_search_by(|u| u.as_str().cmp(label))
            .ok()
            .map(|i| i as u32)
    };
    let (must_contain, witness): (Vec<Option<u32>>, Option<u32>) = match step {
        OpStep::DelVertex { target, witness } => (vec![idx(target)], idx(witness)),
        OpStep::DelEdge { target, witness } | OpStep::AddEdge { target, witness } => {
            (vec![idx(&target[0]), idx(&target[1])], idx(witness))
        }
    };
    let witness =
        witness.ok_or_else(|| Error::Oracle("witness is not a vertex of the complex".into()))?;
    let must_contain: Option<Vec<u32>> = must_contain.into_iter().collect();
    let disappearing: HashSet<&Face> = match &must_contain {
        Some(must) => k
            .faces
            .iter()
            .filter(|f| must.iter().all(|v| f.binary_search(v).is_ok()))
            .collect(),
        None => HashSet::new(),
    };
    let mut pairs: Vec<(Face, Face)> = Vec::new();
    for f in &disappearing {
        if f.binary_search(&witness).is_err() {
            let mut up = (*f).clone();
            let at = up.binary_search(&witness).unwrap_err();
            up.insert(at, witness);
            if !disappearing.contains(&up) {
                return Err(Error::Oracle(format!(
                    "matched partner of {:?} is not a face",
                    k.labels_of(f)
                )));
            }
            pairs.push(((*f).clone(), up));
        }
    }
    if pairs.len() * 2 != disappearing.len() {
        return Err(Error::Oracle(format!(
            "matching covers {} of {} disappearing faces",
            pairs.len() * 2,
            disappearing.len()
        )));
    }
    pairs.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then_with(|| a.cmp(b)));

    let mut current = k.faces.clone();
    let n = k.universe.len() as u32;
    for (free, top) in &pairs {
        if !current.contains(free) || !current.contains(top) {
            return Err(Error::Oracle("matched face already removed".into()));
        }
        let cofaces = (0..n)
            .filter(|x| free.binary_search(x).is_err())
            .filter(|&x| {
                let mut c = free.clone();
                c.insert(c.binary_search(&x).unwrap_err(), x);
                current.contains(&c)
            })
            .count();
        if cofaces != 1 {
            return Err(Error::Oracle(format!(
                "{:?} has {cofaces} cofaces when it is collapsed",
                k.labels_of(free)
            )));
        }
        current.remove(free);
        current.remove(top);
    }
    let residual = SimplicialComplex {
        universe: k.universe.clone(),
        faces: current,
    };
    let residual_matches = residual == target;
    Ok(CollapseReport {
        reversed,
        start_faces: k.len(),
        pairs: pairs.len(),
        residual,
        residual_matches,
    })
}
