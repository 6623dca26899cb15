//! Reduced Betti numbers over prime fields.
//!
//! Two routes: explicit boundary matrices of an augmented chain complex
//! (sparse column reduction with clearing), and for independence complexes
//! too large to list, an acyclic matching built from a decision tree on the
//! graph. The tree only depends on the set of undecided vertices, so
//! critical cell counts are memoized on that set; Morse differentials are
//! computed by following gradient paths when the counts alone do not
//! settle the answer.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{independence_complex, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

/// Reduced Betti numbers `β̃_d` over GF(p), stored from dimension −1 with
/// trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiProfile {
    pub p: u64,
    values: Vec<u64>,
}

impl BettiProfile {
    /// `values[0]` is the entry for dimension −1.
    pub fn from_values(p: u64, mut values: Vec<u64>) -> Self {
        while values.last() == Some(&0) {
            values.pop();
        }
        BettiProfile { p, values }
    }

    pub fn zero(p: u64) -> Self {
        BettiProfile {
            p,
            values: Vec::new(),
        }
    }

    pub fn get(&self, dim: isize) -> u64 {
        usize::try_from(dim + 1)
            .ok()
            .and_then(|i| self.values.get(i).copied())
            .unwrap_or(0)
    }

    /// Entries from dimension −1 up to the last nonzero one.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn nonzero(&self) -> Vec<(isize, u64)> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(|(i, &b)| (i as isize - 1, b))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// `Σ (−1)^d β̃_d`.
    pub fn euler(&self) -> i128 {
        self.nonzero()
            .into_iter()
            .map(|(d, b)| {
                if d.rem_euclid(2) == 0 {
                    b as i128
                } else {
                    -(b as i128)
                }
            })
            .sum()
    }

    /// The profile of the `k`-fold suspension.
    pub fn shifted(&self, k: usize) -> Self {
        if self.values.is_empty() {
            return self.clone();
        }
        let mut values = vec![0; k];
        values.extend_from_slice(&self.values);
        BettiProfile { p: self.p, values }
    }

    /// Same numbers, ignoring the field.
    pub fn same_numbers(&self, other: &BettiProfile) -> bool {
        self.values == other.values
    }
}

/// `d:value` pairs for the nonzero entries, space separated; `0` for the zero profile.
impl fmt::Display for BettiProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = self.nonzero();
        if pairs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = pairs.iter().map(|(d, b)| format!("{d}:{b}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn check_prime(p: u64) -> Result<()> {
    if p < 2 || p > u32::MAX as u64 || (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn inverse(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a is nonzero mod p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// A sparse column: strictly increasing row indices with nonzero values mod p.
type Column = Vec<(u32, u64)>;

/// Incremental column reduction over GF(p); counts the rank.
struct Reducer {
    p: u64,
    pivots: HashMap<u32, Column>,
}

impl Reducer {
    fn new(p: u64) -> Self {
        Reducer {
            p,
            pivots: HashMap::new(),
        }
    }

    /// Reduces the column against the stored pivots. Returns its pivot row
    /// if it stays nonzero.
    fn push(&mut self, mut col: Column) -> Option<u32> {
        let p = self.p;
        while let Some(&(low, value)) = col.last() {
            let Some(piv) = self.pivots.get(&low) else {
                self.pivots.insert(low, col);
                return Some(low);
            };
            let (_, pv) = *piv.last().expect("pivot columns are nonzero");
            let factor = value * inverse(pv, p) % p;
            col = axpy(&col, piv, p - factor, p);
        }
        None
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// `a + f·b` mod p.
fn axpy(a: &Column, b: &Column, f: u64, p: u64) -> Column {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ra = a.get(i).map(|e| e.0).unwrap_or(u32::MAX);
        let rb = b.get(j).map(|e| e.0).unwrap_or(u32::MAX);
        if ra < rb {
            out.push(a[i]);
            i += 1;
        } else if rb < ra {
            out.push((rb, b[j].1 * f % p));
            j += 1;
        } else {
            let v = (a[i].1 + b[j].1 * f) % p;
            if v != 0 {
                out.push((ra, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn sign(i: usize, p: u64) -> u64 {
    if i % 2 == 0 {
        1
    } else {
        p - 1
    }
}

/// Reduced Betti numbers of an explicit complex via its augmented chain complex.
pub fn reduced_betti(k: &SimplicialComplex, p: u64) -> Result<BettiProfile> {
    check_prime(p)?;
    let top = k.dim();
    // by_size[s] holds the faces with s vertices, sorted.
    let by_size: Vec<Vec<Face>> = (-1..=top).map(|d| k.faces_of_dim(d)).collect();
    let index: Vec<HashMap<&Face, u32>> = by_size
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, f)| (f, i as u32)).collect())
        .collect();
    // rank[s] = rank of the boundary map from size-s faces to size-(s−1) faces.
    let mut rank = vec![0usize; by_size.len() + 1];
    let mut cleared: Vec<bool> = Vec::new();
    for s in (1..by_size.len()).rev() {
        let mut reducer = Reducer::new(p);
        let mut next_cleared = vec![false; by_size[s - 1].len()];
        for (ci, face) in by_size[s].iter().enumerate() {
            if cleared.get(ci).copied().unwrap_or(false) {
                continue;
            }
            let mut col: Column = (0..face.len())
                .map(|skip| {
                    let sub: Face = face
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    (index[s - 1][&sub], sign(skip, p))
                })
                .collect();
            col.sort_unstable_by_key(|e| e.0);
            if let Some(row) = reducer.push(col) {
                next_cleared[row as usize] = true;
            }
        }
        rank[s] = reducer.rank();
        cleared = next_cleared;
    }
    let values = (0..by_size.len())
        .map(|s| (by_size[s].len() - rank[s] - rank[s + 1]) as u64)
        .collect();
    Ok(BettiProfile::from_values(p, values))
}

/// How [`graph_betti`] computes homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BettiMethod {
    /// Explicit complex when it fits the budget, Morse matching otherwise.
    #[default]
    Auto,
    Explicit,
    Morse,
}

/// Reduced Betti numbers of `I(G)` over GF(p).
pub fn graph_betti(g: &Graph, p: u64, budget: usize, method: BettiMethod) -> Result<BettiProfile> {
    match method {
        BettiMethod::Explicit => reduced_betti(&independence_complex(g, budget)?, p),
        BettiMethod::Morse => morse_betti(g, p),
        BettiMethod::Auto => match independence_complex(g, budget) {
            Ok(k) => reduced_betti(&k, p),
            Err(Error::FaceBudget { .. }) => morse_betti(g, p),
            Err(e) => Err(e),
        },
    }
}

enum Node {
    /// Cone apex: every face at this node is matched by toggling the vertex.
    Toggle(usize),
    /// No undecided vertices: the included set is a critical cell.
    Critical,
    /// Branch on whether the vertex is in the face.
    Split(usize),
}

/// The decision tree on `I(G)`; a node is fixed by its undecided set `U`.
struct MatchingTree {
    adj: Vec<u128>,
}

enum Fate {
    Critical,
    /// Matched with the face plus this vertex.
    Up(usize),
    Down,
}

impl MatchingTree {
    fn node(&self, u: u128) -> Node {
        if u == 0 {
            return Node::Critical;
        }
        let mut pivot = usize::MAX;
        let mut pivot_deg = u32::MAX;
        for x in bits(u) {
            let deg = (self.adj[x] & u).count_ones();
            if deg == 0 {
                return Node::Toggle(x);
            }
            if deg < pivot_deg {
                pivot_deg = deg;
                pivot = x;
            }
        }
        let split = bits(self.adj[pivot] & u)
            .max_by_key(|&v| ((self.adj[v] & u).count_ones(), std::cmp::Reverse(v)))
            .expect("pivot has a neighbour");
        Node::Split(split)
    }

    /// Critical cell counts by size, for the subtree rooted at `U`.
    fn counts(&self, u: u128, memo: &mut HashMap<u128, Vec<u64>>) -> Vec<u64> {
        if let Some(c) = memo.get(&u) {
            return c.clone();
        }
        let out = match self.node(u) {
            Node::Toggle(_) => Vec::new(),
            Node::Critical => vec![1],
            Node::Split(v) => {
                let mut out = self.counts(u & !(1 << v), memo);
                let inc = self.counts(u & !(1 << v) & !self.adj[v], memo);
                if out.len() < inc.len() + 1 {
                    out.resize(inc.len() + 1, 0);
                }
                for (s, c) in inc.into_iter().enumerate() {
                    out[s + 1] += c;
                }
                out
            }
        };
        memo.insert(u, out.clone());
        out
    }

    /// Critical cells of the given size.
    fn critical_cells(
        &self,
        u: u128,
        included: u128,
        size: usize,
        out: &mut Vec<u128>,
        memo: &mut HashMap<u128, Vec<u64>>,
    ) {
        let need = size - included.count_ones() as usize;
        if self.counts(u, memo).get(need).copied().unwrap_or(0) == 0 {
            return;
        }
        match self.node(u) {
            Node::Toggle(_) => {}
            Node::Critical => out.push(included),
            Node::Split(v) => {
                self.critical_cells(u & !(1 << v), included, size, out, memo);
                if need > 0 {
                    self.critical_cells(
                        u & !(1 << v) & !self.adj[v],
                        included | 1 << v,
                        size,
                        out,
                        memo,
                    );
                }
            }
        }
    }

    /// Leaf key (decisions read as bits, first decision most significant,
    /// inclusion = 1) and the fate of a face.
    fn locate(&self, root: u128, face: u128) -> (u128, Fate) {
        let mut u = root;
        let mut key = 0u128;
        let mut depth = 0;
        loop {
            match self.node(u) {
                Node::Critical => return (key, Fate::Critical),
                Node::Toggle(x) => {
                    let fate = if face >> x & 1 == 1 {
                        Fate::Down
                    } else {
                        Fate::Up(x)
                    };
                    return (key, fate);
                }
                Node::Split(v) => {
                    u &= !(1 << v);
                    if face >> v & 1 == 1 {
                        key |= 1 << (127 - depth);
                        u &= !self.adj[v];
                    }
                    depth += 1;
                }
            }
        }
    }

    /// Coefficients of the Morse boundary of critical cell `c` on the
    /// critical cells one dimension down.
    fn morse_boundary(&self, root: u128, c: u128, p: u64) -> BTreeMap<u128, u64> {
        let mut pending: BTreeMap<(u128, u128), u64> = BTreeMap::new();
        let add = |pending: &mut BTreeMap<(u128, u128), u64>, face: u128, coeff: u64| {
            if coeff % p == 0 {
                return;
            }
            let (key, _) = self.locate(root, face);
            let e = pending.entry((key, face)).or_insert(0);
            *e = (*e + coeff) % p;
        };
        for (i, v) in bits(c).enumerate() {
            add(&mut pending, c & !(1 << v), sign(i, p));
        }
        let mut result = BTreeMap::new();
        while let Some(((_, face), coeff)) = pending.pop_last() {
            if coeff == 0 {
                continue;
            }
            match self.locate(root, face).1 {
                Fate::Critical => {
                    result.insert(face, coeff);
                }
                Fate::Down => {}
                Fate::Up(x) => {
                    let mu = face | 1 << x;
                    let pos = (mu & ((1u128 << x) - 1)).count_ones() as usize;
                    // z ← z − (coeff / [∂μ : face]) ∂μ
                    let factor = coeff * inverse(sign(pos, p), p) % p;
                    for (i, y) in bits(mu).enumerate() {
                        if y != x {
                            add(&mut pending, mu & !(1 << y), (p - factor) * sign(i, p) % p);
                        }
                    }
                }
            }
        }
        result
    }
}

/// Critical cell counts of the decision-tree matching on `I(G)`, by dimension from −1.
pub fn morse_critical_counts(g: &Graph) -> Result<Vec<u64>> {
    let (tree, root) = tree_of(g)?;
    Ok(tree.counts(root, &mut HashMap::new()))
}

fn tree_of(g: &Graph) -> Result<(MatchingTree, u128)> {
    let ig = g.indexed()?;
    let usable = ig.usable();
    let adj = ig.adj.iter().map(|a| a & usable).collect();
    Ok((MatchingTree { adj }, usable))
}

/// Reduced Betti numbers of `I(G)` from the Morse complex of the decision-tree matching.
pub fn morse_betti(g: &Graph, p: u64) -> Result<BettiProfile> {
    check_prime(p)?;
    let (tree, root) = tree_of(g)?;
    let mut memo = HashMap::new();
    let counts = tree.counts(root, &mut memo);
    let occupied = |s: usize| counts.get(s).copied().unwrap_or(0) > 0;
    // rank[s] = rank of the Morse differential from size-s cells to size-(s−1) cells.
    let mut rank = vec![0u64; counts.len() + 1];
    for s in 1..counts.len() {
        if !occupied(s) || !occupied(s - 1) {
            continue;
        }
        let mut upper = Vec::new();
        tree.critical_cells(root, 0, s, &mut upper, &mut memo);
        let mut lower = Vec::new();
        tree.critical_cells(root, 0, s - 1, &mut lower, &mut memo);
        let row: HashMap<u128, u32> = lower
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i as u32))
            .collect();
        let mut reducer = Reducer::new(p);
        for &c in &upper {
            let mut col: Column = tree
                .morse_boundary(root, c, p)
                .into_iter()
                .map(|(f, v)| (row[&f], v))
                .collect();
            col.sort_unstable_by_key(|e| e.0);
            reducer.push(col);
        }
        rank[s] = reducer.rank() as u64;
    }
    let values = (0..counts.len())
        .map(|s| counts[s] - rank[s] - rank[s + 1])
        .collect();
    Ok(BettiProfile::from_values(p, values))
}
