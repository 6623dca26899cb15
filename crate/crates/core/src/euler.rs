//! Reduced Euler characteristics of independence complexes.

use std::collections::HashMap;

use crate::complex::for_each_independent_set;
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ChiMethod {
    Enumerate,
    #[default]
    Recursive,
}

impl std::str::FromStr for ChiMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "enumerate" => Ok(ChiMethod::Enumerate),
            "recursive" => Ok(ChiMethod::Recursive),
            other => Err(Error::Parse(format!("unknown chi method `{other}`"))),
        }
    }
}

pub fn chi_reduced(g: &Graph, method: ChiMethod, budget: usize) -> Result<i128> {
    match method {
        ChiMethod::Enumerate => chi_enumerate(g, budget),
        ChiMethod::Recursive => chi_recursive(g),
    }
}

/// Sums `(−1)^dim σ` over all independent sets, the empty one included.
pub fn chi_enumerate(g: &Graph, budget: usize) -> Result<i128> {
    let ig = g.indexed()?;
    let mut chi = 0i128;
    for_each_independent_set(&ig.adj, ig.usable(), budget, |set| {
        // dim σ = |σ| − 1
        if set.count_ones() % 2 == 0 {
            chi -= 1;
        } else {
            chi += 1;
        }
    })?;
    Ok(chi)
}

/// `−I(G, −1)` through the vertex recursion, split over components and
/// memoized on the remaining vertex set.
pub fn chi_recursive(g: &Graph) -> Result<i128> {
    let ig = g.indexed()?;
    let usable = ig.usable();
    // Only unlooped vertices matter; restrict adjacency to them.
    let adj: Vec<u128> = ig.adj.iter().map(|a| a & usable).collect();
    let rank = sweep_rank(&adj, usable);
    let mut eval = IndependenceAtMinusOne {
        adj: &adj,
        rank: &rank,
        memo: HashMap::new(),
    };
    Ok(-eval.poly(usable))
}

/// Positions in a breadth-first sweep from a low-degree start, used to
/// break pivot ties so that the recursion eats the graph from one end.
fn sweep_rank(adj: &[u128], usable: u128) -> Vec<u32> {
    let mut rank = vec![u32::MAX; adj.len()];
    let mut next = 0u32;
    let mut left = usable;
    while left != 0 {
        let start = bits(left)
            .min_by_key(|&v| ((adj[v] & left).count_ones(), v))
            .expect("nonempty");
        let mut frontier = 1u128 << start;
        while frontier != 0 {
            let mut reached = 0u128;
            for v in bits(frontier) {
                rank[v] = next;
                next += 1;
                reached |= adj[v];
            }
            left &= !frontier;
            frontier = reached & left;
        }
    }
    rank
}

struct IndependenceAtMinusOne<'a> {
    adj: &'a [u128],
    rank: &'a [u32],
    memo: HashMap<u128, i128>,
}

impl IndependenceAtMinusOne<'_> {
    /// `I(G[set], −1)`.
    fn poly(&mut self, set: u128) -> i128 {
        if set == 0 {
            return 1;
        }
        if let Some(&v) = self.memo.get(&set) {
            return v;
        }
        let value = {
            let first = component(self.adj, set);
            if first != set {
                let a = self.poly(first);
                if a == 0 {
                    0
                } else {
                    a * self.poly(set & !first)
                }
            } else {
                self.connected(set)
            }
        };
        self.memo.insert(set, value);
        value
    }

    fn connected(&mut self, set: u128) -> i128 {
        let mut pivot = usize::MAX;
        let mut best = (0u32, u32::MAX);
        for v in bits(set) {
            let deg = (self.adj[v] & set).count_ones();
            if deg == 0 {
                // An isolated vertex contributes the factor 1 + x = 0.
                return 0;
            }
            let key = (deg, u32::MAX - self.rank[v]);
            if pivot == usize::MAX || key > best {
                best = key;
                pivot = v;
            }
        }
        let without = self.poly(set & !(1 << pivot));
        let closed = (self.adj[pivot] | 1 << pivot) & set;
        without - self.poly(set & !closed)
    }
}

/// The connected component of the lowest vertex of `set`.
fn component(adj: &[u128], set: u128) -> u128 {
    let start = set & set.wrapping_neg();
    let mut comp = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut reached = 0u128;
        for v in bits(frontier) {
            reached |= adj[v];
        }
        frontier = reached & set & !comp;
        comp |= frontier;
    }
    comp
}

/// Closed form for `χ̃(I(P_{4,n}))` with `n = 6k + i`.
pub fn chi_prop_a(n: usize) -> i128 {
    assert!(n >= 1, "n must be positive");
    let k = (n / 6) as i128;
    match n % 6 {
        0 => -2 * k - 1,
        1 => 2 * k,
        2 => -2 * k - 1,
        3 => 2 * k + 1,
        4 => -2 * k - 2,
        _ => 2 * k + 1,
    }
}

/// The three values in the edge identity `χ̃(I(G−e)) = χ̃(I(G)) + χ̃(I(G∖N[e]))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeIdentity {
    pub without_edge: i128,
    pub with_edge: i128,
    pub link: i128,
}

impl EdgeIdentity {
    pub fn holds(&self) -> bool {
        self.without_edge == self.with_edge + self.link
    }
}

/// Evaluates both sides of the edge identity for `e = ab`.
///
/// Faces of `I(G−e)` containing both `a` and `b` are exactly `σ ∪ {a, b}`
/// with `σ ∈ I(G∖N[e])`, two dimensions up, hence the plus sign. A loop at
/// `a` or `b` leaves no such faces and the link term is 0.
pub fn check_edge_recursion(g: &Graph, a: &str, b: &str) -> Result<EdgeIdentity> {
    let closed = g.edge_neighborhood(a, b)?;
    let closed: Vec<&String> = closed.iter().collect();
    let link = if g.has_loop(a) || g.has_loop(b) {
        0
    } else {
        chi_recursive(&g.delete_vertices(&closed)?)?
    };
    Ok(EdgeIdentity {
        without_edge: chi_recursive(&g.delete_edge(a, b)?)?,
        with_edge: chi_recursive(g)?,
        link,
    })
}
