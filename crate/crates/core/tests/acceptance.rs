//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Expected shapes and the closed form are transcribed here from the
//! published statements, independently of the library's tables. Euler
//! characteristics are recomputed with two test-side oracles: a transfer
//! matrix over column states (built from the family definitions, not from
//! the generated graphs) and a split enumeration for arbitrary graphs.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use gridcomplex::complex::{collapse_oracle, independence_complex, DEFAULT_FACE_BUDGET};
use gridcomplex::euler::{chi_enumerate, chi_prop_a, chi_recursive};
use gridcomplex::family::{FamilySpec, FamilyTag};
use gridcomplex::graph::{Graph, UnionLabels};
use gridcomplex::homology::{graph_betti, BettiMethod, BettiProfile};
use gridcomplex::morse_ops::{
    builtin_certificate, make_replacement, replay, CheckLevel, OpStep, ReplacementKind,
};
use gridcomplex::verify::{
    agreement_suite, edge_identity_suite, expected_shape, instance_rng, join_identity_suite,
    oracle_suite, random_graph, random_host, theorem_suite, verify_appendix, verify_case,
    BettiMode, CorollaryFamily, Verdict, WedgeShape,
};
use rand::seq::SliceRandom;
use rand::Rng;

const SEED: u64 = 20_241_016;
const PRIMES: [u64; 2] = [2, 3];

// ---------------------------------------------------------------- oracles

/// `(m, d)` for a wedge of `m` copies of the `d`-sphere; `None` for a point.
type Shape = Option<(u64, i64)>;

fn stated_shape(family: CorollaryFamily, n: usize) -> Shape {
    let n = n as i64;
    let w = |m: u64, d: i64| Some((m, d));
    match family {
        CorollaryFamily::C1 => {
            let (k, i) = (n / 3, n % 3);
            match i {
                0 => w(2, k - 1),
                1 => w(1, k - 1),
                _ => w(1, k),
            }
        }
        CorollaryFamily::C2 => {
            let (k, i) = (n / 4, n % 4);
            match i {
                0 => w(3, 2 * k - 1),
                1 => w(1, 2 * k - 1),
                2 => w(1, 2 * k),
                _ => w(1, 2 * k + 1),
            }
        }
        CorollaryFamily::C3 => {
            let (k, i) = (n / 8, n % 8);
            match i {
                0 => w(5, 6 * k - 1),
                1 => w(1, 6 * k - 1),
                2 | 3 => w(1, 6 * k + 1),
                4 => w(3, 6 * k + 2),
                5 | 6 => w(1, 6 * k + 3),
                _ => w(1, 6 * k + 5),
            }
        }
        CorollaryFamily::M2 => {
            let (k, i) = (n / 4, n % 4);
            match i {
                0 => w(1, 2 * k - 1),
                1 => w(1, 2 * k),
                2 => w(3, 2 * k),
                _ => w(1, 2 * k),
            }
        }
        CorollaryFamily::M3 => {
            let (k, i) = (n / 8, n % 8);
            match i {
                0 => w(3, 6 * k - 1),
                1 | 2 => w(1, 6 * k),
                3 => w(1, 6 * k + 2),
                4 => w(5, 6 * k + 2),
                5 => w(1, 6 * k + 2),
                _ => w(1, 6 * k + 4),
            }
        }
        CorollaryFamily::CH1 => {
            if n % 2 == 0 {
                w(2, n - 1)
            } else {
                None
            }
        }
    }
}

fn shape_chi(s: Shape) -> i128 {
    match s {
        None => 0,
        Some((m, d)) => m as i128 * if d.rem_euclid(2) == 0 { 1 } else { -1 },
    }
}

/// Reduced Betti numbers of the shape from dimension −1, trailing zeros trimmed.
fn shape_betti(s: Shape) -> Vec<u64> {
    match s {
        None => vec![],
        Some((m, d)) => {
            let mut v = vec![0; (d + 2) as usize];
            v[(d + 1) as usize] = m;
            v
        }
    }
}

fn shape_matches_library(s: Shape, lib: &WedgeShape) -> bool {
    match (s, lib) {
        (None, WedgeShape::Point) => true,
        (Some((m, d)), WedgeShape::Wedge { m: lm, d: ld }) => m == *lm && d == *ld as i64,
        _ => false,
    }
}

fn prop_a_closed_form(n: usize) -> i128 {
    let (k, i) = ((n / 6) as i128, n % 6);
    match i {
        0 | 2 => -2 * k - 1,
        1 => 2 * k,
        3 | 5 => 2 * k + 1,
        _ => -2 * k - 2,
    }
}

/// Column states: independent sets of one column, given which vertical edges
/// are present (`vertical[r]` joins rows r and r+1).
fn column_states(rows: usize, vertical: &[bool]) -> Vec<u32> {
    (0..1u32 << rows)
        .filter(|&s| {
            (0..rows - 1).all(|r| !(vertical[r] && s >> r & 1 == 1 && s >> (r + 1) & 1 == 1))
        })
        .collect()
}

fn reverse_rows(s: u32, rows: usize) -> u32 {
    (0..rows)
        .filter(|&r| s >> r & 1 == 1)
        .map(|r| 1 << (rows - 1 - r))
        .sum()
}

fn sign(s: u32) -> i128 {
    if s.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `−Σ_S (−1)^{|S|}` over independent sets of a ring of columns whose
/// consecutive columns are joined row to row; the last column is joined to
/// the first through `wrap`. Degenerate rings (n = 1, 2) come out as the
/// quotient graphs with loops and merged edges.
fn ring_chi(rows: usize, verticals: &[Vec<bool>], wrap: impl Fn(u32) -> u32) -> i128 {
    let states: Vec<Vec<u32>> = verticals.iter().map(|v| column_states(rows, v)).collect();
    let mut total = 0i128;
    for &first in &states[0] {
        // weights over states of the current column, starting with `first` fixed
        let mut cur: Vec<(u32, i128)> = vec![(first, sign(first))];
        for col in states.iter().skip(1) {
            cur = col
                .iter()
                .map(|&t| {
                    (
                        t,
                        cur.iter()
                            .filter(|(s, _)| s & t == 0)
                            .map(|(_, w)| w * sign(t))
                            .sum(),
                    )
                })
                .collect();
        }
        total += cur
            .iter()
            .filter(|(s, _)| s & wrap(first) == 0)
            .map(|(_, w)| w)
            .sum::<i128>();
    }
    -total
}

fn family_chi_oracle(family: CorollaryFamily, n: usize) -> i128 {
    match family {
        CorollaryFamily::C1 | CorollaryFamily::C2 | CorollaryFamily::C3 => {
            let rows = match family {
                CorollaryFamily::C1 => 1,
                CorollaryFamily::C2 => 2,
                _ => 3,
            };
            ring_chi(rows, &vec![vec![true; rows]; n], |s| s)
        }
        CorollaryFamily::M2 | CorollaryFamily::M3 => {
            let rows = if family == CorollaryFamily::M2 { 2 } else { 3 };
            ring_chi(rows, &vec![vec![true; rows]; n], |s| reverse_rows(s, rows))
        }
        // Two rows, 2n columns, verticals at odd columns only.
        CorollaryFamily::CH1 => ring_chi(
            2,
            &(1..=2 * n).map(|j| vec![j % 2 == 1]).collect::<Vec<_>>(),
            |s| s,
        ),
    }
}

/// `χ̃(I(P_{4,n}))` by a transfer matrix along the path of columns.
fn p4_chi_oracle(n: usize) -> i128 {
    let states = column_states(4, &[true; 4]);
    let mut cur: Vec<(u32, i128)> = states.iter().map(|&s| (s, sign(s))).collect();
    for _ in 1..n {
        cur = states
            .iter()
            .map(|&t| {
                (
                    t,
                    cur.iter()
                        .filter(|(s, _)| s & t == 0)
                        .map(|(_, w)| w * sign(t))
                        .sum(),
                )
            })
            .collect();
    }
    -cur.iter().map(|(_, w)| w).sum::<i128>()
}

/// Adjacency masks of the loop-free vertices of `g`.
fn masks(g: &Graph) -> Vec<u64> {
    let labels: Vec<&str> = g.vertices().filter(|v| !g.has_loop(v)).collect();
    assert!(
        labels.len() <= 44,
        "split oracle handles at most 44 vertices"
    );
    labels
        .iter()
        .map(|a| {
            labels
                .iter()
                .enumerate()
                .filter(|(_, b)| g.has_edge(a, b))
                .map(|(j, _)| 1u64 << j)
                .sum()
        })
        .collect()
}

/// `χ̃(I(G))` by splitting the vertices in halves A, B: a table over subsets
/// of B holds `Σ (−1)^{|T|}` over independent `T`, and every independent
/// subset of A looks up the part of B it leaves free.
fn split_chi(g: &Graph) -> i128 {
    let adj = masks(g);
    let n = adj.len();
    let a = n / 2;
    let b = n - a;
    let b_adj: Vec<u64> = adj[a..].iter().map(|m| m >> a).collect();
    let mut table = vec![0i64; 1 << b];
    table[0] = 1;
    for mask in 1usize..1 << b {
        let v = mask.trailing_zeros() as usize;
        let without = mask & !(1 << v);
        let closed = b_adj[v] as usize | 1 << v;
        table[mask] = table[without] - table[mask & !closed];
    }
    let full_b: u64 = (1u64 << b) - 1;
    let mut sum = 0i128;
    fn walk(
        adj: &[u64],
        a: usize,
        i: usize,
        set: u64,
        parity: i128,
        free_b: u64,
        table: &[i64],
        sum: &mut i128,
    ) {
        if i == a {
            *sum += parity * table[free_b as usize] as i128;
            return;
        }
        walk(adj, a, i + 1, set, parity, free_b, table, sum);
        if adj[i] & set == 0 {
            walk(
                adj,
                a,
                i + 1,
                set | 1 << i,
                -parity,
                free_b & !(adj[i] >> a),
                table,
                sum,
            );
        }
    }
    walk(&adj, a, 0, 0, 1, full_b, &table, &mut sum);
    -sum
}

/// All independent sets of `g` as label sets.
fn independent_sets(g: &Graph) -> BTreeSet<Vec<String>> {
    let labels: Vec<&str> = g.vertices().filter(|v| !g.has_loop(v)).collect();
    let mut out = BTreeSet::new();
    for set in 0u32..1 << labels.len() {
        let members: Vec<&str> = (0..labels.len())
            .filter(|&i| set >> i & 1 == 1)
            .map(|i| labels[i])
            .collect();
        if members
            .iter()
            .enumerate()
            .all(|(i, x)| members[i + 1..].iter().all(|y| !g.has_edge(x, y)))
        {
            out.insert(members.iter().map(|s| s.to_string()).collect());
        }
    }
    out
}

fn family(tag: FamilyTag, m: usize, n: usize) -> Graph {
    FamilySpec::new(tag, m, n).unwrap().generate().unwrap()
}

// ---------------------------------------------------------------- criteria

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    let pass = failures.is_empty();
    let detail = if pass {
        summary
    } else {
        format!(
            "{summary}; {} problem(s), first: {}",
            failures.len(),
            failures[0]
        )
    };
    Outcome { pass, detail }
}

/// Checks one corollary case: library verdict, χ̃ against both the shape
/// and the transfer matrix, Betti numbers at both primes against the shape,
/// and explicit vs Morse Betti where the explicit complex fits the budget.
fn corollary_case(
    family: CorollaryFamily,
    n: usize,
    betti: bool,
    failures: &mut Vec<String>,
    cross: &mut usize,
) {
    let shape = stated_shape(family, n);
    let lib_shape = expected_shape(family, n).unwrap();
    if !shape_matches_library(shape, &lib_shape) {
        failures.push(format!(
            "{family} {n}: library shape {lib_shape} vs {shape:?}"
        ));
    }
    let g = family.spec(n).unwrap().generate().unwrap();
    let chi = chi_recursive(&g).unwrap();
    let oracle = family_chi_oracle(family, n);
    if chi != shape_chi(shape) || oracle != chi {
        failures.push(format!(
            "{family} {n}: chi {chi}, oracle {oracle}, shape {}",
            shape_chi(shape)
        ));
    }
    let mode = if betti {
        BettiMode::Auto
    } else {
        BettiMode::Off
    };
    let report = verify_case(family, n, &PRIMES, mode, DEFAULT_FACE_BUDGET).unwrap();
    if report.verdict != Verdict::Pass {
        failures.push(report.to_string());
    }
    if !betti {
        return;
    }
    for p in PRIMES {
        let b = graph_betti(&g, p, DEFAULT_FACE_BUDGET, BettiMethod::Auto).unwrap();
        if b.values() != shape_betti(shape).as_slice() {
            failures.push(format!("{family} {n} p={p}: betti {b} vs {shape:?}"));
        }
    }
    if let Ok(k) = independence_complex(&g, DEFAULT_FACE_BUDGET) {
        let explicit = gridcomplex::homology::reduced_betti(&k, 2).unwrap();
        let morse = graph_betti(&g, 2, DEFAULT_FACE_BUDGET, BettiMethod::Morse).unwrap();
        *cross += 1;
        if explicit != morse {
            failures.push(format!(
                "{family} {n}: explicit {explicit} vs Morse {morse}"
            ));
        }
    }
}

fn betti_at(g: &Graph, dim: isize) -> Vec<u64> {
    PRIMES
        .iter()
        .map(|&p| {
            graph_betti(g, p, DEFAULT_FACE_BUDGET, BettiMethod::Auto)
                .unwrap()
                .get(dim)
        })
        .collect()
}

fn pin(failures: &mut Vec<String>, what: &str, got: Vec<u64>, want: u64) {
    if got.iter().any(|&b| b != want) {
        failures.push(format!("{what}: got {got:?} (p=2,3), want {want}"));
    }
}

fn within(failures: &mut Vec<String>, elapsed: Duration, limit: Duration) {
    if elapsed > limit {
        failures.push(format!("runtime {elapsed:.1?} exceeds {limit:?}"));
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (mut failures, mut cross) = (Vec::new(), 0);
    for n in 1..=16 {
        corollary_case(CorollaryFamily::C1, n, true, &mut failures, &mut cross);
    }
    within(&mut failures, start.elapsed(), Duration::from_secs(5));
    outcome(
        failures,
        format!(
            "C1 n=1..16 chi+betti(p=2,3) exact; explicit=Morse on {cross} cases; {:.2?}",
            start.elapsed()
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let (mut failures, mut cross) = (Vec::new(), 0);
    for n in 1..=16 {
        corollary_case(CorollaryFamily::C2, n, true, &mut failures, &mut cross);
    }
    for n in 1..=12 {
        corollary_case(CorollaryFamily::C3, n, n <= 9, &mut failures, &mut cross);
    }
    pin(
        &mut failures,
        "C(3,4) betti_2",
        betti_at(&family(FamilyTag::C, 3, 4), 2),
        3,
    );
    pin(
        &mut failures,
        "C(3,8) betti_5",
        betti_at(&family(FamilyTag::C, 3, 8), 5),
        5,
    );
    within(&mut failures, start.elapsed(), Duration::from_secs(120));
    outcome(
        failures,
        format!(
            "C2 n=1..16, C3 n=1..9 chi+betti, C3 n=10..12 chi; b2(C34)=3, b5(C38)=5; explicit=Morse on {cross} cases; {:.2?}",
            start.elapsed()
        ),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let (mut failures, mut cross) = (Vec::new(), 0);
    for n in 1..=16 {
        corollary_case(CorollaryFamily::M2, n, true, &mut failures, &mut cross);
    }
    for n in 3..=12 {
        corollary_case(CorollaryFamily::M3, n, n <= 9, &mut failures, &mut cross);
    }
    pin(
        &mut failures,
        "M(2,2) betti_0",
        betti_at(&family(FamilyTag::M, 2, 2), 0),
        3,
    );
    pin(
        &mut failures,
        "M(3,4) betti_2",
        betti_at(&family(FamilyTag::M, 3, 4), 2),
        5,
    );
    outcome(
        failures,
        format!(
            "M2 n=1..16, M3 n=3..9 chi+betti, M3 n=10..12 chi; b0(M22)=3, b2(M34)=5; explicit=Morse on {cross} cases; {:.2?}",
            start.elapsed()
        ),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let (mut failures, mut cross) = (Vec::new(), 0);
    for n in 1..=10 {
        corollary_case(CorollaryFamily::CH1, n, true, &mut failures, &mut cross);
        let g = family(FamilyTag::CH, 1, n);
        let chi = chi_recursive(&g).unwrap();
        let zero: Vec<BettiProfile> = PRIMES
            .iter()
            .map(|&p| graph_betti(&g, p, DEFAULT_FACE_BUDGET, BettiMethod::Auto).unwrap())
            .collect();
        if n % 2 == 1 {
            if chi != 0 || zero.iter().any(|b| !b.is_zero()) {
                failures.push(format!("CH(1,{n}): chi {chi}, betti not all zero"));
            }
        } else if chi != -2
            || zero
                .iter()
                .any(|b| b.nonzero() != vec![(n as isize - 1, 2)])
        {
            failures.push(format!("CH(1,{n}): chi {chi}, want b_{}=2", n - 1));
        }
    }
    outcome(
        failures,
        format!(
            "CH1 n=1..10: odd n chi=0 and zero betti, even n b_(n-1)=2, chi=-2; {:.2?}",
            start.elapsed()
        ),
    )
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=14 {
        let g = family(FamilyTag::P, 4, n);
        let (closed, lib, rec, tm) = (
            prop_a_closed_form(n),
            chi_prop_a(n),
            chi_recursive(&g).unwrap(),
            p4_chi_oracle(n),
        );
        if closed != lib || lib != rec || rec != tm {
            failures.push(format!(
                "P(4,{n}): closed {closed} library {lib} recursive {rec} transfer {tm}"
            ));
        }
        if (n % 2 == 1 && rec < 0) || (n % 2 == 0 && rec >= 0) {
            failures.push(format!("P(4,{n}): parity fails with chi {rec}"));
        }
    }
    let checks = verify_appendix(14).unwrap();
    failures.extend(checks.iter().filter(|c| !c.pass).map(ToString::to_string));
    within(&mut failures, start.elapsed(), Duration::from_secs(30));
    outcome(
        failures,
        format!(
            "closed form = chi(P(4,n)) n=1..14 exact, parity holds, {} P(4,n)/X/Y identities; {:.2?}",
            checks.len(),
            start.elapsed()
        ),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let pins = [
        ("thm1-generic", 3),
        ("thm2-generic", 6),
        ("thm3-generic", 33),
        ("p42", 4),
        ("c32", 2),
        ("m32", 4),
        ("c33", 7),
        ("c34", 8),
        ("m33", 4),
        ("m34", 15),
        ("ch1(1)", 3),
    ];
    let mut ids: Vec<(String, Option<usize>)> = pins
        .iter()
        .map(|(id, n)| (id.to_string(), Some(*n)))
        .collect();
    ids.extend((2..=5).map(|n| (format!("ch1({n})"), Some(3))));
    ids.extend((3..=10).map(|n| (format!("p4n-to-x({n})"), None)));
    ids.extend((4..=10).map(|n| (format!("y-recursion({n})"), None)));
    let mut intermediates = 0;
    for (id, want) in &ids {
        let cert = builtin_certificate(id).unwrap();
        if let Some(want) = want {
            if cert.steps.len() != *want {
                failures.push(format!("{id}: {} steps, pinned {want}", cert.steps.len()));
            }
        }
        let report = replay(&cert, CheckLevel::Chi).unwrap();
        if !report.passed() {
            failures.push(report.to_string());
            continue;
        }
        // Recompute χ̃ of every intermediate graph with the split oracle.
        let mut g = cert.initial.resolve().unwrap();
        let chi0 = split_chi(&g);
        for step in &cert.steps {
            g = step.apply(&g).unwrap();
            intermediates += 1;
            let chi = split_chi(&g);
            if chi != chi0 {
                failures.push(format!(
                    "{id}: oracle chi moves from {chi0} to {chi} at {step}"
                ));
                break;
            }
        }
        if g != cert.expected_final.resolve().unwrap() {
            failures.push(format!("{id}: final graph differs"));
        }
    }
    outcome(
        failures,
        format!(
            "{} certificates replay to their labeled finals; step pins 3,6,33,4,2,4,7,8,4,15,3 exact; chi constant on {intermediates} intermediate graphs; {:.2?}",
            ids.len(),
            start.elapsed()
        ),
    )
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut betti_checked = 0;
    const HOSTS: usize = 20;
    for kind in [
        ReplacementKind::Thm1,
        ReplacementKind::Thm2,
        ReplacementKind::Thm3,
    ] {
        let lib = theorem_suite(kind, HOSTS, SEED, 10, DEFAULT_FACE_BUDGET);
        if !lib.passed() || lib.instances < HOSTS {
            failures.push(lib.to_string());
        }
        for i in 0..HOSTS {
            let mut rng = instance_rng(SEED ^ 0xacce, 40 + kind as u32, i);
            let relaxed = kind == ReplacementKind::Thm2 && rng.gen_bool(0.5);
            let (g, patch) = random_host(&mut rng, kind, relaxed, 10);
            let r = make_replacement(&g, &patch).unwrap();
            let report = replay(&r.certificate, CheckLevel::Chi).unwrap();
            if !report.passed() {
                failures.push(format!("{kind} host {i}: {report}"));
                continue;
            }
            let (cg, ch) = (split_chi(&g), split_chi(&r.h));
            if ch != -cg {
                failures.push(format!("{kind} host {i}: chi(H)={ch}, chi(G)={cg}"));
            }
            let bg = graph_betti(&g, 2, DEFAULT_FACE_BUDGET, BettiMethod::Auto).unwrap();
            let bh = graph_betti(&r.h, 2, DEFAULT_FACE_BUDGET, BettiMethod::Auto).unwrap();
            betti_checked += 1;
            if bh != bg.shifted(kind.suspensions()) {
                failures.push(format!("{kind} host {i}: betti(H)={bh}, betti(G)={bg}"));
            }
        }
    }
    outcome(
        failures,
        format!(
            "{HOSTS}+{HOSTS} random hosts per theorem replay; chi(H)=-chi(G) exact; GF(2) betti shift 1/1/3 on {betti_checked} hosts; {:.2?}",
            start.elapsed()
        ),
    )
}

fn step_kind(s: &OpStep) -> usize {
    match s {
        OpStep::DelVertex { .. } => 0,
        OpStep::DelEdge { .. } => 1,
        OpStep::AddEdge { .. } => 2,
    }
}

/// Valid moves of one kind, enumerated from the definitions.
fn moves(g: &Graph, kind: usize) -> Vec<OpStep> {
    let vs: Vec<&str> = g.vertices().collect();
    let mut out = Vec::new();
    for &u in &vs {
        if g.has_loop(u) {
            continue;
        }
        for (i, &a) in vs.iter().enumerate() {
            let candidates: Vec<OpStep> = match kind {
                0 => vec![OpStep::del_vertex(a, u)],
                _ => vs[i + 1..]
                    .iter()
                    .filter(|&&b| g.has_edge(a, b) == (kind == 1))
                    .map(|&b| {
                        if kind == 1 {
                            OpStep::del_edge(a, b, u)
                        } else {
                            OpStep::add_edge(a, b, u)
                        }
                    })
                    .collect(),
            };
            for s in candidates {
                // u must be isolated once the closed neighbourhood of the target is removed.
                let target: Vec<&str> = match &s {
                    OpStep::DelVertex { target, .. } => vec![target.as_str()],
                    OpStep::DelEdge { target, .. } | OpStep::AddEdge { target, .. } => {
                        vec![target[0].as_str(), target[1].as_str()]
                    }
                };
                if target.contains(&u) || target.iter().any(|t| g.has_edge(t, u)) {
                    continue;
                }
                let mut removed: BTreeSet<&str> = target.iter().copied().collect();
                for t in &target {
                    removed.extend(g.neighbors(t).unwrap().iter().map(String::as_str));
                }
                if g.neighbors(u)
                    .unwrap()
                    .iter()
                    .all(|x| removed.contains(x.as_str()))
                {
                    out.push(s);
                }
            }
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    const INSTANCES: usize = 200;
    let lib = oracle_suite(INSTANCES, SEED, DEFAULT_FACE_BUDGET);
    if !lib.passed() || lib.instances < INSTANCES {
        failures.push(lib.to_string());
    }
    let mut done = [0usize; 3];
    let mut collapses = 0;
    for i in 0..INSTANCES {
        let mut rng = instance_rng(SEED, 80, i);
        let kind = i % 3;
        let (g, step) = loop {
            let n = rng.gen_range(2..=9);
            let g = random_graph(&mut rng, n, 0.35, 0.05);
            if let Some(s) = moves(&g, kind).choose(&mut rng) {
                break (g.clone(), s.clone());
            }
        };
        assert_eq!(step_kind(&step), kind);
        let edited = step.apply(&g).unwrap();
        let report = match collapse_oracle(&g, &step, DEFAULT_FACE_BUDGET) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("instance {i} {step}: {e}"));
                continue;
            }
        };
        let (big, small) = if kind == 1 {
            (&edited, &g)
        } else {
            (&g, &edited)
        };
        let want = independent_sets(small);
        let got: BTreeSet<Vec<String>> = report
            .residual
            .label_faces()
            .into_iter()
            .map(|f| f.into_iter().map(String::from).collect())
            .collect();
        let start_faces = independent_sets(big).len();
        if !report.residual_matches
            || got != want
            || report.start_faces != start_faces
            || 2 * report.pairs != start_faces - want.len()
        {
            failures.push(format!(
                "instance {i} {step}: residual differs from I(edited graph)"
            ));
        }
        done[kind] += 1;
        collapses += report.pairs;
    }
    outcome(
        failures,
        format!(
            "{INSTANCES}+{INSTANCES} instances (del-vertex {}, del-edge {}, add-edge {}); residual = I(edited) exactly; {collapses} free-face collapses; {:.2?}",
            done[0],
            done[1],
            done[2],
            start.elapsed()
        ),
    )
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for r in [
        join_identity_suite(100, SEED, DEFAULT_FACE_BUDGET),
        edge_identity_suite(100, SEED, DEFAULT_FACE_BUDGET),
        agreement_suite(200, SEED, 12, DEFAULT_FACE_BUDGET),
    ] {
        if !r.passed() {
            failures.push(r.to_string());
        }
    }
    let (mut joins, mut edges, mut agree) = (0, 0, 0);
    for i in 0..100 {
        let mut rng = instance_rng(SEED, 90, i);
        let (a, b) = (rng.gen_range(0..=8), rng.gen_range(0..=8));
        let g = random_graph(&mut rng, a, 0.4, 0.05);
        let h = random_graph(&mut rng, b, 0.4, 0.05);
        let u = g.disjoint_union(&h, UnionLabels::Suffix).unwrap();
        let (cu, cg, ch) = (split_chi(&u), split_chi(&g), split_chi(&h));
        if cu != -cg * ch {
            failures.push(format!("join {i}: {cu} != -({cg})({ch})"));
        }
        joins += 1;
    }
    let mut draw = 0;
    while edges < 100 {
        let mut rng = instance_rng(SEED, 91, draw);
        draw += 1;
        let n = rng.gen_range(2..=12);
        let g = random_graph(&mut rng, n, 0.4, 0.0);
        let all: Vec<(String, String)> = g
            .edges()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let Some((a, b)) = all.choose(&mut rng) else {
            continue;
        };
        let closed: Vec<String> = g.edge_neighborhood(a, b).unwrap().into_iter().collect();
        let lhs = split_chi(&g.delete_edge(a, b).unwrap());
        let (with, link) = (
            split_chi(&g),
            split_chi(&g.delete_vertices(&closed).unwrap()),
        );
        if lhs != with + link {
            failures.push(format!("edge {edges}: {lhs} != {with} + {link}"));
        }
        edges += 1;
    }
    for i in 0..200 {
        let mut rng = instance_rng(SEED, 92, i);
        let n = rng.gen_range(0..=12);
        let density = rng.gen_range(0.1..0.7);
        let g = random_graph(&mut rng, n, density, 0.05);
        let (e, r, o) = (
            chi_enumerate(&g, DEFAULT_FACE_BUDGET).unwrap(),
            chi_recursive(&g).unwrap(),
            split_chi(&g),
        );
        if e != r || r != o {
            failures.push(format!(
                "agreement {i}: enumerate {e} recursive {r} oracle {o}"
            ));
        }
        agree += 1;
    }
    outcome(
        failures,
        format!(
            "join identity on 100+{joins}, edge identity (plus sign) on 100+{edges}, enumerate=recursive on 200+{agree} instances, exact; {:.2?}",
            start.elapsed()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("C(1,n) shapes", criterion_1),
        ("C(2,n) and C(3,n) shapes", criterion_2),
        ("M(2,n) and M(3,n) shapes", criterion_3),
        ("CH(1,n) shapes", criterion_4),
        ("P(4,n) closed form and parity", criterion_5),
        ("builtin certificate replays", criterion_6),
        ("replacement on random hosts", criterion_7),
        ("collapse oracle", criterion_8),
        ("Euler identities", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| Outcome {
            pass: false,
            detail: format!(
                "panicked: {}",
                e.downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default()
            ),
        });
        failed += !result.pass as usize;
        println!(
            "criterion {} {} [{name}] tolerance=exact :: {}",
            i + 1,
            if result.pass { "PASS" } else { "FAIL" },
            result.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
