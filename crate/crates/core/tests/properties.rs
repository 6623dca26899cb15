use proptest::prelude::*;

use gridcomplex::complex::{
    collapse_oracle, diamond, independence_complex, join, DEFAULT_FACE_BUDGET,
};
use gridcomplex::euler::{chi_enumerate, chi_recursive};
use gridcomplex::graph::{same_graph, Comparison, Graph, UnionLabels};
use gridcomplex::homology::{graph_betti, reduced_betti, BettiMethod};
use gridcomplex::io::parse_graph;
use gridcomplex::morse_ops::{Certificate, OpStep};
use gridcomplex::verify::{valid_steps, WedgeShape};

/// Graphs on `v0..` with up to `max` vertices, sparse loops.
fn graphs(max: usize) -> impl Strategy<Value = Graph> {
    (0..=max).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        (
            proptest::collection::vec(any::<bool>(), pairs),
            proptest::collection::vec(0u8..16, n),
        )
            .prop_map(move |(e, l)| {
                let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if e[k] {
                            edges.push((vs[i].clone(), vs[j].clone()));
                        }
                        k += 1;
                    }
                }
                let loops: Vec<String> = (0..n)
                    .filter(|&i| l[i] == 0)
                    .map(|i| vs[i].clone())
                    .collect();
                Graph::new(vs, edges, loops).unwrap()
            })
    })
}

fn faces(g: &Graph) -> std::collections::BTreeSet<Vec<String>> {
    independence_complex(g, DEFAULT_FACE_BUDGET)
        .unwrap()
        .label_faces()
        .into_iter()
        .map(|f| f.into_iter().map(String::from).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn euler_poincare(g in graphs(10)) {
        let chi = chi_enumerate(&g, DEFAULT_FACE_BUDGET).unwrap();
        for p in [2, 3, 5] {
            let b = graph_betti(&g, p, DEFAULT_FACE_BUDGET, BettiMethod::Explicit).unwrap();
            prop_assert_eq!(b.euler(), chi);
        }
    }

    #[test]
    fn chi_methods_agree(g in graphs(14)) {
        prop_assert_eq!(chi_enumerate(&g, DEFAULT_FACE_BUDGET).unwrap(), chi_recursive(&g).unwrap());
    }

    #[test]
    fn morse_matches_explicit(g in graphs(11)) {
        for p in [2, 3] {
            let explicit = graph_betti(&g, p, DEFAULT_FACE_BUDGET, BettiMethod::Explicit).unwrap();
            let morse = graph_betti(&g, p, DEFAULT_FACE_BUDGET, BettiMethod::Morse).unwrap();
            prop_assert_eq!(morse, explicit);
        }
    }

    #[test]
    fn suspension_shifts_betti(g in graphs(8)) {
        let k = independence_complex(&g, DEFAULT_FACE_BUDGET).unwrap();
        let sk = join(&k, &diamond(0).unwrap(), UnionLabels::Suffix).unwrap();
        prop_assert_eq!(reduced_betti(&sk, 2).unwrap(), reduced_betti(&k, 2).unwrap().shifted(1));
        // At graph level: a disjoint edge suspends.
        let e = Graph::from_edge_list(&[("e0", "e1")]).unwrap();
        let ge = g.disjoint_union(&e, UnionLabels::Suffix).unwrap();
        prop_assert_eq!(
            graph_betti(&ge, 3, DEFAULT_FACE_BUDGET, BettiMethod::Auto).unwrap(),
            graph_betti(&g, 3, DEFAULT_FACE_BUDGET, BettiMethod::Auto).unwrap().shifted(1)
        );
    }

    #[test]
    fn join_identity(g in graphs(7), h in graphs(7)) {
        let u = g.disjoint_union(&h, UnionLabels::Suffix).unwrap();
        prop_assert_eq!(chi_recursive(&u).unwrap(), -chi_recursive(&g).unwrap() * chi_recursive(&h).unwrap());
    }

    #[test]
    fn moves_change_faces_in_the_right_direction(g in graphs(8), pick in any::<prop::sample::Index>()) {
        let steps = valid_steps(&g);
        prop_assume!(!steps.is_empty());
        let step = &steps[pick.index(steps.len())];
        let edited = step.apply(&g).unwrap();
        let (before, after) = (faces(&g), faces(&edited));
        // A looped target lies in no face and the move leaves the complex alone.
        let targets: Vec<&str> = match step {
            OpStep::DelVertex { target, .. } => vec![target.as_str()],
            OpStep::DelEdge { target, .. } | OpStep::AddEdge { target, .. } => target.iter().map(String::as_str).collect(),
        };
        let strict = !targets.iter().any(|t| g.has_loop(t));
        match step {
            OpStep::DelEdge { .. } => prop_assert!(after.is_superset(&before) && (after.len() > before.len()) == strict),
            _ => prop_assert!(after.is_subset(&before) && (after.len() < before.len()) == strict),
        }
        prop_assert_eq!(chi_recursive(&edited).unwrap(), chi_recursive(&g).unwrap());
        let report = collapse_oracle(&g, step, DEFAULT_FACE_BUDGET).unwrap();
        prop_assert!(report.residual_matches);
    }

    #[test]
    fn graph_json_round_trip(g in graphs(10)) {
        let back = parse_graph(&g.to_json()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn relabeling_preserves_isomorphism_class(g in graphs(9)) {
        let map = g.vertices().map(|v| (v.to_string(), format!("x{}", v.len() * 7 + v.as_bytes()[1] as usize))).collect();
        let h = g.relabel(&map).unwrap();
        prop_assert!(same_graph(&g, &h, Comparison::Isomorphic).unwrap().equal);
        prop_assert_eq!(chi_recursive(&g).unwrap(), chi_recursive(&h).unwrap());
    }

    #[test]
    fn certificate_json_round_trip(g in graphs(8), pick in any::<prop::sample::Index>()) {
        let steps = valid_steps(&g);
        prop_assume!(!steps.is_empty());
        let step = steps[pick.index(steps.len())].clone();
        let fin = step.apply(&g).unwrap();
        let cert = Certificate::new("prop", &g, vec![step], &fin);
        prop_assert_eq!(Certificate::from_json(&cert.to_json()).unwrap(), cert);
    }

    #[test]
    fn shapes_carry_consistent_invariants(m in 1u64..6, d in -1isize..9, k in 0usize..4) {
        prop_assume!(d >= 0 || m == 1);
        let s = WedgeShape::wedge(m, d).unwrap();
        for p in [2, 3] {
            prop_assert_eq!(s.betti(p).unwrap().euler(), s.chi());
            prop_assert_eq!(s.suspend(k).betti(p).unwrap(), s.betti(p).unwrap().shifted(k));
        }
        prop_assert_eq!(s.suspend(k).chi(), if k % 2 == 0 { s.chi() } else { -s.chi() });
    }
}
