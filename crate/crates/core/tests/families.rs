use boxikit::families::{
    build_divisor_graph, build_lifted, build_power_graph_cyclic, build_tc_hypercube, build_tcc, divisors,
    FamilyKind, FamilySpec,
};
use boxikit::graph::LabeledGraph;
use boxikit::isomorphism::{are_isomorphic_capped, is_isomorphism};
use boxikit::posets::{comparability_graph, divisibility_poset, longest_chain};

fn clique_number(g: &LabeledGraph) -> usize {
    fn grow(g: &LabeledGraph, clique: &mut Vec<usize>, from: usize, best: &mut usize) {
        *best = (*best).max(clique.len());
        for v in from..g.order() {
            if clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
                grow(g, clique, v + 1, best);
                clique.pop();
            }
        }
    }
    let mut best = 0;
    grow(g, &mut Vec::new(), 0, &mut best);
    best
}

#[test]
fn tcc_order_and_clique_number() {
    for m in [vec![1], vec![4], vec![1, 1], vec![2, 3], vec![1, 1, 1], vec![1, 2, 2], vec![3, 3], vec![1, 1, 1, 1]] {
        let g = build_tcc(&m).unwrap();
        let order: usize = m.iter().map(|&x| x as usize + 1).product();
        assert_eq!(g.order(), order, "{m:?}");
        let chain: u32 = m.iter().sum::<u32>() + 1;
        assert_eq!(clique_number(&g), chain as usize, "{m:?}");
    }
}

#[test]
fn divisor_graph_is_the_divisibility_comparability_graph() {
    for n in 1..=1000u64 {
        let p = divisibility_poset(&divisors(n)).unwrap();
        assert_eq!(comparability_graph(&p), build_divisor_graph(n).unwrap(), "n={n}");
    }
}

#[test]
fn longest_chain_matches_clique_number() {
    for n in [12u64, 30, 36, 60, 72, 210, 360] {
        let p = divisibility_poset(&divisors(n)).unwrap();
        assert_eq!(longest_chain(&p), clique_number(&comparability_graph(&p)), "n={n}");
    }
}

#[test]
fn power_graph_matches_explicit_subgroups() {
    for n in 1..=60u64 {
        let subgroup = |y: u64| -> Vec<u64> { (0..n).map(|k| k * y % n).collect() };
        let g = build_power_graph_cyclic(n).unwrap();
        for x in 0..n {
            for y in x + 1..n {
                let related = subgroup(y).contains(&x) || subgroup(x).contains(&y);
                assert_eq!(g.has_edge(x as usize, y as usize), related, "n={n}, {{{x},{y}}}");
            }
        }
    }
}

#[test]
fn lifted_cubes_are_truncated_hypercube_closures() {
    for s in 2..=8 {
        let cube = build_tc_hypercube(s, true).unwrap();
        for k in [1, 2, 5] {
            let lifted = build_lifted(s, k).unwrap();
            let map = are_isomorphic_capped(&lifted, &cube, 256).unwrap().expect("isomorphic");
            assert!(is_isomorphism(&lifted, &cube, &map), "s={s}, k={k}");
        }
    }
}

#[test]
fn truncated_closure_has_no_universal_vertex() {
    for s in 2..=6 {
        let g = build_tc_hypercube(s, true).unwrap();
        assert!((0..g.order()).all(|v| g.degree(v) + 1 < g.order()), "s={s}");
    }
}

#[test]
fn family_specs_reach_every_builder() {
    let cases = [
        (FamilyKind::Tcc, vec![1, 2]),
        (FamilyKind::Divisor, vec![12]),
        (FamilyKind::PowerCyclic, vec![12]),
        (FamilyKind::ReducedPowerCyclic, vec![12]),
        (FamilyKind::HypercubeTc, vec![3]),
        (FamilyKind::HypercubeTcTruncated, vec![3]),
        (FamilyKind::Lifted, vec![3, 2]),
        (FamilyKind::Crown, vec![4]),
    ];
    for (kind, params) in cases {
        let spec = FamilySpec::new(kind, params);
        let json = serde_json::to_string(&spec).unwrap();
        let back: FamilySpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back.build().unwrap(), spec.build().unwrap());
    }
}
