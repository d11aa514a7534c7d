use std::collections::BTreeSet;

use proptest::prelude::*;

use osnwalk::sampler::{
    build_chain_matrix, mhrw_acceptance, read_trace, sample, split_halves, write_trace, ChainParams, StepKind,
};
use osnwalk::{generate, DirectedGraph, Error, GenSpec, Method, SamplerConfig, SeedNode, WalkSample};

fn median(mut v: Vec<usize>) -> f64 {
    v.sort_unstable();
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2] as f64
    } else {
        (v[n / 2 - 1] + v[n / 2]) as f64 / 2.0
    }
}

fn check_trace_invariants(g: &DirectedGraph, s: &WalkSample) {
    assert_eq!(s.len(), s.config.budget);
    assert_eq!(s.steps.len(), s.trace.len());
    assert_eq!(s.steps[0].kind, StepKind::Seed);
    assert!(s.distinct_count() <= s.config.budget);
    let mut walked = BTreeSet::new();
    for t in 1..s.len() {
        let (prev, cur, step) = (s.trace[t - 1], s.trace[t], s.steps[t]);
        assert_eq!(step.from, prev);
        match step.kind {
            StepKind::Rejection => {
                assert_eq!(s.method, Method::Mhrw);
                assert_eq!(cur, prev);
            }
            StepKind::Walk => {
                assert!(g.contains_edge(prev, cur));
                walked.insert((prev, cur));
            }
            StepKind::Jump => {}
            StepKind::Seed => panic!("seed step at position {t}"),
        }
    }
    assert_eq!(walked, s.collected_edges);
}

fn small_graph() -> impl Strategy<Value = DirectedGraph> {
    (1usize..40, 0.0f64..0.3, any::<u64>()).prop_map(|(n, p, seed)| generate(&GenSpec::erdos_renyi(n, p, seed)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn walks_respect_trace_invariants(
        g in small_graph(),
        budget in 1usize..400,
        seed in any::<u64>(),
        d in 0.05f64..=1.0,
        alpha in 0.01f64..20.0,
    ) {
        let cfg = SamplerConfig::new(budget, seed).with_walk_prob(d).with_jump_weight(alpha);
        for method in [Method::Mhrw, Method::Rwwj] {
            let s = sample(&g, method, &cfg).unwrap();
            check_trace_invariants(&g, &s);
            prop_assert_eq!(&s, &sample(&g, method, &cfg).unwrap());
        }
    }

    #[test]
    fn trace_files_round_trip(g in small_graph(), budget in 1usize..200, seed in any::<u64>()) {
        for method in [Method::Mhrw, Method::Rwwj] {
            let s = sample(&g, method, &SamplerConfig::new(budget, seed)).unwrap();
            let mut buf = Vec::new();
            write_trace(&mut buf, &s, &g).unwrap();
            let back = read_trace(buf.as_slice(), &g).unwrap();
            prop_assert_eq!(&back, &s);
        }
    }

    #[test]
    fn split_halves_partition_the_trace(g in small_graph(), budget in 2usize..300, seed in any::<u64>()) {
        let s = sample(&g, Method::Mhrw, &SamplerConfig::new(budget, seed)).unwrap();
        let (a, b) = split_halves(&s, seed).unwrap();
        let all = s.distinct_nodes();
        prop_assert!(a.is_subset(&all) && b.is_subset(&all));
        prop_assert_eq!(a.union(&b).copied().collect::<BTreeSet<_>>(), all);
        prop_assert!(a.len() <= budget / 2 && b.len() <= budget - budget / 2);
    }
}

#[test]
fn mhrw_collects_fewer_distinct_nodes() {
    let g = generate(&GenSpec::erdos_renyi(500, 0.02, 21)).unwrap();
    let budget = 75;
    let (mut m, mut r) = (Vec::new(), Vec::new());
    for seed in 0..60 {
        m.push(sample(&g, Method::Mhrw, &SamplerConfig::new(budget, seed)).unwrap().distinct_count());
        r.push(sample(&g, Method::Rwwj, &SamplerConfig::new(budget, 1000 + seed)).unwrap().distinct_count());
    }
    assert!(median(m.clone()) <= median(r.clone()), "mhrw {} vs rwwj {}", median(m), median(r));
}

#[test]
fn jumps_reach_both_components() {
    let spec = GenSpec::Union { components: vec![GenSpec::Ring { n: 30 }, GenSpec::erdos_renyi(20, 0.2, 3)] };
    let g = generate(&spec).unwrap();
    let budget = 100 * g.node_count();
    for method in [Method::Mhrw, Method::Rwwj] {
        let s = sample(&g, method, &SamplerConfig::new(budget, 5).with_seed_node(SeedNode::Id(0))).unwrap();
        let seen = s.distinct_nodes();
        assert!(seen.iter().any(|&v| v < 30) && seen.iter().any(|&v| v >= 30), "{method}");
    }
}

#[test]
fn single_node_walk_only_jumps() {
    let g = DirectedGraph::from_edges(1, []).unwrap();
    let s = sample(&g, Method::Rwwj, &SamplerConfig::new(5, 0).with_jump_weight(1.0)).unwrap();
    assert_eq!(s.trace, vec![0; 5]);
    assert_eq!(s.count_kind(StepKind::Jump), 4);
    assert!(s.collected_edges.is_empty());
}

#[test]
fn zero_jump_weight_needs_out_edges() {
    let dangling = generate(&GenSpec::InwardStar { n: 4 }).unwrap();
    let cfg = SamplerConfig::new(10, 0).with_jump_weight(0.0);
    assert!(matches!(sample(&dangling, Method::Rwwj, &cfg), Err(Error::InvalidParameter(_))));
    let ring = generate(&GenSpec::Ring { n: 4 }).unwrap();
    let s = sample(&ring, Method::Rwwj, &cfg).unwrap();
    assert_eq!(s.count_kind(StepKind::Walk), 9);
}

#[test]
fn acceptance_arithmetic() {
    let a = mhrw_acceptance(0.85, 10, 2, 4);
    let expected = (0.015 + 0.85 / 4.0) / (0.015 + 0.85 / 2.0);
    assert!((a - expected).abs() < 1e-15);
    assert!((a - 0.51705).abs() < 5e-6);
    assert_eq!(mhrw_acceptance(0.85, 10, 4, 2), 1.0);
    assert_eq!(mhrw_acceptance(0.85, 10, 3, 0), 1.0);
}

#[test]
fn fixed_seed_node_is_first() {
    let g = generate(&GenSpec::Ring { n: 10 }).unwrap();
    for method in [Method::Mhrw, Method::Rwwj] {
        let s = sample(&g, method, &SamplerConfig::new(3, 1).with_seed_node(SeedNode::Id(7))).unwrap();
        assert_eq!(s.trace[0], g.index_of(7).unwrap());
    }
    let cfg = SamplerConfig::new(3, 1).with_seed_node(SeedNode::Id(99));
    assert!(sample(&g, Method::Mhrw, &cfg).is_err());
}

/// Chain agreement on a larger graph, with the tolerance of each row scaled
/// to its visit count instead of a flat 0.01.
#[test]
fn simulated_rows_match_chain_within_sampling_noise() {
    let g = generate(&GenSpec::erdos_renyi(30, 0.15, 4).symmetrized()).unwrap();
    let n = g.node_count();
    for (method, params) in [
        (Method::Mhrw, ChainParams::Mhrw { walk_prob: 0.85 }),
        (Method::Rwwj, ChainParams::Rwwj { jump_weight: 10.0 }),
    ] {
        let m = build_chain_matrix(&g, params, 2000).unwrap();
        let s = sample(&g, method, &SamplerConfig::new(1_000_000, 3)).unwrap();
        let mut counts = vec![0u64; n * n];
        for t in 1..s.len() {
            counts[s.steps[t].from * n + s.trace[t]] += 1;
        }
        for i in 0..n {
            let row = &counts[i * n..(i + 1) * n];
            let visits = row.iter().sum::<u64>() as f64;
            for (j, (&c, &p)) in row.iter().zip(m.row(i)).enumerate() {
                let sd = (p * (1.0 - p) / visits).sqrt();
                assert!((c as f64 / visits - p).abs() <= 6.0 * sd + 1e-9, "{method} ({i},{j}): {} vs {p}", c as f64 / visits);
            }
        }
    }
}
