//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails.
//!
//! Criteria 9 and 10 need the Higgs Twitter follower edge list; point
//! `OSNWALK_HIGGS` at it (plain or gzip) to enable them, otherwise they are
//! reported as SKIP.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use osnwalk::estimators::{
    capture_recapture_order, cross_collision_order, degree_distribution_estimate, mhrw_order_estimate,
    mutual_proportion_estimate, ratio_average_estimate,
};
use osnwalk::evaluation::{kl_divergence, ks_d_statistic, rrmse};
use osnwalk::sampler::{build_chain_matrix, sample, stationary_distribution, ChainMatrix, ChainParams};
use osnwalk::{generate, load_edge_list_file, Direction, DirectedGraph, Distribution, GenSpec, Method, SamplerConfig};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn tvd(a: &Distribution, b: &Distribution) -> f64 {
    let keys: BTreeSet<u64> = a.support().chain(b.support()).collect();
    0.5 * keys.iter().map(|&k| (a.mass(k) - b.mass(k)).abs()).sum::<f64>()
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Mixed-family graphs with N <= 200.
fn mixed_graphs(count: usize, seed: u64) -> Vec<(String, DirectedGraph)> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = r.random_range(2..=60usize);
            let s = r.random::<u64>();
            let spec = match i % 6 {
                0 => GenSpec::erdos_renyi(r.random_range(2..=200), r.random_range(0.0..0.2), s),
                1 => GenSpec::Ring { n },
                2 => GenSpec::CompleteBidirected { n: n.min(40) },
                3 => GenSpec::InwardStar { n },
                4 => GenSpec::Union { components: vec![GenSpec::erdos_renyi(n, 0.1, s), GenSpec::Ring { n: 7 }] },
                _ => GenSpec::erdos_renyi(n, 0.15, s).symmetrized(),
            };
            (spec.to_string(), generate(&spec).unwrap())
        })
        .collect()
}

/// Symmetrized ER graphs with 20 <= N <= 100.
fn symmetric_graphs() -> Vec<(String, DirectedGraph)> {
    (0..10u64)
        .map(|i| {
            let n = 20 + 8 * i as usize;
            let spec = GenSpec::erdos_renyi(n, 0.08, 100 + i).symmetrized();
            (spec.to_string(), generate(&spec).unwrap())
        })
        .collect()
}

const WALK_PROBS: [f64; 3] = [0.5, 0.85, 0.99];
const JUMP_WEIGHTS: [f64; 3] = [0.5, 1.0, 10.0];

fn ac1_row_stochastic() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut bad_entry = false;
    for (i, (_, g)) in mixed_graphs(20, 1).iter().enumerate() {
        let params = [
            ChainParams::Mhrw { walk_prob: WALK_PROBS[i % 3] },
            ChainParams::Rwwj { jump_weight: JUMP_WEIGHTS[(i / 3) % 3] },
        ];
        for p in params {
            let m = build_chain_matrix(g, p, 2000).map_err(|e| e.to_string())?;
            for row in m.rows() {
                worst = worst.max((row.iter().sum::<f64>() - 1.0).abs());
                bad_entry |= row.iter().any(|&x| !(0.0..=1.0).contains(&x));
            }
        }
    }
    check(worst < 1e-12 && !bad_entry, format!("max |row sum - 1| = {worst:.2e} over 40 matrices"))
}

fn stationary(m: &ChainMatrix) -> Result<Vec<f64>, String> {
    stationary_distribution(m, 1e-14, 2_000_000).map_err(|e| e.to_string())
}

fn ac2_mhrw_uniform() -> Outcome {
    let mut worst: f64 = 0.0;
    for (i, (_, g)) in symmetric_graphs().iter().enumerate() {
        let m = build_chain_matrix(g, ChainParams::Mhrw { walk_prob: WALK_PROBS[i % 3] }, 2000).map_err(|e| e.to_string())?;
        let pi = stationary(&m)?;
        let u = 1.0 / g.node_count() as f64;
        worst = worst.max(0.5 * pi.iter().map(|p| (p - u).abs()).sum::<f64>());
    }
    check(worst < 1e-6, format!("max TVD from uniform = {worst:.2e}"))
}

fn ac3_rwwj_degree_plus_alpha() -> Outcome {
    let mut worst: f64 = 0.0;
    for (i, (_, g)) in symmetric_graphs().iter().enumerate() {
        let alpha = JUMP_WEIGHTS[i % 3];
        let m = build_chain_matrix(g, ChainParams::Rwwj { jump_weight: alpha }, 2000).map_err(|e| e.to_string())?;
        let pi = stationary(&m)?;
        let w: Vec<f64> = (0..g.node_count()).map(|v| g.in_neighbors(v).len() as f64 + alpha).collect();
        let z: f64 = w.iter().sum();
        for (p, wi) in pi.iter().zip(&w) {
            let target = wi / z;
            worst = worst.max((p - target).abs() / target);
        }
    }
    check(worst < 1e-6, format!("max relative error vs (d+alpha)/Z = {worst:.2e}"))
}

fn ac4_simulation_matches_chain() -> Outcome {
    // A row estimated from n visits has expected L1 noise of roughly
    // sum_j sqrt(2 p_j / (pi n)), so with one 1e6-step walk the worst row
    // stays under 0.01 reliably only for N <= 4 (measured: ~98% of seeds at
    // N <= 4, ~90% at N = 5, ~60% at N = 6, rarely at N = 8).
    let specs = ["er:4:0.5:3", "sym(er:4:0.6:4)", "ring:2+complete:2", "star:4", "ring:3", "complete:3"];
    let mut worst: f64 = 0.0;
    for (k, text) in specs.iter().enumerate() {
        let g = generate(&text.parse().unwrap()).unwrap();
        let n = g.node_count();
        let d = WALK_PROBS[k % 3];
        let alpha = JUMP_WEIGHTS[k % 3];
        for (method, params) in [(Method::Mhrw, ChainParams::Mhrw { walk_prob: d }), (Method::Rwwj, ChainParams::Rwwj { jump_weight: alpha })] {
            let m = build_chain_matrix(&g, params, 2000).map_err(|e| e.to_string())?;
            let cfg = SamplerConfig::new(1_000_000, 77 + k as u64).with_walk_prob(d).with_jump_weight(alpha);
            let s = sample(&g, method, &cfg).map_err(|e| e.to_string())?;
            let mut counts = vec![0u64; n * n];
            for t in 1..s.len() {
                counts[s.steps[t].from * n + s.trace[t]] += 1;
            }
            for i in 0..n {
                let row = &counts[i * n..(i + 1) * n];
                let total: u64 = row.iter().sum();
                if total == 0 {
                    return Err(format!("{text} {method}: state {i} never visited"));
                }
                let l1: f64 = row.iter().zip(m.row(i)).map(|(&c, &p)| (c as f64 / total as f64 - p).abs()).sum();
                worst = worst.max(l1);
            }
        }
    }
    check(worst < 0.01, format!("max per-row L1 = {worst:.4} over {} graphs x 2 walks", specs.len()))
}

fn ac5_consistency() -> Outcome {
    let g = generate(&GenSpec::erdos_renyi(20, 0.3, 5).symmetrized()).unwrap();
    let truth = g.degree_distribution(Direction::In).unwrap();
    let mut lines = Vec::new();
    let mut ok = true;
    for method in [Method::Mhrw, Method::Rwwj] {
        let med = |budget: usize| -> Result<f64, String> {
            let tvds = (0..20u64)
                .map(|seed| {
                    let s = sample(&g, method, &SamplerConfig::new(budget, 1000 + seed)).map_err(|e| e.to_string())?;
                    let est = degree_distribution_estimate(&g, &s, Direction::In).map_err(|e| e.to_string())?;
                    Ok(tvd(&est, &truth))
                })
                .collect::<Result<Vec<_>, String>>()?;
            Ok(median(tvds))
        };
        let small = med(1_000)?;
        let large = med(1_000_000)?;
        ok &= large < 0.02 && large < small;
        lines.push(format!("{method}: {small:.4} -> {large:.4}"));
    }
    check(ok, format!("median TVD at 1e3 -> 1e6: {}", lines.join(", ")))
}

fn ac6_order() -> Outcome {
    let g = generate(&GenSpec::erdos_renyi(100, 0.05, 7)).unwrap();
    // capture-recapture from a random split needs the halves to be close to
    // independent; at 10 N the rejection-induced overlap is negligible
    let budget = 1_000;
    let mut cr = Vec::new();
    let mut cc = Vec::new();
    for rep in 0..200u64 {
        let m = sample(&g, Method::Mhrw, &SamplerConfig::new(budget, 5000 + rep)).map_err(|e| e.to_string())?;
        let w = sample(&g, Method::Rwwj, &SamplerConfig::new(budget, 9000 + rep)).map_err(|e| e.to_string())?;
        cr.push(mhrw_order_estimate(&m, rep).map_err(|e| e.to_string())?);
        cc.push(cross_collision_order(&m.distinct_nodes(), &w.trace).map_err(|e| e.to_string())?);
    }
    let (mcr, mcc) = (mean(&cr), mean(&cc));

    let mut degenerate_ok = true;
    let mut r = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let s1: BTreeSet<usize> = (0..r.random_range(1..40)).map(|_| r.random_range(0..60)).collect();
        let s2: BTreeSet<usize> = (0..r.random_range(1..40)).map(|_| r.random_range(0..60)).collect();
        let s2_list: Vec<usize> = s2.iter().copied().collect();
        match (capture_recapture_order(&s1, &s2), cross_collision_order(&s1, &s2_list)) {
            (Ok(a), Ok(b)) => degenerate_ok &= a == b,
            (Err(_), Err(_)) => {}
            _ => degenerate_ok = false,
        }
    }
    let band = |x: f64| (90.0..=110.0).contains(&x);
    check(
        band(mcr) && band(mcc) && degenerate_ok,
        format!("mean capture-recapture {mcr:.2}, mean cross-collision {mcc:.2} (N = 100, budget {budget}); duplicate-free case exact: {degenerate_ok}"),
    )
}

fn full_coverage_estimate(g: &DirectedGraph, method: Method) -> Result<f64, String> {
    let mut budget = 1_000;
    loop {
        let s = sample(g, method, &SamplerConfig::new(budget, 31).with_jump_weight(1.0)).map_err(|e| e.to_string())?;
        if s.collected_edges.len() == g.edge_count() {
            return mutual_proportion_estimate(g, &s).map_err(|e| e.to_string());
        }
        if budget > 10_000_000 {
            return Err(format!("{method} never covered all {} edges", g.edge_count()));
        }
        budget *= 4;
    }
}

fn ac7_mutual_extremes() -> Outcome {
    let mut ok = true;
    let mut seen = Vec::new();
    for n in [3, 4, 6] {
        let complete = generate(&GenSpec::CompleteBidirected { n }).unwrap();
        let star = generate(&GenSpec::InwardStar { n: n + 2 }).unwrap();
        for method in [Method::Mhrw, Method::Rwwj] {
            let a = full_coverage_estimate(&complete, method)?;
            let b = full_coverage_estimate(&star, method)?;
            ok &= a == 1.0 && b == 0.0;
            seen.push(format!("{method}/{n}: {a},{b}"));
        }
    }
    check(ok, format!("complete -> 1, inward star -> 0 ({})", seen.join(" ")))
}

/// Dense-array reference implementations, independent of the library's
/// union-support iteration.
fn reference_ks(p: &Distribution, q: &Distribution) -> f64 {
    let top = p.support_max().max(q.support_max());
    (0..=top)
        .map(|k| {
            let cp: f64 = (0..=k).map(|j| p.mass(j)).sum();
            let cq: f64 = (0..=k).map(|j| q.mass(j)).sum();
            (cp - cq).abs()
        })
        .fold(0.0, f64::max)
}

fn reference_kl(p: &Distribution, q: &Distribution, eps: f64) -> f64 {
    let top = p.support_max().max(q.support_max()) as usize;
    let in_support: Vec<bool> = (0..=top as u64).map(|k| p.mass(k) > 0.0 || q.mass(k) > 0.0).collect();
    let smoothed: Vec<f64> = (0..=top).map(|k| if in_support[k] { q.mass(k as u64) + eps } else { 0.0 }).collect();
    let z: f64 = smoothed.iter().sum();
    (0..=top)
        .filter(|&k| p.mass(k as u64) > 0.0)
        .map(|k| {
            let pk = p.mass(k as u64);
            pk * (pk.ln() - (smoothed[k] / z).ln())
        })
        .sum()
}

fn ac8_metric_oracles() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(8);
    let random_dist = |r: &mut ChaCha8Rng| {
        let len = r.random_range(1..10);
        Distribution::from_weights((0..len).map(|_| (r.random_range(0..15u64), r.random::<f64>() + 1e-3))).unwrap()
    };
    let mut worst_ks: f64 = 0.0;
    let mut worst_kl: f64 = 0.0;
    for _ in 0..100 {
        let p = random_dist(&mut r);
        let q = random_dist(&mut r);
        worst_ks = worst_ks.max((ks_d_statistic(&p, &q) - reference_ks(&p, &q)).abs());
        let kl = kl_divergence(&p, &q, 1e-10).map_err(|e| e.to_string())?;
        worst_kl = worst_kl.max((kl - reference_kl(&p, &q, 1e-10)).abs());
    }
    let single_run = rrmse(&[433_055.0], 456_626.0).map_err(|e| e.to_string())?;
    check(
        worst_ks < 1e-12 && worst_kl < 1e-12 && (single_run - 0.0516).abs() <= 1e-4,
        format!("max |KS - ref| {worst_ks:.1e}, max |KL - ref| {worst_kl:.1e}, rrmse(433055, 456626) = {single_run:.5}"),
    )
}

fn higgs() -> Option<DirectedGraph> {
    let path = std::env::var_os("OSNWALK_HIGGS")?;
    Some(load_edge_list_file(&path).expect("OSNWALK_HIGGS must point at a readable edge list"))
}

fn ac9_higgs_truth(g: &DirectedGraph) -> Outcome {
    let n = g.node_count();
    let sigma = g.mutual_proportion().map_err(|e| e.to_string())?;
    let ratio = g.ratio_average().map_err(|e| e.to_string())?;
    check(
        n == 456_626 && (sigma - 0.31).abs() <= 0.005 && (ratio.value - 5.1).abs() <= 0.1,
        format!("N = {n}, sigma = {sigma:.4}, ratio average = {:.3} ({} excluded)", ratio.value, ratio.excluded),
    )
}

fn ac10_higgs_directional(g: &DirectedGraph) -> Outcome {
    let n = g.node_count() as f64;
    let truth_out = g.degree_distribution(Direction::Out).map_err(|e| e.to_string())?;
    let sigma = g.mutual_proportion().map_err(|e| e.to_string())?;
    let ratio = g.ratio_average().map_err(|e| e.to_string())?.value;
    let seeds = 5u64;
    let (mut d_wins, mut ratio_wins, mut order_ok, mut under_ok) = (0, 0, true, true);
    for seed in 0..seeds {
        let cfg = SamplerConfig::new(62_072, 40 + seed);
        let m = sample(g, Method::Mhrw, &cfg).map_err(|e| e.to_string())?;
        let w = sample(g, Method::Rwwj, &SamplerConfig { rng_seed: 90 + seed, ..cfg }).map_err(|e| e.to_string())?;
        let dm = ks_d_statistic(&degree_distribution_estimate(g, &m, Direction::Out).map_err(|e| e.to_string())?, &truth_out);
        let dw = ks_d_statistic(&degree_distribution_estimate(g, &w, Direction::Out).map_err(|e| e.to_string())?, &truth_out);
        d_wins += usize::from(dm < dw);
        let order_m = mhrw_order_estimate(&m, seed).map_err(|e| e.to_string())?;
        let order_x = cross_collision_order(&m.distinct_nodes(), &w.trace).map_err(|e| e.to_string())?;
        order_ok &= ((order_m - n) / n).abs() < 0.15 && ((order_x - n) / n).abs() < 0.15;
        under_ok &= mutual_proportion_estimate(g, &m).map_err(|e| e.to_string())? < sigma
            && mutual_proportion_estimate(g, &w).map_err(|e| e.to_string())? < sigma;
        let err_m = (ratio_average_estimate(g, &m).map_err(|e| e.to_string())?.value - ratio).abs();
        let err_w = (ratio_average_estimate(g, &w).map_err(|e| e.to_string())?.value - ratio).abs();
        ratio_wins += usize::from(err_w < err_m);
    }
    let majority = (seeds as usize) / 2 + 1;
    check(
        d_wins == seeds as usize && order_ok && under_ok && ratio_wins >= majority,
        format!("MHRW D < RWwJ D in {d_wins}/{seeds}; orders within 15%: {order_ok}; sigma underestimated: {under_ok}; RWwJ ratio closer in {ratio_wins}/{seeds}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 chain rows sum to 1", ac1_row_stochastic),
        ("AC2 MHRW stationary law is uniform", ac2_mhrw_uniform),
        ("AC3 RWwJ stationary law is (d+alpha)/Z", ac3_rwwj_degree_plus_alpha),
        ("AC4 simulated walks match chain rows", ac4_simulation_matches_chain),
        ("AC5 degree estimates are consistent", ac5_consistency),
        ("AC6 graph order estimates", ac6_order),
        ("AC7 mutual proportion extremes", ac7_mutual_extremes),
        ("AC8 metric oracles", ac8_metric_oracles),
    ];
    let mut failed = 0;
    let mut report = |name: &str, outcome: Outcome, secs: f64| match outcome {
        Ok(detail) => println!("PASS  {name}: {detail} [{secs:.1}s]"),
        Err(detail) => {
            failed += 1;
            println!("FAIL  {name}: {detail} [{secs:.1}s]");
        }
    };
    for (name, f) in criteria {
        let t = Instant::now();
        let outcome = f();
        report(name, outcome, t.elapsed().as_secs_f64());
    }
    match higgs() {
        Some(g) => {
            let t = Instant::now();
            report("AC9 Higgs ground truth", ac9_higgs_truth(&g), t.elapsed().as_secs_f64());
            let t = Instant::now();
            report("AC10 Higgs directional findings", ac10_higgs_directional(&g), t.elapsed().as_secs_f64());
        }
        None => {
            println!("SKIP  AC9 Higgs ground truth: set OSNWALK_HIGGS to the edge list");
            println!("SKIP  AC10 Higgs directional findings: set OSNWALK_HIGGS to the edge list");
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
