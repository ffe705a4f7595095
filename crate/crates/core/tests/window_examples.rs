use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use slidewin_core::generate::{alpha_union, forest, gnp, three_paths};
use slidewin_core::oracles::{e_star_exact, evaluate, window_at, window_truth, Problem};
use slidewin_core::window::{
    mm_estimate_squared, mm_estimate_via_goodedges, vc_approx, vc_estimate_forest,
};
use slidewin_core::{AlgorithmKind, Edge, GreedyMatching, WindowAlgorithmSpec};

fn spec(kind: AlgorithmKind, alpha: usize, eps: f64, w: usize) -> WindowAlgorithmSpec {
    WindowAlgorithmSpec::new(kind, alpha, eps, w).unwrap()
}

fn greedy(s: &[Edge]) -> usize {
    let mut g = GreedyMatching::new();
    for e in s {
        g.insert(*e);
    }
    g.size()
}

#[test]
fn goodedges_on_random_forests() {
    // 500 query times over forests on 40 vertices.
    let s = spec(AlgorithmKind::MmViaGoodedges, 1, 0.1, 100);
    let upper = 2.0 * 3.0 * 1.1f64.powi(2) / 0.9f64.powi(2);
    let mut queries = 0;
    for seed in 0..13 {
        let stream = forest(40, 39, seed).unwrap();
        let out = mm_estimate_via_goodedges(&s, &stream).unwrap();
        for (i, v) in out.iter().enumerate() {
            let m = window_truth(&stream, 100, i + 1, Problem::Matching).unwrap() as f64;
            assert!(m <= *v && *v <= upper * m, "seed {seed} t {}", i + 1);
            queries += 1;
        }
    }
    assert!(queries >= 500);
}

#[test]
fn squared_bound_dominates() {
    let stream: Vec<Edge> = (0..30)
        .map(|i| Edge::new(2 * i + 1, 2 * i + 2).unwrap())
        .collect();
    for eps in [0.05f64, 0.25] {
        let w = 12;
        let good =
            mm_estimate_via_goodedges(&spec(AlgorithmKind::MmViaGoodedges, 1, eps, w), &stream)
                .unwrap();
        let sq = mm_estimate_squared(&spec(AlgorithmKind::MmSquared, 1, eps, w), &stream).unwrap();
        let slack = ((1.0 + eps) / (1.0 - eps)).powi(2);
        for t in 1..=stream.len() {
            let m = window_truth(&stream, w, t, Problem::Matching).unwrap() as f64;
            assert!(m <= sq[t - 1] && sq[t - 1] <= 2.0 * 9.0 * slack * m);
            assert!(good[t - 1] / m <= 2.0 * 9.0 * slack);
        }
    }
}

#[test]
fn goodedges_ratio_on_three_paths_stays_below_limit() {
    let tp = three_paths(20).unwrap();
    let eps: f64 = 0.05;
    let out =
        mm_estimate_via_goodedges(&spec(AlgorithmKind::MmViaGoodedges, 1, eps, 40), &tp.stream)
            .unwrap();
    let limit = 2.0 * 3.0 * ((1.0 + eps) / (1.0 - eps)).powi(2);
    let worst = (1..=tp.stream.len())
        .map(|t| out[t - 1] / window_truth(&tp.stream, 40, t, Problem::Matching).unwrap() as f64)
        .fold(0.0, f64::max);
    assert!((1.0..=limit).contains(&worst), "{worst}");
}

#[test]
fn forest_estimates_match_goodedges() {
    for seed in 0..10 {
        let stream = forest(60, 59, seed).unwrap();
        let a = vc_estimate_forest(&spec(AlgorithmKind::VcForest, 1, 0.1, 25), &stream).unwrap();
        let b =
            mm_estimate_via_goodedges(&spec(AlgorithmKind::MmViaGoodedges, 1, 0.1, 25), &stream)
                .unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn forest_star_and_matching() {
    let eps: f64 = 0.1;
    let slack = 4.0 * ((1.0 + eps) / (1.0 - eps)).powi(2);
    let star: Vec<Edge> = (2..=11).map(|v| Edge::new(1, v).unwrap()).collect();
    let out = vc_estimate_forest(&spec(AlgorithmKind::VcForest, 1, eps, 10), &star).unwrap();
    assert!(out.iter().all(|&v| (1.0..=slack).contains(&v)));
    let k = 8;
    let pm: Vec<Edge> = (0..k)
        .map(|i| Edge::new(2 * i + 1, 2 * i + 2).unwrap())
        .collect();
    let out = vc_estimate_forest(&spec(AlgorithmKind::VcForest, 1, eps, 8), &pm).unwrap();
    let last = *out.last().unwrap();
    assert!(k as f64 <= last && last <= slack * k as f64);
}

#[test]
fn vc_approx_random_graphs() {
    let eps: f64 = 0.1;
    let s = spec(AlgorithmKind::VcApprox, 1, eps, 120);
    let mut queries = 0;
    let mut seed = 0;
    while queries < 1_000 {
        let stream = gnp(50, 0.05, seed).unwrap();
        seed += 1;
        for (i, report) in vc_approx(&s, &stream).unwrap().iter().enumerate() {
            let window = window_at(&stream, 120, i + 1).unwrap();
            assert!(window
                .iter()
                .all(|e| report.vertices.contains(&e.u()) || report.vertices.contains(&e.v())));
            let vc = evaluate(window, Problem::VertexCover).unwrap() as f64;
            assert!(report.size as f64 <= 4.8 * vc);
            assert!(report.carryover_holds(eps));
            queries += 1;
        }
    }
}

#[test]
fn vc_approx_window_equal_to_bc() {
    let tp = three_paths(20).unwrap();
    let w = tp.stream.len() - tp.a_end;
    let reports = vc_approx(&spec(AlgorithmKind::VcApprox, 1, 0.1, w), &tp.stream).unwrap();
    let last = reports.last().unwrap();
    let vc = evaluate(&tp.stream[tp.a_end..], Problem::VertexCover).unwrap();
    assert_eq!(vc, 20);
    assert!(tp.stream[tp.a_end..]
        .iter()
        .all(|e| last.vertices.contains(&e.u()) || last.vertices.contains(&e.v())));
    assert!(last.size as f64 <= 4.8 * vc as f64);
}

#[test]
fn greedy_and_estar_sandwiches() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..200 {
        let alpha = rng.random_range(1..=3usize);
        let n = rng.random_range(10..=40usize);
        let len = rng.random_range(1..=(n - 1) * 3 / 4);
        let stream = alpha_union(n, alpha, len, rng.random()).unwrap();
        let m = evaluate(&stream, Problem::Matching).unwrap();
        let g = greedy(&stream);
        assert!(g <= m && m <= 2 * g);
        let star = e_star_exact(&stream, alpha).unwrap();
        assert!(m <= star && star <= (alpha + 2) * m, "m {m} E* {star}");

        let i = rng.random_range(0..=stream.len());
        let j = rng.random_range(i..=stream.len());
        let (ab, bc, abc) = (greedy(&stream[..j]), greedy(&stream[i..]), greedy(&stream));
        assert!(ab + bc >= abc);
    }
}
