mod common;

use rand::Rng;
use terminal_pairing::complete::realize_edge_bounded;
use terminal_pairing::maxedp::{approx_maxedp, approx_maxedp_with_cap};
use terminal_pairing::oracle::{brute_force_maxedp, verify_realization};
use terminal_pairing::{BaseSpec, RealizeOptions};

#[test]
fn edge_bound_beyond_oracle_range() {
    for n in 7..=14usize {
        for seed in 0..200u64 {
            let mut rng = common::rng(seed * 13 + n as u64);
            let m = rng.gen_range(n..=2 * n - 5);
            let d = common::random_bounded(n, m, n - 1, &mut rng);
            let r = realize_edge_bounded(&d, n).unwrap_or_else(|e| panic!("n={n} seed={seed}: {e}"));
            assert!(verify_realization(&d, &r).ok(), "n={n} seed={seed}");
        }
    }
}

#[test]
fn maxedp_against_oracle_optimum() {
    // the default cap is non-positive below 18, so also try cap 2 (a realizable
    // 2-matching in K_n for n >= 5) and record the ratio to the optimum
    let mut worst = 1.0f64;
    for seed in 0..60u64 {
        let mut rng = common::rng(seed + 700);
        let n = rng.gen_range(5..=7usize);
        let d = common::random_bounded(n, rng.gen_range(1..=8), n - 1, &mut rng);
        let opt = brute_force_maxedp(&d, &BaseSpec::Complete { n }).unwrap();
        let default = approx_maxedp(&d, n).unwrap();
        assert!(default.warning.is_some());
        assert_eq!(default.solution.size(), 0);
        if let Ok(out) = approx_maxedp_with_cap(&d, n, 2, &RealizeOptions::default()) {
            assert!(verify_realization(&out.solution.subgraph(&d), &out.realization).ok());
            assert!(out.solution.size() <= opt);
            if opt > 0 {
                worst = worst.min(out.solution.size() as f64 / opt as f64);
            }
        }
    }
    println!("worst kept/optimum ratio with cap 2: {worst:.3}");
}
