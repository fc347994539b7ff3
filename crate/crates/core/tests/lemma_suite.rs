use std::f64::consts::PI;

use sepsearch_core::lemma::*;
use sepsearch_core::phase_solver::{solve_phi, OmegaParam};

#[test]
fn binomial_mean_at_every_n() {
    for n in 1..=4096 {
        let v = weighted_sum::<f64>(n, |x| x).unwrap();
        assert!((v - 0.5).abs() < 1e-14, "n={n}");
    }
}

#[test]
fn cot_lemma_for_three_r() {
    let ns = [16, 64, 256, 1024, 4096];
    for r in [PI / 2.0, PI, 1.5 * PI] {
        let rows = cot_lemma_sequence(r, &ns).unwrap();
        assert!(rows.windows(2).all(|w| w[1].deviation < w[0].deviation), "r={r}");
        assert!(rows.last().unwrap().deviation < 1e-2);
    }
}

#[test]
fn sandwich_bounds_over_grid() {
    for q in -12i32..=12 {
        for n in [1usize, 2, 5, 9, 13, 20, 49, 50, 64, 65, 100, 257, 1000, 4096] {
            if n <= 4 * q.unsigned_abs() as usize {
                assert!(moment_report::<f64>(n, q).is_err());
                continue;
            }
            let r = moment_report::<f64>(n, q).unwrap();
            assert!(r.bounds_hold(), "n={n} q={q}: {} <= {} <= {}", r.lower, r.f, r.upper);
        }
    }
}

#[test]
fn moments_approach_power_of_two() {
    for q in -3..=3 {
        let r = moment_report::<f64>(4096, q).unwrap();
        assert!(r.relative_limit_deviation() < 5e-3, "q={q}");
    }
}

#[test]
fn stirling_ratio_converges() {
    let r = stirling_check::<f64>(&[1, 10, 100, 1000, 10000]).unwrap();
    assert!(r.monotone);
    assert!((r.rows[0].ratio - 1.0844).abs() < 1e-4);
    assert!(r.rows[2].deviation < 1e-3 && r.final_deviation < 1e-3);
}

#[test]
fn phase_solution_consistent_with_lemma_limit() {
    // n φ(ω)/2 → ω: the same binomial average drives both
    let om = OmegaParam::new(2.0 * PI / 3.0).unwrap();
    let dev: Vec<f64> = [10, 20, 40, 64]
        .iter()
        .map(|&n| (n as f64 * solve_phi(n, om).unwrap().phi / 2.0 - om.value).abs())
        .collect();
    assert!(dev.windows(2).all(|w| w[1] < w[0]), "{dev:?}");
}
