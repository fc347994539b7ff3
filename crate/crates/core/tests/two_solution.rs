//! Two marked items: no published values, so these are property checks.

use std::f64::consts::PI;

use sepsearch_core::phase_solver::OmegaParam;
use sepsearch_core::reduced_sim::{build_step_two, run_two, run_two_with_layout, CircuitSpec, TwoBlockLayout};

fn omega() -> OmegaParam<f64> {
    OmegaParam::new(2.0 * PI / 3.0).unwrap()
}

#[test]
fn success_exceeds_085_at_n20() {
    for d in [2, 4, 10] {
        let row = run_two(&CircuitSpec::two(20, d, omega()).unwrap()).unwrap();
        assert!(row.success_probability > 0.85, "d={d}: {}", row.success_probability);
    }
}

#[test]
fn success_increases_with_n_at_fixed_d() {
    for d in [2, 4, 10] {
        let probs: Vec<f64> = [12, 16, 20, 24]
            .iter()
            .map(|&n| run_two(&CircuitSpec::two(n, d, omega()).unwrap()).unwrap().success_probability)
            .collect();
        assert!(probs.windows(2).all(|w| w[1] > w[0]), "d={d}: {probs:?}");
    }
}

#[test]
fn operator_is_unitary_and_norm_is_kept() {
    let spec = CircuitSpec::two(16, 5, omega()).unwrap();
    assert!(build_step_two(&spec).unwrap().unitarity_residual() < 1e-13);
    let out = run_two_with_layout(&spec, TwoBlockLayout::DifferenceFirst).unwrap();
    assert!(out.norm_drift < 1e-10);
    let total = out.row.success_probability + out.row.error_rate;
    assert!((total - 1.0).abs() < 1e-10);
}

#[test]
fn rejects_invalid_distance_and_omega() {
    assert!(CircuitSpec::two(8, 0, omega()).is_err());
    assert!(CircuitSpec::two(8, 9, omega()).is_err());
    assert!(CircuitSpec::two(8, 2, OmegaParam::new(PI).unwrap()).is_err());
}
