//! Wall-clock comparison of the two circuits under a per-gate cost model.

use serde::Serialize;
use sepsearch_core::phase_solver::{circuit_iterations, grover_iterations};
use sepsearch_core::Error;

use crate::omega::ParsedOmega;
use crate::CliError;

/// Seconds per operation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostModel {
    pub t_single: f64,
    /// The multi-qubit reflection about the uniform state at this `n`.
    pub t_multi: f64,
    pub t_oracle: f64,
}

impl CostModel {
    pub fn validate(&self) -> Result<(), CliError> {
        for (name, v) in [("t_single", self.t_single), ("t_multi", self.t_multi), ("t_oracle", self.t_oracle)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("{name} must be a positive time, got {v}")).into());
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CostReport {
    pub n: usize,
    pub omega_label: String,
    pub grover_iterations: u64,
    pub circuit_iterations: u64,
    pub t_grover: f64,
    /// Rotations applied one after another.
    pub t_new_serial: f64,
    /// All `n` rotations in one layer.
    pub t_new_parallel: f64,
    pub ratio_serial: f64,
    pub ratio_parallel: f64,
    /// `t_multi` at which Grover's circuit would take as long as the serial one.
    pub break_even_t_multi_serial: f64,
    pub break_even_t_multi_parallel: f64,
}

pub fn compare(n: usize, omega: &ParsedOmega, model: CostModel) -> Result<CostReport, CliError> {
    model.validate()?;
    if n == 0 {
        return Err(Error::Domain("qubit count must be at least 1".into()).into());
    }
    let big_n = grover_iterations(n);
    let big_n2 = circuit_iterations(n, omega.param.value, 1)?;
    let t_grover = big_n as f64 * (model.t_multi + model.t_oracle);
    let t_new_serial = big_n2 as f64 * (n as f64 * model.t_single + model.t_oracle);
    let t_new_parallel = big_n2 as f64 * (model.t_single + model.t_oracle);
    let even = |t_new: f64| t_new / big_n as f64 - model.t_oracle;
    Ok(CostReport {
        n,
        omega_label: omega.label.clone(),
        grover_iterations: big_n,
        circuit_iterations: big_n2,
        t_grover,
        t_new_serial,
        t_new_parallel,
        ratio_serial: t_new_serial / t_grover,
        ratio_parallel: t_new_parallel / t_grover,
        break_even_t_multi_serial: even(t_new_serial),
        break_even_t_multi_parallel: even(t_new_parallel),
    })
}
