//! Subcommand implementations. Each builds its full output in memory and
//! writes it once, so a failure never leaves a truncated file behind.

use serde::Serialize;
use serde_json::{json, Value};
use sepsearch_core::aqc::{
    adiabatic_evolve, build_family, check_operator_identities, endpoint_report, gap_scan, grover_checkpoint_times,
    EvolveOptions, Schedule,
};
use sepsearch_core::lemma::{cot_lemma_sequence, moment_report, stirling_check, weighted_sum};
use sepsearch_core::phase_solver::{circuit_iterations, solve_phi, OmegaParam};
use sepsearch_core::reduced_sim::{run_single, run_two, table_sweep, CircuitSpec, SweepColumn};
use sepsearch_core::spectral::{secular_residuals, spectral_report, two_mode_prediction, SECULAR_TOLERANCE};
use sepsearch_core::statevector::{hamming, phi_for_marked, run_search_full_with_phi, OracleRealisation, SimConfig};
use sepsearch_core::Error;

use crate::args::*;
use crate::cost::{compare, CostModel};
use crate::omega::{parse_angle, parse_omega, ParsedOmega};
use crate::output::{csv_text, emit, envelope, machine, to_value, two_sig};
use crate::CliError;

pub const TABLE_HEADER: [&str; 7] = [
    "n",
    "omega_label",
    "algorithm",
    "iterations",
    "success_probability",
    "error_rate",
    "error",
];

/// Column order of the published table; the last column is ω = π.
pub const DEFAULT_OMEGAS: [&str; 5] = ["pi/2", "2pi/3", "3pi/4", "4pi/5", "pi"];

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let out = cli.output.as_deref();
    let name = cli.command.name();
    match &cli.command {
        Command::Table(a) => table(name, a, out),
        Command::Phi(a) => phi(name, a, out),
        Command::Simulate(a) => simulate(name, a, out),
        Command::Spectrum(a) => spectrum(name, a, out),
        Command::Lemma(a) => lemma(name, a, out),
        Command::Aqc(a) => aqc(name, a, out),
        Command::Evolve(a) => evolve(name, a, out),
        Command::Cost(a) => cost(name, a, out),
    }
}

fn parse_all(texts: &[String]) -> Result<Vec<ParsedOmega>, CliError> {
    texts.iter().map(|t| parse_omega(t)).collect()
}

fn fail_if(failed: usize) -> Result<(), CliError> {
    if failed > 0 {
        Err(CliError::PartialFailure(failed))
    } else {
        Ok(())
    }
}

#[derive(Debug, Serialize)]
struct TableLine {
    n: usize,
    omega_label: Option<String>,
    algorithm: &'static str,
    iterations: Option<u64>,
    success_probability: Option<f64>,
    error_rate: Option<f64>,
    error: Option<String>,
}

fn table(name: &str, a: &TableArgs, out: Option<&str>) -> Result<(), CliError> {
    let explicit = !a.omega.is_empty();
    let omegas = if a.grover_only {
        Vec::new()
    } else if explicit {
        parse_all(&a.omega)?
    } else {
        parse_all(&DEFAULT_OMEGAS.map(String::from))?
    };
    let params: Vec<OmegaParam<f64>> = omegas.iter().map(|o| o.param).collect();
    let keep_grover = a.grover_only || !explicit || a.with_grover;
    let lines: Vec<TableLine> = table_sweep(&a.n, &params)
        .into_iter()
        .filter(|c| keep_grover || c.column != SweepColumn::Grover)
        .map(|cell| {
            let (label, algorithm) = match cell.column {
                SweepColumn::Grover => (None, "grover"),
                SweepColumn::Omega(i) => (Some(omegas[i].label.clone()), "separable"),
            };
            let mut line = TableLine {
                n: cell.n,
                omega_label: label,
                algorithm,
                iterations: None,
                success_probability: None,
                error_rate: None,
                error: None,
            };
            match cell.result {
                Ok(row) => {
                    line.iterations = Some(row.iterations);
                    line.success_probability = Some(row.display_success());
                    line.error_rate = Some(row.error_rate);
                }
                Err(e) => line.error = Some(e.to_string()),
            }
            line
        })
        .collect();
    let failed = lines.iter().filter(|l| l.error.is_some()).count();
    let text = match a.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = lines
                .iter()
                .map(|l| {
                    let success = match (a.paper_format, l.success_probability) {
                        (false, Some(p)) => machine(p),
                        _ => String::new(),
                    };
                    let err = l.error_rate.map_or(String::new(), |e| if a.paper_format { two_sig(e) } else { machine(e) });
                    vec![
                        l.n.to_string(),
                        l.omega_label.clone().unwrap_or_default(),
                        l.algorithm.to_string(),
                        l.iterations.map_or(String::new(), |i| i.to_string()),
                        success,
                        err,
                        l.error.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            csv_text(&TABLE_HEADER, &rows)?
        }
        Format::Json => {
            let mut lines = lines;
            if a.paper_format {
                for l in &mut lines {
                    l.success_probability = None;
                    l.error_rate = l.error_rate.map(|e| two_sig(e).parse().expect("formatted float"));
                }
            }
            envelope(name, a, "rows", to_value(&lines)?)?
        }
    };
    emit(&text, out)?;
    fail_if(failed)
}

/// Grid `ω_k = π(2k+1−S)/S`; for odd `S` the midpoint is exactly zero and
/// is skipped.
pub fn phi_grid(samples: usize) -> Vec<f64> {
    let s = samples as i64;
    (0..s)
        .map(|k| 2 * k + 1 - s)
        .filter(|&m| m != 0)
        .map(|m| std::f64::consts::PI * m as f64 / s as f64)
        .collect()
}

fn phi(name: &str, a: &PhiArgs, out: Option<&str>) -> Result<(), CliError> {
    if a.samples < 2 {
        return Err(CliError::Usage("--samples must be at least 2".into()));
    }
    if a.n == 0 {
        return Err(Error::Domain("qubit count must be at least 1".into()).into());
    }
    let rows: Vec<(f64, Result<f64, Error>)> = phi_grid(a.samples)
        .into_iter()
        .map(|w| (w, OmegaParam::new(w).and_then(|o| solve_phi(a.n, o)).map(|s| s.phi)))
        .collect();
    let failed = rows.iter().filter(|r| r.1.is_err()).count();
    let text = match a.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|(w, r)| match r {
                    Ok(p) => vec![machine(*w), machine(*p), String::new()],
                    Err(e) => vec![machine(*w), String::new(), e.to_string()],
                })
                .collect();
            csv_text(&["omega", "phi", "error"], &rows)?
        }
        Format::Json => {
            let body: Vec<Value> = rows
                .iter()
                .map(|(w, r)| match r {
                    Ok(p) => json!({ "omega": w, "phi": p }),
                    Err(e) => json!({ "omega": w, "error": e.to_string() }),
                })
                .collect();
            envelope(name, a, "rows", Value::Array(body))?
        }
    };
    emit(&text, out)?;
    fail_if(failed)
}

#[derive(Debug, Serialize)]
pub struct SimulateRow {
    pub n: usize,
    pub omega_label: String,
    pub engine: Engine,
    pub solutions: u8,
    pub d: Option<usize>,
    pub phi: f64,
    pub iterations: u64,
    pub success_probability: f64,
    /// Full engine: `1 − success`, so only meaningful well above 1e-16.
    pub error_rate: f64,
}

fn check_index(j: u64, n: usize, flag: &str) -> Result<(), CliError> {
    if n < 64 && j >> n != 0 {
        return Err(Error::Domain(format!("{flag} = {j} does not fit in {n} qubits")).into());
    }
    Ok(())
}

pub fn simulate_row(a: &SimulateArgs) -> Result<SimulateRow, CliError> {
    let om = parse_omega(&a.omega)?;
    check_index(a.j, a.n, "--j")?;
    let marked = match (a.solutions, a.j2) {
        (1, None) => vec![a.j],
        (1, Some(_)) => return Err(CliError::Usage("--j2 needs --solutions 2".into())),
        (_, None) => return Err(CliError::Usage("--solutions 2 needs --j2".into())),
        (_, Some(j2)) => {
            check_index(j2, a.n, "--j2")?;
            if j2 == a.j {
                return Err(Error::Domain("the two marked items must differ".into()).into());
            }
            vec![a.j, j2]
        }
    };
    let d = (marked.len() == 2).then(|| hamming(marked[0], marked[1]));
    let mut spec = match d {
        None => CircuitSpec::single(a.n, om.param)?,
        Some(d) => CircuitSpec::two(a.n, d, om.param)?,
    };
    if let Some(it) = a.iterations {
        spec = spec.with_iterations(it);
    }
    let (phi, success, error_rate) = match a.engine {
        Engine::Reduced => {
            let row = if d.is_some() { run_two(&spec)? } else { run_single(&spec)? };
            (spec.phi, row.success_probability, row.error_rate)
        }
        Engine::Full => {
            let phi = phi_for_marked(a.n, om.param, &marked)?;
            let realisation = match a.oracle {
                Realisation::Direct => OracleRealisation::Direct,
                Realisation::Kickback => OracleRealisation::Kickback,
            };
            let config = SimConfig {
                max_qubits: a.max_qubits,
            };
            let p = run_search_full_with_phi(a.n, om.param, phi, &marked, spec.iterations, realisation, &config)?;
            (phi, p, 1.0 - p)
        }
    };
    Ok(SimulateRow {
        n: a.n,
        omega_label: om.label,
        engine: a.engine,
        solutions: a.solutions,
        d,
        phi,
        iterations: spec.iterations,
        success_probability: success,
        error_rate,
    })
}

fn simulate(name: &str, a: &SimulateArgs, out: Option<&str>) -> Result<(), CliError> {
    let r = simulate_row(a)?;
    let text = match a.format {
        Format::Csv => {
            let engine = match r.engine {
                Engine::Reduced => "reduced",
                Engine::Full => "full",
            };
            let row = vec![
                r.n.to_string(),
                r.omega_label.clone(),
                engine.into(),
                r.solutions.to_string(),
                r.d.map_or(String::new(), |d| d.to_string()),
                machine(r.phi),
                r.iterations.to_string(),
                machine(r.success_probability),
                machine(r.error_rate),
            ];
            let header = [
                "n",
                "omega_label",
                "engine",
                "solutions",
                "d",
                "phi",
                "iterations",
                "success_probability",
                "error_rate",
            ];
            csv_text(&header, &[row])?
        }
        Format::Json => envelope(name, a, "rows", to_value(&[&r])?)?,
    };
    emit(&text, out)
}

fn spectrum(name: &str, a: &SpectrumArgs, out: Option<&str>) -> Result<(), CliError> {
    let om = parse_omega(&a.omega)?;
    let report = spectral_report(a.n, om.param)?;
    let mut body = json!({
        "spectral": to_value(&report)?,
        "gamma_plus": report.gamma_plus().gamma,
        "gamma_minus": report.gamma_minus().gamma,
        "residual_mass_x": report.residual_mass_x(),
        "residual_mass_z": report.residual_mass_z(),
    });
    if let Ok(iters) = circuit_iterations(a.n, om.param.value, 1) {
        body["two_mode"] = to_value(&two_mode_prediction(&report, iters))?;
    }
    if a.secular {
        let s = secular_residuals(&report)?;
        body["secular_passes"] = json!(s.max_residual < SECULAR_TOLERANCE);
        body["secular"] = to_value(&s)?;
    }
    emit(&envelope(name, a, "report", body)?, out)
}

fn lemma(name: &str, a: &LemmaArgs, out: Option<&str>) -> Result<(), CliError> {
    let mean: Vec<Value> = a
        .n
        .iter()
        .map(|&n| {
            let v = weighted_sum::<f64>(n, |x| x)?;
            Ok(json!({ "n": n, "value": v, "deviation": (v - 0.5).abs() }))
        })
        .collect::<Result<_, CliError>>()?;
    let cot: Vec<Value> = a
        .r
        .iter()
        .map(|label| {
            let r = parse_angle(label)?;
            let rows = cot_lemma_sequence(r.value, &a.n)?;
            Ok(json!({ "r_label": label, "r": r.value, "rows": to_value(&rows)? }))
        })
        .collect::<Result<_, CliError>>()?;
    let moments: Vec<Value> = a
        .q
        .iter()
        .map(|&q| {
            let m = moment_report::<f64>(a.moment_n, q)?;
            let mut v = to_value(&m)?;
            v["bounds_hold"] = json!(m.bounds_hold());
            v["limit_deviation"] = json!(m.limit_deviation());
            v["relative_limit_deviation"] = json!(m.relative_limit_deviation());
            Ok(v)
        })
        .collect::<Result<_, CliError>>()?;
    let stirling = stirling_check::<f64>(&a.stirling_n)?;
    let body = json!({
        "binomial_mean": mean,
        "cot_lemma": cot,
        "moments": moments,
        "stirling": to_value(&stirling)?,
    });
    emit(&envelope(name, a, "report", body)?, out)
}

fn aqc(name: &str, a: &AqcArgs, out: Option<&str>) -> Result<(), CliError> {
    let om = parse_omega(&a.omega)?;
    let rows: Vec<Value> = a
        .n
        .iter()
        .map(|&n| {
            let family = build_family::<f64>(a.kind.into(), n)?;
            let endpoints = endpoint_report(&family)?;
            let mut scan = gap_scan(&family, a.resolution)?;
            if !a.samples {
                scan.samples.clear();
            }
            let identities = check_operator_identities(n, om.param)?;
            Ok(json!({
                "n": n,
                "endpoints": to_value(&endpoints)?,
                "gap_scan": to_value(&scan)?,
                "identities": to_value(&identities)?,
            }))
        })
        .collect::<Result<_, CliError>>()?;
    emit(&envelope(name, a, "report", Value::Array(rows))?, out)
}

fn evolve(name: &str, a: &EvolveArgs, out: Option<&str>) -> Result<(), CliError> {
    let family = build_family::<f64>(a.kind.into(), a.n)?;
    let schedule = match a.schedule {
        ScheduleArg::Linear => Schedule::Linear,
        ScheduleArg::RolandOptimal => Schedule::RolandOptimal,
    };
    let mut times = a.checkpoints.clone();
    if a.grover_checkpoints {
        times.extend(grover_checkpoint_times::<f64>(a.n, a.time).into_iter().map(|(_, t)| t));
    }
    let options = EvolveOptions {
        max_step_norm: a.max_step_norm,
    };
    let trace = adiabatic_evolve(&family, a.time, schedule, &times, options)?;
    emit(&envelope(name, a, "report", to_value(&trace)?)?, out)
}

fn cost(name: &str, a: &CostArgs, out: Option<&str>) -> Result<(), CliError> {
    let om = parse_omega(&a.omega)?;
    let model = CostModel {
        t_single: a.t_single,
        t_multi: a.t_multi.unwrap_or(a.n as f64 * a.t_single),
        t_oracle: a.t_oracle,
    };
    let r = compare(a.n, &om, model)?;
    let text = match a.format {
        Format::Csv => {
            let header = [
                "n",
                "omega_label",
                "grover_iterations",
                "circuit_iterations",
                "t_grover",
                "t_new_serial",
                "t_new_parallel",
                "ratio_serial",
                "ratio_parallel",
                "break_even_t_multi_serial",
                "break_even_t_multi_parallel",
            ];
            let row = vec![
                r.n.to_string(),
                r.omega_label.clone(),
                r.grover_iterations.to_string(),
                r.circuit_iterations.to_string(),
                machine(r.t_grover),
                machine(r.t_new_serial),
                machine(r.t_new_parallel),
                machine(r.ratio_serial),
                machine(r.ratio_parallel),
                machine(r.break_even_t_multi_serial),
                machine(r.break_even_t_multi_parallel),
            ];
            csv_text(&header, &[row])?
        }
        Format::Json => envelope(name, a, "report", json!({ "model": to_value(&model)?, "comparison": to_value(&r)? }))?,
    };
    emit(&text, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_grid_is_symmetric_and_skips_zero() {
        let g = phi_grid(8);
        assert_eq!(g.len(), 8);
        assert!(g.iter().zip(g.iter().rev()).all(|(a, b)| a == &-b));
        let g = phi_grid(7);
        assert_eq!(g.len(), 6);
        assert!(g.iter().all(|&w| w != 0.0 && w.abs() < std::f64::consts::PI));
    }
}
