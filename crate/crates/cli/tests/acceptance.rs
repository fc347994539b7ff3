//! One PASS/FAIL line per acceptance criterion.
//!
//! A criterion listed in `KNOWN_FAILURES` may fail, but only with exactly the
//! recorded detail; any other failure makes the target exit non-zero.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepsearch_core::aqc::*;
use sepsearch_core::lemma::{cot_lemma_sequence, moment_report, weighted_sum};
use sepsearch_core::phase_solver::{circuit_iterations, grover_iterations, OmegaParam};
use sepsearch_core::reduced_sim::{run_single, run_two, table_sweep, CircuitSpec, SweepColumn};
use sepsearch_core::spectral::{gamma_asymptotics, overlap_asymptotics, spectral_report, verify_secular};
use sepsearch_core::statevector::{
    hamming, kickback_ancilla, phi_for_marked, run_search_full, DiffusionVariant, FullState, OracleRealisation,
    OracleVariant,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

/// The published n=40 Grover error rate is 9.8e-14; cos²((2N+1)θ) is
/// 9.854e-14, which rounds to 9.9e-14.
const GROVER_40: &str = "n=40 grover: got 9.9e-14, published 9.8e-14";
const KNOWN_FAILURES: [(usize, &str); 2] = [
    (2, GROVER_40),
    (8, "paper-format diff: 1 line differs (40,,grover,823549,,9.9e-14, vs 40,,grover,823549,,9.8e-14,)"),
];

const NS: [usize; 4] = [10, 20, 30, 40];
const LABELS: [&str; 5] = ["pi/2", "2pi/3", "3pi/4", "4pi/5", "pi"];
const GROVER_N: [u64; 4] = [25, 804, 25735, 823549];
const GROVER_ERR: [&str; 4] = ["5.4e-4", "2.4e-7", "6.8e-10", "9.8e-14"];
const OMEGA_N: [[u64; 5]; 4] = [
    [36, 29, 27, 26, 25],
    [1137, 929, 871, 846, 804],
    [36396, 29717, 27856, 27060, 25736],
    [1164675, 950953, 891404, 865931, 823550],
];
const OMEGA_ERR: [[&str; 5]; 4] = [
    ["2.2e-1", "2.5e-1", "2.7e-1", "2.9e-1", "6.8e-1"],
    ["8.5e-2", "9.7e-2", "1.1e-1", "1.1e-1", "6.2e-1"],
    ["5.0e-2", "5.8e-2", "6.3e-2", "6.8e-2", "6.1e-1"],
    ["3.5e-2", "4.1e-2", "4.5e-2", "4.9e-2", "6.0e-1"],
];

fn omegas() -> [f64; 5] {
    [PI / 2.0, 2.0 * PI / 3.0, 3.0 * PI / 4.0, 4.0 * PI / 5.0, PI]
}

fn om(w: f64) -> OmegaParam<f64> {
    OmegaParam::new(w).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn iteration_counts() -> Check {
    for (i, &n) in NS.iter().enumerate() {
        ensure(grover_iterations(n) == GROVER_N[i], || format!("grover n={n}"))?;
        for (k, &w) in omegas().iter().enumerate() {
            let got = circuit_iterations(n, w, 1).map_err(|e| e.to_string())?;
            ensure(got == OMEGA_N[i][k], || format!("n={n} {}: {got} != {}", LABELS[k], OMEGA_N[i][k]))?;
        }
    }
    Ok("24/24 iteration counts exact".into())
}

fn error_rates() -> Check {
    let params: Vec<_> = omegas().iter().map(|&w| om(w)).collect();
    let mut mismatches = Vec::new();
    for cell in table_sweep(&NS, &params) {
        let i = NS.iter().position(|&n| n == cell.n).unwrap();
        let row = cell.result.map_err(|e| e.to_string())?;
        let got = format!("{:.1e}", row.error_rate);
        let (want, name) = match cell.column {
            SweepColumn::Grover => (GROVER_ERR[i], "grover".to_string()),
            SweepColumn::Omega(k) => (OMEGA_ERR[i][k], LABELS[k].to_string()),
        };
        if got != want {
            mismatches.push(format!("n={} {name}: got {got}, published {want}", cell.n));
        }
    }
    ensure(mismatches.is_empty(), || mismatches.join("; "))?;
    Ok("24/24 error rates to 2 significant figures".into())
}

fn cross_engine() -> Check {
    let omegas = [
        OmegaParam::from_rational(1, 4).unwrap(),
        OmegaParam::from_rational(1, 3).unwrap(),
        om(1.0),
    ];
    let mut worst = 0.0f64;
    for seed in 0..3u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for n in 1..=12 {
            for o in omegas {
                let spec = CircuitSpec::single(n, o).map_err(|e| e.to_string())?;
                let j = rng.gen_range(0..1u64 << n);
                let full = run_search_full(n, o, &[j], spec.iterations, OracleRealisation::Direct)
                    .map_err(|e| e.to_string())?;
                let red = run_single(&spec).map_err(|e| e.to_string())?.success_probability;
                worst = worst.max((full - red).abs());
            }
        }
    }
    ensure(worst < 1e-10, || format!("max |p_full − p_reduced| = {worst:e}"))?;
    let mut fid_dev = 0.0f64;
    for n in [4, 8, 12] {
        for o in &omegas[..2] {
            let (c, d) = o.rational.unwrap();
            let marked = [(1u64 << n) / 3];
            let phi = phi_for_marked(n, *o, &marked).map_err(|e| e.to_string())?;
            let anc = kickback_ancilla::<f64>(c, d as usize).map_err(|e| e.to_string())?;
            let mut direct = FullState::<f64>::init_uniform(n).unwrap();
            let mut kicked = FullState::<f64>::init_uniform(n).unwrap().with_ancilla(&anc).unwrap();
            for _ in 0..6 {
                direct.apply_oracle(&marked, OracleVariant::PhaseDirect(o.value)).unwrap();
                direct.apply_diffusion(DiffusionVariant::Separable(phi));
                kicked
                    .apply_oracle(&marked, OracleVariant::PhaseKickback { numer: c, denom: d as usize })
                    .unwrap();
                kicked.apply_diffusion(DiffusionVariant::Separable(phi));
            }
            fid_dev = fid_dev.max((kicked.fidelity(&direct.with_ancilla(&anc).unwrap()) - 1.0).abs());
        }
    }
    ensure(fid_dev < 1e-12, || format!("kickback fidelity deviation {fid_dev:e}"))?;
    Ok(format!("max engine gap {worst:.1e}, kickback fidelity deviation {fid_dev:.1e}"))
}

fn spectral() -> Check {
    let mut worst = 0.0f64;
    for w in [PI / 2.0, 2.0 * PI / 3.0, 3.0 * PI / 4.0, 4.0 * PI / 5.0, PI, 1.0] {
        for n in 1..=24 {
            let r = spectral_report(n, om(w)).map_err(|e| e.to_string())?;
            let s = verify_secular(&r).map_err(|e| format!("n={n} w={w}: {e}"))?;
            worst = worst.max(s.max_residual);
        }
    }
    ensure(worst < 1e-8, || format!("secular residual {worst:e}"))?;
    let mut overlaps = Vec::new();
    for w in [PI / 2.0, 2.0 * PI / 3.0] {
        let rows = gamma_asymptotics(om(w), &NS).map_err(|e| e.to_string())?;
        let dev: Vec<f64> = rows.iter().map(|r| r.deviation).collect();
        ensure(strictly_decreasing(&dev), || format!("gamma deviation at w={w}: {dev:?}"))?;
        let o = &overlap_asymptotics(om(w), &[40]).map_err(|e| e.to_string())?[0];
        for v in [o.inv_sq_plus, o.inv_sq_minus] {
            ensure((1.8..=2.3).contains(&v), || format!("overlap {v} at w={w}"))?;
            overlaps.push(v);
        }
    }
    Ok(format!("secular max {worst:.1e}, gamma deviations decreasing, n=40 overlaps {overlaps:.3?}"))
}

fn lemma() -> Check {
    for n in 1..=4096 {
        let v = weighted_sum::<f64>(n, |x| x).map_err(|e| e.to_string())?;
        ensure((v - 0.5).abs() < 1e-14, || format!("binomial mean at n={n}: {v}"))?;
    }
    let ns = [16, 64, 256, 1024, 4096];
    let mut tops = Vec::new();
    for r in [PI / 2.0, PI, 1.5 * PI] {
        let dev: Vec<f64> = cot_lemma_sequence(r, &ns).map_err(|e| e.to_string())?.iter().map(|x| x.deviation).collect();
        ensure(strictly_decreasing(&dev) && dev[4] < 1e-2, || format!("cot lemma r={r}: {dev:?}"))?;
        tops.push(dev[4]);
    }
    let mut points = 0;
    for q in -12i32..=12 {
        for n in [13usize, 20, 49, 50, 64, 65, 100, 257, 1000, 4096] {
            if n <= 4 * q.unsigned_abs() as usize {
                continue;
            }
            let m = moment_report::<f64>(n, q).map_err(|e| e.to_string())?;
            ensure(m.bounds_hold(), || format!("sandwich n={n} q={q}"))?;
            points += 1;
        }
    }
    let tops: Vec<String> = tops.iter().map(|t| format!("{t:.1e}")).collect();
    Ok(format!("mean exact at n ≤ 4096, cot deviations at 4096 [{}], sandwich at {points} points", tops.join(", ")))
}

fn aqc() -> Check {
    for n in [2, 8, 10, 20, 40] {
        let s = gap_scan(&build_family::<f64>(AqcKind::Roland, n).unwrap(), 201).map_err(|e| e.to_string())?;
        let gap = 2f64.powf(-(n as f64) / 2.0);
        ensure((s.mu_star - 0.5).abs() < 1e-6 && (s.min_gap - gap).abs() < 1e-10, || format!("roland n={n}"))?;
    }
    let mut ratios = Vec::new();
    let mut worst = 0.0f64;
    for n in NS {
        let r = check_operator_identities(n, om(PI / 2.0)).map_err(|e| e.to_string())?;
        worst = worst.max(r.grover_diffusion_residual).max(r.grover_oracle_residual).max(r.grover_step_residual);
        ratios.push(r.farhi.ok_or("no Farhi fit")?.ratio);
    }
    ensure(worst < 1e-12, || format!("identity residual {worst:e}"))?;
    let gaps: Vec<f64> = ratios.iter().map(|r| (r - 1.0).abs()).collect();
    ensure(strictly_decreasing(&gaps) && gaps[3] < 0.15, || format!("farhi ratios {ratios:?}"))?;
    let fam = build_family::<f64>(AqcKind::Roland, 8).unwrap();
    let mut deficits = Vec::new();
    let mut last = 0.0;
    for t in [1e3, 1e4, 1e5] {
        let times: Vec<f64> = grover_checkpoint_times::<f64>(8, t).iter().map(|p| p.1).collect();
        let tr = adiabatic_evolve(&fam, t, Schedule::RolandOptimal, &times, EvolveOptions::default())
            .map_err(|e| e.to_string())?;
        deficits.push(tr.checkpoints.iter().filter_map(|c| c.grover_overlap).map(|o| 1.0 - o).sum::<f64>());
        last = tr.final_ground_overlap;
    }
    ensure(last > 0.999, || format!("final overlap {last}"))?;
    ensure(strictly_decreasing(&deficits), || format!("checkpoint deficits {deficits:?}"))?;
    Ok(format!("identity residual {worst:.1e}, farhi ratios {ratios:.3?}, T=1e5 overlap {last:.8}"))
}

fn two_solution() -> Check {
    let omegas = [OmegaParam::from_rational(1, 4).unwrap(), om(2.0 * PI / 3.0), om(1.0)];
    let mut worst = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=12 {
        for o in omegas {
            for _ in 0..3 {
                let j1 = rng.gen_range(0..1u64 << n);
                let j2 = (j1 + rng.gen_range(1..1u64 << n)) % (1u64 << n);
                let spec = CircuitSpec::two(n, hamming(j1, j2), o).map_err(|e| e.to_string())?;
                let full = run_search_full(n, o, &[j1, j2], spec.iterations, OracleRealisation::Direct)
                    .map_err(|e| e.to_string())?;
                let red = run_two(&spec).map_err(|e| e.to_string())?.success_probability;
                worst = worst.max((full - red).abs());
            }
        }
    }
    ensure(worst < 1e-10, || format!("two-solution engine gap {worst:e}"))?;
    let mut at20 = Vec::new();
    for d in [2, 4, 10] {
        let p: Vec<f64> = [12, 16, 20, 24]
            .iter()
            .map(|&n| {
                let spec = CircuitSpec::two(n, d, om(2.0 * PI / 3.0)).unwrap();
                run_two(&spec).unwrap().success_probability
            })
            .collect();
        ensure(p.windows(2).all(|w| w[1] > w[0]), || format!("d={d} not increasing: {p:?}"))?;
        ensure(p[2] > 0.85, || format!("d={d} success at n=20 {}", p[2]))?;
        at20.push(p[2]);
    }
    Ok(format!("engine gap {worst:.1e}, n=20 success {at20:.4?}"))
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_sepsearch"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(o.status.success(), || format!("{args:?} exited with {:?}", o.status.code()))?;
    Ok(o.stdout)
}

fn cli_contract() -> Check {
    let golden_dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/");
    let machine = ["table", "--n", "10,20"];
    let (a, b) = (cli(&machine)?, cli(&machine)?);
    ensure(a == b, || "machine-format reruns differ".into())?;
    let golden = std::fs::read(format!("{golden_dir}table_machine_n10_20.csv")).map_err(|e| e.to_string())?;
    ensure(a == golden, || "machine-format output differs from its golden file".into())?;
    let paper = String::from_utf8(cli(&["table", "--paper-format"])?).map_err(|e| e.to_string())?;
    let want = std::fs::read_to_string(format!("{golden_dir}table1_transcription.csv")).map_err(|e| e.to_string())?;
    ensure(paper.lines().count() == want.lines().count(), || "row count differs from transcription".into())?;
    let diffs: Vec<String> = paper
        .lines()
        .zip(want.lines())
        .filter(|(g, w)| g != w)
        .map(|(g, w)| format!("{g} vs {w}"))
        .collect();
    ensure(diffs.is_empty(), || {
        format!("paper-format diff: {} line{} differs ({})", diffs.len(), if diffs.len() == 1 { "" } else { "s" }, diffs.join("; "))
    })?;
    Ok("byte-identical reruns, paper-format diff clean".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("iteration counts", iteration_counts),
        ("error rates", error_rates),
        ("cross-engine oracle equivalence", cross_engine),
        ("spectral suite", spectral),
        ("lemma suite", lemma),
        ("AQC suite", aqc),
        ("two-solution suite", two_solution),
        ("CLI contract", cli_contract),
    ];
    let mut unexpected = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {id} {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                let known = KNOWN_FAILURES.iter().any(|&(k, d)| k == id && d == detail);
                let tag = if known { " [known, documented]" } else { "" };
                println!("FAIL {id} {name} ({secs:.1}s): {detail}{tag}");
                if !known {
                    unexpected += 1;
                }
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
