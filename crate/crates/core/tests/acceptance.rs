//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::time::{Duration, Instant};

use cohlab::figure::{panel_rows, to_csv, parse_csv, GRID_POINTS, PANELS};
use cohlab::fuzz::{self, FuzzConfig};
use cohlab::reference_values::{all_pass, worked_examples, RowStatus, REFERENCE_QUTRIT_INTERCEPT};
use cohlab::relations::*;
use cohlab::states::{random_mixed_with, random_pure_with, stream_rng};
use cohlab::{
    bell_diagonal, classical_correlation, computational_basis, correlation_set, fourier_basis, hadamard_basis,
    maximally_coherent, maximally_mixed, von_neumann_entropy, BellDiagonalParams, BellOrdering, DensityMatrix,
};
use common::{entropy_bits, nalgebra_mutual_information, Bloch};
use num_complex::Complex64;
use rand::Rng;

type Outcome = Result<String, String>;

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    match result {
        Ok(detail) if elapsed <= limit => Ok(format!("{detail}; {:.2}s", elapsed.as_secs_f64())),
        Ok(detail) => Err(format!("{detail}; took {:.2}s, limit {:.0}s", elapsed.as_secs_f64(), limit.as_secs_f64())),
        Err(e) => Err(e),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn worked_example_regression() -> Outcome {
    let rows = worked_examples().map_err(|e| e.to_string())?;
    for r in &rows {
        ensure(r.status != RowStatus::Fail, || format!("{}: computed {} vs {}", r.name, r.computed, r.reference))?;
    }
    let intercept = rows
        .iter()
        .find(|r| r.status == RowStatus::Discrepancy)
        .ok_or("no intercept row")?;
    let gap = intercept.computed - REFERENCE_QUTRIT_INTERCEPT;
    ensure((gap - 5.0 / 7.0 * 3f64.log2()).abs() <= 1e-4, || format!("intercept gap {gap}"))?;
    ensure((intercept.computed - 1.99524).abs() <= 1e-5, || format!("intercept {}", intercept.computed))?;
    ensure(all_pass(&rows), || "verdict".into())?;
    Ok(format!("{} rows, intercept {:.5} flagged", rows.len(), intercept.computed))
}

fn fuzz_suite() -> Outcome {
    let summary = fuzz::run(&FuzzConfig { seed: 7, trials: 10_000, ..FuzzConfig::default() });
    let min = summary.cases.iter().map(|c| c.min_slack).fold(f64::INFINITY, f64::min);
    ensure(summary.passed(), || summary.render())?;
    Ok(format!("{} cases x 10^4 trials, min slack {min:.3e}", summary.cases.len()))
}

fn equality_cases() -> Outcome {
    let tol = 1e-9;
    let z = computational_basis(2);
    let x = hadamard_basis();
    let zero = DensityMatrix::pure(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], vec![2]).map_err(|e| e.to_string())?;
    let checks = [
        ("two-basis, I/2", check_two_basis_single(&maximally_mixed(&[2]), &z, &x), 0.0),
        ("conditional upper, I/4", check_conditional_upper(&maximally_mixed(&[2, 2]), &z, &fourier_basis(2)), 0.0),
        ("difference, |0>", coherence_difference_bound(&zero, &z, &x), 1.0),
        ("continuity, |+>", fannes_coherence_upper(&maximally_coherent(2), &z), 1.0),
    ];
    for (name, report, value) in checks {
        let r = report.map_err(|e| format!("{name}: {e}"))?;
        ensure((r.lhs - value).abs() <= tol && (r.rhs - value).abs() <= tol, || {
            format!("{name}: lhs {} rhs {} expected {value}", r.lhs, r.rhs)
        })?;
    }
    Ok("4 cases".into())
}

fn figure_reproduction() -> Outcome {
    let mut worst_gap = f64::INFINITY;
    let mut worst_sandwich = f64::INFINITY;
    for panel in PANELS {
        let rows = panel_rows(&panel).map_err(|e| e.to_string())?;
        let back = parse_csv(&to_csv(&rows)).map_err(|e| e.to_string())?;
        ensure(back == rows && rows.len() == GRID_POINTS, || format!("panel {}: CSV round trip", panel.name))?;
        for r in &rows {
            ensure(r.conditional < r.single_factor, || format!("panel {} d3={}: ordering", panel.name, r.d3))?;
            ensure(r.lhs <= r.conditional + 1e-9, || format!("panel {} d3={}: sandwich", panel.name, r.d3))?;
            worst_gap = worst_gap.min(r.single_factor - r.conditional);
            worst_sandwich = worst_sandwich.min(r.conditional - r.lhs);
        }
    }
    Ok(format!("2 x {GRID_POINTS} points, min ordering gap {worst_gap:.3e}, min sandwich gap {worst_sandwich:.3e}"))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = stream_rng(4242, 0);
    let mut worst_entropy: f64 = 0.0;
    for _ in 0..100 {
        let raw: [f64; 4] = std::array::from_fn(|_| -(1.0 - rng.random::<f64>()).ln());
        let total: f64 = raw.iter().sum();
        let mut w = raw.map(|x| x / total);
        w[3] = (1.0 - w[0] - w[1] - w[2]).max(0.0);
        let p = BellDiagonalParams::new(w).map_err(|e| e.to_string())?;
        let s = von_neumann_entropy(&bell_diagonal(&p, BellOrdering::PhiPhiPsiPsi));
        worst_entropy = worst_entropy.max((s - entropy_bits(&w)).abs());
    }
    ensure(worst_entropy <= 1e-9, || format!("Bell-diagonal entropy deviation {worst_entropy:e}"))?;

    let mut worst_discord: f64 = 0.0;
    for seed in 0..20u64 {
        let mut rng = stream_rng(seed, 1);
        let rho = if seed % 4 == 0 { random_pure_with(&[2, 2], &mut rng) } else { random_mixed_with(&[2, 2], &mut rng) };
        let j_grid = Bloch::from_state(&rho).classical_correlation_grid(1000, 1000);
        let discord_grid = nalgebra_mutual_information(&rho) - j_grid;
        let set = correlation_set(&rho).map_err(|e| e.to_string())?;
        ensure(classical_correlation(&rho).map_err(|e| e.to_string())? == set.classical_correlation, || {
            "classical correlation is not deterministic".into()
        })?;
        worst_discord = worst_discord.max((set.discord - discord_grid).abs());
    }
    ensure(worst_discord <= 1e-4, || format!("discord deviation {worst_discord:e}"))?;
    Ok(format!("entropy dev {worst_entropy:.1e}, discord dev {worst_discord:.1e} over 20 states x 10^6 directions"))
}

fn tripartite_ssa() -> Outcome {
    let z = computational_basis(2);
    let x = hadamard_basis();
    let mut worst = f64::INFINITY;
    for t in 0..1000u64 {
        let rho = random_pure_with(&[2, 2, 2], &mut stream_rng(31337, t));
        let r = check_tripartite(&rho, &z, &x).map_err(|e| e.to_string())?;
        ensure(r.ssa_sum >= -1e-9, || format!("trial {t}: sum {}", r.ssa_sum))?;
        worst = worst.min(r.ssa_sum);
    }
    // |Φ+>_AB ⊗ |0>_D
    let mut v = vec![Complex64::new(0.0, 0.0); 8];
    v[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    v[6] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let rho = DensityMatrix::pure(&v, vec![2, 2, 2]).map_err(|e| e.to_string())?;
    let r = check_tripartite(&rho, &z, &x).map_err(|e| e.to_string())?;
    ensure(r.ssa_sum.abs() <= 1e-9, || format!("Bell with ancilla: sum {}", r.ssa_sum))?;
    Ok(format!("10^3 pure states, min sum {worst:.2e}; Bell case {:.1e}", r.ssa_sum))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 6] = [
        ("worked-example regression", Duration::from_secs(1), worked_example_regression),
        ("inequality fuzz suite", Duration::from_secs(300), fuzz_suite),
        ("equality cases", Duration::from_secs(60), equality_cases),
        ("figure data ordering and sandwich", Duration::from_secs(10), figure_reproduction),
        ("oracle equivalence", Duration::from_secs(300), oracle_equivalence),
        ("tripartite strong subadditivity", Duration::from_secs(60), tripartite_ssa),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        match timed(limit, check) {
            Ok(detail) => println!("PASS  {name}  ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}  ({detail})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
