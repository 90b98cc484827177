mod common;

use cohlab::states::{random_mixed_with, random_pure_with, stream_rng};
use cohlab::{bell_diagonal, classical_correlation, correlation_set, BellDiagonalParams, BellOrdering};
use common::{nalgebra_mutual_information, Bloch};

// Coarser than the acceptance check (which uses 10^6 directions) to keep `cargo test` quick.
const POLAR: usize = 300;
const AZIMUTHAL: usize = 300;

#[test]
fn classical_correlation_matches_bloch_grid() {
    for seed in 0..8u64 {
        let mut rng = stream_rng(seed, 0);
        let rho = if seed % 3 == 0 { random_pure_with(&[2, 2], &mut rng) } else { random_mixed_with(&[2, 2], &mut rng) };
        let oracle = Bloch::from_state(&rho).classical_correlation_grid(POLAR, AZIMUTHAL);
        let ours = classical_correlation(&rho).unwrap();
        assert!(ours >= oracle - 1e-9, "seed {seed}: {ours} < grid {oracle}");
        assert!((ours - oracle).abs() < 1e-3, "seed {seed}: {ours} vs {oracle}");
    }
}

#[test]
fn bloch_oracle_agrees_on_a_single_direction() {
    // measuring B along z for a Bell-diagonal state leaves A in a pure-or-mixed z state
    let rho = bell_diagonal(&BellDiagonalParams::new([0.7, 0.1, 0.1, 0.1]).unwrap(), BellOrdering::PhiPhiPsiPsi);
    let bloch = Bloch::from_state(&rho);
    assert!(bloch.a.iter().chain(&bloch.b).all(|x| x.abs() < 1e-12));
    // T = diag(c1, c2, c3) with c3 = (d1 + d2) - (d3 + d4) = 0.6
    assert!((bloch.t[2][2] - 0.6).abs() < 1e-12);
    let j_z = bloch.classical_correlation_along([0.0, 0.0, 1.0]);
    let h = |x: f64| -x * x.log2() - (1.0 - x) * (1.0 - x).log2();
    assert!((j_z - (1.0 - h(0.8))).abs() < 1e-12);
}

#[test]
fn discord_is_mutual_information_minus_classical_part() {
    for seed in 100..105u64 {
        let rho = random_mixed_with(&[2, 2], &mut stream_rng(seed, 0));
        let set = correlation_set(&rho).unwrap();
        assert!((set.mutual_information - nalgebra_mutual_information(&rho)).abs() < 1e-9);
        assert!((set.discord - (set.mutual_information - set.classical_correlation)).abs() < 1e-12);
        assert!(set.discord >= -1e-9);
    }
}
