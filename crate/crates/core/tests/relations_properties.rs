use cohlab::relations::*;
use cohlab::states::{random_basis_with, random_mixed_with, random_pure_with, stream_rng};
use cohlab::{computational_basis, fourier_basis, hadamard_basis, maximally_mixed, Basis};
use num_complex::Complex64;
use proptest::prelude::*;

fn bases(d: usize, n: usize, seed: u64) -> Vec<Basis> {
    let mut rng = stream_rng(seed, 99);
    (0..n).map(|k| random_basis_with(d, &mut rng, format!("b{k}"))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn two_basis_equals_multi_basis_with_two(seed in any::<u64>(), d in 2usize..=4) {
        let rho = random_mixed_with(&[d], &mut stream_rng(seed, 0));
        let b = bases(d, 2, seed);
        let two = check_two_basis_single(&rho, &b[0], &b[1]).unwrap();
        let multi = check_multi_basis_single(&rho, &[&b[0], &b[1]], BasisOrder::AsGiven).unwrap();
        prop_assert!((two.rhs - multi.rhs).abs() < 1e-12);
        prop_assert!((two.lhs - multi.lhs).abs() < 1e-12);
    }

    #[test]
    fn best_order_is_never_looser(seed in any::<u64>(), d in 2usize..=4, n in 2usize..=4) {
        let b = bases(d, n, seed);
        let refs: Vec<&Basis> = b.iter().collect();
        let given = overlap_b(&refs).unwrap();
        let best = overlap_b_best_order(&refs).unwrap();
        prop_assert!(best <= given + 1e-15);
        prop_assert!(best >= 1.0 / d as f64 - 1e-12);
        prop_assert!(given <= 1.0 + 1e-12);
    }

    #[test]
    fn overlap_b_is_max_squared_overlap_for_two(seed in any::<u64>(), d in 2usize..=5) {
        let b = bases(d, 2, seed);
        let c = max_overlap(&b[0], &b[1]).unwrap();
        prop_assert!((overlap_b(&[&b[0], &b[1]]).unwrap() - c * c).abs() < 1e-12);
    }

    #[test]
    fn discord_term_only_lowers_the_bound(seed in any::<u64>()) {
        let rho = random_mixed_with(&[2, 2], &mut stream_rng(seed, 1));
        let b = bases(2, 2, seed);
        let plain = check_bipartite_two_basis(&rho, &b[0], &b[1]).unwrap();
        let improved = check_bipartite_discord_improved(&rho, &b[0], &b[1]).unwrap();
        prop_assert!((plain.lhs - improved.lhs).abs() < 1e-12);
        prop_assert!(improved.rhs <= plain.rhs + 1e-12);
        prop_assert!(improved.holds);
    }

    #[test]
    fn memory_bound_sits_below_the_upper_bound(seed in any::<u64>(), d in 2usize..=3) {
        let rho = random_mixed_with(&[d, d], &mut stream_rng(seed, 2));
        let b = bases(d, 2, seed);
        let lower = check_bipartite_two_basis(&rho, &b[0], &b[1]).unwrap();
        let upper = check_conditional_upper(&rho, &b[0], &b[1]).unwrap();
        prop_assert!(lower.rhs <= lower.lhs + 1e-9);
        prop_assert!(upper.lhs <= upper.rhs + 1e-9);
    }

    #[test]
    fn tripartite_pure_states_satisfy_ssa(seed in any::<u64>()) {
        let rho = random_pure_with(&[2, 2, 2], &mut stream_rng(seed, 3));
        let r = check_tripartite(&rho, &computational_basis(2), &hadamard_basis()).unwrap();
        prop_assert!(r.ssa_sum >= -1e-9);
        // for a pure ABD state, S(A|B) = -S(A|D)
        prop_assert!(r.ssa_sum.abs() < 1e-9);
    }
}

#[test]
fn equality_cases() {
    let z = computational_basis(2);
    let x = hadamard_basis();
    let r = check_two_basis_single(&maximally_mixed(&[2]), &z, &x).unwrap();
    assert!(r.lhs.abs() < 1e-9 && r.rhs.abs() < 1e-9);

    let r = check_conditional_upper(&maximally_mixed(&[2, 2]), &z, &fourier_basis(2)).unwrap();
    assert!(r.lhs.abs() < 1e-9 && r.rhs.abs() < 1e-9);

    let zero = cohlab::DensityMatrix::pure(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], vec![2]).unwrap();
    let r = coherence_difference_bound(&zero, &z, &x).unwrap();
    assert!((r.lhs - 1.0).abs() < 1e-9 && (r.rhs - 1.0).abs() < 1e-9);

    let r = fannes_coherence_upper(&cohlab::maximally_coherent(2), &z).unwrap();
    assert!((r.lhs - 1.0).abs() < 1e-9 && (r.rhs - 1.0).abs() < 1e-9);
}

#[test]
fn dimension_errors_are_reported() {
    let rho = maximally_mixed(&[3]);
    assert!(check_two_basis_single(&rho, &computational_basis(2), &hadamard_basis()).is_err());
    assert!(check_bipartite_two_basis(&rho, &computational_basis(3), &fourier_basis(3)).is_err());
    let ab = maximally_mixed(&[2, 3]);
    assert!(check_multi_basis_bipartite(&ab, &[&computational_basis(3), &fourier_basis(3)], BasisOrder::AsGiven).is_err());
}
